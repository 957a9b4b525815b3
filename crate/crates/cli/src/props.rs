//! The `verify-props` harness: draws degree tables for the file's
//! attribute set by rejection sampling, then checks the evaluation laws
//! on a deterministic rotation of enumerated expressions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vague_core::algebra::{AlgebraTriple, TConorm, TNorm};
use vague_core::expr::{enumerate_exprs, format_expr, AttributeExpr, AttributeSet};
use vague_core::sample::{sample_space, SampleError, DEFAULT_MAX_TRIES};
use vague_core::space::{AxiomProfile, MembershipSpace};

/// Upper bound on the enumerated expression pool.
const EXPR_CAP: usize = 1024;
/// Expressions inspected per sampled space.
const WINDOW: usize = 16;

pub struct PropConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub profile: AxiomProfile,
}

pub struct PropReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

struct Counter {
    label: &'static str,
    passed: usize,
    run: usize,
    skipped: Option<&'static str>,
    first_failure: Option<String>,
}

impl Counter {
    fn new(label: &'static str) -> Self {
        Counter {
            label,
            passed: 0,
            run: 0,
            skipped: None,
            first_failure: None,
        }
    }

    fn skip(label: &'static str, reason: &'static str) -> Self {
        let mut c = Counter::new(label);
        c.skipped = Some(reason);
        c
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.run += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(witness());
        }
    }

    fn line(&self) -> String {
        if let Some(reason) = self.skipped {
            return format!("{}: skipped ({reason})", self.label);
        }
        match &self.first_failure {
            None => format!("{}: {}/{}", self.label, self.passed, self.run),
            Some(witness) => format!(
                "{}: {}/{} (first counterexample: {witness})",
                self.label, self.passed, self.run
            ),
        }
    }

    fn failed(&self) -> bool {
        self.skipped.is_none() && self.passed != self.run
    }
}

fn eval(space: &MembershipSpace, expr: &AttributeExpr) -> f64 {
    space
        .evaluate(expr)
        .expect("expressions are built over omega")
        .value()
}

/// Runs every applicable law over `samples` sampled spaces. Returns an
/// error only when no valid degree table can be found for the profile.
pub fn verify_props(
    omega: &AttributeSet,
    algebra: AlgebraTriple,
    config: &PropConfig,
) -> Result<PropReport, SampleError> {
    let exprs: Vec<AttributeExpr> = enumerate_exprs(omega, 2).take(EXPR_CAP).collect();
    let lukasiewicz =
        algebra.tnorm() == TNorm::Lukasiewicz && algebra.tconorm() == TConorm::Lukasiewicz;

    let mut folds = Counter::new("finite folds");
    let mut units = Counter::new("unit and commutativity laws");
    let mut negation = Counter::new("double negation and de morgan");
    let mut complement = if lukasiewicz {
        Counter::new("complement laws")
    } else {
        Counter::skip("complement laws", "needs lukasiewicz connectives")
    };
    let mut absorption = if lukasiewicz {
        Counter::new("absorption to max and min")
    } else {
        Counter::skip("absorption to max and min", "needs lukasiewicz connectives")
    };
    let mut exclusivity = Counter::new("exclusivity bound");
    let mut lower = Counter::new("lower limit");
    let mut upper = Counter::new("upper limit");

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for sample in 0..config.samples {
        let space = sample_space(
            &mut rng,
            omega,
            algebra,
            config.profile,
            config.tol,
            DEFAULT_MAX_TRIES,
        )?;
        let window: Vec<&AttributeExpr> = (0..WINDOW)
            .map(|k| &exprs[(sample * WINDOW + k) % exprs.len()])
            .collect();
        let tol = config.tol;

        let mut ok = true;
        let mut witness = String::new();
        for k in 0..WINDOW {
            let (a, b, c) = (
                window[k],
                window[(k + 1) % WINDOW],
                window[(k + 2) % WINDOW],
            );
            let or3 = AttributeExpr::Or(vec![a.clone(), b.clone(), c.clone()]);
            let and3 = AttributeExpr::And(vec![a.clone(), b.clone(), c.clone()]);
            let or_fold = algebra
                .tconorm()
                .fold([
                    space.evaluate(a).unwrap(),
                    space.evaluate(b).unwrap(),
                    space.evaluate(c).unwrap(),
                ])
                .value();
            let and_fold = algebra
                .tnorm()
                .fold([
                    space.evaluate(a).unwrap(),
                    space.evaluate(b).unwrap(),
                    space.evaluate(c).unwrap(),
                ])
                .value();
            if (eval(&space, &or3) - or_fold).abs() > tol
                || (eval(&space, &and3) - and_fold).abs() > tol
            {
                ok = false;
                witness = format_expr(&or3);
                break;
            }
        }
        folds.record(ok, || format!("sample {sample}: {witness}"));

        let mut ok = true;
        let mut witness = String::new();
        for k in 0..WINDOW {
            let (a, b) = (window[k], window[(k + 1) % WINDOW]);
            let va = eval(&space, a);
            let or_bot = eval(
                &space,
                &AttributeExpr::Or(vec![a.clone(), AttributeExpr::Bot]),
            );
            let and_bot = eval(
                &space,
                &AttributeExpr::And(vec![a.clone(), AttributeExpr::Bot]),
            );
            let and_top = eval(
                &space,
                &AttributeExpr::And(vec![a.clone(), AttributeExpr::Top]),
            );
            let or_top = eval(
                &space,
                &AttributeExpr::Or(vec![a.clone(), AttributeExpr::Top]),
            );
            let ab = eval(&space, &AttributeExpr::Or(vec![a.clone(), b.clone()]));
            let ba = eval(&space, &AttributeExpr::Or(vec![b.clone(), a.clone()]));
            if (or_bot - va).abs() > tol
                || and_bot.abs() > tol
                || (and_top - va).abs() > tol
                || (or_top - 1.0).abs() > tol
                || (ab - ba).abs() > tol
            {
                ok = false;
                witness = format_expr(a);
                break;
            }
        }
        units.record(ok, || format!("sample {sample}: {witness}"));

        let mut ok = true;
        let mut witness = String::new();
        for k in 0..WINDOW {
            let (a, b) = (window[k], window[(k + 1) % WINDOW]);
            let not = AttributeExpr::not;
            let double = eval(&space, &not(not(a.clone())));
            let lhs_or = eval(&space, &not(AttributeExpr::Or(vec![a.clone(), b.clone()])));
            let rhs_or = eval(
                &space,
                &AttributeExpr::And(vec![not(a.clone()), not(b.clone())]),
            );
            let lhs_and = eval(&space, &not(AttributeExpr::And(vec![a.clone(), b.clone()])));
            let rhs_and = eval(
                &space,
                &AttributeExpr::Or(vec![not(a.clone()), not(b.clone())]),
            );
            if (double - eval(&space, a)).abs() > tol
                || (lhs_or - rhs_or).abs() > tol
                || (lhs_and - rhs_and).abs() > tol
            {
                ok = false;
                witness = format_expr(a);
                break;
            }
        }
        negation.record(ok, || format!("sample {sample}: {witness}"));

        if lukasiewicz {
            let mut ok = true;
            let mut witness = String::new();
            for a in &window {
                let not = AttributeExpr::not;
                let excluded = eval(
                    &space,
                    &AttributeExpr::Or(vec![not((*a).clone()), (*a).clone()]),
                );
                let contradiction = eval(
                    &space,
                    &AttributeExpr::And(vec![not((*a).clone()), (*a).clone()]),
                );
                if (excluded - 1.0).abs() > tol || contradiction.abs() > tol {
                    ok = false;
                    witness = format_expr(a);
                    break;
                }
            }
            complement.record(ok, || format!("sample {sample}: {witness}"));

            let mut ok = true;
            let mut witness = String::new();
            for k in 0..WINDOW {
                let (a, b) = (window[k], window[(k + 1) % WINDOW]);
                let not = AttributeExpr::not;
                let va = eval(&space, a);
                let vb = eval(&space, b);
                let join = eval(
                    &space,
                    &AttributeExpr::Or(vec![
                        a.clone(),
                        AttributeExpr::And(vec![not(a.clone()), b.clone()]),
                    ]),
                );
                let meet = eval(
                    &space,
                    &AttributeExpr::And(vec![
                        a.clone(),
                        AttributeExpr::Or(vec![not(a.clone()), b.clone()]),
                    ]),
                );
                if (join - va.max(vb)).abs() > tol || (meet - va.min(vb)).abs() > tol {
                    ok = false;
                    witness = format_expr(a);
                    break;
                }
            }
            absorption.record(ok, || format!("sample {sample}: {witness}"));
        }

        let degrees = space.degrees();
        let above = degrees.iter().filter(|d| d.value() > 0.5).count();
        exclusivity.record(above <= 1, || {
            format!("sample {sample}: {above} elementary degrees above 0.5")
        });

        let mut chain: Vec<AttributeExpr> = window.iter().map(|e| (*e).clone()).collect();
        chain.sort_by(|x, y| eval(&space, x).total_cmp(&eval(&space, y)));
        let report = space
            .check_limit_theorems(&chain, tol)
            .expect("sorted chains are monotone");
        lower.record(report.lower.map(|c| c.satisfied).unwrap_or(false), || {
            format!("sample {sample}")
        });
        chain.reverse();
        let report = space
            .check_limit_theorems(&chain, tol)
            .expect("sorted chains are monotone");
        upper.record(report.upper.map(|c| c.satisfied).unwrap_or(false), || {
            format!("sample {sample}")
        });
    }

    let counters = [
        folds,
        units,
        negation,
        complement,
        absorption,
        exclusivity,
        lower,
        upper,
    ];
    let failures = counters.iter().filter(|c| c.failed()).count();
    let total_checks: usize = counters.iter().map(|c| c.run).sum();
    let mut lines: Vec<String> = counters.iter().map(Counter::line).collect();
    if failures == 0 {
        lines.push(format!("all properties pass ({total_checks} checks)"));
    } else {
        lines.push(format!("{failures} property group(s) failed"));
    }
    Ok(PropReport { lines, failures })
}
