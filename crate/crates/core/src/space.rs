//! Membership spaces: a degree assignment over an attribute set at one
//! universe point, evaluated compositionally and checked against the
//! membership axioms.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraTriple, Degree, TConorm, TNorm};
use crate::expr::{AttributeExpr, AttributeSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("attribute `{0}` is not in the space's attribute set")]
    UnknownAttribute(String),
    #[error("no degree given for attribute `{0}`")]
    MissingDegree(String),
    #[error("degree for `{attribute}`: {source}")]
    InvalidDegree {
        attribute: String,
        source: AlgebraError,
    },
    #[error("expected {expected} degrees, got {got}")]
    DegreeCount { expected: usize, got: usize },
    #[error("negation of a compound expression is undefined while negation overrides are present")]
    UnsupportedComposition,
    #[error("expression chain must not be empty")]
    EmptyChain,
    #[error("expression chain is not monotone")]
    NonMonotoneChain,
}

/// Which axioms a space must satisfy to count as valid.
///
/// The strict profile additionally requires the arithmetic-sum bound
/// `0 < sum of elementary degrees <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomProfile {
    #[default]
    Default,
    Strict,
}

impl AxiomProfile {
    pub fn requires_sum_bound(self) -> bool {
        matches!(self, AxiomProfile::Strict)
    }
}

/// One membership space: attribute set, connective algebra, elementary
/// degrees, optional elementary negation overrides, and the universe
/// point it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipSpace {
    omega: AttributeSet,
    algebra: AlgebraTriple,
    degrees: Vec<Degree>,
    overrides: Vec<Option<Degree>>,
    x: Option<f64>,
}

impl MembershipSpace {
    /// Builds a space from degrees aligned with the attribute order.
    pub fn new(
        omega: AttributeSet,
        algebra: AlgebraTriple,
        degrees: Vec<Degree>,
    ) -> Result<Self, SpaceError> {
        if degrees.len() != omega.len() {
            return Err(SpaceError::DegreeCount {
                expected: omega.len(),
                got: degrees.len(),
            });
        }
        let overrides = vec![None; omega.len()];
        Ok(MembershipSpace {
            omega,
            algebra,
            degrees,
            overrides,
            x: None,
        })
    }

    /// Builds a space from a name-to-degree table; the table must be
    /// total on the attribute set and mention nothing else.
    pub fn from_table(
        omega: AttributeSet,
        algebra: AlgebraTriple,
        table: &BTreeMap<String, f64>,
    ) -> Result<Self, SpaceError> {
        for name in table.keys() {
            if !omega.contains(name) {
                return Err(SpaceError::UnknownAttribute(name.clone()));
            }
        }
        let degrees = omega
            .names()
            .iter()
            .map(|name| {
                let raw = table
                    .get(name)
                    .copied()
                    .ok_or_else(|| SpaceError::MissingDegree(name.clone()))?;
                Degree::new(raw).map_err(|source| SpaceError::InvalidDegree {
                    attribute: name.clone(),
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        MembershipSpace::new(omega, algebra, degrees)
    }

    pub fn with_x(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    /// Installs elementary negation overrides (degrees for `not p`).
    /// Override names must be a subset of the attribute set.
    pub fn with_overrides(mut self, table: &BTreeMap<String, f64>) -> Result<Self, SpaceError> {
        for (name, raw) in table {
            let idx = self
                .omega
                .index_of(name)
                .ok_or_else(|| SpaceError::UnknownAttribute(name.clone()))?;
            let value = Degree::new(*raw).map_err(|source| SpaceError::InvalidDegree {
                attribute: name.clone(),
                source,
            })?;
            self.overrides[idx] = Some(value);
        }
        Ok(self)
    }

    pub fn omega(&self) -> &AttributeSet {
        &self.omega
    }

    pub fn algebra(&self) -> &AlgebraTriple {
        &self.algebra
    }

    pub fn x(&self) -> Option<f64> {
        self.x
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn degree(&self, name: &str) -> Option<Degree> {
        self.omega.index_of(name).map(|i| self.degrees[i])
    }

    pub fn override_for(&self, name: &str) -> Option<Degree> {
        self.omega.index_of(name).and_then(|i| self.overrides[i])
    }

    pub fn has_overrides(&self) -> bool {
        self.overrides.iter().any(Option::is_some)
    }

    /// The degree of `not p` actually in force: the override if one is
    /// installed, otherwise `N(M(p))`.
    fn elementary_negation(&self, idx: usize) -> Degree {
        self.overrides[idx].unwrap_or_else(|| self.algebra.negation().eval(self.degrees[idx]))
    }

    /// Compositional evaluation. `not` over an elementary attribute uses
    /// its override when present; over anything else it composes through
    /// the strong negation.
    pub fn evaluate(&self, expr: &AttributeExpr) -> Result<Degree, SpaceError> {
        self.eval_rec(expr, false)
    }

    /// Like [`evaluate`](Self::evaluate), but refuses to compose `not`
    /// over compound expressions while overrides are present, instead of
    /// silently falling back to the regular rule.
    pub fn evaluate_strict(&self, expr: &AttributeExpr) -> Result<Degree, SpaceError> {
        self.eval_rec(expr, true)
    }

    fn eval_rec(&self, expr: &AttributeExpr, strict: bool) -> Result<Degree, SpaceError> {
        Ok(match expr {
            AttributeExpr::Bot => Degree::ZERO,
            AttributeExpr::Top => Degree::ONE,
            AttributeExpr::Elem(name) => self
                .degree(name)
                .ok_or_else(|| SpaceError::UnknownAttribute(name.clone()))?,
            AttributeExpr::Or(children) => {
                let mut acc = Degree::ZERO;
                for c in children {
                    acc = self.algebra.tconorm().eval(acc, self.eval_rec(c, strict)?);
                }
                acc
            }
            AttributeExpr::And(children) => {
                let mut acc = Degree::ONE;
                for c in children {
                    acc = self.algebra.tnorm().eval(acc, self.eval_rec(c, strict)?);
                }
                acc
            }
            AttributeExpr::Not(child) => match child.as_ref() {
                AttributeExpr::Elem(name) => {
                    let idx = self
                        .omega
                        .index_of(name)
                        .ok_or_else(|| SpaceError::UnknownAttribute(name.clone()))?;
                    self.elementary_negation(idx)
                }
                _ => {
                    if strict && self.has_overrides() {
                        return Err(SpaceError::UnsupportedComposition);
                    }
                    self.algebra.negation().eval(self.eval_rec(child, strict)?)
                }
            },
        })
    }

    /// The one-point consistency: the conorm fold of all elementary
    /// degrees.
    pub fn consistent_degree(&self) -> Degree {
        self.algebra.tconorm().fold(self.degrees.iter().copied())
    }

    /// Residual implication `target` given `given`:
    /// `sup { z | M(given) (tnorm) z <= M(target) }`.
    pub fn conditional_degree(
        &self,
        given: &AttributeExpr,
        target: &AttributeExpr,
    ) -> Result<Degree, SpaceError> {
        let g = self.evaluate(given)?;
        let t = self.evaluate(target)?;
        Ok(self.algebra.tnorm().residuum(g, t))
    }

    /// True when no override departs from `N(M(p))` by more than `tol`.
    pub fn is_regular(&self, tol: f64) -> bool {
        self.overrides.iter().enumerate().all(|(i, o)| match o {
            None => true,
            Some(v) => v.approx_eq(self.algebra.negation().eval(self.degrees[i]), tol),
        })
    }

    /// True when some elementary degree is 1 (within `tol`).
    pub fn is_normal(&self, tol: f64) -> bool {
        self.degrees.iter().any(|d| d.value() >= 1.0 - tol)
    }

    /// Runs all axiom checks and reports verdicts.
    pub fn check_axioms(&self, profile: AxiomProfile, tol: f64) -> AxiomReport {
        AxiomReport {
            axiom_i: self.check_axiom_i(tol),
            axiom_ii: self.check_axiom_ii(),
            axiom_iii: self.check_axiom_iii(tol),
            axiom_iv_finite: self.check_axiom_iv_finite(tol),
            axiom_v: self.check_axiom_v(tol),
            axiom_v_prime: self.check_sum_bound(tol),
            requires_sum_bound: profile.requires_sum_bound(),
            regular: self.is_regular(tol),
            normal: self.is_normal(tol),
        }
    }

    fn check_axiom_i(&self, tol: f64) -> Verdict {
        // Range is enforced by the Degree type; what remains is the
        // existence of a positive degree and the at-most-one-unit rule.
        if !self.degrees.iter().any(|d| d.value() > 0.0) {
            return Verdict::fail("no attribute has a positive degree");
        }
        let units: Vec<usize> = (0..self.degrees.len())
            .filter(|&i| self.degrees[i].value() >= 1.0 - tol)
            .collect();
        if units.len() > 1 {
            return Verdict::fail(format!(
                "`{}` and `{}` both have degree 1",
                self.omega.names()[units[0]],
                self.omega.names()[units[1]]
            ));
        }
        if let Some(&unit) = units.first() {
            for i in 0..self.degrees.len() {
                if i != unit && self.degrees[i].value() > tol {
                    return Verdict::fail(format!(
                        "`{}` has degree 1 but `{}` is still positive",
                        self.omega.names()[unit],
                        self.omega.names()[i]
                    ));
                }
            }
        }
        Verdict::pass()
    }

    fn check_axiom_ii(&self) -> Verdict {
        let bot = self.evaluate(&AttributeExpr::Bot).expect("literal");
        let top = self.evaluate(&AttributeExpr::Top).expect("literal");
        if bot.value() == 0.0 && top.value() == 1.0 {
            Verdict::pass_with_note("holds by evaluator construction")
        } else {
            Verdict::fail("bot or top literal evaluates off its unit")
        }
    }

    fn check_axiom_iii(&self, tol: f64) -> Verdict {
        for (i, o) in self.overrides.iter().enumerate() {
            if let Some(v) = o {
                let bound = self.algebra.negation().eval(self.degrees[i]);
                if v.value() > bound.value() + tol {
                    return Verdict::fail(format!("`{}`", self.omega.names()[i]));
                }
            }
        }
        if self.has_overrides() {
            Verdict::pass()
        } else {
            Verdict::pass_with_note("no overrides; negation composes through N")
        }
    }

    fn check_axiom_iv_finite(&self, tol: f64) -> Verdict {
        // Finite folds are how the evaluator is built; spot-check one
        // disjunction and conjunction over the first two attributes.
        if self.omega.len() >= 2 {
            let a = AttributeExpr::elem(&self.omega.names()[0]);
            let b = AttributeExpr::elem(&self.omega.names()[1]);
            let or = AttributeExpr::Or(vec![a.clone(), b.clone()]);
            let and = AttributeExpr::And(vec![a, b]);
            let direct_or = self
                .algebra
                .tconorm()
                .fold([self.degrees[0], self.degrees[1]]);
            let direct_and = self
                .algebra
                .tnorm()
                .fold([self.degrees[0], self.degrees[1]]);
            let eval_or = self.evaluate(&or).expect("valid");
            let eval_and = self.evaluate(&and).expect("valid");
            if !eval_or.approx_eq(direct_or, tol) || !eval_and.approx_eq(direct_and, tol) {
                return Verdict::fail("finite fold mismatch on the first two attributes");
            }
        }
        Verdict::pass_with_note("finite folds hold by evaluator construction")
    }

    fn check_axiom_v(&self, tol: f64) -> Verdict {
        for i in 0..self.degrees.len() {
            let not_p = self.elementary_negation(i);
            let others = self
                .degrees
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, d)| *d);
            let bound = self.algebra.tconorm().fold(others);
            if not_p.value() < bound.value() - tol {
                return Verdict::fail(format!("`{}`", self.omega.names()[i]));
            }
        }
        Verdict::pass()
    }

    fn check_sum_bound(&self, tol: f64) -> Verdict {
        let sum: f64 = self.degrees.iter().map(|d| d.value()).sum();
        if sum <= 0.0 {
            Verdict::fail("sum of elementary degrees is zero")
        } else if sum > 1.0 + tol {
            Verdict::fail("sum of elementary degrees exceeds 1")
        } else {
            Verdict::pass()
        }
    }

    /// Groups expressions into equivalence classes of equal evaluation
    /// (within `tol`) and returns them sorted ascending — a finite chain.
    pub fn quotient_chain(
        &self,
        exprs: &[AttributeExpr],
        tol: f64,
    ) -> Result<Vec<QuotientClass>, SpaceError> {
        let mut valued: Vec<(f64, usize)> = exprs
            .iter()
            .enumerate()
            .map(|(i, e)| Ok((self.evaluate(e)?.value(), i)))
            .collect::<Result<_, SpaceError>>()?;
        valued.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut classes: Vec<QuotientClass> = Vec::new();
        for (value, idx) in valued {
            match classes.last_mut() {
                Some(class) if (value - class.degree).abs() <= tol => class.members.push(idx),
                _ => classes.push(QuotientClass {
                    degree: value,
                    members: vec![idx],
                }),
            }
        }
        Ok(classes)
    }

    /// Checks the finite prefix of the limit theorems on a monotone
    /// chain of expressions.
    ///
    /// A nondecreasing chain is compared against the n-ary disjunction
    /// (equality expected for the maximum conorm, `<=` otherwise); a
    /// nonincreasing chain against the n-ary conjunction (equality for
    /// the minimum t-norm, `>=` otherwise). A constant chain is both.
    pub fn check_limit_theorems(
        &self,
        chain: &[AttributeExpr],
        tol: f64,
    ) -> Result<LimitReport, SpaceError> {
        if chain.is_empty() {
            return Err(SpaceError::EmptyChain);
        }
        let values: Vec<f64> = chain
            .iter()
            .map(|e| Ok(self.evaluate(e)?.value()))
            .collect::<Result<_, SpaceError>>()?;
        let nondecreasing = values.windows(2).all(|w| w[1] >= w[0] - tol);
        let nonincreasing = values.windows(2).all(|w| w[1] <= w[0] + tol);
        if !nondecreasing && !nonincreasing {
            return Err(SpaceError::NonMonotoneChain);
        }
        let limit = *values.last().expect("nonempty");
        let combine = |or: bool| -> Result<f64, SpaceError> {
            let expr = if chain.len() == 1 {
                chain[0].clone()
            } else if or {
                AttributeExpr::Or(chain.to_vec())
            } else {
                AttributeExpr::And(chain.to_vec())
            };
            Ok(self.evaluate(&expr)?.value())
        };
        let lower = if nondecreasing {
            let combined = combine(true)?;
            let equality = (limit - combined).abs() <= tol;
            let bound_holds = limit <= combined + tol;
            let satisfied = if self.algebra.tconorm() == TConorm::Maximum {
                equality
            } else {
                bound_holds
            };
            Some(LimitCheck {
                limit,
                combined,
                equality,
                bound_holds,
                satisfied,
            })
        } else {
            None
        };
        let upper = if nonincreasing {
            let combined = combine(false)?;
            let equality = (limit - combined).abs() <= tol;
            let bound_holds = limit >= combined - tol;
            let satisfied = if self.algebra.tnorm() == TNorm::Minimum {
                equality
            } else {
                bound_holds
            };
            Some(LimitCheck {
                limit,
                combined,
                equality,
                bound_holds,
                satisfied,
            })
        } else {
            None
        };
        Ok(LimitReport { lower, upper })
    }
}

/// Pass/fail with a witness attribute (or pair) on failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            passed: true,
            witness: None,
            note: None,
        }
    }

    fn pass_with_note(note: impl Into<String>) -> Self {
        Verdict {
            passed: true,
            witness: None,
            note: Some(note.into()),
        }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Verdict {
            passed: false,
            witness: Some(witness.into()),
            note: None,
        }
    }
}

/// Axiom verdicts for one space, plus the regular/normal flags.
///
/// The sum-bound verdict is always computed; it only gates
/// [`passes`](Self::passes) when the strict profile asked for it.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub axiom_i: Verdict,
    pub axiom_ii: Verdict,
    pub axiom_iii: Verdict,
    pub axiom_iv_finite: Verdict,
    pub axiom_v: Verdict,
    pub axiom_v_prime: Verdict,
    pub requires_sum_bound: bool,
    pub regular: bool,
    pub normal: bool,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.axiom_i.passed
            && self.axiom_ii.passed
            && self.axiom_iii.passed
            && self.axiom_iv_finite.passed
            && self.axiom_v.passed
            && (!self.requires_sum_bound || self.axiom_v_prime.passed)
    }

    /// `(label, verdict)` pairs in axiom order.
    pub fn entries(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("I", &self.axiom_i),
            ("II", &self.axiom_ii),
            ("III", &self.axiom_iii),
            ("IV", &self.axiom_iv_finite),
            ("V", &self.axiom_v),
            ("V'", &self.axiom_v_prime),
        ]
    }

    /// Labels of failed axioms, honoring the profile for the sum bound.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (label, verdict) in self.entries() {
            if label == "V'" && !self.requires_sum_bound {
                continue;
            }
            if !verdict.passed {
                out.push(label);
            }
        }
        out
    }
}

/// One equivalence class of the evaluation quotient: the shared degree
/// and the indices of the input expressions in it.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientClass {
    pub degree: f64,
    pub members: Vec<usize>,
}

/// Outcome of one limit-theorem comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCheck {
    /// Limit of the finite value sequence (its last element).
    pub limit: f64,
    /// Evaluation of the n-ary combination of the chain.
    pub combined: f64,
    pub equality: bool,
    pub bound_holds: bool,
    /// Whether the theorem's claim for this algebra held.
    pub satisfied: bool,
}

/// Limit checks applicable to the chain: `lower` for nondecreasing,
/// `upper` for nonincreasing; both for a constant chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitReport {
    pub lower: Option<LimitCheck>,
    pub upper: Option<LimitCheck>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TOLERANCE;
    use crate::expr::parse_expr;

    fn deg(v: f64) -> Degree {
        Degree::new(v).unwrap()
    }

    /// The interval partition of [0, 200] observed at x = 25: the first
    /// interval holds degree 1, the rest 0, with min/max connectives.
    fn interval_space() -> MembershipSpace {
        let omega =
            AttributeSet::new(["[0,40]", "(40,80]", "(80,120]", "(120,160]", "(160,200]"]).unwrap();
        MembershipSpace::new(
            omega,
            AlgebraTriple::from_tnorm(TNorm::Minimum),
            vec![deg(1.0), deg(0.0), deg(0.0), deg(0.0), deg(0.0)],
        )
        .unwrap()
        .with_x(25.0)
    }

    fn two_attr_space(p: f64, q: f64, tnorm: TNorm) -> MembershipSpace {
        let omega = AttributeSet::new(["p", "q"]).unwrap();
        MembershipSpace::new(
            omega,
            AlgebraTriple::from_tnorm(tnorm),
            vec![deg(p), deg(q)],
        )
        .unwrap()
    }

    #[test]
    fn interval_example_evaluates_crisply() {
        let space = interval_space();
        assert_eq!(
            space
                .evaluate(&AttributeExpr::elem("[0,40]"))
                .unwrap()
                .value(),
            1.0
        );
        assert_eq!(space.evaluate(&AttributeExpr::Bot).unwrap().value(), 0.0);
        assert_eq!(space.evaluate(&AttributeExpr::Top).unwrap().value(), 1.0);
        assert_eq!(space.consistent_degree().value(), 1.0);
    }

    #[test]
    fn interval_example_passes_all_axioms() {
        let report = interval_space().check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(report.passes(), "{report:?}");
        assert!(report.axiom_v_prime.passed);
        assert!(report.regular);
        assert!(report.normal);
    }

    #[test]
    fn evaluation_folds_and_negates() {
        let space = two_attr_space(0.8, 0.2, TNorm::Minimum);
        let or = parse_expr("p or q", space.omega()).unwrap();
        let not_p = parse_expr("not p", space.omega()).unwrap();
        assert!((space.evaluate(&or).unwrap().value() - 0.8).abs() < 1e-12);
        assert!((space.evaluate(&not_p).unwrap().value() - 0.2).abs() < 1e-12);
        assert_eq!(
            two_attr_space(0.6, 0.3, TNorm::Minimum)
                .consistent_degree()
                .value(),
            0.6
        );
    }

    #[test]
    fn unknown_attribute_is_reported() {
        let space = two_attr_space(0.5, 0.5, TNorm::Minimum);
        let err = space.evaluate(&AttributeExpr::elem("missing")).unwrap_err();
        assert_eq!(err, SpaceError::UnknownAttribute("missing".into()));
    }

    #[test]
    fn all_zero_table_fails_axiom_i() {
        let space = two_attr_space(0.0, 0.0, TNorm::Minimum);
        let report = space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(!report.axiom_i.passed);
        assert!(report.axiom_i.witness.is_some());
        assert!(!report.passes());
    }

    #[test]
    fn unit_degree_forces_others_to_zero() {
        let space = two_attr_space(1.0, 0.3, TNorm::Minimum);
        let report = space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(!report.axiom_i.passed);
        let both = two_attr_space(1.0, 1.0, TNorm::Minimum);
        assert!(
            !both
                .check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE)
                .axiom_i
                .passed
        );
    }

    #[test]
    fn axiom_v_failure_is_localized() {
        // N(0.8) = 0.2 < max of others = 0.7.
        let space = two_attr_space(0.8, 0.7, TNorm::Minimum);
        let report = space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(!report.axiom_v.passed);
        assert_eq!(report.axiom_v.witness.as_deref(), Some("`p`"));
    }

    #[test]
    fn sum_bound_only_gates_strict_profile() {
        let omega = AttributeSet::new(["a", "b", "c"]).unwrap();
        let space = MembershipSpace::new(
            omega,
            AlgebraTriple::from_tnorm(TNorm::Minimum),
            vec![deg(0.5), deg(0.5), deg(0.5)],
        )
        .unwrap();
        let default = space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(default.axiom_v.passed);
        assert!(!default.axiom_v_prime.passed);
        assert!(default.passes());
        let strict = space.check_axioms(AxiomProfile::Strict, DEFAULT_TOLERANCE);
        assert!(!strict.passes());
        assert_eq!(strict.failed(), vec!["V'"]);
    }

    #[test]
    fn overrides_feed_axiom_iii_and_v() {
        let omega = AttributeSet::new(["p", "q"]).unwrap();
        let base = MembershipSpace::new(
            omega,
            AlgebraTriple::from_tnorm(TNorm::Minimum),
            vec![deg(0.6), deg(0.3)],
        )
        .unwrap();
        // Override above N(M(p)) = 0.4 violates the negation bound.
        let bad = base
            .clone()
            .with_overrides(&BTreeMap::from([("p".to_string(), 0.5)]))
            .unwrap();
        let report = bad.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(!report.axiom_iii.passed);
        assert!(!report.regular);
        // Override below the conorm of the others violates exclusivity.
        let low = base
            .with_overrides(&BTreeMap::from([("p".to_string(), 0.2)]))
            .unwrap();
        let report = low.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
        assert!(report.axiom_iii.passed);
        assert!(!report.axiom_v.passed);
    }

    #[test]
    fn strict_evaluation_rejects_compound_negation_with_overrides() {
        let omega = AttributeSet::new(["p", "q"]).unwrap();
        let space = MembershipSpace::new(
            omega,
            AlgebraTriple::from_tnorm(TNorm::Minimum),
            vec![deg(0.4), deg(0.3)],
        )
        .unwrap()
        .with_overrides(&BTreeMap::from([("p".to_string(), 0.55)]))
        .unwrap();
        let compound = parse_expr("not (p or q)", space.omega()).unwrap();
        assert_eq!(
            space.evaluate_strict(&compound),
            Err(SpaceError::UnsupportedComposition)
        );
        // The regular evaluator composes through N instead.
        let value = space.evaluate(&compound).unwrap().value();
        assert!((value - 0.6).abs() < 1e-12);
        // Elementary negation still honors the override in strict mode.
        let not_p = parse_expr("not p", space.omega()).unwrap();
        assert_eq!(space.evaluate_strict(&not_p).unwrap().value(), 0.55);
        // A doubled negation wraps a compound child, so it composes
        // through N over the override.
        let not_not_p = parse_expr("not not p", space.omega()).unwrap();
        assert!((space.evaluate(&not_not_p).unwrap().value() - 0.45).abs() < 1e-12);
        assert_eq!(
            space.evaluate_strict(&not_not_p),
            Err(SpaceError::UnsupportedComposition)
        );
    }

    #[test]
    fn conditional_degree_matches_residuum() {
        let space = two_attr_space(0.7, 0.4, TNorm::Minimum);
        let b = AttributeExpr::elem("p");
        let a = AttributeExpr::elem("q");
        assert!((space.conditional_degree(&b, &a).unwrap().value() - 0.4).abs() < 1e-12);
        // Vacuous antecedent.
        assert_eq!(
            space
                .conditional_degree(&AttributeExpr::Bot, &a)
                .unwrap()
                .value(),
            1.0
        );
        let luka = two_attr_space(0.7, 0.4, TNorm::Lukasiewicz);
        assert!(
            (luka
                .conditional_degree(&AttributeExpr::elem("p"), &AttributeExpr::elem("q"))
                .unwrap()
                .value()
                - 0.7)
                .abs()
                < 1e-9
        );
    }

    #[test]
    fn quotient_chain_groups_and_sorts() {
        let space = two_attr_space(0.8, 0.2, TNorm::Minimum);
        let exprs = vec![
            AttributeExpr::elem("p"),
            AttributeExpr::elem("q"),
            parse_expr("p or q", space.omega()).unwrap(),
        ];
        let classes = space.quotient_chain(&exprs, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(classes.len(), 2);
        assert!((classes[0].degree - 0.2).abs() < 1e-12);
        assert_eq!(classes[0].members, vec![1]);
        assert!((classes[1].degree - 0.8).abs() < 1e-12);
        assert_eq!(classes[1].members, vec![0, 2]);

        let bots = vec![
            AttributeExpr::Bot,
            parse_expr("p and bot", space.omega()).unwrap(),
        ];
        let classes = space.quotient_chain(&bots, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].degree, 0.0);

        let tops = vec![
            AttributeExpr::Top,
            parse_expr("p or top", space.omega()).unwrap(),
        ];
        let classes = space.quotient_chain(&tops, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].degree, 1.0);
    }

    #[test]
    fn limit_theorems_on_monotone_chains() {
        let space = two_attr_space(0.6, 0.3, TNorm::Minimum);
        let chain = vec![
            AttributeExpr::Bot,
            AttributeExpr::elem("q"),
            AttributeExpr::elem("p"),
        ];
        let report = space
            .check_limit_theorems(&chain, DEFAULT_TOLERANCE)
            .unwrap();
        let lower = report.lower.expect("nondecreasing");
        assert!(lower.equality && lower.satisfied);
        assert!(report.upper.is_none());

        // Under the Lukasiewicz conorm the fold dominates the limit.
        let luka = two_attr_space(0.6, 0.3, TNorm::Lukasiewicz);
        let report = luka
            .check_limit_theorems(&chain, DEFAULT_TOLERANCE)
            .unwrap();
        let lower = report.lower.expect("nondecreasing");
        assert!(lower.bound_holds && lower.satisfied);
        assert!((lower.combined - 0.9).abs() < 1e-9);

        // Constant chains satisfy both directions.
        let constant = vec![AttributeExpr::elem("p"), AttributeExpr::elem("p")];
        let report = luka
            .check_limit_theorems(&constant, DEFAULT_TOLERANCE)
            .unwrap();
        assert!(report.lower.unwrap().bound_holds);
        assert!(report.upper.unwrap().bound_holds);

        let wiggle = vec![
            AttributeExpr::elem("q"),
            AttributeExpr::elem("p"),
            AttributeExpr::elem("q"),
        ];
        assert_eq!(
            space.check_limit_theorems(&wiggle, DEFAULT_TOLERANCE),
            Err(SpaceError::NonMonotoneChain)
        );
        assert_eq!(
            space.check_limit_theorems(&[], DEFAULT_TOLERANCE),
            Err(SpaceError::EmptyChain)
        );
    }

    #[test]
    fn table_construction_diagnoses_problems() {
        let omega = AttributeSet::new(["p", "q"]).unwrap();
        let algebra = AlgebraTriple::from_tnorm(TNorm::Minimum);
        let missing = BTreeMap::from([("p".to_string(), 0.5)]);
        assert_eq!(
            MembershipSpace::from_table(omega.clone(), algebra, &missing),
            Err(SpaceError::MissingDegree("q".into()))
        );
        let unknown = BTreeMap::from([
            ("p".to_string(), 0.5),
            ("q".to_string(), 0.5),
            ("r".to_string(), 0.5),
        ]);
        assert_eq!(
            MembershipSpace::from_table(omega.clone(), algebra, &unknown),
            Err(SpaceError::UnknownAttribute("r".into()))
        );
        let out_of_range = BTreeMap::from([("p".to_string(), 1.2), ("q".to_string(), 0.1)]);
        assert!(matches!(
            MembershipSpace::from_table(omega, algebra, &out_of_range),
            Err(SpaceError::InvalidDegree { attribute, .. }) if attribute == "p"
        ));
    }
}
