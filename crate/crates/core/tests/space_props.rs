//! Evaluation-level properties over randomized valid spaces and
//! generated expressions: the finite fold laws, unit laws, double
//! negation and De Morgan in regular spaces, the Lukasiewicz complement
//! and absorption identities, the mutual-exclusivity bound and the
//! residual adjunction.

mod common;

use common::{arb_expr, arb_valid_degrees, deg, omega, space_with};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vague_core::algebra::{AlgebraTriple, TNorm};
use vague_core::expr::AttributeExpr;
use vague_core::space::{AxiomProfile, MembershipSpace};
use vague_core::DEFAULT_TOLERANCE;

const NAMES: [&str; 3] = ["a", "b", "c"];

fn names_vec() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

fn arb_space() -> impl Strategy<Value = MembershipSpace> {
    proptest::sample::select(vec![TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz])
        .prop_flat_map(|tnorm| {
            arb_valid_degrees(tnorm).prop_map(move |degrees| space_with(&NAMES, &degrees, tnorm))
        })
}

fn value(space: &MembershipSpace, expr: &AttributeExpr) -> f64 {
    space.evaluate(expr).unwrap().value()
}

proptest! {
    /// Commutativity, associativity and the unit laws of the evaluated
    /// folds.
    #[test]
    fn fold_and_unit_laws(
        space in arb_space(),
        a in arb_expr(names_vec(), 3),
        b in arb_expr(names_vec(), 3),
        c in arb_expr(names_vec(), 3),
    ) {
        let tol = DEFAULT_TOLERANCE;
        let or = |children: Vec<AttributeExpr>| AttributeExpr::Or(children);
        let and = |children: Vec<AttributeExpr>| AttributeExpr::And(children);

        let commute_or = (value(&space, &or(vec![a.clone(), b.clone()]))
            - value(&space, &or(vec![b.clone(), a.clone()])))
        .abs();
        prop_assert!(commute_or <= tol);
        let commute_and = (value(&space, &and(vec![a.clone(), b.clone()]))
            - value(&space, &and(vec![b.clone(), a.clone()])))
        .abs();
        prop_assert!(commute_and <= tol);

        let assoc_or = (value(&space, &or(vec![or(vec![a.clone(), b.clone()]), c.clone()]))
            - value(&space, &or(vec![a.clone(), or(vec![b.clone(), c.clone()])])))
        .abs();
        prop_assert!(assoc_or <= tol);
        let assoc_and = (value(&space, &and(vec![and(vec![a.clone(), b.clone()]), c.clone()]))
            - value(&space, &and(vec![a.clone(), and(vec![b.clone(), c.clone()])])))
        .abs();
        prop_assert!(assoc_and <= tol);

        // Units: bot for or, top for and; annihilators the other way.
        let va = value(&space, &a);
        prop_assert!((value(&space, &or(vec![a.clone(), AttributeExpr::Bot])) - va).abs() <= tol);
        prop_assert!(value(&space, &and(vec![a.clone(), AttributeExpr::Bot])) <= tol);
        prop_assert!((value(&space, &and(vec![a.clone(), AttributeExpr::Top])) - va).abs() <= tol);
        prop_assert!((value(&space, &or(vec![a.clone(), AttributeExpr::Top])) - 1.0).abs() <= tol);

        // The n-ary node is the fold of its children.
        let tri = value(&space, &or(vec![a.clone(), b.clone(), c.clone()]));
        let folded = space
            .algebra()
            .tconorm()
            .fold([space.evaluate(&a)?, space.evaluate(&b)?, space.evaluate(&c)?])
            .value();
        prop_assert!((tri - folded).abs() <= tol);
    }

    /// Double negation and De Morgan at the degree level in regular
    /// spaces.
    #[test]
    fn regular_negation_laws(
        space in arb_space(),
        a in arb_expr(names_vec(), 3),
        b in arb_expr(names_vec(), 3),
    ) {
        let tol = DEFAULT_TOLERANCE;
        let not = AttributeExpr::not;
        let double = not(not(a.clone()));
        prop_assert!((value(&space, &double) - value(&space, &a)).abs() <= tol);

        let lhs = value(&space, &not(AttributeExpr::Or(vec![a.clone(), b.clone()])));
        let rhs = value(
            &space,
            &AttributeExpr::And(vec![not(a.clone()), not(b.clone())]),
        );
        prop_assert!((lhs - rhs).abs() <= tol);

        let lhs = value(&space, &not(AttributeExpr::And(vec![a.clone(), b.clone()])));
        let rhs = value(
            &space,
            &AttributeExpr::Or(vec![not(a.clone()), not(b.clone())]),
        );
        prop_assert!((lhs - rhs).abs() <= tol);
    }

    /// Lukasiewicz connectives with the standard negation are
    /// complemented and absorb into plain max/min.
    #[test]
    fn lukasiewicz_complement_and_absorption(
        degrees in arb_valid_degrees(TNorm::Lukasiewicz),
        a in arb_expr(names_vec(), 2),
        b in arb_expr(names_vec(), 2),
    ) {
        let tol = DEFAULT_TOLERANCE;
        let space = space_with(&NAMES, &degrees, TNorm::Lukasiewicz);
        let not = AttributeExpr::not;

        let excluded = value(&space, &AttributeExpr::Or(vec![not(a.clone()), a.clone()]));
        prop_assert!((excluded - 1.0).abs() <= tol);
        let contradiction = value(&space, &AttributeExpr::And(vec![not(a.clone()), a.clone()]));
        prop_assert!(contradiction.abs() <= tol);

        let va = value(&space, &a);
        let vb = value(&space, &b);
        let lhs = value(
            &space,
            &AttributeExpr::Or(vec![
                a.clone(),
                AttributeExpr::And(vec![not(a.clone()), b.clone()]),
            ]),
        );
        prop_assert!((lhs - va.max(vb)).abs() <= tol);
        let lhs = value(
            &space,
            &AttributeExpr::And(vec![
                a.clone(),
                AttributeExpr::Or(vec![not(a.clone()), b.clone()]),
            ]),
        );
        prop_assert!((lhs - va.min(vb)).abs() <= tol);
    }

    /// The adjunction form of the conditional degree for left-continuous
    /// t-norms: the residuum is 1 exactly when the antecedent does not
    /// exceed the consequent.
    #[test]
    fn conditional_adjunction(
        space in arb_space(),
        given in arb_expr(names_vec(), 2),
        target in arb_expr(names_vec(), 2),
    ) {
        let g = value(&space, &given);
        let t = value(&space, &target);
        let conditional = space.conditional_degree(&given, &target).unwrap().value();
        if g <= t {
            prop_assert_eq!(conditional, 1.0);
        } else {
            prop_assert!(conditional < 1.0 + DEFAULT_TOLERANCE);
            if g > t + 1e-9 {
                prop_assert!(conditional < 1.0);
            }
        }
    }

    /// Quotient classes come out sorted and reassemble the input.
    #[test]
    fn quotient_chain_is_a_sorted_partition(
        space in arb_space(),
        exprs in proptest::collection::vec(arb_expr(names_vec(), 2), 1..8),
    ) {
        let classes = space.quotient_chain(&exprs, DEFAULT_TOLERANCE).unwrap();
        let mut seen: Vec<usize> = classes.iter().flat_map(|c| c.members.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..exprs.len()).collect::<Vec<_>>());
        for pair in classes.windows(2) {
            prop_assert!(pair[0].degree < pair[1].degree);
        }
        for class in &classes {
            for &index in &class.members {
                let v = value(&space, &exprs[index]);
                prop_assert!((v - class.degree).abs() <= DEFAULT_TOLERANCE * (class.members.len() as f64));
            }
        }
    }

    /// Sorting random expressions by value yields a monotone chain whose
    /// limit checks succeed for every algebra.
    #[test]
    fn limit_theorems_on_sorted_chains(
        space in arb_space(),
        exprs in proptest::collection::vec(arb_expr(names_vec(), 2), 2..6),
    ) {
        let mut chain = exprs;
        chain.sort_by(|x, y| value(&space, x).total_cmp(&value(&space, y)));
        let report = space.check_limit_theorems(&chain, DEFAULT_TOLERANCE).unwrap();
        let lower = report.lower.expect("sorted ascending");
        prop_assert!(lower.satisfied);
        chain.reverse();
        let report = space.check_limit_theorems(&chain, DEFAULT_TOLERANCE).unwrap();
        let upper = report.upper.expect("sorted descending");
        prop_assert!(upper.satisfied);
    }
}

/// No two distinct attributes may both sit above one half in any space
/// passing the negation bound and mutual exclusivity with the standard
/// negation.
#[test]
fn exclusivity_bound_on_rejection_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240517);
    for tnorm in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
        let algebra = AlgebraTriple::from_tnorm(tnorm);
        let mut kept = 0;
        while kept < 1000 {
            let degrees: Vec<f64> = (0..3).map(|_| rng.random()).collect();
            let space = space_with(&["a", "b", "c"], &degrees, tnorm);
            let report = space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
            if !(report.axiom_iii.passed && report.axiom_v.passed && report.axiom_i.passed) {
                continue;
            }
            kept += 1;
            let above: usize = degrees.iter().filter(|&&d| d > 0.5).count();
            assert!(
                above <= 1,
                "two degrees above 0.5 in {degrees:?} under {algebra:?}"
            );
        }
    }
}

/// De Morgan holds in one-hot drastic spaces too (the only tables the
/// drastic conorm admits).
#[test]
fn drastic_one_hot_negation_laws() {
    let omega = omega(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let hot = rng.random_range(0..3);
        let mut degrees = [0.0; 3];
        degrees[hot] = rng.random_range(0.05..=1.0);
        let space = MembershipSpace::new(
            omega.clone(),
            AlgebraTriple::from_tnorm(TNorm::Drastic),
            degrees.iter().map(|&v| deg(v)).collect(),
        )
        .unwrap();
        assert!(space
            .check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE)
            .passes());
        for e in vague_core::expr::enumerate_exprs(&omega, 1) {
            let not = AttributeExpr::not;
            let double = value(&space, &not(not(e.clone())));
            assert!((double - value(&space, &e)).abs() <= DEFAULT_TOLERANCE);
        }
        let a = AttributeExpr::elem("a");
        let b = AttributeExpr::elem("b");
        let lhs = value(
            &space,
            &AttributeExpr::not(AttributeExpr::Or(vec![a.clone(), b.clone()])),
        );
        let rhs = value(
            &space,
            &AttributeExpr::And(vec![AttributeExpr::not(a), AttributeExpr::not(b)]),
        );
        assert!((lhs - rhs).abs() <= DEFAULT_TOLERANCE);
    }
}

fn value_owned(space: &MembershipSpace, expr: &AttributeExpr) -> f64 {
    space.evaluate(expr).unwrap().value()
}

/// The canonical mutual-exclusivity failure: 0.8/0.7 under max.
#[test]
fn axiom_v_counterexample_shape() {
    let space = space_with(&["p", "q"], &[0.8, 0.7], TNorm::Minimum);
    let report = space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE);
    assert!(!report.axiom_v.passed);
    assert!(value_owned(&space, &AttributeExpr::not(AttributeExpr::elem("p"))) < 0.7);
}
