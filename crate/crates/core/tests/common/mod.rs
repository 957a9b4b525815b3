#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use vague_core::algebra::{AlgebraTriple, Degree, TNorm};
use vague_core::expr::{AttributeExpr, AttributeSet};
use vague_core::sample::{sample_space, DEFAULT_MAX_TRIES};
use vague_core::space::{AxiomProfile, MembershipSpace};
use vague_core::DEFAULT_TOLERANCE;

pub fn deg(v: f64) -> Degree {
    Degree::new(v).unwrap()
}

pub fn omega(names: &[&str]) -> AttributeSet {
    AttributeSet::new(names.iter().copied()).unwrap()
}

pub fn space_with(names: &[&str], degrees: &[f64], tnorm: TNorm) -> MembershipSpace {
    MembershipSpace::new(
        omega(names),
        AlgebraTriple::from_tnorm(tnorm),
        degrees.iter().map(|&v| deg(v)).collect(),
    )
    .unwrap()
}

/// A random valid regular space over `names` for a non-drastic t-norm.
pub fn random_valid_space<R: Rng + ?Sized>(
    rng: &mut R,
    names: &[&str],
    tnorm: TNorm,
) -> MembershipSpace {
    sample_space(
        rng,
        &omega(names),
        AlgebraTriple::from_tnorm(tnorm),
        AxiomProfile::Default,
        DEFAULT_TOLERANCE,
        DEFAULT_MAX_TRIES,
    )
    .expect("sampling budget")
}

/// Arbitrary expressions over the given names, nested up to `depth`.
pub fn arb_expr(names: Vec<String>, depth: u32) -> impl Strategy<Value = AttributeExpr> {
    let leaf = prop_oneof![
        Just(AttributeExpr::Bot),
        Just(AttributeExpr::Top),
        proptest::sample::select(names).prop_map(AttributeExpr::Elem),
    ];
    leaf.prop_recursive(depth, 64, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(AttributeExpr::not),
            proptest::collection::vec(inner.clone(), 2..=3).prop_map(AttributeExpr::And),
            proptest::collection::vec(inner, 2..=3).prop_map(AttributeExpr::Or),
        ]
    })
}

/// Degree tables accepted by the default profile for the given t-norm,
/// as a proptest strategy over three attributes `a`, `b`, `c`.
pub fn arb_valid_degrees(tnorm: TNorm) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0..=1.0f64, 3).prop_filter("axioms", move |degrees| {
        let space = space_with(&["a", "b", "c"], degrees, tnorm);
        space
            .check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE)
            .passes()
    })
}
