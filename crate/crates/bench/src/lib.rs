//! Shared fixture builders for the benchmark suite.

use std::collections::BTreeMap;

use vague_core::algebra::{AlgebraTriple, Degree, TNorm};
use vague_core::expr::{parse_expr, AttributeExpr, AttributeSet};
use vague_core::partition::VaguePartition;
use vague_core::space::MembershipSpace;
use vague_core::variables::VagueVariable;

pub const NAMES: [&str; 5] = ["very_low", "low", "medium", "high", "very_high"];

pub fn omega() -> AttributeSet {
    AttributeSet::new(NAMES.iter().copied()).unwrap()
}

pub fn space(tnorm: TNorm) -> MembershipSpace {
    let degrees = [0.1, 0.4, 0.5, 0.2, 0.0];
    MembershipSpace::new(
        omega(),
        AlgebraTriple::from_tnorm(tnorm),
        degrees.iter().map(|&v| Degree::new(v).unwrap()).collect(),
    )
    .unwrap()
}

/// A nested expression exercising every node kind.
pub fn deep_expr() -> AttributeExpr {
    let text =
        "not (very_low or (low and not medium)) and (high or not (low or very_high)) or medium";
    parse_expr(text, &omega()).unwrap()
}

/// A triangular partition over `samples` evenly spaced points.
pub fn partition(samples: usize) -> VaguePartition {
    let width = 100.0 / NAMES.len() as f64;
    let rows: Vec<(f64, BTreeMap<String, f64>)> = (0..samples)
        .map(|i| {
            let x = i as f64 * 100.0 / samples.max(1) as f64;
            let table = NAMES
                .iter()
                .enumerate()
                .map(|(k, name)| {
                    let center = width / 2.0 + k as f64 * width;
                    let mu = (1.0 - (x - center).abs() / width).clamp(0.0, 1.0);
                    (name.to_string(), mu)
                })
                .collect();
            (x, table)
        })
        .collect();
    VaguePartition::new(omega(), AlgebraTriple::from_tnorm(TNorm::Minimum), rows).unwrap()
}

pub fn staircase_variable() -> VagueVariable {
    let values = NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| (name.to_string(), i as f64))
        .collect();
    VagueVariable::new("staircase", values).unwrap()
}
