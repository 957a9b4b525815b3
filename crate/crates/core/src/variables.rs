//! Vague variables and their membership-degree distribution functions.
//!
//! A vague variable labels each elementary attribute with a real; the
//! distinguished elements are fixed at `X(top) = +inf`, `X(bot) = -inf`.
//! Its CDF folds the membership degrees of the sublevel set
//! `{ p | X(p) <= t }` with the space's conorm, so the top element only
//! enters at `t = +inf` and the finite-argument supremum is the space's
//! consistent degree.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::Degree;
use crate::space::MembershipSpace;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VariableError {
    #[error("variable `{variable}` has no value for attribute `{attribute}`")]
    MissingValue { variable: String, attribute: String },
    #[error("variable `{variable}` names unknown attribute `{attribute}`")]
    UnknownAttribute { variable: String, attribute: String },
    #[error("variable `{variable}` maps `{attribute}` to the non-finite value {value}")]
    NonFiniteValue {
        variable: String,
        attribute: String,
        value: f64,
    },
    #[error("expected {expected} thresholds, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("component index {index} out of range for a {len}-dimensional vector")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("a vague vector needs at least one component")]
    EmptyVector,
    #[error("all elementary degrees are zero; the balanced value is undefined")]
    ZeroDenominator,
}

/// A real-valued labeling of the elementary attributes. The values at
/// `top`/`bot` are implicit (`+inf`/`-inf`) and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct VagueVariable {
    name: String,
    values: BTreeMap<String, f64>,
}

impl VagueVariable {
    pub fn new(
        name: impl Into<String>,
        values: BTreeMap<String, f64>,
    ) -> Result<Self, VariableError> {
        let name = name.into();
        for (attribute, &value) in &values {
            if !value.is_finite() {
                return Err(VariableError::NonFiniteValue {
                    variable: name,
                    attribute: attribute.clone(),
                    value,
                });
            }
        }
        Ok(VagueVariable { name, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, attribute: &str) -> Option<f64> {
        self.values.get(attribute).copied()
    }

    /// Checks the variable is total on the space's attribute set and
    /// names nothing outside it.
    pub fn validate_against(&self, space: &MembershipSpace) -> Result<(), VariableError> {
        for name in space.omega().names() {
            if !self.values.contains_key(name) {
                return Err(VariableError::MissingValue {
                    variable: self.name.clone(),
                    attribute: name.clone(),
                });
            }
        }
        for name in self.values.keys() {
            if !space.omega().contains(name) {
                return Err(VariableError::UnknownAttribute {
                    variable: self.name.clone(),
                    attribute: name.clone(),
                });
            }
        }
        Ok(())
    }
}

/// An ordered tuple of vague variables over one attribute set.
#[derive(Debug, Clone, PartialEq)]
pub struct VagueVector(Vec<VagueVariable>);

impl VagueVector {
    pub fn new(components: Vec<VagueVariable>) -> Result<Self, VariableError> {
        if components.is_empty() {
            return Err(VariableError::EmptyVector);
        }
        Ok(VagueVector(components))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: a vector has at least one component.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[VagueVariable] {
        &self.0
    }
}

/// A CDF as a step function: `(threshold, degree)` breakpoints with
/// ascending thresholds, starting at `(-inf, 0)` and ending at
/// `(+inf, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfCurve {
    points: Vec<(f64, Degree)>,
}

impl CdfCurve {
    pub fn points(&self) -> &[(f64, Degree)] {
        &self.points
    }

    /// Value of the step function at `t` (the degree of the largest
    /// breakpoint threshold `<= t`).
    pub fn at(&self, t: f64) -> Degree {
        let mut current = Degree::ZERO;
        for &(threshold, degree) in &self.points {
            if threshold <= t {
                current = degree;
            } else {
                break;
            }
        }
        current
    }
}

/// `F_X(t)`: the conorm fold of the degrees of `{ p | X(p) <= t }`,
/// with the bottom element contributing 0 and the top element (degree 1)
/// qualifying only at `t = +inf`.
pub fn cdf(
    space: &MembershipSpace,
    variable: &VagueVariable,
    t: f64,
) -> Result<Degree, VariableError> {
    variable.validate_against(space)?;
    let tconorm = space.algebra().tconorm();
    let mut acc = Degree::ZERO; // the bottom element's degree
    for (name, degree) in space.omega().names().iter().zip(space.degrees()) {
        let value = variable.value(name).expect("validated total");
        if value <= t {
            acc = tconorm.eval(acc, *degree);
        }
    }
    if t == f64::INFINITY {
        acc = tconorm.eval(acc, Degree::ONE);
    }
    Ok(acc)
}

/// The full step function of `F_X`: breakpoints at the sorted distinct
/// variable values over the attribute set, plus both infinities.
pub fn cdf_curve(
    space: &MembershipSpace,
    variable: &VagueVariable,
) -> Result<CdfCurve, VariableError> {
    variable.validate_against(space)?;
    let mut thresholds: Vec<f64> = space
        .omega()
        .names()
        .iter()
        .map(|name| variable.value(name).expect("validated total"))
        .collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let mut points = Vec::with_capacity(thresholds.len() + 2);
    points.push((f64::NEG_INFINITY, cdf(space, variable, f64::NEG_INFINITY)?));
    for t in thresholds {
        points.push((t, cdf(space, variable, t)?));
    }
    points.push((f64::INFINITY, cdf(space, variable, f64::INFINITY)?));
    Ok(CdfCurve { points })
}

/// Joint CDF of a vague vector: folds over the attributes satisfying
/// every componentwise threshold. The top element qualifies only when
/// every threshold is `+inf`.
pub fn joint_cdf(
    space: &MembershipSpace,
    vector: &VagueVector,
    thresholds: &[f64],
) -> Result<Degree, VariableError> {
    if thresholds.len() != vector.len() {
        return Err(VariableError::ArityMismatch {
            expected: vector.len(),
            got: thresholds.len(),
        });
    }
    for component in vector.components() {
        component.validate_against(space)?;
    }
    let tconorm = space.algebra().tconorm();
    let mut acc = Degree::ZERO;
    for (name, degree) in space.omega().names().iter().zip(space.degrees()) {
        let qualifies = vector
            .components()
            .iter()
            .zip(thresholds)
            .all(|(component, &t)| component.value(name).expect("validated total") <= t);
        if qualifies {
            acc = tconorm.eval(acc, *degree);
        }
    }
    if thresholds.iter().all(|&t| t == f64::INFINITY) {
        acc = tconorm.eval(acc, Degree::ONE);
    }
    Ok(acc)
}

/// Marginal CDF of component `index` (0-based): the plain CDF curve of
/// that variable.
pub fn marginal_cdf(
    space: &MembershipSpace,
    vector: &VagueVector,
    index: usize,
) -> Result<CdfCurve, VariableError> {
    let component = vector
        .components()
        .get(index)
        .ok_or(VariableError::IndexOutOfRange {
            index,
            len: vector.len(),
        })?;
    cdf_curve(space, component)
}

/// The degree-weighted average of a discrete vague variable:
/// `sum X(p) M(p) / sum M(p)`, summed over the elementary attributes
/// only (never over `top`/`bot`).
pub fn balanced_value(
    space: &MembershipSpace,
    variable: &VagueVariable,
) -> Result<f64, VariableError> {
    variable.validate_against(space)?;
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for (name, degree) in space.omega().names().iter().zip(space.degrees()) {
        let value = variable.value(name).expect("validated total");
        numerator += value * degree.value();
        denominator += degree.value();
    }
    if denominator <= 0.0 {
        return Err(VariableError::ZeroDenominator);
    }
    Ok(numerator / denominator)
}

/// What the distribution-function checks found on one (space, variable)
/// pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfTheoremReport {
    /// Nondecreasing over the breakpoints and every probe.
    pub nondecreasing: bool,
    /// `F(-inf) = 0` exactly.
    pub zero_at_neg_infinity: bool,
    /// `F(+inf) = 1` exactly.
    pub one_at_pos_infinity: bool,
    /// Largest value over finite arguments (attained at the largest
    /// breakpoint); equals the space's consistent degree.
    pub finite_supremum: f64,
    /// The step function is right-continuous at every breakpoint by
    /// construction; listed here are the finite breakpoints where it
    /// jumps, i.e. where left continuity fails.
    pub left_discontinuities: Vec<f64>,
}

impl CdfTheoremReport {
    pub fn right_continuous(&self) -> bool {
        true
    }
}

/// Verifies monotonicity and the limit values of `F_X` on the curve's
/// breakpoints plus the given probes, and reports the one-sided
/// continuity structure.
pub fn check_cdf_theorem(
    space: &MembershipSpace,
    variable: &VagueVariable,
    probes: &[f64],
    tol: f64,
) -> Result<CdfTheoremReport, VariableError> {
    let curve = cdf_curve(space, variable)?;
    let points = curve.points();
    let mut nondecreasing = points
        .windows(2)
        .all(|w| w[1].1.value() >= w[0].1.value() - tol);
    let mut sorted_probes: Vec<f64> = probes.iter().copied().filter(|p| !p.is_nan()).collect();
    sorted_probes.sort_by(f64::total_cmp);
    let mut last = f64::NEG_INFINITY;
    let mut last_value = cdf(space, variable, f64::NEG_INFINITY)?.value();
    for &probe in &sorted_probes {
        if probe < last {
            continue;
        }
        let value = cdf(space, variable, probe)?.value();
        if value < last_value - tol {
            nondecreasing = false;
        }
        last = probe;
        last_value = value;
    }
    let zero_at_neg_infinity = cdf(space, variable, f64::NEG_INFINITY)?.value() == 0.0;
    let one_at_pos_infinity = cdf(space, variable, f64::INFINITY)?.value() == 1.0;
    // Finite supremum: value at the largest finite breakpoint, or 0 when
    // the curve has no finite breakpoints (impossible for nonempty
    // attribute sets, which always induce at least one).
    let finite_supremum = points
        .iter()
        .rev()
        .find(|(t, _)| t.is_finite())
        .map(|(_, d)| d.value())
        .unwrap_or(0.0);
    let mut left_discontinuities = Vec::new();
    for w in points.windows(2) {
        let (prev, current) = (w[0], w[1]);
        if current.0.is_finite() && current.1.value() - prev.1.value() > tol {
            left_discontinuities.push(current.0);
        }
    }
    Ok(CdfTheoremReport {
        nondecreasing,
        zero_at_neg_infinity,
        one_at_pos_infinity,
        finite_supremum,
        left_discontinuities,
    })
}
