//! Triangular norms, conorms and negations on the unit interval.
//!
//! These are the connectives a membership space interprets `and`, `or`
//! and `not` with. Only the four basic families are provided; they form
//! a closed set, ordered pointwise, and each t-norm has an `N`-dual
//! t-conorm under the standard negation.

use std::fmt;

use thiserror::Error;

/// Default comparison tolerance for degree equality.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Errors from degree construction and algebra assembly.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(f64),
    #[error("degree must not be NaN")]
    DegreeNan,
    #[error("{negation} negation is {class:?}, but the algebra requires a strong negation")]
    NegationNotStrong {
        negation: Negation,
        class: NegationClass,
    },
    #[error("{tconorm} is not the dual t-conorm of {tnorm}")]
    NotDual { tnorm: TNorm, tconorm: TConorm },
    #[error("sample grid must not be empty")]
    EmptySamples,
}

/// A membership degree: a finite real in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Degree(f64);

impl Degree {
    pub const ZERO: Degree = Degree(0.0);
    pub const ONE: Degree = Degree(1.0);

    pub fn new(value: f64) -> Result<Degree, AlgebraError> {
        if value.is_nan() {
            Err(AlgebraError::DegreeNan)
        } else if !(0.0..=1.0).contains(&value) {
            Err(AlgebraError::DegreeOutOfRange(value))
        } else {
            Ok(Degree(value))
        }
    }

    /// Clamps to `[0, 1]`. Used where a formula guarantees the range
    /// mathematically but rounding may step over a boundary.
    pub fn clamped(value: f64) -> Degree {
        debug_assert!(!value.is_nan());
        Degree(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Equality within `tol`.
    pub fn approx_eq(self, other: Degree, tol: f64) -> bool {
        (self.0 - other.0).abs() <= tol
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Degree {
    type Error = AlgebraError;
    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Degree::new(value)
    }
}

/// The four basic t-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
    Drastic,
}

/// The four basic t-conorms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TConorm {
    Maximum,
    ProbabilisticSum,
    Lukasiewicz,
    DrasticSum,
}

/// Built-in negation functions on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Negation {
    /// `1 - x`; the only strong negation of the three.
    Standard,
    /// `1 - x^2`; strict but not an involution.
    OneMinusSquare,
    /// `1` at zero, `0` elsewhere; not even strict.
    Goedel,
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Drastic => "drastic",
        })
    }
}

impl fmt::Display for TConorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TConorm::Maximum => "maximum",
            TConorm::ProbabilisticSum => "probabilistic_sum",
            TConorm::Lukasiewicz => "lukasiewicz",
            TConorm::DrasticSum => "drastic_sum",
        })
    }
}

impl fmt::Display for Negation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Negation::Standard => "standard",
            Negation::OneMinusSquare => "one_minus_square",
            Negation::Goedel => "goedel",
        })
    }
}

impl TNorm {
    pub const ALL: [TNorm; 4] = [
        TNorm::Minimum,
        TNorm::Product,
        TNorm::Lukasiewicz,
        TNorm::Drastic,
    ];

    pub fn eval(self, x: Degree, y: Degree) -> Degree {
        let (x, y) = (x.0, y.0);
        // T(0, y) = 0 and T(x, 1) = x hold for every t-norm; short-circuiting
        // keeps the boundary identities exact in floating point.
        if x == 0.0 || y == 0.0 {
            return Degree::ZERO;
        }
        if x == 1.0 {
            return Degree(y);
        }
        if y == 1.0 {
            return Degree(x);
        }
        match self {
            TNorm::Minimum => Degree(x.min(y)),
            TNorm::Product => Degree(x * y),
            TNorm::Lukasiewicz => Degree((x + y - 1.0).max(0.0)),
            // Both arguments are in [0, 1) here.
            TNorm::Drastic => Degree::ZERO,
        }
    }

    /// Left fold; the empty product is the unit 1.
    pub fn fold<I: IntoIterator<Item = Degree>>(self, values: I) -> Degree {
        values
            .into_iter()
            .fold(Degree::ONE, |acc, v| self.eval(acc, v))
    }

    /// The `N`-dual t-conorm under the standard negation.
    pub fn dual(self) -> TConorm {
        match self {
            TNorm::Minimum => TConorm::Maximum,
            TNorm::Product => TConorm::ProbabilisticSum,
            TNorm::Lukasiewicz => TConorm::Lukasiewicz,
            TNorm::Drastic => TConorm::DrasticSum,
        }
    }

    /// Residual implication `sup { z | T(a, z) <= b }` in closed form.
    ///
    /// For the drastic t-norm the set contains `[0, 1)` whenever `a < 1`,
    /// so the supremum is 1 even though it is not attained.
    pub fn residuum(self, a: Degree, b: Degree) -> Degree {
        let (a, b) = (a.0, b.0);
        if a <= b {
            return Degree::ONE;
        }
        match self {
            TNorm::Minimum => Degree(b),
            TNorm::Product => Degree::clamped(b / a),
            TNorm::Lukasiewicz => Degree::clamped(1.0 - a + b),
            TNorm::Drastic => {
                if a < 1.0 {
                    Degree::ONE
                } else {
                    Degree(b)
                }
            }
        }
    }

    /// Pointwise comparison over a sample grid, per the weaker/stronger
    /// order on t-norms.
    pub fn compare(self, other: TNorm, grid: &[(f64, f64)], tol: f64) -> TNormOrder {
        let mut le = true;
        let mut ge = true;
        for &(x, y) in grid {
            let a = self.eval(Degree::clamped(x), Degree::clamped(y)).value();
            let b = other.eval(Degree::clamped(x), Degree::clamped(y)).value();
            if a > b + tol {
                le = false;
            }
            if b > a + tol {
                ge = false;
            }
        }
        match (le, ge) {
            (true, true) => TNormOrder::Equal,
            (true, false) => TNormOrder::Weaker,
            (false, true) => TNormOrder::Stronger,
            (false, false) => TNormOrder::Incomparable,
        }
    }
}

/// Outcome of the pointwise comparison of two t-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TNormOrder {
    Weaker,
    Stronger,
    Equal,
    Incomparable,
}

impl TConorm {
    pub const ALL: [TConorm; 4] = [
        TConorm::Maximum,
        TConorm::ProbabilisticSum,
        TConorm::Lukasiewicz,
        TConorm::DrasticSum,
    ];

    pub fn eval(self, x: Degree, y: Degree) -> Degree {
        let (x, y) = (x.0, y.0);
        // S(x, 0) = x and S(x, 1) = 1 hold for every t-conorm.
        if x == 0.0 {
            return Degree(y);
        }
        if y == 0.0 {
            return Degree(x);
        }
        if x == 1.0 || y == 1.0 {
            return Degree::ONE;
        }
        match self {
            TConorm::Maximum => Degree(x.max(y)),
            // x + y(1 - x): never rounds below x, so folds stay monotone.
            TConorm::ProbabilisticSum => Degree::clamped(x + y * (1.0 - x)),
            TConorm::Lukasiewicz => Degree((x + y).min(1.0)),
            // Both arguments are in (0, 1) here.
            TConorm::DrasticSum => Degree::ONE,
        }
    }

    /// Left fold; the empty sum is the unit 0.
    pub fn fold<I: IntoIterator<Item = Degree>>(self, values: I) -> Degree {
        values
            .into_iter()
            .fold(Degree::ZERO, |acc, v| self.eval(acc, v))
    }

    /// The t-norm this conorm is dual to under the standard negation.
    pub fn dual(self) -> TNorm {
        match self {
            TConorm::Maximum => TNorm::Minimum,
            TConorm::ProbabilisticSum => TNorm::Product,
            TConorm::Lukasiewicz => TNorm::Lukasiewicz,
            TConorm::DrasticSum => TNorm::Drastic,
        }
    }
}

impl Negation {
    pub const ALL: [Negation; 3] = [
        Negation::Standard,
        Negation::OneMinusSquare,
        Negation::Goedel,
    ];

    pub fn eval(self, x: Degree) -> Degree {
        let x = x.0;
        match self {
            Negation::Standard => Degree(1.0 - x),
            Negation::OneMinusSquare => Degree::clamped(1.0 - x * x),
            Negation::Goedel => {
                if x == 0.0 {
                    Degree::ONE
                } else {
                    Degree::ZERO
                }
            }
        }
    }

    pub fn is_strong(self) -> bool {
        matches!(self, Negation::Standard)
    }
}

/// How much of the negation hierarchy a sampled unary map satisfies.
///
/// Variants are ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NegationClass {
    NotNegation,
    Negation,
    Strict,
    Strong,
}

/// Classifies a unary map on a uniform grid over `[0, 1]`.
///
/// `steps` is the number of grid intervals (so `steps + 1` samples,
/// always including 0 and 1). The check is numeric, not symbolic: it
/// verifies the boundary values, monotonicity, strict decrease and the
/// involution law on the samples only.
pub fn classify_negation<F: Fn(f64) -> f64>(
    f: F,
    steps: usize,
    tol: f64,
) -> Result<NegationClass, AlgebraError> {
    if steps == 0 {
        return Err(AlgebraError::EmptySamples);
    }
    let xs: Vec<f64> = (0..=steps).map(|i| i as f64 / steps as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    if ys.iter().any(|y| y.is_nan() || !(0.0..=1.0).contains(y)) {
        return Ok(NegationClass::NotNegation);
    }
    // N1: endpoints, plus non-increase everywhere.
    if (ys[0] - 1.0).abs() > tol || ys[steps].abs() > tol {
        return Ok(NegationClass::NotNegation);
    }
    if ys.windows(2).any(|w| w[1] > w[0] + tol) {
        return Ok(NegationClass::NotNegation);
    }
    // N2/N3 on samples: strict decrease between consecutive grid points.
    if ys.windows(2).any(|w| w[0] - w[1] <= tol) {
        return Ok(NegationClass::Negation);
    }
    // N4: involution.
    if xs.iter().any(|&x| (f(f(x)) - x).abs() > tol) {
        return Ok(NegationClass::Strict);
    }
    Ok(NegationClass::Strong)
}

/// Grid+bisection evaluation of `sup { z | T(a, z) <= b }`.
///
/// Validation fallback for [`TNorm::residuum`]: it only uses `eval`,
/// never the closed forms. The predicate is antitone in `z`, so a coarse
/// scan brackets the boundary and bisection refines it.
pub fn residuum_search(tnorm: TNorm, a: Degree, b: Degree, iterations: u32) -> Degree {
    let pred = |z: f64| tnorm.eval(a, Degree::clamped(z)).value() <= b.value();
    if pred(1.0) {
        return Degree::ONE;
    }
    const COARSE: usize = 64;
    let mut lo = 0.0;
    let mut hi = 1.0;
    for i in (0..COARSE).rev() {
        let z = i as f64 / COARSE as f64;
        if pred(z) {
            lo = z;
            hi = (i + 1) as f64 / COARSE as f64;
            break;
        }
    }
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Degree::clamped(lo)
}

/// A strong negation together with an `N`-dual t-conorm/t-norm pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraTriple {
    negation: Negation,
    tconorm: TConorm,
    tnorm: TNorm,
}

impl AlgebraTriple {
    /// Assembles a triple, rejecting non-strong negations and
    /// norm/conorm pairs that are not mutually dual.
    pub fn new(tnorm: TNorm, tconorm: TConorm, negation: Negation) -> Result<Self, AlgebraError> {
        if !negation.is_strong() {
            let class = classify_negation(
                |x| negation.eval(Degree::clamped(x)).value(),
                1024,
                DEFAULT_TOLERANCE,
            )
            .expect("non-empty grid");
            return Err(AlgebraError::NegationNotStrong { negation, class });
        }
        if tnorm.dual() != tconorm {
            return Err(AlgebraError::NotDual { tnorm, tconorm });
        }
        Ok(AlgebraTriple {
            negation,
            tconorm,
            tnorm,
        })
    }

    /// The triple generated by a t-norm: its dual t-conorm and the
    /// standard negation.
    pub fn from_tnorm(tnorm: TNorm) -> Self {
        AlgebraTriple {
            negation: Negation::Standard,
            tconorm: tnorm.dual(),
            tnorm,
        }
    }

    pub fn tnorm(&self) -> TNorm {
        self.tnorm
    }

    pub fn tconorm(&self) -> TConorm {
        self.tconorm
    }

    pub fn negation(&self) -> Negation {
        self.negation
    }

    /// Checks `S(x, y) = N(T(N(x), N(y)))` on a uniform grid.
    pub fn verify_duality(&self, steps: usize, tol: f64) -> bool {
        let n = |d: Degree| self.negation.eval(d);
        for i in 0..=steps {
            for j in 0..=steps {
                let x = Degree::clamped(i as f64 / steps as f64);
                let y = Degree::clamped(j as f64 / steps as f64);
                let direct = self.tconorm.eval(x, y).value();
                let via_dual = n(self.tnorm.eval(n(x), n(y))).value();
                if (direct - via_dual).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Uniform samples of `[0, 1]`: `i / steps` for `i = 0..=steps`.
pub fn unit_samples(steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| i as f64 / steps as f64).collect()
}

/// All pairs `(i/steps, j/steps)` strictly inside `(0, 1)^2`.
pub fn interior_grid(steps: usize) -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(steps.saturating_sub(1).pow(2));
    for i in 1..steps {
        for j in 1..steps {
            grid.push((i as f64 / steps as f64, j as f64 / steps as f64));
        }
    }
    grid
}
