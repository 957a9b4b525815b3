//! Product membership spaces with vector-valued degrees in `[0, 1]^n`.
//!
//! A product bundles component spaces (possibly with different
//! algebras); evaluation, bounds and negation all act componentwise.
//! The product attribute set is the Cartesian product of the component
//! sets; it is iterated lazily and never materialized.

use thiserror::Error;

use crate::algebra::Degree;
use crate::expr::AttributeExpr;
use crate::space::{AxiomProfile, AxiomReport, MembershipSpace, SpaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProductError {
    #[error("a product needs at least one component space")]
    Empty,
    #[error("expected {expected} expressions, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("product attribute set has {size} tuples, above the iteration guard of {max}")]
    OmegaTooLarge { size: u128, max: u128 },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Guard on Cartesian iteration; anything larger is refused.
pub const MAX_OMEGA_TUPLES: u128 = 1_000_000;

/// A degree vector in `[0, 1]^n`, one entry per component space.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorDegree(Vec<Degree>);

/// Componentwise comparison outcome of two degree vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorOrder {
    Below,
    Above,
    Equal,
    Incomparable,
}

impl VectorDegree {
    pub fn new(values: Vec<Degree>) -> Self {
        VectorDegree(values)
    }

    /// The bottom vector (0, ..., 0).
    pub fn zero(n: usize) -> Self {
        VectorDegree(vec![Degree::ZERO; n])
    }

    /// The top vector (1, ..., 1).
    pub fn one(n: usize) -> Self {
        VectorDegree(vec![Degree::ONE; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Degree] {
        &self.0
    }

    fn check_len(&self, other: &VectorDegree) -> Result<(), ProductError> {
        if self.len() != other.len() {
            return Err(ProductError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Componentwise order: below/above are non-strict and exclude
    /// equality, which is reported separately.
    pub fn order(&self, other: &VectorDegree) -> Result<VectorOrder, ProductError> {
        self.check_len(other)?;
        let mut le = true;
        let mut ge = true;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a.value() > b.value() {
                le = false;
            }
            if a.value() < b.value() {
                ge = false;
            }
        }
        Ok(match (le, ge) {
            (true, true) => VectorOrder::Equal,
            (true, false) => VectorOrder::Below,
            (false, true) => VectorOrder::Above,
            (false, false) => VectorOrder::Incomparable,
        })
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &VectorDegree) -> Result<VectorDegree, ProductError> {
        self.check_len(other)?;
        Ok(VectorDegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a.value() >= b.value() { *a } else { *b })
                .collect(),
        ))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &VectorDegree) -> Result<VectorDegree, ProductError> {
        self.check_len(other)?;
        Ok(VectorDegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a.value() <= b.value() { *a } else { *b })
                .collect(),
        ))
    }
}

/// An ordered bundle of membership spaces acting as one n-dimensional
/// space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace {
    components: Vec<MembershipSpace>,
}

impl ProductSpace {
    pub fn new(components: Vec<MembershipSpace>) -> Result<Self, ProductError> {
        if components.is_empty() {
            return Err(ProductError::Empty);
        }
        Ok(ProductSpace { components })
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MembershipSpace] {
        &self.components
    }

    /// Number of tuples in the product attribute set.
    pub fn omega_size(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.omega().len() as u128)
            .product()
    }

    /// Lazily iterates the product attribute set as name tuples, in
    /// odometer order. Refused above [`MAX_OMEGA_TUPLES`].
    pub fn omega_tuples(&self) -> Result<OmegaTuples<'_>, ProductError> {
        let size = self.omega_size();
        if size > MAX_OMEGA_TUPLES {
            return Err(ProductError::OmegaTooLarge {
                size,
                max: MAX_OMEGA_TUPLES,
            });
        }
        Ok(OmegaTuples {
            product: self,
            cursor: vec![0; self.arity()],
            done: false,
        })
    }

    /// Componentwise evaluation of an expression tuple.
    pub fn evaluate(&self, exprs: &[AttributeExpr]) -> Result<VectorDegree, ProductError> {
        if exprs.len() != self.arity() {
            return Err(ProductError::ArityMismatch {
                expected: self.arity(),
                got: exprs.len(),
            });
        }
        let values = self
            .components
            .iter()
            .zip(exprs)
            .map(|(space, expr)| space.evaluate(expr))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorDegree(values))
    }

    /// A product is normal exactly when every component is.
    pub fn is_normal(&self, tol: f64) -> bool {
        self.components.iter().all(|c| c.is_normal(tol))
    }

    /// A product is regular exactly when every component is.
    pub fn is_regular(&self, tol: f64) -> bool {
        self.components.iter().all(|c| c.is_regular(tol))
    }

    /// Axiom reports of all components under one profile.
    pub fn check_components(&self, profile: AxiomProfile, tol: f64) -> Vec<AxiomReport> {
        self.components
            .iter()
            .map(|c| c.check_axioms(profile, tol))
            .collect()
    }
}

/// Lazy odometer over the Cartesian product of component attribute sets.
pub struct OmegaTuples<'a> {
    product: &'a ProductSpace,
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> Iterator for OmegaTuples<'a> {
    type Item = Vec<&'a str>;

    fn next(&mut self) -> Option<Vec<&'a str>> {
        if self.done {
            return None;
        }
        let tuple: Vec<&str> = self
            .cursor
            .iter()
            .zip(self.product.components())
            .map(|(&i, c)| c.omega().names()[i].as_str())
            .collect();
        // Advance the rightmost digit.
        let mut pos = self.cursor.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.cursor[pos] += 1;
            if self.cursor[pos] < self.product.components()[pos].omega().len() {
                break;
            }
            self.cursor[pos] = 0;
        }
        Some(tuple)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraTriple, TNorm};
    use crate::expr::AttributeSet;

    fn deg(v: f64) -> Degree {
        Degree::new(v).unwrap()
    }

    fn space(names: &[&str], degrees: &[f64], tnorm: TNorm) -> MembershipSpace {
        MembershipSpace::new(
            AttributeSet::new(names.iter().copied()).unwrap(),
            AlgebraTriple::from_tnorm(tnorm),
            degrees.iter().map(|&v| deg(v)).collect(),
        )
        .unwrap()
    }

    fn five(degrees: &[f64]) -> MembershipSpace {
        space(&["a", "b", "c", "d", "e"], degrees, TNorm::Minimum)
    }

    #[test]
    fn cartesian_size_and_iteration() {
        let p = ProductSpace::new(vec![
            five(&[1.0, 0.0, 0.0, 0.0, 0.0]),
            five(&[0.0, 1.0, 0.0, 0.0, 0.0]),
        ])
        .unwrap();
        assert_eq!(p.omega_size(), 25);
        let tuples: Vec<_> = p.omega_tuples().unwrap().collect();
        assert_eq!(tuples.len(), 25);
        assert_eq!(tuples[0], vec!["a", "a"]);
        assert_eq!(tuples[1], vec!["a", "b"]);
        assert_eq!(tuples[24], vec!["e", "e"]);
    }

    #[test]
    fn iteration_guard() {
        // 8 components x 10 attributes = 10^8 tuples.
        let comp = space(
            &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"],
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            TNorm::Minimum,
        );
        let p = ProductSpace::new(vec![comp; 8]).unwrap();
        assert!(matches!(
            p.omega_tuples(),
            Err(ProductError::OmegaTooLarge { size, .. }) if size == 100_000_000
        ));
    }

    #[test]
    fn single_component_degenerates_to_scalar() {
        let c = space(&["p", "q"], &[0.8, 0.1], TNorm::Product);
        let p = ProductSpace::new(vec![c.clone()]).unwrap();
        let e = AttributeExpr::elem("p");
        let vector = p.evaluate(std::slice::from_ref(&e)).unwrap();
        assert_eq!(vector.components()[0], c.evaluate(&e).unwrap());
    }

    #[test]
    fn empty_product_is_rejected() {
        assert_eq!(ProductSpace::new(vec![]).unwrap_err(), ProductError::Empty);
    }

    #[test]
    fn bot_and_top_tuples_hit_the_bounds() {
        let p = ProductSpace::new(vec![
            space(&["p"], &[0.4], TNorm::Minimum),
            space(&["q"], &[0.9], TNorm::Lukasiewicz),
        ])
        .unwrap();
        let bots = vec![AttributeExpr::Bot, AttributeExpr::Bot];
        let tops = vec![AttributeExpr::Top, AttributeExpr::Top];
        assert_eq!(p.evaluate(&bots).unwrap(), VectorDegree::zero(2));
        assert_eq!(p.evaluate(&tops).unwrap(), VectorDegree::one(2));
    }

    #[test]
    fn componentwise_evaluation() {
        let left = space(&["p", "r"], &[0.8, 0.0], TNorm::Minimum);
        let right = space(&["q", "s"], &[0.3, 0.0], TNorm::Product);
        let p = ProductSpace::new(vec![left, right]).unwrap();
        let exprs = vec![AttributeExpr::elem("p"), AttributeExpr::elem("q")];
        let v = p.evaluate(&exprs).unwrap();
        assert_eq!(v.components()[0].value(), 0.8);
        assert_eq!(v.components()[1].value(), 0.3);
        assert!(matches!(
            p.evaluate(&[AttributeExpr::Bot]),
            Err(ProductError::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn normality_requires_every_component() {
        let normal = five(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        let hazy = five(&[0.6, 0.3, 0.0, 0.0, 0.0]);
        let both_normal = ProductSpace::new(vec![normal.clone(), normal.clone()]).unwrap();
        assert!(both_normal.is_normal(1e-9));
        let mixed = ProductSpace::new(vec![normal, hazy]).unwrap();
        assert!(!mixed.is_normal(1e-9));
    }

    #[test]
    fn vector_order_join_meet() {
        let a = VectorDegree::new(vec![deg(0.2), deg(0.5)]);
        let b = VectorDegree::new(vec![deg(0.3), deg(0.9)]);
        assert_eq!(a.order(&b).unwrap(), VectorOrder::Below);
        assert_eq!(b.order(&a).unwrap(), VectorOrder::Above);
        assert_eq!(
            a.join(&b).unwrap(),
            VectorDegree::new(vec![deg(0.3), deg(0.9)])
        );

        let c = VectorDegree::new(vec![deg(0.2), deg(0.9)]);
        let d = VectorDegree::new(vec![deg(0.3), deg(0.5)]);
        assert_eq!(c.order(&d).unwrap(), VectorOrder::Incomparable);
        assert_eq!(
            c.join(&d).unwrap(),
            VectorDegree::new(vec![deg(0.3), deg(0.9)])
        );
        assert_eq!(
            c.meet(&d).unwrap(),
            VectorDegree::new(vec![deg(0.2), deg(0.5)])
        );

        assert_eq!(a.order(&a).unwrap(), VectorOrder::Equal);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.meet(&a).unwrap(), a);

        let short = VectorDegree::new(vec![deg(0.1)]);
        assert!(matches!(
            a.order(&short),
            Err(ProductError::LengthMismatch { left: 2, right: 1 })
        ));
    }
}
