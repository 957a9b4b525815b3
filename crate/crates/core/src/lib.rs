//! Vague membership degrees, axiomatically.
//!
//! A membership space assigns degrees in `[0, 1]` to the vague
//! attributes of one universe point, compositionally over a free
//! algebra of `and`/`or`/`not` interpreted by a t-norm, its dual
//! t-conorm and a strong negation. On top of that sit product spaces
//! with vector-valued degrees, vague variables with membership-degree
//! distribution functions, and vague partitions over a sampled universe
//! that generate fuzzy sets.
//!
//! Modules follow the layering:
//!
//! - [`algebra`]: t-norms, t-conorms, negations, residua.
//! - [`expr`]: attribute expressions, their text DSL and enumeration.
//! - [`space`]: membership evaluation and the axiom checks.
//! - [`sample`]: rejection sampling of valid spaces.
//! - [`product`]: componentwise product spaces over `[0, 1]^n`.
//! - [`variables`]: vague variables, CDFs and balanced values.
//! - [`partition`]: universe-indexed partitions, fuzzy sets, processes.
//! - [`io`]: the JSON file formats plus CSV output.
//!
//! ```
//! use vague_core::{AlgebraTriple, AttributeSet, Degree, MembershipSpace, TNorm};
//! use vague_core::{parse_expr, AxiomProfile, DEFAULT_TOLERANCE};
//!
//! let omega = AttributeSet::new(["Short", "Medium", "Tall"])?;
//! let space = MembershipSpace::new(
//!     omega,
//!     AlgebraTriple::from_tnorm(TNorm::Minimum),
//!     vec![Degree::new(0.7)?, Degree::new(0.3)?, Degree::new(0.0)?],
//! )?;
//! let lower_medium = parse_expr("Short or Medium", space.omega())?;
//! assert_eq!(space.evaluate(&lower_medium)?.value(), 0.7);
//! assert!(space.check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE).passes());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod algebra;
pub mod expr;
pub mod io;
pub mod partition;
pub mod product;
pub mod sample;
pub mod space;
pub mod variables;

pub use algebra::{
    classify_negation, AlgebraError, AlgebraTriple, Degree, Negation, NegationClass, TConorm,
    TNorm, TNormOrder, DEFAULT_TOLERANCE,
};
pub use expr::{
    enumerate_exprs, format_expr, parse_expr, AttributeExpr, AttributeSet, ExprError, UniverseInfo,
};
pub use partition::{FuzzySet, PartitionError, PartitionProcess, PartitionReport, VaguePartition};
pub use product::{ProductError, ProductSpace, VectorDegree, VectorOrder};
pub use space::{
    AxiomProfile, AxiomReport, LimitCheck, LimitReport, MembershipSpace, QuotientClass, SpaceError,
    Verdict,
};
pub use variables::{CdfCurve, CdfTheoremReport, VagueVariable, VagueVector, VariableError};

#[cfg(test)]
mod tests {
    use super::*;

    /// Everything is immutable plain data; sharing across threads is
    /// part of the contract.
    #[test]
    fn core_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<Degree>();
        check::<AlgebraTriple>();
        check::<AttributeSet>();
        check::<AttributeExpr>();
        check::<MembershipSpace>();
        check::<AxiomReport>();
        check::<ProductSpace>();
        check::<VectorDegree>();
        check::<VagueVariable>();
        check::<CdfCurve>();
        check::<VaguePartition>();
        check::<PartitionProcess>();
    }
}
