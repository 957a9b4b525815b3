//! Rejection sampling of valid membership spaces.
//!
//! Degree tables are drawn uniformly from `[0, 1]^|omega|` and kept only
//! when the requested axiom profile passes. Uniform draws almost never
//! hit the degenerate tables some algebras require (the drastic conorm
//! admits only one-hot tables), so a try budget bounds the search.

use rand::Rng;
use thiserror::Error;

use crate::algebra::{AlgebraTriple, Degree};
use crate::expr::AttributeSet;
use crate::space::{AxiomProfile, MembershipSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("no valid degree table found in {tries} tries for the {profile:?} profile")]
    Exhausted { tries: usize, profile: AxiomProfile },
}

pub const DEFAULT_MAX_TRIES: usize = 200_000;

/// Draws a regular space over `omega` whose degree table passes
/// `profile` at tolerance `tol`.
pub fn sample_space<R: Rng + ?Sized>(
    rng: &mut R,
    omega: &AttributeSet,
    algebra: AlgebraTriple,
    profile: AxiomProfile,
    tol: f64,
    max_tries: usize,
) -> Result<MembershipSpace, SampleError> {
    for _ in 0..max_tries {
        let degrees: Vec<Degree> = (0..omega.len())
            .map(|_| Degree::clamped(rng.random::<f64>()))
            .collect();
        let space = MembershipSpace::new(omega.clone(), algebra, degrees)
            .expect("degree count matches omega");
        if space.check_axioms(profile, tol).passes() {
            return Ok(space);
        }
    }
    Err(SampleError::Exhausted {
        tries: max_tries,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{TNorm, DEFAULT_TOLERANCE};
    use rand::SeedableRng;

    #[test]
    fn sampled_spaces_pass_their_profile() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let omega = AttributeSet::new(["a", "b", "c"]).unwrap();
        for tnorm in [TNorm::Minimum, TNorm::Lukasiewicz] {
            let algebra = AlgebraTriple::from_tnorm(tnorm);
            for _ in 0..50 {
                let space = sample_space(
                    &mut rng,
                    &omega,
                    algebra,
                    AxiomProfile::Default,
                    DEFAULT_TOLERANCE,
                    DEFAULT_MAX_TRIES,
                )
                .unwrap();
                assert!(space
                    .check_axioms(AxiomProfile::Default, DEFAULT_TOLERANCE)
                    .passes());
            }
        }
    }

    #[test]
    fn exhaustion_is_reported() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let omega = AttributeSet::new(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap();
        // Eight uniform degrees essentially never sum below 1.
        let err = sample_space(
            &mut rng,
            &omega,
            AlgebraTriple::from_tnorm(TNorm::Lukasiewicz),
            AxiomProfile::Strict,
            DEFAULT_TOLERANCE,
            50,
        )
        .unwrap_err();
        assert!(matches!(err, SampleError::Exhausted { tries: 50, .. }));
    }
}
