//! Vague partitions over a sampled universe, the fuzzy sets they
//! generate, and partition processes indexed by time or possible world.
//!
//! The universe is a finite grid of sample points; every quantifier
//! (separation, incompatibility, the global conditional) ranges over
//! those samples only.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraTriple, Degree};
use crate::expr::{AttributeExpr, AttributeSet};
use crate::space::{AxiomProfile, AxiomReport, MembershipSpace, SpaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("a partition needs at least one universe sample")]
    EmptyUniverse,
    #[error("duplicate universe sample x = {0}")]
    DuplicateSample(f64),
    #[error("universe sample x = {0} must be finite")]
    NonFiniteSample(f64),
    #[error("attribute `{0}` is not in the partition's attribute set")]
    UnknownAttribute(String),
    #[error("x = {0} is not a universe sample of this partition")]
    UnknownSample(f64),
    #[error("a process needs at least one step")]
    EmptyProcess,
    #[error("process step `{label}` does not share the process universe and attribute set")]
    ProcessMismatch { label: String },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A fuzzy set generated by fixing one attribute of a partition:
/// samples `(x, mu(x))` with `mu(x) = M_x(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    pub attribute: String,
    pub samples: Vec<(f64, Degree)>,
}

/// An elementary degree table in attribute-set order.
pub type DegreeRow = Vec<(String, Degree)>;

/// A family of membership spaces over one attribute set, indexed by the
/// universe samples (ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct VaguePartition {
    omega: AttributeSet,
    algebra: AlgebraTriple,
    universe: Vec<f64>,
    spaces: Vec<MembershipSpace>,
}

impl VaguePartition {
    /// Builds a partition from per-sample degree tables. Samples are
    /// sorted ascending; duplicates are rejected.
    pub fn new(
        omega: AttributeSet,
        algebra: AlgebraTriple,
        rows: Vec<(f64, BTreeMap<String, f64>)>,
    ) -> Result<Self, PartitionError> {
        Self::with_overrides(omega, algebra, rows, &BTreeMap::new())
    }

    /// As [`new`](Self::new), with per-sample negation override tables
    /// keyed by the sample's position in the given `rows`.
    pub fn with_overrides(
        omega: AttributeSet,
        algebra: AlgebraTriple,
        rows: Vec<(f64, BTreeMap<String, f64>)>,
        overrides: &BTreeMap<usize, BTreeMap<String, f64>>,
    ) -> Result<Self, PartitionError> {
        if rows.is_empty() {
            return Err(PartitionError::EmptyUniverse);
        }
        let mut indexed: Vec<(usize, f64, BTreeMap<String, f64>)> = rows
            .into_iter()
            .enumerate()
            .map(|(i, (x, table))| (i, x, table))
            .collect();
        for (_, x, _) in &indexed {
            if !x.is_finite() {
                return Err(PartitionError::NonFiniteSample(*x));
            }
        }
        indexed.sort_by(|a, b| a.1.total_cmp(&b.1));
        for w in indexed.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(PartitionError::DuplicateSample(w[0].1));
            }
        }
        let mut universe = Vec::with_capacity(indexed.len());
        let mut spaces = Vec::with_capacity(indexed.len());
        for (original, x, table) in indexed {
            let mut space = MembershipSpace::from_table(omega.clone(), algebra, &table)?.with_x(x);
            if let Some(table) = overrides.get(&original) {
                space = space.with_overrides(table)?;
            }
            universe.push(x);
            spaces.push(space);
        }
        Ok(VaguePartition {
            omega,
            algebra,
            universe,
            spaces,
        })
    }

    pub fn omega(&self) -> &AttributeSet {
        &self.omega
    }

    pub fn algebra(&self) -> &AlgebraTriple {
        &self.algebra
    }

    pub fn universe(&self) -> &[f64] {
        &self.universe
    }

    pub fn spaces(&self) -> &[MembershipSpace] {
        &self.spaces
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    /// Always false: the universe is nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The space at an exact universe sample.
    pub fn space_at(&self, x: f64) -> Result<&MembershipSpace, PartitionError> {
        self.universe
            .iter()
            .position(|&u| u == x)
            .map(|i| &self.spaces[i])
            .ok_or(PartitionError::UnknownSample(x))
    }

    /// The fuzzy set generated by attribute `p`: one `(x, M_x(p))`
    /// sample per universe point, in order.
    pub fn fuzzy_set_of(&self, attribute: &str) -> Result<FuzzySet, PartitionError> {
        if !self.omega.contains(attribute) {
            return Err(PartitionError::UnknownAttribute(attribute.to_string()));
        }
        let samples = self
            .universe
            .iter()
            .zip(&self.spaces)
            .map(|(&x, space)| (x, space.degree(attribute).expect("attribute checked")))
            .collect();
        Ok(FuzzySet {
            attribute: attribute.to_string(),
            samples,
        })
    }

    /// `1 - min over x of the consistent degree`: zero for crisp
    /// classical partitions.
    pub fn separation_degree(&self) -> Degree {
        let worst = self
            .spaces
            .iter()
            .map(|s| s.consistent_degree().value())
            .fold(f64::INFINITY, f64::min);
        Degree::clamped(1.0 - worst)
    }

    /// `A` and `B` never co-occur under the t-norm: `M_x(A and B) = 0`
    /// at every sample.
    pub fn incompatible(
        &self,
        a: &AttributeExpr,
        b: &AttributeExpr,
        tol: f64,
    ) -> Result<bool, PartitionError> {
        for space in &self.spaces {
            let both = AttributeExpr::And(vec![a.clone(), b.clone()]);
            if space.evaluate(&both)?.value() > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `A` and `B` are never simultaneously positive at any sample.
    pub fn absolutely_incompatible(
        &self,
        a: &AttributeExpr,
        b: &AttributeExpr,
        tol: f64,
    ) -> Result<bool, PartitionError> {
        for space in &self.spaces {
            if space.evaluate(a)?.value() > tol && space.evaluate(b)?.value() > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The global conditional `target given given`: the minimum over
    /// the universe of the per-sample residual implication.
    pub fn global_conditional(
        &self,
        given: &AttributeExpr,
        target: &AttributeExpr,
    ) -> Result<Degree, PartitionError> {
        let mut worst = Degree::ONE;
        for space in &self.spaces {
            let value = space.conditional_degree(given, target)?;
            if value < worst {
                worst = value;
            }
        }
        Ok(worst)
    }

    /// Axiom reports for every sample.
    pub fn check(&self, profile: AxiomProfile, tol: f64) -> PartitionReport {
        let entries = self
            .universe
            .iter()
            .zip(&self.spaces)
            .map(|(&x, space)| (x, space.check_axioms(profile, tol)))
            .collect();
        PartitionReport { entries }
    }
}

/// Per-sample axiom reports for a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub entries: Vec<(f64, AxiomReport)>,
}

impl PartitionReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.passes())
    }

    /// A partition is regular when every sample's space is.
    pub fn regular(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.regular)
    }

    /// Normal at every sample (each sample has a crisp attribute).
    pub fn normal(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.normal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &(f64, AxiomReport)> {
        self.entries.iter().filter(|(_, r)| !r.passes())
    }
}

/// A family of partitions sharing a universe and attribute set, indexed
/// by ordered labels (time steps or possible worlds).
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionProcess {
    labels: Vec<String>,
    partitions: Vec<VaguePartition>,
}

impl PartitionProcess {
    pub fn new(steps: Vec<(String, VaguePartition)>) -> Result<Self, PartitionError> {
        let mut iter = steps.into_iter();
        let (first_label, first) = iter.next().ok_or(PartitionError::EmptyProcess)?;
        let mut labels = vec![first_label];
        let mut partitions = vec![first];
        for (label, partition) in iter {
            let head = &partitions[0];
            if partition.omega() != head.omega() || partition.universe() != head.universe() {
                return Err(PartitionError::ProcessMismatch { label });
            }
            labels.push(label);
            partitions.push(partition);
        }
        Ok(PartitionProcess { labels, partitions })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn partitions(&self) -> &[VaguePartition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: a process has at least one step.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn partition_at(&self, label: &str) -> Option<&VaguePartition> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.partitions[i])
    }

    /// Slice along a fixed attribute: the fuzzy set of `p` at every
    /// step, in step order.
    pub fn object_trajectory(
        &self,
        attribute: &str,
    ) -> Result<Vec<(String, FuzzySet)>, PartitionError> {
        self.labels
            .iter()
            .zip(&self.partitions)
            .map(|(label, partition)| Ok((label.clone(), partition.fuzzy_set_of(attribute)?)))
            .collect()
    }

    /// Slice along a fixed universe sample: the elementary degree table
    /// at `x` for every step, in step order.
    pub fn attribute_trajectory(&self, x: f64) -> Result<Vec<(String, DegreeRow)>, PartitionError> {
        self.labels
            .iter()
            .zip(&self.partitions)
            .map(|(label, partition)| {
                let space = partition.space_at(x)?;
                let table = space
                    .omega()
                    .names()
                    .iter()
                    .zip(space.degrees())
                    .map(|(name, degree)| (name.clone(), *degree))
                    .collect();
                Ok((label.clone(), table))
            })
            .collect()
    }
}
