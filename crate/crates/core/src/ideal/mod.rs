//! Graded pieces of ideals in the 27 tensor entries, computed weight block by
//! weight block with sparse linear algebra over GF(p).

mod blocks;
mod discover;
mod points;
mod vanishing;

pub use blocks::{
    ambient_dim, graded_nonzerodivisor_check, hilbert_quotient, ideal_dim_in_degree, minimal_generator_test,
    unblocked_ideal_dim, weights_of_degree, NzdReport, NzdRow, HARD_DEGREE_CAP,
};
pub use discover::{
    default_inventory, discover, discover_exact, discover_with_progress, DegreeInventory, DiscoverConfig,
    ExactGenerator, ExactInventory, LabelReport, ModularInventory,
};
pub use points::{random_point_mod_p, random_trifocal_points};
pub use vanishing::{vanishing_mod_p, vanishing_subspace, VanishingReport};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{ModPoly, Poly27, PolyError};
use crate::rep::RepError;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("degree {degree} exceeds the cap {cap}; the ambient space has {ambient} monomials")]
    CapExceeded { degree: u32, cap: u32, ambient: u64 },
    #[error("generator is not homogeneous of a single weight")]
    NotWeightHomogeneous,
    #[error("vanishing kernel unstable across point batches for {0}")]
    FalsePositive(String),
    #[error("prime {0} is unsuitable for this computation")]
    BadPrime(u32),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Homogeneous generators over GF(p), grouped by degree.
///
/// `invariant` records that the span in each degree is stable under the
/// group, which lets the block computations visit dominant weights only.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedGeneratorSet {
    pub p: u32,
    pub by_degree: BTreeMap<u32, Vec<ModPoly>>,
    pub invariant: bool,
}

impl GradedGeneratorSet {
    pub fn new(p: u32) -> Self {
        GradedGeneratorSet { p, by_degree: BTreeMap::new(), invariant: true }
    }

    /// Reduce rational generators mod p. Every input must be weight homogeneous.
    pub fn from_polys(polys: &[Poly27], p: u32, invariant: bool) -> Result<Self, IdealError> {
        let mut g = GradedGeneratorSet::new(p);
        g.invariant = invariant;
        for f in polys {
            if f.weight().is_none() {
                return Err(IdealError::NotWeightHomogeneous);
            }
            g.push(ModPoly::from_poly(f, p)?)?;
        }
        Ok(g)
    }

    pub fn push(&mut self, f: ModPoly) -> Result<(), IdealError> {
        if f.p != self.p {
            return Err(IdealError::Inconsistent(format!("generator modulo {} in a set modulo {}", f.p, self.p)));
        }
        let Some(d) = f.degree() else { return Ok(()) };
        if !f.terms.iter().all(|(m, _)| m.weight() == f.weight().unwrap()) {
            return Err(IdealError::NotWeightHomogeneous);
        }
        self.by_degree.entry(d).or_default().push(f);
        Ok(())
    }

    /// A copy with one more generator; the copy is no longer assumed invariant.
    pub fn with(&self, f: ModPoly) -> Result<Self, IdealError> {
        let mut g = self.clone();
        g.invariant = false;
        g.push(f)?;
        Ok(g)
    }

    pub fn extend(&mut self, other: &GradedGeneratorSet) -> Result<(), IdealError> {
        self.invariant &= other.invariant;
        for fs in other.by_degree.values() {
            for f in fs {
                self.push(f.clone())?;
            }
        }
        Ok(())
    }

    /// Generators of degree below `d`.
    pub fn below(&self, d: u32) -> GradedGeneratorSet {
        GradedGeneratorSet {
            p: self.p,
            by_degree: self.by_degree.range(..d).map(|(k, v)| (*k, v.clone())).collect(),
            invariant: self.invariant,
        }
    }

    pub fn counts(&self) -> BTreeMap<u32, usize> {
        self.by_degree.iter().map(|(d, v)| (*d, v.len())).collect()
    }

    pub fn len(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &ModPoly> {
        self.by_degree.values().flatten()
    }
}
