//! Named orbit representatives, membership signatures and degenerations.

pub mod catalog;
pub mod degeneration;
pub mod signature;

use thiserror::Error;

use crate::tensor::TensorError;

pub use catalog::{
    catalog, decode_nurmiev, f_family, f_tensor, lookup, orbit17, orbit18, primed, random_tensor, sub_generic,
    NormalForm, CODIM_PRANK222, CODIM_SUB233, CODIM_TRIFOCAL,
};
pub use degeneration::{
    degeneration_check, in_subspace_variety, obstruction, orbit_dimension, s3m3_jacobian_rank, Degeneration,
    DegenerationReport, Obstruction, Step, StepKind,
};
pub use signature::{
    all_vanish, classify_component, is_trifocal, is_trifocal_randomized, signature, signature_with, Component,
    ModuleTable, Signature, TrifocalVerdict,
};

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("invalid tensor code {0}")]
    BadCode(u32),
    #[error("subspace shape ({0},{1},{2}) must have entries in 1..=3")]
    BadShape(usize, usize, usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}
