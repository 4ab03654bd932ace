//! Representation theory of GL_3 x GL_3 x GL_3 acting on polynomials in the 27 tensor entries.

mod characters;
mod hw;
mod partition;

pub use characters::{kronecker, mn_character, weyl_dim, z_mu};
pub use hw::{
    first_good_prime, hw_polys_mod_p, hw_space, hw_space_mod_p, is_highest_weight, module_dim, module_span,
    module_span_mod_p, multiplicity, HwSpace, MAX_LABEL_DEGREE, SIMPLE_LOWERS, SIMPLE_RAISES,
};
pub use partition::{IsotypicLabel, Partition};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("partition {0} has more than three parts")]
    TooManyParts(Partition),
    #[error("partitions of different sizes {0} and {1}")]
    SizeMismatch(u32, u32),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("polynomial is not a highest weight vector")]
    NotHighestWeight,
    #[error("could not lift highest weight vectors of {0} to the rationals")]
    LiftFailed(String),
    #[error("degree {0} is beyond the supported range")]
    DegreeTooLarge(u32),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
}
