//! Polynomials in the 27 coordinates T_ijk.

pub mod format;
pub mod generators;
pub mod modpoly;
pub mod monomial;
mod polynomial;

pub use format::{parse_letters, parse_poly};
pub use generators::{f_det, m3_generators, s3_m3, witness_g};
pub use modpoly::ModPoly;
pub use monomial::{var_indices, var_of, weight_space_basis, Monomial27, Weight};
pub use polynomial::{integer_point, IntPoly, Poly27};

use thiserror::Error;

use crate::linalg::{Field, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial and point over different fields: {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("degree above the supported maximum of 15")]
    DegreeTooLarge,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
