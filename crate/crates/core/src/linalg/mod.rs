//! Exact linear algebra over Q and prime fields.

pub mod dense;
pub mod modp;
pub mod scalar;
pub mod sparse;

pub use dense::DenseMatrix;
pub use scalar::{is_prime, Field, Fp, Scalar, DEFAULT_PRIME};
pub use sparse::{sparse_rank, SparseMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("denominator divisible by {0}")]
    DenominatorDivisibleByPrime(u32),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("sparse elimination over Q is not supported; use a prime field")]
    UsePrimeField,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
}
