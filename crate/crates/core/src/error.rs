use thiserror::Error;

use crate::bases::BasisKind;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension {0} exceeds the 2^16 limit")]
    SizeLimit(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("entry ({0}, {1}) is not finite")]
    NonFinite(usize, usize),
    #[error("not Hermitian: deviation {deviation:.3e} at ({row}, {col})")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("trace must be 1, got {0}")]
    TraceNotOne(f64),
    #[error("not positive semidefinite: smallest eigenvalue {min_eigenvalue:.6e} (tolerance {tolerance:.1e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("coefficient table is in the {found} basis, expected {expected}")]
    WrongBasis {
        expected: BasisKind,
        found: BasisKind,
    },
    #[error("{quantity} {value} exceeds the certifiable bound {bound}; no certificate from this construction")]
    NotCertifiable {
        quantity: &'static str,
        value: f64,
        bound: f64,
    },
    #[error("reconstruction failed the {invariant} invariant: {detail}")]
    Reconstruction {
        invariant: &'static str,
        detail: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
