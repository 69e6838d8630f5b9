//! Error types shared by the library modules.

use thiserror::Error;

/// Errors raised by state construction and the measurement operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Amplitudes do not form a unit vector.
    #[error("state is not normalized: |psi|^2 = {norm_sq} (tolerance {tol})")]
    NotNormalized { norm_sq: f64, tol: f64 },

    /// Observable is not a Pauli component (eigenvalues must be exactly +/-1).
    #[error("observable is not a Pauli component: trace = {trace}, det = {det}")]
    NotPauliComponent { trace: f64, det: f64 },

    /// An argument is outside its valid range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Dense-matrix operation requested above the configured size cap.
    #[error(
        "sample size {n} exceeds the dense cap {cap}; use the closed-form scaling \
         sweep for larger N"
    )]
    DenseCapExceeded { n: usize, cap: usize },

    /// Post-selection on an outcome the state assigns zero amplitude.
    #[error(
        "impossible post-selection: sector n_plus = {n_plus} has amplitude \
         |a|^2 = {amp_sq}, the conditional pointer state is undefined"
    )]
    ImpossibleSelection { n_plus: usize, amp_sq: f64 },

    /// Pointer superpositions with different widths have no closed-form overlap.
    #[error("pointer width mismatch: {a} vs {b}")]
    WidthMismatch { a: f64, b: f64 },

    /// Vandermonde system with repeated eigenvalues is singular.
    #[error("repeated eigenvalues at indices {i} and {j}: {value}")]
    SingularSystem { i: usize, j: usize, value: f64 },

    /// Moment vector is not realizable by any probability distribution.
    #[error(
        "inconsistent moments: recovered probability p[{index}] = {value} \
         is below the clamp threshold"
    )]
    InconsistentMoments { index: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
