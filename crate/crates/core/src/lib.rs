//! Distinguishability measures for quantum states.
//!
//! The crate computes the standard closeness measures between a pair of
//! density operators `rho`, `sigma` held with prior weights `p`, `1 - p`
//! (written `A = p rho`, `B = (1 - p) sigma`):
//!
//! | symbol  | quantity                                        |
//! |---------|-------------------------------------------------|
//! | `L`     | overlap `4 tr(A B)`                             |
//! | `T`     | trace distance `||A - B||_1`                    |
//! | `F`     | fidelity `2 ||A^(1/2) B^(1/2)||_1`              |
//! | `Q_s`   | Renyi overlap `2 tr(A^s B^(1-s))`, `s in [0,1]` |
//! | `Q`     | Hellinger overlap `Q_(1/2)`                     |
//! | `Q_min` | `min_s Q_s`                                     |
//! | `C`     | Chernoff exponent `-log min_s tr(rho^s sigma^(1-s))` |
//! | `S`     | relative entropy `tr rho (log rho - log sigma)` |
//!
//! At `p = 1/2` the weighted forms reduce to the usual normalized ones.
//! `C` and `S` are defined for normalized states only.
//!
//! # Modules
//!
//! - [`spectral`]: Hermitian eigendecomposition, matrix functions on the
//!   support, Jordan decomposition, singular values, Schatten norms.
//! - [`state`]: validated density operators, weighted pairs, the four
//!   closed-form equality families, seeded random state generation.
//! - [`io`]: deterministic matrix file format (read/write).
//! - [`measures`]: the measures above plus `psi(s) = log tr(rho^s sigma^(1-s))`.
//! - [`hot`]: the binary-distribution lower-bound function `s(x)` relating
//!   relative entropy to trace distance, its series, envelopes and inverse.
//! - [`catalog`]: a fixed catalog of sixteen inequality records between the
//!   measures, with per-pair evaluation and seeded randomized sweeps.
//!
//! # Conventions
//!
//! Matrix functions act on the support: eigenvalues at or below the support
//! cutoff [`tol::support_cutoff`] contribute nothing (`0^t := 0`,
//! `0 log 0 := 0`). Quantities that can diverge (`S`, `C`, derived bounds)
//! are carried as [`ExtendedReal`] instead of relying on floating-point
//! infinities inside arithmetic.

#![forbid(unsafe_code)]

pub mod catalog;
mod error;
mod extreal;
pub mod hot;
pub mod io;
pub mod measures;
mod optim;
pub mod spectral;
pub mod state;

pub use error::{Error, Result};
pub use extreal::ExtendedReal;

/// Numeric tolerances shared across the crate.
pub mod tol {
    /// Hermiticity check: `max_ij |m[i][j] - conj(m[j][i])|` must not exceed this.
    pub const TOL_HERM: f64 = 1e-10;

    /// Positivity check: eigenvalues below `-TOL_PSD` are rejected; values in
    /// `[-TOL_PSD, 0]` are clipped to zero.
    pub const TOL_PSD: f64 = 1e-10;

    /// Unit-trace check for density operators.
    pub const TOL_TRACE: f64 = 1e-10;

    /// Eigendecomposition reconstruction tolerance, scaled by dimension.
    pub fn reconstruction_tol(dim: usize) -> f64 {
        1e-11 * dim as f64
    }

    /// Support cutoff: eigenvalues at or below this count as zero.
    ///
    /// Relative in the spectral radius but never below `dim * eps`, so that
    /// rounding noise on genuinely singular directions is always excluded.
    pub fn support_cutoff(dim: usize, lambda_max_abs: f64) -> f64 {
        dim as f64 * f64::EPSILON * lambda_max_abs.max(1.0)
    }
}

/// Render a finite value with 12 significant digits, infinities as `inf`.
///
/// Shared by the CLI and the sweep report writers so that identical inputs
/// produce byte-identical output.
pub fn fmt_sig12(value: ExtendedReal) -> String {
    match value {
        ExtendedReal::NegInfinity => "-inf".to_string(),
        ExtendedReal::Infinity => "inf".to_string(),
        ExtendedReal::Finite(v) => format!("{v:.11e}"),
    }
}
