//! Exact scalar and rational-function arithmetic.
//!
//! Everything downstream (symbols, band coefficients, matrices, verdicts) is
//! built over the Gaussian rationals `Q(i)` and over the field of univariate
//! rational functions with Gaussian-rational coefficients. No floating point
//! anywhere.

mod gauss;
mod poly;
mod ratfunc;

pub use gauss::{parse_qrational, q_int, q_ratio, GaussRational, QRational};
pub use poly::UniPoly;
pub use ratfunc::RationalFunc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    /// A rational function was evaluated where its denominator vanishes.
    /// Callers are expected to stay inside the valid region, so hitting this
    /// usually indicates a bug on the caller's side.
    #[error("denominator vanishes at k = {0}")]
    PoleAtPoint(i64),
    #[error("denominator vanishes at z = {0}")]
    PoleAtValue(String),
    #[error("invalid scalar literal: {0}")]
    InvalidLiteral(String),
}
