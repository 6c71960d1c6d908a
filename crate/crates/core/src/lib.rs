//! Exact calculus for Toeplitz operators on the Bergman space of the unit
//! disk whose symbols are polynomial biharmonic functions.
//!
//! The crate builds the operators as banded maps on the monomial basis with
//! rational-function band coefficients, decides commutativity and normality
//! exactly over the Gaussian rationals, and cross-validates the banded
//! calculus against an independent dense finite-section oracle.

pub mod calculus;
pub mod decide;
pub mod mellin;
pub mod numeric;
pub mod oracle;
pub mod selftest;
pub mod symbol;

pub use calculus::{band_from_term, commutator, toeplitz, BandedOperator, PiecewiseBandCoeff};
pub use numeric::{GaussRational, NumericError, QRational, RationalFunc, UniPoly};
pub use oracle::{
    consistency_check_pair, consistency_check_symbol, oracle_matrix, oracle_product_safe,
    DenseMatrix, MismatchReport,
};
pub use symbol::{
    disk_sample_points, BiharmonicSymbol, LineEquation, NondegeneracyReport, ParseError,
    QuasiHomogeneousTerm,
};
