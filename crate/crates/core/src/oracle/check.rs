//! Entry-by-entry comparison of the banded calculus against the dense
//! finite-section route.

use thiserror::Error;

use super::dense::{oracle_matrix, oracle_product_safe, DenseMatrix};
use crate::calculus::{commutator, toeplitz};
use crate::symbol::BiharmonicSymbol;

/// First differing entry between the two code paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{context}: entry [{row}][{col}] differs: bands give {banded}, oracle gives {oracle}")]
pub struct MismatchReport {
    pub context: String,
    pub row: usize,
    pub col: usize,
    pub banded: String,
    pub oracle: String,
}

fn compare(
    context: &str,
    banded: &DenseMatrix,
    oracle: &DenseMatrix,
    cols: usize,
) -> Result<(), MismatchReport> {
    for col in 0..cols {
        for row in 0..banded.dim() {
            if banded.get(row, col) != oracle.get(row, col) {
                return Err(MismatchReport {
                    context: context.to_string(),
                    row,
                    col,
                    banded: banded.get(row, col).to_string(),
                    oracle: oracle.get(row, col).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// The banded section of `T_phi` must equal the dense section exactly.
pub fn consistency_check_symbol(
    sym: &BiharmonicSymbol,
    dim: usize,
) -> Result<(), MismatchReport> {
    assert!(dim >= 4);
    let banded = toeplitz(sym).truncate(dim);
    let dense = oracle_matrix(sym, dim);
    compare("symbol section", &banded, &dense, dim)
}

/// The banded commutator section must match the difference of the two dense
/// products on the columns where neither product loses anything to
/// truncation.
pub fn consistency_check_pair(
    phi: &BiharmonicSymbol,
    psi: &BiharmonicSymbol,
    dim: usize,
) -> Result<(), MismatchReport> {
    assert!(dim >= 4);
    let banded = commutator(phi, psi).truncate(dim);
    let (ab, safe_ab) = oracle_product_safe(phi, psi, dim);
    let (ba, safe_ba) = oracle_product_safe(psi, phi, dim);
    let diff = ab.sub(&ba);
    compare("pair commutator", &banded, &diff, safe_ab.min(safe_ba))
}
