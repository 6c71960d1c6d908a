//! Dense finite sections built directly from the basis action, one entry at
//! a time with plain integer arithmetic.
//!
//! This file must stay free of the rational-function machinery: it is the
//! independent code path the banded calculus is validated against.

use crate::numeric::{GaussRational, QRational};
use crate::symbol::BiharmonicSymbol;

use num_bigint::BigInt;

/// K x K matrix of exact scalars; row = output degree, column = input degree.
/// The basis is the plain monomial one, no normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<Vec<GaussRational>>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix { dim, entries: vec![vec![GaussRational::zero(); dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussRational {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussRational) {
        self.entries[row][col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &GaussRational) {
        self.entries[row][col] = &self.entries[row][col] + value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|e| e.is_zero()))
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = DenseMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for l in 0..self.dim {
                let a = &self.entries[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = &other.entries[l][j];
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = DenseMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i][j] = &self.entries[i][j] - &other.entries[i][j];
            }
        }
        out
    }

    /// Row-major flat list of entry strings.
    pub fn entry_strings(&self) -> Vec<String> {
        self.entries
            .iter()
            .flat_map(|row| row.iter().map(|e| e.to_string()))
            .collect()
    }
}

/// The weight the basis action attaches to `z^k -> z^{k+p}` for the symbol
/// `e^{i p theta} r^s`, valid whenever `k >= max(0, -p)`.
fn basis_weight(k: i64, p: i64, s: i64) -> QRational {
    QRational::new(BigInt::from(2 * k + 2 * p + 2), BigInt::from(2 * k + p + s + 2))
}

/// Finite section of the operator, computed term by term and column by
/// column straight from the basis action.
pub fn oracle_matrix(sym: &BiharmonicSymbol, dim: usize) -> DenseMatrix {
    assert!(dim >= 1);
    let mut out = DenseMatrix::zeros(dim);
    for term in sym.to_terms() {
        for k in 0..dim as i64 {
            if k + term.p < 0 {
                continue;
            }
            let j = k + term.p;
            if j >= dim as i64 {
                continue;
            }
            let w = basis_weight(k, term.p, term.s as i64);
            out.add_to(j as usize, k as usize, &term.c.mul_q(&w));
        }
    }
    out
}

/// Largest upward shift the symbol's action can produce.
pub fn max_positive_shift(sym: &BiharmonicSymbol) -> i64 {
    sym.to_terms().iter().map(|t| t.p).max().unwrap_or(0).max(0)
}

/// Finite-section product of the two operators (`a` applied after `b`),
/// together with the number of leading columns that are exact sections of
/// the true composition. Columns `k < safe_cols` lose nothing to truncation
/// because no intermediate degree escapes past row `dim - 1`; downward
/// shifts cannot escape at the bottom since degrees stay nonnegative.
pub fn oracle_product_safe(
    a: &BiharmonicSymbol,
    b: &BiharmonicSymbol,
    dim: usize,
) -> (DenseMatrix, usize) {
    let product = oracle_matrix(a, dim).mul(&oracle_matrix(b, dim));
    let safe_cols = dim.saturating_sub(max_positive_shift(b) as usize);
    (product, safe_cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q_ratio;

    #[test]
    fn radial_square_section() {
        let sym = BiharmonicSymbol::parse("|z|^2").unwrap();
        let m = oracle_matrix(&sym, 2);
        assert_eq!(m.get(0, 0), &GaussRational::ratio(1, 2));
        assert_eq!(m.get(1, 1), &GaussRational::ratio(2, 3));
        assert!(m.get(0, 1).is_zero() && m.get(1, 0).is_zero());
    }

    #[test]
    fn antianalytic_section() {
        let sym = BiharmonicSymbol::parse("conj(z)").unwrap();
        let m = oracle_matrix(&sym, 2);
        assert_eq!(m.get(0, 1), &GaussRational::ratio(1, 2));
        for (j, k) in [(0, 0), (1, 0), (1, 1)] {
            assert!(m.get(j, k).is_zero());
        }
    }

    #[test]
    fn zero_symbol_section() {
        assert!(oracle_matrix(&BiharmonicSymbol::zero(), 4).is_zero());
    }

    #[test]
    fn shift_squared_product() {
        let z = BiharmonicSymbol::parse("z").unwrap();
        let (prod, safe) = oracle_product_safe(&z, &z, 8);
        assert_eq!(safe, 7);
        for k in 0..6 {
            assert!(prod.get(k + 2, k).is_one());
        }
    }

    #[test]
    fn radial_squared_product() {
        let r2 = BiharmonicSymbol::parse("|z|^2").unwrap();
        let (prod, safe) = oracle_product_safe(&r2, &r2, 4);
        assert_eq!(safe, 4);
        for k in 0..4i64 {
            let w = q_ratio(k + 1, k + 2);
            assert_eq!(prod.get(k as usize, k as usize), &GaussRational::from_q(&w * &w));
        }
    }

    #[test]
    fn shift_against_its_adjoint() {
        let z = BiharmonicSymbol::parse("z").unwrap();
        let zbar = BiharmonicSymbol::parse("conj(z)").unwrap();
        let (prod, safe) = oracle_product_safe(&z, &zbar, 8);
        assert_eq!(safe, 8);
        for k in 0..safe as i64 {
            assert_eq!(prod.get(k as usize, k as usize), &GaussRational::from_q(q_ratio(k, k + 1)));
        }
    }

    #[test]
    fn oracle_is_linear_in_the_symbol() {
        let a = BiharmonicSymbol::parse("z + i*conj(z)^2").unwrap();
        let b = BiharmonicSymbol::parse("|z|^2*(z - conj(z))").unwrap();
        let sum = BiharmonicSymbol::parse("z + i*conj(z)^2 + |z|^2*(z - conj(z))").unwrap();
        let lhs = oracle_matrix(&sum, 6);
        let mut rhs = oracle_matrix(&a, 6);
        let mb = oracle_matrix(&b, 6);
        for j in 0..6 {
            for k in 0..6 {
                rhs.add_to(j, k, mb.get(j, k));
            }
        }
        assert_eq!(lhs, rhs);
    }
}
