//! Exact banded-operator algebra.
//!
//! An operator of the scoped class acts on the monomial basis as
//! `T(z^k) = sum_p coeff_p(k) z^{k+p}` with finitely many bands, each band
//! coefficient a piecewise rational function of `k`. Every operation here is
//! exact and the canonical form makes equality (hence commutativity) a
//! terminating structural decision: two rational tails agreeing on
//! infinitely many integers are identical, and exceptional values are
//! compared pointwise.

mod band;

pub use band::PiecewiseBandCoeff;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::numeric::{GaussRational, RationalFunc, UniPoly};
use crate::oracle::DenseMatrix;
use crate::symbol::{BiharmonicSymbol, QuasiHomogeneousTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("quasi-homogeneous term with zero coefficient")]
    ZeroCoefficient,
}

/// Finite collection of bands; bands whose coefficient is identically zero
/// are never stored, so the empty map is the zero operator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BandedOperator {
    bands: BTreeMap<i64, PiecewiseBandCoeff>,
}

impl BandedOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        let mut op = Self::zero();
        op.add_band(0, PiecewiseBandCoeff::new(vec![], RationalFunc::one()));
        op
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn bands(&self) -> &BTreeMap<i64, PiecewiseBandCoeff> {
        &self.bands
    }

    pub fn band(&self, p: i64) -> Option<&PiecewiseBandCoeff> {
        self.bands.get(&p)
    }

    /// The coefficient of `z^{k+p}` in `T(z^k)`.
    pub fn entry(&self, p: i64, k: usize) -> GaussRational {
        match self.bands.get(&p) {
            Some(c) => c.eval(k),
            None => GaussRational::zero(),
        }
    }

    fn add_band(&mut self, p: i64, coeff: PiecewiseBandCoeff) {
        if coeff.is_zero() {
            return;
        }
        match self.bands.remove(&p) {
            None => {
                self.bands.insert(p, coeff);
            }
            Some(existing) => {
                let sum = existing.add(&coeff);
                if !sum.is_zero() {
                    self.bands.insert(p, sum);
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (p, coeff) in &self.bands {
            out.add_band(*p, coeff.scale(c));
        }
        out
    }

    /// `alpha * A + beta * B`, canonical.
    pub fn linear(
        a: &BandedOperator,
        b: &BandedOperator,
        alpha: &GaussRational,
        beta: &GaussRational,
    ) -> Self {
        let mut out = a.scale(alpha);
        for (p, coeff) in &b.bands {
            out.add_band(*p, coeff.scale(beta));
        }
        out
    }

    /// `self . other`: `other` acts first. Band `p` of the result collects
    /// every pair `p_self + p_other = p`; each pair contributes pointwise
    /// products on the exceptional region (taking a factor as exactly zero
    /// whenever its piecewise definition says so, without consulting the
    /// other factor's formula) and a shifted tail product beyond it.
    pub fn compose(&self, other: &BandedOperator) -> Self {
        let mut out = Self::zero();
        for (pa, ca) in &self.bands {
            for (pb, cb) in &other.bands {
                out.add_band(pa + pb, compose_pair(ca, cb, *pb));
            }
        }
        out
    }

    /// Finite section in the monomial basis: entry `[j][k]` is the
    /// coefficient of `z^j` in `T(z^k)`.
    pub fn truncate(&self, dim: usize) -> DenseMatrix {
        assert!(dim >= 1);
        let mut out = DenseMatrix::zeros(dim);
        for (p, coeff) in &self.bands {
            for k in 0..dim as i64 {
                let j = k + p;
                if (0..dim as i64).contains(&j) {
                    out.set(j as usize, k as usize, coeff.eval(k as usize));
                }
            }
        }
        out
    }

    /// Witness for a nonzero operator: the first band (by shift) and its
    /// least index carrying a nonzero value.
    pub fn first_nonzero_entry(&self) -> Option<(i64, usize, GaussRational)> {
        for (p, coeff) in &self.bands {
            if let Some((k, v)) = coeff.first_nonzero() {
                return Some((*p, k, v));
            }
        }
        None
    }
}

/// Coefficient of the band `p_a + p_b` contribution from composing band
/// `p_a` of the outer operator (coefficient `ca`) with band `p_b` of the
/// inner one (coefficient `cb`): `k -> cb(k) * ca(k + p_b)`.
fn compose_pair(ca: &PiecewiseBandCoeff, cb: &PiecewiseBandCoeff, pb: i64) -> PiecewiseBandCoeff {
    let k0 = (cb.k0() as i64).max(ca.k0() as i64 - pb).max(0) as usize;
    let mut exceptional = Vec::with_capacity(k0);
    for k in 0..k0 {
        let vb = cb.eval(k);
        if vb.is_zero() {
            exceptional.push(GaussRational::zero());
            continue;
        }
        let kk = k as i64 + pb;
        assert!(kk >= 0, "inner operator produced a negative basis degree");
        exceptional.push(&vb * &ca.eval(kk as usize));
    }
    PiecewiseBandCoeff::new(exceptional, cb.tail() * &ca.tail().shift(pb))
}

/// Band shift and coefficient of the operator attached to one
/// quasi-homogeneous symbol `c * e^{i p theta} r^s` acting on the basis:
/// weight `(2k + 2p + 2) / (2k + p + s + 2)` on `z^k -> z^{k+p}`, with zero
/// action for `k < -p`.
pub fn band_from_term(
    t: &QuasiHomogeneousTerm,
) -> Result<(i64, PiecewiseBandCoeff), CalculusError> {
    if t.c.is_zero() {
        return Err(CalculusError::ZeroCoefficient);
    }
    let (p, s) = (t.p, t.s as i64);
    let tail = RationalFunc::new(
        UniPoly::from_int_coeffs(&[2 * p + 2, 2]).scale(&t.c),
        UniPoly::from_int_coeffs(&[p + s + 2, 2]),
    );
    let zeros = vec![GaussRational::zero(); 0.max(-p) as usize];
    Ok((p, PiecewiseBandCoeff::new(zeros, tail)))
}

/// The exact banded representation of the Toeplitz operator of a symbol.
pub fn toeplitz(sym: &BiharmonicSymbol) -> BandedOperator {
    let mut op = BandedOperator::zero();
    for term in sym.to_terms() {
        let (p, coeff) = band_from_term(&term).expect("symbol terms have nonzero coefficients");
        op.add_band(p, coeff);
    }
    op
}

/// `T_phi T_psi - T_psi T_phi` in canonical form; empty exactly when the two
/// operators commute.
pub fn commutator(phi: &BiharmonicSymbol, psi: &BiharmonicSymbol) -> BandedOperator {
    let tp = toeplitz(phi);
    let tq = toeplitz(psi);
    BandedOperator::linear(
        &tp.compose(&tq),
        &tq.compose(&tp),
        &GaussRational::one(),
        &-&GaussRational::one(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(text: &str) -> BiharmonicSymbol {
        BiharmonicSymbol::parse(text).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunc {
        RationalFunc::new(UniPoly::from_int_coeffs(num), UniPoly::from_int_coeffs(den))
    }

    fn term(p: i64, s: u32, c: i64) -> QuasiHomogeneousTerm {
        QuasiHomogeneousTerm { p, s, c: GaussRational::from_int(c) }
    }

    #[test]
    fn band_from_term_examples() {
        let (p, coeff) = band_from_term(&term(0, 2, 1)).unwrap();
        assert_eq!(p, 0);
        assert_eq!(coeff.k0(), 0);
        assert_eq!(coeff.tail(), &rf(&[2, 2], &[4, 2]));
        assert_eq!(coeff.eval(0), GaussRational::ratio(1, 2));

        let (p, coeff) = band_from_term(&term(1, 1, 1)).unwrap();
        assert_eq!(p, 1);
        assert_eq!(coeff.tail(), &RationalFunc::one());
        assert_eq!(coeff.k0(), 0);

        let (p, coeff) = band_from_term(&term(-2, 2, 1)).unwrap();
        assert_eq!(p, -2);
        assert_eq!(coeff.k0(), 1);
        assert_eq!(coeff.exceptional(), &[GaussRational::zero()]);
        assert_eq!(coeff.tail(), &rf(&[-2, 2], &[2, 2]));
        assert_eq!(coeff.eval(2), GaussRational::ratio(1, 3));

        assert_eq!(band_from_term(&term(1, 1, 0)), Err(CalculusError::ZeroCoefficient));
    }

    #[test]
    fn toeplitz_of_one_is_identity() {
        let op = toeplitz(&sym("1"));
        assert_eq!(op, BandedOperator::identity());
    }

    #[test]
    fn toeplitz_of_z_is_the_shift() {
        let op = toeplitz(&sym("z"));
        assert_eq!(op.bands().len(), 1);
        assert_eq!(op.band(1).unwrap().tail(), &RationalFunc::one());
    }

    #[test]
    fn toeplitz_of_radial_square() {
        let op = toeplitz(&sym("|z|^2"));
        assert_eq!(op.band(0).unwrap().tail(), &rf(&[1, 1], &[2, 1]));
    }

    #[test]
    fn linear_combinations() {
        let a = toeplitz(&sym("z + conj(z)"));
        let one = GaussRational::one();
        assert!(BandedOperator::linear(&a, &a, &one, &-&one).is_zero());
        let z = toeplitz(&sym("z"));
        let zbar = toeplitz(&sym("conj(z)"));
        assert_eq!(BandedOperator::linear(&z, &zbar, &one, &one), a);
        let scaled = BandedOperator::linear(&a, &BandedOperator::zero(), &GaussRational::from_int(5), &one);
        assert_eq!(scaled, a.scale(&GaussRational::from_int(5)));
    }

    #[test]
    fn composition_examples() {
        // T_{r^2} after T_z: band +1 with tail (2k+4)/(2k+6).
        let r2 = toeplitz(&sym("|z|^2"));
        let z = toeplitz(&sym("z"));
        let prod = r2.compose(&z);
        assert_eq!(prod.bands().len(), 1);
        let band = prod.band(1).unwrap();
        assert_eq!(band.k0(), 0);
        assert_eq!(band.tail(), &rf(&[4, 2], &[6, 2]));

        // T_z after T_zbar: band 0 with tail k/(k+1); the k = 0 truncation
        // zero is absorbed because the tail vanishes there.
        let zbar = toeplitz(&sym("conj(z)"));
        let prod = z.compose(&zbar);
        assert_eq!(prod.bands().len(), 1);
        let band = prod.band(0).unwrap();
        assert_eq!(band.k0(), 0);
        assert_eq!(band.tail(), &rf(&[0, 1], &[1, 1]));
    }

    #[test]
    fn identity_laws() {
        let a = toeplitz(&sym("z + 2*conj(z) + |z|^2*(i*z - conj(z)^2)"));
        let id = BandedOperator::identity();
        assert_eq!(a.compose(&id), a);
        assert_eq!(id.compose(&a), a);
    }

    #[test]
    fn commutator_examples() {
        let phi = sym("z + conj(z) + |z|^2*(z + conj(z))");
        assert!(commutator(&phi, &phi).is_zero());

        let comm = commutator(&sym("z"), &sym("|z|^2"));
        assert_eq!(comm.bands().len(), 1);
        let band = comm.band(1).unwrap();
        assert_eq!(band.eval(0), GaussRational::ratio(-1, 6));
        assert_eq!(band.tail(), &rf(&[-4], &[24, 20, 4]));

        // An affine image commutes with the original.
        let c1 = GaussRational::from_int(2);
        let c2 = GaussRational::new(crate::numeric::q_int(1), crate::numeric::q_int(1));
        assert!(commutator(&phi.affine(&c1, &c2), &phi).is_zero());
        assert!(commutator(&phi, &phi.affine(&GaussRational::one(), &GaussRational::from_int(9))).is_zero());
    }

    #[test]
    fn truncation_examples() {
        let id = toeplitz(&sym("1")).truncate(3);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(id.get(j, k).is_one(), j == k);
            }
        }
        let r2 = toeplitz(&sym("|z|^2")).truncate(2);
        assert_eq!(r2.get(0, 0), &GaussRational::ratio(1, 2));
        assert_eq!(r2.get(1, 1), &GaussRational::ratio(2, 3));
        let zbar = toeplitz(&sym("conj(z)")).truncate(3);
        assert_eq!(zbar.get(0, 1), &GaussRational::ratio(1, 2));
        assert_eq!(zbar.get(1, 2), &GaussRational::ratio(2, 3));
        assert!(zbar.get(0, 0).is_zero() && zbar.get(2, 2).is_zero() && zbar.get(1, 0).is_zero());
    }

    #[test]
    fn composition_is_associative() {
        let a = toeplitz(&sym("z + i*conj(z)"));
        let b = toeplitz(&sym("|z|^2*(z - conj(z)^2)"));
        let c = toeplitz(&sym("conj(z) + |z|^2"));
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn commutator_is_antisymmetric_and_bilinear() {
        let phi = sym("z + 2*conj(z) + |z|^2*conj(z)");
        let psi = sym("i*z^2 + |z|^2*(z + conj(z))");
        let lhs = commutator(&phi, &psi);
        let rhs = commutator(&psi, &phi);
        assert_eq!(lhs, rhs.scale(&-&GaussRational::one()));

        // Linearity in the first argument over a two-term combination.
        let alpha = GaussRational::new(crate::numeric::q_ratio(1, 2), crate::numeric::q_int(1));
        let beta = GaussRational::from_int(-3);
        let chi = sym("conj(z)^2 + |z|^2*z");
        let combined = phi
            .affine(&alpha, &GaussRational::zero())
            .add(&chi.affine(&beta, &GaussRational::zero()));
        let direct = commutator(&combined, &psi);
        let assembled = BandedOperator::linear(
            &commutator(&phi, &psi),
            &commutator(&chi, &psi),
            &alpha,
            &beta,
        );
        assert_eq!(direct, assembled);
    }

    #[test]
    fn tails_match_the_mellin_route() {
        use crate::mellin::{band_coeff_via_mellin, RadialPoly};
        let phi = sym("z + 3*conj(z)^2 + |z|^2*(2*z^2 - i*conj(z))");
        let op = toeplitz(&phi);
        // Group the radial parts by shift and compare tail rational functions.
        let mut radial: BTreeMap<i64, RadialPoly> = BTreeMap::new();
        for t in phi.to_terms() {
            let entry = radial.entry(t.p).or_insert_with(|| RadialPoly::new([]));
            *entry = entry.add(&RadialPoly::new([(t.s, t.c.clone())]));
        }
        for (p, poly) in radial {
            let via_mellin = band_coeff_via_mellin(p, &poly).unwrap();
            assert_eq!(op.band(p).unwrap().tail(), &via_mellin, "band {p}");
        }
    }
}
