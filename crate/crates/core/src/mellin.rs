//! Mellin transforms of radial polynomial symbols.
//!
//! For a radial polynomial `phi(r) = sum c_s r^s` the transform is the exact
//! rational function `phi_hat(z) = sum c_s / (z + s)`, and the band weight of
//! a quasi-homogeneous symbol `e^{i p theta} phi(r)` is
//! `k -> (2k + 2p + 2) * phi_hat(2k + p + 2)`. For `phi = r^s` this single
//! expression reproduces both the analytic and the anti-analytic branch of
//! the basis action; the zero action below `k = -p` is attached by callers.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::numeric::{GaussRational, RationalFunc, UniPoly};
use crate::symbol::{BiharmonicSymbol, ParseError};

/// Radial polynomial `sum c_s r^s`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialPoly {
    coeffs: BTreeMap<u32, GaussRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MellinError {
    #[error("empty radial symbol")]
    EmptySymbol,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("not a radial polynomial: {0}")]
    NotRadial(String),
}

impl RadialPoly {
    pub fn new(pairs: impl IntoIterator<Item = (u32, GaussRational)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (s, c) in pairs {
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(s).or_insert_with(GaussRational::zero);
            *entry = &*entry + &c;
            if entry.is_zero() {
                coeffs.remove(&s);
            }
        }
        RadialPoly { coeffs }
    }

    /// The monomial `r^s`.
    pub fn power(s: u32) -> Self {
        Self::new([(s, GaussRational::one())])
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, GaussRational> {
        &self.coeffs
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::new(self.coeffs.iter().map(|(s, v)| (*s, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(s, v)| (*s, v.clone())),
        )
    }

    /// Parses a radial polynomial such as `"r^2 + 2"` or `"(1+i)*r^4"`.
    pub fn parse(text: &str) -> Result<Self, MellinError> {
        if text.contains('z') || text.contains('|') {
            return Err(MellinError::NotRadial(
                "radial symbols are written in the variable r".to_string(),
            ));
        }
        let substituted: String = text.chars().map(|c| if c == 'r' { 'z' } else { c }).collect();
        let sym = BiharmonicSymbol::parse(&substituted)?;
        if !sym.c1().is_empty() || !sym.a2().is_empty() || !sym.c2().is_empty() {
            return Err(MellinError::NotRadial(text.trim().to_string()));
        }
        Ok(Self::new(
            sym.a1().iter().enumerate().map(|(s, c)| (s as u32, c.clone())),
        ))
    }
}

/// `phi_hat(z) = sum c_s / (z + s)`, exact. All poles sit at integers <= 0.
pub fn mellin_hat(phi: &RadialPoly) -> Result<RationalFunc, MellinError> {
    if phi.is_empty() {
        return Err(MellinError::EmptySymbol);
    }
    let mut acc = RationalFunc::zero();
    for (s, c) in phi.coeffs() {
        let pole = RationalFunc::new(
            UniPoly::constant(c.clone()),
            UniPoly::from_int_coeffs(&[*s as i64, 1]),
        );
        acc = &acc + &pole;
    }
    Ok(acc)
}

/// Band weight `k -> (2k + 2p + 2) * phi_hat(2k + p + 2)` for the symbol
/// `e^{i p theta} phi(r)`.
///
/// The result is asserted pole-free at every integer `k >= max(0, -p)`.
/// Truncation (zero action for `k < -p` when `p < 0`) is not encoded here.
pub fn band_coeff_via_mellin(p: i64, phi: &RadialPoly) -> Result<RationalFunc, MellinError> {
    let hat = mellin_hat(phi)?;
    let substituted = hat.compose_affine(2, p + 2);
    let numerator = RationalFunc::from_poly(UniPoly::from_int_coeffs(&[2 * p + 2, 2]));
    let coeff = &numerator * &substituted;
    let first_valid = 0.max(-p);
    if let Some(k) = coeff.den().smallest_integer_root_geq(first_valid) {
        panic!("band coefficient for p = {p} has a pole at basis index k = {k}");
    }
    Ok(coeff)
}
