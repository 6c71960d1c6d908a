//! Rational functions in one variable over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRational;
use super::poly::UniPoly;
use super::NumericError;

/// `num/den` in canonical form: the denominator is monic, numerator and
/// denominator are coprime, and zero is `0/1`.
///
/// Division is deliberately not exposed; every denominator in this crate
/// arises from band-weight factors that stay nonzero on their valid region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunc { num, den: UniPoly::one() };
        }
        let g = UniPoly::gcd_monic(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            let (qn, rn) = num.div_rem(&g);
            let (qd, rd) = den.div_rem(&g);
            debug_assert!(rn.is_zero() && rd.is_zero());
            (qn, qd)
        };
        let lead_inv = den.leading().unwrap().recip();
        RationalFunc { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn zero() -> Self {
        RationalFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunc { num: p, den: UniPoly::one() }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitutes `k -> k + d`.
    pub fn shift(&self, d: i64) -> Self {
        Self::new(self.num.shift(d), self.den.shift(d))
    }

    /// Substitutes `k -> a*k + b`.
    pub fn compose_affine(&self, a: i64, b: i64) -> Self {
        assert!(a != 0, "degenerate affine substitution");
        Self::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn eval_int(&self, k: i64) -> Result<GaussRational, NumericError> {
        let d = self.den.eval_int(k);
        if d.is_zero() {
            return Err(NumericError::PoleAtPoint(k));
        }
        Ok(&self.num.eval_int(k) / &d)
    }

    pub fn eval_q(&self, x: &GaussRational) -> Result<GaussRational, NumericError> {
        let d = self.den.eval_q(x);
        if d.is_zero() {
            return Err(NumericError::PoleAtValue(x.to_string()));
        }
        Ok(&self.num.eval_q(x) / &d)
    }

    pub fn render(&self, var: &str) -> String {
        let num = self.num.render(var);
        if self.den.is_one() {
            return num;
        }
        let wrap = |s: String| {
            if s[1..].contains(['+', '-']) {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/({})", wrap(num), self.den.render(var))
    }
}

fn exact_quot(p: &UniPoly, d: &UniPoly) -> UniPoly {
    let (q, r) = p.div_rem(d);
    debug_assert!(r.is_zero());
    q
}

impl Add for &RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Both operands are reduced, so only the denominators can share
        // factors; adding over the lcm keeps the final reduction small.
        let g = UniPoly::gcd_monic(&self.den, &rhs.den);
        let (left, right) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (exact_quot(&rhs.den, &g), exact_quot(&self.den, &g))
        };
        let num = &(&self.num * &left) + &(&rhs.num * &right);
        RationalFunc::new(num, &self.den * &left)
    }
}

impl Sub for &RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunc::zero();
        }
        // Cross-cancel first: each operand is already reduced, so common
        // factors only pair a numerator with the opposite denominator.
        let g1 = UniPoly::gcd_monic(&self.num, &rhs.den);
        let g2 = UniPoly::gcd_monic(&rhs.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (exact_quot(&self.num, &g1), exact_quot(&rhs.den, &g1))
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (exact_quot(&rhs.num, &g2), exact_quot(&self.den, &g2))
        };
        RationalFunc::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("k"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q_ratio;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunc {
        RationalFunc::new(UniPoly::from_int_coeffs(num), UniPoly::from_int_coeffs(den))
    }

    #[test]
    fn weight_difference_reduces() {
        // (2k+4)/(2k+6) - (2k+2)/(2k+4) = 1/(k^2+5k+6)
        let lhs = rf(&[4, 2], &[6, 2]);
        let rhs = rf(&[2, 2], &[4, 2]);
        let diff = &lhs - &rhs;
        assert_eq!(diff, rf(&[1], &[6, 5, 1]));
        // Cross-check by evaluation at k = 0..5.
        for k in 0..=5 {
            let direct = &lhs.eval_int(k).unwrap() - &rhs.eval_int(k).unwrap();
            assert_eq!(direct, diff.eval_int(k).unwrap());
        }
        assert_eq!(diff.eval_int(0).unwrap(), GaussRational::ratio(1, 6));
    }

    #[test]
    fn self_difference_is_zero() {
        let r = rf(&[4, 2], &[6, 2]);
        assert!((&r - &r).is_zero());
    }

    #[test]
    fn identity_element() {
        let r = rf(&[2, 2], &[4, 2]);
        assert_eq!(&r * &RationalFunc::one(), rf(&[1, 1], &[2, 1]));
    }

    #[test]
    fn shift_examples() {
        let r = rf(&[2, 2], &[4, 2]);
        assert_eq!(r.shift(1), rf(&[4, 2], &[6, 2]));
        let c = RationalFunc::constant(GaussRational::from_int(5));
        assert_eq!(c.shift(7), c);
        let r2 = rf(&[0, 1], &[1, 1]);
        assert_eq!(r2.shift(-1), rf(&[-1, 1], &[0, 1]));
    }

    #[test]
    fn eval_and_poles() {
        let r = rf(&[2, 2], &[4, 2]);
        assert_eq!(r.eval_int(0).unwrap(), GaussRational::ratio(1, 2));
        assert_eq!(RationalFunc::zero().eval_int(7).unwrap(), GaussRational::zero());
        let pole = rf(&[1], &[2, 1]);
        assert_eq!(pole.eval_int(-2), Err(NumericError::PoleAtPoint(-2)));
    }

    #[test]
    fn canonical_form_is_monic_and_reduced() {
        let r = rf(&[4], &[24, 20, 4]);
        assert_eq!(r, rf(&[1], &[6, 5, 1]));
        assert!(r.den().leading().unwrap().is_one());
        // Idempotent canonicalization.
        assert_eq!(RationalFunc::new(r.num().clone(), r.den().clone()), r);
    }

    #[test]
    fn rendering() {
        assert_eq!(rf(&[0, 1], &[1, 1]).render("k"), "k/(k+1)");
        assert_eq!(rf(&[-1], &[6, 5, 1]).render("k"), "-1/(k^2+5*k+6)");
        assert_eq!(rf(&[3], &[1]).render("k"), "3");
        let half = RationalFunc::constant(GaussRational::from_q(q_ratio(1, 2)));
        assert_eq!(half.render("k"), "1/2");
    }
}
