//! Gaussian rationals: exact complex numbers with arbitrary-precision
//! rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericError;

/// Exact rational scalar. `BigRational` already maintains the invariants we
/// need: reduced to lowest terms, positive denominator, zero as 0/1.
pub type QRational = BigRational;

pub fn q_int(n: i64) -> QRational {
    QRational::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> QRational {
    assert!(den != 0, "rational with zero denominator");
    QRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "3", "-3/2", "+5/7". The denominator must be a nonzero integer.
pub fn parse_qrational(text: &str) -> Result<QRational, NumericError> {
    let bad = || NumericError::InvalidLiteral(text.to_string());
    let s = text.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (num_s, den_s) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if num_s.is_empty() || den_s.is_empty() {
        return Err(bad());
    }
    if !num_s.bytes().all(|b| b.is_ascii_digit()) || !den_s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = num_s.parse().map_err(|_| bad())?;
    let den: BigInt = den_s.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(QRational::new(num * BigInt::from(sign), den))
}

/// A Gaussian rational `re + im*i`.
///
/// This is the coefficient field for symbols and band weights. Equality is
/// componentwise; components are kept canonical by `BigRational` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRational {
    re: QRational,
    im: QRational,
}

impl GaussRational {
    pub fn new(re: QRational, im: QRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_q(re: QRational) -> Self {
        GaussRational { re, im: QRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(q_int(n))
    }

    /// `num/den` as a real Gaussian rational.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_q(q_ratio(num, den))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational { re: QRational::zero(), im: QRational::one() }
    }

    pub fn re(&self) -> &QRational {
        &self.re
    }

    pub fn im(&self) -> &QRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re^2 + im^2`, a rational.
    pub fn norm_sqr(&self) -> QRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero; internal callers guard.
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        GaussRational { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn mul_q(&self, q: &QRational) -> Self {
        GaussRational { re: &self.re * q, im: &self.im * q }
    }

    /// Integer power; negative exponents go through `recip`.
    pub fn powi(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = GaussRational::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussRational {
    type Output = GaussRational;
    #[allow(clippy::suspicious_arithmetic_impl)] // division via the inverse
    fn div(self, rhs: &GaussRational) -> GaussRational {
        self * &rhs.recip()
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        &self + &rhs
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        &self - &rhs
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

/// Renders in the literal form used throughout the JSON and CLI surfaces:
/// "0", "3/2", "-i", "1/3i", "3/2-1/3i". An imaginary part of +-1 prints as
/// bare "i"; "1/3i" means (1/3)*i.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
        }
        if !self.im.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            } else if !self.re.is_zero() {
                write!(f, "+")?;
            }
            let mag = self.im.abs();
            if !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            write!(f, "i")?;
        }
        Ok(())
    }
}

impl FromStr for GaussRational {
    type Err = NumericError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || NumericError::InvalidLiteral(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // Split into signed chunks at '+'/'-' (not at position 0).
        let mut chunks: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for (idx, ch) in compact.chars().enumerate() {
            match ch {
                '+' | '-' if idx > 0 && !cur.is_empty() => {
                    chunks.push((sign, std::mem::take(&mut cur)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
                '+' | '-' if cur.is_empty() => {
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => cur.push(ch),
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        chunks.push((sign, cur));
        if chunks.len() > 2 {
            return Err(bad());
        }

        let mut re: Option<QRational> = None;
        let mut im: Option<QRational> = None;
        for (sgn, body) in chunks {
            let signed = |q: QRational| if sgn < 0 { -q } else { q };
            if let Some(mag) = body.strip_suffix('i') {
                if im.is_some() {
                    return Err(bad());
                }
                let q = if mag.is_empty() { QRational::one() } else { parse_qrational(mag)? };
                im = Some(signed(q));
            } else {
                if re.is_some() {
                    return Err(bad());
                }
                re = Some(signed(parse_qrational(&body)?));
            }
        }
        Ok(GaussRational::new(
            re.unwrap_or_else(QRational::zero),
            im.unwrap_or_else(QRational::zero),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = GaussRational::new(q_ratio(1, 2), q_int(3));
        let b = GaussRational::new(q_int(-1), q_ratio(2, 5));
        let prod = &a * &b;
        // (1/2 + 3i)(-1 + 2/5 i) = (-1/2 - 6/5) + (1/5 - 3)i
        assert_eq!(prod.re(), &q_ratio(-17, 10));
        assert_eq!(prod.im(), &q_ratio(-14, 5));
        let back = &prod / &b;
        assert_eq!(back, a);
    }

    #[test]
    fn conj_and_norm() {
        let u = GaussRational::new(q_ratio(3, 5), q_ratio(4, 5));
        assert_eq!(u.norm_sqr(), q_int(1));
        assert_eq!(&u * &u.conj(), GaussRational::one());
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "1", "-1", "3/2", "i", "-i", "1/3i", "3/2-1/3i", "-1/2+3i", "1+i"] {
            let v: GaussRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s, "canonical form of {s}");
            let again: GaussRational = v.to_string().parse().unwrap();
            assert_eq!(again, v);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "2+3", "i+i", "1..2", "z", "--"] {
            assert!(s.parse::<GaussRational>().is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn parse_accepts_whitespace() {
        let v: GaussRational = " 3/2 - 1/3 i ".parse().unwrap();
        assert_eq!(v, GaussRational::new(q_ratio(3, 2), q_ratio(-1, 3)));
    }
}
