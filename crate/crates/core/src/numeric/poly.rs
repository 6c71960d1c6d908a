//! Dense univariate polynomials over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::gauss::{GaussRational, QRational};

/// Polynomial in one variable, coefficients ascending by power. Trailing zero
/// coefficients are trimmed; the zero polynomial is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<GaussRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&n| GaussRational::from_int(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, idx: usize) -> GaussRational {
        self.coeffs.get(idx).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval_q(&self, x: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_int(&self, k: i64) -> GaussRational {
        self.eval_q(&GaussRational::from_int(k))
    }

    /// Substitutes `x -> a*x + b`.
    pub fn compose_affine(&self, a: i64, b: i64) -> Self {
        let lin = Self::from_int_coeffs(&[b, a]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// Substitutes `x -> x + d`.
    pub fn shift(&self, d: i64) -> Self {
        self.compose_affine(1, d)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut quot = vec![GaussRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let shift = rd - dd;
            let mut sub = vec![GaussRational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &factor));
            rem = &rem - &UniPoly::new(sub);
            quot[shift] = factor;
        }
        (UniPoly::new(quot), rem)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Computed by a fraction-free subresultant remainder sequence over the
    /// Gaussian integers, which keeps coefficient growth polynomial where a
    /// naive rational Euclidean loop explodes.
    pub fn gcd_monic(a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() {
            return b.make_monic();
        }
        if b.is_zero() {
            return a.make_monic();
        }
        subres::gcd(a, b).make_monic()
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn make_monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Smallest integer root `>= k0` of a monic polynomial, if any.
    ///
    /// Used to check that band-coefficient denominators never vanish on the
    /// region where the tail formula is claimed to be valid. Candidate roots
    /// are bounded by the Fujiwara bound, so the scan is short for the small
    /// polynomials this calculus produces.
    pub fn smallest_integer_root_geq(&self, k0: i64) -> Option<i64> {
        let deg = self.degree()?;
        if deg == 0 {
            return None;
        }
        debug_assert!(self.leading().unwrap().is_one(), "root scan expects a monic polynomial");
        // Fast path: all coefficients real and nonnegative with a positive
        // constant term means the polynomial is positive on [0, inf).
        if k0 >= 0
            && self
                .coeffs
                .iter()
                .all(|c| c.im().is_zero() && !c.re().is_negative())
            && self.coeffs[0].re().is_positive()
        {
            return None;
        }
        let mut bound = BigInt::from(1);
        for i in 1..=deg {
            let c = self.coeff(deg - i);
            let mag = (c.re().abs() + c.im().abs()).ceil().to_integer();
            let root = nth_root_ceil(&mag, i as u32);
            if root > bound {
                bound = root;
            }
        }
        bound *= 2;
        let upper = i64::try_from(&bound).expect("root bound does not fit in i64");
        assert!(upper < 1_000_000, "root scan bound unexpectedly large: {upper}");
        // Prefilter candidates modulo a large prime; only the survivors get
        // the exact evaluation.
        let modp = ModPoly::from_poly(self);
        (k0.max(-upper)..=upper)
            .filter(|&j| modp.is_zero_at(j))
            .find(|&j| self.eval_int(j).is_zero())
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let deg = self.degree().unwrap();
        let mut first = true;
        for p in (0..=deg).rev() {
            let c = self.coeff(p);
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = coef_sign_mag(&c);
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match p {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{p}"),
            };
            match (mag.as_str(), mono.is_empty()) {
                ("1", false) => out.push_str(&mono),
                (_, true) => out.push_str(&mag),
                (_, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Splits a coefficient into a sign and a printable magnitude. Coefficients
/// with both real and imaginary parts render parenthesized and unsigned.
fn coef_sign_mag(c: &GaussRational) -> (bool, String) {
    if c.im().is_zero() {
        (c.re().is_negative(), c.re().abs().to_string())
    } else if c.re().is_zero() {
        let mag = c.im().abs();
        let s = if mag.eq(&QRational::from_integer(1.into())) {
            "i".to_string()
        } else {
            format!("{mag}i")
        };
        (c.im().is_negative(), s)
    } else {
        (false, format!("({c})"))
    }
}

fn nth_root_ceil(n: &BigInt, i: u32) -> BigInt {
    if n.is_zero() {
        return BigInt::from(0);
    }
    let mut r = n.nth_root(i);
    while r.pow(i) < *n {
        r += 1;
    }
    r
}

const SCAN_PRIME: u64 = (1 << 61) - 1;

/// Denominator-cleared image of a polynomial modulo a fixed prime, used to
/// discard non-roots cheaply during the integer-root scan.
struct ModPoly {
    re: Vec<u64>,
    im: Vec<u64>,
}

impl ModPoly {
    fn from_poly(p: &UniPoly) -> Self {
        let prime = BigInt::from(SCAN_PRIME);
        let modq = |q: &QRational, lcm: &BigInt| -> u64 {
            let scaled = (q * &QRational::from_integer(lcm.clone())).to_integer();
            let m = ((scaled % &prime) + &prime) % &prime;
            u64::try_from(m).unwrap()
        };
        let mut lcm = BigInt::from(1);
        for c in p.coeffs() {
            lcm = num_integer::lcm(lcm.clone(), c.re().denom().clone());
            lcm = num_integer::lcm(lcm, c.im().denom().clone());
        }
        ModPoly {
            re: p.coeffs().iter().map(|c| modq(c.re(), &lcm)).collect(),
            im: p.coeffs().iter().map(|c| modq(c.im(), &lcm)).collect(),
        }
    }

    fn is_zero_at(&self, j: i64) -> bool {
        let x = j.rem_euclid(SCAN_PRIME as i64) as u64;
        let horner = |coeffs: &[u64]| {
            let mut acc = 0u64;
            for c in coeffs.iter().rev() {
                acc = ((acc as u128 * x as u128 + *c as u128) % SCAN_PRIME as u128) as u64;
            }
            acc
        };
        horner(&self.re) == 0 && horner(&self.im) == 0
    }
}

/// Fraction-free polynomial gcd over the Gaussian integers.
mod subres {
    use super::{GaussRational, UniPoly};
    use crate::numeric::gauss::QRational;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    /// Gaussian integer.
    #[derive(Clone, Debug, PartialEq, Eq)]
    struct ZG {
        re: BigInt,
        im: BigInt,
    }

    impl ZG {
        fn one() -> Self {
            ZG { re: BigInt::one(), im: BigInt::zero() }
        }

        fn is_zero(&self) -> bool {
            self.re.is_zero() && self.im.is_zero()
        }

        fn mul(&self, o: &ZG) -> ZG {
            ZG {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            }
        }

        fn sub(&self, o: &ZG) -> ZG {
            ZG { re: &self.re - &o.re, im: &self.im - &o.im }
        }

        /// Exact quotient; the divisions the subresultant sequence performs
        /// are exact by construction.
        fn exact_div(&self, o: &ZG) -> ZG {
            let norm = &o.re * &o.re + &o.im * &o.im;
            let num = self.mul(&ZG { re: o.re.clone(), im: -o.im.clone() });
            debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
            ZG { re: num.re / &norm, im: num.im / &norm }
        }

        fn pow(&self, e: usize) -> ZG {
            let mut acc = ZG::one();
            for _ in 0..e {
                acc = acc.mul(self);
            }
            acc
        }
    }

    /// Coefficients ascending, trailing zeros trimmed.
    type ZPoly = Vec<ZG>;

    fn trim(mut p: ZPoly) -> ZPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    fn to_zpoly(p: &UniPoly) -> ZPoly {
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = num_integer::lcm(lcm.clone(), c.re().denom().clone());
            lcm = num_integer::lcm(lcm, c.im().denom().clone());
        }
        let scale = QRational::from_integer(lcm);
        p.coeffs()
            .iter()
            .map(|c| ZG {
                re: (c.re() * &scale).to_integer(),
                im: (c.im() * &scale).to_integer(),
            })
            .collect()
    }

    fn to_unipoly(p: &ZPoly) -> UniPoly {
        UniPoly::new(
            p.iter()
                .map(|c| {
                    GaussRational::new(
                        QRational::from_integer(c.re.clone()),
                        QRational::from_integer(c.im.clone()),
                    )
                })
                .collect(),
        )
    }

    fn scale(p: &ZPoly, c: &ZG) -> ZPoly {
        p.iter().map(|x| x.mul(c)).collect()
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b`, exact over
    /// the Gaussian integers.
    fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
        let db = b.len() - 1;
        let lcb = b.last().unwrap().clone();
        let mut e = a.len() - b.len() + 1;
        let mut r = a.clone();
        while r.len() > db {
            let dr = r.len() - 1;
            let lr = r.last().unwrap().clone();
            let mut next = scale(&r, &lcb);
            for (i, bc) in b.iter().enumerate() {
                let idx = i + dr - db;
                next[idx] = next[idx].sub(&lr.mul(bc));
            }
            r = trim(next);
            e -= 1;
        }
        let tail = lcb.pow(e);
        trim(scale(&r, &tail))
    }

    pub(super) fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut f, mut g) = (to_zpoly(a), to_zpoly(b));
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        let mut gamma = ZG::one();
        let mut h = ZG::one();
        loop {
            let delta = f.len() - g.len();
            let r = prem(&f, &g);
            if r.is_empty() {
                return to_unipoly(&g);
            }
            if r.len() == 1 {
                return UniPoly::one();
            }
            let divisor = gamma.mul(&h.pow(delta));
            f = g;
            g = r.iter().map(|c| c.exact_div(&divisor)).collect();
            gamma = f.last().unwrap().clone();
            h = match delta {
                0 => h,
                1 => gamma.clone(),
                _ => gamma.pow(delta).exact_div(&h.pow(delta - 1)),
            };
        }
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("k"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let a = UniPoly::from_int_coeffs(&[6, 5, 1]); // (k+2)(k+3)
        let b = UniPoly::from_int_coeffs(&[2, 1]); // k+2
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_int_coeffs(&[3, 1]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = UniPoly::from_int_coeffs(&[6, 5, 1]);
        let b = UniPoly::from_int_coeffs(&[4, 4, 1]); // (k+2)^2
        assert_eq!(UniPoly::gcd_monic(&a, &b), UniPoly::from_int_coeffs(&[2, 1]));
    }

    #[test]
    fn affine_composition() {
        let p = UniPoly::from_int_coeffs(&[0, 0, 1]); // k^2
        assert_eq!(p.compose_affine(2, 3), UniPoly::from_int_coeffs(&[9, 12, 4]));
        assert_eq!(p.shift(1).shift(-1), p);
    }

    #[test]
    fn integer_root_scan() {
        // (k-3)(k+2) = k^2 - k - 6
        let p = UniPoly::from_int_coeffs(&[-6, -1, 1]);
        assert_eq!(p.smallest_integer_root_geq(0), Some(3));
        assert_eq!(p.smallest_integer_root_geq(4), None);
        let q = UniPoly::from_int_coeffs(&[6, 5, 1]);
        assert_eq!(q.smallest_integer_root_geq(0), None);
        assert_eq!(q.smallest_integer_root_geq(-5), Some(-3));
    }

    #[test]
    fn rendering() {
        let p = UniPoly::new(vec![
            GaussRational::ratio(1, 6),
            GaussRational::from_int(-5),
            GaussRational::one(),
        ]);
        assert_eq!(p.render("k"), "k^2-5*k+1/6");
        assert_eq!(UniPoly::zero().render("k"), "0");
    }
}
