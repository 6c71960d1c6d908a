//! Piecewise band coefficients: finitely many exceptional values followed by
//! a rational-function tail.

use crate::numeric::{GaussRational, RationalFunc};

/// The coefficient attached to one band of an operator, as a function of the
/// basis index `k`: explicit values for `k < k0`, the tail for `k >= k0`.
///
/// Canonical form is absorbed: whenever the tail is defined at `k0 - 1` and
/// agrees with the stored exceptional value there, the threshold shrinks.
/// The tail denominator is checked to be nonvanishing at every integer
/// `>= k0` on construction. The zero coefficient is `k0 = 0` with zero tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseBandCoeff {
    k0: usize,
    exceptional: Vec<GaussRational>,
    tail: RationalFunc,
}

impl PiecewiseBandCoeff {
    pub fn new(mut exceptional: Vec<GaussRational>, tail: RationalFunc) -> Self {
        while let Some(last) = exceptional.last() {
            let idx = (exceptional.len() - 1) as i64;
            match tail.eval_int(idx) {
                Ok(v) if &v == last => {
                    exceptional.pop();
                }
                _ => break,
            }
        }
        let k0 = exceptional.len();
        if let Some(k) = tail.den().smallest_integer_root_geq(k0 as i64) {
            panic!("band tail denominator vanishes at k = {k} (threshold k0 = {k0})");
        }
        PiecewiseBandCoeff { k0, exceptional, tail }
    }

    pub fn zero() -> Self {
        PiecewiseBandCoeff { k0: 0, exceptional: vec![], tail: RationalFunc::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.k0 == 0 && self.tail.is_zero()
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    pub fn exceptional(&self) -> &[GaussRational] {
        &self.exceptional
    }

    pub fn tail(&self) -> &RationalFunc {
        &self.tail
    }

    pub fn eval(&self, k: usize) -> GaussRational {
        if k < self.k0 {
            self.exceptional[k].clone()
        } else {
            self.tail
                .eval_int(k as i64)
                .expect("tail denominator nonvanishing for k >= k0")
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let k0 = self.k0.max(other.k0);
        let exceptional = (0..k0).map(|k| &self.eval(k) + &other.eval(k)).collect();
        Self::new(exceptional, &self.tail + &other.tail)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PiecewiseBandCoeff {
            k0: self.k0,
            exceptional: self.exceptional.iter().map(|v| v * c).collect(),
            tail: self.tail.scale(c),
        }
    }

    /// Least index with a nonzero value, and that value. `None` only for the
    /// zero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, GaussRational)> {
        for (k, v) in self.exceptional.iter().enumerate() {
            if !v.is_zero() {
                return Some((k, v.clone()));
            }
        }
        if self.tail.is_zero() {
            return None;
        }
        // The tail numerator has at most deg(num) integer roots.
        let deg = self.tail.num().degree().unwrap_or(0);
        for k in self.k0..=self.k0 + deg + 1 {
            let v = self.eval(k);
            if !v.is_zero() {
                return Some((k, v));
            }
        }
        unreachable!("nonzero tail with more roots than its degree");
    }

    /// Human-readable piecewise description, e.g.
    /// `"k < 2: [0, 1/3]; k >= 2: (k-1)/(k+1)"`.
    pub fn describe(&self) -> String {
        let tail = self.tail.render("k");
        if self.k0 == 0 {
            return format!("k >= 0: {tail}");
        }
        let vals: Vec<String> = self.exceptional.iter().map(|v| v.to_string()).collect();
        format!("k < {}: [{}]; k >= {}: {tail}", self.k0, vals.join(", "), self.k0)
    }
}
