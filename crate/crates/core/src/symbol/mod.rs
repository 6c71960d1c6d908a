//! Polynomial biharmonic symbols in Almansi form.
//!
//! A symbol is stored as four coefficient lists encoding
//! `Phi(z) = sum a1[n] z^n + sum c1[n] conj(z)^n
//!           + |z|^2 (sum a2[n] z^n + sum c2[n] conj(z)^n)`.
//!
//! Canonical form: trailing zeros trimmed from every list, and the constants
//! that could live in `c1[0]` or `c2[0]` are folded into `a1[0]` and `a2[0]`
//! respectively (both describe the same monomial), so `c1[0] = c2[0] = 0`.

mod parse;

pub use parse::ParseError;

use serde_json::{json, Value};

use crate::numeric::{GaussRational, QRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiharmonicSymbol {
    a1: Vec<GaussRational>,
    c1: Vec<GaussRational>,
    a2: Vec<GaussRational>,
    c2: Vec<GaussRational>,
}

/// One quasi-homogeneous piece `c * e^{i p theta} r^s`. The sign of `p`
/// distinguishes analytic from anti-analytic angular behavior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHomogeneousTerm {
    pub p: i64,
    pub s: u32,
    pub c: GaussRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub nonzero: bool,
    pub degree: Option<usize>,
    pub leading: Option<GaussRational>,
}

/// Per-component presence flags for one symbol. The degree bookkeeping of the
/// decision procedures is only meaningful when all four components are
/// genuinely nonzero polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub a1: ComponentReport,
    pub c1: ComponentReport,
    pub a2: ComponentReport,
    pub c2: ComponentReport,
    pub hypotheses_met: bool,
}

fn trim(mut v: Vec<GaussRational>) -> Vec<GaussRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn component_report(list: &[GaussRational]) -> ComponentReport {
    ComponentReport {
        nonzero: !list.is_empty(),
        degree: if list.is_empty() { None } else { Some(list.len() - 1) },
        leading: list.last().cloned(),
    }
}

impl BiharmonicSymbol {
    /// Builds a symbol from raw coefficient lists and normalizes.
    pub fn new(
        a1: Vec<GaussRational>,
        c1: Vec<GaussRational>,
        a2: Vec<GaussRational>,
        c2: Vec<GaussRational>,
    ) -> Self {
        let mut a1 = a1;
        let mut c1 = c1;
        let mut a2 = a2;
        let mut c2 = c2;
        if let Some(c) = c1.first().cloned() {
            if !c.is_zero() {
                if a1.is_empty() {
                    a1.push(GaussRational::zero());
                }
                a1[0] = &a1[0] + &c;
                c1[0] = GaussRational::zero();
            }
        }
        if let Some(c) = c2.first().cloned() {
            if !c.is_zero() {
                if a2.is_empty() {
                    a2.push(GaussRational::zero());
                }
                a2[0] = &a2[0] + &c;
                c2[0] = GaussRational::zero();
            }
        }
        BiharmonicSymbol { a1: trim(a1), c1: trim(c1), a2: trim(a2), c2: trim(c2) }
    }

    pub fn zero() -> Self {
        BiharmonicSymbol { a1: vec![], c1: vec![], a2: vec![], c2: vec![] }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c], vec![], vec![], vec![])
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_empty() && self.c1.is_empty() && self.a2.is_empty() && self.c2.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.a1.len() <= 1 && self.c1.is_empty() && self.a2.is_empty() && self.c2.is_empty()
    }

    /// The constant harmonic coefficient `a1[0]`.
    pub fn constant_part(&self) -> GaussRational {
        self.a1.first().cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn a1(&self) -> &[GaussRational] {
        &self.a1
    }

    pub fn c1(&self) -> &[GaussRational] {
        &self.c1
    }

    pub fn a2(&self) -> &[GaussRational] {
        &self.a2
    }

    pub fn c2(&self) -> &[GaussRational] {
        &self.c2
    }

    /// Parses an expression such as
    /// `"z^2 + 3*conj(z) + |z|^2*(1 - i*conj(z)^3)"`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_symbol(text)
    }

    /// Splits the symbol into quasi-homogeneous terms: `a1[n] -> (n, n)`,
    /// `c1[n] -> (-n, n)`, `a2[n] -> (n, n+2)`, `c2[n] -> (-n, n+2)`.
    pub fn to_terms(&self) -> Vec<QuasiHomogeneousTerm> {
        let mut terms = Vec::new();
        let mut push = |p: i64, s: u32, c: &GaussRational| {
            if !c.is_zero() {
                terms.push(QuasiHomogeneousTerm { p, s, c: c.clone() });
            }
        };
        for (n, c) in self.a1.iter().enumerate() {
            push(n as i64, n as u32, c);
        }
        for (n, c) in self.c1.iter().enumerate() {
            push(-(n as i64), n as u32, c);
        }
        for (n, c) in self.a2.iter().enumerate() {
            push(n as i64, n as u32 + 2, c);
        }
        for (n, c) in self.c2.iter().enumerate() {
            push(-(n as i64), n as u32 + 2, c);
        }
        terms
    }

    /// The symbol of the adjoint operator: `conj(Phi)`.
    pub fn conjugate(&self) -> Self {
        let conj_list = |l: &[GaussRational]| l.iter().map(|c| c.conj()).collect();
        BiharmonicSymbol::new(
            conj_list(&self.c1),
            conj_list(&self.a1),
            conj_list(&self.c2),
            conj_list(&self.a2),
        )
    }

    /// Pointwise sum of two symbols.
    pub fn add(&self, other: &Self) -> Self {
        let merge = |a: &[GaussRational], b: &[GaussRational]| {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or_else(GaussRational::zero);
                    let y = b.get(i).cloned().unwrap_or_else(GaussRational::zero);
                    &x + &y
                })
                .collect::<Vec<_>>()
        };
        BiharmonicSymbol::new(
            merge(&self.a1, &other.a1),
            merge(&self.c1, &other.c1),
            merge(&self.a2, &other.a2),
            merge(&self.c2, &other.c2),
        )
    }

    /// `C1 * self + C2`.
    pub fn affine(&self, c1: &GaussRational, c2: &GaussRational) -> Self {
        let scale = |l: &[GaussRational]| l.iter().map(|c| c * c1).collect::<Vec<_>>();
        let mut a1 = scale(&self.a1);
        if !c2.is_zero() {
            if a1.is_empty() {
                a1.push(GaussRational::zero());
            }
            a1[0] = &a1[0] + c2;
        }
        BiharmonicSymbol::new(a1, scale(&self.c1), scale(&self.a2), scale(&self.c2))
    }

    /// Solves `self = C1 * psi + C2` for constants, if they exist. `C2` can
    /// only act on the constant harmonic coefficient, so the ratio `C1` is
    /// determined by all other coefficients and verified exhaustively.
    pub fn affine_relation(&self, psi: &BiharmonicSymbol) -> Option<(GaussRational, GaussRational)> {
        let pairs = |a: &[GaussRational], b: &[GaussRational], skip0: bool| {
            let n = a.len().max(b.len());
            let start = usize::from(skip0);
            (start..n)
                .map(|i| {
                    (
                        a.get(i).cloned().unwrap_or_else(GaussRational::zero),
                        b.get(i).cloned().unwrap_or_else(GaussRational::zero),
                    )
                })
                .collect::<Vec<_>>()
        };
        let mut coords = pairs(&self.a1, &psi.a1, true);
        coords.extend(pairs(&self.c1, &psi.c1, false));
        coords.extend(pairs(&self.a2, &psi.a2, false));
        coords.extend(pairs(&self.c2, &psi.c2, false));

        let mut ratio: Option<GaussRational> = None;
        for (phi_c, psi_c) in &coords {
            if psi_c.is_zero() {
                if !phi_c.is_zero() {
                    return None;
                }
            } else if ratio.is_none() {
                ratio = Some(phi_c / psi_c);
            }
        }
        // A constant psi leaves C1 unconstrained; 0 is the canonical witness,
        // and it only works when phi is constant too.
        let c1 = match ratio {
            Some(r) => r,
            None => {
                if coords.iter().all(|(p, _)| p.is_zero()) {
                    GaussRational::zero()
                } else {
                    return None;
                }
            }
        };
        for (phi_c, psi_c) in &coords {
            if *phi_c != &c1 * psi_c {
                return None;
            }
        }
        let c2 = &self.constant_part() - &(&c1 * &psi.constant_part());
        Some((c1, c2))
    }

    pub fn nondegeneracy(&self) -> NondegeneracyReport {
        let a1 = component_report(&self.a1);
        let c1 = component_report(&self.c1);
        let a2 = component_report(&self.a2);
        let c2 = component_report(&self.c2);
        let hypotheses_met = a1.nonzero && c1.nonzero && a2.nonzero && c2.nonzero;
        NondegeneracyReport { a1, c1, a2, c2, hypotheses_met }
    }

    /// Exact point evaluation with `|z|^2 = re(z)^2 + im(z)^2`.
    pub fn eval(&self, z: &GaussRational) -> GaussRational {
        let zbar = z.conj();
        let horner = |l: &[GaussRational], x: &GaussRational| {
            let mut acc = GaussRational::zero();
            for c in l.iter().rev() {
                acc = &(&acc * x) + c;
            }
            acc
        };
        let harmonic = &horner(&self.a1, z) + &horner(&self.c1, &zbar);
        let inner = &horner(&self.a2, z) + &horner(&self.c2, &zbar);
        let r2 = GaussRational::from_q(z.norm_sqr());
        &harmonic + &(&r2 * &inner)
    }

    /// Canonical expression string; `parse` of the result reproduces the
    /// symbol exactly.
    pub fn render(&self) -> String {
        parse::render_symbol(self)
    }

    pub fn to_json(&self) -> Value {
        let list = |l: &[GaussRational]| {
            Value::Array(l.iter().map(|c| Value::String(c.to_string())).collect())
        };
        json!({
            "a1": list(&self.a1),
            "c1": list(&self.c1),
            "a2": list(&self.a2),
            "c2": list(&self.c2),
        })
    }

    /// Reads the JSON symbol format: either the four coefficient lists of
    /// complex-rational strings or a single `"expr"` key (mutually
    /// exclusive).
    pub fn from_json(value: &Value) -> Result<Self, ParseError> {
        let obj = value
            .as_object()
            .ok_or_else(|| ParseError::bad_json("symbol JSON must be an object"))?;
        let has_lists = ["a1", "c1", "a2", "c2"].iter().any(|k| obj.contains_key(*k));
        if let Some(expr) = obj.get("expr") {
            if has_lists {
                return Err(ParseError::bad_json(
                    "\"expr\" is mutually exclusive with the coefficient lists",
                ));
            }
            let text = expr
                .as_str()
                .ok_or_else(|| ParseError::bad_json("\"expr\" must be a string"))?;
            return Self::parse(text);
        }
        let read_list = |key: &str| -> Result<Vec<GaussRational>, ParseError> {
            match obj.get(key) {
                None => Ok(vec![]),
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|item| {
                        let s = item.as_str().ok_or_else(|| {
                            ParseError::bad_json(&format!("\"{key}\" entries must be strings"))
                        })?;
                        s.parse::<GaussRational>().map_err(|e| {
                            ParseError::bad_json(&format!("\"{key}\" entry {s:?}: {e}"))
                        })
                    })
                    .collect(),
                Some(_) => Err(ParseError::bad_json(&format!("\"{key}\" must be an array"))),
            }
        };
        Ok(Self::new(read_list("a1")?, read_list("c1")?, read_list("a2")?, read_list("c2")?))
    }
}

/// Real-linear constraint `u * Re(Phi) + v * Im(Phi) = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineEquation {
    pub u: QRational,
    pub v: QRational,
    pub c: QRational,
}

impl LineEquation {
    pub fn holds_at(&self, sym: &BiharmonicSymbol, z: &GaussRational) -> bool {
        let w = sym.eval(z);
        &self.u * w.re() + &self.v * w.im() == self.c
    }
}

impl std::fmt::Display for LineEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let term = |q: &QRational, name: &str| format!("{q}*{name}(phi)");
        write!(f, "{} + {} = {}", term(&self.u, "Re"), term(&self.v, "Im"), self.c)
    }
}

/// Rational sample points in the unit disk: radii scaled onto angles with
/// rational cosine and sine (Pythagorean directions), 25 points total.
pub fn disk_sample_points() -> Vec<GaussRational> {
    let radii = [
        QRational::from_integer(0.into()),
        crate::numeric::q_ratio(1, 4),
        crate::numeric::q_ratio(1, 2),
        crate::numeric::q_ratio(3, 5),
        crate::numeric::q_ratio(3, 4),
    ];
    let dirs = [
        GaussRational::from_int(1),
        GaussRational::new(crate::numeric::q_ratio(3, 5), crate::numeric::q_ratio(4, 5)),
        GaussRational::new(crate::numeric::q_ratio(-3, 5), crate::numeric::q_ratio(4, 5)),
        GaussRational::i(),
        GaussRational::new(crate::numeric::q_ratio(4, 5), crate::numeric::q_ratio(-3, 5)),
    ];
    let mut pts = Vec::with_capacity(25);
    for r in &radii {
        for d in &dirs {
            pts.push(d.mul_q(r));
        }
    }
    pts
}
