//! Expression parser and canonical printer for biharmonic symbols.
//!
//! Grammar: sums of products of Gaussian-rational literals, `z`, `conj(...)`
//! and `|z|^2`, with integer powers and division by constants. Whitespace is
//! insignificant. An expression is expanded into monomials `z^a conj(z)^b`;
//! `min(a, b) >= 2` is outside the supported symbol class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::BiharmonicSymbol;
use crate::numeric::{GaussRational, QRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not in the biharmonic symbol class: monomial z^{z_pow}*conj(z)^{conj_pow}")]
    NotInClass { z_pow: u32, conj_pow: u32 },
    #[error("invalid symbol JSON: {0}")]
    BadJson(String),
}

impl ParseError {
    fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn bad_json(msg: &str) -> Self {
        ParseError::BadJson(msg.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    I,
    Z,
    Conj,
    AbsZ,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        match b {
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &src[start..pos];
                toks.push((Tok::Int(digits.parse().unwrap()), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                    pos += 1;
                }
                let word = &src[start..pos];
                let tok = match word {
                    "i" => Tok::I,
                    "z" => Tok::Z,
                    "conj" => Tok::Conj,
                    _ => return Err(ParseError::syntax(start, format!("unknown name {word:?}"))),
                };
                toks.push((tok, start));
            }
            b'|' => {
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                if pos >= bytes.len() || bytes[pos] != b'z' {
                    return Err(ParseError::syntax(start, "expected \"|z|\""));
                }
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                if pos >= bytes.len() || bytes[pos] != b'|' {
                    return Err(ParseError::syntax(start, "expected \"|z|\""));
                }
                pos += 1;
                toks.push((Tok::AbsZ, start));
            }
            _ => {
                let tok = match b {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        return Err(ParseError::syntax(
                            start,
                            format!("unexpected character {:?}", b as char),
                        ))
                    }
                };
                pos += 1;
                toks.push((tok, start));
            }
        }
    }
    Ok(toks)
}

/// Expanded polynomial in `z` and `conj(z)`: map from `(z power, conj power)`
/// to coefficient. Zero coefficients are never stored.
type MixedPoly = BTreeMap<(u32, u32), GaussRational>;

fn mp_insert(m: &mut MixedPoly, key: (u32, u32), c: GaussRational) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&key) {
        Some(existing) => {
            *existing = &*existing + &c;
            if existing.is_zero() {
                m.remove(&key);
            }
        }
        None => {
            m.insert(key, c);
        }
    }
}

fn mp_const(c: GaussRational) -> MixedPoly {
    let mut m = MixedPoly::new();
    mp_insert(&mut m, (0, 0), c);
    m
}

fn mp_add(a: &MixedPoly, b: &MixedPoly) -> MixedPoly {
    let mut out = a.clone();
    for (k, c) in b {
        mp_insert(&mut out, *k, c.clone());
    }
    out
}

fn mp_neg(a: &MixedPoly) -> MixedPoly {
    a.iter().map(|(k, c)| (*k, -c)).collect()
}

fn mp_mul(a: &MixedPoly, b: &MixedPoly) -> MixedPoly {
    let mut out = MixedPoly::new();
    for ((za, ca), va) in a {
        for ((zb, cb), vb) in b {
            mp_insert(&mut out, (za + zb, ca + cb), va * vb);
        }
    }
    out
}

fn mp_conj(a: &MixedPoly) -> MixedPoly {
    a.iter().map(|((zp, cp), c)| ((*cp, *zp), c.conj())).collect()
}

fn mp_as_const(a: &MixedPoly) -> Option<GaussRational> {
    match a.len() {
        0 => Some(GaussRational::zero()),
        1 => a.get(&(0, 0)).cloned(),
        _ => None,
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(ParseError::syntax(pos, format!("expected {what}"))),
        }
    }

    fn parse_expr(&mut self) -> Result<MixedPoly, ParseError> {
        let mut negate = false;
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            negate = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.next();
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = mp_neg(&acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = mp_add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = mp_add(&acc, &mp_neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<MixedPoly, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let f = self.parse_factor()?;
                    acc = mp_mul(&acc, &f);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let pos = self.pos();
                    let f = self.parse_factor()?;
                    let c = mp_as_const(&f).ok_or_else(|| {
                        ParseError::syntax(pos, "division by a non-constant expression")
                    })?;
                    if c.is_zero() {
                        return Err(ParseError::syntax(pos, "division by zero"));
                    }
                    acc = mp_mul(&acc, &mp_const(c.recip()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<MixedPoly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            let f = self.parse_factor()?;
            return Ok(mp_neg(&f));
        }
        let base = self.parse_primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let e = self.parse_exponent()?;
            let mut acc = mp_const(GaussRational::one());
            for _ in 0..e {
                acc = mp_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Int(n)) => {
                if n.is_negative() {
                    return Err(ParseError::syntax(pos, "exponent must be nonnegative"));
                }
                n.to_u32()
                    .filter(|&e| e <= 256)
                    .ok_or_else(|| ParseError::syntax(pos, "exponent too large"))
            }
            _ => Err(ParseError::syntax(pos, "expected an integer exponent")),
        }
    }

    fn parse_primary(&mut self) -> Result<MixedPoly, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Int(n)) => {
                let q = GaussRational::from_q(QRational::from_integer(n));
                // A number immediately followed by `i` is an imaginary literal.
                if let Some(Tok::I) = self.peek() {
                    self.next();
                    return Ok(mp_const(&q * &GaussRational::i()));
                }
                Ok(mp_const(q))
            }
            Some(Tok::I) => Ok(mp_const(GaussRational::i())),
            Some(Tok::Z) => {
                let mut m = MixedPoly::new();
                mp_insert(&mut m, (1, 0), GaussRational::one());
                Ok(m)
            }
            Some(Tok::Conj) => {
                self.expect(Tok::LParen, "'(' after conj")?;
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(mp_conj(&inner))
            }
            Some(Tok::AbsZ) => {
                self.expect(Tok::Caret, "'^' after |z|")?;
                let epos = self.pos();
                let e = self.parse_exponent()?;
                if e % 2 != 0 {
                    return Err(ParseError::syntax(epos, "|z| requires an even power"));
                }
                let mut m = MixedPoly::new();
                mp_insert(&mut m, (e / 2, e / 2), GaussRational::one());
                Ok(m)
            }
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(tok) => Err(ParseError::syntax(pos, format!("unexpected token {tok:?}"))),
            None => Err(ParseError::syntax(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_symbol(text: &str) -> Result<BiharmonicSymbol, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, idx: 0, end: text.len() };
    let mp = parser.parse_expr()?;
    if parser.idx < parser.toks.len() {
        let (tok, pos) = &parser.toks[parser.idx];
        return Err(ParseError::syntax(*pos, format!("trailing token {tok:?}")));
    }
    mixed_into_symbol(&mp)
}

/// Normalizes monomials: `min(a, b) = 0` is harmonic, `min(a, b) = 1` carries
/// a factor `|z|^2`, anything deeper is out of class.
fn mixed_into_symbol(mp: &MixedPoly) -> Result<BiharmonicSymbol, ParseError> {
    let mut a1: Vec<GaussRational> = Vec::new();
    let mut c1: Vec<GaussRational> = Vec::new();
    let mut a2: Vec<GaussRational> = Vec::new();
    let mut c2: Vec<GaussRational> = Vec::new();
    let bump = |list: &mut Vec<GaussRational>, idx: usize, c: &GaussRational| {
        if list.len() <= idx {
            list.resize(idx + 1, GaussRational::zero());
        }
        list[idx] = &list[idx] + c;
    };
    for ((zp, cp), c) in mp {
        let (zp, cp) = (*zp as usize, *cp as usize);
        match zp.min(cp) {
            0 => {
                if cp == 0 {
                    bump(&mut a1, zp, c);
                } else {
                    bump(&mut c1, cp, c);
                }
            }
            1 => {
                if cp == 1 {
                    bump(&mut a2, zp - 1, c);
                } else {
                    bump(&mut c2, cp - 1, c);
                }
            }
            _ => {
                return Err(ParseError::NotInClass { z_pow: zp as u32, conj_pow: cp as u32 });
            }
        }
    }
    Ok(BiharmonicSymbol::new(a1, c1, a2, c2))
}

/// Magnitude of a positive rational multiple of `i`, written so the
/// expression grammar reads it back with the intended grouping:
/// `i`, `3i`, `i/3`, `3i/4`.
fn imag_mag(q: &QRational) -> String {
    debug_assert!(q.is_positive());
    let (num, den) = (q.numer(), q.denom());
    let num_part = if num.is_one() { "i".to_string() } else { format!("{num}i") };
    if den.is_one() {
        num_part
    } else {
        format!("{num_part}/{den}")
    }
}

/// One rendered summand: a sign and the unsigned body.
fn coefficient_term(c: &GaussRational, mono: &str) -> (bool, String) {
    if c.im().is_zero() {
        let mag = c.re().abs();
        let body = if mag.is_one() { mono.to_string() } else { format!("{mag}*{mono}") };
        (c.re().is_negative(), body)
    } else if c.re().is_zero() {
        (c.im().is_negative(), format!("{}*{mono}", imag_mag(&c.im().abs())))
    } else {
        let re = c.re();
        let im = c.im();
        let sign = if im.is_negative() { '-' } else { '+' };
        let lit = format!("{re}{sign}{}", imag_mag(&im.abs()));
        (false, format!("({lit})*{mono}"))
    }
}

fn push_scalar_terms(terms: &mut Vec<(bool, String)>, c: &GaussRational) {
    if !c.re().is_zero() {
        terms.push((c.re().is_negative(), c.re().abs().to_string()));
    }
    if !c.im().is_zero() {
        terms.push((c.im().is_negative(), imag_mag(&c.im().abs())));
    }
}

fn push_monomials(terms: &mut Vec<(bool, String)>, list: &[GaussRational], base: &str) {
    for (n, c) in list.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let mono = if n == 1 { base.to_string() } else { format!("{base}^{n}") };
        terms.push(coefficient_term(c, &mono));
    }
}

fn join_terms(terms: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

pub(crate) fn render_symbol(sym: &BiharmonicSymbol) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    push_scalar_terms(&mut terms, &sym.constant_part());
    push_monomials(&mut terms, sym.a1(), "z");
    push_monomials(&mut terms, sym.c1(), "conj(z)");
    if !sym.a2().is_empty() || !sym.c2().is_empty() {
        let mut inner: Vec<(bool, String)> = Vec::new();
        if let Some(c0) = sym.a2().first() {
            push_scalar_terms(&mut inner, c0);
        }
        push_monomials(&mut inner, sym.a2(), "z");
        push_monomials(&mut inner, sym.c2(), "conj(z)");
        terms.push((false, format!("|z|^2*({})", join_terms(&inner))));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        join_terms(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_coefficients() {
        let sym = parse_symbol("(1-2i)/3*z").unwrap();
        assert_eq!(
            sym.a1(),
            &[
                GaussRational::zero(),
                GaussRational::new(crate::numeric::q_ratio(1, 3), crate::numeric::q_ratio(-2, 3)),
            ]
        );
        let sym = parse_symbol("5/7 + i").unwrap();
        assert_eq!(
            sym.constant_part(),
            GaussRational::new(crate::numeric::q_ratio(5, 7), crate::numeric::q_ratio(1, 1))
        );
    }

    #[test]
    fn imaginary_literal_grouping() {
        // "3i/4" is (3/4)i, not 3/(4i).
        let sym = parse_symbol("3i/4").unwrap();
        assert_eq!(
            sym.constant_part(),
            GaussRational::new(crate::numeric::q_ratio(0, 1), crate::numeric::q_ratio(3, 4))
        );
        let sym = parse_symbol("2 i * z").unwrap();
        assert_eq!(sym.a1()[1], GaussRational::new(crate::numeric::q_int(0), crate::numeric::q_int(2)));
    }

    #[test]
    fn conj_distributes() {
        let a = parse_symbol("conj(z^2 + i*z)").unwrap();
        let b = parse_symbol("conj(z)^2 - i*conj(z)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn abs_z_powers() {
        assert!(parse_symbol("|z|^2").is_ok());
        assert!(matches!(parse_symbol("|z|^4"), Err(ParseError::NotInClass { .. })));
        assert!(matches!(parse_symbol("|z|^3"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_symbol("|z|"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn cancellation_stays_in_class() {
        let sym = parse_symbol("z^2*conj(z)^2 - z^2*conj(z)^2").unwrap();
        assert!(sym.is_zero());
    }

    #[test]
    fn error_positions() {
        match parse_symbol("z + @") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_symbol("z / z"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_symbol("z / 0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_symbol(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_symbol("w"), Err(ParseError::Syntax { .. })));
    }
}
