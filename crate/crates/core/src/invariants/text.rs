//! Canonical text form of polynomials.
//!
//! Terms are listed in ascending exponent order as `coeff*v^a*z^b` (two
//! variables) or `coeff*t^e` (one variable), joined by ` + `. Exponents of
//! `t` may be half-integers written `p/2`. The zero polynomial is `0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::{Poly1, Poly2};
use super::Fingerprint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad polynomial term {term:?}: {msg}")]
pub struct PolyParseError {
    pub term: String,
    pub msg: &'static str,
}

fn half(e: i32) -> String {
    if e % 2 == 0 {
        format!("{}", e / 2)
    } else {
        format!("{e}/2")
    }
}

pub fn format_poly2(p: &Poly2) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().map(|([a, b], c)| format!("{c}*v^{a}*z^{b}")).collect::<Vec<_>>().join(" + ")
}

/// Formats a polynomial stored with doubled exponents of `var`.
pub fn format_half(p: &Poly1, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().map(|(e, c)| format!("{c}*{var}^{}", half(e))).collect::<Vec<_>>().join(" + ")
}

fn parse_half_exponent(s: &str, term: &str) -> Result<i32, PolyParseError> {
    let bad = || PolyParseError { term: term.to_string(), msg: "bad exponent" };
    match s.split_once('/') {
        Some((n, "2")) => n.trim().parse::<i32>().map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => s.trim().parse::<i32>().map(|e| 2 * e).map_err(|_| bad()),
    }
}

fn split_terms(s: &str) -> impl Iterator<Item = &str> {
    s.split('+').map(str::trim).filter(|t| !t.is_empty())
}

pub fn parse_poly2(s: &str) -> Result<Poly2, PolyParseError> {
    let mut p = Poly2::zero();
    if s.trim() == "0" {
        return Ok(p);
    }
    for term in split_terms(s) {
        let err = |msg| PolyParseError { term: term.to_string(), msg };
        let mut parts = term.split('*');
        let c: i64 = parts.next().unwrap().trim().parse().map_err(|_| err("bad coefficient"))?;
        let (mut a, mut b) = (0, 0);
        for f in parts {
            let (var, e) = f.split_once('^').ok_or_else(|| err("missing '^'"))?;
            let e: i32 = e.trim().parse().map_err(|_| err("bad exponent"))?;
            match var.trim() {
                "v" => a = e,
                "z" => b = e,
                _ => return Err(err("unknown variable")),
            }
        }
        p.add_term([a, b], c);
    }
    Ok(p)
}

pub fn parse_half(s: &str, var: &str) -> Result<Poly1, PolyParseError> {
    let mut p = Poly1::zero();
    if s.trim() == "0" {
        return Ok(p);
    }
    for term in split_terms(s) {
        let err = |msg| PolyParseError { term: term.to_string(), msg };
        let (c, rest) = match term.split_once('*') {
            Some((c, r)) => (c, Some(r)),
            None => (term, None),
        };
        let c: i64 = c.trim().parse().map_err(|_| err("bad coefficient"))?;
        let e = match rest {
            None => 0,
            Some(r) => {
                let (v, e) = r.split_once('^').ok_or_else(|| err("missing '^'"))?;
                if v.trim() != var {
                    return Err(err("unknown variable"));
                }
                parse_half_exponent(e.trim_matches(|ch| ch == '(' || ch == ')'), term)?
            }
        };
        p.add_term(e, c);
    }
    Ok(p)
}

/// Serialized form of a [`Fingerprint`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FingerprintText {
    pub homfly: String,
    pub jones: String,
    pub alexander: String,
    pub components: usize,
}

impl From<Fingerprint> for FingerprintText {
    fn from(f: Fingerprint) -> Self {
        FingerprintText {
            homfly: format_poly2(&f.homfly),
            jones: format_half(&f.jones, "t"),
            alexander: format_half(&f.alexander, "t"),
            components: f.components,
        }
    }
}

impl TryFrom<FingerprintText> for Fingerprint {
    type Error = PolyParseError;
    fn try_from(t: FingerprintText) -> Result<Self, Self::Error> {
        Ok(Fingerprint {
            homfly: parse_poly2(&t.homfly)?,
            jones: parse_half(&t.jones, "t")?,
            alexander: parse_half(&t.alexander, "t")?,
            components: t.components,
        })
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "homfly: {}", format_poly2(&self.homfly))?;
        writeln!(f, "jones: {}", format_half(&self.jones, "t"))?;
        write!(f, "alexander: {}", format_half(&self.alexander, "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let p = Poly2::from_terms([([2, 0], 2), ([4, 0], -1), ([2, 2], 1), ([-1, -1], 3)]);
        let s = format_poly2(&p);
        assert_eq!(s, "3*v^-1*z^-1 + 2*v^2*z^0 + 1*v^2*z^2 + -1*v^4*z^0");
        assert_eq!(parse_poly2(&s).unwrap(), p);
        let q = Poly1::from_terms([(-3, 1), (2, -4)]);
        let s = format_half(&q, "t");
        assert_eq!(s, "1*t^-3/2 + -4*t^1");
        assert_eq!(parse_half(&s, "t").unwrap(), q);
        assert_eq!(parse_half("0", "t").unwrap(), Poly1::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly2("1*w^2").is_err());
        assert!(parse_half("x*t^1", "t").is_err());
        assert!(parse_half("1*t^1/3", "t").is_err());
    }
}
