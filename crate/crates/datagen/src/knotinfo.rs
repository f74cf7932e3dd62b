//! KnotInfo export conversion.
//!
//! KnotInfo writes polynomials as expressions such as
//! `(2*v^2-v^4)+ v^2*z^2` or `t^(-2)-t^(-1)+ 1`. They are parsed into
//! sparse polynomials with doubled exponents (so `t^(1/2)` is exact) and
//! rewritten in the canonical text form.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use deltaknot::invariants::text::{format_half, format_poly2};
use deltaknot::{Poly1, Poly2};

/// Monomial exponents (doubled) keyed by variable name.
type Mono = BTreeMap<char, i32>;
type Expr = BTreeMap<Mono, i64>;

fn mul(a: &Expr, b: &Expr) -> Expr {
    let mut out = Expr::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            for (&v, &e) in mb {
                *m.entry(v).or_insert(0) += e;
            }
            m.retain(|_, e| *e != 0);
            *out.entry(m).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add(a: &mut Expr, b: Expr, sign: i64) {
    for (m, c) in b {
        *a.entry(m).or_insert(0) += sign * c;
    }
    a.retain(|_, c| *c != 0);
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.i < self.s.len() && self.s[self.i] == b' ' {
            self.i += 1;
        }
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = Expr::new();
        let mut sign = 1;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            sign = if c == b'-' { -1 } else { 1 };
        }
        loop {
            let t = self.term()?;
            add(&mut acc, t, sign);
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.i += 1;
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                }
                Some(b'(') => {}
                _ => return Ok(acc),
            }
            acc = mul(&acc, &self.factor()?);
        }
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])?.parse().map_err(|_| anyhow!("expected a number at {start}"))
    }

    /// Exponent doubled: `2`, `(-2)`, `(1/2)`, `(-1/2)`.
    fn exponent(&mut self) -> Result<i32> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.i += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.i += 1;
        }
        let mut e = 2 * self.number()? as i32;
        if self.peek() == Some(b'/') {
            self.i += 1;
            if self.number()? != 2 {
                bail!("only half-integer exponents are supported");
            }
            e /= 2;
        }
        if paren {
            if self.peek() != Some(b')') {
                bail!("unclosed exponent at {}", self.i);
            }
            self.i += 1;
        }
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    bail!("unbalanced parenthesis at {}", self.i);
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::from([(Mono::new(), self.number()?)])),
            Some(c) if c.is_ascii_alphabetic() => {
                self.i += 1;
                let e = if self.peek() == Some(b'^') {
                    self.i += 1;
                    self.exponent()?
                } else {
                    2
                };
                Ok(Expr::from([(Mono::from([(c as char, e)]), 1)]))
            }
            other => bail!("unexpected {:?} at {}", other.map(char::from), self.i),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        bail!("trailing input at {} in {s:?}", p.i);
    }
    Ok(e)
}

fn single_var(e: &Expr, var: char) -> Result<Poly1> {
    let mut p = Poly1::zero();
    for (m, &c) in e {
        if m.keys().any(|&v| v != var) {
            bail!("unexpected variable in one-variable polynomial");
        }
        p.add_term(*m.get(&var).unwrap_or(&0), c);
    }
    Ok(p)
}

pub fn parse_homfly(s: &str) -> Result<Poly2> {
    let mut p = Poly2::zero();
    for (m, &c) in &parse_expr(s)? {
        if m.keys().any(|&v| v != 'v' && v != 'z') {
            bail!("unexpected variable in {s:?}");
        }
        let (a, b) = (*m.get(&'v').unwrap_or(&0), *m.get(&'z').unwrap_or(&0));
        if a % 2 != 0 || b % 2 != 0 {
            bail!("fractional exponent in {s:?}");
        }
        p.add_term([a / 2, b / 2], c);
    }
    Ok(p)
}

/// Jones polynomial in doubled exponents of `t`.
pub fn parse_jones(s: &str) -> Result<Poly1> {
    single_var(&parse_expr(s)?, 't')
}

/// Alexander polynomial shifted to symmetric exponents with value 1 at
/// `t = 1` (doubled exponents).
pub fn parse_alexander(s: &str) -> Result<Poly1> {
    let p = single_var(&parse_expr(s)?, 't')?;
    let (lo, hi) = (p.min_degree().unwrap_or(0), p.max_degree().unwrap_or(0));
    let shift = -(lo + hi) / 2;
    let sign = if p.sum_coefficients() < 0 { -1 } else { 1 };
    Ok(p.map_terms(|e, c| (e + shift, c * sign)))
}

pub struct Row {
    pub name: String,
    pub crossings: usize,
    pub homfly: Poly2,
    pub jones: Poly1,
    pub alexander: Poly1,
    pub pd: String,
}

/// Reads prime knots with 3 to `max_crossings` crossings.
pub fn read(path: &Path, max_crossings: usize) -> Result<Vec<Row>> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'|')
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name).ok_or_else(|| anyhow!("missing column {name}"));
    let (c_name, c_cross, c_h, c_j, c_a, c_pd) = (
        col("dt_name")?,
        col("crossing_number")?,
        col("homfly_polynomial")?,
        col("jones_polynomial")?,
        col("alexander_polynomial")?,
        col("pd_notation")?,
    );
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let Ok(crossings) = rec[c_cross].trim().parse::<usize>() else { continue };
        if !(3..=max_crossings).contains(&crossings) {
            continue;
        }
        let name = rec[c_name].replace('_', "");
        let ctx = || format!("knot {name}");
        rows.push(Row {
            homfly: parse_homfly(&rec[c_h]).with_context(ctx)?,
            jones: parse_jones(&rec[c_j]).with_context(ctx)?,
            alexander: parse_alexander(&rec[c_a]).with_context(ctx)?,
            pd: rec[c_pd].trim().to_string(),
            name,
            crossings,
        });
    }
    Ok(rows)
}

pub fn render_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "crossings", "homfly", "jones", "alexander"])?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            r.crossings.to_string(),
            format_poly2(&r.homfly),
            format_half(&r.jones, "t"),
            format_half(&r.alexander, "t"),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn render_pd(rows: &[Row], max_crossings: usize) -> String {
    rows.iter().filter(|r| r.crossings <= max_crossings).map(|r| format!("{}\t{}\n", r.name, r.pd)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_knotinfo_expressions() {
        let h = parse_homfly("(2*v^2-v^4)+ v^2*z^2").unwrap();
        assert_eq!(h, Poly2::from_terms([([2, 0], 2), ([4, 0], -1), ([2, 2], 1)]));
        let h = parse_homfly("(v^(-2)-1+ v^2)-z^2").unwrap();
        assert_eq!(h, Poly2::from_terms([([-2, 0], 1), ([0, 0], -1), ([2, 0], 1), ([0, 2], -1)]));
        let j = parse_jones("t^(-2)-t^(-1)+ 1-t+ t^2").unwrap();
        assert_eq!(j, Poly1::from_terms([(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)]));
        let j = parse_jones("-t^(1/2)-t^(5/2)").unwrap();
        assert_eq!(j, Poly1::from_terms([(1, -1), (5, -1)]));
        let a = parse_alexander("1-3*t+ t^2").unwrap();
        assert_eq!(a, Poly1::from_terms([(-2, -1), (0, 3), (2, -1)]));
        let a = parse_alexander("1").unwrap();
        assert_eq!(a, Poly1::one());
    }
}
