//! Text codecs for sPD (shadows), tPD (triple diagrams), dPD (delta
//! diagrams) and PD (classical diagrams).
//!
//! ```text
//! sPD  [[1, 4, 2, 5, 3, 6], [4, 1, 5, 2, 6, 3]]
//! tPD  [TMB, [1, 1, 2, 2, 3, 3]]
//! dPD  [S, [5, 2, 4, 6, 1, 5], W, [2, 1, 3, 3, 6, 4]]
//! PD   [X+[1, 5, 2, 4], X+[3, 1, 4, 6], X+[5, 3, 6, 2]]
//! ```
//!
//! Whitespace is free and `#` starts a comment running to the end of the
//! line. `[]` denotes the empty diagram. PD tuples may omit the sign (and
//! the `X`), in which case it is inferred from the strand orientation.

use itertools::Itertools;

use super::{
    valid_roles, Arc, ClassicalDiagram, Crossing, DeltaCrossing, DeltaDiagram, DeltaType, Role, Roles,
    ShadowProjection, Sign, TripleDiagram,
};
use crate::error::{DiagramError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Int(u64),
    Word(String),
    Plus,
    Minus,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'#' => {
                    while i < bytes.len() && bytes[i] != b'\n' {
                        i += 1;
                    }
                    continue;
                }
                b'[' => toks.push((i, Tok::Open)),
                b']' => toks.push((i, Tok::Close)),
                b',' => toks.push((i, Tok::Comma)),
                b'+' => toks.push((i, Tok::Plus)),
                b'-' => toks.push((i, Tok::Minus)),
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v = text[start..i]
                        .parse::<u64>()
                        .map_err(|_| DiagramError::Syntax { pos: start, msg: "integer too large".into() })?;
                    toks.push((start, Tok::Int(v)));
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                        i += 1;
                    }
                    toks.push((start, Tok::Word(text[start..i].to_string())));
                    continue;
                }
                c if c.is_ascii_whitespace() => {}
                _ => {
                    return Err(DiagramError::Syntax { pos: i, msg: format!("unexpected character {:?}", c as char) });
                }
            }
            i += 1;
        }
        Ok(Lexer { toks, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(DiagramError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }

    /// `[int, int, ...]`
    fn int_tuple(&mut self) -> Result<Vec<Arc>> {
        self.expect(Tok::Open, "'['")?;
        let mut out = Vec::new();
        loop {
            match self.next() {
                Some(Tok::Int(v)) if v <= Arc::MAX as u64 => out.push(v as Arc),
                _ => {
                    self.pos -= 1;
                    return self.err("expected an arc label");
                }
            }
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::Close) => return Ok(out),
                _ => {
                    self.pos -= 1;
                    return self.err("expected ',' or ']'");
                }
            }
        }
    }

    /// Outer `[ item (, item)* ]`, allowing `[]`.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Lexer, usize) -> Result<T>) -> Result<Vec<T>> {
        self.expect(Tok::Open, "'['")?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self, out.len())?);
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::Close) => return Ok(out),
                _ => {
                    self.pos -= 1;
                    return self.err("expected ',' or ']'");
                }
            }
        }
    }
}

fn six(v: Vec<Arc>, index: usize) -> Result<[Arc; 6]> {
    let found = v.len();
    v.try_into().map_err(|_| DiagramError::Arity { index, found, expected: 6 })
}

fn four(v: Vec<Arc>, index: usize) -> Result<[Arc; 4]> {
    let found = v.len();
    v.try_into().map_err(|_| DiagramError::Arity { index, found, expected: 4 })
}

pub fn parse_spd(text: &str) -> Result<ShadowProjection> {
    let mut lx = Lexer::new(text)?;
    let tuples = lx.list(|lx, i| {
        let t = lx.int_tuple()?;
        six(t, i)
    })?;
    lx.finish()?;
    if tuples.is_empty() {
        return Ok(ShadowProjection::empty());
    }
    ShadowProjection::new(tuples)
}

pub fn parse_dpd(text: &str) -> Result<DeltaDiagram> {
    let mut lx = Lexer::new(text)?;
    let mut crossings = Vec::new();
    lx.expect(Tok::Open, "'['")?;
    if lx.peek() == Some(&Tok::Close) {
        lx.pos += 1;
        lx.finish()?;
        return Ok(DeltaDiagram::empty());
    }
    loop {
        let kind = match lx.next() {
            Some(Tok::Word(w)) => DeltaType::from_letter(&w).ok_or(DiagramError::UnknownLetter(w))?,
            _ => {
                lx.pos -= 1;
                return lx.err("expected a type letter");
            }
        };
        lx.expect(Tok::Comma, "','")?;
        let arcs = six(lx.int_tuple()?, crossings.len())?;
        crossings.push(DeltaCrossing { kind, arcs });
        match lx.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::Close) => break,
            _ => {
                lx.pos -= 1;
                return lx.err("expected ',' or ']'");
            }
        }
    }
    lx.finish()?;
    DeltaDiagram::new(crossings)
}

fn parse_roles(w: &str, index: usize) -> Result<Roles> {
    let letters: Vec<Role> = w.chars().filter_map(Role::from_letter).collect();
    if letters.len() != 3 || w.len() != 3 {
        return Err(DiagramError::UnknownLetter(w.to_string()));
    }
    let r = [letters[0], letters[1], letters[2]];
    if !valid_roles(&r) {
        return Err(DiagramError::Roles(index));
    }
    Ok(r)
}

pub fn parse_tpd(text: &str) -> Result<TripleDiagram> {
    let mut lx = Lexer::new(text)?;
    let mut points = Vec::new();
    let mut roles = Vec::new();
    lx.expect(Tok::Open, "'['")?;
    if lx.peek() == Some(&Tok::Close) {
        lx.pos += 1;
        lx.finish()?;
        return Ok(TripleDiagram::empty());
    }
    loop {
        let r = match lx.next() {
            Some(Tok::Word(w)) => parse_roles(&w, roles.len())?,
            _ => {
                lx.pos -= 1;
                return lx.err("expected a role word such as TMB");
            }
        };
        lx.expect(Tok::Comma, "','")?;
        points.push(six(lx.int_tuple()?, roles.len())?);
        roles.push(r);
        match lx.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::Close) => break,
            _ => {
                lx.pos -= 1;
                return lx.err("expected ',' or ']'");
            }
        }
    }
    lx.finish()?;
    TripleDiagram::new(ShadowProjection::new(points)?, roles)
}

pub fn parse_pd(text: &str) -> Result<ClassicalDiagram> {
    let mut lx = Lexer::new(text)?;
    let items = lx.list(|lx, i| {
        let mut sign = None;
        if let Some(Tok::Word(w)) = lx.peek() {
            if w != "X" {
                return lx.err("expected 'X'");
            }
            lx.pos += 1;
            match lx.peek() {
                Some(Tok::Plus) => sign = Some(Sign::Positive),
                Some(Tok::Minus) => sign = Some(Sign::Negative),
                _ => {}
            }
            if sign.is_some() {
                lx.pos += 1;
            }
        }
        Ok((four(lx.int_tuple()?, i)?, sign))
    })?;
    lx.finish()?;
    if items.iter().all(|(_, s)| s.is_some()) {
        return ClassicalDiagram::new(items.into_iter().map(|(arcs, s)| Crossing { arcs, sign: s.unwrap() }).collect());
    }
    let d = ClassicalDiagram::from_unsigned(items.iter().map(|(a, _)| *a).collect())?;
    for (i, ((_, given), c)) in items.iter().zip(d.crossings()).enumerate() {
        if given.is_some_and(|s| s != c.sign) {
            return Err(DiagramError::SignMismatch(i));
        }
    }
    Ok(d)
}

fn tuple_text(t: &[Arc]) -> String {
    format!("[{}]", t.iter().join(", "))
}

pub fn emit_spd(p: &ShadowProjection) -> String {
    format!("[{}]", p.points().iter().map(|t| tuple_text(t)).join(", "))
}

pub fn emit_dpd(d: &DeltaDiagram) -> String {
    format!("[{}]", d.crossings().iter().map(|c| format!("{}, {}", c.kind, tuple_text(&c.arcs))).join(", "))
}

pub fn emit_tpd(d: &TripleDiagram) -> String {
    format!(
        "[{}]",
        d.base()
            .points()
            .iter()
            .zip(d.roles())
            .map(|(t, r)| format!("{}, {}", super::roles_string(r), tuple_text(t)))
            .join(", ")
    )
}

pub fn emit_pd(d: &ClassicalDiagram) -> String {
    format!(
        "[{}]",
        d.crossings()
            .iter()
            .map(|c| format!("X{}{}", if c.sign == Sign::Positive { '+' } else { '-' }, tuple_text(&c.arcs)))
            .join(", ")
    )
}

/// Parses a file holding one code per line (blank and comment lines
/// skipped). Errors carry the 1-based line number.
pub fn parse_lines<T>(text: &str, parse: impl Fn(&str) -> Result<T>) -> std::result::Result<Vec<T>, (usize, DiagramError)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(parse(body).map_err(|e| (i + 1, e))?);
    }
    Ok(out)
}
