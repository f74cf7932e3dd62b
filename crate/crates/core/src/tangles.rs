//! Local tangle patterns in triple-point shadows.
//!
//! Patterns are described by face constraints read from a small text file
//! (`data/tangles.txt`, compiled in as the default set). A pattern names a
//! few faces with exact or minimum boundary lengths plus adjacency
//! requirements between them; an embedding is an assignment of distinct
//! faces of the shadow meeting every requirement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::PlanarMap;

const DEFAULT_TEMPLATES: &str = include_str!("../../../data/tangles.txt");

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TangleKind {
    T1,
    T2,
    T3,
    T4,
}

impl TangleKind {
    pub const ALL: [TangleKind; 4] = [TangleKind::T1, TangleKind::T2, TangleKind::T3, TangleKind::T4];

    pub fn name(self) -> &'static str {
        match self {
            TangleKind::T1 => "T1",
            TangleKind::T2 => "T2",
            TangleKind::T3 => "T3",
            TangleKind::T4 => "T4",
        }
    }

    fn from_name(s: &str) -> Option<TangleKind> {
        TangleKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for TangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("template line {line}: {msg}")]
pub struct TemplateError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct FaceSpec {
    name: String,
    len: usize,
    at_least: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Adjacency {
    a: usize,
    edge: Option<usize>,
    b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub kind: TangleKind,
    pub vertices: usize,
    faces: Vec<FaceSpec>,
    adjacent: Vec<Adjacency>,
}

impl Template {
    fn parse(line_no: usize, line: &str) -> Result<Template, TemplateError> {
        let err = |msg: String| TemplateError { line: line_no, msg };
        let mut words = line.split_whitespace();
        let name = words.next().ok_or_else(|| err("empty line".into()))?;
        let kind = TangleKind::from_name(name).ok_or_else(|| err(format!("unknown tangle {name:?}")))?;
        let mut vertices = None;
        let mut faces: Vec<FaceSpec> = Vec::new();
        let mut pairs: Vec<(String, Option<usize>, String)> = Vec::new();
        let mut section = "";
        for w in words {
            match w {
                "faces:" | "adjacent:" => {
                    section = w;
                    continue;
                }
                _ => {}
            }
            if let Some(v) = w.strip_prefix("vertices=") {
                vertices = Some(v.parse().map_err(|_| err(format!("bad vertex count {v:?}")))?);
                continue;
            }
            match section {
                "faces:" => {
                    let (name, len, at_least) = if let Some((n, l)) = w.split_once(">=") {
                        (n, l, true)
                    } else if let Some((n, l)) = w.split_once('=') {
                        (n, l, false)
                    } else {
                        return Err(err(format!("bad face spec {w:?}")));
                    };
                    let len = len.parse().map_err(|_| err(format!("bad face length in {w:?}")))?;
                    if len == 0 {
                        return Err(err("faces have at least one edge".into()));
                    }
                    faces.push(FaceSpec { name: name.to_string(), len, at_least });
                }
                "adjacent:" => {
                    let (a, b) = w.split_once('~').ok_or_else(|| err(format!("bad adjacency {w:?}")))?;
                    let (a, edge) = match a.split_once('.') {
                        Some((a, i)) => (a, Some(i.parse().map_err(|_| err(format!("bad edge index in {w:?}")))?)),
                        None => (a, None),
                    };
                    pairs.push((a.to_string(), edge, b.to_string()));
                }
                _ => return Err(err(format!("unexpected {w:?}"))),
            }
        }
        let index = |n: &str| {
            faces.iter().position(|f| f.name == n).ok_or_else(|| err(format!("unknown face {n:?}")))
        };
        let adjacent = pairs
            .iter()
            .map(|(a, edge, b)| Ok(Adjacency { a: index(a)?, edge: *edge, b: index(b)? }))
            .collect::<Result<Vec<_>, TemplateError>>()?;
        if faces.is_empty() {
            return Err(err("no faces".into()));
        }
        let vertices = vertices.ok_or_else(|| err("missing vertices=".into()))?;
        Ok(Template { kind, vertices, faces, adjacent })
    }
}

/// A set of tangle templates, one per kind at most.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateSet {
    pub templates: Vec<Template>,
}

impl TemplateSet {
    pub fn parse(text: &str) -> Result<TemplateSet, TemplateError> {
        let mut templates: Vec<Template> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let t = Template::parse(i + 1, line)?;
            if templates.iter().any(|u| u.kind == t.kind) {
                return Err(TemplateError { line: i + 1, msg: format!("duplicate template {}", t.kind) });
            }
            templates.push(t);
        }
        Ok(TemplateSet { templates })
    }

    /// The templates shipped with the crate.
    pub fn builtin() -> &'static TemplateSet {
        static SET: OnceLock<TemplateSet> = OnceLock::new();
        SET.get_or_init(|| TemplateSet::parse(DEFAULT_TEMPLATES).expect("built-in templates parse"))
    }

    pub fn get(&self, kind: TangleKind) -> Option<&Template> {
        self.templates.iter().find(|t| t.kind == kind)
    }
}

/// One occurrence of a template in a shadow. `rotations` carries the slot
/// offsets the rewriting rules need: for a loop, the slot `j` such that
/// the loop joins slots `j` and `j + 1`; for a triple bond between `u`
/// and `w`, offsets `i` and `j` such that slots `i, i+1, i+2` of `u` meet
/// slots `j, j-1, j-2` of `w`. Other kinds leave it empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangleEmbedding {
    pub kind: TangleKind,
    pub vertices: Vec<usize>,
    pub faces: Vec<usize>,
    pub rotations: Vec<usize>,
}

fn other_face(m: &PlanarMap, dart: usize) -> usize {
    m.face_of(m.alpha(dart))
}

fn shares_edge(m: &PlanarMap, a: usize, b: usize) -> bool {
    m.faces()[a].iter().any(|&x| other_face(m, x) == b)
}

struct Matcher<'a> {
    m: &'a PlanarMap,
    t: &'a Template,
    faces: Vec<usize>,
    starts: Vec<usize>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Matcher<'_> {
    fn fits(&self, spec: &FaceSpec, f: usize) -> bool {
        let len = self.m.face_len(f);
        if spec.at_least {
            len >= spec.len
        } else {
            len == spec.len
        }
    }

    fn constraint_holds(&self, c: &Adjacency) -> bool {
        let (fa, fb) = (self.faces[c.a], self.faces[c.b]);
        match c.edge {
            None => shares_edge(self.m, fa, fb),
            Some(i) => {
                let boundary = &self.m.faces()[fa];
                let x = boundary[(self.starts[c.a] + i) % boundary.len()];
                other_face(self.m, x) == fb
            }
        }
    }

    fn check_ready(&self, k: usize) -> bool {
        // constraints whose faces are all assigned once face k is placed
        self.t.adjacent.iter().filter(|c| c.a.max(c.b) == k).all(|c| self.constraint_holds(c))
    }

    fn search(&mut self, k: usize) {
        if k == self.t.faces.len() {
            self.found.push((self.faces.clone(), self.starts.clone()));
            return;
        }
        let indexed = self.t.adjacent.iter().any(|c| c.a == k && c.edge.is_some());
        for f in 0..self.m.face_count() {
            if self.faces.contains(&f) || !self.fits(&self.t.faces[k], f) {
                continue;
            }
            let starts = if indexed { self.m.face_len(f) } else { 1 };
            for s in 0..starts {
                self.faces.push(f);
                self.starts.push(s);
                if self.check_ready(k) {
                    self.search(k + 1);
                }
                self.faces.pop();
                self.starts.pop();
            }
        }
    }
}

fn face_vertices(m: &PlanarMap, f: usize) -> impl Iterator<Item = usize> + '_ {
    m.faces()[f].iter().map(move |&x| m.vertex_of(x))
}

fn loop_rotation(m: &PlanarMap, f: usize) -> usize {
    let x = m.faces()[f][0];
    (m.slot_of(x) + 5) % 6
}

/// Offsets `(u, w, i, j)` of the three parallel edges bounding two adjacent
/// bigons.
fn bond_rotation(m: &PlanarMap, a: usize, b: usize) -> Option<(usize, usize, usize, usize)> {
    let mut darts: Vec<usize> = m.faces()[a].iter().chain(&m.faces()[b]).flat_map(|&x| [x, m.alpha(x)]).collect();
    darts.sort_unstable();
    darts.dedup();
    let u = darts.iter().map(|&x| m.vertex_of(x)).min()?;
    let slots: BTreeSet<usize> = darts.iter().filter(|&&x| m.vertex_of(x) == u).map(|&x| m.slot_of(x)).collect();
    if slots.len() != 3 {
        return None;
    }
    let i = (0..6).find(|&i| (0..3).all(|k| slots.contains(&((i + k) % 6))))?;
    let x = m.dart(u, i);
    let y = m.alpha(x);
    let w = m.vertex_of(y);
    if w == u {
        return None;
    }
    let j = m.slot_of(y);
    let ok = (0..3).all(|k| m.alpha(m.dart(u, i + k)) == m.dart(w, j + 6 - k));
    ok.then_some((u, w, i, j))
}

/// All embeddings of one template, deduplicated by occupied vertex set.
pub fn detect_with(m: &PlanarMap, t: &Template) -> Vec<TangleEmbedding> {
    let mut matcher = Matcher { m, t, faces: Vec::new(), starts: Vec::new(), found: Vec::new() };
    matcher.search(0);
    let mut seen: BTreeMap<Vec<usize>, TangleEmbedding> = BTreeMap::new();
    for (faces, _) in matcher.found {
        let mut vertices: Vec<usize> = faces
            .iter()
            .zip(&t.faces)
            .filter(|(_, spec)| !spec.at_least)
            .flat_map(|(&f, _)| face_vertices(m, f))
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != t.vertices {
            continue;
        }
        let rotations = match t.kind {
            TangleKind::T1 => vec![loop_rotation(m, faces[0])],
            TangleKind::T2 => match bond_rotation(m, faces[0], faces[1]) {
                Some((u, w, i, j)) => {
                    vertices = vec![u, w];
                    vec![i, j]
                }
                None => continue,
            },
            _ => Vec::new(),
        };
        let mut key = vertices.clone();
        key.sort_unstable();
        seen.entry(key).or_insert(TangleEmbedding { kind: t.kind, vertices, faces, rotations });
    }
    seen.into_values().collect()
}

/// All embeddings of one pattern kind using the built-in templates.
pub fn detect_pattern(m: &PlanarMap, kind: TangleKind) -> Vec<TangleEmbedding> {
    TemplateSet::builtin().get(kind).map(|t| detect_with(m, t)).unwrap_or_default()
}

/// Every embedding of every kind.
pub fn detect_all(m: &PlanarMap, set: &TemplateSet) -> Vec<TangleEmbedding> {
    set.templates.iter().flat_map(|t| detect_with(m, t)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TangleCount {
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub t4: usize,
    pub selected: Vec<TangleEmbedding>,
}

impl TangleCount {
    /// Lexicographic selection objective: loops plus bonds first, then
    /// loops, then bonds, then the remaining kinds.
    pub fn objective(&self) -> (usize, usize, usize, usize) {
        (self.t1 + self.t2, self.t1, self.t2, self.t3 + self.t4)
    }

    fn add(&mut self, kind: TangleKind, delta: isize) {
        let slot = match kind {
            TangleKind::T1 => &mut self.t1,
            TangleKind::T2 => &mut self.t2,
            TangleKind::T3 => &mut self.t3,
            TangleKind::T4 => &mut self.t4,
        };
        *slot = slot.checked_add_signed(delta).expect("count stays non-negative");
    }
}

struct Selector<'a> {
    cands: &'a [TangleEmbedding],
    used: Vec<bool>,
    current: TangleCount,
    chosen: Vec<usize>,
    best: TangleCount,
    best_chosen: Vec<usize>,
}

impl Selector<'_> {
    fn bound(&self, from: usize) -> (usize, usize, usize, usize) {
        // every remaining candidate taken, ignoring conflicts
        let mut c = self.current.clone();
        for e in &self.cands[from..] {
            c.add(e.kind, 1);
        }
        c.objective()
    }

    fn search(&mut self, k: usize) {
        if self.current.objective() > self.best.objective() {
            self.best = TangleCount { selected: Vec::new(), ..self.current.clone() };
            self.best_chosen = self.chosen.clone();
        }
        if k == self.cands.len() || self.bound(k) <= self.best.objective() {
            return;
        }
        let e = &self.cands[k];
        if e.vertices.iter().all(|&v| !self.used[v]) {
            for &v in &e.vertices {
                self.used[v] = true;
            }
            self.current.add(e.kind, 1);
            self.chosen.push(k);
            self.search(k + 1);
            self.chosen.pop();
            self.current.add(e.kind, -1);
            for &v in &e.vertices {
                self.used[v] = false;
            }
        }
        self.search(k + 1);
    }
}

/// Exact maximum of the selection objective over vertex-disjoint sets of
/// candidate embeddings.
pub fn select_disjoint(n: usize, cands: &[TangleEmbedding]) -> TangleCount {
    let mut sorted = cands.to_vec();
    sorted.sort_by_key(|e| (e.kind, e.vertices.len()));
    let mut s = Selector {
        cands: &sorted,
        used: vec![false; n],
        current: TangleCount::default(),
        chosen: Vec::new(),
        best: TangleCount::default(),
        best_chosen: Vec::new(),
    };
    s.search(0);
    let mut best = s.best;
    best.selected = s.best_chosen.iter().map(|&i| sorted[i].clone()).collect();
    best
}

/// Maximal vertex-disjoint tangle counts with the built-in templates.
pub fn max_disjoint_counts(m: &PlanarMap) -> TangleCount {
    select_disjoint(m.vertex_count(), &detect_all(m, TemplateSet::builtin()))
}

/// Per-face bigon ceiling data: a face of length `m >= 4` with more than
/// `floor(2m / 3)` bigon-bordered edges must contain three consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCeiling {
    pub face: usize,
    pub len: usize,
    pub bigon_edges: usize,
    pub ceiling: usize,
    pub flagged: bool,
}

/// Euler-characteristic bookkeeping of a connected triple-point shadow:
/// `2 f1 + f2 - 6 - sum_{k >= 4} (k - 3) f_k` equals `3 (chi - 2)`, hence
/// zero on the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceIdentityReport {
    pub face_vector: BTreeMap<usize, usize>,
    pub residual: i64,
    pub euler_characteristic: i64,
    pub faces: Vec<FaceCeiling>,
}

pub fn face_identity_report(m: &PlanarMap) -> FaceIdentityReport {
    let fv = m.face_vector();
    let f = |k: usize| *fv.get(&k).unwrap_or(&0) as i64;
    let excess: i64 = fv.iter().filter(|(&k, _)| k >= 4).map(|(&k, &c)| (k as i64 - 3) * c as i64).sum();
    let residual = 2 * f(1) + f(2) - 6 - excess;
    let faces = (0..m.face_count())
        .filter(|&x| m.face_len(x) >= 4)
        .map(|x| {
            let len = m.face_len(x);
            let bigon_edges = m.faces()[x].iter().filter(|&&d| m.face_len(other_face(m, d)) == 2).count();
            let ceiling = 2 * len / 3;
            FaceCeiling { face: x, len, bigon_edges, ceiling, flagged: bigon_edges > ceiling }
        })
        .collect();
    FaceIdentityReport { face_vector: fv, residual, euler_characteristic: m.euler_characteristic(), faces }
}

/// A shadow in which no template occurs.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no tangle pattern found; face vector {face_vector:?}")]
pub struct Counterexample {
    pub face_vector: BTreeMap<usize, usize>,
}

/// Checks that a non-empty shadow contains at least one pattern.
pub fn verify_existence(m: &PlanarMap) -> Result<Vec<TangleEmbedding>, Counterexample> {
    let all = detect_all(m, TemplateSet::builtin());
    if all.is_empty() && m.vertex_count() > 0 {
        Err(Counterexample { face_vector: m.face_vector() })
    } else {
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::ShadowProjection;

    fn map(code: &str) -> PlanarMap {
        crate::diagram::codec::parse_spd(code).unwrap().planar_map()
    }

    #[test]
    fn builtin_templates_parse() {
        let set = TemplateSet::builtin();
        assert_eq!(set.templates.len(), 4);
        assert_eq!(set.get(TangleKind::T4).unwrap().vertices, 4);
    }

    #[test]
    fn malformed_templates_are_rejected() {
        assert!(TemplateSet::parse("T9 vertices=1 faces: a=1").is_err());
        assert!(TemplateSet::parse("T1 faces: a=1").is_err());
        assert!(TemplateSet::parse("T1 vertices=1 faces: a=1 adjacent: a~b").is_err());
        assert!(TemplateSet::parse("T1 vertices=1 faces: a=1\nT1 vertices=1 faces: a=1").is_err());
    }

    #[test]
    fn single_point_with_three_loops() {
        let m = map("[[1,1,2,2,3,3]]");
        let loops = detect_pattern(&m, TangleKind::T1);
        assert_eq!(loops.len(), 1);
        let c = max_disjoint_counts(&m);
        assert_eq!((c.t1, c.t2), (1, 0));
        let j = c.selected[0].rotations[0];
        let p = ShadowProjection::new(vec![[1, 1, 2, 2, 3, 3]]).unwrap();
        let t = p.points()[0];
        assert_eq!(t[j], t[(j + 1) % 6]);
    }

    #[test]
    fn triple_bond_offsets() {
        let m = map("[[1,2,3,4,5,6],[1,6,5,4,3,2]]");
        let found = detect_pattern(&m, TangleKind::T2);
        assert!(!found.is_empty());
        for e in &found {
            let (u, w) = (e.vertices[0], e.vertices[1]);
            let (i, j) = (e.rotations[0], e.rotations[1]);
            for k in 0..3 {
                assert_eq!(m.label(m.dart(u, i + k)), m.label(m.dart(w, j + 6 - k)));
            }
        }
    }

    #[test]
    fn face_identity_vanishes_on_spheres() {
        for code in ["[[1,1,2,2,3,3]]", "[[1,2,3,1,2,3]]"] {
            let m = map(code);
            let r = face_identity_report(&m);
            assert_eq!(r.residual, 3 * (r.euler_characteristic - 2), "{code}");
        }
    }
}
