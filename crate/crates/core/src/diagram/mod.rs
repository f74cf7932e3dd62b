//! Diagram types: triple-point shadows, triple-crossing diagrams,
//! delta-crossing diagrams and classical PD diagrams.
//!
//! Six-valent vertices list their arc labels counterclockwise; the strand
//! through a vertex joins slot `i` to slot `i + 3`. A classical crossing
//! `[a, b, c, d]` is read counterclockwise starting at the incoming
//! under-strand.

pub mod canon;
pub mod codec;
pub mod orient;
pub mod planar;

use std::collections::HashMap;
use std::fmt;

use crate::error::{DiagramError, Result};

pub use orient::NaturalOrientation;
pub use planar::PlanarMap;

pub type Arc = u32;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Top,
    Middle,
    Bottom,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::Top => 'T',
            Role::Middle => 'M',
            Role::Bottom => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Role> {
        match c {
            'T' => Some(Role::Top),
            'M' => Some(Role::Middle),
            'B' => Some(Role::Bottom),
            _ => None,
        }
    }

    /// Depth rank, larger is higher.
    pub fn height(self) -> u8 {
        match self {
            Role::Top => 2,
            Role::Middle => 1,
            Role::Bottom => 0,
        }
    }

    pub fn flipped(self) -> Role {
        match self {
            Role::Top => Role::Bottom,
            Role::Middle => Role::Middle,
            Role::Bottom => Role::Top,
        }
    }
}

/// Roles of the three lines through a triple point; index `k` is the line
/// through slots `k` and `k + 3`.
pub type Roles = [Role; 3];

pub const ALL_ROLES: [Roles; 6] = {
    use Role::*;
    [
        [Top, Middle, Bottom],
        [Top, Bottom, Middle],
        [Middle, Top, Bottom],
        [Middle, Bottom, Top],
        [Bottom, Top, Middle],
        [Bottom, Middle, Top],
    ]
};

pub fn roles_string(r: &Roles) -> String {
    r.iter().map(|x| x.letter()).collect()
}

pub fn valid_roles(r: &Roles) -> bool {
    r[0] != r[1] && r[1] != r[2] && r[0] != r[2]
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeltaType {
    S,
    T,
    U,
    W,
}

pub const ALL_DELTA_TYPES: [DeltaType; 4] = [DeltaType::S, DeltaType::T, DeltaType::U, DeltaType::W];

impl DeltaType {
    pub fn letter(self) -> char {
        match self {
            DeltaType::S => 'S',
            DeltaType::T => 'T',
            DeltaType::U => 'U',
            DeltaType::W => 'W',
        }
    }

    pub fn from_letter(s: &str) -> Option<DeltaType> {
        match s {
            "S" => Some(DeltaType::S),
            "T" => Some(DeltaType::T),
            "U" => Some(DeltaType::U),
            "W" => Some(DeltaType::W),
            _ => None,
        }
    }

    /// Type letter after switching every crossing.
    pub fn mirror(self) -> DeltaType {
        match self {
            DeltaType::S => DeltaType::U,
            DeltaType::U => DeltaType::S,
            DeltaType::T => DeltaType::W,
            DeltaType::W => DeltaType::T,
        }
    }
}

impl fmt::Display for DeltaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShadowProjection {
    points: Vec<[Arc; 6]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleDiagram {
    base: ShadowProjection,
    roles: Vec<Roles>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaCrossing {
    pub kind: DeltaType,
    pub arcs: [Arc; 6],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaDiagram {
    crossings: Vec<DeltaCrossing>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub arcs: [Arc; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Positions (into `arcs`) of the incoming and outgoing over-strand ends.
    pub fn over_in_out(&self) -> (usize, usize) {
        match self.sign {
            Sign::Positive => (3, 1),
            Sign::Negative => (1, 3),
        }
    }

    /// Same crossing with the strands' heights exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            Sign::Positive => Crossing { arcs: [d, a, b, c], sign: Sign::Negative },
            Sign::Negative => Crossing { arcs: [b, c, d, a], sign: Sign::Positive },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClassicalDiagram {
    crossings: Vec<Crossing>,
}

/// Checks that every label occurs exactly twice and, when `max` is given,
/// that labels are exactly `1..=max`.
fn check_arc_multiset<'a>(labels: impl Iterator<Item = &'a Arc>, max: Option<Arc>) -> Result<()> {
    let mut count: HashMap<Arc, usize> = HashMap::new();
    for &a in labels {
        if a == 0 || max.is_some_and(|m| a > m) {
            return Err(DiagramError::ArcRange { label: a, max: max.unwrap_or(Arc::MAX) });
        }
        *count.entry(a).or_default() += 1;
    }
    let mut bad: Vec<_> = count.iter().filter(|(_, &c)| c != 2).collect();
    bad.sort();
    if let Some((&label, &c)) = bad.first() {
        return Err(DiagramError::ArcCount { label, count: c });
    }
    if let Some(m) = max {
        if let Some(missing) = (1..=m).find(|a| !count.contains_key(a)) {
            return Err(DiagramError::ArcCount { label: missing, count: 0 });
        }
    }
    Ok(())
}

/// Number of connected pieces of the graph whose vertices are the given
/// tuples and whose edges are shared labels.
pub(crate) fn connected_pieces<T: AsRef<[Arc]>>(tuples: &[T]) -> usize {
    let n = tuples.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut first: HashMap<Arc, usize> = HashMap::new();
    for (v, t) in tuples.iter().enumerate() {
        for &a in t.as_ref() {
            if let Some(&u) = first.get(&a) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            } else {
                first.insert(a, v);
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Counts closed strands of a vertex system where the strand entering slot
/// `s` leaves through slot `s + deg/2`.
fn strand_components<T: AsRef<[Arc]>>(tuples: &[T]) -> usize {
    let mut places: HashMap<Arc, Vec<(usize, usize)>> = HashMap::new();
    for (v, t) in tuples.iter().enumerate() {
        for (s, &a) in t.as_ref().iter().enumerate() {
            places.entry(a).or_default().push((v, s));
        }
    }
    let total: usize = tuples.iter().map(|t| t.as_ref().len()).sum();
    let offsets: Vec<usize> = tuples
        .iter()
        .scan(0, |acc, t| {
            let o = *acc;
            *acc += t.as_ref().len();
            Some(o)
        })
        .collect();
    let mut seen = vec![false; total];
    let mut cycles = 0;
    for v in 0..tuples.len() {
        let deg = tuples[v].as_ref().len();
        for s in 0..deg {
            if seen[offsets[v] + s] {
                continue;
            }
            cycles += 1;
            let (mut cv, mut cs) = (v, s);
            while !seen[offsets[cv] + cs] {
                seen[offsets[cv] + cs] = true;
                let a = tuples[cv].as_ref()[cs];
                let p = &places[&a];
                let (nv, ns) = if p[0] == (cv, cs) { p[1] } else { p[0] };
                let d = tuples[nv].as_ref().len();
                cv = nv;
                cs = (ns + d / 2) % d;
            }
        }
    }
    cycles / 2
}

impl ShadowProjection {
    pub fn new(points: Vec<[Arc; 6]>) -> Result<Self> {
        check_arc_multiset(points.iter().flatten(), Some(3 * points.len() as Arc))?;
        if connected_pieces(&points) > 1 {
            return Err(DiagramError::Disconnected);
        }
        Ok(ShadowProjection { points })
    }

    pub fn empty() -> Self {
        ShadowProjection { points: Vec::new() }
    }

    pub fn points(&self) -> &[[Arc; 6]] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn components(&self) -> usize {
        strand_components(&self.points)
    }

    pub fn planar_map(&self) -> PlanarMap {
        PlanarMap::from_tuples(&self.points)
    }

    pub fn is_planar(&self) -> bool {
        self.planar_map().euler_characteristic() == 2
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }
}

impl TripleDiagram {
    pub fn new(base: ShadowProjection, roles: Vec<Roles>) -> Result<Self> {
        if roles.len() != base.n() {
            return Err(DiagramError::Arity { index: 0, found: roles.len(), expected: base.n() });
        }
        if let Some(i) = roles.iter().position(|r| !valid_roles(r)) {
            return Err(DiagramError::Roles(i));
        }
        let d = TripleDiagram { base, roles };
        d.natural_orientation()?;
        Ok(d)
    }

    pub fn empty() -> Self {
        TripleDiagram { base: ShadowProjection::empty(), roles: Vec::new() }
    }

    pub fn base(&self) -> &ShadowProjection {
        &self.base
    }

    pub fn roles(&self) -> &[Roles] {
        &self.roles
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn components(&self) -> usize {
        self.base.components()
    }

    pub fn natural_orientation(&self) -> Result<NaturalOrientation> {
        NaturalOrientation::of_tuples(self.base.points())
    }

    pub fn mirror(&self) -> TripleDiagram {
        TripleDiagram {
            base: self.base.clone(),
            roles: self.roles.iter().map(|r| r.map(Role::flipped)).collect(),
        }
    }
}

impl DeltaDiagram {
    pub fn new(crossings: Vec<DeltaCrossing>) -> Result<Self> {
        check_arc_multiset(crossings.iter().flat_map(|c| c.arcs.iter()), Some(3 * crossings.len() as Arc))?;
        let tuples: Vec<[Arc; 6]> = crossings.iter().map(|c| c.arcs).collect();
        if connected_pieces(&tuples) > 1 {
            return Err(DiagramError::Disconnected);
        }
        Ok(DeltaDiagram { crossings })
    }

    pub fn empty() -> Self {
        DeltaDiagram { crossings: Vec::new() }
    }

    pub fn crossings(&self) -> &[DeltaCrossing] {
        &self.crossings
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn tuples(&self) -> Vec<[Arc; 6]> {
        self.crossings.iter().map(|c| c.arcs).collect()
    }

    pub fn components(&self) -> usize {
        strand_components(&self.tuples())
    }

    pub fn planar_map(&self) -> PlanarMap {
        PlanarMap::from_tuples(&self.tuples())
    }

    pub fn shadow(&self) -> ShadowProjection {
        ShadowProjection { points: self.tuples() }
    }

    pub fn natural_orientation(&self) -> Result<NaturalOrientation> {
        NaturalOrientation::of_tuples(&self.tuples())
    }

    /// True when slot 0 of every tuple carries an incoming arc, the form in
    /// which type letters are meaningful.
    pub fn is_normalized(&self) -> bool {
        match self.natural_orientation() {
            Ok(o) => (0..self.n()).all(|v| o.even_slots_incoming(v)),
            Err(_) => false,
        }
    }

    pub fn mirror(&self) -> DeltaDiagram {
        DeltaDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|c| DeltaCrossing { kind: c.kind.mirror(), arcs: c.arcs })
                .collect(),
        }
    }

    /// Replaces the type letters, keeping the shadow.
    pub fn with_kinds(&self, kinds: &[DeltaType]) -> DeltaDiagram {
        assert_eq!(kinds.len(), self.n());
        DeltaDiagram {
            crossings: self
                .crossings
                .iter()
                .zip(kinds)
                .map(|(c, &kind)| DeltaCrossing { kind, arcs: c.arcs })
                .collect(),
        }
    }
}

impl ClassicalDiagram {
    /// Builds a diagram, checking arc multiplicities and that every sign
    /// agrees with the strand orientation fixed by the under-passes.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        check_arc_multiset(crossings.iter().flat_map(|c| c.arcs.iter()), None)?;
        let d = ClassicalDiagram { crossings };
        d.check_orientation()?;
        Ok(d)
    }

    /// Builds a diagram from unsigned tuples, inferring each sign from the
    /// orientation of the over-strand. Components that never pass under
    /// are oriented by increasing arc label.
    pub fn from_unsigned(tuples: Vec<[Arc; 4]>) -> Result<Self> {
        check_arc_multiset(tuples.iter().flatten(), None)?;
        let signs = orient::infer_signs(&tuples)?;
        let crossings = tuples
            .into_iter()
            .zip(signs)
            .map(|(arcs, sign)| Crossing { arcs, sign })
            .collect();
        Ok(ClassicalDiagram { crossings })
    }

    pub(crate) fn from_parts_unchecked(crossings: Vec<Crossing>) -> Self {
        ClassicalDiagram { crossings }
    }

    pub fn empty() -> Self {
        ClassicalDiagram::default()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Closed strands; the empty diagram counts as one unknotted component.
    pub fn components(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        let t: Vec<[Arc; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        strand_components(&t)
    }

    pub fn planar_map(&self) -> PlanarMap {
        let t: Vec<[Arc; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        PlanarMap::from_tuples(&t)
    }

    pub fn mirror(&self) -> ClassicalDiagram {
        ClassicalDiagram { crossings: self.crossings.iter().map(Crossing::switched).collect() }
    }

    /// Directed successor map on arcs: `next[a]` is the arc following `a`.
    pub fn arc_successors(&self) -> HashMap<Arc, Arc> {
        let mut next = HashMap::new();
        for c in &self.crossings {
            next.insert(c.arcs[0], c.arcs[2]);
            let (i, o) = c.over_in_out();
            next.insert(c.arcs[i], c.arcs[o]);
        }
        next
    }

    fn check_orientation(&self) -> Result<()> {
        // Each arc must be the head of exactly one crossing end and the tail
        // of exactly one; a sign contradiction shows up as a duplicate.
        let mut ends: [HashMap<Arc, usize>; 2] = Default::default();
        for (i, c) in self.crossings.iter().enumerate() {
            let (oi, oo) = c.over_in_out();
            for (side, a) in [(0, c.arcs[0]), (0, c.arcs[oi]), (1, c.arcs[2]), (1, c.arcs[oo])] {
                if ends[side].insert(a, i).is_some() {
                    return Err(DiagramError::SignMismatch(i));
                }
            }
        }
        Ok(())
    }
}
