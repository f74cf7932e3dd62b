//! Local pictures of a delta-crossing and a triple-crossing as three
//! classical crossings.
//!
//! The three lines through a six-valent vertex are numbered by their first
//! slot: line `k` joins slot `k` to slot `k + 3`. Pulling the lines apart
//! produces a small triangle; the arrangement records in which order each
//! line meets the other two when walked from slot `k`.

use crate::diagram::{Arc, Crossing, DeltaType, Role, Roles, Sign};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arrangement {
    A,
    B,
}

/// `Positive` means line 0 over line 1, line 1 over line 2 and line 2 over
/// line 0; `Negative` is the reverse cycle.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    Positive,
    Negative,
}

impl Arrangement {
    /// The other two lines in the order line `k` meets them.
    pub fn order(self, k: usize) -> [usize; 2] {
        match (self, k) {
            (Arrangement::A, 0) => [1, 2],
            (Arrangement::A, 1) => [0, 2],
            (Arrangement::A, _) => [0, 1],
            (Arrangement::B, 0) => [2, 1],
            (Arrangement::B, 1) => [2, 0],
            (Arrangement::B, _) => [1, 0],
        }
    }
}

impl DeltaType {
    /// Geometry of the delta-crossing when slot 0 carries an incoming arc.
    pub fn shape(self) -> (Arrangement, Chirality) {
        match self {
            DeltaType::S => (Arrangement::B, Chirality::Positive),
            DeltaType::T => (Arrangement::A, Chirality::Positive),
            DeltaType::U => (Arrangement::B, Chirality::Negative),
            DeltaType::W => (Arrangement::A, Chirality::Negative),
        }
    }

    pub fn from_shape(arr: Arrangement, ch: Chirality) -> DeltaType {
        match (arr, ch) {
            (Arrangement::B, Chirality::Positive) => DeltaType::S,
            (Arrangement::A, Chirality::Positive) => DeltaType::T,
            (Arrangement::B, Chirality::Negative) => DeltaType::U,
            (Arrangement::A, Chirality::Negative) => DeltaType::W,
        }
    }
}

fn cyclic_over(ch: Chirality, i: usize, j: usize) -> bool {
    let forward = (i + 1) % 3 == j;
    forward == (ch == Chirality::Positive)
}

/// Expands a vertex with boundary arcs `ext` into three crossings.
/// `internal[k]` labels the short piece of line `k` between its two
/// crossings; `over(i, j)` says whether line `i` passes over line `j`;
/// `in_even` says whether the even slots carry incoming arcs.
pub fn expand_vertex(
    ext: [Arc; 6],
    arr: Arrangement,
    over: impl Fn(usize, usize) -> bool,
    in_even: bool,
    internal: [Arc; 3],
) -> [Crossing; 3] {
    let in_slot = |l: usize| if l.is_multiple_of(2) == in_even { l } else { l + 3 };
    [(0, 1), (0, 2), (1, 2)].map(|(i, j)| {
        // (slot direction, label, line)
        let mut ends: Vec<(usize, Arc, usize)> = Vec::with_capacity(4);
        for (l, other) in [(i, j), (j, i)] {
            let first = arr.order(l)[0] == other;
            ends.push((l, if first { ext[l] } else { internal[l] }, l));
            ends.push((l + 3, if first { internal[l] } else { ext[l + 3] }, l));
        }
        ends.sort_unstable();
        let (under, top) = if over(i, j) { (j, i) } else { (i, j) };
        let start = ends.iter().position(|&(s, _, l)| l == under && s == in_slot(under)).unwrap();
        ends.rotate_left(start);
        let over_in = ends.iter().position(|&(s, _, l)| l == top && s == in_slot(top)).unwrap();
        Crossing {
            arcs: [ends[0].1, ends[1].1, ends[2].1, ends[3].1],
            sign: if over_in == 3 { Sign::Positive } else { Sign::Negative },
        }
    })
}

/// Classical picture of a delta-crossing whose slot 0 is incoming.
pub fn expand_delta(kind: DeltaType, ext: [Arc; 6], internal: [Arc; 3]) -> [Crossing; 3] {
    let (arr, ch) = kind.shape();
    expand_vertex(ext, arr, |i, j| cyclic_over(ch, i, j), true, internal)
}

/// Classical picture of a triple-crossing: the strands are stacked by role.
pub fn expand_triple(roles: Roles, ext: [Arc; 6], in_even: bool, internal: [Arc; 3]) -> [Crossing; 3] {
    expand_vertex(ext, Arrangement::A, |i, j| roles[i].height() > roles[j].height(), in_even, internal)
}

/// Roles stacked so that line `top` is highest and `bottom` lowest.
pub fn roles_by_lines(top: usize, middle: usize) -> Roles {
    let mut r = [Role::Bottom; 3];
    r[top] = Role::Top;
    r[middle] = Role::Middle;
    r
}
