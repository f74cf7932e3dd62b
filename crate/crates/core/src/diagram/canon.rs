//! Canonical forms.
//!
//! Shadows are keyed by a breadth-first code over all root darts (and,
//! optionally, both rotation senses). Oriented six-valent diagrams are
//! relabelled along the natural orientation from every possible starting
//! arc and the lexicographically least result is kept.

use std::collections::HashMap;

use super::{Arc, DeltaCrossing, DeltaDiagram, DeltaType, NaturalOrientation, PlanarMap, Roles, ShadowProjection, TripleDiagram};

/// Breadth-first code of a six-valent map from root dart `root`, walking
/// rotations forward (`sense = 1`) or backward (`sense = 5`).
fn bfs_code(map: &PlanarMap, root: usize, sense: usize) -> (Vec<u32>, Vec<usize>) {
    let n = map.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut start = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let v0 = map.vertex_of(root);
    index[v0] = 0;
    start[v0] = map.slot_of(root);
    order.push(v0);
    let mut code = Vec::with_capacity(6 * n);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for k in 0..6 {
            let d = map.dart(v, start[v] + sense * k);
            let e = map.alpha(d);
            let w = map.vertex_of(e);
            if index[w] == usize::MAX {
                index[w] = order.len();
                start[w] = map.slot_of(e);
                order.push(w);
            }
            let off = (map.slot_of(e) + 6 - start[w]) % 6;
            let off = if sense == 1 { off } else { (6 - off) % 6 };
            code.push((6 * index[w] + off) as u32);
        }
        i += 1;
    }
    (code, order)
}

/// Isomorphism-invariant code of a connected shadow. With `with_mirror`
/// the code is also invariant under reflection of the sphere.
pub fn shadow_code(p: &ShadowProjection, with_mirror: bool) -> Vec<u32> {
    let map = p.planar_map();
    let senses: &[usize] = if with_mirror { &[1, 5] } else { &[1] };
    (0..map.dart_count())
        .flat_map(|r| senses.iter().map(move |&s| (r, s)))
        .map(|(r, s)| bfs_code(&map, r, s).0)
        .min()
        .unwrap_or_default()
}

/// Rebuilds a shadow from a breadth-first code; arcs are numbered by
/// first appearance.
pub fn shadow_from_code(code: &[u32]) -> ShadowProjection {
    let n = code.len() / 6;
    let mut label = HashMap::new();
    let mut next = 1;
    let mut points = vec![[0; 6]; n];
    for (d, &e) in code.iter().enumerate() {
        let key = (d.min(e as usize), d.max(e as usize));
        let a = *label.entry(key).or_insert_with(|| {
            next += 1;
            next - 1
        });
        points[d / 6][d % 6] = a;
    }
    ShadowProjection::new(points).expect("code describes a valid shadow")
}

pub fn canonical_shadow(p: &ShadowProjection, with_mirror: bool) -> ShadowProjection {
    if p.n() == 0 {
        return p.clone();
    }
    shadow_from_code(&shadow_code(p, with_mirror))
}

/// Decoration carried by an oriented six-valent vertex.
pub trait VertexDecoration: Copy + Ord {
    /// The decoration after the tuple is rotated left by `k` slots.
    fn rotate(self, k: usize) -> Self;
}

impl VertexDecoration for DeltaType {
    fn rotate(self, k: usize) -> Self {
        if k.is_multiple_of(2) {
            self
        } else {
            match self {
                DeltaType::S => DeltaType::T,
                DeltaType::T => DeltaType::S,
                DeltaType::U => DeltaType::W,
                DeltaType::W => DeltaType::U,
            }
        }
    }
}

impl VertexDecoration for Roles {
    fn rotate(self, k: usize) -> Self {
        [self[k % 3], self[(k + 1) % 3], self[(k + 2) % 3]]
    }
}

impl VertexDecoration for () {
    fn rotate(self, _: usize) -> Self {}
}

pub fn rotate_tuple(t: [Arc; 6], k: usize) -> [Arc; 6] {
    std::array::from_fn(|i| t[(i + k) % 6])
}

/// Rotates every tuple whose slot 0 is outgoing by one slot, so that all
/// tuples start with an incoming arc.
pub fn normalize_slots<D: VertexDecoration>(tuples: &[[Arc; 6]], decos: &[D]) -> (Vec<[Arc; 6]>, Vec<D>) {
    let o = NaturalOrientation::of_tuples(tuples).expect("diagram has a natural orientation");
    tuples
        .iter()
        .zip(decos)
        .enumerate()
        .map(|(v, (&t, &d))| if o.even_slots_incoming(v) { (t, d) } else { (rotate_tuple(t, 1), d.rotate(1)) })
        .unzip()
}

/// Least relabelling of an oriented diagram whose tuples all start with an
/// incoming arc. Arcs are numbered consecutively along each component.
pub fn canonical_oriented<D: VertexDecoration>(tuples: &[[Arc; 6]], decos: &[D]) -> Vec<([Arc; 6], D)> {
    let n = tuples.len();
    if n == 0 {
        return Vec::new();
    }
    let mut head: HashMap<Arc, (usize, usize)> = HashMap::new();
    for (v, t) in tuples.iter().enumerate() {
        for s in (0..6).step_by(2) {
            head.insert(t[s], (v, s));
        }
    }
    let successor = |a: Arc| {
        let (v, s) = head[&a];
        tuples[v][(s + 3) % 6]
    };
    let arcs = 3 * n;
    let mut best: Option<Vec<([Arc; 6], D)>> = None;
    let mut roots: Vec<Arc> = head.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        let mut label: HashMap<Arc, Arc> = HashMap::with_capacity(arcs);
        let mut next = 1;
        let mut start = root;
        loop {
            let mut a = start;
            loop {
                label.insert(a, next);
                next += 1;
                a = successor(a);
                if a == start {
                    break;
                }
            }
            if label.len() == arcs {
                break;
            }
            // Next component: first unlabelled arc met when scanning vertices
            // by their least label, counterclockwise from that label. A split
            // diagram continues from its least unlabelled arc.
            let mut seen: Vec<(Arc, usize, usize)> = tuples
                .iter()
                .enumerate()
                .filter_map(|(v, t)| (0..6).filter_map(|s| label.get(&t[s]).map(|&l| (l, v, s))).min())
                .collect();
            seen.sort();
            start = seen
                .iter()
                .find_map(|&(_, v, s)| (0..6).map(|k| tuples[v][(s + k) % 6]).find(|a| !label.contains_key(a)))
                .or_else(|| head.keys().filter(|a| !label.contains_key(a)).min().copied())
                .expect("some arc is unlabelled");
        }
        let mut code: Vec<([Arc; 6], D)> = tuples
            .iter()
            .zip(decos)
            .map(|(t, &d)| {
                let t = t.map(|a| label[&a]);
                let k = [0, 2, 4].into_iter().min_by_key(|&s| t[s]).unwrap();
                (rotate_tuple(t, k), d.rotate(k))
            })
            .collect();
        code.sort_by_key(|(t, d)| (*t.iter().min().unwrap(), *t, *d));
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap()
}

/// Same diagram traversed in the opposite direction, re-normalized.
pub fn reversed<D: VertexDecoration>(tuples: &[[Arc; 6]], decos: &[D]) -> (Vec<[Arc; 6]>, Vec<D>) {
    tuples.iter().zip(decos).map(|(&t, &d)| (rotate_tuple(t, 1), d.rotate(1))).unzip()
}

fn canonical_unoriented<D: VertexDecoration>(tuples: &[[Arc; 6]], decos: &[D]) -> Vec<([Arc; 6], D)> {
    let (t, d) = normalize_slots(tuples, decos);
    let a = canonical_oriented(&t, &d);
    let (rt, rd) = reversed(&t, &d);
    let b = canonical_oriented(&rt, &rd);
    a.min(b)
}

impl DeltaDiagram {
    /// Canonical representative up to relabelling, rotation of the sphere
    /// and reversal of orientation.
    pub fn canonical(&self) -> DeltaDiagram {
        let kinds: Vec<DeltaType> = self.crossings().iter().map(|c| c.kind).collect();
        let code = canonical_unoriented(&self.tuples(), &kinds);
        DeltaDiagram::new(code.into_iter().map(|(arcs, kind)| DeltaCrossing { kind, arcs }).collect())
            .expect("relabelling preserves validity")
    }

    /// Normalizes tuples so that slot 0 is incoming, keeping labels.
    pub fn normalized(&self) -> DeltaDiagram {
        let kinds: Vec<DeltaType> = self.crossings().iter().map(|c| c.kind).collect();
        let (t, k) = normalize_slots(&self.tuples(), &kinds);
        DeltaDiagram::new(t.into_iter().zip(k).map(|(arcs, kind)| DeltaCrossing { kind, arcs }).collect())
            .expect("rotation preserves validity")
    }
}

impl TripleDiagram {
    pub fn canonical(&self) -> TripleDiagram {
        let code = canonical_unoriented(self.base().points(), self.roles());
        let (t, r): (Vec<_>, Vec<_>) = code.into_iter().unzip();
        TripleDiagram::new(ShadowProjection::new(t).expect("valid"), r).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::codec::parse_dpd;

    #[test]
    fn shadow_code_ignores_labels_and_rotation() {
        let a = ShadowProjection::new(vec![[1, 1, 2, 2, 3, 3]]).unwrap();
        let b = ShadowProjection::new(vec![[2, 3, 3, 1, 1, 2]]).unwrap();
        assert_eq!(shadow_code(&a, false), shadow_code(&b, false));
        assert_eq!(canonical_shadow(&a, false), canonical_shadow(&b, false));
    }

    #[test]
    fn delta_canonical_is_idempotent_and_label_blind() {
        let d = parse_dpd("[S, [5, 2, 4, 6, 1, 5], W, [2, 1, 3, 3, 6, 4]]").unwrap();
        let c = d.canonical();
        assert_eq!(c.canonical(), c);
        let relabel = |a: Arc| (a % 6) + 1;
        let shifted = DeltaDiagram::new(
            d.crossings().iter().rev().map(|x| DeltaCrossing { kind: x.kind, arcs: x.arcs.map(relabel) }).collect(),
        )
        .unwrap();
        assert_eq!(shifted.canonical(), c);
    }

    #[test]
    fn role_rotation_matches_slot_rotation() {
        use crate::diagram::Role::*;
        let r: Roles = [Top, Middle, Bottom];
        assert_eq!(r.rotate(1), [Middle, Bottom, Top]);
        assert_eq!(r.rotate(3), r);
    }
}
