//! Enumeration of prime connected six-valent spherical maps.
//!
//! Darts `6v..6v+5` belong to vertex `v` in counterclockwise order. Maps are
//! built by pairing the least unpaired dart with another dart, opening a new
//! vertex when needed, and pruning as soon as the partial map cannot lie on
//! the sphere.

use std::collections::{BTreeMap, HashSet};

use deltaknot::diagram::canon::{shadow_code, shadow_from_code};
use deltaknot::diagram::codec::emit_spd;
use deltaknot::{PlanarMap, ShadowProjection};

struct Builder {
    n: usize,
    partner: Vec<Option<usize>>,
    out: Vec<Vec<usize>>,
}

impl Builder {
    /// Euler characteristic of the partial map on the first `nv` vertices,
    /// with unpaired darts skipped in the rotation.
    fn euler(&self, nv: usize) -> i64 {
        let nd = 6 * nv;
        let next_paired = |d: usize| {
            let v = d / 6;
            (1..=6).map(|k| 6 * v + (d % 6 + k) % 6).find(|&e| self.partner[e].is_some()).unwrap()
        };
        let mut seen = vec![false; nd];
        let mut faces = 0i64;
        let mut edges = 0i64;
        for d in 0..nd {
            let Some(p) = self.partner[d] else { continue };
            if d < p {
                edges += 1;
            }
            if seen[d] {
                continue;
            }
            faces += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                x = next_paired(self.partner[x].unwrap());
            }
        }
        let isolated = (0..nv).filter(|&v| (0..6).all(|k| self.partner[6 * v + k].is_none())).count() as i64;
        nv as i64 - edges + faces + isolated
    }

    fn pair(&mut self, a: usize, b: usize, nv: usize) {
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
        self.search(nv);
        self.partner[a] = None;
        self.partner[b] = None;
    }

    fn search(&mut self, nv: usize) {
        if self.euler(nv) < 2 {
            return;
        }
        let Some(d) = (0..6 * nv).find(|&x| self.partner[x].is_none()) else {
            if nv == self.n {
                self.out.push(self.partner.iter().map(|p| p.unwrap()).collect());
            }
            return;
        };
        for e in d + 1..6 * nv {
            if self.partner[e].is_none() {
                self.pair(d, e, nv);
            }
        }
        if nv < self.n {
            self.pair(d, 6 * nv, nv + 1);
        }
    }
}

fn to_shadow(partner: &[usize]) -> ShadowProjection {
    let n = partner.len() / 6;
    let mut points = vec![[0u32; 6]; n];
    let mut next = 0;
    for d in 0..partner.len() {
        let e = partner[d];
        if d < e {
            next += 1;
            points[d / 6][d % 6] = next;
            points[e / 6][e % 6] = next;
        }
    }
    ShadowProjection::new(points).expect("enumerated maps are connected")
}

/// No two distinct faces share two or more edges.
pub fn is_prime(m: &PlanarMap) -> bool {
    let edge = |d: usize| d.min(m.alpha(d));
    let sets: Vec<HashSet<usize>> = m.faces().iter().map(|f| f.iter().map(|&d| edge(d)).collect()).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].intersection(&sets[j]).count() >= 2 {
                return false;
            }
        }
    }
    true
}

/// Prime projections with `n` triple points up to sphere isotopy and
/// mirror image, in order of canonical code.
pub fn prime_projections(n: usize) -> Vec<ShadowProjection> {
    let mut b = Builder { n, partner: vec![None; 6 * n], out: Vec::new() };
    b.search(1);
    let mut classes: BTreeMap<Vec<u32>, ShadowProjection> = BTreeMap::new();
    for m in &b.out {
        let p = to_shadow(m);
        let code = shadow_code(&p, true);
        classes.entry(code).or_insert(p);
    }
    classes
        .into_iter()
        .filter(|(_, p)| is_prime(&p.planar_map()))
        .map(|(code, _)| shadow_from_code(&code))
        .collect()
}

pub fn render(n: usize, list: &[ShadowProjection]) -> String {
    let mut s = format!("# prime connected triple-point projections with {n} triple points, up to mirror image\n");
    for p in list {
        s.push_str(&emit_spd(p));
        s.push('\n');
    }
    s
}
