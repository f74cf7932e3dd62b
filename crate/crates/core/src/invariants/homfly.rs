//! HOMFLY-PT polynomial by skein recursion on signed Gauss codes.
//!
//! Convention: `v^-1 P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`. The
//! polynomial is stored with exponents `[a, b]` meaning `v^a z^b`.
//!
//! A diagram is made descending from chosen base points by switching its
//! "bad" crossings in traversal order. Each switch contributes the
//! smoothing at that crossing, which has fewer crossings and is computed
//! recursively; the fully descending diagram is an unlink. Before each
//! step the code is reduced by Reidemeister I and II moves, split into
//! connected pieces, and looked up in a memo keyed by a canonical code.

use std::collections::HashMap;

use super::poly::{Poly1, Poly2};
use crate::diagram::{Arc, ClassicalDiagram, Sign};

/// Entry of a Gauss word: crossing id in the high bits, over-flag in bit 0.
type Entry = u32;

fn cid(e: Entry) -> usize {
    (e >> 1) as usize
}

fn is_over(e: Entry) -> bool {
    e & 1 == 1
}

#[derive(Clone, Debug)]
pub(crate) struct Gauss {
    comps: Vec<Vec<Entry>>,
    signs: Vec<i8>,
}

impl Gauss {
    pub(crate) fn from_diagram(d: &ClassicalDiagram) -> Gauss {
        // arc -> (crossing, over?, outgoing arc) at the arc's head
        let mut at_head: HashMap<Arc, (usize, bool, Arc)> = HashMap::new();
        for (i, c) in d.crossings().iter().enumerate() {
            at_head.insert(c.arcs[0], (i, false, c.arcs[2]));
            let (oi, oo) = c.over_in_out();
            at_head.insert(c.arcs[oi], (i, true, c.arcs[oo]));
        }
        let mut arcs: Vec<Arc> = at_head.keys().copied().collect();
        arcs.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut comps = Vec::new();
        for a0 in arcs {
            if seen.contains(&a0) {
                continue;
            }
            let mut word = Vec::new();
            let mut a = a0;
            while seen.insert(a) {
                let (c, over, out) = at_head[&a];
                word.push(((c as u32) << 1) | over as u32);
                a = out;
            }
            comps.push(word);
        }
        if comps.is_empty() {
            comps.push(Vec::new());
        }
        let signs = d.crossings().iter().map(|c| if c.sign == Sign::Positive { 1 } else { -1 }).collect();
        Gauss { comps, signs }
    }

    fn crossing_count(&self) -> usize {
        self.comps.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Positions (component, index) of both passes of every crossing.
    fn positions(&self) -> HashMap<usize, [(usize, usize); 2]> {
        let mut pos: HashMap<usize, [(usize, usize); 2]> = HashMap::new();
        for (ci, w) in self.comps.iter().enumerate() {
            for (k, &e) in w.iter().enumerate() {
                let slot = pos.entry(cid(e)).or_insert([(usize::MAX, 0); 2]);
                if slot[0].0 == usize::MAX {
                    slot[0] = (ci, k);
                } else {
                    slot[1] = (ci, k);
                }
            }
        }
        pos
    }

    fn remove_crossings(&mut self, drop: &[usize]) {
        for w in &mut self.comps {
            w.retain(|&e| !drop.contains(&cid(e)));
        }
    }

    /// One Reidemeister I or II reduction; returns false when none applies.
    fn reduce_once(&mut self) -> bool {
        for w in &self.comps {
            let n = w.len();
            for k in 0..n {
                let (e, f) = (w[k], w[(k + 1) % n]);
                if n >= 2 && cid(e) == cid(f) {
                    let c = cid(e);
                    self.remove_crossings(&[c]);
                    return true;
                }
            }
        }
        let pos = self.positions();
        for w in &self.comps {
            let n = w.len();
            if n < 2 {
                continue;
            }
            for k in 0..n {
                let (e, f) = (w[k], w[(k + 1) % n]);
                let (a, b) = (cid(e), cid(f));
                if a == b || is_over(e) != is_over(f) {
                    continue;
                }
                // the other passes of a and b
                let other = |c: usize, me: Entry| {
                    let [p, q] = pos[&c];
                    let (ci, i) = if self.comps[p.0][p.1] == me { q } else { p };
                    (ci, i)
                };
                let (ca, ia) = other(a, e);
                let (cb, ib) = other(b, f);
                if ca != cb {
                    continue;
                }
                let len = self.comps[ca].len();
                if (ia + 1) % len == ib || (ib + 1) % len == ia {
                    self.remove_crossings(&[a, b]);
                    return true;
                }
            }
        }
        false
    }

    /// Applies Reidemeister I/II reductions until none applies and drops
    /// crossingless components. Returns the number dropped.
    fn simplify(&mut self) -> usize {
        while self.reduce_once() {}
        let before = self.comps.len();
        self.comps.retain(|w| !w.is_empty());
        before - self.comps.len()
    }

    /// Splits into groups of components connected through crossings.
    fn pieces(self) -> Vec<Gauss> {
        let k = self.comps.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for [p, q] in self.positions().into_values() {
            let (a, b) = (find(&mut parent, p.0), find(&mut parent, q.0));
            parent[a] = b;
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..k {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut keys: Vec<_> = groups.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|r| Gauss { comps: groups[&r].iter().map(|&i| self.comps[i].clone()).collect(), signs: self.signs.clone() })
            .collect()
    }

    /// Canonical code of a connected piece, used as a memo key. Crossings
    /// are renumbered by first appearance from every possible start of
    /// every component; later components are entered at the least-numbered
    /// crossing whose second pass is still unvisited.
    fn canonical_key(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let pos = self.positions();
        for (c0, w0) in self.comps.iter().enumerate() {
            for s0 in 0..w0.len().max(1) {
                let mut label: HashMap<usize, u32> = HashMap::new();
                let mut code: Vec<u32> = Vec::with_capacity(self.crossing_count() * 3 + self.comps.len());
                let mut done = vec![false; self.comps.len()];
                let mut pending: Vec<(u32, usize, usize)> = Vec::new();
                let mut start = Some((c0, s0));
                while let Some((ci, si)) = start {
                    done[ci] = true;
                    let w = &self.comps[ci];
                    code.push(u32::MAX);
                    for k in 0..w.len() {
                        let e = w[(si + k) % w.len()];
                        let next = label.len() as u32;
                        let l = *label.entry(cid(e)).or_insert(next);
                        code.push((l << 1) | (e & 1));
                        if l == next {
                            let [p, q] = pos[&cid(e)];
                            let here = (ci, (si + k) % w.len());
                            let there = if p == here { q } else { p };
                            if !done[there.0] {
                                pending.push((l, there.0, there.1));
                            }
                        }
                    }
                    pending.retain(|&(_, c, _)| !done[c]);
                    pending.sort_unstable();
                    start = pending.first().map(|&(_, c, i)| (c, i));
                }
                let mut signs = vec![0u32; label.len()];
                for (&c, &l) in &label {
                    signs[l as usize] = (self.signs[c] > 0) as u32;
                }
                code.extend(signs);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn switch(&mut self, c: usize) {
        for w in &mut self.comps {
            for e in w.iter_mut() {
                if cid(*e) == c {
                    *e ^= 1;
                }
            }
        }
        self.signs[c] = -self.signs[c];
    }

    /// Oriented smoothing at crossing `c`.
    fn smoothed(&self, c: usize) -> Gauss {
        let pos = self.positions();
        let [p, q] = pos[&c];
        let mut comps: Vec<Vec<Entry>> = Vec::with_capacity(self.comps.len() + 1);
        if p.0 == q.0 {
            let w = &self.comps[p.0];
            let (i, j) = (p.1.min(q.1), p.1.max(q.1));
            comps.push(w[i + 1..j].to_vec());
            let mut rest = w[j + 1..].to_vec();
            rest.extend_from_slice(&w[..i]);
            comps.push(rest);
            comps.extend(self.comps.iter().enumerate().filter(|&(k, _)| k != p.0).map(|(_, w)| w.clone()));
        } else {
            let (u, w) = (&self.comps[p.0], &self.comps[q.0]);
            let mut merged = u[..p.1].to_vec();
            merged.extend_from_slice(&w[q.1 + 1..]);
            merged.extend_from_slice(&w[..q.1]);
            merged.extend_from_slice(&u[p.1 + 1..]);
            comps.push(merged);
            comps.extend(self.comps.iter().enumerate().filter(|&(k, _)| k != p.0 && k != q.0).map(|(_, w)| w.clone()));
        }
        Gauss { comps, signs: self.signs.clone() }
    }

    /// Chooses a component order and base points, returning the word
    /// rotations and the bad crossings in traversal order.
    fn descending_plan(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let k = self.comps.len();
        // self-crossing badness depends only on the start in that component
        let mut best_start = vec![0usize; k];
        for (ci, w) in self.comps.iter().enumerate() {
            let mut best = usize::MAX;
            for s in 0..w.len() {
                let mut seen = std::collections::HashSet::new();
                let mut bad = 0;
                for t in 0..w.len() {
                    let e = w[(s + t) % w.len()];
                    let own = w.iter().filter(|&&x| cid(x) == cid(e)).count() == 2;
                    if own && seen.insert(cid(e)) && !is_over(e) {
                        bad += 1;
                    }
                }
                if bad < best {
                    best = bad;
                    best_start[ci] = s;
                }
            }
        }
        // inter-component badness depends on the order; `under[i][j]`
        // counts crossings where component i passes under component j
        let pos = self.positions();
        let mut under = vec![vec![0usize; k]; k];
        for [p, q] in pos.values() {
            if p.0 != q.0 {
                let ep = self.comps[p.0][p.1];
                if is_over(ep) {
                    under[q.0][p.0] += 1;
                } else {
                    under[p.0][q.0] += 1;
                }
            }
        }
        let order: Vec<usize> = if k <= 6 {
            let mut best: Option<(usize, Vec<usize>)> = None;
            for perm in itertools::Itertools::permutations(0..k, k) {
                let cost: usize = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| under[perm[i]][perm[j]]).sum();
                if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                    best = Some((cost, perm));
                }
            }
            best.unwrap().1
        } else {
            (0..k).collect()
        };
        let mut seen = std::collections::HashSet::new();
        let mut bad = Vec::new();
        for &ci in &order {
            let w = &self.comps[ci];
            for t in 0..w.len() {
                let e = w[(best_start[ci] + t) % w.len()];
                if seen.insert(cid(e)) && !is_over(e) {
                    bad.push(cid(e));
                }
            }
        }
        (order, best_start, bad)
    }
}

/// `(v^-1 - v) / z`, the value of a two-component unlink.
fn unlink_factor() -> Poly2 {
    Poly2::from_terms([([-1, -1], 1), ([1, -1], -1)])
}

#[derive(Default)]
pub struct HomflyEngine {
    memo: HashMap<Vec<u32>, Poly2>,
}

impl HomflyEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn compute(&mut self, d: &ClassicalDiagram) -> Poly2 {
        self.eval(Gauss::from_diagram(d))
    }

    fn eval(&mut self, mut g: Gauss) -> Poly2 {
        let dropped = g.simplify();
        let pieces = if g.comps.is_empty() { Vec::new() } else { g.pieces() };
        let free = dropped + pieces.len();
        let mut total = unlink_factor().pow((free.max(1) - 1) as u32);
        for p in pieces {
            let v = self.eval_piece(p);
            total = &total * &v;
        }
        total
    }

    fn eval_piece(&mut self, g: Gauss) -> Poly2 {
        let key = g.canonical_key();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let (_, _, bad) = g.descending_plan();
        let mut current = g;
        let mut acc = Poly2::zero();
        let mut coef = Poly2::one();
        for c in bad {
            let (a, b) = if current.signs[c] > 0 {
                (Poly2::monomial([2, 0], 1), Poly2::monomial([1, 1], 1))
            } else {
                (Poly2::monomial([-2, 0], 1), Poly2::monomial([-1, 1], -1))
            };
            let s = self.eval(current.smoothed(c));
            acc = &acc + &(&(&coef * &b) * &s);
            coef = &coef * &a;
            current.switch(c);
        }
        let k = current.comps.len();
        acc = &acc + &(&coef * &unlink_factor().pow((k - 1) as u32));
        self.memo.insert(key, acc.clone());
        acc
    }
}

pub fn homfly(d: &ClassicalDiagram) -> Poly2 {
    HomflyEngine::new().compute(d)
}

/// `v ↦ v^-1, z ↦ -z`: the polynomial of the mirror image.
pub fn mirror_homfly(p: &Poly2) -> Poly2 {
    p.map_terms(|[a, b], c| ([-a, b], if b % 2 == 0 { c } else { -c }))
}

/// Substitutes `v = s^k`, `z = s - s^-1` where `s = t^(1/2)`; the result
/// is keyed by powers of `s`. Negative powers of `z` are cleared by exact
/// division at the end.
fn substitute(p: &Poly2, k: i32) -> Poly1 {
    let z = Poly1::from_terms([(1, 1), (-1, -1)]);
    let shift = -p.terms().map(|([_, b], _)| b).min().unwrap_or(0).min(0);
    let mut out = Poly1::zero();
    for ([a, b], c) in p.terms() {
        out.add_assign_scaled(&z.pow((b + shift) as u32), k * a, c);
    }
    for _ in 0..shift {
        out = divide_exact(&out, &z);
    }
    out
}

/// Jones polynomial by `v = t, z = t^(1/2) - t^(-1/2)`, in doubled
/// exponents of `t`.
pub fn jones_from_homfly(p: &Poly2) -> Poly1 {
    substitute(p, 2)
}

/// Conway polynomial `P(v = 1, z)` keyed by powers of `z`.
pub fn conway_from_homfly(p: &Poly2) -> Poly1 {
    p.map_terms(|[_, b], c| (b, c))
}

/// Alexander polynomial `Δ(t) = ∇(t^(1/2) - t^(-1/2))` in doubled
/// exponents of `t`.
pub fn alexander_from_homfly(p: &Poly2) -> Poly1 {
    substitute(p, 0)
}

/// Exact division of one-variable Laurent polynomials; panics when the
/// division leaves a remainder.
pub(crate) fn divide_exact(p: &Poly1, d: &Poly1) -> Poly1 {
    let mut rem = p.clone();
    let mut q = Poly1::zero();
    let (dmax, dmin, dlead) = (d.max_degree().unwrap(), d.min_degree().unwrap(), d.leading_coeff());
    while !rem.is_zero() {
        let (rmax, rlead) = (rem.max_degree().unwrap(), rem.leading_coeff());
        assert!(rlead % dlead == 0 && rem.span() >= dmax - dmin, "inexact division");
        let t = Poly1::monomial(rmax - dmax, rlead / dlead);
        rem = &rem - &(&t * d);
        q = &q + &t;
    }
    q
}
