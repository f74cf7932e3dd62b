//! Kauffman bracket by dynamic programming over a crossing order.
//!
//! Crossings are added one at a time; a state records how the dangling
//! arcs of the processed part are joined in pairs by the smoothings chosen
//! so far, together with whether some loop has already closed. Loops after
//! the first contribute a factor `d = -A^2 - A^-2`.

use std::collections::{HashMap, HashSet};

use super::poly::Poly1;
use crate::diagram::{Arc, ClassicalDiagram};

type Frontier = Vec<(Arc, Arc)>;

/// Removes `a` from the pairing and returns its partner.
fn take(pairs: &mut Vec<(Arc, Arc)>, a: Arc) -> Option<Arc> {
    let i = pairs.iter().position(|&(x, y)| x == a || y == a)?;
    let (x, y) = pairs.swap_remove(i);
    Some(if x == a { y } else { x })
}

fn insert(pairs: &mut Vec<(Arc, Arc)>, a: Arc, b: Arc) {
    pairs.push((a.min(b), a.max(b)));
}

/// Joins arc ends `x` and `y`; returns true when a loop closes.
fn connect(pairs: &mut Vec<(Arc, Arc)>, x: Arc, y: Arc) -> bool {
    if x == y {
        return true;
    }
    let px = take(pairs, x);
    if px == Some(y) {
        return true;
    }
    let py = take(pairs, y);
    insert(pairs, px.unwrap_or(x), py.unwrap_or(y));
    false
}

/// Greedy order keeping the set of dangling arcs small.
fn crossing_order(d: &ClassicalDiagram) -> Vec<usize> {
    let n = d.n();
    let mut done = vec![false; n];
    let mut open: HashSet<Arc> = HashSet::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&i| !done[i])
            .max_by_key(|&i| {
                let shared = d.crossings()[i].arcs.iter().filter(|a| open.contains(a)).count();
                (shared, std::cmp::Reverse(i))
            })
            .unwrap();
        done[best] = true;
        order.push(best);
        for &a in &d.crossings()[best].arcs {
            if !open.remove(&a) {
                open.insert(a);
            }
        }
    }
    order
}

/// Bracket polynomial in `A`, normalized so that the crossingless unknot
/// has bracket 1.
pub fn kauffman_bracket(d: &ClassicalDiagram) -> Poly1 {
    let delta = Poly1::from_terms([(2, -1), (-2, -1)]);
    let mut states: HashMap<(Frontier, bool), Poly1> = HashMap::new();
    states.insert((Vec::new(), false), Poly1::one());
    for i in crossing_order(d) {
        let [a, b, c, dd] = d.crossings()[i].arcs;
        let mut next: HashMap<(Frontier, bool), Poly1> = HashMap::with_capacity(states.len() * 2);
        for ((pairs, closed), poly) in &states {
            for (shift, joins) in [(1, [(a, b), (c, dd)]), (-1, [(a, dd), (b, c)])] {
                let mut p = pairs.clone();
                let mut loops = 0;
                for (x, y) in joins {
                    if connect(&mut p, x, y) {
                        loops += 1;
                    }
                }
                let mut closed2 = *closed;
                let mut factor = Poly1::monomial(shift, 1);
                for _ in 0..loops {
                    if closed2 {
                        factor = &factor * &delta;
                    }
                    closed2 = true;
                }
                p.sort_unstable();
                let slot = next.entry((p, closed2)).or_default();
                *slot = &*slot + &(poly * &factor);
            }
        }
        states = next;
    }
    let mut total = Poly1::zero();
    for ((pairs, _), poly) in states {
        debug_assert!(pairs.is_empty());
        total = &total + &poly;
    }
    if d.n() == 0 {
        return Poly1::one();
    }
    total
}

/// Jones polynomial from the bracket, in doubled exponents of `t`
/// (the key `k` stands for `t^(k/2)`).
pub fn jones_from_bracket(d: &ClassicalDiagram) -> Poly1 {
    let br = kauffman_bracket(d);
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    // (-A^3)^(-w) <D>, then A = t^(-1/4): A^e becomes t^(-e/4) = s^(-e/2).
    br.map_terms(|e, c| {
        let e = e - 3 * w;
        debug_assert!(e % 2 == 0);
        (-e / 2, c * sign)
    })
}
