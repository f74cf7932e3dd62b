//! Shared helpers for integration tests: random knot diagrams, Reidemeister
//! moves and an Alexander polynomial computed from the Alexander matrix.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use deltaknot::{ClassicalDiagram, Poly1, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

/// A braid word on `strands` strands; generator `±i` crosses positions
/// `i - 1` and `i`.
#[derive(Clone, Debug)]
pub struct Braid {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl Braid {
    fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for g in &self.word {
            let i = g.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        at
    }

    /// True when the closure has one component.
    pub fn closes_to_knot(&self) -> bool {
        let p = self.permutation();
        let (mut x, mut len) = (p[0], 1);
        while x != 0 {
            x = p[x];
            len += 1;
        }
        len == self.strands
    }

    /// Unsigned PD tuples of the closure. Strands run upward; each
    /// crossing lists bottom-left, bottom-right, top-right, top-left
    /// counterclockwise, starting from the incoming under-strand.
    pub fn closure_tuples(&self) -> Vec<[u32; 4]> {
        let start: Vec<u32> = (1..=self.strands as u32).collect();
        let mut cur = start.clone();
        let mut fresh = self.strands as u32;
        let mut out = Vec::new();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            let (tr, tl) = (fresh + 1, fresh + 2);
            fresh += 2;
            let (bl, br) = (cur[i], cur[i + 1]);
            out.push(if g > 0 { [bl, br, tr, tl] } else { [br, tr, tl, bl] });
            cur[i] = tl;
            cur[i + 1] = tr;
        }
        let close: HashMap<u32, u32> = cur.into_iter().zip(start).collect();
        for t in &mut out {
            for a in t.iter_mut() {
                if let Some(&b) = close.get(a) {
                    *a = b;
                }
            }
        }
        out
    }

    pub fn closure(&self) -> ClassicalDiagram {
        ClassicalDiagram::from_unsigned(self.closure_tuples()).expect("braid closures are valid diagrams")
    }
}

/// A random braid with at most `max_len` letters whose closure is a knot.
pub fn random_knot_braid(rng: &mut impl Rng, max_len: usize) -> Braid {
    loop {
        let strands = rng.gen_range(2..=4);
        let len = rng.gen_range(strands..=max_len);
        let word = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let b = Braid { strands, word };
        if b.closes_to_knot() {
            return b;
        }
    }
}

/// Applies one random move to the braid that is a Reidemeister move or a
/// planar isotopy of its closure.
pub fn random_braid_move(rng: &mut impl Rng, b: &mut Braid) {
    let n = b.word.len();
    match rng.gen_range(0..5) {
        // R2
        0 => {
            let i = rng.gen_range(1..b.strands as i32);
            let g = if rng.gen_bool(0.5) { i } else { -i };
            let k = rng.gen_range(0..=n);
            b.word.splice(k..k, [g, -g]);
        }
        // R3 where available
        1 => {
            let spots: Vec<usize> = (0..n.saturating_sub(2))
                .filter(|&k| {
                    let (a, c, e) = (b.word[k], b.word[k + 1], b.word[k + 2]);
                    a == e && (a.abs() - c.abs()).abs() == 1 && a.signum() == c.signum()
                })
                .collect();
            if let Some(&k) = spots.choose(rng) {
                let (a, c) = (b.word[k], b.word[k + 1]);
                b.word[k..k + 3].copy_from_slice(&[c, a, c]);
            }
        }
        // R1 as a stabilization
        2 => {
            b.strands += 1;
            let g = b.strands as i32 - 1;
            b.word.push(if rng.gen_bool(0.5) { g } else { -g });
        }
        // conjugation
        3 => {
            let k = rng.gen_range(0..n.max(1));
            b.word.rotate_left(k);
        }
        // far commutation
        _ => {
            let spots: Vec<usize> =
                (0..n.saturating_sub(1)).filter(|&k| (b.word[k].abs() - b.word[k + 1].abs()).abs() >= 2).collect();
            if let Some(&k) = spots.choose(rng) {
                b.word.swap(k, k + 1);
            }
        }
    }
}

/// Inserts a kink (R1) on a random arc of unsigned PD tuples. The four
/// variants cover both heights of the entering strand and both sides.
pub fn insert_kink(rng: &mut impl Rng, tuples: &mut Vec<[u32; 4]>) {
    let d = ClassicalDiagram::from_unsigned(tuples.clone()).expect("valid diagram");
    // (crossing, slot) where each arc is entered
    let mut head: HashMap<u32, (usize, usize)> = HashMap::new();
    for (k, c) in d.crossings().iter().enumerate() {
        head.insert(c.arcs[0], (k, 0));
        let (i, _) = c.over_in_out();
        head.insert(c.arcs[i], (k, i));
    }
    let mut arcs: Vec<u32> = head.keys().copied().collect();
    arcs.sort_unstable();
    let a = *arcs.choose(rng).unwrap();
    let max = tuples.iter().flatten().copied().max().unwrap();
    let (n1, n2) = (max + 1, max + 2);
    let kink = match rng.gen_range(0..4) {
        0 => [a, n1, n1, n2],
        1 => [a, n2, n1, n1],
        2 => [n1, a, n2, n1],
        _ => [n1, n1, n2, a],
    };
    let (k, s) = head[&a];
    tuples[k][s] = n2;
    tuples.push(kink);
}

/// Relabels arcs and shuffles the crossing order.
pub fn shuffle_labels(rng: &mut impl Rng, tuples: &mut [[u32; 4]]) {
    let mut labels: Vec<u32> = tuples.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let mut image = labels.clone();
    image.shuffle(rng);
    let map: HashMap<u32, u32> = labels.into_iter().zip(image).collect();
    for t in tuples.iter_mut() {
        for a in t.iter_mut() {
            *a = map[a];
        }
    }
    tuples.shuffle(rng);
}

type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn div_exact(a: &Poly, b: &Poly) -> Poly {
    let mut rem = a.clone();
    if rem.is_empty() {
        return rem;
    }
    let mut q = vec![0; rem.len().saturating_sub(b.len()) + 1];
    let lead = *b.last().unwrap();
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = *rem.last().unwrap();
        assert_eq!(c % lead, 0, "inexact division");
        q[shift] = c / lead;
        let mut t = vec![0; shift];
        t.push(c / lead);
        rem = sub(&rem, &mul(&t, b));
    }
    assert!(rem.is_empty(), "inexact division");
    trim(q)
}

/// Alexander polynomial from the Alexander matrix of the over-arcs,
/// determinant by fraction-free elimination. Returned as the coefficient
/// list from lowest to highest degree, with a positive first coefficient.
pub fn alexander_by_matrix(d: &ClassicalDiagram) -> Vec<i128> {
    let cs = d.crossings();
    if cs.is_empty() {
        return vec![1];
    }
    // over-arcs: labels joined through an over-passing crossing
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let y = *p.entry(x).or_insert(x);
        if y == x {
            x
        } else {
            let r = find(p, y);
            p.insert(x, r);
            r
        }
    }
    for c in cs {
        let (a, b) = (find(&mut parent, c.arcs[1]), find(&mut parent, c.arcs[3]));
        parent.insert(a, b);
    }
    let mut ids: HashMap<u32, usize> = HashMap::new();
    for c in cs {
        for a in c.arcs {
            let r = find(&mut parent, a);
            let next = ids.len();
            ids.entry(r).or_insert(next);
        }
    }
    let n = cs.len();
    assert_eq!(ids.len(), n, "one over-arc per crossing");
    let mut m: Vec<Vec<Poly>> = vec![vec![Vec::new(); n]; n];
    for (row, c) in cs.iter().enumerate() {
        let mut add = |a: u32, p: Poly| {
            let col = ids[&find(&mut parent, a)];
            let cell = &mut m[row][col];
            *cell = trim({
                let mut s = vec![0; cell.len().max(p.len())];
                for (i, x) in cell.iter().chain(std::iter::repeat(&0)).take(s.len()).enumerate() {
                    s[i] += x;
                }
                for (i, x) in p.iter().enumerate() {
                    s[i] += x;
                }
                s
            });
        };
        // t goes to the under-arc on the same side of the over-strand
        // for both signs
        let (t_arc, one_arc) = match c.sign {
            Sign::Positive => (c.arcs[0], c.arcs[2]),
            Sign::Negative => (c.arcs[2], c.arcs[0]),
        };
        add(c.arcs[1], vec![1, -1]);
        add(t_arc, vec![0, 1]);
        add(one_arc, vec![-1]);
    }
    let k = n - 1;
    let mut a: Vec<Vec<Poly>> = m.into_iter().take(k).map(|r| r.into_iter().take(k).collect()).collect();
    if k == 0 {
        return vec![1];
    }
    let mut prev: Poly = vec![1];
    for p in 0..k {
        if a[p][p].is_empty() {
            let Some(r) = (p + 1..k).find(|&r| !a[r][p].is_empty()) else {
                return Vec::new();
            };
            a.swap(p, r);
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = sub(&mul(&a[p][p], &a[i][j]), &mul(&a[i][p], &a[p][j]));
                a[i][j] = div_exact(&v, &prev);
            }
            a[i][p] = Vec::new();
        }
        prev = a[p][p].clone();
    }
    normalize(a[k - 1][k - 1].clone())
}

fn normalize(p: Poly) -> Vec<i128> {
    let mut v: Vec<i128> = p.into_iter().skip_while(|&c| c == 0).collect();
    v = trim(v);
    if v.first().is_some_and(|&c| c < 0) {
        v.iter_mut().for_each(|c| *c = -*c);
    }
    v
}

/// The library's Alexander polynomial in the same normal form.
pub fn normalized_alexander(p: &Poly1) -> Vec<i128> {
    let (lo, hi) = (p.min_degree().unwrap(), p.max_degree().unwrap());
    normalize((lo..=hi).step_by(2).map(|e| p.coeff(e) as i128).collect())
}

/// Kauffman bracket by summing over all `2^n` states. Each state's loops
/// are the components of the arc labels joined by its smoothings.
pub fn state_sum_bracket(d: &ClassicalDiagram) -> Poly1 {
    let cs = d.crossings();
    if cs.is_empty() {
        return Poly1::one();
    }
    let mut labels: Vec<u32> = cs.iter().flat_map(|c| c.arcs).collect();
    labels.sort_unstable();
    labels.dedup();
    let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let loop_factor = Poly1::from_terms([(2, -1), (-2, -1)]);
    let mut total = Poly1::zero();
    for state in 0u32..1 << cs.len() {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut exponent = 0;
        for (k, c) in cs.iter().enumerate() {
            let [a, b, cc, dd] = c.arcs.map(|x| index[&x]);
            let joins = if state >> k & 1 == 0 {
                exponent += 1;
                [(a, b), (cc, dd)]
            } else {
                exponent -= 1;
                [(a, dd), (b, cc)]
            };
            for (x, y) in joins {
                let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
                parent[rx] = ry;
            }
        }
        let loops = (0..labels.len()).filter(|&i| root(&mut parent, i) == i).count();
        total = &total + &loop_factor.pow(loops as u32 - 1).mul_monomial(exponent, 1);
    }
    total
}
