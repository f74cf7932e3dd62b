//! Local rewriting rules between triple-crossings and delta-crossings.
//!
//! A rule replaces a small disk of a diagram by another tangle with the
//! same boundary. Replacement tangles are given as vertex templates whose
//! slots are either boundary ports `E(p)` (the arc at boundary point `p` of
//! the replaced disk) or internal edges `I(k)` (fresh arcs). Decorations
//! are geometric: delta letters are stated as if slot 0 were incoming and
//! are re-normalized once the diagram is oriented.
//!
//! Every rule was found by exhaustive search over small tangles, comparing
//! writhe-normalized bracket vectors, and is checked here by HOMFLY-PT
//! preservation on closures (see the tests).

use std::collections::HashMap;

use crate::diagram::canon::{canonical_oriented, normalize_slots, reversed, rotate_tuple, VertexDecoration};
use crate::diagram::{connected_pieces, Arc, DeltaCrossing, DeltaDiagram, DeltaType, Role, Roles, ShadowProjection, TripleDiagram};
use crate::tangles::{max_disjoint_counts, TangleEmbedding, TangleKind};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Port {
    E(u8),
    I(u8),
}

use DeltaType::{S, T, U, W};
use Port::{E, I};
use Role::{Bottom as Bo, Middle as Mi, Top as To};

pub(super) type Template = &'static [[Port; 6]];

// Two-vertex shadows with boundary pairing p <-> p+3.
const SH_A: Template = &[[E(0), E(1), E(2), E(3), I(0), I(1)], [E(4), E(5), I(1), I(0), I(2), I(2)]];
const SH_B: Template = &[[E(0), E(1), I(0), I(1), E(4), E(5)], [E(2), E(3), I(1), I(0), I(2), I(2)]];
const SH_C: Template = &[[E(0), E(1), I(0), I(1), E(4), E(5)], [E(2), E(3), I(2), I(2), I(1), I(0)]];
const SH_D: Template = &[[E(0), E(1), I(0), I(0), I(1), I(2)], [E(2), E(3), E(4), E(5), I(2), I(1)]];
const SH_E: Template = &[[E(0), I(0), I(1), E(3), E(4), E(5)], [E(1), E(2), I(1), I(0), I(2), I(2)]];

/// A delta-crossing as two triple-crossings.
fn delta_rule(kind: DeltaType) -> (Template, [Roles; 2]) {
    match kind {
        T => (SH_C, [[To, Mi, Bo], [To, Mi, Bo]]),
        W => (SH_C, [[Bo, Mi, To], [Bo, Mi, To]]),
        S => (SH_E, [[Mi, Bo, To], [Mi, Bo, To]]),
        U => (SH_E, [[Mi, To, Bo], [Mi, To, Bo]]),
    }
}

/// A triple-crossing as two delta-crossings.
fn triple_rule(roles: Roles) -> (Template, [DeltaType; 2]) {
    match roles {
        [To, Mi, Bo] => (SH_B, [T, W]),
        [Bo, Mi, To] => (SH_B, [W, T]),
        [To, Bo, Mi] => (SH_D, [T, W]),
        [Bo, To, Mi] => (SH_D, [W, T]),
        [Mi, To, Bo] => (SH_A, [W, T]),
        [Mi, Bo, To] => (SH_A, [T, W]),
        _ => unreachable!("invalid roles"),
    }
}

/// A triple-crossing with a loop joining slots `j` and `j + 1`. When the
/// third strand is the middle one the result is a single delta-crossing
/// with the same loop; otherwise the crossing untwists completely.
fn loop_rule(j: usize, roles: Roles) -> Option<DeltaType> {
    let table: [[(Roles, DeltaType); 2]; 6] = [
        [([To, Bo, Mi], W), ([Bo, To, Mi], T)],
        [([Mi, To, Bo], U), ([Mi, Bo, To], S)],
        [([To, Mi, Bo], T), ([Bo, Mi, To], W)],
        [([To, Bo, Mi], U), ([Bo, To, Mi], S)],
        [([Mi, To, Bo], W), ([Mi, Bo, To], T)],
        [([To, Mi, Bo], S), ([Bo, Mi, To], U)],
    ];
    table[j].iter().find(|(r, _)| *r == roles).map(|&(_, t)| t)
}

/// Replacement for two triple-crossings joined by three parallel edges.
/// Template labelling: vertex 0 slots 0, 1, 2 meet vertex 1 slots 0, 5, 4;
/// boundary points 0..2 are vertex 0 slots 3..5 and 3..5 are vertex 1
/// slots 1..3.
pub(crate) enum BondReplacement {
    Deltas(Template, &'static [DeltaType]),
    Straight,
}

pub(crate) fn bond_rule(r0: Roles, r1: Roles) -> Option<BondReplacement> {
    super::bond_table::lookup(r0, r1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleId {
    DeltaToTriples(DeltaType),
    TripleToDeltas(Roles),
    LoopToDelta,
    LoopUntwisted,
    BondToDeltas(usize),
    BondStraightened,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub input_kind: &'static str,
    pub input_n: usize,
    pub output_kind: &'static str,
    pub output_n: usize,
    pub t1: usize,
    pub t2: usize,
    pub rules: Vec<RuleId>,
}

/// Builds the vertices of a template around boundary arcs `ext`.
fn instantiate<D: Copy>(tpl: &[[Port; 6]], decos: &[D], ext: &[Arc], fresh: &mut Arc) -> Vec<([Arc; 6], D)> {
    let mut internal: HashMap<u8, Arc> = HashMap::new();
    tpl.iter()
        .zip(decos)
        .map(|(row, &d)| {
            let t = row.map(|p| match p {
                E(k) => ext[k as usize],
                I(k) => *internal.entry(k).or_insert_with(|| {
                    *fresh += 1;
                    *fresh
                }),
            });
            (t, d)
        })
        .collect()
}

/// Merges arcs joined by straightened strands. Also returns the number of
/// strands that closed up with no vertex on them.
fn merge<D: Copy>(verts: &[([Arc; 6], D)], joins: &[(Arc, Arc)]) -> (Vec<([Arc; 6], D)>, usize) {
    let mut parent: HashMap<Arc, Arc> = HashMap::new();
    fn find(p: &mut HashMap<Arc, Arc>, x: Arc) -> Arc {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(x, r);
        r
    }
    let mut loops = 0;
    for &(a, b) in joins {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            loops += 1;
        } else {
            parent.insert(ra, rb);
        }
    }
    let verts = verts.iter().map(|&(t, d)| (t.map(|a| find(&mut parent, a)), d)).collect();
    (verts, loops)
}

/// Relabels to a canonical oriented form.
fn canonicalize<D: VertexDecoration>(verts: Vec<([Arc; 6], D)>) -> Vec<([Arc; 6], D)> {
    if verts.is_empty() {
        return verts;
    }
    let (t, d): (Vec<_>, Vec<_>) = verts.into_iter().unzip();
    let (t, d) = normalize_slots(&t, &d);
    let a = canonical_oriented(&t, &d);
    let (rt, rd) = reversed(&t, &d);
    a.min(canonical_oriented(&rt, &rd))
}

fn to_delta_diagram(code: Vec<([Arc; 6], DeltaType)>) -> DeltaDiagram {
    DeltaDiagram::new(code.into_iter().map(|(arcs, kind)| DeltaCrossing { kind, arcs }).collect())
        .expect("rules preserve validity")
}

fn to_triple_diagram(code: Vec<([Arc; 6], Roles)>) -> TripleDiagram {
    if code.is_empty() {
        return TripleDiagram::empty();
    }
    let (t, r): (Vec<_>, Vec<_>) = code.into_iter().unzip();
    TripleDiagram::new(ShadowProjection::new(t).expect("rules preserve validity"), r).expect("rules preserve validity")
}

/// Replaces every delta-crossing by two triple-crossings.
pub fn delta_to_triples(d: &DeltaDiagram) -> TripleDiagram {
    let d = d.normalized();
    let mut fresh = 3 * d.n() as Arc;
    let mut verts = Vec::with_capacity(2 * d.n());
    for c in d.crossings() {
        let (tpl, roles) = delta_rule(c.kind);
        verts.extend(instantiate(tpl, &roles, &c.arcs, &mut fresh));
    }
    to_triple_diagram(canonicalize(verts))
}

fn naive_vertex(t: [Arc; 6], r: Roles, fresh: &mut Arc) -> Vec<([Arc; 6], DeltaType)> {
    let (tpl, kinds) = triple_rule(r);
    instantiate(tpl, &kinds, &t, fresh)
}

/// Replaces every triple-crossing by two delta-crossings.
pub fn triple_to_deltas_naive(d: &TripleDiagram) -> DeltaDiagram {
    let mut fresh = 3 * d.n() as Arc;
    let mut verts = Vec::with_capacity(2 * d.n());
    for (&t, &r) in d.base().points().iter().zip(d.roles()) {
        verts.extend(naive_vertex(t, r, &mut fresh));
    }
    to_delta_diagram(canonicalize(verts))
}

enum SiteResult {
    Deltas(Vec<([Arc; 6], DeltaType)>, RuleId),
    Joins(Vec<(Arc, Arc)>, RuleId),
}

fn resolve_site(d: &TripleDiagram, e: &TangleEmbedding, fresh: &mut Arc) -> Option<SiteResult> {
    let pts = d.base().points();
    match e.kind {
        TangleKind::T1 => {
            let v = e.vertices[0];
            let j = e.rotations[0];
            let (t, r) = (pts[v], d.roles()[v]);
            Some(match loop_rule(j, r) {
                Some(kind) => SiteResult::Deltas(vec![(t, kind)], RuleId::LoopToDelta),
                None => SiteResult::Joins(
                    vec![(t[(j + 3) % 6], t[(j + 4) % 6]), (t[(j + 2) % 6], t[(j + 5) % 6])],
                    RuleId::LoopUntwisted,
                ),
            })
        }
        TangleKind::T2 => {
            let (u, w) = (e.vertices[0], e.vertices[1]);
            let (i, j) = (e.rotations[0], e.rotations[1]);
            let tu = rotate_tuple(pts[u], i);
            let tw = rotate_tuple(pts[w], j);
            let ru = d.roles()[u].rotate(i);
            let rw = d.roles()[w].rotate(j);
            let ext = [tu[3], tu[4], tu[5], tw[1], tw[2], tw[3]];
            Some(match bond_rule(ru, rw)? {
                BondReplacement::Deltas(tpl, kinds) => {
                    SiteResult::Deltas(instantiate(tpl, kinds, &ext, fresh), RuleId::BondToDeltas(kinds.len()))
                }
                BondReplacement::Straight => {
                    SiteResult::Joins(vec![(ext[0], ext[5]), (ext[1], ext[4]), (ext[2], ext[3])], RuleId::BondStraightened)
                }
            })
        }
        _ => unreachable!("only loop and bond tangles are resolved"),
    }
}

/// Replaces triple-crossings by delta-crossings, using the loop and bond
/// tangles chosen by [`max_disjoint_counts`] to save crossings; all other
/// triple-crossings use the two-delta rule. A tangle is skipped when its
/// replacement would leave a free loop or split the diagram, which only
/// happens for links.
pub fn triple_to_deltas_optimized(d: &TripleDiagram) -> (DeltaDiagram, ResolutionReport) {
    let counts = max_disjoint_counts(&d.base().planar_map());
    let mut fresh = 3 * d.n() as Arc;
    let sites: Vec<(&TangleEmbedding, SiteResult)> = counts
        .selected
        .iter()
        .filter(|e| matches!(e.kind, TangleKind::T1 | TangleKind::T2))
        .filter_map(|e| resolve_site(d, e, &mut fresh).map(|r| (e, r)))
        .collect();
    let naive: Vec<Vec<([Arc; 6], DeltaType)>> =
        d.base().points().iter().zip(d.roles()).map(|(&t, &r)| naive_vertex(t, r, &mut fresh)).collect();

    let realize = |accepted: &[usize]| -> Option<Vec<([Arc; 6], DeltaType)>> {
        let mut covered = vec![false; d.n()];
        let mut verts = Vec::new();
        let mut joins = Vec::new();
        for &i in accepted {
            let (e, res) = &sites[i];
            for &v in &e.vertices {
                covered[v] = true;
            }
            match res {
                SiteResult::Deltas(v, _) => verts.extend(v.iter().copied()),
                SiteResult::Joins(j, _) => joins.extend(j.iter().copied()),
            }
        }
        for (_, nv) in naive.iter().enumerate().filter(|(v, _)| !covered[*v]) {
            verts.extend(nv.iter().copied());
        }
        let (merged, loops) = merge(&verts, &joins);
        // a knot may untwist completely into one crossingless strand
        let ok = match loops {
            0 => connected_pieces(&merged.iter().map(|(t, _)| *t).collect::<Vec<_>>()) <= 1,
            1 => merged.is_empty(),
            _ => false,
        };
        ok.then_some(merged)
    };
    let mut accepted = Vec::new();
    for i in 0..sites.len() {
        accepted.push(i);
        if realize(&accepted).is_none() {
            accepted.pop();
        }
    }
    let code = realize(&accepted).expect("the two-delta resolution is always valid");
    let out = to_delta_diagram(canonicalize(code));

    let mut rules = Vec::new();
    let (mut t1, mut t2) = (0, 0);
    let mut covered = vec![false; d.n()];
    for &i in &accepted {
        let (e, res) = &sites[i];
        for &v in &e.vertices {
            covered[v] = true;
        }
        match e.kind {
            TangleKind::T1 => t1 += 1,
            _ => t2 += 1,
        }
        rules.push(match res {
            SiteResult::Deltas(_, id) | SiteResult::Joins(_, id) => id.clone(),
        });
    }
    for (v, &r) in d.roles().iter().enumerate() {
        if !covered[v] {
            rules.push(RuleId::TripleToDeltas(r));
        }
    }
    let report = ResolutionReport {
        input_kind: "triple",
        input_n: d.n(),
        output_kind: "delta",
        output_n: out.n(),
        t1,
        t2,
        rules,
    };
    (out, report)
}

/// `2n - t1 - t2` with the maximal disjoint tangle counts of the shadow.
pub fn delta_upper_bound(d: &TripleDiagram) -> usize {
    let c = max_disjoint_counts(&d.base().planar_map());
    2 * d.n() - c.t1 - c.t2
}

pub fn c3_upper_from_delta(c_delta: usize) -> usize {
    2 * c_delta
}

/// Loop rule lookup, exposed for tests.
pub fn loop_rule_for(j: usize, roles: Roles) -> Option<DeltaType> {
    loop_rule(j, roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::codec::{parse_dpd, parse_spd};
    use crate::diagram::ALL_DELTA_TYPES;
    use crate::invariants::homfly::homfly;
    use crate::resolve::{delta_to_classical, triple_to_classical};

    const PERMS: [Roles; 6] = [[To, Mi, Bo], [To, Bo, Mi], [Mi, To, Bo], [Mi, Bo, To], [Bo, To, Mi], [Bo, Mi, To]];

    #[test]
    fn single_delta_lifts_and_drops_back() {
        for kind in ALL_DELTA_TYPES {
            let d = parse_dpd(&format!("[{}, [1, 1, 2, 2, 3, 3]]", kind.letter())).unwrap();
            let p = homfly(&delta_to_classical(&d));
            let t = delta_to_triples(&d);
            assert_eq!(t.n(), 2);
            assert_eq!(homfly(&triple_to_classical(&t)), p, "{kind:?}");
            let (back, _) = triple_to_deltas_optimized(&t);
            assert_eq!(homfly(&delta_to_classical(&back)), p, "{kind:?}");
        }
    }

    #[test]
    fn loop_rule_keeps_a_delta_only_with_a_middle_third_strand() {
        for j in 0..6 {
            for r in PERMS {
                let third = r[(j + 2) % 3];
                assert_eq!(loop_rule(j, r).is_some(), third == Mi, "slot {j}, {r:?}");
            }
        }
    }

    #[test]
    fn every_bond_role_pair_preserves_homfly_on_the_theta_shadow() {
        let p = parse_spd("[[1,2,3,4,5,6],[1,6,5,4,3,2]]").unwrap();
        for a in PERMS {
            for b in PERMS {
                let d = TripleDiagram::new(p.clone(), vec![a, b]).unwrap();
                let (out, report) = triple_to_deltas_optimized(&d);
                assert!(out.n() + report.t1 + report.t2 <= 4);
                assert_eq!(homfly(&delta_to_classical(&out)), homfly(&triple_to_classical(&d)), "{a:?} {b:?}");
            }
        }
    }
}
