mod common;

use common::data;
use deltaknot::checks::read_projection_dir;
use deltaknot::tangles::{detect_all, detect_pattern, select_disjoint, TangleEmbedding, TangleKind, TemplateSet};
use deltaknot::ShadowProjection;
use itertools::Itertools;

fn all_projections() -> Vec<ShadowProjection> {
    (1..=4).flat_map(|n| read_projection_dir(&data(&format!("tb{n}"))).unwrap()).collect()
}

/// Largest number of pairwise vertex-disjoint loops and bonds, by trying
/// every subset of candidates.
fn brute_force_loops_and_bonds(n: usize, cands: &[TangleEmbedding]) -> usize {
    let cs: Vec<&TangleEmbedding> =
        cands.iter().filter(|e| matches!(e.kind, TangleKind::T1 | TangleKind::T2)).collect();
    assert!(cs.len() < 24);
    let mut best = 0;
    for mask in 0u32..1 << cs.len() {
        let mut used = vec![false; n];
        let ok = (0..cs.len()).filter(|i| mask >> i & 1 == 1).all(|i| {
            cs[i].vertices.iter().all(|&v| !std::mem::replace(&mut used[v], true))
        });
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

#[test]
fn shadow_counts_follow_from_six_valence_and_euler() {
    for p in all_projections() {
        let m = p.planar_map();
        let n = p.n();
        assert_eq!(m.edge_count(), 3 * n);
        if p.components() == 1 || m.euler_characteristic() == 2 {
            assert_eq!(m.face_count(), 2 * n + 2);
        }
    }
}

#[test]
fn loops_are_exactly_monogons() {
    for p in all_projections() {
        let m = p.planar_map();
        assert_eq!(detect_pattern(&m, TangleKind::T1).is_empty(), m.f(1) == 0);
    }
}

#[test]
fn selection_is_exact_disjoint_and_monotone() {
    let kinds = [TangleKind::T1, TangleKind::T2, TangleKind::T3, TangleKind::T4];
    for p in all_projections() {
        let m = p.planar_map();
        let cands = detect_all(&m, TemplateSet::builtin());
        let full = select_disjoint(p.n(), &cands);
        let mut seen = vec![false; p.n()];
        for e in &full.selected {
            for &v in &e.vertices {
                assert!(!std::mem::replace(&mut seen[v], true), "overlapping selection");
            }
        }
        assert_eq!(full.t1 + full.t2, brute_force_loops_and_bonds(p.n(), &cands));
        for keep in kinds.iter().powerset() {
            let sub: Vec<TangleEmbedding> = cands.iter().filter(|e| keep.contains(&&e.kind)).cloned().collect();
            let s = select_disjoint(p.n(), &sub);
            assert!(s.objective() <= full.objective());
            assert!(s.t1 + s.t2 <= full.t1 + full.t2);
        }
    }
}

#[test]
fn crowded_faces_have_three_bigons_in_a_row() {
    let mut flagged = 0;
    for p in all_projections() {
        let m = p.planar_map();
        let r = deltaknot::tangles::face_identity_report(&m);
        for f in r.faces.iter().filter(|f| f.flagged) {
            flagged += 1;
            let darts = &m.faces()[f.face];
            let bigon: Vec<bool> = darts
                .iter()
                .map(|&d| {
                    let (a, b) = m.edge_faces(d);
                    m.face_len(if a == f.face { b } else { a }) == 2
                })
                .collect();
            let k = bigon.len();
            assert!((0..k).any(|i| bigon[i] && bigon[(i + 1) % k] && bigon[(i + 2) % k]), "{f:?}");
        }
    }
    assert!(flagged > 0);
}
