use std::path::PathBuf;

use deltaknot::checks::{check_resolutions, read_projection_dir};
use deltaknot::diagram::codec::{emit_dpd, emit_tpd, parse_dpd, parse_tpd};
use deltaknot::diagram::ALL_DELTA_TYPES;
use deltaknot::invariants::{fingerprint, knot_fingerprint};
use deltaknot::resolve::{
    delta_to_classical, delta_to_triples, triple_to_classical, triple_to_deltas_naive, triple_to_deltas_optimized,
};
use deltaknot::{DeltaCrossing, DeltaDiagram, ShadowProjection};
use proptest::prelude::*;
use deltaknot::tabulate::filter_knot_projections;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

#[test]
fn both_resolutions_preserve_the_knot_on_small_projections() {
    let mut ps = Vec::new();
    for n in 1..=3 {
        ps.extend(filter_knot_projections(&read_projection_dir(&data(&format!("tb{n}"))).unwrap()));
    }
    let s = check_resolutions(&ps);
    assert_eq!(s.checked, 6 + 36 + 5 * 216);
    assert!(s.failures.is_empty(), "{:#?}", &s.failures[..s.failures.len().min(5)]);
    assert!(s.saved > 0);
}

#[test]
fn both_resolutions_preserve_links_too() {
    let mut ps = Vec::new();
    for n in 1..=3 {
        ps.extend(read_projection_dir(&data(&format!("tb{n}"))).unwrap().into_iter().filter(|p| p.components() > 1));
    }
    let s = check_resolutions(&ps);
    assert!(s.checked > 1000);
    // A link may untwist into a split diagram, which delta diagrams cannot
    // represent; such tangles are skipped and the bound can be missed.
    for f in &s.failures {
        assert!(f.preserved && f.naive == 2 * f.n, "{f:?}");
        let d = parse_tpd(&f.code).unwrap();
        let (_, report) = triple_to_deltas_optimized(&d);
        assert!(report.t1 + report.t2 < f.t1 + f.t2, "{f:?}");
    }
}

#[test]
fn minimal_diagrams_survive_a_trip_through_triple_crossings() {
    let text = std::fs::read_to_string(data("tables/table2.txt")).unwrap();
    for (name, code) in deltaknot::tabulate::parse_table2(&text) {
        let d = parse_dpd(&code).unwrap();
        let f = knot_fingerprint(&delta_to_classical(&d)).unwrap();
        let triples = delta_to_triples(&d);
        assert_eq!(triples.n(), 2 * d.n());
        let (back, report) = triple_to_deltas_optimized(&triples);
        assert!(back.n() + report.t1 + report.t2 <= 2 * triples.n(), "{name}");
        assert_eq!(knot_fingerprint(&delta_to_classical(&back)).unwrap(), f, "{name}");
        assert_eq!(knot_fingerprint(&delta_to_classical(&triple_to_deltas_naive(&triples))).unwrap(), f, "{name}");
    }
}

fn delta_diagram() -> impl Strategy<Value = DeltaDiagram> {
    let shadows: Vec<ShadowProjection> =
        (1..=3).flat_map(|n| read_projection_dir(&data(&format!("tb{n}"))).unwrap()).collect();
    prop::sample::select(shadows).prop_flat_map(|p| {
        let n = p.n();
        prop::collection::vec(prop::sample::select(ALL_DELTA_TYPES.to_vec()), n).prop_map(move |kinds| {
            let crossings =
                p.points().iter().zip(kinds).map(|(&arcs, kind)| DeltaCrossing { kind, arcs }).collect();
            DeltaDiagram::new(crossings).unwrap().normalized()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn codes_round_trip(d in delta_diagram()) {
        let text = emit_dpd(&d);
        prop_assert_eq!(emit_dpd(&parse_dpd(&text).unwrap()), text);
        let t = delta_to_triples(&d);
        prop_assert_eq!(emit_tpd(&parse_tpd(&emit_tpd(&t)).unwrap()), emit_tpd(&t));
    }

    #[test]
    fn resolutions_preserve_fingerprints(d in delta_diagram()) {
        let f = fingerprint(&delta_to_classical(&d)).unwrap();
        let t = delta_to_triples(&d);
        prop_assert_eq!(&fingerprint(&triple_to_classical(&t)).unwrap(), &f);
        let (opt, _) = triple_to_deltas_optimized(&t);
        prop_assert_eq!(&fingerprint(&delta_to_classical(&opt)).unwrap(), &f);
        prop_assert_eq!(&fingerprint(&delta_to_classical(&d.mirror())).unwrap(), &f.mirror());
    }
}
