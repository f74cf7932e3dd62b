//! One test per acceptance criterion. Each prints a single summary line
//! with its measured runtime and fails when a check or a runtime limit is
//! not met.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use deltaknot::checks::{check_existence, check_resolutions, read_projection_dir};
use deltaknot::diagram::codec::parse_dpd;
use deltaknot::identify::{identify, is_composite_name, load_reference, MatchResult, ReferenceTable};
use deltaknot::invariants::homfly::{alexander_from_homfly, jones_from_homfly};
use deltaknot::invariants::{fingerprint, knot_fingerprint};
use deltaknot::resolve::{c3_upper_from_delta, delta_to_classical, delta_to_triples, triple_to_classical};
use deltaknot::tabulate::{
    compare_row, emit_identifications, enumerate_assignments, filter_knot_projections, parse_table1, parse_table2,
    read_tb, run_pipeline, FingerprintCache, Identification, PipelineConfig, TabulationReport,
};
use deltaknot::ClassicalDiagram;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: u32, t: Instant, limit: Duration, detail: &str) {
    let e = t.elapsed();
    eprintln!("criterion {criterion}: {detail} [{:.2}s, limit {}s]", e.as_secs_f64(), limit.as_secs());
    assert!(e < limit, "criterion {criterion} over its time limit");
}

fn reference() -> ReferenceTable {
    load_reference(&data("reference/knots.csv")).unwrap()
}

fn table1() -> Vec<(usize, usize, Vec<String>)> {
    parse_table1(&std::fs::read_to_string(data("tables/table1.txt")).unwrap())
}

fn table2() -> Vec<(String, String)> {
    parse_table2(&std::fs::read_to_string(data("tables/table2.txt")).unwrap())
}

fn pipeline(max_n: usize) -> TabulationReport {
    let cfg = PipelineConfig { tb_dir: data(""), max_n };
    run_pipeline(&cfg, &reference(), &mut FingerprintCache::in_memory()).unwrap()
}

fn knot_projections() -> Vec<deltaknot::ShadowProjection> {
    (2..=4).flat_map(|n| filter_knot_projections(&read_tb(&data(""), n).unwrap())).collect()
}

#[test]
fn criterion_1_table2_round_trip() {
    let t = Instant::now();
    let table = reference().restricted(9);
    let rows = table2();
    assert_eq!(rows.len(), 26);
    for (name, code) in &rows {
        let d = parse_dpd(code).unwrap();
        let f = knot_fingerprint(&delta_to_classical(&d)).unwrap();
        match identify(&f, &table) {
            MatchResult::Unique { name: got, .. } => assert_eq!(&got, name),
            other => panic!("{name}: {other:?}"),
        }
    }
    report(1, t, Duration::from_secs(10), "26 codes identify uniquely to their knots");
}

#[test]
fn criterion_2_table1_rows_one_to_three() {
    let t = Instant::now();
    let r = pipeline(3);
    for (delta, count, names) in table1().into_iter().filter(|row| row.0 <= 3) {
        let got: BTreeSet<&str> = r.unique_at(delta).into_iter().collect();
        let want: BTreeSet<&str> = names.iter().map(String::as_str).collect();
        assert_eq!(got, want, "row {delta}");
        assert_eq!(got.len(), count);
        assert!(r.classes_at(delta).is_empty(), "row {delta} has ambiguity classes");
    }
    assert_eq!(r.unique_at(1), ["3a1"]);
    assert_eq!(r.unique_at(2), ["4a1", "5a1", "5a2", "6a1"]);
    assert_eq!(r.unique_at(3).len(), 21);
    report(2, t, Duration::from_secs(120), "rows 1, 2, 3 match exactly (1, 4, 21 knots)");
}

#[test]
fn criterion_3_projection_and_diagram_counts() {
    let t = Instant::now();
    let counts: Vec<usize> = (2..=4).map(|n| filter_knot_projections(&read_tb(&data(""), n).unwrap()).len()).collect();
    assert_eq!(counts, [1, 5, 65]);
    let total: usize = knot_projections().iter().map(|p| enumerate_assignments(p).len()).sum();
    assert_eq!(total, 16976);
    report(3, t, Duration::from_secs(60), "1, 5, 65 knot projections; 16976 diagrams");
}

#[test]
fn criterion_4_tangle_existence_and_face_identity() {
    let t = Instant::now();
    let ps = knot_projections();
    assert_eq!(ps.len(), 71);
    let s = check_existence(&ps);
    assert!(s.passed(), "{s:?}");
    report(4, t, Duration::from_secs(30), "71 projections contain a tangle; face identity residual 0");
}

#[test]
fn criterion_5_deltas_lift_to_twice_as_many_triple_crossings() {
    let t = Instant::now();
    for (name, code) in table2() {
        let d = parse_dpd(&code).unwrap();
        let lifted = delta_to_triples(&d);
        assert_eq!(lifted.n(), 2 * d.n(), "{name}");
        assert_eq!(
            knot_fingerprint(&triple_to_classical(&lifted)).unwrap(),
            knot_fingerprint(&delta_to_classical(&d)).unwrap(),
            "{name}"
        );
        if ["9a5", "9a13", "9a16"].contains(&name.as_str()) {
            assert_eq!(d.n(), 3);
            assert_eq!(lifted.n(), c3_upper_from_delta(3));
        }
    }
    assert_eq!(c3_upper_from_delta(3), 6);
    report(5, t, Duration::from_secs(60), "26 lifts have 2k triple crossings; 9a5, 9a13, 9a16 get 6");
}

#[test]
fn criterion_6_resolution_bounds_on_all_projection_data() {
    let t = Instant::now();
    let ps: Vec<_> =
        (1..=4).flat_map(|n| filter_knot_projections(&read_projection_dir(&data(&format!("tb{n}"))).unwrap())).collect();
    let s = check_resolutions(&ps);
    assert_eq!(s.checked, 6 + 36 + 5 * 216 + 65 * 1296);
    assert!(s.failures.is_empty(), "{:#?}", &s.failures[..s.failures.len().min(5)]);
    report(
        6,
        t,
        Duration::from_secs(600),
        &format!("{} triple diagrams within 2n - t1 - t2, naive exactly 2n, {} deltas saved", s.checked, s.saved),
    );
}

#[test]
fn criterion_7_table1_row_four_up_to_collision_classes() {
    let t = Instant::now();
    let table = reference();
    let r = pipeline(4);
    let row = table1().into_iter().find(|row| row.0 == 4).unwrap();
    assert_eq!(row.1, 320);
    let cmp = compare_row(&r, 4, &row.2);
    assert!(cmp.is_consistent(), "{cmp:#?}");
    // every class is a set of knots the invariants cannot tell apart
    for c in r.classes_at(4) {
        let keys: BTreeSet<_> = c
            .names
            .iter()
            .filter(|n| !is_composite_name(n))
            .map(|n| table.get(n).unwrap().fingerprint.mirror_key())
            .collect();
        assert!(keys.len() <= 1, "{}", c.label());
        assert!(c.names.len() > 1);
    }
    // each knot is reported with its identification status
    let listing = emit_identifications(&r);
    for k in r.knots.iter().filter(|k| k.delta == 4) {
        let status = match k.identification {
            Identification::Unique => "Unique",
            Identification::Ambiguous => "Ambiguous",
        };
        assert!(listing.contains(&format!("4\t{}\t{status}\t", k.label())));
    }
    report(
        7,
        t,
        Duration::from_secs(3600),
        &format!(
            "{} unique, {} listed knots only through {} collision classes, none missing",
            r.unique_at(4).len(),
            cmp.via_classes.len(),
            r.classes_at(4).len()
        ),
    );
}

#[test]
fn criterion_8_invariant_properties() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let mut b = random_knot_braid(&mut rng, 10);
        let d = b.closure();
        assert!(d.n() <= 10);
        let f = fingerprint(&d).unwrap();
        assert_eq!(jones_from_homfly(&f.homfly), f.jones);
        assert_eq!(alexander_from_homfly(&f.homfly), f.alexander);
        assert_eq!(normalized_alexander(&f.alexander), alexander_by_matrix(&d));
        for _ in 0..rng.gen_range(1..=8) {
            random_braid_move(&mut rng, &mut b);
        }
        let mut tuples = b.closure_tuples();
        for _ in 0..rng.gen_range(0..=3) {
            insert_kink(&mut rng, &mut tuples);
        }
        shuffle_labels(&mut rng, &mut tuples);
        assert_eq!(fingerprint(&ClassicalDiagram::from_unsigned(tuples).unwrap()).unwrap(), f, "{b:?}");
    }
    let pd = |name: &str| {
        let text = std::fs::read_to_string(data("reference/knots_pd.tsv")).unwrap();
        let line = text.lines().find(|l| l.split('\t').next() == Some(name)).unwrap().to_string();
        deltaknot::diagram::codec::parse_pd(line.split('\t').nth(1).unwrap()).unwrap()
    };
    let fig8 = fingerprint(&pd("4a1")).unwrap();
    assert_eq!(fingerprint(&pd("4a1").mirror()).unwrap(), fig8);
    let trefoil = fingerprint(&pd("3a1")).unwrap();
    assert_ne!(fingerprint(&pd("3a1").mirror()).unwrap(), trefoil);
    report(8, t, Duration::from_secs(300), "200 random knots invariant under moves; 4a1 amphichiral, 3a1 chiral");
}
