use std::path::PathBuf;

use deltaknot::diagram::codec::parse_dpd;
use deltaknot::identify::{identify_bounded, load_reference, MatchResult, ReferenceTable};
use deltaknot::invariants::knot_fingerprint;
use deltaknot::resolve::delta_to_classical;
use deltaknot::tabulate::{
    compare_row, dedupe_mirrors, emit_table1, emit_table2, enumerate_assignments, filter_knot_projections,
    parse_table1, read_tb, run_pipeline, FingerprintCache, Identification, PipelineConfig,
};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

#[test]
fn knot_projection_counts() {
    let counts: Vec<usize> = (2..=4).map(|n| filter_knot_projections(&read_tb(&data(""), n).unwrap()).len()).collect();
    assert_eq!(counts, [1, 5, 65]);
}

#[test]
fn rows_up_to_three_are_exact() {
    let table = load_reference(&data("reference/knots.csv")).unwrap();
    let cfg = PipelineConfig { tb_dir: data(""), max_n: 3 };
    let report = run_pipeline(&cfg, &table, &mut FingerprintCache::in_memory()).unwrap();
    let expected = parse_table1(&std::fs::read_to_string(data("tables/table1.txt")).unwrap());
    for (delta, count, names) in expected.iter().filter(|r| r.0 <= 3) {
        let cmp = compare_row(&report, *delta, names);
        assert!(cmp.exact(), "{cmp:?}");
        assert_eq!(report.unique_at(*delta).len(), *count);
    }
}

fn reference() -> ReferenceTable {
    load_reference(&data("reference/knots.csv")).unwrap()
}

fn run(max_n: usize, cache: &mut FingerprintCache) -> deltaknot::tabulate::TabulationReport {
    run_pipeline(&PipelineConfig { tb_dir: data(""), max_n }, &reference(), cache).unwrap()
}

#[test]
fn warm_cache_reproduces_the_report_without_recomputing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fp.cache");
    let mut cold = FingerprintCache::open(&path).unwrap();
    let first = run(3, &mut cold);
    let stored = cold.len();
    let bytes = std::fs::read(&path).unwrap();

    let mut warm = FingerprintCache::open(&path).unwrap();
    assert_eq!(warm.len(), stored);
    let second = run(3, &mut warm);
    assert_eq!(first, second);
    assert_eq!(std::fs::read(&path).unwrap(), bytes, "nothing recomputed or appended");
    assert_eq!(emit_table1(&first), emit_table1(&second));
    assert_eq!(emit_table2(&first, 3), emit_table2(&second, 3));
    assert_eq!(first, run(3, &mut FingerprintCache::in_memory()));
}

#[test]
fn knots_never_appear_below_their_level() {
    let full = run(4, &mut FingerprintCache::in_memory());
    for k in 2..=4 {
        let lower = run(k - 1, &mut FingerprintCache::in_memory());
        // a class may hold a lower knot that shares its fingerprint
        for name in full.unique_at(k) {
            assert!(lower.knots.iter().all(|e| !e.names.iter().any(|m| m == name)), "{name} found below {k}");
        }
    }
}

#[test]
fn witnesses_reidentify_to_their_knots() {
    let table = reference();
    let r = run(4, &mut FingerprintCache::in_memory());
    for e in &r.knots {
        let d = parse_dpd(&e.witness).unwrap();
        assert_eq!(d.n(), e.delta);
        let f = knot_fingerprint(&delta_to_classical(&d)).unwrap();
        match (identify_bounded(&f, &table, 3 * e.delta), e.identification) {
            (MatchResult::Unique { name, .. }, Identification::Unique) => assert_eq!(name, e.names[0]),
            (MatchResult::Ambiguous(names), Identification::Ambiguous) => assert_eq!(names, e.names),
            (other, _) => panic!("{}: {other:?}", e.label()),
        }
    }
}

#[test]
fn mirrored_inputs_identify_to_the_same_knots() {
    let table = reference();
    let names = |mirror: bool| {
        let mut out = Vec::new();
        for p in filter_knot_projections(&read_tb(&data(""), 3).unwrap()) {
            for d in dedupe_mirrors(&enumerate_assignments(&p)) {
                let d = if mirror { d.mirror() } else { d };
                let f = knot_fingerprint(&delta_to_classical(&d)).unwrap();
                out.push(identify_bounded(&f, &table, 9).label());
            }
        }
        out.sort();
        out
    };
    assert_eq!(names(false), names(true));
}
