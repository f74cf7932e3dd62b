use std::path::PathBuf;

use deltaknot::diagram::codec::parse_dpd;
use deltaknot::identify::{identify, load_reference, MatchResult};
use deltaknot::invariants::knot_fingerprint;
use deltaknot::resolve::delta_to_classical;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

#[test]
fn minimal_diagrams_identify_to_their_knots() {
    let table = load_reference(&data("reference/knots.csv")).unwrap().restricted(9);
    let text = std::fs::read_to_string(data("tables/table2.txt")).unwrap();
    let mut bad = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (name, code) = line.split_once('\t').unwrap();
        let d = parse_dpd(code).unwrap();
        let f = knot_fingerprint(&delta_to_classical(&d)).unwrap();
        match identify(&f, &table) {
            MatchResult::Unique { name: got, .. } if got == name => {}
            other => bad.push(format!("{name}: {other:?}")),
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}
