mod common;

use common::*;
use deltaknot::diagram::codec::parse_pd;
use deltaknot::identify::{identify, load_reference, MatchResult};
use deltaknot::invariants::bracket::{jones_from_bracket, kauffman_bracket};
use deltaknot::invariants::homfly::{alexander_from_homfly, homfly, jones_from_homfly};
use deltaknot::invariants::{fingerprint, knot_fingerprint};
use deltaknot::ClassicalDiagram;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reference_pds() -> Vec<(String, ClassicalDiagram)> {
    std::fs::read_to_string(data("reference/knots_pd.tsv"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, pd) = l.split_once('\t').unwrap();
            (name.to_string(), parse_pd(pd).unwrap())
        })
        .collect()
}

#[test]
fn reference_diagrams_identify_to_their_own_names() {
    let table = load_reference(&data("reference/knots.csv")).unwrap();
    let mut bad = Vec::new();
    for (name, d) in reference_pds() {
        match identify(&knot_fingerprint(&d).unwrap(), &table) {
            MatchResult::Unique { name: got, .. } if got == name => {}
            MatchResult::Ambiguous(names) if names.contains(&name) => {}
            other => bad.push(format!("{name}: {other:?}")),
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn bracket_agrees_with_state_sum() {
    for (name, d) in reference_pds().into_iter().filter(|(_, d)| d.n() <= 10) {
        assert_eq!(kauffman_bracket(&d), state_sum_bracket(&d), "{name}");
    }
}

#[test]
fn alexander_agrees_with_alexander_matrix() {
    for (name, d) in reference_pds() {
        let from_homfly = normalized_alexander(&alexander_from_homfly(&homfly(&d)));
        assert_eq!(from_homfly, alexander_by_matrix(&d), "{name}");
    }
}

#[test]
fn figure_eight_is_its_own_mirror_and_trefoil_is_not() {
    let table = reference_pds();
    let get = |n: &str| table.iter().find(|(name, _)| name == n).unwrap().1.clone();
    let f = fingerprint(&get("4a1")).unwrap();
    assert_eq!(fingerprint(&get("4a1").mirror()).unwrap(), f);
    assert_eq!(f.mirror(), f);
    let t = fingerprint(&get("3a1")).unwrap();
    let tm = fingerprint(&get("3a1").mirror()).unwrap();
    assert_ne!(t, tm);
    assert_ne!(t.homfly, tm.homfly);
    assert_ne!(t.jones, tm.jones);
    assert_eq!(tm, t.mirror());
}

#[test]
fn random_reidemeister_moves_preserve_all_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let mut b = random_knot_braid(&mut rng, 10);
        let d = b.closure();
        let before = fingerprint(&d).unwrap();
        assert_eq!(jones_from_homfly(&before.homfly), before.jones);
        assert_eq!(normalized_alexander(&before.alexander), alexander_by_matrix(&d));

        for _ in 0..rand::Rng::gen_range(&mut rng, 1..=6) {
            random_braid_move(&mut rng, &mut b);
        }
        let mut t = b.closure_tuples();
        for _ in 0..rand::Rng::gen_range(&mut rng, 0..=2) {
            insert_kink(&mut rng, &mut t);
        }
        shuffle_labels(&mut rng, &mut t);
        let moved = ClassicalDiagram::from_unsigned(t).unwrap();
        let after = fingerprint(&moved).unwrap();
        assert_eq!(before, after, "{b:?}");
        assert_eq!(jones_from_homfly(&after.homfly), jones_from_bracket(&moved));
    }
}

fn braid_strategy() -> impl Strategy<Value = Braid> {
    (2usize..=4)
        .prop_flat_map(|s| {
            let g = (1..s as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            (Just(s), prop::collection::vec(g, 1..=9))
        })
        .prop_map(|(strands, word)| Braid { strands, word })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirroring_acts_on_fingerprints(b in braid_strategy()) {
        let d = b.closure();
        let f = fingerprint(&d).unwrap();
        prop_assert_eq!(fingerprint(&d.mirror()).unwrap(), f.mirror());
        prop_assert_eq!(f.mirror().mirror(), f);
    }

    #[test]
    fn specializations_match_direct_computations(b in braid_strategy()) {
        let d = b.closure();
        let h = homfly(&d);
        prop_assert_eq!(jones_from_homfly(&h), jones_from_bracket(&d));
        prop_assert_eq!(kauffman_bracket(&d), state_sum_bracket(&d));
        if d.components() == 1 {
            prop_assert_eq!(normalized_alexander(&alexander_from_homfly(&h)), alexander_by_matrix(&d));
        }
    }

    #[test]
    fn relabelling_changes_nothing(b in braid_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = b.closure_tuples();
        let f = fingerprint(&b.closure()).unwrap();
        shuffle_labels(&mut rng, &mut t);
        prop_assert_eq!(fingerprint(&ClassicalDiagram::from_unsigned(t).unwrap()).unwrap(), f);
    }
}
