//! Conversions between delta-crossing, triple-crossing and classical
//! diagrams.

mod bond_table;
pub mod local;
pub mod rules;

use crate::diagram::{Arc, ClassicalDiagram, DeltaDiagram, TripleDiagram};

pub use local::{expand_delta, expand_triple, Arrangement, Chirality};
pub use rules::{
    c3_upper_from_delta, delta_to_triples, delta_upper_bound, triple_to_deltas_naive, triple_to_deltas_optimized,
    ResolutionReport, RuleId,
};

/// Classical diagram with three crossings per delta-crossing.
pub fn delta_to_classical(d: &DeltaDiagram) -> ClassicalDiagram {
    let d = if d.is_normalized() { d.clone() } else { d.normalized() };
    let mut next = 3 * d.n() as Arc;
    let mut crossings = Vec::with_capacity(3 * d.n());
    for c in d.crossings() {
        let internal = [next + 1, next + 2, next + 3];
        next += 3;
        crossings.extend(expand_delta(c.kind, c.arcs, internal));
    }
    ClassicalDiagram::from_parts_unchecked(crossings)
}

/// Classical diagram with three crossings per triple point, stacked by
/// the roles.
pub fn triple_to_classical(d: &TripleDiagram) -> ClassicalDiagram {
    let o = d.natural_orientation().expect("validated triple diagram is orientable");
    let mut next = 3 * d.n() as Arc;
    let mut crossings = Vec::with_capacity(3 * d.n());
    for (v, (t, r)) in d.base().points().iter().zip(d.roles()).enumerate() {
        let internal = [next + 1, next + 2, next + 3];
        next += 3;
        crossings.extend(expand_triple(*r, *t, o.even_slots_incoming(v), internal));
    }
    ClassicalDiagram::from_parts_unchecked(crossings)
}
