//! Natural orientations of six-valent diagrams and sign inference for
//! unsigned classical codes.

use std::collections::{HashMap, VecDeque};

use super::{Arc, PlanarMap, Sign};
use crate::error::{DiagramError, Result};

/// Orientation in which the ends at every six-valent vertex alternate
/// in, out, in, out, in, out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalOrientation {
    incoming_even: Vec<bool>,
    heads: HashMap<Arc, (usize, usize)>,
}

/// Two-colours darts (true = incoming) so that both ends of an edge differ
/// and `d` differs from `neighbour(d)`. `seeds` pins colours; an unpinned
/// piece takes its colour from `fallback` at its first dart.
fn two_colour(map: &PlanarMap, neighbour: impl Fn(usize) -> usize, seeds: impl Fn(usize) -> Option<bool>, fallback: impl Fn(usize) -> bool) -> Result<Vec<bool>> {
    let n = map.dart_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut order: Vec<usize> = (0..n).filter(|&d| seeds(d).is_some()).collect();
    order.extend((0..n).filter(|&d| seeds(d).is_none()));
    for start in order {
        if colour[start].is_some() {
            continue;
        }
        let c0 = seeds(start).unwrap_or_else(|| fallback(start));
        colour[start] = Some(c0);
        let mut queue = VecDeque::from([start]);
        while let Some(d) = queue.pop_front() {
            let c = colour[d].unwrap();
            for e in [map.alpha(d), neighbour(d)] {
                match colour[e] {
                    None => {
                        if let Some(s) = seeds(e) {
                            if s == c {
                                return Err(DiagramError::NotOrientable(format!("conflict at dart {e}")));
                            }
                        }
                        colour[e] = Some(!c);
                        queue.push_back(e);
                    }
                    Some(x) if x == c => {
                        return Err(DiagramError::NotOrientable(format!(
                            "ends {d} and {e} at vertices {} and {} cannot alternate",
                            map.vertex_of(d),
                            map.vertex_of(e)
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(colour.into_iter().map(|c| c.unwrap()).collect())
}

impl NaturalOrientation {
    /// Orients a six-valent vertex system; the first vertex of each
    /// connected piece gets incoming even slots.
    pub fn of_tuples(tuples: &[[Arc; 6]]) -> Result<NaturalOrientation> {
        let map = PlanarMap::from_tuples(tuples);
        let incoming = two_colour(
            &map,
            |d| map.sigma(d),
            |_| None,
            |d| map.slot_of(d).is_multiple_of(2),
        )?;
        let incoming_even = (0..map.vertex_count()).map(|v| incoming[map.dart(v, 0)]).collect();
        let mut heads = HashMap::new();
        for d in 0..map.dart_count() {
            if incoming[d] {
                heads.insert(map.label(d), (map.vertex_of(d), map.slot_of(d)));
            }
        }
        Ok(NaturalOrientation { incoming_even, heads })
    }

    pub fn even_slots_incoming(&self, v: usize) -> bool {
        self.incoming_even[v]
    }

    pub fn is_incoming(&self, v: usize, slot: usize) -> bool {
        self.incoming_even[v] == slot.is_multiple_of(2)
    }

    /// Vertex and slot where the arc ends.
    pub fn head(&self, arc: Arc) -> Option<(usize, usize)> {
        self.heads.get(&arc).copied()
    }
}

/// Signs for unsigned crossings `[a, b, c, d]` with `a` the incoming
/// under-strand.
pub(crate) fn infer_signs(tuples: &[[Arc; 4]]) -> Result<Vec<Sign>> {
    let map = PlanarMap::from_tuples(tuples);
    let seeds = |d: usize| match map.slot_of(d) {
        0 => Some(true),
        2 => Some(false),
        _ => None,
    };
    let fallback = |d: usize| {
        let v = map.vertex_of(d);
        let [_, b, _, dd] = tuples[v];
        // With labels increasing along the strand, d flows into b.
        let d_in = b == dd + 1 || dd > b + 1;
        (map.slot_of(d) == 3) == d_in
    };
    let incoming = two_colour(&map, |d| map.opposite(d), seeds, fallback)?;
    Ok((0..tuples.len())
        .map(|v| if incoming[map.dart(v, 3)] { Sign::Positive } else { Sign::Negative })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_signs_from_labels() {
        let s = infer_signs(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).unwrap();
        assert_eq!(s, vec![Sign::Positive; 3]);
        let s = infer_signs(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        assert_eq!(s, vec![Sign::Negative; 3]);
    }

    #[test]
    fn single_delta_orients() {
        let o = NaturalOrientation::of_tuples(&[[1, 3, 3, 2, 2, 1]]).unwrap();
        assert!(o.even_slots_incoming(0));
        assert_eq!(o.head(1), Some((0, 0)));
    }

    #[test]
    fn loop_between_same_parity_slots_fails() {
        assert!(NaturalOrientation::of_tuples(&[[1, 2, 1, 3, 3, 2]]).is_err());
    }
}
