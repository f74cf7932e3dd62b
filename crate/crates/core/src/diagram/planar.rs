//! Rotation-system view of a diagram: darts, faces and face vectors.

use std::collections::{BTreeMap, HashMap};

use super::Arc;

/// A map given by a rotation system. Dart `d` is one end of an edge; darts
/// of a vertex are numbered consecutively in counterclockwise order.
#[derive(Clone, Debug)]
pub struct PlanarMap {
    offsets: Vec<usize>,
    dart_vertex: Vec<usize>,
    alpha: Vec<usize>,
    labels: Vec<Arc>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl PlanarMap {
    pub fn from_tuples<T: AsRef<[Arc]>>(tuples: &[T]) -> PlanarMap {
        let mut offsets = vec![0];
        let mut dart_vertex = Vec::new();
        let mut labels = Vec::new();
        for (v, t) in tuples.iter().enumerate() {
            for &a in t.as_ref() {
                dart_vertex.push(v);
                labels.push(a);
            }
            offsets.push(labels.len());
        }
        let mut first: HashMap<Arc, usize> = HashMap::new();
        let mut alpha = vec![usize::MAX; labels.len()];
        for (d, &a) in labels.iter().enumerate() {
            if let Some(e) = first.remove(&a) {
                alpha[d] = e;
                alpha[e] = d;
            } else {
                first.insert(a, d);
            }
        }
        assert!(first.is_empty(), "every arc label must occur twice");
        let mut map = PlanarMap { offsets, dart_vertex, alpha, labels, face_of: Vec::new(), faces: Vec::new() };
        map.trace_faces();
        map
    }

    fn trace_faces(&mut self) {
        let n = self.labels.len();
        self.face_of = vec![usize::MAX; n];
        for d in 0..n {
            if self.face_of[d] != usize::MAX {
                continue;
            }
            let f = self.faces.len();
            let mut cycle = Vec::new();
            let mut x = d;
            while self.face_of[x] == usize::MAX {
                self.face_of[x] = f;
                cycle.push(x);
                x = self.face_step(x);
            }
            self.faces.push(cycle);
        }
    }

    /// Next dart along the boundary of the face containing `d`.
    pub fn face_step(&self, d: usize) -> usize {
        self.sigma(self.alpha[d])
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn dart_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn dart(&self, v: usize, slot: usize) -> usize {
        self.offsets[v] + slot % self.degree(v)
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.dart_vertex[d]
    }

    pub fn slot_of(&self, d: usize) -> usize {
        d - self.offsets[self.dart_vertex[d]]
    }

    pub fn label(&self, d: usize) -> Arc {
        self.labels[d]
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    /// Next dart counterclockwise around the same vertex.
    pub fn sigma(&self, d: usize) -> usize {
        let v = self.dart_vertex[d];
        self.dart(v, self.slot_of(d) + 1)
    }

    /// The dart continuing the strand straight through the vertex.
    pub fn opposite(&self, d: usize) -> usize {
        let v = self.dart_vertex[d];
        let deg = self.degree(v);
        self.dart(v, self.slot_of(d) + deg / 2)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn face_len(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Face counts keyed by boundary length.
    pub fn face_vector(&self) -> BTreeMap<usize, usize> {
        let mut fv = BTreeMap::new();
        for f in &self.faces {
            *fv.entry(f.len()).or_insert(0) += 1;
        }
        fv
    }

    pub fn f(&self, k: usize) -> usize {
        self.faces.iter().filter(|f| f.len() == k).count()
    }

    /// The faces on the two sides of the edge containing dart `d`.
    pub fn edge_faces(&self, d: usize) -> (usize, usize) {
        (self.face_of[d], self.face_of[self.alpha[d]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triple_point_with_three_loops() {
        let m = PlanarMap::from_tuples(&[[1u32, 1, 2, 2, 3, 3]]);
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (1, 3, 4));
        assert_eq!(m.f(1), 3);
        assert_eq!(m.f(3), 1);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn handshake_over_faces() {
        let m = PlanarMap::from_tuples(&[[1u32, 2, 3, 4, 5, 6], [2, 1, 6, 5, 4, 3]]);
        let total: usize = m.face_vector().iter().map(|(k, f)| k * f).sum();
        assert_eq!(total, 2 * m.edge_count());
    }

    #[test]
    fn trefoil_pd_map() {
        let m = PlanarMap::from_tuples(&[[1u32, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]);
        assert_eq!(m.face_count(), 5);
        assert_eq!(m.f(2), 3);
        assert_eq!(m.f(3), 2);
    }
}
