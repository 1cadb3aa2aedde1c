//! Medial graphs, the total graph with its extended voltages, special
//! claws and crossing-free walks of the subdivided medial graph.
//!
//! Around the midpoint of edge `e`, read in the local orientation of the
//! tail `u` of `e⁺`, the four corners touching `e` sit at the upper and
//! lower left (at `u`) and upper and lower right (at the head `w`). A corner
//! end is named by a dart of `e` and whether the corner comes right after
//! or right before that dart in its rotation.

mod split;
mod total;

pub use split::CrossingFreeSplit;
pub use total::{SpecialClaw, TotalVoltageGraph, VertexKind};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::surface::{Dart, DartGraph, EmbeddedGraph, Sign};

/// A corner end at the midpoint of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerEnd {
    pub dart: Dart,
    pub after: bool,
}

impl CornerEnd {
    /// The corner this end belongs to, named by the dart it follows.
    pub fn corner(self, g: &EmbeddedGraph) -> Dart {
        if self.after {
            self.dart
        } else {
            g.pred(self.dart)
        }
    }
}

/// The four corner ends at the midpoint of `e`, in the order
/// `[w above, u above, u below, w below]`.
pub fn corner_ends(g: &EmbeddedGraph, e: usize) -> [CornerEnd; 4] {
    let (p, n) = (Dart::positive(e), Dart::negative(e));
    let end = |dart, after| CornerEnd { dart, after };
    let twisted = !g.sign(e).is_plus();
    [end(n, twisted), end(p, true), end(p, false), end(n, !twisted)]
}

/// Frame of the corner's vertex relative to the frame of the midpoint of
/// the dart's edge.
fn rel(g: &EmbeddedGraph, d: Dart) -> Sign {
    if d.is_positive() {
        Sign::Plus
    } else {
        g.sign(d.edge())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MedialFace {
    /// Surrounds a base vertex.
    Vertex(usize),
    /// Sits inside a base face.
    Face(usize),
}

/// The medial graph: vertex `e` for each base edge, edge `c` for each
/// corner `c(d)` with `c = d`, joining the midpoints of `d` and `ρ(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedialEmbedding {
    graph: EmbeddedGraph,
    faces: Vec<MedialFace>,
}

impl MedialEmbedding {
    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn face_kinds(&self) -> &[MedialFace] {
        &self.faces
    }

    /// The base edge a medial vertex sits on.
    pub fn base_edge(&self, m: usize) -> usize {
        m
    }

    /// The base corner a medial edge runs through.
    pub fn base_corner(&self, k: usize) -> Dart {
        Dart(k as u32)
    }
}

impl EmbeddedGraph {
    pub fn medial(&self) -> Result<MedialEmbedding> {
        let corners = self.dart_count();
        let mut edges = Vec::with_capacity(corners);
        let mut signs = Vec::with_capacity(corners);
        for c in 0..corners as u32 {
            let d = Dart(c);
            let r = self.succ(d);
            edges.push((d.edge(), r.edge()));
            signs.push(rel(self, d) * rel(self, r));
        }
        let end_dart = |x: CornerEnd| {
            if x.after {
                Dart::positive(x.dart.index())
            } else {
                Dart::negative(self.pred(x.dart).index())
            }
        };
        let rotation = (0..self.edge_count())
            .map(|e| corner_ends(self, e).iter().map(|&x| end_dart(x)).collect())
            .collect();
        let graph = EmbeddedGraph::new(self.edge_count(), &edges, signs, rotation)?;

        let base_faces = self.faces();
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count()];
        for c in 0..corners as u32 {
            by_vertex[self.tail(Dart(c))].push(c as usize);
        }
        let mut by_face: Vec<Vec<usize>> = base_faces
            .walks()
            .iter()
            .map(|w| w.corners.iter().map(|c| c.index()).collect())
            .collect();
        for s in by_face.iter_mut() {
            s.sort_unstable();
        }
        let mut used_v = vec![false; self.vertex_count()];
        let mut used_f = vec![false; base_faces.len()];
        let mut faces = Vec::new();
        for w in graph.faces().walks() {
            let mut set: Vec<usize> = w.darts.iter().map(|d| d.edge()).collect();
            set.sort_unstable();
            let kind = if let Some(v) = (0..by_vertex.len()).find(|&v| !used_v[v] && by_vertex[v] == set) {
                used_v[v] = true;
                MedialFace::Vertex(v)
            } else if let Some(f) = (0..by_face.len()).find(|&f| !used_f[f] && by_face[f] == set) {
                used_f[f] = true;
                MedialFace::Face(f)
            } else {
                return Err(Error::Mismatch(format!("medial face through corners {set:?} matches nothing")));
            };
            faces.push(kind);
        }
        Ok(MedialEmbedding { graph, faces })
    }

    /// The medial graph with every edge subdivided. Vertex `e` is the
    /// midpoint of base edge `e`, vertex `E + c` the midpoint of corner `c`.
    /// Edge `2c` runs from the midpoint of `c`'s edge to vertex `E + c`,
    /// edge `2c + 1` from there to the midpoint of `ρ(c)`'s edge.
    pub fn subdivided_medial(&self) -> Result<EmbeddedGraph> {
        let m = self.edge_count();
        let corners = self.dart_count();
        let mut edges = Vec::with_capacity(2 * corners);
        let mut signs = Vec::with_capacity(2 * corners);
        for c in 0..corners as u32 {
            let d = Dart(c);
            let r = self.succ(d);
            edges.push((d.edge(), m + c as usize));
            signs.push(rel(self, d));
            edges.push((m + c as usize, r.edge()));
            signs.push(rel(self, r));
        }
        let mut rotation: Vec<Vec<Dart>> = (0..m)
            .map(|e| corner_ends(self, e).iter().map(|&x| self.half_end(x)).collect())
            .collect();
        for c in 0..corners {
            rotation.push(vec![Dart::negative(2 * c), Dart::positive(2 * c + 1)]);
        }
        EmbeddedGraph::new(m + corners, &edges, signs, rotation)
    }

    /// The dart of the subdivided medial graph leaving an edge midpoint
    /// toward the corner of `x`.
    pub fn half_end(&self, x: CornerEnd) -> Dart {
        if x.after {
            Dart::positive(2 * x.dart.index())
        } else {
            Dart::negative(2 * self.pred(x.dart).index() + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn medial_shapes() {
        for g in catalog::all() {
            let m = g.medial().unwrap();
            let mg = m.graph();
            assert_eq!(mg.vertex_count(), g.edge_count());
            assert_eq!(mg.edge_count(), g.dart_count());
            assert!((0..mg.vertex_count()).all(|v| mg.degree(v) == 4));
            assert_eq!(mg.euler_characteristic(), g.euler_characteristic());
            assert_eq!(mg.is_orientable(), g.is_orientable());
            let vf = m.face_kinds().iter().filter(|k| matches!(k, MedialFace::Vertex(_))).count();
            assert_eq!(vf, g.vertex_count());
            assert_eq!(m.face_kinds().len() - vf, g.faces().len());
        }
    }

    #[test]
    fn sphere_loop_medial() {
        let m = catalog::sphere_loop().medial().unwrap();
        let g = m.graph();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 2));
        assert!(g.is_loop(0) && g.is_loop(1));
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn theta_medial() {
        let m = catalog::sphere_theta().medial().unwrap();
        let g = m.graph();
        assert_eq!((g.vertex_count(), g.edge_count(), g.faces().len()), (3, 6, 5));
    }

    #[test]
    fn subdivided_medial_shapes() {
        for g in catalog::all() {
            let s = g.subdivided_medial().unwrap();
            assert_eq!(s.vertex_count(), g.edge_count() + g.dart_count());
            assert_eq!(s.euler_characteristic(), g.euler_characteristic());
            for c in 0..g.dart_count() {
                assert_eq!(s.degree(g.edge_count() + c), 2);
            }
        }
    }
}
