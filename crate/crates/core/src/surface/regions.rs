//! Cutting an embedded surface along vertex-disjoint orientation-preserving
//! circles.
//!
//! Corners stand in for the open pieces of the surface: corners of one face
//! are glued together, and the two corners on either side of a dart are
//! glued unless that dart lies on a cut circle. Each circle has two banks,
//! the corner sets on its two sides, tracked through the side classes of
//! the circle's darts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{CircleSubgraph, Dart, DartGraph, EmbeddedGraph, FaceSet, OrientationType};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;
use crate::zregion::{EndTag, ZEdge, ZEdgeLabel, ZEnd, ZGraph, ZVertexLabel};

/// The two sides of a cut circle. `East` is the side holding the corner
/// right after the traversal's first dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    East,
    West,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::East => 0,
            Side::West => 1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::East => Side::West,
            Side::West => Side::East,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionPartition {
    corner_region: Vec<usize>,
    face_region: Vec<usize>,
    region_count: usize,
    banks: Vec<[usize; 2]>,
    corner_side: Vec<Option<(usize, Side)>>,
}

impl RegionPartition {
    pub fn region_count(&self) -> usize {
        self.region_count
    }

    /// Region of corner `c(d)`.
    pub fn region_of_corner(&self, d: Dart) -> usize {
        self.corner_region[d.index()]
    }

    pub fn region_of_face(&self, f: usize) -> usize {
        self.face_region[f]
    }

    pub fn face_regions(&self) -> &[usize] {
        &self.face_region
    }

    /// `[east, west]` region ids of circle `i`.
    pub fn banks(&self, circle: usize) -> [usize; 2] {
        self.banks[circle]
    }

    pub fn circle_count(&self) -> usize {
        self.banks.len()
    }

    /// For a corner at a vertex of some cut circle: that circle and the side
    /// the corner lies on.
    pub fn corner_side(&self, d: Dart) -> Option<(usize, Side)> {
        self.corner_side[d.index()]
    }
}

/// Side-class bookkeeping for one circle: index `2·dart + 0` is the side
/// after the dart in its rotation, `+ 1` the side before it.
fn side_classes(g: &EmbeddedGraph, circle: &CircleSubgraph) -> UnionFind {
    let mut uf = UnionFind::new(2 * g.dart_count());
    let after = |d: Dart| 2 * d.index();
    let before = |d: Dart| 2 * d.index() + 1;
    for &e in circle.edges().edges() {
        let (p, n) = (Dart::positive(e), Dart::negative(e));
        if g.sign(e).is_plus() {
            uf.union(after(p), before(n));
            uf.union(before(p), after(n));
        } else {
            uf.union(after(p), after(n));
            uf.union(before(p), before(n));
        }
    }
    let walk = circle.walk();
    for i in 0..walk.len() {
        // the two circle darts at t(walk[i]): walk[i] and the reverse of the previous dart
        let a = walk[i];
        let b = walk[(i + walk.len() - 1) % walk.len()].reversed();
        uf.union(after(a), before(b));
        uf.union(before(a), after(b));
    }
    uf
}

impl EmbeddedGraph {
    /// Cut along a property-Δ set of circles.
    pub fn cut_regions(&self, faces: &FaceSet, circles: &[CircleSubgraph]) -> Result<RegionPartition> {
        let mut on_vertex: Vec<Option<usize>> = vec![None; self.vertex_count()];
        let mut on_edge = vec![false; self.edge_count()];
        for (i, c) in circles.iter().enumerate() {
            if c.orientation_type(self) == OrientationType::Reversing {
                return Err(Error::PropertyDelta(format!("circle {i} is orientation-reversing")));
            }
            for v in c.vertices(self) {
                if let Some(j) = on_vertex[v] {
                    return Err(Error::PropertyDelta(format!("circles {j} and {i} share vertex {v}")));
                }
                on_vertex[v] = Some(i);
            }
            for &e in c.edges().edges() {
                on_edge[e] = true;
            }
        }

        let corners = self.dart_count();
        let mut uf = UnionFind::new(corners);
        for walk in faces.walks() {
            for w in walk.corners.windows(2) {
                uf.union(w[0].index(), w[1].index());
            }
        }
        for d in 0..corners as u32 {
            let d = Dart(d);
            if !on_edge[d.edge()] {
                uf.union(self.pred(d).index(), d.index());
            }
        }
        let (corner_region, region_count) = uf.labels();
        let face_region = faces
            .walks()
            .iter()
            .map(|w| corner_region[w.corners[0].index()])
            .collect();

        let mut banks = Vec::with_capacity(circles.len());
        let mut corner_side = vec![None; corners];
        for (i, c) in circles.iter().enumerate() {
            let mut sides = side_classes(self, c);
            let east = sides.find(2 * c.walk()[0].index());
            let mut bank = [usize::MAX; 2];
            for &a in c.walk() {
                let side = if sides.find(2 * a.index()) == east { Side::East } else { Side::West };
                // walk the arc of corners from c(a) up to the next circle dart
                let mut d = a;
                loop {
                    corner_side[d.index()] = Some((i, side));
                    let r = corner_region[d.index()];
                    if bank[side.index()] == usize::MAX {
                        bank[side.index()] = r;
                    } else if bank[side.index()] != r {
                        return Err(Error::Mismatch(format!(
                            "bank {side:?} of circle {i} spans two regions"
                        )));
                    }
                    d = self.succ(d);
                    if on_edge[d.edge()] {
                        break;
                    }
                }
                // the arc after the other circle dart at this vertex
                let other = self
                    .rotation(self.tail(a))
                    .iter()
                    .copied()
                    .find(|&x| x != a && on_edge[x.edge()] && circle_dart(c, x))
                    .expect("circle vertex has two circle darts");
                let side2 = if sides.find(2 * other.index()) == east { Side::East } else { Side::West };
                if side2 == side {
                    return Err(Error::Mismatch(format!("circle {i} has a one-sided vertex")));
                }
                let mut d = other;
                loop {
                    corner_side[d.index()] = Some((i, side2));
                    let r = corner_region[d.index()];
                    if bank[side2.index()] == usize::MAX {
                        bank[side2.index()] = r;
                    } else if bank[side2.index()] != r {
                        return Err(Error::Mismatch(format!(
                            "bank {side2:?} of circle {i} spans two regions"
                        )));
                    }
                    d = self.succ(d);
                    if on_edge[d.edge()] {
                        break;
                    }
                }
            }
            banks.push(bank);
        }
        Ok(RegionPartition { corner_region, face_region, region_count, banks, corner_side })
    }

    /// True iff cutting along `circle` alone disconnects its component.
    /// Orientation-reversing circles never separate.
    pub fn is_separating(&self, faces: &FaceSet, circle: &CircleSubgraph) -> Result<bool> {
        if circle.orientation_type(self) == OrientationType::Reversing {
            return Ok(false);
        }
        let cut = self.cut_regions(faces, core::slice::from_ref(circle))?;
        Ok(cut.region_count() > self.components().1)
    }

    /// The z-graph of a property-Δ circle set: one vertex per region, one
    /// edge per circle joining its two banks.
    pub fn zgraph_bruteforce(&self, faces: &FaceSet, circles: &[CircleSubgraph]) -> Result<ZGraph> {
        let cut = self.cut_regions(faces, circles)?;
        let vertices = (0..cut.region_count()).map(ZVertexLabel::Region).collect();
        let edges = (0..circles.len())
            .map(|i| {
                let [east, west] = cut.banks(i);
                ZEdge {
                    label: ZEdgeLabel::Circle(i),
                    ends: [
                        ZEnd { vertex: east, tag: EndTag::Bank(Side::East), label: Vec::new() },
                        ZEnd { vertex: west, tag: EndTag::Bank(Side::West), label: Vec::new() },
                    ],
                }
            })
            .collect();
        Ok(ZGraph { vertices, edges })
    }
}

fn circle_dart(c: &CircleSubgraph, d: Dart) -> bool {
    c.edges().contains(d.edge())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::surface::EdgeChain;

    #[test]
    fn no_circles_one_region() {
        for g in catalog::all() {
            let faces = g.faces();
            let cut = g.cut_regions(&faces, &[]).unwrap();
            assert_eq!(cut.region_count(), 1);
        }
    }

    #[test]
    fn theta_separating_circle() {
        let theta = catalog::sphere_theta();
        let faces = theta.faces();
        let c = CircleSubgraph::new(&theta, EdgeChain::new([0, 1]), 0).unwrap();
        let cut = theta.cut_regions(&faces, &[c.clone()]).unwrap();
        assert_eq!(cut.region_count(), 2);
        let [e, w] = cut.banks(0);
        assert_ne!(e, w);
        assert!(theta.is_separating(&faces, &c).unwrap());
        // the face bounded by e0,e1 sits alone in one region; the two faces
        // touching e2 share the other
        let z = theta.zgraph_bruteforce(&faces, &[c]).unwrap();
        assert_eq!((z.vertices.len(), z.edges.len()), (2, 1));
    }

    #[test]
    fn torus_loop_nonseparating() {
        let torus = catalog::torus_bouquet();
        let faces = torus.faces();
        let c = CircleSubgraph::new(&torus, EdgeChain::new([0]), 0).unwrap();
        let cut = torus.cut_regions(&faces, &[c.clone()]).unwrap();
        assert_eq!(cut.region_count(), 1);
        let [e, w] = cut.banks(0);
        assert_eq!(e, w);
        assert!(!torus.is_separating(&faces, &c).unwrap());
        let z = torus.zgraph_bruteforce(&faces, &[c]).unwrap();
        assert_eq!((z.vertices.len(), z.edges.len()), (1, 1));
        assert_eq!(z.loop_count(), 1);
    }

    #[test]
    fn reversing_circle_rejected() {
        let p2 = catalog::projective_loop();
        let faces = p2.faces();
        let c = CircleSubgraph::new(&p2, EdgeChain::new([0]), 0).unwrap();
        assert!(matches!(p2.cut_regions(&faces, &[c.clone()]), Err(Error::PropertyDelta(_))));
        assert!(!p2.is_separating(&faces, &c).unwrap());
    }

    #[test]
    fn shared_vertex_rejected() {
        let torus = catalog::torus_bouquet();
        let faces = torus.faces();
        let x = CircleSubgraph::new(&torus, EdgeChain::new([0]), 0).unwrap();
        let y = CircleSubgraph::new(&torus, EdgeChain::new([1]), 0).unwrap();
        assert!(matches!(torus.cut_regions(&faces, &[x, y]), Err(Error::PropertyDelta(_))));
    }

    #[test]
    fn sides_alternate_at_each_vertex() {
        let theta = catalog::sphere_theta();
        let faces = theta.faces();
        let c = CircleSubgraph::new(&theta, EdgeChain::new([0, 2]), 0).unwrap();
        let cut = theta.cut_regions(&faces, &[c.clone()]).unwrap();
        for v in 0..theta.vertex_count() {
            let sides: Vec<_> = theta
                .rotation(v)
                .iter()
                .map(|&d| cut.corner_side(d).unwrap().1)
                .collect();
            assert!(sides.contains(&Side::East) && sides.contains(&Side::West));
        }
        assert_eq!(cut.corner_side(c.walk()[0]), Some((0, Side::East)));
    }
}
