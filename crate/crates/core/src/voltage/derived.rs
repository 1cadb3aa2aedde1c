use alloc::vec::Vec;

use super::{VoltageEmbedding, WalkSpec};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::surface::{Dart, DartGraph, EmbeddedGraph};

/// Default cap on `|V|·|A|`.
pub const DERIVED_LABEL_CAP: usize = 100_000;

/// The derived embedding `G^α → S^α`.
///
/// Vertex `(v, a)` has index `v·|A| + a`. Edge `(e, a)` has index
/// `e·|A| + a` and runs from `(t(e), a)` to `(h(e), a·α(e))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedEmbedding {
    graph: EmbeddedGraph,
    group: FiniteGroup,
    alpha: Vec<Elem>,
    base_vertices: usize,
}

/// Face counts of the derived surface read off the base faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLiftPrediction {
    /// `|A| / |ω(f)|` for each base face.
    pub per_face: Vec<usize>,
    pub face_count: usize,
    pub euler_characteristic: i64,
}

impl VoltageEmbedding {
    pub fn derive(&self) -> Result<DerivedEmbedding> {
        self.derive_capped(DERIVED_LABEL_CAP)
    }

    pub fn derive_capped(&self, cap: usize) -> Result<DerivedEmbedding> {
        let n = self.group().order();
        let g = self.base();
        let size = g.vertex_count() * n;
        if size > cap {
            return Err(Error::SizeCap { what: "derived vertices", size, cap });
        }
        let mut d = DerivedEmbedding {
            graph: g.clone(),
            group: self.group().clone(),
            alpha: self.alphas().to_vec(),
            base_vertices: g.vertex_count(),
        };
        let mut edges = Vec::with_capacity(g.edge_count() * n);
        let mut signs = Vec::with_capacity(g.edge_count() * n);
        for e in 0..g.edge_count() {
            let (t, h) = g.endpoints(e);
            let ae = self.alpha(Dart::positive(e));
            for a in self.group().elements() {
                edges.push((t * n + a.index(), h * n + self.group().mul(a, ae).index()));
                signs.push(g.sign(e));
            }
        }
        let mut rotation = Vec::with_capacity(size);
        for v in 0..g.vertex_count() {
            for a in self.group().elements() {
                rotation.push(g.rotation(v).iter().map(|&x| d.lift_dart(x, a)).collect());
            }
        }
        d.graph = EmbeddedGraph::new(size, &edges, signs, rotation)?;
        Ok(d)
    }

    /// Garman's face lifting: each face whose boundary walk has net
    /// voltage of order `m` lifts to `|A|/m` faces.
    pub fn face_lift_prediction(&self) -> FaceLiftPrediction {
        let n = self.group().order();
        let g = self.base();
        let per_face: Vec<usize> = g
            .faces()
            .walks()
            .iter()
            .map(|w| {
                let omega = self.group().product(w.darts.iter().map(|&d| self.alpha(d)));
                n / self.group().element_order(omega).expect("in range")
            })
            .collect();
        let face_count = per_face.iter().sum();
        let euler_characteristic =
            (n as i64) * (g.vertex_count() as i64 - g.edge_count() as i64) + face_count as i64;
        FaceLiftPrediction { per_face, face_count, euler_characteristic }
    }
}

impl DerivedEmbedding {
    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base_vertices
    }

    pub fn base_edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    #[inline]
    pub fn vertex(&self, v: usize, a: Elem) -> usize {
        v * self.order() + a.index()
    }

    /// `(v, a)` of a derived vertex.
    #[inline]
    pub fn vertex_label(&self, x: usize) -> (usize, Elem) {
        (x / self.order(), Elem((x % self.order()) as u32))
    }

    #[inline]
    pub fn edge(&self, e: usize, a: Elem) -> usize {
        e * self.order() + a.index()
    }

    #[inline]
    pub fn edge_label(&self, x: usize) -> (usize, Elem) {
        (x / self.order(), Elem((x % self.order()) as u32))
    }

    /// The lift of base dart `d` starting at `(t(d), a)`.
    #[inline]
    pub fn lift_dart(&self, d: Dart, a: Elem) -> Dart {
        if d.is_positive() {
            Dart::positive(self.edge(d.edge(), a))
        } else {
            Dart::negative(self.edge(d.edge(), self.group.mul(a, self.alpha[d.index()])))
        }
    }

    /// Base dart and starting element of a derived dart.
    pub fn project_dart(&self, x: Dart) -> (Dart, Elem) {
        let (e, b) = self.edge_label(x.edge());
        if x.is_positive() {
            (Dart::positive(e), b)
        } else {
            (Dart::negative(e), self.group.mul(b, self.alpha[2 * e]))
        }
    }

    /// The lift of a walk starting at element `a`, and the element it ends at.
    pub fn lift_walk(&self, w: &WalkSpec, a: Elem) -> (Vec<Dart>, Elem) {
        let mut at = a;
        let mut out = Vec::with_capacity(w.len());
        for &d in w.darts() {
            out.push(self.lift_dart(d, at));
            at = self.group.mul(at, self.alpha[d.index()]);
        }
        (out, at)
    }

    /// Left multiplication by `c` on vertices: `(v, a) ↦ (v, ca)`.
    pub fn act_vertex(&self, c: Elem, x: usize) -> usize {
        let (v, a) = self.vertex_label(x);
        self.vertex(v, self.group.mul(c, a))
    }

    /// Left multiplication by `c` on darts.
    pub fn act_dart(&self, c: Elem, x: Dart) -> Dart {
        let (d, a) = self.project_dart(x);
        self.lift_dart(d, self.group.mul(c, a))
    }

    /// The full vertex and dart permutations of the action of `c`.
    pub fn action(&self, c: Elem) -> (Vec<usize>, Vec<Dart>) {
        let vmap = (0..self.graph.vertex_count()).map(|x| self.act_vertex(c, x)).collect();
        let dmap = (0..self.graph.dart_count() as u32).map(|x| self.act_dart(c, Dart(x))).collect();
        (vmap, dmap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::vec;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn torus_double_cover() {
        let ve = VoltageEmbedding::from_edge_voltages(catalog::torus_bouquet(), z(2), &[Elem(1), Elem(0)])
            .unwrap();
        let d = ve.derive().unwrap();
        assert!(d.graph().is_connected());
        assert_eq!(d.graph().euler_characteristic(), 0);
        let p = ve.face_lift_prediction();
        assert_eq!((p.face_count, p.euler_characteristic), (2, 0));
        assert_eq!(d.graph().faces().len(), 2);
    }

    #[test]
    fn projective_plane_double_cover_is_sphere() {
        let ve = VoltageEmbedding::from_edge_voltages(catalog::projective_loop(), z(2), &[Elem(1)]).unwrap();
        let d = ve.derive().unwrap();
        let g = d.graph();
        assert_eq!((g.vertex_count(), g.edge_count(), g.faces().len()), (2, 2, 2));
        assert!(g.is_orientable());
        assert_eq!(g.euler_characteristic(), 2);
        let p = ve.face_lift_prediction();
        assert_eq!((p.face_count, p.euler_characteristic), (2, 2));
    }

    #[test]
    fn identity_voltages_give_copies() {
        for base in catalog::all() {
            if !base.is_connected() {
                continue;
            }
            let e = base.edge_count();
            let ve = VoltageEmbedding::from_edge_voltages(base.clone(), z(3), &vec![Elem(0); e]).unwrap();
            let d = ve.derive().unwrap();
            assert_eq!(d.graph().components().1, 3);
            assert_eq!(d.graph().faces().len(), 3 * base.faces().len());
            assert_eq!(ve.face_lift_prediction().face_count, 3 * base.faces().len());
        }
    }

    #[test]
    fn lifts_and_projections_agree() {
        let ve = VoltageEmbedding::from_edge_voltages(catalog::sphere_theta(), z(4), &[Elem(1), Elem(3), Elem(2)])
            .unwrap();
        let d = ve.derive().unwrap();
        for x in 0..d.graph().dart_count() as u32 {
            let (b, a) = d.project_dart(Dart(x));
            assert_eq!(d.lift_dart(b, a), Dart(x));
            assert_eq!(d.graph().tail(Dart(x)), d.vertex(ve.base().tail(b), a));
            let end = ve.group().mul(a, ve.alpha(b));
            assert_eq!(d.graph().head(Dart(x)), d.vertex(ve.base().head(b), end));
            assert_eq!(d.graph().sign(x as usize / 2), ve.base().sign(b.edge()));
        }
    }

    #[test]
    fn action_is_automorphism() {
        let ve = VoltageEmbedding::from_edge_voltages(catalog::klein_bouquet(), z(4), &[Elem(1), Elem(2)]).unwrap();
        let d = ve.derive().unwrap();
        for c in ve.group().elements() {
            let (vmap, dmap) = d.action(c);
            d.graph().check_isomorphism(d.graph(), &vmap, &dmap).unwrap();
            let (vinv, _) = d.action(ve.group().inv(c));
            for x in 0..vmap.len() {
                assert_eq!(vinv[vmap[x]], x);
                assert_eq!(d.vertex_label(vmap[x]).0, d.vertex_label(x).0);
                if c != ve.group().identity() {
                    assert_ne!(vmap[x], x);
                }
            }
        }
    }
}
