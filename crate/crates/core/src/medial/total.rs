//! The total graph `T(G) = G′ ∪ M′` with extended voltages.
//!
//! Vertex layout: base vertices `0..V`, edge midpoints `V + e`, corner
//! midpoints `V + E + c`. Edge layout: `2e` runs from `t(e)` to the
//! midpoint of `e` with voltage `α(e)`, `2e + 1` from there to `h(e)` with
//! voltage `1`; `2E + 2c` and `2E + 2c + 1` are the two halves of the
//! medial edge through corner `c`. The preferred direction of every edge
//! is its positive dart: the two corner halves at `t(e⁺)` carry `α(e)`
//! toward the midpoint.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{corner_ends, rel, CornerEnd};
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};
use crate::surface::{Dart, DartGraph, EmbeddedGraph, Sign};
use crate::voltage::{local_group, VoltageEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Base(usize),
    /// Midpoint of a base edge; also a medial vertex.
    EdgeMidpoint(usize),
    /// Midpoint of a medial edge, named by its corner.
    CornerMidpoint(Dart),
}

/// `T(G)` with `α_E` and the projection `ψ` onto `G′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalVoltageGraph {
    total: VoltageEmbedding,
    base_vertices: usize,
    base_edges: usize,
    psi: Vec<Dart>,
    prefer_negative: Vec<bool>,
}

/// The claw tying base vertex `t(d)`, the midpoint of `d`'s edge and the
/// two corner midpoints beside `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialClaw {
    pub dart: Dart,
    pub vertex: usize,
    pub hub: usize,
    /// Midpoint of the corner right after `d`.
    pub w_tip: usize,
    /// Midpoint of the corner right before `d`.
    pub y_tip: usize,
    /// Darts from the hub to `vertex`, `w_tip` and `y_tip`.
    pub spokes: [Dart; 3],
}

impl TotalVoltageGraph {
    pub fn new(ve: &VoltageEmbedding) -> Result<Self> {
        Self::with_preference(ve, &vec![false; ve.base().edge_count()])
    }

    /// `prefer_negative[e]` picks `e⁻` as the preferred direction of `e`.
    pub fn with_preference(ve: &VoltageEmbedding, prefer_negative: &[bool]) -> Result<Self> {
        let g = ve.base();
        let grp = ve.group();
        let (nv, ne) = (g.vertex_count(), g.edge_count());
        if prefer_negative.len() != ne {
            return Err(Error::InvalidVoltage(format!("{} preferences for {ne} edges", prefer_negative.len())));
        }
        let mid = |e: usize| nv + e;
        let corner_mid = |c: Dart| nv + ne + c.index();
        let one = grp.identity();
        // voltage along G′ from t(d) to the midpoint of d's edge
        let beta = |d: Dart| -> Elem {
            let e = d.edge();
            match (prefer_negative[e], d.is_positive()) {
                (false, true) => ve.alpha(d),
                (true, false) => ve.alpha(d),
                _ => one,
            }
        };

        let mut edges = Vec::with_capacity(6 * ne);
        let mut signs = Vec::with_capacity(6 * ne);
        let mut alpha = Vec::with_capacity(12 * ne);
        let mut push = |edges: &mut Vec<(usize, usize)>, t, h, s, a: Elem| {
            edges.push((t, h));
            signs.push(s);
            alpha.push(a);
            alpha.push(grp.inv(a));
        };
        for e in 0..ne {
            let (t, h) = g.endpoints(e);
            let (p, n) = (Dart::positive(e), Dart::negative(e));
            push(&mut edges, t, mid(e), Sign::Plus, beta(p));
            push(&mut edges, mid(e), h, g.sign(e), grp.inv(beta(n)));
        }
        for c in 0..g.dart_count() as u32 {
            let c = Dart(c);
            let r = g.succ(c);
            push(&mut edges, mid(c.edge()), corner_mid(c), rel(g, c), grp.inv(beta(c)));
            push(&mut edges, corner_mid(c), mid(r.edge()), rel(g, r), beta(r));
        }
        let total_vertices = nv + ne + g.dart_count();
        let mut rotation: Vec<Vec<Dart>> = Vec::with_capacity(total_vertices);
        for v in 0..nv {
            rotation.push(
                g.rotation(v)
                    .iter()
                    .map(|&d| if d.is_positive() { Dart::positive(2 * d.edge()) } else { Dart::negative(2 * d.edge() + 1) })
                    .collect(),
            );
        }
        let half = |x: CornerEnd| -> Dart {
            let m = g.half_end(x);
            Dart::new(2 * ne + m.edge(), m.is_positive())
        };
        for e in 0..ne {
            let [wa, ua, ub, wb] = corner_ends(g, e);
            rotation.push(vec![
                Dart::positive(2 * e + 1),
                half(wa),
                half(ua),
                Dart::negative(2 * e),
                half(ub),
                half(wb),
            ]);
        }
        for c in 0..g.dart_count() {
            rotation.push(vec![Dart::negative(2 * ne + 2 * c), Dart::positive(2 * ne + 2 * c + 1)]);
        }
        let graph = EmbeddedGraph::new(total_vertices, &edges, signs, rotation)?;
        let total = VoltageEmbedding::new(graph, grp.clone(), alpha)?;

        // ψ: medial halves project onto the G′ half between the midpoint
        // and the corner's vertex
        let toward_vertex = |d: Dart| -> Dart {
            // G′ dart from the midpoint of d's edge to t(d)
            if d.is_positive() {
                Dart::negative(2 * d.edge())
            } else {
                Dart::positive(2 * d.edge() + 1)
            }
        };
        let mut psi = Vec::with_capacity(2 * total.base().edge_count());
        for x in 0..4 * ne {
            psi.push(Dart(x as u32));
        }
        for c in 0..g.dart_count() as u32 {
            let c = Dart(c);
            let r = g.succ(c);
            let a = toward_vertex(c);
            psi.push(a);
            psi.push(a.reversed());
            let b = toward_vertex(r).reversed();
            psi.push(b);
            psi.push(b.reversed());
        }
        Ok(TotalVoltageGraph { total, base_vertices: nv, base_edges: ne, psi, prefer_negative: prefer_negative.to_vec() })
    }

    pub fn voltage_graph(&self) -> &VoltageEmbedding {
        &self.total
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        self.total.base()
    }

    pub fn kind(&self, x: usize) -> VertexKind {
        let (nv, ne) = (self.base_vertices, self.base_edges);
        if x < nv {
            VertexKind::Base(x)
        } else if x < nv + ne {
            VertexKind::EdgeMidpoint(x - nv)
        } else {
            VertexKind::CornerMidpoint(Dart((x - nv - ne) as u32))
        }
    }

    pub fn edge_midpoint(&self, e: usize) -> usize {
        self.base_vertices + e
    }

    pub fn corner_midpoint(&self, c: Dart) -> usize {
        self.base_vertices + self.base_edges + c.index()
    }

    /// True for the edges of `M′`.
    pub fn is_medial_edge(&self, k: usize) -> bool {
        k >= 2 * self.base_edges
    }

    pub fn first_medial_edge(&self) -> usize {
        2 * self.base_edges
    }

    /// `ψ(d)`, a dart of `G′`.
    pub fn psi(&self, d: Dart) -> Dart {
        self.psi[d.index()]
    }

    pub fn prefers_negative(&self, e: usize) -> bool {
        self.prefer_negative[e]
    }

    /// `M′` alone as a voltage graph, in the layout of
    /// [`EmbeddedGraph::subdivided_medial`].
    pub fn medial_voltage_graph(&self, base: &EmbeddedGraph) -> Result<VoltageEmbedding> {
        let g = base.subdivided_medial()?;
        let first = 2 * self.first_medial_edge();
        VoltageEmbedding::new(g, self.total.group().clone(), self.total.alphas()[first..].to_vec())
    }

    /// The claw at `t(d)` for dart `d`.
    pub fn claw_at(&self, base: &EmbeddedGraph, d: Dart) -> SpecialClaw {
        let ne = self.base_edges;
        let e = d.edge();
        let hub = self.edge_midpoint(e);
        let to_vertex = if d.is_positive() { Dart::negative(2 * e) } else { Dart::positive(2 * e + 1) };
        let before = base.pred(d);
        SpecialClaw {
            dart: d,
            vertex: base.tail(d),
            hub,
            w_tip: self.corner_midpoint(d),
            y_tip: self.corner_midpoint(before),
            spokes: [to_vertex, Dart::positive(2 * ne + 2 * d.index()), Dart::negative(2 * ne + 2 * before.index() + 1)],
        }
    }

    /// The claw of edge `e` at the tail of its preferred dart.
    pub fn special_claw(&self, base: &EmbeddedGraph, e: usize) -> Result<SpecialClaw> {
        if e >= self.base_edges {
            return Err(Error::IndexOutOfRange { kind: "edge", index: e, len: self.base_edges });
        }
        let d = Dart::new(e, !self.prefer_negative[e]);
        Ok(self.claw_at(base, d))
    }

    /// Net voltage from each claw end to every other, through the hub.
    pub fn claw_voltages(&self, claw: &SpecialClaw) -> [[Elem; 3]; 3] {
        let grp = self.total.group();
        let into = |s: Dart| self.total.alpha(s.reversed());
        let out = |s: Dart| self.total.alpha(s);
        let mut m = [[grp.identity(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = grp.mul(into(claw.spokes[i]), out(claw.spokes[j]));
            }
        }
        m
    }

    /// `A′(x)`: net voltages of closed walks of `M′` at `x`.
    pub fn medial_local_group(&self, x: usize) -> Result<Subgroup> {
        if !matches!(self.kind(x), VertexKind::CornerMidpoint(_) | VertexKind::EdgeMidpoint(_)) {
            return Err(Error::Hypothesis(format!("vertex {x} is not on M′")));
        }
        let first = self.first_medial_edge();
        Ok(local_group(self.graph(), self.total.group(), self.total.alphas(), x, &|k| k >= first))
    }
}

impl VoltageEmbedding {
    pub fn total_graph_with_voltages(&self) -> Result<TotalVoltageGraph> {
        TotalVoltageGraph::new(self)
    }

    /// Derive `M′` with its transferred voltages and compare it, label by
    /// label, with the subdivided medial graph of the derived embedding.
    pub fn verify_medial_of_derived(&self) -> Result<()> {
        let tvg = self.total_graph_with_voltages()?;
        let mv = tvg.medial_voltage_graph(self.base())?;
        let lifted = mv.derive()?;
        let derived = self.derive()?;
        let target = derived.graph().subdivided_medial()?;
        let g = self.base();
        let grp = self.group();
        let ne = g.edge_count();
        let target_edges = derived.graph().edge_count();
        let beta_inv = |c: Dart| if c.is_positive() { grp.inv(self.alpha(c)) } else { grp.identity() };
        let vertex_map: Vec<usize> = (0..lifted.graph().vertex_count())
            .map(|x| {
                let (u, b) = lifted.vertex_label(x);
                if u < ne {
                    derived.edge(u, grp.mul(b, grp.inv(self.alpha(Dart::positive(u)))))
                } else {
                    target_edges + derived.lift_dart(Dart((u - ne) as u32), b).index()
                }
            })
            .collect();
        let dart_map: Vec<Dart> = (0..lifted.graph().dart_count() as u32)
            .map(|x| {
                let x = Dart(x);
                let (k, b) = lifted.edge_label(x.edge());
                let c = Dart((k / 2) as u32);
                let edge = if k % 2 == 0 {
                    2 * derived.lift_dart(c, grp.mul(b, beta_inv(c))).index()
                } else {
                    2 * derived.lift_dart(c, b).index() + 1
                };
                Dart::new(edge, x.is_positive())
            })
            .collect();
        lifted.graph().check_isomorphism(&target, &vertex_map, &dart_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;

    fn sample(base: EmbeddedGraph, n: usize) -> VoltageEmbedding {
        let m = base.edge_count();
        let alpha: Vec<Elem> = (0..m).map(|i| Elem(((2 * i + 1) % n) as u32)).collect();
        VoltageEmbedding::from_edge_voltages(base, FiniteGroup::cyclic(n).unwrap(), &alpha).unwrap()
    }

    #[test]
    fn total_graph_surface() {
        for base in catalog::all().into_iter().filter(|g| g.is_connected()) {
            let ve = sample(base.clone(), 4);
            let t = ve.total_graph_with_voltages().unwrap();
            let tg = t.graph();
            assert_eq!(tg.euler_characteristic(), base.euler_characteristic());
            assert_eq!(tg.faces().len(), 2 * base.edge_count() + base.faces().len());
            assert_eq!(tg.is_orientable(), base.is_orientable());
        }
    }

    #[test]
    fn psi_carries_voltages() {
        for base in catalog::all().into_iter().filter(|g| g.is_connected()) {
            let ve = sample(base.clone(), 5);
            let t = ve.total_graph_with_voltages().unwrap();
            let tv = t.voltage_graph();
            for d in 0..tv.base().dart_count() as u32 {
                let d = Dart(d);
                assert_eq!(tv.alpha(t.psi(d)), tv.alpha(d), "dart {d}");
                assert!(!t.is_medial_edge(t.psi(d).edge()));
            }
        }
    }

    #[test]
    fn claws_are_trivial() {
        for base in catalog::all().into_iter().filter(|g| g.is_connected()) {
            let ve = sample(base.clone(), 6);
            let t = ve.total_graph_with_voltages().unwrap();
            for d in 0..base.dart_count() as u32 {
                let claw = t.claw_at(&base, Dart(d));
                for row in t.claw_voltages(&claw) {
                    assert!(row.iter().all(|&x| x == ve.group().identity()));
                }
                let a_v = ve.local_voltage_group(claw.vertex).unwrap();
                assert_eq!(t.medial_local_group(claw.w_tip).unwrap(), a_v);
                assert_eq!(t.medial_local_group(claw.y_tip).unwrap(), a_v);
            }
        }
    }

    #[test]
    fn medial_of_derived() {
        for base in catalog::all().into_iter().filter(|g| g.is_connected()) {
            for n in [1, 2, 3] {
                sample(base.clone(), n).verify_medial_of_derived().unwrap();
            }
        }
    }

    #[test]
    fn preference_is_local_modification() {
        let ve = sample(catalog::sphere_theta(), 6);
        let canon = ve.total_graph_with_voltages().unwrap();
        for e in 0..3 {
            let mut pref = vec![false; 3];
            pref[e] = true;
            let other = TotalVoltageGraph::with_preference(&ve, &pref).unwrap();
            let c = ve.alpha(Dart::positive(e));
            let (modified, wit) =
                canon.voltage_graph().local_voltage_modification(canon.edge_midpoint(e), c).unwrap();
            assert_eq!(modified.alphas(), other.voltage_graph().alphas());
            wit.check(
                canon.voltage_graph().derive().unwrap().graph(),
                other.voltage_graph().derive().unwrap().graph(),
            )
            .unwrap();
            let claw = other.special_claw(ve.base(), e).unwrap();
            assert_eq!(claw.vertex, ve.base().endpoints(e).1);
            for row in other.claw_voltages(&claw) {
                assert!(row.iter().all(|&x| x == ve.group().identity()));
            }
        }
    }
}
