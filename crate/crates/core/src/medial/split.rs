use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{corner_ends, SpecialClaw, TotalVoltageGraph};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::surface::{BareGraph, CircleSubgraph, Dart, DartGraph, EmbeddedGraph};
use crate::voltage::local_group;

/// `M′` with each edge midpoint over a circle edge split in two, one
/// vertex per side of the circle. Walks here are exactly the walks of `M′`
/// that never cross the circle transversely.
///
/// Vertices `0..E` and `E..E + 2E` are laid out as in
/// [`EmbeddedGraph::subdivided_medial`]; vertex `E + 2E + i` carries the
/// lower ends of the `i`-th circle edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingFreeSplit {
    graph: BareGraph,
    group: FiniteGroup,
    alpha: Vec<Elem>,
    medial_vertices: usize,
    base_vertices: usize,
    /// Split vertex of each base edge, if it lies on the circle.
    lower: Vec<Option<usize>>,
}

impl CrossingFreeSplit {
    pub fn new(tvg: &TotalVoltageGraph, base: &EmbeddedGraph, circle: &CircleSubgraph) -> Result<Self> {
        let sub = base.subdivided_medial()?;
        let ne = base.edge_count();
        let mv = sub.vertex_count();
        if tvg.graph().vertex_count() != base.vertex_count() + mv {
            return Err(Error::Mismatch("total graph does not belong to this base".into()));
        }
        let mut ends: Vec<(usize, usize)> = sub.edge_list();
        let mut lower = vec![None; ne];
        let mut next = mv;
        for &e in circle.edges().edges() {
            lower[e] = Some(next);
            let [_, _, ub, wb] = corner_ends(base, e);
            for x in [ub, wb] {
                let d = base.half_end(x);
                if d.is_positive() {
                    ends[d.edge()].0 = next;
                } else {
                    ends[d.edge()].1 = next;
                }
            }
            next += 1;
        }
        let graph = BareGraph::new(next, &ends)?;
        let first = 2 * tvg.first_medial_edge();
        Ok(CrossingFreeSplit {
            graph,
            group: tvg.voltage_graph().group().clone(),
            alpha: tvg.voltage_graph().alphas()[first..].to_vec(),
            medial_vertices: mv,
            base_vertices: base.vertex_count(),
            lower,
        })
    }

    pub fn graph(&self) -> &BareGraph {
        &self.graph
    }

    pub fn alphas(&self) -> &[Elem] {
        &self.alpha
    }

    /// Split-graph vertex of a total-graph vertex on `M′`.
    pub fn vertex_of_total(&self, x: usize) -> Result<usize> {
        x.checked_sub(self.base_vertices)
            .filter(|&y| y < self.medial_vertices)
            .ok_or_else(|| Error::Hypothesis(format!("vertex {x} is not on M′")))
    }

    pub fn lower_vertex(&self, e: usize) -> Option<usize> {
        self.lower.get(e).copied().flatten()
    }

    /// The `M′` vertex each split vertex came from.
    pub fn merged(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.graph.vertex_count()).collect();
        for (e, l) in self.lower.iter().enumerate() {
            if let Some(l) = *l {
                out[l] = e;
            }
        }
        out
    }

    /// `A⊻(w′)`: local group at the total-graph vertex `w`.
    pub fn crossing_free_group(&self, w: usize) -> Result<Subgroup> {
        let root = self.vertex_of_total(w)?;
        Ok(local_group(&self.graph, &self.group, &self.alpha, root, &|_| true))
    }

    /// `A⊻(w′, y′)`: every `b` with `w′ᵇ` or `y′ᵇ` reachable from `w′¹`
    /// in the derived split graph.
    pub fn crossing_free_tip_set(&self, claw: &SpecialClaw) -> Result<Vec<Elem>> {
        let [w, y] = self.tip_fibers(claw)?;
        let mut out = w;
        out.extend(y);
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// The superscripts `b` with `w′ᵇ`, and those with `y′ᵇ`, reachable from
    /// `w′¹` in the derived split graph.
    pub fn tip_fibers(&self, claw: &SpecialClaw) -> Result<[Vec<Elem>; 2]> {
        let w = self.vertex_of_total(claw.w_tip)?;
        let y = self.vertex_of_total(claw.y_tip)?;
        let n = self.group.order();
        let by_tail = self.graph.darts_by_tail();
        let mut seen = vec![false; self.graph.vertex_count() * n];
        seen[w * n + self.group.identity().index()] = true;
        let mut queue = VecDeque::from([(w, self.group.identity())]);
        while let Some((u, a)) = queue.pop_front() {
            for &d in &by_tail[u] {
                let h = self.graph.head(d);
                let b = self.group.mul(a, self.alpha[d.index()]);
                if !seen[h * n + b.index()] {
                    seen[h * n + b.index()] = true;
                    queue.push_back((h, b));
                }
            }
        }
        let hits = |x: usize| (0..n).filter(|&b| seen[x * n + b]).map(|b| Elem(b as u32)).collect();
        Ok([hits(w), hits(y)])
    }

    /// Voltage of a dart of the split graph.
    pub fn alpha(&self, d: Dart) -> Elem {
        self.alpha[d.index()]
    }
}

impl TotalVoltageGraph {
    pub fn crossing_free_split(&self, base: &EmbeddedGraph, circle: &CircleSubgraph) -> Result<CrossingFreeSplit> {
        CrossingFreeSplit::new(self, base, circle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::surface::EdgeChain;
    use crate::voltage::VoltageEmbedding;

    fn setup(base: EmbeddedGraph, n: usize, alpha: &[u32]) -> (VoltageEmbedding, TotalVoltageGraph) {
        let a: Vec<Elem> = alpha.iter().map(|&x| Elem(x)).collect();
        let ve = VoltageEmbedding::from_edge_voltages(base, FiniteGroup::cyclic(n).unwrap(), &a).unwrap();
        let t = ve.total_graph_with_voltages().unwrap();
        (ve, t)
    }

    #[test]
    fn jordan_split() {
        let theta = catalog::sphere_theta();
        let (_, t) = setup(theta.clone(), 4, &[1, 2, 3]);
        let circle = CircleSubgraph::new(&theta, EdgeChain::new([0, 1]), 0).unwrap();
        let s = t.crossing_free_split(&theta, &circle).unwrap();
        assert_eq!(s.graph().components_with(&|_| true).1, 2);
        let by_tail = s.graph().darts_by_tail();
        for e in [0, 1] {
            assert_eq!(by_tail[e].len(), 2);
            assert_eq!(by_tail[s.lower_vertex(e).unwrap()].len(), 2);
        }
        assert_eq!(by_tail[2].len(), 4);
        let claw = t.claw_at(&theta, circle.walk()[0]);
        let group = s.crossing_free_group(claw.w_tip).unwrap();
        let tips = s.crossing_free_tip_set(&claw).unwrap();
        assert_eq!(tips, group.elements());
        assert!(group.is_subgroup_of(&t.medial_local_group(claw.w_tip).unwrap()));
    }

    #[test]
    fn no_circle_edges_unchanged() {
        let theta = catalog::sphere_theta();
        let (_, t) = setup(theta.clone(), 3, &[0, 1, 2]);
        let circle = CircleSubgraph::new(&theta, EdgeChain::new([0, 1]), 0).unwrap();
        let s = t.crossing_free_split(&theta, &circle).unwrap();
        let sub = theta.subdivided_medial().unwrap();
        let merged = s.merged();
        for d in 0..sub.dart_count() as u32 {
            assert_eq!(merged[s.graph().tail(Dart(d))], sub.tail(Dart(d)));
        }
        // edge 2 is off the circle: its midpoint keeps all four ends
        assert_eq!(s.lower_vertex(2), None);
    }

    #[test]
    fn tip_sets_absorb_group() {
        for (base, circle_edges) in [(catalog::torus_bouquet(), [0usize]), (catalog::klein_bouquet(), [1])] {
            for alpha in [[1u32, 0], [2, 1], [3, 3], [0, 0]] {
                let (_, t) = setup(base.clone(), 6, &alpha);
                let circle = CircleSubgraph::new(&base, EdgeChain::new(circle_edges), 0).unwrap();
                let s = t.crossing_free_split(&base, &circle).unwrap();
                let claw = t.claw_at(&base, circle.walk()[0]);
                let group = s.crossing_free_group(claw.w_tip).unwrap();
                let tips = s.crossing_free_tip_set(&claw).unwrap();
                assert!(tips.contains(&Elem(0)));
                for &b in &tips {
                    for &g in group.elements() {
                        assert!(tips.contains(&t.voltage_graph().group().mul(b, g)));
                    }
                }
                if alpha == [0, 0] {
                    assert_eq!(group.len(), 1);
                }
            }
        }
    }
}
