//! Ordinary voltage assignments on embedded graphs.
//!
//! A voltage assignment gives every dart a group element with
//! `α(d⁻¹) = α(d)⁻¹`. Net voltages of walks, the local voltage group `A(v)`
//! and its restrictions to subgraphs are computed here; the derived
//! embedding and the coset counts built on top live in the submodules.

mod counts;
mod derived;
mod modify;

pub use counts::{consecutive_lift_sets, CosetCounts, CountCheck, LiftSet};
pub use derived::{DerivedEmbedding, FaceLiftPrediction, DERIVED_LABEL_CAP};
pub use modify::{product_lift, IsomorphismWitness};

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::surface::{Dart, DartGraph, EdgeChain, EmbeddedGraph};

/// A sequence of darts, each starting where the previous one ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkSpec {
    darts: Vec<Dart>,
    closed: bool,
}

impl WalkSpec {
    pub fn new<G: DartGraph + ?Sized>(g: &G, darts: Vec<Dart>) -> Result<Self> {
        for &d in &darts {
            if d.index() >= g.dart_count() {
                return Err(Error::IndexOutOfRange { kind: "dart", index: d.index(), len: g.dart_count() });
            }
        }
        for w in darts.windows(2) {
            if g.head(w[0]) != g.tail(w[1]) {
                return Err(Error::InvalidWalk(format!("{} does not end where {} starts", w[0], w[1])));
            }
        }
        let closed = match (darts.first(), darts.last()) {
            (Some(&a), Some(&b)) => g.head(b) == g.tail(a),
            _ => true,
        };
        Ok(WalkSpec { darts, closed })
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// The same walk backwards.
    pub fn reversed(&self) -> WalkSpec {
        WalkSpec { darts: self.darts.iter().rev().map(|d| d.reversed()).collect(), closed: self.closed }
    }
}

/// `⟨G → S, α → A⟩`. The base graph must be connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageEmbedding {
    base: EmbeddedGraph,
    group: FiniteGroup,
    alpha: Vec<Elem>,
}

impl VoltageEmbedding {
    /// `alpha` is indexed by dart.
    pub fn new(base: EmbeddedGraph, group: FiniteGroup, alpha: Vec<Elem>) -> Result<Self> {
        if alpha.len() != base.dart_count() {
            return Err(Error::InvalidVoltage(format!(
                "{} voltages for {} darts",
                alpha.len(),
                base.dart_count()
            )));
        }
        if !base.is_connected() {
            return Err(Error::Disconnected("base graph"));
        }
        let ve = VoltageEmbedding { base, group, alpha };
        ve.validate()?;
        Ok(ve)
    }

    /// Voltages given on positive darts; negative darts get inverses.
    pub fn from_edge_voltages(base: EmbeddedGraph, group: FiniteGroup, edge_alpha: &[Elem]) -> Result<Self> {
        if edge_alpha.len() != base.edge_count() {
            return Err(Error::InvalidVoltage(format!(
                "{} voltages for {} edges",
                edge_alpha.len(),
                base.edge_count()
            )));
        }
        let mut alpha = Vec::with_capacity(2 * edge_alpha.len());
        for &a in edge_alpha {
            group.check(a)?;
            alpha.push(a);
            alpha.push(group.inv(a));
        }
        VoltageEmbedding::new(base, group, alpha)
    }

    /// Range and involution check; reports the first bad edge.
    pub fn validate(&self) -> Result<()> {
        for &a in &self.alpha {
            self.group.check(a)?;
        }
        for e in 0..self.base.edge_count() {
            let (p, n) = (self.alpha[2 * e], self.alpha[2 * e + 1]);
            if self.group.mul(p, n) != self.group.identity() {
                return Err(Error::VoltageInvolution { edge: e });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &EmbeddedGraph {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn alpha(&self, d: Dart) -> Elem {
        self.alpha[d.index()]
    }

    pub fn alphas(&self) -> &[Elem] {
        &self.alpha
    }

    /// `α(d₁)···α(d_m)`.
    pub fn net_voltage(&self, w: &WalkSpec) -> Elem {
        self.group.product(w.darts().iter().map(|&d| self.alpha(d)))
    }

    /// `A(v)`.
    pub fn local_voltage_group(&self, v: usize) -> Result<Subgroup> {
        self.check_vertex(v)?;
        Ok(local_group(&self.base, &self.group, &self.alpha, v, &|_| true))
    }

    /// `A(v, X)` for the subgraph spanned by `edges`, which must be
    /// connected and contain `v`.
    pub fn restricted_voltage_group(&self, edges: &EdgeChain, v: usize) -> Result<Subgroup> {
        self.check_vertex(v)?;
        let sk = self.base.edge_skeleton(edges);
        if !sk.connected {
            return Err(Error::Disconnected("restricting subgraph"));
        }
        if sk.vertices.binary_search(&v).is_err() {
            return Err(Error::Hypothesis(format!("vertex {v} is not in the restricting subgraph")));
        }
        let mask = edges.mask(self.base.edge_count());
        Ok(local_group(&self.base, &self.group, &self.alpha, v, &|e| mask[e]))
    }

    /// Gross–Alpert: `v^a` and `v^b` share a component iff `a⁻¹b ∈ A(v)`.
    pub fn same_component(&self, v: usize, a: Elem, b: Elem) -> Result<bool> {
        self.group.check(a)?;
        self.group.check(b)?;
        Ok(self.local_voltage_group(v)?.contains(self.group.left_div(a, b)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.base.vertex_count() {
            return Err(Error::IndexOutOfRange { kind: "vertex", index: v, len: self.base.vertex_count() });
        }
        Ok(())
    }
}

/// Tree potentials from `root` over the edges accepted by `keep`: `p(u)` is
/// the net voltage of the BFS tree path from `root` to `u`. Unreached
/// vertices get `None`. Darts are scanned in ascending order.
pub fn tree_potentials<G: DartGraph + ?Sized>(
    g: &G,
    group: &FiniteGroup,
    alpha: &[Elem],
    root: usize,
    keep: &dyn Fn(usize) -> bool,
) -> Vec<Option<Elem>> {
    let by_tail = g.darts_by_tail();
    let mut p = vec![None; g.vertex_count()];
    p[root] = Some(group.identity());
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let pu = p[u].unwrap();
        for &d in &by_tail[u] {
            if !keep(d.edge()) {
                continue;
            }
            let w = g.head(d);
            if p[w].is_none() {
                p[w] = Some(group.mul(pu, alpha[d.index()]));
                queue.push_back(w);
            }
        }
    }
    p
}

/// Local voltage group at `root` of the subgraph of kept edges, generated
/// by `p(t)·α(d)·p(h)⁻¹` over the kept darts.
pub fn local_group<G: DartGraph + ?Sized>(
    g: &G,
    group: &FiniteGroup,
    alpha: &[Elem],
    root: usize,
    keep: &dyn Fn(usize) -> bool,
) -> Subgroup {
    let p = tree_potentials(g, group, alpha, root, keep);
    let mut gens = Vec::new();
    for d in 0..g.dart_count() as u32 {
        let d = Dart(d);
        if !keep(d.edge()) {
            continue;
        }
        if let (Some(pt), Some(ph)) = (p[g.tail(d)], p[g.head(d)]) {
            let x = group.mul(group.mul(pt, alpha[d.index()]), group.inv(ph));
            if x != group.identity() {
                gens.push(x);
            }
        }
    }
    gens.sort_unstable();
    gens.dedup();
    group.subgroup_generated(&gens).expect("generators in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn involution_checked() {
        let p2 = catalog::projective_loop();
        let bad = VoltageEmbedding::new(p2.clone(), z(6), vec![Elem(2), Elem(2)]);
        assert_eq!(bad.unwrap_err(), Error::VoltageInvolution { edge: 0 });
        assert!(VoltageEmbedding::new(p2.clone(), z(6), vec![Elem(3), Elem(3)]).is_ok());
        assert!(VoltageEmbedding::new(p2, z(2), vec![Elem(1), Elem(1)]).is_ok());
    }

    #[test]
    fn net_voltages() {
        let torus = catalog::torus_bouquet();
        let ve = VoltageEmbedding::from_edge_voltages(torus.clone(), z(6), &[Elem(1), Elem(2)]).unwrap();
        let empty = WalkSpec::new(&torus, vec![]).unwrap();
        assert_eq!(ve.net_voltage(&empty), Elem(0));
        let w = WalkSpec::new(&torus, vec![Dart(0), Dart(2), Dart(2)]).unwrap();
        assert_eq!(ve.net_voltage(&w), Elem(5));
        let mut both = w.darts().to_vec();
        both.extend_from_slice(w.reversed().darts());
        assert_eq!(ve.net_voltage(&WalkSpec::new(&torus, both).unwrap()), Elem(0));
        let theta = catalog::sphere_theta();
        assert!(WalkSpec::new(&theta, vec![Dart(0), Dart(2)]).is_err());
    }

    #[test]
    fn local_groups() {
        let torus = catalog::torus_bouquet();
        let ve = VoltageEmbedding::from_edge_voltages(torus, z(6), &[Elem(2), Elem(0)]).unwrap();
        assert_eq!(ve.local_voltage_group(0).unwrap().elements(), &[Elem(0), Elem(2), Elem(4)]);
        let x = ve.restricted_voltage_group(&EdgeChain::new([1]), 0).unwrap();
        assert_eq!(x.len(), 1);

        let theta = catalog::sphere_theta();
        let ve = VoltageEmbedding::from_edge_voltages(theta, z(6), &[Elem(0), Elem(3), Elem(2)]).unwrap();
        assert_eq!(ve.local_voltage_group(1).unwrap().len(), 6);
        let c = ve.restricted_voltage_group(&EdgeChain::new([0, 1]), 0).unwrap();
        assert_eq!(c.elements(), &[Elem(0), Elem(3)]);
        assert!(ve.restricted_voltage_group(&EdgeChain::new([0]), 0).unwrap().len() == 1);
        assert!(ve.same_component(0, Elem(1), Elem(4)).unwrap());
    }
}
