//! Component counts of lifted subcomplexes, predicted from the tower of
//! local groups `⟨ω(W)⟩ ≤ A(v, G:y) ≤ A(v, S:I) ≤ A(v) ≤ A` and counted
//! directly on the derived graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{DerivedEmbedding, VoltageEmbedding, WalkSpec};
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};
use crate::surface::{Dart, DartGraph, EdgeChain, FaceChain};

/// A predicted count together with the count observed in every container
/// it should hold in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountCheck {
    pub predicted: usize,
    pub observed: Vec<usize>,
}

impl CountCheck {
    pub fn holds(&self) -> bool {
        !self.observed.is_empty() && self.observed.iter().all(|&x| x == self.predicted)
    }
}

/// The four counts for one choice of `(I, y, W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCounts {
    /// Components of `S^α`.
    pub components: CountCheck,
    /// Components of `(S:I)^α` per component of `S^α`.
    pub skeleton: CountCheck,
    /// Components of `(G:y)^α` per component of `(S:I)^α`.
    pub fiber: CountCheck,
    /// Sets of consecutive lifts of `W` per component of `(G:y)^α`.
    pub lifts: CountCheck,
}

impl CosetCounts {
    pub fn holds(&self) -> bool {
        self.components.holds() && self.skeleton.holds() && self.fiber.holds() && self.lifts.holds()
    }
}

/// One set of consecutive lifts `{W^d, W^{dω}, …}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftSet {
    /// Starting superscripts, sorted.
    pub elements: Vec<Elem>,
    /// Derived darts traversed, in walk order from the smallest start.
    pub darts: Vec<Dart>,
}

/// Partition `within` into sets of consecutive lifts of the closed walk
/// `w`, found by tracing the lifts through the derived graph.
pub fn consecutive_lift_sets(d: &DerivedEmbedding, w: &WalkSpec, within: &[Elem]) -> Result<Vec<LiftSet>> {
    if !w.is_closed() {
        return Err(Error::InvalidWalk("walk is not closed".into()));
    }
    let mut inside = vec![false; d.order()];
    for &a in within {
        d.group().check(a)?;
        inside[a.index()] = true;
    }
    let mut done = vec![false; d.order()];
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for &start in &sorted {
        if done[start.index()] {
            continue;
        }
        let mut elements = Vec::new();
        let mut darts = Vec::new();
        let mut at = start;
        loop {
            if !inside[at.index()] {
                return Err(Error::Mismatch(format!("lifts from {start} leave the given set")));
            }
            done[at.index()] = true;
            elements.push(at);
            let (lift, _) = d.lift_walk(w, at);
            at = match lift.last() {
                Some(&x) => d.vertex_label(d.graph().head(x)).1,
                None => at,
            };
            darts.extend(lift);
            if at == start {
                break;
            }
        }
        elements.sort_unstable();
        out.push(LiftSet { elements, darts });
    }
    Ok(out)
}

impl VoltageEmbedding {
    /// All four coset counts for `(I, y, W)` at `v`: `S:I` connected,
    /// `y` a connected edge set inside `G:I` through `v`, and `W` a closed
    /// walk of `G:y` based at `v`.
    pub fn coset_counts(
        &self,
        derived: &DerivedEmbedding,
        v: usize,
        faces: &FaceChain,
        y: &EdgeChain,
        w: &WalkSpec,
    ) -> Result<CosetCounts> {
        let g = self.base();
        let face_set = g.faces();
        let skel = g.subcomplex_skeleton(&face_set, faces)?;
        if skel.vertices.is_empty() || !skel.connected {
            return Err(Error::Hypothesis("S:I must be nonempty and connected".into()));
        }
        if let Some(&e) = y.edges().iter().find(|&&e| !skel.edges.contains(e)) {
            return Err(Error::Hypothesis(format!("edge {e} of y is not in G:I")));
        }
        if !w.is_closed() || w.darts().iter().any(|d| !y.contains(d.edge())) {
            return Err(Error::Hypothesis("W must be a closed walk of G:y".into()));
        }
        if w.darts().first().is_some_and(|&d| g.tail(d) != v) {
            return Err(Error::Hypothesis(format!("W is not based at {v}")));
        }
        let a_v = self.local_voltage_group(v)?;
        let a_i = self.restricted_voltage_group(&skel.edges, v)?;
        let a_y = self.restricted_voltage_group(y, v)?;
        let omega = self.group().subgroup_generated(&[self.net_voltage(w)])?;
        let n = self.group().order();

        let dg = derived.graph();
        let (comp, comp_count) = dg.components();
        let i_mask = skel.edges.mask(g.edge_count());
        let y_mask = y.mask(g.edge_count());
        let (comp_i, _) = dg.components_with(&|x| i_mask[x / n]);
        let (comp_y, _) = dg.components_with(&|x| y_mask[x / n]);
        let over = |mask: &[bool]| -> Vec<bool> {
            let mut on = vec![false; g.vertex_count()];
            for e in 0..g.edge_count() {
                if mask[e] {
                    let (t, h) = g.endpoints(e);
                    on[t] = true;
                    on[h] = true;
                }
            }
            on
        };
        let on_i = over(&i_mask);
        let on_y = over(&y_mask);

        // distinct inner labels per outer label, over the vertices selected
        let nested = |outer: &[usize], inner: &[usize], on: &[bool]| -> Vec<usize> {
            let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
            let mut outers: BTreeSet<usize> = BTreeSet::new();
            for x in 0..dg.vertex_count() {
                if on[x / n] {
                    seen.insert((outer[x], inner[x]));
                    outers.insert(outer[x]);
                }
            }
            outers
                .iter()
                .map(|&o| seen.range((o, 0)..(o, usize::MAX)).count())
                .collect()
        };
        let skeleton_observed = nested(&comp, &comp_i, &on_i);
        let fiber_observed = nested(&comp_i, &comp_y, &on_y);

        let all: Vec<Elem> = self.group().elements().collect();
        let sets = consecutive_lift_sets(derived, w, &all)?;
        let mut per_y: alloc::collections::BTreeMap<usize, usize> = Default::default();
        for x in 0..dg.vertex_count() {
            if on_y[x / n] {
                per_y.entry(comp_y[x]).or_insert(0);
            }
        }
        for s in &sets {
            *per_y.get_mut(&comp_y[derived.vertex(v, s.elements[0])]).expect("v is on G:y") += 1;
        }

        Ok(CosetCounts {
            components: CountCheck { predicted: n / a_v.len(), observed: vec![comp_count] },
            skeleton: CountCheck { predicted: a_v.len() / a_i.len(), observed: skeleton_observed },
            fiber: CountCheck { predicted: a_i.len() / a_y.len(), observed: fiber_observed },
            lifts: CountCheck { predicted: a_y.len() / omega.len(), observed: per_y.into_values().collect() },
        })
    }

    /// The tower `⟨ω⟩ ≤ A(v,G:y) ≤ A(v,S:I) ≤ A(v)` as subgroups.
    pub fn group_tower(&self, v: usize, faces: &FaceChain, y: &EdgeChain, w: &WalkSpec) -> Result<[Subgroup; 4]> {
        let skel = self.base().subcomplex_skeleton(&self.base().faces(), faces)?;
        Ok([
            self.group().subgroup_generated(&[self.net_voltage(w)])?,
            self.restricted_voltage_group(y, v)?,
            self.restricted_voltage_group(&skel.edges, v)?,
            self.local_voltage_group(v)?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;

    #[test]
    fn theta_counts() {
        let theta = catalog::sphere_theta();
        let g = FiniteGroup::cyclic(6).unwrap();
        let ve = VoltageEmbedding::from_edge_voltages(theta.clone(), g, &[Elem(0), Elem(2), Elem(3)]).unwrap();
        let d = ve.derive().unwrap();
        let faces = theta.faces();
        // the face bounded by edges 0 and 1
        let f = (0..faces.len())
            .find(|&f| {
                let mut e: Vec<usize> = faces.walks()[f].darts.iter().map(|d| d.edge()).collect();
                e.sort_unstable();
                e == [0, 1]
            })
            .unwrap();
        let y = EdgeChain::new([0, 1]);
        let w = WalkSpec::new(&theta, vec![Dart::positive(0), Dart::negative(1)]).unwrap();
        let c = ve.coset_counts(&d, 0, &FaceChain::new([f]), &y, &w).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.components.predicted, 1);
        assert_eq!(c.skeleton.predicted, 2);
        assert_eq!(c.fiber.predicted, 1);
        assert_eq!(c.lifts.predicted, 1);

        let empty = WalkSpec::new(&theta, vec![]).unwrap();
        let c = ve.coset_counts(&d, 0, &FaceChain::new([f]), &y, &empty).unwrap();
        assert!(c.holds());
        assert_eq!(c.lifts.predicted, 3);
    }

    #[test]
    fn lift_sets_partition() {
        let torus = catalog::torus_bouquet();
        let g = FiniteGroup::cyclic(6).unwrap();
        let ve = VoltageEmbedding::from_edge_voltages(torus.clone(), g, &[Elem(2), Elem(1)]).unwrap();
        let d = ve.derive().unwrap();
        let w = WalkSpec::new(&torus, vec![Dart::positive(0)]).unwrap();
        let all: Vec<Elem> = ve.group().elements().collect();
        let sets = consecutive_lift_sets(&d, &w, &all).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].elements, [Elem(0), Elem(2), Elem(4)]);
        assert_eq!(sets[0].darts.len(), 3);
        assert!(consecutive_lift_sets(&d, &w, &[Elem(0), Elem(2)]).is_err());
        let open = WalkSpec::new(&catalog::sphere_theta(), vec![Dart::positive(0)]).unwrap();
        assert!(consecutive_lift_sets(&d, &open, &all).is_err());
    }
}
