//! Voltage-level operations that change the base data but not the derived
//! embedding, each paired with an explicit isomorphism witness.

use alloc::format;
use alloc::vec::Vec;

use super::{DerivedEmbedding, VoltageEmbedding};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::surface::{Dart, DartGraph, EmbeddedGraph};

/// Vertex and dart maps claimed to carry one embedding onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub vertex_map: Vec<usize>,
    pub dart_map: Vec<Dart>,
}

impl IsomorphismWitness {
    pub fn check(&self, from: &EmbeddedGraph, to: &EmbeddedGraph) -> Result<()> {
        from.check_isomorphism(to, &self.vertex_map, &self.dart_map)
    }
}

impl VoltageEmbedding {
    /// Multiply the voltage of every dart leaving `v` on the left by `c`.
    /// Returns the new assignment and the witness `(v,a) ↦ (v,ac⁻¹)` from
    /// the old derived embedding to the new one.
    pub fn local_voltage_modification(&self, v: usize, c: Elem) -> Result<(VoltageEmbedding, IsomorphismWitness)> {
        let g = self.base();
        if v >= g.vertex_count() {
            return Err(Error::IndexOutOfRange { kind: "vertex", index: v, len: g.vertex_count() });
        }
        self.group().check(c)?;
        if g.rotation(v).iter().any(|&d| g.is_loop(d.edge())) {
            return Err(Error::Hypothesis(format!("vertex {v} carries a loop")));
        }
        let grp = self.group();
        let mut alpha = self.alphas().to_vec();
        for &d in g.rotation(v) {
            alpha[d.index()] = grp.mul(c, alpha[d.index()]);
            alpha[d.reversed().index()] = grp.inv(alpha[d.index()]);
        }
        let modified = VoltageEmbedding::new(g.clone(), grp.clone(), alpha)?;
        let old = self.derive()?;
        let new = modified.derive()?;
        let shift = |u: usize, a: Elem| if u == v { grp.mul(a, grp.inv(c)) } else { a };
        let vertex_map = (0..old.graph().vertex_count())
            .map(|x| {
                let (u, a) = old.vertex_label(x);
                new.vertex(u, shift(u, a))
            })
            .collect();
        let dart_map = (0..old.graph().dart_count() as u32)
            .map(|x| {
                let (d, a) = old.project_dart(Dart(x));
                new.lift_dart(d, shift(g.tail(d), a))
            })
            .collect();
        Ok((modified, IsomorphismWitness { vertex_map, dart_map }))
    }

    /// Replace edge `e` by a path of length two carrying `(α(e), 1_A)`.
    /// Returns the new assignment and a witness from its derived embedding
    /// to the old derived embedding with each edge of the fiber over `e`
    /// subdivided, in order of superscript.
    pub fn subdivide_voltage(&self, e: usize) -> Result<(VoltageEmbedding, IsomorphismWitness, EmbeddedGraph)> {
        let g = self.base();
        let (sub, x, f) = g.subdivide_edge(e)?;
        let grp = self.group();
        let mut alpha = self.alphas().to_vec();
        alpha.push(grp.identity());
        alpha.push(grp.identity());
        let ve = VoltageEmbedding::new(sub, grp.clone(), alpha)?;

        let old = self.derive()?;
        let n = grp.order();
        let mut target = old.graph().clone();
        for b in 0..n {
            target = target.subdivide_edge(old.edge(e, Elem(b as u32)))?.0;
        }
        let new = ve.derive()?;
        let base_v = g.vertex_count() * n;
        let base_e = g.edge_count() * n;
        let ae_inv = grp.inv(self.alpha(Dart::positive(e)));
        let vertex_map = (0..new.graph().vertex_count())
            .map(|y| {
                let (u, a) = new.vertex_label(y);
                if u == x {
                    base_v + grp.mul(a, ae_inv).index()
                } else {
                    y
                }
            })
            .collect();
        let dart_map = (0..new.graph().dart_count() as u32)
            .map(|y| {
                let y = Dart(y);
                let (k, a) = new.edge_label(y.edge());
                let edge = if k == f { base_e + grp.mul(a, ae_inv).index() } else { y.edge() };
                Dart::new(edge, y.is_positive())
            })
            .collect();
        Ok((ve, IsomorphismWitness { vertex_map, dart_map }, target))
    }
}

/// The lift to `A × ℤ_n` with `α₂(d) = (α(d), 0)`.
pub fn product_lift(ve: &VoltageEmbedding, n: usize) -> Result<VoltageEmbedding> {
    let zn = FiniteGroup::cyclic(n)?;
    let group = FiniteGroup::direct_product(ve.group(), &zn)?;
    let alpha = ve.alphas().iter().map(|a| Elem((a.index() * n) as u32)).collect();
    VoltageEmbedding::new(ve.base().clone(), group, alpha)
}

impl DerivedEmbedding {
    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        self.graph().components().1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn modification_keeps_derived_embedding() {
        let ve = VoltageEmbedding::from_edge_voltages(catalog::sphere_theta(), z(6), &[Elem(1), Elem(4), Elem(3)])
            .unwrap();
        for v in 0..2 {
            for c in ve.group().elements() {
                let (m, wit) = ve.local_voltage_modification(v, c).unwrap();
                wit.check(ve.derive().unwrap().graph(), m.derive().unwrap().graph()).unwrap();
                assert_eq!(m.derive().unwrap().component_count(), ve.derive().unwrap().component_count());
            }
        }
        let (same, _) = ve.local_voltage_modification(0, Elem(0)).unwrap();
        assert_eq!(same, ve);
        let loops = VoltageEmbedding::from_edge_voltages(catalog::torus_bouquet(), z(2), &[Elem(1), Elem(0)])
            .unwrap();
        assert!(loops.local_voltage_modification(0, Elem(1)).is_err());
    }

    #[test]
    fn subdivision_keeps_derived_embedding() {
        for base in [catalog::projective_loop(), catalog::klein_bouquet(), catalog::sphere_theta()] {
            let m = base.edge_count();
            let alpha: Vec<Elem> = (0..m).map(|i| Elem((i % 4) as u32 + 1)).collect();
            let ve = VoltageEmbedding::from_edge_voltages(base, z(5), &alpha).unwrap();
            let d = ve.derive().unwrap();
            for e in 0..m {
                let (s, wit, target) = ve.subdivide_voltage(e).unwrap();
                let sd = s.derive().unwrap();
                wit.check(sd.graph(), &target).unwrap();
                assert_eq!(sd.graph().vertex_count(), d.graph().vertex_count() + 5);
                assert_eq!(sd.component_count(), d.component_count());
                assert_eq!(sd.graph().euler_characteristic(), d.graph().euler_characteristic());
            }
        }
    }

    #[test]
    fn product_lift_multiplies_components() {
        let ve = VoltageEmbedding::from_edge_voltages(catalog::torus_bouquet(), z(4), &[Elem(2), Elem(0)]).unwrap();
        let before = ve.derive().unwrap().component_count();
        for n in 1..5 {
            let lifted = product_lift(&ve, n).unwrap();
            assert_eq!(lifted.derive().unwrap().component_count(), n * before);
        }
    }
}
