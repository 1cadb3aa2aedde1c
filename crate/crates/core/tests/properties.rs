use proptest::prelude::*;
use voltage_core::{Dart, DartGraph, Elem, EmbeddedGraph, FiniteGroup, Sign, VoltageEmbedding};

/// A connected signed rotation system: a random tree plus extra edges,
/// darts shuffled by the permutation keys.
fn embedded() -> impl Strategy<Value = EmbeddedGraph> {
    (1usize..=4, 0usize..=5)
        .prop_flat_map(|(nv, extra)| {
            let ne = (nv - 1 + extra).max(1);
            (
                Just(nv),
                proptest::collection::vec(any::<prop::sample::Index>(), ne * 2),
                proptest::collection::vec(any::<bool>(), ne),
                proptest::collection::vec(any::<u32>(), 2 * ne),
            )
        })
        .prop_map(|(nv, ends, signs, keys)| {
            let ne = signs.len();
            let mut edges = Vec::with_capacity(ne);
            for e in 0..ne {
                if e + 1 < nv {
                    edges.push((ends[2 * e].index(e + 1), e + 1));
                } else {
                    edges.push((ends[2 * e].index(nv), ends[2 * e + 1].index(nv)));
                }
            }
            let mut rotation = vec![Vec::new(); nv];
            for (e, &(t, h)) in edges.iter().enumerate() {
                rotation[t].push(Dart::positive(e));
                rotation[h].push(Dart::negative(e));
            }
            for r in &mut rotation {
                r.sort_by_key(|d| keys[d.index()]);
            }
            let signs = signs.into_iter().map(|s| if s { Sign::Plus } else { Sign::Minus }).collect();
            EmbeddedGraph::new(nv, &edges, signs, rotation).unwrap()
        })
}

fn voltages(g: &EmbeddedGraph, n: usize, seed: &[u32]) -> VoltageEmbedding {
    let alpha: Vec<Elem> = (0..g.edge_count()).map(|e| Elem(seed[e % seed.len()] % n as u32)).collect();
    VoltageEmbedding::from_edge_voltages(g.clone(), FiniteGroup::cyclic(n).unwrap(), &alpha).unwrap()
}

proptest! {
    #[test]
    fn derived_euler_characteristic_is_predicted(g in embedded(), n in 1usize..=8, seed in proptest::collection::vec(any::<u32>(), 1..6)) {
        let ve = voltages(&g, n, &seed);
        let d = ve.derive().unwrap();
        let pred = ve.face_lift_prediction();
        prop_assert_eq!(pred.face_count, d.graph().faces().len());
        prop_assert_eq!(pred.euler_characteristic, d.graph().euler_characteristic());
    }

    #[test]
    fn every_dart_bounds_exactly_one_face_corner(g in embedded()) {
        let faces = g.faces();
        let total: usize = faces.walks().iter().map(|w| w.len()).sum();
        prop_assert_eq!(total, g.dart_count());
    }

    #[test]
    fn sign_switch_keeps_the_surface(g in embedded(), v in any::<prop::sample::Index>()) {
        let v = v.index(g.vertex_count());
        let s = g.local_sign_switch(v).unwrap();
        prop_assert_eq!(s.euler_characteristic(), g.euler_characteristic());
        prop_assert_eq!(s.is_orientable(), g.is_orientable());
        prop_assert_eq!(s.local_sign_switch(v).unwrap(), g);
    }

    #[test]
    fn component_count_is_the_index_of_the_local_group(g in embedded(), n in 1usize..=8, seed in proptest::collection::vec(any::<u32>(), 1..6)) {
        let ve = voltages(&g, n, &seed);
        let local = ve.local_voltage_group(0).unwrap();
        prop_assert_eq!(ve.derive().unwrap().component_count(), n / local.len());
    }

    #[test]
    fn medial_of_derived_matches(g in embedded(), n in 1usize..=6, seed in proptest::collection::vec(any::<u32>(), 1..6)) {
        prop_assert!(voltages(&g, n, &seed).verify_medial_of_derived().is_ok());
    }
}

#[test]
fn cyclic_cosets_partition_the_group() {
    let g = FiniteGroup::cyclic(12).unwrap();
    let h = g.subgroup_generated(&[Elem(4)]).unwrap();
    let all: Vec<Elem> = g.elements().collect();
    let parts = g.left_cosets(&all, &h).unwrap();
    assert_eq!(parts.len(), 4);
    let mut seen: Vec<Elem> = parts.cosets.iter().flatten().copied().collect();
    seen.sort();
    assert_eq!(seen, all);
}
