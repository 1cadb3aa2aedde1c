//! Small embeddings whose surfaces are known in advance.

use alloc::vec;
use alloc::vec::Vec;

use crate::surface::{Dart, EmbeddedGraph, Sign};

fn p(e: usize) -> Dart {
    Dart::positive(e)
}

fn n(e: usize) -> Dart {
    Dart::negative(e)
}

/// Two vertices joined by three edges, drawn in the plane.
pub fn sphere_theta() -> EmbeddedGraph {
    EmbeddedGraph::new(
        2,
        &[(0, 1), (0, 1), (0, 1)],
        vec![Sign::Plus; 3],
        vec![vec![p(0), p(1), p(2)], vec![n(2), n(1), n(0)]],
    )
    .expect("theta")
}

/// A single untwisted loop on the sphere.
pub fn sphere_loop() -> EmbeddedGraph {
    EmbeddedGraph::new(1, &[(0, 0)], vec![Sign::Plus], vec![vec![p(0), n(0)]]).expect("loop")
}

/// A single twisted loop: the projective plane.
pub fn projective_loop() -> EmbeddedGraph {
    EmbeddedGraph::new(1, &[(0, 0)], vec![Sign::Minus], vec![vec![p(0), n(0)]]).expect("p2")
}

/// Two interleaved untwisted loops: the torus.
pub fn torus_bouquet() -> EmbeddedGraph {
    EmbeddedGraph::new(
        1,
        &[(0, 0), (0, 0)],
        vec![Sign::Plus; 2],
        vec![vec![p(0), p(1), n(0), n(1)]],
    )
    .expect("torus")
}

/// Two interleaved loops, the first twisted: the Klein bottle.
pub fn klein_bouquet() -> EmbeddedGraph {
    EmbeddedGraph::new(
        1,
        &[(0, 0), (0, 0)],
        vec![Sign::Minus, Sign::Plus],
        vec![vec![p(0), p(1), n(0), n(1)]],
    )
    .expect("klein")
}

/// A loop at each end of a link, in the plane.
pub fn dumbbell() -> EmbeddedGraph {
    EmbeddedGraph::new(
        2,
        &[(0, 0), (0, 1), (1, 1)],
        vec![Sign::Plus; 3],
        vec![vec![p(0), n(0), p(1)], vec![n(1), p(2), n(2)]],
    )
    .expect("dumbbell")
}

pub fn all() -> Vec<EmbeddedGraph> {
    vec![
        sphere_theta(),
        sphere_loop(),
        projective_loop(),
        torus_bouquet(),
        klein_bouquet(),
        dumbbell(),
    ]
}
