use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Dart, DartGraph, EdgeChain, EmbeddedGraph, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationType {
    Preserving,
    Reversing,
}

/// A connected 2-regular subgraph together with its Eulerian traversal
/// from a base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSubgraph {
    edges: EdgeChain,
    base_vertex: usize,
    walk: Vec<Dart>,
}

impl CircleSubgraph {
    /// Validate `edges` as a circle and cache the traversal `W = d₁…d_k`
    /// starting at `base_vertex`. `d₁` is the smallest circle dart leaving
    /// the base vertex.
    pub fn new(g: &EmbeddedGraph, edges: EdgeChain, base_vertex: usize) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NotACircle("empty edge set".into()));
        }
        if let Some(&e) = edges.edges().iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::IndexOutOfRange { kind: "edge", index: e, len: g.edge_count() });
        }
        let mut degree = vec![0usize; g.vertex_count()];
        for &e in edges.edges() {
            let (t, h) = g.endpoints(e);
            degree[t] += 1;
            degree[h] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d != 0 && d != 2) {
            return Err(Error::NotACircle(format!("vertex {v} has degree {} in the chain", degree[v])));
        }
        if degree[base_vertex] == 0 {
            return Err(Error::NotACircle(format!("base vertex {base_vertex} is not on the chain")));
        }
        let in_chain = edges.mask(g.edge_count());
        let first = (0..g.dart_count() as u32)
            .map(Dart)
            .filter(|&d| in_chain[d.edge()] && g.tail(d) == base_vertex)
            .min()
            .expect("base vertex has chain darts");
        let mut walk = vec![first];
        let mut current = first;
        loop {
            let at = g.head(current);
            if at == base_vertex && walk.len() > 1 || walk.len() == edges.len() {
                break;
            }
            let back = current.reversed();
            let next = (0..g.dart_count() as u32)
                .map(Dart)
                .find(|&d| in_chain[d.edge()] && g.tail(d) == at && d != back && d.edge() != current.edge())
                .ok_or_else(|| Error::NotACircle(format!("traversal stuck at vertex {at}")))?;
            walk.push(next);
            current = next;
        }
        if walk.len() != edges.len() || g.head(*walk.last().unwrap()) != base_vertex {
            return Err(Error::NotACircle("edge set is not connected".into()));
        }
        Ok(CircleSubgraph { edges, base_vertex, walk })
    }

    pub fn edges(&self) -> &EdgeChain {
        &self.edges
    }

    pub fn base_vertex(&self) -> usize {
        self.base_vertex
    }

    /// The Eulerian traversal, starting at the base vertex.
    pub fn walk(&self) -> &[Dart] {
        &self.walk
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn vertices(&self, g: &EmbeddedGraph) -> Vec<usize> {
        self.walk.iter().map(|&d| g.tail(d)).collect()
    }

    /// Reversing iff the product of edge signs is `−`.
    pub fn orientation_type(&self, g: &EmbeddedGraph) -> OrientationType {
        match Sign::product(self.edges.edges().iter().map(|&e| g.sign(e))) {
            Sign::Plus => OrientationType::Preserving,
            Sign::Minus => OrientationType::Reversing,
        }
    }
}

/// Every circle of a graph with at most 20 edges, each based at its
/// smallest vertex, ordered by edge set. Exhaustive over edge subsets.
pub fn enumerate_circles(g: &EmbeddedGraph) -> Result<Vec<CircleSubgraph>> {
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::SizeCap { what: "circle enumeration edges", size: m, cap: 20 });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let edges = EdgeChain::new((0..m).filter(|&e| mask & (1 << e) != 0));
        let mut degree = vec![0usize; g.vertex_count()];
        for &e in edges.edges() {
            let (t, h) = g.endpoints(e);
            degree[t] += 1;
            degree[h] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let base = degree.iter().position(|&d| d == 2).unwrap();
        if let Ok(c) = CircleSubgraph::new(g, edges, base) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn circles_from_edges() {
        let p2 = catalog::projective_loop();
        let c = CircleSubgraph::new(&p2, EdgeChain::new([0]), 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.orientation_type(&p2), OrientationType::Reversing);

        let theta = catalog::sphere_theta();
        let c = CircleSubgraph::new(&theta, EdgeChain::new([0, 1]), 0).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.walk()[0], Dart::positive(0));
        assert_eq!(c.orientation_type(&theta), OrientationType::Preserving);
        assert!(CircleSubgraph::new(&theta, EdgeChain::new([0, 1, 2]), 0).is_err());

        let minus = theta
            .with_signs(alloc::vec![Sign::Minus, Sign::Minus, Sign::Plus])
            .unwrap();
        let c = CircleSubgraph::new(&minus, EdgeChain::new([0, 1]), 1).unwrap();
        assert_eq!(c.orientation_type(&minus), OrientationType::Preserving);
        assert_eq!(minus.tail(c.walk()[0]), 1);
    }

    #[test]
    fn disconnected_chain_rejected() {
        // two disjoint loops at different vertices joined by a link
        let g = catalog::dumbbell();
        assert!(CircleSubgraph::new(&g, EdgeChain::new([0, 2]), 0).is_err());
        assert!(CircleSubgraph::new(&g, EdgeChain::new([0]), 0).is_ok());
    }

    #[test]
    fn enumeration() {
        let theta = catalog::sphere_theta();
        let circles = enumerate_circles(&theta).unwrap();
        assert_eq!(circles.len(), 3);
        let torus = catalog::torus_bouquet();
        assert_eq!(enumerate_circles(&torus).unwrap().len(), 2);
    }
}
