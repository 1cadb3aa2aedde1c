use alloc::vec;
use alloc::vec::Vec;

use crate::group::Elem;
use crate::surface::Side;
use crate::unionfind::UnionFind;

/// What a z-graph vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZVertexLabel {
    /// A region id from cutting a surface.
    Region(usize),
    /// A left coset, tagged by the side family it belongs to.
    Coset(CosetTag, Vec<Elem>),
    /// The tip superscripts of one region: those over `w′` and those over `y′`.
    TipSets { w: Vec<Elem>, y: Vec<Elem> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CosetTag {
    /// Coset of the group of the distinguished face set `I`.
    Inside,
    /// Coset of the group of the complement `I^c`.
    Outside,
    Plain,
}

/// Which end of an edge this is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndTag {
    Bank(Side),
    Inside,
    Outside,
    Untagged,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZEnd {
    pub vertex: usize,
    pub tag: EndTag,
    pub label: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZEdgeLabel {
    /// Index into the list of cut circles.
    Circle(usize),
    /// A left coset of `⟨ω⟩`.
    Coset(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZEdge {
    pub label: ZEdgeLabel,
    pub ends: [ZEnd; 2],
}

impl ZEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0].vertex == self.ends[1].vertex
    }
}

/// A labeled multigraph with loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZGraph {
    pub vertices: Vec<ZVertexLabel>,
    pub edges: Vec<ZEdge>,
}

type CanonEnd = (ZVertexLabel, EndTag, Vec<Elem>);

impl ZGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degrees, loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.ends[0].vertex] += 1;
            deg[e.ends[1].vertex] += 1;
        }
        deg
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.ends[0].vertex, e.ends[1].vertex);
        }
        uf.labels().1 == 1
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertices.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            let (a, b) = (e.ends[0].vertex, e.ends[1].vertex);
            adj[a].push(b);
            adj[b].push(a);
        }
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Sorted vertex labels and sorted edges, each edge written as its
    /// label plus its two ends by vertex label. Two z-graphs are equal as
    /// labeled graphs iff their canonical forms agree.
    pub fn canonical(&self) -> (Vec<ZVertexLabel>, Vec<(ZEdgeLabel, [CanonEnd; 2])>) {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let mut ends = e
                    .ends
                    .clone()
                    .map(|end| (self.vertices[end.vertex].clone(), end.tag, end.label));
                ends.sort();
                (e.label.clone(), ends)
            })
            .collect();
        edges.sort();
        (vertices, edges)
    }

    pub fn same_labeled(&self, other: &ZGraph) -> bool {
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn end(vertex: usize) -> ZEnd {
        ZEnd { vertex, tag: EndTag::Untagged, label: Vec::new() }
    }

    fn bouquet(n: usize) -> ZGraph {
        ZGraph {
            vertices: vec![ZVertexLabel::Region(0)],
            edges: (0..n)
                .map(|i| ZEdge { label: ZEdgeLabel::Circle(i), ends: [end(0), end(0)] })
                .collect(),
        }
    }

    #[test]
    fn bouquet_shape() {
        let z = bouquet(3);
        assert_eq!(z.loop_count(), 3);
        assert_eq!(z.regular_degree(), Some(6));
        assert!(z.is_connected());
        assert!(!z.is_bipartite());
    }

    #[test]
    fn labeled_equality_ignores_order() {
        let a = ZGraph {
            vertices: vec![ZVertexLabel::Region(0), ZVertexLabel::Region(1)],
            edges: vec![
                ZEdge { label: ZEdgeLabel::Circle(0), ends: [end(0), end(1)] },
                ZEdge { label: ZEdgeLabel::Circle(1), ends: [end(1), end(1)] },
            ],
        };
        let b = ZGraph {
            vertices: vec![ZVertexLabel::Region(1), ZVertexLabel::Region(0)],
            edges: vec![
                ZEdge { label: ZEdgeLabel::Circle(1), ends: [end(0), end(0)] },
                ZEdge { label: ZEdgeLabel::Circle(0), ends: [end(0), end(1)] },
            ],
        };
        assert!(a.same_labeled(&b));
        assert!(a.is_connected());
        let c = ZGraph { vertices: a.vertices.clone(), edges: a.edges[..1].to_vec() };
        assert!(!a.same_labeled(&c));
        assert!(c.is_bipartite());
    }
}
