//! Signed face tracing, ℤ₂ chains and subcomplex skeletons.

use alloc::vec;
use alloc::vec::Vec;

use super::{Dart, DartGraph, EmbeddedGraph, Sign};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// One face boundary walk.
///
/// `darts[i]` is traversed while the local orientation is `signs[i]`;
/// `corners[i]` is the corner passed at the head of `darts[i]`, named by
/// the dart it follows in the rotation (corner `c(d)` lies between `d`
/// and `ρ(d)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
    pub signs: Vec<Sign>,
    pub corners: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// All faces of an embedding, with the face owning each corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    walks: Vec<FaceWalk>,
    corner_face: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn walks(&self) -> &[FaceWalk] {
        &self.walks
    }

    /// Face containing corner `c(d)`.
    pub fn face_of_corner(&self, d: Dart) -> usize {
        self.corner_face[d.index()]
    }

    /// Histogram `(length, count)` sorted by length.
    pub fn census(&self) -> Vec<(usize, usize)> {
        let mut lengths: Vec<usize> = self.walks.iter().map(FaceWalk::len).collect();
        lengths.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for l in lengths {
            match out.last_mut() {
                Some((len, count)) if *len == l => *count += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }
}

#[inline]
fn state_index(d: Dart, s: Sign) -> usize {
    2 * d.index() + usize::from(!s.is_plus())
}

/// One step of signed face tracing: from `(d, σ)` set `σ' = σ·λ(d)`; at
/// the head of `d` continue with the rotation successor of `d⁻¹` when
/// `σ' = +`, the predecessor otherwise. Returns the next state and the
/// corner passed.
#[inline]
fn step(g: &EmbeddedGraph, d: Dart, s: Sign) -> (Dart, Sign, Dart) {
    let s2 = s * g.sign(d.edge());
    let r = d.reversed();
    if s2.is_plus() {
        (g.succ(r), s2, r)
    } else {
        let next = g.pred(r);
        (next, s2, next)
    }
}

/// The reversal involution on dart–side states: walking a face backwards
/// visits `(d⁻¹, −σ·λ(d))` wherever the forward walk visits `(d, σ)`.
#[inline]
fn reverse_state(g: &EmbeddedGraph, d: Dart, s: Sign) -> (Dart, Sign) {
    (d.reversed(), (s * g.sign(d.edge())).flip())
}

pub(super) fn trace_faces(g: &EmbeddedGraph) -> FaceSet {
    let states = 2 * g.dart_count();
    let mut seen = vec![false; states];
    let mut walks = Vec::new();
    let mut corner_face = vec![usize::MAX; g.dart_count()];
    for start in 0..states {
        if seen[start] {
            continue;
        }
        let d0 = Dart((start / 2) as u32);
        let s0 = if start % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let face = walks.len();
        let mut walk = FaceWalk { darts: Vec::new(), signs: Vec::new(), corners: Vec::new() };
        let (mut d, mut s) = (d0, s0);
        loop {
            seen[state_index(d, s)] = true;
            let (nd, ns, corner) = step(g, d, s);
            walk.darts.push(d);
            walk.signs.push(s);
            walk.corners.push(corner);
            corner_face[corner.index()] = face;
            d = nd;
            s = ns;
            if d == d0 && s == s0 {
                break;
            }
        }
        // mark the reverse orbit; it describes the same face
        let (rd, rs) = reverse_state(g, d0, s0);
        if !seen[state_index(rd, rs)] {
            let (mut d, mut s) = (rd, rs);
            loop {
                seen[state_index(d, s)] = true;
                let (nd, ns, _) = step(g, d, s);
                d = nd;
                s = ns;
                if d == rd && s == rs {
                    break;
                }
            }
        }
        walks.push(walk);
    }
    FaceSet { walks, corner_face }
}

/// A ℤ₂ 1-chain: a set of edges, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct EdgeChain(Vec<usize>);

impl EdgeChain {
    pub fn new<I: IntoIterator<Item = usize>>(edges: I) -> Self {
        let mut v: Vec<usize> = edges.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        EdgeChain(v)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mask(&self, edge_count: usize) -> Vec<bool> {
        let mut m = vec![false; edge_count];
        for &e in &self.0 {
            m[e] = true;
        }
        m
    }
}

/// A ℤ₂ 2-chain: a set of faces, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct FaceChain(Vec<usize>);

impl FaceChain {
    pub fn new<I: IntoIterator<Item = usize>>(faces: I) -> Self {
        let mut v: Vec<usize> = faces.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FaceChain(v)
    }

    pub fn faces(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Complement within `0..face_count`.
    pub fn complement(&self, face_count: usize) -> FaceChain {
        FaceChain((0..face_count).filter(|f| self.0.binary_search(f).is_err()).collect())
    }
}

/// The 1-skeleton of a subcomplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: Vec<usize>,
    pub edges: EdgeChain,
    pub connected: bool,
}

impl EmbeddedGraph {
    fn check_faces(&self, faces: &FaceSet, chain: &FaceChain) -> Result<()> {
        if let Some(&f) = chain.faces().iter().find(|&&f| f >= faces.len()) {
            return Err(Error::IndexOutOfRange { kind: "face", index: f, len: faces.len() });
        }
        Ok(())
    }

    /// ∂ of a face chain: edges met an odd number of times by the chosen
    /// faces' boundary walks.
    pub fn boundary(&self, faces: &FaceSet, chain: &FaceChain) -> Result<EdgeChain> {
        self.check_faces(faces, chain)?;
        let mut parity = vec![false; self.edge_count()];
        for &f in chain.faces() {
            for d in &faces.walks()[f].darts {
                parity[d.edge()] ^= true;
            }
        }
        Ok(EdgeChain::new((0..self.edge_count()).filter(|&e| parity[e])))
    }

    /// The 1-skeleton `G:I` of the subcomplex `S:I`.
    pub fn subcomplex_skeleton(&self, faces: &FaceSet, chain: &FaceChain) -> Result<Skeleton> {
        self.check_faces(faces, chain)?;
        let mut edge_in = vec![false; self.edge_count()];
        for &f in chain.faces() {
            for d in &faces.walks()[f].darts {
                edge_in[d.edge()] = true;
            }
        }
        let edges = EdgeChain::new((0..self.edge_count()).filter(|&e| edge_in[e]));
        Ok(self.edge_skeleton(&edges))
    }

    /// The subgraph `G:X` spanned by an edge set, with its connectedness.
    pub fn edge_skeleton(&self, edges: &EdgeChain) -> Skeleton {
        let mut vertex_in = vec![false; self.vertex_count()];
        let mut uf = UnionFind::new(self.vertex_count());
        for &e in edges.edges() {
            let (t, h) = self.endpoints(e);
            vertex_in[t] = true;
            vertex_in[h] = true;
            uf.union(t, h);
        }
        let vertices: Vec<usize> = (0..self.vertex_count()).filter(|&v| vertex_in[v]).collect();
        let connected = match vertices.first() {
            None => true,
            Some(&v0) => {
                let r = uf.find(v0);
                vertices.iter().all(|&v| uf.find(v) == r)
            }
        };
        Skeleton { vertices, edges: edges.clone(), connected }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn walk_lengths_sum_to_twice_edges() {
        for g in catalog::all() {
            let faces = g.faces();
            let total: usize = faces.walks().iter().map(FaceWalk::len).sum();
            assert_eq!(total, 2 * g.edge_count());
            // each corner owned by exactly one face
            let mut corners: Vec<Dart> = faces.walks().iter().flat_map(|w| w.corners.clone()).collect();
            corners.sort_unstable();
            corners.dedup();
            assert_eq!(corners.len(), g.dart_count());
        }
    }

    #[test]
    fn boundaries() {
        let theta = catalog::sphere_theta();
        let faces = theta.faces();
        let all = FaceChain::new(0..faces.len());
        assert!(theta.boundary(&faces, &all).unwrap().is_empty());
        for f in 0..faces.len() {
            let one = FaceChain::new([f]);
            let b = theta.boundary(&faces, &one).unwrap();
            assert_eq!(b.len(), 2);
            let c = theta.boundary(&faces, &one.complement(faces.len())).unwrap();
            assert_eq!(b, c);
        }
        assert!(theta.boundary(&faces, &FaceChain::new([7])).is_err());
    }

    #[test]
    fn skeletons() {
        let theta = catalog::sphere_theta();
        let faces = theta.faces();
        let all = theta.subcomplex_skeleton(&faces, &FaceChain::new(0..faces.len())).unwrap();
        assert_eq!(all.vertices.len(), 2);
        assert_eq!(all.edges.len(), 3);
        assert!(all.connected);
        let none = theta.subcomplex_skeleton(&faces, &FaceChain::default()).unwrap();
        assert!(none.vertices.is_empty() && none.edges.is_empty());
        let one = theta.subcomplex_skeleton(&faces, &FaceChain::new([0])).unwrap();
        assert_eq!((one.vertices.len(), one.edges.len()), (2, 2));
    }

    #[test]
    fn census_counts() {
        let theta = catalog::sphere_theta();
        assert_eq!(theta.faces().census(), alloc::vec![(2, 3)]);
    }
}
