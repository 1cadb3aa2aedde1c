//! Embedded graphs as signed rotation systems.
//!
//! Edge `e` owns the positive dart `2e` and the negative dart `2e + 1`.
//! The tail of the negative dart is the head of the positive one. Every
//! vertex carries a cyclic order of the darts leaving it, and every edge a
//! sign: `+` for orientation-preserving, `−` for orientation-reversing.

mod circle;
mod faces;
mod regions;

pub use circle::{enumerate_circles, CircleSubgraph, OrientationType};
pub use faces::{EdgeChain, FaceChain, FaceSet, FaceWalk, Skeleton};
pub use regions::{RegionPartition, Side};

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// A directed edge. `Dart(2e)` is the positive dart of edge `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn new(edge: usize, positive: bool) -> Dart {
        Dart((2 * edge + usize::from(!positive)) as u32)
    }

    #[inline]
    pub fn positive(edge: usize) -> Dart {
        Dart::new(edge, true)
    }

    #[inline]
    pub fn negative(edge: usize) -> Dart {
        Dart::new(edge, false)
    }

    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn reversed(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge(), if self.is_positive() { '+' } else { '-' })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn product<I: IntoIterator<Item = Sign>>(it: I) -> Sign {
        it.into_iter().fold(Sign::Plus, |a, b| a * b)
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Anything with vertices and darts. Used by the spanning-tree and
/// connectivity routines so they run on embedded and bare graphs alike.
pub trait DartGraph {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn tail(&self, d: Dart) -> usize;

    fn head(&self, d: Dart) -> usize {
        self.tail(d.reversed())
    }

    fn dart_count(&self) -> usize {
        2 * self.edge_count()
    }

    /// Darts grouped by tail vertex, each list ascending.
    fn darts_by_tail(&self) -> Vec<Vec<Dart>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for d in 0..self.dart_count() as u32 {
            out[self.tail(Dart(d))].push(Dart(d));
        }
        out
    }

    /// Connected components restricted to edges accepted by `keep`.
    fn components_with(&self, keep: &dyn Fn(usize) -> bool) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in 0..self.edge_count() {
            if keep(e) {
                let d = Dart::positive(e);
                uf.union(self.tail(d), self.head(d));
            }
        }
        uf.labels()
    }
}

/// An edge-indexed graph with no embedding. Used for the total graph's
/// sub-pieces and the crossing-free split of the medial graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BareGraph {
    vertex_count: usize,
    tails: Vec<u32>,
}

impl BareGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut tails = Vec::with_capacity(2 * edges.len());
        for &(t, h) in edges {
            for v in [t, h] {
                if v >= vertex_count {
                    return Err(Error::IndexOutOfRange { kind: "vertex", index: v, len: vertex_count });
                }
            }
            tails.push(t as u32);
            tails.push(h as u32);
        }
        Ok(BareGraph { vertex_count, tails })
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.tails[2 * e] as usize, self.tails[2 * e + 1] as usize)
    }
}

impl DartGraph for BareGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    fn edge_count(&self) -> usize {
        self.tails.len() / 2
    }
    fn tail(&self, d: Dart) -> usize {
        self.tails[d.index()] as usize
    }
}

/// Surface classification of a connected embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusReport {
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// Orientable genus `(2 − χ)/2`, or crosscap number `2 − χ`.
    pub genus: i64,
}

/// A graph with a signed rotation system. Need not be connected; derived
/// embeddings often are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    vertex_count: usize,
    tails: Vec<u32>,
    signs: Vec<Sign>,
    rotation: Vec<Vec<Dart>>,
    /// Position of each dart inside its tail's rotation.
    slot: Vec<u32>,
}

impl DartGraph for EmbeddedGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    fn edge_count(&self) -> usize {
        self.signs.len()
    }
    fn tail(&self, d: Dart) -> usize {
        self.tails[d.index()] as usize
    }
}

impl EmbeddedGraph {
    /// Builds and validates an embedded graph. `edges[e] = (tail, head)` of
    /// the positive dart; `rotation[v]` lists every dart with tail `v`
    /// exactly once.
    pub fn new(
        vertex_count: usize,
        edges: &[(usize, usize)],
        signs: Vec<Sign>,
        rotation: Vec<Vec<Dart>>,
    ) -> Result<Self> {
        if signs.len() != edges.len() {
            return Err(Error::InvalidRotation(format!(
                "{} signs for {} edges",
                signs.len(),
                edges.len()
            )));
        }
        if rotation.len() != vertex_count {
            return Err(Error::InvalidRotation(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                vertex_count
            )));
        }
        let mut tails = Vec::with_capacity(2 * edges.len());
        for &(t, h) in edges {
            for v in [t, h] {
                if v >= vertex_count {
                    return Err(Error::IndexOutOfRange { kind: "vertex", index: v, len: vertex_count });
                }
            }
            tails.push(t as u32);
            tails.push(h as u32);
        }
        let dart_count = tails.len();
        let mut slot = vec![u32::MAX; dart_count];
        for (v, rot) in rotation.iter().enumerate() {
            if rot.is_empty() {
                return Err(Error::InvalidRotation(format!("vertex {v} is isolated")));
            }
            for (i, &d) in rot.iter().enumerate() {
                if d.index() >= dart_count {
                    return Err(Error::InvalidRotation(format!(
                        "rotation at {v} names unknown dart {d}"
                    )));
                }
                if slot[d.index()] != u32::MAX {
                    return Err(Error::InvalidRotation(format!("dart {d} appears twice")));
                }
                if tails[d.index()] as usize != v {
                    return Err(Error::InvalidRotation(format!(
                        "dart {d} listed at vertex {v} but its tail is {}",
                        tails[d.index()]
                    )));
                }
                slot[d.index()] = i as u32;
            }
        }
        if let Some(d) = slot.iter().position(|&s| s == u32::MAX) {
            return Err(Error::InvalidRotation(format!("dart {} missing from rotation", Dart(d as u32))));
        }
        Ok(EmbeddedGraph { vertex_count, tails, signs, rotation, slot })
    }

    #[inline]
    pub fn sign(&self, e: usize) -> Sign {
        self.signs[e]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    #[inline]
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    /// Rotation successor ρ(d).
    #[inline]
    pub fn succ(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.slot[d.index()] as usize + 1) % rot.len()]
    }

    /// Rotation predecessor ρ⁻¹(d).
    #[inline]
    pub fn pred(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        let i = self.slot[d.index()] as usize;
        rot[(i + rot.len() - 1) % rot.len()]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// `(tail, head)` of the positive dart.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.tails[2 * e] as usize, self.tails[2 * e + 1] as usize)
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.edge_count()).map(|e| self.endpoints(e)).collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (t, h) = self.endpoints(e);
        t == h
    }

    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_with(&|_| true)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    pub fn faces(&self) -> FaceSet {
        faces::trace_faces(self)
    }

    /// `χ = V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    /// True iff some sequence of local sign switches makes every edge
    /// positive, checked by propagating signs along a BFS spanning forest.
    pub fn is_orientable(&self) -> bool {
        self.orientation_witness().is_some()
    }

    /// A vertex sign `s` with `s(t)·λ(e)·s(h) = +` on every edge, if one exists.
    pub fn orientation_witness(&self) -> Option<Vec<Sign>> {
        let n = self.vertex_count;
        let by_tail = self.darts_by_tail();
        let mut side: Vec<Option<Sign>> = vec![None; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(Sign::Plus);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &d in &by_tail[u] {
                    let w = self.head(d);
                    let want = su * self.sign(d.edge());
                    match side[w] {
                        None => {
                            side[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(sw) if sw != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Classification of a connected embedding.
    pub fn genus_report(&self) -> GenusReport {
        let chi = self.euler_characteristic();
        let orientable = self.is_orientable();
        let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
        GenusReport { euler_characteristic: chi, orientable, genus }
    }

    /// Reverse the rotation at `v` and flip the sign of every link at `v`.
    /// Loops keep their sign.
    pub fn local_sign_switch(&self, v: usize) -> Result<Self> {
        if v >= self.vertex_count {
            return Err(Error::IndexOutOfRange { kind: "vertex", index: v, len: self.vertex_count });
        }
        let mut out = self.clone();
        out.rotation[v].reverse();
        for (i, &d) in out.rotation[v].iter().enumerate() {
            out.slot[d.index()] = i as u32;
        }
        for e in 0..self.edge_count() {
            let (t, h) = self.endpoints(e);
            if t != h && (t == v || h == v) {
                out.signs[e] = out.signs[e].flip();
            }
        }
        Ok(out)
    }

    /// Replace edge `e` by a path of length two through a new vertex. The
    /// first half keeps index `e` and its sign; the second half is a new
    /// positive edge appended at the end. Returns the new vertex and edge.
    pub fn subdivide_edge(&self, e: usize) -> Result<(Self, usize, usize)> {
        if e >= self.edge_count() {
            return Err(Error::IndexOutOfRange { kind: "edge", index: e, len: self.edge_count() });
        }
        let x = self.vertex_count;
        let f = self.edge_count();
        let (t, h) = self.endpoints(e);
        let mut edges = self.edge_list();
        edges[e] = (t, x);
        edges.push((x, h));
        let mut signs = self.signs.clone();
        signs.push(Sign::Plus);
        let mut rotation = self.rotation.clone();
        for d in rotation[h].iter_mut() {
            if *d == Dart::negative(e) {
                *d = Dart::negative(f);
            }
        }
        rotation.push(vec![Dart::negative(e), Dart::positive(f)]);
        let g = EmbeddedGraph::new(x + 1, &edges, signs, rotation)?;
        Ok((g, x, f))
    }

    /// Check that `vmap`, `dmap` carry `self` onto `other`: darts to darts
    /// compatibly with reversal and tails, signs kept, and each rotation
    /// carried onto the image vertex's rotation up to a cyclic shift.
    pub fn check_isomorphism(&self, other: &EmbeddedGraph, vmap: &[usize], dmap: &[Dart]) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::Mismatch(msg));
        if self.vertex_count != other.vertex_count || self.edge_count() != other.edge_count() {
            return fail(format!(
                "sizes differ: ({}, {}) vs ({}, {})",
                self.vertex_count,
                self.edge_count(),
                other.vertex_count,
                other.edge_count()
            ));
        }
        if vmap.len() != self.vertex_count || dmap.len() != self.dart_count() {
            return fail("map lengths do not match".into());
        }
        let mut hit = vec![false; self.vertex_count];
        for &x in vmap {
            if x >= self.vertex_count || core::mem::replace(&mut hit[x], true) {
                return fail("vertex map is not a bijection".into());
            }
        }
        let mut hit = vec![false; self.dart_count()];
        for (i, &d) in dmap.iter().enumerate() {
            let src = Dart(i as u32);
            if d.index() >= self.dart_count() || core::mem::replace(&mut hit[d.index()], true) {
                return fail("dart map is not a bijection".into());
            }
            if dmap[src.reversed().index()] != d.reversed() {
                return fail(format!("dart map does not commute with reversal at {src}"));
            }
            if other.tail(d) != vmap[self.tail(src)] {
                return fail(format!("dart {src} maps to {d} with the wrong tail"));
            }
            if other.sign(d.edge()) != self.sign(src.edge()) {
                return fail(format!("sign of edge {} not kept", src.edge()));
            }
        }
        for v in 0..self.vertex_count {
            let image: Vec<Dart> = self.rotation[v].iter().map(|d| dmap[d.index()]).collect();
            let target = &other.rotation[vmap[v]];
            let k = target.iter().position(|&d| d == image[0]).unwrap_or(usize::MAX);
            let same = k != usize::MAX
                && (0..image.len()).all(|i| target[(k + i) % target.len()] == image[i]);
            if !same {
                return fail(format!("rotation at vertex {v} not preserved"));
            }
        }
        Ok(())
    }

    /// Same rotation system, new signs.
    pub fn with_signs(&self, signs: Vec<Sign>) -> Result<Self> {
        EmbeddedGraph::new(self.vertex_count, &self.edge_list(), signs, self.rotation.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_surfaces() {
        let theta = catalog::sphere_theta();
        assert_eq!(theta.faces().len(), 3);
        let r = theta.genus_report();
        assert_eq!((r.euler_characteristic, r.orientable, r.genus), (2, true, 0));

        let p2 = catalog::projective_loop();
        let faces = p2.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces.walks()[0].len(), 2);
        let r = p2.genus_report();
        assert_eq!((r.euler_characteristic, r.orientable, r.genus), (1, false, 1));

        let torus = catalog::torus_bouquet();
        let faces = torus.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces.walks()[0].len(), 4);
        let r = torus.genus_report();
        assert_eq!((r.euler_characteristic, r.orientable, r.genus), (0, true, 1));

        let klein = catalog::klein_bouquet();
        let r = klein.genus_report();
        assert_eq!((r.euler_characteristic, r.orientable, r.genus), (0, false, 2));
    }

    #[test]
    fn orientability() {
        assert!(catalog::sphere_theta().is_orientable());
        assert!(!catalog::projective_loop().is_orientable());
        // theta with signs (−, −, +): cycle e0e1 has two reversing edges,
        // cycle e0e2 has one
        let theta = catalog::sphere_theta();
        let g = theta.with_signs(vec![Sign::Minus, Sign::Minus, Sign::Plus]).unwrap();
        assert!(!g.is_orientable());
        let g = theta.with_signs(vec![Sign::Minus, Sign::Minus, Sign::Minus]).unwrap();
        assert!(g.is_orientable());
    }

    #[test]
    fn sign_switches() {
        let torus = catalog::torus_bouquet();
        let s = torus.local_sign_switch(0).unwrap();
        assert_eq!(s.signs(), torus.signs());
        let mut rev = torus.rotation(0).to_vec();
        rev.reverse();
        assert_eq!(s.rotation(0), &rev[..]);

        let theta = catalog::sphere_theta();
        let s = theta.local_sign_switch(0).unwrap();
        assert!(s.signs().iter().all(|&x| x == Sign::Minus));
        assert_eq!(s.faces().len(), 3);
        let back = s.local_sign_switch(0).unwrap();
        assert_eq!(back, theta);
    }

    #[test]
    fn subdivision() {
        for g in catalog::all() {
            let chi = g.euler_characteristic();
            let orientable = g.is_orientable();
            for e in 0..g.edge_count() {
                let (s, x, f) = g.subdivide_edge(e).unwrap();
                assert_eq!(s.euler_characteristic(), chi);
                assert_eq!(s.is_orientable(), orientable);
                assert_eq!(s.degree(x), 2);
                assert_eq!(s.endpoints(f).0, x);
            }
        }
        let p2 = catalog::projective_loop();
        let (s, x, f) = p2.subdivide_edge(0).unwrap();
        assert_eq!(s.endpoints(0), (0, x));
        assert_eq!(s.endpoints(f), (x, 0));
    }

    #[test]
    fn rejects_malformed_rotations() {
        let edges = [(0, 1)];
        let twice = vec![vec![Dart(0), Dart(0)], vec![Dart(1)]];
        assert!(EmbeddedGraph::new(2, &edges, vec![Sign::Plus], twice).is_err());
        let wrong_tail = vec![vec![Dart(1)], vec![Dart(0)]];
        assert!(EmbeddedGraph::new(2, &edges, vec![Sign::Plus], wrong_tail).is_err());
        let missing = vec![vec![Dart(0)], vec![]];
        assert!(EmbeddedGraph::new(2, &edges, vec![Sign::Plus], missing).is_err());
    }
}
