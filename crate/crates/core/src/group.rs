//! Finite groups given by explicit multiplication tables, generated
//! subgroups and left-coset partitions.
//!
//! Elements are indices `0..order`. Every group in this crate is small
//! enough that the full table fits comfortably in memory; the order is
//! capped at [`DEFAULT_ORDER_CAP`] unless a caller raises it.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Default cap on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Orders up to this bound get an exhaustive associativity check.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// An element of a [`FiniteGroup`], as an index into its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How a group was built. Kept so the group can be printed back in the
/// instance-file syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Product(alloc::boxed::Box<GroupSpec>, alloc::boxed::Box<GroupSpec>),
    Table(usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: Elem,
    inverses: Vec<Elem>,
    names: Vec<String>,
    spec: GroupSpec,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("spec", &self.spec)
            .finish()
    }
}

impl FiniteGroup {
    /// The cyclic group ℤ_n under addition mod n.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".to_string()));
        }
        if n > DEFAULT_ORDER_CAP {
            return Err(Error::SizeCap { what: "group order", size: n, cap: DEFAULT_ORDER_CAP });
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + b) % n) as u32);
            }
        }
        let inverses = (0..n).map(|a| Elem(((n - a) % n) as u32)).collect();
        let names = (0..n).map(|a| a.to_string()).collect();
        Ok(FiniteGroup {
            order: n,
            table,
            identity: Elem(0),
            inverses,
            names,
            spec: GroupSpec::Cyclic(n),
        })
    }

    /// Direct product with the default order cap. Element `(i, j)` has
    /// index `i * g2.order() + j`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        Self::direct_product_capped(g1, g2, DEFAULT_ORDER_CAP)
    }

    pub fn direct_product_capped(g1: &FiniteGroup, g2: &FiniteGroup, cap: usize) -> Result<Self> {
        let n1 = g1.order;
        let n2 = g2.order;
        let order = n1 * n2;
        if order > cap {
            return Err(Error::SizeCap { what: "group order", size: order, cap });
        }
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (a1, a2) = (x / n2, x % n2);
            for y in 0..order {
                let (b1, b2) = (y / n2, y % n2);
                let c1 = g1.table[a1 * n1 + b1] as usize;
                let c2 = g2.table[a2 * n2 + b2] as usize;
                table.push((c1 * n2 + c2) as u32);
            }
        }
        let inverses = (0..order)
            .map(|x| {
                let i1 = g1.inverses[x / n2].index();
                let i2 = g2.inverses[x % n2].index();
                Elem((i1 * n2 + i2) as u32)
            })
            .collect();
        let names = (0..order)
            .map(|x| format!("{},{}", g1.names[x / n2], g2.names[x % n2]))
            .collect();
        Ok(FiniteGroup {
            order,
            table,
            identity: Elem((g1.identity.index() * n2 + g2.identity.index()) as u32),
            inverses,
            names,
            spec: GroupSpec::Product(
                alloc::boxed::Box::new(g1.spec.clone()),
                alloc::boxed::Box::new(g2.spec.clone()),
            ),
        })
    }

    /// A group from an explicit table of rows. The table is validated:
    /// Latin square, two-sided identity, inverses, and associativity for
    /// orders up to 64.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".to_string()));
        }
        if n > DEFAULT_ORDER_CAP {
            return Err(Error::SizeCap { what: "group order", size: n, cap: DEFAULT_ORDER_CAP });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, order: n });
                }
                if seen[x] {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
                seen[x] = true;
                table.push(x as u32);
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] {
                    return Err(Error::InvalidGroup(format!("column {j} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".to_string()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x * n + y] as usize == identity && table[y * n + x] as usize == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inverses.push(Elem(inv as u32));
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b] as usize;
                    for c in 0..n {
                        let bc = table[b * n + c] as usize;
                        if table[ab * n + c] != table[a * n + bc] {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity: Elem(identity as u32),
            inverses,
            names: (0..n).map(|a| a.to_string()).collect(),
            spec: GroupSpec::Table(n),
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.table[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a.index()]
    }

    /// `a⁻¹ b`
    #[inline]
    pub fn left_div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.inv(a), b)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as u32).map(Elem)
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if a.index() < self.order {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { element: a.index(), order: self.order })
        }
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.index()]
    }

    /// Looks an element up by its display name.
    pub fn parse_element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| Elem(i as u32))
    }

    /// Row `a` of the multiplication table.
    pub fn row(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.table[a.index() * self.order..(a.index() + 1) * self.order]
            .iter()
            .map(|&x| Elem(x))
    }

    /// Smallest `k ≥ 1` with `a^k = 1`.
    pub fn element_order(&self, a: Elem) -> Result<usize> {
        self.check(a)?;
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        let mut x = self.identity;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// Product of a sequence, left to right.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// The smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Result<Subgroup> {
        for &g in gens {
            self.check(g)?;
        }
        let mut member = vec![false; self.order];
        let mut queue = VecDeque::new();
        member[self.identity.index()] = true;
        queue.push_back(self.identity);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y.index()] {
                    member[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup::from_mask(member))
    }

    /// The whole group as a subgroup of itself.
    pub fn full(&self) -> Subgroup {
        Subgroup::from_mask(vec![true; self.order])
    }

    pub fn trivial(&self) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[self.identity.index()] = true;
        Subgroup::from_mask(mask)
    }

    /// Partition `superset` into left cosets `aH`, ordered by their minimal
    /// element. `superset` must be a union of left cosets of `h`.
    pub fn left_cosets(&self, superset: &[Elem], h: &Subgroup) -> Result<CosetPartition> {
        if h.parent_order() != self.order {
            return Err(Error::InvalidGroup("subgroup belongs to a different group".to_string()));
        }
        if superset.len() % h.len() != 0 {
            return Err(Error::NotCosetUnion { superset: superset.len(), subgroup: h.len() });
        }
        let mut in_superset = vec![false; self.order];
        for &a in superset {
            self.check(a)?;
            in_superset[a.index()] = true;
        }
        let mut sorted: Vec<Elem> = superset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != superset.len() {
            return Err(Error::InvalidGroup("superset has repeated elements".to_string()));
        }
        let mut assigned = vec![false; self.order];
        let mut cosets = Vec::new();
        for &a in &sorted {
            if assigned[a.index()] {
                continue;
            }
            let coset = self.left_coset(a, h);
            for &x in &coset {
                if !in_superset[x.index()] {
                    return Err(Error::NotCosetUnion { superset: superset.len(), subgroup: h.len() });
                }
                assigned[x.index()] = true;
            }
            cosets.push(coset);
        }
        Ok(CosetPartition { subgroup: h.clone(), cosets })
    }

    /// `aH`, sorted.
    pub fn left_coset(&self, a: Elem, h: &Subgroup) -> Vec<Elem> {
        let mut coset: Vec<Elem> = h.elements().iter().map(|&x| self.mul(a, x)).collect();
        coset.sort_unstable();
        coset
    }

    /// `a·S` for an arbitrary element set, sorted.
    pub fn left_translate(&self, a: Elem, set: &[Elem]) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.iter().map(|&x| self.mul(a, x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A subgroup, stored as a sorted element list plus a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Elem>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_mask(mask: Vec<bool>) -> Self {
        let elements = mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem(i as u32))
            .collect();
        Subgroup { elements, mask }
    }

    /// Sorted ascending.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.mask.get(a.index()).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Index `[parent : self]`.
    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.len() / self.len()
    }
}

/// A partition of a coset union into left cosets of one subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub subgroup: Subgroup,
    /// Each coset sorted; cosets ordered by minimal element.
    pub cosets: Vec<Vec<Elem>>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Canonical representative of each coset.
    pub fn representatives(&self) -> impl Iterator<Item = Elem> + '_ {
        self.cosets.iter().map(|c| c[0])
    }

    /// Index of the coset containing `a`, if any.
    pub fn coset_of(&self, a: Elem) -> Option<usize> {
        self.cosets.iter().position(|c| c.binary_search(&a).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let g = z(1);
        assert_eq!(g.order(), 1);
        let g = z(6);
        assert_eq!(g.mul(Elem(2), Elem(5)), Elem(1));
        assert_eq!(g.inv(Elem(2)), Elem(4));
        let g = z(4);
        let row: Vec<_> = g.row(Elem(1)).collect();
        assert_eq!(row, vec![Elem(1), Elem(2), Elem(3), Elem(0)]);
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn product_basics() {
        let g = FiniteGroup::direct_product(&z(2), &z(3)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), Elem(0));
        assert_eq!(g.name(g.identity()), "0,0");
        let g21 = FiniteGroup::direct_product(&z(2), &z(1)).unwrap();
        let z2 = z(2);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(g21.mul(Elem(a), Elem(b)), z2.mul(Elem(a), Elem(b)));
            }
        }
        let g24 = FiniteGroup::direct_product(&z(2), &z(4)).unwrap();
        let x12 = g24.parse_element("1,2").unwrap();
        assert_eq!(g24.element_order(x12).unwrap(), 2);
        let x11 = g24.parse_element("1,1").unwrap();
        assert_eq!(g24.element_order(x11).unwrap(), 4);
        let big = z(100);
        assert!(matches!(
            FiniteGroup::direct_product(&big, &big),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn generated_subgroups() {
        let g = z(6);
        let h = g.subgroup_generated(&[Elem(2)]).unwrap();
        assert_eq!(h.elements(), &[Elem(0), Elem(2), Elem(4)]);
        let h = g.subgroup_generated(&[Elem(2), Elem(3)]).unwrap();
        assert_eq!(h.len(), 6);
        let h = g.subgroup_generated(&[]).unwrap();
        assert_eq!(h.elements(), &[Elem(0)]);
        assert!(g.subgroup_generated(&[Elem(6)]).is_err());

        let g = FiniteGroup::direct_product(&z(2), &z(5)).unwrap();
        let ten = g.parse_element("1,0").unwrap();
        let h = g.subgroup_generated(&[ten]).unwrap();
        assert_eq!(h.elements(), &[g.identity(), ten]);
    }

    #[test]
    fn coset_partitions() {
        let g = z(6);
        let all: Vec<Elem> = g.elements().collect();
        let h = g.subgroup_generated(&[Elem(2)]).unwrap();
        let p = g.left_cosets(&all, &h).unwrap();
        assert_eq!(
            p.cosets,
            vec![vec![Elem(0), Elem(2), Elem(4)], vec![Elem(1), Elem(3), Elem(5)]]
        );
        let p = g.left_cosets(&all, &g.full()).unwrap();
        assert_eq!(p.len(), 1);
        let p = g.left_cosets(h.elements(), &g.trivial()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.cosets.iter().all(|c| c.len() == 1));
        let bad = [Elem(0), Elem(1)];
        assert!(matches!(g.left_cosets(&bad, &h), Err(Error::NotCosetUnion { .. })));
    }

    #[test]
    fn element_orders() {
        let g = z(6);
        assert_eq!(g.element_order(Elem(2)).unwrap(), 3);
        assert_eq!(g.element_order(g.identity()).unwrap(), 1);
    }

    #[test]
    fn table_validation() {
        // Klein four-group
        let rows = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let g = FiniteGroup::from_table(rows).unwrap();
        assert_eq!(g.inv(Elem(3)), Elem(3));
        let bad = vec![vec![0, 1], vec![0, 1]];
        assert!(FiniteGroup::from_table(bad).is_err());
        // a Latin square that is not associative (a loop without associativity)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(rows).is_err());
    }

    #[test]
    fn lagrange_and_nested_cosets() {
        let g = FiniteGroup::direct_product(&z(2), &z(6)).unwrap();
        let all: Vec<Elem> = g.elements().collect();
        for gens in [vec![], vec![Elem(2)], vec![Elem(3)], vec![Elem(7)], vec![Elem(2), Elem(6)]] {
            let h = g.subgroup_generated(&gens).unwrap();
            let p = g.left_cosets(&all, &h).unwrap();
            assert_eq!(h.len() * p.len(), g.order());
            // idempotent generation
            let again = g.subgroup_generated(h.elements()).unwrap();
            assert_eq!(again, h);
        }
        // X ≤ Y ≤ Z nesting: each yY coset is the disjoint union of the xX cosets inside it
        let x = g.subgroup_generated(&[Elem(4)]).unwrap();
        let y = g.subgroup_generated(&[Elem(2)]).unwrap();
        assert!(x.is_subgroup_of(&y));
        let outer = g.left_cosets(&all, &y).unwrap();
        for coset in &outer.cosets {
            let inner = g.left_cosets(coset, &x).unwrap();
            let mut union: Vec<Elem> = inner.cosets.concat();
            union.sort_unstable();
            assert_eq!(&union, coset);
        }
    }
}
