//! Finite groups as explicit multiplication tables.
//!
//! Every group is canonicalised to index form right after construction:
//! element `0` is the identity and all downstream code works with indices.

mod builtin;
mod cayley;
mod classes;
pub mod quaternion;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use builtin::{builtin_group, GroupFamily};
pub(crate) use builtin::standard_generator_images;
pub use cayley::{group_from_text, group_to_text};
pub use classes::ConjugacyClassTable;
pub use subgroup::{center, centralizer, coset_space, normalizer, Coset, Subgroup};

/// Largest group order accepted anywhere in the crate.
pub const MAX_GROUP_ORDER: usize = 10_000;

/// Orders up to this bound get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 200;
const SAMPLED_TRIPLES: usize = 100_000;

/// A finite group given by its complete multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<usize>,
    element_orders: Vec<u32>,
    family: Option<GroupFamily>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("family", &self.family)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a full multiplication table; `table[a][b]` is the
    /// index of `a·b`. Element `0` must be the identity.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::ClosureOverflow {
                max_order: MAX_GROUP_ORDER,
            });
        }
        let mut mul = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::NotAGroup(format!("entry {x} out of range in row {a}")));
                }
                mul.push(x as u32);
            }
        }
        let labels = match labels {
            Some(l) if l.len() != order => {
                return Err(Error::NotAGroup(format!(
                    "{} labels for {order} elements",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        Self::from_flat(order, mul, labels, Vec::new(), None)
    }

    fn from_flat(
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<usize>,
        family: Option<GroupFamily>,
    ) -> Result<Self> {
        let mut g = Self {
            order,
            mul,
            inv: vec![0; order],
            labels,
            generators,
            element_orders: vec![0; order],
            family,
        };
        g.check_axioms()?;
        g.element_orders = (0..order).map(|a| g.compute_element_order(a)).collect();
        if g.generators.is_empty() && order > 1 {
            g.generators = g.greedy_generating_set();
        }
        Ok(g)
    }

    fn check_axioms(&mut self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not a two-sided identity (fails at {a})"
                )));
            }
        }
        // Latin square
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = self.mul(a, b);
                if seen[x] == a {
                    return Err(Error::NotAGroup(format!("row {a} repeats entry {x}")));
                }
                seen[x] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let x = self.mul(a, b);
                if seen[x] == b {
                    return Err(Error::NotAGroup(format!("column {b} repeats entry {x}")));
                }
                seen[x] = b;
            }
        }
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| self.mul(a, b) == 0)
                .expect("latin square row contains the identity");
            if self.mul(inv, a) != 0 {
                return Err(Error::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
            self.inv[a] = inv as u32;
        }
        let assoc = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::NotAGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn compute_element_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn greedy_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_orders[a]), a));
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        for a in by_order {
            if span[a] {
                continue;
            }
            gens.push(a);
            span = self.closure_mask(&gens);
            if span.iter().all(|&b| b) {
                break;
            }
        }
        gens
    }

    /// Membership mask of the subgroup generated by `elements`.
    pub fn closure_mask(&self, elements: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in elements {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        mask
    }

    /// Closes `gens` under `mul`; see [`FiniteGroup::from_generators_labeled`].
    pub fn from_generators<T, F>(gens: &[T], mul: F, max_order: usize) -> Result<Self>
    where
        T: Clone + Eq + Hash + fmt::Debug,
        F: Fn(&T, &T) -> T,
    {
        Self::from_generators_labeled(gens, mul, |t| format!("{t:?}"), max_order)
            .map(|(g, _)| g)
    }

    /// Closes `gens` under `mul` and returns the group together with the
    /// concrete element behind every index. An empty generator list yields
    /// the trivial group (and no concrete elements).
    pub fn from_generators_labeled<T, F, L>(
        gens: &[T],
        mul: F,
        label: L,
        max_order: usize,
    ) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        if gens.is_empty() {
            let g = Self::from_flat(1, vec![0], vec!["1".into()], Vec::new(), None)?;
            return Ok((g, Vec::new()));
        }
        let max_order = max_order.min(MAX_GROUP_ORDER);
        let mut elems: Vec<T> = Vec::new();
        let mut index: HashMap<T, usize> = HashMap::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        // right multiplication by generators, recorded for the table build
        let ngen = gens.len();
        let mut right: Vec<usize> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for s in gens {
                let p = mul(&elems[i], s);
                let j = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= max_order {
                            return Err(Error::ClosureOverflow { max_order });
                        }
                        index.insert(p.clone(), elems.len());
                        elems.push(p);
                        elems.len() - 1
                    }
                };
                right.push(j);
            }
            i += 1;
        }
        let n = elems.len();
        let id = (0..n)
            .find(|&a| mul(&elems[a], &elems[a]) == elems[a])
            .ok_or_else(|| Error::NotAGroup("closure contains no identity".into()))?;
        // new index order: identity first, others keep their discovery order
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        perm.push(id);
        perm.extend((0..n).filter(|&a| a != id));
        let mut old_to_new = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            old_to_new[old] = new;
        }
        let gen_new: Vec<usize> = gens.iter().map(|g| old_to_new[index[g]]).collect();
        let right_new = |x_new: usize, s: usize| old_to_new[right[perm[x_new] * ngen + s]];

        // BFS tree from the identity: every element b = parent(b)·s
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            for s in 0..ngen {
                let y = right_new(x, s);
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some((x, s));
                    queue.push(y);
                }
            }
        }
        if queue.len() != n {
            return Err(Error::NotAGroup("closure is not reachable from the identity".into()));
        }
        let mut mul_table = vec![0u32; n * n];
        for a in 0..n {
            mul_table[a * n] = a as u32;
            for &b in &queue[1..] {
                let (p, s) = parent[b].expect("non-root has a parent");
                let ap = mul_table[a * n + p] as usize;
                mul_table[a * n + b] = right_new(ap, s) as u32;
            }
        }
        // spot-check the table against the supplied multiplication
        for a in 0..n.min(16) {
            for b in 0..n {
                let direct = mul(&elems[perm[a]], &elems[perm[b]]);
                if index.get(&direct).map(|&o| old_to_new[o]) != Some(mul_table[a * n + b] as usize) {
                    return Err(Error::NotAGroup("multiplication is not associative".into()));
                }
            }
        }
        let ordered: Vec<T> = perm.iter().map(|&o| elems[o].clone()).collect();
        let labels = ordered.iter().map(label).collect();
        let mut dedup_gens = Vec::new();
        for g in gen_new {
            if g != 0 && !dedup_gens.contains(&g) {
                dedup_gens.push(g);
            }
        }
        let group = Self::from_flat(n, mul_table, labels, dedup_gens, None)?;
        Ok((group, ordered))
    }

    pub(crate) fn with_family(mut self, family: GroupFamily) -> Self {
        self.family = Some(family);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `h·g·h⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.element_orders[a] as u64;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_orders[a]
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u32 {
        use num_integer::Integer;
        self.element_orders.iter().fold(1u32, |a, &b| a.lcm(&b))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn family(&self) -> Option<&GroupFamily> {
        self.family.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Row-by-row copy of the multiplication table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Direct product with component-wise multiplication; index of `(a, b)`
    /// is `a·|H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        if n > MAX_GROUP_ORDER {
            return Err(Error::ClosureOverflow {
                max_order: MAX_GROUP_ORDER,
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let x = self.mul(a / n2, b / n2);
                let y = other.mul(a % n2, b % n2);
                mul.push((x * n2 + y) as u32);
            }
        }
        let labels = (0..n)
            .map(|a| format!("({},{})", self.label(a / n2), other.label(a % n2)))
            .collect();
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| g * n2).collect();
        gens.extend(other.generators.iter().copied());
        Self::from_flat(n, mul, labels, gens, None)
    }

    /// Order of the centralizer of `g`, by direct enumeration.
    pub fn centralizer_order(&self, g: usize) -> usize {
        (0..self.order)
            .filter(|&h| self.mul(h, g) == self.mul(g, h))
            .count()
    }
}

/// Shared handle used by every structure that refers back to its group.
pub type GroupRef = Arc<FiniteGroup>;

pub(crate) fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    std::ptr::eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_by_closure(n: u32) -> FiniteGroup {
        FiniteGroup::from_generators(&[1u32], |a, b| (a + b) % n, 100).unwrap()
    }

    #[test]
    fn closure_of_one_generator_is_cyclic() {
        let g = cyclic_by_closure(4);
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.label(0), "0");
    }

    #[test]
    fn dihedral_closure_from_rotation_and_reflection() {
        // elements of D4 as permutations of the square's corners
        let r = vec![1u8, 2, 3, 0];
        let s = vec![0u8, 3, 2, 1];
        let compose = |a: &Vec<u8>, b: &Vec<u8>| b.iter().map(|&i| a[i as usize]).collect();
        let g = FiniteGroup::from_generators(&[r, s], compose, 100).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        // Latin square
        for a in 0..8 {
            let mut row: Vec<usize> = (0..8).map(|b| g.mul(a, b)).collect();
            row.sort();
            assert_eq!(row, (0..8).collect::<Vec<_>>());
        }
    }

    #[test]
    fn empty_generator_list_gives_trivial_group() {
        let g = FiniteGroup::from_generators::<u32, _>(&[], |a, b| a + b, 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn closure_overflow_is_reported() {
        let err = FiniteGroup::from_generators(&[1u32], |a, b| (a + b) % 50, 10).unwrap_err();
        assert_eq!(err, Error::ClosureOverflow { max_order: 10 });
    }

    #[test]
    fn non_group_tables_are_rejected() {
        // constant-ish table: not a Latin square
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(bad, None), Err(Error::NotAGroup(_))));
        // Latin square with identity but not associative (order-5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5, None), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn inverse_of_product_reverses() {
        let g = builtin_group(&GroupFamily::Symmetric(4)).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
            }
        }
    }

    #[test]
    fn direct_product_orders() {
        let a = builtin_group(&GroupFamily::Cyclic(2)).unwrap();
        let b = builtin_group(&GroupFamily::Symmetric(3)).unwrap();
        let p = a.direct_product(&b).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p.closure_mask(p.generators()).iter().filter(|&&x| x).count(), 12);
    }
}
