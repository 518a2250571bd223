use std::sync::Arc;

use super::{same_group, FiniteGroup, GroupRef};
use crate::error::{Error, Result};

/// A subgroup, stored as a membership mask over the parent's elements.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupRef,
    mask: Vec<bool>,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.parent, &other.parent) && self.mask == other.mask
    }
}

impl Subgroup {
    /// Validates that `elements` form a subgroup of `parent`.
    pub fn from_elements(parent: &GroupRef, elements: &[usize]) -> Result<Self> {
        let n = parent.order();
        let mut mask = vec![false; n];
        for &e in elements {
            if e >= n {
                return Err(Error::NotASubgroup(format!("element {e} out of range")));
            }
            mask[e] = true;
        }
        Self::from_mask(parent, mask)
    }

    pub fn from_mask(parent: &GroupRef, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != parent.order() {
            return Err(Error::NotASubgroup("mask length differs from group order".into()));
        }
        if !mask[0] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let members: Vec<usize> = (0..mask.len()).filter(|&a| mask[a]).collect();
        for &a in &members {
            if !mask[parent.inv(a)] {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &members {
                if !mask[parent.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        Ok(Self {
            parent: parent.clone(),
            order: members.len(),
            mask,
        })
    }

    pub fn generated_by(parent: &GroupRef, gens: &[usize]) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::NotASubgroup(format!("element {bad} out of range")));
        }
        let mask = parent.closure_mask(gens);
        let order = mask.iter().filter(|&&m| m).count();
        Ok(Self {
            parent: parent.clone(),
            mask,
            order,
        })
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Self {
            parent: parent.clone(),
            mask: vec![true; parent.order()],
            order: parent.order(),
        }
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Self {
            parent: parent.clone(),
            mask,
            order: 1,
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Members in increasing index order.
    pub fn elements(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&a| self.mask[a]).collect()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order
    }

    /// The subgroup as a standalone group, plus the embedding of its element
    /// indices into the parent.
    pub fn as_group(&self) -> (GroupRef, Vec<usize>) {
        let elems = self.elements();
        let mut pos = vec![usize::MAX; self.parent.order()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[self.parent.mul(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(|&e| self.parent.label(e).to_string()).collect();
        let group = FiniteGroup::from_table(table, Some(labels)).expect("subgroup table is a group");
        (Arc::new(group), elems)
    }

    pub(crate) fn check_parent(&self, group: &GroupRef) -> Result<()> {
        if same_group(&self.parent, group) {
            Ok(())
        } else {
            Err(Error::NotASubgroup("subgroup belongs to a different group".into()))
        }
    }

    /// `true` when `g H g⁻¹ = H` for every `g` of the parent.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.elements().iter().all(|&h| self.contains(g.conjugate(h, x))))
    }
}

/// Elements commuting with every element.
pub fn center(group: &GroupRef) -> Subgroup {
    let n = group.order();
    let mask = (0..n)
        .map(|a| (0..n).all(|b| group.mul(a, b) == group.mul(b, a)))
        .collect();
    Subgroup::from_mask(group, mask).expect("center is a subgroup")
}

/// Elements commuting with `g`.
pub fn centralizer(group: &GroupRef, g: usize) -> Subgroup {
    let mask = (0..group.order())
        .map(|a| group.mul(a, g) == group.mul(g, a))
        .collect();
    Subgroup::from_mask(group, mask).expect("centralizer is a subgroup")
}

/// `N_G(H) = { g : g H g⁻¹ ⊆ H }`.
pub fn normalizer(group: &GroupRef, sub: &Subgroup) -> Result<Subgroup> {
    sub.check_parent(group)?;
    let members = sub.elements();
    let mask = (0..group.order())
        .map(|g| members.iter().all(|&h| sub.contains(group.conjugate(h, g))))
        .collect();
    Ok(Subgroup::from_mask(group, mask).expect("normalizer is a subgroup"))
}

/// A left coset `xH`, with its minimal element as representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub rep: usize,
    pub elements: Vec<usize>,
}

/// Left cosets of `sub`, ordered by minimal element.
pub fn coset_space(group: &GroupRef, sub: &Subgroup) -> Result<Vec<Coset>> {
    sub.check_parent(group)?;
    let h = sub.elements();
    let mut assigned = vec![false; group.order()];
    let mut cosets = Vec::with_capacity(sub.index());
    for x in 0..group.order() {
        if assigned[x] {
            continue;
        }
        let mut elements: Vec<usize> = h.iter().map(|&k| group.mul(x, k)).collect();
        elements.sort_unstable();
        for &e in &elements {
            assigned[e] = true;
        }
        cosets.push(Coset { rep: x, elements });
    }
    Ok(cosets)
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_group, GroupFamily};
    use super::*;

    fn group(f: GroupFamily) -> GroupRef {
        Arc::new(builtin_group(&f).unwrap())
    }

    #[test]
    fn centers() {
        assert_eq!(center(&group(GroupFamily::BinaryTetrahedral)).order(), 2);
        assert_eq!(center(&group(GroupFamily::BinaryOctahedral)).order(), 2);
        assert_eq!(center(&group(GroupFamily::BinaryIcosahedral)).order(), 2);
        assert_eq!(center(&group(GroupFamily::Cyclic(5))).order(), 5);
        assert_eq!(center(&group(GroupFamily::Symmetric(3))).order(), 1);
        assert_eq!(center(&group(GroupFamily::Dihedral(4))).order(), 2);
    }

    #[test]
    fn normalizers() {
        let g = group(GroupFamily::Symmetric(3));
        assert_eq!(normalizer(&g, &Subgroup::whole(&g)).unwrap().order(), 6);
        let t = (0..6).find(|&a| g.label(a) == "(1 2)").unwrap();
        let h = Subgroup::generated_by(&g, &[t]).unwrap();
        let n = normalizer(&g, &h).unwrap();
        assert_eq!(n, h);

        let d = group(GroupFamily::Dihedral(4));
        let r = (0..8).find(|&a| d.label(a) == "r").unwrap();
        let rot = Subgroup::generated_by(&d, &[r]).unwrap();
        assert_eq!(rot.order(), 4);
        assert_eq!(normalizer(&d, &rot).unwrap().order(), 8);
        assert!(rot.is_normal());
    }

    #[test]
    fn normalizer_contains_subgroup_as_normal() {
        let g = group(GroupFamily::Symmetric(4));
        for gens in [vec![1], vec![1, 2], vec![3], vec![5, 7]] {
            let h = Subgroup::generated_by(&g, &gens).unwrap();
            let n = normalizer(&g, &h).unwrap();
            for &x in &h.elements() {
                assert!(n.contains(x));
            }
            for &x in &n.elements() {
                for &k in &h.elements() {
                    assert!(h.contains(g.conjugate(k, x)));
                }
            }
            assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn cosets_of_cyclic_four() {
        let g = group(GroupFamily::Cyclic(4));
        let h = Subgroup::from_elements(&g, &[0, 2]).unwrap();
        let cosets = coset_space(&g, &h).unwrap();
        assert_eq!(cosets.len(), 2);
        assert_eq!(cosets[0].elements, vec![0, 2]);
        assert_eq!(cosets[1].elements, vec![1, 3]);
        assert_eq!(coset_space(&g, &Subgroup::trivial(&g)).unwrap().len(), 4);
        assert_eq!(coset_space(&g, &Subgroup::whole(&g)).unwrap().len(), 1);
    }

    #[test]
    fn invalid_subgroups() {
        let g = group(GroupFamily::Cyclic(4));
        assert!(Subgroup::from_elements(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_elements(&g, &[2]).is_err());
        let other = group(GroupFamily::Cyclic(6));
        let h = Subgroup::whole(&other);
        assert!(matches!(coset_space(&g, &h), Err(Error::NotASubgroup(_))));
        assert!(matches!(normalizer(&g, &h), Err(Error::NotASubgroup(_))));
    }
}
