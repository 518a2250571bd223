use super::FiniteGroup;

/// Partition of a group into conjugacy classes.
///
/// Classes are ordered by their minimal element index, so the identity class
/// is always class `0` and each representative is the class minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassTable {
    class_of: Vec<usize>,
    reps: Vec<usize>,
    members: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
    group_order: usize,
}

impl ConjugacyClassTable {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            let mut orbit = Vec::new();
            for h in 0..n {
                let x = group.conjugate(g, h);
                if class_of[x] == usize::MAX {
                    class_of[x] = c;
                    orbit.push(x);
                }
            }
            orbit.sort_unstable();
            reps.push(g);
            members.push(orbit);
        }
        let inverse_class = reps.iter().map(|&r| class_of[group.inv(r)]).collect();
        Self {
            class_of,
            reps,
            members,
            inverse_class,
            group_order: n,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// Sorted member list of class `c`.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// `|C_G(g)| = |G| / |C|` for `g` in class `c`.
    pub fn centralizer_size(&self, c: usize) -> usize {
        self.group_order / self.size(c)
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }
}

impl FiniteGroup {
    pub fn conjugacy_classes(&self) -> ConjugacyClassTable {
        ConjugacyClassTable::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_group, GroupFamily};
    use super::*;

    /// Independent oracle: orbit of g under h g h⁻¹ by brute force.
    fn brute_class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let n = g.order();
        let mut sizes = Vec::new();
        let mut done = vec![false; n];
        for a in 0..n {
            if done[a] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n)
                .map(|h| g.mul(g.mul(h, a), g.inv(h)))
                .collect();
            orbit.sort();
            orbit.dedup();
            for &x in &orbit {
                done[x] = true;
            }
            sizes.push(orbit.len());
        }
        sizes
    }

    #[test]
    fn cyclic_four_has_singleton_classes() {
        let g = builtin_group(&GroupFamily::Cyclic(4)).unwrap();
        let t = g.conjugacy_classes();
        assert_eq!(t.len(), 4);
        assert!(t.sizes().iter().all(|&s| s == 1));
    }

    #[test]
    fn dihedral_four_class_sizes() {
        let g = builtin_group(&GroupFamily::Dihedral(4)).unwrap();
        let t = g.conjugacy_classes();
        let mut sizes = t.sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let mut brute = brute_class_sizes(&g);
        brute.sort();
        assert_eq!(brute, sizes);
    }

    #[test]
    fn trivial_group_has_one_class() {
        let g = builtin_group(&GroupFamily::Cyclic(1)).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 1);
    }

    #[test]
    fn structural_laws() {
        for fam in [
            GroupFamily::Symmetric(4),
            GroupFamily::Quaternion,
            GroupFamily::BinaryTetrahedral,
            GroupFamily::Dihedral(5),
        ] {
            let g = builtin_group(&fam).unwrap();
            let t = g.conjugacy_classes();
            assert_eq!(t.sizes().iter().sum::<usize>(), g.order());
            assert_eq!(t.members(0), &[0]);
            for c in 0..t.len() {
                assert_eq!(t.size(c) * t.centralizer_size(c), g.order());
                assert_eq!(t.centralizer_size(c), g.centralizer_order(t.rep(c)));
                assert_eq!(t.inverse_class(t.inverse_class(c)), c);
            }
            for a in 0..g.order() {
                for h in 0..g.order() {
                    assert_eq!(t.class_of(g.conjugate(a, h)), t.class_of(a));
                }
            }
        }
    }

    #[test]
    fn product_class_count_multiplies() {
        let a = builtin_group(&GroupFamily::Symmetric(3)).unwrap();
        let b = builtin_group(&GroupFamily::Dihedral(4)).unwrap();
        let p = builtin_group(&GroupFamily::DirectProduct(
            Box::new(GroupFamily::Symmetric(3)),
            Box::new(GroupFamily::Dihedral(4)),
        ))
        .unwrap();
        assert_eq!(
            p.conjugacy_classes().len(),
            a.conjugacy_classes().len() * b.conjugacy_classes().len()
        );
    }
}
