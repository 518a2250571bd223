use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{center, coset_space, same_group, GroupRef, Subgroup};

/// A left action of a finite group on `{0, …, n-1}`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: GroupRef,
    set_size: usize,
    table: Vec<u32>,
}

/// First axiom violation found by [`GroupAction::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionViolation {
    OutOfRange { g: usize, point: usize },
    Identity { point: usize },
    Compatibility { g1: usize, g2: usize, point: usize },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutOfRange { g, point } => write!(f, "act({g}, {point}) is out of range"),
            Self::Identity { point } => write!(f, "identity moves point {point}"),
            Self::Compatibility { g1, g2, point } => {
                write!(f, "act({g1}, act({g2}, {point})) != act({g1}*{g2}, {point})")
            }
        }
    }
}

impl GroupAction {
    /// `table[g][s]` is the image of point `s` under element `g`.
    pub fn new(group: &GroupRef, table: Vec<Vec<usize>>) -> Result<Self> {
        let action = Self::new_unchecked(group, table)?;
        action
            .validate()
            .map_err(|v| Error::InvalidAction(v.to_string()))?;
        Ok(action)
    }

    /// Checks only the table shape; use [`validate`](Self::validate) to test the axioms.
    pub fn new_unchecked(group: &GroupRef, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "table has {} rows, group has order {}",
                table.len(),
                group.order()
            )));
        }
        let set_size = table.first().map_or(0, Vec::len);
        if set_size == 0 {
            return Err(Error::InvalidAction("empty configuration set".into()));
        }
        if let Some(g) = table.iter().position(|r| r.len() != set_size) {
            return Err(Error::InvalidAction(format!("row {g} has the wrong length")));
        }
        Ok(Self {
            group: group.clone(),
            set_size,
            table: table.into_iter().flatten().map(|x| x as u32).collect(),
        })
    }

    /// Regular action `g·s = gs` on `S = G`.
    pub fn left_mult(group: &GroupRef) -> Self {
        let n = group.order();
        let table = (0..n)
            .flat_map(|g| (0..n).map(move |s| (g, s)))
            .map(|(g, s)| group.mul(g, s) as u32)
            .collect();
        Self {
            group: group.clone(),
            set_size: n,
            table,
        }
    }

    /// Action on left cosets `G/H` by `g·xH = (gx)H`.
    pub fn coset(group: &GroupRef, sub: &Subgroup) -> Result<Self> {
        let cosets = coset_space(group, sub)?;
        let mut coset_of = vec![0u32; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &e in &c.elements {
                coset_of[e] = i as u32;
            }
        }
        let table = (0..group.order())
            .flat_map(|g| cosets.iter().map(move |c| (g, c.rep)))
            .map(|(g, rep)| coset_of[group.mul(g, rep)])
            .collect();
        Ok(Self {
            group: group.clone(),
            set_size: cosets.len(),
            table,
        })
    }

    /// `n` points, all fixed.
    pub fn trivial(group: &GroupRef, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("trivial action needs at least one point".into()));
        }
        Ok(Self {
            group: group.clone(),
            set_size: n,
            table: (0..group.order()).flat_map(|_| 0..n as u32).collect(),
        })
    }

    /// Componentwise action on `S_A × S_B`; point `(a, b)` has index `a·|S_B| + b`.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        if !same_group(&a.group, &b.group) {
            return Err(Error::GroupMismatch);
        }
        let (na, nb) = (a.set_size, b.set_size);
        let mut table = Vec::with_capacity(a.group.order() * na * nb);
        for g in 0..a.group.order() {
            for x in 0..na {
                for y in 0..nb {
                    table.push((a.act(g, x) * nb + b.act(g, y)) as u32);
                }
            }
        }
        Ok(Self {
            group: a.group.clone(),
            set_size: na * nb,
            table,
        })
    }

    /// `G × G` acting on `G` by `(g_L, g_R)·g = g_L g g_R⁻¹`.
    ///
    /// Returns the product group, the action and the size of its kernel, which
    /// is the diagonal copy of the center.
    pub fn principal_chiral(group: &GroupRef) -> Result<(GroupRef, Self, usize)> {
        let n = group.order();
        let product: GroupRef = Arc::new(group.direct_product(group)?);
        let mut table = Vec::with_capacity(n * n * n);
        for p in 0..n * n {
            let (l, r) = (p / n, p % n);
            let r_inv = group.inv(r);
            for x in 0..n {
                table.push(group.mul(group.mul(l, x), r_inv) as u32);
            }
        }
        let action = Self {
            group: product,
            set_size: n,
            table,
        };
        let kernel = (0..n * n)
            .filter(|&p| (0..n).all(|x| action.act(p, x) == x))
            .count();
        debug_assert_eq!(kernel, center(group).order());
        Ok((action.group.clone(), action, kernel))
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn act(&self, g: usize, s: usize) -> usize {
        self.table[g * self.set_size + s] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.set_size)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Exhaustive check of the identity and compatibility axioms.
    pub fn validate(&self) -> std::result::Result<(), ActionViolation> {
        let n = self.set_size;
        for g in 0..self.group.order() {
            for s in 0..n {
                if self.act(g, s) >= n {
                    return Err(ActionViolation::OutOfRange { g, point: s });
                }
            }
        }
        if let Some(point) = (0..n).find(|&s| self.act(0, s) != s) {
            return Err(ActionViolation::Identity { point });
        }
        for g1 in 0..self.group.order() {
            for g2 in 0..self.group.order() {
                let g12 = self.group.mul(g1, g2);
                for s in 0..n {
                    if self.act(g1, self.act(g2, s)) != self.act(g12, s) {
                        return Err(ActionViolation::Compatibility { g1, g2, point: s });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn fixed_points(&self, g: usize) -> usize {
        (0..self.set_size).filter(|&s| self.act(g, s) == s).count()
    }

    /// Orbits as sorted point lists, ordered by minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.set_size];
        let mut out = Vec::new();
        for s in 0..self.set_size {
            if seen[s] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, s)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.group.order()).map(|g| self.act(g, 0)).collect::<std::collections::HashSet<_>>().len()
            == self.set_size
    }

    /// Every non-identity element moves every point.
    pub fn is_free(&self) -> bool {
        (1..self.group.order()).all(|g| self.fixed_points(g) == 0)
    }

    pub fn stabilizer(&self, s: usize) -> Subgroup {
        let mask = (0..self.group.order()).map(|g| self.act(g, s) == s).collect();
        Subgroup::from_mask(&self.group, mask).expect("stabilizer of a valid action is a subgroup")
    }

    /// Header `action |G| |S|`, then one row of images per group element.
    pub fn to_text(&self) -> String {
        let mut out = format!("action {} {}\n", self.group.order(), self.set_size);
        for row in self.table.chunks(self.set_size) {
            let row: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(group: &GroupRef, text: &str) -> Result<Self> {
        let rows = crate::textio::numeric_rows(text, "action")?;
        let (header_line, header) = &rows.header;
        let [order, size] = header[..] else {
            return Err(crate::textio::parse_err(*header_line, "expected 'action |G| |S|'"));
        };
        if order != group.order() {
            return Err(crate::textio::parse_err(
                *header_line,
                format!("action is for a group of order {order}, expected {}", group.order()),
            ));
        }
        if rows.body.len() != order {
            return Err(crate::textio::parse_err(*header_line, format!("expected {order} rows")));
        }
        let mut table = Vec::with_capacity(order);
        for (line, tokens) in &rows.body {
            let row = tokens
                .iter()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| crate::textio::parse_err(*line, e.to_string()))?;
            if row.len() != size {
                return Err(crate::textio::parse_err(*line, format!("expected {size} entries")));
            }
            table.push(row);
        }
        Self::new(group, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, GroupFamily};

    fn group(f: GroupFamily) -> GroupRef {
        Arc::new(builtin_group(&f).unwrap())
    }

    #[test]
    fn left_mult_is_regular() {
        let g = group(GroupFamily::Dihedral(4));
        let a = GroupAction::left_mult(&g);
        assert!(a.validate().is_ok());
        assert_eq!(a.fixed_points(0), 8);
        assert!((1..8).all(|x| a.fixed_points(x) == 0));
        assert!(a.is_transitive() && a.is_free());
        let z2 = group(GroupFamily::Cyclic(2));
        assert_eq!(GroupAction::left_mult(&z2).set_size(), 2);
        let one = group(GroupFamily::Cyclic(1));
        assert_eq!(GroupAction::left_mult(&one).set_size(), 1);
    }

    #[test]
    fn coset_action_of_cyclic_four() {
        let g = group(GroupFamily::Cyclic(4));
        let h = Subgroup::from_elements(&g, &[0, 2]).unwrap();
        let a = GroupAction::coset(&g, &h).unwrap();
        assert!(a.validate().is_ok());
        let fix: Vec<usize> = (0..4).map(|x| a.fixed_points(x)).collect();
        assert_eq!(fix, vec![2, 0, 2, 0]);
        assert!(a.is_transitive());

        let whole = GroupAction::coset(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(whole.set_size(), 1);
        let triv = GroupAction::coset(&g, &Subgroup::trivial(&g)).unwrap();
        assert!(triv.is_free() && triv.set_size() == 4);
    }

    #[test]
    fn products_and_trivial_actions() {
        let g = group(GroupFamily::Cyclic(2));
        let l = GroupAction::left_mult(&g);
        let p = GroupAction::product(&l, &l).unwrap();
        assert!(p.validate().is_ok());
        assert_eq!((p.fixed_points(0), p.fixed_points(1)), (4, 0));

        let z3 = group(GroupFamily::Cyclic(3));
        let t = GroupAction::trivial(&z3, 5).unwrap();
        assert!((0..3).all(|x| t.fixed_points(x) == 5));
        let s3 = group(GroupFamily::Symmetric(3));
        let l3 = GroupAction::left_mult(&s3);
        let scaled = GroupAction::product(&l3, &GroupAction::trivial(&s3, 3).unwrap()).unwrap();
        assert_eq!(scaled.fixed_points(0), 18);
        assert!(scaled.is_free());
        assert_eq!(scaled.orbits().len(), 3);
        assert!(GroupAction::trivial(&z3, 0).is_err());
        assert_eq!(GroupAction::product(&l, &t).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn principal_chiral_kernels() {
        let z2 = group(GroupFamily::Cyclic(2));
        assert_eq!(GroupAction::principal_chiral(&z2).unwrap().2, 2);
        let s3 = group(GroupFamily::Symmetric(3));
        let (p, a, k) = GroupAction::principal_chiral(&s3).unwrap();
        assert_eq!(k, 1);
        assert_eq!(p.order(), 36);
        assert!(a.validate().is_ok());
        for g in 0..6 {
            let diag = g * 6 + g;
            assert_eq!(a.fixed_points(diag), s3.centralizer_order(g));
        }
    }

    #[test]
    fn violations_are_reported() {
        let g = group(GroupFamily::Cyclic(3));
        let mut table = GroupAction::left_mult(&g).table();
        table[0].swap(0, 1);
        let bad = GroupAction::new_unchecked(&g, table).unwrap();
        assert_eq!(bad.validate(), Err(ActionViolation::Identity { point: 0 }));

        let mut table = GroupAction::left_mult(&g).table();
        table[2][1] = 1;
        let bad = GroupAction::new_unchecked(&g, table.clone()).unwrap();
        assert!(matches!(bad.validate(), Err(ActionViolation::Compatibility { .. })));
        assert!(matches!(GroupAction::new(&g, table), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn stabilizers_and_orbits() {
        let g = group(GroupFamily::Symmetric(3));
        let h = Subgroup::generated_by(&g, &[g.generators()[0]]).unwrap();
        let a = GroupAction::coset(&g, &h).unwrap();
        assert_eq!(a.stabilizer(0), h);
        assert_eq!(a.orbits(), vec![vec![0, 1, 2]]);
        // orbit-stabilizer
        for s in 0..3 {
            assert_eq!(a.stabilizer(s).order() * 3, 6);
        }
    }

    #[test]
    fn text_round_trip() {
        let g = group(GroupFamily::Dihedral(3));
        let h = Subgroup::generated_by(&g, &[g.generators()[1]]).unwrap();
        let a = GroupAction::coset(&g, &h).unwrap();
        let back = GroupAction::from_text(&g, &a.to_text()).unwrap();
        assert_eq!(back.table(), a.table());
        assert!(matches!(
            GroupAction::from_text(&g, "action 6 3\n0 1 2\n"),
            Err(Error::ParseError { .. })
        ));
    }
}
