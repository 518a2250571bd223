//! Brute-force reference computations.
//!
//! Nothing here uses class sums, centralizer orders or characters: every
//! trace is assembled from element-level enumeration, so agreement with
//! [`crate::counting`] is an independent check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{coset_space, same_group, Coset, GroupRef, Subgroup};
use crate::lattice::{LatticeGraph, TwistSpec};
use crate::matter::{FermionSpec, GroupAction, MatterSpec, UnitaryRep, Vacuum};

/// Default cap on `|G|^V`, the number of gauge transformations summed.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Largest representation dimension the Fock oracle accepts.
pub const MAX_FOCK_DIM: usize = 6;

/// An element of `Z[x]/(x^n - 1)`, reduced to `Z[ζ_n]` only at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<i128>);

impl Poly {
    fn constant(n: usize, c: i128) -> Self {
        let mut v = vec![0; n];
        v[0] = c;
        Poly(v)
    }

    fn from_cyclotomic(z: &Cyclotomic, n: u32) -> Result<Self> {
        let lifted = z.lift(n);
        let mut v = vec![0i128; n as usize];
        for (i, c) in lifted.coeffs().iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::NonIntegralResult(format!("site trace {z} is not an algebraic integer")));
            }
            v[i] = c.to_integer().to_i128().ok_or_else(overflow)?;
        }
        Ok(Poly(v))
    }

    fn mul_scaled(&self, other: &Self, scale: i128) -> Option<Self> {
        let n = self.0.len();
        let mut out = vec![0i128; n];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a.checked_mul(scale)?;
            for (j, &b) in other.0.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % n;
                    out[k] = out[k].checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        Some(Poly(out))
    }

    fn add_assign(&mut self, other: &Self) -> Option<()> {
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a = a.checked_add(b)?;
        }
        Some(())
    }
}

fn overflow() -> Error {
    Error::BadParams("oracle accumulator overflow; instance too large".into())
}

/// `link[a][b] = #{u : a·u·b⁻¹ = u}`, by enumeration over `u`.
fn link_table(group: &GroupRef) -> Vec<Vec<u64>> {
    let n = group.order();
    (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let b_inv = group.inv(b);
                    (0..n).filter(|&u| group.mul(group.mul(a, u), b_inv) == u).count() as u64
                })
                .collect()
        })
        .collect()
}

/// `(1/|G|^V) Σ_{g ∈ G^V} Π_links link(g_t, φ(g_h)) Π_sites site[x][g_x]`.
fn enumerate(
    group: &GroupRef,
    lattice: &LatticeGraph,
    twist: Option<&TwistSpec>,
    site_values: &[Vec<Poly>],
    field: u32,
    budget: u64,
) -> Result<BigInt> {
    let n = group.order();
    let v = lattice.sites();
    let transforms = (n as u64)
        .checked_pow(v as u32)
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded { budget })?;
    if let Some(t) = twist {
        if !same_group(t.group(), group) {
            return Err(Error::GroupMismatch);
        }
    }
    let link = link_table(group);
    let phi: Vec<usize> = (0..n).map(|g| twist.map_or(g, |t| t.twist.apply(g))).collect();
    let edges: Vec<(usize, usize, bool)> = lattice
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(t, h))| (t, h, twist.is_some_and(|s| s.twisted_edges.contains(&e))))
        .collect();

    let partial: Vec<Poly> = (0..transforms)
        .into_par_iter()
        .map(|index| -> Result<Poly> {
            let mut g = vec![0usize; v];
            let mut rest = index;
            for slot in g.iter_mut() {
                *slot = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            let mut weight: i128 = 1;
            for &(t, h, twisted) in &edges {
                let b = if twisted { phi[g[h]] } else { g[h] };
                weight = weight.checked_mul(link[g[t]][b] as i128).ok_or_else(overflow)?;
                if weight == 0 {
                    return Ok(Poly::constant(field as usize, 0));
                }
            }
            let mut acc = Poly::constant(field as usize, 1);
            for (x, &gx) in g.iter().enumerate() {
                let s = if x == 0 { weight } else { 1 };
                acc = acc.mul_scaled(&site_values[x][gx], s).ok_or_else(overflow)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = Poly::constant(field as usize, 0);
    for p in &partial {
        total.add_assign(p).ok_or_else(overflow)?;
    }

    let denom = BigInt::from(n).pow(v as u32);
    let raw = total
        .0
        .iter()
        .map(|&c| BigRational::new(BigInt::from(c), denom.clone()))
        .collect();
    let value = Cyclotomic::from_raw(field, raw);
    value
        .to_integer()
        .ok_or_else(|| Error::NonIntegralResult(format!("oracle average evaluates to {value}")))
}

fn dynamical_mask(lattice: &LatticeGraph, twist: Option<&TwistSpec>) -> Vec<bool> {
    (0..lattice.sites())
        .map(|x| !twist.is_some_and(|t| t.virtual_sites.contains(&x)))
        .collect()
}

/// Assigns per-dynamical-site tables to lattice sites; virtual sites get 1.
fn place(lattice: &LatticeGraph, twist: Option<&TwistSpec>, order: usize, field: u32, per_site: Vec<Vec<Poly>>) -> Result<Vec<Vec<Poly>>> {
    let mask = dynamical_mask(lattice, twist);
    let dynamical = mask.iter().filter(|&&d| d).count();
    if per_site.len() != dynamical {
        return Err(Error::SiteCountMismatch {
            expected: dynamical,
            got: per_site.len(),
        });
    }
    let one = vec![Poly::constant(field as usize, 1); order];
    let mut it = per_site.into_iter();
    Ok(mask.into_iter().map(|d| if d { it.next().unwrap() } else { one.clone() }).collect())
}

fn fixed_point_table(action: &GroupAction, field: u32) -> Vec<Poly> {
    let group = action.group();
    (0..group.order())
        .map(|g| {
            let fixed = (0..action.set_size()).filter(|&s| action.act(g, s) == s).count();
            Poly::constant(field as usize, fixed as i128)
        })
        .collect()
}

/// `tr P` on the configuration basis for pure gauge, scalar or static-charge
/// matter.
pub fn burnside_count(
    group: &GroupRef,
    lattice: &LatticeGraph,
    spec: &MatterSpec,
    twist: Option<&TwistSpec>,
    budget: u64,
) -> Result<BigInt> {
    spec.check_group(group)?;
    let dynamical = dynamical_mask(lattice, twist).iter().filter(|&&d| d).count();
    spec.check_sites(dynamical)?;
    let n = group.order();
    let (field, per_site) = match spec {
        MatterSpec::None => (1, vec![vec![Poly::constant(1, 1); n]; dynamical]),
        MatterSpec::Scalar(a) => (1, vec![fixed_point_table(a, 1); dynamical]),
        MatterSpec::ScalarPerSite(list) => (1, list.iter().map(|a| fixed_point_table(a, 1)).collect()),
        MatterSpec::SiteCharges(list) => {
            let field = list.iter().fold(1u32, |acc, s| acc.lcm(&s.modulus()));
            let tables = list
                .iter()
                .map(|s| {
                    (0..n)
                        .map(|g| {
                            let mut p = Poly::constant(field as usize, 0);
                            p.0[(s.power(g) * (field / s.modulus())) as usize % field as usize] = 1;
                            p
                        })
                        .collect()
                })
                .collect();
            (field, tables)
        }
        MatterSpec::Fermion(_) => {
            return Err(Error::BadParams("fermionic matter requires the Fock oracle".into()));
        }
    };
    let sites = place(lattice, twist, n, field, per_site)?;
    enumerate(group, lattice, twist, &sites, field, budget)
}

fn exact_matrices(rep: &UnitaryRep) -> Result<Vec<&CycMatrix>> {
    if rep.dim() > MAX_FOCK_DIM {
        return Err(Error::DimTooLarge(rep.dim()));
    }
    (0..rep.group().order())
        .map(|g| rep.exact_matrix(g).ok_or(Error::InexactRepresentation))
        .collect()
}

/// Subsets of `0..d` ordered by size, then lexicographically by bitmask.
fn graded_subsets(d: usize) -> Vec<Vec<usize>> {
    let mut masks: Vec<u32> = (0..1u32 << d).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
        .into_iter()
        .map(|m| (0..d).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// The action of `g` on the fermionic Fock space built on `ρ`: the direct
/// sum of the compound matrices of `ρ(g)`, block `k` acting on `k`-particle
/// states.
pub fn fock_site_matrix(rep: &UnitaryRep, g: usize) -> Result<CycMatrix> {
    let mats = exact_matrices(rep)?;
    let m = mats.get(g).ok_or_else(|| Error::BadParams(format!("element {g} out of range")))?;
    let order = m.field_order();
    let subsets = graded_subsets(rep.dim());
    let rows = subsets
        .iter()
        .map(|a| {
            subsets
                .iter()
                .map(|b| {
                    if a.len() == b.len() {
                        m.minor(a, b)
                    } else {
                        Cyclotomic::zero(order)
                    }
                })
                .collect()
        })
        .collect();
    Ok(CycMatrix::from_rows(rows))
}

/// Trace of the Fock action, optionally weighted by `(-1)^k` on the
/// `k`-particle block. Only diagonal minors are formed.
fn fock_trace(m: &CycMatrix, parity: bool) -> Cyclotomic {
    let order = m.field_order();
    graded_subsets(m.dim())
        .iter()
        .fold(Cyclotomic::zero(order), |acc, a| {
            let minor = m.minor(a, a);
            if parity && a.len() % 2 == 1 {
                &acc - &minor
            } else {
                &acc + &minor
            }
        })
}

/// `tr P` (or `tr P(-1)^F` with `parity`) on the fermionic Fock space,
/// by summing over every gauge transformation.
pub fn fock_trace_count(
    group: &GroupRef,
    lattice: &LatticeGraph,
    spec: &FermionSpec,
    twist: Option<&TwistSpec>,
    parity: bool,
    budget: u64,
) -> Result<BigInt> {
    let matter = MatterSpec::Fermion(spec.clone());
    matter.check_group(group)?;
    let dynamical = dynamical_mask(lattice, twist).iter().filter(|&&d| d).count();
    matter.check_sites(dynamical)?;
    let n = group.order();
    let ns = spec.spinor_count as u64;

    let mut site = vec![Cyclotomic::one(1); n];
    let mut odd_phase = vec![Cyclotomic::one(1); n];
    for rho in &spec.flavours {
        let mats = exact_matrices(rho)?;
        for g in 0..n {
            site[g] = &site[g] * &fock_trace(mats[g], parity).pow(ns);
            if matches!(spec.vacuum, Vacuum::Staggered) {
                odd_phase[g] = &odd_phase[g] * &mats[group.inv(g)].det().pow(ns);
            }
        }
    }
    let site0_phase: Vec<Cyclotomic> = match &spec.vacuum {
        Vacuum::Explicit(sigma) => (0..n).map(|g| sigma.value(g)).collect(),
        _ => vec![Cyclotomic::one(1); n],
    };

    let tables: Vec<Vec<Cyclotomic>> = (0..dynamical)
        .map(|i| {
            (0..n)
                .map(|g| {
                    let mut value = site[g].clone();
                    if i == 0 {
                        value = &value * &site0_phase[g];
                    }
                    if matches!(spec.vacuum, Vacuum::Staggered) && i % 2 == 1 {
                        value = &value * &odd_phase[g];
                    }
                    value
                })
                .collect()
        })
        .collect();
    let field = tables.iter().flatten().fold(1u32, |acc, z| acc.lcm(&z.order()));
    let per_site = tables
        .iter()
        .map(|t| t.iter().map(|z| Poly::from_cyclotomic(z, field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let sites = place(lattice, twist, n, field, per_site)?;
    enumerate(group, lattice, twist, &sites, field, budget)
}

/// Dispatches to [`burnside_count`] or [`fock_trace_count`].
pub fn oracle_count(
    group: &GroupRef,
    lattice: &LatticeGraph,
    spec: &MatterSpec,
    twist: Option<&TwistSpec>,
    budget: u64,
) -> Result<BigInt> {
    match spec {
        MatterSpec::Fermion(f) => fock_trace_count(group, lattice, f, twist, false, budget),
        _ => burnside_count(group, lattice, spec, twist, budget),
    }
}

/// A transitive action identified with left multiplication on `G/H`.
#[derive(Clone, Debug)]
pub struct CosetBijection {
    pub base_point: usize,
    pub stabilizer: Subgroup,
    pub cosets: Vec<Coset>,
    /// `map[s]` is the index of the coset assigned to `s`.
    pub map: Vec<usize>,
}

impl CosetBijection {
    fn coset_of(&self, g: usize) -> usize {
        self.cosets
            .iter()
            .position(|c| c.elements.binary_search(&g).is_ok())
            .expect("cosets partition the group")
    }

    /// Exhaustively checks that `map` is a bijection with
    /// `map(g·s) = g·map(s)`.
    pub fn verify(&self, action: &GroupAction) -> bool {
        let group = action.group();
        let mut seen = vec![false; self.cosets.len()];
        for &c in &self.map {
            if std::mem::replace(&mut seen[c], true) {
                return false;
            }
        }
        if self.map.len() != self.cosets.len() {
            return false;
        }
        (0..group.order()).all(|g| {
            (0..action.set_size()).all(|s| {
                let moved = self.coset_of(group.mul(g, self.cosets[self.map[s]].rep));
                self.map[action.act(g, s)] == moved
            })
        })
    }
}

/// Identifies a transitive action with the coset action of the stabilizer
/// of point 0: `s = g·s₀ ↦ gH`, taking the smallest such `g`.
pub fn transitive_to_coset(action: &GroupAction) -> Result<CosetBijection> {
    if !action.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let group = action.group();
    let base_point = 0;
    let stabilizer = action.stabilizer(base_point);
    let cosets = coset_space(group, &stabilizer)?;
    let mut bij = CosetBijection {
        base_point,
        stabilizer,
        cosets,
        map: vec![usize::MAX; action.set_size()],
    };
    for g in 0..group.order() {
        let s = action.act(g, base_point);
        if bij.map[s] == usize::MAX {
            bij.map[s] = bij.coset_of(g);
        }
    }
    Ok(bij)
}

/// A free action identified with left multiplication on `G × orbits`.
#[derive(Clone, Debug)]
pub struct ProductBijection {
    /// Smallest point of each orbit.
    pub orbit_reps: Vec<usize>,
    /// `map[s] = (g, o)` with `s = g·orbit_reps[o]`.
    pub map: Vec<(usize, usize)>,
}

impl ProductBijection {
    pub fn orbit_count(&self) -> usize {
        self.orbit_reps.len()
    }

    /// Exhaustively checks bijectivity onto `G × orbits` and
    /// `map(g·s) = (g·g_s, o)`.
    pub fn verify(&self, action: &GroupAction) -> bool {
        let group = action.group();
        let n = group.order();
        if self.map.len() != n * self.orbit_reps.len() {
            return false;
        }
        let mut seen = vec![false; self.map.len()];
        for &(g, o) in &self.map {
            if g >= n || o >= self.orbit_reps.len() || std::mem::replace(&mut seen[o * n + g], true) {
                return false;
            }
        }
        (0..n).all(|g| {
            (0..action.set_size()).all(|s| {
                let (h, o) = self.map[s];
                self.map[action.act(g, s)] == (group.mul(g, h), o)
            })
        })
    }
}

/// Identifies a free action with `G × orbits`.
pub fn free_to_product(action: &GroupAction) -> Result<ProductBijection> {
    if !action.is_free() {
        return Err(Error::NotFree);
    }
    let orbits = action.orbits();
    let orbit_reps: Vec<usize> = orbits.iter().map(|o| *o.iter().min().expect("orbits are non-empty")).collect();
    let mut map = vec![(usize::MAX, usize::MAX); action.set_size()];
    for (o, &r) in orbit_reps.iter().enumerate() {
        for g in 0..action.group().order() {
            map[action.act(g, r)] = (g, o);
        }
    }
    Ok(ProductBijection { orbit_reps, map })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::counting::count;
    use crate::group::{builtin_group, GroupFamily};
    use crate::lattice::{dangling_boundary_extension, make_twist, EdgeSelector};
    use crate::matter::{OneDimRep, UnitaryRep};
    use crate::automorphisms::GroupEndomorphism;

    fn group(f: GroupFamily) -> GroupRef {
        Arc::new(builtin_group(&f).unwrap())
    }

    fn torus(dims: &[usize]) -> LatticeGraph {
        LatticeGraph::hypercubic(dims, &vec![true; dims.len()]).unwrap()
    }

    const B: u64 = DEFAULT_ORACLE_BUDGET;

    #[test]
    fn z2_pure_gauge_single_site() {
        let g = group(GroupFamily::Cyclic(2));
        assert_eq!(burnside_count(&g, &torus(&[1, 1]), &MatterSpec::None, None, B).unwrap(), BigInt::from(4));
    }

    #[test]
    fn charged_states_vanish() {
        let g = group(GroupFamily::Cyclic(3));
        let charges = vec![OneDimRep::cyclic_charge(&g, 1).unwrap(), OneDimRep::trivial(&g)];
        let spec = MatterSpec::SiteCharges(charges);
        assert_eq!(burnside_count(&g, &torus(&[2]), &spec, None, B).unwrap(), BigInt::from(0));
    }

    #[test]
    fn trivial_group_gives_total_dimension() {
        let g = group(GroupFamily::Cyclic(1));
        let spec = MatterSpec::Scalar(GroupAction::trivial(&g, 3).unwrap());
        assert_eq!(burnside_count(&g, &torus(&[2]), &spec, None, B).unwrap(), BigInt::from(9));
    }

    #[test]
    fn budget_is_enforced() {
        let g = group(GroupFamily::Symmetric(3));
        let err = burnside_count(&g, &torus(&[2, 2]), &MatterSpec::None, None, 100).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 100 });
    }

    #[test]
    fn fock_matrix_of_one_dim_rep() {
        let g = group(GroupFamily::Cyclic(3));
        let rep = UnitaryRep::standard(&g).unwrap();
        let m = fock_site_matrix(&rep, 1).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.get(0, 0).to_integer() == Some(BigInt::from(1)));
        assert_eq!(m.get(1, 1), rep.exact_matrix(1).unwrap().get(0, 0));
        assert!(m.get(0, 1).is_zero());
    }

    #[test]
    fn fock_matrix_of_identity_is_identity() {
        let g = group(GroupFamily::Dihedral(4));
        let rep = UnitaryRep::standard(&g).unwrap();
        assert!(fock_site_matrix(&rep, 0).unwrap().is_identity());
    }

    #[test]
    fn fock_trace_is_det_one_plus_rho() {
        for f in [GroupFamily::Dihedral(4), GroupFamily::Quaternion, GroupFamily::BinaryTetrahedral] {
            let g = group(f);
            let rep = UnitaryRep::standard(&g).unwrap();
            for e in 0..g.order() {
                let m = rep.exact_matrix(e).unwrap();
                let d = m.dim();
                let order = m.field_order();
                let rows = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| {
                                let one = if r == c { Cyclotomic::one(order) } else { Cyclotomic::zero(order) };
                                &one + m.get(r, c)
                            })
                            .collect()
                    })
                    .collect();
                let det = CycMatrix::from_rows(rows).det();
                assert_eq!(fock_site_matrix(&rep, e).unwrap().trace(), det);
            }
        }
    }

    #[test]
    fn d4_two_site_ring() {
        let g = group(GroupFamily::Dihedral(4));
        let rep = UnitaryRep::standard(&g).unwrap();
        let spec = FermionSpec::simple(rep, 1).unwrap();
        let l = torus(&[2]);
        let oracle = fock_trace_count(&g, &l, &spec, None, false, B).unwrap();
        let formula = count(&g, &g.conjugacy_classes(), &l, &MatterSpec::Fermion(spec), None).unwrap().total;
        assert_eq!(oracle, formula);
        assert_eq!(oracle, BigInt::from(20));
    }

    #[test]
    fn trivial_rep_factorizes() {
        let g = group(GroupFamily::Symmetric(3));
        let spec = FermionSpec::simple(UnitaryRep::trivial(&g, 1), 1).unwrap();
        let l = torus(&[3]);
        let pure = burnside_count(&g, &l, &MatterSpec::None, None, B).unwrap();
        assert_eq!(fock_trace_count(&g, &l, &spec, None, false, B).unwrap(), pure * 8);
    }

    #[test]
    fn parity_weighted_sum() {
        let g = group(GroupFamily::Cyclic(2));
        let rep = UnitaryRep::standard(&g).unwrap();
        let spec = FermionSpec::simple(rep, 1).unwrap();
        let l = torus(&[1]);
        let all = fock_trace_count(&g, &l, &spec, None, false, B).unwrap();
        let signed = fock_trace_count(&g, &l, &spec, None, true, B).unwrap();
        let (even, odd) =
            crate::counting::count_fermion_parity_split(&g, &g.conjugacy_classes(), &l, &spec, None).unwrap();
        assert_eq!(&all + &signed, even.clone() * 2);
        assert_eq!(&all - &signed, odd * 2);
    }

    #[test]
    fn staggered_and_twisted_agree_with_formula() {
        let g = group(GroupFamily::Cyclic(3));
        let classes = g.conjugacy_classes();
        let rep = UnitaryRep::standard(&g).unwrap();
        let spec = FermionSpec::staggered(rep).unwrap();
        let l = torus(&[2]);
        let t = make_twist(&l, GroupEndomorphism::inversion(&g).unwrap(), &EdgeSelector::WrapDirection(0)).unwrap();
        for twist in [None, Some(&t)] {
            let m = MatterSpec::Fermion(spec.clone());
            assert_eq!(
                fock_trace_count(&g, &l, &spec, twist, false, B).unwrap(),
                count(&g, &classes, &l, &m, twist).unwrap().total
            );
        }
    }

    #[test]
    fn dangling_agrees_with_formula() {
        let g = group(GroupFamily::Quaternion);
        let open = LatticeGraph::hypercubic(&[2], &[false]).unwrap();
        let (l, t) = dangling_boundary_extension(&open, &[1], &g).unwrap();
        let spec = MatterSpec::Scalar(GroupAction::left_mult(&g));
        assert_eq!(
            burnside_count(&g, &l, &spec, Some(&t), B).unwrap(),
            count(&g, &g.conjugacy_classes(), &l, &spec, Some(&t)).unwrap().total
        );
    }

    #[test]
    fn inexact_reps_are_rejected() {
        let g = group(GroupFamily::Cyclic(2));
        let rep = UnitaryRep::from_numeric(&g, 1, vec![vec![1.0.into()], vec![(-1.0).into()]]).unwrap();
        assert_eq!(fock_site_matrix(&rep, 0).unwrap_err(), Error::InexactRepresentation);
    }

    #[test]
    fn coset_bijections() {
        let g = group(GroupFamily::Cyclic(4));
        let h = Subgroup::from_elements(&g, &[0, 2]).unwrap();
        let a = GroupAction::coset(&g, &h).unwrap();
        let b = transitive_to_coset(&a).unwrap();
        assert_eq!(b.stabilizer.order(), 2);
        assert!(b.verify(&a));

        let left = GroupAction::left_mult(&g);
        let b = transitive_to_coset(&left).unwrap();
        assert_eq!(b.stabilizer.order(), 1);
        assert!(b.verify(&left));

        let point = GroupAction::trivial(&g, 1).unwrap();
        assert_eq!(transitive_to_coset(&point).unwrap().stabilizer.order(), 4);
        assert_eq!(transitive_to_coset(&GroupAction::trivial(&g, 2).unwrap()).unwrap_err(), Error::NotTransitive);
    }

    #[test]
    fn product_bijections() {
        let g = group(GroupFamily::Symmetric(3));
        let left = GroupAction::left_mult(&g);
        let p = free_to_product(&left).unwrap();
        assert_eq!(p.orbit_count(), 1);
        assert!(p.verify(&left));
        let three = GroupAction::product(&left, &GroupAction::trivial(&g, 3).unwrap()).unwrap();
        let p = free_to_product(&three).unwrap();
        assert_eq!(p.orbit_count(), 3);
        assert!(p.verify(&three));
        assert_eq!(transitive_to_coset(&left).unwrap().stabilizer.order(), 1);
        assert_eq!(free_to_product(&GroupAction::trivial(&g, 1).unwrap()).unwrap_err(), Error::NotFree);
    }
}
