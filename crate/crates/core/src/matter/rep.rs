use std::collections::VecDeque;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use super::action::GroupAction;
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{same_group, standard_generator_images, GroupFamily, GroupRef, Subgroup};
use crate::numeric;
use crate::textio::parse_err;

/// Entrywise tolerance for representations supplied as floating point.
pub const REP_TOLERANCE: f64 = 1e-9;

/// Tolerance for snapping eigenvalue multiplicities to integers.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// A unitary matrix representation, exact when built from cyclotomic data.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    group: GroupRef,
    dim: usize,
    exact: Option<Arc<Vec<CycMatrix>>>,
    numeric: Arc<Vec<Vec<Complex64>>>,
}

/// Fills in `ρ` on every element from its values on `gens` via `ρ(a·s) = ρ(a)ρ(s)`.
fn close_over<M: Clone>(
    group: &GroupRef,
    gens: &[usize],
    images: &[M],
    identity: M,
    mul: impl Fn(&M, &M) -> M,
) -> Result<Vec<M>> {
    if gens.len() != images.len() {
        return Err(Error::InvalidRepresentation(format!(
            "{} generator images for {} generators",
            images.len(),
            gens.len()
        )));
    }
    let mut out: Vec<Option<M>> = vec![None; group.order()];
    out[0] = Some(identity);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (&s, img) in gens.iter().zip(images) {
            let b = group.mul(a, s);
            if out[b].is_none() {
                out[b] = Some(mul(out[a].as_ref().unwrap(), img));
                queue.push_back(b);
            }
        }
    }
    out.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidRepresentation("images do not cover the group".into()))
}

impl UnitaryRep {
    /// Exact representation from images of the group's stored generators.
    pub fn from_generator_images(group: &GroupRef, images: Vec<CycMatrix>) -> Result<Self> {
        Self::from_images(group, group.generators(), images)
    }

    /// Exact representation from images of arbitrary generating elements.
    pub fn from_images(group: &GroupRef, gens: &[usize], images: Vec<CycMatrix>) -> Result<Self> {
        let dim = images.first().map_or(1, CycMatrix::dim);
        if images.iter().any(|m| m.dim() != dim) {
            return Err(Error::InvalidRepresentation("generator images differ in dimension".into()));
        }
        let order = images.iter().map(CycMatrix::field_order).fold(1, num_integer::lcm);
        let matrices = close_over(group, gens, &images, CycMatrix::identity(dim, order), CycMatrix::mul)?;
        Self::from_exact(group, matrices)
    }

    /// Exact representation from one matrix per element.
    pub fn from_exact(group: &GroupRef, matrices: Vec<CycMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].dim();
        if matrices.iter().any(|m| m.dim() != dim) {
            return Err(Error::InvalidRepresentation("matrices differ in dimension".into()));
        }
        if !matrices[0].is_identity() {
            return Err(Error::InvalidRepresentation("identity is not represented by 1".into()));
        }
        for &s in group.generators() {
            if !matrices[s].mul(&matrices[s].conj_transpose()).is_identity() {
                return Err(Error::InvalidRepresentation(format!("image of {s} is not unitary")));
            }
            for a in 0..group.order() {
                if matrices[a].mul(&matrices[s]) != matrices[group.mul(a, s)] {
                    return Err(Error::InvalidRepresentation(format!(
                        "not a homomorphism at ({a}, {s})"
                    )));
                }
            }
        }
        let numeric = matrices.iter().map(CycMatrix::to_complex).collect();
        Ok(Self {
            group: group.clone(),
            dim,
            exact: Some(Arc::new(matrices)),
            numeric: Arc::new(numeric),
        })
    }

    /// Floating-point representation, one row-major matrix per element,
    /// checked to [`REP_TOLERANCE`].
    pub fn from_numeric(group: &GroupRef, dim: usize, matrices: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 || matrices.len() != group.order() || matrices.iter().any(|m| m.len() != dim * dim) {
            return Err(Error::InvalidRepresentation("matrix count or shape mismatch".into()));
        }
        let id = numeric::identity(dim);
        if numeric::max_abs_diff(&matrices[0], &id) > REP_TOLERANCE {
            return Err(Error::InvalidRepresentation("identity is not represented by 1".into()));
        }
        for a in 0..group.order() {
            let u = numeric::matmul(&matrices[a], &numeric::adjoint(&matrices[a], dim), dim);
            if numeric::max_abs_diff(&u, &id) > REP_TOLERANCE {
                return Err(Error::InvalidRepresentation(format!("image of {a} is not unitary")));
            }
            for &s in group.generators() {
                let p = numeric::matmul(&matrices[a], &matrices[s], dim);
                if numeric::max_abs_diff(&p, &matrices[group.mul(a, s)]) > REP_TOLERANCE {
                    return Err(Error::InvalidRepresentation(format!(
                        "not a homomorphism at ({a}, {s})"
                    )));
                }
            }
        }
        Ok(Self {
            group: group.clone(),
            dim,
            exact: None,
            numeric: Arc::new(matrices),
        })
    }

    /// The family's standard faithful representation, if it has one built in.
    pub fn standard(group: &GroupRef) -> Result<Self> {
        let images = group
            .family()
            .and_then(standard_generator_images)
            .ok_or_else(|| {
                Error::InvalidRepresentation(format!(
                    "no standard representation for {}",
                    group.family().map_or("this group".to_string(), GroupFamily::to_string)
                ))
            })?;
        Self::from_generator_images(group, images)
    }

    pub fn trivial(group: &GroupRef, dim: usize) -> Self {
        let id = CycMatrix::identity(dim, 1);
        Self::from_exact(group, vec![id; group.order()]).expect("trivial representation")
    }

    /// Permutation matrices of an action, `P(g) e_s = e_{g·s}`.
    pub fn permutation(action: &GroupAction) -> Self {
        let n = action.set_size();
        let one = Cyclotomic::one(1);
        let zero = Cyclotomic::zero(1);
        let matrices = (0..action.group().order())
            .map(|g| {
                let rows = (0..n)
                    .map(|r| (0..n).map(|s| if action.act(g, s) == r { one.clone() } else { zero.clone() }).collect())
                    .collect();
                CycMatrix::from_rows(rows)
            })
            .collect();
        Self::from_exact(action.group(), matrices).expect("permutation representation")
    }

    pub fn regular(group: &GroupRef) -> Self {
        Self::permutation(&GroupAction::left_mult(group))
    }

    pub fn from_one_dim(sigma: &OneDimRep) -> Self {
        let matrices = (0..sigma.group.order())
            .map(|g| CycMatrix::from_rows(vec![vec![sigma.value(g)]]))
            .collect();
        Self::from_exact(&sigma.group, matrices).expect("one-dimensional representation")
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_matrix(&self, g: usize) -> Option<&CycMatrix> {
        self.exact.as_ref().map(|m| &m[g])
    }

    /// Row-major complex matrix of `ρ(g)`.
    pub fn matrix(&self, g: usize) -> &[Complex64] {
        &self.numeric[g]
    }

    /// Block-diagonal sum; exact when both summands are.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 + d2;
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            let matrices = a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| {
                    let order = num_integer::lcm(x.field_order(), y.field_order());
                    let rows = (0..d)
                        .map(|r| {
                            (0..d)
                                .map(|c| match (r < d1, c < d1) {
                                    (true, true) => x.get(r, c).clone(),
                                    (false, false) => y.get(r - d1, c - d1).clone(),
                                    _ => Cyclotomic::zero(order),
                                })
                                .collect()
                        })
                        .collect();
                    CycMatrix::from_rows(rows)
                })
                .collect();
            return Self::from_exact(&self.group, matrices);
        }
        let matrices = self
            .numeric
            .iter()
            .zip(other.numeric.iter())
            .map(|(x, y)| {
                let mut m = vec![Complex64::new(0.0, 0.0); d * d];
                for r in 0..d1 {
                    m[r * d..r * d + d1].copy_from_slice(&x[r * d1..(r + 1) * d1]);
                }
                for r in 0..d2 {
                    m[(d1 + r) * d + d1..(d1 + r + 1) * d].copy_from_slice(&y[r * d2..(r + 1) * d2]);
                }
                m
            })
            .collect();
        Self::from_numeric(&self.group, d, matrices)
    }

    /// Restriction to `sub`, re-indexed over the subgroup as a standalone group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<(GroupRef, Self)> {
        sub.check_parent(&self.group)?;
        let (h, embed) = sub.as_group();
        let rep = match &self.exact {
            Some(m) => Self::from_exact(&h, embed.iter().map(|&e| m[e].clone()).collect())?,
            None => Self::from_numeric(&h, self.dim, embed.iter().map(|&e| self.numeric[e].clone()).collect())?,
        };
        Ok((h, rep))
    }

    /// Multiplicity of each eigenvalue `exp(2πik/m)` of `ρ(g)`, `m = order(g)`.
    ///
    /// Computed from the traces of `ρ(g^t)` by a discrete Fourier transform and
    /// snapped to integers within [`SNAP_TOLERANCE`].
    pub fn eigenvalue_multiplicities(&self, g: usize) -> Result<Vec<usize>> {
        let m = self.group.element_order(g) as usize;
        let traces: Vec<Complex64> = (0..m)
            .map(|t| numeric::trace(&self.numeric[self.group.pow(g, t as u64)], self.dim))
            .collect();
        let mut mults = Vec::with_capacity(m);
        for k in 0..m {
            let sum: Complex64 = traces
                .iter()
                .enumerate()
                .map(|(t, tr)| tr * Complex64::from_polar(1.0, -TAU * (k * t) as f64 / m as f64))
                .sum();
            let v = sum / m as f64;
            let rounded = v.re.round();
            if (v - rounded).norm() > SNAP_TOLERANCE || rounded < 0.0 {
                return Err(Error::SnapFailure {
                    element: g,
                    detail: format!("multiplicity of exp(2πi·{k}/{m}) is {v}"),
                });
            }
            mults.push(rounded as usize);
        }
        if mults.iter().sum::<usize>() != self.dim {
            return Err(Error::SnapFailure {
                element: g,
                detail: "eigenvalue multiplicities do not sum to the dimension".into(),
            });
        }
        Ok(mults)
    }

    /// Header `rep |G| dim`, then `dim` rows of `re im` pairs per element.
    pub fn to_text(&self) -> String {
        let mut out = format!("rep {} {}\n", self.group.order(), self.dim);
        for m in self.numeric.iter() {
            for row in m.chunks(self.dim) {
                let row: Vec<String> = row.iter().map(|z| format!("{:?} {:?}", z.re, z.im)).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Parses the text format into a floating-point representation.
    pub fn from_text(group: &GroupRef, text: &str) -> Result<Self> {
        let rows = crate::textio::numeric_rows(text, "rep")?;
        let (hl, header) = &rows.header;
        let [order, dim] = header[..] else {
            return Err(parse_err(*hl, "expected 'rep |G| dim'"));
        };
        if order != group.order() {
            return Err(parse_err(*hl, format!("rep is for a group of order {order}, expected {}", group.order())));
        }
        if dim == 0 || rows.body.len() != order * dim {
            return Err(parse_err(*hl, format!("expected {} matrix rows", order * dim)));
        }
        let mut flat = Vec::with_capacity(order * dim * dim);
        for (line, tokens) in &rows.body {
            if tokens.len() != 2 * dim {
                return Err(parse_err(*line, format!("expected {dim} 're im' pairs")));
            }
            let vals = tokens
                .iter()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(*line, e.to_string()))?;
            flat.extend(vals.chunks(2).map(|p| Complex64::new(p[0], p[1])));
        }
        let matrices = flat.chunks(dim * dim).map(<[Complex64]>::to_vec).collect();
        Self::from_numeric(group, dim, matrices)
    }
}

/// A one-dimensional representation `g ↦ exp(2πi·k_g/n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimRep {
    group: GroupRef,
    modulus: u32,
    powers: Vec<u32>,
}

impl OneDimRep {
    pub fn from_powers(group: &GroupRef, modulus: u32, powers: Vec<u32>) -> Result<Self> {
        if modulus == 0 || powers.len() != group.order() {
            return Err(Error::InvalidRepresentation("bad one-dimensional data".into()));
        }
        let powers: Vec<u32> = powers.into_iter().map(|p| p % modulus).collect();
        for a in 0..group.order() {
            for b in 0..group.order() {
                if (powers[a] + powers[b]) % modulus != powers[group.mul(a, b)] {
                    return Err(Error::InvalidRepresentation(format!(
                        "one-dimensional map is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self {
            group: group.clone(),
            modulus,
            powers,
        })
    }

    pub fn trivial(group: &GroupRef) -> Self {
        Self {
            group: group.clone(),
            modulus: 1,
            powers: vec![0; group.order()],
        }
    }

    /// Charge-`q` representation of a cyclic group, `x^k ↦ exp(2πi·qk/N)`
    /// for the distinguished generator `x`.
    pub fn cyclic_charge(group: &GroupRef, q: i64) -> Result<Self> {
        let n = group.order();
        let gen = match group.family() {
            Some(GroupFamily::Cyclic(_)) if n > 1 => group.generators()[0],
            _ => (0..n)
                .find(|&g| group.element_order(g) as usize == n)
                .ok_or_else(|| Error::BadCharge("group is not cyclic".into()))?,
        };
        let mut powers = vec![0u32; n];
        let step = q.rem_euclid(n as i64) as u64;
        let mut x = 0;
        for k in 0..n as u64 {
            powers[x] = ((k * step) % n as u64) as u32;
            x = group.mul(x, gen);
        }
        Self::from_powers(group, n as u32, powers)
    }

    /// `g ↦ det ρ(g)`.
    pub fn determinant(rep: &UnitaryRep) -> Result<Self> {
        let group = rep.group();
        let modulus = group.exponent();
        let mut powers = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let m = group.element_order(g);
            let mults = rep.eigenvalue_multiplicities(g)?;
            let k: u64 = mults.iter().enumerate().map(|(k, &c)| k as u64 * c as u64).sum();
            powers.push(((k % m as u64) * (modulus / m) as u64) as u32);
        }
        Self::from_powers(group, modulus, powers)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `k_g` with `σ(g) = exp(2πi·k_g/n)`.
    pub fn power(&self, g: usize) -> u32 {
        self.powers[g]
    }

    pub fn value(&self, g: usize) -> Cyclotomic {
        Cyclotomic::zeta_power(self.modulus, self.powers[g] as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.powers.iter().all(|&p| p == 0)
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = self.modulus as i64;
        Self {
            group: self.group.clone(),
            modulus: self.modulus,
            powers: self.powers.iter().map(|&p| (p as i64 * e).rem_euclid(n) as u32).collect(),
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let n = num_integer::lcm(self.modulus, other.modulus);
        let (sa, sb) = (n / self.modulus, n / other.modulus);
        Ok(Self {
            group: self.group.clone(),
            modulus: n,
            powers: self
                .powers
                .iter()
                .zip(&other.powers)
                .map(|(&a, &b)| (a * sa + b * sb) % n)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;

    fn group(f: GroupFamily) -> GroupRef {
        Arc::new(builtin_group(&f).unwrap())
    }

    #[test]
    fn standard_reps_are_valid_and_faithful() {
        for fam in [
            GroupFamily::Cyclic(5),
            GroupFamily::Dihedral(4),
            GroupFamily::Symmetric(3),
            GroupFamily::Quaternion,
            GroupFamily::BinaryTetrahedral,
            GroupFamily::BinaryOctahedral,
            GroupFamily::BinaryIcosahedral,
        ] {
            let g = group(fam.clone());
            let rep = UnitaryRep::standard(&g).unwrap();
            assert!(rep.is_exact());
            let identities = (0..g.order())
                .filter(|&x| rep.exact_matrix(x).unwrap().is_identity())
                .count();
            assert_eq!(identities, 1, "{fam}");
        }
        let s4 = group(GroupFamily::Symmetric(4));
        assert!(UnitaryRep::standard(&s4).is_err());
    }

    #[test]
    fn binary_polyhedral_standard_rep_has_trace_minus_two_on_center() {
        for fam in [GroupFamily::BinaryTetrahedral, GroupFamily::BinaryIcosahedral] {
            let g = group(fam);
            let rep = UnitaryRep::standard(&g).unwrap();
            let minus_one = (0..g.order()).find(|&x| g.element_order(x) == 2).unwrap();
            assert_eq!(rep.exact_matrix(minus_one).unwrap().trace().to_integer(), Some((-2).into()));
        }
    }

    #[test]
    fn bad_images_are_rejected() {
        let g = group(GroupFamily::Cyclic(3));
        let i = CycMatrix::from_rows(vec![vec![Cyclotomic::zeta_power(4, 1)]]);
        assert!(matches!(
            UnitaryRep::from_generator_images(&g, vec![i]),
            Err(Error::InvalidRepresentation(_))
        ));
        let two = CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(1, 2)]]);
        assert!(UnitaryRep::from_images(&g, &[0], vec![two]).is_err());
    }

    #[test]
    fn regular_rep_multiplicities() {
        let g = group(GroupFamily::Cyclic(4));
        let reg = UnitaryRep::regular(&g);
        assert_eq!(reg.eigenvalue_multiplicities(1).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(reg.eigenvalue_multiplicities(0).unwrap(), vec![4]);
        let x2 = g.mul(1, 1);
        assert_eq!(reg.eigenvalue_multiplicities(x2).unwrap(), vec![2, 2]);
    }

    #[test]
    fn numeric_reps_and_text_round_trip() {
        let g = group(GroupFamily::Dihedral(3));
        let rep = UnitaryRep::standard(&g).unwrap();
        let text = rep.to_text();
        let back = UnitaryRep::from_text(&g, &text).unwrap();
        assert!(!back.is_exact());
        for x in 0..6 {
            assert!(numeric::max_abs_diff(back.matrix(x), rep.matrix(x)) < 1e-15);
            assert_eq!(back.eigenvalue_multiplicities(x).unwrap(), rep.eigenvalue_multiplicities(x).unwrap());
        }
        let mut bad = rep.numeric.as_ref().clone();
        bad[1][0] += Complex64::new(1e-6, 0.0);
        assert!(UnitaryRep::from_numeric(&g, 2, bad).is_err());
    }

    #[test]
    fn direct_sum_and_restriction() {
        let g = group(GroupFamily::Quaternion);
        let rep = UnitaryRep::standard(&g).unwrap();
        let sum = rep.direct_sum(&UnitaryRep::trivial(&g, 1)).unwrap();
        assert_eq!(sum.dim(), 3);
        assert!(sum.is_exact());
        let (h, res) = rep.restrict(&Subgroup::trivial(&g)).unwrap();
        assert_eq!(h.order(), 1);
        assert!(res.exact_matrix(0).unwrap().is_identity());
        let center = crate::group::center(&g);
        let (z, rz) = rep.restrict(&center).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(rz.exact_matrix(1).unwrap().trace().to_integer(), Some((-2).into()));
    }

    #[test]
    fn one_dimensional_reps() {
        let g = group(GroupFamily::Cyclic(6));
        let q = OneDimRep::cyclic_charge(&g, 2).unwrap();
        assert_eq!(q.value(1), Cyclotomic::zeta_power(3, 1));
        assert!(q.pow(3).is_trivial());
        assert!(q.product(&q.conj()).unwrap().is_trivial());
        let s3 = group(GroupFamily::Symmetric(3));
        assert!(OneDimRep::cyclic_charge(&s3, 1).is_err());

        let det = OneDimRep::determinant(&UnitaryRep::standard(&s3).unwrap()).unwrap();
        let sign: Vec<u32> = (0..6).map(|x| det.power(x)).collect();
        let parity: Vec<u32> = (0..6).map(|x| if s3.element_order(x) == 2 { 1 } else { 0 }).collect();
        assert_eq!(sign.iter().map(|&p| p * 2 / det.modulus()).collect::<Vec<_>>(), parity);

        let rep = UnitaryRep::from_one_dim(&q);
        assert_eq!(OneDimRep::determinant(&rep).unwrap().value(1), q.value(1));
    }
}
