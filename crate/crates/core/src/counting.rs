//! Exact counting of gauge-invariant states.
//!
//! Every count is a sum over conjugacy classes of the gauge group. Per-site
//! matter enters through class functions; twisted links through the map
//! `φ` acting on the head site's gauge transformation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::automorphisms::GroupEndomorphism;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{same_group, ConjugacyClassTable, GroupRef};
use crate::lattice::{LatticeGraph, TwistSpec};
use crate::matter::{
    fermion_site_character, fixed_point_character, one_dim_character, ClassFunction, FermionSpec, MatterSpec,
    OneDimRep, Vacuum,
};

/// Maximum number of class assignments to bulk components that are enumerated.
pub const ASSIGNMENT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// No twisted links, connected lattice.
    Untwisted,
    /// One bulk component, twisted by an automorphism.
    TwistedAutomorphism,
    /// One bulk component, twisted by a non-invertible endomorphism.
    TwistedEndomorphism,
    /// Several bulk components, summed over one class per component.
    Components,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassContribution {
    pub class: usize,
    pub size: usize,
    pub representative: String,
    pub value: Cyclotomic,
}

/// Result of a count: the total and the term contributed by each class.
///
/// With several bulk components the terms are keyed by the class assigned
/// to the component containing site 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub formula: Formula,
    pub total: BigInt,
    pub per_class: Vec<ClassContribution>,
    pub warnings: Vec<String>,
}

fn decimal(z: &Cyclotomic) -> String {
    let c = z.to_complex();
    if c.im.abs() < 1e-9 * c.re.abs().max(1.0) {
        format!("{:.6}", c.re)
    } else {
        format!("{:.6}{:+.6}i", c.re, c.im)
    }
}

impl CountReport {
    /// The per-class terms sum to a rational integer in the power basis.
    pub fn integrality_witness(&self) -> bool {
        let sum = self
            .per_class
            .iter()
            .fold(Cyclotomic::zero(1), |acc, c| &acc + &c.value);
        sum.to_integer().as_ref() == Some(&self.total)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "formula": self.formula,
            "total": self.total.to_string(),
            "classes": self.per_class.iter().map(|c| json!({
                "id": c.class,
                "size": c.size,
                "representative": c.representative,
                "field_order": c.value.order(),
                "contribution_exact": c.value.coeff_strings(),
                "contribution_decimal": decimal(&c.value),
            })).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

fn check_inputs(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    site_chars: &[ClassFunction],
    vacuum: Option<&ClassFunction>,
    twist: Option<&TwistSpec>,
) -> Result<()> {
    if lattice.sites() == 0 {
        return Err(Error::BadDims("lattice has no sites".into()));
    }
    if site_chars.len() != lattice.sites() {
        return Err(Error::SiteCountMismatch {
            expected: lattice.sites(),
            got: site_chars.len(),
        });
    }
    let n = classes.len();
    if classes.group_order() != group.order()
        || site_chars.iter().chain(vacuum).any(|c| c.len() != n)
        || twist.is_some_and(|t| !same_group(t.group(), group))
    {
        return Err(Error::GroupMismatch);
    }
    if let Some(t) = twist {
        if let Some(&e) = t.twisted_edges.iter().find(|&&e| e >= lattice.edge_count()) {
            return Err(Error::BadParams(format!("twisted edge {e} out of range")));
        }
    }
    Ok(())
}

/// Everything the per-assignment weight needs, precomputed.
struct Engine<'a> {
    group_order: BigInt,
    sizes: Vec<BigInt>,
    centralizers: Vec<BigInt>,
    site_chars: &'a [ClassFunction],
    vacuum: Option<&'a ClassFunction>,
    comp_of: Vec<usize>,
    components: Vec<Vec<usize>>,
    /// Tails of twisted edges into each site.
    twisted_tails: Vec<Vec<usize>>,
    /// Tails of all edges, per component.
    edge_tails: Vec<Vec<usize>>,
    /// `phi_counts[c][d] = #{g ∈ C_c : φ(g) ∈ C_d}`.
    phi_counts: Vec<Vec<BigInt>>,
}

impl Engine<'_> {
    /// Weight of one component given the classes of all components it reads.
    fn weight(&self, k: usize, assign: &[usize]) -> (BigInt, Cyclotomic) {
        let c = assign[k];
        let mut int = BigInt::one();
        let mut cyc = Cyclotomic::one(1);
        for &x in &self.components[k] {
            let tails = &self.twisted_tails[x];
            if tails.is_empty() {
                int *= &self.sizes[c];
            } else {
                let d = assign[self.comp_of[tails[0]]];
                if tails.iter().any(|&t| assign[self.comp_of[t]] != d) {
                    return (BigInt::zero(), Cyclotomic::zero(1));
                }
                int *= &self.phi_counts[c][d];
            }
            if int.is_zero() {
                return (int, Cyclotomic::zero(1));
            }
            cyc *= self.site_chars[x].value(c);
        }
        for _ in &self.edge_tails[k] {
            int *= &self.centralizers[c];
        }
        if let Some(v) = self.vacuum {
            if self.components[k].contains(&0) {
                cyc *= v.value(c);
            }
        }
        (int, cyc)
    }
}

/// The general counting formula.
///
/// `site_chars[x]` is the matter character at site `x`; sites listed as
/// virtual in `twist` should carry the constant character 1. `vacuum`, if
/// given, multiplies the class of site 0.
pub fn count_general(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    site_chars: &[ClassFunction],
    vacuum: Option<&ClassFunction>,
    twist: Option<&TwistSpec>,
) -> Result<CountReport> {
    evaluate(group, classes, lattice, site_chars, vacuum, twist, false)
}

fn evaluate(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    site_chars: &[ClassFunction],
    vacuum: Option<&ClassFunction>,
    twist: Option<&TwistSpec>,
    signed: bool,
) -> Result<CountReport> {
    check_inputs(group, classes, lattice, site_chars, vacuum, twist)?;
    let nc = classes.len();
    let twisted = |e: usize| twist.is_some_and(|t| t.twisted_edges.contains(&e));
    let components = lattice.components_with(|e| !twisted(e));
    let mut comp_of = vec![0; lattice.sites()];
    for (k, comp) in components.iter().enumerate() {
        for &x in comp {
            comp_of[x] = k;
        }
    }
    let mut twisted_tails = vec![Vec::new(); lattice.sites()];
    let mut edge_tails = vec![Vec::new(); components.len()];
    let mut has_exit = vec![false; components.len()];
    for (e, &(t, h)) in lattice.edges().iter().enumerate() {
        edge_tails[comp_of[t]].push(t);
        if twisted(e) {
            twisted_tails[h].push(t);
            if comp_of[t] != comp_of[h] {
                has_exit[comp_of[t]] = true;
            }
        }
    }
    let mut phi_counts = vec![vec![BigInt::zero(); nc]; nc];
    match twist {
        Some(t) => {
            for g in 0..group.order() {
                phi_counts[classes.class_of(g)][classes.class_of(t.twist.apply(g))] += 1;
            }
        }
        None => {
            for (c, row) in phi_counts.iter_mut().enumerate() {
                row[c] = BigInt::from(classes.size(c));
            }
        }
    }
    let engine = Engine {
        group_order: BigInt::from(group.order()),
        sizes: classes.sizes().into_iter().map(BigInt::from).collect(),
        centralizers: (0..nc).map(|c| BigInt::from(classes.centralizer_size(c))).collect(),
        site_chars,
        vacuum,
        comp_of,
        components,
        twisted_tails,
        edge_tails,
        phi_counts,
    };

    // Components without outgoing twisted links are summed out inside each
    // term; the rest (and site 0's component) are enumerated.
    let root = engine.comp_of[0];
    let free: Vec<usize> = (0..engine.components.len())
        .filter(|&k| k == root || has_exit[k])
        .collect();
    let sinks: Vec<usize> = (0..engine.components.len())
        .filter(|&k| k != root && !has_exit[k])
        .collect();
    let assignments = (nc as u64)
        .checked_pow(free.len() as u32)
        .filter(|&a| a <= ASSIGNMENT_BUDGET)
        .ok_or(Error::BulkDisconnected {
            components: engine.components.len(),
        })?;

    let terms: Vec<(usize, BigInt, Cyclotomic)> = (0..assignments)
        .into_par_iter()
        .filter_map(|index| {
            let mut assign = vec![0usize; engine.components.len()];
            let mut rest = index;
            for &k in &free {
                assign[k] = (rest % nc as u64) as usize;
                rest /= nc as u64;
            }
            let mut int = BigInt::one();
            let mut cyc = Cyclotomic::one(1);
            for &k in &free {
                let (i, c) = engine.weight(k, &assign);
                if i.is_zero() {
                    return None;
                }
                int *= i;
                cyc *= &c;
            }
            for &k in &sinks {
                let mut sum = Cyclotomic::zero(1);
                for c in 0..nc {
                    assign[k] = c;
                    let (i, w) = engine.weight(k, &assign);
                    if !i.is_zero() {
                        sum += &w.scale(&BigRational::from_integer(i));
                    }
                }
                if sum.is_zero() {
                    return None;
                }
                cyc *= &sum;
            }
            Some((assign[root], int, cyc))
        })
        .collect();

    let mut per_class_values = vec![Cyclotomic::zero(1); nc];
    let norm = BigRational::new(BigInt::one(), engine.group_order.pow(lattice.sites() as u32));
    for (c, int, cyc) in terms {
        per_class_values[c] += &cyc.scale(&(BigRational::from_integer(int) * &norm));
    }
    let total_cyc = per_class_values
        .iter()
        .fold(Cyclotomic::zero(1), |acc, v| &acc + v);
    let total = match total_cyc.to_integer() {
        Some(t) if signed || !t.is_negative() => t,
        _ => {
            return Err(Error::NonIntegralResult(format!(
                "class sum evaluates to {total_cyc} ≈ {}",
                decimal(&total_cyc)
            )))
        }
    };

    let formula = match twist {
        _ if engine.components.len() > 1 => Formula::Components,
        Some(t) if !t.twisted_edges.is_empty() && t.twist.is_automorphism() => Formula::TwistedAutomorphism,
        Some(t) if !t.twisted_edges.is_empty() => Formula::TwistedEndomorphism,
        _ => Formula::Untwisted,
    };
    let mut warnings = Vec::new();
    if let Some(t) = twist {
        for e in t.twisted_self_loops(lattice) {
            warnings.push(format!("twisted self-loop on edge {e}: twist applied at the head slot"));
        }
    }
    let per_class = per_class_values
        .into_iter()
        .enumerate()
        .map(|(c, value)| ClassContribution {
            class: c,
            size: classes.size(c),
            representative: group.label(classes.rep(c)).to_string(),
            value,
        })
        .collect();
    Ok(CountReport {
        formula,
        total,
        per_class,
        warnings,
    })
}

fn dynamical(lattice: &LatticeGraph, twist: Option<&TwistSpec>) -> Vec<bool> {
    let mut out = vec![true; lattice.sites()];
    if let Some(t) = twist {
        for &v in &t.virtual_sites {
            if v < out.len() {
                out[v] = false;
            }
        }
    }
    out
}

/// Places `chars` (one per dynamical site, in site order) on the lattice,
/// with the constant 1 on virtual sites.
fn spread(
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    twist: Option<&TwistSpec>,
    chars: Vec<ClassFunction>,
) -> Result<Vec<ClassFunction>> {
    let dyn_mask = dynamical(lattice, twist);
    let dyn_count = dyn_mask.iter().filter(|&&d| d).count();
    if chars.len() != dyn_count {
        return Err(Error::SiteCountMismatch {
            expected: dyn_count,
            got: chars.len(),
        });
    }
    let one = ClassFunction::constant(classes, Cyclotomic::one(1));
    let mut it = chars.into_iter();
    Ok(dyn_mask
        .into_iter()
        .map(|d| if d { it.next().unwrap() } else { one.clone() })
        .collect())
}

/// Number of dynamical (non-virtual) sites.
pub fn dynamical_sites(lattice: &LatticeGraph, twist: Option<&TwistSpec>) -> usize {
    dynamical(lattice, twist).iter().filter(|&&d| d).count()
}

pub fn count_pure_gauge(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    twist: Option<&TwistSpec>,
) -> Result<CountReport> {
    let chars = vec![ClassFunction::constant(classes, Cyclotomic::one(1)); lattice.sites()];
    count_general(group, classes, lattice, &chars, None, twist)
}

/// Scalar matter: the fixed-point character of `action` on every dynamical site.
pub fn count_scalar(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    action: &crate::matter::GroupAction,
    twist: Option<&TwistSpec>,
) -> Result<CountReport> {
    if !same_group(action.group(), group) {
        return Err(Error::GroupMismatch);
    }
    let chi = fixed_point_character(action, classes)?;
    let n = dynamical_sites(lattice, twist);
    let chars = spread(classes, lattice, twist, vec![chi; n])?;
    count_general(group, classes, lattice, &chars, None, twist)
}

/// Per-site matter characters for `spec`, with `sign` selecting
/// `det(1 ± ρ)` for fermions. Returns the site characters and the vacuum factor.
pub fn site_characters(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    spec: &MatterSpec,
    twist: Option<&TwistSpec>,
    sign: i8,
) -> Result<(Vec<ClassFunction>, Option<ClassFunction>)> {
    spec.check_group(group)?;
    let n = dynamical_sites(lattice, twist);
    spec.check_sites(n)?;
    let one = ClassFunction::constant(classes, Cyclotomic::one(1));
    let (chars, vacuum) = match spec {
        MatterSpec::None => (vec![one; n], None),
        MatterSpec::Scalar(a) => (vec![fixed_point_character(a, classes)?; n], None),
        MatterSpec::ScalarPerSite(list) => (
            list.iter()
                .map(|a| fixed_point_character(a, classes))
                .collect::<Result<Vec<_>>>()?,
            None,
        ),
        MatterSpec::SiteCharges(list) => (
            list.iter()
                .map(|s| one_dim_character(s, classes))
                .collect::<Result<Vec<_>>>()?,
            None,
        ),
        MatterSpec::Fermion(f) => fermion_characters(classes, f, n, sign)?,
    };
    Ok((spread(classes, lattice, twist, chars)?, vacuum))
}

fn fermion_characters(
    classes: &ConjugacyClassTable,
    spec: &FermionSpec,
    sites: usize,
    sign: i8,
) -> Result<(Vec<ClassFunction>, Option<ClassFunction>)> {
    let ns = spec.spinor_count as u64;
    let mut site = ClassFunction::constant(classes, Cyclotomic::one(1));
    for rho in &spec.flavours {
        site = &site * &fermion_site_character(rho, sign, classes)?.pow(ns);
    }
    match &spec.vacuum {
        Vacuum::Trivial => Ok((vec![site; sites], None)),
        Vacuum::Explicit(sigma) => Ok((vec![site; sites], Some(one_dim_character(sigma, classes)?))),
        Vacuum::Staggered => {
            let group = spec.flavours[0].group();
            let mut odd_vacuum = OneDimRep::trivial(group);
            for rho in &spec.flavours {
                odd_vacuum = odd_vacuum.product(&OneDimRep::determinant(rho)?.conj().pow(ns as i64))?;
            }
            let odd = &site * &one_dim_character(&odd_vacuum, classes)?;
            Ok(((0..sites).map(|x| if x % 2 == 1 { odd.clone() } else { site.clone() }).collect(), None))
        }
    }
}

/// Gauge-invariant states for any matter specification.
pub fn count(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    spec: &MatterSpec,
    twist: Option<&TwistSpec>,
) -> Result<CountReport> {
    let (chars, vacuum) = site_characters(group, classes, lattice, spec, twist, 1)?;
    count_general(group, classes, lattice, &chars, vacuum.as_ref(), twist)
}

pub fn count_fermion(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    spec: &FermionSpec,
    twist: Option<&TwistSpec>,
) -> Result<CountReport> {
    count(group, classes, lattice, &MatterSpec::Fermion(spec.clone()), twist)
}

/// Gauge-invariant states split by total fermion parity, measured relative
/// to the reference vacuum: `(dim₊, dim₋)`.
pub fn count_fermion_parity_split(
    group: &GroupRef,
    classes: &ConjugacyClassTable,
    lattice: &LatticeGraph,
    spec: &FermionSpec,
    twist: Option<&TwistSpec>,
) -> Result<(BigInt, BigInt)> {
    let matter = MatterSpec::Fermion(spec.clone());
    let (plus, vacuum) = site_characters(group, classes, lattice, &matter, twist, 1)?;
    let (minus, _) = site_characters(group, classes, lattice, &matter, twist, -1)?;
    let t_plus = count_general(group, classes, lattice, &plus, vacuum.as_ref(), twist)?.total;
    let t_minus = evaluate(group, classes, lattice, &minus, vacuum.as_ref(), twist, true)?.total;
    let two = BigInt::from(2);
    let (even, odd) = (&t_plus + &t_minus, &t_plus - &t_minus);
    if (&even % &two).is_zero() && !odd.is_negative() && !even.is_negative() {
        Ok((even / &two, odd / two))
    } else {
        Err(Error::NonIntegralResult(format!(
            "parity sectors ({t_plus} ± {t_minus})/2 are not non-negative integers"
        )))
    }
}

/// `dim H_tot = |G|^E · dim(matter)`.
pub fn total_hilbert_dim(group: &GroupRef, lattice: &LatticeGraph, spec: &MatterSpec, twist: Option<&TwistSpec>) -> BigInt {
    let n = dynamical_sites(lattice, twist) as u32;
    let gauge = BigInt::from(group.order()).pow(lattice.edge_count() as u32);
    let matter = match spec {
        MatterSpec::None | MatterSpec::SiteCharges(_) => BigInt::one(),
        MatterSpec::Scalar(a) => BigInt::from(a.set_size()).pow(n),
        MatterSpec::ScalarPerSite(list) => list.iter().map(|a| BigInt::from(a.set_size())).product(),
        MatterSpec::Fermion(f) => {
            let modes: usize = f.flavours.iter().map(|r| r.dim()).sum::<usize>() * f.spinor_count * n as usize;
            BigInt::one() << modes
        }
    };
    gauge * matter
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZnBoundary {
    Untwisted,
    /// Non-dynamical links attached through `φ(g) = 1`.
    Dangling,
    /// Links across the boundary twisted by inversion.
    CPeriodic,
}

/// Closed forms for `Z_N` with static charges `q_x` and `Q = Σ q_x`.
///
/// `E` counts every link and `V` only the dynamical sites.
pub fn count_zn_charged_closed_form(
    n: u32,
    charges: &[i64],
    boundary: ZnBoundary,
    lattice: &LatticeGraph,
    twist: Option<&TwistSpec>,
) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::BadCharge("N must be positive".into()));
    }
    let v = dynamical_sites(lattice, twist);
    if charges.len() != v {
        return Err(Error::BadCharge(format!("{} charges for {v} sites", charges.len())));
    }
    let q: i64 = charges.iter().sum();
    let exponent = lattice.edge_count() as i64 - v as i64;
    let power = |e: i64| -> Result<BigInt> {
        if e < 0 {
            return Err(Error::NonIntegralResult(format!("N^{e} with negative exponent")));
        }
        Ok(BigInt::from(n).pow(e as u32))
    };
    match boundary {
        ZnBoundary::Untwisted if q.rem_euclid(n as i64) == 0 => power(exponent + 1),
        ZnBoundary::Untwisted => Ok(BigInt::zero()),
        ZnBoundary::Dangling => power(exponent),
        ZnBoundary::CPeriodic if n % 2 == 1 => power(exponent),
        ZnBoundary::CPeriodic if q.rem_euclid(2) == 0 => Ok(power(exponent)? * 2),
        ZnBoundary::CPeriodic => Ok(BigInt::zero()),
    }
}

/// Per-site `Z_N` charges as one-dimensional representations.
pub fn zn_charges(group: &GroupRef, charges: &[i64]) -> Result<Vec<OneDimRep>> {
    charges.iter().map(|&q| OneDimRep::cyclic_charge(group, q)).collect()
}

/// The inversion twist used by C-periodic boundaries.
pub fn inversion_twist(group: &GroupRef) -> Result<GroupEndomorphism> {
    GroupEndomorphism::inversion(group)
}
