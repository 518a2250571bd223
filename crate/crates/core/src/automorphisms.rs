//! Endomorphisms and automorphisms of finite groups, ambivalence and charge
//! conjugation candidates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{center, ConjugacyClassTable, GroupRef};
use crate::matter::ClassFunction;
use crate::textio::{numeric_rows, parse_err};

/// Default node budget for the automorphism search.
pub const DEFAULT_AUT_BUDGET: u64 = 10_000_000;

/// A group homomorphism `G → G`, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEndomorphism {
    group: GroupRef,
    image: Vec<usize>,
}

impl PartialOrd for GroupEndomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupEndomorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.image.cmp(&other.image)
    }
}

/// Exhaustive check that `image` respects multiplication.
pub fn is_endomorphism(group: &GroupRef, image: &[usize]) -> bool {
    let n = group.order();
    image.len() == n
        && image.iter().all(|&x| x < n)
        && (0..n).all(|a| (0..n).all(|b| image[group.mul(a, b)] == group.mul(image[a], image[b])))
}

impl GroupEndomorphism {
    pub fn new(group: &GroupRef, image: Vec<usize>) -> Result<Self> {
        if image.len() != group.order() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for a group of order {}",
                image.len(),
                group.order()
            )));
        }
        if !is_endomorphism(group, &image) {
            return Err(Error::NotAHomomorphism("image does not respect multiplication".into()));
        }
        Ok(Self {
            group: group.clone(),
            image,
        })
    }

    pub fn identity(group: &GroupRef) -> Self {
        Self {
            group: group.clone(),
            image: (0..group.order()).collect(),
        }
    }

    /// `g ↦ g⁻¹`; a homomorphism only for abelian groups.
    pub fn inversion(group: &GroupRef) -> Result<Self> {
        Self::new(group, (0..group.order()).map(|g| group.inv(g)).collect())
    }

    /// `g ↦ 1`.
    pub fn constant_identity(group: &GroupRef) -> Self {
        Self {
            group: group.clone(),
            image: vec![0; group.order()],
        }
    }

    /// `g ↦ h g h⁻¹`.
    pub fn inner(group: &GroupRef, h: usize) -> Self {
        Self {
            group: group.clone(),
            image: (0..group.order()).map(|g| group.conjugate(g, h)).collect(),
        }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `(self ∘ other)(g) = self(other(g))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            group: self.group.clone(),
            image: other.image.iter().map(|&g| self.image[g]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &g)| i == g)
    }

    pub fn is_automorphism(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&g| !std::mem::replace(&mut seen[g], true))
    }

    fn require_automorphism(&self) -> Result<()> {
        if self.is_automorphism() {
            Ok(())
        } else {
            Err(Error::NotAnAutomorphism)
        }
    }

    /// Brute force over conjugating elements.
    pub fn is_inner(&self) -> Result<bool> {
        self.require_automorphism()?;
        Ok((0..self.group.order()).any(|h| Self::inner(&self.group, h).image == self.image))
    }

    pub fn is_involutory(&self) -> Result<bool> {
        self.require_automorphism()?;
        Ok(self.compose(self).is_identity())
    }

    /// Maps every class onto its inverse class.
    pub fn is_class_inverting(&self, classes: &ConjugacyClassTable) -> Result<bool> {
        self.require_automorphism()?;
        Ok((0..self.group.order())
            .all(|g| classes.class_of(self.image[g]) == classes.inverse_class(classes.class_of(g))))
    }

    /// Header `endo |G|`, then the images of elements `0…|G|-1`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.image.iter().map(usize::to_string).collect();
        format!("endo {}\n{}\n", self.group.order(), body.join(" "))
    }

    pub fn from_text(group: &GroupRef, text: &str) -> Result<Self> {
        let rows = numeric_rows(text, "endo")?;
        let (hl, header) = &rows.header;
        if header[..] != [group.order()] {
            return Err(parse_err(*hl, format!("expected 'endo {}'", group.order())));
        }
        let mut image = Vec::with_capacity(group.order());
        for (line, tokens) in &rows.body {
            for t in tokens {
                image.push(t.parse::<usize>().map_err(|e| parse_err(*line, e.to_string()))?);
            }
        }
        Self::new(group, image)
    }
}

impl fmt::Display for GroupEndomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .image
            .iter()
            .enumerate()
            .filter(|(a, b)| a != *b)
            .map(|(a, &b)| format!("{}→{}", self.group.label(a), self.group.label(b)))
            .collect();
        if parts.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Outcome of [`enumerate_automorphisms`].
#[derive(Clone, Debug)]
pub struct AutEnumeration {
    /// Canonically sorted by image table.
    pub automorphisms: Vec<GroupEndomorphism>,
    /// `true` when the budget ran out before the search finished.
    pub truncated: bool,
    pub nodes: u64,
}

impl AutEnumeration {
    /// The complete list, or [`Error::BudgetExceeded`] if truncated.
    pub fn complete(self, budget: u64) -> Result<Vec<GroupEndomorphism>> {
        if self.truncated {
            Err(Error::BudgetExceeded { budget })
        } else {
            Ok(self.automorphisms)
        }
    }
}

/// Extends generator images to `⟨gens⟩` by `φ(a·s) = φ(a)·φ(s)`, returning
/// `None` on any inconsistency or collision.
fn extend_partial(group: &GroupRef, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = group.order();
    let mut phi = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    phi[0] = 0;
    hit[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let b = group.mul(a, s);
            let v = group.mul(phi[a], t);
            if phi[b] == usize::MAX {
                if hit[v] {
                    return None;
                }
                phi[b] = v;
                hit[v] = true;
                queue.push_back(b);
            } else if phi[b] != v {
                return None;
            }
        }
    }
    Some(phi)
}

struct Search<'a> {
    group: &'a GroupRef,
    gens: &'a [usize],
    candidates: Vec<Vec<usize>>,
    budget: u64,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl Search<'_> {
    fn run(&self, chosen: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        let k = chosen.len();
        if k == self.gens.len() {
            if let Some(phi) = extend_partial(self.group, self.gens, chosen) {
                if phi.iter().all(|&x| x != usize::MAX) {
                    found.push(phi);
                }
            }
            return;
        }
        for &c in &self.candidates[k] {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                self.exhausted.store(true, Ordering::Relaxed);
                return;
            }
            chosen.push(c);
            if extend_partial(self.group, &self.gens[..=k], chosen).is_some() {
                self.run(chosen, found);
            }
            chosen.pop();
        }
    }
}

/// All automorphisms, by backtracking over images of the stored generators.
///
/// Each generator may only map to elements of the same order and class size.
pub fn enumerate_automorphisms(group: &GroupRef, budget: u64) -> AutEnumeration {
    let gens = group.generators().to_vec();
    let classes = group.conjugacy_classes();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let size = classes.size(classes.class_of(s));
            (0..group.order())
                .filter(|&x| {
                    group.element_order(x) == group.element_order(s) && classes.size(classes.class_of(x)) == size
                })
                .collect()
        })
        .collect();
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    if gens.is_empty() {
        return AutEnumeration {
            automorphisms: vec![GroupEndomorphism::identity(group)],
            truncated: false,
            nodes: 0,
        };
    }
    let search = Search {
        group,
        gens: &gens,
        candidates,
        budget,
        nodes: &nodes,
        exhausted: &exhausted,
    };
    let mut images: Vec<Vec<usize>> = search.candidates[0]
        .par_iter()
        .map(|&c| {
            let mut found = Vec::new();
            if search.nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                search.exhausted.store(true, Ordering::Relaxed);
                return found;
            }
            let mut chosen = vec![c];
            if extend_partial(group, &gens[..1], &chosen).is_some() {
                search.run(&mut chosen, &mut found);
            }
            found
        })
        .flatten()
        .collect();
    images.sort();
    images.dedup();
    let automorphisms = images
        .into_iter()
        .map(|image| {
            debug_assert!(is_endomorphism(group, &image));
            GroupEndomorphism {
                group: group.clone(),
                image,
            }
        })
        .collect();
    AutEnumeration {
        automorphisms,
        truncated: exhausted.load(Ordering::Relaxed),
        nodes: nodes.load(Ordering::Relaxed).min(budget),
    }
}

/// Every class equals its inverse class.
pub fn is_ambivalent(classes: &ConjugacyClassTable) -> bool {
    (0..classes.len()).all(|c| classes.inverse_class(c) == c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Searches for an involutory class-inverting automorphism. Returns
/// [`Verdict::Unknown`] when the search was truncated without a witness.
pub fn is_quasi_ambivalent(group: &GroupRef, budget: u64) -> (Verdict, Option<GroupEndomorphism>) {
    let classes = group.conjugacy_classes();
    if is_ambivalent(&classes) {
        return (Verdict::Yes, Some(GroupEndomorphism::identity(group)));
    }
    let found = enumerate_automorphisms(group, budget);
    let witness = found
        .automorphisms
        .iter()
        .find(|t| t.is_involutory().unwrap_or(false) && t.is_class_inverting(&classes).unwrap_or(false))
        .cloned();
    match (witness, found.truncated) {
        (Some(w), _) => (Verdict::Yes, Some(w)),
        (None, true) => (Verdict::Unknown, None),
        (None, false) => (Verdict::No, None),
    }
}

/// `τ(Γ) = Γ` and `h_B(τ(g)) = h_B(g)` for all `g`.
///
/// `gamma` must be closed under inversion and conjugation.
pub fn hamiltonian_symmetry_check(
    tau: &GroupEndomorphism,
    gamma: &[usize],
    h_b: &ClassFunction,
    classes: &ConjugacyClassTable,
) -> Result<bool> {
    tau.require_automorphism()?;
    let group = tau.group();
    let set: BTreeSet<usize> = gamma.iter().copied().collect();
    if set.iter().any(|&g| g >= group.order()) {
        return Err(Error::InvalidGammaSet);
    }
    let closed = set.iter().all(|&g| {
        set.contains(&group.inv(g)) && (0..group.order()).all(|h| set.contains(&group.conjugate(g, h)))
    });
    if !closed || h_b.len() != classes.len() {
        return Err(Error::InvalidGammaSet);
    }
    let preserves_gamma = set.iter().map(|&g| tau.apply(g)).collect::<BTreeSet<_>>() == set;
    let preserves_h = (0..group.order())
        .all(|g| h_b.value(classes.class_of(tau.apply(g))) == h_b.value(classes.class_of(g)));
    Ok(preserves_gamma && preserves_h)
}

/// Summary of `Aut(G)`, `Inn(G)` and charge-conjugation candidates.
#[derive(Clone, Debug)]
pub struct AutReport {
    pub group_order: usize,
    pub center_order: usize,
    pub aut_order: usize,
    pub inn_order: usize,
    /// `None` when the enumeration was truncated.
    pub out_order: Option<usize>,
    pub complete: bool,
    pub ambivalent: bool,
    pub quasi_ambivalent: Verdict,
    /// Involutory class-inverting automorphisms.
    pub charge_conjugation_candidates: Vec<GroupEndomorphism>,
    pub class_inverting_count: usize,
}

impl AutReport {
    pub fn new(group: &GroupRef, budget: u64) -> Self {
        let classes = group.conjugacy_classes();
        let found = enumerate_automorphisms(group, budget);
        let inner: BTreeSet<Vec<usize>> = (0..group.order())
            .map(|h| GroupEndomorphism::inner(group, h).image)
            .collect();
        let inverting: Vec<&GroupEndomorphism> = found
            .automorphisms
            .iter()
            .filter(|t| t.is_class_inverting(&classes).unwrap_or(false))
            .collect();
        let candidates: Vec<GroupEndomorphism> = inverting
            .iter()
            .filter(|t| t.is_involutory().unwrap_or(false))
            .map(|t| (*t).clone())
            .collect();
        let ambivalent = is_ambivalent(&classes);
        let quasi_ambivalent = match (candidates.is_empty(), found.truncated) {
            (false, _) => Verdict::Yes,
            (true, true) => Verdict::Unknown,
            (true, false) => Verdict::No,
        };
        let complete = !found.truncated;
        let aut_order = found.automorphisms.len();
        Self {
            group_order: group.order(),
            center_order: center(group).order(),
            aut_order,
            inn_order: inner.len(),
            out_order: complete.then(|| aut_order / inner.len()),
            complete,
            ambivalent,
            quasi_ambivalent,
            class_inverting_count: inverting.len(),
            charge_conjugation_candidates: candidates,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "group_order": self.group_order,
            "center_order": self.center_order,
            "aut_order": self.aut_order,
            "inn_order": self.inn_order,
            "out_order": self.out_order,
            "complete": self.complete,
            "ambivalent": self.ambivalent,
            "quasi_ambivalent": self.quasi_ambivalent,
            "class_inverting_count": self.class_inverting_count,
            "charge_conjugation_candidates": self
                .charge_conjugation_candidates
                .iter()
                .map(|t| json!({
                    "images": t.images(),
                    "inner": t.is_inner().unwrap_or(false),
                }))
                .collect::<Vec<_>>(),
        })
    }
}
