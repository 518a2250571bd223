//! Matter content: scalar fields as group actions, fermions as unitary
//! representations, and the class functions the counting engine consumes.

mod action;
mod character;
mod rep;

pub use action::{ActionViolation, GroupAction};
pub use character::{
    fermion_site_character, fixed_point_character, one_dim_character, rep_character, ClassFunction,
};
pub use rep::{OneDimRep, UnitaryRep, REP_TOLERANCE, SNAP_TOLERANCE};

use crate::error::{Error, Result};
use crate::group::{same_group, GroupRef};

/// How the Fock vacuum transforms.
#[derive(Clone, Debug)]
pub enum Vacuum {
    Trivial,
    /// Empty on even sites, fully occupied on odd sites.
    Staggered,
    /// Transforms as `σ` under the gauge transformation at site 0.
    Explicit(OneDimRep),
}

#[derive(Clone, Debug)]
pub struct FermionSpec {
    pub flavours: Vec<UnitaryRep>,
    pub spinor_count: usize,
    pub vacuum: Vacuum,
}

impl FermionSpec {
    pub fn new(flavours: Vec<UnitaryRep>, spinor_count: usize, vacuum: Vacuum) -> Result<Self> {
        if flavours.is_empty() || spinor_count == 0 {
            return Err(Error::BadParams("fermions need a flavour and a positive spinor count".into()));
        }
        Ok(Self {
            flavours,
            spinor_count,
            vacuum,
        })
    }

    /// Single flavour with the given spinor count and trivial vacuum.
    pub fn simple(rep: UnitaryRep, spinor_count: usize) -> Result<Self> {
        Self::new(vec![rep], spinor_count, Vacuum::Trivial)
    }

    pub fn staggered(rep: UnitaryRep) -> Result<Self> {
        Self::new(vec![rep], 1, Vacuum::Staggered)
    }
}

/// Matter content attached to every dynamical site.
#[derive(Clone, Debug)]
pub enum MatterSpec {
    /// Pure gauge theory.
    None,
    /// The same scalar field on every site.
    Scalar(GroupAction),
    /// One scalar field per site, indexed like the lattice sites.
    ScalarPerSite(Vec<GroupAction>),
    /// A static charge per site, transforming in a one-dimensional representation.
    SiteCharges(Vec<OneDimRep>),
    Fermion(FermionSpec),
}

impl MatterSpec {
    /// Checks that every action and representation lives on `group`.
    pub fn check_group(&self, group: &GroupRef) -> Result<()> {
        let ok = match self {
            Self::None => true,
            Self::Scalar(a) => same_group(a.group(), group),
            Self::ScalarPerSite(list) => list.iter().all(|a| same_group(a.group(), group)),
            Self::SiteCharges(list) => list.iter().all(|s| same_group(s.group(), group)),
            Self::Fermion(f) => {
                f.flavours.iter().all(|r| same_group(r.group(), group))
                    && match &f.vacuum {
                        Vacuum::Explicit(s) => same_group(s.group(), group),
                        _ => true,
                    }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Checks per-site list lengths and the staggered parity condition.
    pub fn check_sites(&self, sites: usize) -> Result<()> {
        match self {
            Self::ScalarPerSite(list) if list.len() != sites => Err(Error::SiteCountMismatch {
                expected: sites,
                got: list.len(),
            }),
            Self::SiteCharges(list) if list.len() != sites => Err(Error::SiteCountMismatch {
                expected: sites,
                got: list.len(),
            }),
            Self::Fermion(FermionSpec {
                vacuum: Vacuum::Staggered,
                ..
            }) if sites % 2 == 1 => Err(Error::OddSitesForStaggered(sites)),
            _ => Ok(()),
        }
    }
}
