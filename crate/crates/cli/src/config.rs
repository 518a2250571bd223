//! Job configuration: a single JSON document, resolved against the
//! directory that contains it.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use gaugecount::automorphisms::GroupEndomorphism;
use gaugecount::group::{builtin_group, group_from_text, GroupFamily, GroupRef, Subgroup};
use gaugecount::lattice::{dangling_boundary_extension, is_bulk_connected, make_twist, EdgeSelector, LatticeGraph, TwistSpec};
use gaugecount::matter::{FermionSpec, GroupAction, MatterSpec, OneDimRep, UnitaryRep, Vacuum};
use gaugecount::Error;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub group: GroupSource,
    pub lattice: LatticeSource,
    #[serde(default)]
    pub matter: MatterConfig,
    #[serde(default)]
    pub twist: Option<TwistConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    /// Reject twisted jobs whose bulk falls apart once twisted links are cut.
    #[serde(default)]
    pub require_connected_bulk: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupSource {
    /// Compact family form, e.g. `dihedral:4`.
    Builtin { builtin: String },
    /// Cayley table file.
    File { file: PathBuf },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum LatticeSource {
    Hypercubic { dims: Vec<usize>, periodic: Vec<bool> },
    /// Edge-list file; edges marked `twisted` there can be selected by the twist.
    File { file: PathBuf },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatterConfig {
    #[default]
    None,
    Scalar { action: ActionConfig },
    /// Static `Z_N` charges, one per dynamical site.
    Charges { charges: Vec<i64> },
    Fermion {
        #[serde(default)]
        rep: RepConfig,
        #[serde(default = "one")]
        flavours: usize,
        #[serde(default = "one")]
        spinors: usize,
        #[serde(default)]
        vacuum: VacuumConfig,
    },
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionConfig {
    LeftMult,
    Trivial(usize),
    /// Left multiplication on the cosets of the subgroup generated by these elements.
    Coset(Vec<usize>),
    File(PathBuf),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RepConfig {
    #[default]
    Standard,
    Trivial(usize),
    File(PathBuf),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VacuumConfig {
    #[default]
    Trivial,
    Staggered,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TwistConfig {
    Endomorphism { map: MapConfig, edges: EdgesConfig },
    /// One non-dynamical link per listed site.
    Dangling { attach: Vec<usize> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapConfig {
    Identity,
    Inversion,
    ConstantIdentity,
    Inner(usize),
    Images(Vec<usize>),
    File(PathBuf),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EdgesConfig {
    Wrap(usize),
    List(Vec<usize>),
    /// The edges marked `twisted` in the lattice file.
    Marked,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Relative to the config file.
    pub path: Option<PathBuf>,
    pub format: Option<String>,
}

/// A fully resolved job.
#[derive(Clone, Debug)]
pub struct Job {
    pub group: GroupRef,
    pub lattice: LatticeGraph,
    pub matter: MatterSpec,
    pub twist: Option<TwistSpec>,
    pub output: OutputConfig,
    /// SHA-256 of the canonical configuration JSON.
    pub fingerprint: String,
}

fn read(base: &Path, path: &Path) -> Result<String, CliError> {
    let full = base.join(path);
    fs::read_to_string(&full).map_err(|e| CliError::Io(format!("{}: {e}", full.display())))
}

fn in_file(path: &Path, err: Error) -> CliError {
    CliError::Validation(format!("{}: {err}", path.display()))
}

pub fn load(path: &Path) -> Result<Job, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    resolve_str(&text, base)
}

/// Parses and resolves a configuration document.
pub fn resolve_str(text: &str, base: &Path) -> Result<Job, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
    let canonical = serde_json::to_string(&value).expect("JSON values serialize");
    let config: JobConfig =
        serde_json::from_value(value).map_err(|e| CliError::Validation(format!("config: {e}")))?;
    let mut job = resolve(&config, base)?;
    job.fingerprint = crate::sha256_hex(canonical.as_bytes());
    Ok(job)
}

pub fn resolve(config: &JobConfig, base: &Path) -> Result<Job, CliError> {
    let group: GroupRef = Arc::new(match &config.group {
        GroupSource::Builtin { builtin } => builtin_group(&GroupFamily::parse(builtin)?)?,
        GroupSource::File { file } => group_from_text(&read(base, file)?).map_err(|e| in_file(file, e))?,
    });
    let (lattice, marked) = match &config.lattice {
        LatticeSource::Hypercubic { dims, periodic } => (LatticeGraph::hypercubic(dims, periodic)?, BTreeSet::new()),
        LatticeSource::File { file } => LatticeGraph::from_edge_list(&read(base, file)?).map_err(|e| in_file(file, e))?,
    };

    let (lattice, twist) = match &config.twist {
        None => (lattice, None),
        Some(TwistConfig::Dangling { attach }) => {
            let (l, t) = dangling_boundary_extension(&lattice, attach, &group)?;
            (l, Some(t))
        }
        Some(TwistConfig::Endomorphism { map, edges }) => {
            let phi = match map {
                MapConfig::Identity => GroupEndomorphism::identity(&group),
                MapConfig::Inversion => GroupEndomorphism::inversion(&group)?,
                MapConfig::ConstantIdentity => GroupEndomorphism::constant_identity(&group),
                MapConfig::Inner(h) => {
                    if *h >= group.order() {
                        return Err(CliError::Validation(format!("inner twist element {h} out of range")));
                    }
                    GroupEndomorphism::inner(&group, *h)
                }
                MapConfig::Images(images) => GroupEndomorphism::new(&group, images.clone())?,
                MapConfig::File(file) => {
                    GroupEndomorphism::from_text(&group, &read(base, file)?).map_err(|e| in_file(file, e))?
                }
            };
            let selector = match edges {
                EdgesConfig::Wrap(k) => EdgeSelector::WrapDirection(*k),
                EdgesConfig::List(list) => EdgeSelector::Explicit(list.clone()),
                EdgesConfig::Marked => EdgeSelector::Explicit(marked.iter().copied().collect()),
            };
            let t = make_twist(&lattice, phi, &selector)?;
            (lattice, Some(t))
        }
    };
    if config.require_connected_bulk {
        if let Some(t) = &twist {
            if !is_bulk_connected(&lattice, t) {
                return Err(CliError::Validation(
                    "is_bulk_connected: lattice falls apart once twisted links are removed".into(),
                ));
            }
        }
    }

    let matter = resolve_matter(&config.matter, &group, base)?;
    Ok(Job {
        group,
        lattice,
        matter,
        twist,
        output: OutputConfig {
            path: config.output.path.as_ref().map(|p| base.join(p)),
            format: config.output.format.clone(),
        },
        fingerprint: String::new(),
    })
}

fn resolve_matter(config: &MatterConfig, group: &GroupRef, base: &Path) -> Result<MatterSpec, CliError> {
    Ok(match config {
        MatterConfig::None => MatterSpec::None,
        MatterConfig::Scalar { action } => MatterSpec::Scalar(match action {
            ActionConfig::LeftMult => GroupAction::left_mult(group),
            ActionConfig::Trivial(n) => GroupAction::trivial(group, *n)?,
            ActionConfig::Coset(gens) => GroupAction::coset(group, &Subgroup::generated_by(group, gens)?)?,
            ActionConfig::File(file) => GroupAction::from_text(group, &read(base, file)?).map_err(|e| in_file(file, e))?,
        }),
        MatterConfig::Charges { charges } => MatterSpec::SiteCharges(
            charges
                .iter()
                .map(|&q| OneDimRep::cyclic_charge(group, q))
                .collect::<Result<_, _>>()?,
        ),
        MatterConfig::Fermion {
            rep,
            flavours,
            spinors,
            vacuum,
        } => {
            let rho = match rep {
                RepConfig::Standard => UnitaryRep::standard(group)?,
                RepConfig::Trivial(d) => UnitaryRep::trivial(group, *d),
                RepConfig::File(file) => UnitaryRep::from_text(group, &read(base, file)?).map_err(|e| in_file(file, e))?,
            };
            let vacuum = match vacuum {
                VacuumConfig::Trivial => Vacuum::Trivial,
                VacuumConfig::Staggered => Vacuum::Staggered,
            };
            MatterSpec::Fermion(FermionSpec::new(vec![rho; *flavours], *spinors, vacuum)?)
        }
    })
}
