//! Command implementations behind the `gaugecount` binary.
//!
//! Exit codes: 0 success, 2 validation or input error, 3 non-integral
//! result, 4 formula and oracle disagree.

pub mod config;
pub mod render;

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gaugecount::automorphisms::AutReport;
use gaugecount::counting::{count, CountReport};
use gaugecount::group::{center, FiniteGroup, GroupRef};
use gaugecount::lattice::LatticeGraph;
use gaugecount::oracle::oracle_count;
use gaugecount::Error;

pub use config::{load, resolve_str, Job};
pub use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NON_INTEGRAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    NonIntegral(String),
    Mismatch { formula: BigInt, oracle: BigInt },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) | Self::Io(_) => EXIT_VALIDATION,
            Self::NonIntegral(_) => EXIT_NON_INTEGRAL,
            Self::Mismatch { .. } => EXIT_MISMATCH,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Validation(m) => write!(f, "validation error: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
            Self::NonIntegral(m) => write!(f, "non-integral result: {m}"),
            Self::Mismatch { formula, oracle } => write!(f, "mismatch: formula {formula}, oracle {oracle}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonIntegralResult(m) => Self::NonIntegral(m),
            other => Self::Validation(other.to_string()),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Adds the run timestamp unless suppressed.
pub fn stamp(mut value: Value, with_timestamp: bool) -> Value {
    if with_timestamp {
        value["timestamp_unix"] = json!(timestamp());
    }
    value
}

pub fn run_count(job: &Job) -> Result<CountReport, CliError> {
    let classes = job.group.conjugacy_classes();
    Ok(count(&job.group, &classes, &job.lattice, &job.matter, job.twist.as_ref())?)
}

pub fn count_json(job: &Job, report: &CountReport) -> Value {
    let mut v = report.to_json();
    v["instance_fingerprint"] = json!(job.fingerprint);
    v["sites"] = json!(job.lattice.sites());
    v["edges"] = json!(job.lattice.edge_count());
    v["group_order"] = json!(job.group.order());
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub formula_total: BigInt,
    pub oracle_total: BigInt,
    pub fingerprint: String,
}

impl VerifyOutcome {
    pub fn matches(&self) -> bool {
        self.formula_total == self.oracle_total
    }

    /// `Err` with exit code 4 when the totals differ.
    pub fn check(&self) -> Result<(), CliError> {
        if self.matches() {
            Ok(())
        } else {
            Err(CliError::Mismatch {
                formula: self.formula_total.clone(),
                oracle: self.oracle_total.clone(),
            })
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "formula_total": self.formula_total.to_string(),
            "oracle_total": self.oracle_total.to_string(),
            "match": self.matches(),
            "instance_fingerprint": self.fingerprint,
        })
    }
}

/// Runs `formula` and the brute-force oracle on the same job.
pub fn run_verify_with(
    job: &Job,
    budget: u64,
    formula: impl Fn(&Job) -> Result<BigInt, CliError>,
) -> Result<VerifyOutcome, CliError> {
    let formula_total = formula(job)?;
    let oracle_total = oracle_count(&job.group, &job.lattice, &job.matter, job.twist.as_ref(), budget)?;
    Ok(VerifyOutcome {
        formula_total,
        oracle_total,
        fingerprint: job.fingerprint.clone(),
    })
}

pub fn run_verify(job: &Job, budget: u64) -> Result<VerifyOutcome, CliError> {
    run_verify_with(job, budget, |j| run_count(j).map(|r| r.total))
}

/// Class table, center, ambivalence and automorphism data.
pub fn group_info(group: &GroupRef, budget: u64) -> Value {
    let classes = group.conjugacy_classes();
    let aut = AutReport::new(group, budget);
    let class_rows: Vec<Value> = (0..classes.len())
        .map(|c| {
            let rep = classes.rep(c);
            json!({
                "id": c,
                "size": classes.size(c),
                "representative": group.label(rep),
                "element_order": group.element_order(rep),
                "inverse_class": classes.inverse_class(c),
            })
        })
        .collect();
    let mut v = aut.to_json();
    v["name"] = json!(group.family().map_or("custom".to_string(), |f| f.to_string()));
    v["classes"] = json!(class_rows);
    v["center"] = json!(center(group).elements().iter().map(|&e| group.label(e)).collect::<Vec<_>>());
    v
}

pub fn load_group_file(path: &Path) -> Result<FiniteGroup, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    gaugecount::group::group_from_text(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, refusing to replace an existing file unless `force`.
pub fn write_output(path: &Path, text: &str, force: bool) -> Result<(), CliError> {
    if path.exists() && !force {
        return Err(CliError::Validation(format!("{} exists; pass --force to overwrite", path.display())));
    }
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn lattice_file(dims: &[usize], periodic: &[bool]) -> Result<String, CliError> {
    let lattice = LatticeGraph::hypercubic(dims, periodic)?;
    Ok(lattice.to_edge_list(&Default::default()))
}
