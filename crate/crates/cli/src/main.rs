use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use gaugecount::automorphisms::DEFAULT_AUT_BUDGET;
use gaugecount::group::{builtin_group, GroupFamily};
use gaugecount::oracle::DEFAULT_ORACLE_BUDGET;
use gaugecount_cli::{render, CliError, Format, Job};

#[derive(Parser)]
#[command(name = "gaugecount", version, about = "Count gauge-invariant states of finite-group lattice gauge theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit the timestamp so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count gauge-invariant states for a job.
    Count {
        #[arg(long)]
        config: PathBuf,
        /// Replace an existing output file.
        #[arg(long)]
        force: bool,
    },
    /// Compare the class-sum count with brute-force enumeration.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Maximum number of gauge transformations to enumerate.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
    /// Class table, center, ambivalence and automorphisms of a group.
    GroupInfo {
        /// Family spec such as `binary_tetrahedral` or `dihedral:4`.
        #[arg(required_unless_present = "cayley")]
        group: Option<String>,
        /// Cayley table file instead of a family spec.
        #[arg(long, conflicts_with = "group")]
        cayley: Option<PathBuf>,
        /// Automorphism search budget.
        #[arg(long, default_value_t = DEFAULT_AUT_BUDGET)]
        budget: u64,
    },
    /// Write a hypercubic lattice as an edge list.
    LatticeMake {
        /// Extents, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Periodicity per direction, e.g. `true,false`; all periodic if omitted.
        #[arg(long, value_delimiter = ',')]
        periodic: Option<Vec<bool>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

fn format_for(cli: Option<Format>, job: Option<&Job>) -> Result<Format, CliError> {
    if let Some(f) = cli {
        return Ok(f);
    }
    match job.and_then(|j| j.output.format.as_deref()) {
        Some(s) => s.parse().map_err(CliError::Validation),
        None => Ok(Format::Json),
    }
}

fn emit(job: &Job, text: &str, force: bool) -> Result<(), CliError> {
    match &job.output.path {
        Some(path) => gaugecount_cli::write_output(path, text, force),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Validation(format!("--threads: {e}")))?;
    }
    let stamp = !cli.no_timestamp;
    match cli.command {
        Command::Count { config, force } => {
            let job = gaugecount_cli::load(&config)?;
            let format = format_for(cli.format, Some(&job))?;
            let report = gaugecount_cli::run_count(&job)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let value = gaugecount_cli::stamp(gaugecount_cli::count_json(&job, &report), stamp);
            emit(&job, &render::count(&value, format), force)
        }
        Command::Verify { config, budget } => {
            let job = gaugecount_cli::load(&config)?;
            let format = format_for(cli.format, Some(&job))?;
            let outcome = gaugecount_cli::run_verify(&job, budget)?;
            let value = gaugecount_cli::stamp(outcome.to_json(), stamp);
            print!("{}", render::verify(&value, format));
            outcome.check()
        }
        Command::GroupInfo { group, cayley, budget } => {
            let g = match (group, cayley) {
                (_, Some(path)) => gaugecount_cli::load_group_file(&path)?,
                (Some(spec), None) => builtin_group(&GroupFamily::parse(&spec)?)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let value = gaugecount_cli::stamp(gaugecount_cli::group_info(&Arc::new(g), budget), stamp);
            print!("{}", render::group_info(&value, format_for(cli.format, None)?));
            Ok(())
        }
        Command::LatticeMake {
            dims,
            periodic,
            out,
            force,
        } => {
            let periodic = periodic.unwrap_or_else(|| vec![true; dims.len()]);
            let text = gaugecount_cli::lattice_file(&dims, &periodic)?;
            match out {
                Some(path) => gaugecount_cli::write_output(&path, &text, force),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
