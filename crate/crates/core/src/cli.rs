//! The `granset` command line.
//!
//! Results go to standard output as one line of canonical JSON. Failures
//! print a one-line JSON reason on standard error and exit with 1 for
//! domain errors or 2 for usage and format errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::infosys::{
    approximate, graded_approximations, granular_from_chain, indiscernibility_partition, sensitivity_profile,
    InformationTable,
};
use crate::intervals::{fuse, graded_fusion, random_graded, sample_n, Interval};
use crate::io::{self, IntervalFormat};
use crate::sim::{simulate, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "granset",
    version,
    about = "Graded sets, granular sets and fault-tolerant interval fusion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct IntervalInput {
    /// Interval file (CSV with header `lo,hi`, or a JSON array of pairs)
    #[arg(long)]
    input: PathBuf,
    /// Defaults to json for `.json` files and csv otherwise
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fuse intervals tolerating a fixed number of faults
    Fuse {
        #[command(flatten)]
        input: IntervalInput,
        #[arg(long)]
        faults: usize,
    },
    /// Fuse for every fault count in a range
    Graded {
        #[command(flatten)]
        input: IntervalInput,
        #[arg(long)]
        fmin: usize,
        #[arg(long)]
        fmax: usize,
    },
    /// Push a fault-count distribution through fusion
    Random {
        #[command(flatten)]
        input: IntervalInput,
        /// JSON object mapping fault counts to probabilities (inline or a file)
        #[arg(long)]
        dist: String,
        /// Number of draws to append
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Indiscernibility partition for a set of attributes
    Partition {
        #[arg(long)]
        table: PathBuf,
        /// Comma-separated attribute names (may be empty)
        #[arg(long)]
        attrs: String,
    },
    /// Granular set from a nested attribute chain
    Granulate {
        #[arg(long)]
        table: PathBuf,
        /// JSON array of attribute-name arrays (inline or a file)
        #[arg(long)]
        chain: String,
    },
    /// Lower and upper approximation of a target set
    Approx {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        attrs: String,
        /// Comma-separated object ids (may be empty)
        #[arg(long)]
        target: String,
    },
    /// Approximations of a nested chain of target sets
    GradedApprox {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        attrs: String,
        /// JSON array of object-id arrays (inline or a file)
        #[arg(long)]
        targets: String,
    },
    /// Approximation sizes along an attribute chain
    Sensitivity {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        target: String,
    },
    /// Seeded fault-injection rounds
    Simulate {
        #[arg(long)]
        sensors: usize,
        #[arg(long)]
        faulty: usize,
        #[arg(long)]
        rounds: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        truth: f64,
        #[arg(long, default_value_t = 1.0)]
        halfwidth: f64,
        #[arg(long, default_value_t = 2.0)]
        offset: f64,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(e) if e.is_format() => EXIT_USAGE,
            Failure::Lib(_) => EXIT_DOMAIN,
        }
    }

    fn reason(&self) -> String {
        match self {
            Failure::Usage(msg) => msg.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// A flag value that is either inline JSON or the path of a file holding it.
fn inline_or_file(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        read_file(path)
    } else {
        Ok(arg.to_string())
    }
}

fn load_intervals(input: &IntervalInput) -> Result<Vec<Interval>, Failure> {
    let text = read_file(&input.input)?;
    let format = match input.format {
        Some(FormatArg::Csv) => IntervalFormat::Csv,
        Some(FormatArg::Json) => IntervalFormat::Json,
        None if input.input.extension().is_some_and(|e| e == "json") => IntervalFormat::Json,
        None => IntervalFormat::Csv,
    };
    Ok(io::parse_intervals(&text, format)?)
}

fn load_table(path: &Path) -> Result<InformationTable, Failure> {
    Ok(io::parse_table(&read_file(path)?)?)
}

fn execute(command: Command) -> Result<Value, Failure> {
    Ok(match command {
        Command::Fuse { input, faults } => {
            let ivs = load_intervals(&input)?;
            io::fusion_value(&fuse(&ivs, faults)?)
        }
        Command::Graded { input, fmin, fmax } => {
            let ivs = load_intervals(&input)?;
            io::graded_intervals_value(&graded_fusion(&ivs, fmin, fmax)?)
        }
        Command::Random {
            input,
            dist,
            sample,
            seed,
        } => {
            let ivs = load_intervals(&input)?;
            let faults = io::parse_fault_distribution(&inline_or_file(&dist)?)?;
            let out = random_graded(&ivs, &faults)?;
            let mut value = io::distribution_value(&out);
            if let Some(n) = sample {
                let draws: Vec<Value> = sample_n(&out, seed, n).iter().map(io::fusion_value).collect();
                value["samples"] = Value::Array(draws);
            }
            value
        }
        Command::Partition { table, attrs } => {
            let table = load_table(&table)?;
            io::partition_value(&indiscernibility_partition(&table, &io::parse_name_list(&attrs))?)
        }
        Command::Granulate { table, chain } => {
            let table = load_table(&table)?;
            let chain = io::parse_chain(&inline_or_file(&chain)?)?;
            let mut value = io::granular_value(&granular_from_chain(&table, &chain)?);
            value["granular"] = Value::Bool(true);
            value
        }
        Command::Approx { table, attrs, target } => {
            let table = load_table(&table)?;
            let pair = approximate(&table, &io::parse_name_list(&attrs), &io::parse_name_list(&target))?;
            io::approximation_value(&pair)
        }
        Command::GradedApprox { table, attrs, targets } => {
            let table = load_table(&table)?;
            let targets = io::parse_chain(&inline_or_file(&targets)?)?;
            let (lowers, uppers) = graded_approximations(&table, &io::parse_name_list(&attrs), &targets)?;
            json!({ "lowers": io::family_value(&lowers), "uppers": io::family_value(&uppers) })
        }
        Command::Sensitivity { table, chain, target } => {
            let table = load_table(&table)?;
            let chain = io::parse_chain(&inline_or_file(&chain)?)?;
            io::sensitivity_value(&sensitivity_profile(&table, &chain, &io::parse_name_list(&target))?)
        }
        Command::Simulate {
            sensors,
            faulty,
            rounds,
            seed,
            truth,
            halfwidth,
            offset,
        } => {
            let config = SimConfig {
                num_sensors: sensors,
                truth,
                correct_halfwidth_max: halfwidth,
                num_faulty: faulty,
                fault_offset_min: offset,
                seed,
            };
            simulation_report(&config, rounds)?
        }
    })
}

fn simulation_report(config: &SimConfig, rounds: u64) -> Result<Value, Failure> {
    let outcomes = simulate(config, rounds)?;
    let mut contained = vec![0u64; config.num_sensors];
    let rounds_json: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            for (count, &hit) in contained.iter_mut().zip(&o.truth_containment) {
                *count += u64::from(hit);
            }
            json!({
                "round": o.round,
                "faulty_indices": o.faulty_indices,
                "intervals": io::intervals_value(&o.intervals),
                "fused": io::graded_intervals_value(&o.fused),
                "truth_containment": o.truth_containment,
                "guarantee_holds": o.guarantee_holds(),
            })
        })
        .collect();
    Ok(json!({
        "config": {
            "num_sensors": config.num_sensors,
            "num_faulty": config.num_faulty,
            "truth": config.truth,
            "correct_halfwidth_max": config.correct_halfwidth_max,
            "fault_offset_min": config.fault_offset_min,
            "seed": config.seed,
        },
        "rounds": rounds_json,
        "summary": {
            "rounds": rounds,
            "containment_counts": contained,
            "guarantee_holds": outcomes.iter().all(|o| o.guarantee_holds()),
        },
    }))
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(value) => {
            let _ = writeln!(out, "{}", io::to_canonical_string(&value));
            EXIT_OK
        }
        Err(failure) => {
            let code = failure.code();
            let line = json!({ "code": code, "error": failure.reason() });
            let _ = writeln!(err, "{}", io::to_canonical_string(&line));
            code
        }
    }
}
