//! Graded sets, granular sets, fault-tolerant interval fusion and
//! rough-set analysis of information tables.
//!
//! - [`intervals`]: closed intervals, F-fusion under `f` faulty sources,
//!   nested fusion sweeps over `f` and fault-count-randomized fusion.
//! - [`chains`]: nested chains of finite sets.
//! - [`partitions`]: partitions, refinement and granular sets.
//! - [`infosys`]: information tables, indiscernibility, lower/upper
//!   approximations and sensitivity profiles.
//! - [`sim`]: seeded fault-injection rounds.
//! - [`io`]: CSV/JSON input and canonical JSON output.
//! - [`cli`]: the `granset` command line.

pub mod chains;
pub mod cli;
pub mod error;
pub mod infosys;
pub mod intervals;
pub mod io;
pub mod partitions;
pub mod sim;

pub use chains::{is_rough_family, validate_graded, GradedFamily};
pub use error::{Error, Result};
pub use infosys::{
    approximate, graded_approximations, granular_from_chain, indiscernibility_partition, lower_approx,
    sensitivity_profile, upper_approx, ApproximationPair, InformationTable, SensitivityRecord,
};
pub use intervals::{
    as_rough_pair, fuse, graded_fusion, random_graded, sample, sample_n, FaultDistribution, FusionResult,
    GradedIntervals, Interval, IntervalDistribution,
};
pub use partitions::{refines, validate_granular, GranularSet, LevelOrder, Partition};
pub use sim::{simulate, simulate_round, simulate_round_at, SimConfig, SimOutcome};
