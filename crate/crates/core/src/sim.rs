//! Seeded fault-injection rounds around a known ground truth.
//!
//! Correct sensors report `[truth - u, truth + v]` with `u, v` uniform in
//! `(0, correct_halfwidth_max]`. Faulty sensors report an interval lying
//! entirely on one side of the truth, at distance at least
//! `fault_offset_min`. Each round fuses the measurements for every fault
//! count and records whether the truth survived.
//!
//! Round `r` draws from a ChaCha8 stream keyed by `(seed, r)`, so rounds
//! are reproducible independently of each other.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::intervals::{graded_fusion, GradedIntervals, Interval};

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub num_sensors: usize,
    pub truth: f64,
    pub correct_halfwidth_max: f64,
    pub num_faulty: usize,
    pub fault_offset_min: f64,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.num_sensors == 0 {
            return bad("num_sensors must be positive");
        }
        if self.num_faulty >= self.num_sensors {
            return bad("num_faulty must be less than num_sensors");
        }
        if !self.truth.is_finite() {
            return bad("truth must be finite");
        }
        if !(self.correct_halfwidth_max.is_finite() && self.correct_halfwidth_max > 0.0) {
            return bad("correct_halfwidth_max must be positive");
        }
        if !(self.fault_offset_min.is_finite() && self.fault_offset_min > self.correct_halfwidth_max) {
            return bad("fault_offset_min must exceed correct_halfwidth_max");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub round: u64,
    pub intervals: Vec<Interval>,
    /// Sorted ascending.
    pub faulty_indices: Vec<usize>,
    /// Fused levels for `f = 0 .. num_sensors - 1`.
    pub fused: GradedIntervals,
    /// `truth_containment[f]` is whether level `f` contains the truth.
    pub truth_containment: Vec<bool>,
}

impl SimOutcome {
    /// True when every level with `f >= num_faulty` contains the truth.
    pub fn guarantee_holds(&self) -> bool {
        self.truth_containment[self.faulty_indices.len()..].iter().all(|&c| c)
    }
}

/// Uniform in `(0, max]`.
fn positive_uniform<R: Rng>(rng: &mut R, max: f64) -> f64 {
    max * (1.0 - rng.gen::<f64>())
}

/// Round 0 of `config`.
pub fn simulate_round(config: &SimConfig) -> Result<SimOutcome> {
    simulate_round_at(config, 0)
}

pub fn simulate_round_at(config: &SimConfig, round: u64) -> Result<SimOutcome> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(round);

    let n = config.num_sensors;
    let hw = config.correct_halfwidth_max;
    let mut faulty_indices = index::sample(&mut rng, n, config.num_faulty).into_vec();
    faulty_indices.sort_unstable();

    let mut intervals = Vec::with_capacity(n);
    for i in 0..n {
        let iv = if faulty_indices.binary_search(&i).is_ok() {
            let gap = config.fault_offset_min + positive_uniform(&mut rng, hw);
            let width = positive_uniform(&mut rng, 2.0 * hw);
            if rng.gen::<bool>() {
                Interval::new(config.truth + gap, config.truth + gap + width)?
            } else {
                Interval::new(config.truth - gap - width, config.truth - gap)?
            }
        } else {
            let u = positive_uniform(&mut rng, hw);
            let v = positive_uniform(&mut rng, hw);
            Interval::new(config.truth - u, config.truth + v)?
        };
        intervals.push(iv);
    }

    let fused = graded_fusion(&intervals, 0, n - 1)?;
    let truth_containment = fused.levels().iter().map(|l| l.contains(config.truth)).collect();
    Ok(SimOutcome {
        round,
        intervals,
        faulty_indices,
        fused,
        truth_containment,
    })
}

/// Rounds `0..rounds`.
pub fn simulate(config: &SimConfig, rounds: u64) -> Result<Vec<SimOutcome>> {
    (0..rounds).map(|r| simulate_round_at(config, r)).collect()
}
