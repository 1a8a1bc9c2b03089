//! Closed intervals and the F-fusion function.
//!
//! Given `L` measurement intervals `[a_i, b_i]` of which at most `f` may be
//! faulty, the fused estimate is `[c, d]` where `c` is the `(f+1)`-th
//! largest left endpoint and `d` is the `(f+1)`-th smallest right endpoint.
//! Sweeping `f` upwards produces a nested chain of fused intervals, and a
//! random fault count pushes forward to a distribution over intervals.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Tolerance on the total mass of a probability vector.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// A closed interval `[lo, hi]` with finite endpoints and `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInterval(format!(
                "endpoints must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidInterval(format!("lo > hi in [{lo}, {hi}]")));
        }
        // Fold -0.0 into 0.0 so equal intervals serialize identically.
        Ok(Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
        })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Orders by `(lo, hi)`; total because endpoints are finite.
    pub fn canonical_cmp(&self, other: &Interval) -> Ordering {
        self.lo.total_cmp(&other.lo).then(self.hi.total_cmp(&other.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Outcome of a fusion: an interval, or `Empty` when `c > d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FusionResult {
    NonEmpty(Interval),
    Empty,
}

impl FusionResult {
    pub fn interval(&self) -> Option<&Interval> {
        match self {
            FusionResult::NonEmpty(iv) => Some(iv),
            FusionResult::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FusionResult::Empty)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.interval().is_some_and(|iv| iv.contains(t))
    }

    /// Set inclusion where `Empty` is a subset of everything.
    pub fn is_subset_of(&self, other: &FusionResult) -> bool {
        match (self, other) {
            (FusionResult::Empty, _) => true,
            (FusionResult::NonEmpty(_), FusionResult::Empty) => false,
            (FusionResult::NonEmpty(a), FusionResult::NonEmpty(b)) => a.is_subset_of(b),
        }
    }

    /// `Empty` sorts first, then intervals by `(lo, hi)`.
    pub fn canonical_cmp(&self, other: &FusionResult) -> Ordering {
        match (self, other) {
            (FusionResult::Empty, FusionResult::Empty) => Ordering::Equal,
            (FusionResult::Empty, _) => Ordering::Less,
            (_, FusionResult::Empty) => Ordering::Greater,
            (FusionResult::NonEmpty(a), FusionResult::NonEmpty(b)) => a.canonical_cmp(b),
        }
    }
}

impl From<Interval> for FusionResult {
    fn from(iv: Interval) -> Self {
        FusionResult::NonEmpty(iv)
    }
}

impl fmt::Display for FusionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionResult::NonEmpty(iv) => iv.fmt(f),
            FusionResult::Empty => f.write_str("empty"),
        }
    }
}

fn check_fault_count(intervals: &[Interval], faults: usize) -> Result<()> {
    if intervals.is_empty() {
        return Err(Error::NoMeasurements);
    }
    if faults >= intervals.len() {
        return Err(Error::FaultCountExceeds {
            faults,
            measurements: intervals.len(),
        });
    }
    Ok(())
}

/// F-fusion of `intervals` tolerating `faults` faulty measurements.
///
/// Selection is over the sorted multiset of endpoints, so the result does
/// not depend on input order and repeated endpoints count with multiplicity.
pub fn fuse(intervals: &[Interval], faults: usize) -> Result<FusionResult> {
    check_fault_count(intervals, faults)?;

    let mut lefts: Vec<f64> = intervals.iter().map(Interval::lo).collect();
    let mut rights: Vec<f64> = intervals.iter().map(Interval::hi).collect();
    lefts.sort_by(|a, b| b.total_cmp(a));
    rights.sort_by(|a, b| a.total_cmp(b));

    let c = lefts[faults];
    let d = rights[faults];
    if c <= d {
        Ok(FusionResult::NonEmpty(Interval { lo: c, hi: d }))
    } else {
        Ok(FusionResult::Empty)
    }
}

/// Fused intervals for consecutive fault counts `f_min, f_min + 1, ...`,
/// each contained in the next.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedIntervals {
    f_min: usize,
    levels: Vec<FusionResult>,
}

impl GradedIntervals {
    /// Checks the nesting of consecutive levels and reports the first
    /// offending pair.
    pub fn new(f_min: usize, levels: Vec<FusionResult>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyChain);
        }
        if let Some(index) = levels.windows(2).position(|pair| !pair[0].is_subset_of(&pair[1])) {
            return Err(Error::NotNested { index });
        }
        Ok(GradedIntervals { f_min, levels })
    }

    pub fn f_min(&self) -> usize {
        self.f_min
    }

    pub fn f_max(&self) -> usize {
        self.f_min + self.levels.len() - 1
    }

    pub fn levels(&self) -> &[FusionResult] {
        &self.levels
    }

    /// The level fused with exactly `faults` tolerated faults.
    pub fn level_for(&self, faults: usize) -> Option<&FusionResult> {
        faults.checked_sub(self.f_min).and_then(|k| self.levels.get(k))
    }
}

/// Fuses `intervals` for every fault count in `f_min..=f_max`.
pub fn graded_fusion(intervals: &[Interval], f_min: usize, f_max: usize) -> Result<GradedIntervals> {
    if intervals.is_empty() {
        return Err(Error::NoMeasurements);
    }
    if f_min > f_max || f_max >= intervals.len() {
        return Err(Error::InvalidFaultRange {
            f_min,
            f_max,
            measurements: intervals.len(),
        });
    }
    let levels = (f_min..=f_max)
        .map(|f| fuse(intervals, f))
        .collect::<Result<Vec<_>>>()?;
    GradedIntervals::new(f_min, levels).map_err(|e| match e {
        Error::NotNested { index } => Error::Internal(format!(
            "fused levels for f = {} and f = {} are not nested",
            f_min + index,
            f_min + index + 1
        )),
        other => other,
    })
}

/// Splits a two-level graded chain into its `(lower, upper)` rough pair.
pub fn as_rough_pair(graded: &GradedIntervals) -> Result<(FusionResult, FusionResult)> {
    match graded.levels() {
        [lower, upper] => Ok((*lower, *upper)),
        levels => Err(Error::NotRoughPair { levels: levels.len() }),
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 || p > 1.0 + PROBABILITY_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("probability {p} outside (0, 1]")));
    }
    Ok(())
}

fn check_total(total: f64) -> Result<()> {
    if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    Ok(())
}

/// Probability mass function over fault counts.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultDistribution {
    support: Vec<(usize, f64)>,
}

impl FaultDistribution {
    /// Validates the pmf and sorts the support by fault count.
    pub fn new(mut support: Vec<(usize, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        support.sort_by_key(|&(f, _)| f);
        if let Some(pair) = support.windows(2).find(|pair| pair[0].0 == pair[1].0) {
            return Err(Error::InvalidDistribution(format!(
                "fault count {} listed twice",
                pair[0].0
            )));
        }
        for &(_, p) in &support {
            check_probability(p)?;
        }
        check_total(support.iter().map(|&(_, p)| p).sum())?;
        Ok(FaultDistribution { support })
    }

    pub fn point_mass(faults: usize) -> Self {
        FaultDistribution {
            support: vec![(faults, 1.0)],
        }
    }

    pub fn support(&self) -> &[(usize, f64)] {
        &self.support
    }
}

/// A finite distribution over distinct fusion results, kept sorted in
/// canonical order (`Empty` first, then by `(lo, hi)`).
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalDistribution {
    atoms: Vec<(FusionResult, f64)>,
}

impl IntervalDistribution {
    pub fn new(mut atoms: Vec<(FusionResult, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        atoms.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        if atoms.windows(2).any(|pair| pair[0].0 == pair[1].0) {
            return Err(Error::InvalidDistribution("duplicate atom".into()));
        }
        for &(_, p) in &atoms {
            check_probability(p)?;
        }
        check_total(atoms.iter().map(|&(_, p)| p).sum())?;
        Ok(IntervalDistribution { atoms })
    }

    pub fn atoms(&self) -> &[(FusionResult, f64)] {
        &self.atoms
    }

    pub fn probability_of(&self, result: &FusionResult) -> f64 {
        self.atoms.iter().find(|(r, _)| r == result).map_or(0.0, |&(_, p)| p)
    }

    pub fn total(&self) -> f64 {
        self.atoms.iter().map(|&(_, p)| p).sum()
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> FusionResult {
        let u: f64 = rng.gen::<f64>() * self.total();
        let mut acc = 0.0;
        for &(result, p) in &self.atoms {
            acc += p;
            if u < acc {
                return result;
            }
        }
        // Rounding can leave u just above the final partial sum.
        self.atoms[self.atoms.len() - 1].0
    }
}

/// Pushes a fault-count distribution through [`fuse`], merging fault
/// counts that yield the same interval.
pub fn random_graded(intervals: &[Interval], dist: &FaultDistribution) -> Result<IntervalDistribution> {
    let mut atoms: Vec<(FusionResult, f64)> = Vec::new();
    for &(faults, p) in dist.support() {
        let result = fuse(intervals, faults)?;
        match atoms.iter_mut().find(|(r, _)| *r == result) {
            Some(atom) => atom.1 += p,
            None => atoms.push((result, p)),
        }
    }
    IntervalDistribution::new(atoms)
}

/// One draw from `dist` using a ChaCha8 stream seeded with `seed`.
pub fn sample(dist: &IntervalDistribution, seed: u64) -> FusionResult {
    dist.draw(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// `n` successive draws from a single ChaCha8 stream seeded with `seed`.
pub fn sample_n(dist: &IntervalDistribution, seed: u64, n: usize) -> Vec<FusionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| dist.draw(&mut rng)).collect()
}
