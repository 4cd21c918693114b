//! Seeded Monte Carlo experiments over uniform random instances.
//!
//! Reproducibility contract: one ChaCha8 generator per trial, keyed by the
//! experiment seed and the trial's index as the stream number. Trials are
//! therefore independent of execution order, and the serial and concurrent
//! runners produce identical summaries byte for byte. Uniform times are
//! drawn by rejection from `next_u64`, so results do not depend on any
//! library's distribution internals.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{full_report, BoundsError};
use crate::jobs::JobSet;
use crate::ratio::Ratio;

pub const DEFAULT_TRIALS: u32 = 100;
pub const DEFAULT_TIME_MIN: u64 = 1;
pub const DEFAULT_TIME_MAX: u64 = 32_000;
pub const DEFAULT_SEED: u64 = 1;

/// Recorded in structured output so numbers can be traced to the exact
/// generation scheme.
pub const RNG_DESCRIPTION: &str =
    "chacha8, seed_from_u64(seed), stream=trial index, rejection-sampled uniforms";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("experiments need at least 2 jobs, got {0}")]
    InvalidJobCount(usize),
    #[error("experiments need at least 1 trial")]
    InvalidTrials,
    #[error("invalid time range [{min}, {max}]")]
    InvalidRange { min: u64, max: u64 },
    #[error("job count times maximum time would overflow the 64-bit total")]
    SumOverflow,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Parameters of one experiment (one row of the summary table).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub job_count: usize,
    pub trials: u32,
    pub time_min: u64,
    pub time_max: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(job_count: usize) -> Self {
        ExperimentConfig {
            job_count,
            trials: DEFAULT_TRIALS,
            time_min: DEFAULT_TIME_MIN,
            time_max: DEFAULT_TIME_MAX,
            seed: DEFAULT_SEED,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.job_count < 2 {
            return Err(SimError::InvalidJobCount(self.job_count));
        }
        if self.trials == 0 {
            return Err(SimError::InvalidTrials);
        }
        if self.time_min == 0 || self.time_min > self.time_max {
            return Err(SimError::InvalidRange {
                min: self.time_min,
                max: self.time_max,
            });
        }
        if (self.job_count as u128) * (self.time_max as u128) > u64::MAX as u128 {
            return Err(SimError::SumOverflow);
        }
        Ok(())
    }
}

/// Uniform draw from `[min, max]` by rejection; unbiased for every range.
fn uniform_in(rng: &mut impl RngCore, min: u64, max: u64) -> u64 {
    debug_assert!(min >= 1 && min <= max);
    let range = max - min + 1;
    if range == 1 {
        return min;
    }
    let zone = (u64::MAX / range) * range;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return min + x % range;
        }
    }
}

/// Instance for `trial_index` of the configured experiment. Requires a
/// validated config; see [`ExperimentConfig::validate`].
pub fn generate_instance(config: &ExperimentConfig, trial_index: u64) -> JobSet {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial_index);
    let values: Vec<u64> = (0..config.job_count)
        .map(|_| uniform_in(&mut rng, config.time_min, config.time_max))
        .collect();
    JobSet::from_values(values).expect("validated config yields a valid job set")
}

/// Per-trial observations: the actual ratio, the three instance-dependent
/// capped bounds, and whether either raw cubic bound was exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    pub ratio: Ratio,
    pub bm: Ratio,
    pub bp: Ratio,
    pub bl: Ratio,
    pub raw_bm_violated: bool,
    pub raw_bp_violated: bool,
}

/// Evaluates one instance against the exact oracle.
///
/// Fails if a guaranteed bound is violated; raw cubic bound violations are
/// recorded, not errors.
pub fn run_trial(jobs: &JobSet) -> Result<TrialRecord, SimError> {
    let report = full_report(jobs, true)?;
    Ok(TrialRecord {
        ratio: report.ratio_actual.expect("oracle was requested"),
        bm: report.last_job.capped,
        bp: report.possible_last_job.capped,
        bl: report.coffman_sethi,
        raw_bm_violated: report.raw_last_job_exceeded.unwrap_or(false),
        raw_bp_violated: report.raw_possible_last_job_exceeded.unwrap_or(false),
    })
}

/// Aggregated experiment results.
///
/// `ac` is the mean actual ratio and `mc` its maximum; `bm`, `bp` and `bl`
/// are the means of the capped last-job, possible-last-job and
/// critical-count bounds. `raw_violation_count` totals the raw-bound
/// violation flags over all trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentSummary {
    pub job_count: usize,
    pub trials: u32,
    pub seed: u64,
    pub ac: f64,
    pub mc: f64,
    pub bm: f64,
    pub bp: f64,
    pub bl: f64,
    pub raw_violation_count: u32,
}

impl ExperimentSummary {
    pub fn csv_header() -> &'static str {
        "jobs,trials,seed,ac,mc,bm,bp,bl,raw_violations"
    }

    /// One CSV row; ratio columns carry six significant digits.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{:.5},{:.5},{:.5},{:.5},{:.5},{}",
            self.job_count,
            self.trials,
            self.seed,
            self.ac,
            self.mc,
            self.bm,
            self.bp,
            self.bl,
            self.raw_violation_count
        )
    }
}

/// Runs all trials on a rayon pool. Identical output to
/// [`run_experiment_serial`] because trials are keyed by index and
/// aggregation happens in index order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary, SimError> {
    config.validate()?;
    let records: Vec<TrialRecord> = (0..config.trials as u64)
        .into_par_iter()
        .map(|i| run_trial(&generate_instance(config, i)))
        .collect::<Result<_, _>>()?;
    Ok(aggregate(config, &records))
}

/// Runs all trials on the current thread.
pub fn run_experiment_serial(config: &ExperimentConfig) -> Result<ExperimentSummary, SimError> {
    config.validate()?;
    let records: Vec<TrialRecord> = (0..config.trials as u64)
        .map(|i| run_trial(&generate_instance(config, i)))
        .collect::<Result<_, _>>()?;
    Ok(aggregate(config, &records))
}

/// Compensated (Kahan) running sum; keeps means independent of niceties
/// of summation order by fixing one order and compensating rounding.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }
}

fn aggregate(config: &ExperimentConfig, records: &[TrialRecord]) -> ExperimentSummary {
    debug_assert!(!records.is_empty());
    let mut ac = KahanSum::default();
    let mut bm = KahanSum::default();
    let mut bp = KahanSum::default();
    let mut bl = KahanSum::default();
    let mut mc = records[0].ratio;
    let mut violations = 0u32;
    for r in records {
        ac.add(r.ratio.to_f64());
        bm.add(r.bm.to_f64());
        bp.add(r.bp.to_f64());
        bl.add(r.bl.to_f64());
        mc = mc.max(r.ratio);
        violations += u32::from(r.raw_bm_violated) + u32::from(r.raw_bp_violated);
    }
    let count = records.len() as f64;
    ExperimentSummary {
        job_count: config.job_count,
        trials: config.trials,
        seed: config.seed,
        ac: ac.sum / count,
        mc: mc.to_f64(),
        bm: bm.sum / count,
        bp: bp.sum / count,
        bl: bl.sum / count,
        raw_violation_count: violations,
    }
}
