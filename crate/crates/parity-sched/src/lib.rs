//! Scheduling independent jobs on two identical machines and its twin
//! problem, partitioning numbers into two sets of near-equal sum.
//!
//! The two views are linked by an exact identity: twice the optimal
//! makespan equals the total processing time plus the minimal partition
//! difference. This crate provides:
//!
//! * [`lpt::lpt_schedule`], the longest-processing-time heuristic, with
//!   the schedule metrics (makespan, last-finishing job index `L`, critical
//!   job count `k`) that drive the worst-case bounds;
//! * [`exact`], two independent exact solvers (exhaustive search and a
//!   subset-sum reachability table) returning optimal makespan, minimal
//!   difference and a witness partition;
//! * [`bounds`], dominance analysis (the "possible last job") and the
//!   worst-case ratio bounds, all evaluated as exact rationals;
//! * [`sim`], a seeded, reproducible Monte Carlo harness aggregating
//!   actual ratios against the bounds over random instances;
//! * [`cli`], the `parity-sched` batch command line on top of it all.
//!
//! Job times are generic over an unsigned integer scalar (see [`Time`]);
//! `JobSet` defaults to `u64` and the [`JobSet32`]/[`JobSet64`] aliases
//! pin concrete widths. All derived arithmetic is exact: sums in `u64`,
//! ratio comparisons by cross-multiplication in `u128`.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cli;
pub mod exact;
pub mod jobs;
pub mod lpt;
pub mod ratio;
pub mod schedule;
pub mod sim;
pub mod time;

pub use bounds::{
    asymptotic_estimate, coffman_sethi_bound, dominant_indices, full_report, graham_bound,
    last_job_bound, possible_last_job_bound, BoundReport, CappedBound, DominanceInfo,
};
pub use exact::{equivalence_check, optimal_bruteforce, optimal_dp, OptimalResult};
pub use jobs::{InstanceError, JobSet};
pub use lpt::{lpt_schedule, schedule_to_partition};
pub use ratio::Ratio;
pub use schedule::{Machine, Partition, TwoMachineSchedule};
pub use time::Time;

/// Job set storing 32-bit processing times.
pub type JobSet32 = JobSet<u32>;
/// Job set storing 64-bit processing times (the default).
pub type JobSet64 = JobSet<u64>;
