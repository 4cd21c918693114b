//! Dominance analysis and worst-case completion-time ratio bounds.
//!
//! Every bound here has the shape `1 + 1/(2x)` for some quantity `x`
//! derived from the instance, evaluated as an exact rational:
//!
//! * a flat `7/6` for any two-machine LPT schedule,
//! * `(2k+1)/(2k)` from the number of jobs `k` on the critical machine,
//! * `(48M^3 + 24M^2 + 12M + 7)/(48M^3)` with `M = ceil(L/2)` from the
//!   index `L` of the last-finishing job (known after scheduling),
//! * the same form with `P = ceil(PLJ/2)` in place of `M`, where `PLJ` is
//!   the smallest index the last-finishing job can take (known up front).
//!
//! The cubic form can exceed `7/6` for small `M`, so both the raw value
//! and the capped value `min(raw, 7/6)` are reported.

use thiserror::Error;

use crate::exact::{optimal_dp, ExactError};
use crate::jobs::JobSet;
use crate::lpt::lpt_schedule;
use crate::ratio::{Ratio, RatioError};
use crate::time::Time;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("critical job count must be at least 1")]
    InvalidCriticalJobCount,
    #[error("last job index must be at least 1")]
    InvalidLastJobIndex,
    #[error("possible last job index must be at least 1")]
    InvalidPlj,
    #[error("delta must be a ratio of positive times with delta <= 1")]
    InvalidDelta,
    #[error("bound arithmetic overflowed 128-bit integers")]
    Overflow,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("{name} bound violated: ratio {ratio} exceeds {bound}")]
    BoundViolated {
        name: &'static str,
        ratio: Ratio,
        bound: Ratio,
    },
}

impl From<RatioError> for BoundsError {
    fn from(_: RatioError) -> Self {
        BoundsError::Overflow
    }
}

/// Dominant jobs of an instance.
///
/// Job `i` (1-based, `i < n`) is dominant when its time is at least the
/// sum of all later times. A dominant job placed by LPT always ends no
/// earlier than the jobs after it, so the last-finishing job's index is at
/// least the smallest dominant index. That smallest index is `plj`, the
/// possible last job. Job `n - 1` is always dominant because times are
/// sorted, so the set is never empty; a single-job instance degenerates
/// to `{1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceInfo {
    dominant_indices: Vec<usize>,
    plj: usize,
}

impl DominanceInfo {
    /// 1-based indices of the dominant jobs, ascending.
    pub fn dominant_indices(&self) -> &[usize] {
        &self.dominant_indices
    }

    /// Smallest dominant index: the least index the last-finishing job
    /// can have in an LPT schedule of this instance.
    pub fn plj(&self) -> usize {
        self.plj
    }
}

pub fn dominant_indices<T: Time>(jobs: &JobSet<T>) -> DominanceInfo {
    let n = jobs.len();
    if n == 1 {
        return DominanceInfo {
            dominant_indices: vec![1],
            plj: 1,
        };
    }
    let mut dominant = Vec::new();
    let mut suffix: u64 = jobs.time_u64(n - 1);
    for index in (1..n).rev() {
        // index is 1-based; compare job `index` against the tail after it.
        if jobs.time_u64(index - 1) >= suffix {
            dominant.push(index);
        }
        suffix += jobs.time_u64(index - 1);
    }
    dominant.reverse();
    let plj = dominant[0];
    DominanceInfo {
        dominant_indices: dominant,
        plj,
    }
}

/// Raw bound value next to its form capped at the flat `7/6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CappedBound {
    pub raw: Ratio,
    pub capped: Ratio,
}

/// Worst-case ratio of LPT to optimal makespan on two machines: `7/6`.
pub fn graham_bound() -> Ratio {
    Ratio::new(7u8, 6u8).expect("7/6 is a valid ratio")
}

/// `(2k+1)/(2k)` where `k` is the number of jobs on the critical machine.
pub fn coffman_sethi_bound(critical_job_count: u64) -> Result<Ratio, BoundsError> {
    if critical_job_count == 0 {
        return Err(BoundsError::InvalidCriticalJobCount);
    }
    let k = critical_job_count as u128;
    Ok(Ratio::new(2 * k + 1, 2 * k)?)
}

fn cubic_bound(m: u128) -> Result<CappedBound, BoundsError> {
    debug_assert!(m >= 1);
    let m2 = m.checked_mul(m).ok_or(BoundsError::Overflow)?;
    let m3 = m2.checked_mul(m).ok_or(BoundsError::Overflow)?;
    let den = m3.checked_mul(48).ok_or(BoundsError::Overflow)?;
    let num = den
        .checked_add(m2.checked_mul(24).ok_or(BoundsError::Overflow)?)
        .and_then(|v| v.checked_add(m.checked_mul(12)?))
        .and_then(|v| v.checked_add(7))
        .ok_or(BoundsError::Overflow)?;
    let raw = Ratio::new(num, den)?;
    Ok(CappedBound {
        raw,
        capped: raw.min(graham_bound()),
    })
}

/// Bound from the observed index `L` of the last-finishing job, via
/// `M = ceil(L/2)`. Known only after running the schedule.
pub fn last_job_bound(last_job_index: u64) -> Result<CappedBound, BoundsError> {
    if last_job_index == 0 {
        return Err(BoundsError::InvalidLastJobIndex);
    }
    cubic_bound((last_job_index as u128).div_ceil(2))
}

/// A priori form of [`last_job_bound`]: the same cubic evaluated at
/// `P = ceil(plj/2)`, usable before any schedule is built because the
/// last-finishing job's index is never below `plj`.
pub fn possible_last_job_bound(plj: u64) -> Result<CappedBound, BoundsError> {
    if plj == 0 {
        return Err(BoundsError::InvalidPlj);
    }
    cubic_bound((plj as u128).div_ceil(2))
}

/// Large-`n` estimate `1 + 1/n + delta/n` where `delta = t_n/t_1` is the
/// smallest-to-largest time ratio. Exact: `(n*d + d + c)/(n*d)` for
/// `delta = c/d`.
pub fn asymptotic_estimate(n: u64, delta: Ratio) -> Result<Ratio, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidPlj);
    }
    if delta.numerator() == 0 || delta > Ratio::ONE {
        return Err(BoundsError::InvalidDelta);
    }
    let n = n as u128;
    let d = delta.denominator();
    let nd = n.checked_mul(d).ok_or(BoundsError::Overflow)?;
    let num = nd
        .checked_add(d)
        .and_then(|v| v.checked_add(delta.numerator()))
        .ok_or(BoundsError::Overflow)?;
    Ok(Ratio::new(num, nd)?)
}

/// Schedule-derived quantities each bound was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundInputs {
    pub last_job_index: usize,
    pub m_value: usize,
    pub critical_job_count: usize,
    pub plj: usize,
    pub p_value: usize,
}

/// Every bound for one instance, plus the actual ratio when the exact
/// oracle was consulted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub ratio_actual: Option<Ratio>,
    pub graham: Ratio,
    pub coffman_sethi: Ratio,
    pub last_job: CappedBound,
    pub possible_last_job: CappedBound,
    pub raw_last_job_exceeded: Option<bool>,
    pub raw_possible_last_job_exceeded: Option<bool>,
    pub inputs: BoundInputs,
}

/// Runs LPT and the dominance scan, evaluates every bound, and (with
/// `with_oracle`) compares the actual ratio against each capped bound.
///
/// An actual ratio above any capped bound breaks a guarantee and comes
/// back as [`BoundsError::BoundViolated`]. The raw cubic forms carry no
/// such guarantee, so exceeding them is only recorded in the
/// `raw_*_exceeded` flags.
pub fn full_report<T: Time>(
    jobs: &JobSet<T>,
    with_oracle: bool,
) -> Result<BoundReport, BoundsError> {
    let schedule = lpt_schedule(jobs);
    let dominance = dominant_indices(jobs);
    let graham = graham_bound();
    let coffman_sethi = coffman_sethi_bound(schedule.critical_job_count() as u64)?;
    let last_job = last_job_bound(schedule.last_job_index() as u64)?;
    let possible_last_job = possible_last_job_bound(dominance.plj() as u64)?;
    let inputs = BoundInputs {
        last_job_index: schedule.last_job_index(),
        m_value: schedule.m_value(),
        critical_job_count: schedule.critical_job_count(),
        plj: dominance.plj(),
        p_value: dominance.plj().div_ceil(2),
    };
    let mut report = BoundReport {
        ratio_actual: None,
        graham,
        coffman_sethi,
        last_job,
        possible_last_job,
        raw_last_job_exceeded: None,
        raw_possible_last_job_exceeded: None,
        inputs,
    };
    if with_oracle {
        let optimal = optimal_dp(jobs)?;
        let ratio = Ratio::new(schedule.makespan(), optimal.optimal_makespan())
            .expect("optimal makespan is positive");
        let guaranteed = [
            ("two-machine", graham),
            ("critical-count", coffman_sethi),
            ("last-job", last_job.capped),
            ("possible-last-job", possible_last_job.capped),
        ];
        for (name, bound) in guaranteed {
            if ratio > bound {
                return Err(BoundsError::BoundViolated { name, ratio, bound });
            }
        }
        report.ratio_actual = Some(ratio);
        report.raw_last_job_exceeded = Some(ratio > last_job.raw);
        report.raw_possible_last_job_exceeded = Some(ratio > possible_last_job.raw);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::{
        asymptotic_estimate, coffman_sethi_bound, dominant_indices, full_report, graham_bound,
        last_job_bound, possible_last_job_bound, BoundsError,
    };
    use crate::jobs::JobSet;
    use crate::lpt::lpt_schedule;
    use crate::ratio::Ratio;

    fn jobs64(values: &[u64]) -> JobSet {
        JobSet::from_values(values.to_vec()).unwrap()
    }

    fn ratio(num: u64, den: u64) -> Ratio {
        Ratio::new(num, den).unwrap()
    }

    #[test]
    fn dominance_examples() {
        // 12 >= 5+3+2+1, 3 >= 2+1, 2 >= 1; job 2 fails 5 >= 3+2+1.
        let d = dominant_indices(&jobs64(&[12, 5, 3, 2, 1]));
        assert_eq!(d.dominant_indices(), &[1, 3, 4]);
        assert_eq!(d.plj(), 1);

        // Only the trivial next-to-last job qualifies.
        let d = dominant_indices(&jobs64(&[7, 5, 3, 3, 1]));
        assert_eq!(d.dominant_indices(), &[4]);
        assert_eq!(d.plj(), 4);

        let d = dominant_indices(&jobs64(&[9, 7, 4, 3, 2]));
        assert_eq!(d.dominant_indices(), &[4]);
        assert_eq!(d.plj(), 4);

        let d = dominant_indices(&jobs64(&[5]));
        assert_eq!(d.dominant_indices(), &[1]);
        assert_eq!(d.plj(), 1);
    }

    #[test]
    fn graham_is_seven_sixths() {
        assert_eq!(graham_bound(), ratio(7, 6));
    }

    #[test]
    fn coffman_sethi_values() {
        // (2k+1)/(2k): k=3 gives 7/6, k=1 gives 3/2.
        assert_eq!(coffman_sethi_bound(3).unwrap(), ratio(7, 6));
        assert_eq!(coffman_sethi_bound(1).unwrap(), ratio(3, 2));
        assert_eq!(
            coffman_sethi_bound(0),
            Err(BoundsError::InvalidCriticalJobCount)
        );
    }

    #[test]
    fn last_job_values() {
        // L=5 -> M=3: (48*27 + 24*9 + 36 + 7)/(48*27) = 1555/1296 > 7/6.
        let b = last_job_bound(5).unwrap();
        assert_eq!(b.raw, ratio(1555, 1296));
        assert_eq!(b.capped, ratio(7, 6));
        // L=1 -> M=1: (48 + 24 + 12 + 7)/48 = 91/48.
        let b = last_job_bound(1).unwrap();
        assert_eq!(b.raw, ratio(91, 48));
        assert_eq!(b.capped, ratio(7, 6));
        // L=14 -> M=7: (48*343 + 24*49 + 84 + 7)/(48*343) = 17731/16464 < 7/6.
        let b = last_job_bound(14).unwrap();
        assert_eq!(b.raw, ratio(17731, 16464));
        assert_eq!(b.capped, b.raw);
        assert_eq!(last_job_bound(0), Err(BoundsError::InvalidLastJobIndex));
    }

    #[test]
    fn possible_last_job_values() {
        // plj=4 -> P=2: (384 + 96 + 24 + 7)/384 = 511/384.
        let b = possible_last_job_bound(4).unwrap();
        assert_eq!(b.raw, ratio(511, 384));
        assert_eq!(b.capped, ratio(7, 6));
        // plj=14 matches the last-job bound at L=14.
        assert_eq!(
            possible_last_job_bound(14).unwrap(),
            last_job_bound(14).unwrap()
        );
        let b = possible_last_job_bound(1).unwrap();
        assert_eq!(b.raw, ratio(91, 48));
        assert_eq!(possible_last_job_bound(0), Err(BoundsError::InvalidPlj));
    }

    #[test]
    fn asymptotic_values() {
        // 1 + 1/4 + (1/2)/4 = 11/8.
        assert_eq!(
            asymptotic_estimate(4, ratio(1, 2)).unwrap(),
            ratio(11, 8)
        );
        // 1 + 1/1 + 1/1 = 3.
        assert_eq!(asymptotic_estimate(1, Ratio::ONE).unwrap(), ratio(3, 1));
        assert_eq!(
            asymptotic_estimate(0, Ratio::ONE),
            Err(BoundsError::InvalidPlj)
        );
        assert_eq!(
            asymptotic_estimate(4, ratio(3, 2)),
            Err(BoundsError::InvalidDelta)
        );
        assert_eq!(
            asymptotic_estimate(4, ratio(0, 2)),
            Err(BoundsError::InvalidDelta)
        );
    }

    #[test]
    fn report_on_five_job_example() {
        let jobs = jobs64(&[9, 7, 4, 3, 2]);
        let r = full_report(&jobs, true).unwrap();
        assert_eq!(r.ratio_actual, Some(Ratio::ONE));
        assert_eq!(r.coffman_sethi, ratio(7, 6));
        assert_eq!(r.last_job.raw, ratio(1555, 1296));
        assert_eq!(r.possible_last_job.raw, ratio(511, 384));
        assert_eq!(r.raw_last_job_exceeded, Some(false));
        assert_eq!(r.raw_possible_last_job_exceeded, Some(false));
        let i = r.inputs;
        assert_eq!(
            (i.last_job_index, i.m_value, i.critical_job_count, i.plj, i.p_value),
            (5, 3, 3, 4, 2)
        );
    }

    #[test]
    fn report_without_oracle_reports_no_ratio() {
        let r = full_report(&jobs64(&[9, 7, 4, 3, 2]), false).unwrap();
        assert_eq!(r.ratio_actual, None);
        assert_eq!(r.raw_last_job_exceeded, None);
    }

    #[test]
    fn report_on_tied_pair() {
        let r = full_report(&jobs64(&[1, 1]), true).unwrap();
        assert_eq!(r.ratio_actual, Some(Ratio::ONE));
        // Last job is job 2 on machine 2, alone: k=1.
        assert_eq!(r.coffman_sethi, ratio(3, 2));
        assert_eq!(r.inputs.plj, 1);
    }

    fn arb_times() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(1u64..=1000, 1..=14)
    }

    proptest! {
        #[test]
        fn plj_never_exceeds_last_job_index(values in arb_times()) {
            let jobs = JobSet::from_values(values).unwrap();
            let s = lpt_schedule(&jobs);
            let d = dominant_indices(&jobs);
            prop_assert!(s.last_job_index() >= d.plj());
            let trivial = if jobs.len() == 1 { 1 } else { jobs.len() - 1 };
            prop_assert!(d.dominant_indices().contains(&trivial));
        }

        #[test]
        fn capped_bounds_hold_on_random_instances(values in arb_times()) {
            let jobs = JobSet::from_values(values).unwrap();
            // full_report errors out if any guaranteed bound fails.
            let r = full_report(&jobs, true).unwrap();
            let ratio = r.ratio_actual.unwrap();
            prop_assert!(ratio >= Ratio::ONE);
            prop_assert!(ratio <= r.graham);
        }

        #[test]
        fn cubic_bound_shrinks_with_index(l in 1u64..500) {
            let here = last_job_bound(l).unwrap();
            let next = last_job_bound(l + 2).unwrap();
            // L and L+2 straddle distinct M values, so the raw form drops.
            prop_assert!(next.raw < here.raw);
            prop_assert!(next.capped <= here.capped);
            prop_assert!(here.capped <= ratio(7, 6));
            prop_assert!(Ratio::ONE < here.raw);
        }

        #[test]
        fn coffman_sethi_shrinks_with_count(k in 1u64..10_000) {
            prop_assert!(coffman_sethi_bound(k + 1).unwrap() < coffman_sethi_bound(k).unwrap());
            prop_assert!(coffman_sethi_bound(k).unwrap() > Ratio::ONE);
        }

        #[test]
        fn a_priori_bound_dominates_observed(values in arb_times()) {
            let jobs = JobSet::from_values(values).unwrap();
            let s = lpt_schedule(&jobs);
            let d = dominant_indices(&jobs);
            let observed = last_job_bound(s.last_job_index() as u64).unwrap();
            let a_priori = possible_last_job_bound(d.plj() as u64).unwrap();
            // plj <= L, and the cubic form shrinks as its argument grows.
            prop_assert!(a_priori.raw >= observed.raw);
            prop_assert!(a_priori.capped >= observed.capped);
        }
    }
}
