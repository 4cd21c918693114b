//! Exact optima by two independent routes: exhaustive bipartition search
//! and a subset-sum reachability table.
//!
//! Minimizing the two-machine makespan and minimizing the partition
//! difference are the same problem: twice the optimal makespan equals the
//! total time plus the minimal difference. Both solvers expose that pair
//! plus a witness partition, and `equivalence_check` confirms the identity
//! from the two directions.

use thiserror::Error;

use crate::jobs::JobSet;
use crate::schedule::Partition;
use crate::time::Time;

/// Exhaustive search is limited to this many jobs.
pub const BRUTE_FORCE_MAX_JOBS: usize = 24;

/// Largest subset-sum table (cells, one per sum in `0..=total/2`) that
/// `optimal_dp` will allocate. Each cell costs one bit of reachability
/// plus four bytes of witness record.
pub const DEFAULT_DP_SUM_CAP: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("exhaustive search supports at most {max} jobs, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("subset-sum table would need {required} cells, above the cap of {cap}")]
    SumCapExceeded { required: u64, cap: u64 },
}

/// An optimal solution in both views: minimal makespan, minimal partition
/// difference, and one partition attaining both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalResult {
    optimal_makespan: u64,
    min_difference: u64,
    witness: Partition,
}

impl OptimalResult {
    fn new(total: u64, witness: Partition) -> Self {
        let result = OptimalResult {
            optimal_makespan: witness.max_sum(),
            min_difference: witness.difference(),
            witness,
        };
        debug_assert_eq!(
            2 * result.optimal_makespan as u128,
            total as u128 + result.min_difference as u128
        );
        result
    }

    pub fn optimal_makespan(&self) -> u64 {
        self.optimal_makespan
    }

    pub fn min_difference(&self) -> u64 {
        self.min_difference
    }

    pub fn witness(&self) -> &Partition {
        &self.witness
    }
}

/// Minimizes the partition difference over all `2^(n-1)` bipartitions.
///
/// Job 0 is pinned to side 1, halving the search space without losing any
/// partition up to side swap. Ties prefer the lexicographically smallest
/// side-1 index list, so results are reproducible.
pub fn optimal_bruteforce<T: Time>(jobs: &JobSet<T>) -> Result<OptimalResult, ExactError> {
    let n = jobs.len();
    if n > BRUTE_FORCE_MAX_JOBS {
        return Err(ExactError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_JOBS,
        });
    }
    let times = jobs.times_u64();
    let total = jobs.total_sum();
    let side1_of = |mask: u32| {
        let mut side = vec![0usize];
        for bit in 0..n - 1 {
            if mask & (1 << bit) != 0 {
                side.push(bit + 1);
            }
        }
        side
    };
    let mut best_diff = u64::MAX;
    let mut best_side1 = Vec::new();
    for mask in 0u32..1 << (n - 1) {
        let mut sum1 = times[0];
        for bit in 0..n - 1 {
            if mask & (1 << bit) != 0 {
                sum1 += times[bit + 1];
            }
        }
        let diff = sum1.abs_diff(total - sum1);
        if diff < best_diff {
            best_diff = diff;
            best_side1 = side1_of(mask);
        } else if diff == best_diff {
            let side = side1_of(mask);
            if side < best_side1 {
                best_side1 = side;
            }
        }
    }
    let witness = Partition::from_side1(jobs, &best_side1).expect("indices come from the mask");
    Ok(OptimalResult::new(total, witness))
}

/// Minimizes the partition difference with a subset-sum reachability table.
///
/// Reachable sums in `0..=total/2` are tracked in a bitset, 64 sums per
/// word, and each newly reached sum records the first job that reached it.
/// Walking those records back from the best sum yields a witness whose job
/// indices strictly decrease, so every job is used at most once.
pub fn optimal_dp<T: Time>(jobs: &JobSet<T>) -> Result<OptimalResult, ExactError> {
    optimal_dp_with_cap(jobs, DEFAULT_DP_SUM_CAP)
}

pub fn optimal_dp_with_cap<T: Time>(
    jobs: &JobSet<T>,
    cap: u64,
) -> Result<OptimalResult, ExactError> {
    let total = jobs.total_sum();
    let half = total / 2;
    let required = half + 1;
    if required > cap {
        return Err(ExactError::SumCapExceeded { required, cap });
    }
    let half = half as usize;
    let n = jobs.len();
    assert!(
        u32::try_from(n).is_ok(),
        "witness records hold 32-bit job indices"
    );
    let words = half / 64 + 1;
    let last_word_mask = if half % 64 == 63 {
        u64::MAX
    } else {
        (1u64 << (half % 64 + 1)) - 1
    };
    let mut bits = vec![0u64; words];
    bits[0] = 1; // the empty subset reaches sum 0
    let mut from = vec![u32::MAX; half + 1];
    for (i, &t) in jobs.times().iter().enumerate() {
        let t: u64 = t.into();
        if t > half as u64 {
            continue; // cannot appear in any sum within the table
        }
        let word_shift = (t / 64) as usize;
        let bit_shift = (t % 64) as u32;
        // Descending keeps the words being read one pass behind the
        // words being written, so each job is applied at most once.
        for j in (word_shift..words).rev() {
            let lo = bits[j - word_shift];
            let shifted = if bit_shift == 0 {
                lo
            } else {
                let carry = if j - word_shift > 0 {
                    bits[j - word_shift - 1] >> (64 - bit_shift)
                } else {
                    0
                };
                (lo << bit_shift) | carry
            };
            let mut changed = shifted & !bits[j];
            if j == words - 1 {
                changed &= last_word_mask;
            }
            if changed != 0 {
                bits[j] |= changed;
                while changed != 0 {
                    let sum = j * 64 + changed.trailing_zeros() as usize;
                    from[sum] = i as u32;
                    changed &= changed - 1;
                }
            }
        }
    }
    let mut best = 0usize;
    for j in (0..words).rev() {
        if bits[j] != 0 {
            best = j * 64 + 63 - bits[j].leading_zeros() as usize;
            break;
        }
    }
    let mut on_side1 = vec![false; n];
    let mut remaining = best;
    while remaining > 0 {
        let i = from[remaining] as usize;
        debug_assert!(!on_side1[i]);
        on_side1[i] = true;
        remaining -= jobs.time_u64(i) as usize;
    }
    let witness = Partition::from_membership(jobs, &on_side1);
    Ok(OptimalResult::new(total, witness))
}

/// Confirms that the scheduling and partitioning views agree on one
/// instance: twice the minimal makespan equals the total plus the minimal
/// difference, and the optimal machine loads equal the optimal side sums.
///
/// The two sides come from genuinely different searches when the instance
/// is small enough for enumeration; beyond that the identity is checked
/// against the reachability table alone.
pub fn equivalence_check<T: Time>(jobs: &JobSet<T>) -> Result<bool, ExactError> {
    let by_difference = optimal_dp(jobs)?;
    let (makespan, loads) = if jobs.len() <= BRUTE_FORCE_MAX_JOBS {
        min_makespan_enumeration(jobs)
    } else {
        let w = by_difference.witness();
        (
            by_difference.optimal_makespan(),
            ordered(w.sum1(), w.sum2()),
        )
    };
    let total = jobs.total_sum() as u128;
    let identity = 2 * makespan as u128 == total + by_difference.min_difference() as u128;
    let w = by_difference.witness();
    let loads_match = loads == ordered(w.sum1(), w.sum2())
        && makespan == by_difference.optimal_makespan();
    Ok(identity && loads_match)
}

fn ordered(a: u64, b: u64) -> (u64, u64) {
    (a.min(b), a.max(b))
}

/// Independent search minimizing the larger machine load directly.
fn min_makespan_enumeration<T: Time>(jobs: &JobSet<T>) -> (u64, (u64, u64)) {
    let n = jobs.len();
    debug_assert!(n <= BRUTE_FORCE_MAX_JOBS);
    let times = jobs.times_u64();
    let total = jobs.total_sum();
    let mut best = u64::MAX;
    let mut best_loads = (0, 0);
    for mask in 0u32..1 << (n - 1) {
        let mut sum1 = times[0];
        for bit in 0..n - 1 {
            if mask & (1 << bit) != 0 {
                sum1 += times[bit + 1];
            }
        }
        let load = sum1.max(total - sum1);
        if load < best {
            best = load;
            best_loads = ordered(sum1, total - sum1);
        }
    }
    (best, best_loads)
}
