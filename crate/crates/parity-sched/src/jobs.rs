//! Job sets: validated, sorted instances of the two-machine problem.

use thiserror::Error;

use crate::time::Time;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("job list is empty")]
    EmptyInput,
    #[error("processing times must be at least 1")]
    ZeroTime,
    #[error("total processing time overflows 64-bit arithmetic")]
    SumOverflow,
    #[error("job index {index} out of range for {n} jobs")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("job index {0} listed twice")]
    DuplicateIndex(usize),
}

/// An instance: positive processing times sorted in non-increasing order.
///
/// Job `i` (0-based) has time `times()[i]`, so job 0 is a largest job and
/// job `len() - 1` a smallest. The total sum is checked to fit in `u64` at
/// construction and cached. Sorting is stable, which keeps results
/// deterministic for any input ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSet<T: Time = u64> {
    times: Vec<T>,
    total: u64,
}

impl<T: Time> JobSet<T> {
    pub fn from_values(mut values: Vec<T>) -> Result<Self, InstanceError> {
        if values.is_empty() {
            return Err(InstanceError::EmptyInput);
        }
        let mut total: u64 = 0;
        for &v in &values {
            if v.is_zero() {
                return Err(InstanceError::ZeroTime);
            }
            total = total
                .checked_add(v.into())
                .ok_or(InstanceError::SumOverflow)?;
        }
        values.sort_by(|a, b| b.cmp(a));
        Ok(JobSet {
            times: values,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// Always false; construction rejects empty inputs.
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    /// Time of job `index` (0-based) widened to `u64`.
    pub fn time_u64(&self, index: usize) -> u64 {
        self.times[index].into()
    }

    pub fn times_u64(&self) -> Vec<u64> {
        self.times.iter().map(|&t| t.into()).collect()
    }

    pub fn total_sum(&self) -> u64 {
        self.total
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::{InstanceError, JobSet};

    #[test]
    fn sorts_non_increasing() {
        let jobs = JobSet::from_values(vec![2u64, 9, 4, 7, 3]).unwrap();
        assert_eq!(jobs.times(), &[9, 7, 4, 3, 2]);
        assert_eq!(jobs.total_sum(), 25);
        assert_eq!(jobs.len(), 5);
    }

    #[test]
    fn single_job() {
        let jobs = JobSet::from_values(vec![5u32]).unwrap();
        assert_eq!(jobs.times(), &[5]);
        assert_eq!(jobs.total_sum(), 5);
        assert_eq!(jobs.time_u64(0), 5);
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(
            JobSet::<u64>::from_values(vec![]),
            Err(InstanceError::EmptyInput)
        );
    }

    #[test]
    fn rejects_zero_time() {
        assert_eq!(
            JobSet::from_values(vec![3u64, 0, 1]),
            Err(InstanceError::ZeroTime)
        );
    }

    #[test]
    fn rejects_sum_overflow() {
        assert_eq!(
            JobSet::from_values(vec![u64::MAX, 2]),
            Err(InstanceError::SumOverflow)
        );
    }

    proptest! {
        #[test]
        fn order_insensitive_and_sorted(mut values in proptest::collection::vec(1u64..=1_000_000, 1..40)) {
            let a = JobSet::from_values(values.clone()).unwrap();
            values.reverse();
            let b = JobSet::from_values(values.clone()).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.times().windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(a.total_sum(), values.iter().sum::<u64>());
        }
    }
}
