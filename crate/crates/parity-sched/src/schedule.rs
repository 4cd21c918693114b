//! Schedule and partition views of a two-machine solution.

use std::fmt;

use crate::jobs::{InstanceError, JobSet};
use crate::time::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Machine {
    M1,
    M2,
}

impl Machine {
    /// 1-based machine id, as printed in output.
    pub fn id(self) -> u8 {
        match self {
            Machine::M1 => 1,
            Machine::M2 => 2,
        }
    }

    pub fn other(self) -> Machine {
        match self {
            Machine::M1 => Machine::M2,
            Machine::M2 => Machine::M1,
        }
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// A complete assignment of jobs to the two machines plus derived metrics.
///
/// `last_job_index` is the 1-based index `L` of the job that finishes at the
/// makespan (the final job on the busier machine; load ties resolve to the
/// machine whose final job has the larger index). `critical_job_count` is the
/// number of jobs on that machine, and `m_value` is `ceil(L / 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMachineSchedule {
    assignment: Vec<Machine>,
    load1: u64,
    load2: u64,
    makespan: u64,
    last_job_index: usize,
    critical_job_count: usize,
    m_value: usize,
}

impl TwoMachineSchedule {
    pub(crate) fn new(
        assignment: Vec<Machine>,
        load1: u64,
        load2: u64,
        last_job_index: usize,
        critical_job_count: usize,
    ) -> Self {
        debug_assert!(!assignment.is_empty());
        debug_assert!(1 <= last_job_index && last_job_index <= assignment.len());
        debug_assert!(1 <= critical_job_count && critical_job_count <= assignment.len());
        TwoMachineSchedule {
            assignment,
            load1,
            load2,
            makespan: load1.max(load2),
            last_job_index,
            critical_job_count,
            m_value: last_job_index.div_ceil(2),
        }
    }

    pub fn assignment(&self) -> &[Machine] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn load(&self, machine: Machine) -> u64 {
        match machine {
            Machine::M1 => self.load1,
            Machine::M2 => self.load2,
        }
    }

    pub fn load1(&self) -> u64 {
        self.load1
    }

    pub fn load2(&self) -> u64 {
        self.load2
    }

    pub fn makespan(&self) -> u64 {
        self.makespan
    }

    /// Absolute difference of the two machine loads.
    pub fn difference(&self) -> u64 {
        self.load1.abs_diff(self.load2)
    }

    pub fn last_job_index(&self) -> usize {
        self.last_job_index
    }

    pub fn critical_job_count(&self) -> usize {
        self.critical_job_count
    }

    pub fn m_value(&self) -> usize {
        self.m_value
    }

    /// Machine on which the last-finishing job runs.
    pub fn critical_machine(&self) -> Machine {
        self.assignment[self.last_job_index - 1]
    }

    /// 0-based indices of the jobs assigned to `machine`, in index order.
    pub fn jobs_on(&self, machine: Machine) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &m)| m == machine)
            .map(|(i, _)| i)
    }
}

/// A bipartition of job indices with cached side sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    side1: Vec<usize>,
    side2: Vec<usize>,
    sum1: u64,
    sum2: u64,
    difference: u64,
}

impl Partition {
    /// Builds the partition whose first side is `side1`; the second side is
    /// the complement. Indices are 0-based.
    pub fn from_side1<T: Time>(jobs: &JobSet<T>, side1: &[usize]) -> Result<Self, InstanceError> {
        let n = jobs.len();
        let mut on_side1 = vec![false; n];
        for &index in side1 {
            if index >= n {
                return Err(InstanceError::IndexOutOfRange { index, n });
            }
            if on_side1[index] {
                return Err(InstanceError::DuplicateIndex(index));
            }
            on_side1[index] = true;
        }
        Ok(Self::from_membership(jobs, &on_side1))
    }

    pub(crate) fn from_membership<T: Time>(jobs: &JobSet<T>, on_side1: &[bool]) -> Self {
        debug_assert_eq!(jobs.len(), on_side1.len());
        let mut side1 = Vec::new();
        let mut side2 = Vec::new();
        let (mut sum1, mut sum2) = (0u64, 0u64);
        for (i, &first) in on_side1.iter().enumerate() {
            if first {
                side1.push(i);
                sum1 += jobs.time_u64(i);
            } else {
                side2.push(i);
                sum2 += jobs.time_u64(i);
            }
        }
        Partition {
            side1,
            side2,
            sum1,
            sum2,
            difference: sum1.abs_diff(sum2),
        }
    }

    pub fn side1(&self) -> &[usize] {
        &self.side1
    }

    pub fn side2(&self) -> &[usize] {
        &self.side2
    }

    pub fn sum1(&self) -> u64 {
        self.sum1
    }

    pub fn sum2(&self) -> u64 {
        self.sum2
    }

    pub fn sums(&self) -> (u64, u64) {
        (self.sum1, self.sum2)
    }

    pub fn difference(&self) -> u64 {
        self.difference
    }

    /// Larger side sum; equals the makespan of the matching schedule.
    pub fn max_sum(&self) -> u64 {
        self.sum1.max(self.sum2)
    }
}

#[cfg(test)]
mod tests {
    use super::{Machine, Partition};
    use crate::jobs::{InstanceError, JobSet};

    #[test]
    fn machine_ids() {
        assert_eq!(Machine::M1.id(), 1);
        assert_eq!(Machine::M2.id(), 2);
        assert_eq!(Machine::M1.other(), Machine::M2);
        assert_eq!(Machine::M2.to_string(), "2");
    }

    #[test]
    fn partition_from_side1() {
        let jobs = JobSet::from_values(vec![9u64, 7, 4, 3, 2]).unwrap();
        let p = Partition::from_side1(&jobs, &[3, 0]).unwrap();
        assert_eq!(p.side1(), &[0, 3]);
        assert_eq!(p.side2(), &[1, 2, 4]);
        assert_eq!(p.sums(), (12, 13));
        assert_eq!(p.difference(), 1);
        assert_eq!(p.max_sum(), 13);
    }

    #[test]
    fn partition_side_may_be_empty() {
        let jobs = JobSet::from_values(vec![5u64]).unwrap();
        let p = Partition::from_side1(&jobs, &[]).unwrap();
        assert_eq!(p.sums(), (0, 5));
        assert_eq!(p.difference(), 5);
    }

    #[test]
    fn partition_rejects_bad_indices() {
        let jobs = JobSet::from_values(vec![5u64, 3]).unwrap();
        assert_eq!(
            Partition::from_side1(&jobs, &[2]),
            Err(InstanceError::IndexOutOfRange { index: 2, n: 2 })
        );
        assert_eq!(
            Partition::from_side1(&jobs, &[1, 1]),
            Err(InstanceError::DuplicateIndex(1))
        );
    }
}
