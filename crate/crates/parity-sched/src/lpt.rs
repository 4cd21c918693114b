//! Longest-processing-time list scheduling on two identical machines.

use thiserror::Error;

use crate::jobs::JobSet;
use crate::schedule::{Machine, Partition, TwoMachineSchedule};
use crate::time::Time;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("schedule covers {schedule_jobs} jobs but the job set has {jobs}")]
    MismatchedInstance { schedule_jobs: usize, jobs: usize },
}

/// Runs the LPT rule: jobs in non-increasing time order, each placed on the
/// machine with the smaller current load.
///
/// Deterministic tie-breaks keep every derived metric reproducible:
/// equal loads send the next job to machine 1, and if both machines finish
/// at the same time the last-finishing job is taken from the machine whose
/// final job has the larger index.
pub fn lpt_schedule<T: Time>(jobs: &JobSet<T>) -> TwoMachineSchedule {
    let n = jobs.len();
    let mut assignment = Vec::with_capacity(n);
    let (mut load1, mut load2) = (0u64, 0u64);
    let (mut last1, mut last2) = (None, None);
    for (i, &t) in jobs.times().iter().enumerate() {
        let t: u64 = t.into();
        if load1 <= load2 {
            assignment.push(Machine::M1);
            load1 += t;
            last1 = Some(i);
        } else {
            assignment.push(Machine::M2);
            load2 += t;
            last2 = Some(i);
        }
    }
    let critical = match load1.cmp(&load2) {
        std::cmp::Ordering::Greater => Machine::M1,
        std::cmp::Ordering::Less => Machine::M2,
        // Loads can only tie when both machines hold at least one job.
        std::cmp::Ordering::Equal => {
            if last2 > last1 {
                Machine::M2
            } else {
                Machine::M1
            }
        }
    };
    let last = match critical {
        Machine::M1 => last1,
        Machine::M2 => last2,
    }
    .expect("critical machine holds at least one job");
    let critical_job_count = assignment.iter().filter(|&&m| m == critical).count();
    TwoMachineSchedule::new(assignment, load1, load2, last + 1, critical_job_count)
}

/// Reads a schedule back as a partition of job indices.
pub fn schedule_to_partition<T: Time>(
    schedule: &TwoMachineSchedule,
    jobs: &JobSet<T>,
) -> Result<Partition, ScheduleError> {
    if schedule.len() != jobs.len() {
        return Err(ScheduleError::MismatchedInstance {
            schedule_jobs: schedule.len(),
            jobs: jobs.len(),
        });
    }
    let on_side1: Vec<bool> = schedule
        .assignment()
        .iter()
        .map(|&m| m == Machine::M1)
        .collect();
    let partition = Partition::from_membership(jobs, &on_side1);
    debug_assert_eq!(partition.sums(), (schedule.load1(), schedule.load2()));
    Ok(partition)
}
