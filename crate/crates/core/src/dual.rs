//! Dual jobs `(r, t) -> (t, r)`.
//!
//! Reversing a shop's sequence and swapping the two stages of every job
//! preserves the shop's completion time, so an instance and its dual share
//! the same optimal makespan and schedules convert freely between them.

use crate::error::{Error, Result};
use crate::model::{Instance, Job, Schedule};

pub fn dual_job(job: Job) -> Job {
    Job { r: job.t, t: job.r }
}

/// Same shop count, every job replaced by its dual at the same index.
pub fn dual_instance(instance: &Instance) -> Instance {
    let jobs = instance.jobs().iter().copied().map(dual_job).collect();
    // Sums only swap, so validation cannot fail.
    Instance::new(jobs, instance.m()).expect("dual of a valid instance is valid")
}

/// Converts a schedule of `dual_instance(instance)` into a schedule of
/// `instance` with the same job partition and each shop's order reversed.
pub fn dualize_schedule(instance: &Instance, schedule: &Schedule) -> Result<Schedule> {
    if schedule.assignment.len() != instance.n() {
        return Err(Error::ScheduleShape(format!(
            "schedule covers {} jobs, instance has {}",
            schedule.assignment.len(),
            instance.n()
        )));
    }
    let order = schedule
        .order
        .iter()
        .map(|seq| seq.iter().rev().copied().collect())
        .collect();
    let out = Schedule::from_orders(instance, order)?;
    if out.assignment != schedule.assignment {
        return Err(Error::ScheduleShape(
            "assignment disagrees with shop orders".into(),
        ));
    }
    Ok(out)
}
