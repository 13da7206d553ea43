//! Jobs, instances, Johnson ordering and single-flowshop simulation.
//!
//! A two-stage job `(r, t)` runs its R-operation on the R-processor of a
//! flowshop and then its T-operation on the T-processor of the same shop.
//! Once the jobs of a shop are fixed, Johnson's order is an optimal execution
//! order, so a schedule is fully described by the job-to-shop assignment.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Durations and completion times, in abstract integer time units.
pub type Time = u64;

/// Largest value any duration, sum or completion time may take (63 bits).
pub const MAX_TIME: Time = i64::MAX as Time;

#[inline]
pub(crate) fn add(a: Time, b: Time) -> Result<Time> {
    match a.checked_add(b) {
        Some(v) if v <= MAX_TIME => Ok(v),
        _ => Err(Error::Overflow),
    }
}

/// A two-stage job: `r` units on the R-processor, then `t` on the T-processor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Job {
    pub r: Time,
    pub t: Time,
}

impl Job {
    pub const fn new(r: Time, t: Time) -> Self {
        Job { r, t }
    }
}

impl From<(Time, Time)> for Job {
    fn from((r, t): (Time, Time)) -> Self {
        Job { r, t }
    }
}

/// A job list together with the number of identical flowshops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    jobs: Vec<Job>,
    m: usize,
    r_total: Time,
    t_total: Time,
}

impl Instance {
    /// Validates `m >= 1` and that every duration and both duration sums
    /// fit in 63 bits.
    pub fn new(jobs: Vec<Job>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInstance("m must be >= 1".into()));
        }
        let mut r_total: Time = 0;
        let mut t_total: Time = 0;
        for (i, job) in jobs.iter().enumerate() {
            if job.r > MAX_TIME || job.t > MAX_TIME {
                return Err(Error::InvalidInstance(format!(
                    "job {i}: duration exceeds the 63-bit range"
                )));
            }
            r_total = add(r_total, job.r).map_err(|_| {
                Error::InvalidInstance("sum of R-times exceeds the 63-bit range".into())
            })?;
            t_total = add(t_total, job.t).map_err(|_| {
                Error::InvalidInstance("sum of T-times exceeds the 63-bit range".into())
            })?;
        }
        Ok(Instance {
            jobs,
            m,
            r_total,
            t_total,
        })
    }

    pub fn from_pairs(pairs: &[(Time, Time)], m: usize) -> Result<Self> {
        Instance::new(pairs.iter().copied().map(Job::from).collect(), m)
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sum of all R-times.
    pub fn r_total(&self) -> Time {
        self.r_total
    }

    /// Sum of all T-times.
    pub fn t_total(&self) -> Time {
        self.t_total
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// `max(ceil(R0/m), ceil(T0/m), max_i(r_i + t_i))`, a lower bound on
    /// every schedule's makespan.
    pub fn lower_bound(&self) -> Time {
        let m = self.m as Time;
        let longest = self.jobs.iter().map(|j| j.r + j.t).max().unwrap_or(0);
        self.r_total
            .div_ceil(m)
            .max(self.t_total.div_ceil(m))
            .max(longest)
    }

    /// Job indices of the whole instance in Johnson's order.
    pub fn johnson_order(&self) -> Vec<usize> {
        let indexed: Vec<(usize, Job)> = self.jobs.iter().copied().enumerate().collect();
        johnson_order(&indexed)
    }
}

/// Status of one flowshop: R-processor completion `rho` and the lag
/// `delta = tau - rho` of the T-processor completion behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ShopStatus {
    pub rho: Time,
    pub delta: Time,
}

impl ShopStatus {
    pub const IDLE: ShopStatus = ShopStatus { rho: 0, delta: 0 };

    pub const fn new(rho: Time, delta: Time) -> Self {
        ShopStatus { rho, delta }
    }

    /// T-processor completion time.
    pub fn tau(&self) -> Result<Time> {
        add(self.rho, self.delta)
    }
}

/// Completion times of one flowshop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ShopCompletion {
    pub rho: Time,
    pub tau: Time,
}

fn johnson_cmp(a: &(usize, Job), b: &(usize, Job)) -> Ordering {
    let first_group = |j: &Job| j.r <= j.t;
    match (first_group(&a.1), first_group(&b.1)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => a.1.r.cmp(&b.1.r).then(a.0.cmp(&b.0)),
        (false, false) => b.1.t.cmp(&a.1.t).then(a.0.cmp(&b.0)),
    }
}

/// Orders `(index, job)` pairs by Johnson's rule and returns the indices.
///
/// Jobs with `r <= t` come first by nondecreasing `r`, then jobs with
/// `r > t` by nonincreasing `t`. Equal keys keep ascending index, which
/// makes the order of any subset the restriction of the order of the whole.
pub fn johnson_order(jobs: &[(usize, Job)]) -> Vec<usize> {
    let mut sorted = jobs.to_vec();
    sorted.sort_by(johnson_cmp);
    sorted.into_iter().map(|(i, _)| i).collect()
}

/// Appends `job` to a shop in status `status`.
pub fn push_job(status: ShopStatus, job: Job) -> Result<ShopStatus> {
    let rho = add(status.rho, job.r)?;
    let delta = add(status.delta.max(job.r) - job.r, job.t)?;
    Ok(ShopStatus { rho, delta })
}

/// Runs `sequence` on one flowshop with no idle R-processor time and every
/// T-operation started as early as possible. Returns `(rho, tau)`.
pub fn simulate_shop(sequence: &[Job]) -> Result<(Time, Time)> {
    // rho_start: start of the current R-operation; t_start: start of the
    // previous T-operation.
    let mut rho_start: Time = 0;
    let mut prev: Option<(Time, Time)> = None;
    for job in sequence {
        let r_done = add(rho_start, job.r)?;
        let t_start = match prev {
            None => r_done,
            Some((t_start, t)) => r_done.max(add(t_start, t)?),
        };
        prev = Some((t_start, job.t));
        rho_start = r_done;
    }
    let tau = match prev {
        None => 0,
        Some((t_start, t)) => add(t_start, t)?,
    };
    Ok((rho_start, tau))
}

/// A complete schedule: shop assignment, per-shop execution order and
/// completion times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub assignment: Vec<usize>,
    pub order: Vec<Vec<usize>>,
    pub completions: Vec<ShopCompletion>,
    pub makespan: Time,
}

impl Schedule {
    /// The empty schedule on `m` shops.
    pub fn empty(m: usize) -> Self {
        Schedule {
            assignment: Vec::new(),
            order: vec![Vec::new(); m],
            completions: vec![ShopCompletion::default(); m],
            makespan: 0,
        }
    }

    /// Builds a schedule from explicit per-shop execution orders, which
    /// must partition the job indices of `instance`.
    pub fn from_orders(instance: &Instance, order: Vec<Vec<usize>>) -> Result<Self> {
        if order.len() != instance.m() {
            return Err(Error::ScheduleShape(format!(
                "{} shop orders for {} shops",
                order.len(),
                instance.m()
            )));
        }
        let n = instance.n();
        let mut assignment = vec![usize::MAX; n];
        let mut completions = Vec::with_capacity(order.len());
        let mut makespan = 0;
        for (shop, seq) in order.iter().enumerate() {
            let mut jobs = Vec::with_capacity(seq.len());
            for &j in seq {
                if j >= n {
                    return Err(Error::ScheduleShape(format!("job index {j} out of range")));
                }
                if assignment[j] != usize::MAX {
                    return Err(Error::ScheduleShape(format!("job {j} appears twice")));
                }
                assignment[j] = shop;
                jobs.push(instance.jobs()[j]);
            }
            let (rho, tau) = simulate_shop(&jobs)?;
            makespan = makespan.max(tau);
            completions.push(ShopCompletion { rho, tau });
        }
        if let Some(j) = assignment.iter().position(|&s| s == usize::MAX) {
            return Err(Error::ScheduleShape(format!("job {j} is not scheduled")));
        }
        Ok(Schedule {
            assignment,
            order,
            completions,
            makespan,
        })
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }
}

fn shop_orders(instance: &Instance, assignment: &[usize]) -> Result<Vec<Vec<usize>>> {
    let m = instance.m();
    if assignment.len() != instance.n() {
        return Err(Error::ScheduleShape(format!(
            "assignment has {} entries for {} jobs",
            assignment.len(),
            instance.n()
        )));
    }
    let mut buckets: Vec<Vec<(usize, Job)>> = vec![Vec::new(); m];
    for (job, &shop) in assignment.iter().enumerate() {
        if shop >= m {
            return Err(Error::ShopOutOfRange { job, shop, m });
        }
        buckets[shop].push((job, instance.jobs()[job]));
    }
    Ok(buckets.iter().map(|b| johnson_order(b)).collect())
}

/// Evaluates a job-to-shop assignment, running each shop's jobs in
/// Johnson's order.
pub fn evaluate_schedule(instance: &Instance, assignment: &[usize]) -> Result<Schedule> {
    let order = shop_orders(instance, assignment)?;
    Schedule::from_orders(instance, order)
}

/// Makespan of `assignment` without materializing a [`Schedule`].
pub fn assignment_makespan(instance: &Instance, assignment: &[usize]) -> Result<Time> {
    let mut makespan = 0;
    let mut seq = Vec::new();
    for order in shop_orders(instance, assignment)? {
        seq.clear();
        seq.extend(order.iter().map(|&j| instance.jobs()[j]));
        makespan = makespan.max(simulate_shop(&seq)?.1);
    }
    Ok(makespan)
}
