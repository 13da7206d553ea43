//! Exact layered dynamic program over shop statuses.
//!
//! A state after `k` jobs is the tuple of `(rho, delta)` statuses of all `m`
//! shops. Because R-processors never idle, `rho_1` follows from the other
//! `rho` values and the prefix R-work, and only the smallest feasible
//! `delta_1` has to be stored for each remaining `2m - 2` coordinates.
//! Runs in `O(n m^2 R0^(m-1) T0^(m-1))` time in the worst case.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::engine::{self, sort_with_perm, DpOutcome, Entry, Layer, Perm, SolveOptions, StateSpace};
use crate::error::{Error, Result};
use crate::model::{push_job, Instance, Job, Schedule, ShopStatus, Time};

/// Statuses of shops `2..=m`, flattened as `[rho_2, delta_2, ..., rho_m, delta_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DpKey(pub SmallVec<[Time; 8]>);

impl DpKey {
    pub fn from_statuses(statuses: &[ShopStatus]) -> Self {
        DpKey(statuses.iter().flat_map(|s| [s.rho, s.delta]).collect())
    }

    /// Status of shop position `h` in `1..m` (position 0 is not stored).
    pub fn status(&self, h: usize) -> ShopStatus {
        ShopStatus::new(self.0[2 * (h - 1)], self.0[2 * h - 1])
    }

    pub fn rho_sum(&self) -> Result<Time> {
        self.0
            .iter()
            .step_by(2)
            .try_fold(0, |acc: Time, &r| acc.checked_add(r).ok_or(Error::Overflow))
    }
}

pub type DpEntry = Entry<()>;
pub type DpLayer = Layer<DpKey, ()>;

/// Configuration of the exact program for a fixed number of shops.
#[derive(Debug, Clone, Copy)]
pub struct ExactDp {
    m: usize,
    canonical: bool,
}

fn canonical_cmp(a: &ShopStatus, b: &ShopStatus) -> Ordering {
    b.rho.cmp(&a.rho).then(b.delta.cmp(&a.delta))
}

impl ExactDp {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "at least one shop");
        ExactDp {
            m,
            canonical: false,
        }
    }

    /// Sort shop statuses (largest `rho` first) before keying, merging
    /// states that differ only by a relabeling of the shops.
    pub fn with_canonical(mut self, canonical: bool) -> Self {
        self.canonical = canonical;
        self
    }

    /// Layer 0: all shops idle.
    pub fn initial_layer(&self) -> DpLayer {
        engine::root_layer(self)
    }

    /// Real statuses of all shops for a stored state after `r_done` units
    /// of R-work.
    pub fn statuses(&self, key: &DpKey, delta1: Time, r_done: Time) -> Result<SmallVec<[ShopStatus; 8]>> {
        let rest = key.rho_sum()?;
        let rho1 = r_done.checked_sub(rest).ok_or(Error::Overflow)?;
        let mut out = SmallVec::with_capacity(self.m);
        out.push(ShopStatus::new(rho1, delta1));
        out.extend((1..self.m).map(|h| key.status(h)));
        Ok(out)
    }

    /// Places `job` on every shop of every state in `layer`, where `r_done`
    /// is the R-work of the jobs already in `layer`, and keeps the smallest
    /// `delta_1` per key.
    pub fn expand_layer(&self, layer: &DpLayer, job: Job, r_done: Time) -> Result<DpLayer> {
        engine::expand(self, layer, job, r_done, None)
    }
}

impl StateSpace for ExactDp {
    type Key = DpKey;
    type Payload = ();

    fn m(&self) -> usize {
        self.m
    }

    fn root(&self) -> (DpKey, ()) {
        (DpKey(SmallVec::from_elem(0, 2 * (self.m - 1))), ())
    }

    fn successors(
        &self,
        key: &DpKey,
        entry: &DpEntry,
        pred: u32,
        job: Job,
        r_done: Time,
        out: &mut Vec<(DpKey, DpEntry)>,
    ) -> Result<()> {
        let current = self.statuses(key, entry.delta1, r_done)?;
        for d in 0..self.m {
            let mut next = current.clone();
            next[d] = push_job(next[d], job)?;
            let perm = if self.canonical {
                sort_with_perm(&mut next, canonical_cmp)
            } else {
                Perm::new()
            };
            out.push((
                DpKey::from_statuses(&next[1..]),
                Entry {
                    delta1: next[0].delta,
                    dest: d as u32,
                    pred,
                    perm,
                    payload: (),
                },
            ));
        }
        Ok(())
    }

    fn makespan(&self, key: &DpKey, entry: &DpEntry, r_done: Time) -> Result<Time> {
        self.statuses(key, entry.delta1, r_done)?
            .iter()
            .try_fold(0, |acc, s| Ok(acc.max(s.tau()?)))
    }
}

/// Optimal schedule by the exact layered program.
pub fn solve_dp1(instance: &Instance) -> Result<Schedule> {
    let out = solve_dp1_with(instance, &SolveOptions::default())?;
    Ok(out.schedule.expect("full mode returns a schedule"))
}

pub fn solve_dp1_with(instance: &Instance, opts: &SolveOptions) -> Result<DpOutcome> {
    let space = ExactDp::new(instance.m()).with_canonical(opts.canonical);
    engine::run(&space, instance, opts)
}
