//! Canonical dynamic program for instances whose T-work dwarfs their R-work.
//!
//! Shops are kept sorted by nonincreasing R-completion, which bounds the
//! R-completion at position `h` by `R0 / h`. A shop whose T-completion has
//! reached `R0` can never again wait for its R-processor, so its status is
//! compressed into a saturated pair that only tracks `tau - R0`. Instances
//! with more R-work than T-work are solved through their dual.

use smallvec::SmallVec;

use crate::dual::{dual_instance, dualize_schedule};
use crate::engine::{self, sort_with_perm, DpOutcome, Entry, Layer, SolveOptions, StateSpace};
use crate::error::{Error, Result};
use crate::model::{add, push_job, Instance, Job, Schedule, ShopStatus, Time};

/// Compressed status of the shop at a fixed canonical position `h`.
///
/// Normal: `rho_code <= R0 / h`, `rho_code + delta_code < R0`, the codes are
/// the real status. Saturated: `rho_code = R0 / h + 1` and the real
/// T-completion is `R0 + delta_code`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CappedPair {
    pub rho_code: Time,
    pub delta_code: Time,
}

impl CappedPair {
    pub fn is_saturated(&self, h: usize, r0: Time) -> bool {
        self.rho_code == saturation_code(h, r0)
    }

    /// Real status, taking `rho_actual` as the R-completion of a saturated
    /// shop. Normal pairs ignore `rho_actual`.
    pub fn decode(&self, h: usize, r0: Time, rho_actual: Time) -> Result<ShopStatus> {
        if self.is_saturated(h, r0) {
            let tau = add(r0, self.delta_code)?;
            let delta = tau.checked_sub(rho_actual).ok_or(Error::Overflow)?;
            Ok(ShopStatus::new(rho_actual, delta))
        } else {
            Ok(ShopStatus::new(self.rho_code, self.delta_code))
        }
    }
}

fn saturation_code(h: usize, r0: Time) -> Time {
    r0 / h as Time + 1
}

/// Compresses the real status of the shop at 1-based position `h`.
pub fn encode_pair(status: ShopStatus, h: usize, r0: Time) -> Result<CappedPair> {
    let bound = r0 / h as Time;
    if status.rho > bound {
        return Err(Error::RhoBound {
            position: h,
            rho: status.rho,
            bound,
        });
    }
    let tau = status.tau()?;
    if tau < r0 {
        Ok(CappedPair {
            rho_code: status.rho,
            delta_code: status.delta,
        })
    } else {
        Ok(CappedPair {
            rho_code: bound + 1,
            delta_code: tau - r0,
        })
    }
}

/// Exact `rho_1` plus the compressed pairs of positions `2..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonicalKey {
    pub rho1: Time,
    pub pairs: SmallVec<[CappedPair; 4]>,
}

/// Real R-completions of positions `2..=m` for the schedule that produced
/// the stored entry. Only saturated positions need them for decoding.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CanonicalPayload {
    pub rho_actual: SmallVec<[Time; 4]>,
}

pub type CanonicalEntry = Entry<CanonicalPayload>;
pub type CanonicalLayer = Layer<CanonicalKey, CanonicalPayload>;

#[derive(Debug, Clone, Copy)]
pub struct CanonicalDp {
    m: usize,
    r0: Time,
}

impl CanonicalDp {
    /// `r0` is the R-work of the whole instance, the saturation threshold.
    pub fn new(m: usize, r0: Time) -> Self {
        assert!(m >= 1, "at least one shop");
        CanonicalDp { m, r0 }
    }

    pub fn initial_layer(&self) -> CanonicalLayer {
        engine::root_layer(self)
    }

    /// Real statuses of all positions of a stored state.
    pub fn statuses(
        &self,
        key: &CanonicalKey,
        entry: &CanonicalEntry,
    ) -> Result<SmallVec<[ShopStatus; 8]>> {
        let mut out = SmallVec::with_capacity(self.m);
        out.push(ShopStatus::new(key.rho1, entry.delta1));
        for (i, pair) in key.pairs.iter().enumerate() {
            out.push(pair.decode(i + 2, self.r0, entry.payload.rho_actual[i])?);
        }
        Ok(out)
    }

    /// Places `job` on every position of every state, re-sorts, re-encodes
    /// and keeps the smallest `delta_1` per key. `r_done` is the R-work of
    /// the jobs already placed.
    pub fn expand_layer_canonical(
        &self,
        layer: &CanonicalLayer,
        job: Job,
        r_done: Time,
    ) -> Result<CanonicalLayer> {
        engine::expand(self, layer, job, r_done, None)
    }
}

impl StateSpace for CanonicalDp {
    type Key = CanonicalKey;
    type Payload = CanonicalPayload;

    fn m(&self) -> usize {
        self.m
    }

    fn root(&self) -> (CanonicalKey, CanonicalPayload) {
        let idle = ShopStatus::IDLE;
        let pairs = (2..=self.m)
            .map(|h| encode_pair(idle, h, self.r0).expect("idle shop is within bounds"))
            .collect();
        (
            CanonicalKey { rho1: 0, pairs },
            CanonicalPayload {
                rho_actual: SmallVec::from_elem(0, self.m - 1),
            },
        )
    }

    fn successors(
        &self,
        key: &CanonicalKey,
        entry: &CanonicalEntry,
        pred: u32,
        job: Job,
        r_done: Time,
        out: &mut Vec<(CanonicalKey, CanonicalEntry)>,
    ) -> Result<()> {
        let current = self.statuses(key, entry)?;
        for d in 0..self.m {
            let mut next = current.clone();
            next[d] = push_job(next[d], job)?;
            let perm = sort_with_perm(&mut next, |a, b| b.rho.cmp(&a.rho));
            debug_assert_eq!(
                next.iter().map(|s| s.rho).sum::<Time>(),
                r_done + job.r,
                "R-work conservation"
            );
            let pairs = next[1..]
                .iter()
                .enumerate()
                .map(|(i, s)| encode_pair(*s, i + 2, self.r0))
                .collect::<Result<_>>()?;
            out.push((
                CanonicalKey {
                    rho1: next[0].rho,
                    pairs,
                },
                Entry {
                    delta1: next[0].delta,
                    dest: d as u32,
                    pred,
                    perm,
                    payload: CanonicalPayload {
                        rho_actual: next[1..].iter().map(|s| s.rho).collect(),
                    },
                },
            ));
        }
        Ok(())
    }

    fn makespan(&self, key: &CanonicalKey, entry: &CanonicalEntry, _r_done: Time) -> Result<Time> {
        self.statuses(key, entry)?
            .iter()
            .try_fold(0, |acc, s| Ok(acc.max(s.tau()?)))
    }
}

/// Optimal schedule by the canonical program, run on the dual instance when
/// the R-work exceeds the T-work.
pub fn solve_dp2(instance: &Instance) -> Result<Schedule> {
    let out = solve_dp2_with(instance, &SolveOptions::default())?;
    Ok(out.schedule.expect("full mode returns a schedule"))
}

pub fn solve_dp2_with(instance: &Instance, opts: &SolveOptions) -> Result<DpOutcome> {
    if instance.r_total() <= instance.t_total() {
        let space = CanonicalDp::new(instance.m(), instance.r_total());
        return engine::run(&space, instance, opts);
    }
    let dual = dual_instance(instance);
    let space = CanonicalDp::new(dual.m(), dual.r_total());
    let mut out = engine::run(&space, &dual, opts)?;
    if let Some(s) = out.schedule.take() {
        out.schedule = Some(dualize_schedule(instance, &s)?);
    }
    Ok(out)
}
