//! Scale-and-round approximation with makespan at most `(1 + eps) * Opt`.
//!
//! Every duration is divided by `K = eps * max(R0, T0) / (n m)` and floored;
//! the scaled instance is solved exactly and its job partition is applied
//! to the original jobs. Rounding costs at most one unit per job and shop
//! position on the scaled side, i.e. `K n <= eps * Opt` on the original side.
//! All floors are taken on cross-multiplied integers, never on a rounded `K`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::engine::{DpStats, SolveOptions};
use crate::error::{Error, Result};
use crate::model::{evaluate_schedule, simulate_shop, Instance, Job, Schedule, Time};
use crate::solve::{solve_exact, Algo};

/// A positive rational `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidEpsilon(format!("{num}/{den}")));
        }
        Ok(Epsilon { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `1 + eps` in lowest terms, as `(numerator, denominator)`.
    pub fn ratio_bound(&self) -> (u128, u128) {
        let (num, den) = (self.num as u128, self.den as u128);
        let top = num + den;
        let g = top.gcd(&den);
        (top / g, den / g)
    }

    /// `1 + eps` rendered as `"a/b"`, or `"a"` when integral.
    pub fn ratio_bound_string(&self) -> String {
        match self.ratio_bound() {
            (a, 1) => a.to_string(),
            (a, b) => format!("{a}/{b}"),
        }
    }

    /// Whether `approx <= (1 + eps) * opt`, compared exactly.
    pub fn within_bound(&self, approx: Time, opt: Time) -> bool {
        self.den as u128 * approx as u128 <= (self.den as u128 + self.num as u128) * opt as u128
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `"NUM/DEN"` or a bare positive integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEpsilon(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num = num.parse().map_err(|_| bad())?;
        let den = den.parse().map_err(|_| bad())?;
        Epsilon::new(num, den).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaled {
    pub instance: Instance,
    /// Set when `K <= 1`: the instance is returned unscaled and should be
    /// solved exactly.
    pub exact_fallback: bool,
}

/// Floors every duration of `instance` by `K = eps * max(R0, T0) / (n m)`.
pub fn scale_instance(instance: &Instance, eps: Epsilon) -> Result<Scaled> {
    let n = instance.n() as u128;
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let t_max = instance.r_total().max(instance.t_total()) as u128;
    let factor = n
        .checked_mul(instance.m() as u128)
        .and_then(|v| v.checked_mul(eps.den() as u128))
        .ok_or(Error::Overflow)?;
    let divisor = (eps.num() as u128)
        .checked_mul(t_max)
        .ok_or(Error::Overflow)?;
    // K <= 1  <=>  num * T_max <= n * m * den
    if divisor <= factor {
        return Ok(Scaled {
            instance: instance.clone(),
            exact_fallback: true,
        });
    }
    let floor_div = |x: Time| -> Result<Time> {
        let q = (x as u128).checked_mul(factor).ok_or(Error::Overflow)? / divisor;
        Time::try_from(q).map_err(|_| Error::Overflow)
    };
    let jobs = instance
        .jobs()
        .iter()
        .map(|j| Ok(Job::new(floor_div(j.r)?, floor_div(j.t)?)))
        .collect::<Result<Vec<_>>>()?;
    let scaled = Instance::new(jobs, instance.m()).map_err(|_| Error::Overflow)?;
    Ok(Scaled {
        instance: scaled,
        exact_fallback: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxOutcome {
    pub schedule: Schedule,
    pub exact_fallback: bool,
    /// The exact solver actually run.
    pub inner: Algo,
    pub stats: DpStats,
}

/// Schedule with makespan at most `(1 + eps)` times the optimum.
pub fn approx_solve(instance: &Instance, eps: Epsilon, inner: Algo) -> Result<Schedule> {
    Ok(approx_solve_with(instance, eps, inner, &SolveOptions::default())?.schedule)
}

pub fn approx_solve_with(
    instance: &Instance,
    eps: Epsilon,
    inner: Algo,
    opts: &SolveOptions,
) -> Result<ApproxOutcome> {
    let opts = SolveOptions {
        value_only: false,
        ..opts.clone()
    };
    if instance.is_empty() {
        return Ok(ApproxOutcome {
            schedule: Schedule::empty(instance.m()),
            exact_fallback: true,
            inner: inner.resolve(instance),
            stats: DpStats::default(),
        });
    }
    let scaled = scale_instance(instance, eps)?;
    let inner = inner.resolve(&scaled.instance);
    let out = solve_exact(&scaled.instance, inner, &opts)?;
    let partition = out.schedule.expect("full mode returns a schedule").assignment;
    let schedule = evaluate_schedule(instance, &partition)?;
    Ok(ApproxOutcome {
        schedule,
        exact_fallback: scaled.exact_fallback,
        inner,
        stats: out.stats,
    })
}

/// Completion times of `sequence` before and after adding one unit to both
/// stages of every job. The second never exceeds the first by more than
/// `sequence.len() + 1`.
pub fn inflate_bound_check(sequence: &[Job]) -> Result<(Time, Time)> {
    let inflated: Vec<Job> = sequence
        .iter()
        .map(|j| Job::new(j.r.saturating_add(1), j.t.saturating_add(1)))
        .collect();
    Ok((simulate_shop(sequence)?.1, simulate_shop(&inflated)?.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(s: &str) -> Epsilon {
        s.parse().unwrap()
    }

    #[test]
    fn epsilon_parsing() {
        assert_eq!(eps("1/4"), Epsilon::new(1, 4).unwrap());
        assert_eq!(eps("2"), Epsilon::new(2, 1).unwrap());
        assert!("0/3".parse::<Epsilon>().is_err());
        assert!("1/0".parse::<Epsilon>().is_err());
        assert!("-1/2".parse::<Epsilon>().is_err());
        assert!("0.5".parse::<Epsilon>().is_err());
        assert_eq!(eps("1/4").ratio_bound_string(), "5/4");
        assert_eq!(eps("2/4").ratio_bound_string(), "3/2");
        assert_eq!(eps("1").ratio_bound_string(), "2");
    }

    #[test]
    fn scale_example() {
        let inst = Instance::from_pairs(&[(3, 1), (1, 3), (2, 2), (4, 2)], 2).unwrap();
        let s = scale_instance(&inst, eps("1/1")).unwrap();
        assert!(!s.exact_fallback);
        let got: Vec<_> = s.instance.jobs().iter().map(|j| (j.r, j.t)).collect();
        assert_eq!(got, vec![(2, 0), (0, 2), (1, 1), (3, 1)]);
    }

    #[test]
    fn scale_fallback_when_k_at_most_one() {
        let inst = Instance::from_pairs(&[(1, 1), (1, 1)], 2).unwrap();
        let s = scale_instance(&inst, eps("1/2")).unwrap();
        assert!(s.exact_fallback);
        assert_eq!(s.instance, inst);
    }

    #[test]
    fn huge_epsilon_rounds_everything_to_zero() {
        let inst = Instance::from_pairs(&[(3, 1), (1, 3), (2, 2)], 2).unwrap();
        let s = scale_instance(&inst, eps("1000")).unwrap();
        assert!(s.instance.jobs().iter().all(|j| j.r == 0 && j.t == 0));
        let sched = approx_solve(&inst, eps("1000"), Algo::Dp1).unwrap();
        assert_eq!(sched.assignment.len(), 3);
    }

    #[test]
    fn scale_rejects_empty() {
        let inst = Instance::new(vec![], 2).unwrap();
        assert_eq!(scale_instance(&inst, eps("1")), Err(Error::EmptyInstance));
    }

    #[test]
    fn approx_examples() {
        let inst = Instance::from_pairs(&[(1, 1), (1, 1)], 2).unwrap();
        let out = approx_solve_with(&inst, eps("1/2"), Algo::Auto, &SolveOptions::default()).unwrap();
        assert!(out.exact_fallback);
        assert_eq!(out.schedule.makespan, 2);

        let inst = Instance::from_pairs(&[(2, 1), (1, 2), (2, 2)], 2).unwrap();
        let s = approx_solve(&inst, eps("1/4"), Algo::Dp1).unwrap();
        assert!(s.makespan <= 5 && s.makespan >= 4);

        let inst = Instance::new(vec![], 2).unwrap();
        assert_eq!(approx_solve(&inst, eps("1/3"), Algo::Dp2).unwrap().makespan, 0);
    }

    #[test]
    fn scaled_totals_stay_below_nm_over_eps() {
        let inst = Instance::from_pairs(&[(900, 13), (400, 77), (1000, 5), (1, 1)], 3).unwrap();
        let e = eps("1/2");
        let s = scale_instance(&inst, e).unwrap();
        let bound = (inst.n() * inst.m()) as u64 * e.den() / e.num();
        assert!(s.instance.r_total() <= bound);
        assert!(s.instance.t_total() <= bound);
    }

    #[test]
    fn inflate_examples() {
        let (a, b) = inflate_bound_check(&[Job::new(1, 2), Job::new(2, 1)]).unwrap();
        assert_eq!((a, b), (4, 7));
        let (a, b) = inflate_bound_check(&[Job::new(0, 0)]).unwrap();
        assert_eq!((a, b), (0, 2));
    }

    #[test]
    fn within_bound_is_exact() {
        let e = eps("1/4");
        assert!(e.within_bound(5, 4));
        assert!(!e.within_bound(6, 4));
        assert!(e.within_bound(0, 0));
    }
}
