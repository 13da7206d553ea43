//! Brute-force optima for small instances.
//!
//! Nothing here touches the dynamic programs: `oracle_solve` enumerates job
//! partitions and evaluates each one directly, and `oracle_single_shop`
//! tries every execution order on one shop.

use crate::error::{Error, Result};
use crate::model::{assignment_makespan, evaluate_schedule, simulate_shop, Instance, Job, Schedule, Time};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Largest job count `oracle_single_shop` accepts.
pub const SINGLE_SHOP_MAX_JOBS: usize = 8;

/// Number of assignments with job `i` restricted to shops
/// `0..=1 + max(shops used by jobs < i)`: the partitions of `n` jobs into
/// at most `m` blocks. Saturates at `u128::MAX`.
pub fn pruned_count(n: usize, m: usize) -> u128 {
    // ways[b] = number of prefixes using exactly b shops.
    let mut ways = vec![0u128; m + 1];
    ways[0] = 1;
    for _ in 0..n {
        for b in (1..=m).rev() {
            ways[b] = ways[b]
                .saturating_mul(b as u128)
                .saturating_add(ways[b - 1]);
        }
        ways[0] = 0;
    }
    ways.iter().fold(0u128, |a, &w| a.saturating_add(w))
}

/// `m^n`, saturating.
pub fn full_count(n: usize, m: usize) -> u128 {
    (0..n).fold(1u128, |a, _| a.saturating_mul(m as u128))
}

/// Exact optimum by enumerating partitions under shop-symmetry pruning.
/// Ties go to the lexicographically smallest assignment.
pub fn oracle_solve(instance: &Instance, budget: u128) -> Result<Schedule> {
    oracle_solve_with(instance, budget, true)
}

/// As [`oracle_solve`]; with `prune` off every one of the `m^n`
/// assignments is evaluated.
pub fn oracle_solve_with(instance: &Instance, budget: u128, prune: bool) -> Result<Schedule> {
    let (n, m) = (instance.n(), instance.m());
    let required = if prune {
        pruned_count(n, m)
    } else {
        full_count(n, m)
    };
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if n == 0 {
        return Ok(Schedule::empty(m));
    }

    let mut assignment = vec![0usize; n];
    let mut best: Option<(Time, Vec<usize>)> = None;
    loop {
        let c = assignment_makespan(instance, &assignment)?;
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, assignment.clone()));
        }
        if !next_assignment(&mut assignment, m, prune) {
            break;
        }
    }
    let (_, assignment) = best.expect("at least one assignment");
    evaluate_schedule(instance, &assignment)
}

/// Advances to the lexicographically next assignment; `false` when done.
fn next_assignment(a: &mut [usize], m: usize, prune: bool) -> bool {
    for i in (0..a.len()).rev() {
        let limit = if prune {
            let used = a[..i].iter().copied().max().map_or(0, |s| s + 1);
            used.min(m - 1)
        } else {
            m - 1
        };
        if a[i] < limit {
            a[i] += 1;
            a[i + 1..].iter_mut().for_each(|s| *s = 0);
            return true;
        }
    }
    false
}

/// Minimum completion time over all execution orders of `jobs` on one shop.
pub fn oracle_single_shop(jobs: &[Job]) -> Result<Time> {
    if jobs.len() > SINGLE_SHOP_MAX_JOBS {
        return Err(Error::TooManyJobs {
            n: jobs.len(),
            max: SINGLE_SHOP_MAX_JOBS,
        });
    }
    let mut seq = jobs.to_vec();
    let mut best = simulate_shop(&seq)?.1;
    // Heap's algorithm, iterative form.
    let n = seq.len();
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                seq.swap(0, i);
            } else {
                seq.swap(c[i], i);
            }
            best = best.min(simulate_shop(&seq)?.1);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // Set partitions of 4 items into at most 2 blocks: 1 + 7.
        assert_eq!(pruned_count(4, 2), 8);
        // Bell number B(5) = 52 with m >= n.
        assert_eq!(pruned_count(5, 5), 52);
        assert_eq!(pruned_count(0, 3), 1);
        assert_eq!(full_count(3, 3), 27);
    }

    #[test]
    fn enumeration_visits_exactly_the_counted_assignments() {
        for (n, m) in [(1, 1), (4, 2), (5, 3), (3, 5)] {
            for prune in [true, false] {
                let mut a = vec![0; n];
                let mut seen = 1u128;
                while next_assignment(&mut a, m, prune) {
                    seen += 1;
                }
                let want = if prune { pruned_count(n, m) } else { full_count(n, m) };
                assert_eq!(seen, want, "n={n} m={m} prune={prune}");
            }
        }
    }

    #[test]
    fn solve_examples() {
        let inst = Instance::from_pairs(&[(1, 1), (1, 1)], 2).unwrap();
        let s = oracle_solve(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.makespan, 2);
        assert_eq!(s.assignment, vec![0, 1]);

        let inst = Instance::from_pairs(&[(2, 1), (1, 2), (2, 2)], 2).unwrap();
        assert_eq!(oracle_solve(&inst, DEFAULT_BUDGET).unwrap().makespan, 4);

        let inst = Instance::from_pairs(&[(4, 4)], 3).unwrap();
        assert_eq!(oracle_solve(&inst, DEFAULT_BUDGET).unwrap().makespan, 8);
    }

    #[test]
    fn budget_error_names_required_count() {
        let inst = Instance::from_pairs(&[(1, 1); 4], 2).unwrap();
        assert_eq!(
            oracle_solve(&inst, 7),
            Err(Error::BudgetExceeded {
                required: 8,
                budget: 7
            })
        );
        assert!(oracle_solve(&inst, 8).is_ok());
    }

    #[test]
    fn single_shop_examples() {
        let j = |r, t| Job::new(r, t);
        assert_eq!(oracle_single_shop(&[j(1, 2), j(2, 1)]).unwrap(), 4);
        assert_eq!(oracle_single_shop(&[]).unwrap(), 0);
        assert_eq!(oracle_single_shop(&[j(3, 3)]).unwrap(), 6);
        assert!(matches!(
            oracle_single_shop(&[j(1, 1); 9]),
            Err(Error::TooManyJobs { n: 9, max: 8 })
        ));
    }
}
