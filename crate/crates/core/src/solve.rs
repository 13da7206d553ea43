use std::fmt;
use std::str::FromStr;

use crate::dp_asym::solve_dp2_with;
use crate::dp_exact::solve_dp1_with;
use crate::engine::{DpOutcome, SolveOptions};
use crate::model::Instance;

/// Choice of exact solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algo {
    Dp1,
    Dp2,
    #[default]
    Auto,
}

impl Algo {
    /// Resolves `Auto`: the canonical program when the smaller of the two
    /// work totals is at most the square root of the larger, else the
    /// exact program.
    pub fn resolve(self, instance: &Instance) -> Algo {
        match self {
            Algo::Auto => {
                let (r0, t0) = (instance.r_total() as u128, instance.t_total() as u128);
                let (lo, hi) = (r0.min(t0), r0.max(t0));
                if lo * lo <= hi {
                    Algo::Dp2
                } else {
                    Algo::Dp1
                }
            }
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algo::Dp1 => "dp1",
            Algo::Dp2 => "dp2",
            Algo::Auto => "auto",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dp1" => Ok(Algo::Dp1),
            "dp2" => Ok(Algo::Dp2),
            "auto" => Ok(Algo::Auto),
            _ => Err(format!("unknown algorithm {s:?} (expected dp1, dp2 or auto)")),
        }
    }
}

/// Runs the exact solver selected by `algo`.
pub fn solve_exact(
    instance: &Instance,
    algo: Algo,
    opts: &SolveOptions,
) -> crate::Result<DpOutcome> {
    match algo.resolve(instance) {
        Algo::Dp1 => solve_dp1_with(instance, opts),
        _ => solve_dp2_with(instance, opts),
    }
}
