//! Benchmark grid: runs dp1, dp2 and the approximation on generated
//! instances and tabulates time, peak layer size and makespan.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Deserialize;
use twoflow::{approx_solve_with, solve_exact, Algo, DpOutcome, Epsilon, Instance, SolveOptions};

use crate::error::{BenchError, FormatError};
use crate::generate::{generate, Fraction, GenSpec};

fn default_eps() -> String {
    "1/4".into()
}

fn default_timeout() -> u64 {
    10_000
}

fn default_zero_r() -> String {
    "0".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub r_max: u64,
    pub t_max: u64,
    #[serde(default = "default_zero_r")]
    pub zero_r: String,
    pub seeds: Vec<u64>,
    #[serde(default = "default_eps")]
    pub eps: String,
    #[serde(default = "default_timeout")]
    pub timeout_ms: u64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub cells: Vec<CellSpec>,
}

pub fn load_grid(text: &str) -> Result<Grid, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Run {
    Done {
        millis: u128,
        peak_states: usize,
        makespan: u64,
    },
    TimedOut,
}

impl Run {
    pub fn makespan(&self) -> Option<u64> {
        match self {
            Run::Done { makespan, .. } => Some(*makespan),
            Run::TimedOut => None,
        }
    }

    pub fn peak_states(&self) -> Option<usize> {
        match self {
            Run::Done { peak_states, .. } => Some(*peak_states),
            Run::TimedOut => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub cell: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub r_total: u64,
    pub t_total: u64,
    pub dp1: Run,
    pub dp2: Run,
    pub approx: Run,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<Row>,
}

fn timed(
    cell: &CellSpec,
    seed: u64,
    f: impl FnOnce(&SolveOptions) -> twoflow::Result<(usize, u64)>,
) -> Result<Run, BenchError> {
    let start = Instant::now();
    let opts = SolveOptions::default()
        .value_only()
        .with_deadline(start + Duration::from_millis(cell.timeout_ms));
    match f(&opts) {
        Ok((peak_states, makespan)) => Ok(Run::Done {
            millis: start.elapsed().as_millis(),
            peak_states,
            makespan,
        }),
        Err(twoflow::Error::Timeout) => Ok(Run::TimedOut),
        Err(source) => Err(BenchError::Solver {
            cell: cell.name.clone(),
            seed,
            source,
        }),
    }
}

fn exact(instance: &Instance, algo: Algo, opts: &SolveOptions) -> twoflow::Result<(usize, u64)> {
    let DpOutcome {
        makespan, stats, ..
    } = solve_exact(instance, algo, opts)?;
    Ok((stats.peak_layer(), makespan))
}

/// Runs every cell of `grid`. Fails if dp1 and dp2 disagree on any
/// instance where both finished.
pub fn run_bench(grid: &Grid) -> Result<Report, BenchError> {
    let mut report = Report::default();
    for cell in &grid.cells {
        let bad = |field: &str, msg: String| {
            BenchError::Grid(FormatError::Invalid {
                field: format!("{}.{field}", cell.name),
                msg,
            })
        };
        let zero_r: Fraction = cell.zero_r.parse().map_err(|e| bad("zero_r", e))?;
        let eps: Epsilon = cell.eps.parse().map_err(|e: twoflow::Error| bad("eps", e.to_string()))?;
        if cell.m == 0 {
            return Err(bad("m", "m must be ≥ 1".into()));
        }
        for &seed in &cell.seeds {
            let spec = GenSpec {
                n: cell.n,
                m: cell.m,
                r_max: cell.r_max,
                t_max: cell.t_max,
                zero_r,
                seed,
            };
            let instance = generate(&spec).map_err(|e| bad("bounds", e.to_string()))?;
            let dp1 = timed(cell, seed, |o| exact(&instance, Algo::Dp1, o))?;
            let dp2 = timed(cell, seed, |o| exact(&instance, Algo::Dp2, o))?;
            let approx = timed(cell, seed, |o| {
                let out = approx_solve_with(&instance, eps, Algo::Auto, o)?;
                Ok((out.stats.peak_layer(), out.schedule.makespan))
            })?;
            if let (Some(a), Some(b)) = (dp1.makespan(), dp2.makespan()) {
                if a != b {
                    return Err(BenchError::Disagreement {
                        cell: cell.name.clone(),
                        seed,
                        dp1: a,
                        dp2: b,
                    });
                }
            }
            report.rows.push(Row {
                cell: cell.name.clone(),
                seed,
                n: instance.n(),
                m: instance.m(),
                r_total: instance.r_total(),
                t_total: instance.t_total(),
                dp1,
                dp2,
                approx,
            });
        }
    }
    Ok(report)
}

impl Report {
    /// Tab-separated table with a header line. Timed-out runs show
    /// `timeout` in their time column and `-` elsewhere.
    pub fn render(&self) -> String {
        let mut out = String::from(
            "cell\tseed\tn\tm\tR0\tT0\tdp1_ms\tdp1_peak\tdp1_makespan\tdp2_ms\tdp2_peak\tdp2_makespan\tapprox_ms\tapprox_peak\tapprox_makespan\n",
        );
        let cols = |r: &Run| match r {
            Run::Done {
                millis,
                peak_states,
                makespan,
            } => format!("{millis}\t{peak_states}\t{makespan}"),
            Run::TimedOut => "timeout\t-\t-".to_string(),
        };
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                row.cell,
                row.seed,
                row.n,
                row.m,
                row.r_total,
                row.t_total,
                cols(&row.dp1),
                cols(&row.dp2),
                cols(&row.approx)
            );
        }
        out
    }
}
