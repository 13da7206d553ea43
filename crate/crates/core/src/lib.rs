//! Makespan minimization for two-stage jobs on identical two-stage
//! flowshops.
//!
//! Each job `(r, t)` needs `r` units on a shop's R-processor followed by `t`
//! units on the same shop's T-processor. The crate provides:
//!
//! - [`model`]: jobs, instances, Johnson ordering and shop simulation;
//! - [`dual`]: the stage-swapping dual and schedule conversion;
//! - [`dp_exact`]: an exact layered dynamic program (`dp1`);
//! - [`dp_asym`]: a canonical, saturating dynamic program for skewed
//!   instances (`dp2`);
//! - [`fptas`]: a `(1 + eps)`-approximation built on either program;
//! - [`oracle`]: brute-force optima for small instances.

pub mod dp_asym;
pub mod dp_exact;
pub mod dual;
pub mod engine;
pub mod error;
pub mod fptas;
pub mod model;
pub mod oracle;
pub mod solve;

pub use dp_asym::{solve_dp2, solve_dp2_with};
pub use dp_exact::{solve_dp1, solve_dp1_with};
pub use dual::{dual_instance, dual_job, dualize_schedule};
pub use engine::{DpOutcome, DpStats, SolveOptions};
pub use error::{Error, Result};
pub use fptas::{approx_solve, approx_solve_with, scale_instance, Epsilon};
pub use model::{
    evaluate_schedule, johnson_order, push_job, simulate_shop, Instance, Job, Schedule,
    ShopCompletion, ShopStatus, Time,
};
pub use oracle::{oracle_single_shop, oracle_solve};
pub use solve::{solve_exact, Algo};
