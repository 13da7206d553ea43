//! JSON documents for instances and solver results.
//!
//! Instance: `{"m": 2, "jobs": [[r, t], ...]}`, job index = array position.
//! Result: `{"makespan", "assignment", "shops": [{"order", "rho", "tau"}],
//! "algo", "optimal", "ratio_bound"}`.

use serde::{Deserialize, Serialize};
use serde_json::Number;
use twoflow::{Instance, Job, Schedule, Time};

use crate::error::FormatError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    m: Number,
    jobs: Vec<Vec<Number>>,
}

#[derive(Serialize)]
struct InstanceOut<'a> {
    m: usize,
    jobs: &'a [[Time; 2]],
}

fn parse_error(e: serde_json::Error) -> FormatError {
    FormatError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    }
}

fn invalid(field: impl Into<String>, msg: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        field: field.into(),
        msg: msg.into(),
    }
}

fn duration(n: &Number, field: String) -> Result<Time, FormatError> {
    if let Some(v) = n.as_u64() {
        if v > twoflow::model::MAX_TIME {
            return Err(invalid(field, "exceeds the 63-bit range"));
        }
        return Ok(v);
    }
    if n.as_i64().is_some() {
        return Err(invalid(field, "negative duration"));
    }
    Err(invalid(field, "must be a nonnegative integer"))
}

pub fn load_instance(text: &str) -> Result<Instance, FormatError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(parse_error)?;
    let m = match raw.m.as_u64() {
        Some(m) if m >= 1 => usize::try_from(m).map_err(|_| invalid("m", "too large"))?,
        _ => return Err(invalid("m", "m must be ≥ 1")),
    };
    let mut jobs = Vec::with_capacity(raw.jobs.len());
    for (i, pair) in raw.jobs.iter().enumerate() {
        if pair.len() != 2 {
            return Err(invalid(format!("jobs[{i}]"), "expected [r, t]"));
        }
        let r = duration(&pair[0], format!("jobs[{i}][0]"))?;
        let t = duration(&pair[1], format!("jobs[{i}][1]"))?;
        jobs.push(Job::new(r, t));
    }
    Instance::new(jobs, m).map_err(|e| invalid("jobs", e.to_string()))
}

pub fn save_instance(instance: &Instance) -> String {
    let jobs: Vec<[Time; 2]> = instance.jobs().iter().map(|j| [j.r, j.t]).collect();
    serde_json::to_string(&InstanceOut {
        m: instance.m(),
        jobs: &jobs,
    })
    .expect("instance serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShopDoc {
    pub order: Vec<usize>,
    pub rho: Time,
    pub tau: Time,
}

/// Solver output. `assignment` and `shops` are `null` for value-only runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub makespan: Time,
    pub assignment: Option<Vec<usize>>,
    pub shops: Option<Vec<ShopDoc>>,
    pub algo: String,
    pub optimal: bool,
    pub ratio_bound: Option<String>,
}

impl ResultDoc {
    pub fn from_schedule(
        schedule: &Schedule,
        algo: &str,
        optimal: bool,
        ratio_bound: Option<String>,
    ) -> Self {
        let shops = schedule
            .order
            .iter()
            .zip(&schedule.completions)
            .map(|(order, c)| ShopDoc {
                order: order.clone(),
                rho: c.rho,
                tau: c.tau,
            })
            .collect();
        ResultDoc {
            makespan: schedule.makespan,
            assignment: Some(schedule.assignment.clone()),
            shops: Some(shops),
            algo: algo.to_string(),
            optimal,
            ratio_bound,
        }
    }

    pub fn value_only(makespan: Time, algo: &str) -> Self {
        ResultDoc {
            makespan,
            assignment: None,
            shops: None,
            algo: algo.to_string(),
            optimal: true,
            ratio_bound: None,
        }
    }

    /// Rebuilds the schedule against `instance`, recomputing completions
    /// from the shop orders.
    pub fn to_schedule(&self, instance: &Instance) -> Result<Schedule, FormatError> {
        let shops = self
            .shops
            .as_ref()
            .ok_or_else(|| invalid("shops", "value-only result has no schedule"))?;
        let order = shops.iter().map(|s| s.order.clone()).collect();
        Schedule::from_orders(instance, order).map_err(|e| invalid("shops", e.to_string()))
    }
}

pub fn save_result(doc: &ResultDoc) -> String {
    let mut s = serde_json::to_string(doc).expect("result serializes");
    s.push('\n');
    s
}

pub fn load_result(text: &str) -> Result<ResultDoc, FormatError> {
    serde_json::from_str(text).map_err(parse_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use twoflow::evaluate_schedule;

    #[test]
    fn load_examples() {
        let inst = load_instance(r#"{"m":2,"jobs":[[1,2],[2,1]]}"#).unwrap();
        assert_eq!(inst, Instance::from_pairs(&[(1, 2), (2, 1)], 2).unwrap());
        let empty = load_instance(r#"{"m":1,"jobs":[]}"#).unwrap();
        assert!(empty.is_empty());
        let err = load_instance(r#"{"m":0,"jobs":[]}"#).unwrap_err();
        assert!(err.to_string().contains("m must be ≥ 1"), "{err}");
    }

    #[test]
    fn load_errors_name_the_field() {
        let err = load_instance(r#"{"m":2,"jobs":[[1,2],[3,-1]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "jobs[1][1]: negative duration");
        let err = load_instance(r#"{"m":2,"jobs":[[1.5,2]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("jobs[0][0]"));
        let err = load_instance(r#"{"m":2,"jobs":[[9223372036854775808,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("63-bit"));
        let err = load_instance(r#"{"m":2,"jobs":[[9223372036854775807,0],[1,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("63-bit"));
        let err = load_instance(r#"{"m":2,"jobs":[[1]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("jobs[0]"));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = load_instance("{\"m\":2,\n\"jobs\":[[1,2],]}").unwrap_err();
        match err {
            FormatError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn save_is_compact() {
        let inst = Instance::from_pairs(&[(1, 2), (2, 1)], 2).unwrap();
        assert_eq!(save_instance(&inst), r#"{"m":2,"jobs":[[1,2],[2,1]]}"#);
    }

    #[test]
    fn result_document_layout() {
        let inst = Instance::from_pairs(&[(2, 1), (1, 2), (2, 2)], 2).unwrap();
        let s = evaluate_schedule(&inst, &[0, 0, 1]).unwrap();
        let doc = ResultDoc::from_schedule(&s, "dp1", true, None);
        assert_eq!(
            save_result(&doc),
            concat!(
                r#"{"makespan":4,"assignment":[0,0,1],"shops":[{"order":[1,0],"rho":3,"tau":4},"#,
                r#"{"order":[2],"rho":2,"tau":4}],"algo":"dp1","optimal":true,"ratio_bound":null}"#,
                "\n"
            )
        );
        let back = load_result(&save_result(&doc)).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_schedule(&inst).unwrap(), s);
    }

    proptest! {
        #[test]
        fn instance_round_trip(pairs in prop::collection::vec((0u64..1_000_000, 0u64..1_000_000), 0..20), m in 1usize..6) {
            let inst = Instance::from_pairs(&pairs, m).unwrap();
            prop_assert_eq!(load_instance(&save_instance(&inst)).unwrap(), inst);
        }
    }
}
