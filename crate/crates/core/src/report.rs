//! Report records and their deterministic JSON form.
//!
//! Every record carries the schema id, keys are emitted sorted, rationals as
//! canonical `"p/q"` strings (integers as `"n"`), absent fields as `null`.

use serde_json::{json, Value};

use crate::exact::{fmt_q, Q};
use crate::screening::Check;

pub const SCHEMA_ID: &str = "nwvoa.report/v1";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    pub suite: String,
    pub spec: String,
    pub bidegree: Option<(Q, Q)>,
    pub dim_source: Option<usize>,
    pub dim_target: Option<usize>,
    pub rank_s: Option<usize>,
    pub dim_ker: Option<usize>,
    pub nilpotent_rank: Option<usize>,
    pub checks: Vec<Check>,
}

impl Record {
    pub fn new(suite: &str, spec: impl Into<String>) -> Self {
        Self { suite: suite.to_string(), spec: spec.into(), ..Self::default() }
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    pub fn at(mut self, h: &Q, j: &Q) -> Self {
        self.bidegree = Some((h.clone(), j.clone()));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect();
        json!({
            "schema": SCHEMA_ID,
            "suite": self.suite,
            "spec": self.spec,
            "bidegree": self.bidegree.as_ref().map(|(h, j)| vec![fmt_q(h), fmt_q(j)]),
            "dim_source": self.dim_source,
            "dim_target": self.dim_target,
            "rank_S": self.rank_s,
            "dim_ker": self.dim_ker,
            "nilpotent_rank": self.nilpotent_rank,
            "checks": checks,
        })
    }
}

/// Sorts checks by name and records by suite, spec, first check name, then
/// bidegree.
pub fn normalize(records: &mut [Record]) {
    for r in records.iter_mut() {
        r.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }
    records.sort_by(|a, b| {
        let ka = (&a.suite, &a.spec, a.checks.first().map(|c| &c.name), &a.bidegree);
        let kb = (&b.suite, &b.spec, b.checks.first().map(|c| &c.name), &b.bidegree);
        ka.cmp(&kb)
    });
}

/// Pretty JSON array of the normalized records; `[]` when empty.
pub fn emit_report(records: &[Record]) -> String {
    let mut rs = records.to_vec();
    normalize(&mut rs);
    let v = Value::Array(rs.iter().map(Record::to_json).collect());
    serde_json::to_string_pretty(&v).expect("JSON values serialize")
}

pub fn all_passed(records: &[Record]) -> bool {
    records.iter().all(Record::passed)
}
