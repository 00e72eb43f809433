use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrix::{MatrixFile, SymMatrix};
use crate::scalar::Scalar;

/// How a check's observed value is compared with its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">")]
    Above,
}

impl Relation {
    pub fn holds(self, value: f64, limit: f64) -> bool {
        match self {
            Relation::AtMost => value <= limit,
            Relation::Below => value < limit,
            Relation::Above => value > limit,
        }
    }

    /// Positive when the check passes.
    pub fn margin(self, value: f64, limit: f64) -> f64 {
        match self {
            Relation::AtMost | Relation::Below => limit - value,
            Relation::Above => value - limit,
        }
    }
}

/// One named comparison: the worst observed value against its limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub limit: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, limit: f64) -> Self {
        let pass = relation.holds(value, limit);
        CheckResult { name: name.into(), value, relation, limit, pass }
    }

    pub fn margin(&self) -> f64 {
        self.relation.margin(self.value, self.limit)
    }
}

/// Reproducible description of a failing input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub matrix: MatrixFile,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub step: Option<usize>,
}

impl Counterexample {
    pub fn new<T: Scalar>(check: &str, a: &SymMatrix<T>, seed: Option<u64>, trial: Option<u64>, step: Option<usize>) -> Self {
        Counterexample { check: check.to_string(), matrix: a.to_file(), seed, trial, step }
    }
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub precision: String,
    pub seed: Option<u64>,
    pub trials: u64,
    pub skipped: u64,
    pub pass: bool,
    /// Margin of the first check; positive when it passes.
    pub worst_margin: f64,
    pub checks: Vec<CheckResult>,
    /// Exact values worth recording, as decimal strings.
    pub values: BTreeMap<String, String>,
    pub counterexample: Option<Counterexample>,
}

impl TheoremReport {
    pub fn new(theorem: &str, precision: impl ToString, seed: Option<u64>, trials: u64) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            precision: precision.to_string(),
            seed,
            trials,
            skipped: 0,
            pass: true,
            worst_margin: f64::INFINITY,
            checks: Vec::new(),
            values: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        if self.checks.is_empty() {
            self.worst_margin = check.margin();
        }
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.to_string(), v.to_string());
    }

    /// Keeps the first counterexample only.
    pub fn attach(&mut self, c: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(c);
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} [{}] trials={} skipped={} => {}\n",
            self.theorem,
            self.precision,
            self.trials,
            self.skipped,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            let rel = match c.relation {
                Relation::AtMost => "<=",
                Relation::Below => "<",
                Relation::Above => ">",
            };
            out.push_str(&format!(
                "  {:<4} {:<40} {:>14.6e} {} {:.6e}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.value,
                rel,
                c.limit
            ));
        }
        for (k, v) in &self.values {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!(
                "  counterexample: check={} seed={:?} trial={:?} step={:?}\n",
                c.check, c.seed, c.trial, c.step
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,check,value,relation,limit,pass\n");
        for c in &self.checks {
            let rel = serde_json::to_value(c.relation).expect("relation serializes");
            out.push_str(&format!(
                "{},{},{:e},{},{:e},{}\n",
                self.theorem,
                c.name,
                c.value,
                rel.as_str().unwrap_or(""),
                c.limit,
                c.pass
            ));
        }
        out
    }
}

/// Merges suite reports into one; passes iff all parts pass.
pub fn combine(theorem: &str, parts: &[TheoremReport]) -> TheoremReport {
    let precision = parts.first().map(|p| p.precision.clone()).unwrap_or_default();
    let seed = parts.first().and_then(|p| p.seed);
    let mut out = TheoremReport::new(theorem, precision, seed, parts.iter().map(|p| p.trials).sum());
    out.skipped = parts.iter().map(|p| p.skipped).sum();
    for p in parts {
        for c in &p.checks {
            let mut c = c.clone();
            c.name = format!("{}.{}", p.theorem, c.name);
            out.push(c);
        }
        for (k, v) in &p.values {
            out.values.insert(format!("{}.{}", p.theorem, k), v.clone());
        }
        out.pass &= p.pass;
        if let Some(c) = &p.counterexample {
            out.attach(c.clone());
        }
    }
    out
}
