//! Command reports and their JSON / text renderings.

use std::fmt::Write as _;

use gck_core::field::{fmt_q, Q};
use serde::Serialize;
use serde_json::{Map, Value};

/// An invariant is something the theory guarantees; a failure is a bug and
/// makes the command exit with status 1. A query answers a question about the
/// input and never changes the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Invariant,
    Query,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

pub fn point_label(at: Option<&[Q]>) -> Option<Vec<String>> {
    at.map(|p| p.iter().map(fmt_q).collect())
}

/// Accumulates checks and data for one command run.
#[derive(Debug)]
pub struct Builder {
    command: String,
    seed: u64,
    checks: Vec<Check>,
    data: Map<String, Value>,
    at: Option<Vec<String>>,
}

impl Builder {
    pub fn new(command: &str, seed: u64) -> Self {
        Builder { command: command.into(), seed, checks: Vec::new(), data: Map::new(), at: None }
    }

    /// Tags subsequent checks with a sample point.
    pub fn at(&mut self, at: Option<&[Q]>) {
        self.at = point_label(at);
    }

    fn push(&mut self, name: &str, kind: CheckKind, pass: bool) -> &mut Check {
        self.checks.push(Check { name: name.into(), kind, pass, at: self.at.clone(), detail: None, witness: None });
        self.checks.last_mut().unwrap()
    }

    pub fn invariant(&mut self, name: &str, pass: bool) -> &mut Check {
        self.push(name, CheckKind::Invariant, pass)
    }

    pub fn query(&mut self, name: &str, pass: bool) -> &mut Check {
        self.push(name, CheckKind::Query, pass)
    }

    /// Data entry; field scenarios key it by sample index.
    pub fn data(&mut self, key: &str, value: Value) {
        self.data.insert(key.into(), value);
    }

    pub fn finish(self) -> Report {
        let status = if self.checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail };
        Report { command: self.command, seed: self.seed, status, checks: self.checks, data: self.data }
    }
}

impl Check {
    pub fn detail(&mut self, d: impl Into<String>) -> &mut Self {
        self.detail = Some(d.into());
        self
    }

    pub fn witness(&mut self, w: Value) -> &mut Self {
        self.witness = Some(w);
        self
    }
}

impl Report {
    pub fn invariants_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.kind == CheckKind::Invariant).all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.invariants_hold() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        writeln!(out, "{} (seed {}): {status}", self.command, self.seed).unwrap();
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let kind = match c.kind {
                CheckKind::Invariant => "invariant",
                CheckKind::Query => "query",
            };
            write!(out, "  {mark} {kind:<9} {}", c.name).unwrap();
            if let Some(at) = &c.at {
                write!(out, " at ({})", at.join(", ")).unwrap();
            }
            if let Some(d) = &c.detail {
                write!(out, ": {d}").unwrap();
            }
            if let Some(w) = &c.witness {
                write!(out, " witness {w}").unwrap();
            }
            out.push('\n');
        }
        for (k, v) in &self.data {
            writeln!(out, "  {k} = {v}").unwrap();
        }
        out
    }
}
