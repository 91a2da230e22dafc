//! Report records and their two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use twistoid::{CheckEntry, Status};

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub tag: String,
    pub status: String,
    pub samples: usize,
    pub residual_terms: usize,
    pub failing_order: Option<usize>,
    pub witness: Option<String>,
    /// Largest sample degree exercised.
    pub degree: usize,
    /// Truncation order of the run.
    pub order: usize,
}

impl Record {
    pub fn from_entry(e: &CheckEntry, degree: usize, order: usize) -> Self {
        Record {
            name: e.name.clone(),
            tag: e.tag.clone(),
            status: e.status.as_str().to_string(),
            samples: e.samples,
            residual_terms: e.residual_terms,
            failing_order: e.failing_order,
            witness: e.witness.clone(),
            degree,
            order,
        }
    }

    pub fn ok(&self) -> bool {
        self.status != Status::Fail.as_str()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub problem: String,
    pub order: usize,
    pub degree: usize,
    pub status: String,
    pub sections: Vec<Section>,
    pub artifacts: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, problem: &str, order: usize, degree: usize) -> Self {
        Report {
            command: command.into(),
            problem: problem.into(),
            order,
            degree,
            status: "pass".into(),
            sections: Vec::new(),
            artifacts: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, section: Section) {
        if !section.records.iter().all(Record::ok) {
            self.status = "fail".into();
        }
        self.sections.push(section);
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if self.command.starts_with("presets") {
            let _ = writeln!(out, "twistoid {}", self.command);
        } else {
            let _ = writeln!(out, "twistoid {}  problem={}  N={}  d={}", self.command, self.problem, self.order, self.degree);
        }
        for s in &self.sections {
            let _ = write!(out, "\n{}", s.title);
            if let Some(t) = s.seconds {
                let _ = write!(out, "  [{t:.2}s]");
            }
            out.push('\n');
            if s.records.is_empty() {
                continue;
            }
            let tag_w = s.records.iter().map(|r| r.tag.chars().count()).max().unwrap_or(3).max(3);
            let _ = writeln!(out, "  {:<10}  {:<tag_w$}  {:>7}  {:>5}  CHECK", "STATUS", "TAG", "SAMPLES", "ORDER");
            for r in &s.records {
                let order = r.failing_order.map_or("-".to_string(), |o| o.to_string());
                let _ = writeln!(out, "  {:<10}  {:<tag_w$}  {:>7}  {:>5}  {}", r.status, r.tag, r.samples, order, r.name);
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "      witness: {}", shorten(w, 400));
                }
            }
        }
        for (k, v) in &self.artifacts {
            let _ = writeln!(out, "\n{k}:");
            match v {
                Value::Array(rows) => {
                    for row in rows {
                        match row {
                            Value::String(s) => {
                                let _ = writeln!(out, "  {s}");
                            }
                            other => {
                                let _ = writeln!(out, "  {other}");
                            }
                        }
                    }
                }
                Value::String(s) => {
                    let _ = writeln!(out, "  {s}");
                }
                other => {
                    let _ = writeln!(out, "  {other}");
                }
            }
        }
        let _ = writeln!(out, "\noverall: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

fn shorten(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        let head: String = s.chars().take(max).collect();
        format!("{head} …")
    }
}
