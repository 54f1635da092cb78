use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    /// Decided by an exhaustive computation or a concrete witness.
    Exact,
    /// Backed by a proof that holds for the whole family.
    Certified,
    /// Finite sampling only.
    Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub value: Value,
    pub label: Label,
    /// Enumeration budget (or orbit cap) under which an exact verdict was
    /// established.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub budget: u64,
    pub verdicts: Vec<Verdict>,
    pub details: Value,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, input: Value, budget: u64) -> Self {
        Report {
            command: command.to_string(),
            input,
            budget,
            verdicts: Vec::new(),
            details: Value::Null,
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn exact(&mut self, name: &str, value: impl Serialize, budget: Option<u64>) {
        self.push(name, value, Label::Exact, budget);
    }

    pub fn evidence(&mut self, name: &str, value: impl Serialize) {
        self.push(name, value, Label::Evidence, None);
    }

    pub fn push(&mut self, name: &str, value: impl Serialize, label: Label, budget: Option<u64>) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            value: serde_json::to_value(value).expect("verdict values serialize"),
            label,
            budget,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    InvalidInput,
    BudgetExceeded,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::InvalidInput => 1,
            ErrorKind::BudgetExceeded => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: ErrorBody,
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_pretty(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (budget {})", r.command, r.budget);
    let width = r.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
    for v in &r.verdicts {
        let label = match (v.label, v.budget) {
            (Label::Exact, Some(b)) => format!("exact, budget {b}"),
            (l, _) => serde_json::to_value(l).map(|x| scalar_text(&x)).unwrap_or_default(),
        };
        let _ = writeln!(out, "  {:width$}  {}  [{label}]", v.name, scalar_text(&v.value));
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "  time: {t} ms");
    }
    if !r.details.is_null() {
        let _ = writeln!(out, "details:");
        let body = serde_json::to_string_pretty(&r.details).expect("details serialize");
        for line in body.lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

pub fn render_pretty_error(e: &ErrorReport) -> String {
    let kind = match e.error.kind {
        ErrorKind::InvalidInput => "invalid input",
        ErrorKind::BudgetExceeded => "budget exceeded",
    };
    format!("{}: {kind}: {}\n", e.command, e.error.message)
}
