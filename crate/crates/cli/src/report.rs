//! Uniform command output.
//!
//! TSV: a header line `check\tring\tparams\tformula\tcomputed\tmatch`, then
//! one line per row. Empty cells are `-`; `match` is `true`, `false` or `-`.
//! JSON: one object `{"schema": "hjekr-report/1", "command", "status",
//! "rows": [...]}` with the same fields per row.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

pub const SCHEMA: &str = "hjekr-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub check: String,
    pub ring: String,
    pub params: String,
    pub formula: Option<String>,
    pub computed: String,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl Row {
    pub fn info(check: impl Into<String>, computed: impl ToString) -> Self {
        Row {
            check: check.into(),
            ring: String::new(),
            params: String::new(),
            formula: None,
            computed: computed.to_string(),
            matches: None,
        }
    }

    /// A computed value compared with an expected one.
    pub fn compare(check: impl Into<String>, formula: impl ToString, computed: impl ToString) -> Self {
        let (formula, computed) = (formula.to_string(), computed.to_string());
        Row { matches: Some(formula == computed), formula: Some(formula), ..Row::info(check, computed) }
    }

    /// A pass/fail verdict; `computed` describes what was found.
    pub fn verdict(check: impl Into<String>, ok: bool, computed: impl ToString) -> Self {
        Row { matches: Some(ok), ..Row::info(check, computed) }
    }

    pub fn ring(mut self, ring: impl ToString) -> Self {
        self.ring = ring.to_string();
        self
    }

    pub fn params(mut self, params: impl ToString) -> Self {
        self.params = params.to_string();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Mismatch,
    Budget,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 2,
            Status::Budget => 3,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub status: Status,
    pub rows: Vec<Row>,
    #[serde(skip)]
    budget_exhausted: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { schema: SCHEMA, command: command.into(), status: Status::Pass, rows: Vec::new(), budget_exhausted: false }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
        self.refresh();
    }

    pub fn budget_exhausted(&mut self) {
        self.budget_exhausted = true;
        self.refresh();
    }

    fn refresh(&mut self) {
        self.status = if self.rows.iter().any(|r| r.matches == Some(false)) {
            Status::Mismatch
        } else if self.budget_exhausted {
            Status::Budget
        } else {
            Status::Pass
        };
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Tsv => {
                let cell = |s: &str| if s.is_empty() { "-".to_string() } else { s.replace(['\t', '\n'], " ") };
                let mut out = String::from("check\tring\tparams\tformula\tcomputed\tmatch\n");
                for r in &self.rows {
                    let m = r.matches.map_or("-".to_string(), |b| b.to_string());
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        cell(&r.check),
                        cell(&r.ring),
                        cell(&r.params),
                        cell(r.formula.as_deref().unwrap_or("")),
                        cell(&r.computed),
                        m
                    );
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_rows() {
        let mut r = Report::new("x");
        r.push(Row::info("a", 1));
        assert_eq!(r.status, Status::Pass);
        r.budget_exhausted();
        assert_eq!(r.status, Status::Budget);
        r.push(Row::compare("b", 2, 3));
        assert_eq!(r.status.exit_code(), 2);
        let tsv = r.render(Format::Tsv);
        assert!(tsv.starts_with("check\tring"));
        assert!(tsv.contains("b\t-\t-\t2\t3\tfalse"));
    }
}
