//! Check results and their deterministic rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::anchors;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Key into [`anchors::ANCHORS`].
    pub anchor: &'static str,
    pub status: Status,
    /// Largest residual, where one is measured.
    pub residual: Option<f64>,
    pub witness: String,
    /// Wall time; excluded from rendered output unless asked for.
    #[serde(skip)]
    pub runtime: Duration,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &'static str, ok: bool, witness: impl Into<String>) -> Self {
        debug_assert!(anchors::lookup(anchor).is_some(), "unknown anchor {anchor}");
        Self {
            name: name.into(),
            anchor,
            status: Status::from_bool(ok),
            residual: None,
            witness: witness.into(),
            runtime: Duration::ZERO,
        }
    }

    pub fn with_residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    /// A failed check carrying an error message.
    pub fn error(name: impl Into<String>, anchor: &'static str, err: impl std::fmt::Display) -> Self {
        Self::new(name, anchor, false, format!("error: {err}"))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Self::default()
        }
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self, format: Format, timings: bool) -> String {
        match format {
            Format::Text => self.render_text(timings),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut out = String::from("name,anchor,status,residual,witness\n");
                for c in &self.checks {
                    let res = c.residual.map(|r| format!("{r:.3e}")).unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},\"{}\"",
                        c.name,
                        c.anchor,
                        c.status.label(),
                        res,
                        c.witness.replace('"', "'")
                    );
                }
                out
            }
        }
    }

    fn render_text(&self, timings: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.title);
        for c in &self.checks {
            let _ = write!(out, "{}  {}  [{}]", c.status.label(), c.name, c.anchor);
            if let Some(r) = c.residual {
                let _ = write!(out, "  residual={r:.3e}");
            }
            if !c.witness.is_empty() {
                let _ = write!(out, "  {}", c.witness);
            }
            if timings {
                let _ = write!(out, "  ({} ms)", c.runtime.as_millis());
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "summary: {passed}/{} checks passed", self.checks.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_stable() {
        let mut r = Report::new("t");
        r.extend([Check::new("a", "trace-relation", true, "w").with_residual(0.0)]);
        r.note("n");
        r.note("n");
        let a = r.render(Format::Text, false);
        assert_eq!(a, r.render(Format::Text, false));
        assert_eq!(a, "# t\nPASS  a  [trace-relation]  residual=0.000e0  w\nnote: n\nsummary: 1/1 checks passed\n");
    }

    #[test]
    fn json_and_csv() {
        let mut r = Report::new("t");
        r.extend([Check::new("a", "trace-relation", false, "say \"x\"")]);
        assert!(!r.passed());
        assert!(r.render(Format::Json, false).contains("\"status\": \"fail\""));
        assert!(r.render(Format::Csv, false).ends_with("FAIL,,\"say 'x'\"\n"));
    }
}
