//! Machine-readable verification reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Format;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub abs_err: Option<f64>,
    pub verdict: Verdict,
    pub route: String,
    pub equality_level: Option<String>,
}

impl Case {
    pub fn new(id: impl Into<String>, inputs: impl Into<String>) -> Self {
        Case {
            id: id.into(),
            inputs: inputs.into(),
            expected: String::new(),
            actual: String::new(),
            abs_err: None,
            verdict: Verdict::Skip,
            route: String::new(),
            equality_level: None,
        }
    }

    pub fn expected(mut self, s: impl Into<String>) -> Self {
        self.expected = s.into();
        self
    }

    pub fn actual(mut self, s: impl Into<String>) -> Self {
        self.actual = s.into();
        self
    }

    pub fn abs_err(mut self, e: f64) -> Self {
        self.abs_err = Some(e);
        self
    }

    pub fn route(mut self, s: impl Into<String>) -> Self {
        self.route = s.into();
        self
    }

    pub fn level(mut self, s: impl Into<String>) -> Self {
        self.equality_level = Some(s.into());
        self
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    /// A case that could not be computed.
    pub fn error(id: impl Into<String>, inputs: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Case::new(id, inputs).actual(format!("error: {err}")).verdict(false)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub wall_time_s: f64,
}

impl Report {
    /// Sorts cases by id and fills in the summary.
    pub fn new(suite: impl Into<String>, mut cases: Vec<Case>, wall_time_s: f64) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in &cases {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Skip => summary.skip += 1,
            }
        }
        Report {
            schema: SCHEMA,
            suite: suite.into(),
            cases,
            summary,
            wall_time_s,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "suite",
            "id",
            "inputs",
            "expected",
            "actual",
            "abs_err",
            "verdict",
            "route",
            "equality_level",
        ])
        .expect("in-memory write");
        for c in &self.cases {
            let err = c.abs_err.map(|e| format!("{e:e}")).unwrap_or_default();
            w.write_record([
                self.suite.as_str(),
                &c.id,
                &c.inputs,
                &c.expected,
                &c.actual,
                &err,
                c.verdict.as_str(),
                &c.route,
                c.equality_level.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let _ = write!(s, "{:<4} {}  {}", c.verdict.as_str(), c.id, c.inputs);
            if !c.expected.is_empty() {
                let _ = write!(s, "  expected {}", c.expected);
            }
            let _ = write!(s, "  actual {}", c.actual);
            if let Some(e) = c.abs_err {
                let _ = write!(s, "  err {e:.3e}");
            }
            if !c.route.is_empty() {
                let _ = write!(s, "  [{}]", c.route);
            }
            if let Some(l) = &c.equality_level {
                let _ = write!(s, "  ({l})");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{}: {} cases, {} pass, {} fail, {} skip, {:.2} s",
            self.suite, m.total, m.pass, m.fail, m.skip, self.wall_time_s
        );
        s
    }
}
