use std::fmt;

use serde::Serialize;

use crate::dsl::{run_source, ExecOptions, Status};

/// The example scripts, `(name, source)`.
pub const FIXTURES: &[(&str, &str)] = &[
    ("ex51", include_str!("../../corpus/ex51.jcl")),
    ("ex52", include_str!("../../corpus/ex52.jcl")),
    ("ex53", include_str!("../../corpus/ex53.jcl")),
    ("ex54", include_str!("../../corpus/ex54.jcl")),
];

/// `let` bindings with this prefix are reported as INFO lines: recorded
/// results that are not asserted.
pub const VERDICT_PREFIX: &str = "verdict_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    Info,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertionLine {
    pub fixture: String,
    pub assertion: String,
    pub outcome: Outcome,
    pub expected: String,
    pub got: String,
}

impl AssertionLine {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass | Outcome::Info)
    }
}

impl fmt::Display for AssertionLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Info => "INFO",
            Outcome::Error => "ERROR",
        };
        write!(f, "{tag} {}.{} expected={} got={}", self.fixture, self.assertion, self.expected, self.got)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub lines: Vec<AssertionLine>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(AssertionLine::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.lines.iter().any(|l| l.outcome == Outcome::Error) {
            2
        } else if self.all_passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Runs every fixture script; fixtures are independent and run in parallel,
/// the report keeps fixture order.
pub fn run_example_corpus(opts: &ExecOptions) -> CorpusReport {
    let reports: Vec<Vec<AssertionLine>> = std::thread::scope(|s| {
        let handles: Vec<_> = FIXTURES
            .iter()
            .map(|(name, src)| s.spawn(move || fixture_lines(name, src, opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread panicked")).collect()
    });
    CorpusReport {
        lines: reports.into_iter().flatten().collect(),
    }
}

fn fixture_lines(name: &str, src: &str, opts: &ExecOptions) -> Vec<AssertionLine> {
    let report = run_source(src, opts);
    let mut lines = Vec::new();
    for c in &report.commands {
        if let Some(a) = &c.assertion {
            lines.push(AssertionLine {
                fixture: name.to_string(),
                assertion: a.label.clone(),
                outcome: if a.passed { Outcome::Pass } else { Outcome::Fail },
                expected: a.expected.clone(),
                got: a.got.clone(),
            });
        } else if let Some(rest) = c.cmd.strip_prefix("let ").filter(|r| r.starts_with(VERDICT_PREFIX)) {
            let label = rest.split_whitespace().next().unwrap_or(rest);
            lines.push(AssertionLine {
                fixture: name.to_string(),
                assertion: label.to_string(),
                outcome: Outcome::Info,
                expected: "(recorded)".into(),
                got: c.text.clone(),
            });
        }
    }
    if report.status == Status::Error {
        let message = report.diagnostic.map(|d| d.to_string()).unwrap_or_default();
        lines.push(AssertionLine {
            fixture: name.to_string(),
            assertion: "script".into(),
            outcome: Outcome::Error,
            expected: "no diagnostics".into(),
            got: message,
        });
    }
    lines
}
