use std::io::{self, Write};
use std::process::ExitCode;

use bigla::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Status::Pass => ExitCode::SUCCESS,
            Status::Fail => ExitCode::from(1),
            Status::Error => ExitCode::from(2),
        }
    }
}

/// What every command prints: human lines in text mode, the whole struct in
/// JSON mode.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub violations: Vec<Value>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            status: Status::Pass,
            violations: Vec::new(),
            result: Value::Null,
            timing_ms: None,
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records violations under a heading; any violation fails the run.
    pub fn violations<T: Serialize>(&mut self, check: &str, items: &[T], describe: impl Fn(&T) -> String) {
        if items.is_empty() {
            self.line(format!("{check}: pass"));
            return;
        }
        self.status = Status::Fail;
        self.line(format!("{check}: FAIL ({} violations)", items.len()));
        for item in items {
            self.line(format!("  {}", describe(item)));
            self.violations.push(serde_json::json!({"check": check, "at": item}));
        }
    }

    pub fn fail_unless(&mut self, ok: bool) {
        if !ok {
            self.status = Status::Fail;
        }
    }

    pub fn error(command: &str, err: &Error) -> Self {
        let mut r = Self::new(command);
        r.status = if is_verification_failure(err) { Status::Fail } else { Status::Error };
        r.result = serde_json::json!({"error": err.to_string()});
        r.line(format!("error: {err}"));
        r
    }

    /// Write errors such as a closed pipe are ignored.
    pub fn print(&self, json: bool) {
        let mut out = io::stdout().lock();
        if json {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(self).expect("report serializes"));
            return;
        }
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "time: {t:.1} ms");
        }
    }
}

/// Errors that describe well-formed input failing a mathematical check.
fn is_verification_failure(err: &Error) -> bool {
    matches!(
        err,
        Error::InputNotLie(_)
            | Error::NotDiagonal(_)
            | Error::NotEquivariant(_)
            | Error::NotAssociative(..)
            | Error::NotClosed(..)
            | Error::NotEvenType
            | Error::DegreeViolation(_)
            | Error::Singular
            | Error::StarNotInvolutive(_)
            | Error::StarNotAntiAutomorphism(..)
            | Error::BasisNotAdapted(_)
    )
}
