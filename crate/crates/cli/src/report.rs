use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use geomforge::error::Error;

pub const SCHEMA: &str = "geomforge.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitKind {
    Ok,
    CheckFailed,
    Parse,
    Budget,
}

impl ExitKind {
    pub fn code(self) -> u8 {
        match self {
            ExitKind::Ok => 0,
            ExitKind::CheckFailed => 1,
            ExitKind::Parse => 2,
            ExitKind::Budget => 3,
        }
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::TimeExceeded(_) => ExitKind::Budget,
            Error::Parse(_) | Error::InvalidInput(_) => ExitKind::Parse,
            _ => ExitKind::CheckFailed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub passed: bool,
    pub exit: ExitKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

pub fn error_report(command: String, exit: ExitKind, message: String) -> RunReport {
    RunReport {
        schema: SCHEMA,
        command,
        inputs: Value::Null,
        results: Value::Null,
        passed: false,
        exit,
        error: Some(message),
        budget: None,
        timing_ms: None,
        summary: Vec::new(),
    }
}

pub fn emit(report: &RunReport, summary: bool) {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if summary {
        for line in &report.summary {
            eprintln!("{line}");
        }
        match &report.error {
            Some(e) => eprintln!("error: {e}"),
            None => eprintln!("{}: {}", report.command, if report.passed { "PASS" } else { "FAIL" }),
        }
    }
}
