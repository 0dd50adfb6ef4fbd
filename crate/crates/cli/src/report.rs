use std::fmt::Write as _;
use std::process::ExitCode;

/// Outcome classes and their exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Stop {
    /// Unreadable or malformed input.
    Input(String),
    /// The input is well formed but a mathematical check failed.
    Math(String),
}

pub type Outcome = Result<(), Stop>;

pub fn input(msg: impl Into<String>) -> Stop {
    Stop::Input(msg.into())
}

pub fn math(msg: impl Into<String>) -> Stop {
    Stop::Math(msg.into())
}

/// `key: value` findings in the order they were recorded, then a status line.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
    failed: bool,
}

impl Report {
    pub fn new(verb: &str) -> Self {
        let mut r = Report::default();
        r.add("verb", verb);
        r
    }

    pub fn add(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    /// Record a failed check without stopping.
    pub fn fail(&mut self, key: impl Into<String>, value: impl ToString) {
        self.add(key, value);
        self.failed = true;
    }

    pub fn finish(mut self, outcome: Outcome) -> (String, Status) {
        let status = match outcome {
            Ok(()) if self.failed => Status::Fail,
            Ok(()) => Status::Pass,
            Err(Stop::Math(msg)) => {
                self.add("failure", msg);
                Status::Fail
            }
            Err(Stop::Input(msg)) => {
                self.add("error", msg);
                Status::Error
            }
        };
        self.add("status", status.word());
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        (out, status)
    }
}

pub fn exit(status: Status) -> ExitCode {
    ExitCode::from(status.code())
}
