use serde_json::{json, Value};

use crate::Format;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    /// Proof rejected, match lost, condition falsified.
    Failed = 1,
    Usage = 2,
    Io = 3,
    Parse = 4,
    /// A search or evaluation budget ran out before a decision.
    Budget = 5,
    AgentFault = 6,
}

impl Exit {
    pub fn name(self) -> &'static str {
        match self {
            Exit::Ok => "ok",
            Exit::Failed => "failed",
            Exit::Usage => "usage",
            Exit::Io => "io",
            Exit::Parse => "parse",
            Exit::Budget => "budget",
            Exit::AgentFault => "agent-fault",
        }
    }

    /// The worse of two outcomes, for commands over several inputs.
    pub fn max(self, other: Exit) -> Exit {
        if other as u8 > self as u8 {
            other
        } else {
            self
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub exit: Exit,
    pub plain: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain.clone(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("values serialize")),
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn new(exit: Exit, message: impl Into<String>) -> Failure {
        Failure { exit, message: message.into() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => format!("error: {}\n", self.message),
            Format::Json => format!("{}\n", json!({ "error": self.exit.name(), "message": self.message })),
        }
    }
}
