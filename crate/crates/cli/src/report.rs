use std::time::Instant;

use nilcentral::FieldSpec;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct ContextEcho {
    pub r: usize,
    pub field: FieldSpec,
}

#[derive(Debug, Serialize)]
pub struct ReportEnvelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub context: Option<ContextEcho>,
    pub result: Value,
    pub timing_ms: Option<u64>,
}

pub struct Timer {
    start: Instant,
    enabled: bool,
}

impl Timer {
    pub fn start(enabled: bool) -> Self {
        Self {
            start: Instant::now(),
            enabled,
        }
    }

    pub fn elapsed_ms(&self) -> Option<u64> {
        self.enabled.then(|| self.start.elapsed().as_millis() as u64)
    }
}

impl ReportEnvelope {
    pub fn new(subcommand: &'static str, context: Option<ContextEcho>, result: Value, timer: &Timer) -> Self {
        Self {
            tool: "nilcentral",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            context,
            result,
            timing_ms: timer.elapsed_ms(),
        }
    }

    pub fn print(&self) -> anyhow::Result<()> {
        println!("{}", serde_json::to_string_pretty(self)?);
        Ok(())
    }
}
