use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// An outcome that no law asserts, kept for the record.
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub instance: usize,
    pub check: String,
    pub status: Status,
    pub detail: serde_json::Value,
}

impl Verdict {
    pub fn new(instance: usize, check: &str, passed: bool, detail: serde_json::Value) -> Verdict {
        Verdict {
            instance,
            check: check.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    pub fn recorded(instance: usize, check: &str, detail: serde_json::Value) -> Verdict {
        Verdict {
            instance,
            check: check.to_string(),
            status: Status::Recorded,
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
    pub recorded: usize,
}

/// The outcome of one suite run. `wall_time` is not serialized, so equal
/// inputs, seed and flags give byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub input_digest: String,
    pub seed: Option<u64>,
    pub summary: Summary,
    pub verdicts: Vec<Verdict>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(command: &str, input_digest: String, seed: Option<u64>, instances: usize, mut verdicts: Vec<Verdict>) -> RunReport {
        verdicts.sort_by_key(|v| v.instance);
        let count = |s: Status| verdicts.iter().filter(|v| v.status == s).count();
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input_digest,
            seed,
            summary: Summary {
                instances,
                pass: count(Status::Pass),
                fail: count(Status::Fail),
                recorded: count(Status::Recorded),
            },
            verdicts,
            wall_time: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (input {})", self.command, &self.input_digest[..12.min(self.input_digest.len())]);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for v in &self.verdicts {
            let tag = match v.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Recorded => "NOTE",
            };
            let _ = writeln!(out, "{tag} #{} {}", v.instance, v.check);
            if v.status != Status::Pass {
                let _ = writeln!(out, "     {}", v.detail);
            }
        }
        let s = self.summary;
        let _ = writeln!(
            out,
            "{} instance(s): {} pass, {} fail, {} recorded in {:.3}s",
            s.instances,
            s.pass,
            s.fail,
            s.recorded,
            self.wall_time.as_secs_f64()
        );
        out
    }
}
