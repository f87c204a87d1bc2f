//! Pass/fail certificates produced by every exhaustive check.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub suite: String,
    pub checks: Vec<Check>,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl Certificate {
    pub fn new(suite: impl Into<String>) -> Self {
        Certificate {
            suite: suite.into(),
            checks: Vec::new(),
            config: serde_json::Value::Null,
            duration_ms: None,
        }
    }

    /// Records a check that passes iff `failure` is `None`.
    pub fn record(&mut self, id: impl Into<String>, count: u64, failure: Option<String>) {
        let status = if failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        self.checks.push(Check {
            id: id.into(),
            status,
            witness: failure,
            count,
        });
    }

    /// Records a check that passes iff `ok`, attaching `witness` either way.
    pub fn record_with_witness(&mut self, id: impl Into<String>, count: u64, ok: bool, witness: Option<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
            count,
        });
    }

    pub fn skip(&mut self, id: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
            count: 0,
        });
    }

    /// Appends the checks of `other`, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        for mut c in other.checks {
            c.id = format!("{prefix}{}", c.id);
            self.checks.push(c);
        }
    }

    /// Appends the checks of `other` whose ids are not present yet.
    pub fn merge(&mut self, other: Certificate) {
        for c in other.checks {
            if self.check(&c.id).is_none() {
                self.checks.push(c);
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.check(id).is_some_and(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    /// Copy without the wall-clock field, for determinism comparisons.
    pub fn without_duration(&self) -> Certificate {
        Certificate {
            duration_ms: None,
            ..self.clone()
        }
    }
}

/// One Markdown table per certificate.
pub fn render_markdown(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        out.push_str(&format!("## {}\n\n", c.suite));
        if let Some(ms) = c.duration_ms {
            out.push_str(&format!("Duration: {ms} ms\n\n"));
        }
        out.push_str("| check | status | cases | witness |\n|---|---|---|---|\n");
        for ch in &c.checks {
            let status = match ch.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            let witness = ch.witness.as_deref().unwrap_or("").replace('|', "\\|");
            out.push_str(&format!("| {} | {status} | {} | {witness} |\n", ch.id, ch.count));
        }
        out.push('\n');
    }
    out
}
