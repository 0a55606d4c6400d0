//! Scenario reports as line-delimited `key=value` records.

use std::fmt;
use std::path::PathBuf;
use std::time::Duration;

/// Outcome of a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Every asserted quantity matched.
    Verified,
    /// Some assertion failed, or a counterexample was found.
    Refuted,
    /// The run stopped early (work budget, shard slice) without a failure.
    Partial,
}

impl Status {
    /// Process exit code: 0 verified, 2 refuted, 3 partial.
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 2,
            Status::Partial => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Partial => "partial",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single named check inside a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub measured: String,
    pub expected: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured == self.expected
    }
}

/// Result of running one scenario. Everything except the wall time is
/// deterministic, so [`body`](Self::body) can be compared byte for byte across
/// runs, resumes and machines.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioReport {
    pub id: String,
    /// `key=value` pairs describing the run (version, strategy, shard, ...).
    pub config: Vec<(String, String)>,
    /// Measured quantities without an expectation attached.
    pub counts: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub certificates: Vec<PathBuf>,
    /// Set when the run was cut short (budget or slice).
    pub incomplete: bool,
    pub wall_time: Duration,
}

impl ScenarioReport {
    pub fn new(id: &str) -> Self {
        ScenarioReport {
            id: id.to_string(),
            config: vec![("version".into(), crate::VERSION.into())],
            counts: Vec::new(),
            checks: Vec::new(),
            certificates: Vec::new(),
            incomplete: false,
            wall_time: Duration::ZERO,
        }
    }

    pub fn config(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn count(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.counts.push((key.to_string(), value.to_string()));
        self
    }

    /// Records a check; the report is refuted if any check fails.
    pub fn check(&mut self, name: &str, measured: impl fmt::Display, expected: impl fmt::Display) -> bool {
        let c = Check { name: name.to_string(), measured: measured.to_string(), expected: expected.to_string() };
        let ok = c.passed();
        self.checks.push(c);
        ok
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| !c.passed()) {
            Status::Refuted
        } else if self.incomplete {
            Status::Partial
        } else {
            Status::Verified
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Deterministic part of the rendering.
    pub fn body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario={}\n", self.id));
        out.push_str(&format!("status={}\n", self.status()));
        for (k, v) in &self.config {
            out.push_str(&format!("config.{k}={v}\n"));
        }
        for (k, v) in &self.counts {
            out.push_str(&format!("count.{k}={v}\n"));
        }
        for c in &self.checks {
            let verdict = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "check.{}={} measured={} expected={}\n",
                c.name, verdict, c.measured, c.expected
            ));
        }
        for p in &self.certificates {
            out.push_str(&format!("certificate={}\n", p.display()));
        }
        out
    }

    /// Full rendering: the body followed by the wall time.
    pub fn render(&self) -> String {
        format!("{}wall_time_ms={}\n", self.body(), self.wall_time.as_millis())
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
