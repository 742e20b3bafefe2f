//! Scripted reproduction targets and the report format they produce.

mod engine;
mod evidence;
mod targets;

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::freealt::IdentityOpts;

pub use engine::random_expr;

pub const REPORT_SCHEMA: &str = "altcenter-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    ResourceCapped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::ResourceCapped => "resource-capped",
        }
    }

    /// Process exit code for a report with this overall status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Skipped => 0,
            Status::Fail => 1,
            Status::ResourceCapped => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
    pub detail: String,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: Value,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub overall: Status,
}

/// Fail if anything failed, else resource-capped if anything was capped, else pass.
pub fn overall(checks: &[CheckRecord]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::ResourceCapped) {
        Status::ResourceCapped
    } else {
        Status::Pass
    }
}

impl Report {
    pub fn new(command: &str, input: Value, seed: u64, checks: Vec<CheckRecord>) -> Self {
        let overall = overall(&checks);
        Report { schema: REPORT_SCHEMA, command: command.to_string(), input, seed, checks, overall }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (seed {})\n", self.command, self.seed);
        for c in &self.checks {
            out.push_str(&format!("{:<15} {}", c.status.label(), c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w}"));
            }
            if !c.detail.is_empty() {
                out.push_str(&format!("  [{}]", c.detail));
            }
            if c.ms > 0 {
                out.push_str(&format!("  {} ms", c.ms));
            }
            out.push('\n');
        }
        out.push_str(&format!("overall: {}\n", self.overall.label()));
        out
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub coeff_bound: u32,
    pub opts: IdentityOpts,
    /// `A_n` index parameter, `n = 4k + 2`.
    pub k: usize,
    /// Degree parameter of the `u_{4m}`/`u_{4m+1}` relation.
    pub m: usize,
    /// Record wall-clock times; off by default so reports are byte-stable.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 1, trials: 100, coeff_bound: 7, opts: IdentityOpts::default(), k: 1, m: 1, timings: false }
    }
}

/// Result of one check before timing is attached.
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
    pub detail: String,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome { status: Status::Pass, witness: None, detail: detail.into() }
    }

    pub fn pass_with(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Outcome { status: Status::Pass, witness: Some(witness.into()), detail: detail.into() }
    }

    pub fn fail(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Outcome { status: Status::Fail, witness: Some(witness.into()), detail: detail.into() }
    }

    pub fn from_bool(ok: bool, witness: Option<String>, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Outcome { status, witness, detail: detail.into() }
    }
}

/// Runs one check, mapping a degree cap to `skipped` and a resource cap to
/// `resource-capped`.
pub fn run_check(name: impl Into<String>, cfg: &RunConfig, f: impl FnOnce() -> Result<Outcome>) -> CheckRecord {
    let start = Instant::now();
    let outcome = match f() {
        Ok(o) => o,
        Err(Error::DegreeCap { required, cap }) => Outcome {
            status: Status::Skipped,
            witness: None,
            detail: format!("requires degree {required}, cap is {cap}"),
        },
        Err(Error::ResourceCap(msg)) => Outcome { status: Status::ResourceCapped, witness: None, detail: msg },
        Err(e) => Outcome { status: Status::Fail, witness: None, detail: format!("error: {e}") },
    };
    let ms = if cfg.timings { start.elapsed().as_millis() as u64 } else { 0 };
    CheckRecord { name: name.into(), status: outcome.status, witness: outcome.witness, detail: outcome.detail, ms }
}

/// A named reproduction pipeline.
pub trait Target: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord>;
}

struct All;

impl Target for All {
    fn name(&self) -> &'static str {
        "all"
    }
    fn summary(&self) -> &'static str {
        "every other target, in registry order"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        for t in targets::registry() {
            for mut c in t.run(cfg) {
                c.name = format!("{}/{}", t.name(), c.name);
                out.push(c);
            }
        }
        out
    }
}

/// All registered targets, `all` last.
pub fn targets() -> Vec<Box<dyn Target>> {
    let mut v = targets::registry();
    v.push(Box::new(All));
    v
}

pub fn find_target(name: &str) -> Result<Box<dyn Target>> {
    targets().into_iter().find(|t| t.name() == name).ok_or_else(|| Error::UnknownTarget(name.to_string()))
}

/// Runs the target `name` and wraps its checks in a report.
pub fn reproduce(name: &str, cfg: &RunConfig) -> Result<Report> {
    let t = find_target(name)?;
    let input = serde_json::json!({
        "target": name,
        "k": cfg.k,
        "m": cfg.m,
        "trials": cfg.trials,
        "coeff_bound": cfg.coeff_bound,
        "degree_cap": cfg.opts.degree_cap,
        "allow_deg7": cfg.opts.allow_deg7,
    });
    Ok(Report::new("reproduce", input, cfg.seed, t.run(cfg)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(status: Status) -> CheckRecord {
        CheckRecord { name: "c".into(), status, witness: None, detail: String::new(), ms: 0 }
    }

    #[test]
    fn overall_ignores_skipped() {
        assert_eq!(overall(&[rec(Status::Pass), rec(Status::Skipped)]), Status::Pass);
        assert_eq!(overall(&[rec(Status::Skipped)]), Status::Pass);
        assert_eq!(overall(&[rec(Status::Pass), rec(Status::ResourceCapped)]), Status::ResourceCapped);
        assert_eq!(overall(&[rec(Status::ResourceCapped), rec(Status::Fail)]), Status::Fail);
    }

    #[test]
    fn degree_cap_maps_to_skipped() {
        let cfg = RunConfig::default();
        let c = run_check("x", &cfg, || Err(Error::DegreeCap { required: 7, cap: 6 }));
        assert_eq!(c.status, Status::Skipped);
        assert!(c.detail.contains('7'));
        let c = run_check("x", &cfg, || Err(Error::ResourceCap("budget".into())));
        assert_eq!(c.status, Status::ResourceCapped);
        assert_eq!(c.ms, 0);
    }

    #[test]
    fn status_serializes_kebab() {
        assert_eq!(serde_json::to_string(&Status::ResourceCapped).unwrap(), "\"resource-capped\"");
    }

    #[test]
    fn registry_names_are_unique() {
        let names: Vec<_> = targets().iter().map(|t| t.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(find_target("prop5-s").is_ok());
        assert!(matches!(find_target("nope"), Err(Error::UnknownTarget(_))));
    }
}
