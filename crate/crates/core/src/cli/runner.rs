//! Runs the checks of a manifest on a bounded worker pool.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::manifest::{parse_manifest, CheckSpec, Manifest, Source, Tier};
use super::ops::{lookup, Context, Measured, CACHE_LIMIT, ENUMERATION_CAP};
use crate::fusion::CROSS_CHECK_LIMIT;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub op: String,
    pub status: Status,
    pub measured: Option<String>,
    pub expected: String,
    pub source: Source,
    pub anchor: String,
    pub tier: Tier,
    /// Error text or the reason for an indeterminate outcome.
    pub message: Option<String>,
    pub reproduce: Option<String>,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Totals {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub version: &'static str,
    pub tier: Tier,
    pub workers: usize,
    pub cache_limit: u128,
    pub enumeration_cap: usize,
    pub cross_check_limit: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub environment: Environment,
    pub totals: Totals,
    pub checks: Vec<CheckResult>,
    pub cache_notes: Vec<String>,
}

impl SuiteReport {
    pub fn success(&self) -> bool {
        self.totals.fail == 0 && self.totals.indeterminate == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.success() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One line per check, then the totals.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Indeterminate => "INDET",
                Status::Skipped => "skip",
            };
            let _ = write!(out, "{status:<5} {}", c.id);
            if let Some(m) = &c.measured {
                let _ = write!(out, "  measured={m}");
            }
            if c.status != Status::Skipped {
                let _ = write!(out, " expected={} ({} ms)", c.expected, c.wall_ms);
            }
            out.push('\n');
            if let Some(msg) = &c.message {
                let _ = writeln!(out, "      {msg}");
            }
            if let Some(r) = &c.reproduce {
                let _ = writeln!(out, "      rerun: {r}");
            }
        }
        for n in &self.cache_notes {
            let _ = writeln!(out, "note: {n}");
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed, {} indeterminate, {} skipped",
            t.total, t.pass, t.fail, t.indeterminate, t.skipped
        );
        out
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Used in reproduction command lines.
    pub manifest_path: PathBuf,
    pub tier: Tier,
    pub workers: usize,
    pub cache_dir: Option<PathBuf>,
    /// Run only this check id.
    pub only: Option<String>,
}

impl RunOptions {
    pub fn new(manifest_path: impl Into<PathBuf>) -> RunOptions {
        RunOptions {
            manifest_path: manifest_path.into(),
            tier: Tier::Fast,
            workers: 1,
            cache_dir: None,
            only: None,
        }
    }
}

/// Rejects checks naming an operation that does not exist.
pub fn validate(manifest: &Manifest) -> Result<()> {
    for c in manifest.sorted() {
        if lookup(&c.op).is_none() {
            return Err(Error::UnknownOperation {
                id: c.id.clone(),
                op: c.op.clone(),
            });
        }
    }
    Ok(())
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path)?;
    let m = parse_manifest(&text)?;
    validate(&m)?;
    Ok(m)
}

fn reproduce(opts: &RunOptions, c: &CheckSpec) -> String {
    format!(
        "twofusion verify run --manifest {} --tier {} --id {}",
        opts.manifest_path.display(),
        c.tier,
        c.id
    )
}

fn run_one(c: &CheckSpec, ctx: &Context, opts: &RunOptions) -> CheckResult {
    let mut r = CheckResult {
        id: c.id.clone(),
        op: c.op.clone(),
        status: Status::Skipped,
        measured: None,
        expected: c.expect.clone(),
        source: c.source,
        anchor: c.anchor.clone(),
        tier: c.tier,
        message: None,
        reproduce: None,
        wall_ms: 0,
    };
    let selected = opts.only.as_ref().is_none_or(|id| *id == c.id);
    if c.tier > opts.tier || !selected {
        return r;
    }
    let op = lookup(&c.op).expect("manifest was validated");
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| op(c, ctx)));
    r.wall_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(Ok(Measured::Value(v))) => {
            r.status = if c.expect == "any" || v == c.expect {
                Status::Pass
            } else {
                Status::Fail
            };
            r.measured = Some(v);
        }
        Ok(Ok(Measured::Indeterminate(why))) => {
            r.status = Status::Indeterminate;
            r.message = Some(why);
        }
        Ok(Err(e @ (Error::CapExceeded { .. } | Error::OrderCap { .. } | Error::SizeCap(_)))) => {
            r.status = Status::Indeterminate;
            r.message = Some(e.to_string());
        }
        Ok(Err(e)) => {
            r.status = Status::Fail;
            r.message = Some(e.to_string());
        }
        Err(_) => {
            r.status = Status::Fail;
            r.message = Some("operation panicked".into());
        }
    }
    if matches!(r.status, Status::Fail | Status::Indeterminate) {
        r.reproduce = Some(reproduce(opts, c));
    }
    r
}

/// Runs every check at or below `opts.tier`; the others are reported as
/// skipped. Results are in id order whatever the worker count.
pub fn run_suite(manifest: &Manifest, opts: &RunOptions) -> Result<SuiteReport> {
    validate(manifest)?;
    if let Some(id) = &opts.only {
        if !manifest.checks.iter().any(|c| c.id == *id) {
            return Err(Error::Precondition(format!("no check with id `{id}`")));
        }
    }
    if let Some(dir) = &opts.cache_dir {
        std::fs::create_dir_all(dir)?;
    }
    let checks = manifest.sorted();
    let ctx = Context::new(opts.cache_dir.clone());
    let results: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; checks.len()]);
    let next = AtomicUsize::new(0);
    let workers = opts.workers.clamp(1, checks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = checks.get(i) else { break };
                let r = run_one(c, &ctx, opts);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let checks: Vec<CheckResult> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every check ran"))
        .collect();
    let mut totals = Totals {
        total: checks.len(),
        ..Totals::default()
    };
    for c in &checks {
        match c.status {
            Status::Pass => totals.pass += 1,
            Status::Fail => totals.fail += 1,
            Status::Indeterminate => totals.indeterminate += 1,
            Status::Skipped => totals.skipped += 1,
        }
    }
    Ok(SuiteReport {
        environment: Environment {
            version: env!("CARGO_PKG_VERSION"),
            tier: opts.tier,
            workers,
            cache_limit: CACHE_LIMIT,
            enumeration_cap: ENUMERATION_CAP,
            cross_check_limit: CROSS_CHECK_LIMIT,
        },
        totals,
        checks,
        cache_notes: ctx.notes(),
    })
}

/// Reads, validates and runs a manifest file.
pub fn run_manifest_file(opts: &RunOptions) -> Result<SuiteReport> {
    let m = load_manifest(&opts.manifest_path)?;
    run_suite(&m, opts)
}
