//! A registry of named verification cases replaying the explicit
//! computations: special hyperbolic words, Rosen expansions, degree tables,
//! surface normalization and SAF identities.
//!
//! Cases are trait objects keyed by id; a run selects ids by prefix,
//! executes them in parallel and reports them sorted by id.

mod cases;
pub mod random;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use cases::register_all;

pub const DEFAULT_SEED: u64 = 0x5AF_2013;

#[derive(Clone, Copy, Debug)]
pub struct RunContext {
    pub seed: u64,
}

impl Default for RunContext {
    fn default() -> Self {
        RunContext { seed: DEFAULT_SEED }
    }
}

/// Why a case did not pass, with the exact values involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Mismatch(String),
    Skip(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Mismatch(format!("error: {e}"))
    }
}

pub type Outcome = Result<(), Failure>;

/// `Ok(())` when `cond`, else a mismatch carrying `detail()`.
pub fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Failure::Mismatch(detail()))
    }
}

pub fn mismatch(detail: impl Display) -> Failure {
    Failure::Mismatch(detail.to_string())
}

pub trait VerificationCase: Send + Sync {
    fn id(&self) -> &str;
    fn run(&self, ctx: &RunContext) -> Outcome;
}

/// A case backed by a plain function.
pub struct FnCase {
    pub id: &'static str,
    pub f: fn(&RunContext) -> Outcome,
}

impl VerificationCase for FnCase {
    fn id(&self) -> &str {
        self.id
    }

    fn run(&self, ctx: &RunContext) -> Outcome {
        (self.f)(ctx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub cases: Vec<CaseReport>,
}

impl Report {
    /// No case failed; skipped cases do not count.
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }
}

#[derive(Default)]
pub struct Registry {
    cases: BTreeMap<String, Box<dyn VerificationCase>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// All built-in cases.
    pub fn builtin() -> Self {
        let mut r = Registry::new();
        register_all(&mut r);
        r
    }

    /// Panics on a duplicate id.
    pub fn register(&mut self, case: Box<dyn VerificationCase>) {
        let id = case.id().to_string();
        assert!(self.cases.insert(id.clone(), case).is_none(), "duplicate case id {id}");
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.cases.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn run(&self, filter: Option<&str>, ctx: &RunContext) -> Report {
        let selected: Vec<&dyn VerificationCase> = self
            .cases
            .iter()
            .filter(|(id, _)| filter.is_none_or(|f| id.starts_with(f)))
            .map(|(_, c)| c.as_ref())
            .collect();
        let mut cases: Vec<CaseReport> = selected
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let outcome = c.run(ctx);
                let elapsed_ms = start.elapsed().as_millis() as u64;
                let (status, detail) = match outcome {
                    Ok(()) => (Status::Pass, None),
                    Err(Failure::Mismatch(d)) => (Status::Fail, Some(d)),
                    Err(Failure::Skip(d)) => (Status::Skipped, Some(d)),
                };
                CaseReport { id: c.id().to_string(), status, detail, elapsed_ms }
            })
            .collect();
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        Report { cases }
    }
}
