//! Verification reports shared by every suite.

use rayon::prelude::*;
use serde::Serialize;

/// Outcome of a single identity check. `residual` is present exactly when
/// the check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl Check {
    /// A check whose residual is `None` on success.
    pub fn from_residual(id: impl Into<String>, anchor: impl Into<String>, residual: Option<String>) -> Self {
        Self { id: id.into(), anchor: anchor.into(), pass: residual.is_none(), residual }
    }

    pub fn boolean(id: impl Into<String>, anchor: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        Self::from_residual(id, anchor, (!ok).then(detail))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub algebra: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(suite: impl Into<String>, algebra: impl Into<String>, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Self { suite: suite.into(), algebra: algebra.into(), checks, seed: 0, elapsed_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

type Task<'a> = Box<dyn FnOnce() -> Check + Send + 'a>;

/// Independent checks evaluated on the ambient rayon pool.
#[derive(Default)]
pub struct CheckSet<'a> {
    tasks: Vec<Task<'a>>,
}

impl<'a> CheckSet<'a> {
    pub fn new() -> Self {
        Self { tasks: Vec::new() }
    }

    pub fn push(&mut self, task: impl FnOnce() -> Check + Send + 'a) {
        self.tasks.push(Box::new(task));
    }

    /// Adds a check that passes when `residual` returns `None`.
    pub fn residual(
        &mut self,
        id: impl Into<String>,
        anchor: impl Into<String>,
        residual: impl FnOnce() -> Option<String> + Send + 'a,
    ) {
        let (id, anchor) = (id.into(), anchor.into());
        self.push(move || Check::from_residual(id, anchor, residual()));
    }

    pub fn run(self) -> Vec<Check> {
        let mut out: Vec<Check> = self.tasks.into_par_iter().map(|t| t()).collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }
}
