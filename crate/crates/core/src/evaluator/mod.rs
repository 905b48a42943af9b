//! Model checkers: Tarski semantics for first-order formulas and team
//! semantics for team and modal team formulas.

mod fo;
mod mtl;
mod team;

use thiserror::Error;

use crate::structures::StructureError;

pub use fo::{eval_fo, eval_ml};
pub use mtl::{eval_mtl, MtlEvaluator};
pub use team::{eval_hook, eval_team, TeamEvaluator};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),
    #[error("variable `{0}` is not assigned")]
    MissingVariable(String),
    #[error("symbol `{0}` is not interpreted")]
    UnknownSymbol(String),
    #[error("unknown dependency `{0}`")]
    UnknownDependency(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl EvalError {
    pub fn is_resource(&self) -> bool {
        matches!(self, EvalError::ResourceExhausted(_))
    }
}

/// Resource limits for team evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of supplementing functions (or successor teams) a
    /// single quantifier (or modality) may enumerate.
    pub max_candidates: u64,
    /// Largest total number of evaluation steps.
    pub max_nodes: u64,
    /// Largest `|RT|` for which successor teams are enumerated.
    pub max_successor_image: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_candidates: 1 << 24, max_nodes: 1 << 30, max_successor_image: 24 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_candidates: u64::MAX, max_nodes: u64::MAX, max_successor_image: 63 }
    }

    /// Scales every limit by the same factor (a CLI `--budget N`).
    pub fn with_nodes(nodes: u64) -> Self {
        Budget { max_candidates: nodes, max_nodes: nodes, ..Budget::default() }
    }
}

/// Evaluation strategy switches. None of them changes any verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Cache results per (subformula, team).
    pub memo: bool,
    /// Restrict teams to the free variables of each subformula.
    pub localize: bool,
    /// Enumerate splits as `U` then `S ⊇ T∖U`, skipping every `U` that
    /// fails its disjunct; also evaluates `α ↪ φ` directly on `T_α`.
    pub prune_splits: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { memo: true, localize: true, prune_splits: true }
    }
}

impl EvalOptions {
    /// Literal clause-by-clause evaluation: every cover and every
    /// supplementing function is visited.
    pub fn plain() -> Self {
        EvalOptions { memo: false, localize: false, prune_splits: false }
    }
}

/// Work counters of a single evaluator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Stats {
    pub nodes: u64,
    /// Cover candidates `(S, U)` visited for split disjunctions.
    pub splits: u64,
    /// Supplementing functions (or successor teams) visited.
    pub supplements: u64,
    pub memo_hits: u64,
}
