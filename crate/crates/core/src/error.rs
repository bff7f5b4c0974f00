use thiserror::Error;

/// Failures of *construction*: shape mismatches, blown budgets, unmet
/// preconditions. Law violations are never errors — they are reported as
/// data by the check functions.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Composition of function tables with non-matching endpoints.
    #[error("cannot compose: after-map domain {g_dom} != before-map codomain {f_cod} (f: {f}, g: {g})")]
    ComposeMismatch {
        f: String,
        g: String,
        f_cod: usize,
        g_dom: usize,
    },

    /// An enumeration would visit more candidates than the budget allows.
    #[error("enumeration overflow: {what} has {count} candidates (budget {budget})")]
    BudgetExceeded {
        what: String,
        count: u128,
        budget: u64,
    },

    /// Malformed input data: a table of the wrong length, an index out of
    /// range, an object that does not exist.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A de Bruijn index escapes its scope.
    #[error("scope error: index {index} out of scope {scope}")]
    Scope { index: usize, scope: usize },

    /// A stated precondition does not hold (named so callers can tell which).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A construction needs an object the truncated universe does not have.
    #[error("out of universe: required size {size} not among the universe sizes")]
    OutOfUniverse { size: usize },

    /// Text input (λ-terms) that does not match the grammar.
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    /// Rewriting ran out of fuel before reaching a normal form.
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: u64 },
}
