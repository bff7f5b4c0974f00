//! Enumeration budgets.
//!
//! Every operation that enumerates a candidate space (functions, natural
//! transformations, coend elements, …) checks the size of that space against
//! a budget before allocating, and refuses with
//! [`Error::BudgetExceeded`](crate::Error::BudgetExceeded) instead of
//! thrashing when the space is too large.

use crate::{Error, Result};

/// Cap on the number of candidates a single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

/// Default cap: one million candidates per enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Errors if `count` exceeds the budget; `what` names the enumeration.
    pub fn admit(&self, what: &str, count: u128) -> Result<()> {
        if count > self.0 as u128 {
            Err(Error::BudgetExceeded {
                what: what.to_string(),
                count,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` as a u128, or an error naming `what` when the budget is blown.
///
/// The count is computed exactly (u128 saturation is treated as overflow),
/// so callers can report the true candidate count in refusals.
pub fn admitted_pow(budget: Budget, what: &str, base: u64, exp: u32) -> Result<u64> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc > u64::MAX as u128 {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                count: acc,
                budget: budget.0,
            });
        }
    }
    budget.admit(what, acc)?;
    Ok(acc as u64)
}
