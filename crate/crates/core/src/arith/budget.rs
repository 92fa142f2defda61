use std::cell::Cell;

use super::{ArithError, Result};

pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

thread_local! {
    static BUDGET: Cell<usize> = const { Cell::new(DEFAULT_TERM_BUDGET) };
}

/// The term budget in force on the current thread.
pub fn term_budget() -> usize {
    BUDGET.with(Cell::get)
}

/// Runs `f` with the current thread's term budget set to `budget`, restoring
/// the previous value afterwards (also on unwind).
pub fn with_term_budget<T>(budget: usize, f: impl FnOnce() -> T) -> T {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            BUDGET.with(|b| b.set(self.0));
        }
    }
    let _restore = Restore(BUDGET.with(|b| b.replace(budget)));
    f()
}

pub fn check_terms(terms: usize) -> Result<()> {
    let budget = term_budget();
    if terms > budget {
        Err(ArithError::ResourceLimit { terms, budget })
    } else {
        Ok(())
    }
}
