//! Runner for the acceptance criteria: each criterion is a named check with
//! an optional runtime budget, reported as one PASS/FAIL line.

use std::time::{Duration, Instant};

/// `Ok(detail)` on success, `Err(reason)` on failure.
pub type Outcome = Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Option<Duration>,
    pub check: fn() -> Outcome,
}

impl Criterion {
    pub fn new(
        id: u32,
        name: &'static str,
        budget_secs: Option<u64>,
        check: fn() -> Outcome,
    ) -> Self {
        Self {
            id,
            name,
            budget: budget_secs.map(Duration::from_secs),
            check,
        }
    }

    /// Runs the check; exceeding the budget turns a pass into a failure.
    pub fn evaluate(&self) -> (Outcome, Duration) {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, self.budget) {
            (Ok(_), Some(b)) if elapsed > b => {
                Err(format!("runtime {elapsed:.2?} over budget {b:?}"))
            }
            (o, _) => o,
        };
        (outcome, elapsed)
    }
}

pub fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Prints one line per criterion and a summary; returns the failure count.
pub fn run_all(criteria: &[Criterion]) -> usize {
    let mut failed = 0;
    for c in criteria {
        let (outcome, elapsed) = c.evaluate();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!(
            "criterion {:>2} {tag} {} [{elapsed:.2?}]: {detail}",
            c.id, c.name
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    failed
}
