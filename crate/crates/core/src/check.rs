use serde::{Deserialize, Serialize};

/// Outcome of a theorem check on one graph. `failures` lists every
/// counterexample found; an empty list means the check passed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Number of individual instances examined.
    pub instances: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}
