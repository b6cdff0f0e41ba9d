//! Shared evaluation context: the machine, the condition-annotation registry,
//! and the default budget used when builders need to run code eagerly.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::budget::Budget;
use crate::cond::{Cond, CondInfo};
use crate::machine::{Machine, Nat, Oracle};

/// One engine = one machine context plus the side registry of structural
/// condition annotations. Annotations are append-only; they may be attached
/// only by library constructors and must be semantically faithful.
pub struct Engine {
    pub machine: Machine,
    /// Budget used by builders when they must run code at construction time
    /// (resolving enumeration certificates). Query budgets are always passed
    /// explicitly.
    pub build_budget: Budget,
    conds: RwLock<HashMap<Nat, CondInfo>>,
    numerals: RwLock<Vec<crate::vset::VSet>>,
}

impl Engine {
    pub fn new() -> Engine {
        Engine::with_oracle(Oracle::default())
    }

    /// Machine context with a specific total oracle. Everything else is
    /// unchanged; codes containing no oracle queries behave identically in
    /// every context.
    pub fn with_oracle(oracle: Oracle) -> Engine {
        Engine {
            machine: Machine::new(oracle),
            build_budget: Budget::default(),
            conds: RwLock::new(HashMap::new()),
            numerals: RwLock::new(Vec::new()),
        }
    }

    /// Attach a structural annotation to a condition code. First writer wins;
    /// re-registration is ignored so the registry is append-only.
    pub fn register_cond(&self, code: &Nat, info: CondInfo) {
        let mut map = self.conds.write().unwrap();
        map.entry(code.clone()).or_insert(info);
    }

    pub fn cond_info(&self, cond: &Cond) -> Option<CondInfo> {
        self.conds.read().unwrap().get(&cond.0).cloned()
    }

    pub(crate) fn cached_numeral(&self, n: u64) -> Option<crate::vset::VSet> {
        self.numerals.read().unwrap().get(n as usize).cloned()
    }

    pub(crate) fn numeral_cache_len(&self) -> u64 {
        self.numerals.read().unwrap().len() as u64
    }

    pub(crate) fn cache_numeral(&self, v: crate::vset::VSet) {
        self.numerals.write().unwrap().push(v);
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}
