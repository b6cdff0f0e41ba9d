//! Explicit resource bounds and the three-valued query result.

use std::fmt;

/// Three-valued outcome of a budgeted semi-decision.
///
/// `True` and `False` are definitive: larger budgets never contradict them.
/// `Unknown` means the search frontier was cut by the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    pub fn is_unknown(self) -> bool {
        self == Verdict::Unknown
    }

    /// Three-valued conjunction (strong Kleene).
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }

    /// Three-valued negation.
    pub fn not(self) -> Verdict {
        use Verdict::*;
        match self {
            True => False,
            False => True,
            Unknown => Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "TRUE"),
            Verdict::False => write!(f, "FALSE"),
            Verdict::Unknown => write!(f, "UNKNOWN"),
        }
    }
}

/// Resource bound for a single query: how many indices to enumerate, how many
/// evaluator steps to spend per computation, and how deep to recurse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_index: u64,
    pub max_steps: u64,
    pub max_depth: u32,
}

impl Budget {
    pub fn new(max_index: u64, max_steps: u64, max_depth: u32) -> Self {
        Budget {
            max_index,
            max_steps,
            max_depth,
        }
    }

    /// One recursion level down. Saturates at zero; callers treat an exhausted
    /// depth as a budget cut.
    pub fn descend(self) -> Self {
        Budget {
            max_depth: self.max_depth.saturating_sub(1),
            ..self
        }
    }

    pub fn depth_exhausted(self) -> bool {
        self.max_depth == 0
    }

    /// Componentwise comparison used by the monotonicity tests.
    pub fn subsumes(self, other: Budget) -> bool {
        self.max_index >= other.max_index
            && self.max_steps >= other.max_steps
            && self.max_depth >= other.max_depth
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(64, 10_000, 8)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_index={} max_steps={} max_depth={}",
            self.max_index, self.max_steps, self.max_depth
        )
    }
}
