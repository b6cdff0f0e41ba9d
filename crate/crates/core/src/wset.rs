//! The equational interpretation: w-sets and canonically witnessed
//! equations.

use crate::machine::num::Nat;

/// Placeholder while the module is under construction.
#[derive(Debug, Clone)]
pub struct WSet {
    pub code: Nat,
}
