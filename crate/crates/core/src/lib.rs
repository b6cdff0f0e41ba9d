//! Engine for computable conditional-enumeration sets.
//!
//! Sets are plain natural numbers: codes of machine programs that enumerate
//! `(element, condition)` pairs. The engine builds such sets, semi-decides
//! extensional equality and membership under explicit budgets, and produces
//! numeric witnesses that can be independently re-verified.
//!
//! The crate is organised bottom-up:
//!
//! * [`machine`] — the computability substrate: a step-counted evaluator for a
//!   small call-by-value calculus with Gödel numbering, Cantor pairing,
//!   fixpoints, dovetailing and a pluggable total oracle.
//! * [`cond`] — the condition algebra (true, false, the infinitary implication
//!   `Ξ`, derived conjunction and negation) and its budgeted three-valued
//!   evaluator.
//! * [`vset`] — builders and accessors for v-sets: empty set, pairing, union,
//!   numerals and omega, collection, choice sequences, exponentials, the
//!   Kronecker delta and friends.
//! * [`eq`] — budgeted bisimulation equality with construction, verification
//!   and algebra of equality witnesses.
//! * [`wset`] — the equational interpretation: w-sets, canonically witnessed
//!   equations, the translation between conditions and equations, and the
//!   isomorphism with v-sets.

pub mod budget;
pub mod cond;
pub mod engine;
pub mod eq;
pub mod error;
pub mod machine;
pub mod vset;
pub mod wset;

pub use budget::{Budget, Verdict};
pub use engine::Engine;
pub use error::{Error, Result};
pub use machine::num::{pair, pair64, unpair, Nat};
