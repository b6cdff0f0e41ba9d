//! The computability substrate.

pub mod code;
pub mod combinators;
pub mod dovetail;
pub mod eval;
#[cfg(test)]
mod eval_tests;
pub mod num;
pub mod oracle;
pub mod term;

pub use code::{decode, encode};
pub use dovetail::dovetail;
pub use eval::{Machine, Outcome};
pub use num::{left, pair, pair64, right, unpair, Nat};
pub use oracle::Oracle;
pub use term::Term;

use crate::error::{Error, Result};

/// Λ-abstraction: number a function given its body template. The template
/// may use de Bruijn index 0 for the argument slot and nothing else.
pub fn lam_build(template: &Term) -> Result<Nat> {
    let above = template.free_above();
    if above > 1 {
        return Err(Error::OpenTerm(above - 1));
    }
    code::encode(&Term::Lam(std::sync::Arc::new(template.clone())))
}

/// General recursion: from a code expecting `(self, arg)` to a self-applying
/// code. Applying the result unfolds one level per call.
pub fn fix_build(f: &Nat) -> Result<Nat> {
    let t = code::decode(f)?;
    code::encode(&Term::Fix(std::sync::Arc::new(t)))
}

/// Course-of-computation predicate. With `o` read as `⟨step_bound, output⟩`,
/// it holds exactly when code `e` on input `i` halts within `o`'s step bound
/// with `o`'s output. Total and decidable; malformed codes never halt.
pub fn kleene_t(machine: &Machine, e: &Nat, i: &Nat, o: &Nat) -> bool {
    let (bound, out) = num::unpair(o);
    let fuel = num::to_u64(&bound).unwrap_or(u64::MAX);
    match machine.run(e, i, fuel) {
        Ok(outcome) => outcome.halted_with(&out),
        Err(_) => false,
    }
}

/// Output extraction from a computation record.
pub fn u_proj(o: &Nat) -> Nat {
    num::right(o)
}
