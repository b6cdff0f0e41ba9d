//! Fair interleaving of step-bounded computations.
//!
//! Round-robin with doubling step slices: in round `r` every task is re-run
//! from scratch with a fuel slice of `2^r`, capped at the caller's step
//! budget. A task that halts in `s` steps is reported exactly once, in the
//! first round whose slice reaches `s`. Re-running instead of resuming keeps
//! the schedule trivially deterministic at a geometric-overhead cost.

use super::eval::{Machine, Outcome};
use super::num::Nat;

pub struct Dovetail<'m> {
    machine: &'m Machine,
    tasks: Vec<(Nat, Nat)>,
    reported: Vec<bool>,
    max_steps: u64,
    slice: u64,
    pos: usize,
    done: bool,
}

/// Schedule every `(code, input)` task under a shared step budget.
pub fn dovetail<'m>(
    machine: &'m Machine,
    tasks: Vec<(Nat, Nat)>,
    max_steps: u64,
) -> Dovetail<'m> {
    let n = tasks.len();
    Dovetail {
        machine,
        tasks,
        reported: vec![false; n],
        max_steps: max_steps.max(1),
        slice: 1,
        pos: 0,
        done: false,
    }
}

impl<'m> Iterator for Dovetail<'m> {
    /// Task index paired with its halting outcome.
    type Item = (usize, Outcome);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            if self.pos >= self.tasks.len() {
                // Round finished; grow the slice or stop after the last one.
                if self.slice >= self.max_steps {
                    self.done = true;
                    return None;
                }
                self.slice = self.slice.saturating_mul(2).min(self.max_steps);
                self.pos = 0;
                continue;
            }
            let i = self.pos;
            self.pos += 1;
            if self.reported[i] {
                continue;
            }
            let (code, input) = &self.tasks[i];
            if let Ok(out @ Outcome::Halted { .. }) = self.machine.run(code, input, self.slice) {
                self.reported[i] = true;
                return Some((i, out));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::code::encode;
    use crate::machine::term::*;

    fn diverging_code() -> Nat {
        // (fix λs.λn. s n) loops forever on any input.
        encode(&fix(lam(lam(app(var(1), var(0)))))).unwrap()
    }

    fn const_code(k: u64) -> Nat {
        encode(&lam(t_nat(k))).unwrap()
    }

    #[test]
    fn halting_tasks_surface_and_divergent_ones_never_do() {
        let m = Machine::default();
        let tasks = vec![
            (diverging_code(), Nat::from(0u32)),
            (const_code(7), Nat::from(0u32)),
        ];
        let hits: Vec<_> = dovetail(&m, tasks, 1_000).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0, 1);
        assert!(hits[0].1.halted_with(&Nat::from(7u32)));
    }

    #[test]
    fn all_halting_tasks_appear_in_a_finite_prefix() {
        let m = Machine::default();
        let tasks = vec![
            (const_code(1), Nat::from(0u32)),
            (const_code(2), Nat::from(0u32)),
            (const_code(3), Nat::from(0u32)),
        ];
        let mut seen: Vec<usize> = dovetail(&m, tasks, 100).map(|(i, _)| i).collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
    }

    #[test]
    fn schedule_is_reproducible() {
        let m = Machine::default();
        let mk = || {
            vec![
                (const_code(5), Nat::from(0u32)),
                (diverging_code(), Nat::from(0u32)),
                (const_code(9), Nat::from(3u32)),
            ]
        };
        let a: Vec<_> = dovetail(&m, mk(), 500).collect();
        let b: Vec<_> = dovetail(&m, mk(), 500).collect();
        assert_eq!(a, b);
    }
}
