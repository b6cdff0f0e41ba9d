//! Small library of closed terms used when assembling codes.
//!
//! Arithmetic beyond the primitives is done the slow honest way, by recursion
//! on the numerals. The loops only ever run on enumeration indices and other
//! desk-scale numbers, never on embedded codes.

use std::sync::OnceLock;

use super::term::*;

fn cached(cell: &'static OnceLock<Term>, build: fn() -> Term) -> Term {
    cell.get_or_init(build).clone()
}

/// `λx. x`
pub fn c_id() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || lam(var(0)))
}

/// `λx. λy. x`
pub fn c_const() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || lam(lam(var(1))))
}

/// Truncated subtraction `a ∸ b`, curried.
pub fn c_sub() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(lam(ifz(
            var(0),
            var(1),
            app2(var(2), pred(var(1)), pred(var(0))),
        )))))
    })
}

/// Addition, curried.
pub fn c_add() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(lam(ifz(
            var(0),
            var(1),
            app2(var(2), succ(var(1)), pred(var(0))),
        )))))
    })
}

/// Multiplication by repeated addition, curried.
pub fn c_mul() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(lam(ifz(
            var(0),
            t_nat(0),
            app2(c_add(), var(1), app2(var(2), var(1), pred(var(0)))),
        )))))
    })
}

/// Strict order test: `a < b` gives 1, otherwise 0.
pub fn c_lt() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        lam(lam(ifz(
            app2(c_sub(), succ(var(1)), var(0)),
            t_nat(1),
            t_nat(0),
        )))
    })
}

/// Parity: 0 for even, 1 for odd.
pub fn c_parity() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(ifz(
            var(0),
            t_nat(0),
            ifz(pred(var(0)), t_nat(1), app(var(1), pred(pred(var(0))))),
        ))))
    })
}

/// Floor halving.
pub fn c_half() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(ifz(
            var(0),
            t_nat(0),
            ifz(
                pred(var(0)),
                t_nat(0),
                succ(app(var(1), pred(pred(var(0))))),
            ),
        ))))
    })
}
