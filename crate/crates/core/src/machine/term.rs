//! The term grammar of the machine calculus.
//!
//! Terms use de Bruijn indices. Every number is a potential program: the
//! evaluator applies a number by decoding it, so codes of lambda terms act as
//! first-class functions. Data lives in arbitrary-precision naturals, composed
//! and decomposed through Cantor pairing.

use std::sync::Arc;

use super::num::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// Numeric literal.
    Nat(Nat),
    /// de Bruijn variable.
    Var(u32),
    /// Abstraction; the body binds index 0.
    Lam(Arc<Term>),
    /// Application. When the function position evaluates to a number, the
    /// number is decoded and applied (universal application).
    App(Arc<Term>, Arc<Term>),
    /// Cantor pairing of two evaluated operands.
    Pair(Arc<Term>, Arc<Term>),
    /// Left Cantor projection.
    Left(Arc<Term>),
    /// Right Cantor projection.
    Right(Arc<Term>),
    Succ(Arc<Term>),
    /// Truncated predecessor: `Pred 0 = 0`.
    Pred(Arc<Term>),
    /// Doubling; together with `Succ` it builds the odd condition codes.
    Dbl(Arc<Term>),
    /// `IfZero(s, t, e)`: `t` when `s` evaluates to zero, `e` otherwise.
    /// Only the taken branch is evaluated.
    IfZero(Arc<Term>, Arc<Term>, Arc<Term>),
    /// Decidable equality on naturals: 1 when equal, 0 otherwise.
    NatEq(Arc<Term>, Arc<Term>),
    /// General recursion. `Fix(t)` is a value; applying it unfolds once:
    /// `(Fix t) v  ↦  (t (Fix t)) v`.
    Fix(Arc<Term>),
    /// Query the ambient total oracle.
    OracleQ(Arc<Term>),
    /// `RunBounded(e, i, s)`: run code `e` on input `i` for at most `s` steps
    /// of the inner computation; yields `⟨1, output⟩` on a halt within the
    /// bound and `⟨0, 0⟩` otherwise. Inner steps are charged to the caller.
    RunBounded(Arc<Term>, Arc<Term>, Arc<Term>),
}

impl Term {
    /// Largest free de Bruijn index plus one; 0 for closed terms.
    pub fn free_above(&self) -> u32 {
        fn go(t: &Term, depth: u32, acc: &mut u32) {
            match t {
                Term::Nat(_) => {}
                Term::Var(i) => {
                    if *i >= depth {
                        let free = i - depth + 1;
                        if free > *acc {
                            *acc = free;
                        }
                    }
                }
                Term::Lam(b) => go(b, depth + 1, acc),
                Term::App(a, b) | Term::Pair(a, b) | Term::NatEq(a, b) => {
                    go(a, depth, acc);
                    go(b, depth, acc);
                }
                Term::Left(a)
                | Term::Right(a)
                | Term::Succ(a)
                | Term::Pred(a)
                | Term::Dbl(a)
                | Term::Fix(a)
                | Term::OracleQ(a) => go(a, depth, acc),
                Term::IfZero(a, b, c) | Term::RunBounded(a, b, c) => {
                    go(a, depth, acc);
                    go(b, depth, acc);
                    go(c, depth, acc);
                }
            }
        }
        let mut acc = 0;
        go(self, 0, &mut acc);
        acc
    }

    pub fn is_closed(&self) -> bool {
        self.free_above() == 0
    }
}

// --- construction helpers -------------------------------------------------

pub fn t_nat(n: u64) -> Term {
    Term::Nat(Nat::from(n))
}

pub fn t_natn(n: Nat) -> Term {
    Term::Nat(n)
}

pub fn var(i: u32) -> Term {
    Term::Var(i)
}

pub fn lam(body: Term) -> Term {
    Term::Lam(Arc::new(body))
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Arc::new(f), Arc::new(a))
}

pub fn app2(f: Term, a: Term, b: Term) -> Term {
    app(app(f, a), b)
}

pub fn tpair(a: Term, b: Term) -> Term {
    Term::Pair(Arc::new(a), Arc::new(b))
}

pub fn tleft(t: Term) -> Term {
    Term::Left(Arc::new(t))
}

pub fn tright(t: Term) -> Term {
    Term::Right(Arc::new(t))
}

pub fn succ(t: Term) -> Term {
    Term::Succ(Arc::new(t))
}

pub fn pred(t: Term) -> Term {
    Term::Pred(Arc::new(t))
}

pub fn dbl(t: Term) -> Term {
    Term::Dbl(Arc::new(t))
}

pub fn ifz(s: Term, then: Term, els: Term) -> Term {
    Term::IfZero(Arc::new(s), Arc::new(then), Arc::new(els))
}

pub fn nat_eq(a: Term, b: Term) -> Term {
    Term::NatEq(Arc::new(a), Arc::new(b))
}

pub fn fix(t: Term) -> Term {
    Term::Fix(Arc::new(t))
}

pub fn oracle_q(t: Term) -> Term {
    Term::OracleQ(Arc::new(t))
}

pub fn run_bounded(e: Term, i: Term, s: Term) -> Term {
    Term::RunBounded(Arc::new(e), Arc::new(i), Arc::new(s))
}
