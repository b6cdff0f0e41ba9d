//! The condition algebra and its budgeted three-valued evaluator.
//!
//! Conditions are plain numbers: 0 is false, 4 is true, odd numbers are the
//! infinitary implication `Ξ(f,g)` over the Cantor pair of two sequence
//! codes, and numbers of the form `4f+2` are reserved for the bar operator
//! and rejected outright. Remaining multiples of four are raw: the engine
//! can try to refute them but never certifies them.
//!
//! Truth of `Ξ(f,g)` — every defined-and-true entry of `f` forces the same
//! entry of `g` defined-and-true — is undecidable in general, so positive
//! verdicts require structural knowledge: either a registry annotation left
//! by the constructor that built the condition, or a shape recognised from
//! the decoded sequence codes themselves. Refutation needs a fully halting
//! counterexample; a diverging consequent never refutes anything.

use std::fmt;

use crate::budget::{Budget, Verdict};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::machine::num::{self, Nat};
use crate::machine::term::*;
use crate::machine::{code, Outcome};
use crate::vset::VSet;

/// A condition code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cond(pub Nat);

pub const TOP_CODE: u64 = 4;
pub const BOTTOM_CODE: u64 = 0;

impl Cond {
    pub fn top() -> Cond {
        Cond(Nat::from(TOP_CODE))
    }

    pub fn bottom() -> Cond {
        Cond(Nat::from(BOTTOM_CODE))
    }

    pub fn kind(&self) -> CondKind {
        if num::is_zero(&self.0) {
            return CondKind::Bottom;
        }
        if self.0.bit(0) {
            // Odd: Ξ over the pair (f, g).
            let (f, g) = num::unpair(&((&self.0 - 1u32) / 2u32));
            return CondKind::Xi(f, g);
        }
        let residue = (&self.0 % 4u32).to_u64_digits();
        let r = residue.first().copied().unwrap_or(0);
        if r == 2 {
            return CondKind::Reserved;
        }
        if self.0 == Nat::from(TOP_CODE) {
            CondKind::Top
        } else {
            CondKind::Raw
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondKind {
    Bottom,
    Top,
    /// Odd code decomposed into the two sequence codes.
    Xi(Nat, Nat),
    /// `4f+2`: reserved for the bar operator.
    Reserved,
    /// Unstructured multiple of four.
    Raw,
}

/// Structural annotation for a condition, registered by the constructor that
/// built it (or recovered by the shape recogniser). Every annotation must be
/// semantically faithful to the code.
#[derive(Debug, Clone)]
pub enum CondInfo {
    /// The antecedent sequence is constantly this condition.
    ConstSeq(Cond),
    /// The antecedent yields false beyond `bound`; listed entries cover the
    /// rest. The consequent is probed by running the code.
    FiniteSupport { bound: u64, entries: Vec<(u64, Cond)> },
    /// Conjunction built through `Ξ`.
    PiOf(Cond, Cond),
    /// Negation: true exactly when the operand is not true.
    NegOf(Cond),
    /// Equality-witness condition: true exactly when `witness` witnesses the
    /// extensional equality of the two sets.
    RbarOf {
        witness: Nat,
        left: VSet,
        right: VSet,
    },
}

// --- constructors ----------------------------------------------------------

/// The infinitary implication on two sequence codes: the odd code
/// `2·⟨f,g⟩+1`. No annotation is attached; pair with a registration when the
/// structure is known.
pub fn xi(f: &Nat, g: &Nat) -> Cond {
    Cond(num::pair(f, g) * 2u32 + 1u32)
}

/// Code of the constant sequence `Λm.c`.
pub fn const_seq(c: &Cond) -> Nat {
    code::encode_unchecked(&lam(t_natn(c.0.clone())))
}

/// `Ξ` with a constant antecedent, annotated as such.
pub fn xi_const_ante(engine: &Engine, c: &Cond, g: &Nat) -> Cond {
    let out = xi(&const_seq(c), g);
    engine.register_cond(&out.0, CondInfo::ConstSeq(c.clone()));
    out
}

pub(crate) fn pi_ante_term(p: &Cond) -> Term {
    lam(ifz(var(0), t_nat(TOP_CODE), t_natn(p.0.clone())))
}

pub(crate) fn pi_cons_term(p: &Cond, q: &Cond) -> Term {
    lam(ifz(var(0), t_natn(p.0.clone()), t_natn(q.0.clone())))
}

/// Conjunction: asserts both `p` and `q`. Encoded through `Ξ` with the
/// antecedent `(⊤, p, p, …)` and consequent `(p, q, q, …)`, and annotated.
pub fn pi(engine: &Engine, p: &Cond, q: &Cond) -> Cond {
    let f = code::encode_unchecked(&pi_ante_term(p));
    let g = code::encode_unchecked(&pi_cons_term(p, q));
    let out = xi(&f, &g);
    engine.register_cond(&out.0, CondInfo::PiOf(p.clone(), q.clone()));
    out
}

/// Negation: `Ξ(Λm.p, Λm.⊥)`. True exactly when `p` is not true; meaningful
/// exactly when `p` is.
pub fn neg(engine: &Engine, p: &Cond) -> Cond {
    let f = code::encode_unchecked(&lam(t_natn(p.0.clone())));
    let g = code::encode_unchecked(&lam(t_nat(BOTTOM_CODE)));
    let out = xi(&f, &g);
    engine.register_cond(&out.0, CondInfo::NegOf(p.clone()));
    out
}

/// Compile a finite table of conditions into a sequence code: index `i` maps
/// to `conds[i]`, everything beyond maps to `default`.
pub fn cond_table_code(conds: &[Cond], default: &Cond) -> Nat {
    let mut body = t_natn(default.0.clone());
    for (i, c) in conds.iter().enumerate().rev() {
        body = ifz(
            nat_eq(var(0), t_nat(i as u64)),
            body,
            t_natn(c.0.clone()),
        );
    }
    code::encode_unchecked(&lam(body))
}

// --- shape recognition ------------------------------------------------------

/// Recover the structural annotation of a condition from the decoded shapes
/// of its sequence codes. Conditions produced at runtime by the engine's own
/// code templates have no registry entry, but their shape is unmistakable.
pub fn recognize(engine: &Engine, f: &Nat, g: &Nat) -> Option<CondInfo> {
    let ft = code::decode(f).ok()?;
    let gt = code::decode(g).ok()?;
    // ν(p): f = Λm.p, g = Λm.⊥
    if let (Term::Lam(fb), Term::Lam(gb)) = (&ft, &gt) {
        if let (Term::Nat(p), Term::Nat(z)) = (&**fb, &**gb) {
            if num::is_zero(z) {
                return Some(CondInfo::NegOf(Cond(p.clone())));
            }
        }
        // Π(p,q): f = Λm. if m=0 then ⊤ else p; g = Λm. if m=0 then p else q
        if let (Term::IfZero(fs, f0, f1), Term::IfZero(gs, g0, g1)) = (&**fb, &**gb) {
            if matches!(&**fs, Term::Var(0)) && matches!(&**gs, Term::Var(0)) {
                if let (Term::Nat(top), Term::Nat(p), Term::Nat(p2), Term::Nat(q)) =
                    (&**f0, &**f1, &**g0, &**g1)
                {
                    if *top == Nat::from(TOP_CODE) && p == p2 {
                        return Some(CondInfo::PiOf(Cond(p.clone()), Cond(q.clone())));
                    }
                }
            }
        }
        // Constant antecedent with an arbitrary consequent.
        if let Term::Nat(c) = &**fb {
            return Some(CondInfo::ConstSeq(Cond(c.clone())));
        }
    }
    let _ = engine;
    None
}

/// Look up or recover the annotation of a `Ξ` condition.
pub(crate) fn info_for(engine: &Engine, cond: &Cond, f: &Nat, g: &Nat) -> Option<CondInfo> {
    if let Some(info) = engine.cond_info(cond) {
        return Some(info);
    }
    if let Some(info) = crate::vset::recognize_rbar(engine, cond) {
        return Some(info);
    }
    recognize(engine, f, g)
}

// --- evaluation --------------------------------------------------------------

/// Budgeted truth. `True`/`False` are sound and never flip at larger
/// budgets; `Unknown` means the budget ran out before a certificate or a
/// counterexample was found.
pub fn eval_cond(engine: &Engine, p: &Cond, b: Budget) -> Result<Verdict> {
    match p.kind() {
        CondKind::Bottom => Ok(Verdict::False),
        CondKind::Top => Ok(Verdict::True),
        CondKind::Reserved => Err(Error::ReservedCondition),
        CondKind::Raw => Ok(Verdict::Unknown),
        CondKind::Xi(f, g) => {
            if b.depth_exhausted() {
                return Ok(Verdict::Unknown);
            }
            match info_for(engine, p, &f, &g) {
                Some(CondInfo::PiOf(q, r)) => {
                    let qv = eval_cond(engine, &q, b.descend())?;
                    if qv == Verdict::False {
                        return Ok(Verdict::False);
                    }
                    let rv = eval_cond(engine, &r, b.descend())?;
                    Ok(qv.and(rv))
                }
                Some(CondInfo::NegOf(q)) => {
                    Ok(eval_cond(engine, &q, b.descend())?.not())
                }
                Some(CondInfo::ConstSeq(c)) => {
                    match eval_cond(engine, &c, b.descend())? {
                        Verdict::False => Ok(Verdict::True),
                        // The antecedent holds somewhere (or might): only a
                        // halting counterexample can settle anything.
                        _ => refute_xi(engine, &f, &g, b),
                    }
                }
                Some(CondInfo::FiniteSupport { entries, .. }) => {
                    let mut verdict = Verdict::True;
                    for (i, fi) in &entries {
                        let fv = eval_cond(engine, fi, b.descend())?;
                        if fv == Verdict::False {
                            continue;
                        }
                        let gi = match run_seq(engine, &g, *i, b) {
                            Some(c) => c,
                            None => {
                                verdict = verdict.and(Verdict::Unknown);
                                continue;
                            }
                        };
                        let gv = eval_cond(engine, &gi, b.descend())?;
                        if fv == Verdict::True && gv == Verdict::False {
                            return Ok(Verdict::False);
                        }
                        verdict = verdict.and(if fv == Verdict::True {
                            gv
                        } else {
                            // Antecedent unknown: the instance is fine when
                            // the consequent holds outright, undecided else.
                            match gv {
                                Verdict::True => Verdict::True,
                                _ => Verdict::Unknown,
                            }
                        });
                    }
                    Ok(verdict)
                }
                Some(CondInfo::RbarOf {
                    witness,
                    left,
                    right,
                }) => crate::eq::verify_witness(
                    engine,
                    &crate::eq::EqWitness(witness),
                    &left,
                    &right,
                    b.descend(),
                ),
                None => refute_xi(engine, &f, &g, b),
            }
        }
    }
}

/// Counterexample search for a raw `Ξ(f,g)`: an index where the antecedent
/// halts and evaluates true while the consequent halts and evaluates false.
fn refute_xi(engine: &Engine, f: &Nat, g: &Nat, b: Budget) -> Result<Verdict> {
    for n in 0..=b.max_index {
        let Some(fc) = run_seq(engine, f, n, b) else {
            continue;
        };
        if matches!(fc.kind(), CondKind::Reserved) {
            continue;
        }
        if eval_cond(engine, &fc, b.descend())? != Verdict::True {
            continue;
        }
        let Some(gc) = run_seq(engine, g, n, b) else {
            continue;
        };
        if matches!(gc.kind(), CondKind::Reserved) {
            continue;
        }
        if eval_cond(engine, &gc, b.descend())? == Verdict::False {
            return Ok(Verdict::False);
        }
    }
    Ok(Verdict::Unknown)
}

fn run_seq(engine: &Engine, seq: &Nat, n: u64, b: Budget) -> Option<Cond> {
    match engine.machine.run(seq, &Nat::from(n), b.max_steps) {
        Ok(Outcome::Halted { value, .. }) => Some(Cond(value)),
        _ => None,
    }
}

/// Budgeted meaningfulness: the sufficient-condition check. True for the two
/// constants and for conditions whose annotation certifies the hypotheses
/// (all defined antecedent entries meaningful; consequent entries meaningful
/// where the antecedent is true). Raw codes stay unknown; constructor-built
/// conditions are never refuted.
pub fn meaningful_check(engine: &Engine, p: &Cond, b: Budget) -> Result<Verdict> {
    match p.kind() {
        CondKind::Bottom | CondKind::Top => Ok(Verdict::True),
        CondKind::Reserved => Err(Error::ReservedCondition),
        CondKind::Raw => Ok(Verdict::Unknown),
        CondKind::Xi(f, g) => {
            if b.depth_exhausted() {
                return Ok(Verdict::Unknown);
            }
            match info_for(engine, p, &f, &g) {
                Some(CondInfo::PiOf(q, r)) => {
                    let mq = meaningful_check(engine, &q, b.descend())?;
                    let need_r = eval_cond(engine, &q, b.descend())?;
                    let mr = match need_r {
                        Verdict::True => meaningful_check(engine, &r, b.descend())?,
                        Verdict::False => Verdict::True,
                        Verdict::Unknown => match meaningful_check(engine, &r, b.descend())? {
                            Verdict::True => Verdict::True,
                            _ => Verdict::Unknown,
                        },
                    };
                    Ok(mq.and(mr))
                }
                Some(CondInfo::NegOf(q)) => meaningful_check(engine, &q, b.descend()),
                Some(CondInfo::ConstSeq(c)) => {
                    let mc = meaningful_check(engine, &c, b.descend())?;
                    match eval_cond(engine, &c, b.descend())? {
                        Verdict::False => Ok(mc),
                        _ => Ok(mc.and(Verdict::Unknown)),
                    }
                }
                Some(CondInfo::FiniteSupport { entries, .. }) => {
                    let mut verdict = Verdict::True;
                    for (i, fi) in &entries {
                        verdict = verdict.and(meaningful_check(engine, fi, b.descend())?);
                        if eval_cond(engine, fi, b.descend())? == Verdict::True {
                            if let Some(gi) = run_seq(engine, &g, *i, b) {
                                verdict =
                                    verdict.and(meaningful_check(engine, &gi, b.descend())?);
                            } else {
                                verdict = verdict.and(Verdict::Unknown);
                            }
                        }
                    }
                    Ok(verdict)
                }
                // Equality conditions over v-sets are always meaningful.
                Some(CondInfo::RbarOf { .. }) => Ok(Verdict::True),
                None => Ok(Verdict::Unknown),
            }
        }
    }
}

/// Symbolic rendering: `⊤`, `⊥`, `Π(p,q)`, `ν(p)`, `R̄(x,y)`, `Ξ(#f,#g)`.
pub fn cond_symbol(engine: &Engine, p: &Cond) -> String {
    match p.kind() {
        CondKind::Bottom => "⊥".to_string(),
        CondKind::Top => "⊤".to_string(),
        CondKind::Reserved => "Ω(#)".to_string(),
        CondKind::Raw => "raw".to_string(),
        CondKind::Xi(f, g) => match info_for(engine, p, &f, &g) {
            Some(CondInfo::PiOf(q, r)) => format!(
                "Π({},{})",
                cond_symbol(engine, &q),
                cond_symbol(engine, &r)
            ),
            Some(CondInfo::NegOf(q)) => format!("ν({})", cond_symbol(engine, &q)),
            Some(CondInfo::RbarOf { .. }) => "R̄(·,·)".to_string(),
            _ => "Ξ(#,#)".to_string(),
        },
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            CondKind::Bottom => write!(f, "⊥"),
            CondKind::Top => write!(f, "⊤"),
            CondKind::Reserved => write!(f, "Ω(#)"),
            CondKind::Raw => write!(f, "raw#"),
            CondKind::Xi(..) => write!(f, "Ξ(#,#)"),
        }
    }
}
