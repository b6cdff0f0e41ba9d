//! Budgeted semi-decision of extensional equality and membership, with
//! construction, verification and algebra of equality witnesses.
//!
//! A witness `e` for `x ≃ y` packs two simulation directions: `e_L` maps
//! every true index of `x` to a pair of a true index of `y` and a witness
//! for the elements' equality, and `e_R` does the converse. The search
//! assembles witnesses as finite lookup tables over representative indices;
//! reflexivity, symmetry and composition are honest programs built once and
//! applied to set codes.
//!
//! Verdicts are sound by construction: `True` requires a witness that was
//! actually assembled, `False` requires an exhaustive enumeration
//! certificate on the refuting side, and everything else is `Unknown`.

use std::collections::HashMap;

use crate::budget::{Budget, Verdict};

use crate::engine::Engine;
use crate::machine::code::encode_unchecked;
use crate::machine::num::{self, Nat};
use crate::machine::term::*;
use crate::machine::Outcome;
use crate::vset::templates::{comp_code, reflw_code};
use crate::vset::{self, REntry, SetInfo, VSet};

/// A numeric equality witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqWitness(pub Nat);

/// Matching report of a query.
#[derive(Debug, Clone, Default)]
pub struct MatchTrace {
    /// Resolved index pairs that were matched (left, right).
    pub matched: Vec<(Option<Nat>, Option<Nat>)>,
    /// Whether some frontier was cut by the budget.
    pub budget_cut: bool,
    /// Human-readable note for refutations.
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct EqResult {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `True`.
    pub witness: Option<EqWitness>,
    pub trace: MatchTrace,
}

impl EqResult {
    fn unknown(cut: bool) -> EqResult {
        EqResult {
            verdict: Verdict::Unknown,
            witness: None,
            trace: MatchTrace {
                budget_cut: cut,
                ..Default::default()
            },
        }
    }

    fn falsum(note: String) -> EqResult {
        EqResult {
            verdict: Verdict::False,
            witness: None,
            trace: MatchTrace {
                note: Some(note),
                ..Default::default()
            },
        }
    }
}

/// Membership answer: the equality result against the matched element plus
/// the enumeration index it was found at.
#[derive(Debug, Clone)]
pub struct MemberResult {
    pub result: EqResult,
    pub index: Option<Nat>,
}

type MemoKey = (Nat, Nat, u32);

struct Ctx<'e> {
    engine: &'e Engine,
    memo: HashMap<MemoKey, (Verdict, Option<Nat>)>,
}

/// Semi-decide `x ≃ y` under a budget.
pub fn eq(engine: &Engine, x: &VSet, y: &VSet, b: Budget) -> EqResult {
    let mut ctx = Ctx {
        engine,
        memo: HashMap::new(),
    };
    eq_inner(&mut ctx, x, y, b)
}

fn eq_inner(ctx: &mut Ctx, x: &VSet, y: &VSet, b: Budget) -> EqResult {
    // Intensional identity: one set, two names.
    if x.code == y.code {
        return EqResult {
            verdict: Verdict::True,
            witness: Some(refl_witness(ctx.engine, x)),
            trace: MatchTrace::default(),
        };
    }
    // Certified numerals decide by value.
    if let (Some(m), Some(n)) = (x.numeral_value(), y.numeral_value()) {
        return if m == n {
            EqResult {
                verdict: Verdict::True,
                witness: Some(refl_witness(ctx.engine, x)),
                trace: MatchTrace::default(),
            }
        } else {
            EqResult::falsum(format!("numerals {m} and {n} differ"))
        };
    }
    // Identical total element maps enumerate identically.
    if let (SetInfo::Total { map: mx }, SetInfo::Total { map: my }) = (&*x.info, &*y.info) {
        if mx == my {
            return EqResult {
                verdict: Verdict::True,
                witness: Some(refl_witness(ctx.engine, x)),
                trace: MatchTrace::default(),
            };
        }
    }
    let key = (x.code.clone(), y.code.clone(), b.max_depth);
    if let Some((verdict, wit)) = ctx.memo.get(&key) {
        return EqResult {
            verdict: *verdict,
            witness: wit.clone().map(EqWitness),
            trace: MatchTrace::default(),
        };
    }
    if b.depth_exhausted() {
        return EqResult::unknown(true);
    }

    let result = bisim(ctx, x, y, b);
    ctx.memo.insert(
        key,
        (result.verdict, result.witness.as_ref().map(|w| w.0.clone())),
    );
    result
}

/// One direction of the matching loop. Returns per-entry matches, whether a
/// refutation was found, and whether anything stayed pending.
struct DirOutcome {
    matches: Vec<(usize, usize, Nat)>,
    refuted: Option<String>,
    pending: bool,
    cut: bool,
}

fn match_direction(
    ctx: &mut Ctx,
    from: &[REntry],
    from_exhaustive: bool,
    into: &[REntry],
    into_exhaustive: bool,
    b: Budget,
    label: &str,
) -> DirOutcome {
    let mut out = DirOutcome {
        matches: Vec::new(),
        refuted: None,
        // A direction is only ever confirmed from a certificate-complete
        // enumeration: entries beyond the scan horizon of an open-ended set
        // could still be members.
        pending: !from_exhaustive,
        cut: false,
    };
    for (i, fe) in from.iter().enumerate() {
        if fe.verdict == Verdict::False {
            continue;
        }
        let Some(felem) = &fe.elem else {
            out.pending = true;
            out.cut = true;
            continue;
        };
        let mut matched = false;
        let mut all_ruled_out = true;
        for (j, te) in into.iter().enumerate() {
            let Some(telem) = &te.elem else {
                all_ruled_out = false;
                continue;
            };
            if te.verdict == Verdict::False {
                continue;
            }
            let sub = eq_inner(ctx, felem, telem, b.descend());
            match sub.verdict {
                Verdict::True if te.verdict == Verdict::True => {
                    let w = sub.witness.expect("true verdicts carry witnesses");
                    out.matches.push((i, j, w.0));
                    matched = true;
                    break;
                }
                Verdict::True | Verdict::Unknown => {
                    // Possibly equal but the target's own condition (or the
                    // equality itself) is undecided: no refutation through
                    // this candidate.
                    all_ruled_out = false;
                }
                Verdict::False => {}
            }
        }
        if matched {
            continue;
        }
        if fe.verdict == Verdict::True && into_exhaustive && all_ruled_out {
            out.refuted = Some(format!(
                "{label}: certified member at entry {i} has no counterpart"
            ));
            return out;
        }
        out.pending = true;
    }
    out
}

fn bisim(ctx: &mut Ctx, x: &VSet, y: &VSet, b: Budget) -> EqResult {
    let (xs, xexh) = vset::resolve_entries(ctx.engine, x, b);
    let (ys, yexh) = vset::resolve_entries(ctx.engine, y, b);

    let fwd = match_direction(ctx, &xs, xexh, &ys, yexh, b, "left");
    if let Some(note) = fwd.refuted {
        return EqResult::falsum(note);
    }
    let bwd = match_direction(ctx, &ys, yexh, &xs, xexh, b, "right");
    if let Some(note) = bwd.refuted {
        return EqResult::falsum(note);
    }
    if fwd.pending || bwd.pending {
        return EqResult::unknown(true);
    }

    // Both simulations complete: assemble the witness tables.
    let mut trace = MatchTrace::default();
    let mut left_rows = Vec::new();
    for (i, j, sub) in &fwd.matches {
        let Some(nx) = entry_index(ctx.engine, &xs[*i], b) else {
            return EqResult::unknown(true);
        };
        let Some(ny) = entry_index(ctx.engine, &ys[*j], b) else {
            return EqResult::unknown(true);
        };
        trace.matched.push((Some(nx.clone()), Some(ny.clone())));
        left_rows.push((nx, num::pair(&ny, sub)));
    }
    let mut right_rows = Vec::new();
    for (i, j, sub) in &bwd.matches {
        let Some(ny) = entry_index(ctx.engine, &ys[*i], b) else {
            return EqResult::unknown(true);
        };
        let Some(nx) = entry_index(ctx.engine, &xs[*j], b) else {
            return EqResult::unknown(true);
        };
        right_rows.push((ny, num::pair(&nx, sub)));
    }
    let e = num::pair(&table_code(&left_rows), &table_code(&right_rows));
    EqResult {
        verdict: Verdict::True,
        witness: Some(EqWitness(e)),
        trace,
    }
}

fn entry_index(engine: &Engine, e: &REntry, b: Budget) -> Option<Nat> {
    vset::resolve_index(engine, &e.index, e.cwitness.as_ref(), b)
}

/// Finite lookup table as a code: exact-match chain with default 0.
fn table_code(rows: &[(Nat, Nat)]) -> Nat {
    let mut body = t_nat(0);
    for (k, v) in rows.iter().rev() {
        body = ifz(
            nat_eq(var(0), t_natn(k.clone())),
            body,
            t_natn(v.clone()),
        );
    }
    encode_unchecked(&lam(body))
}

/// Membership: search the enumeration for a true entry equal to `a`.
pub fn member(engine: &Engine, a: &VSet, x: &VSet, b: Budget) -> MemberResult {
    let mut ctx = Ctx {
        engine,
        memo: HashMap::new(),
    };
    // Sets produced by applying a subset-collection map are members of that
    // map's collection by construction, at the index they were applied at.
    if let (SetInfo::Dop { from_apply: Some((w, e)), .. }, SetInfo::Total { map }) =
        (&*a.info, &*x.info)
    {
        if let vset::ElemMap::Apply { map: m } = map {
            if m == w {
                return MemberResult {
                    result: EqResult {
                        verdict: Verdict::True,
                        witness: Some(refl_witness(engine, a)),
                        trace: MatchTrace::default(),
                    },
                    index: Some(e.clone()),
                };
            }
        }
    }
    let (xs, exhaustive) = vset::resolve_entries(engine, x, b);
    let mut pending = false;
    for xe in &xs {
        let Some(elem) = &xe.elem else {
            pending = true;
            continue;
        };
        if xe.verdict == Verdict::False {
            continue;
        }
        let sub = eq_inner(&mut ctx, a, elem, b.descend());
        match (xe.verdict, sub.verdict) {
            (Verdict::True, Verdict::True) => {
                let index = entry_index(engine, xe, b);
                return MemberResult {
                    result: EqResult {
                        verdict: Verdict::True,
                        witness: sub.witness,
                        trace: sub.trace,
                    },
                    index,
                };
            }
            (_, Verdict::False) => {}
            _ => pending = true,
        }
    }
    if exhaustive && !pending {
        return MemberResult {
            result: EqResult::falsum("no certified entry matches".to_string()),
            index: None,
        };
    }
    MemberResult {
        result: EqResult::unknown(true),
        index: None,
    }
}

/// Check both simulation clauses of a witness under a budget. `True` needs
/// every certified true entry of both sides to check out and the
/// enumerations to be certificate-covered; a concrete clause violation is
/// `False`; anything cut short is `Unknown`.
pub fn verify_witness(
    engine: &Engine,
    e: &EqWitness,
    x: &VSet,
    y: &VSet,
    b: Budget,
) -> crate::error::Result<Verdict> {
    if b.depth_exhausted() {
        return Ok(Verdict::Unknown);
    }
    let (el, er) = num::unpair(&e.0);
    let (xs, xexh) = vset::resolve_entries(engine, x, b);
    let (ys, yexh) = vset::resolve_entries(engine, y, b);
    let fwd = verify_direction(engine, &el, &xs, y, b)?;
    if fwd == Verdict::False {
        return Ok(Verdict::False);
    }
    let bwd = verify_direction(engine, &er, &ys, x, b)?;
    if bwd == Verdict::False {
        return Ok(Verdict::False);
    }
    let mut verdict = fwd.and(bwd);
    if !(xexh && yexh) {
        verdict = verdict.and(Verdict::Unknown);
    }
    Ok(verdict)
}

fn verify_direction(
    engine: &Engine,
    dir: &Nat,
    from: &[REntry],
    into: &VSet,
    b: Budget,
) -> crate::error::Result<Verdict> {
    let mut verdict = Verdict::True;
    for fe in from {
        match fe.verdict {
            Verdict::False => continue,
            Verdict::Unknown => {
                verdict = verdict.and(Verdict::Unknown);
                continue;
            }
            Verdict::True => {}
        }
        let (Some(felem), Some(n)) = (&fe.elem, entry_index(engine, fe, b)) else {
            verdict = verdict.and(Verdict::Unknown);
            continue;
        };
        // The direction code must halt on the index. A malformed direction
        // provably never does, which is a certified clause violation; a
        // budget cut is merely unknown.
        let value = match engine.machine.run(dir, &n, b.max_steps) {
            Ok(Outcome::Halted { value, .. }) => value,
            Ok(Outcome::StillRunning) => {
                verdict = verdict.and(Verdict::Unknown);
                continue;
            }
            Err(_) => return Ok(Verdict::False),
        };
        let (m, sub) = num::unpair(&value);
        // …land on a true index of the target…
        match vset::entry(engine, into, &m, b)? {
            None => {
                verdict = verdict.and(Verdict::Unknown);
                continue;
            }
            Some((tel, tcd)) => {
                match crate::cond::eval_cond(engine, &tcd, b.descend()) {
                    Ok(Verdict::True) => {
                        // …and the sub-witness must verify recursively.
                        let telem = VSet::from_code(engine, tel);
                        let sv = verify_witness(
                            engine,
                            &EqWitness(sub),
                            felem,
                            &telem,
                            b.descend(),
                        )?;
                        if sv == Verdict::False {
                            return Ok(Verdict::False);
                        }
                        verdict = verdict.and(sv);
                    }
                    Ok(Verdict::False) => return Ok(Verdict::False),
                    Ok(Verdict::Unknown) => {
                        verdict = verdict.and(Verdict::Unknown);
                    }
                    Err(_) => {
                        verdict = verdict.and(Verdict::Unknown);
                    }
                }
            }
        }
    }
    Ok(verdict)
}

/// The reflexivity witness: a single recursive program applied to the set's
/// own code, mapping every index to itself with a self-witness for the
/// element.
pub fn refl_witness(engine: &Engine, x: &VSet) -> EqWitness {
    let out = engine
        .machine
        .run(&reflw_code(), &x.code, engine.build_budget.max_steps)
        .ok()
        .and_then(|o| o.value().cloned())
        .expect("reflexivity generator halts");
    EqWitness(out)
}

/// Swap the two simulation directions.
pub fn sym_witness(e: &EqWitness) -> EqWitness {
    let (l, r) = num::unpair(&e.0);
    EqWitness(num::pair(&r, &l))
}

/// Chain two witnesses along a common middle set.
pub fn compose_witness(engine: &Engine, e1: &EqWitness, e2: &EqWitness) -> EqWitness {
    let packed = num::pair(&e1.0, &e2.0);
    let out = engine
        .machine
        .run(&comp_code(), &packed, engine.build_budget.max_steps)
        .ok()
        .and_then(|o| o.value().cloned())
        .expect("composition generator halts");
    EqWitness(out)
}
