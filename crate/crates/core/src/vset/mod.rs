//! V-sets: codes that enumerate `(element, condition)` pairs.
//!
//! A `VSet` is a code plus an optional structural annotation. The code is
//! always the ground truth — running it on an index and unpairing the output
//! gives the entry — but the annotation is what lets the engine answer
//! exactly: it knows which indices can carry a true condition, what the
//! elements are as structured sets rather than bare numbers, and whether the
//! enumeration is exhaustive (the prerequisite for any negative verdict).

pub mod builders;
pub mod templates;

use std::fmt;
use std::sync::Arc;

use crate::budget::{Budget, Verdict};
use crate::cond::{self, Cond, CondInfo, CondKind};
use crate::engine::Engine;
use crate::error::Result;
use crate::machine::code::decode;
use crate::machine::num::{self, Nat};
use crate::machine::term::Term;
use crate::machine::{dovetail, Outcome};

/// A coded set: the enumeration program plus what the engine knows about it.
#[derive(Debug, Clone)]
pub struct VSet {
    pub code: Nat,
    pub info: Arc<SetInfo>,
}

impl VSet {
    pub fn raw(code: Nat) -> VSet {
        VSet {
            code,
            info: Arc::new(SetInfo::Raw),
        }
    }

    pub(crate) fn with_info(code: Nat, info: SetInfo) -> VSet {
        VSet {
            code,
            info: Arc::new(info),
        }
    }

    /// Wrap a code produced at runtime, recovering structure when the code
    /// has a recognisable shape.
    pub fn from_code(engine: &Engine, code: Nat) -> VSet {
        let info = recognize_set(engine, &code, 0);
        VSet::with_info(code, info)
    }

    /// The numeral value when this set is a certified von Neumann numeral.
    pub fn numeral_value(&self) -> Option<u64> {
        match &*self.info {
            SetInfo::Finite(cert) => cert.numeral,
            _ => None,
        }
    }

    pub fn is_omega(&self) -> bool {
        matches!(&*self.info, SetInfo::Total { map: ElemMap::Numerals, .. })
    }
}

/// Enumeration certificate.
#[derive(Debug)]
pub enum SetInfo {
    /// Complete list of the entries that can carry a non-false condition,
    /// up to repetition.
    Finite(FiniteCert),
    /// Every condition is true; elements are described by a total map.
    Total { map: ElemMap },
    /// Built over a partial sequence; entries surface by dovetailing `seq`.
    Dop {
        seq: Nat,
        /// Set when this code arose by applying a subset-collection map:
        /// `(map code, argument)`.
        from_apply: Option<(Nat, Nat)>,
    },
    /// No structural knowledge; enumeration runs the code index by index.
    Raw,
}

#[derive(Debug)]
pub struct FiniteCert {
    pub entries: Vec<Entry>,
    /// Whether the list is known to cover every potentially-true entry.
    pub exhaustive: bool,
    /// Set exactly for von Neumann numerals.
    pub numeral: Option<u64>,
}

impl FiniteCert {
    pub fn exhaustive(entries: Vec<Entry>) -> FiniteCert {
        FiniteCert {
            entries,
            exhaustive: true,
            numeral: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub elem: EntrySlot,
    pub cond: EntryCond,
    pub index: IndexSpec,
}

/// An element that is either already known as a set or still pending a
/// machine run (for example the output of a caller-supplied witness code).
#[derive(Debug, Clone)]
pub enum EntrySlot {
    Set(VSet),
    /// The element is the output of `code` on `input`.
    Run { code: Nat, input: Nat },
    /// The element is the left half of the entry `code` yields on `input`.
    RunEntry { code: Nat, input: Nat },
}

/// Condition of an entry at certificate level. `Equal` families stand for a
/// whole index family `R̄(e, l, r)` over all `e`; their truth is an equality
/// query and their representative index comes from the witness found.
#[derive(Debug, Clone)]
pub enum EntryCond {
    Plain(Cond),
    Equal(VSet, VSet),
    And(Box<EntryCond>, Box<EntryCond>),
}

/// How to materialise a raw enumeration index for an entry.
#[derive(Debug, Clone)]
pub enum IndexSpec {
    At(Nat),
    /// `⟨inner, ⟨steps, out⟩⟩` in the enumeration of a partial-sequence set.
    Dop { seq: Nat, at: Box<IndexSpec> },
    /// Cantor pair of two component indices.
    PairOf(Box<IndexSpec>, Box<IndexSpec>),
    /// `base + e` where `e` is the equality witness of the entry's condition.
    WitnessPlus(Nat),
    /// `⟨k, e⟩` with `e` the equality witness.
    WitnessUnder(Nat),
}

/// Total element maps for all-true enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemMap {
    /// Index `n` carries the numeral for `n`.
    Numerals,
    /// Elements are whatever the set's own code outputs.
    ByCode,
    /// Index `e` carries the output of `map` applied to `e`.
    Apply { map: Nat },
}

// --- entry access -----------------------------------------------------------

/// Run the set's code on one index and split the output into element and
/// condition codes. `None` means the computation outran the step budget.
pub fn entry(engine: &Engine, x: &VSet, n: &Nat, b: Budget) -> Result<Option<(Nat, Cond)>> {
    match engine.machine.run(&x.code, n, b.max_steps)? {
        Outcome::Halted { value, .. } => {
            let (el, cd) = num::unpair(&value);
            Ok(Some((el, Cond(cd))))
        }
        Outcome::StillRunning => Ok(None),
    }
}

/// One row of an enumeration listing.
#[derive(Debug, Clone)]
pub struct ElemsRow {
    pub index: Option<Nat>,
    pub elem: Option<VSet>,
    pub verdict: Verdict,
}

/// Enumerate under a budget. The boolean reports exhaustiveness: `true`
/// means no element exists beyond the rows returned.
pub fn elems(engine: &Engine, x: &VSet, b: Budget) -> (Vec<ElemsRow>, bool) {
    let (entries, exhaustive) = resolve_entries(engine, x, b);
    let rows = entries
        .into_iter()
        .map(|e| {
            let index = resolve_index(engine, &e.index, e.cwitness.as_ref(), b);
            ElemsRow {
                index,
                elem: e.elem,
                verdict: e.verdict,
            }
        })
        .collect();
    (rows, exhaustive)
}

// --- resolved entries --------------------------------------------------------

/// A certificate entry evaluated at a budget.
#[derive(Debug, Clone)]
pub(crate) struct REntry {
    pub elem: Option<VSet>,
    pub verdict: Verdict,
    /// Witness of the `Equal` condition when the verdict came from one.
    pub cwitness: Option<Nat>,
    pub index: IndexSpec,
    /// Concrete condition code when the certificate pins one.
    pub raw_cond: Option<Cond>,
}

pub(crate) fn entry_cond_eval(
    engine: &Engine,
    c: &EntryCond,
    b: Budget,
) -> (Verdict, Option<Nat>) {
    match c {
        EntryCond::Plain(p) => {
            let v = cond::eval_cond(engine, p, b).unwrap_or(Verdict::Unknown);
            (v, None)
        }
        EntryCond::Equal(l, r) => {
            let res = crate::eq::eq(engine, l, r, b.descend());
            (res.verdict, res.witness.map(|w| w.0))
        }
        EntryCond::And(a, c2) => {
            let (va, wa) = entry_cond_eval(engine, a, b);
            if va == Verdict::False {
                return (Verdict::False, None);
            }
            let (vc, wc) = entry_cond_eval(engine, c2, b);
            (va.and(vc), wa.or(wc))
        }
    }
}

/// Evaluate a set's entries under a budget. Returns the entries paired with
/// an exhaustiveness flag for the whole enumeration.
pub(crate) fn resolve_entries(engine: &Engine, x: &VSet, b: Budget) -> (Vec<REntry>, bool) {
    match &*x.info {
        SetInfo::Finite(cert) => {
            let mut out = Vec::with_capacity(cert.entries.len());
            for e in &cert.entries {
                let (verdict, cwitness) = entry_cond_eval(engine, &e.cond, b);
                let elem = match &e.elem {
                    EntrySlot::Set(v) => Some(v.clone()),
                    EntrySlot::Run { code, input } => {
                        match engine.machine.run(code, input, b.max_steps) {
                            Ok(Outcome::Halted { value, .. }) => {
                                Some(VSet::from_code(engine, value))
                            }
                            _ => None,
                        }
                    }
                    EntrySlot::RunEntry { code, input } => {
                        match engine.machine.run(code, input, b.max_steps) {
                            Ok(Outcome::Halted { value, .. }) => {
                                let (el, _) = num::unpair(&value);
                                Some(VSet::from_code(engine, el))
                            }
                            _ => None,
                        }
                    }
                };
                let raw_cond = match &e.cond {
                    EntryCond::Plain(c) => Some(c.clone()),
                    _ => None,
                };
                out.push(REntry {
                    elem,
                    verdict,
                    cwitness,
                    index: e.index.clone(),
                    raw_cond,
                });
            }
            (out, cert.exhaustive)
        }
        SetInfo::Total { map } => {
            let mut out = Vec::new();
            for n in 0..=b.max_index {
                let idx = Nat::from(n);
                let elem = match map {
                    ElemMap::Numerals => Some(builders::numeral(engine, n)),
                    ElemMap::ByCode | ElemMap::Apply { .. } => {
                        match engine.machine.run(&x.code, &idx, b.max_steps) {
                            Ok(Outcome::Halted { value, .. }) => {
                                let (el, _) = num::unpair(&value);
                                Some(VSet::from_code(engine, el))
                            }
                            _ => None,
                        }
                    }
                };
                out.push(REntry {
                    elem,
                    verdict: Verdict::True,
                    cwitness: None,
                    index: IndexSpec::At(idx),
                    raw_cond: None,
                });
            }
            (out, false)
        }
        SetInfo::Dop { seq, .. } => {
            let tasks: Vec<(Nat, Nat)> = (0..=b.max_index)
                .map(|n| (seq.clone(), Nat::from(n)))
                .collect();
            let mut out = Vec::new();
            for (i, outc) in dovetail(&engine.machine, tasks, b.max_steps) {
                if let Outcome::Halted { value, steps } = outc {
                    let (el, cd) = num::unpair(&value);
                    let cd = Cond(cd);
                    if matches!(cd.kind(), CondKind::Reserved) {
                        continue;
                    }
                    let verdict =
                        cond::eval_cond(engine, &cd, b.descend()).unwrap_or(Verdict::Unknown);
                    let raw_index = num::pair(
                        &Nat::from(i as u64),
                        &num::pair(&Nat::from(steps), &value),
                    );
                    out.push(REntry {
                        elem: Some(VSet::from_code(engine, el)),
                        verdict,
                        cwitness: None,
                        index: IndexSpec::At(raw_index),
                        raw_cond: Some(cd),
                    });
                }
            }
            (out, false)
        }
        SetInfo::Raw => {
            let mut out = Vec::new();
            for n in 0..=b.max_index {
                let idx = Nat::from(n);
                if let Ok(Some((el, cd))) = entry(engine, x, &idx, b) {
                    if matches!(cd.kind(), CondKind::Reserved) {
                        continue;
                    }
                    let verdict =
                        cond::eval_cond(engine, &cd, b.descend()).unwrap_or(Verdict::Unknown);
                    out.push(REntry {
                        elem: Some(VSet::from_code(engine, el)),
                        verdict,
                        cwitness: None,
                        index: IndexSpec::At(idx),
                        raw_cond: Some(cd),
                    });
                }
            }
            (out, false)
        }
    }
}

/// Materialise a raw index for a resolved entry.
pub(crate) fn resolve_index(
    engine: &Engine,
    spec: &IndexSpec,
    cwitness: Option<&Nat>,
    b: Budget,
) -> Option<Nat> {
    match spec {
        IndexSpec::At(n) => Some(n.clone()),
        IndexSpec::WitnessPlus(base) => cwitness.map(|w| base + w),
        IndexSpec::WitnessUnder(k) => cwitness.map(|w| num::pair(k, w)),
        IndexSpec::PairOf(l, r) => {
            let a = resolve_index(engine, l, cwitness, b)?;
            let c = resolve_index(engine, r, cwitness, b)?;
            Some(num::pair(&a, &c))
        }
        IndexSpec::Dop { seq, at } => {
            let inner = resolve_index(engine, at, cwitness, b)?;
            match engine.machine.run(seq, &inner, b.max_steps) {
                Ok(Outcome::Halted { value, steps }) => Some(num::pair(
                    &inner,
                    &num::pair(&Nat::from(steps), &value),
                )),
                _ => None,
            }
        }
    }
}

// --- shape recognition ---------------------------------------------------------

const MAX_RECOGNIZE_DEPTH: u32 = 24;

/// Recover the certificate of a code produced at runtime by one of the
/// engine's own templates. Anything unrecognised stays raw; that is always
/// sound, just less decisive.
pub fn recognize_set(engine: &Engine, code: &Nat, depth: u32) -> SetInfo {
    if depth > MAX_RECOGNIZE_DEPTH {
        return SetInfo::Raw;
    }
    let Ok(term) = decode(code) else {
        return SetInfo::Raw;
    };
    if let Some(info) = recognize_term(engine, &term, depth) {
        info
    } else {
        SetInfo::Raw
    }
}

fn recognize_term(engine: &Engine, term: &Term, depth: u32) -> Option<SetInfo> {
    use crate::machine::term::Term::*;

    let Lam(body) = term else { return None };

    // Empty set: Λn.⟨0,⊥⟩.
    if let Pair(a, b2) = &**body {
        if matches!((&**a, &**b2), (Nat(x), Nat(y)) if num::is_zero(x) && num::is_zero(y)) {
            return Some(SetInfo::Finite(FiniteCert {
                entries: vec![],
                exhaustive: true,
                numeral: Some(0),
            }));
        }
    }

    // Numeral: Λm.⟨F m, if (m<n) then ⊥-branch…⟩ — the readback of the
    // numeral generator applied to n.
    if let Pair(head, cond) = &**body {
        if let (App(fgen, v0), IfZero(scrut, z, four)) = (&**head, &**cond) {
            if matches!(&**v0, Var(0))
                && matches!(&**z, Nat(n) if num::is_zero(n))
                && matches!(&**four, Nat(n) if *n == num::Nat::from(4u32))
                && **fgen == templates::num_gen()
            {
                if let App(lt_m, nlit) = &**scrut {
                    if let (App(lt, vm), Nat(n)) = (&**lt_m, &**nlit) {
                        if matches!(&**vm, Var(0))
                            && **lt == crate::machine::combinators::c_lt()
                        {
                            if let Some(k) = num::to_u64(n) {
                                return Some(numeral_info(engine, k));
                            }
                        }
                    }
                }
            }
        }
        // Omega: Λn.⟨F n, ⊤⟩ with the generator embedded as a code literal
        // or inlined as a term.
        if let (App(fgen, v0), Nat(four)) = (&**head, &**cond) {
            let gen_matches = match &**fgen {
                Nat(g) => *g == templates::num_gen_code(),
                other => *other == templates::num_gen(),
            };
            if matches!(&**v0, Var(0)) && *four == num::Nat::from(4u32) && gen_matches {
                return Some(SetInfo::Total {
                    map: ElemMap::Numerals,
                });
            }
        }
    }

    // Pairing: Λn. if parity n = 0 then ⟨a,⊤⟩ else ⟨b,⊤⟩.
    if let IfZero(scrut, evn, odd) = &**body {
        if let App(par, v0) = &**scrut {
            if matches!(&**v0, Var(0)) && **par == crate::machine::combinators::c_parity() {
                if let (Pair(a, ta), Pair(b2, tb)) = (&**evn, &**odd) {
                    if let (Nat(a), Nat(four_a), Nat(b2), Nat(four_b)) =
                        (&**a, &**ta, &**b2, &**tb)
                    {
                        if *four_a == num::Nat::from(4u32) && *four_b == num::Nat::from(4u32) {
                            let xa = VSet::with_info(
                                a.clone(),
                                recognize_set(engine, a, depth + 1),
                            );
                            let xb = VSet::with_info(
                                b2.clone(),
                                recognize_set(engine, b2, depth + 1),
                            );
                            return Some(SetInfo::Finite(FiniteCert::exhaustive(vec![
                                Entry {
                                    elem: EntrySlot::Set(xa),
                                    cond: EntryCond::Plain(Cond::top()),
                                    index: IndexSpec::At(num::Nat::from(0u32)),
                                },
                                Entry {
                                    elem: EntrySlot::Set(xb),
                                    cond: EntryCond::Plain(Cond::top()),
                                    index: IndexSpec::At(num::Nat::from(1u32)),
                                },
                            ])));
                        }
                    }
                }
            }
        }
    }

    // Kronecker delta: Λn.⟨0̄, RBAR ⟨n, ⟨x, y⟩⟩⟩.
    if let Pair(zero, rb) = &**body {
        if let (Nat(z), App(rbar, packed)) = (&**zero, &**rb) {
            if **rbar == templates::rbar_obj() {
                if let Pair(v0, xy) = &**packed {
                    if matches!(&**v0, Var(0)) {
                        if let Pair(xc, yc) = &**xy {
                            if let (Nat(xc), Nat(yc)) = (&**xc, &**yc) {
                                let zero_set = VSet::with_info(
                                    z.clone(),
                                    recognize_set(engine, z, depth + 1),
                                );
                                let l = VSet::with_info(
                                    xc.clone(),
                                    recognize_set(engine, xc, depth + 1),
                                );
                                let r = VSet::with_info(
                                    yc.clone(),
                                    recognize_set(engine, yc, depth + 1),
                                );
                                return Some(SetInfo::Finite(FiniteCert::exhaustive(vec![
                                    Entry {
                                        elem: EntrySlot::Set(zero_set),
                                        cond: EntryCond::Equal(l, r),
                                        index: IndexSpec::WitnessPlus(num::Nat::from(0u32)),
                                    },
                                ])));
                            }
                        }
                    }
                }
            }
        }
    }

    // Partial-sequence sets: the d_op wrapper around a sequence. The
    // sequence slot is a code literal when built host-side and an inlined
    // closure readback when produced by applying a collection map; either
    // way its number is recoverable.
    if let App(inner, runb) = &**body {
        if let (Lam(_), RunBounded(seq, i_arg, s_arg)) = (&**inner, &**runb) {
            if let (Left(iv), Left(sr)) = (&**i_arg, &**s_arg) {
                let i_ok = matches!(&**iv, Var(0));
                let s_ok = matches!(&**sr, Right(v) if matches!(&**v, Var(0)));
                if i_ok && s_ok {
                    let seq_code = match &**seq {
                        Nat(s) => Some(s.clone()),
                        t if t.is_closed() => {
                            Some(crate::machine::code::encode_unchecked(t))
                        }
                        _ => None,
                    };
                    if let Some(seq) = seq_code {
                        return Some(SetInfo::Dop {
                            seq,
                            from_apply: None,
                        });
                    }
                }
            }
        }
    }

    None
}

/// Certificate of the von Neumann numeral for `n` (entries are the smaller
/// numerals, conditions literally true below `n` and false elsewhere).
pub(crate) fn numeral_info(engine: &Engine, n: u64) -> SetInfo {
    let entries = (0..n)
        .map(|k| Entry {
            elem: EntrySlot::Set(builders::numeral(engine, k)),
            cond: EntryCond::Plain(Cond::top()),
            index: IndexSpec::At(Nat::from(k)),
        })
        .collect();
    SetInfo::Finite(FiniteCert {
        entries,
        exhaustive: true,
        numeral: Some(n),
    })
}

/// Structural recognition of equality-witness conditions assembled at
/// runtime: `Π(H(e_L,x,y), H(e_R,y,x))` with both halves matching the
/// engine's own templates.
pub fn recognize_rbar(engine: &Engine, c: &Cond) -> Option<CondInfo> {
    let CondKind::Xi(f, g) = c.kind() else {
        return None;
    };
    let Some(CondInfo::PiOf(h1, h2)) = cond::recognize(engine, &f, &g) else {
        return None;
    };
    let (d1, x1, y1) = recognize_h(&h1)?;
    let (d2, y2, x2) = recognize_h(&h2)?;
    if x1 != x2 || y1 != y2 {
        return None;
    }
    let left = VSet::with_info(x1.clone(), recognize_set(engine, &x1, 0));
    let right = VSet::with_info(y1.clone(), recognize_set(engine, &y1, 0));
    Some(CondInfo::RbarOf {
        witness: num::pair(&d1, &d2),
        left,
        right,
    })
}

/// Match one simulation half `H(d, x, y)`; returns `(d, x, y)`.
fn recognize_h(h: &Cond) -> Option<(Nat, Nat, Nat)> {
    use crate::machine::term::Term::*;

    let CondKind::Xi(f, g) = h.kind() else {
        return None;
    };
    // f = Λn. cd x n
    let ft = decode(&f).ok()?;
    let Lam(fb) = &ft else { return None };
    let Right(fapp) = &**fb else { return None };
    let App(xlit, v0) = &**fapp else { return None };
    if !matches!(&**v0, Var(0)) {
        return None;
    }
    let Nat(x) = &**xlit else { return None };

    // g = the J closure readback.
    let gt = decode(&g).ok()?;
    let Lam(gb) = &gt else { return None };
    let App(pi_part, sub_part) = &**gb else {
        return None;
    };
    let App(pi_t, cdym) = &**pi_part else {
        return None;
    };
    if **pi_t != templates::pi_obj() {
        return None;
    }
    // cdym = Right(App(Nat y, Left(App(Nat d, Var0))))
    let Right(cdym_app) = &**cdym else { return None };
    let App(ylit, m_expr) = &**cdym_app else {
        return None;
    };
    let Nat(y) = &**ylit else { return None };
    let d_from_m = match &**m_expr {
        Left(den) => match &**den {
            App(dlit, v) if matches!(&**v, Var(0)) => match &**dlit {
                Nat(d) => Some(d.clone()),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }?;
    // sub = App(RBAR, ⟨(d n)_R, ⟨el x n, el y (d n)_L⟩⟩); spot-check shape.
    let App(rbar_t, _packed) = &**sub_part else {
        return None;
    };
    if **rbar_t != templates::rbar_obj() {
        return None;
    }
    Some((d_from_m, x.clone(), y.clone()))
}

// --- audit ----------------------------------------------------------------------

/// Spot-check that a certificate is faithful to the code: resolve each
/// entry's representative index, run the code there, and compare the raw
/// output against the certified element (and condition, when pinned).
pub fn audit(engine: &Engine, x: &VSet, b: Budget) -> bool {
    let (entries, _) = resolve_entries(engine, x, b);
    for e in entries {
        let Some(idx) = resolve_index(engine, &e.index, e.cwitness.as_ref(), b) else {
            continue;
        };
        let Ok(Some((el, cd))) = entry(engine, x, &idx, b) else {
            return false;
        };
        if let Some(v) = &e.elem {
            if v.code != el {
                return false;
            }
        }
        if let Some(c) = &e.raw_cond {
            if c.0 != cd.0 {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.info {
            SetInfo::Finite(cert) => {
                if let Some(n) = cert.numeral {
                    return write!(f, "num {n}");
                }
                write!(f, "set({} entries)", cert.entries.len())
            }
            SetInfo::Total { map: ElemMap::Numerals } => write!(f, "omega"),
            SetInfo::Total { .. } => write!(f, "total-set"),
            SetInfo::Dop { .. } => write!(f, "partial-enumeration-set"),
            SetInfo::Raw => write!(f, "set#"),
        }
    }
}
