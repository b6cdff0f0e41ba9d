//! Builders for every set construction the engine supports.
//!
//! Each builder produces an honest code — the set is the program, and anyone
//! can re-enumerate it index by index — together with the strongest
//! certificate the inputs support. Caller-supplied witness codes (for
//! collection, choice and recursion) are taken on faith: a witness that
//! diverges or lies shrinks the result or degrades verdicts to unknown, but
//! never corrupts a definite answer.

use super::templates::*;
use super::*;
use crate::budget::{Budget, Verdict};
use crate::cond::{self, Cond};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::machine::code::{encode, encode_unchecked};
use crate::machine::num::{self, Nat};
use crate::machine::term::*;
use crate::machine::Outcome;

fn run_build(engine: &Engine, code: &Nat, input: &Nat) -> Option<Nat> {
    match engine.machine.run(code, input, engine.build_budget.max_steps) {
        Ok(Outcome::Halted { value, .. }) => Some(value),
        _ => None,
    }
}

/// The set with no elements: `Λn.⟨0,⊥⟩`.
pub fn empty(engine: &Engine) -> VSet {
    let _ = engine;
    let code = encode_unchecked(&lam(tpair(t_nat(0), t_nat(0))));
    VSet::with_info(
        code,
        SetInfo::Finite(FiniteCert {
            entries: vec![],
            exhaustive: true,
            numeral: Some(0),
        }),
    )
}

/// The von Neumann numeral for `n`, materialised by running the numeral
/// generator so the code is bit-identical to what `omega` enumerates.
pub fn numeral(engine: &Engine, n: u64) -> VSet {
    if let Some(v) = engine.cached_numeral(n) {
        return v;
    }
    let gen = num_gen_code();
    let mut next = engine.numeral_cache_len();
    while next <= n {
        let code = run_build(engine, &gen, &Nat::from(next))
            .expect("numeral generator halts");
        let info = numeral_info(engine, next);
        engine.cache_numeral(VSet::with_info(code, info));
        next += 1;
    }
    engine.cached_numeral(n).expect("just cached")
}

/// The first infinite ordinal: `Λn.⟨n̄,⊤⟩`.
pub fn omega(engine: &Engine) -> VSet {
    let _ = engine;
    let code = encode_unchecked(&lam(tpair(
        app(t_natn(num_gen_code()), var(0)),
        t_nat(4),
    )));
    VSet::with_info(
        code,
        SetInfo::Total {
            map: ElemMap::Numerals,
        },
    )
}

/// Unordered pairing: even indices carry `x`, odd carry `y`.
pub fn pair_set(engine: &Engine, x: &VSet, y: &VSet) -> VSet {
    let _ = engine;
    let code = encode_unchecked(&pairset_term(&x.code, &y.code));
    VSet::with_info(
        code,
        SetInfo::Finite(FiniteCert::exhaustive(vec![
            Entry {
                elem: EntrySlot::Set(x.clone()),
                cond: EntryCond::Plain(Cond::top()),
                index: IndexSpec::At(Nat::from(0u32)),
            },
            Entry {
                elem: EntrySlot::Set(y.clone()),
                cond: EntryCond::Plain(Cond::top()),
                index: IndexSpec::At(Nat::from(1u32)),
            },
        ])),
    )
}

/// Kuratowski ordered pair `{{x},{x,y}}`.
pub fn kpair(engine: &Engine, x: &VSet, y: &VSet) -> VSet {
    let xx = pair_set(engine, x, x);
    let xy = pair_set(engine, x, y);
    pair_set(engine, &xx, &xy)
}

/// Lift a partial sequence of entry pairs into a set: index `⟨m,⟨s,out⟩⟩`
/// carries `out`'s entry exactly when the sequence provably halts on `m`
/// within `s` steps with output `out`.
pub fn d_op(engine: &Engine, seq: &Nat) -> VSet {
    let _ = engine;
    VSet::with_info(
        dop_code(seq),
        SetInfo::Dop {
            seq: seq.clone(),
            from_apply: None,
        },
    )
}

fn union_seq_term(x: &Nat) -> Term {
    // Λn. (λa. (λb. ⟨b_L, Π(a_R, b_R)⟩) (a_L n_R)) (x n_L)
    lam(app(
        lam(app(
            lam(tpair(
                tleft(var(0)),
                app2(pi_obj(), tright(var(1)), tright(var(0))),
            )),
            app(tleft(var(0)), tright(var(1))),
        )),
        app(t_natn(x.clone()), tleft(var(0))),
    ))
}

/// Union: elements of the elements.
pub fn union(engine: &Engine, x: &VSet) -> VSet {
    let _ = engine;
    let seq = encode_unchecked(&union_seq_term(&x.code));
    let code = dop_code(&seq);

    // Certify eagerly when the whole two-level structure is known finite.
    if let SetInfo::Finite(outer) = &*x.info {
        let mut entries = Vec::new();
        let mut complete = outer.exhaustive;
        'outer: for oe in &outer.entries {
            let EntrySlot::Set(elem) = &oe.elem else {
                complete = false;
                continue;
            };
            match &*elem.info {
                SetInfo::Finite(inner) => {
                    if !inner.exhaustive {
                        complete = false;
                    }
                    for ie in &inner.entries {
                        entries.push(Entry {
                            elem: ie.elem.clone(),
                            cond: EntryCond::And(
                                Box::new(oe.cond.clone()),
                                Box::new(ie.cond.clone()),
                            ),
                            index: IndexSpec::Dop {
                                seq: seq.clone(),
                                at: Box::new(IndexSpec::PairOf(
                                    Box::new(oe.index.clone()),
                                    Box::new(ie.index.clone()),
                                )),
                            },
                        });
                    }
                }
                _ => {
                    complete = false;
                    continue 'outer;
                }
            }
        }
        if complete {
            return VSet::with_info(
                code,
                SetInfo::Finite(FiniteCert {
                    entries,
                    exhaustive: true,
                    numeral: None,
                }),
            );
        }
    }
    VSet::with_info(
        code,
        SetInfo::Dop {
            seq,
            from_apply: None,
        },
    )
}

/// Binary union through pairing.
pub fn union_bin(engine: &Engine, x: &VSet, y: &VSet) -> VSet {
    let p = pair_set(engine, x, y);
    union(engine, &p)
}

/// The set `{xs}` of an explicit finite list, folded from pairings and
/// unions.
pub fn finite_set(engine: &Engine, elems: &[VSet]) -> VSet {
    match elems {
        [] => empty(engine),
        [a] => pair_set(engine, a, a),
        [a, rest @ ..] => {
            let mut acc = pair_set(engine, a, a);
            for e in rest {
                acc = union_bin(engine, &acc, &pair_set(engine, e, e));
            }
            acc
        }
    }
}

/// Separation by an index-condition map: entry `n` of `y` survives under the
/// conjunction of its own condition and `c(n)`. `c` is a total code from
/// indices to condition numbers.
pub fn separation(engine: &Engine, y: &VSet, c: &Nat) -> VSet {
    let code = encode_unchecked(&lam(app(
        lam(tpair(
            tleft(var(0)),
            app2(pi_obj(), tright(var(0)), app(t_natn(c.clone()), var(1))),
        )),
        app(t_natn(y.code.clone()), var(0)),
    )));

    if let SetInfo::Finite(cert) = &*y.info {
        let mut entries = Vec::new();
        let mut ok = true;
        for e in &cert.entries {
            // The map is consulted at the entry's raw index.
            let Some(idx) = resolve_index(engine, &e.index, None, engine.build_budget) else {
                ok = false;
                break;
            };
            let Some(cn) = run_build(engine, c, &idx) else {
                ok = false;
                break;
            };
            let cn = Cond(cn);
            let combined = match &e.cond {
                EntryCond::Plain(p) => EntryCond::Plain(cond::pi(engine, p, &cn)),
                other => EntryCond::And(
                    Box::new(other.clone()),
                    Box::new(EntryCond::Plain(cn)),
                ),
            };
            entries.push(Entry {
                elem: e.elem.clone(),
                cond: combined,
                index: e.index.clone(),
            });
        }
        if ok {
            return VSet::with_info(
                code,
                SetInfo::Finite(FiniteCert {
                    entries,
                    exhaustive: cert.exhaustive,
                    numeral: None,
                }),
            );
        }
    }
    VSet::with_info(code, SetInfo::Raw)
}

/// Strong-collection image: `D Λn.⟨e n, cd x n⟩` for a caller-supplied
/// witness `e`.
pub fn collect(engine: &Engine, x: &VSet, e: &Nat) -> VSet {
    let seq = encode_unchecked(&lam(tpair(
        app(t_natn(e.clone()), var(0)),
        tright(app(t_natn(x.code.clone()), var(0))),
    )));
    let code = dop_code(&seq);

    if let SetInfo::Finite(cert) = &*x.info {
        let mut entries = Vec::new();
        let mut ok = true;
        for xe in &cert.entries {
            let Some(idx) = resolve_index(engine, &xe.index, None, engine.build_budget) else {
                ok = false;
                break;
            };
            entries.push(Entry {
                elem: EntrySlot::Run {
                    code: e.clone(),
                    input: idx.clone(),
                },
                cond: xe.cond.clone(),
                index: IndexSpec::Dop {
                    seq: seq.clone(),
                    at: Box::new(IndexSpec::At(idx)),
                },
            });
        }
        if ok {
            return VSet::with_info(
                code,
                SetInfo::Finite(FiniteCert {
                    entries,
                    exhaustive: cert.exhaustive,
                    numeral: None,
                }),
            );
        }
    }
    VSet::with_info(
        code,
        SetInfo::Dop {
            seq,
            from_apply: None,
        },
    )
}

/// Subset collection: returns `(z, w)` where `w e` is always a subset of
/// `y` and `z` enumerates all the `w e`.
pub fn subset_collect(engine: &Engine, x: &VSet, y: &VSet) -> (VSet, Nat) {
    let _ = engine;
    // w = λe. DOPMK (Λn. (λa. ⟨a_L, Π(cd x n, a_R)⟩) (y (e n)))
    let w_term = lam(app(
        dopmk_obj(),
        lam(app(
            lam(tpair(
                tleft(var(0)),
                app2(
                    pi_obj(),
                    tright(app(t_natn(x.code.clone()), var(1))),
                    tright(var(0)),
                ),
            )),
            app(t_natn(y.code.clone()), app(var(1), var(0))),
        )),
    ));
    let w = encode(&w_term).expect("w template is closed");
    let z_code = encode_unchecked(&lam(tpair(
        app(t_natn(w.clone()), var(0)),
        t_nat(4),
    )));
    let z = VSet::with_info(
        z_code,
        SetInfo::Total {
            map: ElemMap::Apply { map: w.clone() },
        },
    );
    (z, w)
}

/// Apply a subset-collection map to a concrete witness code.
pub fn apply_w(engine: &Engine, w: &Nat, e: &Nat) -> Option<VSet> {
    let code = run_build(engine, w, e)?;
    let info = match recognize_set(engine, &code, 0) {
        SetInfo::Dop { seq, .. } => SetInfo::Dop {
            seq,
            from_apply: Some((w.clone(), e.clone())),
        },
        other => other,
    };
    Some(VSet::with_info(code, info))
}

/// Projective cover: `y` relabels `x`'s enumeration by numerals, `f` is the
/// graph of the surjection from `y` onto `x`.
pub fn projective_cover(engine: &Engine, x: &VSet) -> (VSet, VSet) {
    let gen = num_gen_code();
    let y_code = encode_unchecked(&lam(tpair(
        app(t_natn(gen.clone()), var(0)),
        tright(app(t_natn(x.code.clone()), var(0))),
    )));
    let f_code = encode_unchecked(&lam(app(
        lam(tpair(
            app2(
                kpair_obj(),
                app(t_natn(gen.clone()), var(1)),
                tleft(var(0)),
            ),
            tright(var(0)),
        )),
        app(t_natn(x.code.clone()), var(0)),
    )));

    let (y_info, f_info) = match &*x.info {
        SetInfo::Finite(cert) => {
            let mut y_entries = Vec::new();
            let mut f_entries = Vec::new();
            let mut ok = true;
            for xe in &cert.entries {
                let Some(idx) =
                    resolve_index(engine, &xe.index, None, engine.build_budget)
                else {
                    ok = false;
                    break;
                };
                let Some(n) = num::to_u64(&idx) else {
                    ok = false;
                    break;
                };
                let nbar = numeral(engine, n);
                y_entries.push(Entry {
                    elem: EntrySlot::Set(nbar.clone()),
                    cond: xe.cond.clone(),
                    index: xe.index.clone(),
                });
                if let EntrySlot::Set(a) = &xe.elem {
                    f_entries.push(Entry {
                        elem: EntrySlot::Set(kpair(engine, &nbar, a)),
                        cond: xe.cond.clone(),
                        index: xe.index.clone(),
                    });
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                (
                    SetInfo::Finite(FiniteCert {
                        entries: y_entries,
                        exhaustive: cert.exhaustive,
                        numeral: None,
                    }),
                    SetInfo::Finite(FiniteCert {
                        entries: f_entries,
                        exhaustive: cert.exhaustive,
                        numeral: None,
                    }),
                )
            } else {
                (SetInfo::Raw, SetInfo::Raw)
            }
        }
        SetInfo::Total { map } => (
            SetInfo::Total { map: map.clone() },
            SetInfo::Raw,
        ),
        _ => (SetInfo::Raw, SetInfo::Raw),
    };
    (
        VSet::with_info(y_code, y_info),
        VSet::with_info(f_code, f_info),
    )
}

/// Choice function over a projective cover: `D Λn.⟨⟨n̄, (e n)‾⟩_K, cd x n⟩`.
pub fn choice_fn(engine: &Engine, x: &VSet, e: &Nat) -> VSet {
    let gen = num_gen_code();
    let seq = encode_unchecked(&lam(app(
        lam(tpair(
            app2(
                kpair_obj(),
                app(t_natn(gen.clone()), var(1)),
                app(t_natn(gen.clone()), app(t_natn(e.clone()), var(1))),
            ),
            tright(var(0)),
        )),
        app(t_natn(x.code.clone()), var(0)),
    )));
    let code = dop_code(&seq);

    if let SetInfo::Finite(cert) = &*x.info {
        let mut entries = Vec::new();
        let mut ok = true;
        for xe in &cert.entries {
            let Some(idx) = resolve_index(engine, &xe.index, None, engine.build_budget) else {
                ok = false;
                break;
            };
            entries.push(Entry {
                elem: EntrySlot::RunEntry {
                    code: seq.clone(),
                    input: idx.clone(),
                },
                cond: xe.cond.clone(),
                index: IndexSpec::Dop {
                    seq: seq.clone(),
                    at: Box::new(IndexSpec::At(idx)),
                },
            });
        }
        if ok {
            return VSet::with_info(
                code,
                SetInfo::Finite(FiniteCert {
                    entries,
                    exhaustive: cert.exhaustive,
                    numeral: None,
                }),
            );
        }
    }
    VSet::with_info(
        code,
        SetInfo::Dop {
            seq,
            from_apply: None,
        },
    )
}

/// Dependent-choice sequence from a start index and a step witness.
pub fn dc_seq(engine: &Engine, z: &VSet, e: &Nat, n0: u64) -> VSet {
    let _ = engine;
    let gen = num_gen_code();
    let fiter = fix(lam(lam(ifz(
        var(0),
        t_nat(n0),
        app(t_natn(e.clone()), app(var(1), pred(var(0)))),
    ))));
    let code = encode_unchecked(&lam(tpair(
        app2(
            kpair_obj(),
            app(t_natn(gen), var(0)),
            tleft(app(t_natn(z.code.clone()), app(fiter, var(0)))),
        ),
        t_nat(4),
    )));
    VSet::with_info(
        code,
        SetInfo::Total {
            map: ElemMap::ByCode,
        },
    )
}

/// Relativised dependent choices: iterate `e` on a packed pair starting at
/// `⟨x, f⟩`, exposing the left components.
pub fn rdc_seq(engine: &Engine, e: &Nat, x: &Nat, f: &Nat) -> VSet {
    let _ = engine;
    let gen = num_gen_code();
    let jiter = fix(lam(lam(ifz(
        var(0),
        tpair(t_natn(x.clone()), t_natn(f.clone())),
        app(t_natn(e.clone()), app(var(1), pred(var(0)))),
    ))));
    let code = encode_unchecked(&lam(tpair(
        app2(
            kpair_obj(),
            app(t_natn(gen), var(0)),
            tleft(app(jiter, var(0))),
        ),
        t_nat(4),
    )));
    VSet::with_info(
        code,
        SetInfo::Total {
            map: ElemMap::ByCode,
        },
    )
}

/// The equality-witness condition `R̄(e, x, y)`: true exactly when `e`
/// witnesses the extensional equality of `x` and `y`.
pub fn rbar(engine: &Engine, e: &Nat, x: &VSet, y: &VSet) -> Cond {
    let packed = num::pair(e, &num::pair(&x.code, &y.code));
    let value = run_build(engine, &rbar_code(), &packed)
        .expect("equality-witness template halts");
    let c = Cond(value);
    engine.register_cond(
        &c.0,
        cond::CondInfo::RbarOf {
            witness: e.clone(),
            left: x.clone(),
            right: y.clone(),
        },
    );
    c
}

/// Kronecker delta: a subset of `1̄` inhabited exactly when `x ≃ y`.
pub fn delta(engine: &Engine, x: &VSet, y: &VSet) -> VSet {
    let zero = numeral(engine, 0);
    let code = encode_unchecked(&lam(tpair(
        t_natn(zero.code.clone()),
        app(
            t_natn(rbar_code()),
            tpair(var(0), tpair(t_natn(x.code.clone()), t_natn(y.code.clone()))),
        ),
    )));
    VSet::with_info(
        code,
        SetInfo::Finite(FiniteCert::exhaustive(vec![Entry {
            elem: EntrySlot::Set(zero),
            cond: EntryCond::Equal(x.clone(), y.clone()),
            index: IndexSpec::WitnessPlus(Nat::from(0u32)),
        }])),
    )
}

/// Infimum over a set of subsets of `1̄`: inhabited exactly when every
/// element is.
pub fn infimum(engine: &Engine, x: &VSet) -> VSet {
    let one = numeral(engine, 1);
    let xt_code = encode_unchecked(&lam(tpair(
        t_natn(one.code.clone()),
        tright(app(t_natn(x.code.clone()), var(0))),
    )));
    let xt_info = match &*x.info {
        SetInfo::Finite(cert) => SetInfo::Finite(FiniteCert {
            entries: cert
                .entries
                .iter()
                .map(|e| Entry {
                    elem: EntrySlot::Set(one.clone()),
                    cond: e.cond.clone(),
                    index: e.index.clone(),
                })
                .collect(),
            exhaustive: cert.exhaustive,
            numeral: None,
        }),
        SetInfo::Total { .. } => SetInfo::Total {
            map: ElemMap::ByCode,
        },
        _ => SetInfo::Raw,
    };
    let xt = VSet::with_info(xt_code, xt_info);
    delta(engine, x, &xt)
}

/// All functions from `x` to `y`, for certified-finite inputs: the explicit
/// enumeration of graphs.
pub fn exp_set(engine: &Engine, x: &VSet, y: &VSet) -> Result<VSet> {
    let b = engine.build_budget;
    let xs = decided_members(engine, x, b)?;
    let ys = decided_members(engine, y, b)?;
    let k = ys.len();
    let n = xs.len();
    if n == 0 {
        // One empty function.
        let e = empty(engine);
        return Ok(pair_set(engine, &e, &e));
    }
    let total = k
        .checked_pow(n as u32)
        .ok_or(Error::CertificateRequired)?;
    let mut graphs: Vec<VSet> = Vec::with_capacity(total);
    for pick in 0..total {
        let mut digits = pick;
        let mut pairs = Vec::with_capacity(n);
        for xv in &xs {
            let yv = &ys[digits % k];
            digits /= k;
            pairs.push(kpair(engine, xv, yv));
        }
        graphs.push(finite_set(engine, &pairs));
    }
    Ok(finite_set(engine, &graphs))
}

/// Distinct certified-true members of a finite set; an error when the set
/// lacks a finite certificate or the budget cannot decide its conditions.
fn decided_members(engine: &Engine, x: &VSet, b: Budget) -> Result<Vec<VSet>> {
    let SetInfo::Finite(cert) = &*x.info else {
        return Err(Error::CertificateRequired);
    };
    if !cert.exhaustive {
        return Err(Error::CertificateRequired);
    }
    let (entries, _) = resolve_entries(engine, x, b);
    let mut out: Vec<VSet> = Vec::new();
    for e in entries {
        match e.verdict {
            Verdict::Unknown => return Err(Error::CertificateRequired),
            Verdict::False => continue,
            Verdict::True => {
                let Some(v) = e.elem else {
                    return Err(Error::CertificateRequired);
                };
                if !out
                    .iter()
                    .any(|u| crate::eq::eq(engine, u, &v, b).verdict == Verdict::True)
                {
                    out.push(v);
                }
            }
        }
    }
    Ok(out)
}

/// Set-recursion combinator: `set_rec(e)` is a code `g` with
/// `g x = (e x)(Λn. g (el x n))`.
pub fn set_rec(engine: &Engine, e: &Nat) -> Result<Nat> {
    run_build(engine, &rho_code(), e).ok_or(Error::MalformedCode)
}

/// The two sets of the choice-refutation construction over an `x ⊆ 1̄`:
/// `A = {n ∈ 2̄ : n ≃ 0̄ ∨ (n ≃ 1̄ ∧ 0̄ ∈ x)}` and its mirror image. The
/// disjunction is realised by index-splitting and `0̄ ∈ x` collapses to
/// `x ≃ 1̄` for subsets of `1̄`.
pub fn diaconescu(engine: &Engine, x: &VSet) -> (VSet, VSet) {
    let zero = numeral(engine, 0);
    let one = numeral(engine, 1);
    let mk = |first: &VSet, second: &VSet| {
        let code = encode_unchecked(&lam(ifz(
            var(0),
            tpair(t_natn(first.code.clone()), t_nat(4)),
            tpair(
                t_natn(second.code.clone()),
                app(
                    t_natn(rbar_code()),
                    tpair(
                        pred(var(0)),
                        tpair(t_natn(x.code.clone()), t_natn(one.code.clone())),
                    ),
                ),
            ),
        )));
        VSet::with_info(
            code,
            SetInfo::Finite(FiniteCert::exhaustive(vec![
                Entry {
                    elem: EntrySlot::Set(first.clone()),
                    cond: EntryCond::Plain(Cond::top()),
                    index: IndexSpec::At(Nat::from(0u32)),
                },
                Entry {
                    elem: EntrySlot::Set(second.clone()),
                    cond: EntryCond::Equal(x.clone(), one.clone()),
                    index: IndexSpec::WitnessPlus(Nat::from(1u32)),
                },
            ])),
        )
    };
    (mk(&zero, &one), mk(&one, &zero))
}
