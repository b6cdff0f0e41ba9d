//! Object-level code templates shared by the set builders.
//!
//! Everything a construction needs at runtime — building a conjunction
//! condition out of two condition numbers, assembling an equality-witness
//! condition, forming pairings and Kuratowski pairs of codes — is phrased as
//! a closed term here. Host-side builders and these templates must stay in
//! lock step: a condition assembled by running a template must be the same
//! number the host constructor produces, which is what lets certificates be
//! audited against raw runs.

use std::sync::OnceLock;

use crate::machine::code::{encode, encode_unchecked};
use crate::machine::combinators::{c_lt, c_parity};
use crate::machine::num::Nat;
use crate::machine::term::*;

fn cached(cell: &'static OnceLock<Term>, build: fn() -> Term) -> Term {
    cell.get_or_init(build).clone()
}

fn cached_code(cell: &'static OnceLock<Nat>, term: fn() -> Term) -> Nat {
    cell.get_or_init(|| encode(&term()).expect("template is closed"))
        .clone()
}

/// Coerce any value to its numeral: `Left ⟨v, 0⟩`. Used where a closure must
/// be flattened to its code before being embedded in another closure, so
/// that runtime output matches host-side literal construction bit for bit.
pub fn coerce(t: Term) -> Term {
    tleft(tpair(t, t_nat(0)))
}

/// `λp.λq. 2·⟨f_p, g_pq⟩+1` — the conjunction condition on two condition
/// numbers, with `f_p = Λm. if m=0 then ⊤ else p` and
/// `g_pq = Λm. if m=0 then p else q`.
pub fn pi_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        lam(lam(succ(dbl(tpair(
            lam(ifz(var(0), t_nat(4), var(2))),
            lam(ifz(var(0), var(2), var(1))),
        )))))
    })
}

/// `λf.λg. 2·⟨f,g⟩+1`.
pub fn xi_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || lam(lam(succ(dbl(tpair(var(1), var(0)))))))
}

/// `λx. Λn. cd x n` — the condition sequence of a set code.
pub fn cd_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || lam(lam(tright(app(var(1), var(0))))))
}

/// One simulation direction of the equality-witness condition:
/// `λR.λd.λx.λy. Ξ(Λn. cd x n, Λn. Π(cd y (dn)_L, R ⟨(dn)_R, ⟨el x n, el y (dn)_L⟩⟩))`.
pub fn h_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        // Depths inside the innermost lambda: R=4, d=3, x=2, y=1, n=0.
        let den = || app(var(3), var(0));
        let m = || tleft(den());
        let sub = app(
            var(4),
            tpair(
                tright(den()),
                tpair(
                    tleft(app(var(2), var(0))),
                    tleft(app(var(1), m())),
                ),
            ),
        );
        let j_body = app2(pi_obj(), tright(app(var(1), m())), sub);
        lam(lam(lam(lam(app2(
            xi_obj(),
            app(cd_obj(), var(1)),
            lam(j_body),
        )))))
    })
}

/// The recursive equality-witness condition on a packed argument
/// `⟨e, ⟨x, y⟩⟩`, unfolding to `Π(H(e_L,x,y), H(e_R,y,x))`.
pub fn rbar_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        // R = 1, t = 0.
        let e_l = || tleft(tleft(var(0)));
        let e_r = || tright(tleft(var(0)));
        let x = || tleft(tright(var(0)));
        let y = || tright(tright(var(0)));
        let h1 = app(app(app(app(h_obj(), var(1)), e_l()), x()), y());
        let h2 = app(app(app(app(h_obj(), var(1)), e_r()), y()), x());
        fix(lam(lam(app2(pi_obj(), h1, h2))))
    })
}

pub fn rbar_code() -> Nat {
    static C: OnceLock<Nat> = OnceLock::new();
    cached_code(&C, rbar_obj)
}

/// The numeral generator: `f = Λn.Λm.⟨f m, (⊤ if m<n else ⊥)⟩` by general
/// recursion. `f n` is the code of the von Neumann numeral for `n`.
pub fn num_gen() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(lam(tpair(
            app(var(2), var(0)),
            ifz(app2(c_lt(), var(0), var(1)), t_nat(0), t_nat(4)),
        )))))
    })
}

pub fn num_gen_code() -> Nat {
    static C: OnceLock<Nat> = OnceLock::new();
    cached_code(&C, num_gen)
}

/// `λa.λb. Λn. (⟨a,⊤⟩ if n even, ⟨b,⊤⟩ if n odd)`.
pub fn pairset_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        lam(lam(lam(ifz(
            app(c_parity(), var(0)),
            tpair(var(2), t_nat(4)),
            tpair(var(1), t_nat(4)),
        ))))
    })
}

/// Host-side twin of a `pairset_obj` application: the literal code of the
/// pairing of two set codes. Runtime readback produces the same bits.
pub fn pairset_term(a: &Nat, b: &Nat) -> Term {
    lam(ifz(
        app(c_parity(), var(0)),
        tpair(t_natn(a.clone()), t_nat(4)),
        tpair(t_natn(b.clone()), t_nat(4)),
    ))
}

/// `λa.λb. {{a},{a,b}}` over codes. Arguments and the inner pairings are
/// flattened to numerals before being embedded, so the resulting code is
/// bit-identical to the host-side construction no matter how the arguments
/// were produced.
pub fn kpair_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        let inner = lam(lam(app2(
            pairset_obj(),
            coerce(app2(pairset_obj(), var(1), var(1))),
            coerce(app2(pairset_obj(), var(1), var(0))),
        )));
        lam(lam(app2(inner, coerce(var(1)), coerce(var(0)))))
    })
}

/// Reflexivity witness generator: applied to a set code `x` it yields
/// `⟨L,L⟩` with `L = Λn.⟨n, self (el x n)⟩`.
pub fn reflw_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(app(
            lam(tpair(var(0), var(0))),
            lam(tpair(
                var(0),
                app(var(2), tleft(app(var(1), var(0)))),
            )),
        ))))
    })
}

pub fn reflw_code() -> Nat {
    static C: OnceLock<Nat> = OnceLock::new();
    cached_code(&C, reflw_obj)
}

/// Transitivity composition on a packed pair of witnesses `⟨e₁, e₂⟩`:
/// chases `e₁` then `e₂` on the left, `e₂` then `e₁` on the right, composing
/// sub-witnesses recursively.
pub fn comp_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        // Inside a direction body, from innermost: q2=0, q1=1, n=2, p=3, c=4.
        let direction = |first: fn(Term) -> Term, second: fn(Term) -> Term| {
            lam(app(
                lam(app(
                    lam(tpair(
                        tleft(var(0)),
                        app(var(4), tpair(tright(var(1)), tright(var(0)))),
                    )),
                    app(second(var(2)), tleft(var(0))),
                )),
                app(first(var(1)), var(0)),
            ))
        };
        let left_dir = direction(
            |p| tleft(tleft(p)),   // e₁_L
            |p| tleft(tright(p)),  // e₂_L
        );
        let right_dir = direction(
            |p| tright(tright(p)), // e₂_R
            |p| tright(tleft(p)),  // e₁_R
        );
        fix(lam(lam(tpair(left_dir, right_dir))))
    })
}

pub fn comp_code() -> Nat {
    static C: OnceLock<Nat> = OnceLock::new();
    cached_code(&C, comp_obj)
}

/// Set recursion: `ρ = Λe.Λx.(e x)(Λn.(ρ e)(el x n))`.
pub fn rho_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        fix(lam(lam(lam(app(
            app(var(1), var(0)),
            lam(app(
                app(var(3), var(2)),
                tleft(app(var(1), var(0))),
            )),
        )))))
    })
}

pub fn rho_code() -> Nat {
    static C: OnceLock<Nat> = OnceLock::new();
    cached_code(&C, rho_obj)
}

/// The partial-sequence operator on a sequence code: index `n` is read as
/// `⟨m, ⟨s, out⟩⟩`, the entry is `⟨out_L, p⟩` with `p = out_R` if the
/// sequence provably halts on `m` within `s` steps with output `out`, and
/// the false condition otherwise.
pub fn dop_term(seq: &Nat) -> Term {
    // Inside the inner lambda: n = 1, r (bounded-run result) = 0.
    let out = || tright(tright(var(1)));
    let cond = ifz(
        tleft(var(0)),
        t_nat(0),
        ifz(nat_eq(tright(var(0)), out()), t_nat(0), tright(out())),
    );
    lam(app(
        lam(tpair(tleft(out()), cond)),
        run_bounded(
            t_natn(seq.clone()),
            tleft(var(0)),
            tleft(tright(var(0))),
        ),
    ))
}

pub fn dop_code(seq: &Nat) -> Nat {
    encode_unchecked(&dop_term(seq))
}

/// Two-argument form of [`dop_term`] used where the sequence is only known
/// at runtime: `λs.λn. …`.
pub fn dopmk_obj() -> Term {
    static C: OnceLock<Term> = OnceLock::new();
    cached(&C, || {
        // λs.λn. (λr. ⟨out_L, cond⟩) (RunBounded s n_L (n_R)_L)
        let out = || tright(tright(var(1)));
        let cond = ifz(
            tleft(var(0)),
            t_nat(0),
            ifz(nat_eq(tright(var(0)), out()), t_nat(0), tright(out())),
        );
        lam(lam(app(
            lam(tpair(tleft(out()), cond)),
            run_bounded(var(1), tleft(var(0)), tleft(tright(var(0)))),
        )))
    })
}
