use super::code::encode;
use super::combinators::*;
use super::eval::{Machine, Outcome};
use super::num::{nat, pair64};
use super::oracle::Oracle;
use super::term::*;
use super::{fix_build, kleene_t, lam_build, u_proj};
use crate::error::Error;

fn halted(o: Outcome) -> u64 {
    match o {
        Outcome::Halted { value, .. } => {
            super::num::to_u64(&value).expect("fits in u64")
        }
        Outcome::StillRunning => panic!("expected a halt"),
    }
}

#[test]
fn successor_program() {
    let m = Machine::default();
    let c = encode(&lam(succ(var(0)))).unwrap();
    let out = m.run(&c, &nat(4), 100).unwrap();
    assert_eq!(halted(out), 5);
}

#[test]
fn divergence_is_still_running() {
    let m = Machine::default();
    let c = encode(&fix(lam(lam(app(var(1), var(0)))))).unwrap();
    assert_eq!(m.run(&c, &nat(0), 1000).unwrap(), Outcome::StillRunning);
}

#[test]
fn malformed_code_is_an_error() {
    let m = Machine::default();
    assert_eq!(m.run(&nat(2), &nat(0), 10), Err(Error::MalformedCode));
}

#[test]
fn empty_set_code_outputs_the_zero_pair() {
    let m = Machine::default();
    let c = encode(&lam(tpair(t_nat(0), t_nat(0)))).unwrap();
    let out = m.run(&c, &nat(7), 100).unwrap();
    assert!(out.halted_with(&pair64(0, 0)));
    assert!(out.halted_with(&nat(0)));
}

#[test]
fn step_counts_are_deterministic_and_monotone() {
    let m = Machine::default();
    // Parity of 9 by recursion: enough steps to be interesting.
    let c = encode(&c_parity()).unwrap();
    let a = m.run(&c, &nat(9), 10_000).unwrap();
    let b = m.run(&c, &nat(9), 10_000).unwrap();
    assert_eq!(a, b);
    let (value, steps) = match a {
        Outcome::Halted { value, steps } => (value, steps),
        _ => panic!("parity halts"),
    };
    assert_eq!(value, nat(1));
    // Monotone: same value and count at any larger bound.
    for extra in [1u64, 17, 1000] {
        match m.run(&c, &nat(9), steps + extra).unwrap() {
            Outcome::Halted { value: v2, steps: s2 } => {
                assert_eq!(v2, value);
                assert_eq!(s2, steps);
            }
            _ => panic!("halts within its own step count plus slack"),
        }
    }
    // And it does not halt strictly below its step count.
    assert_eq!(m.run(&c, &nat(9), steps - 1).unwrap(), Outcome::StillRunning);
}

#[test]
fn arithmetic_combinators() {
    let m = Machine::default();
    let run2 = |f: &Term, a: u64, b: u64| {
        let t = app2(f.clone(), t_nat(a), t_nat(b));
        halted(m.eval_term(&t, 100_000))
    };
    assert_eq!(run2(&c_sub(), 9, 3), 6);
    assert_eq!(run2(&c_sub(), 3, 9), 0);
    assert_eq!(run2(&c_add(), 9, 3), 12);
    assert_eq!(run2(&c_mul(), 6, 7), 42);
    assert_eq!(run2(&c_lt(), 2, 3), 1);
    assert_eq!(run2(&c_lt(), 3, 3), 0);
    let run1 = |f: &Term, a: u64| halted(m.eval_term(&app(f.clone(), t_nat(a)), 100_000));
    assert_eq!(run1(&c_parity(), 8), 0);
    assert_eq!(run1(&c_parity(), 11), 1);
    assert_eq!(run1(&c_half(), 11), 5);
}

#[test]
fn factorial_through_fix_build() {
    let m = Machine::default();
    // fact = fix λself.λn. if n = 0 then 1 else n · self(n−1)
    let body = lam(lam(ifz(
        var(0),
        t_nat(1),
        app2(c_mul(), var(0), app(var(1), pred(var(0)))),
    )));
    let g = fix_build(&encode(&body).unwrap()).unwrap();
    let out = m.run(&g, &nat(4), 100_000).unwrap();
    assert_eq!(halted(out), 24);
}

#[test]
fn lam_build_accepts_one_slot_and_rejects_more() {
    let m = Machine::default();
    let id = lam_build(&var(0)).unwrap();
    assert_eq!(halted(m.run(&id, &nat(9), 100).unwrap()), 9);

    let pairing = lam_build(&tpair(var(0), t_nat(4))).unwrap();
    let out = m.run(&pairing, &nat(3), 100).unwrap();
    assert!(out.halted_with(&pair64(3, 4)));

    assert!(matches!(lam_build(&var(1)), Err(Error::OpenTerm(_))));
}

#[test]
fn universal_application_of_returned_codes() {
    let m = Machine::default();
    // λx. K x — returns a specialised constant function as a code; applying
    // the run output again yields the captured value.
    let k_builder = encode(&lam(lam(var(1)))).unwrap();
    let inner = match m.run(&k_builder, &nat(42), 1000).unwrap() {
        Outcome::Halted { value, .. } => value,
        _ => panic!(),
    };
    assert_eq!(halted(m.run(&inner, &nat(0), 1000).unwrap()), 42);
}

#[test]
fn kleene_t_certifies_halts_and_rejects_divergence() {
    let m = Machine::default();
    let succ_code = encode(&lam(succ(var(0)))).unwrap();
    let steps = match m.run(&succ_code, &nat(4), 100).unwrap() {
        Outcome::Halted { steps, .. } => steps,
        _ => panic!(),
    };
    for s in steps..steps + 5 {
        assert!(kleene_t(&m, &succ_code, &nat(4), &pair64(s, 5)));
    }
    assert!(!kleene_t(&m, &succ_code, &nat(4), &pair64(steps - 1, 5)));
    assert!(!kleene_t(&m, &succ_code, &nat(4), &pair64(steps + 5, 6)));

    let div = encode(&fix(lam(lam(app(var(1), var(0)))))).unwrap();
    for k in [1u64, 100, 10_000] {
        assert!(!kleene_t(&m, &div, &nat(0), &pair64(k, 0)));
    }
    assert_eq!(u_proj(&pair64(17, 5)), nat(5));
}

#[test]
fn kleene_t_outputs_agree() {
    let m = Machine::default();
    let c = encode(&lam(dbl(var(0)))).unwrap();
    let mut outputs = Vec::new();
    for s in 0..64u64 {
        for v in 0..16u64 {
            if kleene_t(&m, &c, &nat(3), &pair64(s, v)) {
                outputs.push(v);
            }
        }
    }
    assert!(!outputs.is_empty());
    assert!(outputs.iter().all(|&v| v == 6));
}

#[test]
fn oracle_queries_dispatch_to_the_context() {
    let zero = Machine::default();
    let c = encode(&oracle_q(t_nat(5))).unwrap();
    assert_eq!(halted(zero.run(&c, &nat(0), 10).unwrap()), 0);

    let table = Machine::new(Oracle::table([(nat(5), nat(1))]));
    assert_eq!(halted(table.run(&c, &nat(0), 10).unwrap()), 1);

    // Oracle-free codes are oblivious to the context.
    let plain = encode(&lam(succ(var(0)))).unwrap();
    assert_eq!(
        zero.run(&plain, &nat(10), 100).unwrap(),
        table.run(&plain, &nat(10), 100).unwrap()
    );
}

#[test]
fn run_bounded_probes_inner_computations() {
    let m = Machine::default();
    let succ_code = encode(&lam(succ(var(0)))).unwrap();
    // λs. RunBounded(succ_code, 4, s)
    let probe = encode(&lam(run_bounded(
        t_natn(succ_code),
        t_nat(4),
        var(0),
    )))
    .unwrap();
    let hit = m.run(&probe, &nat(100), 10_000).unwrap();
    let miss = m.run(&probe, &nat(1), 10_000).unwrap();
    match (hit, miss) {
        (Outcome::Halted { value: h, .. }, Outcome::Halted { value: s, .. }) => {
            assert_eq!(h, pair64(1, 5));
            assert_eq!(s, pair64(0, 0));
        }
        _ => panic!("probes halt"),
    }
}

#[test]
fn fix_of_self_application_diverges_at_any_budget() {
    let m = Machine::default();
    let g = fix_build(&encode(&lam(lam(app(var(1), var(0))))).unwrap()).unwrap();
    for fuel in [10u64, 1_000, 100_000] {
        assert_eq!(m.run(&g, &nat(0), fuel).unwrap(), Outcome::StillRunning);
    }
}

#[test]
fn evaluator_corpus_is_deterministic() {
    let m = Machine::default();
    let mut corpus: Vec<(super::num::Nat, super::num::Nat)> = Vec::new();
    for i in 0..40u64 {
        corpus.push((encode(&lam(succ(var(0)))).unwrap(), nat(i)));
        corpus.push((encode(&c_parity()).unwrap(), nat(i)));
        corpus.push((
            encode(&lam(tpair(var(0), app(c_half(), var(0))))).unwrap(),
            nat(i),
        ));
        corpus.push((encode(&lam(ifz(var(0), t_nat(7), pred(var(0))))).unwrap(), nat(i)));
        corpus.push((
            encode(&lam(app2(c_add(), var(0), t_nat(13)))).unwrap(),
            nat(i),
        ));
    }
    assert_eq!(corpus.len(), 200);
    let run_all = || -> Vec<Outcome> {
        corpus
            .iter()
            .map(|(c, i)| m.run(c, i, 10_000).unwrap())
            .collect()
    };
    assert_eq!(run_all(), run_all());
}
