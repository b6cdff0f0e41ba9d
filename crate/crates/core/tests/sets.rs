//! Set-layer behaviour: builders, conditions, equality, membership.

use vset_core::budget::{Budget, Verdict};
use vset_core::cond::{self, Cond};
use vset_core::eq;
use vset_core::machine::code::encode;
use vset_core::machine::num::nat;
use vset_core::machine::term::*;
use vset_core::vset::builders as vb;
use vset_core::vset::{self, VSet};
use vset_core::Engine;

fn b() -> Budget {
    Budget::default()
}

fn big() -> Budget {
    Budget::new(64, 100_000, 10)
}

#[test]
fn empty_set_has_no_elements_and_is_exhaustive() {
    let e = Engine::new();
    let empty = vb::empty(&e);
    let (rows, exhaustive) = vset::elems(&e, &empty, b());
    assert!(rows.is_empty());
    assert!(exhaustive);
}

#[test]
fn entry_of_empty_and_omega() {
    let e = Engine::new();
    let empty = vb::empty(&e);
    let (el, cd) = vset::entry(&e, &empty, &nat(5), b()).unwrap().unwrap();
    assert_eq!(el, nat(0));
    assert_eq!(cd, Cond::bottom());

    let om = vb::omega(&e);
    let (el, cd) = vset::entry(&e, &om, &nat(3), b()).unwrap().unwrap();
    assert_eq!(el, vb::numeral(&e, 3).code);
    assert_eq!(cd, Cond::top());
}

#[test]
fn numeral_membership_laws() {
    let e = Engine::new();
    for m in 0..=6u64 {
        for n in 0..=6u64 {
            let mm = vb::numeral(&e, m);
            let nn = vb::numeral(&e, n);
            let got = eq::member(&e, &mm, &nn, big()).result.verdict;
            let want = if m < n { Verdict::True } else { Verdict::False };
            assert_eq!(got, want, "member({m},{n})");
            let got = eq::eq(&e, &mm, &nn, big()).verdict;
            let want = if m == n { Verdict::True } else { Verdict::False };
            assert_eq!(got, want, "eq({m},{n})");
        }
    }
}

#[test]
fn empty_equals_numeral_zero_but_not_one() {
    let e = Engine::new();
    let empty = vb::empty(&e);
    assert_eq!(
        eq::eq(&e, &empty, &vb::numeral(&e, 0), b()).verdict,
        Verdict::True
    );
    assert_eq!(
        eq::eq(&e, &empty, &vb::numeral(&e, 1), b()).verdict,
        Verdict::False
    );
}

#[test]
fn numerals_are_members_of_omega() {
    let e = Engine::new();
    let om = vb::omega(&e);
    for k in 0..=6u64 {
        let r = eq::member(&e, &vb::numeral(&e, k), &om, b());
        assert_eq!(r.result.verdict, Verdict::True, "numeral {k} in omega");
        assert_eq!(r.index, Some(nat(k)));
    }
    // No refutation certificate exists for omega in omega.
    let r = eq::member(&e, &om, &om, b());
    assert_eq!(r.result.verdict, Verdict::Unknown);
}

#[test]
fn infinity_chain() {
    let e = Engine::new();
    let om = vb::omega(&e);
    for k in 0..=5u64 {
        let a = vb::numeral(&e, k);
        let s = vb::numeral(&e, k + 1);
        assert_eq!(eq::member(&e, &a, &s, b()).result.verdict, Verdict::True);
        assert_eq!(eq::member(&e, &s, &om, b()).result.verdict, Verdict::True);
    }
}

#[test]
fn pair_set_membership_and_symmetry() {
    let e = Engine::new();
    let x = vb::numeral(&e, 0);
    let y = vb::numeral(&e, 1);
    let p = vb::pair_set(&e, &x, &y);
    let q = vb::pair_set(&e, &y, &x);
    assert_eq!(eq::member(&e, &x, &p, b()).result.verdict, Verdict::True);
    assert_eq!(eq::member(&e, &y, &p, b()).result.verdict, Verdict::True);
    assert_eq!(eq::eq(&e, &p, &q, b()).verdict, Verdict::True);
    assert_eq!(eq::eq(&e, &p, &p, b()).verdict, Verdict::True);
    // {0,1} is the numeral 2.
    assert_eq!(eq::eq(&e, &p, &vb::numeral(&e, 2), b()).verdict, Verdict::True);
    assert_eq!(eq::eq(&e, &vb::numeral(&e, 2), &vb::numeral(&e, 3), b()).verdict, Verdict::False);
}

#[test]
fn condition_algebra_truth_tables() {
    let e = Engine::new();
    let t = Cond::top();
    let f = Cond::bottom();
    let ev = |c: &Cond| cond::eval_cond(&e, c, b()).unwrap();

    assert_eq!(ev(&t), Verdict::True);
    assert_eq!(ev(&f), Verdict::False);

    assert_eq!(ev(&cond::pi(&e, &t, &t)), Verdict::True);
    assert_eq!(ev(&cond::pi(&e, &t, &f)), Verdict::False);
    assert_eq!(ev(&cond::pi(&e, &f, &t)), Verdict::False);
    assert_eq!(ev(&cond::pi(&e, &f, &f)), Verdict::False);

    assert_eq!(ev(&cond::neg(&e, &f)), Verdict::True);
    assert_eq!(ev(&cond::neg(&e, &t)), Verdict::False);
    assert_eq!(ev(&cond::neg(&e, &cond::neg(&e, &t))), Verdict::True);

    // Residue classes.
    assert!(cond::pi(&e, &t, &f).0.bit(0));
    let raw = Cond(nat(8));
    assert_eq!(ev(&raw), Verdict::Unknown);
    assert!(cond::eval_cond(&e, &Cond(nat(6)), b()).is_err());
    assert!(cond::meaningful_check(&e, &Cond(nat(6)), b()).is_err());

    assert_eq!(
        cond::meaningful_check(&e, &cond::pi(&e, &t, &f), b()).unwrap(),
        Verdict::True
    );
    assert_eq!(cond::meaningful_check(&e, &raw, b()).unwrap(), Verdict::Unknown);
}

#[test]
fn vacuous_constant_antecedent_is_true() {
    let e = Engine::new();
    let anything = encode(&lam(var(0))).unwrap();
    let c = cond::xi_const_ante(&e, &Cond::bottom(), &anything);
    assert_eq!(cond::eval_cond(&e, &c, b()).unwrap(), Verdict::True);
}

#[test]
fn raw_xi_with_tiny_budget_is_unknown() {
    let e = Engine::new();
    // Two raw sequence codes about which nothing is known and whose entries
    // carry no certificates: no counterexample, no certificate.
    let f = encode(&lam(t_nat(8))).unwrap();
    let g = encode(&lam(t_nat(8))).unwrap();
    let c = Cond(vset_core::pair(&f, &g) * 2u32 + 1u32);
    assert_eq!(
        cond::eval_cond(&e, &c, Budget::new(4, 100, 2)).unwrap(),
        Verdict::Unknown
    );
}

#[test]
fn runtime_pi_matches_host_pi() {
    // A condition assembled by running the object template must be the very
    // same number the host constructor produces.
    let e = Engine::new();
    let p = Cond::top();
    let q = Cond::bottom();
    let host = cond::pi(&e, &p, &q);
    let t = app2(
        vset_core::vset::templates::pi_obj(),
        t_natn(p.0.clone()),
        t_natn(q.0.clone()),
    );
    let got = match e.machine.eval_term(&t, 10_000) {
        vset_core::machine::Outcome::Halted { value, .. } => value,
        _ => panic!("pi template halts"),
    };
    assert_eq!(got, host.0);
}

#[test]
fn rbar_on_empty_sets_is_true_for_arbitrary_witness() {
    let e = Engine::new();
    let empty = vb::empty(&e);
    for w in [0u64, 7, 20] {
        let c = vb::rbar(&e, &nat(w), &empty, &empty);
        assert_eq!(cond::eval_cond(&e, &c, b()).unwrap(), Verdict::True, "w={w}");
    }
}

#[test]
fn rbar_refutes_empty_versus_one() {
    let e = Engine::new();
    let empty = vb::empty(&e);
    let one = vb::numeral(&e, 1);
    for w in 0..=20u64 {
        let c = vb::rbar(&e, &nat(w), &empty, &one);
        assert_eq!(
            cond::eval_cond(&e, &c, b()).unwrap(),
            Verdict::False,
            "witness {w} cannot simulate 1̄"
        );
    }
}

#[test]
fn rbar_accepts_the_reflexivity_witness() {
    let e = Engine::new();
    let two = vb::numeral(&e, 2);
    let w = eq::refl_witness(&e, &two);
    let c = vb::rbar(&e, &w.0, &two, &two);
    assert_eq!(cond::eval_cond(&e, &c, big()).unwrap(), Verdict::True);
    assert_eq!(cond::meaningful_check(&e, &c, b()).unwrap(), Verdict::True);
}

#[test]
fn recognizer_reads_back_runtime_conditions() {
    let e = Engine::new();
    // Build Π at runtime (no registration) and check the evaluator still
    // resolves it structurally.
    let t = app2(
        vset_core::vset::templates::pi_obj(),
        t_nat(4),
        t_nat(0),
    );
    let c = match e.machine.eval_term(&t, 10_000) {
        vset_core::machine::Outcome::Halted { value, .. } => Cond(value),
        _ => panic!(),
    };
    let fresh = Engine::new();
    assert_eq!(cond::eval_cond(&fresh, &c, b()).unwrap(), Verdict::False);
}

#[test]
fn certificates_survive_the_audit() {
    let e = Engine::new();
    let two = vb::numeral(&e, 2);
    let three = vb::numeral(&e, 3);
    let p = vb::pair_set(&e, &two, &three);
    let k = vb::kpair(&e, &two, &three);
    for s in [&two, &three, &p, &k, &vb::empty(&e), &vb::omega(&e)] {
        assert!(vset::audit(&e, s, b()), "audit failed for {s}");
    }
}

#[test]
fn recognized_codes_regain_their_certificates() {
    let e = Engine::new();
    let three = vb::numeral(&e, 3);
    let raw = VSet::raw(three.code.clone());
    let again = VSet::from_code(&e, raw.code.clone());
    assert_eq!(again.numeral_value(), Some(3));
    let om = vb::omega(&e);
    assert!(VSet::from_code(&e, om.code.clone()).is_omega());
}
