use std::time::Instant;
use vset_core::budget::{Budget, Verdict};
use vset_core::vset::{self, builders as vb};
use vset_core::Engine;

#[test]
fn dbg_exp_build_only() {
    let e = Engine::new();
    let two = vb::numeral(&e, 2);
    let t0 = Instant::now();
    let g = vb::kpair(&e, &two, &two);
    println!("kpair: {:?} bits={}", t0.elapsed(), g.code.bits());
    let t0 = Instant::now();
    let fs2 = vb::finite_set(&e, &[g.clone(), g.clone()]);
    println!("fs2: {:?} bits={}", t0.elapsed(), fs2.code.bits());
    let t0 = Instant::now();
    let fs3 = vb::finite_set(&e, &[g.clone(), g.clone(), g.clone()]);
    println!("fs3: {:?} bits={}", t0.elapsed(), fs3.code.bits());
    let t0 = Instant::now();
    let fs4 = vb::finite_set(&e, &[fs2.clone(), fs3.clone(), g.clone(), fs2.clone()]);
    println!("fs4: {:?} bits={}", t0.elapsed(), fs4.code.bits());
    let big = Budget::new(64, 100_000, 10);
    let t0 = Instant::now();
    let (rows, _) = vset::elems(&e, &fs3, big);
    println!("elems fs3: {:?} rows={} live={}", t0.elapsed(), rows.len(),
        rows.iter().filter(|r| r.verdict == Verdict::True).count());
    let t0 = Instant::now();
    let (rows, _) = vset::elems(&e, &fs4, big);
    println!("elems fs4: {:?} rows={}", t0.elapsed(), rows.len());
}
