//! Step-counted call-by-value evaluation.
//!
//! The evaluator is a small abstract machine over (focus, environment,
//! continuation stack). Every transition costs one step against the fuel,
//! which makes the step count deterministic and monotone: a computation that
//! halts within `s` steps halts with the same value at every larger bound.
//!
//! All primitive operations are total: operands are coerced to naturals
//! (closures read back to their codes), so the only ways a run can fail to
//! produce a value are fuel exhaustion and genuine divergence. Applying a
//! number that is not a well-formed code diverges — data errors inside a
//! computation look like honest non-termination, while a malformed top-level
//! code is reported as an error.

use std::sync::Arc;

use super::code::{decode, encode_unchecked};
use super::num::{self, Nat};
use super::oracle::Oracle;
use super::term::Term;
use crate::error::{Error, Result};

/// Result of a bounded run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The computation produced `value` after `steps` transitions.
    Halted { value: Nat, steps: u64 },
    /// Fuel ran out first (or the computation provably spins forever).
    StillRunning,
}

impl Outcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            Outcome::Halted { value, .. } => Some(value),
            Outcome::StillRunning => None,
        }
    }

    pub fn halted_with(&self, expected: &Nat) -> bool {
        self.value() == Some(expected)
    }
}

type Env = Option<Arc<EnvNode>>;

#[derive(Debug)]
struct EnvNode {
    head: Value,
    tail: Env,
}

fn env_push(env: &Env, v: Value) -> Env {
    Some(Arc::new(EnvNode {
        head: v,
        tail: env.clone(),
    }))
}

fn env_get(env: &Env, i: u32) -> Option<Value> {
    let mut cur = env;
    let mut k = i;
    while let Some(node) = cur {
        if k == 0 {
            return Some(node.head.clone());
        }
        k -= 1;
        cur = &node.tail;
    }
    None
}

#[derive(Debug, Clone)]
enum Value {
    Num(Arc<Nat>),
    Clo(Arc<Term>, Env),
    FixV(Arc<Value>),
}

impl Value {
    fn num(n: Nat) -> Value {
        Value::Num(Arc::new(n))
    }
}

/// Read a value back into a closed term. Environments hold closed values
/// only, so substitution never captures.
fn readback(v: &Value) -> Term {
    match v {
        Value::Num(n) => Term::Nat((**n).clone()),
        Value::Clo(body, env) => Term::Lam(Arc::new(close(body, env, 1))),
        Value::FixV(inner) => Term::Fix(Arc::new(readback(inner))),
    }
}

fn close(t: &Term, env: &Env, depth: u32) -> Term {
    match t {
        Term::Nat(_) => t.clone(),
        Term::Var(i) => {
            if *i < depth {
                t.clone()
            } else {
                match env_get(env, i - depth) {
                    Some(v) => readback(&v),
                    // Unreachable for well-scoped terms; keep the index.
                    None => t.clone(),
                }
            }
        }
        Term::Lam(b) => Term::Lam(Arc::new(close(b, env, depth + 1))),
        Term::App(a, b) => Term::App(
            Arc::new(close(a, env, depth)),
            Arc::new(close(b, env, depth)),
        ),
        Term::Pair(a, b) => Term::Pair(
            Arc::new(close(a, env, depth)),
            Arc::new(close(b, env, depth)),
        ),
        Term::Left(a) => Term::Left(Arc::new(close(a, env, depth))),
        Term::Right(a) => Term::Right(Arc::new(close(a, env, depth))),
        Term::Succ(a) => Term::Succ(Arc::new(close(a, env, depth))),
        Term::Pred(a) => Term::Pred(Arc::new(close(a, env, depth))),
        Term::Dbl(a) => Term::Dbl(Arc::new(close(a, env, depth))),
        Term::IfZero(a, b, c) => Term::IfZero(
            Arc::new(close(a, env, depth)),
            Arc::new(close(b, env, depth)),
            Arc::new(close(c, env, depth)),
        ),
        Term::NatEq(a, b) => Term::NatEq(
            Arc::new(close(a, env, depth)),
            Arc::new(close(b, env, depth)),
        ),
        Term::Fix(a) => Term::Fix(Arc::new(close(a, env, depth))),
        Term::OracleQ(a) => Term::OracleQ(Arc::new(close(a, env, depth))),
        Term::RunBounded(a, b, c) => Term::RunBounded(
            Arc::new(close(a, env, depth)),
            Arc::new(close(b, env, depth)),
            Arc::new(close(c, env, depth)),
        ),
    }
}

/// Coerce a value to a natural: numbers are themselves, functions are their
/// codes.
fn to_nat(v: &Value) -> Nat {
    match v {
        Value::Num(n) => (**n).clone(),
        _ => encode_unchecked(&readback(v)),
    }
}

#[derive(Debug)]
enum Kont {
    /// Freeze the evaluated body of a `Fix` into a recursive value.
    FixDone,
    /// Function evaluated; evaluate the argument next.
    AppFun(Value),
    /// Argument term pending while the function evaluates.
    AppArg(Arc<Term>, Env),
    /// Apply the incoming value to the stored argument if it is a function;
    /// otherwise the incoming value wins (constant-program semantics).
    ApplyOrReturn(Value),
    PairSnd(Arc<Term>, Env),
    PairFst(Value),
    LeftK,
    RightK,
    SuccK,
    PredK,
    DblK,
    IfZ(Arc<Term>, Arc<Term>, Env),
    EqSnd(Arc<Term>, Env),
    EqFst(Value),
    OracleK,
    RunI(Arc<Term>, Arc<Term>, Env),
    RunS(Value, Arc<Term>, Env),
    RunGo(Value, Value),
}

enum Focus {
    Eval(Arc<Term>, Env),
    Ret(Value),
    /// The computation can provably never produce a value (for example it
    /// applied a malformed code). Burns the remaining fuel.
    Diverge,
}

/// The machine: an oracle plus evaluation entry points.
#[derive(Debug, Clone, Default)]
pub struct Machine {
    pub oracle: Oracle,
}

/// Cap on nested `RunBounded` evaluations.
const MAX_RUN_NESTING: u32 = 128;

impl Machine {
    pub fn new(oracle: Oracle) -> Machine {
        Machine { oracle }
    }

    /// Kleene-style universal application: run code `e` on input `i` for at
    /// most `max_steps` transitions.
    pub fn run(&self, e: &Nat, i: &Nat, max_steps: u64) -> Result<Outcome> {
        let t = decode(e).map_err(|_| Error::MalformedCode)?;
        Ok(self.apply_term(&t, &Value::num(i.clone()), max_steps))
    }

    /// Run an in-memory closed term on an input (the term-level counterpart
    /// of [`Machine::run`]).
    pub fn run_term(&self, t: &Term, i: &Nat, max_steps: u64) -> Outcome {
        self.apply_term(t, &Value::num(i.clone()), max_steps)
    }

    /// Evaluate a closed term to a natural without applying it to anything.
    pub fn eval_term(&self, t: &Term, max_steps: u64) -> Outcome {
        let mut fuel = max_steps;
        let out = self.eval_loop(
            Focus::Eval(Arc::new(t.clone()), None),
            Vec::new(),
            &mut fuel,
            0,
        );
        match out {
            Some(v) => Outcome::Halted {
                value: to_nat(&v),
                steps: max_steps - fuel,
            },
            None => Outcome::StillRunning,
        }
    }

    fn apply_term(&self, t: &Term, arg: &Value, max_steps: u64) -> Outcome {
        let mut fuel = max_steps;
        let stack = vec![Kont::ApplyOrReturn(arg.clone())];
        let out = self.eval_loop(Focus::Eval(Arc::new(t.clone()), None), stack, &mut fuel, 0);
        match out {
            Some(v) => Outcome::Halted {
                value: to_nat(&v),
                steps: max_steps - fuel,
            },
            None => Outcome::StillRunning,
        }
    }

    /// Core loop. Returns the final value, or `None` on fuel exhaustion /
    /// divergence. `nesting` tracks `RunBounded` recursion.
    fn eval_loop(
        &self,
        mut focus: Focus,
        mut stack: Vec<Kont>,
        fuel: &mut u64,
        nesting: u32,
    ) -> Option<Value> {
        loop {
            if *fuel == 0 {
                return None;
            }
            *fuel -= 1;
            focus = match focus {
                Focus::Diverge => {
                    *fuel = 0;
                    return None;
                }
                Focus::Eval(t, env) => match &*t {
                    Term::Nat(n) => Focus::Ret(Value::num(n.clone())),
                    Term::Var(i) => match env_get(&env, *i) {
                        Some(v) => Focus::Ret(v),
                        None => Focus::Diverge,
                    },
                    Term::Lam(b) => Focus::Ret(Value::Clo(b.clone(), env)),
                    Term::Fix(inner) => {
                        // Evaluate the body to a value once, then freeze.
                        stack.push(Kont::FixDone);
                        Focus::Eval(inner.clone(), env)
                    }
                    Term::App(f, a) => {
                        stack.push(Kont::AppArg(a.clone(), env.clone()));
                        Focus::Eval(f.clone(), env)
                    }
                    Term::Pair(a, b) => {
                        stack.push(Kont::PairSnd(b.clone(), env.clone()));
                        Focus::Eval(a.clone(), env)
                    }
                    Term::Left(a) => {
                        stack.push(Kont::LeftK);
                        Focus::Eval(a.clone(), env)
                    }
                    Term::Right(a) => {
                        stack.push(Kont::RightK);
                        Focus::Eval(a.clone(), env)
                    }
                    Term::Succ(a) => {
                        stack.push(Kont::SuccK);
                        Focus::Eval(a.clone(), env)
                    }
                    Term::Pred(a) => {
                        stack.push(Kont::PredK);
                        Focus::Eval(a.clone(), env)
                    }
                    Term::Dbl(a) => {
                        stack.push(Kont::DblK);
                        Focus::Eval(a.clone(), env)
                    }
                    Term::IfZero(s, t1, t2) => {
                        stack.push(Kont::IfZ(t1.clone(), t2.clone(), env.clone()));
                        Focus::Eval(s.clone(), env)
                    }
                    Term::NatEq(a, b) => {
                        stack.push(Kont::EqSnd(b.clone(), env.clone()));
                        Focus::Eval(a.clone(), env)
                    }
                    Term::OracleQ(a) => {
                        stack.push(Kont::OracleK);
                        Focus::Eval(a.clone(), env)
                    }
                    Term::RunBounded(e, i, s) => {
                        stack.push(Kont::RunI(i.clone(), s.clone(), env.clone()));
                        Focus::Eval(e.clone(), env)
                    }
                },
                Focus::Ret(v) => match stack.pop() {
                    None => return Some(v),
                    Some(k) => match k {
                        Kont::FixDone => Focus::Ret(Value::FixV(Arc::new(v))),
                        Kont::AppArg(a, env) => {
                            stack.push(Kont::AppFun(v));
                            Focus::Eval(a, env)
                        }
                        Kont::AppFun(f) => self.apply_value(f, v, &mut stack),
                        Kont::ApplyOrReturn(arg) => match v {
                            Value::Clo(..) | Value::FixV(..) => {
                                self.apply_value(v, arg, &mut stack)
                            }
                            Value::Num(_) => Focus::Ret(v),
                        },
                        Kont::PairSnd(b, env) => {
                            stack.push(Kont::PairFst(v));
                            Focus::Eval(b, env)
                        }
                        Kont::PairFst(a) => {
                            Focus::Ret(Value::num(num::pair(&to_nat(&a), &to_nat(&v))))
                        }
                        Kont::LeftK => Focus::Ret(Value::num(num::left(&to_nat(&v)))),
                        Kont::RightK => Focus::Ret(Value::num(num::right(&to_nat(&v)))),
                        Kont::SuccK => Focus::Ret(Value::num(to_nat(&v) + 1u32)),
                        Kont::PredK => {
                            let n = to_nat(&v);
                            let out = if num::is_zero(&n) { n } else { n - 1u32 };
                            Focus::Ret(Value::num(out))
                        }
                        Kont::DblK => Focus::Ret(Value::num(to_nat(&v) * 2u32)),
                        Kont::IfZ(t1, t2, env) => {
                            if num::is_zero(&to_nat(&v)) {
                                Focus::Eval(t1, env)
                            } else {
                                Focus::Eval(t2, env)
                            }
                        }
                        Kont::EqSnd(b, env) => {
                            stack.push(Kont::EqFst(v));
                            Focus::Eval(b, env)
                        }
                        Kont::EqFst(a) => {
                            let eq = to_nat(&a) == to_nat(&v);
                            Focus::Ret(Value::num(Nat::from(eq as u32)))
                        }
                        Kont::OracleK => {
                            Focus::Ret(Value::num(self.oracle.query(&to_nat(&v))))
                        }
                        Kont::RunI(i, s, env) => {
                            stack.push(Kont::RunS(v, s, env.clone()));
                            Focus::Eval(i, env)
                        }
                        Kont::RunS(e, s, env) => {
                            stack.push(Kont::RunGo(e, v));
                            Focus::Eval(s, env)
                        }
                        Kont::RunGo(e, i) => {
                            let bound = to_nat(&v);
                            Focus::Ret(self.run_inner(&e, &i, &bound, fuel, nesting))
                        }
                    },
                },
            };
        }
    }

    /// Apply a function value; numbers dispatch through the decoder.
    fn apply_value(&self, f: Value, arg: Value, stack: &mut Vec<Kont>) -> Focus {
        match f {
            Value::Clo(body, env) => Focus::Eval(body, env_push(&env, arg)),
            Value::FixV(ref inner) => {
                // (Fix t) v  ↦  (t (Fix t)) v
                stack.push(Kont::ApplyOrReturn(arg));
                let self_value = f.clone();
                match &**inner {
                    Value::Clo(body, env) => Focus::Eval(body.clone(), env_push(env, self_value)),
                    Value::FixV(_) => {
                        stack.push(Kont::ApplyOrReturn(self_value));
                        Focus::Ret((**inner).clone())
                    }
                    Value::Num(n) => match decode(n) {
                        Ok(t) => {
                            stack.push(Kont::ApplyOrReturn(self_value));
                            Focus::Eval(Arc::new(t), None)
                        }
                        Err(_) => Focus::Diverge,
                    },
                }
            }
            Value::Num(n) => match decode(&n) {
                Ok(t) => {
                    stack.push(Kont::ApplyOrReturn(arg));
                    Focus::Eval(Arc::new(t), None)
                }
                Err(_) => Focus::Diverge,
            },
        }
    }

    /// Inner bounded run for the `RunBounded` primitive. Consumed steps are
    /// charged against the caller's fuel; the result is `⟨1, out⟩` on a halt
    /// within the requested bound and `⟨0, 0⟩` otherwise. When the caller's
    /// own fuel or the nesting cap cuts the probe short, the caller simply
    /// runs out (never a false negative).
    fn run_inner(&self, e: &Value, i: &Value, bound: &Nat, fuel: &mut u64, nesting: u32) -> Value {
        let zero = Value::num(num::pair(&Nat::default(), &Nat::default()));
        if nesting >= MAX_RUN_NESTING {
            *fuel = 0;
            return zero;
        }
        let requested = num::to_u64(bound).unwrap_or(u64::MAX);
        let granted = requested.min(*fuel);
        let code = to_nat(e);
        let input = to_nat(i);
        let t = match decode(&code) {
            Ok(t) => t,
            Err(_) => {
                // Not a program: certainly no halt within any bound. Charge
                // the requested bound capped by our own fuel.
                *fuel -= granted;
                return zero;
            }
        };
        let mut inner_fuel = granted;
        let out = self.eval_loop(
            Focus::Eval(Arc::new(t), None),
            vec![Kont::ApplyOrReturn(Value::num(input))],
            &mut inner_fuel,
            nesting + 1,
        );
        let used = granted - inner_fuel;
        *fuel -= used;
        match out {
            Some(v) => Value::num(num::pair(&Nat::from(1u32), &to_nat(&v))),
            None => {
                if granted < requested {
                    // The probe was cut by our fuel, not by the requested
                    // bound: exhaust the caller rather than answer wrongly.
                    *fuel = 0;
                }
                zero
            }
        }
    }
}

