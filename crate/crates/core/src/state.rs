//! State-like clocks: the clock is threaded through evaluation and returned
//! with the final store, so it bounds the length of evaluation.
//!
//! As in [`crate::env`], evaluation runs on an explicit stack of pending
//! `Seq` continuations. Each frame remembers the clock its `Seq` clause
//! started with, which is what `fix_clock` (or the consumer-side clamp)
//! compares the first half's leftover against.

use std::sync::Arc;

use crate::expr::{aval, bval};
use crate::fuel::Fuel;
use crate::monitor::{Caller, Monitor};
use crate::store::Store;
use crate::syntax::Com;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateResult {
    Timeout,
    Final(Store, Fuel),
}

impl StateResult {
    pub fn is_final(&self) -> bool {
        matches!(self, StateResult::Final(..))
    }

    pub fn store(&self) -> Option<&Store> {
        match self {
            StateResult::Final(s, _) => Some(s),
            StateResult::Timeout => None,
        }
    }

    pub fn leftover(&self) -> Option<Fuel> {
        match self {
            StateResult::Final(_, t) => Some(*t),
            StateResult::Timeout => None,
        }
    }
}

/// Clamps a returned clock so it never exceeds `t`.
pub fn fix_clock(t: Fuel, r: StateResult) -> StateResult {
    match r {
        StateResult::Timeout => StateResult::Timeout,
        StateResult::Final(s, t2) => {
            if t < t2 {
                StateResult::Final(s, t)
            } else {
                StateResult::Final(s, t2)
            }
        }
    }
}

struct Frame {
    seq: Arc<Com>,
    clause_fuel: Fuel,
    /// The clock the first half was started with.
    first_fuel: Fuel,
}

struct Call {
    com: Arc<Com>,
    fuel: Fuel,
    caller: Option<(Arc<Com>, Fuel)>,
}

impl Call {
    fn top(c: &Com, fuel: Fuel) -> Call {
        Call {
            com: Arc::new(c.clone()),
            fuel,
            caller: None,
        }
    }

    fn from(caller: &Arc<Com>, caller_fuel: Fuel, com: Arc<Com>, fuel: Fuel) -> Call {
        Call {
            com,
            fuel,
            caller: Some((caller.clone(), caller_fuel)),
        }
    }

    fn report(&self, monitor: &mut impl Monitor, store: &Store) {
        let caller = self
            .caller
            .as_ref()
            .map(|(com, fuel)| Caller { com, fuel: *fuel });
        monitor.enter(caller, &self.com, store, self.fuel);
    }
}

enum Next {
    Call(Call, Store),
    Done(StateResult),
}

/// A sub-evaluation finished with `(store, leftover)`: hand it to the
/// innermost pending `Seq`, whose `join` decides the clock for the second half.
fn resume(
    stack: &mut Vec<Frame>,
    store: Store,
    leftover: Fuel,
    join: impl Fn(Fuel, Store, Fuel) -> StateResult,
) -> Next {
    let Some(frame) = stack.pop() else {
        return Next::Done(StateResult::Final(store, leftover));
    };
    let second = match &*frame.seq {
        Com::Seq(_, second) => second.clone(),
        _ => unreachable!("only Seq clauses push frames"),
    };
    match join(frame.first_fuel, store, leftover) {
        StateResult::Timeout => Next::Done(StateResult::Timeout),
        StateResult::Final(s2, t2) => {
            Next::Call(Call::from(&frame.seq, frame.clause_fuel, second, t2), s2)
        }
    }
}

fn join_fix_clock(t: Fuel, s: Store, t2: Fuel) -> StateResult {
    fix_clock(t, StateResult::Final(s, t2))
}

fn join_clamp(t: Fuel, s: Store, t2: Fuel) -> StateResult {
    StateResult::Final(s, if t < t2 { t } else { t2 })
}

/// Shared driver for `cval` and `cval_guard`, which differ only in how a
/// `Seq` hands the clock from its first half to its second.
fn run_threaded(
    c: &Com,
    s: &Store,
    t: Fuel,
    monitor: &mut impl Monitor,
    join: impl Fn(Fuel, Store, Fuel) -> StateResult + Copy,
) -> StateResult {
    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Call::top(c, t);
    let mut store = s.clone();
    loop {
        call.report(monitor, &store);
        let t = call.fuel;
        let next = match &*call.com {
            Com::Skip => resume(&mut stack, store, t, join),
            Com::Set(x, a) => {
                let v = aval(a, &store);
                store.update(x.clone(), v);
                resume(&mut stack, store, t, join)
            }
            Com::Seq(c1, _) => {
                stack.push(Frame {
                    seq: call.com.clone(),
                    clause_fuel: t,
                    first_fuel: t,
                });
                Next::Call(Call::from(&call.com, t, c1.clone(), t), store)
            }
            Com::If(b, c1, c2) => {
                let branch = if bval(b, &store) { c1 } else { c2 };
                Next::Call(Call::from(&call.com, t, branch.clone(), t), store)
            }
            Com::While(b, body) => {
                if bval(b, &store) {
                    monitor.guard_true(t);
                    match t.checked_pred() {
                        None => Next::Done(StateResult::Timeout),
                        Some(rest) => {
                            let unfolded = Arc::new(Com::Seq(body.clone(), call.com.clone()));
                            Next::Call(Call::from(&call.com, t, unfolded, rest), store)
                        }
                    }
                } else {
                    resume(&mut stack, store, t, join)
                }
            }
        };
        match next {
            Next::Call(c, s) => {
                call = c;
                store = s;
            }
            Next::Done(r) => return r,
        }
    }
}

/// State-like clock decremented only at loop unfoldings. The first half of a
/// `Seq` is wrapped in [`fix_clock`].
pub fn cval(c: &Com, s: &Store, t: Fuel) -> StateResult {
    cval_with(c, s, t, &mut ())
}

pub fn cval_with(c: &Com, s: &Store, t: Fuel, monitor: &mut impl Monitor) -> StateResult {
    run_threaded(c, s, t, monitor, join_fix_clock)
}

/// Twin of [`cval`] whose `Seq` clause clamps the clock where the second half
/// consumes it, instead of wrapping the first half's result.
pub fn cval_guard(c: &Com, s: &Store, t: Fuel) -> StateResult {
    cval_guard_with(c, s, t, &mut ())
}

pub fn cval_guard_with(c: &Com, s: &Store, t: Fuel, monitor: &mut impl Monitor) -> StateResult {
    run_threaded(c, s, t, monitor, join_clamp)
}

/// State-like clock decremented on entry to every clause.
///
/// Clauses, writing `t + 1` for the incoming clock:
///
/// ```text
/// cval_tick c s 0                      = Timeout
/// cval_tick Skip s (t+1)               = Final (s, t)
/// cval_tick (Set x a) s (t+1)          = Final (s[x ↦ aval a s], t)
/// cval_tick (Seq c1 c2) s (t+1)        = case fix_clock t (cval_tick c1 s t) of
///                                          Timeout => Timeout
///                                        | Final (s2, t2) => cval_tick c2 s2 t2
/// cval_tick (If b c1 c2) s (t+1)       = cval_tick (if bval b s then c1 else c2) s t
/// cval_tick (While b c) s (t+1)        = if bval b s then cval_tick (Seq c (While b c)) s t
///                                        else Final (s, t)
/// ```
///
/// The clock consumed by a successful run is the number of clause entries.
pub fn cval_tick(c: &Com, s: &Store, t: Fuel) -> StateResult {
    cval_tick_with(c, s, t, &mut ())
}

pub fn cval_tick_with(c: &Com, s: &Store, t: Fuel, monitor: &mut impl Monitor) -> StateResult {
    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Call::top(c, t);
    let mut store = s.clone();
    loop {
        call.report(monitor, &store);
        let here = call.fuel;
        let Some(t) = here.checked_pred() else {
            return StateResult::Timeout;
        };
        let next = match &*call.com {
            Com::Skip => resume(&mut stack, store, t, join_fix_clock),
            Com::Set(x, a) => {
                let v = aval(a, &store);
                store.update(x.clone(), v);
                resume(&mut stack, store, t, join_fix_clock)
            }
            Com::Seq(c1, _) => {
                stack.push(Frame {
                    seq: call.com.clone(),
                    clause_fuel: here,
                    first_fuel: t,
                });
                Next::Call(Call::from(&call.com, here, c1.clone(), t), store)
            }
            Com::If(b, c1, c2) => {
                let branch = if bval(b, &store) { c1 } else { c2 };
                Next::Call(Call::from(&call.com, here, branch.clone(), t), store)
            }
            Com::While(b, body) => {
                if bval(b, &store) {
                    monitor.guard_true(here);
                    let unfolded = Arc::new(Com::Seq(body.clone(), call.com.clone()));
                    Next::Call(Call::from(&call.com, here, unfolded, t), store)
                } else {
                    resume(&mut stack, store, t, join_fix_clock)
                }
            }
        };
        match next {
            Next::Call(c, s) => {
                call = c;
                store = s;
            }
            Next::Done(r) => return r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Aexp, Bexp};

    fn fuel(t: u64) -> Fuel {
        Fuel::new(t)
    }

    fn s0() -> Store {
        Store::new().with("x", 7)
    }

    fn incr_x() -> Com {
        Com::set("x", Aexp::plus(Aexp::var("x"), Aexp::num(1)))
    }

    fn x_below(n: i64) -> Bexp {
        Bexp::less(Aexp::var("x"), Aexp::num(n))
    }

    fn x_is(v: i64) -> Store {
        Store::new().with("x", v)
    }

    #[test]
    fn fix_clock_timeout() {
        assert_eq!(
            fix_clock(fuel(5), StateResult::Timeout),
            StateResult::Timeout
        );
    }

    #[test]
    fn fix_clock_clamps_increase() {
        assert_eq!(
            fix_clock(fuel(5), StateResult::Final(s0(), fuel(7))),
            StateResult::Final(s0(), fuel(5))
        );
        assert_eq!(
            fix_clock(fuel(5), StateResult::Final(s0(), fuel(3))),
            StateResult::Final(s0(), fuel(3))
        );
        assert_eq!(
            fix_clock(fuel(5), StateResult::Final(s0(), fuel(5))),
            StateResult::Final(s0(), fuel(5))
        );
    }

    // One test per defining clause of `cval`.

    #[test]
    fn cval_skip() {
        assert_eq!(
            cval(&Com::Skip, &s0(), fuel(4)),
            StateResult::Final(s0(), fuel(4))
        );
        assert_eq!(
            cval(&Com::Skip, &s0(), fuel(0)),
            StateResult::Final(s0(), fuel(0))
        );
    }

    #[test]
    fn cval_set() {
        assert_eq!(
            cval(&incr_x(), &s0(), fuel(2)),
            StateResult::Final(x_is(8), fuel(2))
        );
    }

    #[test]
    fn cval_seq_threads_the_clock() {
        let once = Com::while_do(x_below(8), incr_x());
        let again = Com::while_do(x_below(9), incr_x());
        let c = Com::seq(once, again);
        // Unlike ev_min, the second loop sees what the first one left.
        assert_eq!(cval(&c, &s0(), fuel(1)), StateResult::Timeout);
        assert_eq!(
            cval(&c, &s0(), fuel(2)),
            StateResult::Final(x_is(9), fuel(0))
        );
        assert_eq!(
            cval(&c, &s0(), fuel(5)),
            StateResult::Final(x_is(9), fuel(3))
        );
    }

    #[test]
    fn cval_if() {
        let c = Com::if_then_else(x_below(10), incr_x(), Com::Skip);
        assert_eq!(
            cval(&c, &s0(), fuel(0)),
            StateResult::Final(x_is(8), fuel(0))
        );
        let c = Com::if_then_else(x_below(0), incr_x(), Com::Skip);
        assert_eq!(cval(&c, &s0(), fuel(3)), StateResult::Final(s0(), fuel(3)));
    }

    #[test]
    fn cval_while() {
        let exits = Com::while_do(x_below(0), incr_x());
        assert_eq!(
            cval(&exits, &s0(), fuel(0)),
            StateResult::Final(s0(), fuel(0))
        );
        let twice = Com::while_do(x_below(9), incr_x());
        assert_eq!(cval(&twice, &s0(), fuel(1)), StateResult::Timeout);
        assert_eq!(
            cval(&twice, &s0(), fuel(2)),
            StateResult::Final(x_is(9), fuel(0))
        );
        assert_eq!(
            cval(&twice, &s0(), fuel(6)),
            StateResult::Final(x_is(9), fuel(4))
        );
    }

    #[test]
    fn cval_guard_seq_clause() {
        let once = Com::while_do(x_below(8), incr_x());
        let c = Com::seq(once.clone(), once);
        assert_eq!(
            cval_guard(&c, &s0(), fuel(1)),
            StateResult::Final(x_is(8), fuel(0))
        );
        assert_eq!(
            cval_guard(&Com::Skip, &s0(), fuel(9)),
            StateResult::Final(s0(), fuel(9))
        );
        assert_eq!(
            join_clamp(fuel(3), s0(), fuel(5)),
            StateResult::Final(s0(), fuel(3))
        );
        assert_eq!(
            join_clamp(fuel(5), s0(), fuel(3)),
            StateResult::Final(s0(), fuel(3))
        );
    }

    #[test]
    fn cval_tick_clauses() {
        assert_eq!(cval_tick(&Com::Skip, &s0(), fuel(0)), StateResult::Timeout);
        assert_eq!(
            cval_tick(&Com::Skip, &s0(), fuel(1)),
            StateResult::Final(s0(), fuel(0))
        );
        assert_eq!(
            cval_tick(&incr_x(), &s0(), fuel(2)),
            StateResult::Final(x_is(8), fuel(1))
        );
        let two_skips = Com::seq(Com::Skip, Com::Skip);
        assert_eq!(cval_tick(&two_skips, &s0(), fuel(2)), StateResult::Timeout);
        assert_eq!(
            cval_tick(&two_skips, &s0(), fuel(3)),
            StateResult::Final(s0(), fuel(0))
        );
        let branch = Com::if_then_else(x_below(10), incr_x(), Com::Skip);
        assert_eq!(
            cval_tick(&branch, &s0(), fuel(2)),
            StateResult::Final(x_is(8), fuel(0))
        );
        // While(true) + Seq + Set + While(false) = 4 entries.
        let once = Com::while_do(x_below(8), incr_x());
        assert_eq!(cval_tick(&once, &s0(), fuel(3)), StateResult::Timeout);
        assert_eq!(
            cval_tick(&once, &s0(), fuel(4)),
            StateResult::Final(x_is(8), fuel(0))
        );
    }
}
