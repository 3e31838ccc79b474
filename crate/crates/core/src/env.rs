//! Environment-like clocks: the clock is passed down and never returned, so
//! it bounds the depth of evaluation.
//!
//! Both evaluators run on an explicit continuation stack. A pending frame
//! records the `Seq` clause whose second half is still to run, together with
//! the clock that clause hands to it. Timeouts abort the whole run, since
//! every clause propagates `None` unchanged.

use std::sync::Arc;

use crate::expr::{aval, bval};
use crate::fuel::Fuel;
use crate::monitor::{Caller, Monitor};
use crate::store::Store;
use crate::syntax::Com;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvResult {
    Timeout,
    Final(Store),
}

impl EnvResult {
    pub fn is_final(&self) -> bool {
        matches!(self, EnvResult::Final(_))
    }

    pub fn store(&self) -> Option<&Store> {
        match self {
            EnvResult::Final(s) => Some(s),
            EnvResult::Timeout => None,
        }
    }
}

struct Frame {
    seq: Arc<Com>,
    clause_fuel: Fuel,
    fuel: Fuel,
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

/// Pops the next pending `Seq` continuation, or finishes the run.
fn resume(stack: &mut Vec<Frame>) -> Option<Call> {
    stack.pop().map(|frame| {
        let second = match &*frame.seq {
            Com::Seq(_, second) => second.clone(),
            _ => unreachable!("only Seq clauses push frames"),
        };
        Call::from(&frame.seq, frame.clause_fuel, second, frame.fuel)
    })
}

/// Decrement-everywhere evaluation: every clause needs a tick and passes the
/// remainder to each recursive call.
pub fn ev(c: &Com, s: &Store, t: Fuel) -> EnvResult {
    ev_with(c, s, t, &mut ())
}

pub fn ev_with(c: &Com, s: &Store, t: Fuel, monitor: &mut impl Monitor) -> EnvResult {
    let mut store = s.clone();
    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Call::top(c, t);
    loop {
        call.report(monitor, &store);
        let Some(t) = call.fuel.checked_pred() else {
            return EnvResult::Timeout;
        };
        let here = call.fuel;
        call = match &*call.com {
            Com::Skip => match resume(&mut stack) {
                Some(next) => next,
                None => return EnvResult::Final(store),
            },
            Com::Set(x, a) => {
                let v = aval(a, &store);
                store.update(x.clone(), v);
                match resume(&mut stack) {
                    Some(next) => next,
                    None => return EnvResult::Final(store),
                }
            }
            Com::Seq(c1, _) => {
                stack.push(Frame {
                    seq: call.com.clone(),
                    clause_fuel: here,
                    fuel: t,
                });
                Call::from(&call.com, here, c1.clone(), t)
            }
            Com::If(b, ct, cf) => {
                let branch = if bval(b, &store) { ct } else { cf };
                Call::from(&call.com, here, branch.clone(), t)
            }
            Com::While(g, body) => {
                if bval(g, &store) {
                    monitor.guard_true(here);
                    let unfolded = Arc::new(Com::Seq(body.clone(), call.com.clone()));
                    Call::from(&call.com, here, unfolded, t)
                } else {
                    match resume(&mut stack) {
                        Some(next) => next,
                        None => return EnvResult::Final(store),
                    }
                }
            }
        };
    }
}

/// Minimal-decrement evaluation: only the `While` unfolding checks and
/// consumes the clock; every other clause passes it through unchanged.
pub fn ev_min(c: &Com, s: &Store, t: Fuel) -> EnvResult {
    ev_min_with(c, s, t, &mut ())
}

pub fn ev_min_with(c: &Com, s: &Store, t: Fuel, monitor: &mut impl Monitor) -> EnvResult {
    let mut store = s.clone();
    let mut stack: Vec<Frame> = Vec::new();
    let mut call = Call::top(c, t);
    loop {
        call.report(monitor, &store);
        let t = call.fuel;
        call = match &*call.com {
            Com::Skip => match resume(&mut stack) {
                Some(next) => next,
                None => return EnvResult::Final(store),
            },
            Com::Set(x, a) => {
                let v = aval(a, &store);
                store.update(x.clone(), v);
                match resume(&mut stack) {
                    Some(next) => next,
                    None => return EnvResult::Final(store),
                }
            }
            Com::Seq(c1, _) => {
                stack.push(Frame {
                    seq: call.com.clone(),
                    clause_fuel: t,
                    fuel: t,
                });
                Call::from(&call.com, t, c1.clone(), t)
            }
            Com::If(b, c1, c2) => {
                let branch = if bval(b, &store) { c1 } else { c2 };
                Call::from(&call.com, t, branch.clone(), t)
            }
            Com::While(b, body) => {
                if bval(b, &store) {
                    monitor.guard_true(t);
                    let Some(rest) = t.checked_pred() else {
                        return EnvResult::Timeout;
                    };
                    let unfolded = Arc::new(Com::Seq(body.clone(), call.com.clone()));
                    Call::from(&call.com, t, unfolded, rest)
                } else {
                    match resume(&mut stack) {
                        Some(next) => next,
                        None => return EnvResult::Final(store),
                    }
                }
            }
        };
    }
}
