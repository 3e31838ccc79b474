//! Uniform access to the five clocked evaluators.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::env::{ev_min_with, ev_with, EnvResult};
use crate::fuel::Fuel;
use crate::monitor::FuelMeter;
use crate::state::{cval_guard_with, cval_tick_with, cval_with, StateResult};
use crate::store::Store;
use crate::syntax::Com;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Ev,
    EvMin,
    Cval,
    CvalGuard,
    CvalTick,
}

impl Semantics {
    pub const ALL: [Semantics; 5] = [
        Semantics::Ev,
        Semantics::EvMin,
        Semantics::Cval,
        Semantics::CvalGuard,
        Semantics::CvalTick,
    ];

    /// Command-line spelling: `ev`, `ev-min`, `cval`, `cval-guard`, `cval-tick`.
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Ev => "ev",
            Semantics::EvMin => "ev-min",
            Semantics::Cval => "cval",
            Semantics::CvalGuard => "cval-guard",
            Semantics::CvalTick => "cval-tick",
        }
    }

    pub fn is_state_like(self) -> bool {
        matches!(
            self,
            Semantics::Cval | Semantics::CvalGuard | Semantics::CvalTick
        )
    }

    pub fn eval(self, c: &Com, s: &Store, t: Fuel) -> Outcome {
        self.eval_metered(c, s, t).0
    }

    /// Evaluates and also reports the least clock that would have sufficed,
    /// when the run is final.
    pub fn eval_metered(self, c: &Com, s: &Store, t: Fuel) -> (Outcome, Option<u64>) {
        let mut meter = FuelMeter::default();
        let outcome = match self {
            Semantics::Ev => Outcome::Env(ev_with(c, s, t, &mut meter)),
            Semantics::EvMin => Outcome::Env(ev_min_with(c, s, t, &mut meter)),
            Semantics::Cval => Outcome::State(cval_with(c, s, t, &mut meter)),
            Semantics::CvalGuard => Outcome::State(cval_guard_with(c, s, t, &mut meter)),
            Semantics::CvalTick => Outcome::State(cval_tick_with(c, s, t, &mut meter)),
        };
        let consumed = match &outcome {
            Outcome::Env(EnvResult::Timeout) | Outcome::State(StateResult::Timeout) => None,
            Outcome::State(StateResult::Final(_, rest)) => Some(t.spent_to(*rest)),
            Outcome::Env(EnvResult::Final(_)) => {
                // Every check passed, so each checked clock was at least 1.
                let lowest = match self {
                    Semantics::Ev => meter.min_entry_fuel,
                    _ => meter.min_guard_fuel,
                };
                Some(lowest.map_or(0, |low| t.spent_to(low) + 1))
            }
        };
        (outcome, consumed)
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Semantics {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown semantics `{0}` (expected one of ev, ev-min, cval, cval-guard, cval-tick)")]
pub struct UnknownSemantics(pub String);

impl FromStr for Semantics {
    type Err = UnknownSemantics;

    fn from_str(s: &str) -> Result<Semantics, UnknownSemantics> {
        let normalized = s.replace('_', "-");
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.name() == normalized)
            .ok_or_else(|| UnknownSemantics(s.to_string()))
    }
}

/// Result of any evaluator, keeping its native shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Env(EnvResult),
    State(StateResult),
}

impl Outcome {
    pub fn is_final(&self) -> bool {
        self.store().is_some()
    }

    pub fn store(&self) -> Option<&Store> {
        match self {
            Outcome::Env(r) => r.store(),
            Outcome::State(r) => r.store(),
        }
    }

    pub fn leftover(&self) -> Option<Fuel> {
        match self {
            Outcome::Env(_) => None,
            Outcome::State(r) => r.leftover(),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Env(EnvResult::Timeout) | Outcome::State(StateResult::Timeout) => {
                f.write_str("Timeout")
            }
            Outcome::Env(EnvResult::Final(s)) => write!(f, "Final({s})"),
            Outcome::State(StateResult::Final(s, t)) => write!(f, "Final({s}, {t})"),
        }
    }
}

/// Fuels tried by [`fuel_search`]: 1, 2, 4, … up to `max_fuel`, then
/// `max_fuel` itself if it is not a power of two.
pub fn search_schedule(max_fuel: u64) -> impl Iterator<Item = Fuel> {
    let doubling =
        std::iter::successors(Some(1u64), |f| f.checked_mul(2)).take_while(move |f| *f <= max_fuel);
    let last = (!max_fuel.is_power_of_two() && max_fuel > 0).then_some(max_fuel);
    doubling.chain(last).map(Fuel::new)
}

/// First fuel on the doubling schedule at which `sem` produces a final result.
pub fn fuel_search(sem: Semantics, c: &Com, s: &Store, max_fuel: u64) -> Option<(Fuel, Outcome)> {
    search_schedule(max_fuel).find_map(|t| {
        let outcome = sem.eval(c, s, t);
        outcome.is_final().then_some((t, outcome))
    })
}
