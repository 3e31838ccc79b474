//! Observation hooks for the clocked evaluators.
//!
//! Every evaluator is generic over a [`Monitor`]; the plain entry points use
//! `()` so the hooks compile away. Instrumented runs use them to check the
//! termination measure, count loop unfoldings, and record reachable stores.

use crate::fuel::Fuel;
use crate::store::Store;
use crate::syntax::Com;

/// The clause invocation that issued a recursive call.
#[derive(Clone, Copy, Debug)]
pub struct Caller<'a> {
    pub com: &'a Com,
    pub fuel: Fuel,
}

pub trait Monitor {
    /// A clause of the evaluator is entered for `com` with clock `fuel`.
    /// `caller` is `None` for the outermost call.
    fn enter(&mut self, _caller: Option<Caller<'_>>, _com: &Com, _store: &Store, _fuel: Fuel) {}

    /// A `While` guard evaluated to true with `fuel` on the clock, before any
    /// clock check the clause performs.
    fn guard_true(&mut self, _fuel: Fuel) {}
}

impl Monitor for () {}

impl<M: Monitor + ?Sized> Monitor for &mut M {
    fn enter(&mut self, caller: Option<Caller<'_>>, com: &Com, store: &Store, fuel: Fuel) {
        (**self).enter(caller, com, store, fuel)
    }

    fn guard_true(&mut self, fuel: Fuel) {
        (**self).guard_true(fuel)
    }
}

/// Tracks the lowest clock seen at clause entries and at true loop guards.
///
/// An environment-like clock is never returned, so the amount of it a
/// successful run needed is recovered from these minima: a run shifted down
/// by `d` ticks sees every clock reduced by `d`, and succeeds exactly when
/// every check still passes.
#[derive(Clone, Debug, Default)]
pub struct FuelMeter {
    pub entries: u64,
    pub unfolds: u64,
    pub min_entry_fuel: Option<Fuel>,
    pub min_guard_fuel: Option<Fuel>,
}

impl Monitor for FuelMeter {
    fn enter(&mut self, _caller: Option<Caller<'_>>, _com: &Com, _store: &Store, fuel: Fuel) {
        self.entries += 1;
        self.min_entry_fuel = Some(self.min_entry_fuel.map_or(fuel, |m| m.min(fuel)));
    }

    fn guard_true(&mut self, fuel: Fuel) {
        self.unfolds += 1;
        self.min_guard_fuel = Some(self.min_guard_fuel.map_or(fuel, |m| m.min(fuel)));
    }
}
