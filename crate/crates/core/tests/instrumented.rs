//! Runs the evaluators with monitors attached and checks the accounting
//! the clocks are supposed to do.

use clockwork_core::env::{ev_min_with, ev_with};
use clockwork_core::monitor::{Caller, FuelMeter, Monitor};
use clockwork_core::state::{cval_guard_with, cval_tick_with, cval_with};
use clockwork_core::testkit::{Case, GenConfig};
use clockwork_core::{Com, EnvResult, Fuel, StateResult, Store};

/// Asserts that every recursive call strictly decreases `(fuel, size)`
/// lexicographically.
#[derive(Default)]
struct MeasureCheck {
    calls: u64,
    violations: Vec<String>,
}

impl Monitor for MeasureCheck {
    fn enter(&mut self, caller: Option<Caller<'_>>, com: &Com, _store: &Store, fuel: Fuel) {
        self.calls += 1;
        if let Some(caller) = caller {
            let decreases =
                fuel < caller.fuel || (fuel == caller.fuel && com.size() < caller.com.size());
            if !decreases {
                self.violations.push(format!(
                    "({}, {}) -> ({fuel}, {}) calling {com}",
                    caller.fuel,
                    caller.com.size(),
                    com.size()
                ));
            }
        }
    }
}

fn cases(seed: u64, n: u64) -> impl Iterator<Item = Case> {
    let cfg = GenConfig::with_seed(seed);
    (0..n).map(move |i| Case::generate(&cfg, i))
}

#[test]
fn ev_min_calls_decrease_fuel_then_size() {
    let mut total_calls = 0;
    for case in cases(3, 2_000) {
        let mut check = MeasureCheck::default();
        ev_min_with(&case.program, &case.store, case.fuel, &mut check);
        assert!(
            check.violations.is_empty(),
            "{}: {:?}",
            case.program,
            check.violations
        );
        total_calls += check.calls;
    }
    assert!(total_calls > 10_000);
}

#[test]
fn other_evaluators_respect_the_same_measure() {
    for case in cases(4, 1_000) {
        let (c, s, t) = (&case.program, &case.store, case.fuel);
        let mut checks: [MeasureCheck; 4] = Default::default();
        ev_with(c, s, t, &mut checks[0]);
        cval_with(c, s, t, &mut checks[1]);
        cval_guard_with(c, s, t, &mut checks[2]);
        cval_tick_with(c, s, t, &mut checks[3]);
        for check in &checks {
            assert!(check.violations.is_empty(), "{c}: {:?}", check.violations);
        }
    }
}

#[test]
fn cval_consumes_one_tick_per_unfolding() {
    let mut finals = 0;
    for case in cases(5, 3_000) {
        let mut meter = FuelMeter::default();
        if let StateResult::Final(_, rest) =
            cval_with(&case.program, &case.store, case.fuel, &mut meter)
        {
            assert_eq!(case.fuel.spent_to(rest), meter.unfolds, "{}", case.program);
            finals += 1;
        }
    }
    assert!(finals > 1_000);
}

#[test]
fn cval_tick_consumes_one_tick_per_clause() {
    for case in cases(6, 3_000) {
        let mut meter = FuelMeter::default();
        if let StateResult::Final(_, rest) =
            cval_tick_with(&case.program, &case.store, case.fuel, &mut meter)
        {
            assert_eq!(case.fuel.spent_to(rest), meter.entries, "{}", case.program);
        }
    }
}

#[test]
fn env_clock_depth_matches_least_fuel() {
    // The metered depth is exactly the least fuel at which the run succeeds.
    for case in cases(8, 1_000) {
        let (c, s) = (&case.program, &case.store);
        let big = Fuel::new(200);
        let mut meter = FuelMeter::default();
        if let EnvResult::Final(_) = ev_min_with(c, s, big, &mut meter) {
            let need = meter.min_guard_fuel.map_or(0, |low| big.spent_to(low) + 1);
            assert!(ev_min_with(c, s, Fuel::new(need), &mut ()).is_final());
            if need > 0 {
                assert!(!ev_min_with(c, s, Fuel::new(need - 1), &mut ()).is_final());
            }
        }
        let mut meter = FuelMeter::default();
        if let EnvResult::Final(_) = ev_with(c, s, big, &mut meter) {
            let need = big.spent_to(meter.min_entry_fuel.unwrap()) + 1;
            assert!(ev_with(c, s, Fuel::new(need), &mut ()).is_final());
            assert!(!ev_with(c, s, Fuel::new(need - 1), &mut ()).is_final());
        }
    }
}
