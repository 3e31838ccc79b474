//! A million loop iterations must not exhaust the call stack in any evaluator.

use std::time::{Duration, Instant};

use clockwork_core::{
    cval, cval_guard, cval_tick, ev, ev_min, parse_com, EnvResult, Fuel, StateResult, Store,
};

const MILLION_LOOP: &str = "x := 0 ; WHILE x < 1000000 DO x := x + 1 OD";

fn million() -> Store {
    Store::new().with("x", 1_000_000)
}

#[test]
fn ev_min_runs_a_million_iterations() {
    let c = parse_com(MILLION_LOOP).unwrap();
    let started = Instant::now();
    assert_eq!(
        ev_min(&c, &Store::new(), Fuel::new(2_000_000)),
        EnvResult::Final(million())
    );
    assert!(started.elapsed() < Duration::from_secs(30));
}

#[test]
fn cval_runs_a_million_iterations() {
    let c = parse_com(MILLION_LOOP).unwrap();
    let started = Instant::now();
    assert_eq!(
        cval(&c, &Store::new(), Fuel::new(2_000_000)),
        StateResult::Final(million(), Fuel::new(1_000_000))
    );
    assert_eq!(
        cval_guard(&c, &Store::new(), Fuel::new(2_000_000)),
        StateResult::Final(million(), Fuel::new(1_000_000))
    );
    assert!(started.elapsed() < Duration::from_secs(30));
}

/// Least fuels for `x := 0 ; WHILE x < n DO x := x + 1 OD`, counted by hand:
/// `ev` goes two levels deeper per iteration (While, Seq) below the top Seq,
/// and the final guard test still needs a tick: `2n + 2`.
/// `cval_tick` enters Seq and Set once, then While, Seq, Set per iteration,
/// then the final While: `3n + 3`.
fn least_ev(n: u64) -> u64 {
    2 * n + 2
}

fn least_tick(n: u64) -> u64 {
    3 * n + 3
}

#[test]
fn hand_counts_match_small_loops() {
    for n in 0..20u64 {
        let c = parse_com(&format!("x := 0 ; WHILE x < {n} DO x := x + 1 OD")).unwrap();
        let s = Store::new();
        assert!(ev(&c, &s, Fuel::new(least_ev(n))).is_final());
        assert!(!ev(&c, &s, Fuel::new(least_ev(n) - 1)).is_final());
        assert_eq!(
            cval_tick(&c, &s, Fuel::new(least_tick(n))).leftover(),
            Some(Fuel::ZERO)
        );
        assert!(!cval_tick(&c, &s, Fuel::new(least_tick(n) - 1)).is_final());
    }
}

#[test]
fn decrement_everywhere_variants_run_a_million_iterations() {
    let c = parse_com(MILLION_LOOP).unwrap();
    let n = 1_000_000;
    assert_eq!(
        ev(&c, &Store::new(), Fuel::new(least_ev(n))),
        EnvResult::Final(million())
    );
    assert_eq!(
        ev(&c, &Store::new(), Fuel::new(least_ev(n) - 1)),
        EnvResult::Timeout
    );
    assert_eq!(
        cval_tick(&c, &Store::new(), Fuel::new(least_tick(n))),
        StateResult::Final(million(), Fuel::ZERO)
    );
    assert_eq!(
        cval_tick(&c, &Store::new(), Fuel::new(least_tick(n) - 1)),
        StateResult::Timeout
    );
}
