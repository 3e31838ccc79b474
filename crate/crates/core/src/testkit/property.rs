//! The property catalogue and the campaign runner.
//!
//! | id  | property |
//! |-----|----------|
//! | P1  | `cval`, `cval_guard` never return more clock than given; `cval_tick` returns strictly less |
//! | P2  | `fix_clock t (cval c s t) = cval c s t` |
//! | P3  | `cval_guard = cval` |
//! | P4  | `ev_min` agrees on `(p ; SKIP) ; (SKIP ; q)` and `p ; q` |
//! | P5  | `ev` agrees on the same pair when `t > 2` and `p`, `q` are insensitive to one tick |
//! | P6  | a final `ev` / `ev_min` result is unchanged by extra fuel |
//! | P7  | a final `ev` result is also the `ev_min` result |
//! | P8  | `cval`/`cval_tick` fuel additivity, `cval` final implies `ev_min` final, store agreement |
//! | P9  | every evaluator reaches the small-step oracle's final store within a fuel bound |
//! | P10 | programs that exhaust the oracle's step cap time out in every evaluator up to fuel 256 |
//! | RT  | `parse_com(pretty(c)) = c` |

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::env::{ev, ev_min, ev_with, EnvResult};
use crate::fuel::Fuel;
use crate::monitor::{Caller, Monitor};
use crate::parser::parse_com;
use crate::semantics::{fuel_search, Outcome, Semantics};
use crate::smallstep::{run_oracle, OracleOutcome};
use crate::state::{cval, cval_guard, cval_tick, fix_clock, StateResult};
use crate::store::Store;
use crate::syntax::Com;

use super::gen::{GenConfig, Generator};
use super::shrink::shrink;

/// Step cap for the small-step oracle in P9 and P10.
pub const ORACLE_CAP: u64 = 10_000;
/// P10 checks every fuel up to and including this one.
pub const P10_MAX_FUEL: u64 = 256;
/// Random stores added to the reachable ones when sampling P5's premises.
pub const P5_RANDOM_STORES: usize = 32;
/// Fuels at which P8 compares final stores across all evaluators, besides the case fuel.
const P8_PROBE_FUELS: [u64; 2] = [64, 256];

/// Fuel-search bound for `ev` and `cval_tick` in P9, given the oracle's
/// step count `n`: `4 (n + size c) + 8`.
pub fn p9_search_bound(steps: u64, c: &Com) -> u64 {
    4 * (steps + c.size() as u64) + 8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    RoundTrip,
}

impl PropertyId {
    pub const ALL: [PropertyId; 11] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::P6,
        PropertyId::P7,
        PropertyId::P8,
        PropertyId::P9,
        PropertyId::P10,
        PropertyId::RoundTrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::P1 => "P1",
            PropertyId::P2 => "P2",
            PropertyId::P3 => "P3",
            PropertyId::P4 => "P4",
            PropertyId::P5 => "P5",
            PropertyId::P6 => "P6",
            PropertyId::P7 => "P7",
            PropertyId::P8 => "P8",
            PropertyId::P9 => "P9",
            PropertyId::P10 => "P10",
            PropertyId::RoundTrip => "RT",
        }
    }

    fn uses_second(self) -> bool {
        matches!(self, PropertyId::P4 | PropertyId::P5)
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for PropertyId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown property `{0}` (expected P1..P10 or RT)")]
pub struct UnknownProperty(pub String);

impl FromStr for PropertyId {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<PropertyId, UnknownProperty> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

/// One generated test input. Every property draws the same case for a
/// given `(seed, index)` and reads the fields it needs.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub program: Com,
    /// `q` in the Seq-rewrite properties.
    pub second: Com,
    pub store: Store,
    pub fuel: Fuel,
    /// Two distinct positive fuel increments.
    pub extra: [u64; 2],
    /// Random stores for P5's premise sample.
    pub samples: Vec<Store>,
}

impl Case {
    pub fn generate(cfg: &GenConfig, index: u64) -> Case {
        use rand::Rng;
        let mut g = Generator::new(cfg, index);
        let program = g.com(cfg.max_size);
        let second = g.com(cfg.max_size);
        let store = g.store();
        let fuel = g.fuel();
        let k1 = g.rng().random_range(1..=32);
        let k2 = g.rng().random_range(33..=96);
        let samples = (0..P5_RANDOM_STORES).map(|_| g.store()).collect();
        Case {
            program,
            second,
            store,
            fuel,
            extra: [k1, k2],
            samples,
        }
    }

    fn describe(&self, id: PropertyId) -> CaseText {
        CaseText {
            program: self.program.to_string(),
            second: id.uses_second().then(|| self.second.to_string()),
            store: self.store.clone(),
            fuel: self.fuel,
            extra: self.extra,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The property does not apply to this case (premise false or vacuous).
    Skip(&'static str),
    Fail {
        expected: String,
        actual: String,
    },
}

impl Verdict {
    fn fail(expected: impl fmt::Display, actual: impl fmt::Display) -> Verdict {
        Verdict::Fail {
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

/// Runs checks in order and stops at the first failure.
macro_rules! ensure {
    ($cond:expr, $expected:expr, $actual:expr) => {
        if !$cond {
            return Verdict::fail($expected, $actual);
        }
    };
}

fn outcome_eq_store(outcome: &Outcome, store: &Store) -> bool {
    outcome.store() == Some(store)
}

pub fn check(id: PropertyId, case: &Case) -> Verdict {
    let (c, s, t) = (&case.program, &case.store, case.fuel);
    match id {
        PropertyId::P1 => {
            for (name, r) in [("cval", cval(c, s, t)), ("cval_guard", cval_guard(c, s, t))] {
                if let StateResult::Final(_, rest) = r {
                    ensure!(rest <= t, format!("{name} leftover ≤ {t}"), rest);
                }
            }
            if let StateResult::Final(_, rest) = cval_tick(c, s, t) {
                ensure!(rest < t, format!("cval_tick leftover < {t}"), rest);
            }
            Verdict::Pass
        }
        PropertyId::P2 => {
            let r = cval(c, s, t);
            let fixed = fix_clock(t, r.clone());
            ensure!(fixed == r, Outcome::State(r), Outcome::State(fixed));
            Verdict::Pass
        }
        PropertyId::P3 => {
            let expected = cval(c, s, t);
            let actual = cval_guard(c, s, t);
            ensure!(
                actual == expected,
                Outcome::State(expected),
                Outcome::State(actual)
            );
            Verdict::Pass
        }
        PropertyId::P4 => {
            let (padded, plain) = seq_pair(c, &case.second);
            let expected = ev_min(&plain, s, t);
            let actual = ev_min(&padded, s, t);
            ensure!(
                actual == expected,
                Outcome::Env(expected),
                Outcome::Env(actual)
            );
            Verdict::Pass
        }
        PropertyId::P5 => check_p5(case),
        PropertyId::P6 => {
            for (name, eval) in [("ev", ev as EnvEval), ("ev_min", ev_min as EnvEval)] {
                let r = eval(c, s, t);
                if r.is_final() {
                    for k in [0, case.extra[0], case.extra[1]] {
                        let more = eval(c, s, t + k);
                        ensure!(
                            more == r,
                            format!("{name} at fuel {}: {}", t + k, Outcome::Env(r.clone())),
                            Outcome::Env(more)
                        );
                    }
                }
            }
            Verdict::Pass
        }
        PropertyId::P7 => {
            let r = ev(c, s, t);
            if r.is_final() {
                let min = ev_min(c, s, t);
                ensure!(min == r, Outcome::Env(r), Outcome::Env(min));
            }
            Verdict::Pass
        }
        PropertyId::P8 => check_p8(case),
        PropertyId::P9 => check_p9(c, s),
        PropertyId::P10 => check_p10(c, s),
        PropertyId::RoundTrip => {
            let text = c.to_string();
            match parse_com(&text) {
                Ok(back) if back == *c => Verdict::Pass,
                Ok(back) => Verdict::fail(format!("{c:?}"), format!("{back:?}")),
                Err(e) => Verdict::fail(format!("{c:?}"), format!("parse error {e}")),
            }
        }
    }
}

type EnvEval = fn(&Com, &Store, Fuel) -> EnvResult;
type StateEval = fn(&Com, &Store, Fuel) -> StateResult;

/// `((p ; SKIP) ; (SKIP ; q), p ; q)`
pub fn seq_pair(p: &Com, q: &Com) -> (Com, Com) {
    let padded = Com::seq(
        Com::seq(p.clone(), Com::Skip),
        Com::seq(Com::Skip, q.clone()),
    );
    (padded, Com::seq(p.clone(), q.clone()))
}

#[derive(Default)]
struct StoreCollector(HashSet<Store>);

impl Monitor for StoreCollector {
    fn enter(&mut self, _caller: Option<Caller<'_>>, _com: &Com, store: &Store, _fuel: Fuel) {
        if !self.0.contains(store) {
            self.0.insert(store.clone());
        }
    }
}

/// Stores over which P5's `∀s` premises are sampled for `case`: all stores
/// seen while evaluating either side and `p`, `q` at `t-1` and `t-2`, their
/// final stores, the initial store, and the case's random samples.
fn p5_premise_stores(case: &Case, t: Fuel) -> HashSet<Store> {
    let (p, q, s) = (&case.program, &case.second, &case.store);
    let (padded, plain) = seq_pair(p, q);
    let lower = [Fuel::new(t.get() - 1), Fuel::new(t.get() - 2)];
    let mut seen = StoreCollector::default();
    seen.0.insert(s.clone());
    ev_with(&padded, s, t, &mut seen);
    ev_with(&plain, s, t, &mut seen);
    for fuel in lower {
        if let EnvResult::Final(s2) = ev_with(p, s, fuel, &mut seen) {
            seen.0.insert(s2.clone());
            ev_with(q, &s2, fuel, &mut seen);
        }
    }
    seen.0.extend(case.samples.iter().cloned());
    seen.0
}

fn check_p5(case: &Case) -> Verdict {
    let t = case.fuel;
    if t.get() <= 2 {
        return Verdict::Skip("fuel ≤ 2");
    }
    let (minus1, minus2) = (Fuel::new(t.get() - 1), Fuel::new(t.get() - 2));
    let stores = p5_premise_stores(case, t);
    let insensitive = |c: &Com| {
        stores
            .iter()
            .all(|st| ev(c, st, minus1) == ev(c, st, minus2))
    };
    if !insensitive(&case.program) || !insensitive(&case.second) {
        return Verdict::Skip("premise false");
    }
    let (padded, plain) = seq_pair(&case.program, &case.second);
    let expected = ev(&plain, &case.store, t);
    let actual = ev(&padded, &case.store, t);
    ensure!(
        actual == expected,
        format!(
            "{} (premises sampled over {} stores)",
            Outcome::Env(expected),
            stores.len()
        ),
        Outcome::Env(actual)
    );
    Verdict::Pass
}

fn check_p8(case: &Case) -> Verdict {
    let (c, s, t) = (&case.program, &case.store, case.fuel);
    // (a) additivity, consumption fixed across three sufficient fuels.
    for (name, eval) in [
        ("cval", cval as StateEval),
        ("cval_tick", cval_tick as StateEval),
    ] {
        if let StateResult::Final(s1, rest) = eval(c, s, t) {
            let consumed = t.spent_to(rest);
            for k in case.extra {
                let more = eval(c, s, t + k);
                let expected = StateResult::Final(s1.clone(), rest + k);
                ensure!(
                    more == expected,
                    format!("{name} at fuel {}: {}", t + k, Outcome::State(expected)),
                    Outcome::State(more)
                );
                let spent = (t + k).spent_to(more.leftover().expect("final"));
                ensure!(
                    spent == consumed,
                    format!("{name} consumes {consumed}"),
                    format!("{spent} at fuel {}", t + k)
                );
            }
        }
    }
    // (b) a length-bounded run fits within the same depth bound.
    if let StateResult::Final(s1, _) = cval(c, s, t) {
        let min = ev_min(c, s, t);
        ensure!(
            min == EnvResult::Final(s1.clone()),
            Outcome::Env(EnvResult::Final(s1)),
            Outcome::Env(min)
        );
    }
    // (c) every final store agrees.
    let mut finals: Vec<(String, Store)> = Vec::new();
    for sem in Semantics::ALL {
        for fuel in std::iter::once(t).chain(P8_PROBE_FUELS.map(Fuel::new)) {
            if let Some(store) = sem.eval(c, s, fuel).store() {
                finals.push((format!("{sem}@{fuel}"), store.clone()));
            }
        }
    }
    if let Some((first_name, first)) = finals.first() {
        for (name, store) in &finals[1..] {
            ensure!(
                store == first,
                format!("{first_name}: {first}"),
                format!("{name}: {store}")
            );
        }
    }
    Verdict::Pass
}

fn check_p9(c: &Com, s: &Store) -> Verdict {
    let OracleOutcome::Terminated {
        store: expected,
        steps,
    } = run_oracle(c, s, ORACLE_CAP)
    else {
        return Verdict::Skip("oracle step limit");
    };
    let exact = Fuel::new(steps + 1);
    for sem in [Semantics::Cval, Semantics::CvalGuard, Semantics::EvMin] {
        let r = sem.eval(c, s, exact);
        ensure!(
            outcome_eq_store(&r, &expected),
            format!("{sem} at fuel {exact}: final store {expected}"),
            r
        );
    }
    let bound = p9_search_bound(steps, c);
    for sem in [Semantics::Ev, Semantics::CvalTick] {
        match fuel_search(sem, c, s, bound) {
            Some((_, r)) if outcome_eq_store(&r, &expected) => {}
            Some((fuel, r)) => {
                return Verdict::fail(
                    format!("{sem}: final store {expected}"),
                    format!("{r} at fuel {fuel}"),
                )
            }
            None => {
                return Verdict::fail(
                    format!("{sem}: final store {expected} within fuel {bound}"),
                    "not found",
                )
            }
        }
    }
    Verdict::Pass
}

fn check_p10(c: &Com, s: &Store) -> Verdict {
    if let OracleOutcome::Terminated { .. } = run_oracle(c, s, ORACLE_CAP) {
        return Verdict::Skip("oracle terminated");
    }
    for sem in Semantics::ALL {
        for fuel in (0..=P10_MAX_FUEL).map(Fuel::new) {
            let r = sem.eval(c, s, fuel);
            ensure!(!r.is_final(), format!("{sem} at fuel {fuel}: Timeout"), r);
        }
    }
    Verdict::Pass
}

/// Printable form of a case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseText {
    pub program: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<String>,
    pub store: Store,
    pub fuel: Fuel,
    pub extra: [u64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    /// Replays with [`replay`] given the report's property and seed.
    pub case: u64,
    pub seed: u64,
    /// The shrunk counterexample.
    pub input: CaseText,
    pub original: CaseText,
    pub shrink_steps: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    /// Cases the property did not apply to, by reason.
    pub skipped: BTreeMap<&'static str, u64>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn skipped_total(&self) -> u64 {
        self.skipped.values().sum()
    }

    /// Cases on which the property was actually exercised.
    pub fn applicable(&self) -> u64 {
        self.cases - self.skipped_total()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

/// Regenerates case `index` of a campaign and re-checks it.
pub fn replay(id: PropertyId, cfg: &GenConfig, index: u64) -> (Case, Verdict) {
    let case = Case::generate(cfg, index);
    let verdict = check(id, &case);
    (case, verdict)
}

/// Checks `id` on cases `0..cases` of the campaign seeded by `cfg.seed`.
///
/// Cases run in parallel; the report is the same as a sequential run's
/// apart from `elapsed_ms`.
pub fn run_property(id: PropertyId, cfg: &GenConfig, cases: u64) -> PropertyReport {
    run_with(id, cfg, cases, check)
}

/// [`run_property`] with a caller-supplied checker, for exercising the harness itself.
pub fn run_with(
    id: PropertyId,
    cfg: &GenConfig,
    cases: u64,
    checker: fn(PropertyId, &Case) -> Verdict,
) -> PropertyReport {
    let started = Instant::now();
    let verdicts: Vec<(u64, Case, Verdict)> = (0..cases)
        .into_par_iter()
        .map(|index| {
            let case = Case::generate(cfg, index);
            let verdict = checker(id, &case);
            (index, case, verdict)
        })
        .collect();

    let mut failures = Vec::new();
    let mut skipped = BTreeMap::new();
    for (index, case, verdict) in verdicts {
        match verdict {
            Verdict::Pass => {}
            Verdict::Skip(reason) => *skipped.entry(reason).or_insert(0) += 1,
            Verdict::Fail { .. } => {
                let (small, shrink_steps) =
                    shrink(&case, id.uses_second(), |c| checker(id, c).is_fail());
                let Verdict::Fail { expected, actual } = checker(id, &small) else {
                    unreachable!("shrinking only accepts failing cases")
                };
                failures.push(Failure {
                    case: index,
                    seed: cfg.seed,
                    input: small.describe(id),
                    original: case.describe(id),
                    shrink_steps,
                    expected,
                    actual,
                });
            }
        }
    }
    PropertyReport {
        property: id,
        cases,
        failures,
        elapsed_ms: started.elapsed().as_millis() as u64,
        skipped,
    }
}
