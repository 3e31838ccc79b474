use clockwork_core::{fuel_search, run_oracle, Com, Fuel, OracleOutcome, Semantics, Store};
use serde::Serialize;

use crate::args::FuelSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunOutcome {
    Final,
    Timeout,
    NotFound,
}

/// The JSON record printed by `run`.
///
/// `store` and `fuel_consumed` are present iff the outcome is final;
/// `leftover_fuel` additionally requires a state-like clock. `oracle_steps`
/// is present iff the oracle was requested, and `null` when the oracle hit
/// its step cap.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub semantics: Semantics,
    pub fuel_in: FuelSpec,
    pub outcome: RunOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub store: Option<Store>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leftover_fuel: Option<Fuel>,
    /// Least fuel for which this run would still have been final.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuel_consumed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_steps: Option<Option<u64>>,
}

impl RunReport {
    pub fn evaluate(
        sem: Semantics,
        c: &Com,
        s: &Store,
        fuel: FuelSpec,
        oracle_cap: Option<u64>,
    ) -> RunReport {
        let run = match fuel {
            FuelSpec::Exact(t) => Some(Fuel::new(t)),
            FuelSpec::Search(max) => fuel_search(sem, c, s, max).map(|(t, _)| t),
        };
        let mut report = RunReport {
            semantics: sem,
            fuel_in: fuel,
            outcome: RunOutcome::NotFound,
            store: None,
            leftover_fuel: None,
            fuel_consumed: None,
            oracle_steps: None,
        };
        if let Some(t) = run {
            let (outcome, consumed) = sem.eval_metered(c, s, t);
            match outcome.store() {
                Some(store) => {
                    report.outcome = RunOutcome::Final;
                    report.store = Some(store.clone());
                    report.leftover_fuel = outcome.leftover();
                    report.fuel_consumed = consumed;
                }
                None => report.outcome = RunOutcome::Timeout,
            }
        }
        if let Some(cap) = oracle_cap {
            report.oracle_steps = Some(match run_oracle(c, s, cap) {
                OracleOutcome::Terminated { steps, .. } => Some(steps),
                OracleOutcome::StepLimit { .. } => None,
            });
        }
        report
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            RunOutcome::Final => 0,
            RunOutcome::Timeout | RunOutcome::NotFound => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clockwork_core::parse_com;

    fn loop3() -> Com {
        parse_com("x := 0 ; WHILE x < 3 DO x := x + 1 OD").unwrap()
    }

    fn json(report: &RunReport) -> String {
        serde_json::to_string(report).unwrap()
    }

    #[test]
    fn final_state_like() {
        let r = RunReport::evaluate(
            Semantics::Cval,
            &loop3(),
            &Store::new(),
            FuelSpec::Exact(3),
            None,
        );
        assert_eq!(
            json(&r),
            r#"{"semantics":"cval","fuel_in":3,"outcome":"final","store":{"x":3},"leftover_fuel":0,"fuel_consumed":3}"#
        );
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn timeout_has_no_store() {
        let r = RunReport::evaluate(
            Semantics::Cval,
            &loop3(),
            &Store::new(),
            FuelSpec::Exact(2),
            None,
        );
        assert_eq!(
            json(&r),
            r#"{"semantics":"cval","fuel_in":2,"outcome":"timeout"}"#
        );
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn env_like_has_no_leftover() {
        let r = RunReport::evaluate(
            Semantics::EvMin,
            &loop3(),
            &Store::new(),
            FuelSpec::Exact(10),
            Some(100),
        );
        assert_eq!(
            json(&r),
            r#"{"semantics":"ev-min","fuel_in":10,"outcome":"final","store":{"x":3},"fuel_consumed":3,"oracle_steps":16}"#
        );
    }

    #[test]
    fn search_outcomes() {
        let r = RunReport::evaluate(
            Semantics::Cval,
            &loop3(),
            &Store::new(),
            FuelSpec::Search(64),
            None,
        );
        assert_eq!(
            json(&r),
            r#"{"semantics":"cval","fuel_in":"search:64","outcome":"final","store":{"x":3},"leftover_fuel":1,"fuel_consumed":3}"#
        );
        let spin = parse_com("WHILE true DO SKIP OD").unwrap();
        let r = RunReport::evaluate(
            Semantics::Cval,
            &spin,
            &Store::new(),
            FuelSpec::Search(1024),
            Some(50),
        );
        assert_eq!(
            json(&r),
            r#"{"semantics":"cval","fuel_in":"search:1024","outcome":"not-found","oracle_steps":null}"#
        );
        assert_eq!(r.exit_code(), 2);
    }
}
