//! Structural small-step semantics, used as an independent oracle.
//!
//! Shares only `aval`/`bval` with the clocked evaluators.
//!
//! ```text
//! ⟨x := a, s⟩            → ⟨SKIP, s[x ↦ aval a s]⟩
//! ⟨SKIP ; c2, s⟩         → ⟨c2, s⟩
//! ⟨c1 ; c2, s⟩           → ⟨c1' ; c2, s'⟩            if ⟨c1, s⟩ → ⟨c1', s'⟩
//! ⟨IF b THEN c1 ELSE c2 FI, s⟩ → ⟨c1, s⟩ or ⟨c2, s⟩  by bval b s
//! ⟨WHILE b DO c OD, s⟩   → ⟨IF b THEN (c ; WHILE b DO c OD) ELSE SKIP FI, s⟩
//! ```

use std::fmt;
use std::sync::Arc;

use crate::expr::{aval, bval};
use crate::store::Store;
use crate::syntax::Com;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub com: Arc<Com>,
    pub store: Store,
}

impl Config {
    pub fn new(com: &Com, store: &Store) -> Config {
        Config {
            com: Arc::new(com.clone()),
            store: store.clone(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(*self.com, Com::Skip)
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.com, self.store)
    }
}

/// One transition, or `None` on a terminal configuration.
pub fn step(cfg: &Config) -> Option<Config> {
    let mut store = cfg.store.clone();
    let com = step_com(&cfg.com, &mut store)?;
    Some(Config { com, store })
}

fn step_com(com: &Arc<Com>, store: &mut Store) -> Option<Arc<Com>> {
    match &**com {
        Com::Skip => None,
        Com::Set(x, a) => {
            let v = aval(a, store);
            store.update(x.clone(), v);
            Some(Arc::new(Com::Skip))
        }
        Com::Seq(c1, c2) => match **c1 {
            Com::Skip => Some(c2.clone()),
            _ => {
                let c1 = step_com(c1, store).expect("non-Skip commands always step");
                Some(Arc::new(Com::Seq(c1, c2.clone())))
            }
        },
        Com::If(b, ct, cf) => Some(if bval(b, store) {
            ct.clone()
        } else {
            cf.clone()
        }),
        Com::While(b, c) => {
            let again = Arc::new(Com::Seq(c.clone(), com.clone()));
            Some(Arc::new(Com::If(b.clone(), again, Arc::new(Com::Skip))))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Terminated { store: Store, steps: u64 },
    StepLimit { cap: u64 },
}

/// Iterates [`step`] from `⟨c, s⟩` for at most `cap` steps.
pub fn run_oracle(c: &Com, s: &Store, cap: u64) -> OracleOutcome {
    run(c, s, cap, |_| {})
}

/// Like [`run_oracle`], also returning every configuration visited,
/// starting with `⟨c, s⟩`.
pub fn trace(c: &Com, s: &Store, cap: u64) -> (Vec<Config>, OracleOutcome) {
    let mut configs = Vec::new();
    let outcome = run(c, s, cap, |cfg| configs.push(cfg.clone()));
    (configs, outcome)
}

fn run(c: &Com, s: &Store, cap: u64, mut visit: impl FnMut(&Config)) -> OracleOutcome {
    assert!(cap >= 1, "oracle step cap must be positive");
    let mut cfg = Config::new(c, s);
    visit(&cfg);
    let mut steps = 0;
    loop {
        if cfg.is_terminal() {
            return OracleOutcome::Terminated {
                store: cfg.store,
                steps,
            };
        }
        if steps == cap {
            return OracleOutcome::StepLimit { cap };
        }
        cfg = step(&cfg).expect("non-terminal configurations always step");
        steps += 1;
        visit(&cfg);
    }
}
