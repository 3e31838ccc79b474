//! Seeded random generation of programs, stores and fuels.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Campaign case `i` draws from stream `i` of that
//! generator (`set_stream(i)`), so every case is reproducible on its own and
//! independent of how cases are scheduled across threads.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fuel::Fuel;
use crate::parser::is_reserved;
use crate::store::Store;
use crate::syntax::{Aexp, Bexp, Com, Var};

/// Largest fuel drawn for a generated case.
pub const MAX_CASE_FUEL: u64 = 64;

/// Nesting depth of generated expressions.
const EXPR_DEPTH: u32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    /// Command-node budget for generated programs.
    pub max_size: usize,
    pub var_pool: Vec<Var>,
    pub literal_range: RangeInclusive<i64>,
    /// Fraction of generated loops built from the counting template
    /// `WHILE x < k DO x := x + 1 OD`, which always terminates.
    pub loop_bias: f64,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            seed: 0,
            max_size: 12,
            var_pool: vec!["x".into(), "y".into(), "z".into()],
            literal_range: -4..=4,
            loop_bias: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenConfigError {
    #[error("variable pool is empty")]
    EmptyVarPool,
    #[error("variable `{0}` is a reserved word")]
    ReservedVar(String),
    #[error("literal range is empty")]
    EmptyLiteralRange,
    #[error("loop bias must lie in [0, 1]")]
    LoopBias,
    #[error("program size budget must be at least 1")]
    ZeroBudget,
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> GenConfig {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), GenConfigError> {
        if self.var_pool.is_empty() {
            return Err(GenConfigError::EmptyVarPool);
        }
        if let Some(v) = self.var_pool.iter().find(|v| is_reserved(v.as_str())) {
            return Err(GenConfigError::ReservedVar(v.to_string()));
        }
        if self.literal_range.is_empty() {
            return Err(GenConfigError::EmptyLiteralRange);
        }
        if !(0.0..=1.0).contains(&self.loop_bias) {
            return Err(GenConfigError::LoopBias);
        }
        if self.max_size == 0 {
            return Err(GenConfigError::ZeroBudget);
        }
        Ok(())
    }
}

pub struct Generator<'a> {
    cfg: &'a GenConfig,
    rng: ChaCha8Rng,
}

impl<'a> Generator<'a> {
    /// Generator for stream `stream` of the configuration's seed.
    pub fn new(cfg: &'a GenConfig, stream: u64) -> Generator<'a> {
        cfg.validate().expect("invalid generator configuration");
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Generator { cfg, rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn var(&mut self) -> Var {
        let i = self.rng.random_range(0..self.cfg.var_pool.len());
        self.cfg.var_pool[i].clone()
    }

    fn literal(&mut self) -> i64 {
        self.rng.random_range(self.cfg.literal_range.clone())
    }

    /// A command with at most `budget` command nodes.
    pub fn com(&mut self, budget: usize) -> Com {
        assert!(budget >= 1, "command budget must be positive");
        if budget == 1 {
            return self.leaf();
        }
        // Weights: Skip 1, Set 3, Seq 4, If 2, While 2; Seq and If need 3 nodes.
        let compound = budget >= 3;
        let total = if compound { 12 } else { 6 };
        let roll = self.rng.random_range(0..total);
        match (roll, compound) {
            (0..=3, _) => self.leaf(),
            (4..=5, _) => self.while_loop(budget),
            (6..=9, true) => {
                let (l, r) = self.split(budget - 1);
                Com::seq(self.com(l), self.com(r))
            }
            (10..=11, true) => {
                let guard = self.bexp(EXPR_DEPTH);
                let (l, r) = self.split(budget - 1);
                Com::if_then_else(guard, self.com(l), self.com(r))
            }
            _ => unreachable!(),
        }
    }

    fn leaf(&mut self) -> Com {
        if self.rng.random_range(0..4) == 0 {
            Com::Skip
        } else {
            let x = self.var();
            Com::Set(x, self.aexp(EXPR_DEPTH))
        }
    }

    fn split(&mut self, budget: usize) -> (usize, usize) {
        let left = self.rng.random_range(1..budget);
        (left, budget - left)
    }

    fn while_loop(&mut self, budget: usize) -> Com {
        if self.rng.random_bool(self.cfg.loop_bias) {
            let x = self.var();
            let k = self.literal();
            Com::while_do(
                Bexp::less(Aexp::V(x.clone()), Aexp::num(k)),
                Com::Set(x.clone(), Aexp::plus(Aexp::V(x), Aexp::num(1))),
            )
        } else {
            let guard = self.bexp(EXPR_DEPTH);
            Com::while_do(guard, self.com(budget - 1))
        }
    }

    pub fn aexp(&mut self, depth: u32) -> Aexp {
        let roll = self.rng.random_range(0..if depth == 0 { 2 } else { 3 });
        match roll {
            0 => Aexp::num(self.literal()),
            1 => Aexp::V(self.var()),
            _ => Aexp::plus(self.aexp(depth - 1), self.aexp(depth - 1)),
        }
    }

    pub fn bexp(&mut self, depth: u32) -> Bexp {
        // Comparisons dominate so that guards actually depend on the store.
        let roll = self.rng.random_range(0..if depth == 0 { 5 } else { 8 });
        match roll {
            0 => Bexp::Bc(self.rng.random_bool(0.5)),
            1..=4 => Bexp::less(self.aexp(depth.min(1)), self.aexp(depth.min(1))),
            5 => Bexp::negate(self.bexp(depth - 1)),
            _ => Bexp::and(self.bexp(depth - 1), self.bexp(depth - 1)),
        }
    }

    /// Each pool variable is bound with probability 3/4 to a literal.
    pub fn store(&mut self) -> Store {
        let mut store = Store::new();
        for i in 0..self.cfg.var_pool.len() {
            if self.rng.random_range(0..4) != 0 {
                let v = self.literal();
                store.update(self.cfg.var_pool[i].clone(), v.into());
            }
        }
        store
    }

    /// Uniform on `[0, 64]`, with the boundary fuels 0 and 1 drawn one time
    /// in eight.
    pub fn fuel(&mut self) -> Fuel {
        if self.rng.random_range(0..8) == 0 {
            Fuel::new(self.rng.random_range(0..=1))
        } else {
            Fuel::new(self.rng.random_range(0..=MAX_CASE_FUEL))
        }
    }
}

/// A program drawn from stream 0 of `cfg.seed`.
pub fn gen_com(cfg: &GenConfig, budget: usize) -> Com {
    Generator::new(cfg, 0).com(budget)
}
