//! Fuel-clocked functional big-step semantics for IMP.
//!
//! Five evaluators cover the two clock dimensions, where the clock is
//! consumed and whether it is returned:
//!
//! | evaluator    | clock consumed at        | clock returned |
//! |--------------|--------------------------|----------------|
//! | [`ev`]       | every clause             | no             |
//! | [`ev_min`]   | loop unfoldings only     | no             |
//! | [`cval`]     | loop unfoldings only     | yes            |
//! | [`cval_guard`] | loop unfoldings only   | yes            |
//! | [`cval_tick`] | every clause            | yes            |
//!
//! [`cval`] and [`cval_guard`] compute the same function; they differ in
//! where the clock clamp needed for a simple termination argument sits.
//! [`smallstep`] is an independent oracle and [`testkit`] turns the
//! relationships between all of these into repeatable property campaigns.

pub mod env;
pub mod expr;
pub mod fuel;
pub mod monitor;
pub mod parser;
pub mod pretty;
pub mod semantics;
pub mod smallstep;
pub mod state;
pub mod store;
pub mod syntax;
pub mod testkit;

pub use env::{ev, ev_min, EnvResult};
pub use expr::{aval, bval};
pub use fuel::Fuel;
pub use parser::{parse_aexp, parse_bexp, parse_com, ParseError};
pub use pretty::pretty;
pub use semantics::{fuel_search, Outcome, Semantics};
pub use smallstep::{run_oracle, OracleOutcome};
pub use state::{cval, cval_guard, cval_tick, fix_clock, StateResult};
pub use store::Store;
pub use syntax::{Aexp, Bexp, Com, Var};
