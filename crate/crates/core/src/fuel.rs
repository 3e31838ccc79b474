use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A non-negative clock value.
///
/// There is deliberately no unchecked decrement: evaluators peel off one tick
/// with [`Fuel::checked_pred`], which plays the role of matching on `Suc t`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fuel(u64);

impl Fuel {
    pub const ZERO: Fuel = Fuel(0);

    pub const fn new(ticks: u64) -> Self {
        Fuel(ticks)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// `Some(t)` when `self` is `t + 1`, `None` when the clock is empty.
    pub fn checked_pred(self) -> Option<Fuel> {
        self.0.checked_sub(1).map(Fuel)
    }

    /// Ticks spent going from `self` down to `rest`. Panics if `rest > self`.
    pub fn spent_to(self, rest: Fuel) -> u64 {
        self.0
            .checked_sub(rest.0)
            .expect("leftover fuel exceeds the fuel supplied")
    }
}

impl From<u64> for Fuel {
    fn from(ticks: u64) -> Self {
        Fuel(ticks)
    }
}

impl Add<u64> for Fuel {
    type Output = Fuel;

    fn add(self, extra: u64) -> Fuel {
        Fuel(self.0.checked_add(extra).expect("fuel overflow"))
    }
}

impl fmt::Display for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
