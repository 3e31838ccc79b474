use std::fmt;
use std::str::FromStr;

use clockwork_core::{parse_aexp, Aexp, Store, Var};
use serde::{Serialize, Serializer};

/// `--fuel N` runs with exactly `N`; `--fuel search:MAX` searches by doubling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuelSpec {
    Exact(u64),
    Search(u64),
}

impl FromStr for FuelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<FuelSpec, String> {
        if let Some(max) = s.strip_prefix("search:") {
            let max: u64 = max
                .parse()
                .map_err(|_| format!("invalid search bound `{max}`"))?;
            if max == 0 {
                return Err("search bound must be positive".into());
            }
            Ok(FuelSpec::Search(max))
        } else {
            s.parse()
                .map(FuelSpec::Exact)
                .map_err(|_| format!("invalid fuel `{s}` (expected N or search:MAX)"))
        }
    }
}

impl fmt::Display for FuelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuelSpec::Exact(n) => write!(f, "{n}"),
            FuelSpec::Search(max) => write!(f, "search:{max}"),
        }
    }
}

impl Serialize for FuelSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FuelSpec::Exact(n) => serializer.serialize_u64(*n),
            FuelSpec::Search(_) => serializer.collect_str(self),
        }
    }
}

/// One `name=integer` initial binding.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding(pub Var, pub Aexp);

impl FromStr for Binding {
    type Err = String;

    fn from_str(s: &str) -> Result<Binding, String> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| format!("binding `{s}` is not of the form name=integer"))?;
        let name = name.trim();
        if clockwork_core::parser::is_reserved(name) {
            return Err(format!("`{name}` is a reserved word"));
        }
        let var = Var::new(name).ok_or_else(|| format!("invalid variable name `{name}`"))?;
        match parse_aexp(value.trim()) {
            Ok(lit @ Aexp::N(_)) => Ok(Binding(var, lit)),
            _ => Err(format!("`{}` is not an integer literal", value.trim())),
        }
    }
}

pub fn initial_store(bindings: &[Binding]) -> Store {
    let mut store = Store::new();
    for Binding(var, lit) in bindings {
        store.update(var.clone(), clockwork_core::aval(lit, &Store::new()));
    }
    store
}
