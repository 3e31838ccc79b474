use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::syntax::Var;

/// A total map from variable names to integers. Unbound names read as 0.
///
/// Equality is extensional: a binding `x ↦ 0` is indistinguishable from an
/// absent `x`. Explicit zero bindings are kept only so that printed stores
/// show every assigned variable.
#[derive(Clone, Default)]
pub struct Store {
    bindings: BTreeMap<Var, BigInt>,
}

impl Store {
    pub fn new() -> Store {
        Store::default()
    }

    pub fn lookup(&self, var: &str) -> BigInt {
        self.bindings.get(var).cloned().unwrap_or_default()
    }

    pub fn update(&mut self, var: Var, value: BigInt) {
        self.bindings.insert(var, value);
    }

    pub fn with(mut self, var: impl Into<Var>, value: impl Into<BigInt>) -> Store {
        self.update(var.into(), value.into());
        self
    }

    /// Bindings in name order, including explicit zeros.
    pub fn iter(&self) -> impl Iterator<Item = (&Var, &BigInt)> {
        self.bindings.iter()
    }

    /// Non-zero bindings in name order; two stores are equal iff these agree.
    pub fn canonical(&self) -> impl Iterator<Item = (&Var, &BigInt)> {
        self.bindings.iter().filter(|(_, v)| !v.is_zero())
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// `{"x": 3}`-style JSON object.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("store serialization is infallible")
    }
}

impl PartialEq for Store {
    fn eq(&self, other: &Store) -> bool {
        self.canonical().eq(other.canonical())
    }
}

impl Eq for Store {}

impl std::hash::Hash for Store {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (var, value) in self.canonical() {
            var.hash(state);
            value.hash(state);
        }
    }
}

impl<V: Into<Var>, N: Into<BigInt>> FromIterator<(V, N)> for Store {
    fn from_iter<I: IntoIterator<Item = (V, N)>>(iter: I) -> Store {
        let mut store = Store::new();
        for (var, value) in iter {
            store.update(var.into(), value.into());
        }
        store
    }
}

impl Serialize for Store {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.bindings.len()))?;
        for (var, value) in &self.bindings {
            let number: serde_json::Number = value
                .to_string()
                .parse()
                .expect("decimal integers are valid JSON numbers");
            map.serialize_entry(var.as_str(), &number)?;
        }
        map.end()
    }
}

/// `{x ↦ 1, y ↦ -2}`; the empty store prints as `{}`.
impl fmt::Display for Store {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (var, value)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{var} ↦ {value}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Store {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unbound_reads_zero() {
        assert_eq!(Store::new().lookup("x"), BigInt::zero());
    }

    #[test]
    fn update_then_lookup() {
        let s = Store::new().with("x", 3).with("y", 4).with("x", 5);
        assert_eq!(s.lookup("x"), BigInt::from(5));
        assert_eq!(s.lookup("y"), BigInt::from(4));
    }

    #[test]
    fn zero_binding_equals_absent() {
        assert_eq!(Store::new().with("x", 0), Store::new());
        assert_ne!(Store::new().with("x", 1), Store::new());
    }

    #[test]
    fn json_and_display() {
        let s = Store::new().with("y", -2).with("x", 1);
        assert_eq!(s.to_json().to_string(), r#"{"x":1,"y":-2}"#);
        assert_eq!(s.to_string(), "{x ↦ 1, y ↦ -2}");
        assert_eq!(Store::new().to_string(), "{}");
    }

    #[test]
    fn big_values_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = Store::new().with("x", big);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"x":123456789012345678901234567890}"#
        );
    }

    proptest! {
        #[test]
        fn update_order_irrelevant_for_distinct_names(
            updates in proptest::collection::btree_map("[a-e]", -5i64..5, 0..5)
        ) {
            let forward: Store = updates.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let backward: Store = updates.iter().rev().map(|(k, v)| (k.as_str(), *v)).collect();
            prop_assert_eq!(forward, backward);
        }

        #[test]
        fn lookup_of_other_name_unchanged(a in -5i64..5, b in -5i64..5) {
            let before = Store::new().with("y", b);
            let after = before.clone().with("x", a);
            prop_assert_eq!(after.lookup("y"), before.lookup("y"));
            prop_assert_eq!(after.lookup("x"), BigInt::from(a));
        }
    }
}
