//! Expression semantics.

use num_bigint::BigInt;

use crate::store::Store;
use crate::syntax::{Aexp, Bexp};

pub fn aval(a: &Aexp, s: &Store) -> BigInt {
    match a {
        Aexp::N(v) => v.clone(),
        Aexp::V(x) => s.lookup(x.as_str()),
        Aexp::Plus(l, r) => aval(l, s) + aval(r, s),
    }
}

pub fn bval(b: &Bexp, s: &Store) -> bool {
    match b {
        Bexp::Bc(v) => *v,
        Bexp::Not(b) => !bval(b, s),
        Bexp::And(l, r) => bval(l, s) && bval(r, s),
        Bexp::Less(l, r) => aval(l, s) < aval(r, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let s = Store::new().with("x", 3);
        assert_eq!(aval(&Aexp::num(5), &s), BigInt::from(5));
        assert_eq!(aval(&Aexp::var("x"), &s), BigInt::from(3));
        let sum = Aexp::plus(Aexp::num(2), Aexp::var("y"));
        assert_eq!(aval(&sum, &Store::new()), BigInt::from(2));
    }

    #[test]
    fn booleans() {
        let s = Store::new();
        assert!(bval(&Bexp::Bc(true), &s));
        assert!(!bval(&Bexp::negate(Bexp::Bc(true)), &s));
        assert!(bval(&Bexp::less(Aexp::num(1), Aexp::num(2)), &s));
        assert!(!bval(&Bexp::less(Aexp::num(2), Aexp::num(2)), &s));
        assert!(!bval(&Bexp::and(Bexp::Bc(true), Bexp::Bc(false)), &s));
    }

    #[test]
    fn no_overflow() {
        let big = Aexp::num(i64::MAX);
        let sum = Aexp::plus(big.clone(), big);
        assert_eq!(aval(&sum, &Store::new()), BigInt::from(i64::MAX) * 2);
    }
}
