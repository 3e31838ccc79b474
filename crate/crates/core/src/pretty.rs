//! Concrete syntax printing. The output is accepted by [`crate::parser`] and
//! parses back to the same tree; parentheses are emitted only where the
//! grammar's associativity would otherwise regroup a subtree.

use std::fmt::{self, Display, Formatter};

use crate::syntax::{Aexp, Bexp, Com};

impl Display for Aexp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Aexp::N(v) => write!(f, "{v}"),
            Aexp::V(x) => write!(f, "{x}"),
            Aexp::Plus(l, r) => match **r {
                // `+` is left-associative, so a right operand sum needs parens.
                Aexp::Plus(..) => write!(f, "{l} + ({r})"),
                _ => write!(f, "{l} + {r}"),
            },
        }
    }
}

struct Conjunct<'a>(&'a Bexp);

impl Display for Conjunct<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            b @ Bexp::And(..) => write!(f, "({b})"),
            b => write!(f, "{b}"),
        }
    }
}

impl Display for Bexp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Bexp::Bc(true) => f.write_str("true"),
            Bexp::Bc(false) => f.write_str("false"),
            Bexp::Not(b) => write!(f, "!{}", Conjunct(b)),
            Bexp::And(l, r) => write!(f, "{} && {r}", Conjunct(l)),
            Bexp::Less(l, r) => write!(f, "{l} < {r}"),
        }
    }
}

impl Display for Com {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Com::Skip => f.write_str("SKIP"),
            Com::Set(x, a) => write!(f, "{x} := {a}"),
            Com::Seq(first, second) => match **first {
                // `;` is right-associative.
                Com::Seq(..) => write!(f, "({first}) ; {second}"),
                _ => write!(f, "{first} ; {second}"),
            },
            Com::If(b, ct, cf) => write!(f, "IF {b} THEN {ct} ELSE {cf} FI"),
            Com::While(b, c) => write!(f, "WHILE {b} DO {c} OD"),
        }
    }
}

/// Pretty-prints a command in the concrete syntax.
pub fn pretty(c: &Com) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_forms() {
        assert_eq!(pretty(&Com::Skip), "SKIP");
        assert_eq!(pretty(&Com::set("x", Aexp::num(1))), "x := 1");
        assert_eq!(
            pretty(&Com::seq(Com::set("x", Aexp::num(1)), Com::Skip)),
            "x := 1 ; SKIP"
        );
    }

    #[test]
    fn loop_example() {
        let c = Com::seq(
            Com::set("x", Aexp::num(0)),
            Com::while_do(
                Bexp::less(Aexp::var("x"), Aexp::num(3)),
                Com::set("x", Aexp::plus(Aexp::var("x"), Aexp::num(1))),
            ),
        );
        assert_eq!(pretty(&c), "x := 0 ; WHILE x < 3 DO x := x + 1 OD");
    }

    #[test]
    fn parenthesizes_against_associativity() {
        let left_seq = Com::seq(Com::seq(Com::Skip, Com::Skip), Com::Skip);
        assert_eq!(pretty(&left_seq), "(SKIP ; SKIP) ; SKIP");
        let right_plus = Aexp::plus(Aexp::num(1), Aexp::plus(Aexp::num(2), Aexp::num(-3)));
        assert_eq!(right_plus.to_string(), "1 + (2 + -3)");
        let left_and = Bexp::and(Bexp::and(Bexp::Bc(true), Bexp::Bc(false)), Bexp::Bc(true));
        assert_eq!(left_and.to_string(), "(true && false) && true");
        assert_eq!(
            Bexp::negate(left_and).to_string(),
            "!((true && false) && true)"
        );
    }
}
