//! Abstract syntax of IMP.
//!
//! Command children are shared behind [`Arc`] so that an evaluator can build
//! the unfolded loop `Seq body (While guard body)` without copying either part.

use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

/// A variable name matching `[a-zA-Z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    /// Builds a variable name, rejecting strings outside the identifier alphabet.
    ///
    /// Reserved words are a concern of the concrete syntax and are not checked here.
    pub fn new(name: &str) -> Option<Var> {
        if is_identifier(name) {
            Some(Var(Arc::from(name)))
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Borrow<str> for Var {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Panics on an invalid name; meant for literals in code and tests.
impl From<&str> for Var {
    fn from(name: &str) -> Var {
        Var::new(name).unwrap_or_else(|| panic!("invalid variable name {name:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aexp {
    N(BigInt),
    V(Var),
    Plus(Box<Aexp>, Box<Aexp>),
}

impl Aexp {
    pub fn num(value: impl Into<BigInt>) -> Aexp {
        Aexp::N(value.into())
    }

    pub fn var(name: impl Into<Var>) -> Aexp {
        Aexp::V(name.into())
    }

    pub fn plus(left: Aexp, right: Aexp) -> Aexp {
        Aexp::Plus(Box::new(left), Box::new(right))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bexp {
    Bc(bool),
    Not(Box<Bexp>),
    And(Box<Bexp>, Box<Bexp>),
    Less(Aexp, Aexp),
}

impl Bexp {
    pub fn negate(arg: Bexp) -> Bexp {
        Bexp::Not(Box::new(arg))
    }

    pub fn and(left: Bexp, right: Bexp) -> Bexp {
        Bexp::And(Box::new(left), Box::new(right))
    }

    pub fn less(left: Aexp, right: Aexp) -> Bexp {
        Bexp::Less(left, right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Com {
    Skip,
    Set(Var, Aexp),
    Seq(Arc<Com>, Arc<Com>),
    If(Bexp, Arc<Com>, Arc<Com>),
    While(Bexp, Arc<Com>),
}

impl Com {
    pub fn set(var: impl Into<Var>, expr: Aexp) -> Com {
        Com::Set(var.into(), expr)
    }

    pub fn seq(first: Com, second: Com) -> Com {
        Com::Seq(Arc::new(first), Arc::new(second))
    }

    pub fn if_then_else(guard: Bexp, then_branch: Com, else_branch: Com) -> Com {
        Com::If(guard, Arc::new(then_branch), Arc::new(else_branch))
    }

    pub fn while_do(guard: Bexp, body: Com) -> Com {
        Com::While(guard, Arc::new(body))
    }

    /// Number of command nodes. Expression nodes are not counted.
    pub fn size(&self) -> usize {
        // Iterative so that very deep generated trees cannot blow the stack.
        let mut total = 0;
        let mut pending = vec![self];
        while let Some(com) = pending.pop() {
            total += 1;
            match com {
                Com::Skip | Com::Set(..) => {}
                Com::Seq(first, second) | Com::If(_, first, second) => {
                    pending.push(first);
                    pending.push(second);
                }
                Com::While(_, body) => pending.push(body),
            }
        }
        total
    }

    /// Immediate sub-commands, in source order.
    pub fn children(&self) -> Vec<&Arc<Com>> {
        match self {
            Com::Skip | Com::Set(..) => vec![],
            Com::Seq(first, second) | Com::If(_, first, second) => vec![first, second],
            Com::While(_, body) => vec![body],
        }
    }

    pub fn contains_while(&self) -> bool {
        matches!(self, Com::While(..)) || self.children().into_iter().any(|c| c.contains_while())
    }

    pub fn contains_if(&self) -> bool {
        matches!(self, Com::If(..)) || self.children().into_iter().any(|c| c.contains_if())
    }
}
