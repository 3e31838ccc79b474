//! Greedy shrinking of failing cases.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::fuel::Fuel;
use crate::syntax::{Aexp, Bexp, Com};

use super::property::Case;

/// Upper bound on accepted shrink steps.
const MAX_STEPS: usize = 2_000;

fn smaller_literals(v: &BigInt) -> Vec<BigInt> {
    if v.is_zero() {
        return vec![];
    }
    let mut out = vec![BigInt::zero()];
    let half: BigInt = v / 2;
    if !half.is_zero() {
        out.push(half);
    }
    let toward: BigInt = v - v.signum();
    if !out.contains(&toward) {
        out.push(toward);
    }
    out
}

pub(crate) fn aexp_candidates(a: &Aexp) -> Vec<Aexp> {
    match a {
        Aexp::N(v) => smaller_literals(v).into_iter().map(Aexp::N).collect(),
        Aexp::V(_) => vec![Aexp::num(0)],
        Aexp::Plus(l, r) => {
            let mut out = vec![(**l).clone(), (**r).clone()];
            out.extend(
                aexp_candidates(l)
                    .into_iter()
                    .map(|l| Aexp::plus(l, (**r).clone())),
            );
            out.extend(
                aexp_candidates(r)
                    .into_iter()
                    .map(|r| Aexp::plus((**l).clone(), r)),
            );
            out
        }
    }
}

pub(crate) fn bexp_candidates(b: &Bexp) -> Vec<Bexp> {
    let mut out = Vec::new();
    if !matches!(b, Bexp::Bc(_)) {
        out.push(Bexp::Bc(true));
        out.push(Bexp::Bc(false));
    }
    match b {
        Bexp::Bc(_) => {}
        Bexp::Not(inner) => {
            out.push((**inner).clone());
            out.extend(bexp_candidates(inner).into_iter().map(Bexp::negate));
        }
        Bexp::And(l, r) => {
            out.push((**l).clone());
            out.push((**r).clone());
            out.extend(
                bexp_candidates(l)
                    .into_iter()
                    .map(|l| Bexp::and(l, (**r).clone())),
            );
            out.extend(
                bexp_candidates(r)
                    .into_iter()
                    .map(|r| Bexp::and((**l).clone(), r)),
            );
        }
        Bexp::Less(l, r) => {
            out.extend(
                aexp_candidates(l)
                    .into_iter()
                    .map(|l| Bexp::less(l, r.clone())),
            );
            out.extend(
                aexp_candidates(r)
                    .into_iter()
                    .map(|r| Bexp::less(l.clone(), r)),
            );
        }
    }
    out
}

/// One-edit simplifications: a subtree replaced by `SKIP` or by one of its
/// children, or an expression inside it simplified.
pub(crate) fn com_candidates(c: &Com) -> Vec<Com> {
    let mut out = Vec::new();
    if !matches!(c, Com::Skip) {
        out.push(Com::Skip);
    }
    let arc = |c: Com| Arc::new(c);
    match c {
        Com::Skip => {}
        Com::Set(x, a) => {
            out.extend(
                aexp_candidates(a)
                    .into_iter()
                    .map(|a| Com::Set(x.clone(), a)),
            );
        }
        Com::Seq(c1, c2) => {
            out.push((**c1).clone());
            out.push((**c2).clone());
            out.extend(
                com_candidates(c1)
                    .into_iter()
                    .map(|c1| Com::Seq(arc(c1), c2.clone())),
            );
            out.extend(
                com_candidates(c2)
                    .into_iter()
                    .map(|c2| Com::Seq(c1.clone(), arc(c2))),
            );
        }
        Com::If(b, ct, cf) => {
            out.push((**ct).clone());
            out.push((**cf).clone());
            out.extend(
                bexp_candidates(b)
                    .into_iter()
                    .map(|b| Com::If(b, ct.clone(), cf.clone())),
            );
            out.extend(
                com_candidates(ct)
                    .into_iter()
                    .map(|ct| Com::If(b.clone(), arc(ct), cf.clone())),
            );
            out.extend(
                com_candidates(cf)
                    .into_iter()
                    .map(|cf| Com::If(b.clone(), ct.clone(), arc(cf))),
            );
        }
        Com::While(b, body) => {
            out.push((**body).clone());
            out.extend(
                bexp_candidates(b)
                    .into_iter()
                    .map(|b| Com::While(b, body.clone())),
            );
            out.extend(
                com_candidates(body)
                    .into_iter()
                    .map(|body| Com::While(b.clone(), arc(body))),
            );
        }
    }
    out
}

fn case_candidates(case: &Case, uses_second: bool) -> Vec<Case> {
    let mut out = Vec::new();
    for p in com_candidates(&case.program) {
        out.push(Case {
            program: p,
            ..case.clone()
        });
    }
    if uses_second {
        for q in com_candidates(&case.second) {
            out.push(Case {
                second: q,
                ..case.clone()
            });
        }
    }
    let t = case.fuel.get();
    let mut fuels = vec![0, t / 2, t.saturating_sub(1)];
    fuels.dedup();
    for f in fuels.into_iter().filter(|f| *f < t) {
        out.push(Case {
            fuel: Fuel::new(f),
            ..case.clone()
        });
    }
    for (var, value) in case.store.iter() {
        for smaller in smaller_literals(value) {
            let mut store = case.store.clone();
            store.update(var.clone(), smaller);
            out.push(Case {
                store,
                ..case.clone()
            });
        }
    }
    for i in 0..case.extra.len() {
        if case.extra[i] > 1 {
            let mut extra = case.extra;
            extra[i] = 1;
            out.push(Case {
                extra,
                ..case.clone()
            });
        }
    }
    out
}

/// Repeatedly takes the first one-edit simplification for which `fails`
/// still holds, until none does. Returns the local minimum and the number
/// of accepted steps.
pub fn shrink(case: &Case, uses_second: bool, fails: impl Fn(&Case) -> bool) -> (Case, usize) {
    let mut current = case.clone();
    let mut steps = 0;
    'outer: while steps < MAX_STEPS {
        for candidate in case_candidates(&current, uses_second) {
            if fails(&candidate) {
                current = candidate;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    (current, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_com;
    use crate::store::Store;

    fn case_of(src: &str) -> Case {
        Case {
            program: parse_com(src).unwrap(),
            second: Com::Skip,
            store: Store::new().with("x", 4).with("y", -3),
            fuel: Fuel::new(40),
            extra: [9, 17],
            samples: vec![],
        }
    }

    #[test]
    fn shrinks_to_a_bare_loop() {
        let case = case_of("x := 3 ; IF y < 2 THEN WHILE x < 5 DO y := y + 1 OD ELSE SKIP FI");
        let (small, steps) = shrink(&case, false, |c| c.program.contains_while());
        assert!(steps > 0);
        assert_eq!(small.program, parse_com("WHILE true DO SKIP OD").unwrap());
        assert_eq!(small.fuel, Fuel::ZERO);
        assert_eq!(small.store, Store::new());
        assert_eq!(small.extra, [1, 1]);
    }

    #[test]
    fn literals_move_toward_zero() {
        let case = case_of("x := 3 + 4");
        // Fails while the literal total stays at least 2.
        let (small, _) = shrink(&case, false, |c| match &c.program {
            Com::Set(_, a) => crate::expr::aval(a, &Store::new()) >= BigInt::from(2),
            _ => false,
        });
        assert_eq!(small.program, parse_com("x := 2").unwrap());
    }

    #[test]
    fn passing_case_is_left_alone() {
        let case = case_of("SKIP");
        let (same, steps) = shrink(&case, false, |_| false);
        assert_eq!(steps, 0);
        assert_eq!(same.program, case.program);
    }
}
