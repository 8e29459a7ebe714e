//! Schematic overlaps between conversions and a bounded joinability check.

use std::collections::HashSet;

use crate::parse::parse_term;
use crate::reduction::{Redex, Reducer, ReductionError, RuleName};
use crate::syntax::{alpha_key, Term};

/// Two overlapping redexes in one term.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub left: RuleName,
    pub right: RuleName,
    pub term: Term,
}

// Holes are free variables. Binders are used in the bodies so that none of
// the contractions is silent.
const SCHEMAS: [(RuleName, RuleName, &str); 7] = [
    (
        RuleName::LConv,
        RuleName::ApLConv,
        "(let <x:A, y:B> = <(t : A), (u : B)> in (k : A -> B -> C -> D) x y) (r : C)",
    ),
    (
        RuleName::LConv,
        RuleName::LLConv,
        "let <x:P, y:Q> = (let <a:A, b:B> = <(t : A), (u : B)> in (g : A -> B -> P * Q) a b) \
         in (h : P -> Q -> C) x y",
    ),
    (
        RuleName::BConv,
        RuleName::ApBConv,
        "(break (t : A) as <phi, f> @ B in (k : ((A -> B) -> B) -> C -> D) phi) (r : C)",
    ),
    (
        RuleName::BConv,
        RuleName::LBConv,
        "let <x:P, y:Q> = (break (t : A) as <phi, f> @ B in (g : ((A -> B) -> B) -> P * Q) phi) \
         in (h : P -> Q -> C) x y",
    ),
    (
        RuleName::ApLConv,
        RuleName::LLConv,
        "(let <x:P, y:Q> = (let <a:A, b:B> = (t : A * B) in (g : A -> B -> P * Q) a b) \
         in (h : P -> Q -> C -> D) x y) (r : C)",
    ),
    (
        RuleName::ApLConv,
        RuleName::LBConv,
        "(let <x:P, y:Q> = (break (t : A) as <phi, f> @ B in (g : ((A -> B) -> B) -> (B -> A) -> P * Q) phi f) \
         in (h : P -> Q -> C -> D) x y) (r : C)",
    ),
    (
        RuleName::LLConv,
        RuleName::LLConv,
        "let <x:P, y:Q> = (let <a:A, b:B> = (let <c:E, d:F> = (t : E * F) in (k : E -> F -> A * B) c d) \
         in (g : A -> B -> P * Q) a b) in (h : P -> Q -> C) x y",
    ),
];

/// One schematic instance for each overlapping pair of conversions.
pub fn critical_pairs() -> Vec<CriticalPair> {
    SCHEMAS
        .iter()
        .map(|(left, right, src)| CriticalPair {
            left: *left,
            right: *right,
            term: parse_term(src).expect("schema parses"),
        })
        .collect()
}

/// The two redexes of the pair: the root one and the one nearest the root
/// below it, or two distinct redexes of the same rule for a self-overlap.
pub fn overlapping_redexes(reducer: &Reducer, cp: &CriticalPair) -> Option<(Redex, Redex)> {
    let rs = reducer.find_redexes(&cp.term);
    let first = rs.iter().find(|r| r.rule == cp.left)?.clone();
    let second = rs
        .iter()
        .find(|r| r.rule == cp.right && **r != first)?
        .clone();
    Some((first, second))
}

fn within(reducer: &Reducer, t: &Term, steps: usize) -> Result<HashSet<String>, ReductionError> {
    let mut reached = HashSet::from([alpha_key(t)]);
    let mut frontier = vec![t.clone()];
    for _ in 0..steps {
        let mut next = Vec::new();
        for u in &frontier {
            for v in reducer.reducts_one_step(u)? {
                if reached.insert(alpha_key(&v)) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    Ok(reached)
}

/// Whether `a` and `b` reach a common term (up to alpha) in at most
/// `steps` steps each.
pub fn joinable_within(
    reducer: &Reducer,
    a: &Term,
    b: &Term,
    steps: usize,
) -> Result<bool, ReductionError> {
    let left = within(reducer, a, steps)?;
    let right = within(reducer, b, steps)?;
    Ok(!left.is_disjoint(&right))
}

/// Contracts both redexes of the pair and checks that the results rejoin.
pub fn rejoins(reducer: &Reducer, cp: &CriticalPair, steps: usize) -> Result<bool, ReductionError> {
    let Some((r1, r2)) = overlapping_redexes(reducer, cp) else {
        return Ok(false);
    };
    let a = reducer.apply_step(&cp.term, &r1)?;
    let b = reducer.apply_step(&cp.term, &r2)?;
    joinable_within(reducer, &a, &b, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::check;

    #[test]
    fn schemas_are_typed_and_overlap() {
        let red = Reducer::default();
        for cp in critical_pairs() {
            check(&cp.term).unwrap();
            let (r1, r2) = overlapping_redexes(&red, &cp)
                .unwrap_or_else(|| panic!("{} v. {} has no overlap", cp.left, cp.right));
            assert!(r1.path.0.len() <= 1 && r2.path.0.len() <= 1, "{r1} {r2}");
        }
    }

    #[test]
    fn all_rejoin_in_two_steps() {
        let red = Reducer::default();
        for cp in critical_pairs() {
            assert!(
                rejoins(&red, &cp, 2).unwrap(),
                "{} v. {}",
                cp.left,
                cp.right
            );
        }
    }
}
