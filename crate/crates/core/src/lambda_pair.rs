//! The simply typed lambda calculus with pairs and projections, and the
//! translation `*` from break terms into it used for strong normalization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::reduction::{is_silent, Redex, Reducer, ReductionError, RuleName};
use crate::syntax::{fresh_name, Term, TypeExpr, WILDCARD};
use crate::typing::{synth_type, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LTerm {
    LVar(String),
    LLam(String, TypeExpr, Box<LTerm>),
    LApp(Box<LTerm>, Box<LTerm>),
    LPair(Box<LTerm>, Box<LTerm>),
    LProj0(Box<LTerm>),
    LProj1(Box<LTerm>),
}

use LTerm::*;

impl LTerm {
    pub fn var(n: impl Into<String>) -> Self {
        LVar(n.into())
    }
    pub fn lam(x: impl Into<String>, ty: TypeExpr, body: LTerm) -> Self {
        LLam(x.into(), ty, Box::new(body))
    }
    pub fn app(f: LTerm, a: LTerm) -> Self {
        LApp(Box::new(f), Box::new(a))
    }
    pub fn pair(a: LTerm, b: LTerm) -> Self {
        LPair(Box::new(a), Box::new(b))
    }
    pub fn proj0(e: LTerm) -> Self {
        LProj0(Box::new(e))
    }
    pub fn proj1(e: LTerm) -> Self {
        LProj1(Box::new(e))
    }

    pub fn size(&self) -> usize {
        match self {
            LVar(_) => 1,
            LLam(_, _, b) | LProj0(b) | LProj1(b) => 1 + b.size(),
            LApp(a, b) | LPair(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn write(&self, out: &mut String, fun_pos: bool, arg_pos: bool) {
        let paren = match self {
            LLam(..) => fun_pos || arg_pos,
            LApp(..) | LProj0(_) | LProj1(_) => arg_pos,
            _ => false,
        };
        if paren {
            out.push('(');
        }
        match self {
            LVar(n) => out.push_str(n),
            LLam(x, t, b) => {
                out.push_str(&format!("\\{x}:{t}. "));
                b.write(out, false, false);
            }
            LApp(f, a) => {
                f.write(out, true, false);
                out.push(' ');
                a.write(out, false, true);
            }
            LPair(a, b) => {
                out.push('<');
                a.write(out, false, false);
                out.push_str(", ");
                b.write(out, false, false);
                out.push('>');
            }
            LProj0(e) | LProj1(e) => {
                out.push_str(if matches!(self, LProj0(_)) {
                    "p0 "
                } else {
                    "p1 "
                });
                e.write(out, false, true);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, false, false);
        f.write_str(&s)
    }
}

pub fn l_free_names(e: &LTerm) -> BTreeSet<String> {
    fn go(e: &LTerm, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match e {
            LVar(n) => {
                if !bound.contains(n) {
                    out.insert(n.clone());
                }
            }
            LLam(x, _, b) => {
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
            }
            LApp(a, b) | LPair(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            LProj0(a) | LProj1(a) => go(a, bound, out),
        }
    }
    let mut out = BTreeSet::new();
    go(e, &mut Vec::new(), &mut out);
    out
}

fn all_l_names(e: &LTerm, out: &mut BTreeSet<String>) {
    match e {
        LVar(n) => {
            out.insert(n.clone());
        }
        LLam(x, _, b) => {
            out.insert(x.clone());
            all_l_names(b, out);
        }
        LApp(a, b) | LPair(a, b) => {
            all_l_names(a, out);
            all_l_names(b, out);
        }
        LProj0(a) | LProj1(a) => all_l_names(a, out),
    }
}

/// Simultaneous capture-avoiding substitution.
pub fn l_subst(e: &LTerm, bindings: &[(String, LTerm)]) -> LTerm {
    let mut range_free = BTreeSet::new();
    for (_, v) in bindings {
        range_free.extend(l_free_names(v));
    }
    fn go(e: &LTerm, map: &BTreeMap<String, LTerm>, range_free: &BTreeSet<String>) -> LTerm {
        if map.is_empty() {
            return e.clone();
        }
        match e {
            LVar(n) => map.get(n).cloned().unwrap_or_else(|| e.clone()),
            LLam(x, t, b) => {
                let mut inner = map.clone();
                inner.remove(x);
                if inner.is_empty() {
                    return e.clone();
                }
                if x != WILDCARD && range_free.contains(x) {
                    let mut taken = range_free.clone();
                    all_l_names(b, &mut taken);
                    taken.extend(inner.keys().cloned());
                    let x2 = fresh_name(x, &taken);
                    inner.insert(x.clone(), LVar(x2.clone()));
                    let mut rf = range_free.clone();
                    rf.insert(x2.clone());
                    LTerm::lam(x2, t.clone(), go(b, &inner, &rf))
                } else {
                    LTerm::lam(x.clone(), t.clone(), go(b, &inner, range_free))
                }
            }
            LApp(a, b) => LTerm::app(go(a, map, range_free), go(b, map, range_free)),
            LPair(a, b) => LTerm::pair(go(a, map, range_free), go(b, map, range_free)),
            LProj0(a) => LTerm::proj0(go(a, map, range_free)),
            LProj1(a) => LTerm::proj1(go(a, map, range_free)),
        }
    }
    let map: BTreeMap<String, LTerm> = bindings.iter().cloned().collect();
    go(e, &map, &range_free)
}

/// Alpha-equivalence; binder annotations must agree.
pub fn l_alpha_eq(a: &LTerm, b: &LTerm) -> bool {
    fn go<'a>(a: &'a LTerm, b: &'a LTerm, ea: &mut Vec<&'a str>, eb: &mut Vec<&'a str>) -> bool {
        match (a, b) {
            (LVar(x), LVar(y)) => {
                let i = ea.iter().rev().position(|n| *n == x);
                let j = eb.iter().rev().position(|n| *n == y);
                match (i, j) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (LLam(x, tx, bx), LLam(y, ty, by)) => {
                if tx != ty {
                    return false;
                }
                ea.push(x);
                eb.push(y);
                let r = go(bx, by, ea, eb);
                ea.pop();
                eb.pop();
                r
            }
            (LApp(a1, a2), LApp(b1, b2)) | (LPair(a1, a2), LPair(b1, b2)) => {
                go(a1, b1, ea, eb) && go(a2, b2, ea, eb)
            }
            (LProj0(x), LProj0(y)) | (LProj1(x), LProj1(y)) => go(x, y, ea, eb),
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

fn k0(a: &TypeExpr, b: &TypeExpr) -> LTerm {
    let p_ty = TypeExpr::arrow(a.clone(), b.clone());
    LTerm::lam(
        "x",
        a.clone(),
        LTerm::lam("p", p_ty, LTerm::app(LTerm::var("p"), LTerm::var("x"))),
    )
}

fn k1(a: &TypeExpr, b: &TypeExpr) -> LTerm {
    LTerm::lam(
        "x",
        a.clone(),
        LTerm::lam(WILDCARD, b.clone(), LTerm::var("x")),
    )
}

/// The `*` translation. `let` becomes projections of the translated
/// scrutinee, `break` becomes the combinators `k0` and `k1` applied to it.
pub fn star_translate(t: &Term) -> Result<LTerm, TypeError> {
    Ok(match t {
        Term::Var { name, .. } => LTerm::var(name.clone()),
        Term::Lam {
            binder,
            binder_ty,
            body,
        } => LTerm::lam(binder.clone(), binder_ty.clone(), star_translate(body)?),
        Term::App { fun, arg } => LTerm::app(star_translate(fun)?, star_translate(arg)?),
        Term::Pair { first, second } => {
            LTerm::pair(star_translate(first)?, star_translate(second)?)
        }
        Term::Let {
            x,
            y,
            scrutinee,
            body,
            ..
        } => {
            let s = star_translate(scrutinee)?;
            l_subst(
                &star_translate(body)?,
                &[
                    (x.clone(), LTerm::proj0(s.clone())),
                    (y.clone(), LTerm::proj1(s)),
                ],
            )
        }
        Term::Break {
            scrutinee,
            phi,
            f,
            residue,
            body,
        } => {
            let a = synth_type(scrutinee)?;
            let s = star_translate(scrutinee)?;
            l_subst(
                &star_translate(body)?,
                &[
                    (phi.clone(), LTerm::app(k0(&a, residue), s.clone())),
                    (f.clone(), LTerm::app(k1(&a, residue), s)),
                ],
            )
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LTypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("ill-typed subterm `{0}`")]
    IllTyped(String),
}

/// Simple typing (no affinity) under a context for the free variables.
pub fn l_type_check(e: &LTerm, ctx: &BTreeMap<String, TypeExpr>) -> Result<TypeExpr, LTypeError> {
    fn go(
        e: &LTerm,
        env: &mut Vec<(String, TypeExpr)>,
        ctx: &BTreeMap<String, TypeExpr>,
    ) -> Result<TypeExpr, LTypeError> {
        let bad = || LTypeError::IllTyped(e.to_string());
        match e {
            LVar(n) => env
                .iter()
                .rev()
                .find(|(m, _)| m == n)
                .map(|(_, t)| t.clone())
                .or_else(|| ctx.get(n).cloned())
                .ok_or_else(|| LTypeError::Unbound(n.clone())),
            LLam(x, t, b) => {
                env.push((x.clone(), t.clone()));
                let r = go(b, env, ctx);
                env.pop();
                Ok(TypeExpr::arrow(t.clone(), r?))
            }
            LApp(f, a) => {
                let ft = go(f, env, ctx)?;
                let at = go(a, env, ctx)?;
                match ft {
                    TypeExpr::Arrow(d, c) if *d == at => Ok(*c),
                    _ => Err(bad()),
                }
            }
            LPair(a, b) => Ok(TypeExpr::tensor(go(a, env, ctx)?, go(b, env, ctx)?)),
            LProj0(a) => match go(a, env, ctx)? {
                TypeExpr::Tensor(l, _) => Ok(*l),
                _ => Err(bad()),
            },
            LProj1(a) => match go(a, env, ctx)? {
                TypeExpr::Tensor(_, r) => Ok(*r),
                _ => Err(bad()),
            },
        }
    }
    go(e, &mut Vec::new(), ctx)
}

fn contract_root(e: &LTerm) -> Option<LTerm> {
    match e {
        LApp(f, a) => match f.as_ref() {
            LLam(x, _, b) => Some(l_subst(b, &[(x.clone(), (**a).clone())])),
            _ => None,
        },
        LProj0(p) => match p.as_ref() {
            LPair(a, _) => Some((**a).clone()),
            _ => None,
        },
        LProj1(p) => match p.as_ref() {
            LPair(_, b) => Some((**b).clone()),
            _ => None,
        },
        _ => None,
    }
}

/// Every one-step reduct, in preorder of the contracted redex.
pub fn l_step(e: &LTerm) -> Vec<LTerm> {
    let mut out = Vec::new();
    if let Some(r) = contract_root(e) {
        out.push(r);
    }
    match e {
        LVar(_) => {}
        LLam(x, t, b) => out.extend(
            l_step(b)
                .into_iter()
                .map(|b| LTerm::lam(x.clone(), t.clone(), b)),
        ),
        LApp(f, a) => {
            out.extend(l_step(f).into_iter().map(|f| LTerm::app(f, (**a).clone())));
            out.extend(l_step(a).into_iter().map(|a| LTerm::app((**f).clone(), a)));
        }
        LPair(f, a) => {
            out.extend(l_step(f).into_iter().map(|f| LTerm::pair(f, (**a).clone())));
            out.extend(l_step(a).into_iter().map(|a| LTerm::pair((**f).clone(), a)));
        }
        LProj0(a) => out.extend(l_step(a).into_iter().map(LTerm::proj0)),
        LProj1(a) => out.extend(l_step(a).into_iter().map(LTerm::proj1)),
    }
    out
}

fn leftmost_step(e: &LTerm) -> Option<LTerm> {
    if let Some(r) = contract_root(e) {
        return Some(r);
    }
    match e {
        LVar(_) => None,
        LLam(x, t, b) => leftmost_step(b).map(|b| LTerm::lam(x.clone(), t.clone(), b)),
        LApp(f, a) => leftmost_step(f)
            .map(|f| LTerm::app(f, (**a).clone()))
            .or_else(|| leftmost_step(a).map(|a| LTerm::app((**f).clone(), a))),
        LPair(f, a) => leftmost_step(f)
            .map(|f| LTerm::pair(f, (**a).clone()))
            .or_else(|| leftmost_step(a).map(|a| LTerm::pair((**f).clone(), a))),
        LProj0(a) => leftmost_step(a).map(LTerm::proj0),
        LProj1(a) => leftmost_step(a).map(LTerm::proj1),
    }
}

/// Leftmost-outermost normalization.
pub fn l_normalize(e: &LTerm, max_steps: usize) -> Result<LTerm, ReductionError> {
    let mut cur = e.clone();
    for _ in 0..=max_steps {
        match leftmost_step(&cur) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    Err(ReductionError::StepBudgetExceeded(max_steps))
}

/// `(s[t/x])* = s*[t*/x]`, compared up to alpha-equivalence.
pub fn check_substitution_lemma(s: &Term, t: &Term, x: &str) -> Result<bool, TypeError> {
    let lhs = star_translate(&crate::syntax::substitute(s, &[(x.to_string(), t.clone())]))?;
    let rhs = l_subst(&star_translate(s)?, &[(x.to_string(), star_translate(t)?)]);
    Ok(l_alpha_eq(&lhs, &rhs))
}

/// Which clause of the step-mapping property a conversion satisfied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepMapping {
    /// Non-silent standard step: the image reduces in this many steps.
    Reduces(usize),
    /// Silent or permuting step: identical images.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingFailure {
    #[error("non-silent {rule} step at {path} leaves the translation unchanged; the redex lies in a discarded subterm")]
    ErasedRedex { rule: RuleName, path: String },
    #[error("translation of the {rule} reduct at {path} is not reachable from the translation of the redex")]
    NotReachable { rule: RuleName, path: String },
    #[error("{rule} step at {path} changes the translation")]
    NotEqual { rule: RuleName, path: String },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Searches for a reduction `e ->* target`, pairing up structure where the
/// two agree and contracting root redexes where they do not. Returns the
/// number of steps used.
fn reduce_towards(e: &LTerm, target: &LTerm, fuel: usize) -> Option<usize> {
    if l_alpha_eq(e, target) {
        return Some(0);
    }
    if fuel == 0 {
        return None;
    }
    let congruent = match (e, target) {
        (LLam(x, tx, bx), LLam(y, ty, by)) if tx == ty => {
            let mut taken = BTreeSet::new();
            all_l_names(e, &mut taken);
            all_l_names(target, &mut taken);
            let z = fresh_name("z", &taken);
            let bx = l_subst(bx, &[(x.clone(), LTerm::var(z.clone()))]);
            let by = l_subst(by, &[(y.clone(), LTerm::var(z))]);
            reduce_towards(&bx, &by, fuel)
        }
        (LApp(a1, a2), LApp(b1, b2)) | (LPair(a1, a2), LPair(b1, b2)) => {
            reduce_towards(a1, b1, fuel).and_then(|n| reduce_towards(a2, b2, fuel).map(|m| n + m))
        }
        (LProj0(a), LProj0(b)) | (LProj1(a), LProj1(b)) => reduce_towards(a, b, fuel),
        _ => None,
    };
    congruent.or_else(|| {
        let next = contract_root(e)?;
        reduce_towards(&next, target, fuel - 1).map(|n| n + 1)
    })
}

/// Checks that contracting `r` in `t` is reflected by the translation: a
/// non-silent standard step by one or more steps, anything else by equality.
pub fn check_step_mapping(
    reducer: &Reducer,
    t: &Term,
    r: &Redex,
) -> Result<StepMapping, MappingFailure> {
    let t = crate::syntax::canonicalize(t);
    let after = reducer.apply_step(&t, r)?;
    let before_img = star_translate(&t)?;
    let after_img = star_translate(&after)?;
    let path = r.path.to_string();
    let non_silent_standard = match r.rule {
        RuleName::Beta => true,
        RuleName::LConv | RuleName::BConv => !is_silent(&t, r)?,
        _ => false,
    };
    if non_silent_standard {
        if l_alpha_eq(&before_img, &after_img) {
            return Err(MappingFailure::ErasedRedex { rule: r.rule, path });
        }
        match reduce_towards(&before_img, &after_img, 4 * before_img.size() + 8) {
            Some(n) if n >= 1 => Ok(StepMapping::Reduces(n)),
            _ => Err(MappingFailure::NotReachable { rule: r.rule, path }),
        }
    } else if l_alpha_eq(&before_img, &after_img) {
        Ok(StepMapping::Equal)
    } else {
        Err(MappingFailure::NotEqual { rule: r.rule, path })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::syntax::{free_vars, Path};
    use crate::typing::check;

    fn tm(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn translation_clauses() {
        assert_eq!(star_translate(&tm("(x : A)")).unwrap().to_string(), "x");
        let t = tm("break (x : A) as <phi, f> @ B in phi f");
        assert_eq!(
            star_translate(&t).unwrap().to_string(),
            "(\\x:A. \\p:A -> B. p x) x ((\\x:A. \\_:B. x) x)"
        );
        let t = tm("let <x:A, y:B> = (v : A * B) in x");
        assert_eq!(star_translate(&t).unwrap().to_string(), "p0 v");
    }

    #[test]
    fn translation_preserves_types() {
        for s in [
            "\\x:A. break x as <phi, f> @ A in phi f",
            "\\v:A * (A -> B). let <x:A, g:A -> B> = v in break x as <phi, f> @ B in <phi g, f>",
        ] {
            let t = tm(s);
            let img = star_translate(&t).unwrap();
            assert_eq!(
                l_type_check(&img, &free_vars(&t).unwrap()).unwrap(),
                check(&t).unwrap()
            );
        }
    }

    #[test]
    fn projections_and_beta() {
        let e = LTerm::proj0(LTerm::pair(LTerm::var("s"), LTerm::var("t")));
        assert_eq!(l_step(&e), vec![LTerm::var("s")]);
        let e = LTerm::app(
            LTerm::lam("x", TypeExpr::atom("A"), LTerm::var("x")),
            LTerm::var("y"),
        );
        assert_eq!(l_normalize(&e, 10).unwrap(), LTerm::var("y"));
    }

    #[test]
    fn identity_break_image() {
        let s = "\\z:C. z";
        let t = tm(&format!(
            "(\\x:C -> C. break x as <phi, f> @ C -> C in phi f) ({s})"
        ));
        let lhs = l_normalize(&star_translate(&t).unwrap(), 100).unwrap();
        let rhs = l_normalize(&star_translate(&tm(s)).unwrap(), 100).unwrap();
        assert!(l_alpha_eq(&lhs, &rhs));
    }

    #[test]
    fn substitution_lemma_examples() {
        let t = tm("\\z:C. z");
        assert!(check_substitution_lemma(&tm("(x : C -> C)"), &t, "x").unwrap());
        let s =
            tm("break (y : D) as <phi, f> @ B in phi (\\d:D. (g : C -> B) ((x : C -> C) (c : C)))");
        // x occurs in the break body, beside the k0 image of the scrutinee
        assert!(check_substitution_lemma(&s, &t, "x").unwrap());
    }

    #[test]
    fn step_mapping_clauses() {
        let r = |rule| Redex {
            path: Path::root(),
            rule,
        };
        let red = Reducer::default();
        let t = tm("(\\x:A. x) (y : A)");
        assert_eq!(
            check_step_mapping(&red, &t, &r(RuleName::Beta)).unwrap(),
            StepMapping::Reduces(1)
        );
        let t = tm("(let <x:A, y:B> = (v : A * B) in (s : C -> D)) (c : C)");
        assert_eq!(
            check_step_mapping(&red, &t, &r(RuleName::ApLConv)).unwrap(),
            StepMapping::Equal
        );
        let t = tm("break (v : A) as <phi, f> @ B in (z : C)");
        assert_eq!(
            check_step_mapping(&red, &t, &r(RuleName::BConv)).unwrap(),
            StepMapping::Equal
        );
        let t = tm("break (\\z:C. z) as <phi, f> @ B in phi (g : (C -> C) -> B)");
        assert!(matches!(
            check_step_mapping(&red, &t, &r(RuleName::BConv)).unwrap(),
            StepMapping::Reduces(n) if n >= 1
        ));
    }

    #[test]
    fn redex_in_discarded_scrutinee_is_erased() {
        // the translation drops the whole scrutinee, so the beta step inside
        // it has no counterpart in the image
        let t = tm("let <x:A, y:B> = (\\q:A * B. q) (v : A * B) in (c : C)");
        let r = Redex {
            path: Path(vec![0]),
            rule: RuleName::Beta,
        };
        assert!(matches!(
            check_step_mapping(&Reducer::default(), &t, &r),
            Err(MappingFailure::ErasedRedex { .. })
        ));
    }
}
