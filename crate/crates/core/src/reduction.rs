//! One-step conversions, redex discovery, normalization and traces.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::print::print_term;
use crate::syntax::{
    alpha_key, canonicalize, free_names, fresh_name, is_free_in, substitute, term_size, Path, Term,
    TypeExpr, WILDCARD,
};
use crate::typing::{synth_type, TypeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Beta,
    LConv,
    BConv,
    ApLConv,
    LLConv,
    ApBConv,
    LBConv,
    /// Rejected permutation of `let` out of a `break` scrutinee. Breaks
    /// confluence; only available when explicitly enabled.
    BLConv,
}

impl RuleName {
    pub const ALL: [RuleName; 8] = [
        RuleName::Beta,
        RuleName::LConv,
        RuleName::BConv,
        RuleName::ApLConv,
        RuleName::LLConv,
        RuleName::ApBConv,
        RuleName::LBConv,
        RuleName::BLConv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Beta => "beta",
            RuleName::LConv => "l-conv",
            RuleName::BConv => "b-conv",
            RuleName::ApLConv => "ap-l-conv",
            RuleName::LLConv => "l-l-conv",
            RuleName::ApBConv => "ap-b-conv",
            RuleName::LBConv => "l-b-conv",
            RuleName::BLConv => "b-l-conv",
        }
    }

    pub fn is_standard(self) -> bool {
        matches!(self, RuleName::Beta | RuleName::LConv | RuleName::BConv)
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Redex {
    pub path: Path,
    pub rule: RuleName,
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rule, self.path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no {rule} redex at {path}")]
    InvalidRedex { path: Path, rule: RuleName },
    #[error("no normal form within {0} steps")]
    StepBudgetExceeded(usize),
    #[error("silence is only defined for l-conv and b-conv, not {0}")]
    NotClassifiable(RuleName),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Which redex `normalize` contracts at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// First redex in preorder (leftmost-outermost).
    #[default]
    First,
    /// Last redex in preorder.
    Last,
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(Strategy::First),
            "last" => Ok(Strategy::Last),
            _ => Err(format!("unknown strategy `{s}` (expected first or last)")),
        }
    }
}

/// Reduction settings. The default admits exactly the sound rule set and
/// reduces leftmost-outermost.
#[derive(Debug, Clone, Copy, Default)]
pub struct Reducer {
    pub experimental_blconv: bool,
    pub strategy: Strategy,
}

#[derive(Debug, Clone)]
pub struct Step {
    pub rule: RuleName,
    pub path: Path,
    pub before: Term,
    pub after: Term,
}

#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn rules(&self) -> Vec<RuleName> {
        self.steps.iter().map(|s| s.rule).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// One line per step: index (from 1), rule, path, resulting term.
impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "{} {} {} {}",
                i + 1,
                s.rule,
                s.path,
                print_term(&s.after)
            )?;
        }
        Ok(())
    }
}

/// Lexicographically ordered termination measure for permuting and silent
/// conversions: term size, total size of let/break scrutinees, total type
/// size of let/break bodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure {
    pub size: usize,
    pub first_arg_load: usize,
    pub second_arg_type_load: usize,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.size, self.first_arg_load, self.second_arg_type_load
        )
    }
}

pub fn measure(t: &Term) -> Result<Measure, TypeError> {
    fn loads(t: &Term, acc: &mut (usize, usize)) -> Result<(), TypeError> {
        if let Term::Let {
            scrutinee, body, ..
        }
        | Term::Break {
            scrutinee, body, ..
        } = t
        {
            acc.0 += term_size(scrutinee);
            acc.1 += synth_type(body)?.size();
        }
        for c in t.children() {
            loads(c, acc)?;
        }
        Ok(())
    }
    let mut acc = (0, 0);
    loads(t, &mut acc)?;
    Ok(Measure {
        size: term_size(t),
        first_arg_load: acc.0,
        second_arg_type_load: acc.1,
    })
}

/// Rules whose left-hand side matches at the root of `t`, side conditions
/// included, in the order of [`RuleName::ALL`].
fn root_rules(t: &Term, blconv: bool) -> Vec<RuleName> {
    let mut out = Vec::new();
    match t {
        Term::App { fun, .. } => match fun.as_ref() {
            Term::Lam { .. } => out.push(RuleName::Beta),
            Term::Let { .. } => out.push(RuleName::ApLConv),
            Term::Break { .. } => out.push(RuleName::ApBConv),
            _ => {}
        },
        Term::Let {
            scrutinee, body, ..
        } => match scrutinee.as_ref() {
            Term::Pair { .. } => out.push(RuleName::LConv),
            Term::Let { x, y, .. } => {
                if !is_free_in(x, body) && !is_free_in(y, body) {
                    out.push(RuleName::LLConv);
                }
            }
            Term::Break { phi, f, .. } if !is_free_in(phi, body) && !is_free_in(f, body) => {
                out.push(RuleName::LBConv);
            }
            _ => {}
        },
        Term::Break {
            scrutinee,
            phi,
            f,
            body,
            ..
        } => {
            if !is_free_in(phi, body) || !is_free_in(f, body) || free_names(scrutinee).is_empty() {
                out.push(RuleName::BConv);
            }
            if blconv && matches!(scrutinee.as_ref(), Term::Let { .. }) {
                out.push(RuleName::BLConv);
            }
        }
        _ => {}
    }
    out
}

impl Reducer {
    pub fn experimental() -> Self {
        Reducer {
            experimental_blconv: true,
            ..Reducer::default()
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// All redexes of `t` in preorder. Side conditions are evaluated after
    /// renaming binders apart, so they never fail merely because of names.
    pub fn find_redexes(&self, t: &Term) -> Vec<Redex> {
        fn walk(t: &Term, path: &mut Vec<usize>, blconv: bool, out: &mut Vec<Redex>) {
            for rule in root_rules(t, blconv) {
                out.push(Redex {
                    path: Path(path.clone()),
                    rule,
                });
            }
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                walk(c, path, blconv, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(
            &canonicalize(t),
            &mut Vec::new(),
            self.experimental_blconv,
            &mut out,
        );
        out
    }

    /// Contracts the redex `r`. The result has its binders renamed apart.
    pub fn apply_step(&self, t: &Term, r: &Redex) -> Result<Term, ReductionError> {
        let invalid = || ReductionError::InvalidRedex {
            path: r.path.clone(),
            rule: r.rule,
        };
        let t = canonicalize(t);
        let sub = t.subterm(&r.path.0).ok_or_else(invalid)?;
        if !root_rules(sub, self.experimental_blconv).contains(&r.rule) {
            return Err(invalid());
        }
        let new = contract(sub, r.rule)?.ok_or_else(invalid)?;
        let out = t.replace_at(&r.path.0, new).ok_or_else(invalid)?;
        Ok(canonicalize(&out))
    }

    /// Every one-step reduct, deduplicated up to alpha-equivalence.
    pub fn reducts_one_step(&self, t: &Term) -> Result<Vec<Term>, ReductionError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in self.find_redexes(t) {
            let u = self.apply_step(t, &r)?;
            if seen.insert(alpha_key(&u)) {
                out.push(u);
            }
        }
        Ok(out)
    }

    pub fn normalize(&self, t: &Term, max_steps: usize) -> Result<(Term, Trace), ReductionError> {
        let mut cur = canonicalize(t);
        let mut trace = Trace::default();
        loop {
            let redexes = self.find_redexes(&cur);
            let chosen = match self.strategy {
                Strategy::First => redexes.first(),
                Strategy::Last => redexes.last(),
            };
            let Some(r) = chosen else {
                return Ok((cur, trace));
            };
            if trace.len() >= max_steps {
                return Err(ReductionError::StepBudgetExceeded(max_steps));
            }
            let next = self.apply_step(&cur, r)?;
            trace.steps.push(Step {
                rule: r.rule,
                path: r.path.clone(),
                before: cur,
                after: next.clone(),
            });
            cur = next;
        }
    }

    /// Normal forms reachable from `t` along any reduction path, up to
    /// alpha-equivalence. `max_terms` bounds the number of distinct terms
    /// visited.
    pub fn all_normal_forms(
        &self,
        t: &Term,
        max_terms: usize,
    ) -> Result<Vec<Term>, ReductionError> {
        let mut seen: HashMap<String, ()> = HashMap::new();
        let mut stack = vec![canonicalize(t)];
        let mut normal = Vec::new();
        let mut normal_keys = HashSet::new();
        while let Some(cur) = stack.pop() {
            let key = alpha_key(&cur);
            if seen.insert(key.clone(), ()).is_some() {
                continue;
            }
            if seen.len() > max_terms {
                return Err(ReductionError::StepBudgetExceeded(max_terms));
            }
            let next = self.reducts_one_step(&cur)?;
            if next.is_empty() {
                if normal_keys.insert(key) {
                    normal.push(cur);
                }
            } else {
                stack.extend(next);
            }
        }
        Ok(normal)
    }
}

fn rename_apart(binders: &[&String], avoid: &Term, inside: &Term) -> (Vec<String>, Term) {
    let mut taken = free_names(avoid);
    taken.extend(free_names(inside));
    let mut names = Vec::new();
    let mut renames = Vec::new();
    for b in binders {
        if b.as_str() != WILDCARD && is_free_in(b, avoid) {
            let n = fresh_name(b, &taken);
            taken.insert(n.clone());
            renames.push(((*b).clone(), n.clone()));
            names.push(n);
        } else {
            names.push((*b).clone());
        }
    }
    let renamed = if renames.is_empty() {
        inside.clone()
    } else {
        rename_free(inside, &renames)
    };
    (names, renamed)
}

fn rename_free(t: &Term, renames: &[(String, String)]) -> Term {
    let fv = crate::syntax::free_vars(t).unwrap_or_default();
    let bindings: Vec<(String, Term)> = renames
        .iter()
        .filter_map(|(old, new)| {
            fv.get(old)
                .map(|ty| (old.clone(), Term::var(new, ty.clone())))
        })
        .collect();
    substitute(t, &bindings)
}

/// The contractum of `rule` at the root of `t`, or `None` if the shape does
/// not match.
fn contract(t: &Term, rule: RuleName) -> Result<Option<Term>, TypeError> {
    Ok(match (rule, t) {
        (RuleName::Beta, Term::App { fun, arg }) => match fun.as_ref() {
            Term::Lam { binder, body, .. } => {
                Some(substitute(body, &[(binder.clone(), (**arg).clone())]))
            }
            _ => None,
        },
        (
            RuleName::LConv,
            Term::Let {
                x,
                y,
                scrutinee,
                body,
                ..
            },
        ) => match scrutinee.as_ref() {
            Term::Pair { first, second } => Some(substitute(
                body,
                &[
                    (x.clone(), (**first).clone()),
                    (y.clone(), (**second).clone()),
                ],
            )),
            _ => None,
        },
        (
            RuleName::BConv,
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
            },
        ) => {
            let a = synth_type(scrutinee)?;
            let p = fresh_name("p", &free_names(scrutinee));
            let p_ty = TypeExpr::arrow(a, residue.clone());
            let k = Term::lam(
                p.clone(),
                p_ty.clone(),
                Term::app(Term::var(p, p_ty), (**scrutinee).clone()),
            );
            let s = Term::lam(WILDCARD, residue.clone(), (**scrutinee).clone());
            Some(substitute(body, &[(phi.clone(), k), (f.clone(), s)]))
        }
        (RuleName::ApLConv, Term::App { fun, arg }) => match fun.as_ref() {
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
            } => {
                let (n, inner) = rename_apart(&[x, y], arg, body);
                Some(Term::let_pair(
                    n[0].clone(),
                    x_ty.clone(),
                    n[1].clone(),
                    y_ty.clone(),
                    (**scrutinee).clone(),
                    Term::app(inner, (**arg).clone()),
                ))
            }
            _ => None,
        },
        (RuleName::ApBConv, Term::App { fun, arg }) => match fun.as_ref() {
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
            } => {
                let (n, inner) = rename_apart(&[phi, f], arg, body);
                Some(Term::brk(
                    (**scrutinee).clone(),
                    n[0].clone(),
                    n[1].clone(),
                    residue.clone(),
                    Term::app(inner, (**arg).clone()),
                ))
            }
            _ => None,
        },
        (
            RuleName::LLConv,
            Term::Let {
                x: v,
                x_ty: v_ty,
                y: w,
                y_ty: w_ty,
                scrutinee,
                body: s,
            },
        ) => match scrutinee.as_ref() {
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee: t0,
                body: u,
            } => Some(Term::let_pair(
                x.clone(),
                x_ty.clone(),
                y.clone(),
                y_ty.clone(),
                (**t0).clone(),
                Term::let_pair(
                    v.clone(),
                    v_ty.clone(),
                    w.clone(),
                    w_ty.clone(),
                    (**u).clone(),
                    (**s).clone(),
                ),
            )),
            _ => None,
        },
        (
            RuleName::LBConv,
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body: s,
            },
        ) => match scrutinee.as_ref() {
            Term::Break {
                scrutinee: t0,
                phi,
                f,
                residue,
                body: u,
            } => Some(Term::brk(
                (**t0).clone(),
                phi.clone(),
                f.clone(),
                residue.clone(),
                Term::let_pair(
                    x.clone(),
                    x_ty.clone(),
                    y.clone(),
                    y_ty.clone(),
                    (**u).clone(),
                    (**s).clone(),
                ),
            )),
            _ => None,
        },
        (
            RuleName::BLConv,
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body: s,
            },
        ) => match scrutinee.as_ref() {
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee: t0,
                body: u,
            } => {
                let moved = Term::brk(
                    (**u).clone(),
                    phi.clone(),
                    f.clone(),
                    residue.clone(),
                    (**s).clone(),
                );
                let (n, u) = rename_apart(&[x, y], s, u);
                let moved = match moved {
                    Term::Break {
                        phi,
                        f,
                        residue,
                        body,
                        ..
                    } => Term::brk(u, phi, f, residue, *body),
                    other => other,
                };
                Some(Term::let_pair(
                    n[0].clone(),
                    x_ty.clone(),
                    n[1].clone(),
                    y_ty.clone(),
                    (**t0).clone(),
                    moved,
                ))
            }
            _ => None,
        },
        _ => None,
    })
}

/// True iff a standard `l-conv` or `b-conv` redex discards all of its bound
/// variables.
pub fn is_silent(t: &Term, r: &Redex) -> Result<bool, ReductionError> {
    let invalid = || ReductionError::InvalidRedex {
        path: r.path.clone(),
        rule: r.rule,
    };
    let sub = t.subterm(&r.path.0).ok_or_else(invalid)?;
    match (r.rule, sub) {
        (RuleName::LConv, Term::Let { x, y, body, .. })
        | (
            RuleName::BConv,
            Term::Break {
                phi: x, f: y, body, ..
            },
        ) => Ok(!is_free_in(x, body) && !is_free_in(y, body)),
        (RuleName::LConv | RuleName::BConv, _) => Err(invalid()),
        (rule, _) => Err(ReductionError::NotClassifiable(rule)),
    }
}

pub fn find_redexes(t: &Term) -> Vec<Redex> {
    Reducer::default().find_redexes(t)
}

pub fn apply_step(t: &Term, r: &Redex) -> Result<Term, ReductionError> {
    Reducer::default().apply_step(t, r)
}

pub fn reducts_one_step(t: &Term) -> Result<Vec<Term>, ReductionError> {
    Reducer::default().reducts_one_step(t)
}

pub fn normalize(t: &Term, max_steps: usize) -> Result<(Term, Trace), ReductionError> {
    Reducer::default().normalize(t, max_steps)
}

pub fn is_normal(t: &Term) -> bool {
    find_redexes(t).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::print::print_term_bare;
    use crate::syntax::alpha_eq;
    use crate::typing::check;

    fn tm(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn redex(path: &[usize], rule: RuleName) -> Redex {
        Redex {
            path: Path(path.to_vec()),
            rule,
        }
    }

    #[test]
    fn beta_at_root() {
        let t = tm("(\\x:A. x) (y : A)");
        assert_eq!(find_redexes(&t), vec![redex(&[], RuleName::Beta)]);
        let u = apply_step(&t, &redex(&[], RuleName::Beta)).unwrap();
        assert_eq!(print_term_bare(&u), "y");
    }

    #[test]
    fn overlapping_let_redexes() {
        let t = tm("(let <x:A, y:B> = <(a : A), (b : B)> in (s : C -> D)) (r : C)");
        assert_eq!(
            find_redexes(&t),
            vec![redex(&[], RuleName::ApLConv), redex(&[0], RuleName::LConv)]
        );
        let reducts = reducts_one_step(&t).unwrap();
        assert_eq!(reducts.len(), 2);
        let printed: Vec<String> = reducts.iter().map(print_term_bare).collect();
        assert!(printed.contains(&"s r".to_string()));
        assert!(printed.contains(&"let <x:A, y:B> = <a, b> in s r".to_string()));
    }

    #[test]
    fn b_conv_identity_chain() {
        let t = tm("break (s : A) as <phi, f> @ A in phi f");
        // open scrutinee, both variables used: blocked
        assert!(find_redexes(&t).is_empty());

        let closed = tm("break (\\z:C. z) as <phi, f> @ C -> C in phi f");
        let r = redex(&[], RuleName::BConv);
        assert_eq!(find_redexes(&closed), vec![r.clone()]);
        let u = apply_step(&closed, &r).unwrap();
        assert_eq!(
            print_term_bare(&u),
            "(\\p:(C -> C) -> C -> C. p (\\z:C. z)) (\\_:C -> C. \\z':C. z')"
        );
        assert_eq!(check(&u).unwrap(), check(&closed).unwrap());
        assert!(!is_silent(&closed, &r).unwrap());
    }

    #[test]
    fn identity_break_behaves_as_identity() {
        let s = "\\z:C. z";
        let t = tm(&format!(
            "(\\x:C -> C. break x as <phi, f> @ C -> C in phi f) ({s})"
        ));
        let (nf, trace) = normalize(&t, 100).unwrap();
        assert!(alpha_eq(&nf, &tm(s)));
        assert_eq!(
            trace.rules(),
            vec![
                RuleName::Beta,
                RuleName::BConv,
                RuleName::Beta,
                RuleName::Beta
            ]
        );
    }

    #[test]
    fn ap_b_conv() {
        let t = tm("(break (t : A) as <phi, f> @ B in (u : C -> D)) (s : C)");
        let r = redex(&[], RuleName::ApBConv);
        assert!(find_redexes(&t).contains(&r));
        let u = apply_step(&t, &r).unwrap();
        assert_eq!(print_term_bare(&u), "break t as <phi, f> @ B in u s");
    }

    #[test]
    fn permutation_renames_apart_from_argument() {
        // the argument mentions a free x that the let binder must not capture
        let inner = Term::let_pair(
            "x",
            TypeExpr::atom("A"),
            "y",
            TypeExpr::atom("B"),
            Term::var(
                "v",
                TypeExpr::tensor(TypeExpr::atom("A"), TypeExpr::atom("B")),
            ),
            Term::var(
                "g",
                TypeExpr::arrow(TypeExpr::atom("A"), TypeExpr::atom("C")),
            ),
        );
        let t = Term::app(inner, Term::var("x", TypeExpr::atom("A")));
        let u = apply_step(&t, &redex(&[], RuleName::ApLConv)).unwrap();
        assert_eq!(print_term_bare(&u), "let <x':A, y:B> = v in g x");
    }

    #[test]
    fn silence() {
        let t = tm("let <x:A, y:B> = <(a : A), (b : B)> in (z : C)");
        assert!(is_silent(&t, &redex(&[], RuleName::LConv)).unwrap());
        let t = tm("break (x : A) as <phi, f> @ B in phi (g : A -> B)");
        assert!(!is_silent(&t, &redex(&[], RuleName::BConv)).unwrap());
        assert_eq!(
            is_silent(&t, &redex(&[], RuleName::ApBConv)),
            Err(ReductionError::NotClassifiable(RuleName::ApBConv))
        );
    }

    #[test]
    fn measures() {
        let x = tm("(x : A)");
        assert_eq!(
            measure(&x).unwrap(),
            Measure {
                size: 1,
                first_arg_load: 0,
                second_arg_type_load: 0
            }
        );
        let t = tm("(let <x:A, y:B> = (v : A * B) in (s : C -> C)) (r : C)");
        let before = measure(&t).unwrap();
        let after = measure(&apply_step(&t, &redex(&[], RuleName::ApLConv)).unwrap()).unwrap();
        assert_eq!(
            (before.size, before.first_arg_load),
            (after.size, after.first_arg_load)
        );
        assert_eq!(before.second_arg_type_load, 3);
        assert_eq!(after.second_arg_type_load, 1);
    }

    #[test]
    fn invalid_redex() {
        let t = tm("(x : A)");
        assert!(matches!(
            apply_step(&t, &redex(&[], RuleName::Beta)),
            Err(ReductionError::InvalidRedex { .. })
        ));
        let t = tm("break (let <x:A, y:B> = (v : A * B) in x) as <phi, f> @ C in phi (g : A -> C)");
        assert!(matches!(
            apply_step(&t, &redex(&[], RuleName::BLConv)),
            Err(ReductionError::InvalidRedex { .. })
        ));
        assert!(Reducer::experimental()
            .apply_step(&t, &redex(&[], RuleName::BLConv))
            .is_ok());
    }

    #[test]
    fn normal_form_has_empty_trace() {
        let (nf, trace) = normalize(&tm("(x : A)"), 10).unwrap();
        assert!(trace.is_empty());
        assert_eq!(print_term_bare(&nf), "x");
    }

    #[test]
    fn rule_names_round_trip() {
        for r in RuleName::ALL {
            assert_eq!(r.as_str().parse::<RuleName>().unwrap(), r);
        }
    }
}
