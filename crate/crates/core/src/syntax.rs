//! Types, Church-style terms, and the name-level operations on them:
//! free variables, capture-avoiding substitution, alpha-equivalence,
//! sizes, affinity and canonical renaming.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Binder name that is never referenced (the ignored argument of `\_:B. t`).
pub const WILDCARD: &str = "_";

/// A type built from atoms with `->` and `*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Atom(String),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Tensor(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        TypeExpr::Atom(name.into())
    }

    pub fn arrow(dom: TypeExpr, cod: TypeExpr) -> Self {
        TypeExpr::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn tensor(left: TypeExpr, right: TypeExpr) -> Self {
        TypeExpr::Tensor(Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            TypeExpr::Atom(_) => 1,
            TypeExpr::Arrow(a, b) | TypeExpr::Tensor(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn as_arrow(&self) -> Option<(&TypeExpr, &TypeExpr)> {
        match self {
            TypeExpr::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_tensor(&self) -> Option<(&TypeExpr, &TypeExpr)> {
        match self {
            TypeExpr::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        fn go(t: &TypeExpr, out: &mut Vec<String>) {
            match t {
                TypeExpr::Atom(n) => {
                    if !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                TypeExpr::Arrow(a, b) | TypeExpr::Tensor(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Simultaneously replaces atoms by types.
    pub fn substitute_atoms(&self, map: &HashMap<String, TypeExpr>) -> TypeExpr {
        match self {
            TypeExpr::Atom(n) => map.get(n).cloned().unwrap_or_else(|| self.clone()),
            TypeExpr::Arrow(a, b) => {
                TypeExpr::arrow(a.substitute_atoms(map), b.substitute_atoms(map))
            }
            TypeExpr::Tensor(a, b) => {
                TypeExpr::tensor(a.substitute_atoms(map), b.substitute_atoms(map))
            }
        }
    }
}

/// Number of nodes in a type.
pub fn type_size(t: &TypeExpr) -> usize {
    t.size()
}

/// `(K_B A, S_B A)` = `((A -> B) -> B, B -> A)`.
pub fn ks_types(a: &TypeExpr, b: &TypeExpr) -> (TypeExpr, TypeExpr) {
    let k = TypeExpr::arrow(TypeExpr::arrow(a.clone(), b.clone()), b.clone());
    let s = TypeExpr::arrow(b.clone(), a.clone());
    (k, s)
}

/// Church-style term. Every variable occurrence carries its type.
///
/// In `Break`, the types of `phi` and `f` are not stored: they are
/// `K_B A` and `S_B A` where `A` is the scrutinee's type and `B` the residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var {
        name: String,
        ty: TypeExpr,
    },
    Lam {
        binder: String,
        binder_ty: TypeExpr,
        body: Box<Term>,
    },
    App {
        fun: Box<Term>,
        arg: Box<Term>,
    },
    Pair {
        first: Box<Term>,
        second: Box<Term>,
    },
    Let {
        x: String,
        x_ty: TypeExpr,
        y: String,
        y_ty: TypeExpr,
        scrutinee: Box<Term>,
        body: Box<Term>,
    },
    Break {
        scrutinee: Box<Term>,
        phi: String,
        f: String,
        residue: TypeExpr,
        body: Box<Term>,
    },
}

/// Finite map from variable names to types.
pub type TypedVarSet = BTreeMap<String, TypeExpr>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("variable `{name}` occurs free at two types: {first} and {second}")]
    ConflictingTypes {
        name: String,
        first: TypeExpr,
        second: TypeExpr,
    },
    #[error("the two binders of a let or break must be distinct, found `{0}` twice")]
    DuplicateBinder(String),
}

impl Term {
    pub fn var(name: impl Into<String>, ty: TypeExpr) -> Self {
        Term::Var {
            name: name.into(),
            ty,
        }
    }

    pub fn lam(binder: impl Into<String>, binder_ty: TypeExpr, body: Term) -> Self {
        Term::Lam {
            binder: binder.into(),
            binder_ty,
            body: Box::new(body),
        }
    }

    pub fn app(fun: Term, arg: Term) -> Self {
        Term::App {
            fun: Box::new(fun),
            arg: Box::new(arg),
        }
    }

    pub fn pair(first: Term, second: Term) -> Self {
        Term::Pair {
            first: Box::new(first),
            second: Box::new(second),
        }
    }

    pub fn let_pair(
        x: impl Into<String>,
        x_ty: TypeExpr,
        y: impl Into<String>,
        y_ty: TypeExpr,
        scrutinee: Term,
        body: Term,
    ) -> Self {
        Term::Let {
            x: x.into(),
            x_ty,
            y: y.into(),
            y_ty,
            scrutinee: Box::new(scrutinee),
            body: Box::new(body),
        }
    }

    pub fn brk(
        scrutinee: Term,
        phi: impl Into<String>,
        f: impl Into<String>,
        residue: TypeExpr,
        body: Term,
    ) -> Self {
        Term::Break {
            scrutinee: Box::new(scrutinee),
            phi: phi.into(),
            f: f.into(),
            residue,
            body: Box::new(body),
        }
    }

    /// Children in path order: `Lam` body is 0; `App` fun/arg are 0/1;
    /// `Pair` 0/1; `Let` and `Break` scrutinee/body are 0/1.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var { .. } => vec![],
            Term::Lam { body, .. } => vec![body],
            Term::App { fun, arg } => vec![fun, arg],
            Term::Pair { first, second } => vec![first, second],
            Term::Let {
                scrutinee, body, ..
            }
            | Term::Break {
                scrutinee, body, ..
            } => vec![scrutinee, body],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut Term> {
        match (self, i) {
            (Term::Lam { body, .. }, 0) => Some(body),
            (Term::App { fun, .. }, 0) => Some(fun),
            (Term::App { arg, .. }, 1) => Some(arg),
            (Term::Pair { first, .. }, 0) => Some(first),
            (Term::Pair { second, .. }, 1) => Some(second),
            (Term::Let { scrutinee, .. }, 0) | (Term::Break { scrutinee, .. }, 0) => {
                Some(scrutinee)
            }
            (Term::Let { body, .. }, 1) | (Term::Break { body, .. }, 1) => Some(body),
            _ => None,
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Returns a copy with the subterm at `path` replaced, or `None` if the
    /// path does not address a subterm.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Option<Term> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        *cur = new;
        Some(out)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Applies `f` to every type annotation (variable types, binder types
    /// and break residues).
    pub fn map_types(&self, f: &dyn Fn(&TypeExpr) -> TypeExpr) -> Term {
        match self {
            Term::Var { name, ty } => Term::var(name.clone(), f(ty)),
            Term::Lam {
                binder,
                binder_ty,
                body,
            } => Term::lam(binder.clone(), f(binder_ty), body.map_types(f)),
            Term::App { fun, arg } => Term::app(fun.map_types(f), arg.map_types(f)),
            Term::Pair { first, second } => Term::pair(first.map_types(f), second.map_types(f)),
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
            } => Term::let_pair(
                x.clone(),
                f(x_ty),
                y.clone(),
                f(y_ty),
                scrutinee.map_types(f),
                body.map_types(f),
            ),
            Term::Break {
                scrutinee,
                phi,
                f: g,
                residue,
                body,
            } => Term::brk(
                scrutinee.map_types(f),
                phi.clone(),
                g.clone(),
                f(residue),
                body.map_types(f),
            ),
        }
    }

    pub fn is_break_free(&self) -> bool {
        !matches!(self, Term::Break { .. }) && self.children().iter().all(|c| c.is_break_free())
    }
}

/// Number of term nodes.
pub fn term_size(t: &Term) -> usize {
    t.size()
}

/// Free variables with their types.
pub fn free_vars(t: &Term) -> Result<TypedVarSet, FormError> {
    fn go(t: &Term, bound: &mut Vec<String>, out: &mut TypedVarSet) -> Result<(), FormError> {
        match t {
            Term::Var { name, ty } => {
                if bound.iter().any(|b| b == name) {
                    return Ok(());
                }
                match out.get(name) {
                    Some(prev) if prev != ty => Err(FormError::ConflictingTypes {
                        name: name.clone(),
                        first: prev.clone(),
                        second: ty.clone(),
                    }),
                    Some(_) => Ok(()),
                    None => {
                        out.insert(name.clone(), ty.clone());
                        Ok(())
                    }
                }
            }
            Term::Lam { binder, body, .. } => {
                bound.push(binder.clone());
                let r = go(body, bound, out);
                bound.pop();
                r
            }
            Term::App { fun: a, arg: b }
            | Term::Pair {
                first: a,
                second: b,
            } => {
                go(a, bound, out)?;
                go(b, bound, out)
            }
            Term::Let {
                x,
                y,
                scrutinee,
                body,
                ..
            }
            | Term::Break {
                phi: x,
                f: y,
                scrutinee,
                body,
                ..
            } => {
                if x == y && x != WILDCARD {
                    return Err(FormError::DuplicateBinder(x.clone()));
                }
                go(scrutinee, bound, out)?;
                bound.push(x.clone());
                bound.push(y.clone());
                let r = go(body, bound, out);
                bound.truncate(bound.len() - 2);
                r
            }
        }
    }
    let mut out = TypedVarSet::new();
    go(t, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Names of free variables, ignoring types.
pub fn free_names(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(t, &mut Vec::new(), &mut out);
    out
}

fn collect_free(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var { name, .. } => {
            if !bound.iter().any(|b| b == name) {
                out.insert(name.clone());
            }
        }
        Term::Lam { binder, body, .. } => {
            bound.push(binder.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
        Term::App { fun: a, arg: b }
        | Term::Pair {
            first: a,
            second: b,
        } => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Term::Let {
            x,
            y,
            scrutinee,
            body,
            ..
        }
        | Term::Break {
            phi: x,
            f: y,
            scrutinee,
            body,
            ..
        } => {
            collect_free(scrutinee, bound, out);
            bound.push(x.clone());
            bound.push(y.clone());
            collect_free(body, bound, out);
            bound.truncate(bound.len() - 2);
        }
    }
}

pub fn is_free_in(name: &str, t: &Term) -> bool {
    free_occurrences(t, name) > 0
}

/// Number of free occurrences of `name` in `t`.
pub fn free_occurrences(t: &Term, name: &str) -> usize {
    match t {
        Term::Var { name: n, .. } => usize::from(n == name),
        Term::Lam { binder, body, .. } => {
            if binder == name {
                0
            } else {
                free_occurrences(body, name)
            }
        }
        Term::App { fun: a, arg: b }
        | Term::Pair {
            first: a,
            second: b,
        } => free_occurrences(a, name) + free_occurrences(b, name),
        Term::Let {
            x,
            y,
            scrutinee,
            body,
            ..
        }
        | Term::Break {
            phi: x,
            f: y,
            scrutinee,
            body,
            ..
        } => {
            let inner = if x == name || y == name {
                0
            } else {
                free_occurrences(body, name)
            };
            free_occurrences(scrutinee, name) + inner
        }
    }
}

/// Every name appearing in `t`, free or bound.
pub fn all_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var { name, .. } => {
            out.insert(name.clone());
        }
        Term::Lam { binder, body, .. } => {
            out.insert(binder.clone());
            all_names(body, out);
        }
        Term::Let { x, y, .. } | Term::Break { phi: x, f: y, .. } => {
            out.insert(x.clone());
            out.insert(y.clone());
            for c in t.children() {
                all_names(c, out);
            }
        }
        _ => {
            for c in t.children() {
                all_names(c, out);
            }
        }
    }
}

/// `base` with primes appended until `taken` no longer holds it.
pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let mut n = if base == WILDCARD {
        "w".to_string()
    } else {
        base.to_string()
    };
    while taken.contains(&n) {
        n.push('\'');
    }
    n
}

#[derive(Clone)]
enum Repl<'a> {
    Term(&'a Term, &'a BTreeSet<String>),
    Rename(String),
}

/// Capture-avoiding simultaneous substitution.
pub fn substitute(t: &Term, bindings: &[(String, Term)]) -> Term {
    let fvs: Vec<BTreeSet<String>> = bindings.iter().map(|(_, s)| free_names(s)).collect();
    let mut map = HashMap::new();
    for ((x, s), fv) in bindings.iter().zip(&fvs) {
        map.insert(x.clone(), Repl::Term(s, fv));
    }
    subst_rec(t, &map)
}

fn subst_rec(t: &Term, map: &HashMap<String, Repl<'_>>) -> Term {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var { name, ty } => match map.get(name) {
            Some(Repl::Term(s, _)) => (*s).clone(),
            Some(Repl::Rename(n)) => Term::var(n.clone(), ty.clone()),
            None => t.clone(),
        },
        Term::Lam {
            binder,
            binder_ty,
            body,
        } => {
            let (names, inner) = enter_scope(map, &[binder], body);
            Term::lam(names[0].clone(), binder_ty.clone(), subst_rec(body, &inner))
        }
        Term::App { fun, arg } => Term::app(subst_rec(fun, map), subst_rec(arg, map)),
        Term::Pair { first, second } => Term::pair(subst_rec(first, map), subst_rec(second, map)),
        Term::Let {
            x,
            x_ty,
            y,
            y_ty,
            scrutinee,
            body,
        } => {
            let s = subst_rec(scrutinee, map);
            let (names, inner) = enter_scope(map, &[x, y], body);
            Term::let_pair(
                names[0].clone(),
                x_ty.clone(),
                names[1].clone(),
                y_ty.clone(),
                s,
                subst_rec(body, &inner),
            )
        }
        Term::Break {
            scrutinee,
            phi,
            f,
            residue,
            body,
        } => {
            let s = subst_rec(scrutinee, map);
            let (names, inner) = enter_scope(map, &[phi, f], body);
            Term::brk(
                s,
                names[0].clone(),
                names[1].clone(),
                residue.clone(),
                subst_rec(body, &inner),
            )
        }
    }
}

/// Drops shadowed and irrelevant entries, then renames any binder that
/// would capture a free variable of a replacement.
fn enter_scope<'a>(
    map: &HashMap<String, Repl<'a>>,
    binders: &[&String],
    body: &Term,
) -> (Vec<String>, HashMap<String, Repl<'a>>) {
    let body_free = free_names(body);
    let mut inner: HashMap<String, Repl<'a>> = map
        .iter()
        .filter(|(k, _)| !binders.contains(k) && body_free.contains(*k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let mut danger = BTreeSet::new();
    for r in inner.values() {
        match r {
            Repl::Term(_, fv) => danger.extend(fv.iter().cloned()),
            Repl::Rename(n) => {
                danger.insert(n.clone());
            }
        }
    }
    let mut taken = BTreeSet::new();
    all_names(body, &mut taken);
    taken.extend(danger.iter().cloned());
    taken.extend(binders.iter().map(|b| (*b).clone()));
    let mut names = Vec::with_capacity(binders.len());
    for b in binders {
        if b.as_str() != WILDCARD && danger.contains(*b) {
            let nb = fresh_name(b, &taken);
            taken.insert(nb.clone());
            inner.insert((*b).clone(), Repl::Rename(nb.clone()));
            names.push(nb);
        } else {
            names.push((*b).clone());
        }
    }
    (names, inner)
}

/// Alpha-equivalence; binder annotations must agree.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    fn lookup(env: &[&str], name: &str) -> Option<usize> {
        env.iter().rev().position(|b| *b == name)
    }
    fn go<'a>(t: &'a Term, u: &'a Term, et: &mut Vec<&'a str>, eu: &mut Vec<&'a str>) -> bool {
        match (t, u) {
            (Term::Var { name: a, ty: ta }, Term::Var { name: b, ty: tb }) => {
                ta == tb
                    && match (lookup(et, a), lookup(eu, b)) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => a == b,
                        _ => false,
                    }
            }
            (
                Term::Lam {
                    binder: a,
                    binder_ty: ta,
                    body: ba,
                },
                Term::Lam {
                    binder: b,
                    binder_ty: tb,
                    body: bb,
                },
            ) => {
                if ta != tb {
                    return false;
                }
                et.push(a);
                eu.push(b);
                let r = go(ba, bb, et, eu);
                et.pop();
                eu.pop();
                r
            }
            (Term::App { fun: f1, arg: a1 }, Term::App { fun: f2, arg: a2 })
            | (
                Term::Pair {
                    first: f1,
                    second: a1,
                },
                Term::Pair {
                    first: f2,
                    second: a2,
                },
            ) => go(f1, f2, et, eu) && go(a1, a2, et, eu),
            (
                Term::Let {
                    x: x1,
                    x_ty: xt1,
                    y: y1,
                    y_ty: yt1,
                    scrutinee: s1,
                    body: b1,
                },
                Term::Let {
                    x: x2,
                    x_ty: xt2,
                    y: y2,
                    y_ty: yt2,
                    scrutinee: s2,
                    body: b2,
                },
            ) => {
                xt1 == xt2 && yt1 == yt2 && go(s1, s2, et, eu) && {
                    et.extend([x1.as_str(), y1.as_str()]);
                    eu.extend([x2.as_str(), y2.as_str()]);
                    let r = go(b1, b2, et, eu);
                    et.truncate(et.len() - 2);
                    eu.truncate(eu.len() - 2);
                    r
                }
            }
            (
                Term::Break {
                    scrutinee: s1,
                    phi: p1,
                    f: f1,
                    residue: r1,
                    body: b1,
                },
                Term::Break {
                    scrutinee: s2,
                    phi: p2,
                    f: f2,
                    residue: r2,
                    body: b2,
                },
            ) => {
                r1 == r2 && go(s1, s2, et, eu) && {
                    et.extend([p1.as_str(), f1.as_str()]);
                    eu.extend([p2.as_str(), f2.as_str()]);
                    let r = go(b1, b2, et, eu);
                    et.truncate(et.len() - 2);
                    eu.truncate(eu.len() - 2);
                    r
                }
            }
            _ => false,
        }
    }
    go(t, u, &mut Vec::new(), &mut Vec::new())
}

/// A string that is equal for two terms exactly when they are
/// alpha-equivalent; bound variables are replaced by binder indices.
pub fn alpha_key(t: &Term) -> String {
    fn go(t: &Term, env: &mut Vec<String>, out: &mut String) {
        match t {
            Term::Var { name, ty } => match env.iter().rev().position(|b| b == name) {
                Some(i) => out.push_str(&format!("#{i}:{ty:?}")),
                None => out.push_str(&format!("{name}:{ty:?}")),
            },
            Term::Lam {
                binder,
                binder_ty,
                body,
            } => {
                out.push_str(&format!("(L{binder_ty:?} "));
                env.push(binder.clone());
                go(body, env, out);
                env.pop();
                out.push(')');
            }
            Term::App { fun, arg } => {
                out.push_str("(A ");
                go(fun, env, out);
                out.push(' ');
                go(arg, env, out);
                out.push(')');
            }
            Term::Pair { first, second } => {
                out.push_str("(P ");
                go(first, env, out);
                out.push(' ');
                go(second, env, out);
                out.push(')');
            }
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
            } => {
                out.push_str(&format!("(T{x_ty:?},{y_ty:?} "));
                go(scrutinee, env, out);
                out.push(' ');
                env.extend([x.clone(), y.clone()]);
                go(body, env, out);
                env.truncate(env.len() - 2);
                out.push(')');
            }
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
            } => {
                out.push_str(&format!("(B{residue:?} "));
                go(scrutinee, env, out);
                out.push(' ');
                env.extend([phi.clone(), f.clone()]);
                go(body, env, out);
                env.truncate(env.len() - 2);
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// True iff in every subterm each variable has at most one free occurrence.
pub fn affine_check(t: &Term) -> bool {
    fn go(t: &Term) -> Option<HashMap<String, usize>> {
        let bump = |m: &mut HashMap<String, usize>, other: HashMap<String, usize>| -> Option<()> {
            for (k, v) in other {
                let e = m.entry(k).or_insert(0);
                *e += v;
                if *e > 1 {
                    return None;
                }
            }
            Some(())
        };
        match t {
            Term::Var { name, .. } => Some(HashMap::from([(name.clone(), 1)])),
            Term::Lam { binder, body, .. } => {
                let mut m = go(body)?;
                m.remove(binder);
                Some(m)
            }
            Term::App { fun: a, arg: b }
            | Term::Pair {
                first: a,
                second: b,
            } => {
                let mut m = go(a)?;
                bump(&mut m, go(b)?)?;
                Some(m)
            }
            Term::Let {
                x,
                y,
                scrutinee,
                body,
                ..
            }
            | Term::Break {
                phi: x,
                f: y,
                scrutinee,
                body,
                ..
            } => {
                let mut inner = go(body)?;
                inner.remove(x);
                inner.remove(y);
                let mut m = go(scrutinee)?;
                bump(&mut m, inner)?;
                Some(m)
            }
        }
    }
    go(t).is_some()
}

/// Renames binders so that all of them are pairwise distinct and distinct
/// from the free names. Names that are already unique are kept.
pub fn canonicalize(t: &Term) -> Term {
    fn bind(name: &str, taken: &mut BTreeSet<String>, env: &mut Vec<(String, String)>) -> String {
        let new = if name == WILDCARD {
            name.to_string()
        } else {
            let n = fresh_name(name, taken);
            taken.insert(n.clone());
            n
        };
        env.push((name.to_string(), new.clone()));
        new
    }
    fn go(t: &Term, taken: &mut BTreeSet<String>, env: &mut Vec<(String, String)>) -> Term {
        match t {
            Term::Var { name, ty } => {
                let n = env
                    .iter()
                    .rev()
                    .find(|(old, _)| old == name)
                    .map(|(_, new)| new.clone())
                    .unwrap_or_else(|| name.clone());
                Term::var(n, ty.clone())
            }
            Term::Lam {
                binder,
                binder_ty,
                body,
            } => {
                let b = bind(binder, taken, env);
                let body = go(body, taken, env);
                env.pop();
                Term::lam(b, binder_ty.clone(), body)
            }
            Term::App { fun, arg } => {
                let f = go(fun, taken, env);
                Term::app(f, go(arg, taken, env))
            }
            Term::Pair { first, second } => {
                let a = go(first, taken, env);
                Term::pair(a, go(second, taken, env))
            }
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
            } => {
                let s = go(scrutinee, taken, env);
                let nx = bind(x, taken, env);
                let ny = bind(y, taken, env);
                let b = go(body, taken, env);
                env.truncate(env.len() - 2);
                Term::let_pair(nx, x_ty.clone(), ny, y_ty.clone(), s, b)
            }
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
            } => {
                let s = go(scrutinee, taken, env);
                let np = bind(phi, taken, env);
                let nf = bind(f, taken, env);
                let b = go(body, taken, env);
                env.truncate(env.len() - 2);
                Term::brk(s, np, nf, residue.clone(), b)
            }
        }
    }
    let mut taken = free_names(t);
    go(t, &mut taken, &mut Vec::new())
}

/// A position in a term as a list of child indices (see [`Term::children`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl std::str::FromStr for Path {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "root" {
            return Ok(Path::root());
        }
        s.split('.')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(Path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> TypeExpr {
        TypeExpr::atom("A")
    }
    fn b() -> TypeExpr {
        TypeExpr::atom("B")
    }

    fn identity_break_body(x: &str) -> Term {
        let (k, s) = ks_types(&a(), &b());
        Term::brk(
            Term::var(x, a()),
            "phi",
            "f",
            b(),
            Term::app(Term::var("phi", k), Term::var("f", s)),
        )
    }

    #[test]
    fn free_vars_examples() {
        let fv = free_vars(&Term::var("x", a())).unwrap();
        assert_eq!(fv, TypedVarSet::from([("x".to_string(), a())]));

        let id = Term::lam("x", a(), Term::var("x", a()));
        assert!(free_vars(&id).unwrap().is_empty());

        let fv = free_vars(&identity_break_body("x")).unwrap();
        assert_eq!(fv, TypedVarSet::from([("x".to_string(), a())]));
    }

    #[test]
    fn free_vars_rejects_conflicting_types() {
        let t = Term::pair(Term::var("x", a()), Term::var("x", b()));
        assert!(matches!(
            free_vars(&t),
            Err(FormError::ConflictingTypes { .. })
        ));
    }

    #[test]
    fn substitution_examples() {
        let s = Term::lam("z", a(), Term::var("z", a()));
        assert_eq!(
            substitute(&Term::var("x", a()), &[("x".into(), s.clone())]),
            s
        );
        let y = Term::var("y", a());
        assert_eq!(substitute(&y, &[("x".into(), s)]), y);

        // \y:B. x  [y/x]  ==> \y':B. y
        let t = Term::lam("y", b(), Term::var("x", b()));
        let r = substitute(&t, &[("x".into(), Term::var("y", b()))]);
        assert_eq!(r, Term::lam("y'", b(), Term::var("y", b())));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let t = Term::pair(Term::var("x", a()), Term::var("y", a()));
        let r = substitute(
            &t,
            &[
                ("x".into(), Term::var("y", a())),
                ("y".into(), Term::var("x", a())),
            ],
        );
        assert_eq!(r, Term::pair(Term::var("y", a()), Term::var("x", a())));
    }

    #[test]
    fn alpha_eq_examples() {
        let l = Term::lam("x", a(), Term::var("x", a()));
        let r = Term::lam("y", a(), Term::var("y", a()));
        assert!(alpha_eq(&l, &r));
        let r2 = Term::lam("x", b(), Term::var("x", b()));
        assert!(!alpha_eq(&l, &r2));

        let (k, s) = ks_types(&a(), &b());
        let renamed = Term::brk(
            Term::var("x", a()),
            "g",
            "h",
            b(),
            Term::app(Term::var("g", k), Term::var("h", s)),
        );
        assert!(alpha_eq(&identity_break_body("x"), &renamed));
        assert!(!alpha_eq(
            &identity_break_body("x"),
            &identity_break_body("z")
        ));
    }

    #[test]
    fn sizes() {
        assert_eq!(term_size(&Term::var("x", a())), 1);
        assert_eq!(term_size(&Term::lam("x", a(), Term::var("x", a()))), 2);
        assert_eq!(term_size(&identity_break_body("x")), 5);
        assert_eq!(type_size(&TypeExpr::atom("P1")), 1);
        assert_eq!(type_size(&TypeExpr::arrow(a(), b())), 3);
        assert_eq!(
            type_size(&TypeExpr::arrow(TypeExpr::arrow(a(), b()), b())),
            5
        );
    }

    #[test]
    fn affinity() {
        let contraction = Term::lam(
            "x",
            a(),
            Term::pair(Term::var("x", a()), Term::var("x", a())),
        );
        assert!(!affine_check(&contraction));
        let weakening = Term::lam("x", a(), Term::lam("y", b(), Term::var("x", a())));
        assert!(affine_check(&weakening));
        // shadowing is not contraction
        let shadow = Term::lam(
            "x",
            a(),
            Term::pair(
                Term::var("x", a()),
                Term::lam("x", a(), Term::var("x", a())),
            ),
        );
        assert!(affine_check(&shadow));
    }

    #[test]
    fn ks_orientation() {
        let (k, s) = ks_types(&a(), &a());
        assert_eq!(k, TypeExpr::arrow(TypeExpr::arrow(a(), a()), a()));
        assert_eq!(s, TypeExpr::arrow(a(), a()));
        let (k, s) = ks_types(&a(), &b());
        assert_eq!(k, TypeExpr::arrow(TypeExpr::arrow(a(), b()), b()));
        assert_eq!(s, TypeExpr::arrow(b(), a()));

        let c = TypeExpr::atom("C");
        let big = TypeExpr::arrow(a(), TypeExpr::tensor(b(), c));
        let res = TypeExpr::arrow(a(), b());
        let (k, s) = ks_types(&big, &res);
        assert_eq!(
            k,
            TypeExpr::arrow(TypeExpr::arrow(big.clone(), res.clone()), res.clone())
        );
        assert_eq!(s, TypeExpr::arrow(res, big));
    }

    #[test]
    fn canonicalize_separates_binders() {
        // (\x:A. x) applied inside a scope that also binds x, with x free elsewhere
        let t = Term::pair(
            Term::var("x", a()),
            Term::pair(
                Term::lam("x", a(), Term::var("x", a())),
                Term::lam("x", a(), Term::var("x", a())),
            ),
        );
        let c = canonicalize(&t);
        assert!(alpha_eq(&t, &c));
        let mut names = BTreeSet::new();
        all_names(&c, &mut names);
        assert_eq!(names.len(), 3);
    }

    #[test]
    fn path_display_roundtrip() {
        for p in [Path::root(), Path(vec![0]), Path(vec![1, 0, 1])] {
            assert_eq!(p.to_string().parse::<Path>().unwrap(), p);
        }
    }
}
