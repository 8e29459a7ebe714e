//! Church-style type checking, erasure, and Curry-style principal type
//! inference by first-order unification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::syntax::{free_vars, ks_types, FormError, Path, Term, TypeExpr, WILDCARD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("type mismatch at {path}: expected {expected}, found {found}")]
    TypeMismatch {
        expected: TypeExpr,
        found: TypeExpr,
        path: Path,
    },
    #[error("at {path}: expected a function, found {found}")]
    NotAFunction { found: TypeExpr, path: Path },
    #[error("at {path}: expected a pair type, found {found}")]
    NotATensor { found: TypeExpr, path: Path },
    #[error("variable `{0}` is used more than once")]
    AffinityViolation(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error(transparent)]
    IllFormed(#[from] FormError),
}

/// Structural type of a Church term, read off its annotations. Does not
/// enforce affinity or that bound occurrences match their binders.
pub fn synth_type(t: &Term) -> Result<TypeExpr, TypeError> {
    fn go(t: &Term, path: &mut Vec<usize>) -> Result<TypeExpr, TypeError> {
        let sub = |i: usize, c: &Term, path: &mut Vec<usize>| {
            path.push(i);
            let r = go(c, path);
            path.pop();
            r
        };
        match t {
            Term::Var { ty, .. } => Ok(ty.clone()),
            Term::Lam {
                binder_ty, body, ..
            } => Ok(TypeExpr::arrow(binder_ty.clone(), sub(0, body, path)?)),
            Term::App { fun, .. } => {
                let ft = sub(0, fun, path)?;
                match ft {
                    TypeExpr::Arrow(_, cod) => Ok(*cod),
                    found => Err(TypeError::NotAFunction {
                        found,
                        path: Path(path.clone()).child(0),
                    }),
                }
            }
            Term::Pair { first, second } => Ok(TypeExpr::tensor(
                sub(0, first, path)?,
                sub(1, second, path)?,
            )),
            Term::Let { body, .. } | Term::Break { body, .. } => sub(1, body, path),
        }
    }
    go(t, &mut Vec::new())
}

struct Checker {
    env: Vec<(String, TypeExpr)>,
    free: BTreeMap<String, TypeExpr>,
}

type Used = BTreeSet<String>;

fn disjoint_union(mut a: Used, b: Used) -> Result<Used, TypeError> {
    for n in b {
        if !a.insert(n.clone()) {
            let name = n.split('#').next().unwrap_or(&n).to_string();
            return Err(TypeError::AffinityViolation(name));
        }
    }
    Ok(a)
}

impl Checker {
    fn lookup(&self, name: &str) -> Option<(&TypeExpr, bool)> {
        if let Some((_, t)) = self.env.iter().rev().find(|(n, _)| n == name) {
            return Some((t, true));
        }
        self.free.get(name).map(|t| (t, false))
    }

    /// Returns the type and the set of variables used, with bound variables
    /// tagged by their binder depth so that shadowed names stay distinct.
    fn go(&mut self, t: &Term, path: &mut Vec<usize>) -> Result<(TypeExpr, Used), TypeError> {
        match t {
            Term::Var { name, ty } => {
                let (expected, bound) = self
                    .lookup(name)
                    .ok_or_else(|| TypeError::UnboundVariable(name.clone()))?;
                if expected != ty {
                    return Err(TypeError::TypeMismatch {
                        expected: expected.clone(),
                        found: ty.clone(),
                        path: Path(path.clone()),
                    });
                }
                let key = if bound {
                    let depth = self.env.iter().rposition(|(n, _)| n == name).unwrap_or(0);
                    format!("{name}#{depth}")
                } else {
                    name.clone()
                };
                Ok((ty.clone(), Used::from([key])))
            }
            Term::Lam {
                binder,
                binder_ty,
                body,
            } => {
                let (bt, used) = self.scoped(&[(binder, binder_ty.clone())], body, 0, path)?;
                Ok((TypeExpr::arrow(binder_ty.clone(), bt), used))
            }
            Term::App { fun, arg } => {
                let (ft, u1) = self.child(fun, 0, path)?;
                let (at, u2) = self.child(arg, 1, path)?;
                let used = disjoint_union(u1, u2)?;
                match ft {
                    TypeExpr::Arrow(dom, cod) => {
                        if *dom != at {
                            return Err(TypeError::TypeMismatch {
                                expected: *dom,
                                found: at,
                                path: Path(path.clone()).child(1),
                            });
                        }
                        Ok((*cod, used))
                    }
                    found => Err(TypeError::NotAFunction {
                        found,
                        path: Path(path.clone()).child(0),
                    }),
                }
            }
            Term::Pair { first, second } => {
                let (a, u1) = self.child(first, 0, path)?;
                let (b, u2) = self.child(second, 1, path)?;
                Ok((TypeExpr::tensor(a, b), disjoint_union(u1, u2)?))
            }
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
            } => {
                if x == y && x != WILDCARD {
                    return Err(FormError::DuplicateBinder(x.clone()).into());
                }
                let (st, u1) = self.child(scrutinee, 0, path)?;
                let expected = TypeExpr::tensor(x_ty.clone(), y_ty.clone());
                if st != expected {
                    return Err(match st {
                        TypeExpr::Tensor(..) => TypeError::TypeMismatch {
                            expected,
                            found: st,
                            path: Path(path.clone()).child(0),
                        },
                        found => TypeError::NotATensor {
                            found,
                            path: Path(path.clone()).child(0),
                        },
                    });
                }
                let (bt, u2) =
                    self.scoped(&[(x, x_ty.clone()), (y, y_ty.clone())], body, 1, path)?;
                Ok((bt, disjoint_union(u1, u2)?))
            }
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
            } => {
                if phi == f && phi != WILDCARD {
                    return Err(FormError::DuplicateBinder(phi.clone()).into());
                }
                let (st, u1) = self.child(scrutinee, 0, path)?;
                let (k, s) = ks_types(&st, residue);
                let (bt, u2) = self.scoped(&[(phi, k), (f, s)], body, 1, path)?;
                Ok((bt, disjoint_union(u1, u2)?))
            }
        }
    }

    fn child(
        &mut self,
        t: &Term,
        i: usize,
        path: &mut Vec<usize>,
    ) -> Result<(TypeExpr, Used), TypeError> {
        path.push(i);
        let r = self.go(t, path);
        path.pop();
        r
    }

    fn scoped(
        &mut self,
        binders: &[(&String, TypeExpr)],
        body: &Term,
        i: usize,
        path: &mut Vec<usize>,
    ) -> Result<(TypeExpr, Used), TypeError> {
        let base = self.env.len();
        for (n, t) in binders {
            self.env.push(((*n).clone(), t.clone()));
        }
        let r = self.child(body, i, path);
        self.env.truncate(base);
        let (t, mut used) = r?;
        for depth in base..base + binders.len() {
            let (n, _) = &binders[depth - base];
            used.remove(&format!("{n}#{depth}"));
        }
        Ok((t, used))
    }
}

/// Type of `t` in the context of its own free variables. Two-premise rules
/// require the variables used by the premises to be disjoint.
pub fn check(t: &Term) -> Result<TypeExpr, TypeError> {
    let free = free_vars(t)?;
    let mut c = Checker {
        env: Vec::new(),
        free,
    };
    c.go(t, &mut Vec::new()).map(|(ty, _)| ty)
}

/// A term with all type annotations removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UntypedTerm {
    Var(String),
    Lam(String, Box<UntypedTerm>),
    App(Box<UntypedTerm>, Box<UntypedTerm>),
    Pair(Box<UntypedTerm>, Box<UntypedTerm>),
    Let(String, String, Box<UntypedTerm>, Box<UntypedTerm>),
    Break(Box<UntypedTerm>, String, String, Box<UntypedTerm>),
}

pub fn erase(t: &Term) -> UntypedTerm {
    match t {
        Term::Var { name, .. } => UntypedTerm::Var(name.clone()),
        Term::Lam { binder, body, .. } => UntypedTerm::Lam(binder.clone(), Box::new(erase(body))),
        Term::App { fun, arg } => UntypedTerm::App(Box::new(erase(fun)), Box::new(erase(arg))),
        Term::Pair { first, second } => {
            UntypedTerm::Pair(Box::new(erase(first)), Box::new(erase(second)))
        }
        Term::Let {
            x,
            y,
            scrutinee,
            body,
            ..
        } => UntypedTerm::Let(
            x.clone(),
            y.clone(),
            Box::new(erase(scrutinee)),
            Box::new(erase(body)),
        ),
        Term::Break {
            scrutinee,
            phi,
            f,
            body,
            ..
        } => UntypedTerm::Break(
            Box::new(erase(scrutinee)),
            phi.clone(),
            f.clone(),
            Box::new(erase(body)),
        ),
    }
}

impl UntypedTerm {
    fn write(&self, out: &mut String, arg_pos: bool, fun_pos: bool) {
        let binding = matches!(
            self,
            UntypedTerm::Lam(..) | UntypedTerm::Let(..) | UntypedTerm::Break(..)
        );
        let paren =
            (binding && (arg_pos || fun_pos)) || (matches!(self, UntypedTerm::App(..)) && arg_pos);
        if paren {
            out.push('(');
        }
        match self {
            UntypedTerm::Var(n) => out.push_str(n),
            UntypedTerm::Lam(x, b) => {
                out.push_str(&format!("\\{x}. "));
                b.write(out, false, false);
            }
            UntypedTerm::App(f, a) => {
                f.write(out, false, true);
                out.push(' ');
                a.write(out, true, false);
            }
            UntypedTerm::Pair(a, b) => {
                out.push('<');
                a.write(out, false, false);
                out.push_str(", ");
                b.write(out, false, false);
                out.push('>');
            }
            UntypedTerm::Let(x, y, s, b) => {
                out.push_str(&format!("let <{x}, {y}> = "));
                s.write(out, false, false);
                out.push_str(" in ");
                b.write(out, false, false);
            }
            UntypedTerm::Break(s, p, f, b) => {
                out.push_str("break ");
                s.write(out, false, false);
                out.push_str(&format!(" as <{p}, {f}> in "));
                b.write(out, false, false);
            }
        }
        if paren {
            out.push(')');
        }
    }

    /// True iff every variable has at most one free occurrence in every subterm.
    pub fn is_affine(&self) -> bool {
        self.affinity_violation().is_none()
    }

    fn affinity_violation(&self) -> Option<String> {
        fn go(t: &UntypedTerm) -> Result<HashMap<String, usize>, String> {
            let merge = |mut a: HashMap<String, usize>, b: HashMap<String, usize>| {
                for (k, v) in b {
                    let e = a.entry(k.clone()).or_insert(0);
                    *e += v;
                    if *e > 1 {
                        return Err(k);
                    }
                }
                Ok(a)
            };
            match t {
                UntypedTerm::Var(n) => Ok(HashMap::from([(n.clone(), 1)])),
                UntypedTerm::Lam(x, b) => {
                    let mut m = go(b)?;
                    m.remove(x);
                    Ok(m)
                }
                UntypedTerm::App(a, b) | UntypedTerm::Pair(a, b) => merge(go(a)?, go(b)?),
                UntypedTerm::Let(x, y, s, b) | UntypedTerm::Break(s, x, y, b) => {
                    let mut inner = go(b)?;
                    inner.remove(x);
                    inner.remove(y);
                    merge(go(s)?, inner)
                }
            }
        }
        go(self).err()
    }
}

impl fmt::Display for UntypedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, false, false);
        f.write_str(&s)
    }
}

/// Most general typing of an untyped term. All atoms of `body` and of the
/// context are unification variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeScheme {
    pub variables: Vec<String>,
    pub body: TypeExpr,
    /// Types assigned to free variables of the term, if any.
    pub context: BTreeMap<String, TypeExpr>,
}

impl TypeScheme {
    /// True iff `(context, ty)` is a substitution instance of this scheme.
    pub fn has_instance(&self, context: &BTreeMap<String, TypeExpr>, ty: &TypeExpr) -> bool {
        let mut sigma = HashMap::new();
        if !match_type(&self.body, ty, &mut sigma) {
            return false;
        }
        self.context
            .iter()
            .all(|(name, pat)| match context.get(name) {
                Some(t) => match_type(pat, t, &mut sigma),
                None => false,
            })
    }
}

/// One-way matching: extends `sigma` so that `pattern[sigma] == target`.
fn match_type(
    pattern: &TypeExpr,
    target: &TypeExpr,
    sigma: &mut HashMap<String, TypeExpr>,
) -> bool {
    match (pattern, target) {
        (TypeExpr::Atom(v), t) => match sigma.get(v) {
            Some(bound) => bound == t,
            None => {
                sigma.insert(v.clone(), t.clone());
                true
            }
        },
        (TypeExpr::Arrow(a, b), TypeExpr::Arrow(c, d))
        | (TypeExpr::Tensor(a, b), TypeExpr::Tensor(c, d)) => {
            match_type(a, c, sigma) && match_type(b, d, sigma)
        }
        _ => false,
    }
}

impl fmt::Display for TypeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.context.is_empty() {
            let parts: Vec<String> = self
                .context
                .iter()
                .map(|(n, t)| format!("{n} : {t}"))
                .collect();
            write!(f, "{} |- ", parts.join(", "))?;
        }
        write!(f, "{}", self.body)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferError {
    #[error("cannot unify {left} with {right} at {path}")]
    UnificationFailure {
        left: TypeExpr,
        right: TypeExpr,
        path: Path,
    },
    #[error("occurs check: {var} occurs in {ty} at {path}")]
    OccursCheck {
        var: String,
        ty: TypeExpr,
        path: Path,
    },
    #[error("variable `{0}` is used more than once")]
    AffinityViolation(String),
}

struct Inference {
    next: usize,
    subst: HashMap<String, TypeExpr>,
    env: Vec<(String, TypeExpr)>,
    free: BTreeMap<String, TypeExpr>,
}

impl Inference {
    fn fresh(&mut self) -> TypeExpr {
        let v = TypeExpr::Atom(format!("?{}", self.next));
        self.next += 1;
        v
    }

    fn resolve(&self, t: &TypeExpr) -> TypeExpr {
        match t {
            TypeExpr::Atom(v) => match self.subst.get(v) {
                Some(t) => self.resolve(t),
                None => t.clone(),
            },
            TypeExpr::Arrow(a, b) => TypeExpr::arrow(self.resolve(a), self.resolve(b)),
            TypeExpr::Tensor(a, b) => TypeExpr::tensor(self.resolve(a), self.resolve(b)),
        }
    }

    fn occurs(&self, v: &str, t: &TypeExpr) -> bool {
        match t {
            TypeExpr::Atom(w) => w == v || self.subst.get(w).is_some_and(|t| self.occurs(v, t)),
            TypeExpr::Arrow(a, b) | TypeExpr::Tensor(a, b) => {
                self.occurs(v, a) || self.occurs(v, b)
            }
        }
    }

    fn unify(&mut self, a: &TypeExpr, b: &TypeExpr, path: &[usize]) -> Result<(), InferError> {
        let a = self.shallow(a);
        let b = self.shallow(b);
        match (&a, &b) {
            (TypeExpr::Atom(x), TypeExpr::Atom(y)) if x == y => Ok(()),
            (TypeExpr::Atom(x), t) | (t, TypeExpr::Atom(x)) => {
                if self.occurs(x, t) {
                    return Err(InferError::OccursCheck {
                        var: x.clone(),
                        ty: self.resolve(t),
                        path: Path(path.to_vec()),
                    });
                }
                self.subst.insert(x.clone(), t.clone());
                Ok(())
            }
            (TypeExpr::Arrow(a1, b1), TypeExpr::Arrow(a2, b2))
            | (TypeExpr::Tensor(a1, b1), TypeExpr::Tensor(a2, b2)) => {
                self.unify(a1, a2, path)?;
                self.unify(b1, b2, path)
            }
            _ => Err(InferError::UnificationFailure {
                left: self.resolve(&a),
                right: self.resolve(&b),
                path: Path(path.to_vec()),
            }),
        }
    }

    fn shallow(&self, t: &TypeExpr) -> TypeExpr {
        let mut cur = t.clone();
        while let TypeExpr::Atom(v) = &cur {
            match self.subst.get(v) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn with_binders(
        &mut self,
        binders: Vec<(String, TypeExpr)>,
        body: &UntypedTerm,
        path: &mut Vec<usize>,
        i: usize,
    ) -> Result<TypeExpr, InferError> {
        let base = self.env.len();
        self.env.extend(binders);
        path.push(i);
        let r = self.infer(body, path);
        path.pop();
        self.env.truncate(base);
        r
    }

    fn child(
        &mut self,
        t: &UntypedTerm,
        path: &mut Vec<usize>,
        i: usize,
    ) -> Result<TypeExpr, InferError> {
        path.push(i);
        let r = self.infer(t, path);
        path.pop();
        r
    }

    fn infer(&mut self, t: &UntypedTerm, path: &mut Vec<usize>) -> Result<TypeExpr, InferError> {
        match t {
            UntypedTerm::Var(x) => {
                if let Some((_, ty)) = self.env.iter().rev().find(|(n, _)| n == x) {
                    return Ok(ty.clone());
                }
                if let Some(ty) = self.free.get(x) {
                    return Ok(ty.clone());
                }
                let v = self.fresh();
                self.free.insert(x.clone(), v.clone());
                Ok(v)
            }
            UntypedTerm::Lam(x, body) => {
                let a = self.fresh();
                let b = self.with_binders(vec![(x.clone(), a.clone())], body, path, 0)?;
                Ok(TypeExpr::arrow(a, b))
            }
            UntypedTerm::App(f, a) => {
                let ft = self.child(f, path, 0)?;
                let at = self.child(a, path, 1)?;
                let r = self.fresh();
                self.unify(&ft, &TypeExpr::arrow(at, r.clone()), path)?;
                Ok(r)
            }
            UntypedTerm::Pair(a, b) => {
                let at = self.child(a, path, 0)?;
                let bt = self.child(b, path, 1)?;
                Ok(TypeExpr::tensor(at, bt))
            }
            UntypedTerm::Let(x, y, s, body) => {
                let st = self.child(s, path, 0)?;
                let (a, b) = (self.fresh(), self.fresh());
                self.unify(&st, &TypeExpr::tensor(a.clone(), b.clone()), path)?;
                self.with_binders(vec![(x.clone(), a), (y.clone(), b)], body, path, 1)
            }
            UntypedTerm::Break(s, phi, f, body) => {
                let scrutinee_ty = self.child(s, path, 0)?;
                let residue = self.fresh();
                let (k, st) = ks_types(&scrutinee_ty, &residue);
                self.with_binders(vec![(phi.clone(), k), (f.clone(), st)], body, path, 1)
            }
        }
    }
}

fn var_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

/// Principal type of an affine untyped term; free variables receive types
/// in the scheme's context.
pub fn infer_principal(u: &UntypedTerm) -> Result<TypeScheme, InferError> {
    if let Some(name) = u.affinity_violation() {
        return Err(InferError::AffinityViolation(name));
    }
    let mut inf = Inference {
        next: 0,
        subst: HashMap::new(),
        env: Vec::new(),
        free: BTreeMap::new(),
    };
    let ty = inf.infer(u, &mut Vec::new())?;
    let body = inf.resolve(&ty);
    let context: BTreeMap<String, TypeExpr> = inf
        .free
        .iter()
        .map(|(n, t)| (n.clone(), inf.resolve(t)))
        .collect();

    // rename variables to a, b, c, ... in order of first appearance
    let mut order = body.atoms();
    for t in context.values() {
        for a in t.atoms() {
            if !order.contains(&a) {
                order.push(a);
            }
        }
    }
    let renaming: HashMap<String, TypeExpr> = order
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), TypeExpr::Atom(var_name(i))))
        .collect();
    Ok(TypeScheme {
        variables: (0..order.len()).map(var_name).collect(),
        body: body.substitute_atoms(&renaming),
        context: context
            .into_iter()
            .map(|(n, t)| (n, t.substitute_atoms(&renaming)))
            .collect(),
    })
}
