//! Pretty-printer producing the concrete syntax accepted by [`crate::parse`].

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Term, TypeExpr};

#[derive(Clone, Copy, PartialEq, Eq)]
enum TyCtx {
    Top,
    ArrowLeft,
    TensorLeft,
    TensorRight,
}

fn write_type(t: &TypeExpr, ctx: TyCtx, out: &mut String) {
    match t {
        TypeExpr::Atom(n) => out.push_str(n),
        TypeExpr::Arrow(a, b) => {
            let paren = ctx != TyCtx::Top;
            if paren {
                out.push('(');
            }
            write_type(a, TyCtx::ArrowLeft, out);
            out.push_str(" -> ");
            write_type(b, TyCtx::Top, out);
            if paren {
                out.push(')');
            }
        }
        TypeExpr::Tensor(a, b) => {
            let paren = ctx == TyCtx::TensorRight;
            if paren {
                out.push('(');
            }
            write_type(a, TyCtx::TensorLeft, out);
            out.push_str(" * ");
            write_type(b, TyCtx::TensorRight, out);
            if paren {
                out.push(')');
            }
        }
    }
}

pub fn print_type(t: &TypeExpr) -> String {
    let mut out = String::new();
    write_type(t, TyCtx::Top, &mut out);
    out
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_type(self))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TmCtx {
    Top,
    Fun,
    Arg,
}

struct TermPrinter {
    ascribe_free: bool,
    bound: Vec<String>,
    seen_free: BTreeSet<String>,
    out: String,
}

impl TermPrinter {
    fn binding_form(&mut self, ctx: TmCtx, body: impl FnOnce(&mut Self)) {
        let paren = ctx != TmCtx::Top;
        if paren {
            self.out.push('(');
        }
        body(self);
        if paren {
            self.out.push(')');
        }
    }

    fn term(&mut self, t: &Term, ctx: TmCtx) {
        match t {
            Term::Var { name, ty } => {
                let is_bound = self.bound.iter().any(|b| b == name);
                if !is_bound && self.ascribe_free && self.seen_free.insert(name.clone()) {
                    self.out.push('(');
                    self.out.push_str(name);
                    self.out.push_str(" : ");
                    self.out.push_str(&print_type(ty));
                    self.out.push(')');
                } else {
                    self.out.push_str(name);
                }
            }
            Term::Lam {
                binder,
                binder_ty,
                body,
            } => self.binding_form(ctx, |p| {
                p.out.push('\\');
                p.out.push_str(binder);
                p.out.push(':');
                p.out.push_str(&print_type(binder_ty));
                p.out.push_str(". ");
                p.bound.push(binder.clone());
                p.term(body, TmCtx::Top);
                p.bound.pop();
            }),
            Term::App { fun, arg } => {
                let paren = ctx == TmCtx::Arg;
                if paren {
                    self.out.push('(');
                }
                self.term(fun, TmCtx::Fun);
                self.out.push(' ');
                self.term(arg, TmCtx::Arg);
                if paren {
                    self.out.push(')');
                }
            }
            Term::Pair { first, second } => {
                self.out.push('<');
                self.term(first, TmCtx::Top);
                self.out.push_str(", ");
                self.term(second, TmCtx::Top);
                self.out.push('>');
            }
            Term::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
            } => self.binding_form(ctx, |p| {
                p.out.push_str(&format!(
                    "let <{x}:{}, {y}:{}> = ",
                    print_type(x_ty),
                    print_type(y_ty)
                ));
                p.term(scrutinee, TmCtx::Top);
                p.out.push_str(" in ");
                p.bound.push(x.clone());
                p.bound.push(y.clone());
                p.term(body, TmCtx::Top);
                p.bound.truncate(p.bound.len() - 2);
            }),
            Term::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
            } => self.binding_form(ctx, |p| {
                p.out.push_str("break ");
                p.term(scrutinee, TmCtx::Top);
                p.out
                    .push_str(&format!(" as <{phi}, {f}> @ {} in ", print_type(residue)));
                p.bound.push(phi.clone());
                p.bound.push(f.clone());
                p.term(body, TmCtx::Top);
                p.bound.truncate(p.bound.len() - 2);
            }),
        }
    }
}

fn render(t: &Term, ascribe_free: bool) -> String {
    let mut p = TermPrinter {
        ascribe_free,
        bound: Vec::new(),
        seen_free: BTreeSet::new(),
        out: String::new(),
    };
    p.term(t, TmCtx::Top);
    p.out
}

/// Prints a term so that it re-parses on its own: each free variable is
/// ascribed `(x : T)` at its first occurrence.
pub fn print_term(t: &Term) -> String {
    render(t, true)
}

/// Prints a term without free-variable ascriptions; re-parse it with
/// [`crate::parse::parse_term_in`] and the free-variable context.
pub fn print_term_bare(t: &Term) -> String {
    render(t, false)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}
