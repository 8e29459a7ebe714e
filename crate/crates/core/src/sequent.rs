//! Affine sequent calculus with a break rule: checking, translation to and
//! from terms, cut elimination, and bounded cut-free proof search.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::parse::{ParseError, Parser, Tok};
use crate::print::print_type;
use crate::syntax::{canonicalize, is_free_in, ks_types, Path, Term, TypeExpr, TypedVarSet};
use crate::typing::{check, synth_type, TypeError};

/// `Γ ⊢ C` with `Γ` a multiset, kept sorted so that equality is multiset
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<TypeExpr>,
    pub succedent: TypeExpr,
}

impl Sequent {
    pub fn new(mut antecedent: Vec<TypeExpr>, succedent: TypeExpr) -> Self {
        antecedent.sort();
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn count(&self, t: &TypeExpr) -> usize {
        self.antecedent.iter().filter(|a| *a == t).count()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(print_type).collect();
        if ante.is_empty() {
            write!(f, "|- {}", self.succedent)
        } else {
            write!(f, "{} |- {}", ante.join(", "), self.succedent)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Asm,
    Cut { formula: TypeExpr },
    Brk { residue: TypeExpr },
    ArrR,
    ArrL { principal: TypeExpr },
    TensR,
    TensL { principal: TypeExpr },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Asm => "ASM",
            Rule::Cut { .. } => "CUT",
            Rule::Brk { .. } => "BRK",
            Rule::ArrR => "ARRR",
            Rule::ArrL { .. } => "ARRL",
            Rule::TensR => "TENSR",
            Rule::TensL { .. } => "TENSL",
        }
    }

    fn arity(&self) -> usize {
        match self {
            Rule::Asm => 0,
            Rule::ArrR | Rule::TensL { .. } => 1,
            _ => 2,
        }
    }

    fn data(&self) -> Option<&TypeExpr> {
        match self {
            Rule::Cut { formula } => Some(formula),
            Rule::Brk { residue } => Some(residue),
            Rule::ArrL { principal } | Rule::TensL { principal } => Some(principal),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SDerivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<SDerivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentError {
    #[error("invalid {rule} at {path}: {reason}")]
    InvalidRule {
        path: Path,
        rule: &'static str,
        reason: String,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("cut elimination exceeded its budget of {0} reductions")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

fn minus(v: &[TypeExpr], remove: &[&TypeExpr]) -> Option<Vec<TypeExpr>> {
    let mut out = v.to_vec();
    for r in remove {
        let i = out.iter().position(|t| t == *r)?;
        out.remove(i);
    }
    Some(out)
}

fn plus(a: &[TypeExpr], b: &[TypeExpr]) -> Vec<TypeExpr> {
    a.iter().chain(b).cloned().collect()
}

fn cut_free_err(what: &str) -> SequentError {
    SequentError::PreconditionViolation(format!("{what} must be cut-free and valid"))
}

impl SDerivation {
    pub fn asm(antecedent: Vec<TypeExpr>, succedent: TypeExpr) -> Self {
        SDerivation {
            rule: Rule::Asm,
            conclusion: Sequent::new(antecedent, succedent),
            premises: vec![],
        }
    }

    /// `Γ, A ⊢ B` to `Γ ⊢ A -> B`.
    pub fn arr_r(p: SDerivation, discharged: &TypeExpr) -> Option<Self> {
        let ante = minus(&p.conclusion.antecedent, &[discharged])?;
        let succ = TypeExpr::arrow(discharged.clone(), p.conclusion.succedent.clone());
        Some(SDerivation {
            rule: Rule::ArrR,
            conclusion: Sequent::new(ante, succ),
            premises: vec![p],
        })
    }

    /// `Γ ⊢ A` and `Δ, B ⊢ C` to `Γ, Δ, A -> B ⊢ C`.
    pub fn arr_l(p0: SDerivation, p1: SDerivation, principal: TypeExpr) -> Option<Self> {
        let (a, b) = principal.as_arrow()?;
        if p0.conclusion.succedent != *a {
            return None;
        }
        let delta = minus(&p1.conclusion.antecedent, &[b])?;
        let mut ante = plus(&p0.conclusion.antecedent, &delta);
        ante.push(principal.clone());
        let succ = p1.conclusion.succedent.clone();
        Some(SDerivation {
            rule: Rule::ArrL { principal },
            conclusion: Sequent::new(ante, succ),
            premises: vec![p0, p1],
        })
    }

    pub fn tens_r(p0: SDerivation, p1: SDerivation) -> Self {
        let ante = plus(&p0.conclusion.antecedent, &p1.conclusion.antecedent);
        let succ = TypeExpr::tensor(
            p0.conclusion.succedent.clone(),
            p1.conclusion.succedent.clone(),
        );
        SDerivation {
            rule: Rule::TensR,
            conclusion: Sequent::new(ante, succ),
            premises: vec![p0, p1],
        }
    }

    /// `Γ, A, B ⊢ C` to `Γ, A * B ⊢ C`.
    pub fn tens_l(p: SDerivation, principal: TypeExpr) -> Option<Self> {
        let (a, b) = principal.as_tensor()?;
        let mut ante = minus(&p.conclusion.antecedent, &[a, b])?;
        ante.push(principal.clone());
        let succ = p.conclusion.succedent.clone();
        Some(SDerivation {
            rule: Rule::TensL { principal },
            conclusion: Sequent::new(ante, succ),
            premises: vec![p],
        })
    }

    /// `Γ ⊢ A` and `Δ, A ⊢ C` to `Γ, Δ ⊢ C`.
    pub fn cut(p0: SDerivation, p1: SDerivation) -> Option<Self> {
        let a = p0.conclusion.succedent.clone();
        let delta = minus(&p1.conclusion.antecedent, &[&a])?;
        let ante = plus(&p0.conclusion.antecedent, &delta);
        let succ = p1.conclusion.succedent.clone();
        Some(SDerivation {
            rule: Rule::Cut { formula: a },
            conclusion: Sequent::new(ante, succ),
            premises: vec![p0, p1],
        })
    }

    /// `Γ ⊢ A` and `Δ, K_B A, S_B A ⊢ C` to `Γ, Δ ⊢ C`.
    pub fn brk(p0: SDerivation, p1: SDerivation, residue: TypeExpr) -> Option<Self> {
        let (k, s) = ks_types(&p0.conclusion.succedent, &residue);
        let delta = minus(&p1.conclusion.antecedent, &[&k, &s])?;
        let ante = plus(&p0.conclusion.antecedent, &delta);
        let succ = p1.conclusion.succedent.clone();
        Some(SDerivation {
            rule: Rule::Brk { residue },
            conclusion: Sequent::new(ante, succ),
            premises: vec![p0, p1],
        })
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(|p| p.height()).max().unwrap_or(0)
    }

    pub fn count_rule(&self, name: &str) -> usize {
        usize::from(self.rule.name() == name)
            + self
                .premises
                .iter()
                .map(|p| p.count_rule(name))
                .sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.count_rule("CUT") == 0
    }

    fn write(&self, out: &mut String, indent: usize) {
        out.push_str(&" ".repeat(indent));
        out.push('(');
        out.push_str(self.rule.name());
        if let Some(d) = self.rule.data() {
            out.push_str(&format!(" {{{d}}}"));
        }
        out.push_str(&format!(" [{}]", self.conclusion));
        for p in &self.premises {
            out.push('\n');
            p.write(out, indent + 2);
        }
        out.push(')');
    }
}

impl fmt::Display for SDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

/// Adds formulas to the antecedent by pushing them to an axiom leaf.
pub fn weaken(d: SDerivation, extra: &[TypeExpr]) -> SDerivation {
    if extra.is_empty() {
        return d;
    }
    let SDerivation {
        rule,
        conclusion,
        mut premises,
    } = d;
    if let Some(first) = premises.first_mut() {
        let p = std::mem::replace(first, SDerivation::asm(vec![], TypeExpr::atom("_")));
        *first = weaken(p, extra);
    }
    SDerivation {
        rule,
        conclusion: Sequent::new(plus(&conclusion.antecedent, extra), conclusion.succedent),
        premises,
    }
}

/// Validates every node and returns the end sequent.
pub fn check_derivation(d: &SDerivation) -> Result<Sequent, SequentError> {
    fn go(d: &SDerivation, path: &mut Vec<usize>) -> Result<(), SequentError> {
        let invalid = |path: &[usize], reason: String| SequentError::InvalidRule {
            path: Path(path.to_vec()),
            rule: d.rule.name(),
            reason,
        };
        if d.premises.len() != d.rule.arity() {
            return Err(invalid(
                path,
                format!(
                    "expected {} premises, found {}",
                    d.rule.arity(),
                    d.premises.len()
                ),
            ));
        }
        for (i, p) in d.premises.iter().enumerate() {
            path.push(i);
            go(p, path)?;
            path.pop();
        }
        let fail = |reason: String| invalid(path, reason);
        let c = &d.conclusion;
        let p = &d.premises;
        let expected = match &d.rule {
            Rule::Asm => {
                if c.count(&c.succedent) == 0 {
                    return Err(fail(format!(
                        "succedent {} does not occur in the antecedent",
                        c.succedent
                    )));
                }
                return Ok(());
            }
            Rule::Cut { formula } => {
                if p[0].conclusion.succedent != *formula {
                    return Err(fail(format!(
                        "left premise proves {}, not the cut formula {formula}",
                        p[0].conclusion.succedent
                    )));
                }
                SDerivation::cut(p[0].clone(), p[1].clone())
                    .ok_or_else(|| fail(format!("right premise lacks the cut formula {formula}")))?
            }
            Rule::Brk { residue } => SDerivation::brk(p[0].clone(), p[1].clone(), residue.clone())
                .ok_or_else(|| {
                    let (k, s) = ks_types(&p[0].conclusion.succedent, residue);
                    fail(format!("right premise lacks {k} or {s}"))
                })?,
            Rule::ArrR => {
                let Some((a, _)) = c.succedent.as_arrow() else {
                    return Err(fail(format!("{} is not an implication", c.succedent)));
                };
                SDerivation::arr_r(p[0].clone(), a)
                    .ok_or_else(|| fail(format!("premise lacks the discharged {a}")))?
            }
            Rule::ArrL { principal } => {
                SDerivation::arr_l(p[0].clone(), p[1].clone(), principal.clone())
                    .ok_or_else(|| fail(format!("premises do not match {principal}")))?
            }
            Rule::TensR => SDerivation::tens_r(p[0].clone(), p[1].clone()),
            Rule::TensL { principal } => SDerivation::tens_l(p[0].clone(), principal.clone())
                .ok_or_else(|| fail(format!("premise does not match {principal}")))?,
        };
        if expected.conclusion != *c {
            return Err(fail(format!(
                "conclusion should be {}, found {}",
                expected.conclusion, c
            )));
        }
        Ok(())
    }
    go(d, &mut Vec::new())?;
    Ok(d.conclusion.clone())
}

fn derive(t: &Term) -> Result<SDerivation, SequentError> {
    let with_unused = |d: SDerivation, binders: &[(&str, &TypeExpr)], body: &Term| {
        let extra: Vec<TypeExpr> = binders
            .iter()
            .filter(|(n, _)| !is_free_in(n, body))
            .map(|(_, t)| (*t).clone())
            .collect();
        weaken(d, &extra)
    };
    let bug = || SequentError::PreconditionViolation("term does not type-check".into());
    Ok(match t {
        Term::Var { ty, .. } => SDerivation::asm(vec![ty.clone()], ty.clone()),
        Term::Lam {
            binder,
            binder_ty,
            body,
        } => {
            let d = with_unused(derive(body)?, &[(binder, binder_ty)], body);
            SDerivation::arr_r(d, binder_ty).ok_or_else(bug)?
        }
        Term::App { fun, arg } => {
            let ft = synth_type(fun)?;
            let (_, b) = ft.as_arrow().ok_or_else(bug)?;
            let left = SDerivation::arr_l(
                derive(arg)?,
                SDerivation::asm(vec![b.clone()], b.clone()),
                ft.clone(),
            )
            .ok_or_else(bug)?;
            SDerivation::cut(derive(fun)?, left).ok_or_else(bug)?
        }
        Term::Pair { first, second } => SDerivation::tens_r(derive(first)?, derive(second)?),
        Term::Let {
            x,
            x_ty,
            y,
            y_ty,
            scrutinee,
            body,
        } => {
            let d = with_unused(derive(body)?, &[(x, x_ty), (y, y_ty)], body);
            let tensor = TypeExpr::tensor(x_ty.clone(), y_ty.clone());
            let left = SDerivation::tens_l(d, tensor).ok_or_else(bug)?;
            SDerivation::cut(derive(scrutinee)?, left).ok_or_else(bug)?
        }
        Term::Break {
            scrutinee,
            phi,
            f,
            residue,
            body,
        } => {
            let (k, s) = ks_types(&synth_type(scrutinee)?, residue);
            let d = with_unused(derive(body)?, &[(phi, &k), (f, &s)], body);
            SDerivation::brk(derive(scrutinee)?, d, residue.clone()).ok_or_else(bug)?
        }
    })
}

/// Sequent derivation of `Γ ⊢ A` for a term `t : A` with free variables
/// `Γ`. Eliminations become left rules followed by a cut.
pub fn nd_to_sequent(t: &Term) -> Result<SDerivation, SequentError> {
    check(t)?;
    derive(&canonicalize(t))
}

struct Namer {
    next: usize,
}

impl Namer {
    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }
}

type Names = Vec<(String, TypeExpr)>;

fn take(names: &mut Names, ty: &TypeExpr) -> Option<(String, TypeExpr)> {
    let i = names.iter().position(|(_, t)| t == ty)?;
    Some(names.remove(i))
}

/// Splits `names` so that the first part matches `ante`.
fn split_for(names: &Names, ante: &[TypeExpr]) -> Option<(Names, Names)> {
    let mut rest = names.clone();
    let mut first = Vec::new();
    for t in ante {
        first.push(take(&mut rest, t)?);
    }
    Some((first, rest))
}

fn to_term(d: &SDerivation, names: Names, namer: &mut Namer) -> Result<Term, SequentError> {
    let bad = || SequentError::PreconditionViolation("derivation does not check".into());
    let p = &d.premises;
    Ok(match &d.rule {
        Rule::Asm => {
            let mut names = names;
            let (n, ty) = take(&mut names, &d.conclusion.succedent).ok_or_else(bad)?;
            Term::var(n, ty)
        }
        Rule::ArrR => {
            let (a, _) = d.conclusion.succedent.as_arrow().ok_or_else(bad)?;
            let x = namer.fresh("x");
            let mut inner = names;
            inner.push((x.clone(), a.clone()));
            Term::lam(x, a.clone(), to_term(&p[0], inner, namer)?)
        }
        Rule::ArrL { principal } => {
            let mut names = names;
            let (g, gt) = take(&mut names, principal).ok_or_else(bad)?;
            let (gamma, mut delta) =
                split_for(&names, &p[0].conclusion.antecedent).ok_or_else(bad)?;
            let arg = to_term(&p[0], gamma, namer)?;
            let (_, b) = principal.as_arrow().ok_or_else(bad)?;
            let y = namer.fresh("y");
            delta.push((y.clone(), b.clone()));
            let body = to_term(&p[1], delta, namer)?;
            crate::syntax::substitute(&body, &[(y, Term::app(Term::var(g, gt), arg))])
        }
        Rule::TensR => {
            let (gamma, delta) = split_for(&names, &p[0].conclusion.antecedent).ok_or_else(bad)?;
            Term::pair(to_term(&p[0], gamma, namer)?, to_term(&p[1], delta, namer)?)
        }
        Rule::TensL { principal } => {
            let mut names = names;
            let (v, vt) = take(&mut names, principal).ok_or_else(bad)?;
            let (a, b) = principal.as_tensor().ok_or_else(bad)?;
            let (x, y) = (namer.fresh("x"), namer.fresh("y"));
            names.push((x.clone(), a.clone()));
            names.push((y.clone(), b.clone()));
            let body = to_term(&p[0], names, namer)?;
            Term::let_pair(x, a.clone(), y, b.clone(), Term::var(v, vt), body)
        }
        Rule::Cut { formula } => {
            let (gamma, mut delta) =
                split_for(&names, &p[0].conclusion.antecedent).ok_or_else(bad)?;
            let s = to_term(&p[0], gamma, namer)?;
            let z = namer.fresh("z");
            delta.push((z.clone(), formula.clone()));
            let body = to_term(&p[1], delta, namer)?;
            crate::syntax::substitute(&body, &[(z, s)])
        }
        Rule::Brk { residue } => {
            let (gamma, mut delta) =
                split_for(&names, &p[0].conclusion.antecedent).ok_or_else(bad)?;
            let s = to_term(&p[0], gamma, namer)?;
            let (k, st) = ks_types(&p[0].conclusion.succedent, residue);
            let (phi, f) = (namer.fresh("phi"), namer.fresh("f"));
            delta.push((phi.clone(), k));
            delta.push((f.clone(), st));
            let body = to_term(&p[1], delta, namer)?;
            Term::brk(s, phi, f, residue.clone(), body)
        }
    })
}

/// A term for a valid derivation. Its free variables are `h1`, `h2`, ...,
/// one per antecedent formula, returned alongside.
pub fn sequent_to_term(d: &SDerivation) -> Result<(Term, TypedVarSet), SequentError> {
    check_derivation(d)?;
    let mut namer = Namer { next: 0 };
    let names: Names = d
        .conclusion
        .antecedent
        .iter()
        .map(|t| (namer.fresh("h"), t.clone()))
        .collect();
    let ctx: TypedVarSet = names.iter().cloned().collect();
    let t = to_term(d, names, &mut namer)?;
    Ok((canonicalize(&t), ctx))
}

struct CutElim {
    budget: usize,
    used: usize,
}

impl CutElim {
    fn elim(&mut self, d: &SDerivation) -> Result<SDerivation, SequentError> {
        let premises = d
            .premises
            .iter()
            .map(|p| self.elim(p))
            .collect::<Result<Vec<_>, _>>()?;
        if let Rule::Cut { .. } = d.rule {
            let mut it = premises.into_iter();
            let (l, r) = (it.next().unwrap(), it.next().unwrap());
            return self.reduce(l, r);
        }
        Ok(SDerivation {
            rule: d.rule.clone(),
            conclusion: d.conclusion.clone(),
            premises,
        })
    }

    /// Cut-free derivation of the conclusion of `CUT(l, r)`, for cut-free
    /// `l` and `r`.
    fn reduce(&mut self, l: SDerivation, r: SDerivation) -> Result<SDerivation, SequentError> {
        self.used += 1;
        if self.used > self.budget {
            return Err(SequentError::BudgetExceeded(self.budget));
        }
        let a = l.conclusion.succedent.clone();
        let delta = minus(&r.conclusion.antecedent, &[&a]).ok_or_else(|| cut_free_err("cut"))?;
        let SDerivation {
            rule: lrule,
            conclusion: lconc,
            premises: lp,
        } = l;
        match lrule {
            Rule::Asm => {
                let gamma = minus(&lconc.antecedent, &[&a]).ok_or_else(|| cut_free_err("axiom"))?;
                Ok(weaken(r, &gamma))
            }
            Rule::ArrL { principal } => {
                let [p0, p1] = two(lp)?;
                let p1 = self.reduce(p1, r)?;
                SDerivation::arr_l(p0, p1, principal).ok_or_else(|| cut_free_err("left rule"))
            }
            Rule::TensL { principal } => {
                let [p0] = one(lp)?;
                let p0 = self.reduce(p0, r)?;
                SDerivation::tens_l(p0, principal).ok_or_else(|| cut_free_err("left rule"))
            }
            Rule::Brk { residue } => {
                let [p0, p1] = two(lp)?;
                let p1 = self.reduce(p1, r)?;
                SDerivation::brk(p0, p1, residue).ok_or_else(|| cut_free_err("break"))
            }
            Rule::ArrR | Rule::TensR => {
                let l = SDerivation {
                    rule: lrule,
                    conclusion: lconc,
                    premises: lp,
                };
                self.right_principal(l, r, &a, delta)
            }
            Rule::Cut { .. } => Err(cut_free_err("premise")),
        }
    }

    /// The cut formula is introduced on the right by the last rule of `l`.
    fn right_principal(
        &mut self,
        l: SDerivation,
        r: SDerivation,
        a: &TypeExpr,
        delta: Vec<TypeExpr>,
    ) -> Result<SDerivation, SequentError> {
        match (&l.rule, &r.rule) {
            (_, Rule::Asm) => {
                let c = &r.conclusion.succedent;
                if delta.contains(c) {
                    let ante = plus(&l.conclusion.antecedent, &delta);
                    Ok(SDerivation::asm(ante, c.clone()))
                } else {
                    Ok(weaken(l, &delta))
                }
            }
            (Rule::ArrR, Rule::ArrL { principal }) if principal == a => {
                let [lp] = one(l.premises)?;
                let [r0, r1] = two(r.premises)?;
                let m = self.reduce(r0, lp)?;
                self.reduce(m, r1)
            }
            (Rule::TensR, Rule::TensL { principal }) if principal == a => {
                let [l0, l1] = two(l.premises)?;
                let [rp] = one(r.premises)?;
                let m = self.reduce(l1, rp)?;
                self.reduce(l0, m)
            }
            _ => self.permute_right(l, r, a),
        }
    }

    /// Pushes the cut into the premise of `r` that carries the cut formula
    /// in its side context.
    fn permute_right(
        &mut self,
        l: SDerivation,
        r: SDerivation,
        a: &TypeExpr,
    ) -> Result<SDerivation, SequentError> {
        let passive = |d: &SDerivation, active: &[&TypeExpr]| {
            d.conclusion.count(a) > active.iter().filter(|t| **t == a).count()
        };
        let stuck = || cut_free_err("permuted cut");
        let SDerivation {
            rule,
            premises,
            conclusion,
        } = r;
        match rule {
            Rule::ArrR => {
                let (p, _) = conclusion.succedent.as_arrow().ok_or_else(stuck)?;
                let p = p.clone();
                let [prem] = one(premises)?;
                let prem = self.reduce(l, prem)?;
                SDerivation::arr_r(prem, &p).ok_or_else(stuck)
            }
            Rule::ArrL { principal } => {
                let [p0, p1] = two(premises)?;
                let (_, q) = principal.as_arrow().ok_or_else(stuck)?;
                if passive(&p0, &[]) {
                    let p0 = self.reduce(l, p0)?;
                    SDerivation::arr_l(p0, p1, principal).ok_or_else(stuck)
                } else if passive(&p1, &[q]) {
                    let p1 = self.reduce(l, p1)?;
                    SDerivation::arr_l(p0, p1, principal).ok_or_else(stuck)
                } else {
                    Err(stuck())
                }
            }
            Rule::TensR => {
                let [p0, p1] = two(premises)?;
                if passive(&p0, &[]) {
                    Ok(SDerivation::tens_r(self.reduce(l, p0)?, p1))
                } else {
                    Ok(SDerivation::tens_r(p0, self.reduce(l, p1)?))
                }
            }
            Rule::TensL { principal } => {
                let [p] = one(premises)?;
                let (x, y) = principal.as_tensor().ok_or_else(stuck)?;
                if !passive(&p, &[x, y]) {
                    return Err(stuck());
                }
                let p = self.reduce(l, p)?;
                SDerivation::tens_l(p, principal).ok_or_else(stuck)
            }
            Rule::Brk { residue } => {
                let [p0, p1] = two(premises)?;
                let (k, s) = ks_types(&p0.conclusion.succedent, &residue);
                if passive(&p0, &[]) {
                    let p0 = self.reduce(l, p0)?;
                    SDerivation::brk(p0, p1, residue).ok_or_else(stuck)
                } else if passive(&p1, &[&k, &s]) {
                    let p1 = self.reduce(l, p1)?;
                    SDerivation::brk(p0, p1, residue).ok_or_else(stuck)
                } else {
                    Err(stuck())
                }
            }
            Rule::Asm | Rule::Cut { .. } => Err(stuck()),
        }
    }
}

fn one(v: Vec<SDerivation>) -> Result<[SDerivation; 1], SequentError> {
    v.try_into().map_err(|_| cut_free_err("unary rule"))
}

fn two(v: Vec<SDerivation>) -> Result<[SDerivation; 2], SequentError> {
    v.try_into().map_err(|_| cut_free_err("binary rule"))
}

pub const DEFAULT_CUT_BUDGET: usize = 1_000_000;

/// Removes every cut, keeping the end sequent. Break rules stay.
pub fn eliminate_cuts(d: &SDerivation) -> Result<SDerivation, SequentError> {
    eliminate_cuts_with_budget(d, DEFAULT_CUT_BUDGET)
}

pub fn eliminate_cuts_with_budget(
    d: &SDerivation,
    budget: usize,
) -> Result<SDerivation, SequentError> {
    check_derivation(d)?;
    let mut e = CutElim { budget, used: 0 };
    e.elim(d)
}

/// `Γ ⊢ A` to `Γ ⊢ B -> A`.
fn derive_s(d_a: &SDerivation, residue: &TypeExpr) -> SDerivation {
    let weakened = weaken(d_a.clone(), std::slice::from_ref(residue));
    SDerivation::arr_r(weakened, residue).expect("weakened formula is present")
}

/// `Γ ⊢ A` to `Γ ⊢ (A -> B) -> B`.
fn derive_k(d_a: &SDerivation, residue: &TypeExpr) -> SDerivation {
    let a = d_a.conclusion.succedent.clone();
    let ab = TypeExpr::arrow(a, residue.clone());
    let left = SDerivation::arr_l(
        d_a.clone(),
        SDerivation::asm(vec![residue.clone()], residue.clone()),
        ab.clone(),
    )
    .expect("premises match the principal formula");
    SDerivation::arr_r(left, &ab).expect("principal formula is present")
}

/// Replaces a break whose scrutinee derivation has an empty antecedent by
/// two cuts.
pub fn brk_via_cut_empty(
    d_a: &SDerivation,
    d_c: &SDerivation,
    residue: &TypeExpr,
) -> Result<SDerivation, SequentError> {
    check_derivation(d_a)?;
    check_derivation(d_c)?;
    if !d_a.conclusion.antecedent.is_empty() {
        return Err(SequentError::PreconditionViolation(format!(
            "left derivation must have an empty antecedent, found {}",
            d_a.conclusion
        )));
    }
    let (k, s) = ks_types(&d_a.conclusion.succedent, residue);
    if minus(&d_c.conclusion.antecedent, &[&k, &s]).is_none() {
        return Err(SequentError::PreconditionViolation(format!(
            "right derivation must assume {k} and {s}"
        )));
    }
    let inner = SDerivation::cut(derive_k(d_a, residue), d_c.clone())
        .ok_or_else(|| SequentError::PreconditionViolation("K cut".into()))?;
    SDerivation::cut(derive_s(d_a, residue), inner)
        .ok_or_else(|| SequentError::PreconditionViolation("S cut".into()))
}

/// Which of the two break hypotheses the right derivation does without.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Superfluous {
    K,
    S,
}

/// Replaces a break one of whose hypotheses is unused by a single cut.
pub fn brk_via_cut_superfluous(
    d_a: &SDerivation,
    d_c: &SDerivation,
    residue: &TypeExpr,
    which: Superfluous,
) -> Result<SDerivation, SequentError> {
    check_derivation(d_a)?;
    check_derivation(d_c)?;
    let (k, s) = ks_types(&d_a.conclusion.succedent, residue);
    let (has_k, has_s) = (d_c.conclusion.count(&k) > 0, d_c.conclusion.count(&s) > 0);
    let (needed, absent, bridge) = match which {
        Superfluous::K => (has_s, has_k, derive_s(d_a, residue)),
        Superfluous::S => (has_k, has_s, derive_k(d_a, residue)),
    };
    if absent || !needed {
        return Err(SequentError::PreconditionViolation(format!(
            "right derivation must assume exactly one of {k} and {s}, found {}",
            d_c.conclusion
        )));
    }
    SDerivation::cut(bridge, d_c.clone())
        .ok_or_else(|| SequentError::PreconditionViolation("cut".into()))
}

/// Distinct ways of splitting a multiset in two.
fn splits(v: &[TypeExpr]) -> Vec<(Vec<TypeExpr>, Vec<TypeExpr>)> {
    let n = v.len();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, t) in v.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a.push(t.clone());
            } else {
                b.push(t.clone());
            }
        }
        a.sort();
        b.sort();
        if seen.insert((a.clone(), b.clone())) {
            out.push((a, b));
        }
    }
    out
}

struct Search {
    /// Deepest bound at which a sequent is known to be unprovable.
    failed: HashMap<Sequent, usize>,
}

impl Search {
    fn prove(&mut self, s: &Sequent, depth: usize) -> Option<SDerivation> {
        if s.count(&s.succedent) > 0 {
            return Some(SDerivation::asm(s.antecedent.clone(), s.succedent.clone()));
        }
        if depth == 0 || self.failed.get(s).is_some_and(|d| *d >= depth) {
            return None;
        }
        let found = self.try_rules(s, depth - 1);
        if found.is_none() {
            self.failed.insert(s.clone(), depth);
        }
        found
    }

    fn try_rules(&mut self, s: &Sequent, depth: usize) -> Option<SDerivation> {
        let ante = &s.antecedent;
        if let Some((a, b)) = s.succedent.as_arrow() {
            let goal = Sequent::new(plus(ante, std::slice::from_ref(a)), b.clone());
            if let Some(p) = self.prove(&goal, depth) {
                return SDerivation::arr_r(p, a);
            }
        }
        let mut distinct = ante.clone();
        distinct.dedup();
        for t in &distinct {
            if let Some((a, b)) = t.as_tensor() {
                let rest = minus(ante, &[t]).expect("present");
                let goal = Sequent::new(plus(&rest, &[a.clone(), b.clone()]), s.succedent.clone());
                if let Some(p) = self.prove(&goal, depth) {
                    return SDerivation::tens_l(p, t.clone());
                }
            }
        }
        if let Some((a, b)) = s.succedent.as_tensor() {
            for (g, d) in splits(ante) {
                let Some(p0) = self.prove(&Sequent::new(g, a.clone()), depth) else {
                    continue;
                };
                if let Some(p1) = self.prove(&Sequent::new(d, b.clone()), depth) {
                    return Some(SDerivation::tens_r(p0, p1));
                }
            }
        }
        for t in &distinct {
            if let Some((a, b)) = t.as_arrow() {
                let rest = minus(ante, &[t]).expect("present");
                for (g, d) in splits(&rest) {
                    let Some(p0) = self.prove(&Sequent::new(g, a.clone()), depth) else {
                        continue;
                    };
                    let goal = Sequent::new(plus(&d, std::slice::from_ref(b)), s.succedent.clone());
                    if let Some(p1) = self.prove(&goal, depth) {
                        return SDerivation::arr_l(p0, p1, t.clone());
                    }
                }
            }
        }
        None
    }
}

pub const DEFAULT_SEARCH_DEPTH: usize = 8;

/// Depth-bounded search for a derivation without cuts or breaks.
pub fn search_cut_free(goal: &Sequent, depth: usize) -> Option<SDerivation> {
    Search {
        failed: HashMap::new(),
    }
    .prove(goal, depth)
}

impl Parser {
    fn sequent_body(&mut self) -> Result<Sequent, ParseError> {
        let mut ante = Vec::new();
        if *self.peek() != Tok::Turnstile {
            ante.push(self.ty()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                ante.push(self.ty()?);
            }
        }
        self.expect(Tok::Turnstile)?;
        let succ = self.ty()?;
        Ok(Sequent::new(ante, succ))
    }

    fn derivation(&mut self) -> Result<SDerivation, ParseError> {
        self.expect(Tok::LParen)?;
        let name = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                s
            }
            _ => return Err(self.unexpected(&["rule name"])),
        };
        let mut data = None;
        if *self.peek() == Tok::LBrace {
            self.bump();
            data = Some(self.ty()?);
            self.expect(Tok::RBrace)?;
        }
        let need = |p: &Parser, data: Option<TypeExpr>| {
            data.ok_or_else(|| p.error(format!("rule {name} needs a formula in braces"), &["`{`"]))
        };
        let rule = match name.as_str() {
            "ASM" => Rule::Asm,
            "ARRR" => Rule::ArrR,
            "TENSR" => Rule::TensR,
            "CUT" => Rule::Cut {
                formula: need(self, data)?,
            },
            "BRK" => Rule::Brk {
                residue: need(self, data)?,
            },
            "ARRL" => Rule::ArrL {
                principal: need(self, data)?,
            },
            "TENSL" => Rule::TensL {
                principal: need(self, data)?,
            },
            _ => {
                return Err(self.error(
                    format!("unknown rule `{name}`"),
                    &["ASM", "CUT", "BRK", "ARRR", "ARRL", "TENSR", "TENSL"],
                ))
            }
        };
        self.expect(Tok::LBracket)?;
        let conclusion = self.sequent_body()?;
        self.expect(Tok::RBracket)?;
        let mut premises = Vec::new();
        while *self.peek() == Tok::LParen {
            premises.push(self.derivation()?);
        }
        self.expect(Tok::RParen)?;
        Ok(SDerivation {
            rule,
            conclusion,
            premises,
        })
    }
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.sequent_body()?;
    p.expect_eof()?;
    Ok(s)
}

pub fn parse_derivation(text: &str) -> Result<SDerivation, ParseError> {
    let mut p = Parser::new(text)?;
    let d = p.derivation()?;
    p.expect_eof()?;
    Ok(d)
}
