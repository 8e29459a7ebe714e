//! Seeded, type-directed generation of well-typed affine terms.
//!
//! Terms may be open: when no hypothesis of the wanted type is left, a fresh
//! free variable is introduced. Every free variable occurs once.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::reduction::{is_normal, normalize};
use crate::syntax::{canonicalize, free_vars, ks_types, term_size, Term, TypeExpr};

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Rough size target; generated terms stay close to it.
    pub size: usize,
    pub type_depth: usize,
    pub atoms: Vec<String>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            size: 20,
            type_depth: 2,
            atoms: vec!["A".into(), "B".into(), "C".into()],
        }
    }
}

struct Hyp {
    name: String,
    ty: TypeExpr,
    used: bool,
}

pub struct TermGen {
    rng: ChaCha8Rng,
    cfg: GenConfig,
    counter: usize,
    ctx: Vec<Hyp>,
}

impl TermGen {
    pub fn new(seed: u64, cfg: GenConfig) -> Self {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg,
            counter: 0,
            ctx: Vec::new(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    pub fn random_type(&mut self, depth: usize) -> TypeExpr {
        if depth == 0 || self.rng.gen_bool(0.4) {
            let a = self.cfg.atoms.choose(&mut self.rng).expect("atoms");
            return TypeExpr::atom(a.clone());
        }
        let l = self.random_type(depth - 1);
        let r = self.random_type(depth - 1);
        if self.rng.gen_bool(0.6) {
            TypeExpr::arrow(l, r)
        } else {
            TypeExpr::tensor(l, r)
        }
    }

    fn available(&self, pred: impl Fn(&TypeExpr) -> bool) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| !self.ctx[i].used && pred(&self.ctx[i].ty))
            .collect()
    }

    fn use_hyp(&mut self, i: usize) -> Term {
        self.ctx[i].used = true;
        Term::var(self.ctx[i].name.clone(), self.ctx[i].ty.clone())
    }

    fn bind<T>(&mut self, hyps: Vec<(String, TypeExpr)>, f: impl FnOnce(&mut Self) -> T) -> T {
        let n = hyps.len();
        for (name, ty) in hyps {
            self.ctx.push(Hyp {
                name,
                ty,
                used: false,
            });
        }
        let out = f(self);
        self.ctx.truncate(self.ctx.len() - n);
        out
    }

    fn split(&mut self, budget: usize) -> (usize, usize) {
        let b = budget.saturating_sub(1).max(2);
        let l = self.rng.gen_range(1..b);
        (l, b - l)
    }

    /// A term of type `ty` built from the current hypotheses and fresh free
    /// variables.
    pub fn term_of(&mut self, ty: &TypeExpr, budget: usize) -> Term {
        let exact = self.available(|t| t == ty);
        if budget <= 1 {
            if let Some(&i) = exact.first() {
                return self.use_hyp(i);
            }
            let v = self.fresh("v");
            return Term::var(v, ty.clone());
        }
        let heads = self.available(|t| matches!(t.as_arrow(), Some((_, c)) if c == ty));
        let pairs = self.available(|t| t.as_tensor().is_some());
        let mut choices: Vec<(u32, u8)> = vec![(3, 0), (2, 4), (1, 5), (1, 6)];
        if !exact.is_empty() {
            choices.push((2, 1));
        }
        if !heads.is_empty() {
            choices.push((4, 2));
        }
        if !pairs.is_empty() {
            choices.push((2, 3));
        }
        let total: u32 = choices.iter().map(|c| c.0).sum();
        let mut pick = self.rng.gen_range(0..total);
        let mut kind = 0;
        for (w, k) in &choices {
            if pick < *w {
                kind = *k;
                break;
            }
            pick -= w;
        }
        match kind {
            1 => {
                let i = *exact.choose(&mut self.rng).unwrap();
                self.use_hyp(i)
            }
            2 => {
                let i = *heads.choose(&mut self.rng).unwrap();
                let head = self.use_hyp(i);
                let (a, _) = self.ctx[i]
                    .ty
                    .as_arrow()
                    .map(|(a, c)| (a.clone(), c.clone()))
                    .unwrap();
                let arg = self.term_of(&a, budget - 1);
                Term::app(head, arg)
            }
            3 => {
                let i = *pairs.choose(&mut self.rng).unwrap();
                let scrut = self.use_hyp(i);
                let (a, b) = self.ctx[i]
                    .ty
                    .as_tensor()
                    .map(|(a, b)| (a.clone(), b.clone()))
                    .unwrap();
                self.let_over(scrut, a, b, ty, budget - 1)
            }
            4 => {
                let a = self.random_type(1);
                let (l, r) = self.split(budget);
                let fun = self.term_of(&TypeExpr::arrow(a.clone(), ty.clone()), l);
                let arg = self.term_of(&a, r);
                Term::app(fun, arg)
            }
            5 => {
                let a = self.random_type(1);
                let b = self.random_type(1);
                let (l, r) = self.split(budget);
                let scrut = self.term_of(&TypeExpr::tensor(a.clone(), b.clone()), l);
                self.let_over(scrut, a, b, ty, r)
            }
            6 => {
                let a = self.random_type(1);
                let res = self.random_type(1);
                let (l, r) = self.split(budget);
                let scrut = self.term_of(&a, l);
                let (k, s) = ks_types(&a, &res);
                let (phi, f) = (self.fresh("phi"), self.fresh("f"));
                let body = self.bind(vec![(phi.clone(), k), (f.clone(), s)], |g| g.term_of(ty, r));
                Term::brk(scrut, phi, f, res, body)
            }
            _ => self.intro(ty, budget),
        }
    }

    fn let_over(
        &mut self,
        scrut: Term,
        a: TypeExpr,
        b: TypeExpr,
        ty: &TypeExpr,
        budget: usize,
    ) -> Term {
        let (x, y) = (self.fresh("x"), self.fresh("y"));
        let body = self.bind(vec![(x.clone(), a.clone()), (y.clone(), b.clone())], |g| {
            g.term_of(ty, budget)
        });
        Term::let_pair(x, a, y, b, scrut, body)
    }

    fn intro(&mut self, ty: &TypeExpr, budget: usize) -> Term {
        match ty {
            TypeExpr::Arrow(a, b) => {
                let x = self.fresh("x");
                let body = self.bind(vec![(x.clone(), (**a).clone())], |g| {
                    g.term_of(b, budget - 1)
                });
                Term::lam(x, (**a).clone(), body)
            }
            TypeExpr::Tensor(a, b) => {
                let (l, r) = self.split(budget);
                Term::pair(self.term_of(a, l), self.term_of(b, r))
            }
            TypeExpr::Atom(_) => {
                let exact = self.available(|t| t == ty);
                match exact.first() {
                    Some(&i) => self.use_hyp(i),
                    None => {
                        let v = self.fresh("v");
                        Term::var(v, ty.clone())
                    }
                }
            }
        }
    }

    /// A random well-typed term of size at most `cfg.size`.
    pub fn typed_term(&mut self) -> Term {
        loop {
            let ty = self.random_type(self.cfg.type_depth);
            let budget = self.rng.gen_range(1..=self.cfg.size.max(1));
            let t = canonicalize(&self.term_of(&ty, budget));
            if term_size(&t) <= self.cfg.size {
                return t;
            }
        }
    }

    /// A closed term in normal form of size at most `cfg.size`: a random
    /// term, normalized, then abstracted over its free variables.
    pub fn closed_normal_term(&mut self) -> Term {
        loop {
            let t = self.typed_term();
            let Ok((n, _)) = normalize(&t, 100_000) else {
                continue;
            };
            let fv = free_vars(&n).expect("generated terms are well formed");
            let closed = fv
                .into_iter()
                .rev()
                .fold(n, |body, (x, ty)| Term::lam(x, ty, body));
            let closed = canonicalize(&closed);
            if term_size(&closed) <= self.cfg.size && is_normal(&closed) {
                return closed;
            }
        }
    }
}
