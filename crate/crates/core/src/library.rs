//! Catalogue of proof terms: inhabitants of the axioms of minimal
//! Łukasiewicz logic and worked examples, instantiable at any types.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::parse::{parse_term, parse_term_in};
use crate::syntax::{ks_types, Term, TypeExpr, TypedVarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomId {
    B1,
    B2,
    B3,
    B4,
    B5a,
    B5b,
}

impl AxiomId {
    pub const ALL: [AxiomId; 6] = [
        AxiomId::B1,
        AxiomId::B2,
        AxiomId::B3,
        AxiomId::B4,
        AxiomId::B5a,
        AxiomId::B5b,
    ];

    /// The axiom formula over the given types.
    pub fn formula(self, a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> TypeExpr {
        instantiate_type(self.formula_text(), a, b, c)
    }

    fn formula_text(self) -> &'static str {
        match self {
            AxiomId::B1 => "(A -> B) -> (B -> C) -> A -> C",
            AxiomId::B2 => "A * B -> A",
            AxiomId::B3 => "A * B -> B * A",
            AxiomId::B4 => "A * (A -> B) -> B * (B -> A)",
            AxiomId::B5a => "(A * B -> C) -> A -> B -> C",
            AxiomId::B5b => "(A -> B -> C) -> A * B -> C",
        }
    }

    fn term_text(self) -> &'static str {
        match self {
            AxiomId::B1 => "\\f:A -> B. \\g:B -> C. \\x:A. g (f x)",
            AxiomId::B2 => "\\v:A * B. let <x:A, y:B> = v in x",
            AxiomId::B3 => "\\v:A * B. let <x:A, y:B> = v in <y, x>",
            AxiomId::B4 => {
                "\\v:A * (A -> B). let <x:A, f:A -> B> = v in break x as <phi, g> @ B in <phi f, g>"
            }
            AxiomId::B5a => "\\f:A * B -> C. \\x:A. \\y:B. f <x, y>",
            AxiomId::B5b => "\\g:A -> B -> C. \\a:A * B. let <x:A, y:B> = a in g x y",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomId::B1 => "B1",
            AxiomId::B2 => "B2",
            AxiomId::B3 => "B3",
            AxiomId::B4 => "B4",
            AxiomId::B5a => "B5a",
            AxiomId::B5b => "B5b",
        })
    }
}

impl FromStr for AxiomId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown axiom `{s}` (expected one of B1 B2 B3 B4 B5a B5b)"))
    }
}

fn atom_map(a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> HashMap<String, TypeExpr> {
    HashMap::from([
        ("A".to_string(), a.clone()),
        ("B".to_string(), b.clone()),
        ("C".to_string(), c.clone()),
    ])
}

fn instantiate_type(text: &str, a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> TypeExpr {
    crate::parse::parse_type(text)
        .expect("built-in type template parses")
        .substitute_atoms(&atom_map(a, b, c))
}

/// Parses a template written over the atoms A, B, C and replaces them.
fn instantiate(text: &str, a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> Term {
    let map = atom_map(a, b, c);
    parse_term(text)
        .expect("built-in term template parses")
        .map_types(&|t| t.substitute_atoms(&map))
}

fn instantiate_in(
    ctx: &[(&str, &str)],
    text: &str,
    a: &TypeExpr,
    b: &TypeExpr,
    c: &TypeExpr,
) -> Term {
    let ctx: TypedVarSet = ctx
        .iter()
        .map(|(n, t)| {
            let ty = crate::parse::parse_type(t).expect("built-in type template parses");
            (n.to_string(), ty)
        })
        .collect();
    let map = atom_map(a, b, c);
    parse_term_in(&ctx, text)
        .expect("built-in term template parses")
        .map_types(&|t| t.substitute_atoms(&map))
}

/// Closed inhabitant of an axiom. `c` is ignored by axioms that do not
/// mention a third type.
pub fn axiom_term(id: AxiomId, a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> Term {
    instantiate(id.term_text(), a, b, c)
}

/// A normal proof of `A -> A` that cannot be reduced to `\x. x`.
pub fn identity_break(a: &TypeExpr) -> Term {
    instantiate("\\x:A. break x as <phi, f> @ A in phi f", a, a, a)
}

/// The divisibility term `t` and the term `u` that projects out of it.
pub fn divisibility_terms(a: &TypeExpr, b: &TypeExpr) -> (Term, Term) {
    let t_text = "\\x:A. break x as <phi, f> @ B in \\g:A -> B. <phi g, f>";
    let t = instantiate(t_text, a, b, b);
    let u = instantiate(
        &format!("\\x':A. \\g':A -> B. let <m:B, n:B -> A> = ({t_text}) x' g' in m"),
        a,
        b,
        b,
    );
    (t, u)
}

#[allow(non_snake_case)]
pub fn axiom_L_term(a: &TypeExpr, b: &TypeExpr) -> Term {
    instantiate(
        "\\D:(B -> A) -> A -> B. \\x:A. break x as <phi, f> @ B in phi (D f)",
        a,
        b,
        b,
    )
}

/// The pieces of the homomorphism construction. Each `t_i` is an open term
/// over the free variables it is parameterized by.
#[derive(Debug, Clone)]
pub struct HomomorphismParts {
    pub t1: Term,
    pub t2: Term,
    pub t3: Term,
    pub t4: Term,
    pub t5: Term,
    pub t6: Term,
    pub t7: Term,
    pub t8: Term,
    pub t9: Term,
    pub term: Term,
    /// `(A -> B) -> (A -> B) * (A -> C)`
    pub y: TypeExpr,
    /// `Y -> (A -> B) * (A -> C)`
    pub z: TypeExpr,
}

pub fn homomorphism_parts(a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> HomomorphismParts {
    let h = "A -> B * C";
    let y = "(A -> B) -> (A -> B) * (A -> C)";
    let z = format!("({y}) -> (A -> B) * (A -> C)");
    let p_ty = format!("({y}) -> A -> C");
    let (phi_ty, f_ty) = {
        let ht = crate::parse::parse_type(h).expect("parses");
        let res = crate::parse::parse_type("A -> B").expect("parses");
        let (k, s) = ks_types(&ht, &res);
        (k.to_string(), s.to_string())
    };
    let g_ty = {
        let zt = crate::parse::parse_type(&z).expect("parses");
        let res = crate::parse::parse_type(&p_ty).expect("parses");
        ks_types(&zt, &res).1.to_string()
    };

    let pi0 = "(\\w:B * C. let <b0:B, c0:C> = w in b0)";
    let pi1 = "(\\w:(A -> B) * (A -> C). let <l:A -> B, r:A -> C> = w in r)";
    let t1 = format!("phi (\\m:{h}. \\x:A. {pi0} (m x))");
    let t2_of =
        |x: &str| format!("(\\j:A -> B. let <x':B, y':C> = f j {x} in <\\_:A. x', \\_:A. y'>)");
    let t2 = t2_of("x");
    let t3_of = |x: &str| format!("p {}", t2_of(x));
    let t3 = t3_of("x");
    let t4 = format!(
        "(\\p:{p_ty}. \\y:A. let <y0:A, y1:A> = alpha y in {} y1)",
        t3_of("y0")
    );
    let t5 = format!("(\\q:{y}. q ({t1}))");
    let t6 = format!("(\\u:{z}. \\v:{y}. {pi1} (u v))");
    let t7 = "(\\v:A -> C. \\u:A -> B. <u, v>)".to_string();
    let t8 = format!("(\\i:A -> C. break i as <eta, k> @ {y} in g k (eta {t7}))");
    let t9 = format!(
        "break h as <phi, f> @ A -> B in break {t5} as <psi, g> @ {p_ty} in {t8} ({t4} (psi {t6}))"
    );
    let term = format!("\\alpha:A -> A * A. \\h:{h}. {t9}");

    let alpha_ty = "A -> A * A";
    let part = |ctx: &[(&str, &str)], text: &str| instantiate_in(ctx, text, a, b, c);
    HomomorphismParts {
        t1: part(&[("phi", &phi_ty)], &t1),
        t2: part(&[("x", "A"), ("f", &f_ty)], &t2),
        t3: part(&[("x", "A"), ("f", &f_ty), ("p", &p_ty)], &t3),
        t4: part(&[("alpha", alpha_ty), ("f", &f_ty)], &t4),
        t5: part(&[("phi", &phi_ty)], &t5),
        t6: part(&[], &t6),
        t7: part(&[], &t7),
        t8: part(&[("g", &g_ty)], &t8),
        t9: part(&[("h", h), ("alpha", alpha_ty)], &t9),
        term: part(&[], &term),
        y: instantiate_type(y, a, b, c),
        z: instantiate_type(&z, a, b, c),
    }
}

/// Closed term of type `(A -> A * A) -> (A -> B * C) -> (A -> B) * (A -> C)`.
pub fn homomorphism_term(a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> Term {
    homomorphism_parts(a, b, c).term
}

/// A break-free term turning a divisibility hypothesis into the splitting
/// `A -> K * (B -> A)` with `K = (A -> B) -> B`.
pub fn break_free_split(a: &TypeExpr, b: &TypeExpr) -> Term {
    instantiate(
        "\\b4:A * (A -> (A -> B) -> B) -> ((A -> B) -> B) * (((A -> B) -> B) -> A). \\x:A. \
         let <phi:(A -> B) -> B, h:((A -> B) -> B) -> A> = b4 <x, \\a:A. \\p:A -> B. p a> \
         in <phi, \\b:B. h (\\g:A -> B. b)>",
        a,
        b,
        b,
    )
}

/// Names accepted by [`catalog_term`].
pub const CATALOG: [&str; 12] = [
    "B1",
    "B2",
    "B3",
    "B4",
    "B5a",
    "B5b",
    "identity_break",
    "divisibility_t",
    "divisibility_u",
    "axiom_L",
    "homomorphism",
    "break_free_split",
];

pub fn catalog_term(name: &str, a: &TypeExpr, b: &TypeExpr, c: &TypeExpr) -> Option<Term> {
    if let Ok(id) = name.parse::<AxiomId>() {
        return Some(axiom_term(id, a, b, c));
    }
    Some(match name {
        "identity_break" => identity_break(a),
        "divisibility_t" => divisibility_terms(a, b).0,
        "divisibility_u" => divisibility_terms(a, b).1,
        "axiom_L" => axiom_L_term(a, b),
        "homomorphism" => homomorphism_term(a, b, c),
        "break_free_split" => break_free_split(a, b),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_type;
    use crate::reduction::{find_redexes, normalize};
    use crate::syntax::{affine_check, alpha_eq, substitute};
    use crate::typing::check;

    fn abc() -> (TypeExpr, TypeExpr, TypeExpr) {
        (
            TypeExpr::atom("A"),
            TypeExpr::atom("B"),
            TypeExpr::atom("C"),
        )
    }

    #[test]
    fn axioms_check_at_their_formulas() {
        let (a, b, c) = abc();
        for id in AxiomId::ALL {
            let t = axiom_term(id, &a, &b, &c);
            assert_eq!(check(&t).unwrap(), id.formula(&a, &b, &c), "{id}");
            assert!(affine_check(&t));
        }
    }

    #[test]
    fn compound_instances() {
        let a = parse_type("X -> Y").unwrap();
        let b = parse_type("B * A").unwrap();
        let c = parse_type("A").unwrap();
        for id in AxiomId::ALL {
            assert_eq!(
                check(&axiom_term(id, &a, &b, &c)).unwrap(),
                id.formula(&a, &b, &c)
            );
        }
    }

    #[test]
    fn identity_break_is_normal() {
        let a = TypeExpr::atom("A");
        let t = identity_break(&a);
        assert_eq!(check(&t).unwrap(), parse_type("A -> A").unwrap());
        assert!(find_redexes(&t).is_empty());
    }

    #[test]
    fn divisibility() {
        let (a, b, _) = abc();
        let (t, u) = divisibility_terms(&a, &b);
        assert_eq!(
            check(&t).unwrap(),
            parse_type("A -> (A -> B) -> B * (B -> A)").unwrap()
        );
        assert!(find_redexes(&t).is_empty());
        assert_eq!(
            check(&u).unwrap(),
            parse_type("A -> (A -> B) -> B").unwrap()
        );
    }

    #[test]
    fn axiom_l() {
        let (a, b, _) = abc();
        let t = axiom_L_term(&a, &b);
        assert_eq!(
            check(&t).unwrap(),
            parse_type("((B -> A) -> A -> B) -> A -> B").unwrap()
        );
        assert!(affine_check(&t));
        let same = axiom_L_term(&a, &a);
        let applied = Term::app(same, crate::parse::parse_term("\\g:A -> A. g").unwrap());
        let (nf, _) = normalize(&applied, 100).unwrap();
        assert!(alpha_eq(&nf, &identity_break(&a)));
    }

    #[test]
    fn homomorphism() {
        let (a, b, c) = abc();
        let parts = homomorphism_parts(&a, &b, &c);
        assert_eq!(
            check(&parts.term).unwrap(),
            parse_type("(A -> A * A) -> (A -> B * C) -> (A -> B) * (A -> C)").unwrap()
        );
        assert_eq!(check(&parts.t5).unwrap(), parts.z);
        assert_eq!(check(&parts.t1).unwrap(), parse_type("A -> B").unwrap());
        assert_eq!(check(&parts.t2).unwrap(), parts.y);
        assert_eq!(check(&parts.t3).unwrap(), parse_type("A -> C").unwrap());
        assert_eq!(
            check(&parts.t4).unwrap(),
            parse_type(&format!("(({}) -> A -> C) -> A -> C", parts.y)).unwrap()
        );
        assert_eq!(
            check(&parts.t8).unwrap(),
            parse_type("(A -> C) -> (A -> B) * (A -> C)").unwrap()
        );
        assert_eq!(
            check(&parts.t9).unwrap(),
            parse_type("(A -> B) * (A -> C)").unwrap()
        );
        assert!(affine_check(&parts.term));
    }

    #[test]
    fn split_is_break_free() {
        let (a, b, _) = abc();
        let t = break_free_split(&a, &b);
        assert!(t.is_break_free());
        assert_eq!(
            check(&t).unwrap(),
            parse_type("(A * (A -> (A -> B) -> B) -> ((A -> B) -> B) * (((A -> B) -> B) -> A)) -> A -> ((A -> B) -> B) * (B -> A)").unwrap()
        );
        let k = parse_type("(A -> B) -> B").unwrap();
        let b4 = axiom_term(AxiomId::B4, &a, &k, &a);
        let body = match &t {
            Term::Lam { binder, body, .. } => substitute(body, &[(binder.clone(), b4)]),
            _ => unreachable!(),
        };
        let (nf, _) = normalize(&body, 1000).unwrap();
        assert_eq!(
            check(&nf).unwrap(),
            parse_type("A -> ((A -> B) -> B) * (B -> A)").unwrap()
        );
    }

    #[test]
    fn catalogue_names_resolve() {
        let (a, b, c) = abc();
        for name in CATALOG {
            let t = catalog_term(name, &a, &b, &c).unwrap();
            assert!(check(&t).is_ok(), "{name}");
        }
        assert!(catalog_term("nope", &a, &b, &c).is_none());
    }
}
