//! Concrete syntax front end.
//!
//! ```text
//! type  ::= tprod ('->' type)?            right associative
//! tprod ::= tatom ('*' tatom)*            left associative, binds tighter
//! tatom ::= IDENT | '(' type ')'
//!
//! term  ::= '\' bind (':' type)? '.' term
//!         | 'let' '<' bind (':' type)? ',' bind (':' type)? '>' '=' term 'in' term
//!         | 'break' term 'as' '<' bind ',' bind '>' ('@' type)? 'in' term
//!         | atom+ [binding form]
//! atom  ::= IDENT | '(' IDENT ':' type ')' | '(' term ')' | '<' term ',' term '>'
//! ```
//!
//! `--` starts a line comment. Church-style terms need every annotation and
//! a `(x : T)` ascription at the first use of each free variable.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{canonicalize, ks_types, Term, TypeExpr, TypedVarSet, WILDCARD};
use crate::typing::{synth_type, UntypedTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {span}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Underscore,
    Backslash,
    Dot,
    Colon,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Equals,
    At,
    Arrow,
    Star,
    Turnstile,
    Let,
    In,
    Break,
    As,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Underscore => "`_`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Equals => "`=`".into(),
            Tok::At => "`@`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Let => "`let`".into(),
            Tok::In => "`in`".into(),
            Tok::Break => "`break`".into(),
            Tok::As => "`as`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let span = |start: usize, end: usize, line: usize, col: usize| SourceSpan {
        start,
        end,
        line,
        column: col,
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && bytes.get(i + 1) == Some(&b'-') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = |a: u8| bytes.get(i + 1) == Some(&a);
        let (tok, len) = match c {
            '\\' => (Tok::Backslash, 1),
            '.' => (Tok::Dot, 1),
            ':' => (Tok::Colon, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '<' => (Tok::LAngle, 1),
            '>' => (Tok::RAngle, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ',' => (Tok::Comma, 1),
            '=' => (Tok::Equals, 1),
            '@' => (Tok::At, 1),
            '*' => (Tok::Star, 1),
            '-' if two(b'>') => (Tok::Arrow, 2),
            '|' if two(b'-') => (Tok::Turnstile, 2),
            '_' if !bytes
                .get(i + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_' || *b == b'\'') =>
            {
                (Tok::Underscore, 1)
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'')
                {
                    j += 1;
                }
                let word = &src[i..j];
                let tok = match word {
                    "let" => Tok::Let,
                    "in" => Tok::In,
                    "break" => Tok::Break,
                    "as" => Tok::As,
                    _ => Tok::Ident(word.to_string()),
                };
                (tok, j - i)
            }
            _ => {
                let ch_len = src[i..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError {
                    message: format!("unexpected character `{}`", &src[i..i + ch_len]),
                    span: span(start, start + ch_len, line, col),
                    expected: vec![],
                });
            }
        };
        out.push((tok, span(start, start + len, line, col)));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, span(i, i, line, col)));
    Ok(out)
}

/// Surface syntax: a term with optional annotations and source spans.
#[derive(Debug, Clone)]
pub(crate) enum Surface {
    Var {
        name: String,
        ascription: Option<TypeExpr>,
        span: SourceSpan,
    },
    Lam {
        binder: String,
        ty: Option<TypeExpr>,
        body: Box<Surface>,
        span: SourceSpan,
    },
    App(Box<Surface>, Box<Surface>),
    Pair(Box<Surface>, Box<Surface>),
    Let {
        x: String,
        x_ty: Option<TypeExpr>,
        y: String,
        y_ty: Option<TypeExpr>,
        scrutinee: Box<Surface>,
        body: Box<Surface>,
        span: SourceSpan,
    },
    Break {
        scrutinee: Box<Surface>,
        phi: String,
        f: String,
        residue: Option<TypeExpr>,
        body: Box<Surface>,
        span: SourceSpan,
    },
}

impl Surface {
    fn span(&self) -> SourceSpan {
        match self {
            Surface::Var { span, .. }
            | Surface::Lam { span, .. }
            | Surface::Let { span, .. }
            | Surface::Break { span, .. } => *span,
            Surface::App(a, _) | Surface::Pair(a, _) => a.span(),
        }
    }
}

pub(crate) struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    pub(crate) fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            message: message.into(),
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub(crate) fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(format!("unexpected {}", self.peek().describe()), expected)
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<SourceSpan, ParseError> {
        if *self.peek() == tok {
            let sp = self.span();
            self.bump();
            Ok(sp)
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        if *self.peek() == Tok::Underscore {
            self.bump();
            return Ok(WILDCARD.to_string());
        }
        self.ident()
    }

    pub(crate) fn ty(&mut self) -> Result<TypeExpr, ParseError> {
        let left = self.ty_product()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.ty()?;
            return Ok(TypeExpr::arrow(left, right));
        }
        Ok(left)
    }

    fn ty_product(&mut self) -> Result<TypeExpr, ParseError> {
        let mut acc = self.ty_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.ty_atom()?;
            acc = TypeExpr::tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn ty_atom(&mut self) -> Result<TypeExpr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(TypeExpr::Atom(s))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected(&["type variable", "`(`"])),
        }
    }

    fn opt_annotation(&mut self) -> Result<Option<TypeExpr>, ParseError> {
        if *self.peek() == Tok::Colon {
            self.bump();
            Ok(Some(self.ty()?))
        } else {
            Ok(None)
        }
    }

    fn distinct(&self, a: &str, b: &str, span: SourceSpan) -> Result<(), ParseError> {
        if a == b && a != WILDCARD {
            return Err(ParseError {
                message: format!("duplicate binder `{a}`"),
                span,
                expected: vec![],
            });
        }
        Ok(())
    }

    pub(crate) fn term(&mut self) -> Result<Surface, ParseError> {
        let span = self.span();
        match self.peek() {
            Tok::Backslash => {
                self.bump();
                let binder = self.binder()?;
                let ty = self.opt_annotation()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(Surface::Lam {
                    binder,
                    ty,
                    body: Box::new(body),
                    span,
                })
            }
            Tok::Let => {
                self.bump();
                self.expect(Tok::LAngle)?;
                let x = self.binder()?;
                let x_ty = self.opt_annotation()?;
                self.expect(Tok::Comma)?;
                let y = self.binder()?;
                let y_ty = self.opt_annotation()?;
                self.expect(Tok::RAngle)?;
                self.distinct(&x, &y, span)?;
                self.expect(Tok::Equals)?;
                let scrutinee = self.term()?;
                self.expect(Tok::In)?;
                let body = self.term()?;
                Ok(Surface::Let {
                    x,
                    x_ty,
                    y,
                    y_ty,
                    scrutinee: Box::new(scrutinee),
                    body: Box::new(body),
                    span,
                })
            }
            Tok::Break => {
                self.bump();
                let scrutinee = self.term()?;
                self.expect(Tok::As)?;
                self.expect(Tok::LAngle)?;
                let phi = self.binder()?;
                self.expect(Tok::Comma)?;
                let f = self.binder()?;
                self.expect(Tok::RAngle)?;
                self.distinct(&phi, &f, span)?;
                let residue = if *self.peek() == Tok::At {
                    self.bump();
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(Tok::In)?;
                let body = self.term()?;
                Ok(Surface::Break {
                    scrutinee: Box::new(scrutinee),
                    phi,
                    f,
                    residue,
                    body: Box::new(body),
                    span,
                })
            }
            _ => self.application(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::LAngle)
    }

    fn starts_binding_form(&self) -> bool {
        matches!(self.peek(), Tok::Backslash | Tok::Let | Tok::Break)
    }

    fn application(&mut self) -> Result<Surface, ParseError> {
        let mut acc = self.atom()?;
        loop {
            if self.starts_atom() {
                let arg = self.atom()?;
                acc = Surface::App(Box::new(acc), Box::new(arg));
            } else if self.starts_binding_form() {
                let arg = self.term()?;
                return Ok(Surface::App(Box::new(acc), Box::new(arg)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Surface, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Surface::Var {
                    name,
                    ascription: None,
                    span,
                })
            }
            Tok::LParen => {
                if let (Tok::Ident(name), Tok::Colon) = (self.peek_at(1).clone(), self.peek_at(2)) {
                    self.bump();
                    self.bump();
                    self.bump();
                    let ty = self.ty()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Surface::Var {
                        name,
                        ascription: Some(ty),
                        span,
                    });
                }
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(Surface::Pair(Box::new(a), Box::new(b)))
            }
            _ => Err(self.unexpected(&["identifier", "`(`", "`<`", "`\\`", "`let`", "`break`"])),
        }
    }
}

fn missing(what: &str, span: SourceSpan) -> ParseError {
    ParseError {
        message: format!("missing {what}"),
        span,
        expected: vec![],
    }
}

struct Elaborator {
    env: Vec<(String, TypeExpr)>,
    free: BTreeMap<String, TypeExpr>,
}

impl Elaborator {
    fn lookup(&self, name: &str) -> Option<&TypeExpr> {
        self.env
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    fn term(&mut self, s: &Surface) -> Result<Term, ParseError> {
        match s {
            Surface::Var {
                name,
                ascription,
                span,
            } => {
                let known = self.lookup(name).or_else(|| self.free.get(name)).cloned();
                let ty = match (known, ascription) {
                    (Some(k), Some(a)) if k != *a => {
                        return Err(ParseError {
                            message: format!(
                                "`{name}` is ascribed {a} but was already given type {k}"
                            ),
                            span: *span,
                            expected: vec![],
                        })
                    }
                    (Some(k), _) => k,
                    (None, Some(a)) => {
                        self.free.insert(name.clone(), a.clone());
                        a.clone()
                    }
                    (None, None) => {
                        return Err(ParseError {
                            message: format!(
                                "free variable `{name}` needs a type ascription `({name} : T)` at its first use"
                            ),
                            span: *span,
                            expected: vec![],
                        })
                    }
                };
                Ok(Term::var(name.clone(), ty))
            }
            Surface::Lam {
                binder,
                ty,
                body,
                span,
            } => {
                let ty = ty
                    .clone()
                    .ok_or_else(|| missing(&format!("type annotation on `{binder}`"), *span))?;
                self.env.push((binder.clone(), ty.clone()));
                let body = self.term(body);
                self.env.pop();
                Ok(Term::lam(binder.clone(), ty, body?))
            }
            Surface::App(a, b) => Ok(Term::app(self.term(a)?, self.term(b)?)),
            Surface::Pair(a, b) => Ok(Term::pair(self.term(a)?, self.term(b)?)),
            Surface::Let {
                x,
                x_ty,
                y,
                y_ty,
                scrutinee,
                body,
                span,
            } => {
                let xt = x_ty
                    .clone()
                    .ok_or_else(|| missing(&format!("type annotation on `{x}`"), *span))?;
                let yt = y_ty
                    .clone()
                    .ok_or_else(|| missing(&format!("type annotation on `{y}`"), *span))?;
                let s = self.term(scrutinee)?;
                self.env.push((x.clone(), xt.clone()));
                self.env.push((y.clone(), yt.clone()));
                let b = self.term(body);
                self.env.truncate(self.env.len() - 2);
                Ok(Term::let_pair(x.clone(), xt, y.clone(), yt, s, b?))
            }
            Surface::Break {
                scrutinee,
                phi,
                f,
                residue,
                body,
                span,
            } => {
                let residue = residue
                    .clone()
                    .ok_or_else(|| missing("residue annotation `@ T` on break", *span))?;
                let s = self.term(scrutinee)?;
                let a = synth_type(&s).map_err(|e| ParseError {
                    message: format!("cannot determine the type of the break scrutinee: {e}"),
                    span: scrutinee.span(),
                    expected: vec![],
                })?;
                let (k, st) = ks_types(&a, &residue);
                self.env.push((phi.clone(), k));
                self.env.push((f.clone(), st));
                let b = self.term(body);
                self.env.truncate(self.env.len() - 2);
                Ok(Term::brk(s, phi.clone(), f.clone(), residue, b?))
            }
        }
    }
}

fn erase_surface(s: &Surface) -> UntypedTerm {
    match s {
        Surface::Var { name, .. } => UntypedTerm::Var(name.clone()),
        Surface::Lam { binder, body, .. } => {
            UntypedTerm::Lam(binder.clone(), Box::new(erase_surface(body)))
        }
        Surface::App(a, b) => {
            UntypedTerm::App(Box::new(erase_surface(a)), Box::new(erase_surface(b)))
        }
        Surface::Pair(a, b) => {
            UntypedTerm::Pair(Box::new(erase_surface(a)), Box::new(erase_surface(b)))
        }
        Surface::Let {
            x,
            y,
            scrutinee,
            body,
            ..
        } => UntypedTerm::Let(
            x.clone(),
            y.clone(),
            Box::new(erase_surface(scrutinee)),
            Box::new(erase_surface(body)),
        ),
        Surface::Break {
            scrutinee,
            phi,
            f,
            body,
            ..
        } => UntypedTerm::Break(
            Box::new(erase_surface(scrutinee)),
            phi.clone(),
            f.clone(),
            Box::new(erase_surface(body)),
        ),
    }
}

fn parse_surface(text: &str) -> Result<Surface, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.term()?;
    p.expect_eof()?;
    Ok(s)
}

pub fn parse_type(text: &str) -> Result<TypeExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a closed or ascribed Church-style term and renames binders apart.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_in(&TypedVarSet::new(), text)
}

/// Like [`parse_term`], with the types of some free variables given up front.
pub fn parse_term_in(context: &TypedVarSet, text: &str) -> Result<Term, ParseError> {
    let s = parse_surface(text)?;
    let mut el = Elaborator {
        env: Vec::new(),
        free: context.clone(),
    };
    Ok(canonicalize(&el.term(&s)?))
}

/// Parses a term ignoring all annotations; free variables may be bare.
pub fn parse_untyped(text: &str) -> Result<UntypedTerm, ParseError> {
    Ok(erase_surface(&parse_surface(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn at(s: &str) -> TypeExpr {
        TypeExpr::atom(s)
    }

    #[test]
    fn type_precedence() {
        assert_eq!(
            parse_type("A -> B -> C").unwrap(),
            TypeExpr::arrow(at("A"), TypeExpr::arrow(at("B"), at("C")))
        );
        assert_eq!(
            parse_type("A * B -> A").unwrap(),
            TypeExpr::arrow(TypeExpr::tensor(at("A"), at("B")), at("A"))
        );
        assert_eq!(
            parse_type("(A -> B) -> B").unwrap(),
            TypeExpr::arrow(TypeExpr::arrow(at("A"), at("B")), at("B"))
        );
        assert_eq!(
            parse_type("A * B * C").unwrap(),
            TypeExpr::tensor(TypeExpr::tensor(at("A"), at("B")), at("C"))
        );
    }

    #[test]
    fn identity_break_term() {
        let t = parse_term("\\x:A. break x as <phi,f> @ A in phi f").unwrap();
        let (k, s) = ks_types(&at("A"), &at("A"));
        let expected = Term::lam(
            "x",
            at("A"),
            Term::brk(
                Term::var("x", at("A")),
                "phi",
                "f",
                at("A"),
                Term::app(Term::var("phi", k), Term::var("f", s)),
            ),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn projection_term() {
        let t = parse_term("\\v:A*B. let <x:A, y:B> = v in x").unwrap();
        let ab = TypeExpr::tensor(at("A"), at("B"));
        let expected = Term::lam(
            "v",
            ab.clone(),
            Term::let_pair(
                "x",
                at("A"),
                "y",
                at("B"),
                Term::var("v", ab),
                Term::var("x", at("A")),
            ),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn application_is_left_associative() {
        let ctx = TypedVarSet::from([
            ("f".to_string(), parse_type("A -> B -> C").unwrap()),
            ("x".to_string(), at("A")),
            ("y".to_string(), at("B")),
        ]);
        let t = parse_term_in(&ctx, "f x y").unwrap();
        let expected = Term::app(
            Term::app(Term::var("f", ctx["f"].clone()), Term::var("x", at("A"))),
            Term::var("y", at("B")),
        );
        assert_eq!(t, expected);
        assert!(matches!(
            parse_untyped("f x y").unwrap(),
            UntypedTerm::App(_, _)
        ));
    }

    #[test]
    fn comments_and_ascriptions() {
        let t = parse_term("-- a comment\n(g : A -> B) (x : A) -- trailing\n").unwrap();
        assert!(matches!(t, Term::App { .. }));
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_term("\\x:A. (x").unwrap_err();
        assert_eq!(e.span.line, 1);
        assert!(e.expected.iter().any(|s| s.contains(')')));

        let e = parse_term("let <x:A, x:B> = (v : A*B) in x").unwrap_err();
        assert!(e.message.contains("duplicate binder"));

        let e = parse_term("break (x : A) as <f, f> @ B in f").unwrap_err();
        assert!(e.message.contains("duplicate binder"));

        let e = parse_term("\\x:A.\n  y").unwrap_err();
        assert_eq!((e.span.line, e.span.column), (2, 3));
        assert!(e.message.contains("ascription"));

        let e = parse_type("A -> ").unwrap_err();
        assert!(!e.expected.is_empty());

        assert!(parse_term("\\x:A. x $").is_err());
    }

    #[test]
    fn wildcard_binder() {
        let t = parse_term("\\_:B. (s : A)").unwrap();
        assert!(alpha_eq(
            &t,
            &Term::lam(WILDCARD, at("B"), Term::var("s", at("A")))
        ));
    }

    #[test]
    fn binders_are_renamed_apart() {
        let t = parse_term("\\x:A. <x, \\x:B. x>").unwrap();
        match t {
            Term::Lam { body, .. } => match *body {
                Term::Pair { second, .. } => match *second {
                    Term::Lam { binder, .. } => assert_eq!(binder, "x'"),
                    other => panic!("{other:?}"),
                },
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }
}
