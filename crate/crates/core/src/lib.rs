//! The affine lambda calculus with pairs and `break`: syntax, typing,
//! reduction, translation into the plain pair calculus, a library of logical
//! terms, and an affine sequent calculus with cut elimination.

pub mod cli;
pub mod critical;
pub mod gen;
pub mod lambda_pair;
pub mod library;
pub mod parse;
pub mod print;
pub mod reduction;
pub mod sequent;
pub mod syntax;
pub mod typing;

pub use parse::{parse_term, parse_type, parse_untyped};
pub use print::{print_term, print_type};
pub use syntax::{Path, Term, TypeExpr};
pub use typing::{check, erase, infer_principal};
