//! Every named term in the library, with its type.

use bcalc::library::{catalog_term, CATALOG};
use bcalc::{check, print_term, TypeExpr};

fn main() {
    let (a, b, c) = (
        TypeExpr::atom("A"),
        TypeExpr::atom("B"),
        TypeExpr::atom("C"),
    );
    for name in CATALOG {
        let t = catalog_term(name, &a, &b, &c).unwrap();
        println!("{name}\n  {}\n  : {}\n", print_term(&t), check(&t).unwrap());
    }
}
