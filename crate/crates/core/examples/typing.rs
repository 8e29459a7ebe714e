//! Type checking, affinity, and principal types.

use bcalc::library::{axiom_term, AxiomId};
use bcalc::{check, erase, infer_principal, parse_term, parse_untyped, print_term, TypeExpr};

fn main() {
    let (a, b, c) = (
        TypeExpr::atom("A"),
        TypeExpr::atom("B"),
        TypeExpr::atom("C"),
    );
    for id in AxiomId::ALL {
        let t = axiom_term(id, &a, &b, &c);
        println!("{id:>4}  {}", print_term(&t));
        println!("      : {}", check(&t).expect("axiom terms are typed"));
    }

    // Contraction is rejected.
    let dup = parse_term("\\x:A. <x, x>").unwrap();
    println!("\n{}\n  {}", print_term(&dup), check(&dup).unwrap_err());

    let b4 = axiom_term(AxiomId::B4, &a, &b, &c);
    println!("\nerased B4: {}", erase(&b4));
    println!("principal: {}", infer_principal(&erase(&b4)).unwrap());

    let u = parse_untyped("\\x. break x as <phi, f> in phi f").unwrap();
    println!("{u}\n  : {}", infer_principal(&u).unwrap());
}
