//! Normalization with traces: the divisibility chain and the identity built
//! from `break`.

use bcalc::library::{divisibility_terms, identity_break};
use bcalc::reduction::Reducer;
use bcalc::{check, parse_term, print_term, Term, TypeExpr};

fn main() {
    let (a, b) = (TypeExpr::atom("A"), TypeExpr::atom("B"));
    let (t, u) = divisibility_terms(&a, &b);
    println!("t : {}\n  {}", check(&t).unwrap(), print_term(&t));
    println!("u : {}\n  {}", check(&u).unwrap(), print_term(&u));

    let (nf, trace) = Reducer::default().normalize(&u, 1000).unwrap();
    print!("\n{trace}");
    println!("normal form: {}", print_term(&nf));

    let s = parse_term("\\p:A * B. let <x:A, y:B> = p in <y, x>").unwrap();
    let ty = check(&s).unwrap();
    let applied = Term::app(identity_break(&ty), s);
    let (nf, trace) = Reducer::default().normalize(&applied, 1000).unwrap();
    println!("\n{}", print_term(&applied));
    print!("{trace}");
    println!("normal form: {}", print_term(&nf));
}
