//! Sequent derivations from terms, cut elimination, the break rule from cut,
//! and bounded proof search without break.

use bcalc::library::divisibility_terms;
use bcalc::sequent::{
    brk_via_cut_superfluous, check_derivation, eliminate_cuts, nd_to_sequent, parse_sequent,
    search_cut_free, Superfluous, DEFAULT_SEARCH_DEPTH,
};
use bcalc::{parse_term, TypeExpr};

fn main() {
    let (_, u) = divisibility_terms(&TypeExpr::atom("A"), &TypeExpr::atom("B"));
    let d = nd_to_sequent(&u).unwrap();
    println!(
        "from term: {} nodes, {} cuts",
        d.node_count(),
        d.count_rule("CUT")
    );
    let e = eliminate_cuts(&d).unwrap();
    println!(
        "cut-free:  {} nodes, {} breaks\n{e}\n",
        e.node_count(),
        e.count_rule("BRK")
    );

    // Only `f : B -> A` is used, so one cut replaces the break.
    let d_a = nd_to_sequent(&parse_term("(a : A)").unwrap()).unwrap();
    let d_c = nd_to_sequent(&parse_term("(f : B -> A) (b : B)").unwrap()).unwrap();
    let via_cut =
        brk_via_cut_superfluous(&d_a, &d_c, &TypeExpr::atom("B"), Superfluous::K).unwrap();
    println!(
        "break by cut: {}\n{via_cut}\n",
        check_derivation(&via_cut).unwrap()
    );

    for goal in ["A * B |- B * A", "|- A -> (A -> B) -> B * (B -> A)"] {
        let s = parse_sequent(goal).unwrap();
        match search_cut_free(&s, DEFAULT_SEARCH_DEPTH) {
            Some(d) => println!("{s}: found\n{d}"),
            None => println!("{s}: no derivation without cut or break"),
        }
    }
}
