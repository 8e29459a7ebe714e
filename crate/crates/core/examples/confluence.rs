//! Critical pairs rejoin; admitting b-l-conv breaks confluence.

use bcalc::critical::{critical_pairs, overlapping_redexes, rejoins};
use bcalc::reduction::Reducer;
use bcalc::{parse_term, print_term};

fn main() {
    let red = Reducer::default();
    for cp in critical_pairs() {
        let (r1, r2) = overlapping_redexes(&red, &cp).unwrap();
        let ok = rejoins(&red, &cp, 2).unwrap();
        println!(
            "{:>9} v. {:<9} ({r1}; {r2}) rejoins: {ok}",
            cp.left, cp.right
        );
    }

    let w =
        parse_term("break (let <x:X, y:Y> = (z : X * Y) in x) as <phi, f> @ B in phi (g : X -> B)")
            .unwrap();
    println!("\n{}", print_term(&w));
    for (label, r) in [
        ("standard", Reducer::default()),
        ("with b-l-conv", Reducer::experimental()),
    ] {
        let nfs = r.all_normal_forms(&w, 1000).unwrap();
        println!("{label}: {} normal form(s)", nfs.len());
        for n in nfs {
            println!("  {}", print_term(&n));
        }
    }
}
