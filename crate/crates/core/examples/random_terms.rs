//! Seeded random terms: types, normal forms, and the termination measure.

use bcalc::gen::{GenConfig, TermGen};
use bcalc::reduction::{measure, Reducer};
use bcalc::{check, print_term};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let mut g = TermGen::new(seed, GenConfig::default());
    for _ in 0..5 {
        let t = g.typed_term();
        let (nf, trace) = Reducer::default().normalize(&t, 100_000).unwrap();
        println!("{}\n  : {}", print_term(&t), check(&t).unwrap());
        println!("  measure {:?}", measure(&t).unwrap());
        println!("  {} steps to {}\n", trace.len(), print_term(&nf));
    }
    println!("closed normal: {}", print_term(&g.closed_normal_term()));
}
