//! The translation into the calculus with projections, and its two lemmas.

use bcalc::lambda_pair::{
    check_step_mapping, check_substitution_lemma, l_normalize, star_translate,
};
use bcalc::library::identity_break;
use bcalc::reduction::Reducer;
use bcalc::{parse_term, print_term, Term, TypeExpr};

fn main() {
    let id = identity_break(&TypeExpr::atom("A"));
    let img = star_translate(&id).unwrap();
    println!(
        "{}\n  * = {img}\n  normal: {}",
        print_term(&id),
        l_normalize(&img, 1000).unwrap()
    );

    let s = parse_term("break (y : C) as <phi, f> @ B in phi ((g : D -> C -> B) (x : D))").unwrap();
    let t = parse_term("(d : D)").unwrap();
    println!(
        "\nsubstitution commutes: {}",
        check_substitution_lemma(&s, &t, "x").unwrap()
    );

    let red = Reducer::default();
    let app = Term::app(id, parse_term("(a : A)").unwrap());
    let (_, trace) = red.normalize(&app, 100).unwrap();
    for step in &trace.steps {
        let r = bcalc::reduction::Redex {
            path: step.path.clone(),
            rule: step.rule,
        };
        let verdict = check_step_mapping(&red, &step.before, &r);
        println!("{} at {}: {verdict:?}", step.rule, step.path);
    }

    // A redex inside a scrutinee whose binders are both unused has no image.
    let erased = parse_term("let <x:A, y:B> = (\\q:A * B. q) (v : A * B) in (c : C)").unwrap();
    let r = red
        .find_redexes(&erased)
        .into_iter()
        .find(|r| !r.path.is_root())
        .unwrap();
    println!(
        "\n{}\n  {r}: {:?}",
        print_term(&erased),
        check_step_mapping(&red, &erased, &r)
    );
}
