//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use bcalc::critical::{critical_pairs, rejoins};
use bcalc::gen::{GenConfig, TermGen};
use bcalc::lambda_pair::{
    check_step_mapping, check_substitution_lemma, MappingFailure, StepMapping,
};
use bcalc::library::{axiom_term, divisibility_terms, homomorphism_term, identity_break, AxiomId};
use bcalc::reduction::{is_silent, measure, Reducer, RuleName, Strategy};
use bcalc::sequent::{
    brk_via_cut_empty, brk_via_cut_superfluous, check_derivation, eliminate_cuts, nd_to_sequent,
    search_cut_free, weaken, Sequent, Superfluous,
};
use bcalc::syntax::{
    affine_check, alpha_eq, alpha_key, free_vars, is_free_in, ks_types, term_size,
};
use bcalc::{check, parse_term, print_term, Term, TypeExpr};
use rand::seq::IteratorRandom;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn at(s: &str) -> TypeExpr {
    TypeExpr::atom(s)
}
fn arr(a: TypeExpr, b: TypeExpr) -> TypeExpr {
    TypeExpr::arrow(a, b)
}
fn ten(a: TypeExpr, b: TypeExpr) -> TypeExpr {
    TypeExpr::tensor(a, b)
}

fn terms(seed: u64, n: usize, size: usize) -> Vec<Term> {
    let mut g = TermGen::new(
        seed,
        GenConfig {
            size,
            ..GenConfig::default()
        },
    );
    (0..n).map(|_| g.typed_term()).collect()
}

fn sn_budget(t: &Term) -> usize {
    10usize.saturating_mul(4usize.saturating_pow(term_size(t) as u32))
}

fn axioms() -> Outcome {
    let start = Instant::now();
    let (a, b, c) = (at("A"), at("B"), at("C"));
    // Formulas as displayed, built without the parser.
    let expected = [
        (
            AxiomId::B1,
            arr(
                arr(a.clone(), b.clone()),
                arr(arr(b.clone(), c.clone()), arr(a.clone(), c.clone())),
            ),
        ),
        (AxiomId::B2, arr(ten(a.clone(), b.clone()), a.clone())),
        (
            AxiomId::B3,
            arr(ten(a.clone(), b.clone()), ten(b.clone(), a.clone())),
        ),
        (
            AxiomId::B4,
            arr(
                ten(a.clone(), arr(a.clone(), b.clone())),
                ten(b.clone(), arr(b.clone(), a.clone())),
            ),
        ),
        (
            AxiomId::B5a,
            arr(
                arr(ten(a.clone(), b.clone()), c.clone()),
                arr(a.clone(), arr(b.clone(), c.clone())),
            ),
        ),
        (
            AxiomId::B5b,
            arr(
                arr(a.clone(), arr(b.clone(), c.clone())),
                arr(ten(a.clone(), b.clone()), c.clone()),
            ),
        ),
    ];
    for (id, want) in expected {
        let got = check(&axiom_term(id, &a, &b, &c)).map_err(|e| format!("{id}: {e}"))?;
        if got != want {
            return Err(format!("{id}: expected {want}, got {got}"));
        }
    }
    let el = start.elapsed();
    if el >= Duration::from_secs(1) {
        return Err(format!("took {el:?}"));
    }
    Ok(format!("6/6 exact types in {el:?}"))
}

fn divisibility_chain() -> Outcome {
    let (_, u) = divisibility_terms(&at("A"), &at("B"));
    let (nf, trace) = Reducer::default()
        .normalize(&u, 100_000)
        .map_err(|e| e.to_string())?;
    let want = parse_term("\\x':A. \\g':A -> B. g' x'").unwrap();
    let rules: Vec<&str> = trace.rules().iter().map(|r| r.as_str()).collect();
    let expected = ["beta", "l-b-conv", "l-conv", "b-conv", "beta", "beta"];
    let detail = format!(
        "normal form {}, trace [{}]",
        print_term(&nf),
        rules.join(", ")
    );
    if !alpha_eq(&nf, &want) {
        return Err(format!("wrong normal form: {detail}"));
    }
    if rules != expected {
        return Err(format!(
            "trace differs from [{}]: {detail}",
            expected.join(", ")
        ));
    }
    Ok(detail)
}

fn identity() -> Outcome {
    let mut g = TermGen::new(3, GenConfig::default());
    let mut ok = 0;
    for _ in 0..100 {
        let s = g.closed_normal_term();
        let a = check(&s).map_err(|e| e.to_string())?;
        let t = Term::app(identity_break(&a), s.clone());
        let (nf, _) = Reducer::default()
            .normalize(&t, 100_000)
            .map_err(|e| e.to_string())?;
        if alpha_eq(&nf, &s) {
            ok += 1;
        } else {
            return Err(format!(
                "{} normalizes to {}",
                print_term(&t),
                print_term(&nf)
            ));
        }
    }
    Ok(format!("{ok}/100"))
}

fn subject_reduction() -> Outcome {
    let start = Instant::now();
    let red = Reducer::default();
    let mut steps = 0;
    for t in terms(4, 1000, 40) {
        let ty = check(&t).map_err(|e| format!("generator produced ill-typed term: {e}"))?;
        for r in red.find_redexes(&t) {
            let u = red.apply_step(&t, &r).map_err(|e| e.to_string())?;
            steps += 1;
            match check(&u) {
                Ok(ty2) if ty2 == ty => {}
                other => {
                    return Err(format!(
                        "{r} on {} gives {} : {other:?}",
                        print_term(&t),
                        print_term(&u)
                    ))
                }
            }
        }
    }
    let el = start.elapsed();
    if el >= Duration::from_secs(60) {
        return Err(format!("took {el:?}"));
    }
    Ok(format!(
        "1000 terms, {steps} one-step reducts, 0 failures, {el:?}"
    ))
}

fn measured_step(t: &Term, r: &bcalc::reduction::Redex) -> Result<bool, String> {
    Ok(match r.rule {
        RuleName::Beta | RuleName::BLConv => false,
        RuleName::LConv | RuleName::BConv => is_silent(t, r).map_err(|e| e.to_string())?,
        _ => true,
    })
}

fn strong_normalization() -> Outcome {
    let red = Reducer::default();
    let mut checked = 0;
    for t in terms(5, 1000, 40) {
        let (_, trace) = red
            .normalize(&t, sn_budget(&t))
            .map_err(|e| format!("{}: {e}", print_term(&t)))?;
        let mut pairs: Vec<(Term, bcalc::reduction::Redex)> = red
            .find_redexes(&t)
            .into_iter()
            .map(|r| (t.clone(), r))
            .collect();
        for s in &trace.steps {
            pairs.push((
                s.before.clone(),
                bcalc::reduction::Redex {
                    path: s.path.clone(),
                    rule: s.rule,
                },
            ));
        }
        for (before, r) in pairs {
            if !measured_step(&before, &r)? {
                continue;
            }
            let after = red.apply_step(&before, &r).map_err(|e| e.to_string())?;
            let (m0, m1) = (
                measure(&before).map_err(|e| e.to_string())?,
                measure(&after).map_err(|e| e.to_string())?,
            );
            checked += 1;
            if m1 >= m0 {
                return Err(format!("{r} on {}: {m0:?} to {m1:?}", print_term(&before)));
            }
        }
    }
    Ok(format!(
        "1000 terms normalized, {checked} silent/permuting steps all decrease"
    ))
}

fn church_rosser() -> Outcome {
    let strategies = [
        Reducer::default(),
        Reducer::default().with_strategy(Strategy::Last),
    ];
    for t in terms(6, 500, 40) {
        let mut classes = HashSet::new();
        for u in strategies[0]
            .reducts_one_step(&t)
            .map_err(|e| e.to_string())?
        {
            for red in &strategies {
                let (nf, _) = red
                    .normalize(&u, sn_budget(&u))
                    .map_err(|e| e.to_string())?;
                classes.insert(alpha_key(&nf));
            }
        }
        if classes.len() > 1 {
            return Err(format!(
                "{} has {} normal forms",
                print_term(&t),
                classes.len()
            ));
        }
    }
    let red = Reducer::default();
    for cp in critical_pairs() {
        if !rejoins(&red, &cp, 2).map_err(|e| e.to_string())? {
            return Err(format!(
                "{} v. {} does not rejoin in 2 steps",
                cp.left, cp.right
            ));
        }
    }
    Ok("500 terms confluent under both strategies; 7/7 critical pairs rejoin".into())
}

fn translation() -> Outcome {
    let mut g = TermGen::new(
        7,
        GenConfig {
            size: 30,
            ..GenConfig::default()
        },
    );
    let mut triples = 0;
    while triples < 1000 {
        let s = g.typed_term();
        let fv = free_vars(&s).unwrap();
        let Some((x, ty)) = fv.into_iter().choose(g.rng()) else {
            continue;
        };
        let t = g.term_of(&ty, 8);
        if !check_substitution_lemma(&s, &t, &x).map_err(|e| e.to_string())? {
            return Err(format!(
                "substitution lemma fails for s = {}, x = {x}, t = {}",
                print_term(&s),
                print_term(&t)
            ));
        }
        triples += 1;
    }
    let red = Reducer::default();
    let (mut reduces, mut equal) = (0, 0);
    let mut failures: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for t in terms(8, 1000, 30) {
        for r in red.find_redexes(&t) {
            match check_step_mapping(&red, &t, &r) {
                Ok(StepMapping::Reduces(_)) => reduces += 1,
                Ok(StepMapping::Equal) => equal += 1,
                Err(e) => {
                    let kind = match &e {
                        MappingFailure::ErasedRedex { .. } => "erased redex",
                        MappingFailure::NotReachable { .. } => "not reachable",
                        MappingFailure::NotEqual { .. } => "not equal",
                        _ => "error",
                    };
                    let entry = failures
                        .entry(kind.to_string())
                        .or_insert_with(|| (0, format!("{e} in {}", print_term(&t))));
                    entry.0 += 1;
                }
            }
        }
    }
    let summary =
        format!("1000/1000 substitution triples; step mapping: {reduces} reduce, {equal} equal");
    if failures.is_empty() {
        Ok(summary)
    } else {
        let detail: Vec<String> = failures
            .iter()
            .map(|(k, (n, ex))| format!("{n} {k} (e.g. {ex})"))
            .collect();
        Err(format!("{summary}; failures: {}", detail.join("; ")))
    }
}

fn non_confluence() -> Outcome {
    let w =
        parse_term("break (let <x:X, y:Y> = (z : X * Y) in x) as <phi, f> @ B in phi (g : X -> B)")
            .unwrap();
    let with = Reducer::experimental()
        .all_normal_forms(&w, 10_000)
        .map_err(|e| e.to_string())?;
    let without = Reducer::default()
        .all_normal_forms(&w, 10_000)
        .map_err(|e| e.to_string())?;
    let shown: Vec<String> = with.iter().map(print_term).collect();
    if with.len() >= 2 && without.len() == 1 {
        Ok(format!(
            "{} normal forms with b-l-conv ({}), 1 without",
            with.len(),
            shown.join(" | ")
        ))
    } else {
        Err(format!("{} with, {} without", with.len(), without.len()))
    }
}

fn homomorphism() -> Outcome {
    let (a, b, c) = (at("A"), at("B"), at("C"));
    let h = homomorphism_term(&a, &b, &c);
    let want = arr(
        arr(a.clone(), ten(a.clone(), a.clone())),
        arr(
            arr(a.clone(), ten(b.clone(), c.clone())),
            ten(arr(a.clone(), b.clone()), arr(a.clone(), c.clone())),
        ),
    );
    let got = check(&h).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!("type {got}, expected {want}"));
    }
    if !affine_check(&h) {
        return Err("not affine".into());
    }
    let (nf, trace) = Reducer::default()
        .normalize(&h, 100_000)
        .map_err(|e| e.to_string())?;
    let nt = check(&nf).map_err(|e| e.to_string())?;
    if nt != want {
        return Err(format!("normal form has type {nt}"));
    }
    Ok(format!(
        "type exact, affine, normal in {} steps",
        trace.len()
    ))
}

/// Applies the matching break-from-cut construction to one break redex.
fn brk_by_cut(t: &Term) -> Result<Option<&'static str>, String> {
    let Term::Break {
        scrutinee,
        phi,
        f,
        residue,
        body,
    } = t
    else {
        return Ok(None);
    };
    let err = |e: bcalc::sequent::SequentError| e.to_string();
    let d_a = nd_to_sequent(scrutinee).map_err(err)?;
    let d_c = nd_to_sequent(body).map_err(err)?;
    let a = check(scrutinee).map_err(|e| e.to_string())?;
    let (_, s) = ks_types(&a, residue);
    let (uses_phi, uses_f) = (is_free_in(phi, body), is_free_in(f, body));
    let closed = free_vars(scrutinee).unwrap().is_empty();
    let (d, which) = if !uses_phi {
        let d_c = if uses_f {
            d_c
        } else {
            weaken(d_c, std::slice::from_ref(&s))
        };
        (
            brk_via_cut_superfluous(&d_a, &d_c, residue, Superfluous::K).map_err(err)?,
            "superfluous",
        )
    } else if !uses_f {
        (
            brk_via_cut_superfluous(&d_a, &d_c, residue, Superfluous::S).map_err(err)?,
            "superfluous",
        )
    } else if closed {
        (
            brk_via_cut_empty(&d_a, &d_c, residue).map_err(err)?,
            "empty",
        )
    } else {
        return Ok(None);
    };
    let end = check_derivation(&d).map_err(err)?;
    let expected = nd_to_sequent(t).map_err(err)?.conclusion;
    if end != expected {
        return Err(format!(
            "construction proves {end}, break proves {expected}"
        ));
    }
    Ok(Some(which))
}

fn subterms(t: &Term, out: &mut Vec<Term>) {
    out.push(t.clone());
    for c in t.children() {
        subterms(c, out);
    }
}

fn sequents() -> Outcome {
    let mut derivations = 0;
    let mut constructions: BTreeMap<&str, usize> = BTreeMap::new();
    for t in terms(10, 300, 30) {
        let d = nd_to_sequent(&t).map_err(|e| e.to_string())?;
        let e = eliminate_cuts(&d).map_err(|e| format!("{}: {e}", print_term(&t)))?;
        let end = check_derivation(&e).map_err(|e| e.to_string())?;
        if !e.is_cut_free() || end != d.conclusion {
            return Err(format!("bad cut elimination for {}", print_term(&t)));
        }
        derivations += 1;
        let mut subs = Vec::new();
        subterms(&t, &mut subs);
        for s in &subs {
            if let Some(which) = brk_by_cut(s)? {
                *constructions.entry(which).or_default() += 1;
            }
        }
    }
    // Both constructions on fixed instances, closed scrutinee `\x:A. x`.
    let mut fixed = HashSet::new();
    for body in [
        "<(phi : ((A -> A) -> B) -> B) (g : (A -> A) -> B), (f : B -> A -> A)>",
        "(f : B -> A -> A) (b : B)",
        "(phi : ((A -> A) -> B) -> B) (g : (A -> A) -> B)",
    ] {
        let t = parse_term(&format!("break \\x:A. x as <phi, f> @ B in {body}")).unwrap();
        match brk_by_cut(&t)? {
            Some(which) => fixed.insert(which),
            None => return Err(format!("no construction applies to {body}")),
        };
    }
    if fixed.len() != 2 {
        return Err(format!("fixed instances exercised only {fixed:?}"));
    }
    let div = Sequent::new(
        vec![],
        arr(
            at("A"),
            arr(arr(at("A"), at("B")), ten(at("B"), arr(at("B"), at("A")))),
        ),
    );
    if let Some(d) = search_cut_free(&div, 8) {
        return Err(format!("search proved {div}:\n{d}"));
    }
    Ok(format!(
        "{derivations} derivations cut-free and re-checked; break-from-cut {constructions:?}; search fails on {div}"
    ))
}

fn round_trip() -> Outcome {
    for t in terms(11, 1000, 40) {
        let text = print_term(&t);
        let back = parse_term(&text).map_err(|e| format!("{text}: {e}"))?;
        if !alpha_eq(&back, &t) {
            return Err(format!("{text} reparses as {}", print_term(&back)));
        }
    }
    Ok("1000/1000".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("axiom inhabitation", axioms),
        ("divisibility chain", divisibility_chain),
        ("identity behaviour", identity),
        ("subject reduction", subject_reduction),
        ("strong normalization", strong_normalization),
        ("church-rosser", church_rosser),
        ("translation lemmas", translation),
        ("non-confluence with b-l-conv", non_confluence),
        ("homomorphism term", homomorphism),
        ("sequent calculus", sequents),
        ("round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {} {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {} {name}: {d}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
