mod common;

use common::*;
use jacal::algebra::Field;
use jacal::differents::jacobian_ideal;
use jacal::groebner::Ideal;
use jacal::homology::FPModule;
use jacal::verify::{
    annihilation_exponent, decomposition_check, run_example_corpus, theorem2_hypotheses, AnnihilationExponent,
    DecompositionClaim, Outcome, ProbeCorpus, DEFAULT_S_MAX, LOCAL_DEPTH_NOTE,
};
use jacal::dsl::ExecOptions;

#[test]
fn corpus_passes_and_records_the_kappa_verdict() {
    let report = run_example_corpus(&ExecOptions::default());
    assert!(report.all_passed(), "{report}");
    assert_eq!(report.exit_code(), 0);
    let info: Vec<_> = report.lines.iter().filter(|l| l.outcome == Outcome::Info).collect();
    assert_eq!(info.len(), 1);
    assert_eq!(info[0].got, "false");
    for fixture in ["ex51", "ex52", "ex53", "ex54"] {
        assert!(report.lines.iter().any(|l| l.fixture == fixture));
    }
    let text = report.to_string();
    assert!(text.lines().all(|l| l.starts_with("PASS ") || l.starts_with("INFO ")));
}

#[test]
fn ideal_action_is_coherent() {
    // If every generator of J kills E, so do random elements of J.
    let mut rng = rng(91);
    let r = ring(Field::Rational, &["x", "y"], &["x^5", "x*y"]);
    let m = FPModule::cyclic(&r.parse_ideal(&["x^3"]).unwrap());
    let e = jacal::homology::ext_module(2, &m, &m).unwrap();
    let j = r.parse_ideal(&["y", "x^2"]).unwrap();
    assert!(j.generators().iter().all(|g| e.acts_zero(g).unwrap()));
    for _ in 0..20 {
        let el = j
            .generators()
            .iter()
            .map(|g| g * &random_poly(&mut rng, r.ambient(), 3, 3))
            .fold(r.ambient().zero(), |acc, p| &acc + &p);
        assert!(e.acts_zero(&el).unwrap(), "{el}");
    }
}

#[test]
fn exponent_is_monotone() {
    let r = ring(Field::Rational, &["x", "y"], &["x^5", "x*y"]);
    let mut corpus = ProbeCorpus::standard(&r);
    corpus.add_module("M", FPModule::cyclic(&r.parse_ideal(&["x^3"]).unwrap())).unwrap();
    let j = jacobian_ideal(&r).unwrap();
    let AnnihilationExponent::Found(s) = annihilation_exponent(&r, &j, &corpus, DEFAULT_S_MAX).unwrap() else {
        panic!("no exponent");
    };
    let exts = corpus.ext_modules(2).unwrap();
    for t in [s, s + 1, s + 2] {
        let power = j.power(t as i64).unwrap();
        assert!(exts.iter().all(|e| power.generators().iter().all(|g| e.acts_zero(g).unwrap())), "J^{t}");
    }
    let below = j.power(s as i64 - 1).unwrap();
    assert!(!exts.iter().all(|e| below.generators().iter().all(|g| e.acts_zero(g).unwrap())));
    assert_eq!(annihilation_exponent(&r, &j, &corpus, 1).unwrap(), AnnihilationExponent::Exceeded(1));
}

#[test]
fn cohen_macaulay_equidimensional_rings_need_exponent_one() {
    let cases: [(&[&str], &[&str], Vec<&[&str]>); 3] = [
        (&["x", "y"], &["x^2"], vec![&["x"]]),
        (&["x", "y"], &["x^2 - y^2"], vec![&["x - y"], &["x + y"]]),
        (&["x", "y", "z"], &["x*y"], vec![&["x"], &["y"]]),
    ];
    for (vars, rels, parts) in cases {
        let r = ring(Field::Rational, vars, rels);
        let primes: Vec<Ideal> = parts.iter().map(|g| r.parse_ideal(g).unwrap()).collect();
        let claim = DecompositionClaim::new(Ideal::zero(&r), primes.clone()).unwrap();
        let rep = theorem2_hypotheses(&r, &claim, &primes).unwrap();
        assert_eq!(rep.note, LOCAL_DEPTH_NOTE);
        assert!(rep.equidimensional && rep.global_depth_condition && rep.cohen_macaulay, "{r}: {rep}");
        let j = jacobian_ideal(&r).unwrap();
        let s = annihilation_exponent(&r, &j, &ProbeCorpus::standard(&r), DEFAULT_S_MAX).unwrap();
        assert_eq!(s, AnnihilationExponent::Found(1), "{r}");
    }
}

#[test]
fn decomposition_over_the_rationals() {
    let r = ring(Field::Rational, &["x", "y", "z"], &["x*y", "x^5 - x*z^4"]);
    let parts: [&[&str]; 4] = [&["x"], &["x + z", "y"], &["x - z", "y"], &["x^2 + z^2", "y"]];
    let comps: Vec<Ideal> = parts.iter().map(|g| r.parse_ideal(g).unwrap()).collect();
    let claim = DecompositionClaim::new(Ideal::zero(&r), comps.clone()).unwrap();
    assert!(decomposition_check(&claim).unwrap());
    // Oracle: xy and x^5 - xz^4 lie in each component (sampled membership).
    for c in &comps {
        for f in ["x*y", "x^5 - x*z^4"] {
            assert!(member_up_to(&poly(&r, f), &c.lifted_basis(), 5), "{f} in {c:?}");
        }
    }
    let wrong = DecompositionClaim::new(Ideal::zero(&r), comps[..3].to_vec()).unwrap();
    assert!(!decomposition_check(&wrong).unwrap());
    let x = r.parse_ideal(&["x"]).unwrap();
    assert!(decomposition_check(&DecompositionClaim::new(x.clone(), vec![x]).unwrap()).unwrap());
}

#[test]
fn theorem2_rejects_an_empty_prime_list() {
    let r = ring(Field::Rational, &["x"], &[]);
    let claim = DecompositionClaim::new(Ideal::zero(&r), vec![]).unwrap();
    assert!(theorem2_hypotheses(&r, &claim, &[]).is_err());
}
