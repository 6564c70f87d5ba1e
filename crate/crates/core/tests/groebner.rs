mod common;

use common::*;
use jacal::algebra::{Field, MonomialOrder, PolyRing, Polynomial};
use jacal::groebner::{Dimension, Ideal, QuotientRing};
use rand::Rng;

fn random_ideal(rng: &mut impl Rng, r: &std::sync::Arc<QuotientRing>) -> Ideal {
    let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
        .map(|_| random_poly(rng, r.ambient(), 2, 3))
        .collect();
    Ideal::new(r, gens)
}

#[test]
fn intersection_and_colon_laws() {
    let mut rng = rng(61);
    let a = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
    let r = QuotientRing::polynomial(&a);
    for _ in 0..30 {
        let j = random_ideal(&mut rng, &r);
        let k = random_ideal(&mut rng, &r);
        let both = j.intersect(&k).unwrap();
        assert!(both.is_subset_of(&j).unwrap() && both.is_subset_of(&k).unwrap());
        let prod = j.product(&k).unwrap();
        assert!(prod.is_subset_of(&both).unwrap(), "JK inside J ∩ K");
        let f = random_poly(&mut rng, &a, 2, 2);
        if f.is_zero() {
            continue;
        }
        let colon = j.colon(&Ideal::new(&r, vec![f.clone()])).unwrap();
        assert!(j.is_subset_of(&colon).unwrap());
        for g in colon.generators() {
            assert!(j.contains(&(g * &f)).unwrap(), "(J : f) f inside J");
        }
        // Elements of J ∩ (f) are multiples of f that land in J.
        for g in j.intersect(&Ideal::new(&r, vec![f.clone()])).unwrap().basis() {
            assert!(member_up_to(&g, std::slice::from_ref(&f), g.total_degree().unwrap()) || remainder(&g, std::slice::from_ref(&f)).is_zero());
        }
    }
}

#[test]
fn colon_in_a_quotient_ring() {
    // In k[x,y]/(x^5, xy): (0 : x) = (x^4, y), (0 : y) = (x).
    let r = ring(Field::Rational, &["x", "y"], &["x^5", "x*y"]);
    let zero = Ideal::zero(&r);
    let want = r.parse_ideal(&["x^4", "y"]).unwrap();
    assert!(zero.colon(&r.parse_ideal(&["x"]).unwrap()).unwrap().equals(&want).unwrap());
    let want = r.parse_ideal(&["x"]).unwrap();
    assert!(zero.colon(&r.parse_ideal(&["y"]).unwrap()).unwrap().equals(&want).unwrap());
}

#[test]
fn elimination_and_radicals() {
    let r = ring(Field::Rational, &["t", "x", "y"], &[]);
    let j = r.parse_ideal(&["x - t^2", "y - t^3"]).unwrap();
    let e = j.eliminate(&[1, 2]).unwrap();
    let want = r.parse_ideal(&["x^3 - y^2"]).unwrap();
    assert!(e.equals(&want).unwrap());

    let mut rng = rng(62);
    let r = ring(Field::prime(101).unwrap(), &["x", "y"], &[]);
    for _ in 0..20 {
        let f = random_poly(&mut rng, r.ambient(), 2, 3);
        let k = rng.gen_range(1..=3);
        let j = Ideal::new(&r, vec![f.pow(k), random_poly(&mut rng, r.ambient(), 2, 2) * f.pow(k)]);
        assert!(j.radical_contains(&f).unwrap());
    }
    let j = r.parse_ideal(&["x^2", "y^3"]).unwrap();
    assert!(j.radical_contains(&r.ambient().parse("x + y").unwrap()).unwrap());
    assert!(!j.radical_contains(&r.ambient().parse("x + 1").unwrap()).unwrap());
}

#[test]
fn dimension_of_monomial_ideals_against_standard_monomials() {
    let r = ring(Field::Rational, &["x", "y", "z"], &["x^2", "y^3", "x*z^2", "z^4"]);
    assert_eq!(r.krull_dimension(), Dimension::Finite(0));
    let count = monomials_up_to(3, 12)
        .into_iter()
        .filter(|m| {
            let e = m.exponents();
            e[0] < 2 && e[1] < 3 && !(e[0] >= 1 && e[2] >= 2) && e[2] < 4
        })
        .count();
    assert_eq!(r.vector_space_dimension(), Some(count));
    let r = ring(Field::Rational, &["x", "y", "z"], &["x*y", "x*z"]);
    assert_eq!(r.krull_dimension(), Dimension::Finite(2));
    assert_eq!(r.vector_space_dimension(), None);
}

#[test]
fn lex_and_grevlex_bases_generate_the_same_ideal() {
    let mut rng = rng(63);
    for _ in 0..25 {
        let g = PolyRing::new(Field::Rational, ["x", "y", "z"], MonomialOrder::GrevLex);
        let l = g.with_order(MonomialOrder::Lex);
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &g, 2, 2)).collect();
        let bg = Ideal::new(&QuotientRing::polynomial(&g), gens.clone()).basis();
        let bl = Ideal::new(&QuotientRing::polynomial(&l), gens.iter().map(|p| p.reorder(&l)).collect()).basis();
        assert!(buchberger_criterion(&bg) && buchberger_criterion(&bl));
        for p in &bg {
            assert!(remainder(&p.reorder(&l), &bl).is_zero());
        }
        for p in &bl {
            assert!(remainder(&p.reorder(&g), &bg).is_zero());
        }
    }
}
