mod common;

use common::*;
use jacal::algebra::{Field, Polynomial};
use jacal::groebner::Ideal;
use jacal::homology::{ext_module, free_resolution, koszul_homology, FPModule, KoszulComplex};
use rand::Rng;

#[test]
fn oracle_sanity() {
    // Ext^1_{k[x]}(k, k) is k in degree -1 and nothing else.
    let r = ring(Field::Rational, &["x"], &[]);
    let k = FPModule::residue_field(&r);
    let res = free_resolution(&k, Some(2)).unwrap();
    let target = GradedModule::new(r.ambient(), vec![0], &[], &[vec![poly(&r, "x")]]);
    let ext = GradedExt {
        maps: res.maps(),
        degrees: resolution_degrees(vec![0], res.maps()),
        target: &target,
        n: 1,
    };
    let dims: Vec<usize> = (-3..=3).map(|e| ext.dim(e)).collect();
    assert_eq!(dims, [0, 0, 1, 0, 0, 0, 0]);

    let a = r.ambient();
    assert!(member_up_to(&poly(&r, "x^3 - x"), &[poly(&r, "x^2 - 1")], 3));
    assert!(!member_up_to(&poly(&r, "x"), &[poly(&r, "x^2 - 1")], 6));
    let syz = syzygies_up_to(&[a.var(0), a.var(0)], 0);
    assert_eq!(syz.len(), 1);
}

#[test]
fn ext_hilbert_functions_match_the_oracle() {
    let r = ring(Field::Rational, &["x", "y"], &["x^5", "x*y"]);
    let m = FPModule::cyclic(&r.parse_ideal(&["x^3"]).unwrap());
    let res = free_resolution(&m, Some(4)).unwrap();
    let target = GradedModule::new(r.ambient(), vec![0], r.defining_generators(), &[vec![poly(&r, "x^3")]]);
    for n in 1..=3 {
        let oracle = GradedExt {
            maps: res.maps(),
            degrees: resolution_degrees(vec![0], res.maps()),
            target: &target,
            n,
        };
        let e = ext_module(n, &m, &m).unwrap();
        let got = e.hilbert_function(-8, 4).expect("graded");
        let want: Vec<usize> = (-8..=4).map(|d| oracle.dim(d)).collect();
        assert_eq!(got, want, "Ext^{n}(M, M)");
    }
}

#[test]
fn residue_field_ext_over_the_cross() {
    // Ext^n(k, k) over an artinian ring of embedding dimension 3.
    let r = ring(Field::Rational, &["x", "y", "z"], &["x^2 - y^2", "x^2 - z^2", "x*y", "x*z", "y*z"]);
    let k = FPModule::residue_field(&r);
    let res = free_resolution(&k, Some(3)).unwrap();
    let ids: Vec<Vec<Polynomial>> = ["x", "y", "z"].iter().map(|v| vec![poly(&r, v)]).collect();
    let target = GradedModule::new(r.ambient(), vec![0], r.defining_generators(), &ids);
    for n in 1..=2 {
        let oracle = GradedExt {
            maps: res.maps(),
            degrees: resolution_degrees(vec![0], res.maps()),
            target: &target,
            n,
        };
        let e = ext_module(n, &k, &k).unwrap();
        let got = e.hilbert_function(-4, 1).unwrap();
        let want: Vec<usize> = (-4..=1).map(|d| oracle.dim(d)).collect();
        assert_eq!(got, want, "Ext^{n}(k, k)");
    }
    assert_eq!(res.ranks()[..3], [1, 3, 8]);
}

#[test]
fn random_resolutions_are_exact() {
    let mut rng = rng(71);
    let r = ring(Field::Rational, &["x", "y", "z"], &[]);
    let a = r.ambient();
    for _ in 0..15 {
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let ms = monomials_of_degree(3, rng.gen_range(1..=3));
                a.monomial(ms[rng.gen_range(0..ms.len())].clone(), a.field().one())
            })
            .collect();
        let m = FPModule::cyclic(&Ideal::new(&r, gens.clone()));
        let res = free_resolution(&m, None).unwrap();
        assert!(res.is_complete());
        assert!(res.length() <= 3, "Hilbert syzygy bound for {gens:?}");
        assert!(res.verify().unwrap().ok());
    }
}

#[test]
fn koszul_differentials_square_to_zero() {
    let mut rng = rng(72);
    let r = ring(Field::Rational, &["x", "y", "z"], &["x*y - z^2"]);
    for _ in 0..10 {
        let seq: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, r.ambient(), 2, 2)).collect();
        let kc = KoszulComplex::new(&r, seq).unwrap();
        for w in kc.maps().windows(2) {
            let prod = w[0].mul(&w[1]).unwrap();
            assert!(prod.columns().iter().flatten().all(|p| r.reduce(p).is_zero()));
        }
    }
}

#[test]
fn koszul_homology_detects_regular_sequences() {
    let r = ring(Field::Rational, &["x", "y", "z"], &["x*y - z^2"]);
    let seq = [poly(&r, "x"), poly(&r, "y")];
    assert!(koszul_homology(&seq, &r, 1).unwrap().is_zero());
    let seq = [poly(&r, "x"), poly(&r, "z")];
    assert!(!koszul_homology(&seq, &r, 1).unwrap().is_zero());
}
