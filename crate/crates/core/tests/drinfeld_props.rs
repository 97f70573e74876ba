use dqtwist::catalog::{abelian_plane, n2};
use dqtwist::drinfeld::{
    build_drinfeld_twist, classical_limit, gauge_transform, twist_axiom_check, twist_equivalence_solve, twisted_product,
    Equivalence, GaugeElement, LieAction, Twist,
};
use dqtwist::enveloping::PBWElement;
use dqtwist::exactalg::{monomials_up_to, q, HbarSeries, Poly};
use dqtwist::liecore::schouten_cybe;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gauge(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> GaugeElement {
    let mut s = PBWElement::one(n);
    for _ in 0..3 {
        let len = rng.gen_range(1..=2);
        let mut m: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dim)).collect();
        m.sort();
        s.add_term(m, &HbarSeries::monomial(q(rng.gen_range(-3..=3), rng.gen_range(1..=3)), rng.gen_range(1..=n), n));
    }
    GaugeElement::new(s).unwrap()
}

#[test]
fn constructed_twists_have_cybe_limits() {
    for sg in [abelian_plane(), n2()] {
        let f = build_drinfeld_twist(&sg, 2).unwrap();
        assert!(twist_axiom_check(&f).holds());
        let r = classical_limit(&f).unwrap();
        assert_eq!(r, sg.r_matrix());
        assert!(schouten_cybe(sg.algebra(), &r).is_zero());
    }
}

#[test]
fn gauge_orbits_preserve_axioms_and_are_solved() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for sg in [abelian_plane(), n2()] {
        let f = build_drinfeld_twist(&sg, 2).unwrap();
        for _ in 0..5 {
            let s = random_gauge(&mut rng, 2, 2);
            let fs = gauge_transform(&f, &s).unwrap();
            assert!(twist_axiom_check(&fs).holds());
            assert_eq!(classical_limit(&fs).unwrap(), classical_limit(&f).unwrap());
            match twist_equivalence_solve(&f, &fs).unwrap() {
                Equivalence::Equivalent(t) => assert_eq!(gauge_transform(&f, &t).unwrap().value(), fs.value()),
                other => panic!("coboundary pair not solved: {other:?}"),
            }
        }
    }
}

/// `a ⋆ b` for series arguments, by bilinearity over ℏ.
fn star_series(f: &Twist, act: &LieAction, a: &HbarSeries<Poly>, b: &HbarSeries<Poly>) -> HbarSeries<Poly> {
    let n = f.order();
    let mut out = HbarSeries::zero_like(&Poly::zero(act.nvars()), n);
    for (i, ai) in a.coeffs().iter().enumerate() {
        for (j, bj) in b.coeffs().iter().enumerate() {
            if i + j > n {
                continue;
            }
            out = out.add(&twisted_product(f, act, ai, bj).unwrap().value.shift(i + j));
        }
    }
    out
}

#[test]
fn twisted_products_are_associative() {
    let sg = abelian_plane();
    let f = build_drinfeld_twist(&sg, 2).unwrap().verified().unwrap();
    let act = LieAction::translation(sg.algebra().clone()).unwrap();
    let mons = monomials_up_to(2, 3);
    let s = |e: &Vec<u32>| HbarSeries::monomial(Poly::monomial(e.clone()), 0, 2);
    for a in &mons {
        for b in &mons {
            for c in &mons {
                if a.iter().chain(b).chain(c).sum::<u32>() > 3 {
                    continue;
                }
                let l = star_series(&f, &act, &star_series(&f, &act, &s(a), &s(b)), &s(c));
                let r = star_series(&f, &act, &s(a), &star_series(&f, &act, &s(b), &s(c)));
                assert_eq!(l, r);
            }
        }
    }
    assert!(!twisted_product(&f, &act, &Poly::var(2, 0), &Poly::var(2, 1)).unwrap().beyond_verified);
}
