use dqtwist::catalog::{e3, heisenberg, n2_sum};
use dqtwist::enveloping::{coadjoint_derivation, Enveloping, PBWElement, Strategy, UTensor};
use dqtwist::exactalg::{monomials_up_to, q, Coeff, HbarSeries, Poly};
use dqtwist::liecore::{central_extension, LieAlgebra};
use dqtwist::starlab::lie_poisson;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn extensions() -> Vec<LieAlgebra> {
    vec![heisenberg().algebra().clone(), e3().algebra().clone(), central_extension(&n2_sum()).unwrap().algebra().clone()]
}

#[test]
fn normal_form_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in extensions() {
        let env = Enveloping::deformed(g.clone(), 4).unwrap();
        for _ in 0..25 {
            let len = rng.gen_range(1..=6);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..g.dim())).collect();
            let reference = env.pbw_normalize(&word);
            for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Seeded(rng.gen()), Strategy::Seeded(rng.gen())] {
                assert_eq!(env.pbw_normalize_with(&word, s), reference, "{word:?} in {}", g.name());
            }
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize, order: usize) -> PBWElement {
    let mut u = PBWElement::zero(order);
    for _ in 0..3 {
        let len = rng.gen_range(0..=3);
        let mut m: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dim)).collect();
        m.sort();
        u.add_term(m, &HbarSeries::monomial(q(rng.gen_range(-3..=3), rng.gen_range(1..=2)), rng.gen_range(0..=order), order));
    }
    u
}

#[test]
fn product_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for g in extensions() {
        let env = Enveloping::deformed(g.clone(), 3).unwrap();
        for _ in 0..5 {
            let [a, b, c] = [0; 3].map(|_| random_element(&mut rng, g.dim(), 3));
            let l = env.mul(&env.mul(&a, &b).unwrap(), &c).unwrap();
            let r = env.mul(&a, &env.mul(&b, &c).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }
}

#[test]
fn hopf_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in extensions() {
        let env = Enveloping::classical(g.clone(), 2).unwrap();
        for _ in 0..8 {
            let a = random_element(&mut rng, g.dim(), 2);
            let b = random_element(&mut rng, g.dim(), 2);
            let d = env.coproduct(&a);
            assert_eq!(d.coproduct_leg(0), d.coproduct_leg(1));
            let back = UTensor::pure(&[a.clone()]);
            assert_eq!(d.counit_leg(0), back);
            assert_eq!(d.counit_leg(1), back);
            let lhs = env.coproduct(&env.mul(&a, &b).unwrap());
            let rhs = env.tensor_mul(&d, &env.coproduct(&b)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn gutt_limits_and_invariance() {
    for g in extensions().into_iter().take(2) {
        let env = Enveloping::deformed(g.clone(), 2).unwrap();
        let pi = lie_poisson(&g);
        let mons = monomials_up_to(g.dim(), 3);
        for a in &mons {
            for b in &mons {
                let (f, h) = (Poly::monomial(a.clone()), Poly::monomial(b.clone()));
                let fh = env.gutt_star(&f, &h);
                let hf = env.gutt_star(&h, &f);
                assert_eq!(fh.coeffs()[0], f.mul_poly(&h));
                let anti = fh.coeffs()[1].sub(&hf.coeffs()[1]).scale(&q(1, 2));
                assert_eq!(anti, pi.bracket(&f, &h).scale(&q(1, 2)), "{a:?} {b:?}");
                for i in 0..g.dim() {
                    let lhs = fh.map(|p| coadjoint_derivation(&g, i, p));
                    let rhs = env.gutt_star(&coadjoint_derivation(&g, i, &f), &h).add(&env.gutt_star(&f, &coadjoint_derivation(&g, i, &h)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn gutt_is_associative_on_series() {
    let g = e3().algebra().clone();
    let env = Enveloping::deformed(g.clone(), 3).unwrap();
    let mons = monomials_up_to(3, 2);
    let s = |e: &Vec<u32>| HbarSeries::monomial(Poly::monomial(e.clone()), 0, 3);
    for a in &mons {
        for b in &mons {
            for c in &mons {
                let l = env.gutt_star_series(&env.gutt_star_series(&s(a), &s(b)), &s(c));
                let r = env.gutt_star_series(&s(a), &env.gutt_star_series(&s(b), &s(c)));
                assert_eq!(l, r);
            }
        }
    }
}
