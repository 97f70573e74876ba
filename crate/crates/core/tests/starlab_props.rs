use dqtwist::catalog::{e3, heisenberg, n2_sum, symplectic_catalog};
use dqtwist::exactalg::{q, Poly, Scalar};
use dqtwist::liecore::central_extension;
use dqtwist::starlab::{
    assoc_residual, dito_coefficients, gutt_star_product, linear_poisson, restrict_to_d, tangentiality_check, StarProduct,
};
use num_traits::{One, Zero};

#[test]
fn linear_poisson_is_poisson() {
    for sg in symplectic_catalog() {
        let ext = central_extension(&sg).unwrap();
        let pi = linear_poisson(&ext);
        assert!(pi.is_poisson(), "{}", sg.algebra().name());
        // {x_i, x_j} = Σ_k C^k_ij x_k
        let h = ext.algebra();
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let mut expect = Poly::zero(h.dim());
                for (k, c) in h.bracket(i, j).iter().enumerate() {
                    expect.add_scaled(&Poly::var(h.dim(), k), c);
                }
                assert_eq!(pi.bracket(&Poly::var(h.dim(), i), &Poly::var(h.dim(), j)), expect);
            }
        }
    }
}

#[test]
fn dito_traces_vanish_in_the_central_direction() {
    for sg in symplectic_catalog() {
        let ext = central_extension(&sg).unwrap();
        let c = ext.central_index();
        for r in 1..=3 {
            for (word, tr) in dito_coefficients(ext.algebra(), r) {
                if word.contains(&c) {
                    assert!(tr.is_zero(), "{word:?}");
                }
            }
        }
    }
}

#[test]
fn gutt_is_tangential_on_dim_2_and_4() {
    for ext in [heisenberg(), e3(), central_extension(&n2_sum()).unwrap()] {
        let h = ext.algebra();
        let degree = if h.dim() > 3 { 2 } else { 3 };
        let s = gutt_star_product(h, 2, degree + 1).unwrap();
        assert!(tangentiality_check(&s, ext.central_index(), degree), "{}", h.name());
    }
}

#[test]
fn restricted_products_are_associative() {
    for ext in [heisenberg(), e3()] {
        let s = gutt_star_product(ext.algebra(), 3, 4).unwrap();
        let d = restrict_to_d(&s, ext.central_index(), 3).unwrap();
        let report = assoc_residual(&d, 3, 4);
        assert!(report.is_associative(), "{:?}", report.first_failure);
        assert!(report.triples_checked > 0);
    }
}

#[test]
fn restricted_heisenberg_is_moyal() {
    let ext = heisenberg();
    let s = gutt_star_product(ext.algebra(), 2, 3).unwrap();
    let d = restrict_to_d(&s, 2, 3).unwrap();
    let x1x2 = d.star(&Poly::var(2, 0), &Poly::var(2, 1));
    assert_eq!(x1x2.coeffs()[0], Poly::term(2, vec![1, 1], Scalar::one()));
    assert_eq!(x1x2.coeffs()[1], Poly::constant(2, q(-1, 2)));
    assert!(x1x2.coeffs()[2].is_zero());
    assert!(StarProduct::commutative(2, 2).star(&Poly::var(2, 0), &Poly::var(2, 1)).coeffs()[1].is_zero());
}
