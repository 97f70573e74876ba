use dqtwist::catalog::{abelian_plane, e3, heisenberg, n2, n2_sum, n2_sum_nonclosed_form, symplectic_catalog};
use dqtwist::exactalg::{q, rank, AltForm, Matrix, Scalar};
use dqtwist::liecore::{
    ce_differential, central_extension, coadjoint_orbit_dim, extension_algebra_unchecked, schouten_cybe, schouten_pair,
    symplectic_connection, LieAlgebra,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn algebras() -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = symplectic_catalog().iter().map(|sg| sg.algebra().clone()).collect();
    out.push(heisenberg().algebra().clone());
    out.push(e3().algebra().clone());
    out.push(central_extension(&n2_sum()).unwrap().algebra().clone());
    out
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize) -> AltForm {
    let mut w = AltForm::zero(n, k);
    for _ in 0..6 {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            idx.swap(i, j);
        }
        idx.truncate(k);
        if idx.len() == k {
            w.add_at(&idx, &q(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        }
    }
    w
}

#[test]
fn ce_differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for g in algebras() {
        for k in 0..g.dim().saturating_sub(1) {
            for _ in 0..5 {
                let a = random_form(&mut rng, g.dim(), k);
                assert!(ce_differential(&ce_differential(&a, &g), &g).is_zero(), "{} degree {k}", g.name());
            }
        }
    }
}

#[test]
fn extension_jacobi_iff_closed() {
    for sg in symplectic_catalog() {
        let h = extension_algebra_unchecked(sg.algebra(), sg.omega());
        assert!(h.jacobi_check().is_empty());
    }
    let g = n2_sum();
    let bad = g.omega().add(&n2_sum_nonclosed_form());
    assert!(!ce_differential(&bad, g.algebra()).is_zero());
    assert!(!extension_algebra_unchecked(g.algebra(), &bad).jacobi_check().is_empty());
}

/// Rank of the fundamental vectors `ad*_{eᵢ} α = −α ∘ ad_{eᵢ}` at `α`.
fn fundamental_rank(g: &LieAlgebra, alpha: &[Scalar]) -> usize {
    let n = g.dim();
    let m: Matrix = (0..n)
        .map(|i| {
            let ad = g.ad_matrix(i);
            (0..n).map(|j| -(0..n).map(|k| &alpha[k] * &ad[k][j]).sum::<Scalar>()).collect()
        })
        .collect();
    rank(&m)
}

#[test]
fn orbit_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for sg in [abelian_plane(), n2(), n2_sum()] {
        let ext = central_extension(&sg).unwrap();
        assert_eq!(coadjoint_orbit_dim(ext.algebra(), ext.contact()), sg.dim());
        let h = ext.algebra();
        for _ in 0..20 {
            let alpha: Vec<Scalar> = (0..h.dim()).map(|_| q(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
            let mut form = AltForm::zero(h.dim(), 1);
            for (i, a) in alpha.iter().enumerate() {
                form.set(&[i], a.clone());
            }
            let d = rank(&ce_differential(&form, h).matrix());
            assert_eq!(coadjoint_orbit_dim(h, &alpha), d);
            assert_eq!(fundamental_rank(h, &alpha), d);
        }
    }
}

#[test]
fn schouten_bracket_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in algebras() {
        if g.dim() < 3 {
            continue;
        }
        for _ in 0..5 {
            let r = random_form(&mut rng, g.dim(), 2);
            let s = random_form(&mut rng, g.dim(), 2);
            let lhs = schouten_cybe(&g, &r.add(&s));
            let rhs = schouten_cybe(&g, &r).add(&schouten_pair(&g, &r, &s).scale(&q(2, 1))).add(&schouten_cybe(&g, &s));
            assert_eq!(lhs, rhs);
            // stored components at i<j<k must reproduce with signs under permutation
            let c = schouten_cybe(&g, &r);
            for (idx, v) in c.components() {
                assert_eq!(c.get(&[idx[1], idx[0], idx[2]]), -v.clone());
                assert_eq!(c.get(&[idx[1], idx[2], idx[0]]), v.clone());
            }
        }
    }
}

#[test]
fn symplectic_connections_satisfy_constraints() {
    for sg in symplectic_catalog() {
        let c = symplectic_connection(&sg).unwrap();
        assert!(c.torsion_residual(sg.algebra()).is_empty());
        assert!(c.symplectic_residual(&sg.omega_matrix()).is_empty());
    }
}
