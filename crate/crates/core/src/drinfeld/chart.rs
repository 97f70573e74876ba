use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactalg::{factorial, inverse, Coeff, Poly, Scalar};
use crate::liecore::{CentralExtension, LieAlgebra};
use crate::starlab::DiffOp;

/// Taylor coefficients of `z/(1 − e^{−z})` up to `z^m`.
pub fn jacobian_series(m: usize) -> Vec<Scalar> {
    // (1 − e^{−z})/z = Σ (−1)^n z^n/(n+1)!
    let a: Vec<Scalar> = (0..=m)
        .map(|n| {
            let s = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            s / factorial(n as u32 + 1)
        })
        .collect();
    let mut b = vec![Scalar::zero(); m + 1];
    b[0] = Scalar::one();
    for n in 1..=m {
        let mut acc = Scalar::zero();
        for k in 1..=n {
            acc += &a[k] * &b[n - k];
        }
        b[n] = -acc;
    }
    b
}

type PolyMatrix = Vec<Vec<Poly>>;

fn pm_mul(a: &PolyMatrix, b: &PolyMatrix, jet: u32) -> PolyMatrix {
    let n = a.len();
    let mut out = vec![vec![Poly::zero(a[0][0].nvars()); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul_truncated(&b[k][j], jet));
                }
            }
        }
    }
    out
}

fn pm_is_zero(a: &PolyMatrix) -> bool {
    a.iter().flatten().all(Poly::is_zero)
}

/// `ad_t = Σ t_i ad_{e_i}` as a matrix of linear forms in `t`.
fn ad_t(g: &LieAlgebra) -> PolyMatrix {
    let n = g.dim();
    let mut m = vec![vec![Poly::zero(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in g.bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    m[k][j].add_scaled(&Poly::var(n, i), c);
                }
            }
        }
    }
    m
}

/// Left-invariant vector fields in the exponential chart,
/// `X_i^L = Σ_j [φ(ad_t)]_{ji} ∂_{t_j}` with `φ(z) = z/(1 − e^{−z})`.
/// Returns `None` for the jet when the series terminates (nilpotent `ad`),
/// in which case the fields are exact.
pub fn left_invariant_fields(g: &LieAlgebra, jet: u32) -> (Vec<DiffOp>, Option<u32>) {
    let n = g.dim();
    let coeffs = jacobian_series(jet as usize + n + 1);
    let a = ad_t(g);
    let mut phi: PolyMatrix = (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one(n) } else { Poly::zero(n) }).collect()).collect();
    let mut pow = phi.clone();
    let mut exact = false;
    // entries of A^m are homogeneous of degree m
    for (m, c) in coeffs.iter().enumerate().skip(1) {
        pow = pm_mul(&pow, &a, u32::MAX);
        if pm_is_zero(&pow) {
            exact = true;
            break;
        }
        if m as u32 > jet {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                phi[i][j].add_scaled(&pow[i][j], c);
            }
        }
    }
    let fields = (0..n)
        .map(|i| {
            let mut d = DiffOp::zero(n);
            for (j, row) in phi.iter().enumerate() {
                let mut alpha = vec![0; n];
                alpha[j] = 1;
                d.add_term(alpha, &row[i]);
            }
            d
        })
        .collect();
    (fields, if exact { None } else { Some(jet) })
}

/// The orbit map `t ↦ exp(ad*_{(t,0)}) C` in the coordinates `x_1..x_n` of
/// the hyperplane `u = 1`, truncated at degree `jet`.
pub fn orbit_chart(ext: &CentralExtension, jet: u32) -> Vec<Poly> {
    let h = ext.algebra();
    let n = ext.base().dim();
    let dh = h.dim();
    // (ad*_{e_i} ξ)_k = −Σ_m C^m_{ik} ξ_m
    let mut m = vec![vec![Poly::zero(n); dh]; dh];
    for i in 0..n {
        for k in 0..dh {
            for (mm, c) in h.bracket(i, k).iter().enumerate() {
                if !c.is_zero() {
                    m[k][mm].add_scaled(&Poly::var(n, i), &-c.clone());
                }
            }
        }
    }
    let mut xi: Vec<Poly> = ext.contact().iter().map(|c| Poly::constant(n, c.clone())).collect();
    let mut term = xi.clone();
    for p in 1..=jet {
        let mut next = vec![Poly::zero(n); dh];
        for (k, row) in m.iter().enumerate() {
            for (mm, e) in row.iter().enumerate() {
                if !e.is_zero() && !term[mm].is_zero() {
                    next[k] = next[k].add(&e.mul_truncated(&term[mm], jet));
                }
            }
        }
        let inv = Scalar::one() / Scalar::from_integer(p.into());
        term = next.iter().map(|t| t.scale(&inv)).collect();
        if term.iter().all(Poly::is_zero) {
            break;
        }
        for (x, t) in xi.iter_mut().zip(&term) {
            *x = x.add(t);
        }
    }
    (0..n).map(|k| xi[k].clone()).collect()
}

/// Inverts a formal map `x = ψ(t)` with `ψ(0) = 0` and invertible linear
/// part, returning `t(x)` truncated at degree `jet`.
pub fn invert_chart(psi: &[Poly], jet: u32) -> Result<Vec<Poly>, Error> {
    let n = psi.len();
    let lin: Vec<Vec<Scalar>> = psi
        .iter()
        .map(|p| {
            (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    p.coeff(&e)
                })
                .collect()
        })
        .collect();
    let linv = inverse(&lin).ok_or(Error::Degenerate)?;
    let nonlinear: Vec<Poly> = psi
        .iter()
        .map(|p| {
            let mut q = p.clone();
            for (e, c) in p.terms() {
                if e.iter().sum::<u32>() <= 1 {
                    q.add_term(e.clone(), &-c.clone());
                }
            }
            q
        })
        .collect();
    // t = L⁻¹(x − N(t)), one more correct degree per sweep
    let xs: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    let mut t = vec![Poly::zero(n); n];
    for _ in 0..=jet {
        let nt: Vec<Poly> = nonlinear.iter().map(|p| p.compose_truncated(&t, jet)).collect();
        t = (0..n)
            .map(|i| {
                let mut acc = Poly::zero(n);
                for j in 0..n {
                    if !linv[i][j].is_zero() {
                        acc.add_scaled(&xs[j].sub(&nt[j]), &linv[i][j]);
                    }
                }
                acc
            })
            .collect();
    }
    Ok(t)
}
