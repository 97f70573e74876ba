use num_traits::Zero;

use super::LieAlgebra;
use crate::exactalg::{increasing_tuples, q, Bivector, Scalar};

/// Dense 3-tensor `T^{abc}`.
type Tensor3 = Vec<Vec<Vec<Scalar>>>;

/// `[r₁₂,s₁₃] + [r₁₂,s₂₃] + [r₁₃,s₂₃]` in `g⊗g⊗g`, with `r, s` given by their
/// full antisymmetric coefficient matrices.
fn cybe_tensor(g: &LieAlgebra, r: &[Vec<Scalar>], s: &[Vec<Scalar>]) -> Tensor3 {
    let n = g.dim();
    let mut t = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if r[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if s[k][l].is_zero() {
                        continue;
                    }
                    let c = &r[i][j] * &s[k][l];
                    for m in 0..n {
                        let b = g.structure(i, k, m);
                        if !b.is_zero() {
                            t[m][j][l] += &c * b;
                        }
                        let b = g.structure(j, k, m);
                        if !b.is_zero() {
                            t[i][m][l] += &c * b;
                        }
                        let b = g.structure(j, l, m);
                        if !b.is_zero() {
                            t[i][k][m] += &c * b;
                        }
                    }
                }
            }
        }
    }
    t
}

/// Antisymmetrization into `⋀³g`; the component at `a<b<c` is the coefficient
/// of `e_a∧e_b∧e_c`.
fn alternate(t: &Tensor3, n: usize) -> Bivector {
    let mut out = Bivector::zero(n, 3);
    for tuple in increasing_tuples(n, 3) {
        let mut acc = Scalar::zero();
        for (p, even) in [
            ([0, 1, 2], true),
            ([1, 2, 0], true),
            ([2, 0, 1], true),
            ([1, 0, 2], false),
            ([0, 2, 1], false),
            ([2, 1, 0], false),
        ] {
            let v = &t[tuple[p[0]]][tuple[p[1]]][tuple[p[2]]];
            if even {
                acc += v;
            } else {
                acc -= v;
            }
        }
        out.set(&tuple, acc * q(1, 6));
    }
    out
}

/// The Schouten self-bracket `[[r,r]]` of a bivector, as an element of `⋀³g`.
/// Zero exactly when `r` solves the classical Yang–Baxter equation.
pub fn schouten_cybe(g: &LieAlgebra, r: &Bivector) -> Bivector {
    let m = r.matrix();
    alternate(&cybe_tensor(g, &m, &m), g.dim())
}

/// Polarized bracket `[[r,s]]`, so that `[[r+s,r+s]] = [[r,r]] + 2[[r,s]] + [[s,s]]`.
pub fn schouten_pair(g: &LieAlgebra, r: &Bivector, s: &Bivector) -> Bivector {
    let (mr, ms) = (r.matrix(), s.matrix());
    let n = g.dim();
    let a = alternate(&cybe_tensor(g, &mr, &ms), n);
    let b = alternate(&cybe_tensor(g, &ms, &mr), n);
    a.add(&b).scale(&q(1, 2))
}
