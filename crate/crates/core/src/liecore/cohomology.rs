use num_traits::{One, Zero};

use super::LieAlgebra;
use crate::exactalg::{increasing_tuples, rank, solve_exact, AltForm, Matrix, Scalar};

/// Chevalley–Eilenberg differential with trivial coefficients, normalized so
/// that on 1-forms `(δα)(X,Y) = α([X,Y])`:
///
/// `(δα)(X₀,…,X_k) = Σ_{a<b} (−1)^{a+b+1} α([X_a,X_b], X₀,…,X̂_a,…,X̂_b,…,X_k)`.
///
/// With this sign the contact covector of the central extension satisfies
/// `δC = −p*ω`. Applying it to a top-degree form yields the zero form of
/// degree `k + 1`.
pub fn ce_differential(alpha: &AltForm, g: &LieAlgebra) -> AltForm {
    let n = g.dim();
    assert_eq!(alpha.dim(), n, "form dimension must match the algebra");
    let k = alpha.degree();
    let mut out = AltForm::zero(n, k + 1);
    if k + 1 > n || alpha.is_zero() {
        return out;
    }
    for tuple in increasing_tuples(n, k + 1) {
        let mut acc = Scalar::zero();
        for a in 0..=k {
            for b in a + 1..=k {
                let sign = if (a + b + 1) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                let rest: Vec<usize> =
                    tuple.iter().enumerate().filter(|&(p, _)| p != a && p != b).map(|(_, &i)| i).collect();
                for m in 0..n {
                    let c = g.structure(tuple[a], tuple[b], m);
                    if c.is_zero() {
                        continue;
                    }
                    let mut idx = Vec::with_capacity(k);
                    idx.push(m);
                    idx.extend_from_slice(&rest);
                    let v = alpha.get(&idx);
                    if !v.is_zero() {
                        acc += &sign * c * v;
                    }
                }
            }
        }
        out.set(&tuple, acc);
    }
    out
}

/// The de Rham differential of left-invariant forms, `dα(X,Y) = −α([X,Y])`,
/// i.e. the negative of [`ce_differential`].
pub(crate) fn ce_differential_geometric(alpha: &AltForm, g: &LieAlgebra) -> AltForm {
    ce_differential(alpha, g).scale(&-Scalar::one())
}

/// Matrix of `δ` from degree `k` to `k + 1` in the increasing-tuple bases.
fn differential_matrix(g: &LieAlgebra, k: usize) -> (Matrix, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = g.dim();
    let src = increasing_tuples(n, k);
    let dst = increasing_tuples(n, k + 1);
    let mut m = vec![vec![Scalar::zero(); src.len()]; dst.len()];
    for (c, t) in src.iter().enumerate() {
        let mut e = AltForm::zero(n, k);
        e.set(t, Scalar::one());
        let d = ce_differential(&e, g);
        for (r, s) in dst.iter().enumerate() {
            m[r][c] = d.get(s);
        }
    }
    (m, src, dst)
}

/// `H^k_CE(g)` with a basis of cocycle representatives spanning a complement
/// of the coboundaries.
#[derive(Clone, Debug, PartialEq)]
pub struct CeCohomology {
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<AltForm>,
    /// Coboundary spanning set `δ(e^J)` for `|J| = k − 1`.
    coboundaries: Vec<AltForm>,
    dim: usize,
}

pub fn ce_cohomology(g: &LieAlgebra, k: usize) -> CeCohomology {
    let n = g.dim();
    let basis = increasing_tuples(n, k);
    let (dk, _, _) = differential_matrix(g, k);
    let cocycles: Vec<Vec<Scalar>> = if dk.is_empty() {
        // δ into degree > n is zero: every form is a cocycle
        (0..basis.len())
            .map(|i| (0..basis.len()).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect()
    } else {
        let zeros = vec![Scalar::zero(); dk.len()];
        solve_exact(&dk, &zeros).kernel_basis
    };
    let coboundaries: Vec<AltForm> = if k == 0 {
        Vec::new()
    } else {
        increasing_tuples(n, k - 1)
            .iter()
            .map(|t| {
                let mut e = AltForm::zero(n, k - 1);
                e.set(t, Scalar::one());
                ce_differential(&e, g)
            })
            .collect()
    };
    let mut span: Matrix = coboundaries.iter().map(|b| b.to_vector(&basis)).collect();
    let mut r = rank(&span);
    let mut reps = Vec::new();
    for z in cocycles {
        span.push(z.clone());
        let r2 = rank(&span);
        if r2 > r {
            r = r2;
            reps.push(AltForm::from_vector(n, k, &basis, &z));
        } else {
            span.pop();
        }
    }
    CeCohomology { degree: k, dimension: reps.len(), representatives: reps, coboundaries, dim: n }
}

impl CeCohomology {
    /// Coordinates of the class of a cocycle in the representative basis,
    /// or `None` if `form` is not closed.
    pub fn class_of(&self, form: &AltForm, g: &LieAlgebra) -> Option<Vec<Scalar>> {
        if !ce_differential(form, g).is_zero() {
            return None;
        }
        let basis = increasing_tuples(self.dim, self.degree);
        let cols: Vec<Vec<Scalar>> = self
            .representatives
            .iter()
            .chain(self.coboundaries.iter())
            .map(|f| f.to_vector(&basis))
            .collect();
        let target = form.to_vector(&basis);
        if basis.is_empty() {
            return Some(Vec::new());
        }
        let a: Matrix = (0..basis.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let sol = solve_exact(&a, &target).solution?;
        Some(sol[..self.representatives.len()].to_vec())
    }

    pub fn is_exact(&self, form: &AltForm, g: &LieAlgebra) -> bool {
        self.class_of(form, g).is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn n2() -> LieAlgebra {
        LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap()
    }

    #[test]
    fn n2_one_form() {
        let mut e1 = AltForm::zero(2, 1);
        e1.set(&[0], q(1, 1));
        let d = ce_differential(&e1, &n2());
        // (δe¹)(e₁,e₂) = e¹([e₁,e₂]) = 1
        assert_eq!(d.get(&[0, 1]), q(1, 1));
        assert_eq!(ce_differential_geometric(&e1, &n2()).get(&[0, 1]), q(-1, 1));
    }

    #[test]
    fn abelian_differential_vanishes() {
        let g = LieAlgebra::abelian("r3", 3);
        let mut a = AltForm::zero(3, 1);
        a.set(&[1], q(3, 1));
        assert!(ce_differential(&a, &g).is_zero());
    }

    #[test]
    fn top_degree_overflows_to_zero() {
        let mut w = AltForm::zero(2, 2);
        w.set(&[0, 1], q(1, 1));
        let d = ce_differential(&w, &n2());
        assert_eq!(d.degree(), 3);
        assert!(d.is_zero());
    }

    #[test]
    fn cohomology_examples() {
        let r2 = LieAlgebra::abelian("r2", 2);
        let h2 = ce_cohomology(&r2, 2);
        assert_eq!(h2.dimension, 1);
        assert_eq!(h2.representatives[0].get(&[0, 1]), q(1, 1));
        assert_eq!(ce_cohomology(&n2(), 2).dimension, 0);
        assert_eq!(ce_cohomology(&n2(), 1).dimension, 1);
        assert_eq!(ce_cohomology(&n2(), 0).dimension, 1);
    }
}
