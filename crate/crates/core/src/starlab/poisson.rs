use num_traits::Zero;

use crate::exactalg::{Coeff, Poly, Scalar};
use crate::liecore::{CentralExtension, LieAlgebra};

/// Bivector field `π^{ij}` with polynomial components; `{x_i, x_j} = π^{ij}`.
#[derive(Clone, PartialEq, Debug)]
pub struct PoissonBivector {
    components: Vec<Vec<Poly>>,
}

impl PoissonBivector {
    /// Requires an antisymmetric matrix.
    pub fn new(components: Vec<Vec<Poly>>) -> Self {
        let n = components.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(components[i][j], components[j][i].neg(), "Poisson tensor must be antisymmetric");
            }
        }
        PoissonBivector { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize, j: usize) -> &Poly {
        &self.components[i][j]
    }

    /// `{f, g} = Σ π^{ij} ∂_i f ∂_j g`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let n = self.dim();
        let mut out = Poly::zero(n);
        for i in 0..n {
            let fi = f.diff(i, 1);
            if fi.is_zero() {
                continue;
            }
            for j in 0..n {
                if self.components[i][j].is_zero() {
                    continue;
                }
                out.add_scaled(&self.components[i][j].mul_poly(&fi).mul_poly(&g.diff(j, 1)), &Scalar::from_integer(1.into()));
            }
        }
        out
    }

    /// `Σ_l π^{il} ∂_l π^{jk} + cyclic` for every `i < j < k`; all zero iff
    /// the Jacobi identity holds.
    pub fn jacobi_residual(&self) -> Vec<((usize, usize, usize), Poly)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut r = Poly::zero(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for l in 0..n {
                            let d = self.components[b][c].diff(l, 1);
                            if !d.is_zero() {
                                r = r.add(&self.components[a][l].mul_poly(&d));
                            }
                        }
                    }
                    if !r.is_zero() {
                        out.push(((i, j, k), r));
                    }
                }
            }
        }
        out
    }

    pub fn is_poisson(&self) -> bool {
        self.jacobi_residual().is_empty()
    }
}

/// Linear Poisson structure `{x_i, x_j} = Σ_k C^k_{ij} x_k` on `g*`.
pub fn lie_poisson(g: &LieAlgebra) -> PoissonBivector {
    let n = g.dim();
    let mut comps = vec![vec![Poly::zero(n); n]; n];
    for (i, row) in comps.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            for (k, c) in g.bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    slot.add_scaled(&Poly::var(n, k), c);
                }
            }
        }
    }
    PoissonBivector::new(comps)
}

/// The canonical Poisson structure on `h*`: `{x_i, x_j} = x_k C^k_{ij} − u ω_{ij}`,
/// variables `x_1..x_n` then `u`.
pub fn linear_poisson(h: &CentralExtension) -> PoissonBivector {
    lie_poisson(h.algebra())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, AltForm};
    use crate::liecore::{central_extension, SymplecticLieAlgebra};

    fn std_omega() -> AltForm {
        let mut w = AltForm::zero(2, 2);
        w.set(&[0, 1], q(1, 1));
        w
    }

    #[test]
    fn heisenberg_and_n2_brackets() {
        let ab = SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), std_omega()).unwrap();
        let pi = linear_poisson(&central_extension(&ab).unwrap());
        assert_eq!(pi.component(0, 1), &Poly::term(3, vec![0, 0, 1], q(-1, 1)));
        assert!(pi.is_poisson());
        let n2 = LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap();
        let pi = linear_poisson(&central_extension(&SymplecticLieAlgebra::new(n2, std_omega()).unwrap()).unwrap());
        let mut expect = Poly::var(3, 0);
        expect.add_term(vec![0, 0, 1], &q(-1, 1));
        assert_eq!(pi.component(0, 1), &expect);
        assert!(pi.is_poisson());
    }

    #[test]
    fn non_poisson_bivector_is_caught() {
        let x = |i| Poly::var(3, i);
        let z = Poly::zero(3);
        let pi = PoissonBivector::new(vec![
            vec![z.clone(), x(2), z.clone()],
            vec![x(2).neg(), z.clone(), x(1)],
            vec![z.clone(), x(1).neg(), z.clone()],
        ]);
        assert!(!pi.is_poisson());
    }
}
