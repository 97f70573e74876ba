use num_traits::Zero;

use super::{LieAlgebra, SymplecticLieAlgebra};
use crate::error::Error;
use crate::exactalg::{inverse, mat_vec, q, transpose, Scalar};

/// Left-invariant affine connection, `∇_{eᵢ} eⱼ = Σ_k Γ^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    /// `gamma[i][j][k] = Γ^k_{ij}`.
    pub gamma: Vec<Vec<Vec<Scalar>>>,
}

impl Connection {
    pub fn zero(n: usize) -> Self {
        Connection { gamma: vec![vec![vec![Scalar::zero(); n]; n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// Entries of `Γ^k_{ij} − Γ^k_{ji} − C^k_{ij}`; all zero iff torsion-free.
    pub fn torsion_residual(&self, g: &LieAlgebra) -> Vec<((usize, usize, usize), Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = &self.gamma[i][j][k] - &self.gamma[j][i][k] - g.structure(i, j, k);
                    if !r.is_zero() {
                        out.push(((i, j, k), r));
                    }
                }
            }
        }
        out
    }

    /// Entries of `(∇_{eᵢ}ω)(eⱼ,e_l)`; all zero iff `∇ω = 0`.
    pub fn symplectic_residual(&self, omega: &[Vec<Scalar>]) -> Vec<((usize, usize, usize), Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let mut acc = Scalar::zero();
                    for k in 0..n {
                        acc -= &self.gamma[i][j][k] * &omega[k][l];
                        acc -= &self.gamma[i][l][k] * &omega[j][k];
                    }
                    if !acc.is_zero() {
                        out.push(((i, j, l), acc));
                    }
                }
            }
        }
        out
    }
}

/// Torsion-free symplectic connection obtained from `∇⁰_X Y = ½[X,Y]` by the
/// correction `ω(∇_XY,Z) = ω(∇⁰_XY,Z) + ⅓(∇⁰_Xω)(Y,Z) + ⅓(∇⁰_Yω)(X,Z)`.
///
/// Both defining properties are re-checked on the result.
pub fn symplectic_connection(sg: &SymplecticLieAlgebra) -> Result<Connection, Error> {
    let g = sg.algebra();
    let n = g.dim();
    let omega = sg.omega_matrix();
    let mut base = Connection::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                base.gamma[i][j][k] = g.structure(i, j, k) * q(1, 2);
            }
        }
    }
    // nabla[i][j][l] = (∇⁰_{eᵢ}ω)(eⱼ,e_l)
    let mut nabla = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for ((i, j, l), v) in base.symplectic_residual(&omega) {
        nabla[i][j][l] = v;
    }
    let solver = inverse(&transpose(&omega)).ok_or(Error::Degenerate)?;
    let mut conn = base;
    for i in 0..n {
        for j in 0..n {
            let rhs: Vec<Scalar> = (0..n).map(|l| (&nabla[i][j][l] + &nabla[j][i][l]) * q(1, 3)).collect();
            let s = mat_vec(&solver, &rhs);
            for k in 0..n {
                conn.gamma[i][j][k] += &s[k];
            }
        }
    }
    if let Some((idx, r)) = conn.torsion_residual(g).into_iter().next() {
        return Err(Error::Solver(format!("connection has torsion at {idx:?}: {r}")));
    }
    if let Some((idx, r)) = conn.symplectic_residual(&omega).into_iter().next() {
        return Err(Error::Solver(format!("connection does not preserve omega at {idx:?}: {r}")));
    }
    Ok(conn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::AltForm;

    #[test]
    fn abelian_connection_is_zero() {
        let mut w = AltForm::zero(2, 2);
        w.set(&[0, 1], q(1, 1));
        let sg = SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), w).unwrap();
        assert_eq!(symplectic_connection(&sg).unwrap(), Connection::zero(2));
    }

    #[test]
    fn n2_connection_satisfies_both_constraints() {
        let g = LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap();
        let mut w = AltForm::zero(2, 2);
        w.set(&[0, 1], q(1, 1));
        let sg = SymplecticLieAlgebra::new(g.clone(), w).unwrap();
        let c = symplectic_connection(&sg).unwrap();
        assert!(c.torsion_residual(&g).is_empty());
        assert!(c.symplectic_residual(&sg.omega_matrix()).is_empty());
        assert_ne!(c, Connection::zero(2));
    }
}
