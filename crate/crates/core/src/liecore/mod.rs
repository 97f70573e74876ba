//! Lie algebras by structure constants and the structures built on them:
//! Chevalley–Eilenberg cohomology, symplectic forms, the central extension
//! by a 2-cocycle, coadjoint orbit dimensions, the Schouten bracket and
//! invariant symplectic connections.

mod cohomology;
mod connection;
mod cybe;
mod symplectic;

use std::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::exactalg::{Matrix, Scalar};

pub use cohomology::{ce_cohomology, ce_differential, CeCohomology};
pub(crate) use cohomology::ce_differential_geometric;
pub use connection::{symplectic_connection, Connection};
pub use cybe::{schouten_cybe, schouten_pair};
pub use symplectic::{
    central_extension, coadjoint_orbit_dim, extension_algebra_unchecked, CentralExtension, SymplecticLieAlgebra,
};

/// A failure of the Jacobi identity on a basis triple `i < j < k`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    /// `Σ_cyclic [[eᵢ,eⱼ],e_k]` in the basis.
    pub residual: Vec<Scalar>,
}

/// A finite-dimensional Lie algebra given by structure constants
/// `[eᵢ,eⱼ] = Σ_k C^k_{ij} e_k` over an ordered basis.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `table[i][j][k] = C^k_{ij}`, antisymmetric in `i, j`.
    table: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    /// Builds and validates a Lie algebra. `brackets` lists `(i, j, [e_i,e_j])`
    /// for `i < j`; unlisted pairs commute.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<Scalar>)>,
    ) -> Result<Self, Error> {
        let g = Self::new_unchecked(name, labels, brackets)?;
        if let Some(v) = g.jacobi_check().into_iter().next() {
            return Err(Error::Jacobi(v.triple));
        }
        Ok(g)
    }

    /// Like [`LieAlgebra::new`] but skips the Jacobi check; index errors are
    /// still reported.
    pub fn new_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<Scalar>)>,
    ) -> Result<Self, Error> {
        let n = labels.len();
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, v) in brackets {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!("bracket index ({}, {}) out of range for dim {n}", i + 1, j + 1)));
            }
            if i >= j {
                return Err(Error::Invalid(format!("bracket entries need i < j, got ({}, {})", i + 1, j + 1)));
            }
            if v.len() != n {
                return Err(Error::Invalid(format!("bracket [e{}, e{}] has {} coefficients, expected {n}", i + 1, j + 1, v.len())));
            }
            for (k, c) in v.into_iter().enumerate() {
                table[j][i][k] = -c.clone();
                table[i][j][k] = c;
            }
        }
        Ok(LieAlgebra { name: name.into(), labels, table })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("e{i}")).collect();
        Self::new_unchecked(name, labels, std::iter::empty()).expect("abelian algebra is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `C^k_{ij}`.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[i][j][k]
    }

    /// `[eᵢ, eⱼ]` as a coefficient vector.
    pub fn bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Bracket of two arbitrary vectors.
    pub fn bracket_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..n {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &s * &self.table[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{eᵢ}` acting on column vectors: `M[k][j] = C^k_{ij}`.
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|j| self.table[i][j][k].clone()).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// All basis triples `i < j < k` where the cyclic Jacobi sum is nonzero.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut res = vec![Scalar::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for m in 0..n {
                            let cm = &self.table[a][b][m];
                            if cm.is_zero() {
                                continue;
                            }
                            for (l, r) in res.iter_mut().enumerate() {
                                *r += cm * &self.table[m][c][l];
                            }
                        }
                    }
                    if res.iter().any(|x| !x.is_zero()) {
                        out.push(JacobiViolation { triple: (i, j, k), residual: res });
                    }
                }
            }
        }
        out
    }

    /// Lists the nonzero brackets `[eᵢ,eⱼ]`, `i < j`.
    pub fn brackets(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j].iter().any(|c| !c.is_zero()) {
                    out.push((i, j, self.table[i][j].clone()));
                }
            }
        }
        out
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {}", self.name, self.dim())?;
        for (i, j, v) in self.brackets() {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}*{}", c, self.labels[k]))
                .collect();
            write!(f, ", [{},{}]={}", self.labels[i], self.labels[j], terms.join("+"))?;
        }
        write!(f, ")")
    }
}
