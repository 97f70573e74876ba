use num_traits::{One, Zero};

use super::{ce_differential, LieAlgebra};
use crate::error::Error;
use crate::exactalg::{inverse, rank, AltForm, Bivector, Matrix, Scalar};

/// A Lie algebra with a nondegenerate CE-closed 2-form `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticLieAlgebra {
    algebra: LieAlgebra,
    omega: AltForm,
    /// `π = ω⁻¹` as a matrix: `Σ_j π^{ij} ω_{jk} = δ^i_k`.
    poisson: Matrix,
}

impl SymplecticLieAlgebra {
    pub fn new(algebra: LieAlgebra, omega: AltForm) -> Result<Self, Error> {
        if omega.degree() != 2 || omega.dim() != algebra.dim() {
            return Err(Error::Invalid(format!(
                "omega must be a 2-form on a {}-dimensional space",
                algebra.dim()
            )));
        }
        let poisson = inverse(&omega.matrix()).ok_or(Error::Degenerate)?;
        let d = ce_differential(&omega, &algebra);
        if let Some((k, _)) = d.components().iter().next() {
            return Err(Error::NotClosed((k[0], k[1], k[2])));
        }
        Ok(SymplecticLieAlgebra { algebra, omega, poisson })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn omega(&self) -> &AltForm {
        &self.omega
    }

    pub fn omega_matrix(&self) -> Matrix {
        self.omega.matrix()
    }

    /// `ω⁻¹` as a matrix.
    pub fn poisson_matrix(&self) -> &Matrix {
        &self.poisson
    }

    /// The r-matrix `r = ω⁻¹` as a bivector.
    pub fn r_matrix(&self) -> Bivector {
        AltForm::from_matrix(&self.poisson)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// `h = g ⊕ ℝ` with `[(X,x),(Y,y)] = ([X,Y], −ω(X,Y))`; the central direction
/// is the last basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralExtension {
    base: SymplecticLieAlgebra,
    h: LieAlgebra,
    contact: Vec<Scalar>,
}

/// Builds the bracket table of `g ⊕ ℝ` twisted by `−ω` without validating
/// anything. Used to exhibit the Jacobi failure for non-closed `ω`.
pub fn extension_algebra_unchecked(g: &LieAlgebra, omega: &AltForm) -> LieAlgebra {
    let n = g.dim();
    let mut labels = g.labels().to_vec();
    let mut central = format!("e{}", n + 1);
    while labels.contains(&central) {
        central.push('\'');
    }
    labels.push(central);
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = g.bracket(i, j).to_vec();
            v.push(-omega.get(&[i, j]));
            if v.iter().any(|c| !c.is_zero()) {
                brackets.push((i, j, v));
            }
        }
    }
    LieAlgebra::new_unchecked(format!("{}+ext", g.name()), labels, brackets).expect("indices in range")
}

/// Central extension adapted to `ω`, with the contact covector `C`.
pub fn central_extension(sg: &SymplecticLieAlgebra) -> Result<CentralExtension, Error> {
    let d = ce_differential(sg.omega(), sg.algebra());
    if let Some((k, _)) = d.components().iter().next() {
        return Err(Error::NotClosed((k[0], k[1], k[2])));
    }
    let h = extension_algebra_unchecked(sg.algebra(), sg.omega());
    if let Some(v) = h.jacobi_check().into_iter().next() {
        return Err(Error::Jacobi(v.triple));
    }
    let n = sg.dim();
    let mut contact = vec![Scalar::zero(); n + 1];
    contact[n] = Scalar::one();
    Ok(CentralExtension { base: sg.clone(), h, contact })
}

impl CentralExtension {
    pub fn base(&self) -> &SymplecticLieAlgebra {
        &self.base
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.h
    }

    /// The covector `C: (X,x) ↦ x`.
    pub fn contact(&self) -> &[Scalar] {
        &self.contact
    }

    /// Index of the central basis vector `(0,1)`.
    pub fn central_index(&self) -> usize {
        self.base.dim()
    }

    /// The projection `p: h → g` on basis indices (`None` for the centre).
    pub fn project(&self, i: usize) -> Option<usize> {
        (i < self.base.dim()).then_some(i)
    }

    /// `p*ω` as a 2-form on `h`.
    pub fn pullback_omega(&self) -> AltForm {
        self.base.omega().extend_dim(self.h.dim())
    }

    pub fn contact_form(&self) -> AltForm {
        let mut c = AltForm::zero(self.h.dim(), 1);
        c.set(&[self.central_index()], Scalar::one());
        c
    }
}

/// Dimension of the coadjoint orbit through `α`: the rank of the 2-cochain
/// `M_{ij} = −α([eᵢ,eⱼ])`.
pub fn coadjoint_orbit_dim(g: &LieAlgebra, alpha: &[Scalar]) -> usize {
    let n = g.dim();
    let m: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -g.bracket(i, j).iter().zip(alpha).fold(Scalar::zero(), |acc, (c, a)| acc + c * a))
                .collect()
        })
        .collect();
    rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn std_omega(n: usize) -> AltForm {
        let mut w = AltForm::zero(n, 2);
        for i in (0..n).step_by(2) {
            w.set(&[i, i + 1], q(1, 1));
        }
        w
    }

    #[test]
    fn heisenberg_from_abelian_plane() {
        let sg = SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), std_omega(2)).unwrap();
        let ext = central_extension(&sg).unwrap();
        assert_eq!(ext.algebra().bracket(0, 1), &[q(0, 1), q(0, 1), q(-1, 1)]);
        assert!(ext.algebra().bracket(0, 2).iter().all(Zero::is_zero));
        assert_eq!(coadjoint_orbit_dim(ext.algebra(), ext.contact()), 2);
        assert_eq!(coadjoint_orbit_dim(ext.algebra(), &vec![q(0, 1); 3]), 0);
    }

    #[test]
    fn contact_differential_is_minus_pullback() {
        let n2 = LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap();
        let sg = SymplecticLieAlgebra::new(n2, std_omega(2)).unwrap();
        let ext = central_extension(&sg).unwrap();
        assert_eq!(ext.algebra().bracket(0, 1), &[q(1, 1), q(0, 1), q(-1, 1)]);
        let d = ce_differential(&ext.contact_form(), ext.algebra());
        assert_eq!(d, ext.pullback_omega().scale(&q(-1, 1)));
    }

    #[test]
    fn degenerate_omega_rejected() {
        let w = AltForm::zero(2, 2);
        assert_eq!(SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), w), Err(Error::Degenerate));
    }

    #[test]
    fn r_matrix_inverts_omega() {
        let sg = SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), std_omega(2)).unwrap();
        assert_eq!(sg.r_matrix().get(&[0, 1]), q(-1, 1));
    }
}
