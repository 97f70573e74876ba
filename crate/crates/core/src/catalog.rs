//! Small symplectic Lie algebras used throughout the tests and examples.

use num_traits::One;

use crate::exactalg::{q, AltForm, Scalar};
use crate::liecore::{central_extension, CentralExtension, LieAlgebra, SymplecticLieAlgebra};

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

fn form(n: usize, entries: &[(usize, usize, Scalar)]) -> AltForm {
    let mut w = AltForm::zero(n, 2);
    for (i, j, c) in entries {
        w.set(&[*i, *j], c.clone());
    }
    w
}

/// `ℝ²` with `ω = e¹∧e²`.
pub fn abelian_plane() -> SymplecticLieAlgebra {
    SymplecticLieAlgebra::new(LieAlgebra::abelian("abelian-r2", 2), form(2, &[(0, 1, Scalar::one())]))
        .expect("standard form is symplectic")
}

/// The non-abelian 2-dimensional algebra, `[e₁,e₂] = e₁`.
pub fn n2_algebra() -> LieAlgebra {
    LieAlgebra::new("n2", labels(2), [(0, 1, vec![q(1, 1), q(0, 1)])]).expect("n2 is a Lie algebra")
}

/// `N2` with `ω = e¹∧e²`.
pub fn n2() -> SymplecticLieAlgebra {
    SymplecticLieAlgebra::new(n2_algebra(), form(2, &[(0, 1, Scalar::one())])).expect("n2 form is symplectic")
}

/// `N2 ⊕ N2` with `ω = e¹∧e² + e³∧e⁴`.
pub fn n2_sum() -> SymplecticLieAlgebra {
    let g = LieAlgebra::new("n2+n2", labels(4), [(0, 1, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]), (2, 3, vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)])])
        .expect("direct sum is a Lie algebra");
    SymplecticLieAlgebra::new(g, form(4, &[(0, 1, Scalar::one()), (2, 3, Scalar::one())])).expect("sum form is symplectic")
}

/// A 2-form on `N2 ⊕ N2` that is not closed, `e¹∧e³`.
pub fn n2_sum_nonclosed_form() -> AltForm {
    form(4, &[(0, 2, Scalar::one())])
}

/// The Heisenberg algebra as the central extension of [`abelian_plane`]:
/// `[e₁,e₂] = −e₃`.
pub fn heisenberg() -> CentralExtension {
    central_extension(&abelian_plane()).expect("extension of a symplectic algebra")
}

/// The central extension of [`n2`]: `[e₁,e₂] = e₁ − e₃`.
pub fn e3() -> CentralExtension {
    central_extension(&n2()).expect("extension of a symplectic algebra")
}

/// The symplectic entries of the catalog.
pub fn symplectic_catalog() -> Vec<SymplecticLieAlgebra> {
    vec![abelian_plane(), n2(), n2_sum()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::ce_differential;

    #[test]
    fn entries_are_valid() {
        for sg in symplectic_catalog() {
            assert!(sg.algebra().jacobi_check().is_empty());
        }
        assert!(!ce_differential(&n2_sum_nonclosed_form(), n2_sum().algebra()).is_zero());
        assert_eq!(heisenberg().algebra().bracket(0, 1), &[q(0, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(e3().algebra().bracket(0, 1), &[q(1, 1), q(0, 1), q(-1, 1)]);
    }
}
