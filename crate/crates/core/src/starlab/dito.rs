use std::collections::BTreeMap;

use num_traits::Zero;

use super::diffop::DiffOp;
use crate::exactalg::{mat_mul, Exponent, Matrix, Poly, Scalar};
use crate::liecore::LieAlgebra;

/// `Tr(ad_{e_{i₁}} ⋯ ad_{e_{i_r}})` for every word of length `r`.
pub fn dito_coefficients(h: &LieAlgebra, r: usize) -> BTreeMap<Vec<usize>, Scalar> {
    let n = h.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| h.ad_matrix(i)).collect();
    let mut out = BTreeMap::new();
    let mut stack: Vec<(Vec<usize>, Matrix)> = (0..n).map(|i| (vec![i], ads[i].clone())).collect();
    while let Some((word, m)) = stack.pop() {
        if word.len() == r {
            let tr: Scalar = (0..n).map(|i| m[i][i].clone()).sum();
            out.insert(word, tr);
            continue;
        }
        for (i, ad) in ads.iter().enumerate() {
            let mut w = word.clone();
            w.push(i);
            stack.push((w, mat_mul(&m, ad)));
        }
    }
    out
}

/// `D_r = Σ Tr(ad_{e_{i₁}} ⋯ ad_{e_{i_r}}) ∂_{i₁} ⋯ ∂_{i_r}`, constant coefficients.
pub fn dito_operator(h: &LieAlgebra, r: usize) -> DiffOp {
    let n = h.dim();
    let mut out = DiffOp::zero(n);
    for (word, tr) in dito_coefficients(h, r) {
        if tr.is_zero() {
            continue;
        }
        let mut alpha: Exponent = vec![0; n];
        for i in word {
            alpha[i] += 1;
        }
        out.add_term(alpha, &Poly::constant(n, tr));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn traces_on_extensions() {
        let heis = LieAlgebra::new("heis", vec!["e1".into(), "e2".into(), "e3".into()], [(0, 1, vec![q(0, 1), q(0, 1), q(-1, 1)])]).unwrap();
        for r in 1..=3 {
            assert!(dito_operator(&heis, r).is_zero());
        }
        let e3 = LieAlgebra::new("e3", vec!["e1".into(), "e2".into(), "e3".into()], [(0, 1, vec![q(1, 1), q(0, 1), q(-1, 1)])]).unwrap();
        // ad_{e2} e1 = −e1, ad_{e2} e3 = 0: trace −1
        assert_eq!(dito_operator(&e3, 1), DiffOp::derivative(3, vec![0, 1, 0], Poly::constant(3, q(-1, 1))));
        assert_eq!(dito_operator(&e3, 2), DiffOp::derivative(3, vec![0, 2, 0], Poly::constant(3, q(1, 1))));
    }
}
