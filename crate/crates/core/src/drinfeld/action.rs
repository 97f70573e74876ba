use std::collections::BTreeMap;

use num_traits::Zero;

use super::twist::Twist;
use crate::enveloping::{Monomial, PBWElement, UTensor};
use crate::error::Error;
use crate::exactalg::{HbarSeries, Poly, Scalar};
use crate::liecore::LieAlgebra;
use crate::starlab::{BiDiffOp, DiffOp, StarProduct};

/// A Lie algebra acting by derivations on a polynomial algebra.
#[derive(Clone, Debug)]
pub struct LieAction {
    lie: LieAlgebra,
    images: Vec<DiffOp>,
    jet: Option<u32>,
}

impl LieAction {
    /// Checks every image is a vector field and `φ([e_i,e_j]) = [φ(e_i), φ(e_j)]`.
    pub fn new(lie: LieAlgebra, images: Vec<DiffOp>) -> Result<Self, Error> {
        Self::with_jet(lie, images, None)
    }

    /// As [`LieAction::new`] for vector fields whose coefficients are only
    /// known up to degree `jet`; the homomorphism is checked below it.
    pub fn with_jet(lie: LieAlgebra, images: Vec<DiffOp>, jet: Option<u32>) -> Result<Self, Error> {
        if images.len() != lie.dim() {
            return Err(Error::Incompatible(format!("{} images for a {}-dimensional algebra", images.len(), lie.dim())));
        }
        let nv = images.first().map(DiffOp::nvars).unwrap_or(0);
        for (i, d) in images.iter().enumerate() {
            if d.nvars() != nv || d.terms().keys().any(|a| a.iter().sum::<u32>() != 1) {
                return Err(Error::Invalid(format!("image of e{} is not a vector field", i + 1)));
            }
        }
        let n = lie.dim();
        for i in 0..n {
            for j in i + 1..n {
                let comm = images[i].compose(&images[j], jet).add(&images[j].compose(&images[i], jet).scale(&-Scalar::from_integer(1.into())));
                let mut br = DiffOp::zero(nv);
                for (k, c) in lie.bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        br = br.add(&images[k].scale(c));
                    }
                }
                let mut diff = comm.add(&br.scale(&-Scalar::from_integer(1.into())));
                if let Some(t) = jet {
                    diff = diff.truncate(t.saturating_sub(1));
                }
                if !diff.is_zero() {
                    return Err(Error::Invalid(format!("action is not a homomorphism on (e{}, e{})", i + 1, j + 1)));
                }
            }
        }
        Ok(LieAction { lie, images, jet })
    }

    /// `e_i ↦ ∂_{a_i}` on `Poly(a_1..a_n)`.
    pub fn translation(lie: LieAlgebra) -> Result<Self, Error> {
        let n = lie.dim();
        let images = (0..n)
            .map(|i| {
                let mut a = vec![0; n];
                a[i] = 1;
                DiffOp::derivative(n, a, Poly::one(n))
            })
            .collect();
        Self::new(lie, images)
    }

    /// Left-invariant vector fields in the exponential chart of `g`.
    pub fn exponential_chart(lie: LieAlgebra, jet: u32) -> Self {
        let (fields, jet) = super::chart::left_invariant_fields(&lie, jet);
        LieAction { lie, images: fields, jet }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn images(&self) -> &[DiffOp] {
        &self.images
    }

    pub fn jet(&self) -> Option<u32> {
        self.jet
    }

    pub fn nvars(&self) -> usize {
        self.images.first().map(DiffOp::nvars).unwrap_or(0)
    }

    /// `Φ` on a PBW monomial: the derivations composed in PBW order.
    pub fn monomial_operator(&self, m: &Monomial) -> DiffOp {
        let mut op = DiffOp::identity(self.nvars());
        for &i in m.iter().rev() {
            op = self.images[i].compose(&op, self.jet);
        }
        op
    }

    /// `Φ(u)` as an ℏ-series of differential operators.
    pub fn operator(&self, u: &PBWElement) -> Vec<DiffOp> {
        let mut out = vec![DiffOp::zero(self.nvars()); u.order() + 1];
        for (m, c) in u.terms() {
            let op = self.monomial_operator(m);
            for (k, v) in c.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    out[k] = out[k].add(&op.scale(v));
                }
            }
        }
        out
    }

    /// `(Φ⊗Φ)(t)` as bidifferential operators, one per ℏ-order.
    pub fn bidifferential(&self, t: &UTensor) -> Vec<BiDiffOp> {
        let mut cache: BTreeMap<Monomial, DiffOp> = BTreeMap::new();
        let mut out = vec![BiDiffOp::zero(self.nvars()); t.order() + 1];
        for (key, c) in t.terms() {
            for m in key {
                if !cache.contains_key(m) {
                    cache.insert(m.clone(), self.monomial_operator(m));
                }
            }
            let b = BiDiffOp::tensor(&cache[&key[0]], &cache[&key[1]], self.jet);
            for (k, v) in c.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    out[k] = out[k].add(&b.scale(v));
                }
            }
        }
        out
    }
}

/// Result of [`twisted_product`].
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedProduct {
    pub value: HbarSeries<Poly>,
    /// Set when the twist has not been verified up to its full order.
    pub beyond_verified: bool,
}

/// `a ⋆_F b = μ((Φ⊗Φ)(F)(a⊗b))`.
pub fn twisted_product(f: &Twist, act: &LieAction, a: &Poly, b: &Poly) -> Result<TwistedProduct, Error> {
    if act.algebra() != f.algebra() {
        return Err(Error::Incompatible("twist and action use different Lie algebras".into()));
    }
    let ops = act.bidifferential(f.value());
    let coeffs = ops.iter().map(|op| op.apply(a, b)).collect();
    Ok(TwistedProduct {
        value: HbarSeries::from_coeffs(coeffs),
        beyond_verified: f.verified_order().is_none_or(|v| v < f.order()),
    })
}

/// The star product `f ⋆ g = μ((ρ⊗ρ)(F)(f⊗g))` on `Poly(t_1..t_n)` with `ρ`
/// the left-invariant vector fields of the exponential chart, coefficients
/// kept up to degree `jet`.
pub fn star_from_twist_with_jet(f: &Twist, jet: u32) -> StarProduct {
    let act = LieAction::exponential_chart(f.algebra().clone(), jet);
    let ops = act.bidifferential(f.value());
    StarProduct::new(ops, act.jet()).expect("twists start with 1⊗1")
}

/// [`star_from_twist_with_jet`] at a jet deep enough for products of total
/// degree 4 to be checked exactly.
pub fn star_from_twist(f: &Twist) -> StarProduct {
    star_from_twist_with_jet(f, default_star_jet(f.order()))
}

pub(crate) fn default_star_jet(n: usize) -> u32 {
    2 * n as u32 + 6
}

