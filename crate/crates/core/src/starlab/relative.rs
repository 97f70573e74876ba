use num_traits::Zero;

use super::diffop::DiffOp;
use super::star::{ops_agree, StarProduct};
use crate::drinfeld::{
    classical_limit, default_star_jet, gauge_transform, star_from_twist_with_jet, twist_equivalence_solve, Equivalence,
    GaugeElement, LieAction, Twist,
};
use crate::enveloping::{Enveloping, UTensor};
use crate::error::Error;
use crate::exactalg::{inverse, q, AltForm, Bivector, HbarSeries, Scalar};
use crate::liecore::{ce_cohomology, LieAlgebra};

/// Result of [`relative_class`].
#[derive(Clone, Debug)]
pub struct RelativeClass {
    /// Entry `k − 1` holds the class at `ℏ^k` in the basis of
    /// `ce_cohomology(g, 2)`; orders past the first obstruction are empty.
    pub classes: Vec<Vec<Scalar>>,
    pub obstruction_order: Option<usize>,
    /// `S` with `ρ(S)(f ⋆₁ g) = ρ(S)f ⋆₂ ρ(S)g`, when unobstructed.
    pub gauge: Option<GaugeElement>,
    /// `T = ρ(S)` in the exponential chart, one operator per ℏ-order.
    pub transform: Option<Vec<DiffOp>>,
}

impl RelativeClass {
    pub fn is_trivial(&self) -> bool {
        self.obstruction_order.is_none()
    }
}

/// Reads the twist of a left-invariant star product in the exponential chart
/// off its value at the origin: `ρ(P(x^a))` evaluates to `∂^a` there.
pub(crate) fn twist_at_origin(s: &StarProduct, g: &LieAlgebra, n: usize) -> Result<Twist, Error> {
    let env = Enveloping::classical(g.clone(), n)?;
    let mut value = UTensor::one(2, n);
    for k in 1..=n {
        for ((a, b), c) in s.ops()[k].terms() {
            let v = c.constant_term();
            if v.is_zero() {
                continue;
            }
            let leg = UTensor::pure(&[env.symmetrize(a), env.symmetrize(b)]);
            value = value.add(&leg.scale_series(&HbarSeries::monomial(v, k, n)));
        }
    }
    Twist::new(g.clone(), value)
}

fn check_invariant(s: &StarProduct, f: &Twist, n: usize, which: &str) -> Result<(), Error> {
    let jet = s.jet().unwrap_or_else(|| default_star_jet(n));
    let rebuilt = star_from_twist_with_jet(f, jet);
    let cmp = match (s.jet(), rebuilt.jet()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(u32::MAX).min(b.unwrap_or(u32::MAX))),
    };
    for k in 0..=n {
        if !ops_agree(&s.ops()[k], &rebuilt.ops()[k], cmp) {
            return Err(Error::NotInvariant(format!("{which} differs from its left-invariant extension at order {k}")));
        }
    }
    Ok(())
}

/// Compares two left-invariant star products on `Poly(g)` (exponential chart)
/// order by order up to invariant equivalence.
///
/// At the first order `k` where no equivalence exists, the leftover
/// antisymmetric residual `a ∈ ⋀²g` is lowered with `ω = r⁻¹` to the
/// 2-cocycle `β_{kl} = −2 Σ a^{ij} ω_{ik} ω_{jl}`, whose class is reported. With this
/// normalization, when the second product carries the normalization series
/// `Ω + ℏ^{k−2} β₀` relative to the first, the reported class is `[β₀]`.
pub fn relative_class(s1: &StarProduct, s2: &StarProduct, g: &LieAlgebra, n: usize) -> Result<RelativeClass, Error> {
    if n > s1.order() || n > s2.order() {
        return Err(Error::Invalid(format!("products are truncated below order {n}")));
    }
    if s1.nvars() != g.dim() || s2.nvars() != g.dim() {
        return Err(Error::Incompatible("products must live on Poly(g)".into()));
    }
    let jet = match (s1.jet(), s2.jet()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(u32::MAX).min(b.unwrap_or(u32::MAX))),
    };
    if n >= 1 && !ops_agree(&s1.first_order_antisymmetric(), &s2.first_order_antisymmetric(), jet) {
        return Err(Error::SemiclassicalMismatch("first-order antisymmetric parts differ".into()));
    }
    let f1 = twist_at_origin(s1, g, n)?;
    let f2 = twist_at_origin(s2, g, n)?;
    check_invariant(s1, &f1, n, "first product")?;
    check_invariant(s2, &f2, n, "second product")?;

    let h2 = ce_cohomology(g, 2);
    let mut classes = vec![vec![Scalar::zero(); h2.dimension]; n];
    match twist_equivalence_solve(&f2, &f1)? {
        Equivalence::Equivalent(s) => {
            debug_assert_eq!(gauge_transform(&f2, &s)?.value(), f1.value());
            let jet = jet.unwrap_or_else(|| default_star_jet(n));
            let act = LieAction::exponential_chart(g.clone(), jet);
            let transform = act.operator(s.value());
            Ok(RelativeClass { classes, obstruction_order: None, gauge: Some(s), transform: Some(transform) })
        }
        Equivalence::Obstructed { order, residual, .. } => {
            let r = classical_limit(&f1)?;
            let beta = lower_bivector(&residual, &r)?;
            let class = h2
                .class_of(&beta, g)
                .ok_or_else(|| Error::Solver("obstruction is not a CE 2-cocycle".into()))?;
            classes[order - 1] = class;
            classes.truncate(order);
            Ok(RelativeClass { classes, obstruction_order: Some(order), gauge: None, transform: None })
        }
    }
}

/// `β_{kl} = −2 Σ a^{ij} ω_{ik} ω_{jl}` with `ω = r⁻¹`.
fn lower_bivector(a: &Bivector, r: &Bivector) -> Result<AltForm, Error> {
    let omega = inverse(&r.matrix()).ok_or(Error::Degenerate)?;
    let am = a.matrix();
    let n = am.len();
    let mut beta = AltForm::zero(n, 2);
    for k in 0..n {
        for l in k + 1..n {
            let mut acc = Scalar::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += &am[i][j] * &omega[i][k] * &omega[j][l];
                }
            }
            beta.set(&[k, l], acc * q(-2, 1));
        }
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian_plane, n2};
    use crate::drinfeld::star_from_twist;
    use crate::enveloping::PBWElement;
    use crate::fedosov::{fedosov_recursion, Normalization};
    use crate::liecore::symplectic_connection;

    #[test]
    fn identical_products_have_zero_class() {
        let sg = n2();
        let gamma = symplectic_connection(&sg).unwrap();
        let d = fedosov_recursion(&sg, &gamma, &Normalization::trivial(&sg), 2).unwrap();
        let s = d.star_product().unwrap();
        let rc = relative_class(&s, &s, sg.algebra(), 2).unwrap();
        assert!(rc.is_trivial());
        assert!(rc.classes.iter().flatten().all(Zero::is_zero));
        assert_eq!(rc.gauge.unwrap().value(), &PBWElement::one(2));
    }

    #[test]
    fn gauge_shift_is_trivial_with_nontrivial_transform() {
        let sg = abelian_plane();
        let f = Twist::exponential(sg.algebra().clone(), &sg.r_matrix(), 2).unwrap();
        let mut s = PBWElement::one(2);
        s.add_term(vec![0, 0], &HbarSeries::monomial(q(3, 1), 1, 2));
        s.add_term(vec![1], &HbarSeries::monomial(q(-1, 2), 2, 2));
        let fs = gauge_transform(&f, &GaugeElement::new(s).unwrap()).unwrap();
        let rc = relative_class(&star_from_twist(&f), &star_from_twist(&fs), sg.algebra(), 2).unwrap();
        assert!(rc.is_trivial());
        let t = rc.transform.unwrap();
        assert!(!t[1].is_zero());
    }

    #[test]
    fn injected_class_is_antisymmetric() {
        let sg = abelian_plane();
        let moyal = star_from_twist(&Twist::exponential(sg.algebra().clone(), &sg.r_matrix(), 2).unwrap());
        let gamma = symplectic_connection(&sg).unwrap();
        let beta = sg.omega().scale(&q(5, 2));
        let om = Normalization::trivial(&sg).with_correction(0, beta.clone());
        let shifted = fedosov_recursion(&sg, &gamma, &om, 2).unwrap().star_product().unwrap();
        let expect = ce_cohomology(sg.algebra(), 2).class_of(&beta, sg.algebra()).unwrap();
        let forward = relative_class(&moyal, &shifted, sg.algebra(), 2).unwrap();
        assert_eq!(forward.obstruction_order, Some(2));
        assert_eq!(forward.classes[1], expect);
        let back = relative_class(&shifted, &moyal, sg.algebra(), 2).unwrap();
        let neg: Vec<Scalar> = expect.iter().map(|c| -c).collect();
        assert_eq!(back.classes[1], neg);
    }
}
