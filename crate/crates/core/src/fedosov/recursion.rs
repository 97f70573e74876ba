use std::sync::Arc;

use num_traits::{One, Zero};

use super::weyl::{delta, delta_inv, MoyalKernel, WeylElement, WeylKey};
use crate::drinfeld::{star_from_twist, Twist};
use crate::enveloping::{Enveloping, UTensor};
use crate::error::Error;
use crate::exactalg::{multi_factorial, q, sort_with_sign, AltForm, HbarSeries, Poly, Scalar, MAX_ORDER};
use crate::liecore::{ce_differential, ce_differential_geometric, Connection, LieAlgebra, SymplecticLieAlgebra};
use crate::starlab::StarProduct;

/// `Ω = ω₀/ℏ + Σ_p ℏ^p β_p`, a series of closed 2-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub leading: AltForm,
    pub corrections: Vec<AltForm>,
}

impl Normalization {
    /// `Ω = ω/ℏ`.
    pub fn trivial(sg: &SymplecticLieAlgebra) -> Self {
        Normalization { leading: sg.omega().clone(), corrections: Vec::new() }
    }

    /// Adds `ℏ^p β`.
    pub fn with_correction(mut self, p: usize, beta: AltForm) -> Self {
        let n = self.leading.dim();
        while self.corrections.len() <= p {
            self.corrections.push(AltForm::zero(n, 2));
        }
        self.corrections[p] = self.corrections[p].add(&beta);
        self
    }
}

/// Solved Fedosov connection `D = ∇ − δ + (1/ℏ) ad r` on left-invariant
/// sections of the Weyl bundle of a symplectic Lie algebra.
#[derive(Clone)]
pub struct FedosovData {
    sg: SymplecticLieAlgebra,
    gamma: Connection,
    omega: Normalization,
    gamma_hat: WeylElement,
    r: WeylElement,
    order: usize,
    cap: u32,
    kernel: MoyalKernel,
    env: Arc<Enveloping>,
}

impl std::fmt::Debug for FedosovData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FedosovData").field("order", &self.order).field("cap", &self.cap).field("r", &self.r).finish()
    }
}

/// Solves `r = δ⁻¹(R + ∇r + (1/2ℏ)[r,r] + Σ ℏ^{p+1} β_p)` up to Fedosov
/// degree `2N + 1`, enough for star products to order `N`.
pub fn fedosov_recursion(sg: &SymplecticLieAlgebra, gamma: &Connection, omega: &Normalization, n: usize) -> Result<FedosovData, Error> {
    fedosov_recursion_with_cap(sg, gamma, omega, n, 2 * n as u32 + 1)
}

/// As [`fedosov_recursion`] with an explicit degree cap (at least `2N + 1`).
pub fn fedosov_recursion_with_cap(
    sg: &SymplecticLieAlgebra,
    gamma: &Connection,
    omega: &Normalization,
    n: usize,
    cap: u32,
) -> Result<FedosovData, Error> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooHigh { requested: n, max: MAX_ORDER });
    }
    if cap < 2 * n as u32 + 1 {
        return Err(Error::Invalid(format!("degree cap {cap} is below 2N+1 = {}", 2 * n + 1)));
    }
    let g = sg.algebra();
    let dim = g.dim();
    if gamma.dim() != dim {
        return Err(Error::Incompatible("connection and algebra differ in dimension".into()));
    }
    if let Some((idx, _)) = gamma.torsion_residual(g).into_iter().next() {
        return Err(Error::Invalid(format!("connection has torsion at {idx:?}")));
    }
    if let Some((idx, _)) = gamma.symplectic_residual(&sg.omega_matrix()).into_iter().next() {
        return Err(Error::Invalid(format!("connection does not preserve omega at {idx:?}")));
    }
    if &omega.leading != sg.omega() {
        return Err(Error::Invalid("leading term of the normalization must be omega".into()));
    }
    for beta in &omega.corrections {
        if beta.dim() != dim || beta.degree() != 2 {
            return Err(Error::Incompatible("normalization terms must be 2-forms on g".into()));
        }
        if let Some((k, _)) = ce_differential(beta, g).components().iter().next() {
            return Err(Error::NotClosed((k[0], k[1], k[2])));
        }
    }

    let kernel = MoyalKernel::new(sg.poisson_matrix(), cap as usize + 2);
    let gamma_hat = connection_element(sg, gamma);
    let mut xi = WeylElement::zero(dim);
    for (p, beta) in omega.corrections.iter().enumerate() {
        xi = xi.add(&WeylElement::from_form(beta, p + 1));
    }
    let curvature = d_inv(&gamma_hat, g).add(&kernel.bracket_over_hbar(&gamma_hat, &gamma_hat, cap).scale(&q(1, 2)));
    let source = curvature.add(&xi).truncate(cap);

    let mut r = WeylElement::zero(dim);
    for _ in 0..=cap + 1 {
        let rhs = source
            .add(&d_inv(&r, g))
            .add(&kernel.bracket_over_hbar(&gamma_hat, &r, cap))
            .add(&kernel.bracket_over_hbar(&r, &r, cap).scale(&q(1, 2)));
        let next = delta_inv(&rhs.truncate(cap)).truncate(cap);
        if next == r {
            break;
        }
        r = next;
    }
    let env = Arc::new(Enveloping::classical(g.clone(), n.max(1))?);
    let data = FedosovData { sg: sg.clone(), gamma: gamma.clone(), omega: omega.clone(), gamma_hat, r, order: n, cap, kernel, env };
    if !data.curvature_residual().is_zero() {
        return Err(Error::Solver("Fedosov recursion did not reach its fixed point".into()));
    }
    Ok(data)
}

/// `Γ̂ = ½ Σ ω_{ba} Γ^a_{ic} e^i y^b y^c`.
fn connection_element(sg: &SymplecticLieAlgebra, gamma: &Connection) -> WeylElement {
    let n = sg.dim();
    let omega = sg.omega_matrix();
    let mut out = WeylElement::zero(n);
    for i in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut v = Scalar::zero();
                for a in 0..n {
                    v += &omega[b][a] * &gamma.gamma[i][c][a];
                }
                if v.is_zero() {
                    continue;
                }
                let mut y = vec![0; n];
                y[b] += 1;
                y[c] += 1;
                out = out.add(&WeylElement::term(n, 0, y, vec![i], v * q(1, 2)));
            }
        }
    }
    out
}

/// Exterior derivative of a left-invariant section: acts on the forms only.
fn d_inv(a: &WeylElement, g: &LieAlgebra) -> WeylElement {
    let n = a.dim();
    let mut out = WeylElement::zero(n);
    for (k, c) in a.terms() {
        let mut e = AltForm::zero(n, k.forms.len());
        e.set(&k.forms, Scalar::one());
        for (idx, v) in ce_differential_geometric(&e, g).components() {
            out.add_term(WeylKey { hbar: k.hbar, y: k.y.clone(), forms: idx.clone(), u: k.u.clone() }, &(c * v));
        }
    }
    out
}

impl FedosovData {
    pub fn symplectic(&self) -> &SymplecticLieAlgebra {
        &self.sg
    }

    pub fn connection(&self) -> &Connection {
        &self.gamma
    }

    pub fn normalization(&self) -> &Normalization {
        &self.omega
    }

    /// The solved 1-form `r`, exact up to Fedosov degree [`Self::cap`].
    pub fn r(&self) -> &WeylElement {
        &self.r
    }

    pub fn gamma_hat(&self) -> &WeylElement {
        &self.gamma_hat
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn kernel(&self) -> &MoyalKernel {
        &self.kernel
    }

    /// `R + ∇r − δr + (1/2ℏ)[r,r] + Σ ℏ^{p+1}β_p` on the window where `r` is
    /// exact; zero iff the Weyl curvature is the central `−ω − ℏ(Ω − ω/ℏ)`.
    pub fn curvature_residual(&self) -> WeylElement {
        let g = self.sg.algebra();
        let cap = self.cap;
        let gh = &self.gamma_hat;
        let mut w = d_inv(gh, g)
            .add(&self.kernel.bracket_over_hbar(gh, gh, cap + 1).scale(&q(1, 2)))
            .add(&d_inv(&self.r, g))
            .add(&self.kernel.bracket_over_hbar(gh, &self.r, cap + 1))
            .add(&self.kernel.bracket_over_hbar(&self.r, &self.r, cap + 1).scale(&q(1, 2)))
            .sub(&delta(&self.r));
        for (p, beta) in self.omega.corrections.iter().enumerate() {
            w = w.add(&WeylElement::from_form(beta, p + 1));
        }
        w.truncate(cap - 1)
    }

    /// `d` on sections `y^α e^I ⊗ ρ(u)f` of an arbitrary function `f`.
    pub fn d_operator(&self, a: &WeylElement) -> WeylElement {
        let g = self.sg.algebra();
        let n = a.dim();
        let mut out = d_inv(a, g);
        for (k, c) in a.terms() {
            let sign = if k.forms.len() % 2 == 0 { c.clone() } else { -c.clone() };
            for i in 0..n {
                let mut forms = k.forms.clone();
                forms.push(i);
                let Some(s) = sort_with_sign(&mut forms) else {
                    continue;
                };
                let mut word = vec![i];
                word.extend_from_slice(&k.u);
                for (u, v) in self.env.straighten(&word).iter() {
                    let coeff = &sign * v * Scalar::from_integer(s.into());
                    out.add_term(WeylKey { hbar: k.hbar, y: k.y.clone(), forms: forms.clone(), u: u.clone() }, &coeff);
                }
            }
        }
        out
    }

    /// `D a = d a + (1/ℏ)[Γ̂ + r, a] − δ a`, computed exactly for the
    /// truncated `r`.
    pub fn derivation(&self, a: &WeylElement) -> WeylElement {
        let conn = self.gamma_hat.add(&self.r);
        self.d_operator(a).add(&self.kernel.bracket_over_hbar(&conn, a, u32::MAX / 4)).sub(&delta(a))
    }

    /// `D²a` restricted to the window where the truncation of `r` cannot
    /// contribute.
    pub fn flatness_residual(&self, a: &WeylElement) -> WeylElement {
        let shift = a.min_degree().unwrap_or(0);
        self.derivation(&self.derivation(a)).truncate((self.cap + shift).saturating_sub(3))
    }

    /// The flat lift `τ` with `σ(τ) = f` and `Dτ = 0`, written universally as
    /// `Σ y^α ℏ^k ⊗ ρ(u) f`, up to Fedosov degree `cap`.
    pub fn lift(&self, cap: u32) -> WeylElement {
        let n = self.sg.dim();
        let one = WeylElement::one(n);
        let conn = self.gamma_hat.add(&self.r);
        let mut tau = one.clone();
        for _ in 0..=cap + 1 {
            let rhs = self.d_operator(&tau).add(&self.kernel.bracket_over_hbar(&conn, &tau, cap + 1));
            let next = one.add(&delta_inv(&rhs)).truncate(cap);
            if next == tau {
                break;
            }
            tau = next;
        }
        tau
    }

    /// The twist `F` with `σ(τ(f) ∘ τ(g)) = μ(ρ⊗ρ F)(f, g)`.
    pub fn twist(&self) -> Result<Twist, Error> {
        let n = self.order;
        let tau = self.lift(2 * n as u32);
        let mut value = UTensor::zero(2, n);
        for (k1, c1) in tau.terms() {
            let m: u32 = k1.y.iter().sum();
            for (k2, c2) in tau.terms() {
                if k2.y.iter().sum::<u32>() != m {
                    continue;
                }
                let order = k1.hbar + k2.hbar + m as usize;
                if order > n {
                    continue;
                }
                let Some(kc) = self.kernel.level(m as usize).get(&(k1.y.clone(), k2.y.clone())) else {
                    continue;
                };
                let c = c1 * c2 * kc * multi_factorial(&k1.y) * multi_factorial(&k2.y);
                value.add_term(vec![k1.u.clone(), k2.u.clone()], &HbarSeries::monomial(c, order, n));
            }
        }
        Twist::new(self.sg.algebra().clone(), value)
    }

    /// The Fedosov product on `Poly(g)` in the exponential chart.
    pub fn star_product(&self) -> Result<StarProduct, Error> {
        Ok(star_from_twist(&self.twist()?))
    }
}

/// `f ⋆ g` for the Fedosov product of `d`.
pub fn fedosov_star(d: &FedosovData, f: &Poly, g: &Poly) -> Result<HbarSeries<Poly>, Error> {
    Ok(d.star_product()?.star(f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{abelian_plane, n2};
    use crate::liecore::symplectic_connection;

    fn solve(sg: &SymplecticLieAlgebra, n: usize) -> FedosovData {
        let gamma = symplectic_connection(sg).unwrap();
        fedosov_recursion(sg, &gamma, &Normalization::trivial(sg), n).unwrap()
    }

    #[test]
    fn abelian_is_moyal() {
        let sg = abelian_plane();
        let d = solve(&sg, 3);
        assert!(d.r().is_zero());
        let moyal = Twist::exponential(sg.algebra().clone(), &sg.r_matrix(), 3).unwrap();
        assert_eq!(d.twist().unwrap().value(), moyal.value());
    }

    #[test]
    fn n2_is_flat_and_twist() {
        let sg = n2();
        let d = solve(&sg, 2);
        assert!(d.curvature_residual().is_zero());
        let f = d.twist().unwrap();
        assert!(crate::drinfeld::twist_axiom_check(&f).holds());
        assert_eq!(crate::drinfeld::classical_limit(&f).unwrap(), sg.r_matrix());
    }

    #[test]
    fn derivation_squares_to_zero() {
        let sg = n2();
        let gamma = symplectic_connection(&sg).unwrap();
        let d = fedosov_recursion_with_cap(&sg, &gamma, &Normalization::trivial(&sg), 2, 7).unwrap();
        let mut a = WeylElement::term(2, 0, vec![1, 2], vec![], q(3, 1));
        a = a.add(&WeylElement::term(2, 1, vec![0, 1], vec![1], q(-1, 2)));
        a.add_term(WeylKey { hbar: 0, y: vec![1, 0], forms: vec![], u: vec![0, 1] }, &q(2, 1));
        assert!(d.flatness_residual(&a).is_zero());
        assert!(!d.derivation(&a).is_zero());
        let lift = d.lift(4);
        assert!(d.derivation(&lift).truncate(3).is_zero());
    }

    #[test]
    fn non_closed_normalization_is_rejected() {
        let sg = crate::catalog::n2_sum();
        let gamma = symplectic_connection(&sg).unwrap();
        let omega = Normalization::trivial(&sg).with_correction(0, crate::catalog::n2_sum_nonclosed_form());
        assert!(matches!(fedosov_recursion(&sg, &gamma, &omega, 1), Err(Error::NotClosed(_))));
    }
}
