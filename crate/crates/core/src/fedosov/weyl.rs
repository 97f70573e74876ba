use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::enveloping::Monomial;
use crate::exactalg::{factorial, sort_with_sign, AltForm, Exponent, Matrix, Scalar};

/// Index of one term `ℏ^k y^α e^I ⊗ u` of a Weyl-algebra-valued form.
///
/// `u` is a PBW monomial of `U(g)` standing for the left-invariant operator
/// `ρ(u)`; it is empty for sections that carry no such operator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeylKey {
    pub hbar: usize,
    pub y: Exponent,
    pub forms: Vec<usize>,
    pub u: Monomial,
}

impl WeylKey {
    /// Fedosov degree `|α| + 2k`.
    pub fn degree(&self) -> u32 {
        self.y.iter().sum::<u32>() + 2 * self.hbar as u32
    }
}

/// Element of `W ⊗ Λg* ⊗ U(g)`: fibre polynomials in `y¹..yⁿ` with ℏ-powers,
/// left-invariant forms, and optionally a `U(g)` operator part.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WeylKey, Scalar>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut w = Self::zero(n);
        w.add_term(WeylKey { hbar: 0, y: vec![0; n], forms: Vec::new(), u: Vec::new() }, &Scalar::one());
        w
    }

    pub fn term(n: usize, hbar: usize, y: Exponent, forms: Vec<usize>, c: Scalar) -> Self {
        let mut w = Self::zero(n);
        let mut f = forms;
        if let Some(s) = sort_with_sign(&mut f) {
            w.add_term(WeylKey { hbar, y, forms: f, u: Vec::new() }, &(c * Scalar::from_integer(s.into())));
        }
        w
    }

    /// The fibre generator `y^i`.
    pub fn y(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::term(n, 0, e, Vec::new(), Scalar::one())
    }

    /// A scalar form `ℏ^k β`.
    pub fn from_form(beta: &AltForm, hbar: usize) -> Self {
        let n = beta.dim();
        let mut w = Self::zero(n);
        for (idx, c) in beta.components() {
            w.add_term(WeylKey { hbar, y: vec![0; n], forms: idx.clone(), u: Vec::new() }, c);
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<WeylKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: WeylKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> WeylElement {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &(c * s));
        }
        out
    }

    /// Keeps terms of Fedosov degree at most `cap`.
    pub fn truncate(&self, cap: u32) -> WeylElement {
        WeylElement { n: self.n, terms: self.terms.iter().filter(|(k, _)| k.degree() <= cap).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// Lowest Fedosov degree present.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(WeylKey::degree).min()
    }

    /// Divides by ℏ; panics if some term has no ℏ.
    pub fn unshift(&self) -> WeylElement {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            assert!(k.hbar > 0, "term {k:?} is not divisible by ℏ");
            let mut k = k.clone();
            k.hbar -= 1;
            out.add_term(k, c);
        }
        out
    }

    /// `σ`: the part with no `y` and no forms.
    pub fn project_00(&self) -> WeylElement {
        WeylElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.forms.is_empty() && k.y.iter().all(|&a| a == 0))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of Fedosov degree at most `cap` only; used to compare elements
    /// known to different depths.
    pub fn agrees_below(&self, other: &WeylElement, cap: u32) -> bool {
        self.sub(other).truncate(cap).is_zero()
    }
}

/// The Moyal bidifferential operators `(1/2)^m/m! π^{i₁j₁}⋯π^{i_m j_m}
/// ∂_{i₁⋯i_m} ⊗ ∂_{j₁⋯j_m}`, collected by multi-index.
#[derive(Clone, Debug)]
pub struct MoyalKernel {
    n: usize,
    levels: Vec<BTreeMap<(Exponent, Exponent), Scalar>>,
}

impl MoyalKernel {
    pub fn new(pi: &Matrix, max_m: usize) -> Self {
        let n = pi.len();
        let mut levels = vec![BTreeMap::from([((vec![0; n], vec![0; n]), Scalar::one())])];
        // unnormalized sums of π-products first
        let mut raw = levels[0].clone();
        for m in 1..=max_m {
            let mut next: BTreeMap<(Exponent, Exponent), Scalar> = BTreeMap::new();
            for ((a, b), c) in &raw {
                for i in 0..n {
                    for j in 0..n {
                        if pi[i][j].is_zero() {
                            continue;
                        }
                        let mut a2 = a.clone();
                        a2[i] += 1;
                        let mut b2 = b.clone();
                        b2[j] += 1;
                        *next.entry((a2, b2)).or_insert_with(Scalar::zero) += c * &pi[i][j];
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            raw = next;
            let norm = Scalar::one() / (factorial(m as u32) * Scalar::from_integer((1u64 << m).into()));
            levels.push(raw.iter().map(|(k, c)| (k.clone(), c * &norm)).collect());
        }
        MoyalKernel { n, levels }
    }

    pub fn max_m(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &BTreeMap<(Exponent, Exponent), Scalar> {
        &self.levels[m]
    }

    /// Fibrewise product, dropping terms above Fedosov degree `cap`. At most
    /// one factor may carry a `U(g)` part.
    pub fn mul(&self, a: &WeylElement, b: &WeylElement, cap: u32) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (ka, ca) in &a.terms {
            let da = ka.degree();
            for (kb, cb) in &b.terms {
                if da + kb.degree() > cap {
                    continue;
                }
                self.mul_terms(ka, ca, kb, cb, &mut out);
            }
        }
        out
    }

    fn mul_terms(&self, ka: &WeylKey, ca: &Scalar, kb: &WeylKey, cb: &Scalar, out: &mut WeylElement) {
        assert!(ka.u.is_empty() || kb.u.is_empty(), "product of two operator-valued sections");
        let mut forms = ka.forms.clone();
        forms.extend_from_slice(&kb.forms);
        let Some(sign) = sort_with_sign(&mut forms) else {
            return;
        };
        let u = if ka.u.is_empty() { kb.u.clone() } else { ka.u.clone() };
        let base = ca * cb * Scalar::from_integer(sign.into());
        let ma: u32 = ka.y.iter().sum();
        let mb: u32 = kb.y.iter().sum();
        for m in 0..=(ma.min(mb) as usize).min(self.max_m()) {
            for ((i, j), c) in &self.levels[m] {
                if i.iter().zip(&ka.y).any(|(x, y)| x > y) || j.iter().zip(&kb.y).any(|(x, y)| x > y) {
                    continue;
                }
                let fa = falling(&ka.y, i);
                let fb = falling(&kb.y, j);
                let y: Exponent = (0..self.n).map(|t| ka.y[t] - i[t] + kb.y[t] - j[t]).collect();
                out.add_term(WeylKey { hbar: ka.hbar + kb.hbar + m, y, forms: forms.clone(), u: u.clone() }, &(&base * c * fa * fb));
            }
        }
    }

    /// Graded commutator divided by ℏ, up to Fedosov degree `cap`.
    pub fn bracket_over_hbar(&self, a: &WeylElement, b: &WeylElement, cap: u32) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (ka, ca) in &a.terms {
            let da = ka.degree();
            for (kb, cb) in &b.terms {
                if da + kb.degree() > cap + 2 {
                    continue;
                }
                self.mul_terms(ka, ca, kb, cb, &mut out);
                let sign = if ka.forms.len() * kb.forms.len() % 2 == 0 { -Scalar::one() } else { Scalar::one() };
                self.mul_terms(kb, &(cb * sign), ka, ca, &mut out);
            }
        }
        out.unshift().truncate(cap)
    }
}

/// `Π α_t!/(α_t − β_t)!`: the coefficient of `∂^β y^α`.
fn falling(alpha: &[u32], beta: &[u32]) -> Scalar {
    let mut out = Scalar::one();
    for (&a, &b) in alpha.iter().zip(beta) {
        for t in 0..b {
            out *= Scalar::from_integer((a - t).into());
        }
    }
    out
}

/// Fibrewise Moyal product with Poisson tensor `π`; no degree cap.
pub fn weyl_moyal(a: &WeylElement, b: &WeylElement, pi: &Matrix) -> WeylElement {
    let max_m = a.terms.keys().chain(b.terms.keys()).map(|k| k.y.iter().sum::<u32>() as usize).max().unwrap_or(0);
    MoyalKernel::new(pi, max_m).mul(a, b, u32::MAX)
}

/// `δ = Σ e^j ∧ ∂/∂y^j`.
pub fn delta(a: &WeylElement) -> WeylElement {
    let n = a.n;
    let mut out = WeylElement::zero(n);
    for (k, c) in &a.terms {
        for j in 0..n {
            if k.y[j] == 0 {
                continue;
            }
            let mut forms = vec![j];
            forms.extend_from_slice(&k.forms);
            let Some(sign) = sort_with_sign(&mut forms) else {
                continue;
            };
            let mut y = k.y.clone();
            y[j] -= 1;
            let coeff = c * Scalar::from_integer((k.y[j] as i64 * sign as i64).into());
            out.add_term(WeylKey { hbar: k.hbar, y, forms, u: k.u.clone() }, &coeff);
        }
    }
    out
}

/// `δ⁻¹ = (1/(p+q)) Σ y^i ι_{e_i}` on terms with `p` fibre and `q` form degrees,
/// zero on `p + q = 0`.
pub fn delta_inv(a: &WeylElement) -> WeylElement {
    let n = a.n;
    let mut out = WeylElement::zero(n);
    for (k, c) in &a.terms {
        let p: u32 = k.y.iter().sum();
        let q = k.forms.len() as u32;
        if q == 0 {
            continue;
        }
        let w = c / Scalar::from_integer((p + q).into());
        for (s, &i) in k.forms.iter().enumerate() {
            let mut forms = k.forms.clone();
            forms.remove(s);
            let mut y = k.y.clone();
            y[i] += 1;
            let sign = if s % 2 == 0 { w.clone() } else { -w.clone() };
            out.add_term(WeylKey { hbar: k.hbar, y, forms, u: k.u.clone() }, &sign);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn pi() -> Matrix {
        vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]
    }

    #[test]
    fn generator_commutator() {
        let a = WeylElement::y(2, 0);
        let b = WeylElement::y(2, 1);
        let c = weyl_moyal(&a, &b, &pi()).sub(&weyl_moyal(&b, &a, &pi()));
        assert_eq!(c, WeylElement::term(2, 1, vec![0, 0], vec![], q(-1, 1)));
        assert_eq!(weyl_moyal(&a, &WeylElement::one(2), &pi()), a);
    }

    #[test]
    fn squares_at_second_order() {
        // (y¹)² ∘ (y²)²: ℏ² term is (1/8)·π¹²π¹²·2·2 = 1/2
        let a = WeylElement::term(2, 0, vec![2, 0], vec![], q(1, 1));
        let b = WeylElement::term(2, 0, vec![0, 2], vec![], q(1, 1));
        let p = weyl_moyal(&a, &b, &pi());
        assert_eq!(p.terms().get(&WeylKey { hbar: 2, y: vec![0, 0], forms: vec![], u: vec![] }), Some(&q(1, 2)));
        assert_eq!(p.terms().get(&WeylKey { hbar: 1, y: vec![1, 1], forms: vec![], u: vec![] }), Some(&q(-2, 1)));
    }

    fn random_element(rng: &mut impl rand::Rng, n: usize, max_deg: u32) -> WeylElement {
        let mut w = WeylElement::zero(n);
        for _ in 0..8 {
            let hbar = rng.gen_range(0..2);
            let y: Exponent = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let nf = rng.gen_range(0..=n.min(2));
            let forms: Vec<usize> = (0..nf).map(|_| rng.gen_range(0..n)).collect();
            let c = q(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            let t = WeylElement::term(n, hbar, y, forms, c);
            if t.min_degree().is_some_and(|d| d <= max_deg) {
                w = w.add(&t);
            }
        }
        w
    }

    #[test]
    fn homotopy_identity() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [2, 4] {
            for _ in 0..20 {
                let a = random_element(&mut rng, n, 4);
                let lhs = delta(&delta_inv(&a)).add(&delta_inv(&delta(&a))).add(&a.project_00());
                assert_eq!(lhs, a);
                assert!(delta(&delta(&a)).is_zero());
            }
        }
    }

    #[test]
    fn moyal_is_associative() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let [a, b, c] = [0; 3].map(|_| random_element(&mut rng, 2, 4));
            let l = weyl_moyal(&weyl_moyal(&a, &b, &pi()), &c, &pi());
            let r = weyl_moyal(&a, &weyl_moyal(&b, &c, &pi()), &pi());
            assert_eq!(l, r);
        }
    }

    #[test]
    fn delta_of_generator() {
        assert_eq!(delta(&WeylElement::y(2, 1)), WeylElement::term(2, 0, vec![0, 0], vec![1], q(1, 1)));
        assert!(delta(&WeylElement::one(2)).is_zero());
    }
}
