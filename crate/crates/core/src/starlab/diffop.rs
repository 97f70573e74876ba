use std::collections::BTreeMap;

use num_traits::One;

use crate::exactalg::{multi_factorial, Coeff, Exponent, Poly, Scalar};

/// Differential operator `Σ c_I(x) ∂^I` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Exponent, Poly>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp { nvars, terms: BTreeMap::new() }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::derivative(nvars, vec![0; nvars], Poly::one(nvars))
    }

    /// `c·∂^α`.
    pub fn derivative(nvars: usize, alpha: Exponent, c: Poly) -> Self {
        let mut d = Self::zero(nvars);
        d.add_term(alpha, &c);
        d
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order present.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    pub fn coeff(&self, alpha: &[u32]) -> Poly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn add_term(&mut self, alpha: Exponent, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(alpha.clone()).or_insert_with(|| Poly::zero(self.nvars));
        slot.add_scaled(c, &Scalar::one());
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &c.scale(s));
        }
        out
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, c) in &self.terms {
            let d = f.diff_multi(a);
            if !d.is_zero() {
                out.add_scaled(&c.mul_poly(&d), &Scalar::one());
            }
        }
        out
    }

    /// Drops coefficient terms above degree `jet`.
    pub fn truncate(&self, jet: u32) -> DiffOp {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &c.truncate_degree(jet));
        }
        out
    }

    /// `self ∘ other`, coefficients truncated at degree `jet` when given.
    /// Uses `∂^I (d ∂^J) = Σ_{K≤I} binom(I,K) (∂^K d) ∂^{I−K+J}`.
    pub fn compose(&self, other: &DiffOp, jet: Option<u32>) -> DiffOp {
        let mut out = Self::zero(self.nvars);
        for (i, c) in &self.terms {
            for (j, d) in &other.terms {
                for k in sub_indices(i) {
                    let dk = d.diff_multi(&k);
                    if dk.is_zero() {
                        continue;
                    }
                    let coeff = binom_multi(i, &k);
                    let prod = match jet {
                        Some(t) => c.mul_truncated(&dk, t),
                        None => c.mul_poly(&dk),
                    };
                    let alpha: Exponent = i.iter().zip(&k).zip(j).map(|((a, b), c)| a - b + c).collect();
                    out.add_term(alpha, &prod.scale(&coeff));
                }
            }
        }
        out
    }
}

/// Bidifferential operator `Σ c_{IJ}(x) ∂^I ⊗ ∂^J`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiDiffOp {
    nvars: usize,
    terms: BTreeMap<(Exponent, Exponent), Poly>,
}

impl BiDiffOp {
    pub fn zero(nvars: usize) -> Self {
        BiDiffOp { nvars, terms: BTreeMap::new() }
    }

    /// `f ⊗ g ↦ fg`.
    pub fn multiplication(nvars: usize) -> Self {
        let mut b = Self::zero(nvars);
        b.add_term(vec![0; nvars], vec![0; nvars], &Poly::one(nvars));
        b
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<(Exponent, Exponent), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: &[u32], j: &[u32]) -> Poly {
        self.terms.get(&(i.to_vec(), j.to_vec())).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn add_term(&mut self, i: Exponent, j: Exponent, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let slot = self.terms.entry(key.clone()).or_insert_with(|| Poly::zero(self.nvars));
        slot.add_scaled(c, &Scalar::one());
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &BiDiffOp) -> BiDiffOp {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(i.clone(), j.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> BiDiffOp {
        let mut out = Self::zero(self.nvars);
        for ((i, j), c) in &self.terms {
            out.add_term(i.clone(), j.clone(), &c.scale(s));
        }
        out
    }

    /// `B(g, f)` as an operator.
    pub fn opposite(&self) -> BiDiffOp {
        let mut out = Self::zero(self.nvars);
        for ((i, j), c) in &self.terms {
            out.add_term(j.clone(), i.clone(), c);
        }
        out
    }

    /// `a ⊗ b`, coefficients multiplied (and truncated at `jet` when given).
    pub fn tensor(a: &DiffOp, b: &DiffOp, jet: Option<u32>) -> BiDiffOp {
        let mut out = Self::zero(a.nvars());
        for (i, c) in a.terms() {
            for (j, d) in b.terms() {
                let prod = match jet {
                    Some(t) => c.mul_truncated(d, t),
                    None => c.mul_poly(d),
                };
                out.add_term(i.clone(), j.clone(), &prod);
            }
        }
        out
    }

    /// Highest derivative order in either argument.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i.iter().sum::<u32>().max(j.iter().sum())).max().unwrap_or(0)
    }

    pub fn apply(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        let mut df: BTreeMap<&Exponent, Poly> = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            let a = df.entry(i).or_insert_with(|| f.diff_multi(i));
            if a.is_zero() {
                continue;
            }
            let b = g.diff_multi(j);
            if b.is_zero() {
                continue;
            }
            out.add_scaled(&c.mul_poly(&a.mul_poly(&b)), &Scalar::one());
        }
        out
    }

    pub fn truncate(&self, jet: u32) -> BiDiffOp {
        let mut out = Self::zero(self.nvars);
        for ((i, j), c) in &self.terms {
            out.add_term(i.clone(), j.clone(), &c.truncate_degree(jet));
        }
        out
    }

    /// Recovers the operator from its values on monomials, assuming order at
    /// most `max_order` in each argument:
    /// `c_{IJ}(x) = (1/I!J!) Σ_{I'≤I, J'≤J} binom(I,I') binom(J,J') (−x)^{I−I'} (−x)^{J−J'} B(x^{I'}, x^{J'})`.
    pub fn from_values(nvars: usize, max_order: u32, mut value: impl FnMut(&Exponent, &Exponent) -> Poly) -> BiDiffOp {
        let idx = crate::exactalg::monomials_up_to(nvars, max_order);
        let mut cache: BTreeMap<(Exponent, Exponent), Poly> = BTreeMap::new();
        let mut out = Self::zero(nvars);
        for i in &idx {
            for j in &idx {
                let mut c = Poly::zero(nvars);
                for i2 in sub_indices(i) {
                    for j2 in sub_indices(j) {
                        let v = cache.entry((i2.clone(), j2.clone())).or_insert_with(|| value(&i2, &j2)).clone();
                        if v.is_zero() {
                            continue;
                        }
                        let rest: Exponent = i.iter().zip(&i2).zip(j.iter().zip(&j2)).map(|((a, b), (c, d))| a - b + c - d).collect();
                        let deg: u32 = rest.iter().sum();
                        let sign = if deg.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
                        let coeff = binom_multi(i, &i2) * binom_multi(j, &j2) * sign;
                        c.add_scaled(&v.mul_poly(&Poly::monomial(rest)), &coeff);
                    }
                }
                let norm = multi_factorial(i) * multi_factorial(j);
                out.add_term(i.clone(), j.clone(), &c.scale(&(Scalar::one() / norm)));
            }
        }
        out
    }
}

/// All `K ≤ I` componentwise.
pub(crate) fn sub_indices(i: &[u32]) -> Vec<Exponent> {
    let mut out = vec![Vec::new()];
    for &a in i {
        out = out.into_iter().flat_map(|p: Exponent| (0..=a).map(move |b| {
            let mut q = p.clone();
            q.push(b);
            q
        })).collect();
    }
    out
}

/// `Π binom(I_k, K_k)`.
pub(crate) fn binom_multi(i: &[u32], k: &[u32]) -> Scalar {
    let mut out = Scalar::one();
    for (&a, &b) in i.iter().zip(k) {
        out *= multi_factorial(&[a]) / (multi_factorial(&[b]) * multi_factorial(&[a - b]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn composition_is_leibniz() {
        // ∂_x ∘ (x ∂_x) = ∂_x + x ∂_x²
        let a = DiffOp::derivative(1, vec![1], Poly::one(1));
        let b = DiffOp::derivative(1, vec![1], Poly::var(1, 0));
        let c = a.compose(&b, None);
        let expect = DiffOp::derivative(1, vec![1], Poly::one(1)).add(&DiffOp::derivative(1, vec![2], Poly::var(1, 0)));
        assert_eq!(c, expect);
        let f = Poly::monomial(vec![3]);
        assert_eq!(c.apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn reconstruction_from_values() {
        let mut b = BiDiffOp::zero(2);
        b.add_term(vec![1, 0], vec![0, 1], &Poly::var(2, 0));
        b.add_term(vec![0, 0], vec![0, 0], &Poly::one(2));
        b.add_term(vec![1, 1], vec![0, 0], &Poly::constant(2, q(3, 2)));
        let r = BiDiffOp::from_values(2, 2, |i, j| b.apply(&Poly::monomial(i.clone()), &Poly::monomial(j.clone())));
        assert_eq!(r, b);
    }
}
