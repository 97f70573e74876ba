use std::collections::BTreeMap;

use num_traits::One;

use super::pbw::{Enveloping, Monomial, PBWElement};
use crate::error::Error;
use crate::exactalg::{HbarSeries, Scalar};

/// Element of `U(g)^{⊗k}[[ℏ]]`, every leg in PBW normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UTensor {
    arity: usize,
    order: usize,
    terms: BTreeMap<Vec<Monomial>, HbarSeries>,
}

/// `U(g)⊗U(g)[[ℏ]]`.
pub type TensorSquareU = UTensor;

impl UTensor {
    pub fn zero(arity: usize, order: usize) -> Self {
        UTensor { arity, order, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize, order: usize) -> Self {
        let mut t = Self::zero(arity, order);
        t.add_term(vec![Vec::new(); arity], &HbarSeries::one(order));
        t
    }

    /// `a₁ ⊗ … ⊗ a_k`.
    pub fn pure(legs: &[PBWElement]) -> Self {
        let order = legs.first().map(PBWElement::order).unwrap_or(0);
        let mut t = Self::one(legs.len(), order);
        for (pos, leg) in legs.iter().enumerate() {
            let mut next = Self::zero(legs.len(), order);
            for (key, c) in &t.terms {
                for (m, d) in leg.terms() {
                    let mut k = key.clone();
                    k[pos] = m.clone();
                    next.add_term(k, &c.mul(d));
                }
            }
            t = next;
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, HbarSeries> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Monomial]) -> HbarSeries {
        self.terms.get(key).cloned().unwrap_or_else(|| HbarSeries::zero(self.order))
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, c: &HbarSeries) {
        assert_eq!(key.len(), self.arity);
        let c = c.with_order(self.order);
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(key.clone()).or_insert_with(|| HbarSeries::zero(self.order));
            slot.add_assign(&c);
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &UTensor) -> UTensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &UTensor) -> UTensor {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> UTensor {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_series(&self, s: &HbarSeries) -> UTensor {
        let s = s.with_order(self.order);
        self.map_coeffs(|c| c.mul(&s))
    }

    /// Multiplies by `ℏ^k`.
    pub fn shift(&self, k: usize) -> UTensor {
        self.map_coeffs(|c| c.shift(k))
    }

    /// Divides by `ℏ^k`, provided the lower coefficients vanish; the top `k`
    /// orders become zero.
    pub fn unshift(&self, k: usize) -> Option<UTensor> {
        let mut out = Self::zero(self.arity, self.order);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), &c.unshift(k)?);
        }
        Some(out)
    }

    fn map_coeffs(&self, f: impl Fn(&HbarSeries) -> HbarSeries) -> UTensor {
        let mut out = Self::zero(self.arity, self.order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn with_order(&self, order: usize) -> UTensor {
        let mut out = Self::zero(self.arity, order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.with_order(order));
        }
        out
    }

    /// The scalar `ℏ^k` coefficient, as a tensor placed at ℏ⁰.
    pub fn hbar_coeff(&self, k: usize) -> UTensor {
        let mut out = Self::zero(self.arity, self.order);
        for (key, c) in &self.terms {
            if let Some(v) = c.coeff(k) {
                out.add_term(key.clone(), &HbarSeries::constant(v.clone(), self.order));
            }
        }
        out
    }

    /// Largest PBW degree of any leg.
    pub fn max_leg_degree(&self) -> usize {
        self.terms.keys().flat_map(|k| k.iter().map(Vec::len)).max().unwrap_or(0)
    }

    /// Applies `ε` to leg `pos`.
    pub fn counit_leg(&self, pos: usize) -> UTensor {
        let mut out = Self::zero(self.arity - 1, self.order);
        for (key, c) in &self.terms {
            if key[pos].is_empty() {
                let mut k = key.clone();
                k.remove(pos);
                out.add_term(k, c);
            }
        }
        out
    }

    /// Applies `Δ` to leg `pos`; the two new legs occupy `pos` and `pos+1`.
    pub fn coproduct_leg(&self, pos: usize) -> UTensor {
        let mut out = Self::zero(self.arity + 1, self.order);
        for (key, c) in &self.terms {
            for (a, b) in split_monomial(&key[pos]) {
                let mut k = key[..pos].to_vec();
                k.push(a);
                k.push(b);
                k.extend_from_slice(&key[pos + 1..]);
                out.add_term(k, c);
            }
        }
        out
    }

    /// Inserts a unit leg at position `pos` (`F⊗1` is `insert_unit(2)`).
    pub fn insert_unit(&self, pos: usize) -> UTensor {
        let mut out = Self::zero(self.arity + 1, self.order);
        for (key, c) in &self.terms {
            let mut k = key.clone();
            k.insert(pos, Vec::new());
            out.add_term(k, c);
        }
        out
    }

    /// Permutes legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> UTensor {
        let mut out = Self::zero(self.arity, self.order);
        for (key, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| key[p].clone()).collect(), c);
        }
        out
    }

    /// Extracts a single leg from an arity-one tensor.
    pub fn into_element(&self) -> PBWElement {
        assert_eq!(self.arity, 1);
        let mut out = PBWElement::zero(self.order);
        for (key, c) in &self.terms {
            out.add_term(key[0].clone(), c);
        }
        out
    }
}

impl std::fmt::Debug for UTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<String> = k
                    .iter()
                    .map(|m| if m.is_empty() { "1".into() } else { m.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("") })
                    .collect();
                format!("{c}·({})", legs.join("⊗"))
            })
            .collect();
        write!(f, "UTensor({})", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// All ordered splits of a PBW monomial into complementary subsequences,
/// with multiplicity.
fn split_monomial(m: &[usize]) -> Vec<(Monomial, Monomial)> {
    let n = m.len();
    (0..1u64 << n)
        .map(|mask| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, &x) in m.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(x);
                } else {
                    b.push(x);
                }
            }
            (a, b)
        })
        .collect()
}

impl Enveloping {
    /// `Δ`, extended multiplicatively from `Δ(X) = X⊗1 + 1⊗X`. On a PBW
    /// monomial it sums over the splits into complementary subsequences,
    /// which stay sorted.
    pub fn coproduct(&self, u: &PBWElement) -> TensorSquareU {
        let mut t = UTensor::zero(1, u.order());
        for (m, c) in u.terms() {
            t.add_term(vec![m.clone()], c);
        }
        t.coproduct_leg(0)
    }

    /// `ε(u)`.
    pub fn counit(&self, u: &PBWElement) -> HbarSeries {
        u.counit()
    }

    /// Legwise product in `U^{⊗k}`.
    pub fn tensor_mul(&self, a: &UTensor, b: &UTensor) -> Result<UTensor, Error> {
        if a.arity != b.arity || a.order != b.order || a.order != self.order() {
            return Err(Error::Incompatible(format!(
                "tensor shapes ({}, order {}) and ({}, order {})",
                a.arity, a.order, b.arity, b.order
            )));
        }
        let mut out = UTensor::zero(a.arity, a.order);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let c = ca.mul(cb);
                if c.is_zero() {
                    continue;
                }
                // legwise product, ℏ-weights added across legs
                let mut partial: Vec<(Vec<Monomial>, HbarSeries)> = vec![(Vec::new(), c)];
                for leg in 0..a.arity {
                    let mut word = ka[leg].clone();
                    word.extend_from_slice(&kb[leg]);
                    let nf = self.pbw_normalize(&word);
                    let mut next = Vec::new();
                    for (prefix, pc) in &partial {
                        for (m, mc) in nf.terms() {
                            let cc = pc.mul(mc);
                            if cc.is_zero() {
                                continue;
                            }
                            let mut p = prefix.clone();
                            p.push(m.clone());
                            next.push((p, cc));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, &c);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of an element `1 + O(ℏ)` by the geometric series.
    pub fn tensor_inverse(&self, a: &UTensor) -> Result<UTensor, Error> {
        let one = UTensor::one(a.arity, a.order);
        let x = one.sub(a);
        if x.terms.values().any(|c| c.coeff(0).is_some_and(|v| !num_traits::Zero::is_zero(v))) {
            return Err(Error::Invalid("only elements of the form 1 + O(ℏ) are inverted".into()));
        }
        let mut out = one.clone();
        let mut pow = one;
        for _ in 0..a.order {
            pow = self.tensor_mul(&pow, &x)?;
            out = out.add(&pow);
        }
        Ok(out)
    }

    /// Element inverse of `1 + O(ℏ)` in `U`.
    pub fn inverse(&self, a: &PBWElement) -> Result<PBWElement, Error> {
        let mut t = UTensor::zero(1, a.order());
        for (m, c) in a.terms() {
            t.add_term(vec![m.clone()], c);
        }
        Ok(self.tensor_inverse(&t)?.into_element())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::liecore::LieAlgebra;

    fn n2() -> LieAlgebra {
        LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap()
    }

    fn mono(m: &[usize], n: usize) -> PBWElement {
        PBWElement::monomial(m.to_vec(), HbarSeries::one(n))
    }

    #[test]
    fn primitive_generator() {
        let u = Enveloping::classical(n2(), 2).unwrap();
        let d = u.coproduct(&mono(&[0], 2));
        let expect = UTensor::pure(&[mono(&[0], 2), PBWElement::one(2)]).add(&UTensor::pure(&[PBWElement::one(2), mono(&[0], 2)]));
        assert_eq!(d, expect);
    }

    #[test]
    fn coproduct_of_product_is_product_of_coproducts() {
        let u = Enveloping::deformed(n2(), 2).unwrap();
        let a = mono(&[1], 2);
        let b = mono(&[0], 2);
        let lhs = u.coproduct(&u.mul(&a, &b).unwrap());
        let rhs = u.tensor_mul(&u.coproduct(&a), &u.coproduct(&b)).unwrap();
        assert_eq!(lhs, rhs);
        // Δ(e1e2) = e1e2⊗1 + e1⊗e2 + e2⊗e1 + 1⊗e1e2
        let d = u.coproduct(&mono(&[0, 1], 2));
        assert_eq!(d.terms().len(), 4);
        assert_eq!(d.coeff(&[vec![1], vec![0]]), HbarSeries::one(2));
    }

    #[test]
    fn counit_kills_positive_degree() {
        let u = Enveloping::deformed(n2(), 2).unwrap();
        let x = PBWElement::one(2).add(&PBWElement::monomial(vec![0], HbarSeries::monomial(q(1, 1), 1, 2)));
        assert_eq!(u.counit(&x), HbarSeries::one(2));
    }

    #[test]
    fn inverse_of_unipotent() {
        let u = Enveloping::classical(n2(), 3).unwrap();
        let x = PBWElement::one(3).add(&PBWElement::monomial(vec![0, 1], HbarSeries::monomial(q(2, 1), 1, 3)));
        let y = u.inverse(&x).unwrap();
        assert_eq!(u.mul(&x, &y).unwrap(), PBWElement::one(3));
    }
}
