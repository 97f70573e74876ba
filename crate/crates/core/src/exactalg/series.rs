use std::fmt;

use num_traits::Zero;

use super::Scalar;
use crate::error::Error;

/// Coefficient module for ℏ-series: anything that can be added, multiplied
/// and scaled exactly.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_null(&self) -> bool;
    /// A zero living in the same module as `self`.
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
    fn neg(&self) -> Self {
        self.scale(&-Scalar::from_integer(1.into()))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coeff for Scalar {
    fn is_null(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

/// A formal power series `Σ_{k≤N} c_k ℏ^k` truncated at a fixed order `N`.
///
/// The truncation order is always `coeffs.len() - 1`; it is carried with the
/// value and never inferred from the data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HbarSeries<T = Scalar> {
    coeffs: Vec<T>,
}

impl<T: Coeff> HbarSeries<T> {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the ℏ⁰ slot");
        HbarSeries { coeffs }
    }

    /// `c·ℏ^power` at truncation `order` (zero if `power > order`).
    pub fn monomial(c: T, power: usize, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        if power <= order {
            coeffs[power] = c;
        }
        HbarSeries { coeffs }
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn zero_like(template: &T, order: usize) -> Self {
        HbarSeries { coeffs: vec![template.zero_like(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut T {
        &mut self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_null)
    }

    /// Re-truncates to a smaller order, or pads with zeros to a larger one.
    pub fn with_order(&self, order: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut coeffs: Vec<T> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, zero);
        HbarSeries { coeffs }
    }

    /// Sum, truncated to the smaller of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        HbarSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        HbarSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        HbarSeries { coeffs: self.coeffs.iter().map(Coeff::neg).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        HbarSeries { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// In-place `self += other` keeping `self`'s order (`other` must not be
    /// shorter).
    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a = a.add(b);
        }
    }

    /// Multiplies by `ℏ^k`, discarding what falls past the truncation.
    pub fn shift(&self, k: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let n = self.order();
        let coeffs = (0..=n)
            .map(|i| if i >= k { self.coeffs[i - k].clone() } else { zero.clone() })
            .collect();
        HbarSeries { coeffs }
    }

    /// Divides by `ℏ^k`; the low coefficients must vanish. The order drops by
    /// `k` only conceptually: the top slots are padded with zeros that carry
    /// no information, so callers truncate afterwards.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_null()) {
            return None;
        }
        let zero = self.coeffs[0].zero_like();
        let n = self.order();
        let coeffs = (0..=n)
            .map(|i| self.coeffs.get(i + k).cloned().unwrap_or_else(|| zero.clone()))
            .collect();
        Some(HbarSeries { coeffs })
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> HbarSeries<U> {
        HbarSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl HbarSeries<Scalar> {
    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::from_integer(1.into()), order)
    }
    pub fn zero(order: usize) -> Self {
        HbarSeries { coeffs: vec![Scalar::zero(); order + 1] }
    }
}

/// Cauchy product truncated at `min(N_a, N_b)`.
pub fn series_mul<T: Coeff>(a: &HbarSeries<T>, b: &HbarSeries<T>) -> Result<HbarSeries<T>, Error> {
    if !a.coeffs[0].compatible(&b.coeffs[0]) {
        return Err(Error::Incompatible("series coefficients live in different modules".into()));
    }
    let n = a.order().min(b.order());
    let zero = a.coeffs[0].zero_like();
    let mut out = vec![zero; n + 1];
    for i in 0..=n {
        if a.coeffs[i].is_null() {
            continue;
        }
        for j in 0..=n - i {
            if b.coeffs[j].is_null() {
                continue;
            }
            out[i + j] = out[i + j].add(&a.coeffs[i].mul(&b.coeffs[j]));
        }
    }
    Ok(HbarSeries { coeffs: out })
}

impl<T: Coeff> HbarSeries<T> {
    /// Infallible product for coefficient modules where compatibility is not in
    /// question.
    pub fn mul(&self, other: &Self) -> Self {
        series_mul(self, other).expect("incompatible series coefficients")
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for HbarSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_null() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*ℏ")?,
                _ => write!(f, "({c})*ℏ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Coeff + fmt::Debug> fmt::Debug for HbarSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn s(c: &[i64]) -> HbarSeries {
        HbarSeries::from_coeffs(c.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(series_mul(&s(&[1, 1, 0]), &s(&[1, -1, 0])).unwrap(), s(&[1, 0, -1]));
    }

    #[test]
    fn truncation_discards_high_orders() {
        assert_eq!(series_mul(&s(&[1, 1]), &s(&[1, -1])).unwrap(), s(&[1, 0]));
        assert_eq!(series_mul(&s(&[0, 1]), &s(&[0, 1])).unwrap(), s(&[0, 0]));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let p = series_mul(&s(&[1, 1, 1]), &s(&[1, 1])).unwrap();
        assert_eq!(p.order(), 1);
        assert_eq!(s(&[1, 2, 3]).add(&s(&[1, 1])), s(&[2, 3]));
    }

    #[test]
    fn shift_and_unshift() {
        assert_eq!(s(&[1, 2, 3]).shift(1), s(&[0, 1, 2]));
        assert_eq!(s(&[0, 1, 2]).unshift(1).unwrap(), s(&[1, 2, 0]));
        assert!(s(&[1, 1, 0]).unshift(1).is_none());
    }
}
