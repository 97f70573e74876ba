use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::Scalar;

/// Alternating tensor of degree `k` over an `n`-dimensional space, stored by
/// strictly increasing index tuples. Used both for forms in `⋀ᵏg*` and for
/// multivectors in `⋀ᵏg`; the interpretation is up to the caller.
///
/// The component at `(i₁<…<i_k)` is the coefficient of `e^{i₁}∧…∧e^{i_k}`,
/// so for `k = 2` it equals the matrix entry `ω_{i₁i₂}` of the associated
/// antisymmetric matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltForm {
    dim: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, Scalar>,
}

/// Bivectors in `⋀²g` share the representation.
pub type Bivector = AltForm;

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl AltForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        AltForm { dim, degree, components: BTreeMap::new() }
    }

    /// Builds a 2-tensor from the upper triangle of an antisymmetric matrix.
    pub fn from_matrix(m: &[Vec<Scalar>]) -> Self {
        let n = m.len();
        let mut f = AltForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.set(&[i, j], m[i][j].clone());
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Component at an arbitrary index tuple, with the antisymmetry sign.
    pub fn get(&self, idx: &[usize]) -> Scalar {
        let mut v = idx.to_vec();
        match sort_with_sign(&mut v) {
            None => Scalar::zero(),
            Some(s) => self.components.get(&v).map(|c| c * Scalar::from_integer(s.into())).unwrap_or_else(Scalar::zero),
        }
    }

    /// Sets the component at `idx` (any order; the sign is absorbed).
    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        assert_eq!(idx.len(), self.degree);
        let mut v = idx.to_vec();
        let Some(s) = sort_with_sign(&mut v) else {
            assert!(value.is_zero(), "nonzero value on a repeated index");
            return;
        };
        let value = value * Scalar::from_integer(s.into());
        if value.is_zero() {
            self.components.remove(&v);
        } else {
            self.components.insert(v, value);
        }
    }

    /// Adds to the component at `idx` (any order).
    pub fn add_at(&mut self, idx: &[usize], value: &Scalar) {
        let mut v = idx.to_vec();
        let Some(s) = sort_with_sign(&mut v) else { return };
        let cur = self.components.get(&v).cloned().unwrap_or_else(Scalar::zero);
        let next = cur + value * Scalar::from_integer(s.into());
        if next.is_zero() {
            self.components.remove(&v);
        } else {
            self.components.insert(v, next);
        }
    }

    pub fn add(&self, other: &AltForm) -> AltForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (k, c) in &other.components {
            out.add_at(k, c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> AltForm {
        let mut out = AltForm::zero(self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.components {
            out.components.insert(k.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, other: &AltForm) -> AltForm {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    /// Full antisymmetric matrix of a degree-2 tensor.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        assert_eq!(self.degree, 2);
        let n = self.dim;
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for (k, c) in &self.components {
            m[k[0]][k[1]] = c.clone();
            m[k[1]][k[0]] = -c.clone();
        }
        m
    }

    /// Coordinates in the basis of increasing index tuples (all of them), for
    /// use as a vector in linear solves.
    pub fn to_vector(&self, basis: &[Vec<usize>]) -> Vec<Scalar> {
        basis.iter().map(|k| self.components.get(k).cloned().unwrap_or_else(Scalar::zero)).collect()
    }

    pub fn from_vector(dim: usize, degree: usize, basis: &[Vec<usize>], v: &[Scalar]) -> AltForm {
        let mut f = AltForm::zero(dim, degree);
        for (k, c) in basis.iter().zip(v) {
            if !c.is_zero() {
                f.components.insert(k.clone(), c.clone());
            }
        }
        f
    }

    /// Pads the space with trailing dimensions (pull-back along a projection
    /// onto the first `self.dim` coordinates).
    pub fn extend_dim(&self, dim: usize) -> AltForm {
        assert!(dim >= self.dim);
        AltForm { dim, degree: self.degree, components: self.components.clone() }
    }

    /// Renders as `c*e1^e2 + …` with the given basis labels.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components
            .iter()
            .map(|(k, c)| {
                let w: Vec<&str> = k.iter().map(|&i| labels[i].as_str()).collect();
                format!("{}*{}", c, w.join("^"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Strictly increasing index tuples of length `k` from `0..n`.
pub(crate) fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.dim).map(|i| format!("e{i}")).collect();
        write!(f, "AltForm[{}]({})", self.degree, self.display_with(&labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn antisymmetry_by_storage() {
        let mut f = AltForm::zero(3, 2);
        f.set(&[2, 0], q(5, 1));
        assert_eq!(f.get(&[0, 2]), q(-5, 1));
        assert_eq!(f.get(&[2, 0]), q(5, 1));
        assert_eq!(f.get(&[1, 1]), q(0, 1));
        assert_eq!(f.matrix()[2][0], q(5, 1));
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(2, 3).len(), 0);
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
    }
}
