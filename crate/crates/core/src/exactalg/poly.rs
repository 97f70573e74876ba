use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Coeff, Scalar};

/// Exponent multi-index of a monomial.
pub type Exponent = Vec<u32>;

/// Commutative polynomial with exact rational coefficients in a fixed number
/// of variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, Scalar::one())
    }

    pub fn monomial(exp: Exponent) -> Self {
        let n = exp.len();
        Self::term(n, exp, Scalar::one())
    }

    pub fn term(nvars: usize, exp: Exponent, c: Scalar) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exp: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        use std::collections::btree_map::Entry;
        match entry {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &(c * s));
        }
    }

    pub fn mul_poly(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    /// Product discarding all terms of total degree above `max_deg`.
    pub fn mul_truncated(&self, other: &Poly, max_deg: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            if da > max_deg {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > max_deg {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn truncate_degree(&self, max_deg: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `∂^k f/∂x_i^k`.
    pub fn diff(&self, i: usize, k: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if k == 0 {
            return self.clone();
        }
        for (e, c) in &self.terms {
            if e[i] < k {
                continue;
            }
            let mut f = Scalar::one();
            for j in 0..k {
                f *= Scalar::from_integer((e[i] - j).into());
            }
            let mut ne = e.clone();
            ne[i] -= k;
            out.add_term(ne, &(c * f));
        }
        out
    }

    /// `∂^α f` for a multi-index `α`.
    pub fn diff_multi(&self, alpha: &[u32]) -> Poly {
        let mut out = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 {
                out = out.diff(i, a);
                if out.is_zero() {
                    break;
                }
            }
        }
        out
    }

    /// Substitutes `x_i = value`, keeping the variable slot (exponent set to 0).
    pub fn substitute(&self, i: usize, value: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let p = ne[i];
            ne[i] = 0;
            let mut v = Scalar::one();
            for _ in 0..p {
                v *= value;
            }
            out.add_term(ne, &(c * v));
        }
        out
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    /// Drops variable slot `i` (which must not occur).
    pub fn drop_var(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            assert_eq!(e[i], 0, "dropping a variable that still occurs");
            let mut ne = e.clone();
            ne.remove(i);
            out.add_term(ne, c);
        }
        out
    }

    /// Embeds into a ring with more variables (new slots appended).
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.resize(nvars, 0);
            out.add_term(ne, c);
        }
        out
    }

    /// Composition `f(g_1(y), …, g_n(y))`, truncated at degree `max_deg` in `y`.
    pub fn compose_truncated(&self, subs: &[Poly], max_deg: u32) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map(Poly::nvars).unwrap_or(0);
        let mut out = Poly::zero(m);
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(m), s.truncate_degree(max_deg)]).collect();
        for (e, c) in &self.terms {
            let mut acc = Poly::constant(m, c.clone());
            for (i, &p) in e.iter().enumerate() {
                while powers[i].len() <= p as usize {
                    let next = powers[i].last().unwrap().mul_truncated(&powers[i][1], max_deg);
                    powers[i].push(next);
                }
                acc = acc.mul_truncated(&powers[i][p as usize], max_deg);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }

    /// Renders with the supplied variable labels, e.g. `1/2*x1^2*x2 - u`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { labels[i].clone() } else { format!("{}^{}", labels[i], p) })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        out
    }

    fn default_labels(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&self.default_labels()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Coeff for Poly {
    fn is_null(&self) -> bool {
        self.terms.is_empty()
    }
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(self, s);
        out
    }
    fn compatible(&self, other: &Self) -> bool {
        self.nvars == other.nvars
    }
}

/// All exponent vectors of total degree exactly `deg`, in lexicographic order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Exponent> {
    fn rec(n: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

/// All exponent vectors of total degree `≤ deg`, by increasing degree.
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Exponent> {
    (0..=deg).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn derivative_and_substitution() {
        // f = 3 x^2 y + u
        let mut f = Poly::zero(3);
        f.add_term(vec![2, 1, 0], &q(3, 1));
        f.add_term(vec![0, 0, 1], &q(1, 1));
        assert_eq!(f.diff(0, 2), Poly::term(3, vec![0, 1, 0], q(6, 1)));
        let g = f.substitute(2, &q(1, 1));
        assert_eq!(g.coeff(&[0, 0, 0]), q(1, 1));
        assert_eq!(f.diff_multi(&[1, 1, 0]), Poly::term(3, vec![1, 0, 0], q(6, 1)));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 4).len(), 35);
        assert_eq!(monomials_up_to(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn composition_truncates() {
        // (x + x^2)^2 truncated at degree 3 = x^2 + 2x^3
        let x = Poly::var(1, 0);
        let s = x.add(&x.mul_poly(&x));
        let f = Poly::monomial(vec![2]);
        let c = f.compose_truncated(&[s], 3);
        assert_eq!(c.coeff(&[2]), q(1, 1));
        assert_eq!(c.coeff(&[3]), q(2, 1));
        assert_eq!(c.coeff(&[4]), q(0, 1));
    }
}
