use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactalg::{multi_factorial, factorial, Exponent, HbarSeries, Scalar, MAX_ORDER};
use crate::liecore::LieAlgebra;

/// Weakly increasing sequence of basis indices `e_{i₁}•…•e_{i_k}`.
pub type Monomial = Vec<usize>;

type Straightened = Arc<Vec<(Monomial, Scalar)>>;

/// Rewriting strategy for [`Enveloping::pbw_normalize_with`]. All strategies
/// reach the same normal form.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Picks a descent pseudo-randomly from the seed.
    Seeded(u64),
}

/// Element of `U_ℏ(g)` (or `U(g)[[ℏ]]`) as a map from PBW monomials to
/// ℏ-series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PBWElement {
    order: usize,
    terms: BTreeMap<Monomial, HbarSeries>,
}

impl PBWElement {
    pub fn zero(order: usize) -> Self {
        PBWElement { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Vec::new(), HbarSeries::one(order))
    }

    pub fn generator(i: usize, order: usize) -> Self {
        Self::monomial(vec![i], HbarSeries::one(order))
    }

    /// `c·m`; `m` must already be weakly increasing.
    pub fn monomial(m: Monomial, c: HbarSeries) -> Self {
        assert!(m.windows(2).all(|w| w[0] <= w[1]), "PBW monomials are weakly increasing");
        let order = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PBWElement { order, terms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, HbarSeries> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[usize]) -> HbarSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| HbarSeries::zero(self.order))
    }

    /// Highest PBW degree present.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: &HbarSeries) {
        let c = c.with_order(self.order);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(|| HbarSeries::zero(self.order));
        slot.add_assign(&c);
        if slot.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &PBWElement) -> PBWElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> PBWElement {
        self.scale_series(&HbarSeries::constant(s.clone(), self.order))
    }

    pub fn scale_series(&self, s: &HbarSeries) -> PBWElement {
        let mut out = PBWElement::zero(self.order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.mul(&s.with_order(self.order)));
        }
        out
    }

    /// Multiplies by `ℏ^k`.
    pub fn shift(&self, k: usize) -> PBWElement {
        let mut out = PBWElement::zero(self.order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.shift(k));
        }
        out
    }

    /// The `ℏ^k` coefficient as an element with scalar coefficients placed at
    /// order 0.
    pub fn hbar_coeff(&self, k: usize) -> PBWElement {
        let mut out = PBWElement::zero(self.order);
        for (m, c) in &self.terms {
            if let Some(v) = c.coeff(k) {
                out.add_term(m.clone(), &HbarSeries::constant(v.clone(), self.order));
            }
        }
        out
    }

    /// Counit `ε`: the coefficient of the empty monomial.
    pub fn counit(&self) -> HbarSeries {
        self.coeff(&[])
    }
}

impl std::fmt::Debug for PBWElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let w: Vec<String> = m.iter().map(|i| format!("e{}", i + 1)).collect();
                format!("{c}·[{}]", w.join(" "))
            })
            .collect();
        write!(f, "PBW({})", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Context for computing in `U_ℏ(g)` or `U(g)[[ℏ]]` at a fixed truncation.
pub struct Enveloping {
    lie: LieAlgebra,
    order: usize,
    deformed: bool,
    straighten_cache: Mutex<HashMap<Vec<usize>, Straightened>>,
    sym_cache: Mutex<HashMap<Exponent, Straightened>>,
    pub(super) gutt_cache: Mutex<HashMap<(Exponent, Exponent), HbarSeries<crate::exactalg::Poly>>>,
}

impl Enveloping {
    /// `U_ℏ(g)` with `xy − yx = ℏ[x,y]`.
    pub fn deformed(lie: LieAlgebra, order: usize) -> Result<Self, Error> {
        Self::build(lie, order, true)
    }

    /// Ordinary `U(g)` with coefficients in `ℝ[[ℏ]]`.
    pub fn classical(lie: LieAlgebra, order: usize) -> Result<Self, Error> {
        Self::build(lie, order, false)
    }

    fn build(lie: LieAlgebra, order: usize, deformed: bool) -> Result<Self, Error> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooHigh { requested: order, max: MAX_ORDER });
        }
        Ok(Enveloping {
            lie,
            order,
            deformed,
            straighten_cache: Mutex::new(HashMap::new()),
            sym_cache: Mutex::new(HashMap::new()),
            gutt_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_deformed(&self) -> bool {
        self.deformed
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// Straightening in the ordinary `U(g)`; each bracket contraction shortens
    /// the word by one, which is where the ℏ-weight comes from in `U_ℏ`.
    pub(crate) fn straighten(&self, word: &[usize]) -> Straightened {
        if word.windows(2).all(|w| w[0] <= w[1]) {
            return Arc::new(vec![(word.to_vec(), Scalar::one())]);
        }
        if let Some(hit) = self.straighten_cache.lock().unwrap().get(word) {
            return hit.clone();
        }
        let i = word.windows(2).position(|w| w[0] > w[1]).expect("unsorted word has a descent");
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        let mut swapped = word.to_vec();
        swapped.swap(i, i + 1);
        for (m, c) in self.straighten(&swapped).iter() {
            *acc.entry(m.clone()).or_insert_with(Scalar::zero) += c;
        }
        let br = self.lie.bracket(word[i], word[i + 1]);
        for (k, ck) in br.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let mut w = Vec::with_capacity(word.len() - 1);
            w.extend_from_slice(&word[..i]);
            w.push(k);
            w.extend_from_slice(&word[i + 2..]);
            for (m, c) in self.straighten(&w).iter() {
                *acc.entry(m.clone()).or_insert_with(Scalar::zero) += c * ck;
            }
        }
        let mut out: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort();
        let out = Arc::new(out);
        self.straighten_cache.lock().unwrap().insert(word.to_vec(), out.clone());
        out
    }

    fn weight(&self, word_len: usize, m: &Monomial) -> Option<usize> {
        if !self.deformed {
            return Some(0);
        }
        let p = word_len - m.len();
        (p <= self.order).then_some(p)
    }

    /// Adds `c · (normal form of word)` into `out`.
    fn accumulate_word(&self, out: &mut PBWElement, word: &[usize], c: &HbarSeries) {
        for (m, s) in self.straighten(word).iter() {
            if let Some(p) = self.weight(word.len(), m) {
                out.add_term(m.clone(), &c.scale(s).shift(p));
            }
        }
    }

    /// Normal form of a word of basis indices.
    pub fn pbw_normalize(&self, word: &[usize]) -> PBWElement {
        let mut out = PBWElement::zero(self.order);
        self.accumulate_word(&mut out, word, &HbarSeries::one(self.order));
        out
    }

    /// Normal form by direct rewriting with a chosen descent-selection rule;
    /// not memoized. Exists to exhibit confluence.
    pub fn pbw_normalize_with(&self, word: &[usize], strategy: Strategy) -> PBWElement {
        let mut state = match strategy {
            Strategy::Seeded(s) => s | 1,
            _ => 1,
        };
        // (word, ℏ-power) → coefficient
        let mut work: BTreeMap<(Vec<usize>, usize), Scalar> = BTreeMap::new();
        work.insert((word.to_vec(), 0), Scalar::one());
        let mut done = PBWElement::zero(self.order);
        while let Some(((w, p), c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
            if descents.is_empty() {
                if p <= self.order {
                    done.add_term(w, &HbarSeries::monomial(c, p, self.order));
                }
                continue;
            }
            let i = match strategy {
                Strategy::Leftmost => descents[0],
                Strategy::Rightmost => *descents.last().unwrap(),
                Strategy::Seeded(_) => {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    descents[(state % descents.len() as u64) as usize]
                }
            };
            let mut sw = w.clone();
            sw.swap(i, i + 1);
            *work.entry((sw, p)).or_insert_with(Scalar::zero) += &c;
            let np = if self.deformed { p + 1 } else { 0 };
            for (k, ck) in self.lie.bracket(w[i], w[i + 1]).iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                let mut nw = w[..i].to_vec();
                nw.push(k);
                nw.extend_from_slice(&w[i + 2..]);
                *work.entry((nw, np)).or_insert_with(Scalar::zero) += &c * ck;
            }
        }
        done
    }

    fn check(&self, a: &PBWElement) -> Result<(), Error> {
        if a.order != self.order {
            return Err(Error::Incompatible(format!(
                "element truncated at order {} but the algebra at order {}",
                a.order, self.order
            )));
        }
        if let Some(m) = a.terms.keys().find(|m| m.iter().any(|&i| i >= self.dim())) {
            return Err(Error::Incompatible(format!("monomial {m:?} outside a {}-dimensional algebra", self.dim())));
        }
        Ok(())
    }

    /// Product `a • b`.
    pub fn mul(&self, a: &PBWElement, b: &PBWElement) -> Result<PBWElement, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero(self.order);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca.mul(cb);
                if c.is_zero() {
                    continue;
                }
                let mut w = ma.clone();
                w.extend_from_slice(mb);
                self.accumulate_word(&mut out, &w, &c);
            }
        }
        out
    }

    /// Symmetrized product in the ordinary `U(g)`, memoized per exponent.
    fn sym_classical(&self, exp: &[u32]) -> Straightened {
        if let Some(hit) = self.sym_cache.lock().unwrap().get(exp) {
            return hit.clone();
        }
        let mut word: Vec<usize> = exp.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize)).collect();
        let k = word.len() as u32;
        // each distinct arrangement occurs α!/… times among the k! permutations
        let weight = multi_factorial(exp) / factorial(k);
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        loop {
            for (m, c) in self.straighten(&word).iter() {
                *acc.entry(m.clone()).or_insert_with(Scalar::zero) += c * &weight;
            }
            if !next_permutation(&mut word) {
                break;
            }
        }
        let mut out: Vec<(Monomial, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort();
        let out = Arc::new(out);
        self.sym_cache.lock().unwrap().insert(exp.to_vec(), out.clone());
        out
    }

    /// `P(x^α) = (1/k!) Σ_σ X_{σ(1)}•…•X_{σ(k)}` for the monomial with exponent `α`.
    pub fn symmetrize(&self, exp: &[u32]) -> PBWElement {
        assert_eq!(exp.len(), self.dim());
        let k: usize = exp.iter().map(|&a| a as usize).sum();
        let mut out = PBWElement::zero(self.order);
        for (m, c) in self.sym_classical(exp).iter() {
            if let Some(p) = self.weight(k, m) {
                out.add_term(m.clone(), &HbarSeries::monomial(c.clone(), p, self.order));
            }
        }
        out
    }

    /// Linear extension of [`Enveloping::symmetrize`] to ℏ-series of polynomials.
    pub fn symmetrize_poly(&self, f: &HbarSeries<crate::exactalg::Poly>) -> PBWElement {
        let mut out = PBWElement::zero(self.order);
        for (k, fk) in f.coeffs().iter().enumerate() {
            if k > self.order {
                break;
            }
            for (e, c) in fk.terms() {
                let s = self.symmetrize(e);
                out = out.add(&s.scale_series(&HbarSeries::monomial(c.clone(), k, self.order)));
            }
        }
        out
    }

    /// `P⁻¹` by degree-triangular back-substitution: the top-degree part of
    /// `P(x^m)` is exactly the PBW monomial `m`.
    pub fn symmetrize_inverse(&self, u: &PBWElement) -> HbarSeries<crate::exactalg::Poly> {
        use crate::exactalg::Poly;
        let n = self.dim();
        let mut rest = u.clone();
        let mut out: BTreeMap<Exponent, HbarSeries> = BTreeMap::new();
        while let Some(d) = rest.degree() {
            let top: Vec<(Monomial, HbarSeries)> =
                rest.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
            for (m, c) in top {
                let mut exp = vec![0u32; n];
                for &i in &m {
                    exp[i] += 1;
                }
                rest = rest.sub(&self.symmetrize(&exp).scale_series(&c));
                let slot = out.entry(exp).or_insert_with(|| HbarSeries::zero(self.order));
                slot.add_assign(&c);
            }
        }
        let mut coeffs = vec![Poly::zero(n); self.order + 1];
        for (e, s) in out {
            for (k, c) in s.coeffs().iter().enumerate() {
                coeffs[k].add_term(e.clone(), c);
            }
        }
        HbarSeries::from_coeffs(coeffs)
    }
}

/// Lexicographic next permutation; `false` once the last one is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
