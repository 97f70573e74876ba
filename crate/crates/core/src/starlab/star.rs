use num_traits::One;

use super::diffop::BiDiffOp;
use crate::enveloping::Enveloping;
use crate::error::Error;
use crate::exactalg::{monomials_up_to, Coeff, Exponent, HbarSeries, Poly, Scalar, MAX_ORDER};
use crate::liecore::LieAlgebra;

/// `f ⋆ g = Σ_k ℏ^k B_k(f, g)` on polynomials in `nvars` variables.
///
/// When `jet` is set the coefficients of the `B_k` are only known up to that
/// polynomial degree (products read off in a formal chart), and every
/// output is meaningful only up to [`StarProduct::valid_degree`].
#[derive(Clone, PartialEq, Debug)]
pub struct StarProduct {
    nvars: usize,
    ops: Vec<BiDiffOp>,
    jet: Option<u32>,
}

/// First nonzero associativity residual found in a window sweep.
#[derive(Clone, PartialEq, Debug)]
pub struct AssocFailure {
    pub hbar_order: usize,
    pub triple: (Exponent, Exponent, Exponent),
    pub residual: Poly,
}

#[derive(Clone, PartialEq, Debug)]
pub struct AssocReport {
    pub triples_checked: usize,
    pub first_failure: Option<AssocFailure>,
}

impl AssocReport {
    pub fn is_associative(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Builds a star product from `B_0, …, B_N`.
pub fn star_from_bidiff(ops: Vec<BiDiffOp>) -> Result<StarProduct, Error> {
    StarProduct::new(ops, None)
}

impl StarProduct {
    pub fn new(ops: Vec<BiDiffOp>, jet: Option<u32>) -> Result<Self, Error> {
        let Some(first) = ops.first() else {
            return Err(Error::Invalid("a star product needs at least B_0".into()));
        };
        let nvars = first.nvars();
        if ops.iter().any(|b| b.nvars() != nvars) {
            return Err(Error::Incompatible("B_k act on different variable sets".into()));
        }
        if ops.len() - 1 > MAX_ORDER {
            return Err(Error::OrderTooHigh { requested: ops.len() - 1, max: MAX_ORDER });
        }
        let mult = BiDiffOp::multiplication(nvars);
        if ops[0] != mult {
            return Err(Error::Invalid("B_0 must be the pointwise product".into()));
        }
        Ok(StarProduct { nvars, ops, jet })
    }

    /// The pointwise product, padded with zero operators to order `n`.
    pub fn commutative(nvars: usize, n: usize) -> Self {
        let mut ops = vec![BiDiffOp::multiplication(nvars)];
        ops.extend((0..n).map(|_| BiDiffOp::zero(nvars)));
        StarProduct { nvars, ops, jet: None }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.ops.len() - 1
    }

    pub fn ops(&self) -> &[BiDiffOp] {
        &self.ops
    }

    pub fn jet(&self) -> Option<u32> {
        self.jet
    }

    /// Highest output degree at which nested products are exact.
    pub fn valid_degree(&self) -> Option<u32> {
        let m = self.ops.iter().map(BiDiffOp::max_order).max().unwrap_or(0);
        self.jet.map(|j| j.saturating_sub(m))
    }

    fn clip(&self, p: Poly) -> Poly {
        match self.jet {
            Some(j) => p.truncate_degree(j),
            None => p,
        }
    }

    pub fn star(&self, f: &Poly, g: &Poly) -> HbarSeries<Poly> {
        let coeffs = self.ops.iter().map(|b| self.clip(b.apply(f, g))).collect();
        HbarSeries::from_coeffs(coeffs)
    }

    pub fn star_series(&self, f: &HbarSeries<Poly>, g: &HbarSeries<Poly>) -> HbarSeries<Poly> {
        let n = self.order();
        let mut coeffs = vec![Poly::zero(self.nvars); n + 1];
        for (a, fa) in f.coeffs().iter().enumerate() {
            for (b, gb) in g.coeffs().iter().enumerate() {
                if fa.is_zero() || gb.is_zero() {
                    continue;
                }
                for (k, op) in self.ops.iter().enumerate() {
                    let p = a + b + k;
                    if p > n {
                        break;
                    }
                    coeffs[p].add_scaled(&self.clip(op.apply(fa, gb)), &Scalar::one());
                }
            }
        }
        HbarSeries::from_coeffs(coeffs)
    }

    /// `B_1(f,g) − B_1(g,f)` as an operator.
    pub fn first_order_antisymmetric(&self) -> BiDiffOp {
        match self.ops.get(1) {
            Some(b) => b.add(&b.opposite().scale(&-Scalar::one())),
            None => BiDiffOp::zero(self.nvars),
        }
    }

    /// The ℏ-truncation to order `n ≤ order()`.
    pub fn truncated(&self, n: usize) -> StarProduct {
        StarProduct { nvars: self.nvars, ops: self.ops[..=n.min(self.order())].to_vec(), jet: self.jet }
    }
}

fn monomial_series(e: &Exponent, n: usize) -> HbarSeries<Poly> {
    HbarSeries::monomial(Poly::monomial(e.clone()), 0, n)
}

/// Sweeps `(f⋆g)⋆h − f⋆(g⋆h)` over all monomial triples of total degree at
/// most `degree`, orders `0..=order`. For jet-truncated products only the
/// degrees up to [`StarProduct::valid_degree`] are compared.
pub fn assoc_residual(s: &StarProduct, order: usize, degree: u32) -> AssocReport {
    let s = s.truncated(order);
    let n = s.order();
    let mons = monomials_up_to(s.nvars, degree);
    let mut checked = 0;
    for a in &mons {
        let da: u32 = a.iter().sum();
        for b in &mons {
            let db: u32 = b.iter().sum();
            if da + db > degree {
                continue;
            }
            let fa = monomial_series(a, n);
            let fb = monomial_series(b, n);
            let ab = s.star_series(&fa, &fb);
            for c in &mons {
                if da + db + c.iter().sum::<u32>() > degree {
                    continue;
                }
                checked += 1;
                let fc = monomial_series(c, n);
                let lhs = s.star_series(&ab, &fc);
                let rhs = s.star_series(&fa, &s.star_series(&fb, &fc));
                for k in 0..=n {
                    let mut r = lhs.coeffs()[k].sub(&rhs.coeffs()[k]);
                    if let Some(v) = s.valid_degree() {
                        r = r.truncate_degree(v);
                    }
                    if !r.is_zero() {
                        return AssocReport {
                            triples_checked: checked,
                            first_failure: Some(AssocFailure { hbar_order: k, triple: (a.clone(), b.clone(), c.clone()), residual: r }),
                        };
                    }
                }
            }
        }
    }
    AssocReport { triples_checked: checked, first_failure: None }
}

/// The Gutt product on polynomials on `g*` as bidifferential operators,
/// validated against direct evaluation on monomial pairs of degree at most
/// `degree`. `B_k` has order at most `k` in each argument.
pub fn gutt_star_product(g: &LieAlgebra, n: usize, degree: u32) -> Result<StarProduct, Error> {
    let env = Enveloping::deformed(g.clone(), n)?;
    let dim = g.dim();
    let mut ops = vec![BiDiffOp::multiplication(dim)];
    for k in 1..=n {
        let op = BiDiffOp::from_values(dim, k as u32, |i, j| {
            env.gutt_star(&Poly::monomial(i.clone()), &Poly::monomial(j.clone())).coeffs()[k].clone()
        });
        ops.push(op);
    }
    let s = StarProduct::new(ops, None)?;
    let mons = monomials_up_to(dim, degree);
    for a in &mons {
        for b in &mons {
            let (fa, fb) = (Poly::monomial(a.clone()), Poly::monomial(b.clone()));
            if s.star(&fa, &fb) != env.gutt_star(&fa, &fb) {
                return Err(Error::Solver(format!(
                    "Gutt operators of bounded order do not reproduce x^{a:?} ⋆ x^{b:?}"
                )));
            }
        }
    }
    Ok(s)
}

/// Checks `((u−1)f) ⋆ g` and `g ⋆ ((u−1)f)` vanish on `u = 1` for all
/// monomials `f`, `g` of degree at most `degree`; `u` is variable `var`.
pub fn tangentiality_check(s: &StarProduct, var: usize, degree: u32) -> bool {
    tangentiality_witness(s, var, degree).is_none()
}

/// The first failing pair, if any.
pub fn tangentiality_witness(s: &StarProduct, var: usize, degree: u32) -> Option<(Exponent, Exponent)> {
    let nv = s.nvars;
    let mut p = Poly::var(nv, var);
    p.add_term(vec![0; nv], &-Scalar::one());
    let mons = monomials_up_to(nv, degree);
    for f in &mons {
        let pf = p.mul_poly(&Poly::monomial(f.clone()));
        for g in &mons {
            let gp = Poly::monomial(g.clone());
            let both = s.star(&pf, &gp).coeffs().iter().chain(s.star(&gp, &pf).coeffs()).any(|c| !c.substitute(var, &Scalar::one()).is_zero());
            if both {
                return Some((f.clone(), g.clone()));
            }
        }
    }
    None
}

/// Restricts a tangential product to the hyperplane `u = 1`, dropping the
/// variable `u` (index `var`).
pub fn restrict_to_d(s: &StarProduct, var: usize, degree: u32) -> Result<StarProduct, Error> {
    if let Some((f, g)) = tangentiality_witness(s, var, degree) {
        return Err(Error::NotTangential(format!("fails for f = x^{f:?}, g = x^{g:?}")));
    }
    let one = Scalar::one();
    let ops = s
        .ops
        .iter()
        .map(|b| {
            let mut out = BiDiffOp::zero(s.nvars - 1);
            for ((i, j), c) in b.terms() {
                if i[var] != 0 || j[var] != 0 {
                    continue;
                }
                let mut i2 = i.clone();
                i2.remove(var);
                let mut j2 = j.clone();
                j2.remove(var);
                out.add_term(i2, j2, &c.substitute(var, &one).drop_var(var));
            }
            out
        })
        .collect();
    StarProduct::new(ops, s.jet)
}

/// Whether two products agree coefficientwise, comparing only coefficient
/// degrees both know exactly.
pub(crate) fn ops_agree(a: &BiDiffOp, b: &BiDiffOp, jet: Option<u32>) -> bool {
    let d = a.add(&b.scale(&-Scalar::one()));
    match jet {
        Some(j) => d.truncate(j).is_zero(),
        None => d.is_zero(),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn heis() -> LieAlgebra {
        LieAlgebra::new("heis", vec!["e1".into(), "e2".into(), "e3".into()], [(0, 1, vec![q(0, 1), q(0, 1), q(-1, 1)])]).unwrap()
    }

    fn e3() -> LieAlgebra {
        LieAlgebra::new("e3", vec!["e1".into(), "e2".into(), "e3".into()], [(0, 1, vec![q(1, 1), q(0, 1), q(-1, 1)])]).unwrap()
    }

    #[test]
    fn gutt_operators_are_tangential_and_restrict() {
        for (g, first) in [(heis(), q(0, 1)), (e3(), q(1, 1))] {
            let s = gutt_star_product(&g, 2, 3).unwrap();
            assert!(tangentiality_check(&s, 2, 2));
            let d = restrict_to_d(&s, 2, 2).unwrap();
            // x1 ⋆ x2 = x1 x2 + ½ℏ (c·x1 − 1)
            let v = d.star(&Poly::var(2, 0), &Poly::var(2, 1));
            let mut expect = Poly::constant(2, q(-1, 2));
            expect.add_term(vec![1, 0], &(first * q(1, 2)));
            assert_eq!(v.coeffs()[1], expect);
            assert!(assoc_residual(&d, 2, 3).is_associative());
        }
    }

    #[test]
    fn u_derivative_breaks_tangentiality() {
        let mut b1 = BiDiffOp::zero(3);
        b1.add_term(vec![0, 0, 1], vec![1, 0, 0], &Poly::one(3));
        b1.add_term(vec![1, 0, 0], vec![0, 0, 1], &Poly::constant(3, q(-1, 1)));
        let s = StarProduct::new(vec![BiDiffOp::multiplication(3), b1], None).unwrap();
        assert!(!tangentiality_check(&s, 2, 2));
        assert!(restrict_to_d(&s, 2, 2).is_err());
        assert!(tangentiality_check(&StarProduct::commutative(3, 2), 2, 2));
    }

    #[test]
    fn perturbed_first_order_is_not_associative() {
        let s = gutt_star_product(&heis(), 2, 2).unwrap();
        let mut ops = s.ops().to_vec();
        let mut bad = BiDiffOp::zero(3);
        bad.add_term(vec![1, 0, 0], vec![1, 0, 0], &Poly::var(3, 1));
        ops[1] = ops[1].add(&bad);
        let r = assoc_residual(&StarProduct::new(ops, None).unwrap(), 2, 3);
        assert_eq!(r.first_failure.unwrap().hbar_order, 2);
        assert!(assoc_residual(&StarProduct::commutative(2, 2), 2, 4).is_associative());
    }
}
