use std::sync::Arc;

use num_traits::{One, Zero};

use crate::enveloping::{Enveloping, TensorSquareU, UTensor};
use crate::error::Error;
use crate::exactalg::{factorial, AltForm, Bivector, HbarSeries, Scalar};
use crate::liecore::LieAlgebra;

/// Element `F ∈ U(g)⊗U(g)[[ℏ]]` with `F = 1⊗1 + O(ℏ)`.
#[derive(Clone)]
pub struct Twist {
    value: TensorSquareU,
    env: Arc<Enveloping>,
    verified_order: Option<usize>,
}

impl std::fmt::Debug for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Twist({:?}, verified to {:?})", self.value, self.verified_order)
    }
}

impl PartialEq for Twist {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.env.lie() == other.env.lie()
    }
}

impl Twist {
    /// Wraps a tensor; the axioms are not checked (see [`twist_axiom_check`]).
    pub fn new(lie: LieAlgebra, value: TensorSquareU) -> Result<Self, Error> {
        let env = Arc::new(Enveloping::classical(lie, value.order())?);
        Self::with_env(env, value)
    }

    pub(crate) fn with_env(env: Arc<Enveloping>, value: TensorSquareU) -> Result<Self, Error> {
        if value.arity() != 2 {
            return Err(Error::Invalid(format!("a twist has two tensor legs, got {}", value.arity())));
        }
        if value.order() != env.order() {
            return Err(Error::Incompatible("twist and algebra truncated at different orders".into()));
        }
        if value.terms().keys().flatten().flatten().any(|&i| i >= env.dim()) {
            return Err(Error::Incompatible("twist mentions a generator outside the algebra".into()));
        }
        let lead = value.hbar_coeff(0);
        if lead != UTensor::one(2, value.order()) {
            return Err(Error::Invalid(format!("leading term must be 1⊗1, got {lead:?}")));
        }
        Ok(Twist { value, env, verified_order: None })
    }

    pub fn trivial(lie: LieAlgebra, n: usize) -> Result<Self, Error> {
        Self::new(lie, UTensor::one(2, n))
    }

    /// `exp((ℏ/2) Σ r^{ij} e_i⊗e_j)`, a twist whenever the `e_i` with nonzero
    /// `r` commute.
    pub fn exponential(lie: LieAlgebra, r: &Bivector, n: usize) -> Result<Self, Error> {
        let env = Arc::new(Enveloping::classical(lie, n)?);
        let dim = env.dim();
        if r.dim() != dim || r.degree() != 2 {
            return Err(Error::Incompatible("bivector does not match the algebra".into()));
        }
        let mut x = UTensor::zero(2, n);
        let half = crate::exactalg::q(1, 2);
        for i in 0..dim {
            for j in 0..dim {
                let c = r.get(&[i, j]);
                if !c.is_zero() {
                    x.add_term(vec![vec![i], vec![j]], &HbarSeries::monomial(&c * &half, 1, n));
                }
            }
        }
        let mut out = UTensor::one(2, n);
        let mut pow = UTensor::one(2, n);
        for m in 1..=n {
            pow = env.tensor_mul(&pow, &x)?;
            out = out.add(&pow.scale(&(Scalar::one() / factorial(m as u32))));
        }
        Self::with_env(env, out)
    }

    pub fn value(&self) -> &TensorSquareU {
        &self.value
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.env.lie()
    }

    pub fn enveloping(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn order(&self) -> usize {
        self.value.order()
    }

    pub fn verified_order(&self) -> Option<usize> {
        self.verified_order
    }

    /// Runs [`twist_axiom_check`] and records the order on success.
    pub fn verified(mut self) -> Result<Self, TwistAxiomReport> {
        let report = twist_axiom_check(&self);
        if report.holds() {
            self.verified_order = Some(self.order());
            Ok(self)
        } else {
            Err(report)
        }
    }

    /// `F₁ − F₁^{op}` and friends need the `ℏ^k` coefficient.
    pub fn coefficient(&self, k: usize) -> UTensor {
        self.value.hbar_coeff(k)
    }
}

/// Exact residuals of the twist axioms, one entry per ℏ-order.
#[derive(Clone, Debug)]
pub struct TwistAxiomReport {
    /// `(Δ⊗id)(F)(F⊗1) − (id⊗Δ)(F)(1⊗F)` at `ℏ^k`.
    pub cocycle: Vec<UTensor>,
    /// `(ε⊗id)(F) − 1` at `ℏ^k`.
    pub counit_left: Vec<UTensor>,
    /// `(id⊗ε)(F) − 1` at `ℏ^k`.
    pub counit_right: Vec<UTensor>,
    /// The `ℏ⁰` and `ℏ¹` coefficients of `F`.
    pub normalization: (UTensor, UTensor),
}

impl TwistAxiomReport {
    pub fn holds(&self) -> bool {
        self.cocycle.iter().chain(&self.counit_left).chain(&self.counit_right).all(UTensor::is_zero)
    }

    /// First nonzero residual as `(axiom, order)`.
    pub fn first_failure(&self) -> Option<(&'static str, usize)> {
        for (name, list) in [("cocycle", &self.cocycle), ("counit (ε⊗id)", &self.counit_left), ("counit (id⊗ε)", &self.counit_right)] {
            if let Some(k) = list.iter().position(|t| !t.is_zero()) {
                return Some((name, k));
            }
        }
        None
    }

    /// Whether `F = 1⊗1 + O(ℏ²)`.
    pub fn first_order_vanishes(&self) -> bool {
        self.normalization.1.is_zero()
    }
}

/// Checks `(Δ⊗id)(F)·(F⊗1) = (id⊗Δ)(F)·(1⊗F)` and `(ε⊗id)(F) = (id⊗ε)(F) = 1`
/// order by order.
pub fn twist_axiom_check(f: &Twist) -> TwistAxiomReport {
    let env = &f.env;
    let n = f.order();
    let v = &f.value;
    let lhs = env.tensor_mul(&v.coproduct_leg(0), &v.insert_unit(2)).expect("shapes agree");
    let rhs = env.tensor_mul(&v.coproduct_leg(1), &v.insert_unit(0)).expect("shapes agree");
    let diff = lhs.sub(&rhs);
    let one = UTensor::one(1, n);
    let left = v.counit_leg(0).sub(&one);
    let right = v.counit_leg(1).sub(&one);
    TwistAxiomReport {
        cocycle: (0..=n).map(|k| diff.hbar_coeff(k)).collect(),
        counit_left: (0..=n).map(|k| left.hbar_coeff(k)).collect(),
        counit_right: (0..=n).map(|k| right.hbar_coeff(k)).collect(),
        normalization: (v.hbar_coeff(0), v.hbar_coeff(1)),
    }
}

/// Antisymmetric part `t − t^{op}` of a two-leg tensor.
pub(crate) fn antisymmetrize(t: &UTensor) -> UTensor {
    t.sub(&t.permute(&[1, 0]))
}

/// Reads a bivector off a two-leg tensor all of whose terms are `e_i ⊗ e_j`.
pub(crate) fn bivector_of(t: &UTensor, dim: usize) -> Result<Bivector, Error> {
    let mut r = AltForm::zero(dim, 2);
    for (key, c) in t.terms() {
        if key[0].len() != 1 || key[1].len() != 1 {
            return Err(Error::NotClassical(format!("term {key:?} is not of bidegree (1,1)")));
        }
        let (i, j) = (key[0][0], key[1][0]);
        if i < j {
            r.set(&[i, j], c.coeff(0).cloned().unwrap_or_else(Scalar::zero));
        }
    }
    Ok(r)
}

/// `r = F₁ − F₁^{op} ∈ ⋀²g`.
pub fn classical_limit(f: &Twist) -> Result<Bivector, Error> {
    if f.order() == 0 {
        return Ok(AltForm::zero(f.algebra().dim(), 2));
    }
    bivector_of(&antisymmetrize(&f.coefficient(1)), f.algebra().dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn n2() -> LieAlgebra {
        LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap()
    }

    fn r_std(v: i64) -> Bivector {
        let mut r = AltForm::zero(2, 2);
        r.set(&[0, 1], q(v, 1));
        r
    }

    #[test]
    fn trivial_twist_passes() {
        let f = Twist::trivial(n2(), 2).unwrap();
        let rep = twist_axiom_check(&f);
        assert!(rep.holds());
        assert!(classical_limit(&f).unwrap().is_zero());
    }

    #[test]
    fn abelian_exponential_is_a_twist() {
        for n in [2, 3] {
            let f = Twist::exponential(LieAlgebra::abelian("r2", 2), &r_std(-1), n).unwrap();
            assert!(twist_axiom_check(&f).holds());
            assert_eq!(classical_limit(&f).unwrap(), r_std(-1));
        }
    }

    #[test]
    fn e1_square_fails_on_n2() {
        let mut v = UTensor::one(2, 2);
        v.add_term(vec![vec![0], vec![0]], &HbarSeries::monomial(q(1, 1), 1, 2));
        let f = Twist::new(n2(), v).unwrap();
        let rep = twist_axiom_check(&f);
        assert_eq!(rep.first_failure(), Some(("cocycle", 2)));
        assert!(!rep.first_order_vanishes());
    }

    #[test]
    fn non_classical_first_order_is_rejected() {
        let mut v = UTensor::one(2, 2);
        v.add_term(vec![vec![0, 1], vec![1]], &HbarSeries::monomial(q(1, 1), 1, 2));
        let f = Twist::new(n2(), v).unwrap();
        assert!(matches!(classical_limit(&f), Err(Error::NotClassical(_))));
    }
}
