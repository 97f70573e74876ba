use std::sync::Arc;

use num_traits::Zero;

use super::chart::{invert_chart, orbit_chart};
use super::twist::{twist_axiom_check, Twist};
use crate::enveloping::{Enveloping, UTensor};
use crate::error::Error;
use crate::exactalg::{monomials_up_to, multi_factorial, HbarSeries, Poly, MAX_ORDER};
use crate::liecore::{central_extension, SymplecticLieAlgebra};
use crate::starlab::{gutt_star_product, restrict_to_d};

/// Twist of `(g, ω)` read off the Gutt product of the central extension,
/// restricted to `u = 1` and pulled back along the orbit chart through the
/// contact element. The extraction runs at jet order `2N + 2` and again at
/// `2N + 4`; the two must agree.
pub fn build_drinfeld_twist(sg: &SymplecticLieAlgebra, n: usize) -> Result<Twist, Error> {
    let jet = 2 * n as u32 + 2;
    let f = build_drinfeld_twist_with_jet(sg, n, jet)?;
    let g = build_drinfeld_twist_with_jet(sg, n, jet + 2)?;
    if f.value() != g.value() {
        return Err(Error::JetUnstable(jet as usize, jet as usize + 2));
    }
    Ok(f)
}

/// One extraction at a fixed jet order, followed by the axiom check.
pub fn build_drinfeld_twist_with_jet(sg: &SymplecticLieAlgebra, n: usize, jet: u32) -> Result<Twist, Error> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooHigh { requested: n, max: MAX_ORDER });
    }
    if (jet as usize) < n {
        return Err(Error::JetOrderTooLow { configured: jet as usize, required: n });
    }
    let g = sg.algebra().clone();
    let dim = g.dim();
    let env = Arc::new(Enveloping::classical(g, n)?);
    if n == 0 {
        return Twist::with_env(env, UTensor::one(2, 0)).map(|t| t.verified().expect("1⊗1 is a twist"));
    }
    let ext = central_extension(sg)?;
    let gutt = gutt_star_product(ext.algebra(), n, n as u32 + 1)?;
    let restricted = restrict_to_d(&gutt, ext.central_index(), n as u32)?;
    let t_of_x = invert_chart(&orbit_chart(&ext, jet), jet)?;

    let mons: Vec<_> = monomials_up_to(dim, n as u32).into_iter().filter(|a| a.iter().any(|&x| x > 0)).collect();
    let powers: Vec<Poly> = mons
        .iter()
        .map(|a| {
            let mut p = Poly::one(dim);
            for (i, &e) in a.iter().enumerate() {
                for _ in 0..e {
                    p = p.mul_truncated(&t_of_x[i], jet);
                }
            }
            p
        })
        .collect();
    let sym: Vec<_> = mons.iter().map(|a| env.symmetrize(a)).collect();

    let mut value = UTensor::one(2, n);
    for k in 1..=n {
        let op = &restricted.ops()[k];
        for (ia, a) in mons.iter().enumerate() {
            let da: u32 = a.iter().sum();
            if da as usize > k {
                continue;
            }
            for (ib, b) in mons.iter().enumerate() {
                let db: u32 = b.iter().sum();
                if db as usize > k {
                    continue;
                }
                let v = op.apply(&powers[ia], &powers[ib]).constant_term();
                if v.is_zero() {
                    continue;
                }
                let c = v / (multi_factorial(a) * multi_factorial(b));
                let leg = UTensor::pure(&[sym[ia].clone(), sym[ib].clone()]);
                value = value.add(&leg.scale_series(&HbarSeries::monomial(c, k, n)));
            }
        }
    }
    let twist = Twist::with_env(env, value)?;
    let report = twist_axiom_check(&twist);
    match report.first_failure() {
        None => Ok(twist.verified().expect("checked above")),
        Some((axiom, k)) => Err(Error::Solver(format!("extracted twist violates the {axiom} axiom at order {k}"))),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::{classical_limit, Twist};
    use crate::exactalg::{q, AltForm};
    use crate::liecore::{schouten_cybe, LieAlgebra};

    fn omega() -> AltForm {
        let mut w = AltForm::zero(2, 2);
        w.set(&[0, 1], q(1, 1));
        w
    }

    #[test]
    fn abelian_gives_moyal() {
        let sg = SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), omega()).unwrap();
        let f = build_drinfeld_twist(&sg, 2).unwrap();
        let moyal = Twist::exponential(LieAlgebra::abelian("r2", 2), &sg.r_matrix(), 2).unwrap();
        assert_eq!(f.value(), moyal.value());
    }

    #[test]
    fn n2_twist_has_the_inverse_form_as_limit() {
        let n2 = LieAlgebra::new("n2", vec!["e1".into(), "e2".into()], [(0, 1, vec![q(1, 1), q(0, 1)])]).unwrap();
        let sg = SymplecticLieAlgebra::new(n2.clone(), omega()).unwrap();
        let f = build_drinfeld_twist(&sg, 2).unwrap();
        let r = classical_limit(&f).unwrap();
        assert_eq!(r, sg.r_matrix());
        assert!(schouten_cybe(&n2, &r).is_zero());
        assert_eq!(f.verified_order(), Some(2));
    }

    #[test]
    fn jet_too_low() {
        let sg = SymplecticLieAlgebra::new(LieAlgebra::abelian("r2", 2), omega()).unwrap();
        assert_eq!(build_drinfeld_twist_with_jet(&sg, 2, 1).unwrap_err(), Error::JetOrderTooLow { configured: 1, required: 2 });
        assert_eq!(build_drinfeld_twist(&sg, 0).unwrap().value(), &UTensor::one(2, 0));
    }
}
