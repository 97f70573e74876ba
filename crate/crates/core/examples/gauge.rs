//! Gauge equivalence of twists: transform by an invertible S and recover S
//! from the pair.

use dqtwist::catalog::n2;
use dqtwist::drinfeld::{
    build_drinfeld_twist, gauge_transform, twist_axiom_check, twist_equivalence_solve, Equivalence, GaugeElement,
};
use dqtwist::enveloping::PBWElement;
use dqtwist::exactalg::{q, HbarSeries};

fn main() -> Result<(), dqtwist::Error> {
    let sg = n2();
    let f = build_drinfeld_twist(&sg, 2)?;
    let mut s = PBWElement::one(2);
    s.add_term(vec![0], &HbarSeries::monomial(q(3, 2), 1, 2));
    s.add_term(vec![0, 1], &HbarSeries::monomial(q(-1, 1), 2, 2));
    let s = GaugeElement::new(s)?;
    let fs = gauge_transform(&f, &s)?;
    println!("transformed twist satisfies the axioms: {}", twist_axiom_check(&fs).holds());
    match twist_equivalence_solve(&f, &fs)? {
        Equivalence::Equivalent(t) => {
            println!("recovered gauge reproduces the pair: {}", gauge_transform(&f, &t)?.value() == fs.value());
        }
        Equivalence::Obstructed { order, .. } => println!("obstructed at order {order}"),
    }
    Ok(())
}
