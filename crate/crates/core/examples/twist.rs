//! A Drinfel'd twist on U(g)⊗U(g)[[hbar]] from the restricted Gutt product,
//! with its axioms and classical limit.

use dqtwist::catalog::n2;
use dqtwist::drinfeld::{build_drinfeld_twist, classical_limit, twist_axiom_check, twist_to_text};
use dqtwist::io::bivector_to_text;
use dqtwist::liecore::schouten_cybe;

fn main() -> Result<(), dqtwist::Error> {
    let sg = n2();
    let labels = sg.algebra().labels();
    let f = build_drinfeld_twist(&sg, 2)?;
    println!("{}", twist_to_text(&f));

    let report = twist_axiom_check(&f);
    println!("axioms hold: {}", report.holds());
    let r = classical_limit(&f)?;
    println!("classical limit r = {}", bivector_to_text(&r, labels));
    println!("r equals omega^-1: {}", r == sg.r_matrix());
    println!("[[r,r]] = 0: {}", schouten_cybe(sg.algebra(), &r).is_zero());
    Ok(())
}
