//! The Fedosov construction on the Chevalley–Eilenberg complex: connection,
//! the solution r of the flatness equation, and the resulting twist.

use dqtwist::catalog::n2;
use dqtwist::drinfeld::{twist_axiom_check, twist_to_text};
use dqtwist::fedosov::{fedosov_recursion, Normalization};
use dqtwist::liecore::symplectic_connection;
use dqtwist::starlab::assoc_residual;

fn main() -> Result<(), dqtwist::Error> {
    let sg = n2();
    let gamma = symplectic_connection(&sg)?;
    let d = fedosov_recursion(&sg, &gamma, &Normalization::trivial(&sg), 2)?;
    println!("connection:\n{}", d.gamma_text());
    println!("r:\n{}", d.r_text());
    let f = d.twist()?;
    println!("twist:\n{}", twist_to_text(&f));
    println!("axioms hold: {}", twist_axiom_check(&f).holds());
    let star = d.star_product()?;
    let report = assoc_residual(&star, 2, 4);
    println!("star product associative on {} triples: {}", report.triples_checked, report.is_associative());
    Ok(())
}
