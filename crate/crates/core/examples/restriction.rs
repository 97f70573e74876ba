//! Restriction of the Gutt product to the hyperplane where the central
//! coordinate equals one, and the trace operators that vanish on it.

use num_traits::Zero;

use dqtwist::catalog::e3;
use dqtwist::starlab::{dito_coefficients, gutt_star_product, restrict_to_d, tangentiality_check};

fn main() -> Result<(), dqtwist::Error> {
    let ext = e3();
    let h = ext.algebra();
    let u = ext.central_index();
    let star = gutt_star_product(h, 2, 4)?;
    println!("{}: Gutt product tangent to u = 1 up to degree 3: {}", h.name(), tangentiality_check(&star, u, 3));

    let restricted = restrict_to_d(&star, u, 4)?;
    println!("restricted product on {} variables, order {}", restricted.nvars(), restricted.order());
    for (k, op) in restricted.ops().iter().enumerate().skip(1) {
        println!("  hbar^{k}: {} bidifferential terms", op.terms().len());
    }

    for r in 1..=3 {
        let nonzero: Vec<_> = dito_coefficients(h, r).into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let central = nonzero.iter().filter(|(w, _)| w.contains(&u)).count();
        println!("D_{r}: {} nonzero traces, {central} involving the central generator", nonzero.len());
    }
    Ok(())
}
