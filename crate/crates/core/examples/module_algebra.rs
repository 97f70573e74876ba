//! Deforming a module algebra with a twist: polynomials on the plane under
//! translations become the Moyal product.

use dqtwist::catalog::abelian_plane;
use dqtwist::drinfeld::{build_drinfeld_twist, twisted_product, LieAction};
use dqtwist::io::parse_poly;

fn main() -> Result<(), dqtwist::Error> {
    let sg = abelian_plane();
    let f = build_drinfeld_twist(&sg, 2)?;
    let act = LieAction::translation(sg.algebra().clone())?;
    let labels: Vec<String> = vec!["x".into(), "y".into()];
    for (a, b) in [("x", "y"), ("y", "x"), ("x^2", "y^2"), ("x*y", "x*y")] {
        let p = twisted_product(&f, &act, &parse_poly(a, &labels)?, &parse_poly(b, &labels)?)?;
        println!("{a} * {b}:");
        for (k, c) in p.value.coeffs().iter().enumerate() {
            if !c.is_zero() {
                println!("  hbar^{k}: {}", c.display_with(&labels));
            }
        }
    }
    Ok(())
}
