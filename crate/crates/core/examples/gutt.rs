//! The Gutt star product on polynomials on the dual of a Lie algebra, read
//! off from the symmetrization map into the enveloping algebra.

use dqtwist::catalog::heisenberg;
use dqtwist::enveloping::Enveloping;
use dqtwist::exactalg::Poly;
use dqtwist::io::parse_poly;

fn show(env: &Enveloping, labels: &[String], f: &str, g: &str) -> Result<(), dqtwist::Error> {
    let (pf, pg) = (parse_poly(f, labels)?, parse_poly(g, labels)?);
    let prod = env.gutt_star(&pf, &pg);
    println!("({f}) * ({g}):");
    for (k, c) in prod.coeffs().iter().enumerate() {
        if !c.is_zero() {
            println!("  hbar^{k}: {}", c.display_with(labels));
        }
    }
    Ok(())
}

fn main() -> Result<(), dqtwist::Error> {
    let ext = heisenberg();
    let h = ext.algebra();
    let labels = h.labels();
    let env = Enveloping::deformed(h.clone(), 3)?;
    show(&env, labels, "e1", "e2")?;
    show(&env, labels, "e2", "e1")?;
    show(&env, labels, "e1^2", "e2^2")?;
    show(&env, labels, "e1*e2", "e1 + e3")?;

    let y = Poly::var(h.dim(), ext.central_index());
    let f = parse_poly("e1^2*e2", labels)?;
    println!("central generator commutes: {}", env.gutt_star(&y, &f) == env.gutt_star(&f, &y));
    Ok(())
}
