//! Lie algebra structure: Jacobi, Chevalley–Eilenberg cohomology, the
//! central extension by a symplectic form, and the contact orbit.

use num_traits::Zero;

use dqtwist::catalog::{n2_sum, n2_sum_nonclosed_form, symplectic_catalog};
use dqtwist::liecore::{
    ce_cohomology, ce_differential, central_extension, coadjoint_orbit_dim, extension_algebra_unchecked,
};

fn main() -> Result<(), dqtwist::Error> {
    for sg in symplectic_catalog() {
        let g = sg.algebra();
        println!("== {} (dim {})", g.name(), g.dim());
        for k in 1..=2 {
            let h = ce_cohomology(g, k);
            let reps: Vec<String> = h.representatives.iter().map(|w| w.display_with(g.labels())).collect();
            println!("  H^{k}: dim {} {reps:?}", h.dimension);
        }
        println!("  omega = {}", sg.omega().display_with(g.labels()));

        let ext = central_extension(&sg)?;
        let h = ext.algebra();
        for (i, j, v) in h.brackets() {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c}*{}", h.labels()[k]))
                .collect();
            println!("  [{}, {}] = {}", h.labels()[i], h.labels()[j], terms.join(" + "));
        }
        let orbit = coadjoint_orbit_dim(h, ext.contact());
        println!("  contact orbit has dim {orbit}");
    }

    let sg = n2_sum();
    let bad = sg.omega().add(&n2_sum_nonclosed_form());
    let g = sg.algebra();
    println!("== mutated form {}", bad.display_with(g.labels()));
    println!("  d(form) = {}", ce_differential(&bad, g).display_with(g.labels()));
    for v in extension_algebra_unchecked(g, &bad).jacobi_check().iter().take(3) {
        println!("  Jacobi fails on {:?}", v.triple);
    }
    Ok(())
}
