//! Compare the orbit twist with the Fedosov twist of trivial class, then
//! inject a class into the Fedosov normalization and watch it surface.

use dqtwist::catalog::{abelian_plane, symplectic_catalog};
use dqtwist::fedosov::{main_theorem_check, main_theorem_check_with, Normalization};
use dqtwist::liecore::symplectic_connection;

fn main() -> Result<(), dqtwist::Error> {
    for sg in symplectic_catalog().into_iter().take(2) {
        let v = main_theorem_check(&sg, 2)?;
        println!("{}: {}", sg.algebra().name(), v.summary());
    }

    let sg = abelian_plane();
    let gamma = symplectic_connection(&sg)?;
    let omega = Normalization::trivial(&sg).with_correction(1, sg.omega().clone());
    let v = main_theorem_check_with(&sg, 3, &gamma, &omega)?;
    println!("{} with hbar*omega added: {}", sg.algebra().name(), v.summary());
    Ok(())
}
