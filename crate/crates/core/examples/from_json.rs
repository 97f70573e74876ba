//! Load an algebra document and run the structural checks on it.

use dqtwist::io::parse_spec;
use dqtwist::liecore::{central_extension, coadjoint_orbit_dim};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/algebras/e3.json").into());
    let spec = parse_spec(&std::fs::read_to_string(&path)?)?;
    let g = spec.lie_algebra()?;
    println!("{}: dim {}, basis {:?}", g.name(), g.dim(), g.labels());
    if spec.has_omega() {
        let ext = central_extension(&spec.symplectic()?)?;
        println!("extension orbit dim {}", coadjoint_orbit_dim(ext.algebra(), ext.contact()));
    }
    Ok(())
}
