use num_traits::Zero;

use super::recursion::{fedosov_recursion, FedosovData, Normalization};
use super::weyl::WeylElement;
use crate::drinfeld::{build_drinfeld_twist, star_from_twist, twist_axiom_check, Twist};
use crate::error::Error;
use crate::liecore::{symplectic_connection, Connection, SymplecticLieAlgebra};
use crate::starlab::{relative_class, RelativeClass};

/// Outcome of comparing the constructed twist with the Fedosov reference.
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub order: usize,
    pub twist: Twist,
    pub fedosov_twist: Twist,
    pub relative: RelativeClass,
    /// All per-order classes vanish and an invariant equivalence was found.
    pub confirmed: bool,
}

impl TheoremVerdict {
    pub fn summary(&self) -> String {
        if self.confirmed {
            return format!("trivial class confirmed to order {}", self.order);
        }
        match self.relative.obstruction_order {
            Some(k) => {
                let c: Vec<String> = self.relative.classes[k - 1].iter().map(ToString::to_string).collect();
                format!("nontrivial relative class at order {k}: [{}]", c.join(", "))
            }
            None => format!("no verdict to order {}", self.order),
        }
    }
}

/// Builds the twist of `sg`, the Fedosov product with `Ω = ω/ℏ`, and compares
/// their classes up to order `n`.
pub fn main_theorem_check(sg: &SymplecticLieAlgebra, n: usize) -> Result<TheoremVerdict, Error> {
    let gamma = symplectic_connection(sg)?;
    main_theorem_check_with(sg, n, &gamma, &Normalization::trivial(sg))
}

/// As [`main_theorem_check`] with a chosen connection and normalization.
pub fn main_theorem_check_with(
    sg: &SymplecticLieAlgebra,
    n: usize,
    gamma: &Connection,
    omega: &Normalization,
) -> Result<TheoremVerdict, Error> {
    let twist = build_drinfeld_twist(sg, n)?;
    let data = fedosov_recursion(sg, gamma, omega, n)?;
    let fedosov_twist = data.twist()?;
    let report = twist_axiom_check(&fedosov_twist);
    if let Some((axiom, k)) = report.first_failure() {
        return Err(Error::Solver(format!("Fedosov twist violates {axiom} at order {k}")));
    }
    let relative = compare(&twist, &data)?;
    let confirmed = relative.is_trivial()
        && relative.transform.is_some()
        && relative.classes.iter().flatten().all(Zero::is_zero);
    Ok(TheoremVerdict { order: n, twist, fedosov_twist, relative, confirmed })
}

fn compare(twist: &Twist, data: &FedosovData) -> Result<RelativeClass, Error> {
    let s1 = star_from_twist(twist);
    let s2 = data.star_product()?;
    relative_class(&s1, &s2, data.symplectic().algebra(), data.order())
}

/// One line `c * y^α * e^I * ℏ^k` per term, with `⊗ u` when present.
pub fn weyl_to_text(a: &WeylElement, labels: &[String]) -> String {
    if a.is_zero() {
        return "0\n".into();
    }
    let mut out = String::new();
    for (k, c) in a.terms() {
        let mut parts = vec![c.to_string()];
        let y: Vec<String> = k
            .y
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| if p == 1 { format!("y{}", i + 1) } else { format!("y{}^{p}", i + 1) })
            .collect();
        if !y.is_empty() {
            parts.push(y.join("*"));
        }
        if !k.forms.is_empty() {
            parts.push(k.forms.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^"));
        }
        if k.hbar > 0 {
            parts.push(format!("ℏ^{}", k.hbar));
        }
        if !k.u.is_empty() {
            let u: Vec<&str> = k.u.iter().map(|&i| labels[i].as_str()).collect();
            parts.push(format!("[{}]", u.join("*")));
        }
        out.push_str(&parts.join(" * "));
        out.push('\n');
    }
    out
}

impl FedosovData {
    /// `r` in canonical text form.
    pub fn r_text(&self) -> String {
        weyl_to_text(self.r(), self.symplectic().algebra().labels())
    }

    /// Nonzero `Γ^k_ij` as lines `G^k_ij = c`.
    pub fn gamma_text(&self) -> String {
        let gamma = &self.connection().gamma;
        let mut out = String::new();
        for (i, row) in gamma.iter().enumerate() {
            for (j, col) in row.iter().enumerate() {
                for (k, c) in col.iter().enumerate() {
                    if !c.is_zero() {
                        out.push_str(&format!("G^{}_{}{} = {}\n", k + 1, i + 1, j + 1, c));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push_str("0\n");
        }
        out
    }
}

