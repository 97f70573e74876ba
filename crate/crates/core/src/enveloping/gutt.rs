use num_traits::Zero;

use super::pbw::Enveloping;
use crate::exactalg::{HbarSeries, Poly};
use crate::liecore::LieAlgebra;

impl Enveloping {
    /// Gutt product `f ⋆ g = P⁻¹(P(f) • P(g))` of two polynomials on `g*`.
    /// Panics if the algebra is not the deformed one.
    pub fn gutt_star(&self, f: &Poly, g: &Poly) -> HbarSeries<Poly> {
        assert!(self.is_deformed(), "the Gutt product lives on U_ℏ(g)");
        let mut out = HbarSeries::zero_like(&Poly::zero(self.dim()), self.order());
        for (ef, cf) in f.terms() {
            for (eg, cg) in g.terms() {
                let prod = self.gutt_monomials(ef, eg);
                let c = cf * cg;
                out = out.add(&prod.map(|p| {
                    let mut s = Poly::zero(p.nvars());
                    s.add_scaled(p, &c);
                    s
                }));
            }
        }
        out
    }

    /// `⋆` extended ℏ-bilinearly to series arguments.
    pub fn gutt_star_series(&self, f: &HbarSeries<Poly>, g: &HbarSeries<Poly>) -> HbarSeries<Poly> {
        let n = self.order();
        let mut out = HbarSeries::zero_like(&Poly::zero(self.dim()), n);
        for (a, fa) in f.coeffs().iter().enumerate() {
            for (b, gb) in g.coeffs().iter().enumerate() {
                if a + b > n || fa.is_zero() || gb.is_zero() {
                    continue;
                }
                out = out.add(&self.gutt_star(fa, gb).shift(a + b));
            }
        }
        out
    }

    fn gutt_monomials(&self, a: &[u32], b: &[u32]) -> HbarSeries<Poly> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(hit) = self.gutt_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let prod = self.mul_unchecked(&self.symmetrize(a), &self.symmetrize(b));
        let out = self.symmetrize_inverse(&prod);
        self.gutt_cache.lock().unwrap().insert(key, out.clone());
        out
    }
}

/// The coadjoint derivation `ad*_{e_i}` of `Sym(g)`, determined on generators
/// by `x_j ↦ Σ_k C^k_{ij} x_k`.
pub fn coadjoint_derivation(g: &LieAlgebra, i: usize, f: &Poly) -> Poly {
    let n = g.dim();
    let mut out = Poly::zero(f.nvars());
    for j in 0..n {
        let dj = f.diff(j, 1);
        if dj.is_zero() {
            continue;
        }
        let mut image = Poly::zero(f.nvars());
        for (k, c) in g.bracket(i, j).iter().enumerate() {
            if !c.is_zero() {
                image.add_scaled(&Poly::var(f.nvars(), k), c);
            }
        }
        out.add_scaled(&dj.mul_poly(&image), &crate::exactalg::q(1, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn heis() -> LieAlgebra {
        LieAlgebra::new(
            "heis",
            vec!["e1".into(), "e2".into(), "e3".into()],
            [(0, 1, vec![q(0, 1), q(0, 1), q(-1, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn generators_multiply_with_half_bracket() {
        let u = Enveloping::deformed(heis(), 2).unwrap();
        let s = u.gutt_star(&Poly::var(3, 0), &Poly::var(3, 1));
        assert_eq!(s.coeffs()[0], Poly::monomial(vec![1, 1, 0]));
        assert_eq!(s.coeffs()[1], Poly::term(3, vec![0, 0, 1], q(-1, 2)));
        assert!(s.coeffs()[2].is_zero());
    }

    #[test]
    fn unit_is_neutral() {
        let u = Enveloping::deformed(heis(), 2).unwrap();
        let f = Poly::monomial(vec![2, 1, 0]);
        let s = u.gutt_star(&f, &Poly::one(3));
        assert_eq!(s.coeffs()[0], f);
        assert!(s.coeffs()[1..].iter().all(Poly::is_zero));
    }
}
