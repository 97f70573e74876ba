use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Scalar;

/// Dense row-major matrix of exact scalars.
pub type Matrix = Vec<Vec<Scalar>>;

/// Outcome of [`solve_exact`].
///
/// When `solution` is present, `A·solution = b` holds exactly and every
/// `kernel_basis` vector satisfies `A·v = 0`. When the system is inconsistent
/// `residual_witness` holds `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolveResult {
    pub solution: Option<Vec<Scalar>>,
    pub kernel_basis: Vec<Vec<Scalar>>,
    pub residual_witness: Option<Vec<Scalar>>,
    pub rank: usize,
}

struct Echelon {
    /// Integer rows `[A | b | T]` after fraction-free elimination.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    row_scale: Vec<BigInt>,
    ncols: usize,
}

fn integer_row(row: &[Scalar], rhs: &Scalar) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in row.iter().chain(std::iter::once(rhs)) {
        l = l.lcm(c.denom());
    }
    let conv = |c: &Scalar| c.numer() * (&l / c.denom());
    let mut out: Vec<BigInt> = row.iter().map(conv).collect();
    out.push(conv(rhs));
    (out, l)
}

/// Bareiss elimination to row echelon form. Every intermediate entry is a
/// minor of the original integer matrix, so the divisions are exact.
fn bareiss(a: &Matrix, b: &[Scalar], ncols: usize) -> Echelon {
    let m = a.len();
    let mut rows = Vec::with_capacity(m);
    let mut row_scale = Vec::with_capacity(m);
    for (i, (r, rhs)) in a.iter().zip(b).enumerate() {
        let (mut ir, l) = integer_row(r, rhs);
        ir.extend((0..m).map(|j| if j == i { BigInt::one() } else { BigInt::zero() }));
        rows.push(ir);
        row_scale.push(l);
    }
    let width = ncols + 1 + m;
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][col].clone();
        for i in r + 1..m {
            let factor = rows[i][col].clone();
            for j in col + 1..width {
                let v = &piv * &rows[i][j] - &factor * &rows[r][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                rows[i][j] = v / &prev;
            }
            rows[i][col] = BigInt::zero();
        }
        // rows above the pivot band keep their scale; rows below were divided
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    Echelon { rows, pivots, row_scale, ncols }
}

fn back_substitute(e: &Echelon, rhs_col: bool, free: &[(usize, Scalar)]) -> Vec<Scalar> {
    let n = e.ncols;
    let mut x = vec![Scalar::zero(); n];
    for (f, v) in free {
        x[*f] = v.clone();
    }
    for (ri, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[ri];
        let mut acc = if rhs_col { Scalar::from_integer(row[n].clone()) } else { Scalar::zero() };
        for j in pc + 1..n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Scalar::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Scalar::from_integer(row[pc].clone());
    }
    x
}

/// Exact solve of `A·x = b` by fraction-free Gaussian elimination.
///
/// Returns a particular solution with all free variables set to zero (so the
/// output is deterministic), a kernel basis with one vector per free column,
/// or an inconsistency certificate.
pub fn solve_exact(a: &Matrix, b: &[Scalar]) -> LinearSolveResult {
    assert_eq!(a.len(), b.len(), "row count of A must match length of b");
    let ncols = a.first().map(Vec::len).unwrap_or(0);
    let e = bareiss(a, b, ncols);
    let rank = e.pivots.len();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let kernel_basis: Vec<Vec<Scalar>> =
        free_cols.iter().map(|&f| back_substitute(&e, false, &[(f, Scalar::one())])).collect();

    for i in rank..a.len() {
        if !e.rows[i][ncols].is_zero() {
            let y: Vec<Scalar> = e.rows[i][ncols + 1..]
                .iter()
                .zip(&e.row_scale)
                .map(|(t, s)| Scalar::from_integer(t * s))
                .collect();
            return LinearSolveResult { solution: None, kernel_basis, residual_witness: Some(y), rank };
        }
    }
    let solution = back_substitute(&e, true, &[]);
    LinearSolveResult { solution: Some(solution), kernel_basis, residual_witness: None, rank }
}

pub fn rank(a: &Matrix) -> usize {
    let ncols = a.first().map(Vec::len).unwrap_or(0);
    let zeros = vec![Scalar::zero(); a.len()];
    bareiss(a, &zeros, ncols).pivots.len()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let b: Vec<Scalar> = (0..n).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect();
        let r = solve_exact(a, &b);
        if r.rank < n {
            return None;
        }
        cols.push(r.solution?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn mat_vec(a: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Scalar::zero(), |acc, (r, v)| acc + r * v))
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map(Vec::len).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Scalar::zero(), |acc, (r, brow)| acc + r * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map(Vec::len).unwrap_or(0);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }
    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn identity_system() {
        let r = solve_exact(&m(&[&[1, 0], &[0, 1]]), &v(&[1, 2]));
        assert_eq!(r.solution, Some(v(&[1, 2])));
        assert!(r.kernel_basis.is_empty());
    }

    #[test]
    fn underdetermined_row() {
        let r = solve_exact(&m(&[&[1, 1]]), &v(&[0]));
        assert_eq!(r.solution, Some(v(&[0, 0])));
        assert_eq!(r.kernel_basis, vec![v(&[-1, 1])]);
    }

    #[test]
    fn contradictory_rows_give_witness() {
        let a = m(&[&[1], &[1]]);
        let b = v(&[0, 1]);
        let r = solve_exact(&a, &b);
        assert!(r.solution.is_none());
        let y = r.residual_witness.unwrap();
        // yᵀA = 0, yᵀb ≠ 0; y = (1, −1) up to scale
        assert_eq!(&y[0] + &y[1], q(0, 1));
        assert!(!(&y[1] * &b[1]).is_zero());
        assert_eq!(&y[0] / &y[1], q(-1, 1));
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let a = vec![vec![q(1, 2), q(1, 3)], vec![q(0, 1), q(2, 1)]];
        let inv = inverse(&a).unwrap();
        let id = mat_mul(&a, &inv);
        assert_eq!(id, m(&[&[1, 0], &[0, 1]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
