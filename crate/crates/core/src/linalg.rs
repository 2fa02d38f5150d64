//! Elimination kernels: determinants, rank, nullspace, inverse and the rank
//! normal form `T X S = diag(I_r, 0)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

pub fn determinant<F: Scalar>(m: &Matrix<F>) -> Result<F> {
    m.require_square("determinant")?;
    Ok(F::determinant(m))
}

/// Fraction-free (Bareiss) determinant. Each row is first scaled to integers
/// by the lcm of its denominators; the scalings are divided out at the end.
pub(crate) fn bareiss_determinant(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(m.get(i, j).denom()));
            let row = (0..n)
                .map(|j| {
                    let v = m.get(i, j);
                    v.numer() * (&l / v.denom())
                })
                .collect();
            scale *= l;
            row
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&p| !a[p][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Rational::new(BigRational::new(det, scale))
}

/// Partially pivoted Gaussian elimination determinant.
pub(crate) fn eliminate_determinant<F: Scalar>(m: &Matrix<F>) -> F {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = F::one();
    for k in 0..n {
        let mut pivot = None;
        for i in k..n {
            let v = a.get(i, k);
            if v.is_zero() {
                continue;
            }
            match pivot {
                None => pivot = Some(i),
                Some(p) if F::better_pivot(v, a.get(p, k)) => pivot = Some(i),
                _ => {}
            }
        }
        let Some(p) = pivot else {
            return F::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            det = det.neg();
        }
        let pv = a.get(k, k).clone();
        det = det.mul(&pv);
        for i in k + 1..n {
            let f = a.get(i, k).div(&pv);
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.get(i, j).sub(&f.mul(a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Reduced row echelon form with column-by-column pivoting. Returns the
/// reduced matrix and the pivot column of each nonzero row.
pub fn rref<F: Scalar>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut pivot = None;
        for i in r..rows {
            let v = a.get(i, c);
            if v.is_zero() {
                continue;
            }
            match pivot {
                None => pivot = Some(i),
                Some(p) if F::better_pivot(v, a.get(p, c)) => pivot = Some(i),
                _ => {}
            }
        }
        let Some(p) = pivot else { continue };
        a.swap_rows(p, r);
        let pv = a.get(r, c).clone();
        for j in 0..cols {
            let v = a.get(r, j).div(&pv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..cols {
                let v = a.get(i, j).sub(&f.mul(a.get(r, j)));
                a.set(i, j, v);
            }
        }
        // exact zeros below tolerance-level noise in the pivot column
        for i in 0..rows {
            let target = if i == r { F::one() } else { F::zero() };
            a.set(i, c, target);
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Nullspace basis read off a reduced echelon form, ordered by free column.
fn nullspace_from_rref<F: Scalar>(r: &Matrix<F>, pivots: &[usize], cols: usize) -> Vec<Matrix<F>> {
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = r.get(row, free).neg();
        }
        basis.push(Matrix::column(v));
    }
    basis
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussFacts<F: Scalar> {
    pub rank: usize,
    pub nullspace: Vec<Matrix<F>>,
    pub inverse: Option<Matrix<F>>,
}

pub fn gauss_facts<F: Scalar>(m: &Matrix<F>) -> GaussFacts<F> {
    let (r, pivots) = rref(m);
    let rank = pivots.len();
    let nullspace = nullspace_from_rref(&r, &pivots, m.cols());
    let inverse = if m.is_square() && rank == m.rows() {
        inverse(m)
    } else {
        None
    };
    GaussFacts {
        rank,
        nullspace,
        inverse,
    }
}

pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

pub fn nullspace<F: Scalar>(m: &Matrix<F>) -> Vec<Matrix<F>> {
    let (r, pivots) = rref(m);
    nullspace_from_rref(&r, &pivots, m.cols())
}

/// Gauss-Jordan inverse of `[M | I]`; `None` for singular or non-square input.
pub fn inverse<F: Scalar>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    if n == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let aug = Matrix::from_blocks(&[&[m, &Matrix::identity(n)]]).ok()?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.submatrix(0, n, n, n))
}

/// Particular solution and nullspace basis.
pub type AffineSolution<F> = (Matrix<F>, Vec<Matrix<F>>);

/// Solution set of `L v = rhs` as a particular solution plus a nullspace
/// basis, or `None` when the system is inconsistent.
pub fn solve_affine<F: Scalar>(
    lhs: &Matrix<F>,
    rhs: &Matrix<F>,
) -> Result<Option<AffineSolution<F>>> {
    rhs.require_shape(lhs.rows(), 1, "right-hand side")?;
    let n = lhs.cols();
    let aug = Matrix::from_blocks(&[&[lhs, rhs]])?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![F::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = r.get(row, n).clone();
    }
    let coeffs = r.submatrix(0, 0, r.rows(), n);
    Ok(Some((
        Matrix::column(particular),
        nullspace_from_rref(&coeffs, &pivots, n),
    )))
}

/// `T X S = diag(I_r, 0)` with `T`, `S` invertible.
#[derive(Debug, Clone, Serialize)]
pub struct RankNormalForm<F: Scalar> {
    pub t: Matrix<F>,
    pub s: Matrix<F>,
    pub rank: usize,
}

/// Full-pivot Gauss-Jordan. In exact mode the pivot is the first nonzero
/// entry of the trailing submatrix in row-major order.
pub fn rank_normal_form<F: Scalar>(x: &Matrix<F>) -> RankNormalForm<F> {
    let (m, n) = x.shape();
    let mut w = x.clone();
    let mut t = Matrix::<F>::identity(m);
    let mut s = Matrix::<F>::identity(n);
    let mut k = 0;
    while k < m.min(n) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                let v = w.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) if F::better_pivot(v, w.get(pi, pj)) => pivot = Some((i, j)),
                    _ => {}
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(k, pi);
        t.swap_rows(k, pi);
        w.swap_cols(k, pj);
        s.swap_cols(k, pj);

        let pv = w.get(k, k).clone();
        for j in 0..n {
            let v = w.get(k, j).div(&pv);
            w.set(k, j, v);
        }
        for j in 0..m {
            let v = t.get(k, j).div(&pv);
            t.set(k, j, v);
        }
        for i in (0..m).filter(|&i| i != k) {
            let f = w.get(i, k).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = w.get(i, j).sub(&f.mul(w.get(k, j)));
                w.set(i, j, v);
            }
            for j in 0..m {
                let v = t.get(i, j).sub(&f.mul(t.get(k, j)));
                t.set(i, j, v);
            }
        }
        for j in (0..n).filter(|&j| j != k) {
            let f = w.get(k, j).clone();
            if f.is_zero() {
                continue;
            }
            for i in 0..m {
                let v = w.get(i, j).sub(&f.mul(w.get(i, k)));
                w.set(i, j, v);
            }
            for i in 0..n {
                let v = s.get(i, j).sub(&f.mul(s.get(i, k)));
                s.set(i, j, v);
            }
        }
        k += 1;
    }
    RankNormalForm { t, s, rank: k }
}

/// `diag(I_r, 0)` of the given shape.
pub fn rank_pattern<F: Scalar>(rows: usize, cols: usize, r: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |i, j| {
        if i == j && i < r {
            F::one()
        } else {
            F::zero()
        }
    })
}

/// `det(t I - M)`.
pub fn char_poly_at<F: Scalar>(m: &Matrix<F>, t: &F) -> Result<F> {
    let n = m.require_square("characteristic polynomial")?;
    let shifted = Matrix::from_fn(n, n, |i, j| {
        let v = m.get(i, j).neg();
        if i == j {
            v.add(t)
        } else {
            v
        }
    });
    determinant(&shifted)
}
