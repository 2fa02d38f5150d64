//! Structured test families: linear Toeplitz matrices with their known
//! scaled intertwiners, and palindromic Jacobi matrices with corner
//! couplings (`A±`) or modified corner diagonals (`B±`).

use std::io::Write;

use serde::Serialize;

use crate::centro::{split_blocks, Parity};
use crate::error::{dimension, Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::{Approx, Scalar};
use crate::solver::{find_intertwiner, SearchOptions};

/// `m x m` matrix with entry `(i, j) = alpha + (i - j)`.
pub fn linear_toeplitz<F: Scalar>(alpha: &F, m: usize) -> Result<Matrix<F>> {
    if m == 0 {
        return Err(dimension("Toeplitz size must be at least 1"));
    }
    Ok(Matrix::from_fn(m, m, |i, j| {
        alpha.add(&F::from_i64(i as i64 - j as i64))
    }))
}

/// Numerator `X~` and squared scale `delta` of the known intertwiner
/// `X = X~ / sqrt(delta)` of `linear_toeplitz(alpha, m)` at split `m/2`.
///
/// For `m = 6` and `alpha = 15` the first family is singular and the
/// alternate numerator with `delta = 7680` is returned instead.
pub fn toeplitz_scaled_intertwiner<F: Scalar>(m: usize, alpha: &F) -> Result<(Matrix<F>, F)> {
    let k = |v: i64| F::from_i64(v);
    let lin = |a: i64, b: i64| alpha.mul(&k(a)).add(&k(b));
    match m {
        4 => Ok((
            Matrix::from_rows(vec![vec![k(2), lin(1, -1)], vec![lin(1, 1), k(2)]])?,
            alpha.mul(alpha).sub(&k(5)),
        )),
        6 if *alpha == k(15) => Ok((
            Matrix::from_i64(&[&[-9, 50, 55], &[58, 0, 50], &[71, 58, -9]]),
            k(7680),
        )),
        6 => Ok((
            Matrix::from_rows(vec![
                vec![k(0), k(16), lin(3, -13)],
                vec![k(20), lin(3, -27), k(16)],
                vec![lin(3, -5), k(20), k(0)],
            ])?,
            k(9).mul(alpha).mul(alpha).sub(&k(105)),
        )),
        _ => Err(Error::Precondition(format!(
            "scaled intertwiners are known for sizes 4 and 6, not {m}"
        ))),
    }
}

/// Residuals of `X~ A = D X~` and `delta C = X~ B X~` at the central split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledCheck<F: Scalar> {
    pub sylvester_residual: Matrix<F>,
    pub scaled_quadratic_residual: Matrix<F>,
}

impl<F: Scalar> ScaledCheck<F> {
    pub fn holds(&self) -> bool {
        self.sylvester_residual.is_zero() && self.scaled_quadratic_residual.is_zero()
    }
}

pub fn verify_scaled_intertwiner<F: Scalar>(
    m: &Matrix<F>,
    xtilde: &Matrix<F>,
    delta: &F,
) -> Result<ScaledCheck<F>> {
    let n = m.require_square("scaled intertwiner check")?;
    if n % 2 != 0 {
        return Err(dimension("scaled intertwiner check needs an even size"));
    }
    let bp = split_blocks(m, Parity::Even, n / 2)?;
    xtilde.require_shape(n / 2, n / 2, "X~")?;
    Ok(ScaledCheck {
        sylvester_residual: &(xtilde * &bp.a) - &(&bp.d * xtilde),
        scaled_quadratic_residual: &bp.c.scale(delta) - &(&(xtilde * &bp.b) * xtilde),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn apply<F: Scalar>(self, v: &F) -> F {
        match self {
            Sign::Plus => v.clone(),
            Sign::Minus => v.neg(),
        }
    }

    fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JacobiFamily {
    /// Tridiagonal with corner entries `±c_n`.
    A,
    /// Tridiagonal with corner diagonal entries `t ± c_0`.
    B,
}

/// Parameters `t`, `c_0..c_n` and sign of a palindromic Jacobi matrix of
/// size `n + 1 = c.len()`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PalindromicSpec<F: Scalar> {
    pub t: F,
    pub c: Vec<F>,
    pub sign: Sign,
}

impl<F: Scalar> PalindromicSpec<F> {
    pub fn size(&self) -> usize {
        self.c.len()
    }

    /// `c_j = c_{n-j+1}` for `j = 1..=floor(n/2)`; `c_0` is free, and so
    /// is the middle `c_{(n+1)/2}` for even sizes.
    pub fn validate(&self) -> Result<()> {
        let size = self.size();
        if size < 3 {
            return Err(Error::Precondition(format!(
                "palindromic families need size >= 3, got {size}"
            )));
        }
        let n = size - 1;
        for j in 1..=n / 2 {
            if self.c[j] != self.c[n - j + 1] {
                return Err(Error::Precondition(format!(
                    "c_{j} = {} differs from c_{} = {}",
                    self.c[j],
                    n - j + 1,
                    self.c[n - j + 1]
                )));
            }
        }
        Ok(())
    }

    pub fn with_t(&self, t: F) -> Self {
        PalindromicSpec { t, ..self.clone() }
    }
}

/// Tridiagonal matrix from its diagonal, superdiagonal and subdiagonal.
fn tridiagonal<F: Scalar>(diag: Vec<F>, sup: Vec<F>, sub: Vec<F>) -> Matrix<F> {
    let k = diag.len();
    let mut m = Matrix::zeros(k, k);
    for (i, v) in diag.into_iter().enumerate() {
        m.set(i, i, v);
    }
    for (i, v) in sup.into_iter().enumerate() {
        m.set(i, i + 1, v);
    }
    for (i, v) in sub.into_iter().enumerate() {
        m.set(i + 1, i, v);
    }
    m
}

/// `t` on the diagonal, `c_0..c_{n-1}` beside it, `±c_n` in the corners.
pub fn periodic_jacobi_pm<F: Scalar>(spec: &PalindromicSpec<F>) -> Result<Matrix<F>> {
    spec.validate()?;
    let n = spec.size() - 1;
    let off = spec.c[..n].to_vec();
    let mut m = tridiagonal(vec![spec.t.clone(); n + 1], off.clone(), off);
    let corner = spec.sign.apply(&spec.c[n]);
    m.set(0, n, corner.clone());
    m.set(n, 0, corner);
    Ok(m)
}

/// `c_1..c_n` beside the diagonal, `t ± c_0` in both diagonal corners.
pub fn bordered_jacobi_pm<F: Scalar>(spec: &PalindromicSpec<F>) -> Result<Matrix<F>> {
    spec.validate()?;
    let n = spec.size() - 1;
    let corner = spec.t.add(&spec.sign.apply(&spec.c[0]));
    let mut diag = vec![spec.t.clone(); n + 1];
    diag[0] = corner.clone();
    diag[n] = corner;
    let off = spec.c[1..].to_vec();
    Ok(tridiagonal(diag, off.clone(), off))
}

pub fn jacobi<F: Scalar>(family: JacobiFamily, spec: &PalindromicSpec<F>) -> Result<Matrix<F>> {
    match family {
        JacobiFamily::A => periodic_jacobi_pm(spec),
        JacobiFamily::B => bordered_jacobi_pm(spec),
    }
}

/// Symmetric tridiagonal block: diagonal `first, t, .., t, last`
/// (a single entry `first` when `k = 1`), off-diagonals `c_1..c_{k-1}`.
fn symmetric_block<F: Scalar>(
    spec: &PalindromicSpec<F>,
    k: usize,
    first: F,
    last: Option<F>,
) -> Matrix<F> {
    let mut diag = vec![spec.t.clone(); k];
    diag[0] = first;
    if let Some(l) = last {
        diag[k - 1] = l;
    }
    let off = spec.c[1..k].to_vec();
    tridiagonal(diag, off.clone(), off)
}

/// Block of size `h + 1` with diagonal `first, t, .., t`, superdiagonal
/// `c_1..c_h` and subdiagonal `c_1..c_{h-1}, 2 c_h`.
fn doubled_block<F: Scalar>(spec: &PalindromicSpec<F>, h: usize, first: F) -> Matrix<F> {
    let mut diag = vec![spec.t.clone(); h + 1];
    diag[0] = first;
    let sup = spec.c[1..=h].to_vec();
    let mut sub = sup.clone();
    sub[h - 1] = sub[h - 1].add(&sub[h - 1]);
    tridiagonal(diag, sup, sub)
}

/// The two factor matrices whose determinants multiply to the family
/// determinant, in display order.
pub fn palindromic_factor_matrices<F: Scalar>(
    family: JacobiFamily,
    spec: &PalindromicSpec<F>,
) -> Result<(Matrix<F>, Matrix<F>)> {
    spec.validate()?;
    let n = spec.size() - 1;
    let plus = spec.t.add(&spec.sign.apply(&spec.c[0]));
    let minus = spec.t.add(&spec.sign.flip().apply(&spec.c[0]));
    let odd_size = n.is_multiple_of(2);
    Ok(match (family, odd_size) {
        (JacobiFamily::A, true) => {
            let h = n / 2;
            (
                doubled_block(spec, h, plus),
                symmetric_block(spec, h, minus, None),
            )
        }
        (JacobiFamily::B, true) => {
            let h = n / 2;
            (
                symmetric_block(spec, h, plus.clone(), None),
                doubled_block(spec, h, plus),
            )
        }
        (family, false) => {
            let h = n.div_ceil(2);
            let mid = &spec.c[h];
            let second_first = match family {
                JacobiFamily::A => minus,
                JacobiFamily::B => plus.clone(),
            };
            (
                symmetric_block(spec, h, plus, Some(spec.t.add(mid))),
                symmetric_block(spec, h, second_first, Some(spec.t.sub(mid))),
            )
        }
    })
}

/// Cyclic shift `Q` with `Q[i][i+1] = 1` and `Q[n][0] = 1` (or `-1` when
/// `signed`). `Q A± Q^-1` moves the corner coupling next to the diagonal.
pub fn cyclic_shift<F: Scalar>(size: usize, signed: bool) -> Result<Matrix<F>> {
    if size < 2 {
        return Err(dimension("cyclic shift needs size >= 2"));
    }
    let mut q = Matrix::zeros(size, size);
    for i in 0..size - 1 {
        q.set(i, i + 1, F::one());
    }
    q.set(size - 1, 0, if signed { F::one().neg() } else { F::one() });
    Ok(q)
}

/// `Q A Q^-1` for the shift matching the sign of the `A±` spec.
pub fn cyclic_conjugate<F: Scalar>(spec: &PalindromicSpec<F>) -> Result<Matrix<F>> {
    let a = periodic_jacobi_pm(spec)?;
    let q = cyclic_shift::<F>(spec.size(), spec.sign == Sign::Minus)?;
    // Q is a signed permutation, so Q^-1 = Q^T
    Ok(&(&q * &a) * &q.transpose())
}

/// Checks `det(family(t)) = det(F1(t)) det(F2(t))` at `t = 0, 1, .., samples - 1`.
///
/// Both sides are polynomials of degree at most `n + 1` in `t`, so
/// agreement at `n + 2` distinct points proves the identity for the given
/// `c`; fewer points are rejected.
pub fn verify_palindromic_factorization<F: Scalar>(
    family: JacobiFamily,
    spec: &PalindromicSpec<F>,
    samples: usize,
) -> Result<bool> {
    spec.validate()?;
    let needed = spec.size() + 1;
    if samples < needed {
        return Err(Error::InsufficientEvidence {
            points: samples,
            needed,
        });
    }
    for k in 0..samples {
        let at = spec.with_t(F::from_i64(k as i64));
        let lhs = linalg::determinant(&jacobi(family, &at)?)?;
        let (f1, f2) = palindromic_factor_matrices(family, &at)?;
        let rhs = linalg::determinant(&f1)?.mul(&linalg::determinant(&f2)?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row of the alpha-scan CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub size: usize,
    pub best_residual_norm: f64,
    pub intertwiner_found: u8,
    pub invertible: u8,
}

/// Runs the intertwiner search in approximate mode on `linear_toeplitz(alpha, size)`
/// at the central split for each alpha, in the given order.
pub fn alpha_scan(
    alphas: &[f64],
    size: usize,
    tol: f64,
    options: &SearchOptions,
) -> Result<Vec<ScanRow>> {
    if size < 2 || !size.is_multiple_of(2) {
        return Err(dimension("alpha scan needs an even size >= 2"));
    }
    alphas
        .iter()
        .map(|&alpha| {
            let m = linear_toeplitz(&Approx::with_tolerance(alpha, tol), size)?;
            let search = find_intertwiner(&m, Parity::Even, size / 2, options)?;
            let best = search
                .solutions
                .iter()
                .map(|s| s.residual_norm())
                .fold(search.best_residual, f64::min);
            Ok(ScanRow {
                alpha,
                size,
                best_residual_norm: best,
                intertwiner_found: u8::from(!search.solutions.is_empty()),
                invertible: u8::from(search.first_invertible().is_some()),
            })
        })
        .collect()
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Parse(format!("csv: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Error::Parse(format!("csv: {e}")))
}
