//! Exchange matrices, centrosymmetry predicates and block views.

use serde::Serialize;

use crate::error::{dimension, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `J_n`: ones on the anti-diagonal.
pub fn exchange_matrix<F: Scalar>(n: usize) -> Result<Matrix<F>> {
    if n == 0 {
        return Err(dimension("exchange matrix needs n >= 1"));
    }
    Ok(exchange(n))
}

/// `J_n` for any `n`, including the empty `J_0`.
pub(crate) fn exchange<F: Scalar>(n: usize) -> Matrix<F> {
    Matrix::from_fn(
        n,
        n,
        |i, j| {
            if i + j + 1 == n {
                F::one()
            } else {
                F::zero()
            }
        },
    )
}

/// Entrywise test `m[i][j] == m[n-1-i][n-1-j]`.
pub fn is_centrosymmetric<F: Scalar>(m: &Matrix<F>) -> Result<bool> {
    let n = m.require_square("centrosymmetry test")?;
    Ok((0..n).all(|i| (0..n).all(|j| m.get(i, j) == m.get(n - 1 - i, n - 1 - j))))
}

/// `M J == J M`, checked by multiplication.
pub fn commutes_with_exchange<F: Scalar>(m: &Matrix<F>) -> Result<bool> {
    let n = m.require_square("exchange commutation test")?;
    let j = exchange::<F>(n);
    Ok((m * &j) == (&j * m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Default block split: `s = n/2` for even `n`,
/// `s = (n-1)/2` with a center row/column for odd `n`.
pub fn central_split(n: usize) -> (Parity, usize) {
    if n.is_multiple_of(2) {
        (Parity::Even, n / 2)
    } else {
        (Parity::Odd, (n - 1) / 2)
    }
}

/// Center row and column of an odd split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterBlocks<F: Scalar> {
    pub x: Matrix<F>,
    pub y: Matrix<F>,
    pub mu: F,
    pub z: Matrix<F>,
    pub w: Matrix<F>,
}

/// Block view of a square matrix.
///
/// Even parity: `[[A, B], [C, D]]` with `A` of size `s x s`.
/// Odd parity (`n = 2s + 1`): `[[A, x, B], [y, mu, z], [C, w, D]]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockPartition<F: Scalar> {
    pub parity: Parity,
    pub s: usize,
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
    pub d: Matrix<F>,
    pub center: Option<CenterBlocks<F>>,
}

pub fn split_blocks<F: Scalar>(
    m: &Matrix<F>,
    parity: Parity,
    s: usize,
) -> Result<BlockPartition<F>> {
    let n = m.require_square("block split")?;
    match parity {
        Parity::Even => {
            if s == 0 || s >= n {
                return Err(dimension(format!(
                    "split index {s} must satisfy 1 <= s < {n}"
                )));
            }
            let r = n - s;
            Ok(BlockPartition {
                parity,
                s,
                a: m.submatrix(0, 0, s, s),
                b: m.submatrix(0, s, s, r),
                c: m.submatrix(s, 0, r, s),
                d: m.submatrix(s, s, r, r),
                center: None,
            })
        }
        Parity::Odd => {
            if s == 0 || n != 2 * s + 1 {
                return Err(dimension(format!(
                    "odd split needs n = 2s + 1 with s >= 1, got n = {n}, s = {s}"
                )));
            }
            Ok(BlockPartition {
                parity,
                s,
                a: m.submatrix(0, 0, s, s),
                b: m.submatrix(0, s + 1, s, s),
                c: m.submatrix(s + 1, 0, s, s),
                d: m.submatrix(s + 1, s + 1, s, s),
                center: Some(CenterBlocks {
                    x: m.submatrix(0, s, s, 1),
                    y: m.submatrix(s, 0, 1, s),
                    mu: m.get(s, s).clone(),
                    z: m.submatrix(s, s + 1, 1, s),
                    w: m.submatrix(s + 1, s, s, 1),
                }),
            })
        }
    }
}

impl<F: Scalar> BlockPartition<F> {
    pub fn size(&self) -> usize {
        self.a.rows() + self.d.rows() + usize::from(self.center.is_some())
    }

    /// Block conditions `J A = D J`, `C = J B J` and, for odd parity,
    /// `w = J x`, `y = z J`. False whenever the diagonal blocks differ in size.
    pub fn is_centrosymmetric(&self) -> bool {
        let s = self.a.rows();
        if self.d.rows() != s {
            return false;
        }
        let j = exchange::<F>(s);
        let blocks = &j * &self.a == &self.d * &j && self.c == &(&j * &self.b) * &j;
        match &self.center {
            None => blocks,
            Some(cb) => blocks && cb.w == &j * &cb.x && cb.y == &cb.z * &j,
        }
    }

    pub fn assemble(&self) -> Matrix<F> {
        let grid = match &self.center {
            None => Matrix::from_blocks(&[&[&self.a, &self.b], &[&self.c, &self.d]]),
            Some(cb) => {
                let mu = Matrix::scalar(cb.mu.clone());
                Matrix::from_blocks(&[
                    &[&self.a, &cb.x, &self.b],
                    &[&cb.y, &mu, &cb.z],
                    &[&self.c, &cb.w, &self.d],
                ])
            }
        };
        grid.expect("partition blocks are consistent")
    }
}
