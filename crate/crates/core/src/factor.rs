//! Determinant factorizations of centrosymmetric matrices and of matrices
//! with a zero Riccati residual. Every report recomputes the direct
//! determinant and compares.

use serde::Serialize;

use crate::centro::{central_split, exchange, split_blocks};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::solver::{riccati_residual, Orientation};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport<F: Scalar> {
    pub factors: Vec<Matrix<F>>,
    pub factor_dets: Vec<F>,
    pub product: F,
    pub direct_det: F,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl<F: Scalar> FactorizationReport<F> {
    fn new(m: &Matrix<F>, factors: Vec<Matrix<F>>) -> Result<Self> {
        let factor_dets = factors
            .iter()
            .map(linalg::determinant)
            .collect::<Result<Vec<_>>>()?;
        let product = factor_dets.iter().fold(F::one(), |acc, d| acc.mul(d));
        let direct_det = linalg::determinant(m)?;
        let matches = product == direct_det;
        Ok(FactorizationReport {
            factors,
            factor_dets,
            product,
            direct_det,
            matches,
        })
    }
}

/// `det(A + BJ) det(A - BJ)` for even sizes, and
/// `det([[A + BJ, x], [2y, mu]]) det(A - BJ)` for odd sizes.
pub fn centro_det_factors<F: Scalar>(m: &Matrix<F>) -> Result<FactorizationReport<F>> {
    let n = m.require_square("centrosymmetric factorization")?;
    if n < 2 {
        return Err(Error::Precondition("factorization needs size >= 2".into()));
    }
    let (parity, s) = central_split(n);
    let bp = split_blocks(m, parity, s)?;
    if !bp.is_centrosymmetric() {
        return Err(Error::Precondition("matrix is not centrosymmetric".into()));
    }
    let bj = &bp.b * &exchange::<F>(s);
    let plus = &bp.a + &bj;
    let minus = &bp.a - &bj;
    let first = match &bp.center {
        None => plus,
        Some(cb) => {
            let two_y = cb.y.scale(&F::from_i64(2));
            let mu = Matrix::scalar(cb.mu.clone());
            Matrix::from_blocks(&[&[&plus, &cb.x], &[&two_y, &mu]])?
        }
    };
    FactorizationReport::new(m, vec![first, minus])
}

/// Conjugates `M` into block-triangular form using a zero-residual witness.
///
/// Lower: `[[I, 0], [-X, I]] M [[I, 0], [X, I]] = [[A + BX, B], [0, D - XB]]`.
/// Upper: `[[I, -Y], [0, I]] M [[I, Y], [0, I]] = [[A - YC, 0], [C, D + CY]]`.
pub fn riccati_block_triangularize<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    w: &Matrix<F>,
    orientation: Orientation,
) -> Result<Matrix<F>> {
    let witness = riccati_residual(m, s, w, orientation)?;
    if !witness.holds() {
        return Err(Error::Residual {
            equation: match orientation {
                Orientation::Lower => "C = XA - DX + XBX",
                Orientation::Upper => "B = YD - AY + YCY",
            },
            residual: witness.residual.to_string(),
        });
    }
    let n = m.rows();
    let (left, right) = shears(n, s, w, orientation);
    let out = &(&left * m) * &right;
    let off = match orientation {
        Orientation::Lower => out.submatrix(s, 0, n - s, s),
        Orientation::Upper => out.submatrix(0, s, s, n - s),
    };
    if !off.is_zero() {
        return Err(Error::Residual {
            equation: "off-diagonal block after triangularization",
            residual: off.to_string(),
        });
    }
    Ok(out)
}

/// Unipotent block shears `(L, L^-1)` for the given witness.
fn shears<F: Scalar>(
    n: usize,
    s: usize,
    w: &Matrix<F>,
    orientation: Orientation,
) -> (Matrix<F>, Matrix<F>) {
    let mut left = Matrix::identity(n);
    let mut right = Matrix::identity(n);
    match orientation {
        Orientation::Lower => {
            left.write_block(s, 0, &-w);
            right.write_block(s, 0, w);
        }
        Orientation::Upper => {
            left.write_block(0, s, &-w);
            right.write_block(0, s, w);
        }
    }
    (left, right)
}

/// Lower: `det(A + BX) det(D - XB)`. Upper: `det(A - YC) det(D + CY)`.
pub fn riccati_det_factor<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    w: &Matrix<F>,
    orientation: Orientation,
) -> Result<FactorizationReport<F>> {
    let tri = riccati_block_triangularize(m, s, w, orientation)?;
    let n = m.rows();
    let a_side = tri.submatrix(0, 0, s, s);
    let d_side = tri.submatrix(s, s, n - s, n - s);
    FactorizationReport::new(m, vec![a_side, d_side])
}
