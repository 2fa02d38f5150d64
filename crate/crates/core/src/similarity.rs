//! Explicit similarity transforms built from intertwiners.
//!
//! * invertible `X`: `Q = diag(I, XJ)` (odd: `diag(I, 1, XJ)`) makes `Q^-1 M Q`
//!   centrosymmetric;
//! * rank-`r` `X`: a conjugate of `M` with a centrosymmetric leading
//!   `2r x 2r` block;
//! * full-rank rectangular `X`: a `2k x 2k` matrix containing `M` as its
//!   leading principal submatrix and similar to a centrosymmetric matrix.

use serde::Serialize;

use crate::centro::{exchange, is_centrosymmetric, split_blocks, BlockPartition, Parity};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::solver::{check_intertwiner, require_split_square};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certification {
    FullyCentrosymmetric,
    /// Leading principal block of the given size is centrosymmetric.
    PrincipalBlock {
        size: usize,
    },
    /// The input was dilated to the given size and conjugated to a
    /// centrosymmetric matrix.
    Dilated {
        size: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformReport<F: Scalar> {
    pub q: Matrix<F>,
    pub q_inv: Matrix<F>,
    /// `Q^-1 M Q`
    pub result: Matrix<F>,
    pub certification: Certification,
}

impl<F: Scalar> TransformReport<F> {
    fn new(
        m: &Matrix<F>,
        q: Matrix<F>,
        q_inv: Matrix<F>,
        certification: Certification,
    ) -> Result<Self> {
        let result = &(&q_inv * m) * &q;
        let report = TransformReport {
            q,
            q_inv,
            result,
            certification,
        };
        if !report.structure_holds()? {
            return Err(Error::Precondition(format!(
                "transformed matrix fails the {:?} predicate",
                report.certification
            )));
        }
        Ok(report)
    }

    fn structure_holds(&self) -> Result<bool> {
        match self.certification {
            Certification::PrincipalBlock { size } => {
                is_centrosymmetric(&self.result.leading(size))
            }
            _ => is_centrosymmetric(&self.result),
        }
    }
}

/// Independent re-check of a transform report against its input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportCheck {
    pub inverse_ok: bool,
    pub result_ok: bool,
    pub structure_ok: bool,
    pub det_ok: bool,
    pub trace_ok: bool,
    pub char_poly_points: usize,
    pub char_poly_ok: bool,
}

impl ReportCheck {
    pub fn passed(&self) -> bool {
        self.inverse_ok
            && self.result_ok
            && self.structure_ok
            && self.det_ok
            && self.trace_ok
            && self.char_poly_ok
    }
}

/// Recomputes `Q Q^-1`, `Q^-1 M Q`, the structural predicate, determinant,
/// trace and `det(tI - M)` at `t = 0..=n+1`.
pub fn verify_report<F: Scalar>(m: &Matrix<F>, report: &TransformReport<F>) -> Result<ReportCheck> {
    let n = m.require_square("report verification")?;
    let q = &report.q;
    q.require_shape(n, n, "Q")?;
    report.q_inv.require_shape(n, n, "Q^-1")?;
    let inverse_ok = q.checked_mul(&report.q_inv)? == Matrix::identity(n);
    let recomputed = report.q_inv.checked_mul(m)?.checked_mul(q)?;
    let result_ok = recomputed == report.result;
    let r = &report.result;
    let det_ok = linalg::determinant(m)? == linalg::determinant(r)?;
    let trace_ok = m.trace()? == r.trace()?;
    let char_poly_points = n + 2;
    let mut char_poly_ok = true;
    for k in 0..char_poly_points {
        let t = F::from_i64(k as i64);
        char_poly_ok &= linalg::char_poly_at(m, &t)? == linalg::char_poly_at(r, &t)?;
    }
    Ok(ReportCheck {
        inverse_ok,
        result_ok,
        structure_ok: report.structure_holds()?,
        det_ok,
        trace_ok,
        char_poly_points,
        char_poly_ok,
    })
}

const RANK_HINT: &str = "use embed for a rank-deficient X or dilate for a rectangular X";

/// `Q = diag(I, XJ)` (odd parity: `diag(I, 1, XJ)`) for an invertible solution `X`.
pub fn build_centro_transform<F: Scalar>(
    m: &Matrix<F>,
    parity: Parity,
    s: usize,
    x: &Matrix<F>,
) -> Result<TransformReport<F>> {
    let bp = split_blocks(m, parity, s)?;
    let k = require_split_square(&bp)?;
    x.require_shape(k, k, "X")?;
    let Some(x_inv) = linalg::inverse(x) else {
        return Err(Error::Rank {
            rank: linalg::rank(x),
            expected: k,
            hint: RANK_HINT,
        });
    };
    check_intertwiner(m, parity, s, x)?.require_exact()?;
    let j = exchange::<F>(k);
    let id = Matrix::identity(k);
    let middle = Matrix::identity(usize::from(bp.center.is_some()));
    let q = Matrix::block_diag(&[&id, &middle, &(x * &j)]);
    let q_inv = Matrix::block_diag(&[&id, &middle, &(&j * &x_inv)]);
    TransformReport::new(m, q, q_inv, Certification::FullyCentrosymmetric)
}

fn even_solution<F: Scalar>(m: &Matrix<F>, s: usize, x: &Matrix<F>) -> Result<BlockPartition<F>> {
    let bp = split_blocks(m, Parity::Even, s)?;
    x.require_shape(bp.d.rows(), s, "X")?;
    check_intertwiner(m, Parity::Even, s, x)?.require_exact()?;
    Ok(bp)
}

/// Conjugate of `M` whose leading `2r x 2r` block is centrosymmetric, where
/// `r = rank(X)`.
///
/// With `T X S = diag(I_r, 0)`, conjugation by `diag(S, T^-1)` turns `X`
/// into `diag(I_r, 0)`; a block permutation (sizes `r, s-r, r, n-s-r`, the
/// third block reversed) then brings the coupled `r`-blocks together.
pub fn embed_centro_principal<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    x: &Matrix<F>,
) -> Result<TransformReport<F>> {
    let bp = even_solution(m, s, x)?;
    let n = bp.size();
    let rnf = linalg::rank_normal_form(x);
    let r = rnf.rank;
    if r == 0 {
        return Err(Error::Precondition("X has rank 0; nothing to embed".into()));
    }
    if r == s && r == n - s {
        return build_centro_transform(m, Parity::Even, s, x);
    }
    let t_inv = linalg::inverse(&rnf.t).expect("normal form factor is invertible");
    let s_inv = linalg::inverse(&rnf.s).expect("normal form factor is invertible");
    let q1 = Matrix::block_diag(&[&rnf.s, &t_inv]);
    let q1_inv = Matrix::block_diag(&[&s_inv, &rnf.t]);
    let moved = &(&q1_inv * m) * &q1;

    let a11 = moved.submatrix(0, 0, r, r);
    let b11 = moved.submatrix(0, s, r, r);
    let c11 = moved.submatrix(s, 0, r, r);
    let d11 = moved.submatrix(s, s, r, r);
    if a11 != d11 {
        return Err(Error::Residual {
            equation: "A'11 = D'11",
            residual: (&a11 - &d11).to_string(),
        });
    }
    if c11 != b11 {
        return Err(Error::Residual {
            equation: "C'11 = B'11",
            residual: (&c11 - &b11).to_string(),
        });
    }

    let perm = embed_permutation::<F>(r, s - r, n - s - r);
    let q = &q1 * &perm.transpose();
    let q_inv = &perm * &q1_inv;
    TransformReport::new(m, q, q_inv, Certification::PrincipalBlock { size: 2 * r })
}

/// Rows `[I_r,0,0,0]`, `[0,0,J_r,0]`, `[0,J_p,0,0]`, `[0,0,0,I_q]`.
fn embed_permutation<F: Scalar>(r: usize, p: usize, q: usize) -> Matrix<F> {
    let zero = |h, w| Matrix::<F>::zeros(h, w);
    let (ir, jr, jp, iq) = (
        Matrix::identity(r),
        exchange(r),
        exchange(p),
        Matrix::identity(q),
    );
    Matrix::from_blocks(&[
        &[&ir, &zero(r, p), &zero(r, r), &zero(r, q)],
        &[&zero(r, r), &zero(r, p), &jr, &zero(r, q)],
        &[&zero(p, r), &jp, &zero(p, r), &zero(p, q)],
        &[&zero(q, r), &zero(q, p), &zero(q, r), &iq],
    ])
    .expect("block sizes agree")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dilation<F: Scalar> {
    /// `2k x 2k` matrix with `M` as its leading principal `n x n` block.
    pub mhat: Matrix<F>,
    /// Invertible `k x k` intertwiner of `centro_form`.
    pub xhat: Matrix<F>,
    /// Matrix on which `xhat` solves the intertwiner system. Equal to
    /// `mhat` unless the final block permutation was applied.
    pub centro_form: Matrix<F>,
    /// Certifies `mhat`: `Q^-1 Mhat Q` is centrosymmetric.
    pub report: TransformReport<F>,
}

/// Dilates `M` to a `2k x 2k` matrix, `k = max(s, n-s)`, that is similar to a
/// centrosymmetric matrix and contains `M` as its leading principal block.
///
/// In approximate mode an `X` with orthonormal rows (or columns) is completed
/// by Gram-Schmidt, which makes `Q` orthogonal.
pub fn dilate_to_centrosimilar<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    x: &Matrix<F>,
) -> Result<Dilation<F>> {
    let bp = even_solution(m, s, x)?;
    let n = bp.size();
    let p = n - s;
    let rank = linalg::rank(x);
    if rank != s.min(p) {
        return Err(Error::Rank {
            rank,
            expected: s.min(p),
            hint: "a rank-deficient X only gives a centrosymmetric principal block; use embed",
        });
    }
    if s == p {
        let report = build_centro_transform(m, Parity::Even, s, x)?;
        return Ok(Dilation {
            mhat: m.clone(),
            xhat: x.clone(),
            centro_form: m.clone(),
            report,
        });
    }
    let (a, b, c, d) = (&bp.a, &bp.b, &bp.c, &bp.d);
    if s > p {
        // X is p x s with independent rows
        let y = complete_rows(x);
        let xhat = Matrix::from_blocks(&[&[x], &[&y]])?;
        let xhat_inv = linalg::inverse(&xhat).expect("completed rows are independent");
        let lower = &(&y * a) * &xhat_inv;
        let d21 = lower.submatrix(0, 0, s - p, p);
        let d22 = lower.submatrix(0, p, s - p, s - p);
        let b2 = nullspace_columns(x);
        let c2 = &(&(&y * b) * x) + &(&(&y * &b2) * &y);
        let zero = Matrix::zeros(p, s - p);
        let mhat = Matrix::from_blocks(&[&[a, b, &b2], &[c, d, &zero], &[&c2, &d21, &d22]])?;
        let inner = build_centro_transform(&mhat, Parity::Even, s, &xhat)?;
        let report = TransformReport::new(
            &mhat,
            inner.q,
            inner.q_inv,
            Certification::Dilated { size: 2 * s },
        )?;
        Ok(Dilation {
            centro_form: mhat.clone(),
            mhat,
            xhat,
            report,
        })
    } else {
        // X is p x s with independent columns, p > s
        let y = complete_rows(&x.transpose()).transpose();
        let xhat = Matrix::from_blocks(&[&[&y, x]])?;
        let xhat_inv = linalg::inverse(&xhat).expect("completed columns are independent");
        let stacked = &(&xhat_inv * d) * &y;
        let a11 = stacked.submatrix(0, 0, p - s, p - s);
        let a21 = stacked.submatrix(p - s, 0, s, p - s);
        let b1 = nullspace_columns(&x.transpose()).transpose();
        let c1 = &(&(&y * &b1) * &y) + &(&(x * b) * &y);
        let zero = Matrix::zeros(p - s, s);
        let tilde = Matrix::from_blocks(&[&[&a11, &zero, &b1], &[&a21, a, b], &[&c1, c, d]])?;
        let inner = build_centro_transform(&tilde, Parity::Even, p, &xhat)?;
        let size = 2 * p;
        let zero_top = Matrix::zeros(n, p - s);
        let zero_bottom = Matrix::zeros(p - s, n);
        let perm = Matrix::from_blocks(&[
            &[&zero_top, &Matrix::identity(n)],
            &[&Matrix::identity(p - s), &zero_bottom],
        ])?;
        let mhat = &(&perm * &tilde) * &perm.transpose();
        let q = &perm * &inner.q;
        let q_inv = &inner.q_inv * &perm.transpose();
        let report = TransformReport::new(&mhat, q, q_inv, Certification::Dilated { size })?;
        Ok(Dilation {
            mhat,
            xhat,
            centro_form: tilde,
            report,
        })
    }
}

/// Rows `Y` such that `[X; Y]` is invertible: standard basis rows added
/// greedily, lowest index first. Orthonormal rows are completed
/// orthonormally in approximate mode.
fn complete_rows<F: Scalar>(x: &Matrix<F>) -> Matrix<F> {
    let (rows, cols) = x.shape();
    if !F::EXACT && has_orthonormal_rows(x) {
        return gram_schmidt_completion(x);
    }
    let mut current = x.clone();
    let mut added: Vec<Vec<F>> = Vec::new();
    for i in 0..cols {
        if rows + added.len() == cols {
            break;
        }
        let e: Vec<F> = (0..cols)
            .map(|j| if i == j { F::one() } else { F::zero() })
            .collect();
        let trial =
            Matrix::from_blocks(&[&[&current], &[&Matrix::row(e.clone())]]).expect("same width");
        if linalg::rank(&trial) == trial.rows() {
            current = trial;
            added.push(e);
        }
    }
    if added.is_empty() {
        Matrix::zeros(0, cols)
    } else {
        Matrix::from_rows(added).expect("rows have equal length")
    }
}

fn has_orthonormal_rows<F: Scalar>(x: &Matrix<F>) -> bool {
    (x * &x.transpose()) == Matrix::identity(x.rows())
}

fn gram_schmidt_completion<F: Scalar>(x: &Matrix<F>) -> Matrix<F> {
    let (rows, cols) = x.shape();
    let mut basis: Vec<Vec<F>> = x.to_rows();
    let mut added = Vec::new();
    for i in 0..cols {
        if rows + added.len() == cols {
            break;
        }
        let mut v: Vec<F> = (0..cols)
            .map(|j| if i == j { F::one() } else { F::zero() })
            .collect();
        for u in &basis {
            let dot = u
                .iter()
                .zip(&v)
                .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
            for (vj, uj) in v.iter_mut().zip(u) {
                *vj = vj.sub(&dot.mul(uj));
            }
        }
        let norm_sq = v.iter().fold(F::zero(), |acc, a| acc.add(&a.mul(a)));
        // a vector this short is (numerically) in the span already
        if norm_sq.to_f64() < 1e-6 {
            continue;
        }
        let norm = norm_sq.sqrt().expect("positive norm");
        let unit: Vec<F> = v.iter().map(|a| a.div(&norm)).collect();
        basis.push(unit.clone());
        added.push(unit);
    }
    Matrix::from_rows(added).expect("rows have equal length")
}

/// Reduced-echelon right nullspace basis as the columns of one matrix.
fn nullspace_columns<F: Scalar>(x: &Matrix<F>) -> Matrix<F> {
    let basis = linalg::nullspace(x);
    let refs: Vec<&Matrix<F>> = basis.iter().collect();
    if refs.is_empty() {
        return Matrix::zeros(x.cols(), 0);
    }
    Matrix::from_blocks(&[&refs]).expect("columns have equal height")
}
