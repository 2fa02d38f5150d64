//! Independent oracles and random instance generators shared by the
//! integration tests.
#![allow(dead_code)]

use centrosim::linalg;
use centrosim::structured::{PalindromicSpec, Sign};
use centrosim::{Approx, Matrix, QMatrix, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

pub fn qr(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &QMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return q(1);
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut total = q(0);
    for j in 0..n {
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
            let cc = if c < j { c } else { c + 1 };
            m.get(r + 1, cc).clone()
        });
        let term = m.get(0, j).mul(&cofactor_det(&minor));
        total = if j % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

pub fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    Matrix::from_fn(ar * br, ac * bc, |i, j| {
        a.get(i / br, j / bc).mul(b.get(i % br, j % bc))
    })
}

/// `A^T (x) I - I (x) D`, the column-major vectorization of `X -> XA - DX`.
pub fn kron_sylvester(a: &QMatrix, d: &QMatrix) -> QMatrix {
    let s = a.rows();
    let m = d.rows();
    &kron(&a.transpose(), &QMatrix::identity(m)) - &kron(&QMatrix::identity(s), d)
}

pub fn rand_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    q(rng.random_range(lo..=hi))
}

pub fn rand_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> QMatrix {
    Matrix::from_fn(rows, cols, |_, _| rand_int(rng, lo, hi))
}

pub fn rand_nonzero_matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> QMatrix {
    loop {
        let m = rand_matrix(rng, rows, cols, lo, hi);
        if !m.is_zero() {
            return m;
        }
    }
}

pub fn rand_invertible<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> QMatrix {
    loop {
        let m = rand_matrix(rng, n, n, lo, hi);
        if !linalg::determinant(&m).unwrap().is_zero() {
            return m;
        }
    }
}

pub fn rand_full_rank<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    loop {
        let m = rand_matrix(rng, rows, cols, -3, 3);
        if linalg::rank(&m) == rows.min(cols) {
            return m;
        }
    }
}

pub fn rand_centro<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (mi, mj) = (n - 1 - i, n - 1 - j);
            if (i, j) <= (mi, mj) {
                let v = rand_int(rng, -6, 6);
                m.set(i, j, v.clone());
                m.set(mi, mj, v);
            }
        }
    }
    m
}

/// Random `Z` with `Z X = R`, or `None` if inconsistent.
pub fn left_solve<R: Rng>(rng: &mut R, x: &QMatrix, r: &QMatrix) -> Option<QMatrix> {
    let rows: Option<Vec<Vec<Rational>>> = (0..r.rows())
        .map(|i| {
            let rhs = QMatrix::column(r.row_vec(i));
            let (p, null) = linalg::solve_affine(&x.transpose(), &rhs).unwrap()?;
            let v = null
                .iter()
                .fold(p, |acc, n| &acc + &n.scale(&rand_int(rng, -2, 2)));
            Some(v.entries().to_vec())
        })
        .collect();
    Some(QMatrix::from_rows(rows?).unwrap())
}

/// Random `Z` with `X Z = R`, or `None` if inconsistent.
pub fn right_solve<R: Rng>(rng: &mut R, x: &QMatrix, r: &QMatrix) -> Option<QMatrix> {
    let zt = left_solve(rng, &x.transpose(), &r.transpose())?;
    Some(zt.transpose())
}

pub fn assemble(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> QMatrix {
    QMatrix::from_blocks(&[&[a, b], &[c, d]]).unwrap()
}

/// `M` with a known invertible intertwiner: `D = X A X^-1`, `C = X B X`.
pub struct Intertwined {
    pub m: QMatrix,
    pub x: QMatrix,
    pub s: usize,
}

pub fn intertwined<R: Rng>(rng: &mut R, s: usize) -> Intertwined {
    let x = rand_invertible(rng, s, -3, 3);
    let a = rand_matrix(rng, s, s, -4, 4);
    let b = rand_matrix(rng, s, s, -4, 4);
    let x_inv = linalg::inverse(&x).unwrap();
    let d = &(&x * &a) * &x_inv;
    let c = &(&x * &b) * &x;
    Intertwined {
        m: assemble(&a, &b, &c, &d),
        x,
        s,
    }
}

/// Lower witness: `C := XA - DX + XBX`.
pub fn riccati_lower<R: Rng>(rng: &mut R, s: usize, p: usize) -> (QMatrix, QMatrix) {
    let x = rand_matrix(rng, p, s, -3, 3);
    let a = rand_matrix(rng, s, s, -4, 4);
    let b = rand_matrix(rng, s, p, -4, 4);
    let d = rand_matrix(rng, p, p, -4, 4);
    let c = &(&(&x * &a) - &(&d * &x)) + &(&(&x * &b) * &x);
    (assemble(&a, &b, &c, &d), x)
}

/// Upper witness: `B := YD - AY + YCY`.
pub fn riccati_upper<R: Rng>(rng: &mut R, s: usize, p: usize) -> (QMatrix, QMatrix) {
    let y = rand_matrix(rng, s, p, -3, 3);
    let a = rand_matrix(rng, s, s, -4, 4);
    let c = rand_matrix(rng, p, s, -4, 4);
    let d = rand_matrix(rng, p, p, -4, 4);
    let b = &(&(&y * &d) - &(&a * &y)) + &(&(&y * &c) * &y);
    (assemble(&a, &b, &c, &d), y)
}

/// Instance of certificate system `k` (1..=4) with a nonzero witness.
pub fn singular_instance<R: Rng>(rng: &mut R, k: u8, s: usize, p: usize) -> (QMatrix, QMatrix) {
    match k {
        1 => {
            // C = XA, DX = XBX
            let x = rand_nonzero_matrix(rng, p, s, -2, 2);
            let a = rand_matrix(rng, s, s, -3, 3);
            let b = rand_matrix(rng, s, p, -3, 3);
            let c = &x * &a;
            let d =
                left_solve(rng, &x, &(&(&x * &b) * &x)).expect("rows lie in the row space of X");
            (assemble(&a, &b, &c, &d), x)
        }
        2 => {
            // C = -DX, XA = -XBX
            let x = rand_nonzero_matrix(rng, p, s, -2, 2);
            let b = rand_matrix(rng, s, p, -3, 3);
            let d = rand_matrix(rng, p, p, -3, 3);
            let c = -&(&d * &x);
            let a = right_solve(rng, &x, &-&(&(&x * &b) * &x))
                .expect("columns lie in the column space of X");
            (assemble(&a, &b, &c, &d), x)
        }
        3 => {
            // B = YD, AY = YCY
            let y = rand_nonzero_matrix(rng, s, p, -2, 2);
            let c = rand_matrix(rng, p, s, -3, 3);
            let d = rand_matrix(rng, p, p, -3, 3);
            let b = &y * &d;
            let a =
                left_solve(rng, &y, &(&(&y * &c) * &y)).expect("rows lie in the row space of Y");
            (assemble(&a, &b, &c, &d), y)
        }
        4 => {
            // B = -AY, YD = -YCY
            let y = rand_nonzero_matrix(rng, s, p, -2, 2);
            let a = rand_matrix(rng, s, s, -3, 3);
            let c = rand_matrix(rng, p, s, -3, 3);
            let b = -&(&a * &y);
            let d = right_solve(rng, &y, &-&(&(&y * &c) * &y))
                .expect("columns lie in the column space of Y");
            (assemble(&a, &b, &c, &d), y)
        }
        _ => unreachable!(),
    }
}

/// Rank-`r` intertwiner instance, built in normal coordinates
/// `X' = diag(I_r, 0)` and conjugated by random `S`, `T`.
pub fn rank_deficient<R: Rng>(rng: &mut R, s: usize, p: usize, r: usize) -> (QMatrix, QMatrix) {
    let mut a = rand_matrix(rng, s, s, -4, 4);
    let mut d = rand_matrix(rng, p, p, -4, 4);
    let b = rand_matrix(rng, s, p, -4, 4);
    for i in 0..r {
        for j in r..s {
            a.set(i, j, q(0));
        }
        for j in 0..r {
            d.set(i, j, a.get(i, j).clone());
        }
    }
    for i in r..p {
        for j in 0..r {
            d.set(i, j, q(0));
        }
    }
    let xp = linalg::rank_pattern::<Rational>(p, s, r);
    let c = &(&xp * &b) * &xp;
    let mp = assemble(&a, &b, &c, &d);
    let sm = rand_invertible(rng, s, -2, 2);
    let tm = rand_invertible(rng, p, -2, 2);
    let s_inv = linalg::inverse(&sm).unwrap();
    let t_inv = linalg::inverse(&tm).unwrap();
    let q1 = QMatrix::block_diag(&[&sm, &t_inv]);
    let q1_inv = QMatrix::block_diag(&[&s_inv, &tm]);
    let m = &(&q1 * &mp) * &q1_inv;
    let x = &(&t_inv * &xp) * &s_inv;
    (m, x)
}

/// Full-rank rectangular intertwiner instance at split `s` of size `n`.
pub fn full_rank_rectangular<R: Rng>(rng: &mut R, n: usize, s: usize) -> (QMatrix, QMatrix) {
    let p = n - s;
    let x = rand_full_rank(rng, p, s);
    let b = rand_matrix(rng, s, p, -3, 3);
    let (a, d) = if s > p {
        let d = rand_matrix(rng, p, p, -3, 3);
        let a = right_solve(rng, &x, &(&d * &x)).expect("X has full row rank");
        (a, d)
    } else {
        let a = rand_matrix(rng, s, s, -3, 3);
        let d = left_solve(rng, &x, &(&x * &a)).expect("X has full column rank");
        (a, d)
    };
    let c = &(&x * &b) * &x;
    (assemble(&a, &b, &c, &d), x)
}

/// Dilation instance in approximate mode whose `X` has orthonormal rows.
pub fn orthonormal_row_instance(theta: f64) -> (Matrix<Approx>, Matrix<Approx>) {
    let ap = |v: f64| Approx::new(v);
    let x = Matrix::from_rows(vec![vec![ap(theta.cos()), ap(theta.sin())]]).unwrap();
    let d = Matrix::from_rows(vec![vec![ap(1.5)]]).unwrap();
    let k = Matrix::from_rows(vec![vec![ap(2.0), ap(-1.0)], vec![ap(0.5), ap(3.0)]]).unwrap();
    // A = X^T D X + (I - X^T X) K satisfies X A = D X
    let xt = x.transpose();
    let proj = &Matrix::identity(2) - &(&xt * &x);
    let a = &(&(&xt * &d) * &x) + &(&proj * &k);
    let b = Matrix::from_rows(vec![vec![ap(0.25)], vec![ap(-2.0)]]).unwrap();
    let c = &(&x * &b) * &x;
    (Matrix::from_blocks(&[&[&a, &b], &[&c, &d]]).unwrap(), x)
}

/// Random palindromic spec of the given size with rational `c`.
pub fn rand_palindromic<R: Rng>(rng: &mut R, size: usize, sign: Sign) -> PalindromicSpec<Rational> {
    let n = size - 1;
    let mut c: Vec<Rational> = (0..=n)
        .map(|_| qr(rng.random_range(-9..=9), rng.random_range(1..=4)))
        .collect();
    for j in 1..=n / 2 {
        c[n - j + 1] = c[j].clone();
    }
    PalindromicSpec { t: q(0), c, sign }
}
