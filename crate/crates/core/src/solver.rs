//! Intertwiner, Riccati and singularity-certificate equations on the blocks
//! of a square matrix.
//!
//! With the even split `M = [[A, B], [C, D]]` an intertwiner is an
//! `(n-s) x s` matrix `X` with `X A = D X` and `C = X B X`. For the odd split
//! `X` must also satisfy `w = X x` and `y = z X`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::centro::{exchange, split_blocks, BlockPartition, Parity};
use crate::error::{dimension, Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Matrix of the linear map `vec(X) -> vec(X A - D X)` for row-major `vec`.
pub fn sylvester_operator<F: Scalar>(a: &Matrix<F>, d: &Matrix<F>) -> Matrix<F> {
    let s = a.rows();
    let m = d.rows();
    let mut op = Matrix::<F>::zeros(m * s, m * s);
    for i in 0..m {
        for j in 0..s {
            let row = i * s + j;
            for q in 0..s {
                let col = i * s + q;
                let v = op.get(row, col).add(a.get(q, j));
                op.set(row, col, v);
            }
            for p in 0..m {
                let col = p * s + j;
                let v = op.get(row, col).sub(d.get(i, p));
                op.set(row, col, v);
            }
        }
    }
    op
}

fn unvec<F: Scalar>(v: &Matrix<F>, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::new(rows, cols, v.entries().to_vec()).expect("vector length matches shape")
}

/// Basis of `{X : X A = D X}`.
pub fn intertwiner_space<F: Scalar>(a: &Matrix<F>, d: &Matrix<F>) -> Result<Vec<Matrix<F>>> {
    let s = a.require_square("intertwiner space")?;
    let m = d.require_square("intertwiner space")?;
    let basis: Vec<_> = linalg::nullspace(&sylvester_operator(a, d))
        .iter()
        .map(|v| unvec(v, m, s))
        .collect();
    for x in &basis {
        let r = &(x * a) - &(d * x);
        if !r.is_zero() {
            return Err(Error::Residual {
                equation: "XA = DX",
                residual: r.to_string(),
            });
        }
    }
    Ok(basis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `C = XA - DX + XBX` with `X` of size `(n-s) x s`.
    Lower,
    /// `B = YD - AY + YCY` with `Y` of size `s x (n-s)`.
    Upper,
}

impl Orientation {
    pub(crate) fn witness_shape(self, n: usize, s: usize) -> (usize, usize) {
        match self {
            Orientation::Lower => (n - s, s),
            Orientation::Upper => (s, n - s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiccatiWitness<F: Scalar> {
    pub orientation: Orientation,
    pub w: Matrix<F>,
    pub residual: Matrix<F>,
}

impl<F: Scalar> RiccatiWitness<F> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub(crate) fn even_blocks<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    w: &Matrix<F>,
    orientation: Orientation,
) -> Result<BlockPartition<F>> {
    let bp = split_blocks(m, Parity::Even, s)?;
    let (r, c) = orientation.witness_shape(bp.size(), s);
    w.require_shape(r, c, "witness")?;
    Ok(bp)
}

/// Lower: `C - XA + DX - XBX`. Upper: `B - YD + AY - YCY`.
pub fn riccati_residual<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    w: &Matrix<F>,
    orientation: Orientation,
) -> Result<RiccatiWitness<F>> {
    let bp = even_blocks(m, s, w, orientation)?;
    let residual = match orientation {
        Orientation::Lower => {
            let xbx = &(w * &bp.b) * w;
            &(&(&bp.c - &(w * &bp.a)) + &(&bp.d * w)) - &xbx
        }
        Orientation::Upper => {
            let ycy = &(w * &bp.c) * w;
            &(&(&bp.b - &(w * &bp.d)) + &(&bp.a * w)) - &ycy
        }
    };
    Ok(RiccatiWitness {
        orientation,
        w: w.clone(),
        residual,
    })
}

/// Equation pairs whose nonzero solution forces `det(M) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularSystem {
    /// `C = XA` and `DX = XBX`.
    One = 1,
    /// `C = -DX` and `XA = -XBX`.
    Two = 2,
    /// `B = YD` and `AY = YCY`.
    Three = 3,
    /// `B = -AY` and `YD = -YCY`.
    Four = 4,
}

impl SingularSystem {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            _ => Err(Error::Precondition(format!(
                "system must be 1..=4, got {k}"
            ))),
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Self::One | Self::Two => Orientation::Lower,
            Self::Three | Self::Four => Orientation::Upper,
        }
    }
}

/// True iff the chosen pair of equations holds exactly for `w`.
pub fn singular_certificate<F: Scalar>(
    m: &Matrix<F>,
    s: usize,
    w: &Matrix<F>,
    system: SingularSystem,
) -> Result<bool> {
    let bp = even_blocks(m, s, w, system.orientation())?;
    if w.is_zero() {
        return Err(Error::Precondition(
            "the certificate needs a nonzero witness".into(),
        ));
    }
    let (a, b, c, d) = (&bp.a, &bp.b, &bp.c, &bp.d);
    Ok(match system {
        SingularSystem::One => *c == w * a && d * w == &(w * b) * w,
        SingularSystem::Two => *c == -&(d * w) && w * a == -&(&(w * b) * w),
        SingularSystem::Three => *b == w * d && a * w == &(w * c) * w,
        SingularSystem::Four => *b == -&(a * w) && w * d == -&(&(w * c) * w),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOptions {
    /// Largest intertwiner-space dimension handled by the grid scan.
    pub d_max: usize,
    /// Grid values are `p/q` with `|p| <= grid_numerator`, `1 <= q <= grid_denominator`.
    pub grid_numerator: i64,
    pub grid_denominator: i64,
    pub max_solutions: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            d_max: 3,
            grid_numerator: 5,
            grid_denominator: 3,
            max_solutions: 32,
        }
    }
}

impl SearchOptions {
    /// Distinct grid values in ascending order.
    pub fn grid<F: Scalar>(&self) -> Vec<F> {
        let mut pairs: Vec<(i64, i64)> = Vec::new();
        for q in 1..=self.grid_denominator.max(1) {
            for p in -self.grid_numerator..=self.grid_numerator {
                let g = p.gcd(&q);
                let pair = (p / g, q / g);
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            }
        }
        pairs.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        pairs
            .into_iter()
            .map(|(p, q)| F::from_ratio(p, q))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionSource<F: Scalar> {
    Exchange,
    Identity,
    NegatedExchange,
    /// `X = X0 + sum t_i N_i` over the solution space of the linear equations.
    Parametric {
        params: Vec<F>,
    },
}

/// Residuals `w - X x` and `y - z X` of the odd split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterResiduals<F: Scalar> {
    pub column: Matrix<F>,
    pub row: Matrix<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwinerSolution<F: Scalar> {
    pub x: Matrix<F>,
    /// `X A - D X`
    pub sylvester_residual: Matrix<F>,
    /// `C - X B X`
    pub quadratic_residual: Matrix<F>,
    pub center_residuals: Option<CenterResiduals<F>>,
    pub rank: usize,
    pub invertible: bool,
    pub source: SolutionSource<F>,
}

impl<F: Scalar> IntertwinerSolution<F> {
    pub fn is_exact(&self) -> bool {
        self.sylvester_residual.is_zero()
            && self.quadratic_residual.is_zero()
            && self
                .center_residuals
                .as_ref()
                .is_none_or(|c| c.column.is_zero() && c.row.is_zero())
    }

    pub fn residual_norm(&self) -> f64 {
        let mut sq =
            self.sylvester_residual.norm().powi(2) + self.quadratic_residual.norm().powi(2);
        if let Some(c) = &self.center_residuals {
            sq += c.column.norm().powi(2) + c.row.norm().powi(2);
        }
        sq.sqrt()
    }

    /// First failing equation as an error, if any.
    pub(crate) fn require_exact(&self) -> Result<()> {
        let fail = |equation, r: &Matrix<F>| Error::Residual {
            equation,
            residual: r.to_string(),
        };
        if !self.sylvester_residual.is_zero() {
            return Err(fail("XA = DX", &self.sylvester_residual));
        }
        if !self.quadratic_residual.is_zero() {
            return Err(fail("C = XBX", &self.quadratic_residual));
        }
        if let Some(c) = &self.center_residuals {
            if !c.column.is_zero() {
                return Err(fail("w = Xx", &c.column));
            }
            if !c.row.is_zero() {
                return Err(fail("y = zX", &c.row));
            }
        }
        Ok(())
    }
}

fn evaluate<F: Scalar>(
    bp: &BlockPartition<F>,
    x: Matrix<F>,
    source: SolutionSource<F>,
) -> IntertwinerSolution<F> {
    let sylvester_residual = &(&x * &bp.a) - &(&bp.d * &x);
    let quadratic_residual = &bp.c - &(&(&x * &bp.b) * &x);
    let center_residuals = bp.center.as_ref().map(|cb| CenterResiduals {
        column: &cb.w - &(&x * &cb.x),
        row: &cb.y - &(&cb.z * &x),
    });
    let rank = linalg::rank(&x);
    let invertible = x.is_square() && rank == x.rows();
    IntertwinerSolution {
        x,
        sylvester_residual,
        quadratic_residual,
        center_residuals,
        rank,
        invertible,
        source,
    }
}

/// Residuals and rank of a given `X` for the chosen split.
pub fn check_intertwiner<F: Scalar>(
    m: &Matrix<F>,
    parity: Parity,
    s: usize,
    x: &Matrix<F>,
) -> Result<IntertwinerSolution<F>> {
    let bp = split_blocks(m, parity, s)?;
    x.require_shape(bp.d.rows(), bp.a.rows(), "X")?;
    Ok(evaluate(
        &bp,
        x.clone(),
        SolutionSource::Parametric { params: vec![] },
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// The linear equations only admit `X = 0`.
    SylvesterSpaceTrivial,
    /// The odd-split linear equations have no solution at all.
    LinearConstraintsInconsistent,
    /// A scalar quadratic in the last parameter has roots outside the field.
    RootsOutsideField,
    /// Complete search of a space of dimension <= 1 found nothing.
    NoSolution { dimension: usize },
    /// The grid scan found nothing.
    GridMiss { dimension: usize },
    /// Space too large for the grid scan.
    SearchExhausted { dimension: usize, d_max: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::SylvesterSpaceTrivial => write!(f, "Sylvester space trivial"),
            Diagnostic::LinearConstraintsInconsistent => {
                write!(f, "linear constraints XA=DX, w=Xx, y=zX are inconsistent")
            }
            Diagnostic::RootsOutsideField => {
                write!(f, "quadratic constraint has roots outside the scalar field")
            }
            Diagnostic::NoSolution { dimension } => {
                write!(
                    f,
                    "no solution on the {dimension}-dimensional linear solution set"
                )
            }
            Diagnostic::GridMiss { dimension } => {
                write!(
                    f,
                    "grid scan over a {dimension}-dimensional space found no solution"
                )
            }
            Diagnostic::SearchExhausted { dimension, d_max } => write!(
                f,
                "search exhausted: space dimension {dimension} exceeds d_max = {d_max}"
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntertwinerSearch<F: Scalar> {
    pub solutions: Vec<IntertwinerSolution<F>>,
    pub diagnostics: Vec<Diagnostic>,
    /// Particular solution `X0` of the linear equations (zero for even splits).
    pub particular: Option<Matrix<F>>,
    pub basis: Vec<Matrix<F>>,
    /// Smallest combined residual norm among evaluated candidates.
    pub best_residual: f64,
}

impl<F: Scalar> IntertwinerSearch<F> {
    pub fn first_invertible(&self) -> Option<&IntertwinerSolution<F>> {
        self.solutions.iter().find(|s| s.invertible)
    }
}

/// Linear equations on `vec(X)`: `XA = DX` and, for odd splits, `Xx = w`, `zX = y`.
fn linear_system<F: Scalar>(bp: &BlockPartition<F>) -> (Matrix<F>, Matrix<F>) {
    let s = bp.a.rows();
    let m = bp.d.rows();
    let op = sylvester_operator(&bp.a, &bp.d);
    let Some(cb) = &bp.center else {
        let rhs = Matrix::zeros(op.rows(), 1);
        return (op, rhs);
    };
    let mut extra = Matrix::zeros(m + s, m * s);
    let mut rhs = vec![F::zero(); m * s];
    for i in 0..m {
        for q in 0..s {
            extra.set(i, i * s + q, cb.x.get(q, 0).clone());
        }
        rhs.push(cb.w.get(i, 0).clone());
    }
    for j in 0..s {
        for p in 0..m {
            extra.set(m + j, p * s + j, cb.z.get(0, p).clone());
        }
        rhs.push(cb.y.get(0, j).clone());
    }
    let lhs = Matrix::from_blocks(&[&[&op], &[&extra]]).expect("same width");
    (lhs, Matrix::column(rhs))
}

enum Roots<F> {
    Any,
    Finite(Vec<F>),
    OutsideField,
}

/// Quadratic `C - XBX` expanded in the parameters: the residual of
/// `X = X0 + sum t_i N_i` equals `K + sum t_i L_i + sum t_i t_j Q_ij`
/// (with the sign convention `XBX - C`).
struct QuadraticForm<F: Scalar> {
    constant: Matrix<F>,
    linear: Vec<Matrix<F>>,
    quadratic: Vec<Vec<Matrix<F>>>,
}

impl<F: Scalar> QuadraticForm<F> {
    fn new(bp: &BlockPartition<F>, x0: &Matrix<F>, basis: &[Matrix<F>]) -> Self {
        let b = &bp.b;
        let x0b = x0 * b;
        let constant = &(&x0b * x0) - &bp.c;
        let linear = basis
            .iter()
            .map(|n| &(&x0b * n) + &(&(n * b) * x0))
            .collect();
        let nb: Vec<_> = basis.iter().map(|n| n * b).collect();
        let quadratic = nb
            .iter()
            .map(|p| basis.iter().map(|n| p * n).collect())
            .collect();
        QuadraticForm {
            constant,
            linear,
            quadratic,
        }
    }

    /// Coefficients `(a, b, c)` of entry `e` as a polynomial in the last
    /// parameter, with the others fixed to `prefix`.
    fn entry_poly(&self, e: usize, prefix: &[F]) -> (F, F, F) {
        let d = self.linear.len() - 1;
        let a = self.quadratic[d][d].entries()[e].clone();
        let mut b = self.linear[d].entries()[e].clone();
        let mut c = self.constant.entries()[e].clone();
        for (i, ti) in prefix.iter().enumerate() {
            let cross = self.quadratic[i][d].entries()[e].add(&self.quadratic[d][i].entries()[e]);
            b = b.add(&ti.mul(&cross));
            c = c.add(&ti.mul(&self.linear[i].entries()[e]));
            for (j, tj) in prefix.iter().enumerate() {
                c = c.add(&ti.mul(tj).mul(&self.quadratic[i][j].entries()[e]));
            }
        }
        (a, b, c)
    }

    fn entries(&self) -> usize {
        self.constant.entries().len()
    }

    /// Exact roots in the last parameter, plus probe points (the vertex and
    /// the roots of the first nonzero entry) for residual tracking.
    fn roots_in_last(&self, prefix: &[F]) -> (Roots<F>, Vec<F>) {
        let is_null = |(a, b, c): &(F, F, F)| a.is_zero() && b.is_zero() && c.is_zero();
        let mut polys = (0..self.entries()).map(|e| self.entry_poly(e, prefix));
        let Some((a, b, c)) = polys.by_ref().find(|p| !is_null(p)) else {
            return (Roots::Any, vec![]);
        };
        let vertex: Vec<F> = (!a.is_zero())
            .then(|| b.neg().div(&a.add(&a)))
            .into_iter()
            .collect();
        let mut roots = if !a.is_zero() {
            let disc = b.mul(&b).sub(&F::from_i64(4).mul(&a).mul(&c));
            match disc.sqrt() {
                None => return (Roots::OutsideField, vertex),
                Some(r) => {
                    let two_a = a.add(&a);
                    let mut v = vec![b.neg().sub(&r).div(&two_a), b.neg().add(&r).div(&two_a)];
                    v.sort_by(|x, y| x.cmp_value(y));
                    if v[0] == v[1] {
                        v.pop();
                    }
                    v
                }
            }
        } else if !b.is_zero() {
            vec![c.neg().div(&b)]
        } else {
            vec![]
        };
        let probes = vertex.into_iter().chain(roots.iter().cloned()).collect();
        // remaining entries are expanded only while candidates survive
        for (a, b, c) in polys {
            if roots.is_empty() {
                break;
            }
            roots.retain(|t| a.mul(t).add(&b).mul(t).add(&c).is_zero());
        }
        (Roots::Finite(roots), probes)
    }
}

fn combine<F: Scalar>(x0: &Matrix<F>, basis: &[Matrix<F>], params: &[F]) -> Matrix<F> {
    basis
        .iter()
        .zip(params)
        .fold(x0.clone(), |acc, (n, t)| &acc + &n.scale(t))
}

struct Collector<'a, F: Scalar> {
    bp: &'a BlockPartition<F>,
    max: usize,
    solutions: Vec<IntertwinerSolution<F>>,
    best: f64,
}

impl<F: Scalar> Collector<'_, F> {
    fn full(&self) -> bool {
        self.solutions.len() >= self.max
    }

    fn offer(&mut self, x: Matrix<F>, source: SolutionSource<F>) {
        if x.is_zero() || self.full() {
            return;
        }
        let sol = evaluate(self.bp, x, source);
        self.best = self.best.min(sol.residual_norm());
        if sol.is_exact() && !self.solutions.iter().any(|s| s.x == sol.x) {
            self.solutions.push(sol);
        }
    }

    fn probe(&mut self, x: Matrix<F>) {
        if !x.is_zero() {
            let sol = evaluate(self.bp, x, SolutionSource::Parametric { params: vec![] });
            self.best = self.best.min(sol.residual_norm());
        }
    }
}

/// Searches for exact solutions of the intertwiner system.
///
/// Strategy: the candidates `J`, `I`, `-J` (square `X` only), then the
/// solution set `X0 + span{N_i}` of the linear equations. For dimension 1
/// the quadratic constraint is solved exactly; for `2 <= d <= d_max` the
/// first `d - 1` parameters range over the rational grid and the last is
/// solved exactly. Every returned solution is re-verified by multiplication.
/// The zero matrix is never reported.
pub fn find_intertwiner<F: Scalar>(
    m: &Matrix<F>,
    parity: Parity,
    s: usize,
    options: &SearchOptions,
) -> Result<IntertwinerSearch<F>> {
    let bp = split_blocks(m, parity, s)?;
    let rows = bp.d.rows();
    let mut out = Collector {
        bp: &bp,
        max: options.max_solutions.max(1),
        solutions: Vec::new(),
        best: f64::INFINITY,
    };
    let mut diagnostics = Vec::new();

    if rows == s {
        let j = exchange::<F>(s);
        out.offer(j.clone(), SolutionSource::Exchange);
        out.offer(Matrix::identity(s), SolutionSource::Identity);
        out.offer(-&j, SolutionSource::NegatedExchange);
    }

    let (lhs, rhs) = linear_system(&bp);
    let Some((x0_vec, null)) = linalg::solve_affine(&lhs, &rhs)? else {
        diagnostics.push(Diagnostic::LinearConstraintsInconsistent);
        return Ok(IntertwinerSearch {
            solutions: out.solutions,
            diagnostics,
            particular: None,
            basis: vec![],
            best_residual: out.best,
        });
    };
    let x0 = unvec(&x0_vec, rows, s);
    let basis: Vec<_> = null.iter().map(|v| unvec(v, rows, s)).collect();
    let dim = basis.len();
    let before = out.solutions.len();

    if dim == 0 {
        if x0.is_zero() {
            diagnostics.push(Diagnostic::SylvesterSpaceTrivial);
        } else {
            out.offer(x0.clone(), SolutionSource::Parametric { params: vec![] });
            if out.solutions.len() == before {
                diagnostics.push(Diagnostic::NoSolution { dimension: 0 });
            }
        }
    } else if dim > options.d_max {
        diagnostics.push(Diagnostic::SearchExhausted {
            dimension: dim,
            d_max: options.d_max,
        });
    } else {
        let form = QuadraticForm::new(&bp, &x0, &basis);
        let grid = options.grid::<F>();
        let mut outside = false;
        let mut prefix_iter = GridPrefixes::new(grid.len(), dim - 1);
        while let Some(idx) = prefix_iter.next_prefix() {
            if out.full() {
                break;
            }
            let prefix: Vec<F> = idx.iter().map(|&k| grid[k].clone()).collect();
            let (roots, probes) = form.roots_in_last(&prefix);
            let lasts = match roots {
                Roots::Any => grid.clone(),
                Roots::Finite(v) => v,
                Roots::OutsideField => {
                    outside = true;
                    vec![]
                }
            };
            if lasts.is_empty() && !F::EXACT {
                for t in probes {
                    let mut params = prefix.clone();
                    params.push(t);
                    out.probe(combine(&x0, &basis, &params));
                }
            }
            for t in lasts {
                let mut params = prefix.clone();
                params.push(t);
                let x = combine(&x0, &basis, &params);
                out.offer(x, SolutionSource::Parametric { params });
            }
        }
        if outside {
            diagnostics.push(Diagnostic::RootsOutsideField);
        }
        if out.solutions.len() == before {
            diagnostics.push(if dim == 1 {
                Diagnostic::NoSolution { dimension: 1 }
            } else {
                Diagnostic::GridMiss { dimension: dim }
            });
        }
    }

    Ok(IntertwinerSearch {
        solutions: out.solutions,
        diagnostics,
        particular: Some(x0),
        basis,
        best_residual: out.best,
    })
}

/// Lexicographic enumeration of index tuples of length `len` over `0..base`.
struct GridPrefixes {
    base: usize,
    current: Option<Vec<usize>>,
    started: bool,
}

impl GridPrefixes {
    fn new(base: usize, len: usize) -> Self {
        GridPrefixes {
            base,
            current: (base > 0 || len == 0).then(|| vec![0; len]),
            started: false,
        }
    }

    fn next_prefix(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return self.current.clone();
        }
        let cur = self.current.as_mut()?;
        for k in (0..cur.len()).rev() {
            cur[k] += 1;
            if cur[k] < self.base {
                return Some(cur.clone());
            }
            cur[k] = 0;
        }
        self.current = None;
        None
    }
}

pub(crate) fn require_split_square<F: Scalar>(bp: &BlockPartition<F>) -> Result<usize> {
    let s = bp.a.rows();
    if bp.d.rows() != s {
        return Err(dimension(format!(
            "diagonal blocks are {s}x{s} and {}x{}; an invertible X needs equal sizes",
            bp.d.rows(),
            bp.d.rows()
        )));
    }
    Ok(s)
}
