//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use centrosim::centro::{
    central_split, commutes_with_exchange, is_centrosymmetric, split_blocks, Parity,
};
use centrosim::factor::{centro_det_factors, riccati_block_triangularize, riccati_det_factor};
use centrosim::linalg;
use centrosim::similarity::{
    build_centro_transform, dilate_to_centrosimilar, embed_centro_principal, verify_report,
    Certification,
};
use centrosim::solver::{
    find_intertwiner, riccati_residual, singular_certificate, Diagnostic, Orientation,
    SearchOptions, SingularSystem,
};
use centrosim::structured::{
    cyclic_conjugate, linear_toeplitz, toeplitz_scaled_intertwiner,
    verify_palindromic_factorization, verify_scaled_intertwiner, JacobiFamily, Sign,
};
use centrosim::{Approx, Matrix, QMatrix, Rational, Scalar};
use common::*;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// 20 distinct rationals avoiding the listed values.
fn sample_alphas(avoid: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut k = 0i64;
    while out.len() < 20 {
        let a = qr(7 * k - 61, 1 + k % 4);
        if !avoid.contains(&a) && !out.contains(&a) {
            out.push(a);
        }
        k += 1;
    }
    out
}

fn c01_counterexample() -> Outcome {
    let m = QMatrix::from_i64(&[&[1, 3], &[2, 2]]);
    let found = ok(
        find_intertwiner(&m, Parity::Even, 1, &SearchOptions::default()),
        "search",
    )?;
    ensure!(
        found.solutions.is_empty(),
        "expected no solutions, got {}",
        found.solutions.len()
    );
    ensure!(
        found.diagnostics == vec![Diagnostic::SylvesterSpaceTrivial],
        "diagnostics {:?}",
        found.diagnostics
    );
    ensure!(
        found.diagnostics[0].to_string() == "Sylvester space trivial",
        "message {}",
        found.diagnostics[0]
    );
    let partner = QMatrix::parse_json_str(r#"{"rows": [["3/2","5/2"],["5/2","3/2"]]}"#).unwrap();
    let det_m = ok(linalg::determinant(&m), "det")?;
    let det_p = ok(linalg::determinant(&partner), "det")?;
    ensure!(det_m == q(-4) && det_p == q(-4), "dets {det_m} {det_p}");
    ensure!(cofactor_det(&m) == q(-4), "cofactor oracle disagrees");
    let (tm, tp) = (m.trace().unwrap(), partner.trace().unwrap());
    ensure!(tm == q(3) && tp == q(3), "traces {tm} {tp}");
    ensure!(
        is_centrosymmetric(&partner).unwrap(),
        "partner not centrosymmetric"
    );
    Ok("empty search, Sylvester space trivial; det -4 and trace 3 on both".into())
}

fn c02_toeplitz_alpha_three() -> Outcome {
    let m = ok(linear_toeplitz(&q(3), 4), "toeplitz")?;
    let found = ok(
        find_intertwiner(&m, Parity::Even, 2, &SearchOptions::default()),
        "search",
    )?;
    let want = QMatrix::from_i64(&[&[1, 1], &[2, 1]]);
    let hit = found
        .solutions
        .iter()
        .find(|s| s.x == want)
        .ok_or("X = [[1,1],[2,1]] not found")?;
    ensure!(
        hit.sylvester_residual.is_zero() && hit.quadratic_residual.is_zero(),
        "nonzero residual"
    );
    ensure!(hit.invertible, "X not flagged invertible");
    let report = ok(
        build_centro_transform(&m, Parity::Even, 2, &hit.x),
        "transform",
    )?;
    ensure!(
        is_centrosymmetric(&report.result).unwrap(),
        "result not centrosymmetric"
    );
    let det_m = cofactor_det(&m);
    let det_r = cofactor_det(&report.result);
    ensure!(det_m == det_r, "det {det_m} vs {det_r}");
    let check = ok(verify_report(&m, &report), "verify")?;
    ensure!(check.passed(), "report check {check:?}");
    Ok(format!("found, certified, det {det_m} preserved"))
}

fn c03_example_one_scaled() -> Outcome {
    let alphas = sample_alphas(&[]);
    for a in &alphas {
        let m = ok(linear_toeplitz(a, 4), "toeplitz")?;
        let (xt, delta) = ok(toeplitz_scaled_intertwiner(4, a), "scaled X")?;
        ensure!(delta == a.mul(a).sub(&q(5)), "delta at {a}");
        let chk = ok(verify_scaled_intertwiner(&m, &xt, &delta), "check")?;
        ensure!(chk.holds(), "scaled identity fails at alpha = {a}: {chk:?}");
    }
    Ok(format!("{} rational alpha values", alphas.len()))
}

fn c04_example_two_scaled() -> Outcome {
    let alphas = sample_alphas(&[q(15)]);
    for a in &alphas {
        let m = ok(linear_toeplitz(a, 6), "toeplitz")?;
        let (xt, delta) = ok(toeplitz_scaled_intertwiner(6, a), "scaled X")?;
        ensure!(delta == q(9).mul(a).mul(a).sub(&q(105)), "delta at {a}");
        let chk = ok(verify_scaled_intertwiner(&m, &xt, &delta), "check")?;
        ensure!(chk.holds(), "scaled identity fails at alpha = {a}");
    }
    // first numerator family evaluated directly at alpha = 15
    let first = QMatrix::from_i64(&[&[0, 16, 32], &[20, 18, 16], &[40, 20, 0]]);
    let r_first = linalg::rank(&first);
    ensure!(r_first == 2, "first numerator at 15 has rank {r_first}");
    let m = linear_toeplitz(&q(15), 6).unwrap();
    let (alt, delta) = ok(toeplitz_scaled_intertwiner(6, &q(15)), "alternate")?;
    ensure!(delta == q(7680), "alternate delta {delta}");
    ensure!(
        verify_scaled_intertwiner(&m, &alt, &delta).unwrap().holds(),
        "alternate fails"
    );
    let r_alt = linalg::rank(&alt);
    ensure!(r_alt == 3, "alternate rank {r_alt}");
    Ok(format!(
        "{} alpha values; rank 2 at 15, alternate rank 3 with delta 7680",
        alphas.len()
    ))
}

fn c05_riccati_counterexample() -> Outcome {
    let m = QMatrix::from_i64(&[&[1, -1], &[1, -1]]);
    let one = QMatrix::from_i64(&[&[1]]);
    let w = ok(
        riccati_residual(&m, 1, &one, Orientation::Lower),
        "residual",
    )?;
    ensure!(w.holds(), "residual {}", w.residual);
    let r = ok(
        riccati_det_factor(&m, 1, &one, Orientation::Lower),
        "factor",
    )?;
    ensure!(
        r.factor_dets == vec![q(0), q(0)],
        "factor dets {:?}",
        r.factor_dets
    );
    ensure!(
        r.product == q(0) && r.direct_det == q(0) && r.matches,
        "product/direct mismatch"
    );
    ensure!(
        (&m * &m).is_zero() && !m.is_zero(),
        "M^2 = 0 with M != 0 fails"
    );
    let found = ok(
        find_intertwiner(&m, Parity::Even, 1, &SearchOptions::default()),
        "search",
    )?;
    ensure!(
        found.first_invertible().is_none(),
        "unexpected invertible intertwiner"
    );
    Ok("zero residual, factors 0 and 0, M nilpotent, no invertible X".into())
}

fn c06_centro_factor_suite() -> Outcome {
    let mut rng = rng(6);
    let mut by_parity = [0usize; 2];
    for i in 0..200 {
        let n = 2 + i % 6;
        let m = rand_centro(&mut rng, n);
        let r = ok(centro_det_factors(&m), "factor")?;
        ensure!(r.matches, "mismatch at instance {i} (n = {n})");
        if n <= 5 {
            ensure!(
                r.direct_det == cofactor_det(&m),
                "direct det disagrees with cofactor oracle"
            );
        }
        by_parity[n % 2] += 1;
    }
    Ok(format!(
        "200 matrices ({} even, {} odd)",
        by_parity[0], by_parity[1]
    ))
}

fn c07_riccati_suite() -> Outcome {
    let mut rng = rng(7);
    for orientation in [Orientation::Lower, Orientation::Upper] {
        for i in 0..200 {
            let n = 2 + i % 5;
            let s = 1 + rng.random_range(0..n - 1);
            let p = n - s;
            let (m, w) = match orientation {
                Orientation::Lower => riccati_lower(&mut rng, s, p),
                Orientation::Upper => riccati_upper(&mut rng, s, p),
            };
            let tri = ok(
                riccati_block_triangularize(&m, s, &w, orientation),
                "triangularize",
            )?;
            let off = match orientation {
                Orientation::Lower => tri.submatrix(s, 0, p, s),
                Orientation::Upper => tri.submatrix(0, s, s, p),
            };
            ensure!(
                off.is_zero(),
                "{orientation:?} instance {i}: off block {off}"
            );
            let r = ok(riccati_det_factor(&m, s, &w, orientation), "factor")?;
            ensure!(
                r.matches,
                "{orientation:?} instance {i}: product {} vs {}",
                r.product,
                r.direct_det
            );
        }
    }
    let mut dual = 0;
    for i in 0..200 {
        let inst = intertwined(&mut rng, 1 + i % 3);
        let y = linalg::inverse(&inst.x).unwrap();
        let lower = ok(
            riccati_det_factor(&inst.m, inst.s, &inst.x, Orientation::Lower),
            "lower",
        )?;
        let upper = ok(
            riccati_det_factor(&inst.m, inst.s, &y, Orientation::Upper),
            "upper",
        )?;
        let mut l = lower.factor_dets.clone();
        let mut u = upper.factor_dets.clone();
        l.sort();
        u.sort();
        ensure!(l == u, "duality fails at instance {i}: {l:?} vs {u:?}");
        ensure!(lower.product == upper.product, "products differ");
        dual += 1;
    }
    Ok(format!("200 per orientation; {dual} duality checks"))
}

fn c08_singular_suite() -> Outcome {
    let mut rng = rng(8);
    for k in 1..=4u8 {
        let system = SingularSystem::from_index(k).unwrap();
        for i in 0..100 {
            let n = 2 + i % 5;
            let s = 1 + rng.random_range(0..n - 1);
            let (m, w) = singular_instance(&mut rng, k, s, n - s);
            ensure!(!w.is_zero(), "zero witness generated");
            let holds = ok(singular_certificate(&m, s, &w, system), "certificate")?;
            ensure!(holds, "system {k} instance {i}: certificate false");
            let det = linalg::determinant(&m).unwrap();
            ensure!(det.is_zero(), "system {k} instance {i}: det {det}");
        }
    }
    Ok("100 instances for each of the 4 systems, all singular".into())
}

fn c09_embed_suite() -> Outcome {
    let mut rng = rng(9);
    let shapes: Vec<(usize, usize, usize)> = vec![
        (2, 2, 1),
        (2, 3, 1),
        (3, 2, 1),
        (2, 4, 1),
        (4, 2, 1),
        (3, 3, 1),
        (3, 3, 2),
    ];
    for i in 0..100 {
        let (s, p, r) = shapes[i % shapes.len()];
        let (m, x) = rank_deficient(&mut rng, s, p, r);
        ensure!(linalg::rank(&x) == r, "generator produced wrong rank");
        let report = ok(embed_centro_principal(&m, s, &x), "embed")?;
        ensure!(
            report.certification == Certification::PrincipalBlock { size: 2 * r },
            "certification {:?}",
            report.certification
        );
        ensure!(
            is_centrosymmetric(&report.result.leading(2 * r)).unwrap(),
            "leading block"
        );
        let check = ok(verify_report(&m, &report), "verify")?;
        ensure!(check.passed(), "instance {i}: {check:?}");
    }
    Ok("100 rank-deficient instances up to n = 6".into())
}

fn c10_dilation_suite() -> Outcome {
    let mut rng = rng(10);
    let wide = [(3, 2), (4, 3), (5, 3), (5, 4), (6, 4), (6, 5)];
    let tall = [(3, 1), (4, 1), (5, 1), (5, 2), (6, 1), (6, 2)];
    for (branch, shapes) in [("s > n/2", &wide), ("s < n/2", &tall)] {
        for i in 0..100 {
            let (n, s) = shapes[i % shapes.len()];
            let (m, x) = full_rank_rectangular(&mut rng, n, s);
            let dil = ok(dilate_to_centrosimilar(&m, s, &x), "dilate")?;
            let k = s.max(n - s);
            ensure!(
                dil.mhat.shape() == (2 * k, 2 * k),
                "{branch}: shape {:?}",
                dil.mhat.shape()
            );
            ensure!(
                dil.mhat.leading(n) == m,
                "{branch} instance {i}: M is not the leading block"
            );
            let check = ok(verify_report(&dil.mhat, &dil.report), "verify")?;
            ensure!(check.passed(), "{branch} instance {i}: {check:?}");
            let inner = ok(
                build_centro_transform(&dil.centro_form, Parity::Even, k, &dil.xhat),
                "transform of dilation",
            )?;
            ensure!(
                is_centrosymmetric(&inner.result).unwrap(),
                "{branch}: not certified"
            );
        }
    }
    let (m, x) = orthonormal_row_instance(0.7);
    let dil = ok(dilate_to_centrosimilar(&m, 2, &x), "approx dilate")?;
    let qtq = &dil.report.q.transpose() * &dil.report.q;
    let err = (&qtq - &Matrix::<Approx>::identity(qtq.rows())).norm();
    // NaN must fail too
    ensure!(
        err.is_finite() && err <= 1e-9,
        "Q^T Q deviates from I by {err:e}"
    );
    Ok(format!(
        "100 per branch; orthonormal-row Q with |Q^T Q - I| = {err:.1e}"
    ))
}

fn c11_palindromic_suite() -> Outcome {
    let mut rng = rng(11);
    let mut checks = 0;
    for size in 3..=8 {
        for _ in 0..50 {
            for sign in [Sign::Plus, Sign::Minus] {
                let spec = rand_palindromic(&mut rng, size, sign);
                for family in [JacobiFamily::A, JacobiFamily::B] {
                    let holds = ok(
                        verify_palindromic_factorization(family, &spec, size + 2),
                        "verify",
                    )?;
                    ensure!(
                        holds,
                        "{family:?} {sign:?} size {size}: identity fails for c = {:?}",
                        spec.c
                    );
                    checks += 1;
                }
                let conj = ok(cyclic_conjugate(&spec), "conjugate")?;
                ensure!(
                    is_centrosymmetric(&conj).unwrap(),
                    "cyclic conjugate not centrosymmetric"
                );
            }
        }
    }
    Ok(format!(
        "{checks} identities at n + 3 points, conjugates centrosymmetric"
    ))
}

fn c12_characterizations_agree() -> Outcome {
    let mut rng = rng(12);
    let mut positives = 0;
    for i in 0..500 {
        let n = 2 + i % 6;
        let mut m = rand_centro(&mut rng, n);
        match i % 3 {
            0 => {}
            1 => {
                let (r, c) = (rng.random_range(0..n), rng.random_range(0..n));
                let v = m.get(r, c).add(&q(rng.random_range(1..=3)));
                m.set(r, c, v);
            }
            _ => m = rand_matrix(&mut rng, n, n, -2, 2),
        }
        let entrywise = is_centrosymmetric(&m).unwrap();
        let commutes = commutes_with_exchange(&m).unwrap();
        let (parity, s) = central_split(n);
        let blocks = split_blocks(&m, parity, s).unwrap().is_centrosymmetric();
        ensure!(
            entrywise == commutes && commutes == blocks,
            "instance {i}: {entrywise} {commutes} {blocks}"
        );
        positives += usize::from(entrywise);
    }
    Ok(format!("500 matrices, {positives} centrosymmetric"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("counterexample [[1,3],[2,2]]", c01_counterexample),
        ("4x4 Toeplitz at alpha = 3", c02_toeplitz_alpha_three),
        ("4x4 Toeplitz scaled identities", c03_example_one_scaled),
        ("6x6 Toeplitz scaled identities", c04_example_two_scaled),
        (
            "Riccati counterexample [[1,-1],[1,-1]]",
            c05_riccati_counterexample,
        ),
        ("centrosymmetric determinant split", c06_centro_factor_suite),
        ("Riccati triangularization and duality", c07_riccati_suite),
        ("zero-determinant certificates", c08_singular_suite),
        ("rank-deficient principal embedding", c09_embed_suite),
        ("dilation in both branches", c10_dilation_suite),
        ("palindromic Jacobi factorizations", c11_palindromic_suite),
        (
            "centrosymmetry characterizations",
            c12_characterizations_agree,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
