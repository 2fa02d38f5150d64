//! Command-line front end. Every command prints a JSON report (schema
//! `centrosim/1`) and a one-line summary.
//!
//! Exit codes: 0 certified, 2 inconclusive, 1 failed check or error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::centro::{
    central_split, commutes_with_exchange, is_centrosymmetric, split_blocks, Parity,
};
use crate::factor::{centro_det_factors, riccati_block_triangularize, riccati_det_factor};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::{Approx, Rational, Scalar, DEFAULT_TOLERANCE};
use crate::similarity::{
    build_centro_transform, dilate_to_centrosimilar, embed_centro_principal, verify_report,
};
use crate::solver::{
    find_intertwiner, singular_certificate, Orientation, SearchOptions, SingularSystem,
};
use crate::structured::{
    alpha_scan, cyclic_conjugate, jacobi, linear_toeplitz, palindromic_factor_matrices,
    toeplitz_scaled_intertwiner, verify_palindromic_factorization, verify_scaled_intertwiner,
    write_scan_csv, JacobiFamily, PalindromicSpec, Sign,
};

pub const SCHEMA: &str = "centrosim/1";

#[derive(Debug, Parser)]
#[command(
    name = "centrosim",
    version,
    about = "Exact similarity to centrosymmetric form"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Scalar field: exact rationals or tolerance-compared floats.
    #[arg(long, value_enum, default_value = "exact", global = true)]
    pub mode: Mode,
    /// Zero tolerance in approximate mode.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Size of the leading diagonal block (default floor(n/2)).
    #[arg(long)]
    pub split: Option<usize>,
    /// Odd split with a center row and column; s = (n-1)/2.
    #[arg(long)]
    pub odd: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    pub d_max: usize,
    #[arg(long, default_value_t = 5)]
    pub grid_numerator: i64,
    #[arg(long, default_value_t = 3)]
    pub grid_denominator: i64,
    #[arg(long, default_value_t = 32)]
    pub max_solutions: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            d_max: self.d_max,
            grid_numerator: self.grid_numerator,
            grid_denominator: self.grid_denominator,
            max_solutions: self.max_solutions,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrientationArg {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    A,
    B,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a matrix for centrosymmetry three ways.
    Check {
        matrix: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Search for intertwiners X with XA = DX and C = XBX.
    Solve {
        matrix: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Conjugate to a centrosymmetric matrix using a given or found invertible X.
    Transform {
        matrix: PathBuf,
        #[arg(long)]
        x: Option<PathBuf>,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Conjugate so that the leading 2r x 2r block is centrosymmetric.
    Embed {
        matrix: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        split: Option<usize>,
    },
    /// Dilate to a matrix similar to a centrosymmetric one.
    Dilate {
        matrix: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        split: Option<usize>,
    },
    /// Determinant factorization of a centrosymmetric matrix.
    FactorCentro { matrix: PathBuf },
    /// Block triangularization and determinant factorization from a Riccati witness.
    FactorRiccati {
        matrix: PathBuf,
        #[arg(long)]
        w: PathBuf,
        #[arg(long, value_enum, default_value = "lower")]
        orientation: OrientationArg,
        #[arg(long)]
        split: Option<usize>,
    },
    /// Check one of the four equation pairs that force det(M) = 0.
    CertifySingular {
        matrix: PathBuf,
        #[arg(long)]
        w: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        system: u8,
        #[arg(long)]
        split: Option<usize>,
    },
    /// Generate a structured matrix as JSON.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Check the palindromic Jacobi determinant factorization.
    VerifyCorollary {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Comma-separated c_0,..,c_n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<String>,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        /// Number of sample points t = 0, 1, ...; defaults to n + 3.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Approximate intertwiner search over a range of Toeplitz parameters; writes CSV.
    AlphaScan {
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Entry (i, j) = alpha + i - j.
    Toeplitz {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        size: usize,
    },
    /// Tridiagonal with corner entries +-c_n.
    JacobiA(JacobiArgs),
    /// Tridiagonal with corner diagonal entries t +- c_0.
    JacobiB(JacobiArgs),
}

#[derive(Debug, Args)]
pub struct JacobiArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<String>,
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Certified,
    Inconclusive,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Inconclusive => 2,
            Status::Failed => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Inconclusive => "inconclusive",
            Status::Failed => "failed",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Certified
        } else {
            Status::Failed
        }
    }
}

/// Finished command: JSON body, summary line and status.
pub struct Outcome {
    pub body: Value,
    pub summary: String,
    pub status: Status,
}

enum Output {
    Report(Outcome),
    Csv(Vec<u8>, String),
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Reports go to `out`, summaries and errors to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match cli.config.mode {
        Mode::Exact => {
            if cli.config.tol.is_some() {
                let _ = writeln!(err, "error: --tol only applies to --mode approx");
                return 1;
            }
            execute::<Rational>(&cli)
        }
        Mode::Approx => match cli.config.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                let _ = writeln!(err, "error: --tol must be positive");
                return 1;
            }
            _ => execute::<Approx>(&cli),
        },
    };
    match result.and_then(|o| emit(&cli, o, out, err)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

fn emit(
    cli: &Cli,
    output: Output,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let (bytes, summary, code) = match output {
        Output::Report(o) => {
            let mut body = o.body;
            let obj = body.as_object_mut().expect("report is an object");
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("status".into(), json!(o.status.label()));
            obj.insert("summary".into(), json!(o.summary));
            let mut text = serde_json::to_string_pretty(&body)?;
            text.push('\n');
            (text.into_bytes(), o.summary, o.status.exit_code())
        }
        Output::Csv(bytes, summary) => (bytes, summary, 0),
    };
    match &cli.config.output {
        Some(path) => {
            fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => out.write_all(&bytes)?,
    }
    writeln!(err, "{summary}")?;
    Ok(code)
}

/// Scalar types the CLI can run in.
trait CliScalar: Scalar {
    fn configure(self, tol: Option<f64>) -> Self;
}

impl CliScalar for Rational {
    fn configure(self, _tol: Option<f64>) -> Self {
        self
    }
}

impl CliScalar for Approx {
    fn configure(self, tol: Option<f64>) -> Self {
        Approx::with_tolerance(self.value(), tol.unwrap_or(DEFAULT_TOLERANCE))
    }
}

struct Ctx<'a> {
    tol: Option<f64>,
    mode: &'static str,
    command: &'a str,
}

impl Ctx<'_> {
    fn read<F: CliScalar>(&self, path: &Path) -> anyhow::Result<Matrix<F>> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let m = Matrix::<F>::parse_json_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        Ok(m.map(|v| v.clone().configure(self.tol)))
    }

    fn scalar<F: CliScalar>(&self, text: &str) -> anyhow::Result<F> {
        let value = match serde_json::from_str::<Value>(text.trim()) {
            Ok(v @ Value::Number(_)) => v,
            _ => Value::String(text.trim().to_string()),
        };
        Ok(F::from_json(&value)
            .with_context(|| format!("parsing scalar {text:?}"))?
            .configure(self.tol))
    }

    fn body(&self, input: Value) -> Value {
        json!({ "command": self.command, "mode": self.mode, "input": input })
    }
}

fn resolve_split(n: usize, split: &SplitArgs) -> (Parity, usize) {
    if split.odd {
        (Parity::Odd, split.split.unwrap_or(n.saturating_sub(1) / 2))
    } else {
        (Parity::Even, split.split.unwrap_or(n / 2))
    }
}

fn even_split(n: usize, split: Option<usize>) -> usize {
    split.unwrap_or(n / 2)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Solve { .. } => "solve",
        Command::Transform { .. } => "transform",
        Command::Embed { .. } => "embed",
        Command::Dilate { .. } => "dilate",
        Command::FactorCentro { .. } => "factor-centro",
        Command::FactorRiccati { .. } => "factor-riccati",
        Command::CertifySingular { .. } => "certify-singular",
        Command::Gen { .. } => "gen",
        Command::VerifyCorollary { .. } => "verify-corollary",
        Command::AlphaScan { .. } => "alpha-scan",
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn sign_of(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn family_of(f: FamilyArg) -> JacobiFamily {
    match f {
        FamilyArg::A => JacobiFamily::A,
        FamilyArg::B => JacobiFamily::B,
    }
}

fn parity_label(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn execute<F: CliScalar>(cli: &Cli) -> anyhow::Result<Output> {
    let ctx = Ctx {
        tol: cli.config.tol,
        mode: F::MODE,
        command: command_name(&cli.command),
    };
    let outcome = match &cli.command {
        Command::Check { matrix, split } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let n = m.require_square("check")?;
            let entrywise = is_centrosymmetric(&m)?;
            let commutes = commutes_with_exchange(&m)?;
            let (parity, s) = if split.split.is_some() || split.odd {
                resolve_split(n, split)
            } else {
                central_split(n)
            };
            let blocks = match split_blocks(&m, parity, s) {
                Ok(bp) => Some(bp.is_centrosymmetric()),
                Err(_) if n == 1 => None,
                Err(e) => return Err(e.into()),
            };
            let mut body = ctx.body(json!({ "matrix": m, "parity": parity_label(parity), "s": s }));
            body["centrosymmetric"] = json!(entrywise);
            body["commutes_with_exchange"] = json!(commutes);
            body["block_conditions"] = json!(blocks);
            Outcome {
                body,
                summary: format!("centrosymmetric: {entrywise}"),
                status: Status::Certified,
            }
        }
        Command::Solve {
            matrix,
            split,
            search,
        } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let (parity, s) = resolve_split(m.rows(), split);
            let found = find_intertwiner(&m, parity, s, &search.options())?;
            let notes: Vec<String> = found.diagnostics.iter().map(ToString::to_string).collect();
            let mut body = ctx.body(json!({
                "matrix": m, "parity": parity_label(parity), "s": s, "options": search.options(),
            }));
            body["search"] = to_value(&found);
            body["diagnostic_messages"] = json!(notes);
            let (summary, status) = if found.solutions.is_empty() {
                (
                    format!("no intertwiner found ({})", notes.join("; ")),
                    Status::Inconclusive,
                )
            } else {
                let inv = found.solutions.iter().filter(|s| s.invertible).count();
                (
                    format!(
                        "{} exact solution(s), {inv} invertible",
                        found.solutions.len()
                    ),
                    Status::Certified,
                )
            };
            Outcome {
                body,
                summary,
                status,
            }
        }
        Command::Transform {
            matrix,
            x,
            split,
            search,
        } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let (parity, s) = resolve_split(m.rows(), split);
            let mut body = ctx.body(json!({ "matrix": m, "parity": parity_label(parity), "s": s }));
            let xm = match x {
                Some(path) => Some(ctx.read::<F>(path)?),
                None => {
                    let found = find_intertwiner(&m, parity, s, &search.options())?;
                    body["search_diagnostics"] = json!(found
                        .diagnostics
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>());
                    found.first_invertible().map(|sol| sol.x.clone())
                }
            };
            match xm {
                None => Outcome {
                    body,
                    summary: "method inconclusive: no invertible intertwiner found".into(),
                    status: Status::Inconclusive,
                },
                Some(xm) => {
                    body["input"]["x"] = to_value(&xm);
                    let report = build_centro_transform(&m, parity, s, &xm)?;
                    transform_outcome(body, &m, &report, "centrosymmetric conjugate")?
                }
            }
        }
        Command::Embed { matrix, x, split } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let xm: Matrix<F> = ctx.read(x)?;
            let s = even_split(m.rows(), *split);
            let body = ctx.body(json!({ "matrix": m, "x": xm, "s": s }));
            let report = embed_centro_principal(&m, s, &xm)?;
            transform_outcome(body, &m, &report, "centrosymmetric principal block")?
        }
        Command::Dilate { matrix, x, split } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let xm: Matrix<F> = ctx.read(x)?;
            let s = even_split(m.rows(), *split);
            let mut body = ctx.body(json!({ "matrix": m, "x": xm, "s": s }));
            let dil = dilate_to_centrosimilar(&m, s, &xm)?;
            body["mhat"] = to_value(&dil.mhat);
            body["xhat"] = to_value(&dil.xhat);
            body["centro_form"] = to_value(&dil.centro_form);
            let leading = dil.mhat.leading(m.rows()) == m;
            body["contains_input"] = json!(leading);
            let mut o = transform_outcome(body, &dil.mhat, &dil.report, "dilation")?;
            if !leading {
                o.status = Status::Failed;
            }
            o
        }
        Command::FactorCentro { matrix } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let mut body = ctx.body(json!({ "matrix": m }));
            let r = centro_det_factors(&m)?;
            body["factorization"] = to_value(&r);
            Outcome {
                body,
                summary: format!(
                    "det = {} = product of factor determinants: {}",
                    r.direct_det, r.matches
                ),
                status: Status::from_bool(r.matches),
            }
        }
        Command::FactorRiccati {
            matrix,
            w,
            orientation,
            split,
        } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let wm: Matrix<F> = ctx.read(w)?;
            let s = even_split(m.rows(), *split);
            let orientation = match orientation {
                OrientationArg::Lower => Orientation::Lower,
                OrientationArg::Upper => Orientation::Upper,
            };
            let mut body =
                ctx.body(json!({ "matrix": m, "w": wm, "s": s, "orientation": orientation }));
            let tri = riccati_block_triangularize(&m, s, &wm, orientation)?;
            let r = riccati_det_factor(&m, s, &wm, orientation)?;
            body["triangularized"] = to_value(&tri);
            body["factorization"] = to_value(&r);
            Outcome {
                body,
                summary: format!(
                    "det = {} = product of factor determinants: {}",
                    r.direct_det, r.matches
                ),
                status: Status::from_bool(r.matches),
            }
        }
        Command::CertifySingular {
            matrix,
            w,
            system,
            split,
        } => {
            let m: Matrix<F> = ctx.read(matrix)?;
            let wm: Matrix<F> = ctx.read(w)?;
            let s = even_split(m.rows(), *split);
            let system = SingularSystem::from_index(*system)?;
            let mut body =
                ctx.body(json!({ "matrix": m, "w": wm, "s": s, "system": system as u8 }));
            let holds = singular_certificate(&m, s, &wm, system)?;
            let det = linalg::determinant(&m)?;
            body["certificate_holds"] = json!(holds);
            body["det"] = to_value(&det);
            let (summary, status) = match (holds, det.is_zero()) {
                (true, true) => (
                    "certificate holds; det(M) = 0".to_string(),
                    Status::Certified,
                ),
                (true, false) => (
                    format!("certificate holds but det(M) = {det}"),
                    Status::Failed,
                ),
                (false, _) => (
                    "equations do not hold; no conclusion".to_string(),
                    Status::Inconclusive,
                ),
            };
            Outcome {
                body,
                summary,
                status,
            }
        }
        Command::Gen { family } => gen::<F>(&ctx, family)?,
        Command::VerifyCorollary {
            family,
            c,
            sign,
            samples,
        } => {
            let spec = PalindromicSpec {
                t: F::zero(),
                c: c.iter()
                    .map(|v| ctx.scalar::<F>(v))
                    .collect::<anyhow::Result<_>>()?,
                sign: sign_of(*sign),
            };
            let family = family_of(*family);
            let samples = samples.unwrap_or(spec.size() + 2);
            let holds = verify_palindromic_factorization(family, &spec, samples)?;
            let mut body = ctx.body(
                json!({ "family": family, "c": spec.c, "sign": spec.sign, "samples": samples }),
            );
            body["identity_holds"] = json!(holds);
            let mut ok = holds;
            if family == JacobiFamily::A {
                let conj = cyclic_conjugate(&spec)?;
                let centro = is_centrosymmetric(&conj)?;
                body["cyclic_conjugate"] = to_value(&conj);
                body["cyclic_conjugate_centrosymmetric"] = json!(centro);
                ok &= centro;
            }
            Outcome {
                body,
                summary: format!("determinant identity at {samples} points: {holds}"),
                status: Status::from_bool(ok),
            }
        }
        Command::AlphaScan {
            size,
            from,
            to,
            steps,
            search,
        } => {
            if *steps == 0 {
                bail!("--steps must be at least 1");
            }
            let alphas: Vec<f64> = (0..*steps)
                .map(|k| {
                    if *steps == 1 {
                        *from
                    } else {
                        from + (to - from) * k as f64 / (*steps - 1) as f64
                    }
                })
                .collect();
            let tol = cli.config.tol.unwrap_or(DEFAULT_TOLERANCE);
            let rows = alpha_scan(&alphas, *size, tol, &search.options())?;
            let mut buf = Vec::new();
            write_scan_csv(&rows, &mut buf)?;
            let found = rows.iter().filter(|r| r.intertwiner_found == 1).count();
            return Ok(Output::Csv(
                buf,
                format!(
                    "scanned {} alpha values, intertwiner found at {found}",
                    rows.len()
                ),
            ));
        }
    };
    Ok(Output::Report(outcome))
}

fn transform_outcome<F: Scalar>(
    mut body: Value,
    m: &Matrix<F>,
    report: &crate::similarity::TransformReport<F>,
    what: &str,
) -> anyhow::Result<Outcome> {
    let check = verify_report(m, report)?;
    body["report"] = to_value(report);
    body["verification"] = to_value(&check);
    let ok = check.passed();
    Ok(Outcome {
        body,
        summary: format!(
            "{what}: {}",
            if ok {
                "certified"
            } else {
                "verification failed"
            }
        ),
        status: Status::from_bool(ok),
    })
}

fn gen<F: CliScalar>(ctx: &Ctx<'_>, family: &GenFamily) -> anyhow::Result<Outcome> {
    Ok(match family {
        GenFamily::Toeplitz { alpha, size } => {
            let a: F = ctx.scalar(alpha)?;
            let m = linear_toeplitz(&a, *size)?;
            let mut body = ctx.body(json!({ "family": "toeplitz", "alpha": a, "size": size }));
            body["rows"] = json!(m.to_rows());
            if matches!(size, 4 | 6) {
                let (xt, delta) = toeplitz_scaled_intertwiner(*size, &a)?;
                let check = verify_scaled_intertwiner(&m, &xt, &delta)?;
                body["scaled_intertwiner"] =
                    json!({ "xtilde": xt, "delta": delta, "holds": check.holds() });
            }
            Outcome {
                body,
                summary: format!("{size}x{size} linear Toeplitz matrix"),
                status: Status::Certified,
            }
        }
        GenFamily::JacobiA(args) | GenFamily::JacobiB(args) => {
            let fam = if matches!(family, GenFamily::JacobiA(_)) {
                JacobiFamily::A
            } else {
                JacobiFamily::B
            };
            let spec = PalindromicSpec {
                t: ctx.scalar::<F>(&args.t)?,
                c: args
                    .c
                    .iter()
                    .map(|v| ctx.scalar::<F>(v))
                    .collect::<anyhow::Result<_>>()?,
                sign: sign_of(args.sign),
            };
            let m = jacobi(fam, &spec)?;
            let (f1, f2) = palindromic_factor_matrices(fam, &spec)?;
            let mut body = ctx.body(json!({ "family": fam, "spec": spec }));
            body["rows"] = json!(m.to_rows());
            body["factor_matrices"] = json!([f1, f2]);
            Outcome {
                body,
                summary: format!("{0}x{0} palindromic Jacobi matrix", m.rows()),
                status: Status::Certified,
            }
        }
    })
}
