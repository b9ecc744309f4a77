//! Implementations behind the `su11` binary.
//!
//! Four subcommands: `state` (coefficient tables of squeezed/coherent
//! states), `cs-fig` (Calogero-Sutherland figure datasets), `verify`
//! (verification suites as JSON reports) and `realization` (concrete
//! bosonic amplitude tables).
//!
//! Output contract: CSV for curves, JSON for structured reports; every file
//! starts with a schema-version line; numbers are printed with 15
//! significant digits; identical invocations produce byte-identical files
//! (timestamps only behind `--stamp`).  Exit codes: 0 success, 1
//! verification failure, 2 usage error, 3 numeric/truncation failure.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{RepLabel, StateVector};
use crate::convergence;
use crate::cs;
use crate::error::{Result, Su11Error};
use crate::realizations::{self, Realization};
use crate::squeezed::{self, SqueezeParams};

/// Squeezed and coherent states of the su(1,1) discrete series.
#[derive(Debug, Parser)]
#[command(name = "su11", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a ladder eigenstate and write its coefficient table.
    State(StateArgs),
    /// Emit a Calogero-Sutherland density dataset (figures 1-6 or custom).
    CsFig(CsFigArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Express states concretely in a bosonic realization (JSON table).
    Realization(RealizationArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => re
            .trim()
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| format!("bad real part {re:?}: {e}")),
        [re, im] => {
            let re = re
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("bad real part {re:?}: {e}"))?;
            let im = im
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("bad imaginary part {im:?}: {e}"))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Bargmann index of the representation.
    #[arg(long, allow_hyphen_values = true)]
    pub k: f64,
    /// mu of (mu J- + nu J+)|b> = beta |b> (format RE or RE,IM).
    #[arg(long, value_parser = parse_complex, requires = "nu", requires = "beta")]
    pub mu: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub nu: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
    /// Squeezing modulus r >= 0 (transformed-frame input).
    #[arg(long, conflicts_with = "mu", allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Squeezing phase theta in radians.
    #[arg(long, conflicts_with = "theta_pi", allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Squeezing phase as a multiple of pi.
    #[arg(long, allow_hyphen_values = true)]
    pub theta_pi: Option<f64>,
    /// Transformed eigenvalue beta' (format RE or RE,IM).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with_all = ["mu", "cutoff"])]
    pub beta_prime: Option<Complex64>,
    /// Cut-off degree M: builds the Laguerre state at
    /// beta' = e^{i theta} sinh(2r)(M + k).
    #[arg(long = "M", conflicts_with = "mu")]
    pub cutoff: Option<usize>,
    /// Use the -alpha companion root of the displacement condition.
    #[arg(long)]
    pub companion: bool,
    /// Truncation override (default: decay-based suggestion or
    /// SU11_DEFAULT_DIM).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path (stdout when omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Record the wall-clock time in the metadata (off by default so that
    /// identical invocations are byte-identical).
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Args)]
pub struct CsFigArgs {
    /// Published figure preset 1-6.
    #[arg(long, conflicts_with_all = ["lambda", "coupling", "r", "theta", "theta_pi"])]
    pub figure: Option<usize>,
    /// Exponent lambda > 1/2 (exclusive with --g).
    #[arg(long, conflicts_with = "coupling", allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Coupling G >= 0 (exclusive with --lambda).
    #[arg(long = "g", allow_hyphen_values = true)]
    pub coupling: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, conflicts_with = "theta_pi", allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Phase as a multiple of pi.
    #[arg(long, allow_hyphen_values = true)]
    pub theta_pi: Option<f64>,
    /// Grid end (default: where the densities have decayed).
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value = "600")]
    pub points: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eigen,
    Uncertainty,
    Bch,
    /// Finite-difference checks of the coherent-state derivative identity.
    #[value(name = "appendix-b")]
    DerivativeIdentity,
    Realizations,
    Radius,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum)]
    pub suite: Suite,
    /// Bargmann index for the coherent-state eigenvalue check.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hp,
    Amp2,
    TwoMode,
    FourMode,
}

#[derive(Debug, Args)]
pub struct RealizationArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Bargmann index (Holstein-Primakoff).
    #[arg(long)]
    pub k: Option<f64>,
    /// Sector 0 or 1 (amplitude-squared).
    #[arg(long)]
    pub j: Option<u8>,
    /// Mode-number difference p (two-mode).
    #[arg(long)]
    pub p: Option<u32>,
    /// Sector sign: + for |n, n+p>, - for |n+p, n>.
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Two-mode lowest labels p1, p2 (four-mode).
    #[arg(long)]
    pub p1: Option<u32>,
    #[arg(long)]
    pub p2: Option<u32>,
    /// Clebsch-Gordan level n: the block P = p1 + p2 + 2n + 1 (four-mode).
    #[arg(long)]
    pub n: Option<u32>,
    /// Embed the abstract basis vector |k, basis>.
    #[arg(long)]
    pub basis: Option<usize>,
    /// Embed the coherent state D(alpha)|k,0> with alpha = r e^{i theta}.
    #[arg(long)]
    pub perelomov: bool,
    #[arg(long, requires = "perelomov")]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Truncation of the abstract expansion.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub stamp: bool,
}

/// 15 significant digits, locale-free.
fn fmt_f(v: f64) -> String {
    format!("{v:.14e}")
}

fn fmt_c(v: Complex64) -> String {
    format!("{}{:+.14e}i", fmt_f(v.re), v.im)
}

fn theta_from(theta: Option<f64>, theta_pi: Option<f64>) -> f64 {
    match (theta, theta_pi) {
        (Some(t), _) => t,
        (None, Some(m)) => m * std::f64::consts::PI,
        (None, None) => 0.0,
    }
}

fn stamp_line(stamp: bool) -> Option<u64> {
    stamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    })
}

fn env_default_dim() -> Option<usize> {
    std::env::var("SU11_DEFAULT_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// state

struct BuiltState {
    state: StateVector,
    route: &'static str,
    params: SqueezeParams,
    residual: f64,
}

fn build_state(args: &StateArgs) -> Result<BuiltState> {
    let k = args.k;
    let theta = theta_from(args.theta, args.theta_pi);
    if let (Some(mu), Some(nu), Some(beta)) = (args.mu, args.nu, args.beta) {
        let mut params = SqueezeParams::from_mu_nu_beta(mu, nu, beta)?;
        if args.companion {
            params = params.companion();
        }
        let state = match args.dim.or_else(env_default_dim) {
            Some(dim) => squeezed::squeezed_state(&params, RepLabel::new(k, dim)?)?,
            None => squeezed::ladder_eigenstate(&params, k)?,
        };
        let residual = squeezed::eigen_residual(&params, &state)?;
        return Ok(BuiltState {
            state,
            route: "eigen-recursion",
            params,
            residual,
        });
    }
    let r = args.r.unwrap_or(0.0);
    let base = SqueezeParams::from_r_theta(r, theta, Complex64::ZERO)?;
    if let Some(m) = args.cutoff {
        let mut params = base.with_beta_prime(base.cutoff_beta_prime(m, k));
        if args.companion {
            params = params.companion();
            params = params.with_beta_prime(params.cutoff_beta_prime(m, k));
        }
        let dim = args
            .dim
            .or_else(env_default_dim)
            .unwrap_or_else(|| params.suggested_dim(m, 1e-13));
        let state = squeezed::laguerre_state(m, &params, RepLabel::new(k, dim)?)?;
        let residual = squeezed::recursion_residual(&params, &state);
        return Ok(BuiltState {
            state,
            route: "laguerre-cutoff",
            params,
            residual,
        });
    }
    let beta_prime = args.beta_prime.ok_or_else(|| {
        Su11Error::InvalidArgument(
            "state needs either --mu/--nu/--beta, or --r with --beta-prime or --M".into(),
        )
    })?;
    let mut params = base.with_beta_prime(beta_prime);
    if args.companion {
        params = params.companion();
    }
    let dim = args
        .dim
        .or_else(env_default_dim)
        .unwrap_or_else(|| params.suggested_dim(0, 1e-13));
    let state = squeezed::solve_recursion(&params, RepLabel::new(k, dim)?)?;
    let residual = squeezed::recursion_residual(&params, &state);
    Ok(BuiltState {
        state,
        route: "transformed-recursion",
        params,
        residual,
    })
}

#[derive(Serialize)]
struct StateJson {
    schema: &'static str,
    route: &'static str,
    k: f64,
    dim: usize,
    r: f64,
    theta: f64,
    beta_prime: [f64; 2],
    xi: [f64; 2],
    residual: f64,
    tail_bound: f64,
    stamp: Option<u64>,
    /// Rows `[n, re, im, abs2]`.
    rows: Vec<(usize, f64, f64, f64)>,
}

pub fn cmd_state(args: &StateArgs) -> Result<String> {
    let built = build_state(args)?;
    let state = &built.state;
    let params = &built.params;
    let xi = params.xi();
    match args.format {
        Format::Json => {
            let doc = StateJson {
                schema: "su11.state.v1",
                route: built.route,
                k: state.rep().k(),
                dim: state.rep().dim(),
                r: params.r(),
                theta: params.theta(),
                beta_prime: [params.beta_prime().re, params.beta_prime().im],
                xi: [xi.re, xi.im],
                residual: built.residual,
                tail_bound: state.tail_bound(),
                stamp: stamp_line(args.stamp),
                rows: state
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(n, c)| (n, c.re, c.im, c.norm_sqr()))
                    .collect(),
            };
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str("# schema: su11.state.v1\n");
            writeln!(out, "# route = {}", built.route).unwrap();
            writeln!(out, "# k = {}", fmt_f(state.rep().k())).unwrap();
            writeln!(out, "# dim = {}", state.rep().dim()).unwrap();
            writeln!(out, "# r = {}", fmt_f(params.r())).unwrap();
            writeln!(out, "# theta = {}", fmt_f(params.theta())).unwrap();
            writeln!(out, "# beta_prime = {}", fmt_c(params.beta_prime())).unwrap();
            writeln!(out, "# xi = {}", fmt_c(xi)).unwrap();
            writeln!(out, "# residual = {}", fmt_f(built.residual)).unwrap();
            writeln!(out, "# tail_bound = {}", fmt_f(state.tail_bound())).unwrap();
            if let Some(s) = stamp_line(args.stamp) {
                writeln!(out, "# stamp = {s}").unwrap();
            }
            out.push_str("n,re,im,abs2\n");
            for (n, c) in state.coeffs().iter().enumerate() {
                writeln!(
                    out,
                    "{n},{},{},{}",
                    fmt_f(c.re),
                    fmt_f(c.im),
                    fmt_f(c.norm_sqr())
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// cs-fig

#[derive(Serialize)]
struct FigureJson {
    schema: &'static str,
    lambda: f64,
    coupling_squared: f64,
    r: f64,
    theta: f64,
    capital_y: f64,
    a: [f64; 2],
    energy: f64,
    x_classical: f64,
    norm_m0: f64,
    norm_m1: f64,
    peaks_m0: Vec<[f64; 2]>,
    peaks_m1: Vec<[f64; 2]>,
    stamp: Option<u64>,
    x: Vec<f64>,
    density_perelomov: Vec<f64>,
    density_m1: Vec<f64>,
}

pub fn cmd_cs_fig(args: &CsFigArgs) -> Result<String> {
    let (cs, r, theta) = if let Some(i) = args.figure {
        cs::figure_preset(i)?
    } else {
        let cs = match (args.lambda, args.coupling) {
            (Some(l), None) => cs::CsParams::from_lambda(l)?,
            (None, Some(g)) => cs::CsParams::from_coupling(g)?,
            _ => {
                return Err(Su11Error::InvalidArgument(
                    "give exactly one of --lambda or --g (or --figure)".into(),
                ))
            }
        };
        let r = args.r.ok_or_else(|| {
            Su11Error::InvalidArgument("custom figure needs --r".into())
        })?;
        (cs, r, theta_from(args.theta, args.theta_pi))
    };
    let grid = cs::GridSpec {
        x_max: args.x_max,
        points: args.points,
    };
    let table = cs::figure_data(&cs, r, theta, &grid)?;
    let meta = &table.meta;
    let peaks = |ps: &[cs::Peak]| -> Vec<[f64; 2]> {
        ps.iter().map(|p| [p.x, p.height]).collect()
    };
    match args.format {
        Format::Json => {
            let doc = FigureJson {
                schema: "su11.figure.v1",
                lambda: meta.lambda,
                coupling_squared: meta.coupling_squared,
                r: meta.r,
                theta: meta.theta,
                capital_y: meta.capital_y,
                a: [meta.a.re, meta.a.im],
                energy: meta.energy,
                x_classical: meta.x_classical,
                norm_m0: meta.norm_m0,
                norm_m1: meta.norm_m1,
                peaks_m0: peaks(&meta.peaks_m0),
                peaks_m1: peaks(&meta.peaks_m1),
                stamp: stamp_line(args.stamp),
                x: table.xs.clone(),
                density_perelomov: table.density_m0.clone(),
                density_m1: table.density_m1.clone(),
            };
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str("# schema: su11.figure.v1\n");
            writeln!(out, "# lambda = {}", fmt_f(meta.lambda)).unwrap();
            writeln!(out, "# coupling_squared = {}", fmt_f(meta.coupling_squared)).unwrap();
            writeln!(out, "# r = {}", fmt_f(meta.r)).unwrap();
            writeln!(out, "# theta = {}", fmt_f(meta.theta)).unwrap();
            writeln!(out, "# capital_y = {}", fmt_f(meta.capital_y)).unwrap();
            writeln!(out, "# a = {}", fmt_c(meta.a)).unwrap();
            writeln!(out, "# energy = {}", fmt_f(meta.energy)).unwrap();
            writeln!(out, "# x_classical = {}", fmt_f(meta.x_classical)).unwrap();
            writeln!(out, "# norm_m0 = {}", fmt_f(meta.norm_m0)).unwrap();
            writeln!(out, "# norm_m1 = {}", fmt_f(meta.norm_m1)).unwrap();
            let fmt_peaks = |ps: &[cs::Peak]| {
                ps.iter()
                    .map(|p| format!("{}:{}", fmt_f(p.x), fmt_f(p.height)))
                    .collect::<Vec<_>>()
                    .join(";")
            };
            writeln!(out, "# peaks_m0 = {}", fmt_peaks(&meta.peaks_m0)).unwrap();
            writeln!(out, "# peaks_m1 = {}", fmt_peaks(&meta.peaks_m1)).unwrap();
            if let Some(s) = stamp_line(args.stamp) {
                writeln!(out, "# stamp = {s}").unwrap();
            }
            out.push_str("x,density_perelomov,density_m1\n");
            for i in 0..table.xs.len() {
                writeln!(
                    out,
                    "{},{},{}",
                    fmt_f(table.xs[i]),
                    fmt_f(table.density_m0[i]),
                    fmt_f(table.density_m1[i])
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
pub struct Check {
    pub check: String,
    pub params: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    fn new(check: &str, params: String, residual: f64, threshold: f64) -> Self {
        Self {
            check: check.into(),
            params,
            residual,
            threshold,
            pass: residual.is_finite() && residual < threshold,
        }
    }
}

#[derive(Serialize)]
struct VerifyJson {
    schema: &'static str,
    suite: String,
    pass: bool,
    stamp: Option<u64>,
    checks: Vec<Check>,
}

fn deterministic_eigen_params(count: usize) -> Vec<(f64, SqueezeParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(0.25..5.0);
            let ratio = rng.gen_range(0.0..0.9);
            let nu_arg = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let beta_mag = rng.gen_range(0.0..1.0);
            let beta_arg = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let params = SqueezeParams::from_mu_nu_beta(
                Complex64::ONE,
                Complex64::from_polar(ratio, nu_arg),
                Complex64::from_polar(beta_mag, beta_arg),
            )
            .expect("|nu/mu| < 1 by construction");
            (k, params)
        })
        .collect()
}

fn suite_eigen(args: &VerifyArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let k = args.k.unwrap_or(0.75);
    let r = args.r.unwrap_or(0.4);
    let theta = args.theta.unwrap_or(-1.0);
    let alpha = Complex64::from_polar(r, theta);
    let rep = RepLabel::new(k, squeezed::perelomov_suggested_dim(alpha, k, 1e-13))?;
    let ec = squeezed::perelomov_eigen_check(alpha, rep)?;
    checks.push(Check::new(
        "perelomov-eigenvalue",
        format!(
            "k={k}, r={r}, theta={theta}, eigenvalue={}",
            fmt_c(ec.eigenvalue)
        ),
        (ec.rayleigh - ec.eigenvalue).norm(),
        1e-10,
    ));
    checks.push(Check::new(
        "perelomov-eigen-residual",
        format!("k={k}, r={r}, theta={theta}"),
        ec.residual,
        1e-10,
    ));
    for (i, (k, params)) in deterministic_eigen_params(6).into_iter().enumerate() {
        let state = squeezed::ladder_eigenstate(&params, k)?;
        let res = squeezed::eigen_residual(&params, &state)?;
        checks.push(Check::new(
            "ladder-eigen-residual",
            format!("draw={i}, k={k:.4}, |nu/mu|={:.4}", params.nu().norm()),
            res,
            1e-9,
        ));
    }
    let params = SqueezeParams::from_mu_nu_beta(
        Complex64::ONE,
        Complex64::from_polar(0.3, -0.7),
        Complex64::new(0.2, 0.4),
    )?;
    let rep = RepLabel::new(1.0, params.suggested_dim(0, 1e-13))?;
    let direct = squeezed::squeezed_state(&params, rep)?;
    let displaced = squeezed::displaced_state(&params, rep)?;
    checks.push(Check::new(
        "displaced-route-equivalence",
        "k=1, |nu/mu|=0.3".into(),
        squeezed::phase_aligned_distance(&direct, &displaced)?,
        1e-9,
    ));
    Ok(checks)
}

fn suite_uncertainty(_args: &VerifyArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let rep = RepLabel::new(1.3, 16)?;
    let rpt = squeezed::uncertainty_report(&StateVector::lowest_weight(rep))?;
    checks.push(Check::new(
        "lowest-weight-saturation",
        "k=1.3".into(),
        rpt.sr_gap.abs(),
        1e-12,
    ));
    let k = 1.5;
    let alpha = Complex64::from_polar(0.8, 0.9);
    let rep = RepLabel::new(k, squeezed::perelomov_suggested_dim(alpha, k, 1e-13))?;
    let rpt = squeezed::uncertainty_report(&squeezed::perelomov_state(alpha, rep)?)?;
    checks.push(Check::new(
        "perelomov-saturation",
        "k=1.5, r=0.8".into(),
        rpt.sr_gap.abs(),
        1e-8,
    ));
    for (i, (k, params)) in deterministic_eigen_params(4).into_iter().enumerate() {
        let state = squeezed::ladder_eigenstate(&params, k)?;
        let rpt = squeezed::uncertainty_report(&state)?;
        checks.push(Check::new(
            "eigenstate-saturation",
            format!("draw={i}, k={k:.4}"),
            rpt.sr_gap.abs(),
            1e-8,
        ));
    }
    // The inequality direction on arbitrary states.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst = f64::INFINITY;
    for _ in 0..40 {
        let k = rng.gen_range(0.3..5.0);
        let rep = RepLabel::new(k, 14)?;
        let coeffs: Vec<Complex64> = (0..14)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let state = StateVector::new(rep, coeffs, 0.0)?.normalized();
        worst = worst.min(squeezed::uncertainty_report(&state)?.sr_gap);
    }
    checks.push(Check::new(
        "sr-gap-nonnegative",
        "40 pseudo-random states, worst gap".into(),
        (-worst).max(0.0),
        1e-9,
    ));
    Ok(checks)
}

fn suite_bch(_args: &VerifyArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let cases = [
        (0.5, Complex64::new(0.4, 0.0), 120usize, 1e-12),
        (0.5, Complex64::new(0.8, 0.0), 200, 1e-10),
        (5.0, Complex64::from_polar(1.2, 0.3), 300, 1e-9),
    ];
    for (k, alpha, dim, threshold) in cases {
        let rep = RepLabel::new(k, dim)?;
        let err = convergence::bch_identity_check(alpha, rep)?;
        checks.push(Check::new(
            "disentangling-vs-expm",
            format!("k={k}, |alpha|={:.3}, dim={dim}", alpha.norm()),
            err,
            threshold,
        ));
    }
    Ok(checks)
}

fn suite_derivative_identity(_args: &VerifyArgs) -> Result<Vec<Check>> {
    let rep = RepLabel::new(0.5, 96)?;
    let check = convergence::derivative_identity_check(0.3, 0.0, rep, 1e-5)?;
    let mut checks = vec![
        Check::new(
            "derivative-vs-ladder-form",
            "k=0.5, r=0.3, theta=0, h=1e-5".into(),
            check.residual_ladder_form,
            1e-7,
        ),
        Check::new(
            "derivative-vs-tanh-form",
            "k=0.5, r=0.3, theta=0, h=1e-5".into(),
            check.residual_tanh_form,
            1e-7,
        ),
        Check::new(
            "closed-forms-agree",
            "the rearranged eigenvalue identity".into(),
            check.forms_distance,
            1e-12,
        ),
    ];
    let coarse = convergence::derivative_identity_check(0.3, 0.0, rep, 1e-4)?;
    let fine = convergence::derivative_identity_check(0.3, 0.0, rep, 5e-5)?;
    let ratio = coarse.residual_ladder_form / fine.residual_ladder_form;
    checks.push(Check::new(
        "second-order-step-scaling",
        format!("h = 1e-4 vs 5e-5, ratio = {ratio:.3}"),
        (ratio - 4.0).abs(),
        1.0,
    ));
    Ok(checks)
}

fn suite_realizations(_args: &VerifyArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let reals = [
        ("holstein-primakoff", Realization::HolsteinPrimakoff { k: 0.5 }),
        ("holstein-primakoff", Realization::HolsteinPrimakoff { k: 2.3 }),
        ("amplitude-squared", Realization::AmplitudeSquared { j: 0 }),
        ("amplitude-squared", Realization::AmplitudeSquared { j: 1 }),
        ("two-mode", Realization::TwoMode { p: 0, minus: false }),
        ("two-mode", Realization::TwoMode { p: 3, minus: true }),
        ("four-mode", Realization::FourMode { p1: 0, p2: 0, level: 0 }),
        ("four-mode", Realization::FourMode { p1: 1, p2: 2, level: 1 }),
    ];
    for (name, real) in reals {
        let mut worst = 0.0f64;
        for n in 0..=30 {
            worst = worst.max(realizations::matrix_element_check(&real, n)?);
        }
        checks.push(Check::new(
            "matrix-elements",
            format!("{name}, k_eff={}, n<=30", real.effective_k()),
            worst,
            1e-13,
        ));
    }
    let mut worst_norm = 0.0f64;
    let mut worst_annihilation = 0.0f64;
    for p1 in 0..=2u32 {
        for p2 in 0..=2u32 {
            for n in 0..=2u32 {
                if p1 + p2 + n > 4 {
                    continue;
                }
                let v = realizations::cg_vacuum(p1, p2, n)?;
                worst_norm = worst_norm.max((v.norm() - 1.0).abs());
                worst_annihilation = worst_annihilation.max(v.apply_lowering().norm());
            }
        }
    }
    checks.push(Check::new(
        "cg-vacuum-unit-norm",
        "(p1,p2,n) in {0,1,2}^3, p1+p2+n <= 4".into(),
        worst_norm,
        1e-12,
    ));
    checks.push(Check::new(
        "cg-vacuum-annihilation",
        "(p1,p2,n) in {0,1,2}^3, p1+p2+n <= 4".into(),
        worst_annihilation,
        1e-12,
    ));
    Ok(checks)
}

fn suite_radius(_args: &VerifyArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in [0.5, 1.0, 4.5] {
        for n in [0usize, 1, 5] {
            let report = convergence::subseries_coefficients(k, n, 500)?;
            checks.push(Check::new(
                "displacement-subseries-radius",
                format!("k={k}, n={n}, m_max=500, rho={:.4}", report.radius_estimate),
                (report.radius_estimate - 2.0).abs(),
                0.02,
            ));
        }
    }
    for power in [3usize, 4] {
        let report = convergence::higher_power_subseries(power, 200)?;
        checks.push(Check::new(
            "higher-power-zero-radius",
            format!("power={power}, m_max=200"),
            report.radius_estimate,
            0.05,
        ));
    }
    let control = convergence::higher_power_subseries(2, 200)?;
    checks.push(Check::new(
        "quadratic-control-finite-radius",
        format!("power=2, rho={:.6}", control.radius_estimate),
        (control.radius_estimate - 1.0).abs(),
        1e-9,
    ));
    Ok(checks)
}

pub fn run_suite(args: &VerifyArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Eigen,
            Suite::Uncertainty,
            Suite::Bch,
            Suite::DerivativeIdentity,
            Suite::Realizations,
            Suite::Radius,
        ],
        s => vec![s],
    };
    for s in suites {
        let mut batch = match s {
            Suite::Eigen => suite_eigen(args)?,
            Suite::Uncertainty => suite_uncertainty(args)?,
            Suite::Bch => suite_bch(args)?,
            Suite::DerivativeIdentity => suite_derivative_identity(args)?,
            Suite::Realizations => suite_realizations(args)?,
            Suite::Radius => suite_radius(args)?,
            Suite::All => unreachable!(),
        };
        checks.append(&mut batch);
    }
    Ok(checks)
}

/// Returns the rendered report and whether every check passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let checks = run_suite(args)?;
    let pass = checks.iter().all(|c| c.pass);
    let suite_name = match args.suite {
        Suite::Eigen => "eigen",
        Suite::Uncertainty => "uncertainty",
        Suite::Bch => "bch",
        Suite::DerivativeIdentity => "appendix-b",
        Suite::Realizations => "realizations",
        Suite::Radius => "radius",
        Suite::All => "all",
    };
    let doc = VerifyJson {
        schema: "su11.verify.v1",
        suite: suite_name.to_string(),
        pass,
        stamp: stamp_line(args.stamp),
        checks,
    };
    Ok((
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        pass,
    ))
}

// ---------------------------------------------------------------------------
// realization

#[derive(Serialize)]
struct RealizationJson {
    schema: &'static str,
    kind: String,
    effective_k: f64,
    source: String,
    stamp: Option<u64>,
    rows: Vec<RealizationRow>,
}

#[derive(Serialize)]
struct RealizationRow {
    label: Vec<u32>,
    amp: [f64; 2],
}

pub fn cmd_realization(args: &RealizationArgs) -> Result<String> {
    let real = match args.kind {
        Kind::Hp => Realization::HolsteinPrimakoff {
            k: args.k.ok_or_else(|| {
                Su11Error::InvalidArgument("--kind hp needs --k".into())
            })?,
        },
        Kind::Amp2 => Realization::AmplitudeSquared {
            j: match args.j {
                Some(j @ (0 | 1)) => j,
                _ => {
                    return Err(Su11Error::InvalidArgument(
                        "--kind amp2 needs --j 0 or --j 1".into(),
                    ))
                }
            },
        },
        Kind::TwoMode => {
            let p = args.p.ok_or_else(|| {
                Su11Error::InvalidArgument("--kind two-mode needs --p".into())
            })?;
            let minus = match args.sign.as_deref() {
                Some("-") | Some("minus") => true,
                Some("+") | Some("plus") | None => false,
                Some(other) => {
                    return Err(Su11Error::InvalidArgument(format!(
                        "--sign must be + or -, got {other:?}"
                    )))
                }
            };
            Realization::TwoMode { p, minus }
        }
        Kind::FourMode => Realization::FourMode {
            p1: args.p1.unwrap_or(0),
            p2: args.p2.unwrap_or(0),
            level: args.n.unwrap_or(0),
        },
    };
    let k = real.effective_k();
    let dim = args.dim.or_else(env_default_dim).unwrap_or(48);
    let (abstract_state, source) = if args.perelomov {
        let r = args.r.ok_or_else(|| {
            Su11Error::InvalidArgument("--perelomov needs --r".into())
        })?;
        let alpha = Complex64::from_polar(r, args.theta.unwrap_or(0.0));
        let dim = args
            .dim
            .or_else(env_default_dim)
            .unwrap_or_else(|| squeezed::perelomov_suggested_dim(alpha, k, 1e-13));
        (
            squeezed::perelomov_state(alpha, RepLabel::new(k, dim)?)?,
            format!("perelomov r={r} theta={}", args.theta.unwrap_or(0.0)),
        )
    } else {
        let n = args.basis.unwrap_or(0);
        let rep = RepLabel::new(k, dim.max(n + 2))?;
        (
            StateVector::basis_vector(rep, n),
            format!("basis n={n}"),
        )
    };
    let table = realizations::embed_state(&abstract_state, &real)?;
    let kind_name = match args.kind {
        Kind::Hp => "hp",
        Kind::Amp2 => "amp2",
        Kind::TwoMode => "two-mode",
        Kind::FourMode => "four-mode",
    };
    let doc = RealizationJson {
        schema: "su11.realization.v1",
        kind: kind_name.to_string(),
        effective_k: table.effective_k,
        source,
        stamp: stamp_line(args.stamp),
        rows: table
            .rows
            .into_iter()
            .map(|(label, amp)| RealizationRow {
                label,
                amp: [amp.re, amp.im],
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
}

// ---------------------------------------------------------------------------
// dispatch

#[derive(Serialize)]
struct ErrorJson {
    schema: &'static str,
    kind: &'static str,
    error: String,
}

fn error_exit_code(err: &Su11Error) -> i32 {
    match err {
        Su11Error::InvalidArgument(_)
        | Su11Error::InvalidRep(_)
        | Su11Error::InvalidCsParams(_)
        | Su11Error::DegenerateMu
        | Su11Error::NuRatioTooLarge { .. }
        | Su11Error::CutoffTooLarge { .. }
        | Su11Error::AlphaOutOfRange { .. }
        | Su11Error::LengthMismatch { .. }
        | Su11Error::RepMismatch { .. } => 2,
        _ => 3,
    }
}

fn report_error(err: &Su11Error) -> i32 {
    let code = error_exit_code(err);
    let doc = ErrorJson {
        schema: "su11.error.v1",
        kind: if code == 2 { "usage" } else { "numeric" },
        error: err.to_string(),
    };
    eprintln!("{}", serde_json::to_string(&doc).expect("serializable"));
    code
}

/// Run a parsed command line; returns the process exit code.
pub fn dispatch(cli: &Cli) -> i32 {
    let outcome: Result<i32> = match &cli.command {
        Command::State(args) => {
            cmd_state(args).and_then(|s| emit(&args.output, &s).map(|()| 0))
        }
        Command::CsFig(args) => {
            cmd_cs_fig(args).and_then(|s| emit(&args.output, &s).map(|()| 0))
        }
        Command::Verify(args) => cmd_verify(args).and_then(|(s, pass)| {
            emit(&args.output, &s).map(|()| if pass { 0 } else { 1 })
        }),
        Command::Realization(args) => {
            cmd_realization(args).and_then(|s| emit(&args.output, &s).map(|()| 0))
        }
    };
    match outcome {
        Ok(code) => code,
        Err(err) => report_error(&err),
    }
}

/// Parse `std::env::args` and run; clap itself exits with code 2 on usage
/// errors.
pub fn run() -> i32 {
    dispatch(&Cli::parse())
}
