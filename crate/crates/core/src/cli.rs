//! Command-line surface: `integral`, `potential-grid`, `interact`,
//! `convergence` and `oracle`.
//!
//! Exit status: 0 on success, 1 on a computation error, 2 on a usage error,
//! 3 when a result carries convergence warnings and `--allow-warn` is not set.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::addition::{expand_product_density_with, AlphaTag, Channels};
use crate::basis::{Density, StoParams};
use crate::integrals::{lambda_to_normalized, oracle_lambda, IntegralEngine, IntegralValue, ThreeCenterPath};
use crate::interaction::{interaction_energy, EnergyBreakdown, Scene};
use crate::io::{csv_table, load_molecule_with, parse_vec3, Envelope, KernelSpec, RunConfig};
use crate::molecule::{potential_grid, GridSpec};
use crate::oracle::{integrate_6d_mc, OracleResult, TwoElectronIntegrand};
use crate::{Error, Result, Vec3};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_WARN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stoint", version, about = "Slater-orbital kernel integrals, molecular potentials and interaction energies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Interaction kernel as mu,nu,sigma,xi (Coulomb is 0,0,0,0).
    #[arg(long, default_value = "0,0,0,0", allow_hyphen_values = true)]
    pub kernel: String,
    /// Truncation N of the one-range expansions (1..=30).
    #[arg(long, default_value_t = 12)]
    pub truncation: usize,
    /// Truncation of the two-particle kernel table.
    #[arg(long, default_value_t = 24)]
    pub n_pair: usize,
    /// Radial scale of the kernel table (default xi + 1).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Expansion family tag, one of 1, 0, -1, -2 (recorded with the results).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub alpha: i8,
    /// Relative change between successive partial sums accepted as converged.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Refinement tolerance of the quadrature oracles.
    #[arg(long, default_value_t = 1e-10)]
    pub oracle_tol: f64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1 << 20)]
    pub mc_samples: usize,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Common origin x,y,z of the two-particle kernel expansion.
    #[arg(long, allow_hyphen_values = true)]
    pub origin: Option<String>,
    /// Three-center evaluation path.
    #[arg(long, value_enum, default_value_t = PathArg::Eq18)]
    pub path: PathArg,
    /// Exit with status 0 even if results carry convergence warnings.
    #[arg(long)]
    pub allow_warn: bool,
    /// Write the main output here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker thread count.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Eq18,
    Eq19,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    /// 1s(1)·1s(1) with the kernel, all on one center.
    OneCenterDemo,
    /// 1s(1)·1s(1) on one center, kernel two bohr away.
    TwoCenterDemo,
    /// 1s(1) on two corners of an equilateral triangle of side 2, kernel on the third.
    ThreeCenterDemo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    /// Fuzzy-cell 3D quadrature of one kernel integral.
    Grid3d,
    /// 6D Monte Carlo electron-electron term of two molecules.
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one kernel integral, or a named demo case.
    Integral {
        #[arg(long, value_enum)]
        case: Option<Case>,
        /// First orbital as n,l,m,zeta,x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        /// Second orbital as n,l,m,zeta,x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        p2: Option<String>,
        /// Kernel center x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// Also evaluate the 3D quadrature oracle.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Potential of a molecule on a box grid, as CSV.
    PotentialGrid {
        molecule: PathBuf,
        /// Lower grid corner x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        min: String,
        /// Upper grid corner x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        max: String,
        /// Points per axis nx,ny,nz.
        #[arg(long, default_value = "1,1,1")]
        counts: String,
        /// Rescale MOs that are not normalized instead of rejecting them.
        #[arg(long)]
        renormalize: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Interaction energy of two molecules, as JSON.
    Interact {
        molecule_a: PathBuf,
        molecule_b: PathBuf,
        #[arg(long)]
        renormalize: bool,
        /// Rigidly translate B by multiples of this step dx,dy,dz and write an R sweep.
        #[arg(long, allow_hyphen_values = true)]
        sweep_step: Option<String>,
        /// Number of sweep points (including the initial geometry).
        #[arg(long, default_value_t = 5)]
        sweep_count: usize,
        /// CSV file receiving the sweep.
        #[arg(long)]
        sweep_csv: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Residual of the product-density expansion versus N, as CSV.
    Convergence {
        /// Range lo..hi of truncations.
        #[arg(long = "N", default_value = "2..16")]
        n_range: String,
        /// First orbital as n,l,m,zeta,x,y,z (default 1s(1) at the origin).
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        /// Second orbital (default 1s(1) at 2,0,0).
        #[arg(long, allow_hyphen_values = true)]
        p2: Option<String>,
        /// Expansion center (default midpoint).
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Brute-force reference values.
    Oracle {
        #[arg(long, value_enum, default_value_t = OracleMode::Grid3d)]
        mode: OracleMode,
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long)]
        molecule_a: Option<PathBuf>,
        #[arg(long)]
        molecule_b: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
}

impl RunArgs {
    pub fn config(&self) -> Result<RunConfig> {
        let origin = self.origin.as_deref().map(parse_vec3).transpose()?;
        let cfg = RunConfig {
            kernel: KernelSpec::parse(&self.kernel)?,
            truncation_n: self.truncation,
            n_pair: self.n_pair,
            beta: self.beta,
            alpha_tag: AlphaTag::new(self.alpha).map_err(|e| Error::Usage(e.to_string()))?,
            three_center_path: match self.path {
                PathArg::Eq18 => ThreeCenterPath::Eq18,
                PathArg::Eq19 => ThreeCenterPath::Eq19,
            },
            series_tol: self.tol,
            oracle_tol: self.oracle_tol,
            mc_samples: self.mc_samples,
            seed: self.seed,
            origin_override: origin.map(|o| [o.x, o.y, o.z]),
        };
        cfg.validate().map_err(|e| Error::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

/// Parse `n,l,m,zeta,x,y,z`.
pub fn parse_orbital(s: &str) -> Result<StoParams> {
    let p: Vec<&str> = s.split(',').map(str::trim).collect();
    if p.len() != 7 {
        return Err(Error::Usage(format!("orbital '{s}' must be n,l,m,zeta,x,y,z")));
    }
    let bad = || Error::Usage(format!("orbital '{s}' must be n,l,m,zeta,x,y,z"));
    let f = |i: usize| p[i].parse::<f64>().map_err(|_| bad());
    let l: u32 = p[1].parse().map_err(|_| bad())?;
    let m: i32 = p[2].parse().map_err(|_| bad())?;
    StoParams::at(f(0)?, l, m, f(3)?, Vec3::new(f(4)?, f(5)?, f(6)?)).map_err(|e| Error::Usage(e.to_string()))
}

fn parse_counts(s: &str) -> Result<[usize; 3]> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Usage(format!("counts '{s}' must be nx,ny,nz")))?;
    if v.len() != 3 {
        return Err(Error::Usage(format!("counts '{s}' must be nx,ny,nz")));
    }
    Ok([v[0], v[1], v[2]])
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Usage(format!("range '{s}' must be lo..hi")))?;
    let lo: usize = a.trim().parse().map_err(|_| Error::Usage(format!("range '{s}' must be lo..hi")))?;
    let hi: usize = b.trim().trim_start_matches('=').parse().map_err(|_| Error::Usage(format!("range '{s}' must be lo..hi")))?;
    if lo < 1 || hi < lo {
        return Err(Error::Usage(format!("range '{s}' must satisfy 1 <= lo <= hi")));
    }
    Ok((lo, hi))
}

fn fmt(x: f64) -> String {
    format!("{x:.15e}")
}

struct Output {
    text: String,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct IntegralReport {
    p1: StoParams,
    p2: StoParams,
    g: Vec3,
    lambda: IntegralValue,
    /// `sqrt(2ν+1) N(μ*, ξ) Λ`, defined for `ξ > 0`.
    normalized: Option<f64>,
    oracle: Option<IntegralValue>,
}

#[derive(Serialize)]
struct DemoRow {
    n: usize,
    eq18: f64,
    eq19: f64,
    oracle: f64,
}

fn demo_geometry(case: Case) -> (StoParams, StoParams, Vec3) {
    let s1 = |c: Vec3| StoParams::at(1.0, 0, 0, 1.0, c).expect("valid demo orbital");
    match case {
        Case::OneCenterDemo => (s1(Vec3::zeros()), s1(Vec3::zeros()), Vec3::zeros()),
        Case::TwoCenterDemo => (s1(Vec3::zeros()), s1(Vec3::zeros()), Vec3::new(0.0, 0.0, 2.0)),
        Case::ThreeCenterDemo => (s1(Vec3::zeros()), s1(Vec3::new(2.0, 0.0, 0.0)), Vec3::new(1.0, 3f64.sqrt(), 0.0)),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_integral(
    case: Option<Case>,
    p1: Option<String>,
    p2: Option<String>,
    g: Option<String>,
    with_oracle: bool,
    format: Format,
    cfg: &RunConfig,
) -> Result<Output> {
    let q = cfg.kernel.index()?;
    let xi = cfg.kernel.xi;
    let engine = IntegralEngine::new(cfg.integrals());
    if case == Some(Case::ThreeCenterDemo) {
        let (a, c, g) = demo_geometry(Case::ThreeCenterDemo);
        let e18 = engine.three_center(&a, &c, &q, xi, &g, ThreeCenterPath::Eq18)?;
        let e19 = engine.three_center(&a, &c, &q, xi, &g, ThreeCenterPath::Eq19)?;
        let oracle = oracle_lambda(&a, &c, &q, xi, &g, &cfg.oracle())?;
        let h18 = e18.convergence.clone().unwrap_or_default();
        let h19 = e19.convergence.clone().unwrap_or_default();
        let rows: Vec<DemoRow> = (0..h18.len().min(h19.len()))
            .map(|i| DemoRow { n: i + 1, eq18: h18[i], eq19: h19[i], oracle: oracle.value })
            .collect();
        let mut warnings = e18.warnings.clone();
        warnings.extend(e19.warnings.iter().cloned());
        let text = match format {
            Format::Json => Envelope::new("integral", *cfg, rows, warnings.clone()).to_json()?,
            Format::Csv => {
                let rows: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| vec![r.n.to_string(), fmt(r.eq18), fmt(r.eq19), fmt(r.oracle), fmt(r.eq18 - r.oracle), fmt(r.eq19 - r.oracle)])
                    .collect();
                csv_table(cfg, &["N", "eq18", "eq19", "oracle", "eq18_minus_oracle", "eq19_minus_oracle"], &rows)?
            }
        };
        return Ok(Output { text, warnings });
    }
    let (a, c, g) = match case {
        Some(k) => demo_geometry(k),
        None => {
            let need = |x: Option<String>, what: &str| x.ok_or_else(|| Error::Usage(format!("--{what} is required without --case")));
            (parse_orbital(&need(p1, "p1")?)?, parse_orbital(&need(p2, "p2")?)?, parse_vec3(&need(g, "g")?)?)
        }
    };
    let lambda = engine.lambda(&a, &c, &q, xi, &g)?;
    let oracle = if with_oracle { Some(oracle_lambda(&a, &c, &q, xi, &g, &cfg.oracle())?) } else { None };
    let normalized = if xi > 0.0 { Some(lambda_to_normalized(lambda.value, &q, xi)?) } else { None };
    let warnings = lambda.warnings.clone();
    let report = IntegralReport { p1: a, p2: c, g, lambda, normalized, oracle };
    let text = match format {
        Format::Json => Envelope::new("integral", *cfg, report, warnings.clone()).to_json()?,
        Format::Csv => {
            let mut row = vec![fmt(report.lambda.value), report.normalized.map(fmt).unwrap_or_default()];
            row.push(report.oracle.as_ref().map(|o| fmt(o.value)).unwrap_or_default());
            csv_table(cfg, &["lambda", "normalized", "oracle"], &[row])?
        }
    };
    Ok(Output { text, warnings })
}

fn cmd_potential_grid(molecule: PathBuf, min: String, max: String, counts: String, renormalize: bool, cfg: &RunConfig) -> Result<Output> {
    let mol = load_molecule_with(&molecule, renormalize)?;
    let spec = GridSpec { min: parse_vec3(&min)?, max: parse_vec3(&max)?, counts: parse_counts(&counts)? };
    let engine = IntegralEngine::new(cfg.integrals());
    let samples = potential_grid(&mol, &spec.points(), &cfg.kernel.index()?, cfg.kernel.xi, &engine)?;
    let mut warnings: Vec<String> = Vec::new();
    for s in &samples {
        for w in &s.warnings {
            if !warnings.contains(w) {
                warnings.push(w.clone());
            }
        }
    }
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| vec![fmt(s.point.x), fmt(s.point.y), fmt(s.point.z), fmt(s.nuclear_part), fmt(s.electronic_part), fmt(s.total)])
        .collect();
    let text = csv_table(cfg, &["x", "y", "z", "nuclear", "electronic", "total"], &rows)?;
    Ok(Output { text, warnings })
}

fn cmd_interact(
    a: PathBuf,
    b: PathBuf,
    renormalize: bool,
    sweep_step: Option<String>,
    sweep_count: usize,
    sweep_csv: Option<PathBuf>,
    cfg: &RunConfig,
) -> Result<Output> {
    let ma = load_molecule_with(&a, renormalize)?;
    let mb = load_molecule_with(&b, renormalize)?;
    let mut scene = Scene::new(ma, mb, cfg.kernel.index()?, cfg.kernel.xi)?;
    scene.origin = cfg.origin();
    let icfg = cfg.interaction();
    let energy = interaction_energy(&scene, &icfg)?;
    let mut warnings = energy.warnings();
    if let Some(step) = sweep_step {
        let step = parse_vec3(&step)?;
        let path = sweep_csv.ok_or_else(|| Error::Usage("--sweep-step needs --sweep-csv".into()))?;
        let mut rows = Vec::with_capacity(sweep_count);
        for k in 0..sweep_count {
            let shift = step * k as f64;
            let mut s = scene.with_b_translated(&shift)?;
            s.origin = cfg.origin().map(|o| o + 0.5 * shift);
            let e: EnergyBreakdown = if k == 0 { energy.clone() } else { interaction_energy(&s, &icfg)? };
            for w in e.warnings() {
                if !warnings.contains(&w) {
                    warnings.push(w);
                }
            }
            let sep = (s.molecule_b.centroid() - s.molecule_a.centroid()).norm();
            rows.push(vec![k.to_string(), fmt(sep), fmt(e.u1), fmt(e.u2), fmt(e.u3), fmt(e.u4), fmt(e.total)]);
        }
        let text = csv_table(cfg, &["step", "separation", "u1", "u2", "u3", "u4", "total"], &rows)?;
        std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let text = Envelope::new("interact", *cfg, energy, warnings.clone()).to_json()?;
    Ok(Output { text, warnings })
}

fn cmd_convergence(n_range: String, p1: Option<String>, p2: Option<String>, g: Option<String>, cfg: &RunConfig) -> Result<Output> {
    let (lo, hi) = parse_range(&n_range)?;
    let a = p1.as_deref().map(parse_orbital).transpose()?.unwrap_or(StoParams::at(1.0, 0, 0, 1.0, Vec3::zeros())?);
    let c = p2.as_deref().map(parse_orbital).transpose()?.unwrap_or(StoParams::at(1.0, 0, 0, 1.0, Vec3::new(2.0, 0.0, 0.0))?);
    let g = g.as_deref().map(parse_vec3).transpose()?.unwrap_or(0.5 * (a.center + c.center));
    let table = expand_product_density_with(&a, &c, &g, hi, &Channels::All, cfg.alpha_tag, Default::default())?;
    let history = table.residual_history();
    let mut rows = Vec::new();
    let mut prev = f64::INFINITY;
    let mut warnings = table.warnings.clone();
    for (n, r) in history.into_iter().filter(|(n, _)| *n >= lo) {
        let ok = r <= prev;
        if !ok {
            warnings.push(format!("residual increased at N = {n}"));
        }
        rows.push(vec![n.to_string(), fmt(r), ok.to_string()]);
        prev = r;
    }
    let text = csv_table(cfg, &["N", "residual_l2", "nonincreasing"], &rows)?;
    Ok(Output { text, warnings })
}

#[derive(Serialize)]
struct OracleReport {
    mode: &'static str,
    result: OracleResult,
}

fn cmd_oracle(
    mode: OracleMode,
    p1: Option<String>,
    p2: Option<String>,
    g: Option<String>,
    ma: Option<PathBuf>,
    mb: Option<PathBuf>,
    cfg: &RunConfig,
) -> Result<Output> {
    let q = cfg.kernel.index()?;
    let xi = cfg.kernel.xi;
    let result = match mode {
        OracleMode::Grid3d => {
            let need = |x: Option<String>, what: &str| x.ok_or_else(|| Error::Usage(format!("--{what} is required for grid3d")));
            let a = parse_orbital(&need(p1, "p1")?)?;
            let c = parse_orbital(&need(p2, "p2")?)?;
            let g = parse_vec3(&need(g, "g")?)?;
            let v = oracle_lambda(&a, &c, &q, xi, &g, &cfg.oracle())?;
            OracleResult { value: v.value, error_estimate: v.error_estimate.unwrap_or(0.0), evaluations: 0, warning: v.warnings.first().cloned() }
        }
        OracleMode::Mc => {
            let need = |x: Option<PathBuf>, what: &str| x.ok_or_else(|| Error::Usage(format!("--{what} is required for mc")));
            let a = load_molecule_with(&need(ma, "molecule-a")?, false)?;
            let b = load_molecule_with(&need(mb, "molecule-b")?, false)?;
            let (ra, rb): (Density, Density) = (a.electron_density()?, b.electron_density()?);
            if ra.is_empty() || rb.is_empty() {
                return Err(Error::Domain("both molecules need electrons for the electron-electron oracle".into()));
            }
            integrate_6d_mc(&TwoElectronIntegrand { rho1: ra, rho2: rb, kernel: q, xi }, &cfg.oracle())?
        }
    };
    let warnings: Vec<String> = result.warning.iter().cloned().collect();
    let mode = match mode {
        OracleMode::Grid3d => "grid3d",
        OracleMode::Mc => "mc",
    };
    let text = Envelope::new("oracle", *cfg, OracleReport { mode, result }, warnings.clone()).to_json()?;
    Ok(Output { text, warnings })
}

fn dispatch(cmd: Command) -> (RunArgs, Result<RunConfig>, Box<dyn FnOnce(&RunConfig) -> Result<Output>>) {
    match cmd {
        Command::Integral { case, p1, p2, g, with_oracle, format, run } => {
            let cfg = run.config();
            (run, cfg, Box::new(move |c| cmd_integral(case, p1, p2, g, with_oracle, format, c)))
        }
        Command::PotentialGrid { molecule, min, max, counts, renormalize, run } => {
            let cfg = run.config();
            (run, cfg, Box::new(move |c| cmd_potential_grid(molecule, min, max, counts, renormalize, c)))
        }
        Command::Interact { molecule_a, molecule_b, renormalize, sweep_step, sweep_count, sweep_csv, run } => {
            let cfg = run.config();
            (run, cfg, Box::new(move |c| cmd_interact(molecule_a, molecule_b, renormalize, sweep_step, sweep_count, sweep_csv, c)))
        }
        Command::Convergence { n_range, p1, p2, g, run } => {
            let cfg = run.config();
            (run, cfg, Box::new(move |c| cmd_convergence(n_range, p1, p2, g, c)))
        }
        Command::Oracle { mode, p1, p2, g, molecule_a, molecule_b, run } => {
            let cfg = run.config();
            (run, cfg, Box::new(move |c| cmd_oracle(mode, p1, p2, g, molecule_a, molecule_b, c)))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

/// Run with explicit argument list and streams; returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (run, cfg, job) = dispatch(cli.command);
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if let Some(n) = run.threads {
        // an already initialized pool is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let output = match job(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &run.output {
        Some(path) => std::fs::write(path, &output.text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(output.text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_ERROR;
    }
    for w in &output.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if !output.warnings.is_empty() && !run.allow_warn {
        let _ = writeln!(err, "error: results carry convergence warnings (pass --allow-warn to accept them)");
        return EXIT_WARN;
    }
    EXIT_OK
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
