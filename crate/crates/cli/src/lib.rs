//! Command-line driver for finrank: renders kernels, curves and spectra as CSV or text.

pub mod config;
pub mod csv;
pub mod potential;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use finrank::acceptance::{self, CriterionReport};
use finrank::basis::{BasisSet, BasisSpec, Family, OrthoMethod, Parity};
use finrank::feshbach::{partition, solve_selfconsistent, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use finrank::kernels::{crest_and_cuts, crest_ratio_curve, cut_weight_curve, render_kernel};
use finrank::operators::{
    default_rule, hamiltonian_matrix, kinetic_matrix, local_potential_matrix, oscillator_matrix,
    position_squared_matrix, separable_matrix, separable_projection, OperatorMatrix, PotentialSpec,
};
use finrank::oracle::{fd_ground_state, OraclePotential};
use finrank::spectral::{eigen_symmetric, peak_metrics, synthesize};
use finrank::Axis;
use thiserror::Error;

use crate::config::Layer;
use crate::csv::float;
use crate::potential::Expression;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Numerical(#[from] finrank::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("acceptance failed for criteria {0}")]
    AcceptFailed(String),
    #[error("acceptance criteria {0} raised numerical errors")]
    AcceptErrored(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Numerical(_) | CliError::AcceptErrored(_) => 3,
            CliError::Io { .. } => 4,
            CliError::AcceptFailed(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "finrank", version, about = "Finite-rank operator kernels in truncated bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator kernel on an r×s grid (`r,s,value`)
    Kernel(Flags),
    /// Kernel values along r = s (`x,value`)
    Crest(Flags),
    /// Kernel cuts at fixed s (`s,x,value`)
    Cuts(Flags),
    /// Integrated cut weight ∫K(r,s)dr as a function of s (`x,value`)
    Weight(Flags),
    /// Ratio of operator kernel crest to identity crest (`x,value`)
    CrestRatio(Flags),
    /// Eigenvalues and coefficient vectors of an operator matrix
    Eigen(Flags),
    /// Lowest kinetic-energy state sampled on a grid
    FlatWave(Flags),
    /// Lowest r² state sampled on a grid
    R2Local(Flags),
    /// Self-consistent effective Hamiltonian on the leading n1 states
    Feshbach(Flags),
    /// Finite-difference ground state of −d²/dr² + V
    Oracle(Flags),
    /// Run the acceptance suite
    Accept(Flags),
}

#[derive(clap::Args, Debug, Default)]
struct Flags {
    /// Basis family: ho, shifted, centered or pairs
    #[arg(long)]
    basis: Option<String>,
    /// Oscillator cutoff or number of Gaussians
    #[arg(long)]
    n: Option<String>,
    /// Length scale
    #[arg(long)]
    beta: Option<String>,
    /// Gaussian spacing
    #[arg(long)]
    sigma: Option<String>,
    /// even, odd or both
    #[arg(long)]
    parity: Option<String>,
    /// Orthonormalization: lowdin or gs
    #[arg(long)]
    ortho: Option<String>,
    /// identity, kinetic, r2, potential, hamiltonian, oscillator or separable
    #[arg(long)]
    operator: Option<String>,
    /// Sum of c*exp(-a r^2) terms, e.g. "1*exp(-9r^2) -1*exp(-r^2)"
    #[arg(long, allow_hyphen_values = true)]
    potential: Option<String>,
    /// Sampling grid rmin:rmax:step
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Comma-separated cut positions
    #[arg(long, allow_hyphen_values = true)]
    s_values: Option<String>,
    /// Size of the P space
    #[arg(long)]
    n1: Option<String>,
    /// Size of P plus Q
    #[arg(long)]
    n2: Option<String>,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<String>,
    /// Number of eigenpairs to print
    #[arg(long)]
    levels: Option<String>,
    /// Finite-difference grid points
    #[arg(long)]
    npoints: Option<String>,
    /// Finite-difference half-width
    #[arg(long)]
    half_width: Option<String>,
    /// key=value settings file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn layer(&self) -> Layer {
        let fields = [
            ("basis", &self.basis),
            ("n", &self.n),
            ("beta", &self.beta),
            ("sigma", &self.sigma),
            ("parity", &self.parity),
            ("ortho", &self.ortho),
            ("operator", &self.operator),
            ("potential", &self.potential),
            ("grid", &self.grid),
            ("s-values", &self.s_values),
            ("n1", &self.n1),
            ("n2", &self.n2),
            ("out", &self.out),
            ("levels", &self.levels),
            ("npoints", &self.npoints),
            ("half-width", &self.half_width),
        ];
        fields
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Kernel,
    Crest,
    Cuts,
    Weight,
    CrestRatio,
    Eigen,
    FlatWave,
    R2Local,
    Feshbach,
    Oracle,
    Accept,
}

impl Command {
    fn split(self) -> (CommandKind, Flags) {
        use CommandKind as K;
        match self {
            Command::Kernel(f) => (K::Kernel, f),
            Command::Crest(f) => (K::Crest, f),
            Command::Cuts(f) => (K::Cuts, f),
            Command::Weight(f) => (K::Weight, f),
            Command::CrestRatio(f) => (K::CrestRatio, f),
            Command::Eigen(f) => (K::Eigen, f),
            Command::FlatWave(f) => (K::FlatWave, f),
            Command::R2Local(f) => (K::R2Local, f),
            Command::Feshbach(f) => (K::Feshbach, f),
            Command::Oracle(f) => (K::Oracle, f),
            Command::Accept(f) => (K::Accept, f),
        }
    }
}

/// Built-in values, lowest precedence.
pub fn defaults(cmd: CommandKind) -> Layer {
    let mut d: Layer = [
        ("basis", "ho"),
        ("n", "50"),
        ("beta", "1"),
        ("sigma", "1"),
        ("ortho", "lowdin"),
        ("s-values", "0"),
        ("levels", "1"),
        ("npoints", "12001"),
        ("half-width", "30"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    if cmd == CommandKind::Feshbach {
        // n follows n2 unless given explicitly
        d.remove("n");
        d.insert("parity".into(), "even".into());
        d.insert("n1".into(), "5".into());
        d.insert("n2".into(), "26".into());
    }
    d
}

/// Parses arguments and returns the command with its merged settings.
pub fn settings_from_args<I, T>(args: I) -> Result<(CommandKind, Layer)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| parse_err(clap_message(&e)))?;
    let (cmd, flags) = cli.command.split();
    let file = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            config::parse_file(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))?
        }
        None => Layer::new(),
    };
    Ok((cmd, config::merge(&[&defaults(cmd), &file, &flags.layer()])))
}

fn clap_message(e: &clap::Error) -> String {
    if e.kind() == clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
        return "missing subcommand (see --help)".into();
    }
    first_line(&e.to_string())
}

fn first_line(s: &str) -> String {
    let line = s.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim();
    line.strip_prefix("error: ").unwrap_or(line).to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Identity,
    Kinetic,
    R2,
    Potential,
    Hamiltonian,
    Oscillator,
    Separable,
}

struct Run {
    cmd: CommandKind,
    layer: Layer,
}

impl Run {
    fn get(&self, key: &str) -> Option<&str> {
        self.layer.get(key).map(String::as_str)
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| parse_err(format!("missing required --{key}")))
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.trim()
                    .parse::<T>()
                    .map_err(|_| parse_err(format!("invalid value '{v}' for --{key}")))
            })
            .transpose()
    }

    fn finite(&self, key: &str) -> Result<Option<f64>> {
        match self.number::<f64>(key)? {
            Some(x) if !x.is_finite() => Err(parse_err(format!("--{key} must be finite"))),
            x => Ok(x),
        }
    }

    fn basis_spec(&self) -> Result<BasisSpec> {
        let family = match self.required("basis")? {
            "ho" => Family::HarmonicOscillator,
            "shifted" => Family::ShiftedGaussians,
            "centered" => Family::CenteredGaussians,
            "pairs" => Family::SymmetricPairs,
            other => return Err(parse_err(format!("unknown basis '{other}'"))),
        };
        let n = match self.number::<usize>("n")? {
            Some(n) => n,
            None => 2 * self.number::<usize>("n2")?.unwrap_or(26) - 1,
        };
        let beta = self.finite("beta")?.unwrap_or(1.0);
        let sigma = self.finite("sigma")?.unwrap_or(1.0);
        let parity = match self.get("parity") {
            None => None,
            Some("even") => Some(Parity::Even),
            Some("odd") => Some(Parity::Odd),
            Some("both") => Some(Parity::Both),
            Some(other) => return Err(parse_err(format!("unknown parity '{other}'"))),
        };
        let ortho = match self.get("ortho").unwrap_or("lowdin") {
            "lowdin" => OrthoMethod::Lowdin,
            "gs" => OrthoMethod::GramSchmidt,
            other => return Err(parse_err(format!("unknown orthonormalization '{other}'"))),
        };
        let spec = BasisSpec {
            family,
            n,
            beta,
            sigma,
            parity,
            ortho,
        };
        spec.validate().map_err(|e| parse_err(e.to_string()))?;
        Ok(spec)
    }

    fn expression(&self) -> Result<Option<Expression>> {
        self.get("potential")
            .map(|p| potential::parse(p).map_err(|e| parse_err(format!("--potential: {e}"))))
            .transpose()
    }

    /// Gaussian-sum potential; `r^2` terms are reserved for the oracle.
    fn potential(&self) -> Result<Option<PotentialSpec>> {
        match self.expression()? {
            None => Ok(None),
            Some(e) if e.r2 != 0.0 => Err(parse_err("--potential: r^2 terms are only accepted by oracle")),
            Some(e) => PotentialSpec::new(e.gaussians)
                .map(Some)
                .map_err(|e| parse_err(e.to_string())),
        }
    }

    fn operator(&self, fallback: Op) -> Result<Op> {
        Ok(match self.get("operator") {
            None => fallback,
            Some("identity") => Op::Identity,
            Some("kinetic") => Op::Kinetic,
            Some("r2") => Op::R2,
            Some("potential") => Op::Potential,
            Some("hamiltonian") => Op::Hamiltonian,
            Some("oscillator") => Op::Oscillator,
            Some("separable") => Op::Separable,
            Some(other) => return Err(parse_err(format!("unknown operator '{other}'"))),
        })
    }

    fn grid(&self, fallback: Axis) -> Result<Axis> {
        let Some(g) = self.get("grid") else {
            return Ok(fallback);
        };
        let parts: Vec<&str> = g.split(':').collect();
        if parts.len() != 3 {
            return Err(parse_err(format!("--grid expects rmin:rmax:step, got '{g}'")));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("--grid: invalid number '{p}'")))?;
        }
        Axis::new(v[0], v[1], v[2]).map_err(|e| parse_err(format!("--grid: {e}")))
    }

    fn s_values(&self) -> Result<Vec<f64>> {
        self.required("s-values")?
            .split(',')
            .map(|p| match p.trim().parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(parse_err(format!("--s-values: invalid number '{p}'"))),
            })
            .collect()
    }

    fn out(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }
}

/// Operator matrix for `op`, `None` for the identity.
fn build_operator(
    basis: &BasisSet,
    op: Op,
    v: Option<&PotentialSpec>,
) -> Result<Option<OperatorMatrix>> {
    let need = |v: Option<&PotentialSpec>| {
        v.cloned()
            .ok_or_else(|| parse_err(format!("operator {op:?} needs --potential").to_lowercase()))
    };
    Ok(match op {
        Op::Identity => None,
        Op::Kinetic => Some(kinetic_matrix(basis)),
        Op::R2 => Some(position_squared_matrix(basis)),
        Op::Oscillator => Some(oscillator_matrix(basis)),
        Op::Potential => {
            let v = need(v)?;
            Some(local_potential_matrix(basis, &v, &default_rule(basis)?)?)
        }
        Op::Hamiltonian => Some(hamiltonian_matrix(basis, &need(v)?)?),
        Op::Separable => {
            let xi = need(v)?;
            let g = separable_projection(basis, |r| xi.eval(r), &default_rule(basis)?)?;
            Some(separable_matrix(basis, &g)?)
        }
    })
}

fn identity_matrix(basis: &BasisSet) -> Result<OperatorMatrix> {
    let n = basis.len();
    Ok(OperatorMatrix::new(
        basis.clone(),
        nalgebra::DMatrix::identity(n, n),
        finrank::OperatorKind::Custom,
    )?)
}

/// Symmetric axis through r = 0 with half-width rounded down to a multiple of `step`.
fn centered(half: f64, step: f64) -> Result<Axis> {
    Ok(Axis::symmetric((half / step).floor() * step, step)?)
}

fn fine_grid(run: &Run, n: usize) -> Result<Axis> {
    run.grid(centered(Axis::trust_region(n).max, 0.01)?)
}

fn wave_text(basis: &BasisSet, op: &OperatorMatrix, axis: Axis) -> Result<String> {
    let s = eigen_symmetric(op)?;
    let w = synthesize(basis, &s.vector(0), &axis)?;
    let m = peak_metrics(&w)?;
    let mut out = String::new();
    let _ = writeln!(out, "# eigenvalue {}", float(s.ground()));
    let _ = writeln!(out, "# max_abs {}", float(m.max_abs));
    let _ = writeln!(out, "# peak_position {}", float(m.peak_position));
    let _ = writeln!(out, "# effective_range {}", float(m.effective_range));
    let _ = writeln!(out, "# fwhm {}", float(m.fwhm));
    out.push_str(&csv::curve_csv(&w.x, &w.values));
    Ok(out)
}

fn accept_text(run: &Run) -> Result<String> {
    let mut settings = acceptance::Settings::default();
    if let Some(n) = run.number::<usize>("npoints")? {
        settings.oracle_npoints = n;
    }
    if let Some(l) = run.finite("half-width")? {
        settings.oracle_half_width = l;
    }
    let reports: Vec<CriterionReport> = acceptance::run_all(&settings);
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(out, "{r}");
    }
    Ok(out)
}

fn execute(run: &Run) -> Result<String> {
    use CommandKind as K;
    match run.cmd {
        K::Accept => return accept_text(run),
        K::Oracle => return oracle_text(run),
        _ => {}
    }
    let spec = run.basis_spec()?;
    let v = run.potential()?;
    let basis = spec.realize()?;
    let default_op = if v.is_some() { Op::Potential } else { Op::Identity };
    let trust = Axis::trust_region(spec.n);
    let axis = || run.grid(centered(trust.max, trust.step)?);
    match run.cmd {
        K::Kernel | K::Crest | K::Cuts => {
            let op = build_operator(&basis, run.operator(default_op)?, v.as_ref())?;
            let axis = axis()?;
            let s_values = if run.cmd == K::Cuts { run.s_values()? } else { Vec::new() };
            let k = render_kernel(&basis, op.as_ref(), axis, axis)?;
            Ok(match run.cmd {
                K::Kernel => csv::grid_csv(&axis.points(), &axis.points(), |i, j| k.values[(i, j)]),
                K::Crest => {
                    let (crest, _) = crest_and_cuts(&k, &[])?;
                    csv::curve_csv(&crest.x, &crest.y)
                }
                _ => {
                    let (_, cuts) = crest_and_cuts(&k, &s_values)?;
                    let mut out = String::from("s,x,value\n");
                    for (s, c) in s_values.iter().zip(&cuts) {
                        for (x, y) in c.x.iter().zip(&c.y) {
                            let _ = writeln!(out, "{},{},{}", float(*s), float(*x), float(*y));
                        }
                    }
                    out
                }
            })
        }
        K::Weight => {
            let op = build_operator(&basis, run.operator(default_op)?, v.as_ref())?;
            let c = cut_weight_curve(&basis, op.as_ref(), axis()?);
            Ok(csv::curve_csv(&c.x, &c.y))
        }
        K::CrestRatio => {
            let fallback = if v.is_some() { Op::Potential } else { Op::R2 };
            let op = build_operator(&basis, run.operator(fallback)?, v.as_ref())?
                .ok_or_else(|| parse_err("crest-ratio needs a non-identity operator"))?;
            // the identity crest vanishes beyond the classical turning point √(2n+1)
            let turning = (2.0 * spec.n as f64 + 1.0).sqrt() * spec.beta;
            let c = crest_ratio_curve(&basis, &op, run.grid(centered(turning - 1.0, trust.step)?)?)?;
            Ok(csv::curve_csv(&c.x, &c.y))
        }
        K::Eigen => {
            let fallback = if v.is_some() { Op::Hamiltonian } else { Op::Oscillator };
            let op = match build_operator(&basis, run.operator(fallback)?, v.as_ref())? {
                Some(op) => op,
                None => identity_matrix(&basis)?,
            };
            let levels = run.number::<usize>("levels")?.unwrap_or(1);
            if levels == 0 || levels > basis.len() {
                return Err(parse_err(format!("--levels must lie in 1..={}", basis.len())));
            }
            let s = eigen_symmetric(&op)?;
            let mut out = String::new();
            for k in 0..levels {
                if k > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "level {k}");
                let _ = writeln!(out, "eigenvalue {}", float(s.eigenvalues[k]));
                for (i, c) in s.vector(k).iter().enumerate() {
                    let _ = writeln!(out, "coefficient {} {}", i + 1, float(*c));
                }
            }
            Ok(out)
        }
        K::FlatWave => wave_text(&basis, &kinetic_matrix(&basis), fine_grid(run, spec.n)?),
        K::R2Local => wave_text(&basis, &position_squared_matrix(&basis), fine_grid(run, spec.n)?),
        K::Feshbach => {
            let v = v.ok_or_else(|| parse_err("feshbach needs --potential"))?;
            let n1 = run.number::<usize>("n1")?.unwrap_or(5);
            let n2 = run.number::<usize>("n2")?.unwrap_or(26);
            if n1 == 0 || n1 >= n2 || n2 > basis.len() {
                return Err(parse_err(format!(
                    "need 1 <= n1 < n2 <= {}, got n1 = {n1}, n2 = {n2}",
                    basis.len()
                )));
            }
            let part = partition(&hamiltonian_matrix(&basis, &v)?, n1, n2)?;
            let sc = solve_selfconsistent(&part, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
            let (full, _) = part.full_ground()?;
            let mut out = String::new();
            let _ = writeln!(out, "n1 {n1}");
            let _ = writeln!(out, "n2 {n2}");
            let _ = writeln!(out, "p_ground {}", float(part.php_ground()?));
            let _ = writeln!(out, "full_ground {}", float(full));
            let _ = writeln!(out, "selfconsistent {}", float(sc.energy));
            let _ = writeln!(out, "iterations {}", sc.iterations);
            for (i, c) in sc.p_state.iter().enumerate() {
                let _ = writeln!(out, "coefficient {} {}", i + 1, float(*c));
            }
            Ok(out)
        }
        K::Accept | K::Oracle => unreachable!(),
    }
}

fn oracle_text(run: &Run) -> Result<String> {
    let e = run
        .expression()?
        .ok_or_else(|| parse_err("oracle needs --potential"))?;
    let npoints = run.number::<usize>("npoints")?.unwrap_or(finrank::oracle::DEFAULT_NPOINTS);
    let l = run.finite("half-width")?.unwrap_or(finrank::oracle::DEFAULT_HALF_WIDTH);
    let v = OraclePotential {
        gaussians: e.gaussians,
        r2: e.r2,
    };
    let sol = fd_ground_state(&v, l, npoints)?;
    let mut out = String::new();
    let _ = writeln!(out, "eigenvalue {}", float(sol.eigenvalue));
    let _ = writeln!(out, "richardson_error {}", float(sol.richardson_error));
    let _ = writeln!(out, "half_width {}", float(sol.half_width));
    let _ = writeln!(out, "npoints {}", sol.npoints);
    Ok(out)
}

fn failed_ids(text: &str) -> (Vec<String>, bool) {
    let mut failed = Vec::new();
    let mut errored = false;
    for line in text.lines().filter(|l| l.starts_with("[FAIL]")) {
        if let Some(id) = line.split_whitespace().nth(1) {
            failed.push(id.to_string());
        }
        errored |= line.contains(": error: ");
    }
    (failed, errored)
}

fn emit(run: &Run, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match run.out() {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                path: "<stdout>".into(),
                source: e,
            }),
            _ => Ok(()),
        },
    }
}

fn dispatch<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (cmd, layer) = settings_from_args(args)?;
    let run = Run { cmd, layer };
    let text = execute(&run)?;
    emit(&run, &text, stdout)?;
    if cmd == CommandKind::Accept {
        let (failed, errored) = failed_ids(&text);
        if errored {
            return Err(CliError::AcceptErrored(failed.join(",")));
        }
        if !failed.is_empty() {
            return Err(CliError::AcceptFailed(failed.join(",")));
        }
    }
    Ok(())
}

/// Runs the program and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    // help and version go to stdout and succeed
    if let Err(e) = Cli::try_parse_from(&args) {
        if matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        ) {
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    }
    match dispatch(args, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "finrank: error: {}", first_line(&e.to_string()));
            e.exit_code()
        }
    }
}
