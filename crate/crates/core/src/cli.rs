//! The `zernike` command line.
//!
//! Exit codes: 0 when every check passes, 2 when an identity fails, 64 for
//! bad arguments or configuration, 70 for anything else.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dynamics::{
    detect_closure, integrate_trajectory, CartesianSystem, CurvedOscillator, HamiltonianSystem, Trajectory,
    TrajectoryConfig, DEFAULT_CLOSURE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::integrals::solve_integral_ansatz;
use crate::param::Symbol;
use crate::scalar::GaussianRational;
use crate::spectra::{real_parameter_form, real_parameters, realness_certificate, solve_spectrum};
use crate::system::SystemSpec;
use crate::verify::{verify_classical, verify_quantum, CheckResult, CheckStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "zernike", version, about = "Integrals, symmetry algebras, spectra and flows of the generalized Zernike systems")]
pub struct Cli {
    /// Write the machine-readable run report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Suppress human-readable output.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Classical,
    Quantum,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite of the classical or quantum system.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long = "N", value_name = "N")]
        order: usize,
        /// Comma-separated exact values `g1,...,gN` (`p/q`, Gaussian
        /// rationals allowed); symbolic when omitted.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Derive the integral I_N and its Q-polynomials.
    SolveAnsatz {
        #[arg(long = "N", value_name = "N")]
        order: usize,
        /// Directory for the I_N text, Q-table and JSON artifacts.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Solve the quantum spectrum.
    Spectrum {
        #[arg(long = "N", value_name = "N")]
        order: usize,
        /// Comma-separated exact `beta,alpha,mu,nu`; symbolic when omitted.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, default_value_t = 4)]
        n_max: u64,
        /// Write the level table to this CSV file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Integrate a trajectory described by a JSON config.
    Simulate {
        config: PathBuf,
        /// Write the time series to this CSV file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub spec: Value,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub artifacts: Vec<String>,
    pub wall_time: f64,
    pub result: Value,
}

impl RunReport {
    fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            spec: Value::Null,
            seed,
            checks: Vec::new(),
            artifacts: Vec::new(),
            wall_time: 0.0,
            result: Value::Null,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// The system of a `simulate` config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SimulatedSystem {
    /// `H_N` in Cartesian coordinates; `gamma` holds exact real values.
    Cartesian { gamma: Vec<String> },
    /// The curved oscillator in `(ρ, φ, p_ρ, p_φ)`.
    Curved { kappa: f64, omega: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub system: SimulatedSystem,
    pub initial_state: [f64; 4],
    pub t_end: f64,
    pub dt: f64,
    pub integrator: crate::dynamics::Integrator,
    /// Extra phase-space polynomials to monitor (Cartesian only).
    #[serde(default)]
    pub observables: Vec<String>,
    #[serde(default = "default_closure_tolerance")]
    pub closure_tolerance: f64,
}

fn default_closure_tolerance() -> f64 {
    DEFAULT_CLOSURE_TOLERANCE
}

impl SimulationConfig {
    pub fn trajectory(&self) -> TrajectoryConfig {
        TrajectoryConfig {
            initial_state: self.initial_state,
            t_end: self.t_end,
            dt: self.dt,
            integrator: self.integrator,
        }
    }
}

/// Comma-separated exact values.
pub fn parse_value_list(text: &str) -> Result<Vec<GaussianRational>> {
    text.split(',').map(|s| s.trim().parse()).collect()
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidOrder(_)
        | Error::ParameterCount { .. }
        | Error::MissingVariable(_)
        | Error::Parse { .. }
        | Error::SymbolicRequired
        | Error::NumericRequired
        | Error::UnsupportedOrder(_)
        | Error::NonRealParameter { .. }
        | Error::InvalidConfig(_)
        | Error::Json(_) => EXIT_USAGE,
        Error::IdentityFailure { .. } | Error::BracketClosure(_) | Error::LadderClosure(_) => EXIT_IDENTITY_FAILURE,
        _ => EXIT_INTERNAL,
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    write_atomic(path, &bytes)
}

struct Output {
    quiet: bool,
}

impl Output {
    fn line(&self, s: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", s.as_ref());
        }
    }
}

/// Parses `args` (including the program name) and runs the command; returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> i32 {
    let out = Output { quiet: cli.quiet };
    let started = Instant::now();
    let name = match &cli.command {
        Command::Verify { target: Target::Classical, .. } => "verify classical",
        Command::Verify { target: Target::Quantum, .. } => "verify quantum",
        Command::SolveAnsatz { .. } => "solve-ansatz",
        Command::Spectrum { .. } => "spectrum",
        Command::Simulate { .. } => "simulate",
    };
    let mut report = RunReport::new(name, cli.seed);
    let outcome = match &cli.command {
        Command::Verify { target, order, gamma } => cmd_verify(&mut report, &out, *target, *order, gamma.as_deref()),
        Command::SolveAnsatz { order, out_dir } => cmd_solve_ansatz(&mut report, &out, *order, out_dir.as_deref()),
        Command::Spectrum {
            order,
            params,
            n_max,
            csv,
        } => cmd_spectrum(&mut report, &out, *order, params.as_deref(), *n_max, csv.as_deref()),
        Command::Simulate { config, csv } => cmd_simulate(&mut report, &out, config, csv.as_deref()),
    };
    let mut code = match &outcome {
        Ok(()) if report.all_passed() => EXIT_OK,
        Ok(()) => EXIT_IDENTITY_FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            report.result = json!({ "error": e.to_string() });
            exit_code_for(e)
        }
    };
    report.wall_time = started.elapsed().as_secs_f64();
    if let Some(path) = &cli.json {
        let written = serde_json::to_vec_pretty(&report)
            .map_err(Error::from)
            .and_then(|bytes| write_atomic(path, &bytes));
        if let Err(e) = written {
            eprintln!("error: cannot write report {}: {e}", path.display());
            code = code.max(EXIT_INTERNAL);
        }
    }
    code
}

fn print_checks(out: &Output, checks: &[CheckResult]) {
    for c in checks {
        let tag = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        };
        match (&c.status, &c.residual_text) {
            (CheckStatus::Pass, _) | (_, None) => out.line(format!("[{tag}] {}", c.name)),
            (_, Some(r)) => out.line(format!("[{tag}] {}: {r}", c.name)),
        }
    }
}

fn build_spec(order: usize, gamma: Option<&str>) -> Result<SystemSpec> {
    match gamma {
        None => SystemSpec::symbolic(order),
        Some(text) => SystemSpec::with_values(order, parse_value_list(text)?),
    }
}

fn cmd_verify(report: &mut RunReport, out: &Output, target: Target, order: usize, gamma: Option<&str>) -> Result<()> {
    let spec = build_spec(order, gamma)?;
    report.spec = serde_json::to_value(&spec)?;
    match target {
        Target::Classical => {
            let suite = verify_classical(&spec, report.seed)?;
            print_checks(out, &suite.checks);
            report.result = serde_json::to_value(&suite.summary)?;
            report.checks = suite.checks;
        }
        Target::Quantum => {
            let suite = verify_quantum(&spec)?;
            print_checks(out, &suite.checks);
            report.result = json!({
                "N": order,
                "checks_run": suite.checks.len(),
                "all_passed": suite.all_passed(),
            });
            report.checks = suite.checks;
        }
    }
    Ok(())
}

fn cmd_solve_ansatz(report: &mut RunReport, out: &Output, order: usize, out_dir: Option<&Path>) -> Result<()> {
    let spec = SystemSpec::symbolic(order)?;
    report.spec = serde_json::to_value(&spec)?;
    let solution = solve_integral_ansatz(&spec)?;
    // the solver re-checks {H, I} = 0 before returning
    report.checks.push(CheckResult::pass("{H, I} = 0"));
    let integral = solution.integral.to_string();
    let q_polynomials: Vec<Value> = solution
        .q_table
        .iter()
        .map(|q| json!({ "label": q.label(), "n": q.n, "j": q.j, "polynomial": q.polynomial.to_string() }))
        .collect();
    let free: Vec<String> = solution.free_parameters.iter().map(|u| u.label()).collect();
    report.result = json!({
        "N": order,
        "q_polynomials": q_polynomials,
        "integral": integral,
        "residual_is_zero": true,
        "free_parameters": free,
    });
    out.line(&integral);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        let i_path = dir.join(format!("I_{order}.txt"));
        write_atomic(&i_path, format!("{integral}\n").as_bytes())?;
        let table: String = solution
            .q_table
            .iter()
            .map(|q| format!("{} = {}\n", q.label(), q.polynomial))
            .collect();
        let q_path = dir.join(format!("Q_table_{order}.txt"));
        write_atomic(&q_path, table.as_bytes())?;
        let j_path = dir.join(format!("solve_ansatz_{order}.json"));
        write_atomic(&j_path, &serde_json::to_vec_pretty(&report.result)?)?;
        for p in [i_path, q_path, j_path] {
            report.artifacts.push(p.display().to_string());
        }
    }
    Ok(())
}

fn cmd_spectrum(
    report: &mut RunReport,
    out: &Output,
    order: usize,
    params: Option<&str>,
    n_max: u64,
    csv_path: Option<&Path>,
) -> Result<()> {
    let spec = SystemSpec::symbolic(order)?;
    if order > crate::quantum::MAX_QUANTUM_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    report.spec = serde_json::to_value(&spec)?;
    let assignment = match params {
        None => None,
        Some(text) => {
            let mut v = parse_value_list(text)?;
            if v.len() > 4 {
                return Err(Error::ParameterCount { expected: 4, got: v.len() });
            }
            if let Some(k) = v.iter().skip(order).position(|x| !num_traits::Zero::is_zero(x)) {
                return Err(Error::InvalidConfig(format!(
                    "parameter {} is nonzero but N = {order}",
                    order + k + 1
                )));
            }
            v.resize(4, GaussianRational::from_integer(0));
            let [beta, alpha, mu, nu]: [GaussianRational; 4] = v.try_into().expect("four values");
            Some(real_parameters(beta, alpha, mu, nu))
        }
    };
    let families = solve_spectrum(&spec)?;
    let mut types = Vec::new();
    let mut columns: Vec<(String, Vec<String>)> = Vec::new();
    for f in &families {
        let real = real_parameter_form(&f.energy);
        let name = format!("E_{}", f.label);
        report.checks.push(if realness_certificate(f) {
            CheckResult::pass(format!("{name} real in (beta, alpha, mu, nu)"))
        } else {
            CheckResult::fail(format!("{name} real in (beta, alpha, mu, nu)"), real.to_string())
        });
        let levels: Vec<String> = (0..=n_max)
            .map(|n| {
                let mut at: crate::ring::ParamAssignment = assignment.clone().unwrap_or_default();
                at.insert(Symbol::Level, GaussianRational::from_integer(n as i64));
                real.partial_evaluate(&at).to_string()
            })
            .collect();
        out.line(format!("type {}: u = {}, E(n) = {}", f.label, f.u, real));
        out.line(format!("  levels n = 0..{n_max}: {}", levels.join(", ")));
        types.push(json!({
            "label": f.label.to_string(),
            "u": f.u.to_string(),
            "energy_polynomial": f.energy.to_string(),
            "energy_real_form": real.to_string(),
            "first_k_levels": levels,
        }));
        columns.push((name, levels));
    }
    report.result = json!({ "types": types });
    if let Some(path) = csv_path {
        let mut header = vec!["n".to_string()];
        header.extend(columns.iter().map(|(n, _)| n.clone()));
        let rows: Vec<Vec<String>> = (0..=n_max as usize)
            .map(|n| {
                let mut r = vec![n.to_string()];
                r.extend(columns.iter().map(|(_, c)| c[n].clone()));
                r
            })
            .collect();
        write_csv(path, &header, &rows)?;
        report.artifacts.push(path.display().to_string());
    }
    Ok(())
}

fn trajectory_rows(sys: &dyn HamiltonianSystem, tr: &Trajectory) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = vec!["t".to_string()];
    header.extend(sys.coordinate_names().iter().map(|s| s.to_string()));
    header.extend(tr.observable_names.iter().cloned());
    let rows = tr
        .times
        .iter()
        .zip(&tr.states)
        .zip(&tr.observables)
        .map(|((t, x), obs)| {
            let mut r = vec![t.to_string()];
            r.extend(x.iter().map(f64::to_string));
            r.extend(obs.iter().map(f64::to_string));
            r
        })
        .collect();
    (header, rows)
}

fn cmd_simulate(report: &mut RunReport, out: &Output, config: &Path, csv_path: Option<&Path>) -> Result<()> {
    let text = fs::read_to_string(config)?;
    let cfg: SimulationConfig = serde_json::from_str(&text)?;
    if !(cfg.closure_tolerance > 0.0) {
        return Err(Error::InvalidConfig("closure_tolerance must be positive".into()));
    }
    let sys: Box<dyn HamiltonianSystem> = match &cfg.system {
        SimulatedSystem::Cartesian { gamma } => {
            let values = gamma.iter().map(|s| s.parse()).collect::<Result<Vec<GaussianRational>>>()?;
            let spec = SystemSpec::numeric(values)?;
            report.spec = serde_json::to_value(&spec)?;
            Box::new(CartesianSystem::new(&spec)?.with_observables(&cfg.observables)?)
        }
        SimulatedSystem::Curved { kappa, omega } => {
            if !cfg.observables.is_empty() {
                return Err(Error::InvalidConfig(
                    "extra observables are only supported for the Cartesian system".into(),
                ));
            }
            report.spec = json!({ "kappa": kappa, "omega": omega });
            Box::new(CurvedOscillator::new(*kappa, *omega))
        }
    };
    let tr = integrate_trajectory(&cfg.trajectory(), sys.as_ref())?;
    let closure = detect_closure(sys.as_ref(), &tr, cfg.closure_tolerance);
    let drift_i = tr.drift_of("I_N");
    report.result = json!({
        "steps": tr.times.len() - 1,
        "drift_H": tr.drift_of("H"),
        "drift_C": tr.drift_of("C"),
        "drift_I": drift_i,
        "closed": closure.closed,
        "period": closure.period.filter(|_| closure.closed),
        "min_return_distance": closure.min_distance,
    });
    out.line(format!(
        "steps {}  drift H {:.3e}  drift C {:.3e}{}",
        tr.times.len() - 1,
        tr.drift_of("H").unwrap_or(0.0),
        tr.drift_of("C").unwrap_or(0.0),
        drift_i.map(|d| format!("  drift I_N {d:.3e}")).unwrap_or_default()
    ));
    match closure.period.filter(|_| closure.closed) {
        Some(p) => out.line(format!("closed orbit, period {p:.10}")),
        None => out.line(format!("no return within {:e} (closest {:.3e})", cfg.closure_tolerance, closure.min_distance)),
    }
    if let Some(path) = csv_path {
        let (header, rows) = trajectory_rows(sys.as_ref(), &tr);
        write_csv(path, &header, &rows)?;
        report.artifacts.push(path.display().to_string());
    }
    Ok(())
}
