//! Command-line front end. `run` parses arguments, does the work and returns
//! the process exit code; the binary is a thin wrapper around it.

use crate::coeffs::{cdhahn_coeffs, deformed_jacobi_coeffs, pollaczek_coeffs, solve_forward, CoefficientSolution, DeformedStyle};
use crate::density::{density_estimate, DensityEstimate};
use crate::error::Error;
use crate::oracle::{fd_spectrum, matrix_element, KineticPath, OracleReport, MATRIX_TOL};
use crate::output::{sig17, write_atomic};
use crate::spectra::{closed_form_spectrum, diagonalization_conditions, numeric_spectrum, SpectrumKind, SpectrumResult};
use crate::tridiag::{representation, PotentialCase, RepRequest, TridiagonalRep};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_ACCURACY: i32 = 4;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "TRIDIAG_SPECTRA_THREADS";

#[derive(Parser, Debug)]
#[command(name = "tridiag-spectra", version, about = "Tridiagonal representations, spectra and density curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form and/or numeric ladders.
    Spectrum(SpectrumArgs),
    /// Expansion coefficients f_n(E) of the wavefunction.
    Coeffs(CoeffsArgs),
    /// Density curves of the deformed Jacobi polynomials, one per gamma.
    Density(DensityArgs),
    /// Oracle report: entries against quadrature, ladders against finite differences.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CaseTag {
    Coulomb1,
    Coulomb2,
    Oscillator1,
    Oscillator2,
    Powerlaw1,
    Powerlaw2,
    Hulthen1,
    Hulthen2,
    Hulthen3,
    Morse1,
    Morse2,
    Rosenmorse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Numeric,
    Both,
}

#[derive(Args, Debug, Clone)]
struct CaseArgs {
    #[arg(long, value_enum)]
    case: CaseTag,
    /// Coulomb charge parameter (V = Z/r).
    #[arg(long = "Z", allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<f64>,
    /// Defaults to 0.
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<f64>,
    /// Potential scale, or basis scale for coulomb1/oscillator1.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Morse scale; defaults to 1.
    #[arg(long = "mu-hat", allow_hyphen_values = true)]
    mu_hat: Option<f64>,
    /// Angular momentum.
    #[arg(long = "l", default_value_t = 0)]
    ell: u32,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long = "n-max", default_value_t = 5)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    /// Basis size for the numeric method.
    #[arg(long = "N", default_value_t = 40)]
    size: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long = "E", allow_hyphen_values = true)]
    energy: Option<f64>,
    #[arg(long = "n-max", default_value_t = 20)]
    n_max: usize,
    /// Solve the recursion forward instead of using the closed form.
    #[arg(long)]
    forward: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long, value_enum)]
    case: CaseTag,
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    /// One or more comma-separated values.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    gamma: Vec<f64>,
    #[arg(long = "N", default_value_t = 51)]
    size: usize,
    /// Kernel bandwidth; Silverman's rule when absent.
    #[arg(long)]
    bandwidth: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// File for a single gamma (CSV) or any JSON; directory for several CSVs.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Energy of the representation; defaults to the ground level.
    #[arg(long = "E", allow_hyphen_values = true)]
    energy: Option<f64>,
    /// Basis size for the entry check.
    #[arg(long = "N", default_value_t = 8)]
    size: usize,
    /// Ladder levels compared with finite differences.
    #[arg(long = "n-max", default_value_t = 3)]
    n_max: usize,
    #[arg(long = "ladder-tol", default_value_t = 1e-6)]
    ladder_tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParameterDomain(_) | Error::Domain(_) | Error::Unsupported(_) => EXIT_DOMAIN,
        Error::Accuracy { .. } | Error::Matrix(_) => EXIT_ACCURACY,
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Spectrum(a) => spectrum(a, stdout),
        Command::Coeffs(a) => coeffs(a, stdout, stderr),
        Command::Density(a) => density(a, stdout),
        Command::Verify(a) => verify(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, format!("usage error: {m}")),
                Failure::Lib(e) => (exit_code(&e), e.to_string()),
                Failure::Io(m) => (EXIT_USAGE, format!("i/o error: {m}")),
            };
            let _ = writeln!(stderr, "tridiag-spectra: {msg}");
            code
        }
    }
}

impl CaseArgs {
    fn need(&self, v: Option<f64>, flag: &str) -> Result<f64, Failure> {
        v.map_or_else(|| usage(format!("{} needs --{flag}", self.case.name())), Ok)
    }

    fn build(&self) -> Result<PotentialCase, Failure> {
        use PotentialCase::*;
        let b = self.b.unwrap_or(0.0);
        let lam = self.lambda.unwrap_or(1.0);
        let mu_hat = self.mu_hat.unwrap_or(1.0);
        let case = match self.case {
            CaseTag::Coulomb1 => CoulombPlain { z: self.need(self.z, "Z")? },
            CaseTag::Coulomb2 => CoulombBarrier { z: self.need(self.z, "Z")?, b, nu: self.nu },
            CaseTag::Oscillator1 => Oscillator { omega: self.need(self.omega, "omega")? },
            CaseTag::Oscillator2 => OscillatorBarrier { lambda: lam, b, nu: self.nu },
            CaseTag::Powerlaw1 => PowerLaw1 { mu: self.need(self.mu, "mu")?, lambda: lam, a: self.need(self.a, "A")?, b },
            CaseTag::Powerlaw2 => PowerLaw2 { mu: self.need(self.mu, "mu")?, lambda: lam, a: self.need(self.a, "A")?, b, nu: self.nu },
            CaseTag::Hulthen1 => Hulthen1 { lambda: lam, a: self.need(self.a, "A")?, b, nu: self.need(self.nu, "nu")? },
            CaseTag::Hulthen2 => Hulthen2 { lambda: lam, a: self.need(self.a, "A")?, b, nu: self.nu },
            CaseTag::Hulthen3 => Hulthen3 { lambda: lam, a: self.need(self.a, "A")?, b, nu: self.need(self.nu, "nu")?, mu: self.mu },
            CaseTag::Morse1 => Morse1 { lambda: lam, a: self.need(self.a, "A")?, b, mu_hat },
            CaseTag::Morse2 => Morse2 { lambda: lam, a: self.need(self.a, "A")?, mu_hat, nu: self.nu },
            CaseTag::Rosenmorse => RosenMorse {
                lambda: lam,
                a: self.need(self.a, "A")?,
                b,
                mu: self.need(self.mu, "mu")?,
                nu: self.need(self.nu, "nu")?,
            },
        };
        case.validate()?;
        Ok(case)
    }

    /// Basis scale for the two cases where it is free.
    fn basis_lambda(&self, case: &PotentialCase) -> Option<f64> {
        match case.case_lambda() {
            None if !matches!(case, PotentialCase::CoulombBarrier { .. }) => self.lambda,
            _ => None,
        }
    }
}

impl CaseTag {
    fn name(self) -> &'static str {
        match self {
            CaseTag::Coulomb1 => "coulomb1",
            CaseTag::Coulomb2 => "coulomb2",
            CaseTag::Oscillator1 => "oscillator1",
            CaseTag::Oscillator2 => "oscillator2",
            CaseTag::Powerlaw1 => "powerlaw1",
            CaseTag::Powerlaw2 => "powerlaw2",
            CaseTag::Hulthen1 => "hulthen1",
            CaseTag::Hulthen2 => "hulthen2",
            CaseTag::Hulthen3 => "hulthen3",
            CaseTag::Morse1 => "morse1",
            CaseTag::Morse2 => "morse2",
            CaseTag::Rosenmorse => "rosenmorse",
        }
    }
}

fn meta(extra: Value) -> Value {
    let mut m = json!({
        "tool": "tridiag-spectra",
        "version": env!("CARGO_PKG_VERSION"),
        "units": "hbar = m = 1",
        "hamiltonian": "H = -1/2 d2/dr2 + l(l+1)/(2 r^2) + V(r)",
        "matrix_convention": "scaled entries = scale * <phi_n|H - E|phi_m> = (a_n - y) delta_nm + b_n delta_n,m-1 + b_m delta_n,m+1",
        "oscillator_convention": "oscillator1 uses V = Omega^2 r^2 / 2; oscillator2 uses Omega = lambda^2",
        "hulthen_c": "C = lambda^2 (nu^2 - 1) / 8",
        "float_format": "17 significant digits",
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

fn case_json(case: &PotentialCase) -> Value {
    serde_json::to_value(case).unwrap_or(Value::Null)
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn opt(v: Option<f64>) -> String {
    v.map(sig17).unwrap_or_default()
}

fn spectrum(a: SpectrumArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let case = a.case.build()?;
    let closed = match a.method {
        Method::Closed | Method::Both => Some(closed_form_spectrum(&case, a.case.ell, a.n_max)?),
        Method::Numeric => None,
    };
    let numeric = match a.method {
        Method::Numeric | Method::Both => {
            let lam = a.case.basis_lambda(&case).or(matches!(case, PotentialCase::CoulombPlain { .. } | PotentialCase::Oscillator { .. }).then_some(1.0));
            let rep = representation(&case, &RepRequest::new(a.case.ell, lam, 0.0, a.size.max(a.n_max)))?;
            Some(numeric_spectrum(&rep, a.n_max)?)
        }
        Method::Closed => None,
    };
    let text = match a.out.format {
        Format::Json => json_text(&json!({
            "case": case.name(),
            "params": {"potential": case_json(&case), "l": a.case.ell, "n_max": a.n_max, "N": a.size, "method": format!("{:?}", a.method).to_lowercase()},
            "results": {"closed_form": closed, "numeric": numeric},
            "meta": meta(json!({})),
        })),
        Format::Csv => spectrum_csv(closed.as_ref(), numeric.as_ref()),
    };
    emit(&text, a.out.output.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn spectrum_csv(closed: Option<&SpectrumResult>, numeric: Option<&SpectrumResult>) -> String {
    let quantity = closed.or(numeric).map_or("E", |s| s.quantity.as_str());
    let mut s = String::new();
    match (closed, numeric) {
        (Some(c), None) => {
            s.push_str(&format!("n,{quantity}"));
            if let Some(side) = &c.side_name {
                s.push_str(&format!(",{side}"));
            }
            s.push('\n');
            for l in &c.levels {
                s.push_str(&format!("{},{}", l.n, sig17(l.value)));
                if c.side_name.is_some() {
                    s.push_str(&format!(",{}", opt(l.side)));
                }
                s.push('\n');
            }
        }
        (None, Some(nm)) => {
            s.push_str(&format!("n,{quantity}\n"));
            for l in &nm.levels {
                s.push_str(&format!("{},{}\n", l.n, sig17(l.value)));
            }
        }
        (Some(c), Some(nm)) => {
            s.push_str(&format!("n,{quantity}_closed,{quantity}_numeric\n"));
            for i in 0..c.levels.len().max(nm.levels.len()) {
                let cv = c.levels.get(i).map(|l| l.value);
                let nv = nm.levels.get(i).map(|l| l.value);
                s.push_str(&format!("{i},{},{}\n", opt(cv), opt(nv)));
            }
        }
        (None, None) => s.push_str(&format!("n,{quantity}\n")),
    }
    s
}

/// The energy at which a representation is built when none is given: the
/// ground level if the ladder has one, zero for the power laws, otherwise a
/// generic negative value.
fn default_energy(case: &PotentialCase, ell: u32) -> f64 {
    match closed_form_spectrum(case, ell, 1) {
        Ok(s) if s.kind == SpectrumKind::CriticalCoupling => 0.0,
        Ok(s) if !s.levels.is_empty() => s.levels[0].value,
        _ => -0.25,
    }
}

fn coefficient_solution(case: &PotentialCase, req: &RepRequest, n_max: usize, forward: bool) -> crate::Result<CoefficientSolution> {
    use PotentialCase::*;
    if forward {
        let rep = representation(case, &RepRequest { size: n_max + 1, ..*req })?;
        return Ok(solve_forward(&rep, 1.0));
    }
    match case {
        CoulombPlain { .. } | Oscillator { .. } | PowerLaw1 { .. } | Morse1 { .. } => pollaczek_coeffs(case, req, n_max),
        CoulombBarrier { .. } | OscillatorBarrier { .. } | PowerLaw2 { .. } | Morse2 { .. } => cdhahn_coeffs(case, req, n_max),
        Hulthen1 { .. } | Hulthen2 { .. } | Hulthen3 { .. } | RosenMorse { .. } => deformed_jacobi_coeffs(case, req, n_max),
    }
}

fn coeffs(a: CoeffsArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let case = a.case.build()?;
    let energy = a.energy.unwrap_or_else(|| default_energy(&case, a.case.ell));
    let lam = a.case.basis_lambda(&case).or(matches!(case, PotentialCase::CoulombPlain { .. } | PotentialCase::Oscillator { .. }).then_some(1.0));
    let req = RepRequest::new(a.case.ell, lam, energy, a.n_max + 1);
    let sol = coefficient_solution(&case, &req, a.n_max, a.forward)?;
    if let Some(c) = &sol.caution {
        let _ = writeln!(stderr, "tridiag-spectra: caution: {c}");
    }
    let text = match a.out.format {
        Format::Json => json_text(&json!({
            "case": case.name(),
            "params": {"potential": case_json(&case), "l": a.case.ell, "E": energy, "lambda": lam, "n_max": a.n_max, "forward": a.forward},
            "results": sol,
            "meta": meta(json!({})),
        })),
        Format::Csv => {
            let mut s = String::from("n,f\n");
            for (n, f) in sol.values.iter().enumerate() {
                s.push_str(&format!("{n},{}\n", sig17(*f)));
            }
            s
        }
    };
    emit(&text, a.out.output.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn density_style(tag: CaseTag) -> Result<DeformedStyle, Failure> {
    match tag {
        CaseTag::Hulthen1 | CaseTag::Rosenmorse => Ok(DeformedStyle::Additive),
        CaseTag::Hulthen2 | CaseTag::Hulthen3 => Ok(DeformedStyle::Multiplicative),
        other => usage(format!("density needs a deformed Jacobi case (hulthen1, hulthen2, hulthen3, rosenmorse), got {}", other.name())),
    }
}

fn gamma_file_name(case: CaseTag, g: f64) -> String {
    format!("density_{}_gamma_{}.csv", case.name(), sig17(g))
}

fn density(a: DensityArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let style = density_style(a.case)?;
    if a.gamma.len() > 1 && a.format == Format::Csv && a.output.is_none() {
        return usage("several gamma values write one CSV each; pass --output <directory>");
    }
    let estimates: Vec<DensityEstimate> = parallel_map(&a.gamma, |&g| density_estimate(style, a.mu, a.nu, g, a.size, a.bandwidth))
        .into_iter()
        .collect::<crate::Result<_>>()?;
    match a.format {
        Format::Json => {
            let text = json_text(&json!({
                "case": a.case.name(),
                "params": {"style": style, "mu": a.mu, "nu": a.nu, "gamma": a.gamma, "N": a.size, "bandwidth": a.bandwidth},
                "results": estimates,
                "meta": meta(json!({"smoothing": "gaussian kernel, Silverman bandwidth unless given", "normalization": "unit trapezoidal mass"})),
            }));
            emit(&text, a.output.as_deref(), stdout)?;
        }
        Format::Csv if a.gamma.len() == 1 => emit(&estimates[0].to_csv(), a.output.as_deref(), stdout)?,
        Format::Csv => {
            let dir = a.output.as_deref().expect("checked above");
            std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            for (g, est) in a.gamma.iter().zip(&estimates) {
                emit(&est.to_csv(), Some(&dir.join(gamma_file_name(a.case, *g))), stdout)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Worker count: TRIDIAG_SPECTRA_THREADS if set to a positive integer,
/// otherwise the available parallelism.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Order-preserving map over scoped threads.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread_count().min(items.len()).max(1);
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// One line of a verification report.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Check {
    pub check: &'static str,
    pub report: OracleReport,
}

fn entry_checks(rep: &TridiagonalRep, case: &PotentialCase) -> crate::Result<Vec<Check>> {
    let size = rep.size;
    let scale = rep.max_entry().max(1.0);
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|n| (n..size).map(move |m| (n, m))).collect();
    let results = parallel_map(&pairs, |&(n, m)| {
        matrix_element(&rep.basis, case, rep.ell, n, m, rep.energy, KineticPath::Analytic, MATRIX_TOL).map(|q| (n, m, q))
    });
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        let (n, m, q) = r?;
        let base = OracleReport::new(format!("<{n}|H-E|{m}>"), q.value, q.error);
        if m > n + 1 {
            out.push(Check { check: "tridiagonal", report: base.against(0.0, 1e-8 * scale, 0.0) });
        } else {
            let want = rep.entry(n, m);
            out.push(Check { check: "entry", report: base.against(want, 1e-10 * scale, 1e-7) });
        }
    }
    Ok(out)
}

fn ladder_checks(case: &PotentialCase, ell: u32, n_max: usize, tol: f64) -> crate::Result<Vec<Check>> {
    let closed = closed_form_spectrum(case, ell, n_max)?;
    let mut out = Vec::new();
    if closed.kind == SpectrumKind::Energy && !closed.levels.is_empty() {
        let fd = fd_spectrum(case, ell, closed.levels.len(), (0.1 * tol).max(1e-9))?;
        for (c, f) in closed.levels.iter().zip(&fd.levels) {
            let r = OracleReport::new(format!("E_{} finite differences", c.n), f.value, f.error.unwrap_or(0.0));
            out.push(Check { check: "ladder", report: r.against(c.value, tol, 0.0) });
        }
    }
    for n in 0..n_max {
        let cond = diagonalization_conditions(case, ell, n)?;
        let Some(root) = cond.closed_form_root()? else { break };
        let r = cond.residuals(root);
        let size = 1.0 + root[0].abs() + root[1].abs() + (n * n) as f64;
        let worst = r[0].abs().max(r[1].abs());
        let rep = OracleReport::new(format!("conditions at n = {n} ({}, {})", cond.unknowns[0], cond.unknowns[1]), worst, 0.0);
        out.push(Check { check: "conditions", report: rep.against(0.0, 1e-12 * size, 0.0) });
    }
    Ok(out)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let case = a.case.build()?;
    let ell = a.case.ell;
    let energy = a.energy.unwrap_or_else(|| default_energy(&case, ell));
    let lam = a.case.basis_lambda(&case).or_else(|| match closed_form_spectrum(&case, ell, 1) {
        Ok(s) if matches!(case, PotentialCase::CoulombPlain { .. } | PotentialCase::Oscillator { .. }) => {
            Some(s.levels.first().and_then(|l| l.side).unwrap_or(1.0))
        }
        _ => None,
    });
    let rep = representation(&case, &RepRequest::new(ell, lam, energy, a.size))?;
    let mut checks = entry_checks(&rep, &case)?;
    checks.extend(ladder_checks(&case, ell, a.n_max, a.ladder_tol)?);
    let all_pass = checks.iter().all(|c| c.report.pass);
    let text = match a.out.format {
        Format::Json => json_text(&json!({
            "case": case.name(),
            "params": {"potential": case_json(&case), "l": ell, "E": rep.energy, "lambda": rep.lambda(), "N": a.size, "n_max": a.n_max},
            "results": {"pass": all_pass, "checks": checks},
            "meta": meta(json!({"matrix_tolerance": {"abs": MATRIX_TOL.abs, "rel": MATRIX_TOL.rel}, "ladder_tolerance": a.ladder_tol, "threads": thread_count()})),
        })),
        Format::Csv => {
            let mut s = String::from("check,quantity,computed,target,error,abs_tol,rel_tol,pass\n");
            for c in &checks {
                let r = &c.report;
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    c.check,
                    r.quantity.replace(',', ";"),
                    sig17(r.computed),
                    opt(r.target),
                    sig17(r.error),
                    sig17(r.abs_tol),
                    sig17(r.rel_tol),
                    r.pass
                ));
            }
            s
        }
    };
    emit(&text, a.out.output.as_deref(), stdout)?;
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}
