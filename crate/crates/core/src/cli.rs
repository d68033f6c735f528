//! Command-line front end.
//!
//! ```text
//! octupolar spectra  --params a0,b3,a2 | --polar rho,chi --alpha2 A
//! octupolar surfaces --grid RxC | --xsection CHI --n N   [--format csv|json]
//! octupolar algebra  --params a0,b3,a2 | --polar rho,chi --alpha2 A
//! ```
//!
//! Exit codes: 0 success, 2 rejected parameters, 3 numerical failure,
//! 4 I/O failure.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::Error;
use crate::octupolar::{admissible, build_tensor, polar_to_params, OctupolarParams, PolarPoint};
use crate::resultants::{
    ax2_system, build_macaulay, echar_fit, resultant_closed_form, ECHAR_DEGREE,
};
use crate::spectra::{count_maxima_of, z_eigenpairs, SolverConfig};
use crate::surfaces::{cross_section, sample_disk, SurfaceConfig, SurfaceSample};

pub const CSV_HEADER: &str = "alpha0,beta3,rho,chi,dome_alpha2,sepa_alpha2,flags";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "octupolar",
    version,
    about = "Spectra, resultants and phase surfaces of octupolar tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Z-eigenpairs, critical-point classes and the number of maxima.
    Spectra(PointArgs),
    /// Dome and separatrix heights over a polar grid or along a cross-section.
    Surfaces(SurfaceArgs),
    /// Resultant and E-characteristic polynomial.
    Algebra(PointArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Residual tolerance of the eigenpair solver.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Seed of the multistart lattice rotation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Cartesian parameters `alpha0,beta3,alpha2`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["polar", "alpha2"])]
    params: Option<String>,
    /// Polar disk coordinates `rho,chi`.
    #[arg(long, allow_hyphen_values = true, requires = "alpha2")]
    polar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha2: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    /// Grid size `RxC` (rho samples by chi samples).
    #[arg(long, conflicts_with = "xsection")]
    grid: Option<String>,
    /// Closed-form cross-section at this chi (`-pi/2` or `-pi/6`).
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    xsection: Option<String>,
    /// Number of rho samples on the cross-section.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parameter(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARAMETER,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_)
            | Error::Domain(_)
            | Error::Construction(_)
            | Error::NotOrthogonal { .. } => EXIT_PARAMETER,
            Error::Degenerate(_) | Error::Numerical(_) => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses an angle: decimal radians, or `[-][k*]pi[/m]`.
pub fn parse_angle(s: &str) -> Option<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().ok().filter(|d| *d != 0.0)?)),
        None => (body, None),
    };
    let k = match num.strip_suffix("pi")? {
        "" => 1.0,
        k => k.strip_suffix('*')?.parse::<f64>().ok()?,
    };
    let mut v = k * PI;
    if let Some(d) = den {
        v /= d;
    }
    Some(if neg { -v } else { v })
}

fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(Failure::parameter(format!(
            "{what} expects {n} comma-separated values"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::parameter(format!("invalid number `{p}` in {what}")))
        })
        .collect()
}

fn point_params(args: &PointArgs) -> Result<OctupolarParams, Failure> {
    let p = match (&args.params, &args.polar) {
        (Some(s), None) => {
            let v = parse_list(s, 3, "--params")?;
            OctupolarParams::new(v[0], v[1], v[2])
        }
        (None, Some(s)) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 2 {
                return Err(Failure::parameter("--polar expects rho,chi"));
            }
            let rho = parse_list(parts[0], 1, "--polar")?[0];
            let chi = parse_angle(parts[1])
                .ok_or_else(|| Failure::parameter(format!("invalid angle `{}`", parts[1])))?;
            let (a0, b3) = polar_to_params(&PolarPoint::new(rho, chi)?);
            OctupolarParams::new(a0, b3, args.alpha2.unwrap_or(f64::NAN))
        }
        _ => {
            return Err(Failure::parameter(
                "give exactly one of --params or --polar",
            ))
        }
    };
    if !(p.alpha2 >= 0.0) || !p.alpha2.is_finite() {
        return Err(Failure::parameter(format!(
            "alpha2 = {} must be a nonnegative number",
            p.alpha2
        )));
    }
    Ok(p)
}

fn solver_config(c: &Common) -> Result<SolverConfig, Failure> {
    if !(c.tol > 0.0) || !c.tol.is_finite() {
        return Err(Failure::parameter("--tol must be positive"));
    }
    Ok(SolverConfig {
        seed: c.seed,
        residual_tol: c.tol,
        ..SolverConfig::default()
    })
}

/// `%.{digits}g`: shortest of fixed and exponent notation, trailing zeros
/// removed.
pub fn format_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    }
}

/// A JSON number written with 17 significant digits; non-finite values
/// become `null`.
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(format_g(self.0, 17))
                .map_err(serde::ser::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Serialize)]
struct EigenpairOut {
    lambda: Num,
    x: [Num; 3],
    mu2: Num,
    mu3: Num,
    kind: &'static str,
}

#[derive(Serialize)]
struct SpectraSummary {
    max_lambda: Num,
    n_maxima: Option<usize>,
    degenerate: bool,
}

#[derive(Serialize)]
struct SpectraOut {
    eigenpairs: Vec<EigenpairOut>,
    summary: SpectraSummary,
}

#[derive(Serialize)]
struct AlgebraOut {
    resultant_closed_form: Num,
    resultant_macaulay: Option<Num>,
    macaulay_degenerate: bool,
    echar_coefficients: Vec<Num>,
    c0_check: Num,
}

#[derive(Serialize)]
struct SampleOut {
    alpha0: Num,
    beta3: Num,
    rho: Num,
    chi: Num,
    dome_alpha2: Option<Num>,
    sepa_alpha2: Option<Num>,
    flags: Vec<&'static str>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn require_json(c: &Common) -> Result<(), Failure> {
    match c.format {
        None | Some(Format::Json) => Ok(()),
        Some(Format::Csv) => Err(Failure::parameter("this command only writes json")),
    }
}

fn cmd_spectra(args: &PointArgs) -> Result<String, Failure> {
    require_json(&args.common)?;
    let p = point_params(args)?;
    if !admissible(p.alpha0, p.beta3).inside {
        return Err(Failure::parameter(format!(
            "({}, {}) is outside the admissible disk",
            p.alpha0, p.beta3
        )));
    }
    let cfg = solver_config(&args.common)?;
    let t = build_tensor(&p)?;
    let pairs = z_eigenpairs(&t, &cfg)?;
    let (n_maxima, degenerate) = match count_maxima_of(&t, &cfg) {
        Ok(n) => (Some(n), false),
        Err(Error::Degenerate(_)) => (None, true),
        Err(e) => return Err(e.into()),
    };
    let out = SpectraOut {
        summary: SpectraSummary {
            max_lambda: Num(pairs[0].lambda),
            n_maxima,
            degenerate,
        },
        eigenpairs: pairs
            .iter()
            .map(|e| EigenpairOut {
                lambda: Num(e.lambda),
                x: [Num(e.x[0]), Num(e.x[1]), Num(e.x[2])],
                mu2: Num(e.mu2),
                mu3: Num(e.mu3),
                kind: e.kind.as_str(),
            })
            .collect(),
    };
    Ok(to_json(&out))
}

fn cmd_algebra(args: &PointArgs) -> Result<String, Failure> {
    require_json(&args.common)?;
    let p = point_params(args)?;
    let res = resultant_closed_form(&p);
    let t = build_tensor(&p)?;
    let (resultant_macaulay, macaulay_degenerate) =
        match build_macaulay(&ax2_system(&t))?.determinant_ratio() {
            Ok(v) => (Some(Num(v)), false),
            Err(Error::Degenerate(_)) => (None, true),
            Err(e) => return Err(e.into()),
        };
    let fit = echar_fit(&p)?;
    let mut coeffs = fit.phi.coeffs().to_vec();
    coeffs.resize(ECHAR_DEGREE + 1, 0.0);
    let r2 = res * res;
    let c0_check = (fit.reduced.coeffs()[0] - r2).abs() / r2.max(1.0);
    let out = AlgebraOut {
        resultant_closed_form: Num(res),
        resultant_macaulay,
        macaulay_degenerate,
        echar_coefficients: coeffs.into_iter().map(Num).collect(),
        c0_check: Num(c0_check),
    };
    Ok(to_json(&out))
}

fn csv_field(v: Option<f64>) -> String {
    v.map(|x| format_g(x, 9)).unwrap_or_default()
}

fn render_samples(rows: &[SurfaceSample], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    format_g(r.alpha0, 9),
                    format_g(r.beta3, 9),
                    format_g(r.rho, 9),
                    format_g(r.chi, 9),
                    csv_field(r.dome_alpha2),
                    csv_field(r.sepa_alpha2),
                    r.flags.labels().join("|"),
                ));
            }
            s
        }
        Format::Json => to_json(
            &rows
                .iter()
                .map(|r| SampleOut {
                    alpha0: Num(r.alpha0),
                    beta3: Num(r.beta3),
                    rho: Num(r.rho),
                    chi: Num(r.chi),
                    dome_alpha2: r.dome_alpha2.map(Num),
                    sepa_alpha2: r.sepa_alpha2.map(Num),
                    flags: r.flags.labels(),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn cmd_surfaces(args: &SurfaceArgs) -> Result<String, Failure> {
    let format = args.common.format.unwrap_or(Format::Csv);
    let solver = solver_config(&args.common)?;
    let rows = match (&args.grid, &args.xsection) {
        (Some(g), None) => {
            let (r, c) = g
                .split_once(['x', 'X'])
                .and_then(|(r, c)| {
                    Some((
                        r.trim().parse::<usize>().ok()?,
                        c.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| Failure::parameter(format!("invalid grid `{g}`, expected RxC")))?;
            let cfg = SurfaceConfig {
                solver,
                ..SurfaceConfig::default()
            };
            sample_disk(r, c, &cfg)?
        }
        (None, Some(x)) => {
            let chi =
                parse_angle(x).ok_or_else(|| Failure::parameter(format!("invalid angle `{x}`")))?;
            let n = args.n.unwrap_or(0);
            if n < 2 {
                return Err(Failure::parameter("--n must be at least 2"));
            }
            (0..n)
                .map(|i| {
                    let rho = 0.5 * i as f64 / (n - 1) as f64;
                    let c = cross_section(chi, rho)?;
                    let (alpha0, beta3) = polar_to_params(&PolarPoint { rho, chi });
                    Ok(SurfaceSample {
                        alpha0,
                        beta3,
                        rho,
                        chi,
                        dome_alpha2: Some(c.dome),
                        sepa_alpha2: Some(c.sepa),
                        flags: Default::default(),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?
        }
        _ => {
            return Err(Failure::parameter(
                "give exactly one of --grid or --xsection",
            ))
        }
    };
    Ok(render_samples(&rows, format))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_PARAMETER
            } else {
                EXIT_OK
            };
        }
    };
    let (result, output) = match &cli.command {
        Command::Spectra(a) => (cmd_spectra(a), &a.common.output),
        Command::Algebra(a) => (cmd_algebra(a), &a.common.output),
        Command::Surfaces(a) => (cmd_surfaces(a), &a.common.output),
    };
    let text = match result {
        Ok(t) => t,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let written = match output {
        Some(path) => write_atomic(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}
