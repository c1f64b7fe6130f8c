//! Command-line front end: flag parsing, CSV and JSON emission, and the
//! `verify` suite.

pub mod verify;

use crate::decay_rates::{
    classify, fit_rate, time_grid, two_sided_band, BandReport, Regime, BAND_CAP,
};
use crate::error::Error;
use crate::mode_dynamics::{diagnostics, energy_density, mode_solve, FD_STEP};
use crate::ode_oracle::{integrate_mode, IntegratorConfig};
use crate::profiles::ProfileKind;
use crate::radial_quadrature::{norm_series, NormKind, NormSeries, QuadSpec, Zone};
use crate::spectral_data::{DataSpec, RadialSpectrum};
use crate::symbol_core::{mult_weight, thresholds, FreqPoint};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

const CSV_HELP: &str = "\
CSV columns (one row per grid time, floats with 17 significant digits):
  t        time
  value    squared L2 norm on the Fourier side, omega_n * int |q|^2 r^(n-1) dr
  err_est  quadrature error estimate of value
  n        spatial dimension
  kind     integrand: u, u-phi1, u-phi2, u-phi, phi1 or phi2
  zone     all, low (r<=eta), mid (eta..delta), highmid (delta..sqrt(e-1)) or high

Data selectors: gaussian[:alpha=A,amplitude=B], zero_mass[:alpha=A],
log_tail:m=M,beta=B, zero. Grid times are t_k = 10*2^(k/2).";

const THRESHOLDS_HELP: &str = "\
CSV columns:
  name      delta0, delta, eta or r_unit (= sqrt(e-1))
  value     radial frequency
  residual  residual of the defining equation at value";

const MODE_HELP: &str = "\
CSV columns (one row):
  r, t                  radial frequency and time
  u_re, u_im            mode value
  ut_re, ut_im          its time derivative
  e0                    energy density E0
  e_mod                 modified energy E
  ode_residual          central-difference residual of the mode ODE, relative to 1+|u| (empty when t < 1e-4)
  dissipation_residual  |dE0/dt + |u_t|^2| (empty when t < 1e-4)
  oracle_rel_err        relative distance to the adaptive integrator on (u, u_t) (empty without --oracle)

Complex inputs accept forms like 1, -0.5, 1+2i.";

const RATES_HELP: &str = "\
JSON fields:
  n, l                 dimension and claimed data regularity
  data                 {u0, u1} data selectors
  regime               DiffusionLike, WaveLike, Both or UncoveredByPaper
  profile              phi1, phi2, phi or null
  theory_exponent      exponent of |u - profile| (L2 norm, not squared), null when uncovered
  fitted_slope         fitted exponent of |u - profile| (|u| when uncovered), L2 norm convention
  residual             max relative deviation of the samples from the fitted power law
  band                 {min, max, ratio} of t^(-theory_exponent)*|u - profile| over the window (null when uncovered)
  solution             {exponent_upper, fitted_slope, two_sided, band} for |u| itself; band is
                       {min, max, ratio, drift} of t^(n/4)|u| when two_sided, else null
  window               [t_min, t_max] of the fit
  slope_convention     always \"l2_norm\": slopes are half those of the squared series
  pass                 every asserted bound holds: fitted_slope <= theory_exponent + 0.1,
                       solution slope <= exponent_upper + 0.1 and, when two_sided,
                       solution band ratio <= 3 with no monotone drift";

const VERIFY_HELP: &str = "\
JSON-lines fields (one line per check):
  check_id   group.name; the group is the text before the dot
  status     PASS or FAIL
  observed   worst observed value (null if the computation failed)
  expected   the acceptance condition in words
  tolerance  tolerance attached to the condition
  seconds    wall time of the check's group, null unless --timings

Exit status 0 when every check passes, 1 otherwise.";

#[derive(Parser, Debug)]
#[command(
    name = "logdamp",
    version,
    about = "Decay-rate laboratory for u_tt + Lu + (I+L)^-1 u_t = 0, L = log(I - Delta)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print delta0, delta, eta and sqrt(e-1) with residuals.
    #[command(after_help = THRESHOLDS_HELP)]
    Thresholds(OutArgs),
    /// Evaluate one Fourier mode.
    #[command(after_help = MODE_HELP)]
    Mode(ModeArgs),
    /// Squared norm series of u.
    #[command(after_help = CSV_HELP)]
    Solve(SolveArgs),
    /// Squared norm series of u minus a profile.
    #[command(name = "profile-diff", after_help = CSV_HELP)]
    ProfileDiff(ProfileDiffArgs),
    /// Classify (n, l), fit decay exponents and report as JSON.
    #[command(after_help = RATES_HELP)]
    Rates(RatesArgs),
    /// Run the acceptance suite.
    #[command(after_help = VERIFY_HELP)]
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ModeArgs {
    /// Radial frequency |xi|.
    #[arg(long, allow_hyphen_values = true)]
    pub r: f64,
    /// Time.
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// Initial value u0 (complex).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub u0: Complex64,
    /// Initial velocity u1 (complex).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub u1: Complex64,
    /// Cross-check against the adaptive integrator.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    /// Spatial dimension.
    #[arg(long)]
    pub n: u32,
    /// Selector for u0.
    #[arg(long = "data-u0", default_value = "gaussian")]
    pub data_u0: String,
    /// Selector for u1.
    #[arg(long = "data-u1", default_value = "gaussian")]
    pub data_u1: String,
    /// One selector for both u0 and u1.
    #[arg(long, conflicts_with_all = ["data_u0", "data_u1"])]
    pub data: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// First grid index k.
    #[arg(long = "k-min", default_value_t = 0)]
    pub k_min: u32,
    /// Last grid index k (t up to 10*2^(k/2)).
    #[arg(long = "k-max", default_value_t = 19)]
    pub k_max: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ZoneArg {
    All,
    Low,
    Mid,
    Highmid,
    High,
}

impl From<ZoneArg> for Zone {
    fn from(z: ZoneArg) -> Zone {
        match z {
            ZoneArg::All => Zone::All,
            ZoneArg::Low => Zone::Low,
            ZoneArg::Mid => Zone::Mid,
            ZoneArg::Highmid => Zone::HighMid,
            ZoneArg::High => Zone::High,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Relative quadrature tolerance, in [1e-12, 1e-3].
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Frequency zone.
    #[arg(long, value_enum, default_value = "all")]
    pub zone: ZoneArg,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ProfileDiffArgs {
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Profile to subtract: phi1, phi2 or phi.
    #[arg(long)]
    pub profile: ProfileKind,
}

#[derive(Args, Debug, Clone)]
pub struct RatesArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Claimed regularity l of the data.
    #[arg(long)]
    pub l: f64,
    /// Relative quadrature tolerance, in [1e-12, 1e-3].
    #[arg(long, default_value_t = verify::RATE_TOL)]
    pub tol: f64,
    /// Start of the fit window.
    #[arg(long = "t-min", default_value_t = verify::RATE_WINDOW.0)]
    pub t_min: f64,
    /// End of the fit window.
    #[arg(long = "t-max", default_value_t = verify::RATE_WINDOW.1)]
    pub t_max: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Fill the seconds field (makes output time dependent).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum RunError {
    /// bad flags or values: exit 2
    Usage(String),
    /// a computation or check failed: exit 1
    Failed(String),
}

impl RunError {
    pub fn code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Failed(_) => 1,
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::Selector(_) => RunError::Usage(e.to_string()),
            other => RunError::Failed(other.to_string()),
        }
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Failed(format!("i/o: {e}"))
    }
}

/// Formats with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn open<'a>(out: &OutArgs, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, RunError> {
    Ok(match &out.output {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                RunError::Usage(format!("--output {}: {e}", p.display()))
            })?))
        }
        None => Box::new(stdout),
    })
}

impl DataArgs {
    pub fn specs(&self) -> Result<(DataSpec, DataSpec), RunError> {
        let (a, b) = match &self.data {
            Some(d) => (d.as_str(), d.as_str()),
            None => (self.data_u0.as_str(), self.data_u1.as_str()),
        };
        Ok((a.parse()?, b.parse()?))
    }

    pub fn spectrum(&self) -> Result<RadialSpectrum, RunError> {
        let (a, b) = self.specs()?;
        Ok(RadialSpectrum::from_specs(a, b, self.n)?)
    }
}

/// Writes a series in the documented CSV schema.
pub fn write_csv(w: &mut dyn Write, s: &NormSeries) -> io::Result<()> {
    writeln!(w, "t,value,err_est,n,kind,zone")?;
    for x in &s.samples {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt17(x.t),
            x.value.to_sci(),
            x.err.to_sci(),
            s.n,
            s.kind.label(),
            s.zone.label()
        )?;
    }
    Ok(())
}

fn series_cmd(a: &SolveArgs, kind: NormKind, stdout: &mut dyn Write) -> Result<(), RunError> {
    if a.grid.k_min > a.grid.k_max {
        return Err(RunError::Usage(format!(
            "--k-min {} exceeds --k-max {}",
            a.grid.k_min, a.grid.k_max
        )));
    }
    let d = a.data.spectrum()?;
    let spec = QuadSpec::new(a.data.n).with_tol(a.tol);
    spec.validate()?;
    let s = norm_series(
        &d,
        kind,
        a.zone.into(),
        &time_grid(a.grid.k_min..=a.grid.k_max),
        &spec,
    )?;
    let mut w = open(&a.out, stdout)?;
    write_csv(&mut *w, &s)?;
    w.flush()?;
    Ok(())
}

fn thresholds_cmd(o: &OutArgs, stdout: &mut dyn Write) -> Result<(), RunError> {
    let th = thresholds();
    let mut w = open(o, stdout)?;
    writeln!(w, "name,value,residual")?;
    let rows = [
        ("delta0", th.delta0),
        ("delta", th.delta),
        ("eta", th.eta),
        ("r_unit", th.r_unit),
    ];
    for ((name, v), res) in rows.iter().zip(th.residuals) {
        writeln!(w, "{name},{},{}", fmt17(*v), fmt17(res))?;
    }
    w.flush()?;
    Ok(())
}

fn mode_cmd(a: &ModeArgs, stdout: &mut dyn Write) -> Result<(), RunError> {
    let p = FreqPoint::new(a.r)?;
    let s = mode_solve(p, a.u0, a.u1, a.t)?;
    let e = energy_density(p, &s, mult_weight(p, thresholds()));
    let (ode, diss) = if a.t >= FD_STEP {
        let d = diagnostics(p, a.u0, a.u1, a.t)?;
        (fmt17(d.ode_residual), fmt17(d.dissipation_residual))
    } else {
        (String::new(), String::new())
    };
    let oracle = if a.oracle {
        let o = integrate_mode(p, a.u0, a.u1, a.t, IntegratorConfig::default())?;
        let diff = ((s.u - o.u).norm_sqr() + (s.v - o.v).norm_sqr()).sqrt();
        let size = (s.u.norm_sqr() + s.v.norm_sqr()).sqrt();
        fmt17(diff / size)
    } else {
        String::new()
    };
    let mut w = open(&a.out, stdout)?;
    writeln!(
        w,
        "r,t,u_re,u_im,ut_re,ut_im,e0,e_mod,ode_residual,dissipation_residual,oracle_rel_err"
    )?;
    let cells = [a.r, a.t, s.u.re, s.u.im, s.v.re, s.v.im, e.e0, e.e_mod].map(fmt17);
    writeln!(w, "{},{ode},{diss},{oracle}", cells.join(","))?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Band {
    min: f64,
    max: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct SolutionBand {
    min: f64,
    max: f64,
    ratio: f64,
    drift: bool,
}

#[derive(Serialize)]
struct Solution {
    exponent_upper: Option<f64>,
    fitted_slope: f64,
    two_sided: bool,
    band: Option<SolutionBand>,
}

#[derive(Serialize)]
struct DataPair {
    u0: String,
    u1: String,
}

#[derive(Serialize)]
struct RatesReport {
    n: u32,
    l: f64,
    data: DataPair,
    regime: Regime,
    profile: Option<String>,
    theory_exponent: Option<f64>,
    fitted_slope: f64,
    residual: f64,
    band: Option<Band>,
    solution: Solution,
    window: (f64, f64),
    slope_convention: &'static str,
    pass: bool,
}

/// Band of the squared series, reported on the norm scale.
fn norm_band(b: &BandReport) -> (f64, f64, f64) {
    (b.min.sqrt(), b.max.sqrt(), b.ratio.sqrt())
}

fn rates_cmd(a: &RatesArgs, stdout: &mut dyn Write) -> Result<(), RunError> {
    // l < 1 is labeled uncovered by classify, not rejected
    if !a.l.is_finite() {
        return Err(RunError::Usage(format!("--l must be finite, got {}", a.l)));
    }
    if !(a.t_min > 0.0 && a.t_min < a.t_max) {
        return Err(RunError::Usage(format!(
            "--t-min {} must be positive and below --t-max {}",
            a.t_min, a.t_max
        )));
    }
    let (s0, s1) = a.data.specs()?;
    let d = RadialSpectrum::from_specs(s0, s1, a.data.n)?;
    let rep = classify(a.data.n, a.l).with_masses(d.p0(), d.p1());
    let spec = QuadSpec::new(a.data.n).with_tol(a.tol);
    spec.validate()?;
    let window = (a.t_min, a.t_max);
    let grid: Vec<f64> = time_grid(0..=40)
        .into_iter()
        .filter(|&t| t >= a.t_min && t <= a.t_max)
        .collect();
    if grid.len() < 5 {
        return Err(RunError::Usage(format!(
            "window [{}, {}] holds {} grid times, need at least 5",
            a.t_min,
            a.t_max,
            grid.len()
        )));
    }
    let u = norm_series(&d, NormKind::U, Zone::All, &grid, &spec)?;
    let ufit = fit_rate(&u, window)?;
    let mut pass = true;
    let sol_band = if rep.two_sided {
        let e = rep
            .sol_exponent_upper
            .expect("two-sided implies an exponent");
        let b = two_sided_band(&u, 2.0 * e, window, BAND_CAP * BAND_CAP)?;
        let (min, max, ratio) = norm_band(&b);
        pass &= ratio <= BAND_CAP && !b.drift;
        Some(SolutionBand {
            min,
            max,
            ratio,
            drift: b.drift,
        })
    } else {
        None
    };
    if let Some(e) = rep.sol_exponent_upper {
        pass &= ufit.norm_slope() <= e + verify::SLOPE_SLACK;
    }
    let (fitted, residual, band) = match (rep.profile, rep.diff_exponent) {
        (Some(p), Some(e)) => {
            let s = norm_series(&d, NormKind::from_profile(p), Zone::All, &grid, &spec)?;
            let f = fit_rate(&s, window)?;
            pass &= f.norm_slope() <= e + verify::SLOPE_SLACK;
            let b = two_sided_band(&s, 2.0 * e, window, f64::INFINITY)?;
            let (min, max, ratio) = norm_band(&b);
            (f.norm_slope(), f.residual, Some(Band { min, max, ratio }))
        }
        _ => (ufit.norm_slope(), ufit.residual, None),
    };
    let out = RatesReport {
        n: a.data.n,
        l: a.l,
        data: DataPair {
            u0: s0.to_string(),
            u1: s1.to_string(),
        },
        regime: rep.regime,
        profile: rep.profile.map(|p| p.to_string()),
        theory_exponent: rep.diff_exponent,
        fitted_slope: fitted,
        residual,
        band,
        solution: Solution {
            exponent_upper: rep.sol_exponent_upper,
            fitted_slope: ufit.norm_slope(),
            two_sided: rep.two_sided,
            band: sol_band,
        },
        window,
        slope_convention: "l2_norm",
        pass,
    };
    let mut w = open(&a.out, stdout)?;
    serde_json::to_writer_pretty(&mut *w, &out).map_err(|e| RunError::Failed(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    if pass {
        Ok(())
    } else {
        Err(RunError::Failed("asserted bounds not met".into()))
    }
}

fn verify_cmd(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), RunError> {
    let mut w = open(&a.out, stdout)?;
    let res = verify::run_suite(&mut *w, a.timings)?;
    let failed: Vec<&str> = res
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.check_id.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(RunError::Failed(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

/// Executes a parsed command.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), RunError> {
    match &cli.cmd {
        Command::Thresholds(o) => thresholds_cmd(o, stdout),
        Command::Mode(a) => mode_cmd(a, stdout),
        Command::Solve(a) => series_cmd(a, NormKind::U, stdout),
        Command::ProfileDiff(a) => series_cmd(&a.solve, NormKind::from_profile(a.profile), stdout),
        Command::Rates(a) => rates_cmd(a, stdout),
        Command::Verify(a) => verify_cmd(a, stdout),
    }
}

/// Parses `argv` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let msg = match &e {
                RunError::Usage(m) | RunError::Failed(m) => m,
            };
            let _ = writeln!(stderr, "logdamp: {msg}");
            e.code()
        }
    }
}
