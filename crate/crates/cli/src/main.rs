//! `dualsym`: verification suites, classical Bateman simulations and spectrum
//! queries.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or config error,
//! 3 runtime or numerical failure.

mod config;
mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dualsym::classical::{self, canonical, Oscillator, PhaseState};
use dualsym::spectra::{self, Labels, Regime, SpectralSetup};
use dualsym::suites::{self, Suite, SuiteConfig, EIGEN_LIMIT};

use config::ConfigFile;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl From<dualsym::Error> for CliError {
    fn from(e: dualsym::Error) -> Self {
        use dualsym::Error as E;
        match e {
            E::InvalidParameters(_) | E::InvalidLabel(_) | E::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Under,
    Over,
    Critical,
}

impl std::str::FromStr for RegimeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <RegimeArg as ValueEnum>::from_str(s, true)
    }
}

#[derive(Parser, Debug)]
#[command(name = "dualsym", version, about = "Damped-oscillator symmetry algebras, Bateman dynamics and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Mass m [default: 1]
    #[arg(long, global = true)]
    mass: Option<f64>,
    /// Reduced Planck constant [default: 1]
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Damping rate gamma [default: 0.4]
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Undamped frequency omega [default: 1]
    #[arg(long, global = true, conflicts_with_all = ["omega_cap", "omega_tilde"])]
    omega: Option<f64>,
    /// Damped frequency Omega, so omega^2 = Omega^2 + gamma^2/4
    #[arg(long, global = true, conflicts_with = "omega_tilde")]
    omega_cap: Option<f64>,
    /// Overdamped rate Omega~, so omega^2 = gamma^2/4 - Omega~^2
    #[arg(long, global = true)]
    omega_tilde: Option<f64>,
    /// Integration tolerance [default: 1e-10]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for all random sampling [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Config file with [params], [run], [simulate] and [spectrum] sections
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named verification suite
    Verify {
        /// algebras, invariants, bateman-rep, canonical, spectra, appendix or all
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Integrate the classical Bateman system
    Simulate {
        /// Initial x [default: 1]
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Initial p_x [default: 0]
        #[arg(long = "p-x", allow_hyphen_values = true)]
        p_x: Option<f64>,
        /// Initial y [default: 0]
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        /// Initial p_y [default: 1]
        #[arg(long = "p-y", allow_hyphen_values = true)]
        p_y: Option<f64>,
        /// Final time [default: 10/gamma, or 20 without damping]
        #[arg(long)]
        t_end: Option<f64>,
        /// Start on the constraint surface with x'(0) = x0, p'_x(0) = m v0
        #[arg(long)]
        reduction: bool,
        /// Initial position for --reduction [default: 1]
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        /// Initial velocity for --reduction [default: 0]
        #[arg(long, allow_hyphen_values = true)]
        v0: Option<f64>,
        /// Write the JSON summary here; otherwise it goes to stderr
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Energies and eigen-relation residuals for quantum labels
    Spectrum {
        /// Regime; inferred from the frequency flags when absent
        #[arg(long, value_enum)]
        regime: Option<RegimeArg>,
        /// First label (n, n~ or k): comma list or integer range `a..b`
        #[arg(long, alias = "n", allow_hyphen_values = true)]
        first: Option<String>,
        /// lambda label: comma list or integer range `a..b`
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Random points per label pair
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: dualsym::Error| e.to_string())
}

/// `"-2..2"` or `"0.5,1,-3"`, or a mix such as `"-1..1,2.5"`.
fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("bad label list `{s}`"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some(i) = part.get(1..).and_then(|rest| rest.find("..")).map(|i| i + 1) {
            let a: i64 = part[..i].trim().parse().map_err(|_| bad())?;
            let b: i64 = part[i + 2..].trim().parse().map_err(|_| bad())?;
            if b < a {
                return Err(bad());
            }
            out.extend((a..=b).map(|v| v as f64));
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

struct Common {
    m: f64,
    hbar: f64,
    gamma: f64,
    omega: f64,
    omega_cap: Option<f64>,
    omega_tilde: Option<f64>,
    tol: f64,
    seed: u64,
    format: Option<Format>,
    out: Option<PathBuf>,
}

fn common(cli: &Cli, file: &ConfigFile) -> Result<Common, CliError> {
    let m = file.pick(cli.mass, "params", "mass", 1.0)?;
    let hbar = file.pick(cli.hbar, "params", "hbar", 1.0)?;
    let gamma = file.pick(cli.gamma, "params", "gamma", 0.4)?;
    let tol = file.pick(cli.tol, "run", "tol", 1e-10)?;
    let seed = file.pick(cli.seed, "run", "seed", 0)?;
    let format = file.pick_opt(cli.format, "run", "format")?;
    let out = file.pick_opt(cli.out.clone(), "run", "out")?;
    // a frequency given by flag overrides every frequency in the file
    let by_flag = cli.omega.is_some() || cli.omega_cap.is_some() || cli.omega_tilde.is_some();
    let (omega, omega_cap, omega_tilde) = if by_flag {
        (cli.omega, cli.omega_cap, cli.omega_tilde)
    } else {
        (file.get("params", "omega")?, file.get("params", "omega_cap")?, file.get("params", "omega_tilde")?)
    };
    if [omega, omega_cap, omega_tilde].iter().filter(|v| v.is_some()).count() > 1 {
        return Err(CliError::Usage("give only one of omega, omega_cap, omega_tilde".into()));
    }
    let omega = match (omega, omega_cap, omega_tilde) {
        (Some(w), _, _) => w,
        (_, Some(c), _) => (c * c + gamma * gamma / 4.0).sqrt(),
        (_, _, Some(t)) => {
            let sq = gamma * gamma / 4.0 - t * t;
            if sq < 0.0 {
                f64::NAN
            } else {
                sq.sqrt()
            }
        }
        _ => 1.0,
    };
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(Common { m, hbar, gamma, omega, omega_cap, omega_tilde, tol, seed, format, out })
}

fn emit(c: &Common, text: &str) -> Result<(), CliError> {
    match &c.out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Runtime(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = ConfigFile::load(cli.config.as_deref())?;
    let c = common(&cli, &file)?;
    match &cli.command {
        Command::Verify { suite } => {
            if !c.omega.is_finite() {
                return Err(CliError::Usage("omega_tilde exceeds gamma/2".into()));
            }
            let cfg = SuiteConfig { m: c.m, hbar: c.hbar, gamma: c.gamma, omega: c.omega, tol: c.tol, seed: c.seed };
            let report = suites::run(*suite, &cfg);
            emit(&c, &render::report(&report, c.format.unwrap_or(Format::Json))?)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Simulate { x, p_x, y, p_y, t_end, reduction, x0, v0, summary } => {
            let osc = Oscillator::new(c.m, c.gamma, c.omega)?;
            let default_end = if c.gamma > 0.0 { 10.0 / c.gamma } else { 20.0 };
            let t_end = file.pick(*t_end, "simulate", "t_end", default_end)?;
            let (traj, red) = if *reduction {
                let x0 = file.pick(*x0, "simulate", "x0", 1.0)?;
                let v0 = file.pick(*v0, "simulate", "v0", 0.0)?;
                let start = canonical::ck2bat(&osc, &PhaseState::new(x0, osc.m * v0, 0.0, 0.0, 0.0))?;
                let red = canonical::constrained_reduction_check(&osc, x0, v0, t_end, c.tol)?;
                (classical::integrate(&osc, &start, t_end, c.tol)?, Some(red))
            } else {
                let s0 = PhaseState::new(
                    file.pick(*x, "simulate", "x", 1.0)?,
                    file.pick(*p_x, "simulate", "p_x", 0.0)?,
                    file.pick(*y, "simulate", "y", 0.0)?,
                    file.pick(*p_y, "simulate", "p_y", 1.0)?,
                    0.0,
                );
                (classical::integrate(&osc, &s0, t_end, c.tol)?, None)
            };
            let mut sum = classical::summarize(&traj);
            sum.reduction = red;
            let format = c.format.unwrap_or(Format::Csv);
            let main = if format == Format::Csv {
                let mut buf = Vec::new();
                traj.write_csv(&mut buf).map_err(|e| CliError::Runtime(e.to_string()))?;
                String::from_utf8(buf).map_err(|e| CliError::Runtime(e.to_string()))?
            } else {
                render::summary(&sum, format)?
            };
            emit(&c, &main)?;
            let json = render::summary(&sum, Format::Json)?;
            match file.pick_opt(summary.clone(), "simulate", "summary")? {
                Some(p) => fs::write(&p, json)
                    .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display())))?,
                None if format == Format::Csv => eprint!("{json}"),
                None => {}
            }
            Ok(0)
        }
        Command::Spectrum { regime, first, lambda, samples } => {
            let regime = file.pick_opt(*regime, "spectrum", "regime")?;
            let setup = spectral_setup(&c, regime)?;
            let firsts = parse_list(&file.pick(first.clone(), "spectrum", "first", "0".to_string())?)?;
            let lambdas = parse_list(&file.pick(lambda.clone(), "spectrum", "lambda", "0".to_string())?)?;
            let samples = file.pick(*samples, "spectrum", "samples", 100)?;
            let mut rows = Vec::new();
            for (i, f) in firsts.iter().enumerate() {
                for (j, l) in lambdas.iter().enumerate() {
                    let seed = c.seed.wrapping_add((i * lambdas.len() + j) as u64);
                    rows.push(spectra::spectrum_row(&setup, Labels::new(*f, *l), samples, seed)?);
                }
            }
            emit(&c, &render::spectrum(&rows, c.format.unwrap_or(Format::Json))?)?;
            Ok(if rows.iter().all(|r| r.residual_max <= EIGEN_LIMIT) { 0 } else { 1 })
        }
    }
}

fn spectral_setup(c: &Common, regime: Option<RegimeArg>) -> Result<SpectralSetup, CliError> {
    let cap_sq = c.omega * c.omega - c.gamma * c.gamma / 4.0;
    let mismatch = |want: &str| CliError::Usage(format!("omega = {} with gamma = {} is not {want}damped", c.omega, c.gamma));
    let r = match regime {
        None => {
            if let Some(t) = c.omega_tilde {
                Regime::Over { omega_tilde: t }
            } else if let Some(w) = c.omega_cap {
                Regime::Under { omega_cap: w }
            } else {
                return Ok(SpectralSetup::from_omega(c.m, c.hbar, c.gamma, c.omega)?);
            }
        }
        Some(RegimeArg::Under) => match c.omega_cap {
            Some(w) => Regime::Under { omega_cap: w },
            None if cap_sq > 0.0 && c.omega_tilde.is_none() => Regime::Under { omega_cap: cap_sq.sqrt() },
            None => return Err(mismatch("under")),
        },
        Some(RegimeArg::Over) => match c.omega_tilde {
            Some(t) => Regime::Over { omega_tilde: t },
            None if cap_sq < 0.0 && c.omega_cap.is_none() => Regime::Over { omega_tilde: (-cap_sq).sqrt() },
            None => return Err(mismatch("over")),
        },
        Some(RegimeArg::Critical) => Regime::Critical,
    };
    Ok(SpectralSetup::new(c.m, c.hbar, c.gamma, r)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Runtime(m) => eprintln!("runtime error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_lists() {
        assert_eq!(parse_list("-2..2").unwrap(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(parse_list("0.5, -1").unwrap(), vec![0.5, -1.0]);
        assert_eq!(parse_list("-1..0,3").unwrap(), vec![-1.0, 0.0, 3.0]);
        assert!(parse_list("").is_err());
        assert!(parse_list("2..1").is_err());
        assert!(parse_list("a").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
