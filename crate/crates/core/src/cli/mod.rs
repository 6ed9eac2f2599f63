//! Command-line front end.
//!
//! Exit codes: 0 certified (strict or not), 1 conditional, 2 hypothesis
//! failure, 3 configuration or input error.

pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certifier::{certify_theorem, check_ineq_1_2, enumerate_candidates, ModeRequest};
use crate::chern::{euler_characteristic, is_integral, ChernVector};
use crate::config::GeometryConfig;
use crate::error::Error;
use crate::geometry::{
    castelnuovo_range, check_h_assumption, check_h_assumption_even, h_threshold,
    h_threshold_even, CurveBound, PolarizedCY3, Preset,
};
use crate::rational::Rational;
use crate::stability::{bg_discriminant, bg_ok, slope_mu, tilt_slope_nu};

use report::{EvalOp, EvalReport, GeomReport, ThresholdCheck};

pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bgcert", version)]
#[command(about = "Exact Chern-character arithmetic and inequality certificates for Calabi-Yau threefolds")]
pub struct Cli {
    #[command(flatten)]
    pub geometry: GeometryArgs,

    /// Emit JSON instead of the human-readable report
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Built-in geometry: quintic, ci24 or ci223
    #[arg(long, global = true, value_parser = parse_preset)]
    pub preset: Option<Preset>,

    /// H^3 of a custom geometry
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d: Option<i64>,

    /// c2(X).H of a custom geometry
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c2h: Option<i64>,

    /// dim|H|; checked against Riemann-Roch
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub dimh: Option<i64>,

    /// Assert that the curve inequality is known for the custom geometry
    #[arg(long, global = true)]
    pub castelnuovo_known: bool,

    /// Geometry config file (JSON or key = value); flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the numerical invariants and hypothesis status of a geometry
    Geom,
    /// List admissible (rank, c2.H) pairs for c1 = H
    Enumerate,
    /// Replay the case analysis and emit a certificate
    Certify {
        /// Measured curve bound beta:chi_min (repeatable)
        #[arg(long = "curve-bound", allow_hyphen_values = true)]
        curve_bounds: Vec<CurveBound>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
    },
    /// Evaluate a single quantity on a Chern vector
    Eval {
        #[arg(long, value_enum)]
        op: EvalOp,
        /// ch0,c1,ch2H,ch3 with p/q rationals
        #[arg(long, allow_hyphen_values = true)]
        ch: ChernVector,
        /// Tilt parameter for --op nu
        #[arg(long, allow_hyphen_values = true)]
        t: Option<Rational>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Full,
    Even,
}

impl From<ModeArg> for ModeRequest {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => ModeRequest::Auto,
            ModeArg::Full => ModeRequest::Full,
            ModeArg::Even => ModeRequest::Even,
        }
    }
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_CONFIG,
        }
    }
}

impl GeometryArgs {
    fn resolve(&self) -> Result<(Option<Preset>, PolarizedCY3), Error> {
        self.to_config()?.resolve()
    }

    fn to_config(&self) -> Result<GeometryConfig, Error> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::config("config", format!("cannot read {}: {e}", path.display()))
                })?;
                GeometryConfig::parse(&text)?
            }
            None => GeometryConfig::default(),
        };
        let flags = GeometryConfig {
            preset: self.preset,
            d: self.d,
            c2h: self.c2h,
            dimh: self.dimh,
            castelnuovo_known: self.castelnuovo_known.then_some(true),
        };
        Ok(file.overlay(&flags))
    }
}

fn emit<T: Serialize>(value: &T, json: bool, human: impl FnOnce(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        s
    } else {
        human(value)
    }
}

pub fn geom_report(preset: Option<Preset>, geom: &PolarizedCY3) -> GeomReport {
    GeomReport {
        preset,
        geometry: geom.clone(),
        chi_oh: geom.chi_oh(),
        chi_ox: euler_characteristic(geom, &ChernVector::structure_sheaf()),
        full_hypothesis: ThresholdCheck {
            threshold: h_threshold(geom.degree()),
            holds: check_h_assumption(geom),
        },
        even_hypothesis: check_h_assumption_even(geom).ok().map(|holds| ThresholdCheck {
            threshold: h_threshold_even(geom.degree()),
            holds,
        }),
        castelnuovo_range: castelnuovo_range(geom),
    }
}

pub fn eval_report(
    geom: Option<&PolarizedCY3>,
    op: EvalOp,
    ch: &ChernVector,
    t: Option<&Rational>,
) -> Result<EvalReport, Error> {
    let need_geom = || geom.ok_or_else(|| Error::config("preset", "this --op needs a geometry"));
    let mut report = EvalReport {
        op,
        ch: ch.clone(),
        t: None,
        value: Rational::zero().into(),
        rhs: None,
        holds: None,
        equality: None,
        integral: None,
    };
    match op {
        EvalOp::Chi => {
            let g = need_geom()?;
            report.value = euler_characteristic(g, ch).into();
            report.integral = Some(is_integral(g, ch));
        }
        EvalOp::Mu => report.value = slope_mu(need_geom()?, ch)?,
        EvalOp::Nu => {
            let t = t.ok_or_else(|| Error::config("t", "--op nu needs --t"))?;
            report.value = tilt_slope_nu(need_geom()?, ch, t)?;
            report.t = Some(t.clone());
        }
        EvalOp::Bg => {
            let g = need_geom()?;
            report.value = bg_discriminant(g, ch).into();
            report.holds = Some(bg_ok(g, ch));
        }
        EvalOp::Ineq12 => {
            let check = check_ineq_1_2(ch)?;
            report.value = check.lhs.into();
            report.rhs = Some(check.rhs);
            report.holds = Some(check.holds);
            report.equality = Some(check.equality);
        }
    }
    Ok(report)
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    match &cli.command {
        Command::Geom => {
            let (preset, geom) = cli.geometry.resolve()?;
            let r = geom_report(preset, &geom);
            Ok(Outcome::ok(emit(&r, json, report::render_geom), 0))
        }
        Command::Enumerate => {
            let (_, geom) = cli.geometry.resolve()?;
            let candidates = enumerate_candidates(&geom);
            Ok(Outcome::ok(
                emit(&candidates, json, |c| report::render_candidates(c)),
                0,
            ))
        }
        Command::Certify { curve_bounds, mode } => {
            let (_, geom) = cli.geometry.resolve()?;
            let bounds = (!curve_bounds.is_empty()).then_some(curve_bounds.as_slice());
            let cert = certify_theorem(&geom, bounds, (*mode).into())?;
            let code = cert.verdict.exit_code();
            Ok(Outcome::ok(emit(&cert, json, report::render_certificate), code))
        }
        Command::Eval { op, ch, t } => {
            let config = cli.geometry.to_config()?;
            let geom = if config.is_empty() {
                None
            } else {
                Some(config.resolve()?.1)
            };
            let r = eval_report(geom.as_ref(), *op, ch, t.as_ref())?;
            Ok(Outcome::ok(emit(&r, json, report::render_eval), 0))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            } else {
                Outcome::ok(rendered, code)
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(&e),
    }
}
