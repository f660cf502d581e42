//! Run configuration: defaults, then a `key=value` file, then flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use catlab_core::{CatSpec, ChannelSpec};
use clap::ValueEnum;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Evolve,
    PurityCurve,
    Sweep,
    OptimizeXi,
    OptimizeR,
    Figure1,
    Figure2,
    OracleCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Evolve => "evolve",
            Command::PurityCurve => "purity-curve",
            Command::Sweep => "sweep",
            Command::OptimizeXi => "optimize-xi",
            Command::OptimizeR => "optimize-r",
            Command::Figure1 => "figure1",
            Command::Figure2 => "figure2",
            Command::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    BetaAbs,
    Xi,
    R0,
    Phi0,
    Theta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::BetaAbs => "beta-abs",
            SweepParam::Xi => "xi",
            SweepParam::R0 => "r0",
            SweepParam::Phi0 => "phi0",
            SweepParam::Theta => "theta",
        }
    }

    pub fn apply(self, spec: CatSpec, value: f64) -> CatSpec {
        let mut spec = spec;
        match self {
            SweepParam::BetaAbs => spec.beta_abs = value,
            SweepParam::Xi => spec.xi = value,
            SweepParam::R0 => spec.r0 = value,
            SweepParam::Phi0 => spec.phi0 = value,
            SweepParam::Theta => spec.theta = value,
        }
        spec
    }
}

/// Partially specified configuration, as read from a file or from flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub command: Option<Command>,
    pub beta_abs: Option<f64>,
    pub xi: Option<f64>,
    pub r0: Option<f64>,
    pub phi0: Option<f64>,
    pub theta: Option<f64>,
    pub gamma: Option<f64>,
    pub n: Option<f64>,
    pub m1: Option<f64>,
    pub m2: Option<f64>,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
    pub out: Option<PathBuf>,
    pub oracle_resolution: Option<usize>,
    pub t_eval: Option<f64>,
    pub sweep_param: Option<SweepParam>,
    pub sweep_min: Option<f64>,
    pub sweep_max: Option<f64>,
}

impl Overrides {
    /// Fields set in `other` replace those set here.
    pub fn merge(self, other: Overrides) -> Overrides {
        Overrides {
            command: other.command.or(self.command),
            beta_abs: other.beta_abs.or(self.beta_abs),
            xi: other.xi.or(self.xi),
            r0: other.r0.or(self.r0),
            phi0: other.phi0.or(self.phi0),
            theta: other.theta.or(self.theta),
            gamma: other.gamma.or(self.gamma),
            n: other.n.or(self.n),
            m1: other.m1.or(self.m1),
            m2: other.m2.or(self.m2),
            t_max: other.t_max.or(self.t_max),
            samples: other.samples.or(self.samples),
            out: other.out.or(self.out),
            oracle_resolution: other.oracle_resolution.or(self.oracle_resolution),
            t_eval: other.t_eval.or(self.t_eval),
            sweep_param: other.sweep_param.or(self.sweep_param),
            sweep_min: other.sweep_min.or(self.sweep_min),
            sweep_max: other.sweep_max.or(self.sweep_max),
        }
    }

    /// Parse a `key=value` file. `#` starts a comment; keys accept `-` or `_`.
    pub fn parse_file(text: &str) -> Result<Overrides, CliError> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Validation(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let at = |e: String| CliError::Validation(format!("config line {}: {e}", lineno + 1));
            match key.as_str() {
                "command" => o.command = Some(parse_enum(value).map_err(at)?),
                "beta_abs" => o.beta_abs = Some(parse_num(&key, value).map_err(at)?),
                "xi" => o.xi = Some(parse_num(&key, value).map_err(at)?),
                "r0" => o.r0 = Some(parse_num(&key, value).map_err(at)?),
                "phi0" => o.phi0 = Some(parse_num(&key, value).map_err(at)?),
                "theta" => o.theta = Some(parse_num(&key, value).map_err(at)?),
                "gamma" => o.gamma = Some(parse_num(&key, value).map_err(at)?),
                "n" => o.n = Some(parse_num(&key, value).map_err(at)?),
                "m1" => o.m1 = Some(parse_num(&key, value).map_err(at)?),
                "m2" => o.m2 = Some(parse_num(&key, value).map_err(at)?),
                "t_max" => o.t_max = Some(parse_num(&key, value).map_err(at)?),
                "samples" => o.samples = Some(parse_num(&key, value).map_err(at)?),
                "out" => o.out = Some(PathBuf::from(value)),
                "oracle_resolution" => o.oracle_resolution = Some(parse_num(&key, value).map_err(at)?),
                "t_eval" => o.t_eval = Some(parse_num(&key, value).map_err(at)?),
                "sweep_param" => o.sweep_param = Some(parse_enum(value).map_err(at)?),
                "sweep_min" => o.sweep_min = Some(parse_num(&key, value).map_err(at)?),
                "sweep_max" => o.sweep_max = Some(parse_num(&key, value).map_err(at)?),
                _ => return Err(at(format!("unknown key '{key}'"))),
            }
        }
        Ok(o)
    }

    pub fn load(path: &Path) -> Result<Overrides, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Overrides::parse_file(&text)
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value '{value}' for {key}"))
}

fn parse_enum<T: ValueEnum>(value: &str) -> Result<T, String> {
    T::from_str(value, true).map_err(|_| format!("unknown value '{value}'"))
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub cat: CatSpec,
    pub channel: ChannelSpec,
    pub t_max: f64,
    pub samples: usize,
    pub out: PathBuf,
    pub oracle_resolution: usize,
    /// Evaluation time for scans and optimizers, in units of `1 / Gamma`.
    pub t_eval: Option<f64>,
    pub sweep_param: SweepParam,
    pub sweep_min: f64,
    pub sweep_max: f64,
}

impl RunConfig {
    pub const DEFAULT_BETA_ABS: f64 = 2.0;
    pub const DEFAULT_N: f64 = 0.5;
    pub const DEFAULT_T_MAX: f64 = 15.0;
    pub const DEFAULT_SAMPLES: usize = 200;
    pub const DEFAULT_ORACLE_RESOLUTION: usize = 512;

    pub fn resolve(o: Overrides) -> Result<RunConfig, CliError> {
        let command = o
            .command
            .ok_or_else(|| CliError::Validation("no command given (use --command)".into()))?;
        let cat = CatSpec::new(
            o.beta_abs.unwrap_or(Self::DEFAULT_BETA_ABS),
            o.xi.unwrap_or(0.0),
            o.r0.unwrap_or(0.0),
            o.phi0.unwrap_or(0.0),
            o.theta.unwrap_or(0.0),
        )?;
        let channel = ChannelSpec::new(
            o.gamma.unwrap_or(1.0),
            o.n.unwrap_or(Self::DEFAULT_N),
            o.m1.unwrap_or(0.0),
            o.m2.unwrap_or(0.0),
        )?;
        let t_max = o.t_max.unwrap_or(Self::DEFAULT_T_MAX);
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(CliError::Validation(format!("t_max = {t_max} must be > 0")));
        }
        let samples = o.samples.unwrap_or(Self::DEFAULT_SAMPLES);
        if samples < 4 {
            return Err(CliError::Validation(format!("samples = {samples} must be >= 4")));
        }
        if let Some(t) = o.t_eval {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Validation(format!("t_eval = {t} must be > 0")));
            }
        }
        let sweep_param = o.sweep_param.unwrap_or(SweepParam::Xi);
        let sweep_min = o.sweep_min.unwrap_or(0.0);
        let sweep_max = o.sweep_max.unwrap_or(std::f64::consts::PI);
        if !(sweep_min.is_finite() && sweep_max.is_finite() && sweep_min < sweep_max) {
            return Err(CliError::Validation(format!(
                "sweep range [{sweep_min}, {sweep_max}] is empty"
            )));
        }
        let out = o
            .out
            .unwrap_or_else(|| PathBuf::from(format!("{}.csv", command.name())));
        Ok(RunConfig {
            command,
            cat,
            channel,
            t_max,
            samples,
            out,
            oracle_resolution: o.oracle_resolution.unwrap_or(Self::DEFAULT_ORACLE_RESOLUTION),
            t_eval: o.t_eval,
            sweep_param,
            sweep_min,
            sweep_max,
        })
    }

    /// Resolved configuration as `key=value` lines, in file syntax.
    pub fn provenance(&self) -> String {
        let mut s = String::new();
        let c = &self.cat;
        let ch = &self.channel;
        let _ = writeln!(s, "command={}", self.command.name());
        let _ = writeln!(s, "beta_abs={}", c.beta_abs);
        let _ = writeln!(s, "xi={}", c.xi);
        let _ = writeln!(s, "r0={}", c.r0);
        let _ = writeln!(s, "phi0={}", c.phi0);
        let _ = writeln!(s, "theta={}", c.theta);
        let _ = writeln!(s, "gamma={}", ch.gamma);
        let _ = writeln!(s, "n={}", ch.n);
        let _ = writeln!(s, "m1={}", ch.m1);
        let _ = writeln!(s, "m2={}", ch.m2);
        let _ = writeln!(s, "t_max={}", self.t_max);
        let _ = writeln!(s, "samples={}", self.samples);
        let _ = writeln!(s, "oracle_resolution={}", self.oracle_resolution);
        if let Some(t) = self.t_eval {
            let _ = writeln!(s, "t_eval={t}");
        }
        if self.command == Command::Sweep {
            let _ = writeln!(s, "sweep_param={}", self.sweep_param.name());
            let _ = writeln!(s, "sweep_min={}", self.sweep_min);
            let _ = writeln!(s, "sweep_max={}", self.sweep_max);
        }
        s
    }
}
