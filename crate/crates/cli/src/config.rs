//! Run configuration: command-line flags over an optional key=value file over
//! the FRABESSEL_TOL environment variable over built-in defaults.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub const TOL_ENV: &str = "FRABESSEL_TOL";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file {path}: {reason}")]
    File { path: String, reason: String },
    #[error("invalid value {value:?} for {key}: {reason}")]
    Value { key: String, value: String, reason: String },
    #[error("missing required setting: {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    /// Riesz B-potential (B_γ)^{−α} f
    NegPower,
    /// Bessel–Riesz derivative (B_γ)^α f
    Derivative,
    /// generalized translation ^γT^y_x f
    Translate,
    /// forward Hankel transform H_γ f at ξ = x
    Hankel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionName {
    /// e^{−p x²}, p = --param (default 1)
    Gaussian,
    /// f ≡ 1
    One,
    /// f ≡ 0
    Zero,
    /// j_{(γ−1)/2}(p x), p = --param (default 1)
    Besselj,
    /// x^p, p = --param (required)
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeName {
    Kernel,
    Translation,
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodName {
    Auto,
    Trig,
    UnitInterval,
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// x_i = start + i·step, i = 0..count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub op: Operation,
    pub function: FunctionName,
    pub param: Option<f64>,
    pub alpha: f64,
    pub gamma: f64,
    pub scheme: SchemeName,
    /// quadrature order; each operation has its own default
    pub n: Option<usize>,
    pub method: MethodName,
    pub x: f64,
    pub y: f64,
    pub grid: Option<Grid>,
    /// tolerance; each operation has its own default
    pub tol: Option<f64>,
    pub format: OutputFormat,
}

/// Flags shared by `eval` and `table`; every one may also come from the
/// config file under the same name (without dashes).
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// key=value config file
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    /// operation to evaluate
    #[arg(long, value_enum)]
    pub op: Option<Operation>,
    /// test function f (default gaussian)
    #[arg(long = "f", value_enum)]
    pub function: Option<FunctionName>,
    /// parameter of the test function
    #[arg(long, allow_negative_numbers = true)]
    pub param: Option<f64>,
    /// fractional order α (default 0 for translate and hankel)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Bessel operator parameter γ ≥ 0
    #[arg(long)]
    pub gamma: Option<f64>,
    /// potential scheme (default kernel)
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeName>,
    /// Gauss–Laguerre order
    #[arg(long)]
    pub n: Option<usize>,
    /// translation representation
    #[arg(long, value_enum)]
    pub method: Option<MethodName>,
    /// evaluation point (eval)
    #[arg(long)]
    pub x: Option<f64>,
    /// translation shift (translate)
    #[arg(long)]
    pub y: Option<f64>,
    /// first grid point (table)
    #[arg(long)]
    pub start: Option<f64>,
    /// grid spacing (table)
    #[arg(long)]
    pub step: Option<f64>,
    /// number of grid points (table)
    #[arg(long)]
    pub count: Option<usize>,
    /// absolute tolerance (env FRABESSEL_TOL)
    #[arg(long)]
    pub tol: Option<f64>,
    /// output format (default csv)
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

/// Parsed key=value lines; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile(HashMap<String, String>);

const KEYS: &[&str] = &[
    "op", "f", "param", "alpha", "gamma", "scheme", "n", "method", "x", "y", "start", "step", "count", "tol", "format",
];

impl ConfigFile {
    pub fn parse(path: &str, text: &str) -> Result<Self, ConfigError> {
        let mut map = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: String| ConfigError::File {
                path: path.to_string(),
                reason: format!("line {}: {reason}", i + 1),
            };
            let (k, v) = line.split_once('=').ok_or_else(|| bad("expected key=value".into()))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(bad(format!("unknown key {k:?}")));
            }
            map.insert(k.to_string(), v.trim().to_string());
        }
        Ok(ConfigFile(map))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&path.display().to_string(), &text)
    }

    fn number<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.0
            .get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| ConfigError::Value {
                    key: key.to_string(),
                    value: v.clone(),
                    reason: e.to_string(),
                })
            })
            .transpose()
    }

    fn choice<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        self.0
            .get(key)
            .map(|v| {
                T::from_str(v, true).map_err(|reason| ConfigError::Value {
                    key: key.to_string(),
                    value: v.clone(),
                    reason,
                })
            })
            .transpose()
    }
}

fn env_tol(env: Option<&str>) -> Result<Option<f64>, ConfigError> {
    env.map(|v| {
        v.trim().parse::<f64>().map_err(|e| ConfigError::Value {
            key: TOL_ENV.to_string(),
            value: v.to_string(),
            reason: e.to_string(),
        })
    })
    .transpose()
}

impl RunConfig {
    /// Resolve flags, then the config file named by `--config`, then the
    /// environment tolerance, then defaults. `needs_grid` demands a complete
    /// grid; otherwise a point `x` is required.
    pub fn resolve(args: &ConfigArgs, needs_grid: bool) -> Result<Self, ConfigError> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let env = std::env::var(TOL_ENV).ok();
        Self::resolve_with(args, &file, env.as_deref(), needs_grid)
    }

    pub fn resolve_with(
        args: &ConfigArgs,
        file: &ConfigFile,
        env: Option<&str>,
        needs_grid: bool,
    ) -> Result<Self, ConfigError> {
        let op = args.op.or(file.choice("op")?).ok_or(ConfigError::Missing("op"))?;
        let function = args.function.or(file.choice("f")?).unwrap_or(FunctionName::Gaussian);
        let param = args.param.or(file.number("param")?);
        let gamma = args
            .gamma
            .or(file.number("gamma")?)
            .ok_or(ConfigError::Missing("gamma"))?;
        let alpha = match args.alpha.or(file.number("alpha")?) {
            Some(a) => a,
            None if matches!(op, Operation::Translate | Operation::Hankel) => 0.0,
            None => return Err(ConfigError::Missing("alpha")),
        };
        let scheme = args.scheme.or(file.choice("scheme")?).unwrap_or(SchemeName::Kernel);
        let n = args.n.or(file.number("n")?);
        let method = args.method.or(file.choice("method")?).unwrap_or(MethodName::Auto);
        let tol = match args.tol.or(file.number("tol")?) {
            Some(t) => Some(t),
            None => env_tol(env)?,
        };
        let format = args.format.or(file.choice("format")?).unwrap_or(OutputFormat::Csv);
        let y = args.y.or(file.number("y")?);
        if op == Operation::Translate && y.is_none() {
            return Err(ConfigError::Missing("y"));
        }
        let x = args.x.or(file.number("x")?);
        let start = args.start.or(file.number("start")?);
        let step = args.step.or(file.number("step")?);
        let count = args.count.or(file.number("count")?);
        let grid = match (start, step, count) {
            (Some(start), step, count) => Some(Grid {
                start,
                step: step.unwrap_or(0.0),
                count: count.unwrap_or(1),
            }),
            (None, None, None) => None,
            _ => return Err(ConfigError::Missing("start")),
        };
        if needs_grid && grid.is_none() {
            return Err(ConfigError::Missing("start"));
        }
        if !needs_grid && x.is_none() {
            return Err(ConfigError::Missing("x"));
        }
        let cfg = RunConfig {
            op,
            function,
            param,
            alpha,
            gamma,
            scheme,
            n,
            method,
            x: x.unwrap_or(0.0),
            y: y.unwrap_or(0.0),
            grid,
            tol,
            format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if let Some(g) = self.grid {
            if g.count == 0 {
                return Err(ConfigError::Invalid("grid count must be >= 1".into()));
            }
            if !g.start.is_finite() || !g.step.is_finite() {
                return Err(ConfigError::Invalid("grid start and step must be finite".into()));
            }
        }
        if let Some(t) = self.tol {
            if t.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !t.is_finite() {
                return Err(ConfigError::Invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.n == Some(0) {
            return Err(ConfigError::Invalid("quadrature order must be >= 1".into()));
        }
        if self.function == FunctionName::Power && self.param.is_none() {
            return Err(ConfigError::Missing("param (power exponent)"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ConfigArgs {
        ConfigArgs {
            op: Some(Operation::NegPower),
            alpha: Some(0.7),
            gamma: Some(0.5),
            x: Some(0.2),
            ..Default::default()
        }
    }

    #[test]
    fn precedence_flag_file_env_default() {
        let file = ConfigFile::parse("c", "tol = 1e-6\nn=12 # comment\n").unwrap();
        let mut args = base();
        let cfg = RunConfig::resolve_with(&args, &ConfigFile::default(), None, false).unwrap();
        assert_eq!(cfg.tol, None);
        let cfg = RunConfig::resolve_with(&args, &ConfigFile::default(), Some("1e-7"), false).unwrap();
        assert_eq!(cfg.tol, Some(1e-7));
        let cfg = RunConfig::resolve_with(&args, &file, Some("1e-7"), false).unwrap();
        assert_eq!((cfg.tol, cfg.n), (Some(1e-6), Some(12)));
        args.tol = Some(1e-5);
        let cfg = RunConfig::resolve_with(&args, &file, Some("1e-7"), false).unwrap();
        assert_eq!(cfg.tol, Some(1e-5));
    }

    #[test]
    fn file_choices_and_errors() {
        let file = ConfigFile::parse("c", "op=derivative\nf=besselj\nstart=0.01\nstep=0.29\ncount=34\n").unwrap();
        let args = ConfigArgs {
            alpha: Some(0.2),
            gamma: Some(2.0),
            ..Default::default()
        };
        let cfg = RunConfig::resolve_with(&args, &file, None, true).unwrap();
        assert_eq!(cfg.op, Operation::Derivative);
        assert_eq!(cfg.grid.unwrap().points().len(), 34);
        assert!(ConfigFile::parse("c", "bogus=1\n").is_err());
        assert!(ConfigFile::parse("c", "alpha\n").is_err());
        let bad = ConfigFile::parse("c", "alpha=abc\n").unwrap();
        assert!(RunConfig::resolve_with(&ConfigArgs { alpha: None, ..base() }, &bad, None, false).is_err());
        assert!(RunConfig::resolve_with(&base(), &ConfigFile::default(), Some("x"), false).is_err());
    }

    #[test]
    fn grid_rules() {
        let mut args = base();
        args.start = Some(0.0);
        args.count = Some(0);
        assert!(RunConfig::resolve_with(&args, &ConfigFile::default(), None, true).is_err());
        args.count = None;
        args.start = None;
        assert!(RunConfig::resolve_with(&args, &ConfigFile::default(), None, true).is_err());
    }
}
