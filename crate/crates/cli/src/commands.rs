//! `eval` and `table`: operator values at one point or along a grid.

use std::io::Write;
use std::time::Instant;

use frabessel::fracbessel::{
    frac_derivative_with, riesz_b_potential_with_tol, DerivativeOptions, FracOrder, PotentialScheme,
};
use frabessel::hankel::{hankel_forward, HankelIndex};
use frabessel::oracles::{oracle_gaussian_potential, oracle_j_derivative_gamma2};
use frabessel::specfun::gamma_fn;
use frabessel::translation::{translate, translate_gaussian};
use frabessel::{Error, EvalResult, GammaWeight, TestFunction, TranslationMethod};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{FunctionName, MethodName, Operation, OutputFormat, RunConfig, SchemeName};
use crate::format::sig10;

pub const POTENTIAL_TOL: f64 = 1e-10;
pub const DERIVATIVE_TOL: f64 = 1e-6;
pub const TRANSLATION_TOL: f64 = 1e-10;
pub const LAGUERRE_ORDER: usize = 10;
pub const HANKEL_ORDER: usize = frabessel::hankel::DEFAULT_ORDER;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    SelftestFailure = 1,
    Domain = 2,
    Accuracy = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn of_error(e: &Error) -> Self {
        if e.is_domain() {
            Status::Domain
        } else {
            Status::Accuracy
        }
    }
}

type Oracle = Box<dyn Fn(f64) -> frabessel::Result<f64> + Send + Sync>;

/// A configuration with its function, weight and order already validated.
pub struct Prepared {
    cfg: RunConfig,
    f: TestFunction,
    gamma: GammaWeight,
    order: Option<FracOrder>,
    oracle: Option<Oracle>,
}

fn build_function(cfg: &RunConfig, gamma: GammaWeight) -> frabessel::Result<TestFunction> {
    match cfg.function {
        FunctionName::Gaussian => TestFunction::gaussian(cfg.param.unwrap_or(1.0)),
        FunctionName::One => Ok(TestFunction::constant(1.0)),
        FunctionName::Zero => Ok(TestFunction::zero()),
        FunctionName::Besselj => TestFunction::bessel_j(gamma.bessel_order().value(), cfg.param.unwrap_or(1.0)),
        // presence checked when the config was resolved
        FunctionName::Power => TestFunction::power(cfg.param.unwrap_or(0.0)),
    }
}

fn closed_form(cfg: &RunConfig) -> Option<Oracle> {
    let (a, g) = (cfg.alpha, cfg.gamma);
    let unit = cfg.param.unwrap_or(1.0) == 1.0;
    match (cfg.function, cfg.op) {
        (FunctionName::Zero, _) => Some(Box::new(|_| Ok(0.0))),
        (FunctionName::One, Operation::Translate) => Some(Box::new(|_| Ok(1.0))),
        (FunctionName::One, Operation::Derivative) => Some(Box::new(|_| Ok(0.0))),
        (FunctionName::Gaussian, Operation::NegPower) if unit => {
            Some(Box::new(move |x| oracle_gaussian_potential(x, a, g)))
        }
        (FunctionName::Gaussian, Operation::Translate) if unit => {
            let y = cfg.y;
            let w = GammaWeight::new(g).ok()?;
            Some(Box::new(move |x| translate_gaussian(x, y, w)))
        }
        (FunctionName::Gaussian, Operation::Hankel) if unit => {
            let c = gamma_fn(0.5 * (g + 1.0)).ok()? / 2.0;
            Some(Box::new(move |xi| Ok(c * (-xi * xi / 4.0).exp())))
        }
        (FunctionName::Besselj, Operation::Derivative) if unit && g == 2.0 => {
            Some(Box::new(move |x| oracle_j_derivative_gamma2(x, a)))
        }
        _ => None,
    }
}

impl Prepared {
    pub fn new(cfg: &RunConfig) -> frabessel::Result<Self> {
        let gamma = GammaWeight::new(cfg.gamma)?;
        let f = build_function(cfg, gamma)?;
        let order = match cfg.op {
            Operation::NegPower => Some(FracOrder::potential(cfg.alpha, gamma)?),
            Operation::Derivative => Some(FracOrder::derivative(cfg.alpha)?),
            Operation::Translate | Operation::Hankel => None,
        };
        if cfg.op == Operation::NegPower && cfg.scheme == SchemeName::Laguerre {
            PotentialScheme::gauss_laguerre(cfg.n.unwrap_or(LAGUERRE_ORDER))?;
        }
        if cfg.op == Operation::Hankel {
            HankelIndex::new(cfg.gamma)?;
        }
        Ok(Prepared {
            cfg: cfg.clone(),
            f,
            gamma,
            order,
            oracle: closed_form(cfg),
        })
    }

    pub fn has_oracle(&self) -> bool {
        self.oracle.is_some()
    }

    /// The operator value at x.
    pub fn eval(&self, x: f64) -> frabessel::Result<EvalResult> {
        let cfg = &self.cfg;
        match cfg.op {
            Operation::NegPower => {
                let scheme = match cfg.scheme {
                    SchemeName::Kernel => PotentialScheme::Kernel,
                    SchemeName::Translation => PotentialScheme::Translation,
                    SchemeName::Laguerre => PotentialScheme::gauss_laguerre(cfg.n.unwrap_or(LAGUERRE_ORDER))?,
                };
                let order = self.order.expect("potential order");
                riesz_b_potential_with_tol(&self.f, x, order, self.gamma, scheme, cfg.tol.unwrap_or(POTENTIAL_TOL))
            }
            Operation::Derivative => {
                let opts = DerivativeOptions {
                    tol: cfg.tol.unwrap_or(DERIVATIVE_TOL),
                    ..Default::default()
                };
                frac_derivative_with(&self.f, x, self.order.expect("derivative order"), self.gamma, &opts)
            }
            Operation::Translate => {
                let method = match cfg.method {
                    MethodName::Auto => TranslationMethod::ClosedFormAuto,
                    MethodName::Trig => TranslationMethod::Trig,
                    MethodName::UnitInterval => TranslationMethod::UnitInterval,
                    MethodName::Kernel => TranslationMethod::Kernel,
                };
                translate(
                    &self.f,
                    x,
                    cfg.y,
                    self.gamma,
                    method,
                    cfg.tol.unwrap_or(TRANSLATION_TOL),
                )
            }
            Operation::Hankel => {
                hankel_forward(&self.f, x, HankelIndex::new(cfg.gamma)?, cfg.n.unwrap_or(HANKEL_ORDER))
            }
        }
    }

    pub fn exact(&self, x: f64) -> Option<frabessel::Result<f64>> {
        self.oracle.as_ref().map(|o| o(x))
    }
}

/// One line of a table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub x: f64,
    pub numerical: Option<f64>,
    pub error_estimate: Option<f64>,
    pub method: Option<&'static str>,
    pub exact: Option<f64>,
    pub abs_error: Option<f64>,
    #[serde(skip)]
    pub failure: Option<Error>,
}

/// Rows in grid order, computed in parallel.
pub fn table_rows(p: &Prepared, xs: &[f64]) -> Vec<Row> {
    xs.par_iter()
        .map(|&x| {
            let (numerical, failure) = match p.eval(x) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e)),
            };
            let (exact, failure) = match p.exact(x) {
                Some(Ok(v)) => (Some(v), failure),
                Some(Err(e)) => (None, failure.or(Some(e))),
                None => (None, failure),
            };
            let abs_error = match (&numerical, exact) {
                (Some(r), Some(e)) => Some((r.value - e).abs()),
                _ => None,
            };
            Row {
                x,
                numerical: numerical.as_ref().map(|r| r.value),
                error_estimate: numerical.as_ref().map(|r| r.error),
                method: numerical.as_ref().map(|r| r.method),
                exact,
                abs_error,
                failure,
            }
        })
        .collect()
}

fn cell(v: Option<f64>) -> String {
    sig10(v.unwrap_or(f64::NAN))
}

/// CSV text of a table: `x,numerical` plus `exact,abs_error` when a closed
/// form covers the configuration.
pub fn table_csv(rows: &[Row], with_exact: bool) -> String {
    let mut out = String::from(if with_exact {
        "x,numerical,exact,abs_error\n"
    } else {
        "x,numerical\n"
    });
    for r in rows {
        out.push_str(&sig10(r.x));
        out.push(',');
        out.push_str(&cell(r.numerical));
        if with_exact {
            out.push(',');
            out.push_str(&cell(r.exact));
            out.push(',');
            out.push_str(&cell(r.abs_error));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct TableJson<'a> {
    config: &'a RunConfig,
    rows: &'a [Row],
}

#[derive(Serialize)]
struct EvalJson<'a> {
    config: &'a RunConfig,
    x: f64,
    value: f64,
    error: f64,
    method: &'static str,
    evaluations: usize,
    seconds: f64,
}

fn report(err: &mut dyn Write, e: &Error) -> Status {
    let _ = writeln!(err, "error: {e}");
    Status::of_error(e)
}

/// Evaluate at the single point `cfg.x` and print value, error estimate,
/// method and timing.
pub fn cmd_eval(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    let p = match Prepared::new(cfg) {
        Ok(p) => p,
        Err(e) => return report(err, &e),
    };
    let started = Instant::now();
    let r = match p.eval(cfg.x) {
        Ok(r) => r,
        Err(e) => return report(err, &e),
    };
    let seconds = started.elapsed().as_secs_f64();
    let written = match cfg.format {
        OutputFormat::Csv => writeln!(
            out,
            "x,value,error,method,seconds\n{},{},{},{},{seconds:.6}",
            sig10(cfg.x),
            sig10(r.value),
            sig10(r.error),
            r.method
        ),
        OutputFormat::Json => {
            let j = EvalJson {
                config: cfg,
                x: cfg.x,
                value: r.value,
                error: r.error,
                method: r.method,
                evaluations: r.evaluations,
                seconds,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serializable"))
        }
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return Status::Accuracy;
    }
    Status::Success
}

/// Evaluate along the grid and print one row per point. Failed rows carry
/// `nan` and make the run exit non-zero.
pub fn cmd_table(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    let Some(grid) = cfg.grid else {
        let _ = writeln!(err, "error: table needs a grid (start, step, count)");
        return Status::Domain;
    };
    let p = match Prepared::new(cfg) {
        Ok(p) => p,
        Err(e) => return report(err, &e),
    };
    let rows = table_rows(&p, &grid.points());
    let text = match cfg.format {
        OutputFormat::Csv => table_csv(&rows, p.has_oracle()),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&TableJson {
                config: cfg,
                rows: &rows,
            })
            .expect("serializable");
            s.push('\n');
            s
        }
    };
    if let Err(e) = out.write_all(text.as_bytes()) {
        let _ = writeln!(err, "error: {e}");
        return Status::Accuracy;
    }
    let mut status = Status::Success;
    for r in &rows {
        if let Some(e) = &r.failure {
            let _ = writeln!(err, "row x = {}: {e}", sig10(r.x));
            status = match (status, Status::of_error(e)) {
                (Status::Accuracy, _) | (_, Status::Accuracy) => Status::Accuracy,
                _ => Status::Domain,
            };
        }
    }
    status
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Grid;

    fn cfg(op: Operation, function: FunctionName) -> RunConfig {
        RunConfig {
            op,
            function,
            param: None,
            alpha: 0.7,
            gamma: 0.5,
            scheme: SchemeName::Kernel,
            n: None,
            method: MethodName::Auto,
            x: 0.2,
            y: 2.0,
            grid: None,
            tol: None,
            format: OutputFormat::Csv,
        }
    }

    fn run(c: &RunConfig, table: bool) -> (Status, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let s = if table {
            cmd_table(c, &mut out, &mut err)
        } else {
            cmd_eval(c, &mut out, &mut err)
        };
        (s, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_potential_point() {
        let mut c = cfg(Operation::NegPower, FunctionName::Gaussian);
        c.scheme = SchemeName::Laguerre;
        c.n = Some(10);
        let (s, out, _) = run(&c, false);
        assert_eq!(s, Status::Success);
        assert!(out.lines().nth(1).unwrap().starts_with("0.2000000000,6.0047675"));
    }

    #[test]
    fn eval_translation_of_one() {
        let mut c = cfg(Operation::Translate, FunctionName::One);
        c.x = 1.0;
        c.gamma = 1.5;
        let (s, out, _) = run(&c, false);
        assert_eq!(s, Status::Success);
        assert!(out.lines().nth(1).unwrap().starts_with("1.000000000,1.000000000,"));
    }

    #[test]
    fn domain_violation_exits_2() {
        let mut c = cfg(Operation::NegPower, FunctionName::Gaussian);
        c.alpha = 2.0;
        let (s, _, err) = run(&c, false);
        assert_eq!(s, Status::Domain);
        assert!(err.contains("alpha < (gamma+1)/2"), "{err}");
    }

    #[test]
    fn zero_table_single_row() {
        let mut c = cfg(Operation::NegPower, FunctionName::Zero);
        c.grid = Some(Grid {
            start: 0.5,
            step: 0.1,
            count: 1,
        });
        let (s, out, _) = run(&c, true);
        assert_eq!(s, Status::Success);
        assert_eq!(
            out,
            "x,numerical,exact,abs_error\n0.5000000000,0.000000000,0.000000000,0.000000000\n"
        );
    }

    #[test]
    fn failing_rows_are_nan() {
        let mut c = cfg(Operation::Hankel, FunctionName::Gaussian);
        c.grid = Some(Grid {
            start: 0.5,
            step: -1.0,
            count: 2,
        });
        let (s, out, err) = run(&c, true);
        assert_eq!(s, Status::Domain);
        assert!(out.lines().nth(2).unwrap().starts_with("-0.5000000000,nan"), "{out}");
        assert!(err.contains("row x = -0.5"));
    }

    #[test]
    fn json_table() {
        let mut c = cfg(Operation::Hankel, FunctionName::Gaussian);
        c.grid = Some(Grid {
            start: 0.0,
            step: 1.0,
            count: 2,
        });
        c.format = OutputFormat::Json;
        let (s, out, _) = run(&c, true);
        assert_eq!(s, Status::Success);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        assert_eq!(v["config"]["op"], "hankel");
    }
}
