//! Property suites run by `frabessel selftest`, one per library module.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use frabessel::fracbessel::{
    frac_derivative, frac_derivative_with, norm_const_d, riesz_b_potential, riesz_b_potential_with_tol,
    riesz_classical, DerivativeOptions, DiffOrder, FracOrder, PotentialScheme,
};
use frabessel::function::finite_difference_bessel;
use frabessel::golden::{
    format_general, GoldenTable, EXAMPLE1_CSV, EXAMPLE1_EXACT_WIDTH, EXAMPLE1_NAME, EXAMPLE2_CSV, EXAMPLE2_EXACT_WIDTH,
    EXAMPLE2_NAME,
};
use frabessel::hankel::{hankel_forward, hankel_inverse, spectral_potential, HankelIndex};
use frabessel::oracles::{j_derivative_coefficient, oracle_gaussian_potential, oracle_j_derivative_gamma2};
use frabessel::quadrature::{
    gauss_laguerre_rule, integrate_finite, integrate_half_line, integrate_laguerre, EndpointExponents,
};
use frabessel::specfun::{
    gamma_fn, gauss_2f1, gauss_2f1_euler, gauss_2f1_series, kummer_1f1, laguerre_poly, normalized_bessel_j,
    BesselOrder, HyperParams,
};
use frabessel::translation::translate;
use frabessel::{Decay, GammaWeight, TestFunction, TranslationMethod};

use crate::commands::{cmd_table, Status};
use crate::config::{FunctionName, Grid, MethodName, Operation, OutputFormat, RunConfig, SchemeName};

pub const SUITES: &[&str] = &[
    "specfun",
    "quadrature",
    "translation",
    "hankel",
    "fracbessel",
    "oracles",
    "golden",
    "cli",
];

/// Outcome of one named assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub failure: Option<String>,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            failure: None,
        }
    }

    fn fail(name: impl Into<String>, why: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            failure: Some(why.into()),
        }
    }

    fn of(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Check::pass(name),
            Err(e) => Check::fail(name, e),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failure.is_some())
    }
}

/// Where the golden tables are read from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum GoldenSource {
    #[default]
    Embedded,
    Dir(PathBuf),
}

impl GoldenSource {
    pub fn load(&self, name: &str) -> Result<(GoldenTable, String), String> {
        let text = match self {
            GoldenSource::Embedded => match name {
                EXAMPLE1_NAME => EXAMPLE1_CSV.to_string(),
                EXAMPLE2_NAME => EXAMPLE2_CSV.to_string(),
                _ => return Err(format!("{name}: no such golden table")),
            },
            GoldenSource::Dir(d) => {
                let p = d.join(name);
                std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?
            }
        };
        let t = GoldenTable::parse(name, &text).map_err(|e| e.to_string())?;
        Ok((t, text))
    }
}

type R = Result<(), String>;

fn within(what: &str, got: f64, want: f64, tol: f64) -> R {
    let d = (got - want).abs();
    if d <= tol {
        Ok(())
    } else {
        Err(format!("{what}: got {got:e}, want {want:e}, |diff| {d:.3e} > {tol:e}"))
    }
}

fn within_rel(what: &str, got: f64, want: f64, tol: f64) -> R {
    within(what, got, want, tol * want.abs())
}

fn ok<T>(what: &str, r: frabessel::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn weight(g: f64) -> GammaWeight {
    GammaWeight::new(g).expect("valid gamma")
}

fn gaussian() -> TestFunction {
    TestFunction::gaussian(1.0).expect("unit Gaussian")
}

pub fn run_suite(name: &str, golden: &GoldenSource) -> Option<SuiteReport> {
    let (suite, checks) = match name {
        "specfun" => ("specfun", specfun()),
        "quadrature" => ("quadrature", quadrature()),
        "translation" => ("translation", translation()),
        "hankel" => ("hankel", hankel()),
        "fracbessel" => ("fracbessel", fracbessel()),
        "oracles" => ("oracles", oracles(golden)),
        "golden" => ("golden", golden_tables(golden)),
        "cli" => ("cli", cli()),
        _ => return None,
    };
    Some(SuiteReport { suite, checks })
}

fn specfun() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(Check::of(
        "gamma doubling formula",
        (|| {
            for i in 0..=49 {
                let x = 0.1 + 0.1 * i as f64;
                let lhs = ok("gamma", gamma_fn(2.0 * x))?;
                let rhs =
                    2f64.powf(2.0 * x - 1.0) / PI.sqrt() * ok("gamma", gamma_fn(x))? * ok("gamma", gamma_fn(x + 0.5))?;
                within_rel(&format!("x = {x}"), lhs, rhs, 1e-12)?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "normalized Bessel eigenfunction",
        (|| {
            for nu in [0.0, 0.5, 1.0, 1.5] {
                let g = 2.0 * nu + 1.0;
                let order = ok("order", BesselOrder::new(nu))?;
                for i in 0..=20 {
                    let x = 0.5 * i as f64;
                    let j = |t: f64| normalized_bessel_j(order, t.abs()).unwrap_or(f64::NAN);
                    let lhs = finite_difference_bessel(j, x, g);
                    within(&format!("nu = {nu}, x = {x}"), lhs, -j(x), 1e-5)?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "2F1 series and Euler paths agree",
        (|| {
            for (a, b, c) in [(0.3, 0.5, 1.7), (1.0, 0.7, 2.5), (-0.4, 1.2, 2.9), (0.25, 0.25, 1.0)] {
                for i in 0..=13 {
                    let z = 0.5 + 0.03 * i as f64;
                    let p = ok("params", HyperParams::new(a, b, c, z))?;
                    let s = ok("series", gauss_2f1_series(p))?;
                    let e = ok("euler", gauss_2f1_euler(p))?;
                    within_rel(&format!("(a, b, c, z) = ({a}, {b}, {c}, {z})"), e, s, 1e-9)?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "terminating 2F1",
        (|| {
            for (b, c, z) in [(0.7, 1.9, 0.3), (2.5, 0.5, -3.0), (1.0, 4.0, 0.95)] {
                let p = ok("params", HyperParams::new(-1.0, b, c, z))?;
                within(
                    &format!("(b, c, z) = ({b}, {c}, {z})"),
                    ok("2F1", gauss_2f1(p))?,
                    1.0 - b / c * z,
                    4.0 * f64::EPSILON,
                )?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "Kummer 1F1(a; a; z) = e^z",
        (|| {
            for a in [0.3, 1.0, 2.75] {
                for z in [-5.0, -0.5, 0.0, 1.0, 7.0] {
                    within_rel(
                        &format!("a = {a}, z = {z}"),
                        ok("1F1", kummer_1f1(a, a, z))?,
                        f64::exp(z),
                        1e-12,
                    )?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "Laguerre orthogonality",
        (|| {
            let rule = ok("rule", gauss_laguerre_rule(64))?;
            for m in 0..=8 {
                for n in 0..=8 {
                    let got = rule.apply(|y| laguerre_poly(m, y) * laguerre_poly(n, y));
                    within(&format!("(m, n) = ({m}, {n})"), got, f64::from(u8::from(m == n)), 1e-10)?;
                }
            }
            Ok(())
        })(),
    ));
    v
}

fn quadrature() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(Check::of(
        "two-point rule",
        (|| {
            let r = ok("rule", gauss_laguerre_rule(2))?;
            let s = 2f64.sqrt();
            within("node 1", r.nodes()[0], 2.0 - s, 1e-12)?;
            within("node 2", r.nodes()[1], 2.0 + s, 1e-12)?;
            within("weight 1", r.weights()[0], (2.0 + s) / 4.0, 1e-12)?;
            within("weight 2", r.weights()[1], (2.0 - s) / 4.0, 1e-12)
        })(),
    ));
    v.push(Check::of(
        "weights sum to one",
        (|| {
            for n in 1..=40 {
                let r = ok("rule", gauss_laguerre_rule(n))?;
                within(&format!("n = {n}"), r.weights().iter().sum(), 1.0, 1e-13)?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "polynomial exactness",
        (|| {
            for n in 1..=20 {
                let r = ok("rule", gauss_laguerre_rule(n))?;
                let mut fact = 1.0;
                for d in 0..2 * n {
                    if d > 0 {
                        fact *= d as f64;
                    }
                    let got = ok(
                        "integrate",
                        integrate_laguerre(|x| x.powi(d as i32) * (-x).exp(), &r, None),
                    )?
                    .value;
                    within_rel(&format!("n = {n}, degree {d}"), got, fact, 1e-11)?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "Gaussian errors shrink with n",
        (|| {
            let exact = PI.sqrt() / 2.0;
            let mut last = f64::INFINITY;
            for n in [4, 6, 8, 10] {
                let r = ok("rule", gauss_laguerre_rule(n))?;
                let e = (ok("integrate", integrate_laguerre(|y| (-y * y).exp(), &r, None))?.value - exact).abs();
                if e.partial_cmp(&last) != Some(std::cmp::Ordering::Less) {
                    return Err(format!("n = {n}: error {e:e} not below {last:e}"));
                }
                last = e;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "finite integrals are affine invariant",
        (|| {
            let tol = 1e-10;
            let f = |z: f64| (z - 1.0).powf(-0.25) * (3.5 - z).powf(-0.25) * (0.3 * z).cos();
            let ex = ok("exps", EndpointExponents::new(-0.25, -0.25))?;
            let direct = ok("direct", integrate_finite(f, 1.0, 3.5, ex, tol))?.value;
            let mapped = ok(
                "mapped",
                integrate_finite(|u| 2.5 * f(1.0 + 2.5 * u), 0.0, 1.0, ex, tol),
            )?
            .value;
            within("[1, 3.5] vs [0, 1]", mapped, direct, 10.0 * tol)
        })(),
    ));
    v.push(Check::of(
        "endpoint singularity",
        (|| {
            let ex = ok("exps", EndpointExponents::new(-0.5, 0.0))?;
            within(
                "z^(-1/2)",
                ok("integrate", integrate_finite(|z| z.powf(-0.5), 0.0, 1.0, ex, 1e-10))?.value,
                2.0,
                1e-10,
            )
        })(),
    ));
    v
}

const GRID: [f64; 5] = [0.6, 1.2, 1.8, 2.4, 3.0];

fn translation() -> Vec<Check> {
    let f = gaussian();
    let mut v = Vec::new();
    v.push(Check::of(
        "representations agree",
        (|| {
            for g in [0.5, 1.0, 2.0, 3.5] {
                for x in GRID {
                    for y in GRID {
                        let t = |m| translate(&f, x, y, weight(g), m, 1e-12).map(|r| r.value);
                        let trig = ok("trig", t(TranslationMethod::Trig))?;
                        let unit = ok("unit interval", t(TranslationMethod::UnitInterval))?;
                        let kern = ok("kernel", t(TranslationMethod::Kernel))?;
                        let at = format!("gamma = {g}, (x, y) = ({x}, {y})");
                        within(&format!("trig vs unit interval, {at}"), trig, unit, 1e-8)?;
                        within(&format!("trig vs kernel, {at}"), trig, kern, 1e-8)?;
                        within(&format!("unit interval vs kernel, {at}"), unit, kern, 1e-8)?;
                    }
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "symmetry in x and y",
        (|| {
            for g in [0.5, 2.0] {
                for x in GRID {
                    for y in GRID {
                        let a = ok(
                            "translate",
                            translate(&f, x, y, weight(g), TranslationMethod::Kernel, 1e-12),
                        )?
                        .value;
                        let b = ok(
                            "translate",
                            translate(&f, y, x, weight(g), TranslationMethod::Kernel, 1e-12),
                        )?
                        .value;
                        within(&format!("gamma = {g}, (x, y) = ({x}, {y})"), a, b, 1e-9)?;
                    }
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "product formula",
        (|| {
            for g in [0.5, 1.0, 2.0, 3.5] {
                let order = weight(g).bessel_order();
                for xi in [0.5, 1.0, 2.0] {
                    let j = ok("bessel", TestFunction::bessel_j(order.value(), xi))?;
                    for x in GRID {
                        for y in GRID {
                            let t = ok(
                                "translate",
                                translate(&j, x, y, weight(g), TranslationMethod::Kernel, 1e-12),
                            )?
                            .value;
                            let p = ok("j", normalized_bessel_j(order, x * xi))?
                                * ok("j", normalized_bessel_j(order, y * xi))?;
                            within(&format!("gamma = {g}, xi = {xi}, (x, y) = ({x}, {y})"), t, p, 1e-7)?;
                        }
                    }
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "self-adjointness",
        (|| {
            let g2 = ok("g", TestFunction::gaussian(2.0))?;
            for g in [0.5, 2.0] {
                let w = weight(g);
                for x in [0.3, 1.0, 1.7] {
                    let lhs = |y: f64| {
                        Ok(translate(&f, x, y, w, TranslationMethod::ClosedFormAuto, 1e-13)?.value
                            * g2.eval(y)?
                            * y.powf(g))
                    };
                    let rhs = |y: f64| {
                        Ok(f.eval(y)?
                            * translate(&g2, x, y, w, TranslationMethod::ClosedFormAuto, 1e-13)?.value
                            * y.powf(g))
                    };
                    let decay = Decay::Gaussian { rate: 1.0 };
                    let l = ok("lhs", integrate_half_line(lhs, 0.0, g, decay, 40, 1e-12))?.value;
                    let r = ok("rhs", integrate_half_line(rhs, 0.0, g, decay, 40, 1e-12))?.value;
                    within(&format!("gamma = {g}, x = {x}"), l, r, 1e-7)?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "gamma = 0 is the even shift mean",
        (|| {
            for x in GRID {
                for y in GRID {
                    let t = ok(
                        "translate",
                        translate(&f, x, y, weight(0.0), TranslationMethod::ClosedFormAuto, 1e-12),
                    )?
                    .value;
                    let want = 0.5 * ((-(x + y) * (x + y)).exp() + (-(x - y) * (x - y)).exp());
                    if t != want {
                        return Err(format!("(x, y) = ({x}, {y}): {t:e} != {want:e}"));
                    }
                }
            }
            Ok(())
        })(),
    ));
    v
}

fn gaussian_image(g: f64, xi: f64) -> Result<f64, String> {
    Ok(ok("gamma", gamma_fn(0.5 * (g + 1.0)))? / 2.0 * (-xi * xi / 4.0).exp())
}

fn hankel() -> Vec<Check> {
    let f = gaussian();
    let mut v = Vec::new();
    v.push(Check::of(
        "forward transform of the Gaussian",
        (|| {
            for g in [0.5, 1.0, 2.0] {
                let idx = ok("index", HankelIndex::new(g))?;
                for xi in [0.0, 1.0, 2.0] {
                    let h = ok("forward", hankel_forward(&f, xi, idx, 48))?.value;
                    within(&format!("gamma = {g}, xi = {xi}"), h, gaussian_image(g, xi)?, 1e-8)?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "round trip",
        (|| {
            for g in [0.5, 2.0] {
                let idx = ok("index", HankelIndex::new(g))?;
                let inner = f.clone();
                let big_f = TestFunction::custom(
                    move |xi| hankel_forward(&inner, xi, idx, 48).map(|r| r.value).unwrap_or(f64::NAN),
                    Decay::Gaussian { rate: 0.25 },
                );
                for x in [0.25, 0.5, 1.0, 2.0] {
                    let back = ok("inverse", hankel_inverse(&big_f, x, idx, 48))?.value;
                    within(&format!("gamma = {g}, x = {x}"), back, (-x * x).exp(), 1e-4)?;
                }
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "spectral form of the potential",
        (|| {
            let idx = ok("index", HankelIndex::new(0.5))?;
            let order = ok("order", FracOrder::potential(0.7, weight(0.5)))?;
            for x in [0.2, 1.0] {
                let s = ok("spectral", spectral_potential(&f, x, 0.7, idx, 48))?.value;
                let p = ok(
                    "potential",
                    riesz_b_potential(&f, x, order, weight(0.5), PotentialScheme::Kernel),
                )?
                .value;
                within(&format!("x = {x}"), s, p, 1e-3)?;
            }
            Ok(())
        })(),
    ));
    v
}

/// Abscissae of the two published tables.
pub fn example1_grid() -> Grid {
    Grid {
        start: 0.01,
        step: 0.19,
        count: 25,
    }
}

pub fn example2_grid() -> Grid {
    Grid {
        start: 0.01,
        step: 0.29,
        count: 34,
    }
}

fn fracbessel() -> Vec<Check> {
    let f = gaussian();
    let g = weight(0.5);
    let mut v = Vec::new();
    v.push(Check::of(
        "schemes agree",
        (|| {
            let order = ok("order", FracOrder::potential(0.7, g))?;
            let gl = ok("scheme", PotentialScheme::gauss_laguerre(24))?;
            for x in [0.2, 1.0, 2.0] {
                let p = |s| riesz_b_potential(&f, x, order, g, s).map(|r| r.value);
                let k = ok("kernel", p(PotentialScheme::Kernel))?;
                let t = ok("translation", p(PotentialScheme::Translation))?;
                let l = ok("gauss-laguerre", p(gl))?;
                within(&format!("kernel vs translation, x = {x}"), k, t, 1e-6)?;
                within(&format!("kernel vs gauss-laguerre, x = {x}"), k, l, 1e-6)?;
                within(&format!("translation vs gauss-laguerre, x = {x}"), t, l, 1e-6)?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "Example 1 closed form, n = 10",
        (|| {
            let order = ok("order", FracOrder::potential(0.7, g))?;
            let scheme = ok("scheme", PotentialScheme::gauss_laguerre(10))?;
            let mut bad = Vec::new();
            for x in example1_grid().points() {
                let p = ok("potential", riesz_b_potential(&f, x, order, g, scheme))?.value;
                let e = ok("oracle", oracle_gaussian_potential(x, 0.7, 0.5))?;
                if let Err(m) = within(&format!("x = {x:.2}"), p, e, 5e-8) {
                    bad.push(m);
                }
            }
            if bad.is_empty() {
                Ok(())
            } else {
                Err(bad.join("; "))
            }
        })(),
    ));
    v.push(Check::of(
        "left inverse at alpha = 1",
        (|| {
            let g = weight(2.5);
            let order = ok("order", FracOrder::potential(1.0, g))?;
            // B_γ e^{−x²} = (4x² − 2(γ+1)) e^{−x²}
            let bf = TestFunction::custom(|x| (4.0 * x * x - 7.0) * (-x * x).exp(), Decay::Gaussian { rate: 1.0 });
            for x in [0.5, 1.0, 2.0] {
                let p = ok(
                    "potential",
                    riesz_b_potential(&bf, x, order, g, PotentialScheme::Kernel),
                )?
                .value;
                within(&format!("x = {x}"), p, (-x * x).exp(), 1e-6)?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "Example 2 closed form",
        (|| {
            let g = weight(2.0);
            let order = ok("order", FracOrder::derivative(0.2))?;
            let j = ok("bessel", TestFunction::bessel_j(0.5, 1.0))?;
            for x in example2_grid().points() {
                let d = ok("derivative", frac_derivative(&j, x, order, g))?.value;
                within_rel(
                    &format!("x = {x:.2}"),
                    d,
                    ok("oracle", oracle_j_derivative_gamma2(x, 0.2))?,
                    1e-3,
                )?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "derivative is stable in the upper limit",
        (|| {
            let order = ok("order", FracOrder::derivative(0.3))?;
            for x in [0.5, 1.0, 2.0] {
                let at = |t_max| {
                    let opts = DerivativeOptions {
                        t_max: Some(t_max),
                        ..Default::default()
                    };
                    frac_derivative_with(&f, x, order, g, &opts)
                };
                let a = ok("t_max = 12", at(12.0))?;
                let b = ok("t_max = 24", at(24.0))?;
                within(&format!("x = {x}"), b.value, a.value, a.error)?;
            }
            Ok(())
        })(),
    ));
    v.push(Check::of(
        "gamma = 0 matches the classical potential",
        (|| {
            let g0 = weight(0.0);
            for alpha in [0.2, 0.3, 0.4] {
                let order = ok("order", FracOrder::potential(alpha, g0))?;
                for x in [0.0, 0.3, 1.0] {
                    let b = ok(
                        "potential",
                        riesz_b_potential_with_tol(&f, x, order, g0, PotentialScheme::Translation, 1e-10),
                    )?
                    .value;
                    let c = ok("classical", riesz_classical(&f, x, alpha))?.value;
                    within(&format!("alpha = {alpha}, x = {x}"), b, c, 1e-6)?;
                }
            }
            Ok(())
        })(),
    ));
    v
}

fn oracles(golden: &GoldenSource) -> Vec<Check> {
    let mut v = Vec::new();
    v.push(Check::of(
        "derivative coefficient consistency",
        (|| {
            let g = weight(2.0);
            let l = ok("order", DiffOrder::new(1))?;
            for alpha in [0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9] {
                let d = ok("d", norm_const_d(l, ok("order", FracOrder::derivative(alpha))?, g))?;
                let other = PI * (alpha * PI).cos()
                    / (ok("gamma", gamma_fn(2.0 * alpha + 2.0))? * (2.0 * PI * alpha).sin())
                    / d;
                within_rel(
                    &format!("alpha = {alpha}"),
                    ok("coefficient", j_derivative_coefficient(alpha))?,
                    other,
                    1e-12,
                )?;
            }
            Ok(())
        })(),
    ));
    for (name, width, exact) in [
        (
            EXAMPLE1_NAME,
            EXAMPLE1_EXACT_WIDTH,
            Box::new(|x| oracle_gaussian_potential(x, 0.7, 0.5)) as Box<dyn Fn(f64) -> frabessel::Result<f64>>,
        ),
        (
            EXAMPLE2_NAME,
            EXAMPLE2_EXACT_WIDTH,
            Box::new(|x| oracle_j_derivative_gamma2(x, 0.2)),
        ),
    ] {
        v.push(Check::of(
            format!("{name} exact column"),
            (|| {
                let (t, _) = golden.load(name)?;
                let xs = t.values("x").map_err(|e| e.to_string())?;
                let col = t.column("exact").map_err(|e| e.to_string())?;
                for (x, row) in xs.iter().zip(t.rows()) {
                    let s = format_general(ok("oracle", exact(*x))?, width);
                    if s != row[col] {
                        return Err(format!(
                            "{name}: x = {x}: closed form gives {s}, table has {}",
                            row[col]
                        ));
                    }
                }
                Ok(())
            })(),
        ));
    }
    v
}

/// The published tables' configurations.
pub fn example1_config() -> RunConfig {
    RunConfig {
        op: Operation::NegPower,
        function: FunctionName::Gaussian,
        param: None,
        alpha: 0.7,
        gamma: 0.5,
        scheme: SchemeName::Laguerre,
        n: Some(10),
        method: MethodName::Auto,
        x: 0.0,
        y: 0.0,
        grid: Some(example1_grid()),
        tol: None,
        format: OutputFormat::Csv,
    }
}

pub fn example2_config() -> RunConfig {
    RunConfig {
        op: Operation::Derivative,
        function: FunctionName::Besselj,
        alpha: 0.2,
        gamma: 2.0,
        scheme: SchemeName::Kernel,
        n: None,
        grid: Some(example2_grid()),
        ..example1_config()
    }
}

/// Rebuild a golden table from `table` output: its x and exact columns are
/// replaced by the CSV cells re-rendered at the table's width.
pub fn round_trip(golden: &GoldenTable, table_csv: &str, width: usize) -> Result<String, String> {
    let mut xs = Vec::new();
    let mut exact = Vec::new();
    let mut lines = table_csv.lines();
    let header: Vec<&str> = lines.next().ok_or("empty table output")?.split(',').collect();
    let xi = header.iter().position(|h| *h == "x").ok_or("no x column")?;
    let ei = header.iter().position(|h| *h == "exact").ok_or("no exact column")?;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let num = |i: usize| -> Result<f64, String> {
            cells
                .get(i)
                .ok_or("short row")?
                .parse::<f64>()
                .map_err(|e| format!("{line}: {e}"))
        };
        xs.push(format_general(num(xi)?, width));
        exact.push(format_general(num(ei)?, width));
    }
    let t = golden
        .clone()
        .with_column("x", xs)
        .and_then(|t| t.with_column("exact", exact))
        .map_err(|e| e.to_string())?;
    Ok(t.to_csv())
}

fn golden_tables(golden: &GoldenSource) -> Vec<Check> {
    let mut v = Vec::new();
    for (name, width, cfg) in [
        (EXAMPLE1_NAME, EXAMPLE1_EXACT_WIDTH, example1_config()),
        (EXAMPLE2_NAME, EXAMPLE2_EXACT_WIDTH, example2_config()),
    ] {
        v.push(Check::of(
            format!("{name} round trip"),
            (|| {
                let (t, text) = golden.load(name)?;
                let (mut out, mut err) = (Vec::new(), Vec::new());
                let status = cmd_table(&cfg, &mut out, &mut err);
                if status != Status::Success {
                    return Err(format!(
                        "{name}: table exited {status:?}: {}",
                        String::from_utf8_lossy(&err)
                    ));
                }
                let rebuilt = round_trip(&t, &String::from_utf8_lossy(&out), width)?;
                if rebuilt.as_bytes() != text.as_bytes() {
                    let line = rebuilt
                        .lines()
                        .zip(text.lines())
                        .position(|(a, b)| a != b)
                        .map_or(0, |i| i + 1);
                    return Err(format!("{name}: differs from the regenerated table at line {line}"));
                }
                Ok(())
            })(),
        ));
    }
    v
}

fn cli() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(Check::of("table output is byte-stable", {
        let run = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            cmd_table(&example1_config(), &mut out, &mut err);
            out
        };
        if run() == run() {
            Ok(())
        } else {
            Err("two runs of the same table differ".into())
        }
    }));
    v.push(Check::of("exit statuses are distinct", {
        let codes = [
            Status::Success,
            Status::SelftestFailure,
            Status::Domain,
            Status::Accuracy,
        ]
        .map(Status::code);
        if codes == [0, 1, 2, 3] {
            Ok(())
        } else {
            Err(format!("codes {codes:?}"))
        }
    }));
    v
}

/// Run the named suites (all when `only` is None), print per-suite counts and
/// each failure, and return the exit status.
pub fn cmd_selftest(only: Option<&str>, golden: &GoldenSource, out: &mut dyn Write) -> Status {
    let names: Vec<&str> = match only {
        Some(s) => {
            if !SUITES.contains(&s) {
                let _ = writeln!(out, "unknown suite {s:?}; available: {}", SUITES.join(", "));
                return Status::Domain;
            }
            vec![s]
        }
        None => SUITES.to_vec(),
    };
    let mut first: Option<String> = None;
    for name in names {
        let report = run_suite(name, golden).expect("known suite");
        let failed = report.failures().count();
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed",
            report.suite,
            report.checks.len() - failed,
            failed
        );
        for c in report.failures() {
            let msg = format!("{}: {}: {}", report.suite, c.name, c.failure.as_deref().unwrap_or(""));
            let _ = writeln!(out, "  FAIL {msg}");
            first.get_or_insert(msg);
        }
    }
    match first {
        None => {
            let _ = writeln!(out, "all suites passed");
            Status::Success
        }
        Some(m) => {
            let _ = writeln!(out, "first failure: {m}");
            Status::SelftestFailure
        }
    }
}
