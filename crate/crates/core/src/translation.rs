//! Generalized translation ^γT^y_x attached to the Bessel operator B_γ.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::function::{FunctionKind, TestFunction};
use crate::quadrature::{integrate_finite_offsets, EndpointExponents};
use crate::specfun::{gauss_2f1, ln_gamma, normalized_bessel_i_scaled, normalized_bessel_j, BesselOrder, HyperParams};

pub const DEFAULT_TOL: f64 = 1e-10;

/// The weight γ ≥ 0 of B_γ = D² + (γ/x) D.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GammaWeight(f64);

impl GammaWeight {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::domain(format!("gamma must be finite and >= 0, got {gamma}")));
        }
        Ok(GammaWeight(gamma))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// C(γ) = Γ((γ+1)/2) / (√π Γ(γ/2)), the reciprocal of ∫₀^π sin^{γ−1}φ dφ.
    pub fn normalization(self) -> Result<f64> {
        if self.0 == 0.0 {
            return Err(Error::Method("C(gamma) is undefined at gamma = 0".into()));
        }
        Ok((ln_gamma(0.5 * (self.0 + 1.0))? - ln_gamma(0.5 * self.0)?).exp() / PI.sqrt())
    }

    /// ν = (γ−1)/2, the order of the eigenfunctions j_ν(xξ) of B_γ.
    pub fn bessel_order(self) -> BesselOrder {
        BesselOrder::new(0.5 * (self.0 - 1.0)).expect("gamma >= 0 gives order >= -1/2")
    }

    /// (γ+1)/2
    pub fn half_plus(self) -> f64 {
        0.5 * (self.0 + 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TranslationMethod {
    /// C(γ) ∫₀^π f(√(x²+y²−2xy cos φ)) sin^{γ−1}φ dφ
    Trig,
    /// 2^{γ−1} C(γ) ∫₀¹ f((x+y)√(1−zt)) t^{γ/2−1}(1−t)^{γ/2−1} dt, z = 4xy/(x+y)²
    UnitInterval,
    /// integral over [|x−y|, x+y] against the kernel [(z²−(x−y)²)((x+y)²−z²)]^{γ/2−1}
    Kernel,
    /// closed forms where known, otherwise `Kernel` (or `Trig` when xy = 0)
    #[default]
    ClosedFormAuto,
}

fn check_point(x: f64, y: f64) -> Result<()> {
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!(
            "translation needs finite x, y >= 0, got ({x}, {y})"
        )));
    }
    Ok(())
}

/// ^γT^y_x f(x).
pub fn translate(
    f: &TestFunction,
    x: f64,
    y: f64,
    gamma: GammaWeight,
    method: TranslationMethod,
    tol: f64,
) -> Result<EvalResult> {
    check_point(x, y)?;
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let g = gamma.value();
    if g == 0.0 {
        let v = 0.5 * (f.eval(x + y)? + f.eval(x - y)?);
        return Ok(EvalResult::new(v, 0.0, "mean", 2));
    }
    if y == 0.0 {
        return Ok(EvalResult::new(f.eval(x)?, 0.0, "identity", 1));
    }
    if x == 0.0 && method != TranslationMethod::Kernel {
        return Ok(EvalResult::new(f.eval(y)?, 0.0, "identity", 1));
    }
    match method {
        TranslationMethod::Trig => translate_trig(f, x, y, gamma, tol),
        TranslationMethod::UnitInterval => translate_unit_interval(f, x, y, gamma, tol),
        TranslationMethod::Kernel => translate_kernel(f, x, y, gamma, tol),
        TranslationMethod::ClosedFormAuto => {
            if let Some(v) = closed_form(f, x, y, gamma)? {
                return Ok(EvalResult::exact(v, "closed-form"));
            }
            translate_kernel(f, x, y, gamma, tol)
        }
    }
}

fn closed_form(f: &TestFunction, x: f64, y: f64, gamma: GammaWeight) -> Result<Option<f64>> {
    Ok(match f.kind() {
        FunctionKind::Gaussian { scale } => {
            let s = scale.sqrt();
            Some(translate_gaussian(s * x, s * y, gamma)?)
        }
        FunctionKind::Power { p } => Some(translate_power(*p, x, y, gamma)?),
        FunctionKind::Constant { value } => Some(*value),
        FunctionKind::Zero => Some(0.0),
        FunctionKind::BesselJ { order, lambda } if *order == gamma.bessel_order() => {
            Some(normalized_bessel_j(*order, lambda * x)? * normalized_bessel_j(*order, lambda * y)?)
        }
        _ => None,
    })
}

fn translate_trig(f: &TestFunction, x: f64, y: f64, gamma: GammaWeight, tol: f64) -> Result<EvalResult> {
    let g = gamma.value();
    let c = gamma.normalization()?;
    let d2 = (x - y) * (x - y);
    let integrand = |phi: f64, from_zero: f64, to_pi: f64| -> Result<f64> {
        let s = (0.5 * phi).sin();
        let arg = (d2 + 4.0 * x * y * s * s).sqrt();
        Ok(f.eval(arg)? * from_zero.min(to_pi).sin().powf(g - 1.0))
    };
    let e = g - 1.0;
    let r = integrate_finite_offsets(integrand, 0.0, PI, EndpointExponents::new(e, e)?, tol / c, 1)?;
    Ok(EvalResult {
        method: "trig",
        ..r.scaled(c)
    })
}

fn translate_unit_interval(f: &TestFunction, x: f64, y: f64, gamma: GammaWeight, tol: f64) -> Result<EvalResult> {
    let g = gamma.value();
    let c = 2f64.powf(g - 1.0) * gamma.normalization()?;
    let s = x + y;
    let z = (4.0 * x * y / (s * s)).min(1.0);
    let e = 0.5 * g - 1.0;
    let integrand = |t: f64, _: f64, one_minus: f64| -> Result<f64> {
        Ok(f.eval(s * (1.0 - z * t).max(0.0).sqrt())? * (t * one_minus).powf(e))
    };
    let r = integrate_finite_offsets(integrand, 0.0, 1.0, EndpointExponents::new(e, e)?, tol / c, 1)?;
    Ok(EvalResult {
        method: "unit-interval",
        ..r.scaled(c)
    })
}

fn translate_kernel(f: &TestFunction, x: f64, y: f64, gamma: GammaWeight, tol: f64) -> Result<EvalResult> {
    if x * y == 0.0 {
        return Err(Error::Method(
            "kernel representation needs x > 0 and y > 0; use the trig form".into(),
        ));
    }
    let g = gamma.value();
    let c = 2f64.powf(g) * gamma.normalization()? * (4.0 * x * y).powf(1.0 - g);
    let lo = (x - y).abs();
    let hi = x + y;
    let e = 0.5 * g - 1.0;
    let integrand = |z: f64, above: f64, below: f64| -> Result<f64> {
        let k = above * (z + lo) * below * (hi + z);
        Ok(z * f.eval(z)? * k.powf(e))
    };
    let r = integrate_finite_offsets(integrand, lo, hi, EndpointExponents::new(e, e)?, tol / c, 1)?;
    Ok(EvalResult {
        method: "kernel",
        ..r.scaled(c)
    })
}

/// ^γT^y_x x^α = (x+y)^α ₂F₁(−α/2, γ/2; γ; 4xy/(x+y)²).
pub fn translate_power(alpha: f64, x: f64, y: f64, gamma: GammaWeight) -> Result<f64> {
    check_point(x, y)?;
    let g = gamma.value();
    if g == 0.0 {
        return Err(Error::domain("translate_power needs gamma > 0"));
    }
    let s = x + y;
    if s == 0.0 {
        return Err(Error::domain("translate_power needs x + y > 0"));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let z = (4.0 * x * y / (s * s)).min(1.0);
    let h = gauss_2f1(HyperParams::new(-0.5 * alpha, 0.5 * g, g, z)?).map_err(|e| match e {
        Error::Divergent(msg) => Error::domain(format!("translation of x^{alpha} diverges at x = y: {msg}")),
        other => other,
    })?;
    Ok(s.powf(alpha) * h)
}

/// ^γT^y_x e^{−x²} = Γ((γ+1)/2) (xy)^{(1−γ)/2} e^{−x²−y²} I_{(γ−1)/2}(2xy).
///
/// Evaluated as e^{−(x−y)²} · e^{−2xy} i_ν(2xy), which stays finite for any x, y.
pub fn translate_gaussian(x: f64, y: f64, gamma: GammaWeight) -> Result<f64> {
    check_point(x, y)?;
    if gamma.value() == 0.0 {
        return Err(Error::domain("translate_gaussian needs gamma > 0"));
    }
    let d = x - y;
    Ok((-d * d).exp() * normalized_bessel_i_scaled(gamma.bessel_order(), 2.0 * x * y)?)
}
