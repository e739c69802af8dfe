use std::f64::consts::PI;

use super::{FracOrder, OrderRole, PotentialScheme};
use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::function::{Decay, TestFunction};
use crate::quadrature::{integrate_finite_offsets, integrate_half_line, EndpointExponents};
use crate::specfun::{gamma_fn, gauss_2f1_complement, ln_gamma};
use crate::translation::{translate, GammaWeight, TranslationMethod};

pub const DEFAULT_TOL: f64 = 1e-10;
const TAIL_ORDER: usize = 40;
// e^{−46} ≈ 1e−20
const GAUSSIAN_REACH: f64 = 46.0;

/// 2^{1−2α} Γ((γ+1)/2 − α) / (Γ((γ+1)/2) Γ(α))
pub fn potential_prefactor(alpha: f64, gamma: GammaWeight) -> Result<f64> {
    let b = gamma.half_plus();
    let log = (1.0 - 2.0 * alpha) * 2f64.ln() + ln_gamma(b - alpha)? - ln_gamma(b)? - ln_gamma(alpha)?;
    Ok(gamma_fn(b - alpha)?.signum() * log.exp())
}

/// (x+y)^{2α−γ−1} ₂F₁((γ+1)/2 − α, γ/2; γ; 4xy/(x+y)²)
pub fn potential_kernel(x: f64, y: f64, alpha: f64, gamma: GammaWeight) -> Result<f64> {
    kernel_with_gap(x, y, (x - y).abs(), alpha, gamma)
}

// `gap` = |x − y|, passed separately so that 1 − z = gap²/(x+y)² keeps its
// relative accuracy next to the diagonal.
fn kernel_with_gap(x: f64, y: f64, gap: f64, alpha: f64, gamma: GammaWeight) -> Result<f64> {
    let g = gamma.value();
    if g == 0.0 {
        return Err(Error::Method(
            "the hypergeometric kernel is undefined at gamma = 0; use the translation scheme".into(),
        ));
    }
    let s = x + y;
    if !(s > 0.0) {
        return Err(Error::domain("potential kernel needs x + y > 0"));
    }
    let p = s.powf(2.0 * alpha - g - 1.0);
    if x * y == 0.0 {
        return Ok(p);
    }
    let w = ((gap / s) * (gap / s)).min(1.0);
    Ok(p * gauss_2f1_complement(gamma.half_plus() - alpha, 0.5 * g, g, w)?)
}

fn check_decay(f: &TestFunction, alpha: f64) -> Result<()> {
    match f.decay() {
        Decay::Power { exponent } if exponent <= 2.0 * alpha => Err(Error::domain(format!(
            "potential of order {alpha} needs decay faster than x^-{}, function decays like x^-{exponent}",
            2.0 * alpha
        ))),
        Decay::Unknown => Err(Error::domain("potential needs a function with known decay")),
        _ => Ok(()),
    }
}

fn tail_start(x: f64, decay: Decay) -> f64 {
    match decay {
        Decay::Gaussian { rate } => x + (GAUSSIAN_REACH / rate).sqrt(),
        Decay::Exponential { rate } => x + GAUSSIAN_REACH / rate,
        _ => 2.0 * x + 1.0,
    }
}

/// ∫₀^∞ h(y, |y−x|) dy split at y = x and at a decay-dependent cut.
///
/// `e_zero`, `e_diag`: algebraic exponents at y = 0 and y = x; `power`: growth
/// of h at infinity before the decay of f.
fn split_integral<H>(h: H, x: f64, e_zero: f64, e_diag: f64, power: f64, decay: Decay, tol: f64) -> Result<EvalResult>
where
    H: Fn(f64, f64) -> Result<f64>,
{
    let cut = tail_start(x, decay);
    let piece_tol = tol / 3.0;
    let head = if x == 0.0 {
        let e = (e_zero + e_diag).max(-0.99);
        integrate_finite_offsets(
            |y, _, _| h(y, y),
            0.0,
            cut,
            EndpointExponents::new(e, 0.0)?,
            piece_tol,
            1,
        )?
    } else {
        let below = integrate_finite_offsets(
            |y, _, gap| h(y, gap),
            0.0,
            x,
            EndpointExponents::new(e_zero, e_diag)?,
            piece_tol,
            1,
        )?;
        let above = integrate_finite_offsets(
            |y, gap, _| h(y, gap),
            x,
            cut,
            EndpointExponents::new(e_diag, 0.0)?,
            piece_tol,
            2,
        )?;
        below.plus(&above)
    };
    let tail = integrate_half_line(|y| h(y, y - x), cut, power, decay, TAIL_ORDER, piece_tol)?;
    Ok(head.plus(&tail))
}

// exponent of |y−x|^{2α−1}; the logarithmic case α = 1/2 gets a mild one
fn diagonal_exponent(alpha: f64) -> f64 {
    let e = 2.0 * alpha - 1.0;
    if e < 0.0 {
        e
    } else if e == 0.0 {
        -0.5
    } else {
        0.0
    }
}

/// The negative power (B_γ)^{−α} f at x.
pub fn riesz_b_potential(
    f: &TestFunction,
    x: f64,
    order: FracOrder,
    gamma: GammaWeight,
    scheme: PotentialScheme,
) -> Result<EvalResult> {
    riesz_b_potential_with_tol(f, x, order, gamma, scheme, DEFAULT_TOL)
}

pub fn riesz_b_potential_with_tol(
    f: &TestFunction,
    x: f64,
    order: FracOrder,
    gamma: GammaWeight,
    scheme: PotentialScheme,
    tol: f64,
) -> Result<EvalResult> {
    let alpha = order.alpha();
    if order.role() != OrderRole::Potential {
        return Err(Error::domain("order was built for a derivative, not a potential"));
    }
    // re-check against this γ; the order may have been validated for another
    FracOrder::potential(alpha, gamma)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be finite and >= 0, got {x}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    check_decay(f, alpha)?;
    let pref = potential_prefactor(alpha, gamma)?;
    let inner_tol = tol / pref.abs();
    let r = match scheme {
        PotentialScheme::Kernel => EvalResult {
            method: "kernel",
            ..kernel_scheme(f, x, alpha, gamma, inner_tol)?
        },
        PotentialScheme::Translation => EvalResult {
            method: "translation",
            ..translation_scheme(f, x, alpha, gamma, inner_tol)?
        },
        PotentialScheme::GaussLaguerre { n } => {
            PotentialScheme::gauss_laguerre(n)?;
            laguerre_scheme(f, x, alpha, gamma, n, inner_tol)?
        }
    };
    Ok(r.scaled(pref))
}

fn kernel_scheme(f: &TestFunction, x: f64, alpha: f64, gamma: GammaWeight, tol: f64) -> Result<EvalResult> {
    let g = gamma.value();
    if g == 0.0 {
        return Err(Error::Method(
            "the kernel scheme is undefined at gamma = 0; use the translation scheme".into(),
        ));
    }
    let h = |y: f64, gap: f64| -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        Ok(f.eval(y)? * kernel_with_gap(x, y, gap, alpha, gamma)? * y.powf(g))
    };
    split_integral(h, x, 0.0, diagonal_exponent(alpha), 2.0 * alpha - 1.0, f.decay(), tol)
}

fn translated(f: &TestFunction, x: f64, y: f64, gamma: GammaWeight, tol: f64) -> Result<f64> {
    Ok(translate(f, x, y, gamma, TranslationMethod::ClosedFormAuto, tol)?.value)
}

fn translation_scheme(f: &TestFunction, x: f64, alpha: f64, gamma: GammaWeight, tol: f64) -> Result<EvalResult> {
    let p = 2.0 * alpha - 1.0;
    let inner_tol = (0.1 * tol).max(1e-14);
    let h = |y: f64, _: f64| -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        Ok(translated(f, x, y, gamma, inner_tol)? * y.powf(p))
    };
    split_integral(h, x, p.min(0.0), 0.0, p, f.decay(), tol)
}

/// Two Gauss–Laguerre evaluations of the same integral: the translation form
/// ∫ T^y_x f · y^{2α−1} dy and the kernel form ∫ f(y) K(x, y) y^γ dy, both in
/// s = c y² with the matching generalized weight. The one whose n / n−2
/// difference is smaller is returned.
fn laguerre_scheme(f: &TestFunction, x: f64, alpha: f64, gamma: GammaWeight, n: usize, tol: f64) -> Result<EvalResult> {
    let decay = f.decay();
    if !matches!(decay, Decay::Gaussian { .. } | Decay::Exponential { .. }) {
        return Err(Error::domain(
            "the Gauss-Laguerre scheme needs Gaussian or exponential decay",
        ));
    }
    let p = 2.0 * alpha - 1.0;
    let inner_tol = (0.1 * tol).max(1e-14);
    let by_translation = integrate_half_line(
        |y| {
            if y == 0.0 {
                return Ok(0.0);
            }
            Ok(translated(f, x, y, gamma, inner_tol)? * y.powf(p))
        },
        0.0,
        p,
        decay,
        n,
        tol,
    )
    .map(|r| EvalResult {
        method: "gauss-laguerre/translation",
        ..r
    });
    let g = gamma.value();
    let by_kernel = if g > 0.0 {
        Some(
            integrate_half_line(
                |y| {
                    if y == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(f.eval(y)? * potential_kernel(x, y, alpha, gamma)? * y.powf(g))
                },
                0.0,
                g,
                decay,
                n,
                tol,
            )
            .map(|r| EvalResult {
                method: "gauss-laguerre/kernel",
                ..r
            }),
        )
    } else {
        None
    };
    match (by_translation, by_kernel) {
        (Ok(t), Some(Ok(k))) => Ok(if k.error < t.error { k } else { t }),
        (Ok(t), _) => Ok(t),
        (Err(_), Some(Ok(k))) => Ok(k),
        (Err(e), _) => Err(e),
    }
}

/// Classical one-dimensional Riesz potential of order 2α,
/// (1 / (2Γ(2α) cos(απ))) ∫_ℝ f(y) |y−x|^{2α−1} dy, for 0 < α < 1/2.
pub fn riesz_classical(f: &TestFunction, x: f64, alpha: f64) -> Result<EvalResult> {
    if alpha == 0.5 {
        return Err(Error::Pole {
            function: "Riesz potential constant (cos(alpha*pi) = 0)",
            at: alpha,
        });
    }
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::domain(format!(
            "classical Riesz potential needs 0 < alpha < 1/2, got {alpha}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    check_decay(f, alpha)?;
    let x = x.abs();
    let pref = 1.0 / (2.0 * gamma_fn(2.0 * alpha)? * (alpha * PI).cos());
    let p = 2.0 * alpha - 1.0;
    // even f: fold the negative half-line onto the positive one
    let h = |y: f64, gap: f64| -> Result<f64> {
        let near = if gap == 0.0 { 0.0 } else { gap.powf(p) };
        Ok(f.eval(y)? * (near + (x + y).powf(p)))
    };
    let r = split_integral(h, x, 0.0, p, p, f.decay(), DEFAULT_TOL / pref)?;
    Ok(EvalResult {
        method: "riesz-classical",
        ..r.scaled(pref)
    })
}
