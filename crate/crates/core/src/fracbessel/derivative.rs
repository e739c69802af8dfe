use std::f64::consts::PI;

use super::{DiffOrder, FracOrder, OrderRole};
use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::function::{FunctionKind, TestFunction};
use crate::quadrature::{integrate_finite_offsets, EndpointExponents};
use crate::specfun::{ln_gamma, pochhammer};
use crate::translation::{translate, GammaWeight, TranslationMethod};

const TRANSLATION_TOL: f64 = 1e-13;
const CHUNK_WIDTH: f64 = 8.0;
const MAX_REACH: f64 = 1e7;

/// φ_k(y) = (1/k!) Γ((γ+1)/2) / Γ((γ+1)/2 + k) (y/2)^{2k}, the coefficient of
/// B_γ^k f(x) in the expansion of T^y_x f(x).
pub fn taylor_delsarte_phi(k: u32, y: f64, gamma: GammaWeight) -> f64 {
    let b = gamma.half_plus();
    let mut fact = 1.0;
    for i in 2..=k {
        fact *= i as f64;
    }
    (0.5 * y).powi(2 * k as i32) / (fact * pochhammer(b, k))
}

/// Σ_{k=0}^{l} (−1)^k C_l^k T^{kt}_x f(x)
pub fn gen_finite_difference(f: &TestFunction, x: f64, t: f64, l: DiffOrder, gamma: GammaWeight) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("step must be >= 0, got {t}")));
    }
    if t == 0.0 {
        // Σ (−1)^k C_l^k = 0
        return Ok(0.0);
    }
    let mut acc = f.eval(x)?;
    for k in 1..=l.value() {
        let shifted = translate(
            f,
            x,
            k as f64 * t,
            gamma,
            TranslationMethod::ClosedFormAuto,
            TRANSLATION_TOL,
        )?;
        acc += sign(k) * l.binomial(k) * shifted.value;
    }
    Ok(acc)
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// d_{l,γ}(α) = πΓ((γ+1)/2) / (2^{2α+1} Γ((γ+1)/2+α) Γ(1/2+α))
///            · Σ_{k=0}^{l} (−1)^{k+1} C_l^k k^{2α} / sin(απ),  with 0^{2α} = 0.
pub fn norm_const_d(l: DiffOrder, order: FracOrder, gamma: GammaWeight) -> Result<f64> {
    let alpha = order.alpha();
    if alpha == alpha.round() {
        return Err(Error::Pole {
            function: "d_{l,gamma}(alpha) (sin(alpha*pi) = 0)",
            at: alpha,
        });
    }
    let b = gamma.half_plus();
    let log = PI.ln() + ln_gamma(b)? - (2.0 * alpha + 1.0) * 2f64.ln() - ln_gamma(b + alpha)? - ln_gamma(0.5 + alpha)?;
    let sum: f64 = (1..=l.value())
        .map(|k| -sign(k) * l.binomial(k) * (k as f64).powf(2.0 * alpha))
        .sum();
    Ok(log.exp() * sum / (alpha * PI).sin())
}

/// Controls for the t-integral of the fractional derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeOptions {
    /// below this step the difference is replaced by its leading
    /// Taylor–Delsarte term
    pub t_split: f64,
    /// upper end of the numerically integrated range; `None` grows it until
    /// the tail bound drops under tol/10
    pub t_max: Option<f64>,
    /// absolute tolerance on the derivative value
    pub tol: f64,
}

impl Default for DerivativeOptions {
    fn default() -> Self {
        DerivativeOptions {
            t_split: 0.1,
            t_max: None,
            tol: 1e-6,
        }
    }
}

/// The positive power (B_γ)^α f at x,
/// (1/d_{l,γ}(α)) ∫₀^∞ Σ_k (−1)^k C_l^k T^{kt}_x f(x) t^{−1−2α} dt.
pub fn frac_derivative(f: &TestFunction, x: f64, order: FracOrder, gamma: GammaWeight) -> Result<EvalResult> {
    frac_derivative_with(f, x, order, gamma, &DerivativeOptions::default())
}

pub fn frac_derivative_with(
    f: &TestFunction,
    x: f64,
    order: FracOrder,
    gamma: GammaWeight,
    opts: &DerivativeOptions,
) -> Result<EvalResult> {
    if order.role() == OrderRole::Potential {
        return Err(Error::domain("order was built for a potential, not a derivative"));
    }
    let alpha = order.alpha();
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be finite and >= 0, got {x}")));
    }
    let ts = opts.t_split;
    if !(ts > 0.0) || opts.t_max.is_some_and(|t| !(t > ts)) {
        return Err(Error::domain("need 0 < t_split < t_max"));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if matches!(f.kind(), FunctionKind::Constant { .. } | FunctionKind::Zero) {
        return Ok(EvalResult::exact(0.0, "constant"));
    }
    let l = DiffOrder::for_alpha(alpha);
    let d = norm_const_d(l, order, gamma)?;
    let budget = opts.tol * d.abs() / 10.0;

    let delta = |t: f64| gen_finite_difference(f, x, t, l, gamma);
    let fx = f.eval(x)?;

    // [0, t_split]
    let two_a = 2.0 * alpha;
    let head = if l.value() == 1 {
        let g = gamma.value();
        let bf = f.bessel_op(x, g)?;
        let model = |t: f64| -taylor_delsarte_phi(1, t, gamma) * bf;
        let residual = (delta(ts)? - model(ts)).abs();
        let value = -bf / (2.0 * (g + 1.0)) * ts.powf(2.0 - two_a) / (2.0 - two_a);
        EvalResult::new(value, residual * ts.powf(-two_a) / (4.0 - two_a), "taylor-delsarte", 2)
    } else {
        // leading behaviour Δ ~ t^{l+1}, scaled from the value at t_split
        let p = l.value() as f64 + 1.0 - two_a;
        let value = delta(ts)? * ts.powf(-two_a) / p;
        EvalResult::new(value, value.abs() * ts, "power-law-head", 1)
    };

    // tail bound for the translated terms beyond t
    let tail_bound = |t: f64| -> Result<f64> {
        let mut s = 0.0;
        for k in 1..=l.value() {
            let env = f
                .envelope(k as f64 * t - x)
                .ok_or_else(|| Error::Method("the derivative tail needs a known envelope of |f|".into()))?;
            s += l.binomial(k) * env;
        }
        Ok(s * t.powf(-two_a) / two_a)
    };
    let reach = match opts.t_max {
        Some(t) => {
            let bound = tail_bound(t)?;
            if bound > opts.tol * d.abs() {
                return Err(Error::accuracy(
                    format!("derivative tail beyond t_max = {t}"),
                    f64::NAN,
                    bound / d.abs(),
                ));
            }
            t
        }
        None => {
            let mut t = (2.0 * x + 16.0).max(2.0 * ts);
            while tail_bound(t)? > budget {
                t *= 2.0;
                if t > MAX_REACH {
                    return Err(Error::accuracy(
                        "derivative tail (reach cap)",
                        f64::NAN,
                        tail_bound(t)? / d.abs(),
                    ));
                }
            }
            t
        }
    };

    // [t_split, reach] in chunks
    let integrand = |t: f64, _: f64, _: f64| Ok(delta(t)? * t.powf(-1.0 - two_a));
    let chunks = ((reach - ts) / CHUNK_WIDTH).ceil().max(1.0) as usize;
    let chunk_tol = budget / chunks as f64;
    let mut middle = EvalResult::exact(0.0, "adaptive-gauss");
    let width = (reach - ts) / chunks as f64;
    for i in 0..chunks {
        let a = ts + width * i as f64;
        let b = if i + 1 == chunks { reach } else { a + width };
        let piece = integrate_finite_offsets(integrand, a, b, EndpointExponents::smooth(), chunk_tol, 1)?;
        middle = middle.plus(&piece);
    }

    let exact_tail = fx * reach.powf(-two_a) / two_a;
    let tail = EvalResult::new(exact_tail, tail_bound(reach)?, "tail", 0);
    let total = head.plus(&middle).plus(&tail).scaled(1.0 / d);
    Ok(EvalResult {
        method: "bessel-riesz",
        ..total
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;

    fn gw(g: f64) -> GammaWeight {
        GammaWeight::new(g).unwrap()
    }

    fn one() -> DiffOrder {
        DiffOrder::new(1).unwrap()
    }

    #[test]
    fn phi_values() {
        let g = gw(1.0);
        assert_eq!(taylor_delsarte_phi(0, 3.0, g), 1.0);
        assert!((taylor_delsarte_phi(1, 0.7, gw(2.5)) - 0.49 / 7.0).abs() < 1e-16);
        assert!((taylor_delsarte_phi(2, 2.0, g) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn differences() {
        let f = TestFunction::gaussian(1.0).unwrap();
        let g = gw(2.0);
        assert_eq!(gen_finite_difference(&f, 1.0, 0.0, one(), g).unwrap(), 0.0);
        let expect = (-1f64).exp() - crate::translation::translate_gaussian(1.0, 0.5, g).unwrap();
        assert!((gen_finite_difference(&f, 1.0, 0.5, one(), g).unwrap() - expect).abs() < 1e-15);
        let c = TestFunction::constant(2.5);
        assert_eq!(
            gen_finite_difference(&c, 0.3, 0.9, DiffOrder::new(2).unwrap(), g).unwrap(),
            0.0
        );
    }

    #[test]
    fn normalization_constant() {
        let d = norm_const_d(one(), FracOrder::derivative(0.5).unwrap(), gw(1.0)).unwrap();
        assert!((d - PI.sqrt() / 2.0).abs() < 1e-14);
        // Γ-level re-evaluation at l = 1, α = 0.2, γ = 2
        let a = 0.2;
        let direct = PI * gamma_fn(1.5).unwrap()
            / (2f64.powf(2.0 * a + 1.0) * gamma_fn(1.5 + a).unwrap() * gamma_fn(0.5 + a).unwrap())
            / (a * PI).sin();
        let d = norm_const_d(one(), FracOrder::derivative(a).unwrap(), gw(2.0)).unwrap();
        assert!((d - direct).abs() < 1e-13 * direct);
        assert!((d - 1.5215).abs() < 1e-3);
        // l = 2: Σ = C_2^1·1 − C_2^2·2^{0.4}
        let d2 = norm_const_d(DiffOrder::new(2).unwrap(), FracOrder::derivative(a).unwrap(), gw(2.0)).unwrap();
        assert!((d2 / d - (2.0 - 2f64.powf(0.4))).abs() < 1e-14);
    }

    #[test]
    fn eigenfunction_derivative() {
        // j_{1/2}(x) = sin x / x is an eigenfunction of B_2 with eigenvalue −1
        let f = TestFunction::bessel_j(0.5, 1.0).unwrap();
        let order = FracOrder::derivative(0.2).unwrap();
        let r = frac_derivative(&f, 1.0, order, gw(2.0)).unwrap();
        let coeff = 1.413_743_76;
        let expect = coeff * 1f64.sin();
        assert!((r.value - expect).abs() < 1e-5, "{} vs {expect}", r.value);
        assert!(r.error < 1e-5);
    }

    #[test]
    fn constants_and_inputs() {
        let order = FracOrder::derivative(0.4).unwrap();
        let c = TestFunction::constant(3.0);
        assert_eq!(frac_derivative(&c, 0.5, order, gw(1.0)).unwrap().value, 0.0);
        let f = TestFunction::gaussian(1.0).unwrap();
        let bad = DerivativeOptions {
            t_split: 0.5,
            t_max: Some(0.2),
            ..Default::default()
        };
        assert!(frac_derivative_with(&f, 0.5, order, gw(1.0), &bad)
            .unwrap_err()
            .is_domain());
        let short = DerivativeOptions {
            t_max: Some(0.3),
            ..Default::default()
        };
        assert!(frac_derivative_with(&f, 0.5, order, gw(1.0), &short)
            .unwrap_err()
            .is_accuracy());
        let pot = FracOrder::potential(0.4, gw(1.0)).unwrap();
        assert!(frac_derivative(&f, 0.5, pot, gw(1.0)).is_err());
    }
}
