use super::finite::{try_integrate_finite, EndpointExponents};
use super::laguerre_rule::{gauss_laguerre_rule_generalized, try_integrate_laguerre};
use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::function::Decay;

/// ∫_a^∞ h(t) dt for an integrand behaving like t^power times the decay
/// profile, mapped onto a Gauss–Laguerre rule of order n.
///
/// * Gaussian rate r, a = 0: s = r t², weight s^{(power−1)/2} e^{−s}.
/// * Gaussian rate r, a > 0: s = r (t² − a²), weight e^{−s}.
/// * Exponential rate r: s = r (t − a), weight s^{power} e^{−s} when a = 0.
/// * Power decay: t = a/u onto (0, 1] with adaptive quadrature (tol).
///
/// The Laguerre error estimate is the difference against order n − 2.
pub fn integrate_half_line<F: Fn(f64) -> Result<f64>>(
    h: F,
    a: f64,
    power: f64,
    decay: Decay,
    n: usize,
    tol: f64,
) -> Result<EvalResult> {
    if !(a >= 0.0) {
        return Err(Error::domain(format!("half-line start must be >= 0, got {a}")));
    }
    match decay {
        Decay::Gaussian { rate } => {
            if a == 0.0 {
                let beta = 0.5 * (power - 1.0);
                let g = |s: f64| {
                    let t = (s / rate).sqrt();
                    Ok(h(t)? / (2.0 * (rate * s).sqrt()))
                };
                laguerre_pair_estimate(g, beta, n)
            } else {
                let g = |s: f64| {
                    let t = (a * a + s / rate).sqrt();
                    Ok(h(t)? / (2.0 * rate * t))
                };
                laguerre_pair_estimate(g, 0.0, n)
            }
        }
        Decay::Exponential { rate } => {
            let beta = if a == 0.0 { power } else { 0.0 };
            let g = |s: f64| Ok(h(a + s / rate)? / rate);
            laguerre_pair_estimate(g, beta, n)
        }
        Decay::Power { exponent } => {
            // h(t) ~ t^{power − exponent}; need power − exponent < −1
            let q = power - exponent;
            if q >= -1.0 {
                return Err(Error::Divergent(format!(
                    "integrand decays like t^{q}, not integrable at infinity"
                )));
            }
            let start = if a > 0.0 { a } else { 1.0 };
            let head = if a > 0.0 {
                EvalResult::exact(0.0, "adaptive-gauss")
            } else {
                let left = if power < 0.0 { power } else { 0.0 };
                try_integrate_finite(&h, 0.0, 1.0, EndpointExponents::new(left, 0.0)?, 0.5 * tol)?
            };
            // t = start/u, dt = start/u² du; integrand ~ u^{−q−2}
            let g = |u: f64| {
                if u == 0.0 {
                    return Ok(0.0);
                }
                Ok(h(start / u)? * start / (u * u))
            };
            let left = (-q - 2.0).min(0.0);
            let tail = try_integrate_finite(g, 0.0, 1.0, EndpointExponents::new(left, 0.0)?, 0.5 * tol)?;
            Ok(head.plus(&tail))
        }
        Decay::Unknown => Err(Error::domain(
            "decay of the integrand is unknown; a half-line integral cannot be mapped",
        )),
    }
}

fn laguerre_pair_estimate<F: Fn(f64) -> Result<f64>>(g: F, beta: f64, n: usize) -> Result<EvalResult> {
    let rule = gauss_laguerre_rule_generalized(n, beta)?;
    let companion = if n > 2 {
        Some(gauss_laguerre_rule_generalized(n - 2, beta)?)
    } else {
        None
    };
    try_integrate_laguerre(g, &rule, companion.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_moments_are_exact() {
        // ∫₀^∞ t^{0.4} e^{−t²} dt = Γ(0.7)/2
        let r = integrate_half_line(
            |t| Ok(t.powf(0.4) * (-t * t).exp()),
            0.0,
            0.4,
            Decay::Gaussian { rate: 1.0 },
            8,
            1e-10,
        )
        .unwrap();
        let expect = crate::specfun::gamma_fn(0.7).unwrap() / 2.0;
        assert!((r.value - expect).abs() < 1e-13, "{} vs {expect}", r.value);
    }

    #[test]
    fn shifted_gaussian() {
        // ∫_1^∞ t e^{−2t²} dt = e^{−2}/4
        let r = integrate_half_line(
            |t| Ok(t * (-2.0 * t * t).exp()),
            1.0,
            1.0,
            Decay::Gaussian { rate: 2.0 },
            6,
            1e-10,
        )
        .unwrap();
        assert!((r.value - (-2f64).exp() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn power_tail() {
        // ∫_2^∞ dt/(1+t²) = π/2 − atan 2
        let r = integrate_half_line(
            |t| Ok(1.0 / (1.0 + t * t)),
            2.0,
            0.0,
            Decay::Power { exponent: 2.0 },
            10,
            1e-12,
        )
        .unwrap();
        assert!((r.value - (PI / 2.0 - 2f64.atan())).abs() < 1e-11);
        let r = integrate_half_line(
            |t| Ok(1.0 / (1.0 + t * t)),
            0.0,
            0.0,
            Decay::Power { exponent: 2.0 },
            10,
            1e-12,
        )
        .unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn unknown_decay_rejected() {
        assert!(integrate_half_line(|_| Ok(1.0), 0.0, 0.0, Decay::Unknown, 10, 1e-8)
            .unwrap_err()
            .is_domain());
        assert!(integrate_half_line(|_| Ok(1.0), 1.0, 0.0, Decay::Power { exponent: 0.5 }, 10, 1e-8).is_err());
    }
}
