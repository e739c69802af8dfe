//! Hankel transform of index γ and its inverse.

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::function::{Decay, TestFunction};
use crate::quadrature::{integrate_finite_offsets, integrate_half_line, try_integrate_finite, EndpointExponents};
use crate::specfun::{gamma_fn, normalized_bessel_j};
use crate::translation::GammaWeight;

pub const DEFAULT_ORDER: usize = 48;
const SPECTRAL_REACH: f64 = 46.0;

/// Index γ > 0 of the transform pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelIndex {
    gamma: GammaWeight,
    prefactor: f64,
}

impl HankelIndex {
    pub fn new(gamma: f64) -> Result<Self> {
        let g = GammaWeight::new(gamma)?;
        if gamma == 0.0 {
            return Err(Error::domain("Hankel index must be > 0"));
        }
        let prefactor = 2f64.powf(1.0 - gamma) / gamma_fn(g.half_plus())?.powi(2);
        Ok(HankelIndex { gamma: g, prefactor })
    }

    pub fn gamma(&self) -> GammaWeight {
        self.gamma
    }

    /// 2^{1−γ} / Γ((γ+1)/2)², the constant of the inverse transform.
    pub fn inverse_prefactor(&self) -> f64 {
        self.prefactor
    }
}

/// Largest abscissa an n-point rule samples, and where the decay has fallen
/// below e^{−46}.
fn node_span(decay: Decay, n: usize) -> Option<(f64, f64)> {
    let s_max = 4.0 * n as f64;
    match decay {
        Decay::Gaussian { rate } => Some(((s_max / rate).sqrt(), (SPECTRAL_REACH / rate).sqrt())),
        Decay::Exponential { rate } => Some((s_max / rate, SPECTRAL_REACH / rate)),
        _ => None,
    }
}

/// ∫₀^∞ f(x) j(x·at) x^γ dx. The n-point Laguerre rule is used while the
/// kernel completes fewer than about 0.64 n periods over the sampled range;
/// beyond that, adaptive panels (at least one per half period) over the
/// range where f is non-negligible.
fn transform(f: &TestFunction, at: f64, idx: HankelIndex, n: usize) -> Result<EvalResult> {
    let g = idx.gamma.value();
    let order = idx.gamma.bessel_order();
    let h = |x: f64| Ok(f.eval(x)? * normalized_bessel_j(order, x * at)? * x.powf(g));
    if let Some((x_max, reach)) = node_span(f.decay(), n) {
        if at * x_max > 4.0 * n as f64 {
            let panels = (at * reach / std::f64::consts::PI).ceil() as usize + 1;
            let r = integrate_finite_offsets(|x, _, _| h(x), 0.0, reach, EndpointExponents::smooth(), 1e-13, panels)?;
            return Ok(EvalResult {
                method: "adaptive-gauss",
                ..r
            });
        }
    }
    integrate_half_line(h, 0.0, g, f.decay(), n, 1e-10)
}

/// H_γ[f](ξ) = ∫₀^∞ f(x) j_{(γ−1)/2}(xξ) x^γ dx.
pub fn hankel_forward(f: &TestFunction, xi: f64, idx: HankelIndex, n: usize) -> Result<EvalResult> {
    if !(xi >= 0.0) {
        return Err(Error::domain(format!("frequency must be >= 0, got {xi}")));
    }
    transform(f, xi, idx, n)
}

/// H_γ⁻¹[F](x) = 2^{1−γ}/Γ((γ+1)/2)² ∫₀^∞ j_{(γ−1)/2}(xξ) F(ξ) ξ^γ dξ.
pub fn hankel_inverse(big_f: &TestFunction, x: f64, idx: HankelIndex, n: usize) -> Result<EvalResult> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("x must be >= 0, got {x}")));
    }
    Ok(transform(big_f, x, idx, n)?.scaled(idx.prefactor))
}

/// Decay of H_γ[f] when it is known from that of f.
pub fn dual_decay(decay: Decay) -> Decay {
    match decay {
        // e^{−c x²} ↦ const · e^{−ξ²/(4c)}
        Decay::Gaussian { rate } => Decay::Gaussian { rate: 0.25 / rate },
        _ => Decay::Unknown,
    }
}

/// H_γ⁻¹[t^{−2α} H_γ f](x), the potential computed through the transform pair.
///
/// The outer integral is split at t = 1: adaptive quadrature with endpoint
/// exponent γ−2α on [0, 1], then adaptive quadrature on [1, T] where the
/// Gaussian decay of H_γ f has fallen below e^{−46}. Beyond T the inner
/// transform is no longer resolved by an n-point rule and is not sampled.
pub fn spectral_potential(f: &TestFunction, x: f64, alpha: f64, idx: HankelIndex, n: usize) -> Result<EvalResult> {
    let g = idx.gamma.value();
    if !(alpha > 0.0 && alpha < idx.gamma.half_plus()) {
        return Err(Error::domain(format!(
            "spectral potential needs 0 < alpha < (gamma+1)/2, got alpha = {alpha}"
        )));
    }
    let outer_decay = dual_decay(f.decay());
    if outer_decay == Decay::Unknown {
        return Err(Error::domain("spectral potential needs a Gaussian-decaying function"));
    }
    let order = idx.gamma.bessel_order();
    let integrand = |t: f64| -> Result<f64> {
        let inner = hankel_forward(f, t, idx, n)?.value;
        Ok(normalized_bessel_j(order, x * t)? * inner * t.powf(g - 2.0 * alpha))
    };
    let head = try_integrate_finite(integrand, 0.0, 1.0, EndpointExponents::new(g - 2.0 * alpha, 0.0)?, 1e-9)?;
    let Decay::Gaussian { rate } = outer_decay else {
        unreachable!("checked above")
    };
    let reach = (SPECTRAL_REACH / rate).sqrt().max(2.0);
    let tail = try_integrate_finite(integrand, 1.0, reach, EndpointExponents::smooth(), 1e-9)?;
    Ok(EvalResult {
        method: "hankel-spectral",
        ..head.plus(&tail).scaled(idx.prefactor)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_image(gamma: f64, xi: f64) -> f64 {
        gamma_fn(0.5 * (gamma + 1.0)).unwrap() / 2.0 * (-xi * xi / 4.0).exp()
    }

    #[test]
    fn forward_of_gaussian() {
        let f = TestFunction::gaussian(1.0).unwrap();
        let r = hankel_forward(&f, 0.0, HankelIndex::new(1.0).unwrap(), 48).unwrap();
        assert!((r.value - 0.5).abs() < 1e-13);
        for xi in [1.0, 2.0] {
            let r = hankel_forward(&f, xi, HankelIndex::new(0.5).unwrap(), 48).unwrap();
            assert!((r.value - gaussian_image(0.5, xi)).abs() < 1e-8, "ξ={xi}: {}", r.value);
        }
    }

    #[test]
    fn forward_at_high_frequency() {
        let f = TestFunction::gaussian(1.0).unwrap();
        for g in [0.5, 2.0] {
            let idx = HankelIndex::new(g).unwrap();
            for xi in [14.0, 20.0, 27.0] {
                let r = hankel_forward(&f, xi, idx, 48).unwrap();
                assert!(
                    (r.value - gaussian_image(g, xi)).abs() < 1e-12,
                    "γ={g} ξ={xi}: {}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn round_trip_through_numerical_image() {
        let f = TestFunction::gaussian(1.0).unwrap();
        for g in [0.5, 2.0] {
            let idx = HankelIndex::new(g).unwrap();
            let inner = f.clone();
            let big_f = TestFunction::custom(
                move |xi| hankel_forward(&inner, xi, idx, 48).unwrap().value,
                Decay::Gaussian { rate: 0.25 },
            );
            for x in [0.25, 0.5, 1.0, 2.0] {
                let r = hankel_inverse(&big_f, x, idx, 48).unwrap();
                assert!((r.value - (-x * x).exp()).abs() < 1e-4, "γ={g} x={x}: {}", r.value);
            }
        }
    }

    #[test]
    fn inverse_of_zero_and_of_known_image() {
        let idx = HankelIndex::new(0.5).unwrap();
        assert_eq!(hankel_inverse(&TestFunction::zero(), 1.0, idx, 48).unwrap().value, 0.0);
        let c = gaussian_image(0.5, 0.0);
        let big_f = TestFunction::custom(move |xi| c * (-xi * xi / 4.0).exp(), Decay::Gaussian { rate: 0.25 });
        let r = hankel_inverse(&big_f, 1.0, idx, 48).unwrap();
        assert!((r.value - (-1f64).exp()).abs() < 1e-5);
    }

    #[test]
    fn index_validation() {
        assert!(HankelIndex::new(0.0).is_err());
        assert!(HankelIndex::new(-1.0).is_err());
        let idx = HankelIndex::new(1.0).unwrap();
        assert!((idx.inverse_prefactor() - 1.0).abs() < 1e-15);
    }
}
