//! Bessel functions of real order and real non-negative argument.
//!
//! Everything is expressed through the normalized forms
//!
//! * j_ν(x) = 2^ν Γ(ν+1) x^{−ν} J_ν(x), with j_ν(0) = 1,
//! * i_ν(x) = 2^ν Γ(ν+1) x^{−ν} I_ν(x), with i_ν(0) = 1,
//!
//! which are entire in x² and are what the Bessel operator B_γ works with.
//! J_ν and I_ν themselves are recovered by multiplying with (x/2)^ν / Γ(ν+1).

use std::f64::consts::PI;

use super::gamma::gamma_fn;
use crate::error::{Error, Result};

const SERIES_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 10_000;

/// Order ν of a Bessel function; ν ≥ −1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < -0.5 {
            return Err(Error::domain(format!("Bessel order must be >= -1/2, got {nu}")));
        }
        Ok(BesselOrder(nu))
    }

    /// The order (γ−1)/2 tied to the Bessel operator B_γ.
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        BesselOrder::new(0.5 * (gamma - 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Coefficient a_k(ν) of the Hankel asymptotic expansion.
fn hankel_coefficients(nu: f64, x: f64) -> impl Iterator<Item = f64> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut k = 0usize;
    std::iter::from_fn(move || {
        let out = term;
        k += 1;
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        Some(out)
    })
}

fn j_series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() {
            break;
        }
    }
    sum
}

// Miller's backward recurrence normalized by
// (x/2)^ν = Γ(ν+1) J_ν + Σ_{k≥1} (ν+2k) Γ(ν+k)/k! J_{ν+2k}.
// The (x/2)^ν factor cancels in the normalized function.
fn j_miller(nu: f64, x: f64) -> Result<f64> {
    let mut n = (x + 30.0 + 6.0 * x.cbrt()).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    // normalization weights c_{2k}
    let mut weights = vec![0.0; n / 2 + 1];
    weights[0] = gamma_fn(nu + 1.0)?;
    let mut g = weights[0]; // Γ(ν+k)/k! at k = 1 equals Γ(ν+1)
    for (k, w) in weights.iter_mut().enumerate().skip(1) {
        if k > 1 {
            g *= (nu + (k - 1) as f64) / k as f64;
        }
        *w = (nu + 2.0 * k as f64) * g;
    }

    let mut next = 0.0; // f_{k+1}
    let mut cur = 1e-300; // f_k
    let mut norm = if n.is_multiple_of(2) { weights[n / 2] * cur } else { 0.0 };
    for k in (1..=n).rev() {
        let prev = 2.0 * (nu + k as f64) / x * cur - next;
        next = cur;
        cur = prev;
        let idx = k - 1;
        if idx % 2 == 0 {
            norm += weights[idx / 2] * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    Ok(weights[0] * cur / norm)
}

fn j_asymptotic(nu: f64, x: f64) -> Result<f64> {
    // J_ν(x) ≈ sqrt(2/(πx)) (P cos ω − Q sin ω)
    let mut p = 0.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for (k, a) in hankel_coefficients(nu, x).enumerate().take(200) {
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-17 * p.abs().max(1e-300) {
            break;
        }
    }
    let omega = x - 0.5 * nu * PI - 0.25 * PI;
    let big_j = (2.0 / (PI * x)).sqrt() * (p * omega.cos() - q * omega.sin());
    Ok(gamma_fn(nu + 1.0)? * (2.0 / x).powf(nu) * big_j)
}

/// Normalized Bessel function j_ν(x) = 2^ν Γ(ν+1) x^{−ν} J_ν(x); j_ν(0) = 1.
pub fn normalized_bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    let nu = order.value();
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "normalized_bessel_j needs finite x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if nu == 0.5 {
        return Ok(x.sin() / x);
    }
    if nu == -0.5 {
        return Ok(x.cos());
    }
    if x <= 8.0 {
        Ok(j_series(nu, x))
    } else if x < 40.0 + nu * nu {
        j_miller(nu, x)
    } else {
        j_asymptotic(nu, x)
    }
}

/// J_ν(x) for x ≥ 0 and ν ≥ −1/2.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    let nu = order.value();
    let j = normalized_bessel_j(order, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    Ok(j * (0.5 * x).powf(nu) / gamma_fn(nu + 1.0)?)
}

fn i_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() {
            break;
        }
    }
    sum
}

/// Sum of the asymptotic series for e^{−x} I_ν(x) · sqrt(2πx).
fn i_asymptotic_sum(nu: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for (k, a) in hankel_coefficients(nu, x).enumerate().take(400) {
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        sum += if k % 2 == 0 { a } else { -a };
        if a.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

const I_ASYMPTOTIC_FROM: f64 = 25.0;

/// e^{−x} i_ν(x), the exponentially scaled normalized modified Bessel function.
pub fn normalized_bessel_i_scaled(order: BesselOrder, x: f64) -> Result<f64> {
    let nu = order.value();
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("modified Bessel needs finite x >= 0, got {x}")));
    }
    if x <= I_ASYMPTOTIC_FROM + nu * nu {
        return Ok((-x).exp() * i_series(nu, x));
    }
    let s = i_asymptotic_sum(nu, x) / (2.0 * PI * x).sqrt();
    Ok(gamma_fn(nu + 1.0)? * (2.0 / x).powf(nu) * s)
}

/// Normalized modified Bessel function i_ν(x) = 2^ν Γ(ν+1) x^{−ν} I_ν(x).
pub fn normalized_bessel_i(order: BesselOrder, x: f64) -> Result<f64> {
    if x > 700.0 {
        return Err(Error::Overflow(format!(
            "i_nu({x}) exceeds the double range; use the scaled form"
        )));
    }
    Ok(normalized_bessel_i_scaled(order, x)? * x.exp())
}

/// e^{−x} I_ν(x).
pub fn modified_bessel_i_scaled(order: BesselOrder, x: f64) -> Result<f64> {
    let nu = order.value();
    if x == 0.0 {
        return normalized_bessel_i_scaled(order, 0.0).map(|_| if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x > I_ASYMPTOTIC_FROM + nu * nu {
        return Ok(i_asymptotic_sum(nu, x) / (2.0 * PI * x).sqrt());
    }
    Ok(normalized_bessel_i_scaled(order, x)? * (0.5 * x).powf(nu) / gamma_fn(nu + 1.0)?)
}

/// I_ν(x) for x ≥ 0. Overflows past x ≈ 700; see [`modified_bessel_i_scaled`].
pub fn modified_bessel_i(order: BesselOrder, x: f64) -> Result<f64> {
    if x > 700.0 {
        return Err(Error::Overflow(format!(
            "I_nu({x}) exceeds the double range; use the scaled form"
        )));
    }
    Ok(modified_bessel_i_scaled(order, x)? * x.exp())
}
