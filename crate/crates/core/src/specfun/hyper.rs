//! Gauss ₂F₁ and Kummer ₁F₁ for real parameters and arguments.

use super::gamma::{gamma_fn, ln_gamma};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_finite_offsets, EndpointExponents};

const REL_STOP: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;
const SERIES_RADIUS: f64 = 0.9;
const EULER_TOL: f64 = 1e-13;

/// Parameters (a, b; c) and argument z of ₂F₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HyperParams {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        if c <= 0.0 && c == c.floor() {
            return Err(Error::Pole {
                function: "2F1 (parameter c)",
                at: c,
            });
        }
        if ![a, b, c, z].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("2F1 parameters must be finite"));
        }
        Ok(HyperParams { a, b, c, z })
    }
}

fn nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.floor()
}

/// Plain power series Σ (a)_k (b)_k / ((c)_k k!) z^k.
///
/// Terminates early when a or b is a non-positive integer.
pub fn gauss_2f1_series(p: HyperParams) -> Result<f64> {
    let HyperParams { a, b, c, z } = p;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() <= REL_STOP * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::accuracy("2F1 series (term cap)", sum, term.abs()))
}

/// Euler integral Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^{b−1}(1−t)^{c−b−1}(1−zt)^{−a} dt,
/// valid for 0 < b < c and z ≤ 1 (with c−a−b > 0 at z = 1).
pub fn gauss_2f1_euler(p: HyperParams) -> Result<f64> {
    let HyperParams { a, b, c, z } = p;
    if !(b > 0.0 && c > b) {
        return Err(Error::Method(format!(
            "Euler integral for 2F1 needs 0 < b < c, got b = {b}, c = {c}"
        )));
    }
    if z > 1.0 {
        return Err(Error::domain(format!("2F1 argument z = {z} > 1 is not supported")));
    }
    if z == 1.0 && c - a - b <= 0.0 {
        return Err(Error::Divergent(format!(
            "2F1 at z = 1 with c - a - b = {} <= 0",
            c - a - b
        )));
    }
    // Near z = 1 the factor (1−zt)^{−a} builds a boundary layer that behaves
    // like (1−t)^{c−a−b−1}; absorb the stronger of the two.
    let right = if c - a - b > 0.0 {
        (c - b - 1.0).min(c - a - b - 1.0)
    } else {
        c - b - 1.0
    };
    let exps = EndpointExponents::new(b - 1.0, right)?;
    let integrand = |_: f64, t: f64, one_minus: f64| {
        let base = if z == 1.0 {
            one_minus.powf(c - a - b - 1.0)
        } else {
            one_minus.powf(c - b - 1.0) * (1.0 - z * t).powf(-a)
        };
        Ok(t.powf(b - 1.0) * base)
    };
    let pref = (ln_gamma(c)? - ln_gamma(b)? - ln_gamma(c - b)?).exp();
    let r = integrate_finite_offsets(integrand, 0.0, 1.0, exps, EULER_TOL, 1)?;
    Ok(pref * r.value)
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real arguments z ≤ 1.
///
/// Series for |z| ≤ 0.9, the z ↔ 1−z connection formula (or the Euler
/// integral when c−a−b is an integer) on (0.9, 1], and the Pfaff
/// transformation for z < −0.9.
pub fn gauss_2f1(p: HyperParams) -> Result<f64> {
    let HyperParams { a, b, c, z } = p;
    if z == 0.0 {
        return Ok(1.0);
    }
    if nonpositive_integer(a) || nonpositive_integer(b) {
        return gauss_2f1_series(p);
    }
    if z.abs() <= SERIES_RADIUS {
        return gauss_2f1_series(p);
    }
    if z > 1.0 {
        return Err(Error::domain(format!("2F1 argument z = {z} > 1 is not supported")));
    }
    if z < -SERIES_RADIUS {
        // Pfaff: (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1)), new argument in (0.47, 1)
        let w = z / (z - 1.0);
        let inner = gauss_2f1(HyperParams::new(a, c - b, c, w)?)?;
        return Ok((1.0 - z).powf(-a) * inner);
    }
    if z == 1.0 && c - a - b <= 0.0 {
        return Err(Error::Divergent(format!(
            "2F1 at z = 1 with c - a - b = {} <= 0",
            c - a - b
        )));
    }
    if !is_integer(c - a - b) {
        return gauss_2f1_complement(a, b, c, 1.0 - z);
    }
    if b > 0.0 && c > b {
        gauss_2f1_euler(p)
    } else if a > 0.0 && c > a {
        gauss_2f1_euler(HyperParams { a: b, b: a, c, z })
    } else {
        // No Euler representation; fall back to the (slow) series, capped.
        gauss_2f1_series(p)
    }
}

fn is_integer(v: f64) -> bool {
    v == v.round()
}

fn recip_gamma(x: f64) -> Result<f64> {
    if nonpositive_integer(x) {
        return Ok(0.0);
    }
    Ok(1.0 / gamma_fn(x)?)
}

/// ₂F₁(a, b; c; 1−w) for 0 ≤ w ≤ 1, with w supplied directly so that
/// arguments close to 1 keep full relative accuracy in 1−z.
///
/// For w < 1/2 and non-integer s = c−a−b:
/// Γ(c)Γ(s)/(Γ(c−a)Γ(c−b)) ₂F₁(a, b; 1−s; w)
/// + w^s Γ(c)Γ(−s)/(Γ(a)Γ(b)) ₂F₁(c−a, c−b; 1+s; w).
pub fn gauss_2f1_complement(a: f64, b: f64, c: f64, w: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::domain(format!("complement argument w = {w} outside [0, 1]")));
    }
    let z = 1.0 - w;
    let p = HyperParams::new(a, b, c, z)?;
    if w >= 0.5 || nonpositive_integer(a) || nonpositive_integer(b) {
        return gauss_2f1_series(p);
    }
    let s = c - a - b;
    if w == 0.0 {
        if s <= 0.0 {
            return Err(Error::Divergent(format!("2F1 at z = 1 with c - a - b = {s} <= 0")));
        }
        return Ok(gamma_fn(c)? * gamma_fn(s)? * recip_gamma(c - a)? * recip_gamma(c - b)?);
    }
    if is_integer(s) {
        return gauss_2f1(p);
    }
    let gc = gamma_fn(c)?;
    let first = gc * gamma_fn(s)? * recip_gamma(c - a)? * recip_gamma(c - b)?;
    let second = gc * gamma_fn(-s)? * recip_gamma(a)? * recip_gamma(b)?;
    let mut v = 0.0;
    if first != 0.0 {
        v += first * gauss_2f1_series(HyperParams::new(a, b, 1.0 - s, w)?)?;
    }
    if second != 0.0 {
        v += second * w.powf(s) * gauss_2f1_series(HyperParams::new(c - a, c - b, 1.0 + s, w)?)?;
    }
    Ok(v)
}

fn kummer_series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() <= REL_STOP * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::accuracy("1F1 series (term cap)", sum, term.abs()))
}

/// Kummer confluent hypergeometric function ₁F₁(a; b; z).
///
/// Negative arguments are mapped through ₁F₁(a; b; z) = e^z ₁F₁(b−a; b; −z)
/// so that the summed series never alternates.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if nonpositive_integer(b) {
        return Err(Error::Pole {
            function: "1F1 (parameter b)",
            at: b,
        });
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if a == b {
        return Ok(z.exp());
    }
    if z < 0.0 && !nonpositive_integer(a) {
        return Ok(z.exp() * kummer_series(b - a, b, -z)?);
    }
    kummer_series(a, b, z)
}

/// e^{−z} ₁F₁(a; b; z), finite for large positive z.
pub fn kummer_1f1_scaled(a: f64, b: f64, z: f64) -> Result<f64> {
    if z <= 600.0 {
        return Ok((-z).exp() * kummer_1f1(a, b, z)?);
    }
    // Large-z asymptotic: Γ(b)/Γ(a) z^{a−b} Σ (b−a)_k (1−a)_k / k! z^{−k}
    if nonpositive_integer(a) {
        return Ok(0.0);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..60 {
        let kf = k as f64;
        let next = term * (b - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * z);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= REL_STOP * sum.abs() {
            break;
        }
    }
    let log_pref = ln_gamma(b)? - ln_gamma(a)? + (a - b) * z.ln();
    Ok(gamma_fn(b)?.signum() * gamma_fn(a)?.signum() * log_pref.exp() * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(a: f64, b: f64, c: f64, z: f64) -> HyperParams {
        HyperParams::new(a, b, c, z).unwrap()
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(gauss_2f1(p(0.3, -2.5, 1.7, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn logarithm_identity() {
        let expect = -(0.5f64).ln() / 0.5;
        assert_relative_eq!(gauss_2f1(p(1.0, 1.0, 2.0, 0.5)).unwrap(), expect, max_relative = 1e-14);
        // same identity through the Euler path
        let z: f64 = 0.97;
        let expect = -(1.0 - z).ln() / z;
        assert_relative_eq!(gauss_2f1(p(1.0, 1.0, 2.0, z)).unwrap(), expect, max_relative = 1e-11);
        // and through Pfaff
        let z: f64 = -3.0;
        let expect = -(1.0 - z).ln() / z;
        assert_relative_eq!(gauss_2f1(p(1.0, 1.0, 2.0, z)).unwrap(), expect, max_relative = 1e-11);
    }

    #[test]
    fn gauss_summation_at_one() {
        let expect = gamma_fn(0.5).unwrap() / gamma_fn(0.75).unwrap().powi(2);
        assert_relative_eq!(
            gauss_2f1(p(0.25, 0.25, 1.0, 1.0)).unwrap(),
            expect,
            max_relative = 1e-10
        );
        assert_relative_eq!(expect, 1.18034, max_relative = 1e-5);
    }

    #[test]
    fn divergence_and_domain() {
        assert!(matches!(gauss_2f1(p(1.0, 1.0, 1.5, 1.0)), Err(Error::Divergent(_))));
        assert!(gauss_2f1(p(1.0, 1.0, 2.0, 1.5)).unwrap_err().is_domain());
        assert!(matches!(HyperParams::new(1.0, 1.0, -2.0, 0.3), Err(Error::Pole { .. })));
    }

    #[test]
    fn complement_matches_euler_and_log_identity() {
        for &(a, b, c) in &[(0.05, 0.25, 0.5), (0.3, 0.4, 1.2), (1.2, 0.7, 1.1)] {
            for &w in &[0.3, 0.05, 1e-4] {
                if c - a - b < 0.0 && w < 1e-3 {
                    // value ~ w^{c−a−b}; the absolute Euler tolerance cannot follow
                    continue;
                }
                let via_euler = gauss_2f1_euler(p(a, b, c, 1.0 - w)).unwrap();
                let conn = gauss_2f1_complement(a, b, c, w).unwrap();
                assert_relative_eq!(conn, via_euler, max_relative = 1e-10);
            }
        }
        // ₂F₁(1/2, 1/2; 3/2; z) = asin(√z)/√z, integer-free c−a−b = 1/2
        let w = 1e-9f64;
        let z = 1.0 - w;
        let expect = (std::f64::consts::FRAC_PI_2 - w.sqrt().asin()) / z.sqrt();
        assert_relative_eq!(
            gauss_2f1_complement(0.5, 0.5, 1.5, w).unwrap(),
            expect,
            max_relative = 1e-13
        );
        assert!(matches!(
            gauss_2f1_complement(0.5, 0.5, 0.9, 0.0),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn terminating_series_is_exact() {
        for &(b, c, z) in &[(0.25, 0.5, 0.95), (1.5, 3.0, 1.0), (0.7, 1.1, 0.3)] {
            let v = gauss_2f1(p(-1.0, b, c, z)).unwrap();
            assert!((v - (1.0 - b / c * z)).abs() <= 2.0 * f64::EPSILON);
        }
    }

    #[test]
    fn kummer_values() {
        assert_eq!(kummer_1f1(0.3, 1.2, 0.0).unwrap(), 1.0);
        assert_relative_eq!(kummer_1f1(0.8, 0.8, 1.3).unwrap(), 1.3f64.exp(), max_relative = 1e-15);
        // 25-term brute series
        let (a, b, z): (f64, f64, f64) = (0.7, 0.75, 0.04);
        let mut brute = 0.0;
        let mut t = 1.0;
        for k in 0..25 {
            brute += t;
            let kf = k as f64;
            t *= (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        }
        assert_relative_eq!(kummer_1f1(a, b, z).unwrap(), brute, max_relative = 1e-15);
    }

    #[test]
    fn kummer_negative_argument() {
        // 1F1(1; 2; z) = (e^z − 1)/z
        let z = -12.0f64;
        assert_relative_eq!(
            kummer_1f1(1.0, 2.0, z).unwrap(),
            (z.exp() - 1.0) / z,
            max_relative = 1e-13
        );
    }

    #[test]
    fn kummer_scaled_asymptotic_branch() {
        let z = 700.0f64;
        // 1F1(1; 2; z) e^{-z} = (1 − e^{−z})/z
        assert_relative_eq!(kummer_1f1_scaled(1.0, 2.0, z).unwrap(), 1.0 / z, max_relative = 1e-13);
        let below = kummer_1f1_scaled(0.7, 0.75, 599.0).unwrap();
        let above = kummer_1f1_scaled(0.7, 0.75, 601.0).unwrap();
        assert!((below / above - 1.0).abs() < 1e-2);
    }
}
