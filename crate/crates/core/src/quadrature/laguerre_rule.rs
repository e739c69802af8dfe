use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::specfun::{laguerre_pair, ln_gamma};

pub const MAX_ORDER: usize = 128;

/// Gauss–Laguerre rule for ∫₀^∞ x^β e^{−x} h(x) dx ≈ Σ w_i h(y_i).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    beta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // w_i e^{y_i} y_i^{−β}, kept separately so large nodes do not underflow
    unweighted: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ w_i h(y_i).
    pub fn apply<F: Fn(f64) -> f64>(&self, h: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&y, &w)| w * h(y)).sum()
    }

    /// Σ w_i e^{y_i} y_i^{−β} g(y_i), the rule applied to an unweighted integrand.
    pub(crate) fn sum_unweighted<F: Fn(f64) -> Result<f64>>(&self, g: F) -> Result<f64> {
        let mut acc = 0.0;
        for (&y, &c) in self.nodes.iter().zip(&self.unweighted) {
            let v = g(y)?;
            if !v.is_finite() {
                return Err(Error::NonFinite { node: y, value: v });
            }
            acc += c * v;
        }
        Ok(acc)
    }
}

/// Newton iteration safeguarded by a sign-change bracket [lo, hi].
fn bracketed_root(n: usize, beta: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let f = |x: f64| laguerre_pair(n, beta, x);
    let mut f_lo = f(lo).0;
    let f_hi = f(hi).0;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Construction(format!("no sign change of L_{n} on [{lo}, {hi}]")));
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (p, q) = f(x);
        if p == 0.0 {
            return Ok(x);
        }
        if p.signum() == f_lo.signum() {
            lo = x;
            f_lo = p;
        } else {
            hi = x;
        }
        let dp = (n as f64 * p - (n as f64 + beta) * q) / x;
        let newton = x - p / dp;
        let next = if newton > lo && newton < hi && dp != 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs() || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Roots of L_n^{(β)} found order by order: the roots of L_{m−1} bracket
/// those of L_m (interlacing), with 0 and an upper bound as outer brackets.
fn laguerre_roots(n: usize, beta: f64) -> Result<Vec<f64>> {
    let mut roots: Vec<f64> = Vec::new();
    for m in 1..=n {
        let upper = 4.0 * m as f64 + 2.0 * beta + 10.0;
        let mut brackets = Vec::with_capacity(m + 1);
        brackets.push(0.0);
        brackets.extend_from_slice(&roots);
        brackets.push(upper);
        let mut next = Vec::with_capacity(m);
        for w in brackets.windows(2) {
            next.push(bracketed_root(m, beta, w[0], w[1])?);
        }
        if next.windows(2).any(|w| w[1] <= w[0]) || next[0] <= 0.0 {
            return Err(Error::Construction(format!("roots of L_{m} not strictly increasing")));
        }
        roots = next;
    }
    Ok(roots)
}

type RuleCache = Mutex<HashMap<(usize, u64), QuadratureRule>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// n-point rule for the weight x^β e^{−x}; β > −1.
///
/// Rules are memoized per (n, β).
pub fn gauss_laguerre_rule_generalized(n: usize, beta: f64) -> Result<QuadratureRule> {
    let key = (n, beta.to_bits());
    if let Some(rule) = cache().lock().ok().and_then(|c| c.get(&key).cloned()) {
        return Ok(rule);
    }
    let rule = build_rule(n, beta)?;
    if let Ok(mut c) = cache().lock() {
        c.insert(key, rule.clone());
    }
    Ok(rule)
}

fn build_rule(n: usize, beta: f64) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::domain(format!(
            "Gauss-Laguerre order must be in 1..={MAX_ORDER}, got {n}"
        )));
    }
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "Laguerre weight exponent must be > -1, got {beta}"
        )));
    }
    let nodes = laguerre_roots(n, beta)?;
    // w_i = Γ(n+β+1) y_i / (n! (n+1)² L_{n+1}(y_i)²)
    let log_ratio = ln_gamma(n as f64 + beta + 1.0)? - ln_gamma(n as f64 + 1.0)?;
    let np1 = (n + 1) as f64;
    let log_w: Vec<f64> = nodes
        .iter()
        .map(|&y| {
            let l_next = laguerre_pair(n + 1, beta, y).0;
            log_ratio + y.ln() - 2.0 * (np1 * l_next.abs()).ln()
        })
        .collect();
    // Roundoff in L_{n+1} leaves Σ w_i off by a few 1e-13 at large n;
    // rescale so the rule integrates the weight function exactly.
    let total: f64 = log_w.iter().map(|l| l.exp()).sum();
    let shift = ln_gamma(beta + 1.0)? - total.ln();
    let weights = log_w.iter().map(|l| (l + shift).exp()).collect();
    let unweighted = nodes
        .iter()
        .zip(&log_w)
        .map(|(&y, l)| (l + shift + y - beta * y.ln()).exp())
        .collect();
    Ok(QuadratureRule {
        order: n,
        beta,
        nodes,
        weights,
        unweighted,
    })
}

/// n-point Gauss–Laguerre rule for the weight e^{−x}.
pub fn gauss_laguerre_rule(n: usize) -> Result<QuadratureRule> {
    gauss_laguerre_rule_generalized(n, 0.0)
}

/// ∫₀^∞ g(y) dy ≈ Σ w_i e^{y_i} y_i^{−β} g(y_i).
///
/// With a companion rule the error estimate is the difference between the two
/// results; otherwise it is reported as zero.
pub fn integrate_laguerre<F: Fn(f64) -> f64>(
    g: F,
    rule: &QuadratureRule,
    companion: Option<&QuadratureRule>,
) -> Result<EvalResult> {
    try_integrate_laguerre(|y| Ok(g(y)), rule, companion)
}

pub(crate) fn try_integrate_laguerre<F: Fn(f64) -> Result<f64>>(
    g: F,
    rule: &QuadratureRule,
    companion: Option<&QuadratureRule>,
) -> Result<EvalResult> {
    let value = rule.sum_unweighted(&g)?;
    let mut evaluations = rule.order();
    let error = match companion {
        Some(c) => {
            evaluations += c.order();
            (value - c.sum_unweighted(&g)?).abs()
        }
        None => 0.0,
    };
    Ok(EvalResult::new(value, error, "gauss-laguerre", evaluations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma_fn, laguerre_poly};
    use approx::assert_relative_eq;

    #[test]
    fn one_point_rule() {
        let r = gauss_laguerre_rule(1).unwrap();
        assert_relative_eq!(r.nodes()[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, max_relative = 1e-15);
    }

    #[test]
    fn two_point_rule() {
        let r = gauss_laguerre_rule(2).unwrap();
        let s = 2f64.sqrt();
        assert!((r.nodes()[0] - (2.0 - s)).abs() < 1e-14);
        assert!((r.nodes()[1] - (2.0 + s)).abs() < 1e-14);
        assert!((r.weights()[0] - (2.0 + s) / 4.0).abs() < 1e-14);
        assert!((r.weights()[1] - (2.0 - s) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_one_and_match_formula() {
        for n in [3, 10, 24, 64, 128] {
            let r = gauss_laguerre_rule(n).unwrap();
            let total: f64 = r.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-13, "n = {n}: {total}");
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
            if n <= 24 {
                for (&y, &w) in r.nodes().iter().zip(r.weights()) {
                    let l = laguerre_poly(n + 1, y);
                    let np1 = (n + 1) as f64;
                    assert_relative_eq!(w, y / (np1 * np1 * l * l), max_relative = 1e-12);
                    assert!(laguerre_poly(n, y).abs() < 1e-10 * (1.0 + l.abs() * y));
                }
            }
        }
    }

    #[test]
    fn generalized_weights_sum_to_gamma() {
        for beta in [-0.3, 0.5, 2.25] {
            let r = gauss_laguerre_rule_generalized(12, beta).unwrap();
            let total: f64 = r.weights().iter().sum();
            assert_relative_eq!(total, gamma_fn(beta + 1.0).unwrap(), max_relative = 1e-13);
        }
    }

    #[test]
    fn order_bounds() {
        assert!(gauss_laguerre_rule(0).is_err());
        assert!(gauss_laguerre_rule(129).is_err());
        assert!(gauss_laguerre_rule_generalized(4, -1.0).is_err());
    }

    #[test]
    fn unweighted_integrals() {
        let r = gauss_laguerre_rule(10).unwrap();
        let e = integrate_laguerre(|y| (-y).exp(), &r, None).unwrap();
        assert!((e.value - 1.0).abs() < 1e-14);
        let e = integrate_laguerre(|y| y * (-y).exp(), &r, None).unwrap();
        assert!((e.value - 1.0).abs() < 1e-13);
        // the 10-point rule misses √π/2 by 3.2917e-4 (independent numpy check)
        let e = integrate_laguerre(|y| (-y * y).exp(), &r, None).unwrap();
        let err = e.value - std::f64::consts::PI.sqrt() / 2.0;
        assert!((err - 3.2917445e-4).abs() < 1e-10, "{err}");
    }

    #[test]
    fn companion_estimate_and_nonfinite() {
        let r = gauss_laguerre_rule(10).unwrap();
        let c = gauss_laguerre_rule(8).unwrap();
        let e = integrate_laguerre(|y| (-y * y).exp(), &r, Some(&c)).unwrap();
        assert!(e.error > 0.0 && e.error < 1e-2);
        let bad = integrate_laguerre(|y| if y > 5.0 { f64::NAN } else { 0.0 }, &r, None);
        assert!(matches!(bad, Err(Error::NonFinite { .. })));
    }
}
