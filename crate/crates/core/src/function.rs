//! Even test functions with decay metadata and their Bessel-operator images.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::specfun::{gamma_fn, normalized_bessel_j, BesselOrder};

/// How a function decays as x → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// O(e^{−rate·x²})
    Gaussian {
        rate: f64,
    },
    /// O(e^{−rate·x})
    Exponential {
        rate: f64,
    },
    /// O(x^{−exponent})
    Power {
        exponent: f64,
    },
    Unknown,
}

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type WithGamma = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum FunctionKind {
    /// e^{−c x²}
    Gaussian {
        scale: f64,
    },
    /// j_ν(λ x)
    BesselJ {
        order: BesselOrder,
        lambda: f64,
    },
    /// x^p
    Power {
        p: f64,
    },
    Constant {
        value: f64,
    },
    Zero,
    Custom {
        f: Scalar,
        bessel_op: Option<WithGamma>,
        envelope: Option<Scalar>,
    },
}

/// An even function of x, evaluated at |x|.
#[derive(Clone)]
pub struct TestFunction {
    kind: FunctionKind,
    decay: Decay,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestFunction({}, {:?})", self.name(), self.decay)
    }
}

const FD_STEP: f64 = 1e-4;

impl TestFunction {
    pub fn gaussian(scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::domain(format!("Gaussian scale must be positive, got {scale}")));
        }
        Ok(TestFunction {
            kind: FunctionKind::Gaussian { scale },
            decay: Decay::Gaussian { rate: scale },
        })
    }

    pub fn bessel_j(nu: f64, lambda: f64) -> Result<Self> {
        let order = BesselOrder::new(nu)?;
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "Bessel frequency must be positive, got {lambda}"
            )));
        }
        Ok(TestFunction {
            kind: FunctionKind::BesselJ { order, lambda },
            decay: Decay::Power { exponent: nu + 0.5 },
        })
    }

    pub fn power(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::domain("power exponent must be finite"));
        }
        Ok(TestFunction {
            kind: FunctionKind::Power { p },
            decay: Decay::Power { exponent: -p },
        })
    }

    pub fn constant(value: f64) -> Self {
        TestFunction {
            kind: FunctionKind::Constant { value },
            decay: Decay::Power { exponent: 0.0 },
        }
    }

    pub fn zero() -> Self {
        TestFunction {
            kind: FunctionKind::Zero,
            decay: Decay::Gaussian { rate: 1.0 },
        }
    }

    /// A user-supplied even function; `f` must be safe to call concurrently.
    pub fn custom<F>(f: F, decay: Decay) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TestFunction {
            kind: FunctionKind::Custom {
                f: Arc::new(f),
                bessel_op: None,
                envelope: None,
            },
            decay,
        }
    }

    /// Attach an analytic B_γ image `(x, γ) ↦ B_γ f(x)` to a custom function.
    pub fn with_bessel_op<G>(mut self, g: G) -> Self
    where
        G: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        if let FunctionKind::Custom { bessel_op, .. } = &mut self.kind {
            *bessel_op = Some(Arc::new(g));
        }
        self
    }

    /// Attach a bound t ↦ sup_{z ≥ t} |f(z)| to a custom function.
    pub fn with_envelope<G>(mut self, g: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if let FunctionKind::Custom { envelope, .. } = &mut self.kind {
            *envelope = Some(Arc::new(g));
        }
        self
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FunctionKind::Gaussian { scale } => format!("exp(-{scale} x^2)"),
            FunctionKind::BesselJ { order, lambda } => format!("j_{}({lambda} x)", order.value()),
            FunctionKind::Power { p } => format!("x^{p}"),
            FunctionKind::Constant { value } => format!("{value}"),
            FunctionKind::Zero => "0".to_string(),
            FunctionKind::Custom { .. } => "custom".to_string(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let x = x.abs();
        match &self.kind {
            FunctionKind::Gaussian { scale } => Ok((-scale * x * x).exp()),
            FunctionKind::BesselJ { order, lambda } => normalized_bessel_j(*order, lambda * x),
            FunctionKind::Power { p } => Ok(x.powf(*p)),
            FunctionKind::Constant { value } => Ok(*value),
            FunctionKind::Zero => Ok(0.0),
            FunctionKind::Custom { f, .. } => Ok(f(x)),
        }
    }

    /// B_γ f(x) = f''(x) + (γ/x) f'(x).
    ///
    /// Built-ins use closed forms; custom functions without an attached image
    /// fall back to five-point finite differences.
    pub fn bessel_op(&self, x: f64, gamma: f64) -> Result<f64> {
        let x = x.abs();
        match &self.kind {
            FunctionKind::Gaussian { scale: c } => {
                Ok((4.0 * c * c * x * x - 2.0 * c * (gamma + 1.0)) * (-c * x * x).exp())
            }
            FunctionKind::BesselJ { order, lambda } => {
                let nu = order.value();
                let l2 = lambda * lambda;
                let j = normalized_bessel_j(*order, lambda * x)?;
                let drift = gamma - 2.0 * nu - 1.0;
                if drift == 0.0 {
                    return Ok(-l2 * j);
                }
                let j1 = normalized_bessel_j(BesselOrder::new(nu + 1.0)?, lambda * x)?;
                Ok(-l2 * j - drift * l2 / (2.0 * (nu + 1.0)) * j1)
            }
            FunctionKind::Power { p } => Ok(p * (p - 1.0 + gamma) * x.powf(p - 2.0)),
            FunctionKind::Constant { .. } | FunctionKind::Zero => Ok(0.0),
            FunctionKind::Custom { f, bessel_op, .. } => match bessel_op {
                Some(g) => Ok(g(x, gamma)),
                None => Ok(finite_difference_bessel(|z| f(z.abs()), x, gamma)),
            },
        }
    }

    /// An upper bound for sup_{z ≥ t} |f(z)|, when one is known.
    pub fn envelope(&self, t: f64) -> Option<f64> {
        let t = t.max(0.0);
        match &self.kind {
            FunctionKind::Gaussian { scale } => Some((-scale * t * t).exp()),
            FunctionKind::BesselJ { order, lambda } => {
                let nu = order.value();
                let z = lambda * t;
                if z <= 0.0 {
                    return Some(1.0);
                }
                // |J_ν(z)| ≤ sqrt(2/(πz)) (1 + |4ν²−1|/(8z)) for z > 0, ν ≥ −1/2
                let lead = gamma_fn(nu + 1.0).ok()?
                    * 2f64.powf(nu)
                    * (2.0 / std::f64::consts::PI).sqrt()
                    * (1.0 + (4.0 * nu * nu - 1.0).abs() / (8.0 * z));
                Some((lead * z.powf(-(nu + 0.5))).min(1.0))
            }
            FunctionKind::Power { p } => {
                if *p <= 0.0 && t > 0.0 {
                    Some(t.powf(*p))
                } else if *p == 0.0 {
                    Some(1.0)
                } else {
                    None
                }
            }
            FunctionKind::Constant { value } => Some(value.abs()),
            FunctionKind::Zero => Some(0.0),
            FunctionKind::Custom { envelope, .. } => envelope.as_ref().map(|g| g(t)),
        }
    }
}

/// Five-point finite-difference approximation of B_γ g at x; near the origin
/// the limit (1+γ) g''(x) is used.
pub fn finite_difference_bessel<F: Fn(f64) -> f64>(g: F, x: f64, gamma: f64) -> f64 {
    let h = FD_STEP;
    let (m2, m1, c, p1, p2) = (g(x - 2.0 * h), g(x - h), g(x), g(x + h), g(x + 2.0 * h));
    let second = (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
    if x < 1e-3 {
        return (1.0 + gamma) * second;
    }
    let first = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    second + gamma / x * first
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_is_even() {
        let g = TestFunction::gaussian(1.0).unwrap();
        assert_eq!(g.eval(-0.7).unwrap(), g.eval(0.7).unwrap());
    }

    #[test]
    fn analytic_images_match_finite_differences() {
        let fns = [
            TestFunction::gaussian(1.3).unwrap(),
            TestFunction::bessel_j(0.5, 1.0).unwrap(),
            TestFunction::bessel_j(0.25, 2.0).unwrap(),
            TestFunction::power(3.0).unwrap(),
        ];
        for f in &fns {
            for &gamma in &[0.5, 2.0] {
                for &x in &[0.0005, 0.4, 1.1, 2.5] {
                    if x < 1e-3 && matches!(f.kind(), FunctionKind::Power { .. }) {
                        // x^3 is not smooth-even at the origin
                        continue;
                    }
                    let exact = f.bessel_op(x, gamma).unwrap();
                    let fd = finite_difference_bessel(|z| f.eval(z).unwrap(), x, gamma);
                    assert!(
                        (exact - fd).abs() < 1e-5 * (1.0 + exact.abs()),
                        "{f:?} x={x} γ={gamma}: {exact} vs {fd}"
                    );
                }
            }
        }
    }

    #[test]
    fn bessel_eigenfunction() {
        let f = TestFunction::bessel_j(0.5, 2.0).unwrap();
        let x = 0.9;
        assert!((f.bessel_op(x, 2.0).unwrap() + 4.0 * f.eval(x).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn envelopes_bound_values() {
        let f = TestFunction::bessel_j(0.5, 1.0).unwrap();
        for i in 1..200 {
            let t = 0.1 * i as f64;
            let env = f.envelope(t).unwrap();
            for k in 0..20 {
                let z = t + 0.37 * k as f64;
                assert!(f.eval(z).unwrap().abs() <= env + 1e-15, "t={t} z={z}");
            }
        }
        assert!(TestFunction::power(2.0).unwrap().envelope(1.0).is_none());
        assert_eq!(TestFunction::zero().envelope(3.0), Some(0.0));
    }

    #[test]
    fn custom_with_and_without_image() {
        let plain = TestFunction::custom(|x| (-x * x).exp(), Decay::Gaussian { rate: 1.0 });
        let v = plain.bessel_op(1.0, 0.5).unwrap();
        let exact = (4.0 - 3.0) * (-1f64).exp();
        assert!((v - exact).abs() < 1e-6);
        let with = plain.clone().with_bessel_op(|_, _| 42.0);
        assert_eq!(with.bessel_op(1.0, 0.5).unwrap(), 42.0);
    }

    #[test]
    fn invalid_descriptors() {
        assert!(TestFunction::gaussian(0.0).is_err());
        assert!(TestFunction::bessel_j(-0.7, 1.0).is_err());
        assert!(TestFunction::bessel_j(0.5, -1.0).is_err());
    }
}
