//! Closed-form reference values for two worked configurations: the potential
//! of e^{−x²} and the γ = 2 derivative of j_{1/2}(x) = sin x / x.

use crate::error::{Error, Result};
use crate::specfun::{gamma_fn, kummer_1f1_scaled, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleName {
    GaussianPotential,
    JDerivativeGamma2,
}

/// A closed form together with its parameters (α, γ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    name: OracleName,
    alpha: f64,
    gamma: f64,
}

impl OracleSpec {
    pub fn new(name: OracleName, alpha: f64, gamma: f64) -> Result<Self> {
        match name {
            OracleName::GaussianPotential => check_potential(alpha, gamma)?,
            OracleName::JDerivativeGamma2 => {
                if gamma != 2.0 {
                    return Err(Error::domain(format!("this oracle is for gamma = 2, got {gamma}")));
                }
                check_derivative(alpha)?;
            }
        }
        Ok(OracleSpec { name, alpha, gamma })
    }

    pub fn name(&self) -> OracleName {
        self.name
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.name {
            OracleName::GaussianPotential => oracle_gaussian_potential(x, self.alpha, self.gamma),
            OracleName::JDerivativeGamma2 => oracle_j_derivative_gamma2(x, self.alpha),
        }
    }
}

fn check_potential(alpha: f64, gamma: f64) -> Result<()> {
    let b = 0.5 * (gamma + 1.0);
    if !(gamma >= 0.0) || !(alpha > 0.0 && alpha < b) {
        return Err(Error::domain(format!(
            "need gamma >= 0 and 0 < alpha < (gamma+1)/2 = {b}, got alpha = {alpha}, gamma = {gamma}"
        )));
    }
    Ok(())
}

fn check_derivative(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("need 0 < alpha < 1, got {alpha}")));
    }
    Ok(())
}

/// Γ((γ+1)/2 − α) / (2^{2α} Γ((γ+1)/2)) · e^{−x²} ₁F₁(α; (γ+1)/2; x²)
pub fn oracle_gaussian_potential(x: f64, alpha: f64, gamma: f64) -> Result<f64> {
    check_potential(alpha, gamma)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be finite and >= 0, got {x}")));
    }
    let b = 0.5 * (gamma + 1.0);
    let c = (ln_gamma(b - alpha)? - 2.0 * alpha * 2f64.ln() - ln_gamma(b)?).exp();
    Ok(c * kummer_1f1_scaled(alpha, b, x * x)?)
}

/// 2^{2α} Γ(3/2+α) Γ(1/2+α) / (Γ(3/2) Γ(2α+2))
pub fn j_derivative_coefficient(alpha: f64) -> Result<f64> {
    check_derivative(alpha)?;
    Ok(4f64.powf(alpha) * gamma_fn(1.5 + alpha)? * gamma_fn(0.5 + alpha)?
        / (gamma_fn(1.5)? * gamma_fn(2.0 * alpha + 2.0)?))
}

/// coefficient · sin x / x, with the coefficient itself at x = 0.
pub fn oracle_j_derivative_gamma2(x: f64, alpha: f64) -> Result<f64> {
    let c = j_derivative_coefficient(alpha)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(c);
    }
    Ok(c * x.sin() / x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_potential_rows() {
        assert!((oracle_gaussian_potential(0.01, 0.7, 0.5).unwrap() - 6.020591621).abs() < 6e-10);
        assert!((oracle_gaussian_potential(2.1, 0.7, 0.5).unwrap() - 5.299001572).abs() < 6e-10);
        let at0 = gamma_fn(0.05).unwrap() / (4f64.powf(0.7) * gamma_fn(0.75).unwrap());
        assert!((oracle_gaussian_potential(0.0, 0.7, 0.5).unwrap() - at0).abs() < 1e-13 * at0);
        assert!(oracle_gaussian_potential(1.0, 0.8, 0.5).unwrap_err().is_domain());
    }

    #[test]
    fn derivative_rows() {
        assert!((oracle_j_derivative_gamma2(0.01, 0.2).unwrap() - 1.41372).abs() < 5e-6);
        assert!(oracle_j_derivative_gamma2(PI, 0.2).unwrap().abs() < 1e-15);
        assert!((j_derivative_coefficient(0.2).unwrap() - 1.41374376267).abs() < 1e-10);
        assert_eq!(
            oracle_j_derivative_gamma2(0.0, 0.2).unwrap(),
            j_derivative_coefficient(0.2).unwrap()
        );
    }

    #[test]
    fn spec_validation() {
        assert!(OracleSpec::new(OracleName::JDerivativeGamma2, 0.2, 1.0).is_err());
        let s = OracleSpec::new(OracleName::GaussianPotential, 0.7, 0.5).unwrap();
        assert_eq!(s.eval(0.3).unwrap(), oracle_gaussian_potential(0.3, 0.7, 0.5).unwrap());
    }
}
