//! Fractional powers of B_γ: Riesz B-potentials (negative powers) and
//! Bessel–Riesz fractional derivatives (positive powers).

mod derivative;
mod potential;

pub use derivative::{
    frac_derivative, frac_derivative_with, gen_finite_difference, norm_const_d, taylor_delsarte_phi, DerivativeOptions,
};
pub use potential::{
    potential_kernel, potential_prefactor, riesz_b_potential, riesz_b_potential_with_tol, riesz_classical,
};

use crate::error::{Error, Result};
use crate::specfun::binomial;
use crate::translation::GammaWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRole {
    /// 0 < α < (γ+1)/2
    Potential,
    /// 0 < α < 1
    Derivative,
    /// non-integer α ≥ 1, difference order 2⌊α⌋+1; not covered by the tests
    /// against closed forms
    ExperimentalDerivative,
}

/// Fractional order α together with the operator it is meant for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
    role: OrderRole,
}

impl FracOrder {
    pub fn potential(alpha: f64, gamma: GammaWeight) -> Result<Self> {
        let b = gamma.half_plus();
        if !(alpha > 0.0 && alpha < b) {
            return Err(Error::domain(format!(
                "potential order must satisfy 0 < alpha < (gamma+1)/2 = {b}, got alpha = {alpha}"
            )));
        }
        Ok(FracOrder {
            alpha,
            role: OrderRole::Potential,
        })
    }

    pub fn derivative(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!(
                "derivative order must satisfy 0 < alpha < 1, got alpha = {alpha}"
            )));
        }
        Ok(FracOrder {
            alpha,
            role: OrderRole::Derivative,
        })
    }

    pub fn experimental_derivative(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() || alpha == alpha.floor() {
            return Err(Error::domain(format!(
                "derivative order must be positive and non-integer, got alpha = {alpha}"
            )));
        }
        let role = if alpha < 1.0 {
            OrderRole::Derivative
        } else {
            OrderRole::ExperimentalDerivative
        };
        Ok(FracOrder { alpha, role })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn role(&self) -> OrderRole {
        self.role
    }
}

/// Order l of the generalized finite difference Σ (−1)^k C_l^k T^{kt}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffOrder(u32);

impl DiffOrder {
    pub fn new(l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::domain("finite-difference order must be >= 1"));
        }
        Ok(DiffOrder(l))
    }

    /// l = 2⌊α⌋ + 1
    pub fn for_alpha(alpha: f64) -> Self {
        DiffOrder(2 * alpha.max(0.0).floor() as u32 + 1)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// C_l^k
    pub fn binomial(self, k: u32) -> f64 {
        binomial(self.0, k)
    }
}

/// Route used for the negative power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialScheme {
    /// hypergeometric kernel integrated against f(y) y^γ
    Kernel,
    /// ∫ (T^y_x f)(x) y^{2α−1} dy
    Translation,
    /// n-point Gauss–Laguerre sums in s = c y²
    GaussLaguerre { n: usize },
}

impl PotentialScheme {
    pub fn gauss_laguerre(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("Gauss-Laguerre order must be >= 2, got {n}")));
        }
        Ok(PotentialScheme::GaussLaguerre { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_windows() {
        let g = GammaWeight::new(0.5).unwrap();
        assert!(FracOrder::potential(0.7, g).is_ok());
        assert!(FracOrder::potential(0.75, g).unwrap_err().is_domain());
        assert!(FracOrder::derivative(1.0).is_err());
        assert!(FracOrder::derivative(0.5).is_ok());
        assert_eq!(
            FracOrder::experimental_derivative(1.3).unwrap().role(),
            OrderRole::ExperimentalDerivative
        );
        assert!(FracOrder::experimental_derivative(2.0).is_err());
    }

    #[test]
    fn difference_order() {
        assert_eq!(DiffOrder::for_alpha(0.4).value(), 1);
        assert_eq!(DiffOrder::for_alpha(1.4).value(), 3);
        assert_eq!(DiffOrder::new(4).unwrap().binomial(2), 6.0);
        assert!(DiffOrder::new(0).is_err());
        assert!(PotentialScheme::gauss_laguerre(1).is_err());
    }
}
