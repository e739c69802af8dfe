//! Gauss–Laguerre rules and adaptive integration on finite intervals.

mod finite;
mod half_line;
mod laguerre_rule;

pub use finite::{integrate_finite, integrate_finite_offsets, try_integrate_finite, EndpointExponents};
pub use half_line::integrate_half_line;
pub use laguerre_rule::{
    gauss_laguerre_rule, gauss_laguerre_rule_generalized, integrate_laguerre, QuadratureRule, MAX_ORDER,
};
