//! Scalar special functions.

mod bessel;
mod gamma;
mod hyper;
mod laguerre;

pub use bessel::{
    bessel_j, modified_bessel_i, modified_bessel_i_scaled, normalized_bessel_i, normalized_bessel_i_scaled,
    normalized_bessel_j, BesselOrder,
};
pub use gamma::{binomial, gamma_fn, ln_gamma, pochhammer};
pub use hyper::{
    gauss_2f1, gauss_2f1_complement, gauss_2f1_euler, gauss_2f1_series, kummer_1f1, kummer_1f1_scaled, HyperParams,
};
pub(crate) use laguerre::laguerre_pair;
pub use laguerre::{generalized_laguerre_poly, laguerre_poly};
