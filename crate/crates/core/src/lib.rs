//! Fractional powers of the Bessel operator B_γ = D² + (γ/x) D.
//!
//! Negative powers are Riesz B-potentials, positive powers Bessel–Riesz
//! fractional derivatives. Supporting pieces: special functions, Gauss–Laguerre
//! and adaptive quadrature, the generalized translation, and the Hankel transform.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod eval;
pub mod fracbessel;
pub mod function;
pub mod golden;
pub mod hankel;
pub mod oracles;
pub mod quadrature;
pub mod specfun;
pub mod translation;

pub use error::{Error, Result};
pub use eval::EvalResult;
pub use function::{Decay, TestFunction};
pub use translation::{GammaWeight, TranslationMethod};
