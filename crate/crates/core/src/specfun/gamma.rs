use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Γ(x+1) form)
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// Γ(x) for real x.
///
/// Uses the Lanczos approximation for x ≥ 1/2 and the reflection formula
/// below that. Poles at 0, −1, −2, … are reported as errors.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("gamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "gamma",
            at: x,
        });
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_fn(1.0 - x)?));
    }
    if x > 171.624_376_956_302_7 {
        return Err(Error::Overflow(format!("gamma({x})")));
    }
    // Small integers are returned exactly.
    if x == x.floor() && x <= 23.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return Ok(acc);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) split in two halves so the power does not overflow before e^{-t} tames it.
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z))
}

/// ln|Γ(x)| for real x.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("ln_gamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: x,
        });
    }
    if x < 0.5 {
        let s = (PI * x).sin().abs();
        return Ok(PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Pochhammer symbol (a)_k = a(a+1)…(a+k−1), with (a)_0 = 1.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
