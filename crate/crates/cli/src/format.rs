//! Number formatting for CSV output.

/// `v` with 10 significant digits, rounded half to even. Plain decimal
/// notation for 1e-5 ≤ |v| < 1e10, otherwise `d.ddddddddde±XX`; `nan` for
/// anything non-finite.
pub fn sig10(v: f64) -> String {
    if !v.is_finite() {
        return "nan".into();
    }
    let sci = format!("{v:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..10).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let (neg, m) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let digits: String = m.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let split = exp as usize + 1;
        if split >= digits.len() {
            digits
        } else {
            format!("{}.{}", &digits[..split], &digits[split..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
