/// Laguerre polynomial L_k(x) by the three-term recurrence.
pub fn laguerre_poly(k: usize, x: f64) -> f64 {
    generalized_laguerre_poly(k, 0.0, x)
}

/// Generalized Laguerre polynomial L_k^{(β)}(x).
pub fn generalized_laguerre_poly(k: usize, beta: f64, x: f64) -> f64 {
    laguerre_pair(k, beta, x).0
}

/// (L_k^{(β)}(x), L_{k−1}^{(β)}(x)); the second entry is 0 for k = 0.
pub(crate) fn laguerre_pair(k: usize, beta: f64, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for j in 0..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + beta - x) * cur - (jf + beta) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(laguerre_poly(0, 5.3), 1.0);
        assert_eq!(laguerre_poly(1, 0.25), 0.75);
        assert_eq!(laguerre_poly(2, 1.0), -0.5);
        assert_eq!(generalized_laguerre_poly(1, 0.5, 0.25), 1.25);
    }

    #[test]
    fn explicit_cubic() {
        for &x in &[0.0, 0.7, 3.1, 9.0] {
            let expect = 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0;
            assert!((laguerre_poly(3, x) - expect).abs() < 1e-12 * (1.0 + expect.abs()));
        }
    }
}
