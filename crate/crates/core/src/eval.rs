/// A computed value together with an error estimate and bookkeeping about how
/// it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub error: f64,
    /// Short label of the method that produced the value.
    pub method: &'static str,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

impl EvalResult {
    pub fn new(value: f64, error: f64, method: &'static str, evaluations: usize) -> Self {
        EvalResult {
            value,
            error,
            method,
            evaluations,
        }
    }

    /// An exact value (closed form or identity).
    pub fn exact(value: f64, method: &'static str) -> Self {
        EvalResult::new(value, 0.0, method, 0)
    }

    pub(crate) fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.error *= factor.abs();
        self
    }

    /// Sum of two partial results; errors add.
    pub(crate) fn plus(mut self, other: &EvalResult) -> Self {
        self.value += other.value;
        self.error += other.error;
        self.evaluations += other.evaluations;
        self
    }
}
