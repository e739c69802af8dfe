use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::eval::EvalResult;

const MAX_PANELS: usize = 1 << 14;

// 10-point Gauss–Legendre on [−1, 1], symmetric half.
const GL_X: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_W: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_4,
    0.219_086_362_515_982,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

/// Algebraic singularity exponents at the two ends of an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointExponents {
    pub left: f64,
    pub right: f64,
}

impl EndpointExponents {
    pub fn new(left: f64, right: f64) -> Result<Self> {
        if !(left > -1.0 && right > -1.0) {
            return Err(Error::domain(format!(
                "endpoint exponents must exceed -1, got ({left}, {right})"
            )));
        }
        Ok(EndpointExponents { left, right })
    }

    pub const fn smooth() -> Self {
        EndpointExponents { left: 0.0, right: 0.0 }
    }
}

impl Default for EndpointExponents {
    fn default() -> Self {
        Self::smooth()
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    halves: [f64; 2],
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

struct Adaptive<'a, F> {
    f: &'a F,
    evaluations: usize,
}

impl<F: Fn(f64) -> Result<f64>> Adaptive<'_, F> {
    fn sample(&mut self, t: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.f)(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { node: t, value: v })
        }
    }

    // returns (integral, integral of |f|)
    fn gauss(&mut self, lo: f64, hi: f64) -> Result<(f64, f64)> {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        let mut s = 0.0;
        let mut sa = 0.0;
        for (x, w) in GL_X.iter().zip(GL_W) {
            let a = self.sample(c - h * x)?;
            let b = self.sample(c + h * x)?;
            s += w * (a + b);
            sa += w * (a.abs() + b.abs());
        }
        Ok((s * h, sa * h))
    }

    fn panel(&mut self, lo: f64, hi: f64, whole: f64) -> Result<(Panel, f64)> {
        let mid = 0.5 * (lo + hi);
        let (l, la) = self.gauss(lo, mid)?;
        let (r, ra) = self.gauss(mid, hi)?;
        let err = (l + r - whole).abs();
        Ok((
            Panel {
                lo,
                hi,
                halves: [l, r],
                err,
            },
            la + ra,
        ))
    }

    fn run(&mut self, lo: f64, hi: f64, tol: f64, initial: usize) -> Result<(f64, f64)> {
        let mut heap = BinaryHeap::new();
        let step = (hi - lo) / initial as f64;
        let mut resabs = 0.0;
        for i in 0..initial {
            let a = lo + step * i as f64;
            let b = if i + 1 == initial { hi } else { a + step };
            let (whole, _) = self.gauss(a, b)?;
            let (p, abs) = self.panel(a, b, whole)?;
            resabs += abs;
            heap.push(p);
        }
        let floor = 50.0 * f64::EPSILON * resabs;
        let mut total_err: f64 = heap.iter().map(|p| p.err).sum();
        loop {
            if total_err <= tol.max(floor) {
                // the running sum drifts; confirm with an exact resum
                total_err = heap.iter().map(|p| p.err).sum();
                if total_err <= tol.max(floor) {
                    break;
                }
            }
            if heap.len() >= MAX_PANELS {
                let value: f64 = heap.iter().map(|p| p.halves[0] + p.halves[1]).sum();
                return Err(Error::accuracy("adaptive quadrature (panel budget)", value, total_err));
            }
            let worst = heap.pop().expect("non-empty heap");
            let mid = 0.5 * (worst.lo + worst.hi);
            if mid <= worst.lo || mid >= worst.hi {
                // cannot subdivide further in double precision
                total_err -= worst.err;
                heap.push(Panel { err: 0.0, ..worst });
                if heap.iter().all(|p| p.err == 0.0) {
                    break;
                }
                continue;
            }
            let (left, _) = self.panel(worst.lo, mid, worst.halves[0])?;
            let (right, _) = self.panel(mid, worst.hi, worst.halves[1])?;
            total_err += left.err + right.err - worst.err;
            heap.push(left);
            heap.push(right);
        }
        let value = heap.iter().map(|p| p.halves[0] + p.halves[1]).sum();
        let err = heap.iter().map(|p| p.err).sum();
        Ok((value, err))
    }
}

/// ∫_a^b f with adaptive Gauss–Legendre panels.
///
/// Endpoints with a negative exponent e are treated by the substitution
/// z − a = L v^{1/(1+e)}, which leaves a bounded integrand in v.
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    exps: EndpointExponents,
    tol: f64,
) -> Result<EvalResult> {
    integrate_finite_offsets(|z, _, _| Ok(f(z)), a, b, exps, tol, 1)
}

/// Fallible-integrand version of [`integrate_finite`].
pub fn try_integrate_finite<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    exps: EndpointExponents,
    tol: f64,
) -> Result<EvalResult> {
    integrate_finite_offsets(|z, _, _| f(z), a, b, exps, tol, 1)
}

/// Core of [`integrate_finite`]. The integrand receives `(z, z − a, b − z)`
/// with the offsets computed without cancellation, so factors such as
/// (z − a)^e stay accurate next to the endpoints. `initial` uniform panels
/// seed the adaptive refinement (useful for oscillatory integrands).
pub fn integrate_finite_offsets<F: Fn(f64, f64, f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    exps: EndpointExponents,
    tol: f64,
    initial: usize,
) -> Result<EvalResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        if a == b {
            return Ok(EvalResult::new(0.0, 0.0, "adaptive-gauss", 0));
        }
        return Err(Error::domain(format!("integration interval [{a}, {b}] is invalid")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let exps = EndpointExponents::new(exps.left, exps.right)?;
    let initial = initial.max(1);
    let left_sing = exps.left < 0.0;
    let right_sing = exps.right < 0.0;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;

    let mut piece = |lo: f64, hi: f64, tol: f64, g: &dyn Fn(f64) -> Result<f64>, n0: usize| -> Result<()> {
        let mut ad = Adaptive { f: &g, evaluations: 0 };
        let res = ad.run(lo, hi, tol, n0);
        evaluations += ad.evaluations;
        match res {
            Ok((v, e)) => {
                value += v;
                error += e;
                Ok(())
            }
            Err(Error::Accuracy {
                estimate,
                error: e,
                what,
            }) => Err(Error::Accuracy {
                what,
                estimate: value + estimate,
                error: error + e,
            }),
            Err(other) => Err(other),
        }
    };
    let plain = |z: f64| f(z, z - a, b - z);

    if !left_sing && !right_sing {
        piece(a, b, tol, &plain, initial)?;
    } else {
        let mid = 0.5 * (a + b);
        let half = mid - a;
        let sub_tol = 0.5 * tol;
        let n0 = initial.div_ceil(2);
        if left_sing {
            let p = 1.0 / (1.0 + exps.left);
            let g = |v: f64| -> Result<f64> {
                if v == 0.0 {
                    return Ok(0.0);
                }
                let d = half * v.powf(p);
                let z = a + d;
                Ok(f(z, d, b - z)? * half * p * v.powf(p - 1.0))
            };
            piece(0.0, 1.0, sub_tol, &g, n0)?;
        } else {
            piece(a, mid, sub_tol, &plain, n0)?;
        }
        if right_sing {
            let p = 1.0 / (1.0 + exps.right);
            let g = |v: f64| -> Result<f64> {
                if v == 0.0 {
                    return Ok(0.0);
                }
                let d = half * v.powf(p);
                let z = b - d;
                Ok(f(z, z - a, d)? * half * p * v.powf(p - 1.0))
            };
            piece(0.0, 1.0, sub_tol, &g, n0)?;
        } else {
            piece(mid, b, sub_tol, &plain, n0)?;
        }
    }
    Ok(EvalResult::new(value, error, "adaptive-gauss", evaluations))
}
