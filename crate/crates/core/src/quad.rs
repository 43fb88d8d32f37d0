//! Globally adaptive 7/15-point Gauss–Kronrod quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const KRONROD_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Maximum number of bisections of any single subinterval.
pub const MAX_DEPTH: u32 = 40;
const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self { rel, abs: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    for (i, (&x, &w)) in KRONROD_NODES[..7].iter().zip(&KRONROD_WEIGHTS[..7]).enumerate() {
        let pair = f(center - half * x) + f(center + half * x);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn segment<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, depth: u32) -> Result<Segment> {
    let (value, error) = kronrod_15(f, lo, hi);
    if !value.is_finite() {
        return Err(Error::Convergence(format!("integrand not finite on [{lo}, {hi}]")));
    }
    Ok(Segment { lo, hi, value, error, depth })
}

/// `∫_lo^hi f(x) dx`, bisecting the worst subinterval until the summed error
/// estimate is below `max(tol.abs, tol.rel * |I|)`.
///
/// The integrand is never evaluated at the endpoints, so integrable endpoint
/// singularities are tolerated (at the cost of more subdivisions).
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<QuadResult> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain(format!("integrate: bounds [{lo}, {hi}] must be finite")));
    }
    if lo == hi {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, evaluations: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = segment(&f, lo, hi, 0)?;
    let mut total = first.value;
    let mut total_error = first.error;
    let mut evaluations = 15;
    heap.push(first);
    loop {
        let target = tol.abs.max(tol.rel * total.abs());
        if total_error <= target {
            break;
        }
        let worst = heap.pop().expect("heap never empties");
        if worst.depth >= MAX_DEPTH || heap.len() >= MAX_INTERVALS {
            return Err(Error::Convergence(format!(
                "integrate on [{lo}, {hi}]: error {total_error:e} above {target:e} at depth {}",
                worst.depth
            )));
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = segment(&f, worst.lo, mid, worst.depth + 1)?;
        let right = segment(&f, mid, worst.hi, worst.depth + 1)?;
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-add from scratch to shed the drift of the running update.
    let value = heap.iter().map(|s| s.value).sum();
    let error_estimate = heap.iter().map(|s| s.error).sum();
    Ok(QuadResult { value, error_estimate, evaluations })
}

/// Integrates over consecutive breakpoints, summing the pieces.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: Tolerance) -> Result<f64> {
    breaks.windows(2).map(|w| integrate(&f, w[0], w[1], tol).map(|r| r.value)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| x.powi(10) - 3.0 * x, -1.0, 2.0, Tolerance::relative(1e-14)).unwrap();
        let exact = (2f64.powi(11) + 1.0) / 11.0 - 1.5 * (4.0 - 1.0);
        assert!((r.value - exact).abs() < 1e-12);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn smooth_transcendental() {
        let r = integrate(f64::sin, 0.0, PI, Tolerance::relative(1e-13)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
        let r = integrate(|x| (-x * x).exp(), -10.0, 10.0, Tolerance::relative(1e-13)).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn mild_endpoint_singularity() {
        // ∫_0^1 x^(-0.3) dx = 1/0.7
        let r = integrate(|x| x.powf(-0.3), 0.0, 1.0, Tolerance::relative(1e-8)).unwrap();
        assert!((r.value - 1.0 / 0.7).abs() < 1e-7);
    }

    #[test]
    fn strong_endpoint_singularity_hits_depth_limit() {
        assert!(matches!(
            integrate(|x| x.powf(-0.7), 0.0, 1.0, Tolerance::relative(1e-10)),
            Err(Error::Convergence(_))
        ));
        // After x = u^(1/0.3) the integrand is smooth.
        let p = 1.0 / 0.3;
        let r =
            integrate(|u: f64| p * u.powf(p - 1.0) * u.powf(-0.7 * p), 0.0, 1.0, Tolerance::relative(1e-13)).unwrap();
        assert!((r.value - 1.0 / 0.3).abs() < 1e-12);
    }

    #[test]
    fn reversed_and_empty_bounds() {
        let fwd = integrate(f64::exp, 0.0, 1.0, Tolerance::relative(1e-14)).unwrap().value;
        let back = integrate(f64::exp, 1.0, 0.0, Tolerance::relative(1e-14)).unwrap().value;
        assert!((fwd + back).abs() < 1e-15);
        assert_eq!(integrate(f64::exp, 3.0, 3.0, Tolerance::relative(1e-14)).unwrap().value, 0.0);
    }

    #[test]
    fn pieces_add_up() {
        let v = integrate_pieces(|x| x.abs(), &[-1.0, 0.0, 2.0], Tolerance::relative(1e-14)).unwrap();
        assert!((v - 2.5).abs() < 1e-14);
    }

    #[test]
    fn non_integrable_input_fails() {
        assert!(integrate(|x| 1.0 / x, 0.0, 1.0, Tolerance::relative(1e-12)).is_err());
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, Tolerance::relative(1e-12)).is_err());
        assert!(integrate(|x| x, 0.0, f64::INFINITY, Tolerance::relative(1e-12)).is_err());
    }
}
