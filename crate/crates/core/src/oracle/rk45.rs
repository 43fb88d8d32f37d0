//! Adaptive Dormand–Prince 5(4) integration of small first-order systems.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    /// Added to `rel_tol * |y|` in the per-component error scale.
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 0.0, max_steps: 200_000 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (equal to the last row of `A`).
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// `y(t1)` for `y' = f(t, y)`, `y(t0) = y0`; `t1 < t0` integrates backwards.
pub fn integrate_ode<const N: usize, F>(f: F, t0: f64, y0: [f64; N], t1: f64, opts: &OdeOptions) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(Error::domain(format!("integrate_ode: bounds [{t0}, {t1}] must be finite")));
    }
    if !(opts.rel_tol > 0.0) {
        return Err(Error::domain("integrate_ode: rel_tol must be > 0"));
    }
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(y0);
    }
    let direction = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut h = direction * span.abs().min(1e-2 * (1.0 + t0.abs()));
    let mut k = [[0.0; N]; 7];
    k[0] = f(t, &y);
    for _ in 0..opts.max_steps {
        if (t1 - t) * direction <= 0.0 {
            return Ok(y);
        }
        if (t + h - t1) * direction > 0.0 {
            h = t1 - t;
        }
        for stage in 1..7 {
            let mut ys = y;
            for (i, v) in ys.iter_mut().enumerate() {
                for (j, kj) in k.iter().enumerate().take(stage) {
                    *v += h * A[stage][j] * kj[i];
                }
            }
            k[stage] = f(t + C[stage] * h, &ys);
        }
        let mut y_new = y;
        let mut err = 0.0f64;
        for i in 0..N {
            let mut hi5 = 0.0;
            let mut hi4 = 0.0;
            for s in 0..7 {
                hi5 += B5[s] * k[s][i];
                hi4 += B4[s] * k[s][i];
            }
            y_new[i] = y[i] + h * hi5;
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
            let e = (h * (hi5 - hi4)).abs() / scale.max(f64::MIN_POSITIVE);
            err = err.max(e);
        }
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h *= 0.25;
            if (h / (1.0 + t.abs())).abs() < 1e-15 {
                return Err(Error::Convergence(format!("integrate_ode: step underflow at t = {t}")));
            }
            continue;
        }
        if err <= 1.0 {
            t += h;
            y = y_new;
            // First-same-as-last: the seventh stage is f(t + h, y_new).
            k[0] = k[6];
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if err > 1.0 && (h / (1.0 + t.abs())).abs() < 1e-15 {
            return Err(Error::Convergence(format!("integrate_ode: step underflow at t = {t}")));
        }
    }
    Err(Error::Convergence(format!("integrate_ode: more than {} steps", opts.max_steps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_oscillator() {
        let opts = OdeOptions::default();
        let y = integrate_ode(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], 2.0, &opts).unwrap();
        assert!((y[0] / 2f64.exp() - 1.0).abs() < 1e-9);
        let y = integrate_ode(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [0.0, 1.0], 10.0, &opts).unwrap();
        assert!((y[0] - 10f64.sin()).abs() < 1e-8);
        assert!((y[1] - 10f64.cos()).abs() < 1e-8);
    }

    #[test]
    fn backwards_integration() {
        let opts = OdeOptions::default();
        let y = integrate_ode(|t, _: &[f64; 1]| [2.0 * t], 3.0, [9.0], 1.0, &opts).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_span_is_identity() {
        let y = integrate_ode(|_, y: &[f64; 1]| [y[0]], 1.0, [4.0], 1.0, &OdeOptions::default()).unwrap();
        assert_eq!(y, [4.0]);
    }
}
