//! Eigenvalues of the oscillator system by shooting on the radial equation in
//! `t = ln r`: `u'' = (xi² + gamma² r⁴ - 2 M E r²) u` with `u = phi`,
//! `u' = r phi'`. Only elementary arithmetic is used.

use super::rk45::{integrate_ode, OdeOptions};
use crate::error::{Error, Result};
use crate::model::{Channel, PhysicalParams};
use crate::sae::ExtendedReal;

/// How the solution is fixed at the inner end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerCondition {
    /// Point interaction: `phi ~ r^|xi| + alpha' r^-|xi|` at `r_min`, with
    /// `alpha' = -r0^(2|xi|) (eta - |xi|)/(eta + |xi|)`.
    PointInteraction,
    /// Regular start at `r_min` and the jump `Δ(r phi') = eta phi` at `r0`.
    ExactJump,
    /// Point interaction with an explicit `alpha'`.
    Alpha(ExtendedReal),
}

#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions {
    pub r_min: f64,
    /// Outer start at `r_max_scale / sqrt(gamma)`.
    pub r_max_scale: f64,
    pub inner: InnerCondition,
    pub ode: OdeOptions,
    /// Bisection stops once the bracket is narrower than `e_rel_tol * |E|`.
    pub e_rel_tol: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            r_min: 1e-4,
            r_max_scale: 10.0,
            inner: InnerCondition::PointInteraction,
            ode: OdeOptions::default(),
            e_rel_tol: 1e-14,
        }
    }
}

const MAX_BISECTIONS: usize = 200;
const MAX_SERIES_TERMS: usize = 60;

struct Problem {
    nu: f64,
    gamma: f64,
    two_me: f64,
}

impl Problem {
    fn rhs(&self, t: f64, y: &[f64; 2]) -> [f64; 2] {
        let r2 = (2.0 * t).exp();
        let q = self.nu * self.nu + self.gamma * self.gamma * r2 * r2 - self.two_me * r2;
        [y[1], q * y[0]]
    }

    /// `(u, r u')` of `r^s sum c_k r^(2k)` at `r`, `s = ±nu`.
    fn frobenius(&self, s: f64, r: f64) -> [f64; 2] {
        let r2 = r * r;
        let (mut c_prev, mut c) = (0.0, 1.0);
        let mut power = 1.0;
        let (mut u, mut v) = (1.0, s);
        for k in 1..MAX_SERIES_TERMS {
            let kf = k as f64;
            let denom = (s + 2.0 * kf).powi(2) - self.nu * self.nu;
            let next = (self.gamma * self.gamma * c_prev - self.two_me * c) / denom;
            c_prev = c;
            c = next;
            power *= r2;
            let term = c * power;
            u += term;
            v += (s + 2.0 * kf) * term;
            if term.abs() <= 1e-18 * u.abs() && c_prev * power / r2 <= 1e-18 * u.abs() {
                break;
            }
        }
        let scale = r.powf(s);
        [u * scale, v * scale]
    }

    fn integrate(&self, t0: f64, y: [f64; 2], t1: f64, opts: &OdeOptions) -> Result<[f64; 2]> {
        integrate_ode(|t, y| self.rhs(t, y), t0, y, t1, opts)
    }
}

fn coupling_alpha(eta: f64, nu: f64, r0: f64) -> Result<ExtendedReal> {
    if eta == nu {
        return Err(Error::Degenerate(format!("eta = |xi| = {nu}")));
    }
    if eta == -nu {
        return Ok(ExtendedReal::Infinite);
    }
    Ok(ExtendedReal::Finite(-r0.powf(2.0 * nu) * (eta - nu) / (eta + nu)))
}

/// Normalized Wronskian of the inner and outer solutions at the matching
/// radius `1/sqrt(gamma)`; zero exactly at eigenvalues.
pub fn matching_mismatch(ch: &Channel, params: &PhysicalParams, energy: f64, opts: &ShootingOptions) -> Result<f64> {
    let nu = ch.require_singular()?;
    let gamma = params.gamma();
    if !(gamma > 0.0) {
        return Err(Error::domain("shooting needs omega > 0"));
    }
    let r_max = opts.r_max_scale / gamma.sqrt();
    let r_match = 1.0 / gamma.sqrt();
    if !(opts.r_min > 0.0 && opts.r_min < r_match && r_match < r_max) {
        return Err(Error::domain(format!(
            "shooting radii must satisfy 0 < r_min = {} < r_match = {r_match} < r_max = {r_max}",
            opts.r_min
        )));
    }
    let mass = params.mass();
    let problem = Problem { nu, gamma, two_me: 2.0 * mass * energy };
    let (t_min, t_match, t_max) = (opts.r_min.ln(), r_match.ln(), r_max.ln());

    let regular = problem.frobenius(nu, opts.r_min);
    let mut jump_at = None;
    let start = match opts.inner {
        InnerCondition::ExactJump => {
            let r0 = params.r0();
            if !(r0 > opts.r_min && r0 < r_max) {
                return Err(Error::domain(format!("shell radius {r0} outside ({}, {r_max})", opts.r_min)));
            }
            jump_at = Some(r0.ln());
            regular
        }
        other => {
            let alpha = match other {
                InnerCondition::Alpha(a) => a,
                _ => coupling_alpha(params.eta(), nu, params.r0())?,
            };
            match alpha {
                ExtendedReal::Infinite => problem.frobenius(-nu, opts.r_min),
                ExtendedReal::Finite(a) => {
                    let singular = problem.frobenius(-nu, opts.r_min);
                    [regular[0] + a * singular[0], regular[1] + a * singular[1]]
                }
            }
        }
    };
    let eta = params.eta();

    let outer_start = [1.0, mass * energy / gamma - 1.0 - gamma * r_max * r_max];
    let (inner, outer) = match jump_at {
        Some(t0) if t0 <= t_match => {
            let mut y = problem.integrate(t_min, start, t0, &opts.ode)?;
            y[1] += eta * y[0];
            (problem.integrate(t0, y, t_match, &opts.ode)?, problem.integrate(t_max, outer_start, t_match, &opts.ode)?)
        }
        Some(t0) => {
            let mut y = problem.integrate(t_max, outer_start, t0, &opts.ode)?;
            y[1] -= eta * y[0];
            (problem.integrate(t_min, start, t_match, &opts.ode)?, problem.integrate(t0, y, t_match, &opts.ode)?)
        }
        None => (
            problem.integrate(t_min, start, t_match, &opts.ode)?,
            problem.integrate(t_max, outer_start, t_match, &opts.ode)?,
        ),
    };
    let wronskian = inner[0] * outer[1] - inner[1] * outer[0];
    Ok(wronskian / (inner[0].hypot(inner[1]) * outer[0].hypot(outer[1])))
}

/// Eigenvalue inside `bracket` by bisection on [`matching_mismatch`].
pub fn shooting_eigenvalue(
    ch: &Channel,
    params: &PhysicalParams,
    bracket: (f64, f64),
    opts: &ShootingOptions,
) -> Result<f64> {
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain("shooting bracket must be finite"));
    }
    let mut f_lo = matching_mismatch(ch, params, lo, opts)?;
    let f_hi = matching_mismatch(ch, params, hi, opts)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= opts.e_rel_tol * mid.abs() || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = matching_mismatch(ch, params, mid, opts)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
