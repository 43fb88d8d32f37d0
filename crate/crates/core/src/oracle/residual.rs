use crate::ac_ho::ho_wavefunction_general;
use crate::error::{Error, Result};
use crate::model::{Channel, PhysicalParams};
use crate::sae::SystemKind;
use crate::specfun::bessel_k;

/// Local step of the finite-difference stencil as a fraction of `r`.
const STEP_FRACTION: f64 = 1e-3;

/// The radial operator `d²/dr² + (1/r) d/dr - xi²/r² + V(r)` of either system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialOperator {
    /// `V = -kappa²`
    Pure { xi: f64, kappa_sq: f64 },
    /// `V = -gamma² r² + 2 M E`
    Ho { xi: f64, gamma: f64, mass: f64, energy: f64 },
}

impl RadialOperator {
    fn xi(&self) -> f64 {
        match *self {
            RadialOperator::Pure { xi, .. } | RadialOperator::Ho { xi, .. } => xi,
        }
    }

    /// `|L f| / sum of |terms|` at `r`, from 6th-order central differences
    /// with step `1e-3 r`.
    pub fn relative_residual<F>(&self, f: F, r: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("residual: r = {r} must be finite and > 0")));
        }
        let h = STEP_FRACTION * r;
        if r - 3.0 * h <= 0.0 || h == 0.0 {
            return Err(Error::domain(format!("residual: stencil does not fit at r = {r}")));
        }
        let mut s = [0.0; 7];
        for (k, slot) in s.iter_mut().enumerate() {
            *slot = f(r + (k as f64 - 3.0) * h)?;
        }
        let d1 = (-s[0] + 9.0 * s[1] - 45.0 * s[2] + 45.0 * s[4] - 9.0 * s[5] + s[6]) / (60.0 * h);
        let d2 = (2.0 * s[0] - 27.0 * s[1] + 270.0 * s[2] - 490.0 * s[3] + 270.0 * s[4] - 27.0 * s[5] + 2.0 * s[6])
            / (180.0 * h * h);
        let f0 = s[3];
        let xi = self.xi();
        let mut terms = vec![d2, d1 / r, -xi * xi * f0 / (r * r)];
        match *self {
            RadialOperator::Pure { kappa_sq, .. } => terms.push(-kappa_sq * f0),
            RadialOperator::Ho { gamma, mass, energy, .. } => {
                terms.push(-gamma * gamma * r * r * f0);
                terms.push(2.0 * mass * energy * f0);
            }
        }
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        if scale == 0.0 {
            return Ok(0.0);
        }
        Ok(terms.iter().sum::<f64>().abs() / scale)
    }

    pub fn max_relative_residual<F>(&self, f: F, r_grid: &[f64]) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let mut worst = 0.0f64;
        for &r in r_grid {
            worst = worst.max(self.relative_residual(&f, r)?);
        }
        Ok(worst)
    }
}

/// Largest relative residual of the analytic solution at `energy` on `r_grid`:
/// `K_|xi|(kappa r)` for the pure system, the decaying Tricomi solution for the
/// oscillator.
pub fn ode_residual(
    system: SystemKind,
    ch: &Channel,
    params: &PhysicalParams,
    energy: f64,
    r_grid: &[f64],
) -> Result<f64> {
    ode_residual_mismatched(system, ch, params, energy, energy, r_grid)
}

/// As [`ode_residual`], with the solution built at `solution_energy` and the
/// operator at `operator_energy`.
pub fn ode_residual_mismatched(
    system: SystemKind,
    ch: &Channel,
    params: &PhysicalParams,
    solution_energy: f64,
    operator_energy: f64,
    r_grid: &[f64],
) -> Result<f64> {
    let nu = ch.require_singular()?;
    let mass = params.mass();
    match system {
        SystemKind::PureAc => {
            if !(solution_energy < 0.0 && operator_energy < 0.0) {
                return Err(Error::domain("pure-system residual needs E < 0"));
            }
            let kappa = (-2.0 * mass * solution_energy).sqrt();
            let op = RadialOperator::Pure { xi: ch.xi(), kappa_sq: -2.0 * mass * operator_energy };
            op.max_relative_residual(|r| bessel_k(nu, kappa * r), r_grid)
        }
        SystemKind::AcHo => {
            let gamma = params.gamma();
            if !(gamma > 0.0) {
                return Err(Error::domain("oscillator residual needs omega > 0"));
            }
            let op = RadialOperator::Ho { xi: ch.xi(), gamma, mass, energy: operator_energy };
            op.max_relative_residual(|r| ho_wavefunction_general(ch, mass, gamma, solution_energy, r), r_grid)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Spin;

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn pure_solution_and_sensitivity() {
        let p = PhysicalParams::new(1.0, -1.5, 1.0, 0.0).unwrap();
        let c = Channel::new(-1.5, 1, Spin::Up);
        let grid = log_grid(0.1, 10.0, 41);
        let base = ode_residual(SystemKind::PureAc, &c, &p, -0.125, &grid).unwrap();
        assert!(base < 1e-7, "{base}");
        let off = ode_residual_mismatched(SystemKind::PureAc, &c, &p, -0.125, -0.125 * (1.0 + 1e-3), &grid).unwrap();
        assert!(off >= 10.0 * base, "{off} vs {base}");
    }

    #[test]
    fn ho_lattice_solution() {
        let p = PhysicalParams::new(1.0, -1.5, 1.0, 1.0).unwrap();
        let c = Channel::new(-1.5, 1, Spin::Up);
        let grid = log_grid(0.1, 10.0, 41);
        for n in 0..4 {
            let e = 2.0 * n as f64 + 1.5;
            let base = ode_residual(SystemKind::AcHo, &c, &p, e, &grid).unwrap();
            assert!(base < 1e-7, "n = {n}: {base}");
            let off = ode_residual_mismatched(SystemKind::AcHo, &c, &p, e, e * (1.0 + 1e-3), &grid).unwrap();
            assert!(off >= 10.0 * base);
        }
    }

    #[test]
    fn polynomial_is_differentiated_exactly() {
        // r^2 solves f'' + f'/r - 4 f/r^2 = 0.
        let op = RadialOperator::Pure { xi: 2.0, kappa_sq: 0.0 };
        let res = op.max_relative_residual(|r| Ok(r * r), &[0.5, 1.0, 3.0]).unwrap();
        assert!(res < 1e-9);
    }

    #[test]
    fn grid_errors() {
        let op = RadialOperator::Pure { xi: 0.5, kappa_sq: 1.0 };
        assert!(op.relative_residual(Ok, 0.0).is_err());
        assert!(op.relative_residual(Ok, f64::INFINITY).is_err());
    }
}
