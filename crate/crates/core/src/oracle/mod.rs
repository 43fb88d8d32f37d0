//! Independent checks of the primary results: quadrature of integral
//! representations, finite-difference residuals of the radial equations, and
//! a shooting eigenvalue solver that uses no special-function code.

mod bessel;
mod residual;
mod rk45;
mod shooting;
mod suite;

pub use bessel::bessel_k_quadrature;
pub use residual::{ode_residual, ode_residual_mismatched, RadialOperator};
pub use rk45::{integrate_ode, OdeOptions};
pub use shooting::{matching_mismatch, shooting_eigenvalue, InnerCondition, ShootingOptions};
pub use suite::{deep_root_floor, run_suite, VerifyRow, VerifySettings};

/// Denominator floor for [`OracleReport::rel_err`].
pub const REL_ERR_FLOOR: f64 = 1e-300;

/// One primary-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub quantity: String,
    pub primary_value: f64,
    pub oracle_value: f64,
    /// `|primary - oracle| / max(|oracle|, REL_ERR_FLOOR)`
    pub rel_err: f64,
    pub method: String,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, method: impl Into<String>, primary_value: f64, oracle_value: f64) -> Self {
        Self {
            quantity: quantity.into(),
            primary_value,
            oracle_value,
            rel_err: relative_error(primary_value, oracle_value),
            method: method.into(),
        }
    }

    pub fn within(&self, bound: f64) -> bool {
        self.rel_err <= bound
    }
}

pub fn relative_error(primary: f64, oracle: f64) -> f64 {
    (primary - oracle).abs() / oracle.abs().max(REL_ERR_FLOOR)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_rel_err() {
        let r = OracleReport::new("x", "m", 1.0 + 1e-9, 1.0);
        assert!((r.rel_err - 1e-9).abs() < 1e-15);
        assert!(r.within(2e-9) && !r.within(1e-10));
        assert_eq!(OracleReport::new("x", "m", 1e-310, 0.0).rel_err, 1e-310 / REL_ERR_FLOOR);
    }
}
