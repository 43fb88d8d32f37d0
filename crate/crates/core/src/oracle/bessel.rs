use crate::error::{Error, Result};
use crate::quad::{integrate_pieces, Tolerance};

/// Drop of the log-integrand below its peak at which the range is truncated.
const LOG_DROP: f64 = 45.0;
const REL_TOL: f64 = 1e-12;

/// `ln cosh y` without overflow.
fn ln_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `K_nu(x) = ∫_0^∞ e^(-x cosh t) cosh(nu t) dt`, integrated as
/// `e^(-x) ∫ e^(-x (cosh t - 1)) cosh(nu t) dt` with a breakpoint at the
/// integrand's peak `asinh(nu/x)`.
pub fn bessel_k_quadrature(nu: f64, x: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::domain(format!("bessel_k_quadrature: nu = {nu} outside (0, 1)")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_k_quadrature: x = {x} must be finite and > 0")));
    }
    let log_integrand = |t: f64| -x * (t.cosh() - 1.0) + ln_cosh(nu * t);
    let peak = (nu / x).asinh();
    let floor = log_integrand(peak) - LOG_DROP;
    let mut t_max = peak + 1.0;
    while log_integrand(t_max) > floor {
        t_max = peak + 2.0 * (t_max - peak);
    }
    let integrand = |t: f64| log_integrand(t).exp();
    let breaks: Vec<f64> = if peak > 0.0 { vec![0.0, peak, t_max] } else { vec![0.0, t_max] };
    let scaled = integrate_pieces(integrand, &breaks, Tolerance::relative(REL_TOL))?;
    Ok(scaled * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_order_closed_form() {
        let v = bessel_k_quadrature(0.5, 1.0).unwrap();
        assert!((v - (PI / 2.0).sqrt() * (-1f64).exp()).abs() < 1e-13);
        assert!((v - 0.4610685044).abs() < 1e-10);
    }

    #[test]
    fn large_argument_asymptotics() {
        let v = bessel_k_quadrature(0.3, 20.0).unwrap();
        let asym = (PI / 40.0).sqrt() * (-20f64).exp();
        assert!((v / asym - 1.0).abs() < 0.01);
    }

    #[test]
    fn small_argument_is_resolved() {
        // K_nu(x) ~ Γ(nu) 2^(nu-1) x^-nu; K_{1/2} is exact.
        let x = 1e-6;
        let v = bessel_k_quadrature(0.5, x).unwrap();
        let exact = (PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!((v / exact - 1.0).abs() < 1e-11);
    }

    #[test]
    fn domain() {
        assert!(bessel_k_quadrature(1.0, 1.0).is_err());
        assert!(bessel_k_quadrature(0.5, 0.0).is_err());
    }
}
