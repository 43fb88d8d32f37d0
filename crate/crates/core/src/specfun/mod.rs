//! Special-function kernel: signed log-gamma and gamma ratios, modified Bessel
//! `K_nu` of fractional order, and the confluent hypergeometric functions.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{bessel_k, bessel_k_and_next, bessel_k_scaled, bessel_k_small_x};
pub use gamma::{
    gamma, ln_gamma_ratio, ln_theta_ratio, log_gamma_signed, recip_gamma, sin_pi, theta_ratio, SignedLogValue,
};
pub use hypergeometric::{kummer_m, kummer_m_log, tricomi_u, tricomi_u_log, tricomi_u_small_z};

/// `true` when `x` is 0, -1, -2, ... exactly.
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}
