//! Bound-state spectra and radial wavefunctions of a neutral spin-1/2 particle
//! with an anomalous magnetic moment around a charged filament, with the
//! filament's divergence term modelled as an attractive delta shell, alone or
//! superposed on an isotropic 2D harmonic oscillator.
//!
//! Module map:
//!
//! * [`specfun`]: log-gamma, gamma ratios, `K_nu`, Kummer `M`, Tricomi `U`.
//! * [`model`]: physical parameters, angular channels and the effective order `xi`.
//! * [`ac_pure`]: closed-form bound state without the oscillator.
//! * [`ac_ho`]: the transcendental spectral condition with the oscillator.
//! * [`sae`]: the same spectra expressed through the boundary-condition parameter alpha.
//! * [`oracle`]: independent quadrature, finite-difference and shooting checks.
//!
//! Natural units (hbar = c = 1) throughout.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ac_ho;
pub mod ac_pure;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod sae;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{Channel, PhysicalParams, Spin};
