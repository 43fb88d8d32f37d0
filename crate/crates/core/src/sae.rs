//! Spectra written through the boundary-condition parameter `alpha`.
//!
//! In the singular sector a solution near the origin behaves as
//! `c_plus r^|xi| + c_minus r^-|xi|`; the self-adjoint extension fixes
//! `alpha = c_minus / c_plus` (units of length^(2|xi|)). `alpha = 0` selects
//! the regular solution, `alpha = inf` the singular one.

use std::fmt;

use crate::ac_ho::{SolverOptions, SpectralEquation, SpectralTarget, Spectrum};
use crate::error::{Error, Result};
use crate::model::{Channel, PhysicalParams};
use crate::specfun::{kummer_m, ln_gamma_ratio, ln_theta_ratio, theta_ratio, SignedLogValue};

/// A real number or the distinguished value `inf`; never a floating-point infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    /// `1/x`, with `1/0 = inf` and `1/inf = 0`.
    pub fn recip(self) -> Self {
        match self {
            ExtendedReal::Infinite => ExtendedReal::Finite(0.0),
            ExtendedReal::Finite(0.0) => ExtendedReal::Infinite,
            ExtendedReal::Finite(x) => ExtendedReal::Finite(1.0 / x),
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinite => None,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    PureAc,
    AcHo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParam {
    pub alpha: ExtendedReal,
    pub system: SystemKind,
    /// `|xi|`; `alpha` carries units of length^(2 |xi|).
    pub abs_xi: f64,
}

impl ExtensionParam {
    pub fn new(alpha: ExtendedReal, system: SystemKind, abs_xi: f64) -> Self {
        Self { alpha, system, abs_xi }
    }
}

/// `1/alpha = -((eta+|xi|)/(eta-|xi|)) / r0^(2|xi|)`, obtained by matching the
/// two-term behaviour at the origin to the shell's log-derivative condition.
fn alpha_from_physics(params: &PhysicalParams, ch: &Channel, system: SystemKind) -> Result<ExtensionParam> {
    let nu = ch.require_singular()?;
    let eta = params.eta();
    if eta == nu {
        return Err(Error::Degenerate(format!("eta = |xi| = {nu}")));
    }
    let alpha = if eta == -nu {
        ExtendedReal::Infinite
    } else {
        let ratio = (eta + nu) / (eta - nu);
        ExtendedReal::Finite(-(2.0 * nu * params.r0().ln()).exp() / ratio)
    };
    Ok(ExtensionParam::new(alpha, system, nu))
}

pub fn alpha_from_physics_ho(params: &PhysicalParams, ch: &Channel) -> Result<ExtensionParam> {
    alpha_from_physics(params, ch, SystemKind::AcHo)
}

/// Same relation as the oscillator case; negative whenever `eta <= -1`.
pub fn alpha_from_physics_pure(params: &PhysicalParams, ch: &Channel) -> Result<ExtensionParam> {
    alpha_from_physics(params, ch, SystemKind::PureAc)
}

/// Spectral target `-Θ / (alpha' gamma^|xi|)`.
fn target_from_alpha(alpha: ExtendedReal, nu: f64, gamma: f64) -> Result<SpectralTarget> {
    Ok(match alpha {
        ExtendedReal::Infinite => SpectralTarget::Zero,
        ExtendedReal::Finite(0.0) => SpectralTarget::Infinite,
        ExtendedReal::Finite(a) => {
            if !a.is_finite() {
                return Err(Error::domain("alpha must be finite or the tagged infinity"));
            }
            let ln = ln_theta_ratio(nu)? - a.abs().ln() - nu * gamma.ln();
            SpectralTarget::Finite(SignedLogValue::new(ln, if a > 0.0 { -1 } else { 1 }))
        }
    })
}

/// Lowest `n_roots` solutions of `Γ(d)/Γ(d-|xi|) = -Θ / (alpha' gamma^|xi|)`.
pub fn spectrum_from_alpha_ho(
    alpha: ExtendedReal,
    ch: &Channel,
    mass: f64,
    gamma: f64,
    n_roots: usize,
    opts: &SolverOptions,
) -> Result<Spectrum> {
    let nu = ch.require_singular()?;
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("gamma = {gamma} must be > 0")));
    }
    let target = target_from_alpha(alpha, nu, gamma)?;
    Ok(SpectralEquation::new(*ch, mass, gamma, target)?.solve(n_roots, opts))
}

/// `E = -(2/M) [-Θ / alpha]^(1/|xi|)`; requires `alpha < 0`.
pub fn spectrum_from_alpha_pure(alpha: ExtendedReal, ch: &Channel, mass: f64) -> Result<f64> {
    let nu = ch.require_singular()?;
    let a = match alpha {
        ExtendedReal::Finite(a) if a < 0.0 && a.is_finite() => a,
        other => return Err(Error::Regime(format!("alpha = {other} admits no bound state (need alpha < 0)"))),
    };
    if !(mass > 0.0) {
        return Err(Error::domain(format!("mass = {mass} must be > 0")));
    }
    let ln_bracket = ln_theta_ratio(nu)? - (-a).ln();
    Ok(-(2.0 / mass) * (ln_bracket / nu).exp())
}

/// `B/A = -Θ Γ(d-|xi|)/Γ(d)`, the mix of regular and singular branches in
/// [`general_solution`] that decays at infinity. Zero on the plus lattice,
/// infinite on the minus lattice.
pub fn coefficient_ratio(ch: &Channel, mass: f64, gamma: f64, energy: f64) -> Result<ExtendedReal> {
    let nu = ch.require_singular()?;
    let d = 0.5 * (1.0 + nu) - mass * energy / (2.0 * gamma);
    let d_minus = d - nu;
    if crate::specfun::is_nonpositive_integer(d_minus) {
        return Ok(ExtendedReal::Infinite);
    }
    let ratio = ln_gamma_ratio(d_minus, d)?;
    Ok(ExtendedReal::Finite(-theta_ratio(nu)? * ratio.value()))
}

/// `A gamma^((1+nu)/2) e^(-z/2) r^nu M(d, 1+nu, z)
///  + B gamma^((1-nu)/2) e^(-z/2) r^-nu M(d-nu, 1-nu, z)`, `z = gamma r^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralSolution {
    pub nu: f64,
    pub mass: f64,
    pub gamma: f64,
    pub energy: f64,
    pub a: f64,
    pub b: f64,
}

impl GeneralSolution {
    /// Coefficients chosen so the solution decays at infinity, with `A = 1`
    /// (or `A = 0, B = 1` on the minus lattice).
    pub fn decaying(ch: &Channel, mass: f64, gamma: f64, energy: f64) -> Result<Self> {
        let nu = ch.require_singular()?;
        let (a, b) = match coefficient_ratio(ch, mass, gamma, energy)? {
            ExtendedReal::Finite(ratio) => (1.0, ratio),
            ExtendedReal::Infinite => (0.0, 1.0),
        };
        Ok(Self { nu, mass, gamma, energy, a, b })
    }

    /// Coefficients with `B = alpha' gamma^nu A` for a given `alpha'`.
    pub fn with_alpha(ch: &Channel, mass: f64, gamma: f64, energy: f64, alpha: ExtendedReal) -> Result<Self> {
        let nu = ch.require_singular()?;
        let (a, b) = match alpha {
            ExtendedReal::Finite(al) => (1.0, al * gamma.powf(nu)),
            ExtendedReal::Infinite => (0.0, 1.0),
        };
        Ok(Self { nu, mass, gamma, energy, a, b })
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("r = {r} must be finite and > 0")));
        }
        let nu = self.nu;
        let z = self.gamma * r * r;
        let d = 0.5 * (1.0 + nu) - self.mass * self.energy / (2.0 * self.gamma);
        let damp = (-0.5 * z).exp();
        let mut total = 0.0;
        if self.a != 0.0 {
            total += self.a * self.gamma.powf(0.5 * (1.0 + nu)) * damp * r.powf(nu) * kummer_m(d, 1.0 + nu, z)?;
        }
        if self.b != 0.0 {
            total += self.b * self.gamma.powf(0.5 * (1.0 - nu)) * damp * r.powf(-nu) * kummer_m(d - nu, 1.0 - nu, z)?;
        }
        Ok(total)
    }
}

pub fn general_solution(sol: &GeneralSolution, r: f64) -> Result<f64> {
    sol.value(r)
}

/// Estimate of `alpha` from the solution's behaviour at small `r`:
/// `L = lim r'^nu g(r')` by Richardson extrapolation from `r` and `r/2`
/// (leading correction `~ r^(2 nu)`), then `L / (r^-nu (g(r) - L r^-nu))`.
pub fn alpha_from_solution<F>(g: F, nu: f64, r: f64) -> Result<ExtendedReal>
where
    F: Fn(f64) -> Result<f64>,
{
    let scaled = |x: f64| -> Result<f64> { Ok(x.powf(nu) * g(x)?) };
    let (f_full, f_half) = (scaled(r)?, scaled(0.5 * r)?);
    let w = 2f64.powf(2.0 * nu);
    let limit = (w * f_half - f_full) / (w - 1.0);
    let regular_coefficient = r.powf(-nu) * (g(r)? - limit * r.powf(-nu));
    if regular_coefficient == 0.0 {
        return Ok(ExtendedReal::Infinite);
    }
    Ok(ExtendedReal::Finite(limit / regular_coefficient))
}
