//! Physical configuration and per-channel effective parameters.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Distance from 0 and 1 inside which `|xi|` is treated as outside the
/// singular sector by the solvers.
pub const BOUNDARY_GUARD: f64 = 1e-9;

/// Mass, effective coupling, shell radius and oscillator frequency, in
/// natural units (hbar = c = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    eta: f64,
    r0: f64,
    omega: f64,
}

impl PhysicalParams {
    /// Requires `mass > 0`, `r0 > 0`, `omega >= 0`, all finite.
    pub fn new(mass: f64, eta: f64, r0: f64, omega: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain(format!("mass must be finite and > 0, got {mass}")));
        }
        if !eta.is_finite() {
            return Err(Error::domain(format!("eta must be finite, got {eta}")));
        }
        if !(r0.is_finite() && r0 > 0.0) {
            return Err(Error::domain(format!("r0 must be finite and > 0, got {r0}")));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::domain(format!("omega must be finite and >= 0, got {omega}")));
        }
        Ok(Self { mass, eta, r0, omega })
    }

    /// Builds the coupling from the magnetic moment `mu` and the filament's
    /// linear charge density as `eta = mu * lambda / (2 pi eps0)` with `eps0 = 1`.
    pub fn from_moment(mass: f64, mu: f64, lambda: f64, r0: f64, omega: f64) -> Result<Self> {
        Self::new(mass, mu * lambda / (2.0 * PI), r0, omega)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Oscillator scale `gamma = M omega`; zero for the pure system.
    pub fn gamma(&self) -> f64 {
        self.mass * self.omega
    }

    pub fn with_mass(self, mass: f64) -> Result<Self> {
        Self::new(mass, self.eta, self.r0, self.omega)
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        Self::new(self.mass, eta, self.r0, self.omega)
    }

    pub fn with_r0(self, r0: f64) -> Result<Self> {
        Self::new(self.mass, self.eta, r0, self.omega)
    }

    pub fn with_omega(self, omega: f64) -> Result<Self> {
        Self::new(self.mass, self.eta, self.r0, omega)
    }
}

/// Spin projection parameter `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub fn sign(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }
}

impl TryFrom<i64> for Spin {
    type Error = Error;

    fn try_from(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Spin::Up),
            -1 => Ok(Spin::Down),
            _ => Err(Error::domain(format!("spin must be +1 or -1, got {s}"))),
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.sign())
    }
}

/// Sign of the effective order `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiBranch {
    Negative,
    Zero,
    Positive,
}

impl XiBranch {
    pub fn label(self) -> &'static str {
        match self {
            XiBranch::Negative => "xi<0",
            XiBranch::Zero => "xi=0",
            XiBranch::Positive => "xi>0",
        }
    }
}

/// Angular channel `(m, s)` with its effective order `xi = m + s eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    m: i64,
    spin: Spin,
    xi: f64,
}

impl Channel {
    pub fn new(eta: f64, m: i64, spin: Spin) -> Self {
        let xi = m as f64 + f64::from(spin.sign()) * eta;
        Self { m, spin, xi }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn abs_xi(&self) -> f64 {
        self.xi.abs()
    }

    /// Total angular momentum `m + 1/2`.
    pub fn m_j(&self) -> f64 {
        self.m as f64 + 0.5
    }

    pub fn branch(&self) -> XiBranch {
        if self.xi > 0.0 {
            XiBranch::Positive
        } else if self.xi < 0.0 {
            XiBranch::Negative
        } else {
            XiBranch::Zero
        }
    }

    /// `0 < |xi| < 1`: both `r^|xi|` and `r^-|xi|` are square integrable.
    pub fn is_singular(&self) -> bool {
        let a = self.abs_xi();
        a > 0.0 && a < 1.0
    }

    /// `|xi|`, or [`Error::Boundary`] unless it lies in `(1e-9, 1 - 1e-9)`.
    pub fn require_singular(&self) -> Result<f64> {
        let a = self.abs_xi();
        if a > BOUNDARY_GUARD && a < 1.0 - BOUNDARY_GUARD {
            Ok(a)
        } else {
            Err(Error::Boundary { abs_xi: a })
        }
    }
}

pub fn make_channel(params: &PhysicalParams, m: i64, spin: Spin) -> Channel {
    Channel::new(params.eta(), m, spin)
}

/// The three conditions under which the pure system has a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeReport {
    /// `eta < 0`
    pub attractive: bool,
    /// `eta <= -1`
    pub real_energy: bool,
    /// `0 < |xi| < 1`
    pub singular_sector: bool,
}

impl RegimeReport {
    pub fn all_hold(&self) -> bool {
        self.attractive && self.real_energy && self.singular_sector
    }

    /// Error naming the first violated condition.
    pub fn check(&self, params: &PhysicalParams, ch: &Channel) -> Result<()> {
        if !self.attractive {
            return Err(Error::Regime(format!("eta = {} is not attractive (need eta < 0)", params.eta())));
        }
        if !self.real_energy {
            return Err(Error::Regime(format!(
                "eta = {} gives no real bound-state energy (need eta <= -1)",
                params.eta()
            )));
        }
        if !self.singular_sector {
            return Err(Error::Boundary { abs_xi: ch.abs_xi() });
        }
        Ok(())
    }
}

pub fn validate_bound_state_regime(params: &PhysicalParams, ch: &Channel) -> RegimeReport {
    RegimeReport {
        attractive: params.eta() < 0.0,
        real_energy: params.eta() <= -1.0,
        singular_sector: ch.is_singular(),
    }
}

/// Full guard used by the bound-state solvers: the regime conditions plus the
/// `1e-9` boundary margin on `|xi|`. Returns `|xi|`.
pub fn require_bound_state_regime(params: &PhysicalParams, ch: &Channel) -> Result<f64> {
    validate_bound_state_regime(params, ch).check(params, ch)?;
    ch.require_singular()
}
