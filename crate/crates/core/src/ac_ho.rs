//! Shell plus isotropic 2D oscillator.
//!
//! Bound states solve the transcendental condition
//!
//! ```text
//! Γ(d) / Γ(d - |xi|) = target,    d = (1 + |xi|)/2 - M E / (2 gamma),   gamma = M omega
//! ```
//!
//! whose left side has poles on the "plus" lattice `(2n+1+|xi|) omega` and zeros
//! on the "minus" lattice `(2n+1-|xi|) omega`. Between consecutive lattice points
//! the left side is monotone, so each interval where its sign matches the
//! target holds exactly one root; the solver still scans before bisecting.

use crate::ac_pure::{energy_from_ln_bracket, ln_coupling_bracket};
use crate::error::{Error, Result};
use crate::model::{require_bound_state_regime, Channel, PhysicalParams};
use crate::quad::{integrate, Tolerance};
use crate::specfun::{kummer_m, ln_gamma_ratio, ln_theta_ratio, tricomi_u_log, SignedLogValue};

/// Gamma arguments closer than this to a nonpositive integer count as poles.
pub const POLE_GUARD: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 64;
const MAX_BISECTIONS: usize = 200;
/// Scan endpoints sit this many `omega` inside each lattice point.
const ENDPOINT_OFFSET: f64 = 4e-9;
const BOTTOM_EXPANSIONS: usize = 30;

/// Right-hand side of the spectral condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralTarget {
    /// Nonzero finite value.
    Finite(SignedLogValue),
    /// Roots are the minus lattice.
    Zero,
    /// Roots are the plus lattice.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    /// Below the first lattice point, `(-inf, (1-|xi|) omega)`.
    BelowLattice,
    /// `((2n+1-|xi|) omega, (2n+1+|xi|) omega)`
    MinusToPlus,
    /// `((2n+1+|xi|) omega, (2n+3-|xi|) omega)`
    PlusToMinus,
    /// Exactly on the plus lattice (infinite target).
    PlusLattice,
    /// Exactly on the minus lattice (zero target).
    MinusLattice,
}

impl BracketKind {
    pub fn label(self) -> &'static str {
        match self {
            BracketKind::BelowLattice => "below",
            BracketKind::MinusToPlus => "minus-plus",
            BracketKind::PlusToMinus => "plus-minus",
            BracketKind::PlusLattice => "plus-lattice",
            BracketKind::MinusLattice => "minus-lattice",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoBoundState {
    /// Index `n` of the bracket; `-1` for the root below the lattice.
    pub n_bracket: i64,
    pub energy: f64,
    pub channel: Channel,
    /// `(lhs - target) / |target|` at `energy`; zero for lattice solutions.
    pub residual: f64,
    pub kind: BracketKind,
}

/// Roots found, plus one error per bracket where the expected root was not found.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub states: Vec<HoBoundState>,
    pub skipped: Vec<Error>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub samples_per_interval: usize,
    /// Bisection stops once the bracket is narrower than `rel_tol * |E|`;
    /// zero bisects to floating-point resolution.
    pub rel_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { samples_per_interval: DEFAULT_SAMPLES, rel_tol: 0.0 }
    }
}

/// `(2n+1+|xi|) omega` for `n = 0..=n_max`; valid for any `|xi|`.
pub fn regular_spectrum(ch: &Channel, omega: f64, n_max: usize) -> Result<Vec<f64>> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("regular_spectrum: omega = {omega} must be > 0")));
    }
    Ok((0..=n_max).map(|n| (2.0 * n as f64 + 1.0 + ch.abs_xi()) * omega).collect())
}

fn near_pole(a: f64) -> bool {
    let n = a.round();
    n <= 0.0 && (a - n).abs() < POLE_GUARD
}

/// Signed log of `Γ(d)/Γ(d - |xi|)` with `d = (1+|xi|)/2 - M E/(2 gamma)`.
pub fn spectral_lhs(energy: f64, abs_xi: f64, mass: f64, gamma: f64) -> Result<SignedLogValue> {
    let d = 0.5 * (1.0 + abs_xi) - mass * energy / (2.0 * gamma);
    let d_minus = d - abs_xi;
    if near_pole(d) || near_pole(d_minus) {
        return Err(Error::Pole(energy));
    }
    ln_gamma_ratio(d, d_minus)
}

fn spectral_target(params: &PhysicalParams, ch: &Channel) -> Result<SpectralTarget> {
    let nu = ch.require_singular()?;
    if !(params.omega() > 0.0) {
        return Err(Error::domain("spectral condition needs omega > 0"));
    }
    let eta = params.eta();
    if eta == nu {
        return Err(Error::Degenerate(format!("eta = |xi| = {nu}")));
    }
    if eta == -nu {
        return Ok(SpectralTarget::Zero);
    }
    let ratio = (eta + nu) / (eta - nu);
    let ln = ratio.abs().ln() + ln_theta_ratio(nu)? - nu * params.gamma().ln() - 2.0 * nu * params.r0().ln();
    Ok(SpectralTarget::Finite(SignedLogValue::new(ln, if ratio > 0.0 { 1 } else { -1 })))
}

/// `((eta+|xi|)/(eta-|xi|)) Γ(1+|xi|)/Γ(1-|xi|) / (gamma^|xi| r0^(2|xi|))`;
/// positive in the bound-state regime.
pub fn spectral_rhs(params: &PhysicalParams, ch: &Channel) -> Result<f64> {
    Ok(match spectral_target(params, ch)? {
        SpectralTarget::Finite(v) => v.value(),
        SpectralTarget::Zero => 0.0,
        SpectralTarget::Infinite => unreachable!("physical target is finite"),
    })
}

/// One channel's spectral condition, ready to solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEquation {
    channel: Channel,
    abs_xi: f64,
    mass: f64,
    gamma: f64,
    target: SpectralTarget,
}

impl SpectralEquation {
    pub fn new(channel: Channel, mass: f64, gamma: f64, target: SpectralTarget) -> Result<Self> {
        let abs_xi = channel.require_singular()?;
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::domain(format!("mass = {mass} must be > 0")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::domain(format!("gamma = {gamma} must be > 0")));
        }
        if let SpectralTarget::Finite(v) = target {
            if v.is_zero() || !v.log_magnitude.is_finite() {
                return Err(Error::domain("finite target must be nonzero and representable"));
            }
        }
        Ok(Self { channel, abs_xi, mass, gamma, target })
    }

    pub fn from_physics(params: &PhysicalParams, ch: &Channel) -> Result<Self> {
        Self::new(*ch, params.mass(), params.gamma(), spectral_target(params, ch)?)
    }

    pub fn target(&self) -> SpectralTarget {
        self.target
    }

    pub fn omega(&self) -> f64 {
        self.gamma / self.mass
    }

    /// `(2n+1+|xi|) omega`
    pub fn plus_point(&self, n: u64) -> f64 {
        (2.0 * n as f64 + 1.0 + self.abs_xi) * self.omega()
    }

    /// `(2n+1-|xi|) omega`
    pub fn minus_point(&self, n: u64) -> f64 {
        (2.0 * n as f64 + 1.0 - self.abs_xi) * self.omega()
    }

    pub fn lhs(&self, energy: f64) -> Result<SignedLogValue> {
        spectral_lhs(energy, self.abs_xi, self.mass, self.gamma)
    }

    /// `(lhs - target) / |target|` without leaving log space until the end.
    pub fn relative_residual(&self, energy: f64) -> Result<f64> {
        let SpectralTarget::Finite(t) = self.target else {
            return Err(Error::domain("relative residual needs a finite target"));
        };
        let l = self.lhs(energy)?;
        if l.is_zero() {
            return Ok(-f64::from(t.sign));
        }
        let delta = l.log_magnitude - t.log_magnitude;
        Ok(if l.sign == t.sign {
            f64::from(t.sign) * delta.exp_m1()
        } else {
            f64::from(l.sign) * delta.exp() - f64::from(t.sign)
        })
    }

    /// The lowest `n_roots` solutions, one bracket at a time.
    pub fn solve(&self, n_roots: usize, opts: &SolverOptions) -> Spectrum {
        let mut spectrum = Spectrum { states: Vec::new(), skipped: Vec::new() };
        let t = match self.target {
            SpectralTarget::Zero | SpectralTarget::Infinite => {
                let plus = self.target == SpectralTarget::Infinite;
                spectrum.states = (0..n_roots as u64)
                    .map(|n| HoBoundState {
                        n_bracket: n as i64,
                        energy: if plus { self.plus_point(n) } else { self.minus_point(n) },
                        channel: self.channel,
                        residual: 0.0,
                        kind: if plus { BracketKind::PlusLattice } else { BracketKind::MinusLattice },
                    })
                    .collect();
                return spectrum;
            }
            SpectralTarget::Finite(t) => t,
        };
        let offset = ENDPOINT_OFFSET * self.omega();
        for i in 0..n_roots {
            let (n, kind, lo, hi) = if t.sign > 0 {
                if i == 0 {
                    match self.bottom_of_scan() {
                        Ok(lo) => (-1, BracketKind::BelowLattice, lo, self.minus_point(0) - offset),
                        Err(e) => {
                            spectrum.skipped.push(e);
                            continue;
                        }
                    }
                } else {
                    let n = (i - 1) as u64;
                    (n as i64, BracketKind::PlusToMinus, self.plus_point(n) + offset, self.minus_point(n + 1) - offset)
                }
            } else {
                let n = i as u64;
                (n as i64, BracketKind::MinusToPlus, self.minus_point(n) + offset, self.plus_point(n) - offset)
            };
            match self.roots_in(lo, hi, opts) {
                Ok(roots) if roots.is_empty() => {
                    spectrum.skipped.push(Error::NoSignChange { lo, hi });
                }
                Ok(roots) => spectrum.states.extend(roots.into_iter().map(|(energy, residual)| HoBoundState {
                    n_bracket: n,
                    energy,
                    channel: self.channel,
                    residual,
                    kind,
                })),
                Err(e) => spectrum.skipped.push(e),
            }
        }
        spectrum
    }

    /// Lower end of the scan below the lattice: far enough down that the left
    /// side, growing like `(-M E / 2 gamma)^|xi|`, exceeds the target.
    fn bottom_of_scan(&self) -> Result<f64> {
        let SpectralTarget::Finite(t) = self.target else { unreachable!("only called for finite targets") };
        let scale = (t.log_magnitude / self.abs_xi).exp() * 2.0 * self.gamma / self.mass;
        let mut e_min = -10.0 * scale.max(10.0 * self.omega());
        for _ in 0..BOTTOM_EXPANSIONS {
            if self.relative_residual(e_min)? > 0.0 {
                return Ok(e_min);
            }
            e_min *= 10.0;
        }
        Err(Error::NoSignChange { lo: e_min, hi: self.minus_point(0) })
    }

    /// All sign changes of the residual on a uniform scan of `[lo, hi]`, each
    /// refined by bisection. Returns `(energy, residual)` pairs.
    fn roots_in(&self, lo: f64, hi: f64, opts: &SolverOptions) -> Result<Vec<(f64, f64)>> {
        let samples = opts.samples_per_interval.max(2);
        let mut roots = Vec::new();
        let mut prev_e = lo;
        let mut prev_f = self.relative_residual(lo)?;
        for i in 1..=samples {
            let e = if i == samples { hi } else { lo + (hi - lo) * i as f64 / samples as f64 };
            let f = self.relative_residual(e)?;
            if prev_f == 0.0 {
                roots.push((prev_e, 0.0));
            } else if f != 0.0 && (f > 0.0) != (prev_f > 0.0) {
                roots.push(self.bisect(prev_e, e, prev_f, f, opts.rel_tol)?);
            }
            prev_e = e;
            prev_f = f;
        }
        if prev_f == 0.0 {
            roots.push((prev_e, 0.0));
        }
        Ok(roots)
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut f_lo: f64, mut f_hi: f64, rel_tol: f64) -> Result<(f64, f64)> {
        for _ in 0..MAX_BISECTIONS {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi || hi - lo <= rel_tol * mid.abs() {
                return Ok(if f_lo.abs() <= f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) });
            }
            let f_mid = self.relative_residual(mid)?;
            if f_mid == 0.0 {
                return Ok((mid, 0.0));
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        Err(Error::Convergence(format!("bisection on [{lo}, {hi}] did not close in {MAX_BISECTIONS} steps")))
    }
}

/// Lowest `n_roots` bound states of a physical configuration (`omega > 0`).
pub fn solve_spectrum(params: &PhysicalParams, ch: &Channel, n_roots: usize) -> Result<Spectrum> {
    solve_spectrum_with(params, ch, n_roots, &SolverOptions::default())
}

pub fn solve_spectrum_with(
    params: &PhysicalParams,
    ch: &Channel,
    n_roots: usize,
    opts: &SolverOptions,
) -> Result<Spectrum> {
    require_bound_state_regime(params, ch)?;
    Ok(SpectralEquation::from_physics(params, ch)?.solve(n_roots, opts))
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("r = {r} must be finite and >= 0")));
    }
    Ok(())
}

/// `r^|xi| e^(-gamma r^2/2) M(-n, 1+|xi|, gamma r^2)`, unnormalized.
pub fn ho_wavefunction_regular(ch: &Channel, gamma: f64, n: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    let nu = ch.abs_xi();
    let z = gamma * r * r;
    Ok(r.powf(nu) * (-0.5 * z).exp() * kummer_m(-f64::from(n), 1.0 + nu, z)?)
}

/// Factor making [`ho_wavefunction_regular`] unit-normalized in `L^2(r dr)`,
/// integrating over `[0, 10/sqrt(gamma)]`.
pub fn ho_regular_normalization(ch: &Channel, gamma: f64, n: u32) -> Result<f64> {
    let r_max = 10.0 / gamma.sqrt();
    let integrand = |r: f64| {
        let f = ho_wavefunction_regular(ch, gamma, n, r).unwrap_or(f64::NAN);
        f * f * r
    };
    let norm2 = integrate(integrand, 0.0, r_max, Tolerance::relative(1e-13))?.value;
    Ok(1.0 / norm2.sqrt())
}

/// Signed log of `r^xi e^(-gamma r^2/2) U(d, 1+xi, gamma r^2)` with signed `xi`
/// and `d = (1+xi)/2 - M E/(2 gamma)`: the solution decaying at infinity.
pub fn ho_wavefunction_general_log(ch: &Channel, mass: f64, gamma: f64, energy: f64, r: f64) -> Result<SignedLogValue> {
    ch.require_singular()?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("r = {r} must be finite and > 0")));
    }
    let xi = ch.xi();
    let z = gamma * r * r;
    let d = 0.5 * (1.0 + xi) - mass * energy / (2.0 * gamma);
    let u = tricomi_u_log(d, 1.0 + xi, z)?;
    Ok(u * SignedLogValue::positive(xi * r.ln() - 0.5 * z))
}

/// [`ho_wavefunction_general_log`] as a plain value; underflows to zero when
/// the unnormalized amplitude is below `f64` range.
pub fn ho_wavefunction_general(ch: &Channel, mass: f64, gamma: f64, energy: f64, r: f64) -> Result<f64> {
    ho_wavefunction_general_log(ch, mass, gamma, energy, r).map(SignedLogValue::value)
}

/// `ln N` with `N` normalizing [`ho_wavefunction_general`] in `L^2(r dr)` over
/// `[0, 10/sqrt(gamma)]`. The `r^(1-2|xi|)` behaviour of the integrand at the
/// origin is removed by `r = u^(1/(1-|xi|))`.
pub fn ho_general_ln_normalization(ch: &Channel, mass: f64, gamma: f64, energy: f64) -> Result<f64> {
    let nu = ch.require_singular()?;
    let r_ref = 1.0 / gamma.sqrt();
    let reference = ho_wavefunction_general_log(ch, mass, gamma, energy, r_ref)?.log_magnitude;
    let p = 1.0 / (1.0 - nu);
    let integrand = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let r = u.powf(p);
        match ho_wavefunction_general_log(ch, mass, gamma, energy, r) {
            Ok(v) if v.is_zero() => 0.0,
            Ok(v) => (2.0 * (v.log_magnitude - reference)).exp() * r * p * u.powf(p - 1.0),
            Err(_) => f64::NAN,
        }
    };
    let u_max = (10.0 * r_ref).powf(1.0 / p);
    let u_ref = r_ref.powf(1.0 / p);
    let tol = Tolerance::relative(1e-12);
    let norm2 = integrate(integrand, 0.0, u_ref, tol)?.value + integrate(integrand, u_ref, u_max, tol)?.value;
    Ok(-reference - 0.5 * norm2.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeBranch {
    /// `(2n+1+|xi|) omega`, solutions regular at the origin.
    Regular,
    /// `(2n+1-|xi|) omega`, solutions singular at the origin.
    Singular,
}

impl LatticeBranch {
    pub fn label(self) -> &'static str {
        match self {
            LatticeBranch::Regular => "regular(+)",
            LatticeBranch::Singular => "singular(-)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeLimits {
    pub regular: Vec<f64>,
    pub singular: Vec<f64>,
}

impl LatticeLimits {
    pub fn branch(&self, branch: LatticeBranch) -> &[f64] {
        match branch {
            LatticeBranch::Regular => &self.regular,
            LatticeBranch::Singular => &self.singular,
        }
    }
}

/// Both candidate `r0 -> 0` lattices `(2n+1 ± |xi|) omega`, `n = 0..=n_max`.
pub fn limit_r0_to_zero(params: &PhysicalParams, ch: &Channel, n_max: usize) -> Result<LatticeLimits> {
    let nu = ch.require_singular()?;
    let omega = params.omega();
    if !(omega > 0.0) {
        return Err(Error::domain("r0 -> 0 lattices need omega > 0"));
    }
    let lattice = |sign: f64| (0..=n_max).map(|n| (2.0 * n as f64 + 1.0 + sign * nu) * omega).collect();
    Ok(LatticeLimits { regular: lattice(1.0), singular: lattice(-1.0) })
}

/// Lowest root as `omega -> 0`. Replacing the left side by its large-`|d|` form
/// `(-M E / 2 gamma)^|xi|` makes `gamma^|xi|` cancel against the right side,
/// leaving `(-M E / 2)^|xi| = R Θ / r0^(2|xi|)`: the closed-form pure energy.
pub fn limit_vanishing_oscillator(params: &PhysicalParams, ch: &Channel) -> Result<f64> {
    let nu = require_bound_state_regime(params, ch)?;
    let ln_bracket = ln_coupling_bracket(params.eta(), nu)?;
    Ok(energy_from_ln_bracket(params.mass(), params.r0(), nu, ln_bracket))
}
