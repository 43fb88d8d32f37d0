use std::f64::consts::PI;
use std::ops::Mul;

use super::is_nonpositive_integer;
use crate::error::{Error, Result};

/// A real number stored as `sign * exp(log_magnitude)`.
///
/// `sign == 0` encodes an exact zero; `log_magnitude` is then meaningless and
/// kept at `-inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    pub log_magnitude: f64,
    pub sign: i8,
}

impl SignedLogValue {
    pub const ZERO: Self = Self { log_magnitude: f64::NEG_INFINITY, sign: 0 };
    pub const ONE: Self = Self { log_magnitude: 0.0, sign: 1 };

    pub fn new(log_magnitude: f64, sign: i8) -> Self {
        if sign == 0 {
            Self::ZERO
        } else {
            Self { log_magnitude, sign: sign.signum() }
        }
    }

    pub fn positive(log_magnitude: f64) -> Self {
        Self::new(log_magnitude, 1)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(x.abs().ln(), if x > 0.0 { 1 } else { -1 })
        }
    }

    /// Back to an `f64`; may overflow to `±inf` or underflow to 0.
    pub fn value(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_magnitude.exp(),
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// `None` when `self` is zero.
    pub fn recip(self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(-self.log_magnitude, self.sign))
    }

    /// `None` when `rhs` is zero.
    pub fn checked_div(self, rhs: Self) -> Option<Self> {
        rhs.recip().map(|r| self * r)
    }
}

impl Mul for SignedLogValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            Self::ZERO
        } else {
            Self::new(self.log_magnitude + rhs.log_magnitude, self.sign * rhs.sign)
        }
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// ln Γ(x) for x >= 0.5.
fn lanczos_ln_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let series =
        LANCZOS_COEFFS[1..].iter().enumerate().fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64));
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// `sin(pi x)` with the argument reduced exactly before scaling by pi.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (0.5 * x).round();
    let mut sign = 1.0;
    if r < 0.0 {
        r = -r;
        sign = -1.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    }
    if r == 0.0 {
        0.0
    } else {
        sign * (PI * r).sin()
    }
}

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
///
/// Lanczos (g = 7, nine terms) for `x >= 0.5`, reflection below.
pub fn log_gamma_signed(x: f64) -> Result<SignedLogValue> {
    if !x.is_finite() {
        return Err(Error::domain(format!("log_gamma_signed({x})")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        return Ok(SignedLogValue::positive(lanczos_ln_gamma(x)));
    }
    let s = sin_pi(x);
    Ok(SignedLogValue::new(PI.ln() - s.abs().ln() - lanczos_ln_gamma(1.0 - x), if s > 0.0 { 1 } else { -1 }))
}

pub fn gamma(x: f64) -> Result<f64> {
    log_gamma_signed(x).map(SignedLogValue::value)
}

/// `1/Γ(x)`, which is entire: exactly zero on the pole set.
pub fn recip_gamma(x: f64) -> Result<SignedLogValue> {
    if !x.is_finite() {
        return Err(Error::domain(format!("recip_gamma({x})")));
    }
    if is_nonpositive_integer(x) {
        return Ok(SignedLogValue::ZERO);
    }
    Ok(log_gamma_signed(x)?.recip().expect("log_gamma_signed never returns zero"))
}

fn stirling_tail(x: f64) -> f64 {
    // Bernoulli terms B_2k / (2k (2k-1) x^(2k-1)), k = 1..8.
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let w = 1.0 / (x * x);
    C.iter().rev().fold(0.0, |acc, c| acc * w + c) / x
}

/// `ln Γ(a) − ln Γ(b)` for `a, b >= 10` without forming either log-gamma.
fn stirling_ln_ratio(a: f64, b: f64) -> f64 {
    let diff = a - b;
    (b - 0.5) * (diff / b).ln_1p() + diff * (a.ln() - 1.0) + stirling_tail(a) - stirling_tail(b)
}

/// Signed log of `Γ(a)/Γ(b)`.
///
/// Uses a cancellation-free Stirling difference when both arguments are large
/// (or both large and negative, via reflection), so ratios such as
/// `Γ(x + 1/2)/Γ(x)` stay accurate at `x ~ 1e10`. A pole of the numerator is
/// an error; a pole of the denominator alone gives an exact zero.
pub fn ln_gamma_ratio(a: f64, b: f64) -> Result<SignedLogValue> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("ln_gamma_ratio({a}, {b})")));
    }
    if is_nonpositive_integer(a) {
        return Err(Error::Pole(a));
    }
    if is_nonpositive_integer(b) {
        return Ok(SignedLogValue::ZERO);
    }
    const LARGE: f64 = 10.0;
    if a >= LARGE && b >= LARGE {
        return Ok(SignedLogValue::positive(stirling_ln_ratio(a, b)));
    }
    if 1.0 - a >= LARGE && 1.0 - b >= LARGE {
        // Γ(a)/Γ(b) = [sin(pi b) / sin(pi a)] Γ(1-b)/Γ(1-a)
        let (sa, sb) = (sin_pi(a), sin_pi(b));
        let sign = if (sa > 0.0) == (sb > 0.0) { 1 } else { -1 };
        return Ok(SignedLogValue::new(sb.abs().ln() - sa.abs().ln() + stirling_ln_ratio(1.0 - b, 1.0 - a), sign));
    }
    let num = log_gamma_signed(a)?;
    let den = log_gamma_signed(b)?;
    Ok(num.checked_div(den).expect("gamma has no zeros"))
}

fn check_unit_interval(nu: f64, what: &str) -> Result<()> {
    if nu > 0.0 && nu < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{what}: nu = {nu} not in (0, 1)")))
    }
}

/// `ln[Γ(1+nu)/Γ(1-nu)]`.
pub fn ln_theta_ratio(nu: f64) -> Result<f64> {
    check_unit_interval(nu, "theta_ratio")?;
    Ok(ln_gamma_ratio(1.0 + nu, 1.0 - nu)?.log_magnitude)
}

/// `Θ(nu) = Γ(1+nu)/Γ(1-nu)` for `nu` in (0, 1); always positive.
pub fn theta_ratio(nu: f64) -> Result<f64> {
    ln_theta_ratio(nu).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_trivial_points() {
        let one = log_gamma_signed(1.0).unwrap();
        assert_eq!(one.sign, 1);
        assert!(one.log_magnitude.abs() < 1e-15);

        let half = log_gamma_signed(0.5).unwrap();
        assert_eq!(half.sign, 1);
        assert!((half.log_magnitude - 0.5 * PI.ln()).abs() < 1e-14);

        // Γ(-1/2) = -2 sqrt(pi)
        let neg_half = log_gamma_signed(-0.5).unwrap();
        assert_eq!(neg_half.sign, -1);
        assert!((neg_half.log_magnitude - 1.265_512_123_484_645_3).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_rejects_poles_and_non_finite() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(log_gamma_signed(x), Err(Error::Pole(x)));
        }
        assert!(matches!(log_gamma_signed(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(log_gamma_signed(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn log_gamma_factorials() {
        let mut fact = 1.0_f64;
        for n in 1..25 {
            fact *= n as f64;
            let lg = log_gamma_signed(n as f64 + 1.0).unwrap().log_magnitude;
            assert!((lg - fact.ln()).abs() < 1e-13 * fact.ln().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn sign_alternates_between_negative_poles() {
        for k in 0..8 {
            let x = -(k as f64) - 0.5;
            let expected = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(log_gamma_signed(x).unwrap().sign, expected, "x = {x}");
        }
    }

    #[test]
    fn theta_trivial_values() {
        assert!((theta_ratio(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((theta_ratio(1e-12).unwrap() - 1.0).abs() < 1e-10);
        assert!(theta_ratio(0.0).is_err());
        assert!(theta_ratio(1.0).is_err());
        assert!(theta_ratio(-0.2).is_err());
    }

    #[test]
    fn gamma_ratio_large_arguments_match_direct_route() {
        // Overlap region where both routes are accurate.
        for &(a, b) in &[(10.5, 10.0), (25.3, 24.8), (60.0, 59.25)] {
            let fast = ln_gamma_ratio(a, b).unwrap();
            let direct = log_gamma_signed(a).unwrap().log_magnitude - log_gamma_signed(b).unwrap().log_magnitude;
            assert!((fast.log_magnitude - direct).abs() < 1e-12, "({a}, {b})");
        }
        // Γ(x + 1/2)/Γ(x) ~ sqrt(x) (1 - 1/(8x)) for huge x.
        let x = 6.25e10;
        let r = ln_gamma_ratio(x + 0.5, x).unwrap().log_magnitude;
        let expect = 0.5 * x.ln() + (-1.0 / (8.0 * x)).ln_1p();
        assert!((r - expect).abs() < 1e-14);
    }

    #[test]
    fn gamma_ratio_reflection_branch() {
        // Γ(-10.3)/Γ(-10.8) against the product of individual values.
        let fast = ln_gamma_ratio(-10.3, -10.8).unwrap();
        let num = log_gamma_signed(-10.3).unwrap();
        let den = log_gamma_signed(-10.8).unwrap();
        assert_eq!(fast.sign, num.sign * den.sign);
        assert!((fast.log_magnitude - (num.log_magnitude - den.log_magnitude)).abs() < 1e-12);
    }

    #[test]
    fn gamma_ratio_pole_conventions() {
        assert_eq!(ln_gamma_ratio(-2.0, 0.5), Err(Error::Pole(-2.0)));
        assert!(ln_gamma_ratio(0.5, -3.0).unwrap().is_zero());
    }

    #[test]
    fn signed_log_products() {
        let a = SignedLogValue::from_f64(-3.0);
        let b = SignedLogValue::from_f64(0.25);
        assert!(((a * b).value() + 0.75).abs() < 1e-15);
        assert!((a * SignedLogValue::ZERO).is_zero());
        assert!(SignedLogValue::ZERO.recip().is_none());
        assert!((a.checked_div(b).unwrap().value() + 12.0).abs() < 1e-13);
    }
}
