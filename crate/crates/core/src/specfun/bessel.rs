//! Modified Bessel function of the second kind, `K_nu(x)`, for real order.
//!
//! Temme's series for `x < 2` and Steed's continued fraction (the
//! Thompson–Barnett CF2 form) for `x >= 2`, both evaluated at the reduced
//! order `mu = nu - round(nu)` in `[-1/2, 1/2]` followed by one forward
//! recurrence step when needed.

use std::f64::consts::PI;

use super::gamma::recip_gamma;
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 20_000;
const SERIES_LIMIT: f64 = 2.0;

/// Taylor coefficients of `1/Γ(z) = Σ c_k z^k`, k = 1..30.
#[allow(clippy::excessive_precision)]
const RECIP_GAMMA_TAYLOR: [f64; 30] = [
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
];

/// Temme's auxiliary gammas for `|mu| <= 1/2`:
/// `gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu)`, `gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2`,
/// plus `1/Γ(1+mu)` and `1/Γ(1-mu)`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+mu) = Σ_{k>=1} c_k mu^(k-1): split by parity of k.
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    for (i, c) in RECIP_GAMMA_TAYLOR.iter().enumerate().rev() {
        // i = k - 1
        if i % 2 == 1 {
            gam1 = gam1 * mu2 - c;
        } else {
            gam2 = gam2 * mu2 + c;
        }
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// `(e^x K_nu(x), e^x K_{nu+1}(x))` for `nu >= 0`, `x > 0`.
fn scaled_pair(nu: f64, x: f64) -> (f64, f64) {
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let mu2 = mu * mu;
    let two_over_x = 2.0 / x;

    let (mut k_mu, mut k_mu1) = if x < SERIES_LIMIT {
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let half_x = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -half_x.ln();
        let e = mu * d;
        let fact2 = if e.abs() < 1e-8 { 1.0 + e * e / 6.0 } else { e.sinh() / e };
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = half_x * half_x;
        let mut sum1 = p;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let scale = x.exp();
        (sum * scale, sum1 * two_over_x * scale)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAX_ITER {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        let h = a1 * h;
        let k = (PI / (2.0 * x)).sqrt() / s;
        (k, k * (mu + x + 0.5 - h) / x)
    };

    let mut order = mu;
    for _ in 0..nl as usize {
        let next = (order + 1.0) * two_over_x * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
        order += 1.0;
    }
    (k_mu, k_mu1)
}

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::domain(format!("bessel_k: order {nu} not in (0, 1)")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_k: argument {x} must be finite and > 0")));
    }
    Ok(())
}

/// `K_nu(x)` for `nu` in (0, 1) and `x > 0`. Underflows to 0 for `x` beyond ~745.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    bessel_k_scaled(nu, x).map(|k| k * (-x).exp())
}

/// `e^x K_nu(x)`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    Ok(scaled_pair(nu, x).0)
}

/// `(K_nu(x), K_{nu+1}(x))`; the second value gives the derivative via
/// `K'_nu(x) = (nu/x) K_nu(x) - K_{nu+1}(x)`.
pub fn bessel_k_and_next(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_args(nu, x)?;
    let (k0, k1) = scaled_pair(nu, x);
    let damp = (-x).exp();
    Ok((k0 * damp, k1 * damp))
}

/// Two-term small-argument form
/// `pi / (2 sin(pi nu)) [ (x/2)^(-nu)/Γ(1-nu) - (x/2)^nu/Γ(1+nu) ]`.
///
/// Neglects relative corrections of order `x^(2 - 2 nu)` and `x^2`; only
/// meaningful where those are small.
pub fn bessel_k_small_x(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    let rg_minus = recip_gamma(1.0 - nu)?.value();
    let rg_plus = recip_gamma(1.0 + nu)?.value();
    let half = 0.5 * x;
    Ok(PI / (2.0 * super::sin_pi(nu)) * (half.powf(-nu) * rg_minus - half.powf(nu) * rg_plus))
}
