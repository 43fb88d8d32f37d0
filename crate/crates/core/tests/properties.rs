use std::f64::consts::PI;

use ac_spectra::ac_ho::{solve_spectrum, BracketKind};
use ac_spectra::ac_pure::energy_closed_form;
use ac_spectra::quad::{integrate, Tolerance};
use ac_spectra::sae::{alpha_from_physics_pure, spectrum_from_alpha_pure};
use ac_spectra::specfun::{bessel_k, kummer_m, log_gamma_signed, theta_ratio, tricomi_u};
use ac_spectra::{Channel, PhysicalParams, Spin};
use proptest::prelude::*;

/// ln Γ(x) for x > 0 by upward recurrence to x >= 15 and Stirling's series.
fn stirling_ln_gamma(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut y = x;
    while y < 15.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series =
        inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series - shift
}

fn non_integer(x: f64) -> bool {
    (x - x.round()).abs() > 0.05
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_gamma_matches_stirling(x in 0.05f64..60.0) {
        let v = log_gamma_signed(x).unwrap();
        prop_assert_eq!(v.sign, 1);
        let oracle = stirling_ln_gamma(x);
        prop_assert!((v.log_magnitude - oracle).abs() <= 1e-12 * oracle.abs().max(1.0));
    }

    #[test]
    fn log_gamma_reflection_for_negative_arguments(x in -20.0f64..-0.05) {
        prop_assume!(non_integer(x));
        // Γ(x) Γ(1-x) = π / sin(π x)
        let v = log_gamma_signed(x).unwrap();
        let s = (PI * x).sin();
        let expected = PI.ln() - s.abs().ln() - stirling_ln_gamma(1.0 - x);
        prop_assert_eq!(v.sign, if s > 0.0 { 1 } else { -1 });
        prop_assert!((v.log_magnitude - expected).abs() <= 1e-11 * expected.abs().max(1.0));
    }

    #[test]
    fn theta_reflection_identity(nu in 0.001f64..0.999) {
        // Γ(1+nu) Γ(1-nu) = π nu / sin(π nu)
        let lg = stirling_ln_gamma(1.0 + nu);
        let expected = (2.0 * lg).exp() * (PI * nu).sin() / (PI * nu);
        let got = theta_ratio(nu).unwrap();
        prop_assert!(((got - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn kummer_contiguous_relation(a in -5.0f64..5.0, b in 0.2f64..3.0, z in 0.0f64..10.0) {
        prop_assume!(non_integer(b));
        // (b-a) M(a-1) + (2a-b+z) M(a) - a M(a+1) = 0
        let terms = [
            (b - a) * kummer_m(a - 1.0, b, z).unwrap(),
            (2.0 * a - b + z) * kummer_m(a, b, z).unwrap(),
            -a * kummer_m(a + 1.0, b, z).unwrap(),
        ];
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        prop_assume!(scale > 0.0);
        prop_assert!(terms.iter().sum::<f64>().abs() <= 1e-10 * scale);
    }

    #[test]
    fn tricomi_derivative_relation(a in 0.1f64..3.0, b in 1.05f64..1.95, z in 0.5f64..30.0) {
        let h = 1e-4 * z;
        let fd = (tricomi_u(a, b, z + h).unwrap() - tricomi_u(a, b, z - h).unwrap()) / (2.0 * h);
        let exact = -a * tricomi_u(a + 1.0, b + 1.0, z).unwrap();
        prop_assert!(((fd - exact) / exact).abs() < 1e-6);
    }

    #[test]
    fn tricomi_incomplete_gamma(a in 0.05f64..2.9, z in 0.2f64..15.0) {
        prop_assume!(non_integer(a));
        // U(a, a, z) = e^z Γ(1-a, z) = ∫_0^∞ (z+s)^(-a) e^(-s) ds
        let f = |s: f64| (z + s).powf(-a) * (-s).exp();
        let tol = Tolerance::relative(1e-13);
        let oracle = integrate(f, 0.0, 5.0, tol).unwrap().value + integrate(f, 5.0, 80.0, tol).unwrap().value;
        let got = tricomi_u(a, a, z).unwrap();
        prop_assert!(((got - oracle) / oracle).abs() < 1e-9);
    }

    #[test]
    fn bessel_positive_and_decreasing(nu in 0.01f64..0.99, x in 1e-3f64..50.0, dx in 1e-3f64..5.0) {
        let k1 = bessel_k(nu, x).unwrap();
        let k2 = bessel_k(nu, x + dx).unwrap();
        prop_assert!(k1 > 0.0 && k2 > 0.0 && k2 < k1);
    }

    #[test]
    fn pure_energy_scaling(mass in 0.1f64..10.0, r0 in 0.01f64..10.0) {
        let c = Channel::new(-1.5, 1, Spin::Up);
        let p = PhysicalParams::new(mass, -1.5, r0, 0.0).unwrap();
        let e = energy_closed_form(&p, &c).unwrap();
        prop_assert!(e < 0.0);
        prop_assert!((e * mass * r0 * r0 + 0.125).abs() < 1e-13);
    }

    #[test]
    fn pure_alpha_path_agrees(eta in -6.0f64..-1.0, above in any::<bool>(), up in any::<bool>(), r0 in 0.01f64..5.0) {
        let spin = if up { Spin::Up } else { Spin::Down };
        // m = floor(-s eta) puts xi in (-1, 0]; one more puts it in (0, 1].
        let m = (-f64::from(spin.sign()) * eta).floor() as i64 + i64::from(above);
        let c = Channel::new(eta, m, spin);
        prop_assume!(c.abs_xi() > 1e-3 && c.abs_xi() < 1.0 - 1e-3);
        let p = PhysicalParams::new(1.0, eta, r0, 0.0).unwrap();
        let closed = energy_closed_form(&p, &c).unwrap();
        let alpha = alpha_from_physics_pure(&p, &c).unwrap().alpha;
        let via = spectrum_from_alpha_pure(alpha, &c, 1.0).unwrap();
        prop_assert!(((via - closed) / closed).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn spectrum_interlaces_lattice(eta in -5.0f64..-1.0, nu in 0.05f64..0.95, r0 in 0.05f64..2.0, omega in 0.2f64..3.0) {
        let c = Channel::new(-nu, 0, Spin::Up);
        let p = PhysicalParams::new(1.0, eta, r0, omega).unwrap();
        let s = solve_spectrum(&p, &c, 6).unwrap();
        prop_assert!(s.skipped.is_empty());
        prop_assert_eq!(s.states.len(), 6);
        let plus = |n: i64| (2.0 * n as f64 + 1.0 + nu) * omega;
        let minus = |n: i64| (2.0 * n as f64 + 1.0 - nu) * omega;
        for w in s.states.windows(2) {
            prop_assert!(w[0].energy < w[1].energy);
        }
        for st in &s.states {
            let n = st.n_bracket;
            match st.kind {
                BracketKind::BelowLattice => prop_assert!(st.energy < minus(0)),
                BracketKind::PlusToMinus => prop_assert!(st.energy > plus(n) && st.energy < minus(n + 1)),
                other => prop_assert!(false, "unexpected bracket {:?}", other),
            }
        }
    }
}
