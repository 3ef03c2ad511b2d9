use gkrevival::specfun::{
    bessel_i_ratio, bessel_i_scaled, bessel_k_scaled, ln_bessel_i, ln_bessel_k, ln_gamma,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Neumaier-compensated sum.
fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// I_0(x) = Σ (x/2)^{2k} / (k!)², summed with compensation.
fn i0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut t = 1.0;
    compensated_sum((0..60).map(|k| {
        if k > 0 {
            t *= y / (k as f64 * k as f64);
        }
        t
    }))
}

/// K_0(x) = -(ln(x/2) + γ) I_0(x) + Σ_{k>=1} (x²/4)^k H_k / (k!)².
fn k0_series(x: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let y = 0.25 * x * x;
    let mut t = 1.0;
    let mut h = 0.0;
    let tail = compensated_sum((1..60).map(|k| {
        let k = k as f64;
        t *= y / (k * k);
        h += 1.0 / k;
        t * h
    }));
    -((0.5 * x).ln() + EULER_GAMMA) * i0_series(x) + tail
}

#[test]
fn ln_gamma_identities() {
    assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
    assert!(rel(ln_gamma(0.5).unwrap(), 0.5 * PI.ln()) < 1e-14);
    assert!(rel(ln_gamma(11.0).unwrap(), 3_628_800f64.ln()) < 1e-15);
    assert!(ln_gamma(0.0).is_err());
}

#[test]
fn i0_at_one_matches_series_oracle() {
    let oracle = i0_series(1.0);
    // frozen from the oracle
    assert!(rel(oracle, 1.266_065_877_752_008_4) < 1e-15);
    assert!(rel(bessel_i_scaled(0.0, 1.0).unwrap(), (-1.0f64).exp() * oracle) < 1e-13);
    assert_eq!(bessel_i_scaled(0.0, 0.0).unwrap(), 1.0);
}

#[test]
fn k0_at_one_matches_series_oracle() {
    let oracle = k0_series(1.0);
    assert!(rel(oracle, 0.421_024_438_240_708_3) < 1e-14);
    assert!(rel(bessel_k_scaled(0.0, 1.0).unwrap(), 1f64.exp() * oracle) < 1e-13);
    // the series cancels badly beyond x ~ 3, so it is only an oracle below that
    for &x in &[0.05, 0.4, 1.7, 2.5] {
        assert!(
            rel(ln_bessel_k(0.0, x).unwrap().exp(), k0_series(x)) < 1e-12,
            "x = {x}"
        );
    }
    // 30-digit reference value of K_0(6)
    assert!(
        rel(
            ln_bessel_k(0.0, 6.0).unwrap().exp(),
            1.243_994_328_013_123_1e-3
        ) < 1e-12
    );
}

#[test]
fn half_integer_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let x: f64 = rng.gen_range(1e-3..200.0);
        // e^{-x} √(2/(πx)) sinh x
        let i_half = (1.0 / (2.0 * PI * x)).sqrt() * -(-2.0 * x).exp_m1();
        assert!(
            rel(bessel_i_scaled(0.5, x).unwrap(), i_half) < 1e-12,
            "I x = {x}"
        );
        let k_half = (PI / (2.0 * x)).sqrt();
        assert!(
            rel(bessel_k_scaled(0.5, x).unwrap(), k_half) < 1e-12,
            "K x = {x}"
        );
    }
}

#[test]
fn wronskian_over_random_orders_and_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let nu: f64 = rng.gen_range(0.0..=100.0);
        let x: f64 = rng.gen_range(1e-3..=200.0);
        let a = ln_bessel_i(nu, x).unwrap() + ln_bessel_k(nu + 1.0, x).unwrap();
        let b = ln_bessel_i(nu + 1.0, x).unwrap() + ln_bessel_k(nu, x).unwrap();
        let residual = (x * (a.exp() + b.exp()) - 1.0).abs();
        worst = worst.max(residual);
    }
    assert!(worst < 1e-10, "worst Wronskian residual {worst:e}");
}

#[test]
fn wronskian_at_extreme_corners() {
    for &(nu, x) in &[
        (100.0, 1e-3),
        (100.0, 200.0),
        (0.0, 200.0),
        (0.0, 1e-3),
        (37.5, 0.9),
    ] {
        let a = ln_bessel_i(nu, x).unwrap() + ln_bessel_k(nu + 1.0, x).unwrap();
        let b = ln_bessel_i(nu + 1.0, x).unwrap() + ln_bessel_k(nu, x).unwrap();
        let residual = (x * (a.exp() + b.exp()) - 1.0).abs();
        assert!(residual < 1e-10, "nu = {nu}, x = {x}: {residual:e}");
    }
}

#[test]
fn three_term_recurrence() {
    for &nu in &[1.0, 1.5, 7.0, 28.0, 80.0] {
        for &x in &[0.3, 2.0, 17.0, 56.6, 150.0] {
            let lo = ln_bessel_i(nu - 1.0, x).unwrap();
            let hi = ln_bessel_i(nu + 1.0, x).unwrap();
            let mid = ln_bessel_i(nu, x).unwrap();
            // divide through by I_ν to keep every value O(1)
            let lhs = (lo - mid).exp() - (hi - mid).exp();
            assert!(rel(lhs, 2.0 * nu / x) < 1e-9, "nu = {nu}, x = {x}");
        }
    }
}

#[test]
fn ratio_small_argument_and_zero() {
    assert_eq!(bessel_i_ratio(3.0, 0.0).unwrap(), 0.0);
    for &nu in &[0.0, 1.0, 28.0] {
        let x = 1e-6;
        assert!(rel(bessel_i_ratio(nu, x).unwrap(), x / (2.0 * (nu + 1.0))) < 1e-10);
    }
}

#[test]
fn ratio_half_integer_closed_form() {
    for i in 1..=60 {
        let x = 0.5 * i as f64;
        let expect = 1.0 / x.tanh() - 1.0 / x;
        assert!(
            rel(bessel_i_ratio(0.5, x).unwrap(), expect) < 1e-12,
            "x = {x}"
        );
    }
}

#[test]
fn ratio_agrees_with_scaled_values() {
    let x = 2.0 * 280f64.sqrt();
    let cross = bessel_i_scaled(29.0, x).unwrap() / bessel_i_scaled(28.0, x).unwrap();
    assert!(rel(bessel_i_ratio(28.0, x).unwrap(), cross) < 1e-10);
}

#[test]
fn ratio_is_increasing_in_x() {
    for &nu in &[0.0, 0.5, 28.0, 81.0] {
        let values: Vec<f64> = (1..400)
            .map(|i| bessel_i_ratio(nu, 0.25 * i as f64).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]), "nu = {nu}");
    }
}

#[test]
fn domain_errors() {
    assert!(bessel_k_scaled(1.0, 0.0).is_err());
    assert!(bessel_k_scaled(-1.0, 1.0).is_err());
    assert!(bessel_i_scaled(-0.5, 1.0).is_err());
    assert!(bessel_i_scaled(1.0, -1.0).is_err());
    assert!(bessel_i_ratio(1.0, f64::INFINITY).is_err());
}

#[test]
fn overflow_free_in_log_domain() {
    // e^{-x} I_80(x) and I_80 itself at large x
    let v = ln_bessel_i(80.0, 700.0).unwrap();
    assert!(v.is_finite() && v > 600.0);
    assert!(bessel_i_scaled(80.0, 700.0).unwrap() > 0.0);
    let k = ln_bessel_k(100.0, 1e-3).unwrap();
    assert!(k.is_finite() && k > 700.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positivity_and_ratio_bounds(nu in 0.0f64..120.0, x in 1e-3f64..300.0) {
        prop_assert!(bessel_i_scaled(nu, x).unwrap() >= 0.0);
        prop_assert!(ln_bessel_k(nu, x).unwrap().is_finite());
        let r = bessel_i_ratio(nu, x).unwrap();
        prop_assert!(r > 0.0 && r < 1.0);
    }

    #[test]
    fn ratio_matches_log_values(nu in 0.0f64..60.0, x in 0.1f64..120.0) {
        let via_logs = (ln_bessel_i(nu + 1.0, x).unwrap() - ln_bessel_i(nu, x).unwrap()).exp();
        let r = bessel_i_ratio(nu, x).unwrap();
        prop_assert!(rel(r, via_logs) < 1e-11);
    }
}
