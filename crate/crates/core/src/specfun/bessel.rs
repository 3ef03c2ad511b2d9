//! Modified Bessel functions `I_ν` and `K_ν` for real order `ν >= 0`.
//!
//! * `I_ν(x)` is summed from its ascending series
//!   `Σ (x/2)^{2k+ν} / (k! Γ(k+ν+1))`. Every term is positive, so the sum is
//!   started at the largest term and walked outwards with term ratios; only
//!   the largest term goes through `ln Γ`.
//! * `K_ν(x)` comes from `∫_0^∞ e^{-x cosh t} cosh(νt) dt`. The integrand is
//!   handled in the log domain, normalized by its maximum, and integrated by
//!   tanh-sinh on either side of the peak.
//! * `I_{ν+1}/I_ν` is the Gauss continued fraction evaluated with the
//!   modified Lentz method.

use std::f64::consts::LN_2;

use super::{ln_gamma_pos, AccuracyPolicy};
use crate::error::{Error, Result};
use crate::quad::tanh_sinh;

/// Integrand values below `max * e^{-K_TAIL_LOG}` are dropped.
const K_TAIL_LOG: f64 = 46.0;
const K_MAX_LEVEL: u32 = 14;
const BISECTION_STEPS: usize = 200;
const LENTZ_TINY: f64 = 1e-300;

fn check_order(nu: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel order must be >= 0, got {nu}"
        )));
    }
    Ok(())
}

/// `ln I_ν(x)` with the default accuracy policy. `x = 0` gives `0` for
/// `ν = 0` and `-inf` otherwise.
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    ln_bessel_i_with(nu, x, &AccuracyPolicy::DEFAULT)
}

pub fn ln_bessel_i_with(nu: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    check_order(nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "I_nu requires finite x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let series = BesselISeries::sum(nu, x, policy)?;
    Ok(series.ln_peak_term + series.ln_sum)
}

/// The ascending series of `I_ν(x)` for `x > 0`, summed relative to its
/// largest term `t_peak`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BesselISeries {
    /// index of the largest term
    pub peak: u64,
    /// `ln t_peak`
    pub ln_peak_term: f64,
    /// `ln Σ_k t_k / t_peak`
    pub ln_sum: f64,
}

impl BesselISeries {
    pub(crate) fn sum(nu: f64, x: f64, policy: &AccuracyPolicy) -> Result<Self> {
        debug_assert!(nu >= 0.0 && x > 0.0);
        let half = 0.5 * x;
        let y = half * half;
        // largest term: (k+1)(k+ν+1) = y
        let b = nu + 2.0;
        let c = nu + 1.0 - y;
        let root = 0.5 * (-b + (b * b - 4.0 * c).sqrt());
        let peak = if root > 0.0 { root.floor() } else { 0.0 };

        let ln_peak_term = (2.0 * peak + nu) * half.ln()
            - ln_gamma_pos(peak + 1.0)
            - ln_gamma_pos(peak + nu + 1.0);

        let eps = 0.25 * f64::EPSILON;
        let mut sum = 1.0;
        let mut terms = 1usize;
        let overflow = || Error::NonConvergence {
            what: "Bessel I series",
            limit: policy.max_terms(),
        };

        let mut term = 1.0;
        let mut k = peak;
        loop {
            term *= y / ((k + 1.0) * (k + nu + 1.0));
            sum += term;
            terms += 1;
            k += 1.0;
            if term < eps * sum {
                break;
            }
            if terms > policy.max_terms() {
                return Err(overflow());
            }
        }

        let mut term = 1.0;
        let mut k = peak;
        while k > 0.0 {
            term *= k * (k + nu) / y;
            sum += term;
            terms += 1;
            k -= 1.0;
            if term < eps * sum {
                break;
            }
            if terms > policy.max_terms() {
                return Err(overflow());
            }
        }

        Ok(Self {
            peak: peak as u64,
            ln_peak_term,
            ln_sum: sum.ln(),
        })
    }
}

/// `e^{-x} I_ν(x)`.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_bessel_i(nu, x)? - x).exp())
}

/// `ln K_ν(x)` with the default accuracy policy.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    ln_bessel_k_with(nu, x, &AccuracyPolicy::DEFAULT)
}

/// Log of `cosh(y)` for `y >= 0` without overflow.
fn ln_cosh(y: f64) -> f64 {
    y + (-2.0 * y).exp().ln_1p() - LN_2
}

pub fn ln_bessel_k_with(nu: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    check_order(nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "K_nu requires finite x > 0, got {x}"
        )));
    }
    // log of the scaled integrand e^{x} e^{-x cosh t} cosh(νt)
    let log_integrand = |t: f64| {
        let s = (0.5 * t).sinh();
        -2.0 * x * s * s + ln_cosh(nu * t)
    };
    let slope = |t: f64| -x * t.sinh() + nu * (nu * t).tanh();

    // The integrand is concave at the origin when ν² <= x; otherwise its
    // maximum sits at the single positive root of the slope, below asinh(ν/x).
    let t_peak = if nu * nu <= x {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, (nu / x).asinh());
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let log_max = log_integrand(t_peak);
    let floor = log_max - K_TAIL_LOG;

    // upper cut: first point past the peak where the integrand is negligible
    let width = 1.0 / x.max(nu).max(1.0).sqrt();
    let mut step = width;
    while log_integrand(t_peak + step) > floor {
        step *= 2.0;
    }
    let (mut lo, mut hi) = (t_peak + 0.5 * step, t_peak + step);
    if step == width {
        lo = t_peak;
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if log_integrand(mid) > floor {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_upper = hi;

    // lower cut, only when the integrand at the origin is already negligible
    let t_lower = if t_peak > 0.0 && log_integrand(0.0) < floor {
        let (mut lo, mut hi) = (0.0, t_peak);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if log_integrand(mid) > floor {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    } else {
        0.0
    };

    let normalized = |t: f64| (log_integrand(t) - log_max).exp();
    let tol = policy.rel_tol();
    let mut total = tanh_sinh(normalized, t_peak, t_upper, tol, K_MAX_LEVEL)?;
    if t_peak > t_lower {
        total += tanh_sinh(normalized, t_lower, t_peak, tol, K_MAX_LEVEL)?;
    }
    Ok(log_max + total.ln() - x)
}

/// `e^{x} K_ν(x)`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_bessel_k(nu, x)? + x).exp())
}

/// `I_{ν+1}(x) / I_ν(x)` from the continued fraction
/// `1 / (2(ν+1)/x + 1 / (2(ν+2)/x + ...))`.
pub fn bessel_i_ratio(nu: f64, x: f64) -> Result<f64> {
    bessel_i_ratio_with(nu, x, &AccuracyPolicy::DEFAULT)
}

pub fn bessel_i_ratio_with(nu: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    check_order(nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel ratio requires finite x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let inv = 2.0 / x;
    let mut f = LENTZ_TINY;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..=policy.max_terms() {
        let b = (nu + k as f64) * inv;
        d += b;
        if d == 0.0 {
            d = LENTZ_TINY;
        }
        d = 1.0 / d;
        c = b + 1.0 / c;
        if c == 0.0 {
            c = LENTZ_TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            return Ok(f);
        }
    }
    Err(Error::NonConvergence {
        what: "Bessel I ratio continued fraction",
        limit: policy.max_terms(),
    })
}
