//! Resolution of unity for the coherent states.
//!
//! The measure on `(J, γ)` is `k(J) dJ dγ / 2π` with
//! `k(J) = N(J)² ρ(J) = 2μ I_μ(2√(Jμ)) K_μ(2√(Jμ))`. The angular integral
//! removes every off-diagonal `|n⟩⟨m|` term, so the operator identity holds
//! exactly when `ρ(J)` reproduces the moments, `∫_0^∞ J^n ρ(J) dJ = ρ_n`.
//! [`moment_check`] verifies that numerically.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::gkstate::ln_normalization_sq;
use crate::quad::{gauss_kronrod, Integral};
use crate::specfun::{ln_bessel_i, ln_bessel_k, ln_gamma_pos};
use crate::spectrum::{ln_moment_rho, SpectrumParams};

/// Largest moment order [`moment_check`] accepts.
pub const MAX_MOMENT_ORDER: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// The integration domain ends where the integrand falls below
    /// `abs_tol * cutoff_factor * max(1, peak)`.
    pub cutoff_factor: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            cutoff_factor: 1e-3,
            max_intervals: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !ok(self.abs_tol) || !ok(self.rel_tol) || !ok(self.cutoff_factor) {
            return Err(Error::InvalidParameter(
                "quadrature tolerances must be positive and finite".into(),
            ));
        }
        if self.max_intervals == 0 {
            return Err(Error::InvalidParameter("max_intervals must be >= 1".into()));
        }
        Ok(())
    }
}

fn check_positive_action(j: f64) -> Result<()> {
    if !(j > 0.0) || !j.is_finite() {
        return Err(Error::Domain(format!("J must be finite and > 0, got {j}")));
    }
    Ok(())
}

/// `ln ρ(J)` for `ρ(J) = 2μ (Jμ)^{μ/2} K_μ(2√(Jμ)) / Γ(1+μ)`.
pub fn ln_density_rho(j: f64, p: &SpectrumParams) -> Result<f64> {
    check_positive_action(j)?;
    let mu = p.mu();
    let jmu = j * mu;
    Ok(
        (2.0 * mu).ln() + 0.5 * mu * jmu.ln() - ln_gamma_pos(1.0 + mu)
            + ln_bessel_k(mu, 2.0 * jmu.sqrt())?,
    )
}

pub fn density_rho(j: f64, p: &SpectrumParams) -> Result<f64> {
    Ok(ln_density_rho(j, p)?.exp())
}

/// `k(J) = 2μ I_μ(2√(Jμ)) K_μ(2√(Jμ))`.
pub fn measure_k(j: f64, p: &SpectrumParams) -> Result<f64> {
    check_positive_action(j)?;
    let mu = p.mu();
    let x = 2.0 * (j * mu).sqrt();
    Ok(((2.0 * mu).ln() + ln_bessel_i(mu, x)? + ln_bessel_k(mu, x)?).exp())
}

/// `k(J)` assembled as `N(J)² ρ(J)` from the normalization and the density.
pub fn measure_k_from_parts(j: f64, p: &SpectrumParams) -> Result<f64> {
    check_positive_action(j)?;
    Ok((ln_normalization_sq(j, p)? + ln_density_rho(j, p)?).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub n: u64,
    pub integral: f64,
    pub rho_n: f64,
    pub rel_err: f64,
    pub error_estimate: f64,
}

/// Runs `f` under the quadrature, turning the first kernel failure into the
/// overall result.
fn integrate_fallible<F>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max: usize,
) -> Result<Integral>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure = RefCell::new(None);
    let wrapped = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let out = gauss_kronrod(wrapped, a, b, abs_tol, rel_tol, max);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    out
}

fn check_order(n: u64) -> Result<()> {
    if n > MAX_MOMENT_ORDER {
        return Err(Error::InvalidParameter(format!(
            "moment order must be <= {MAX_MOMENT_ORDER}, got {n}"
        )));
    }
    Ok(())
}

/// Log of the moment integrand after `u = 2√(Jμ)`:
/// `(u²/4μ)^n (u/2)^μ u K_μ(u) / Γ(1+μ)`.
fn ln_substituted_integrand(n: u64, mu: f64, u: f64) -> Result<f64> {
    Ok(2.0 * n as f64 * (u / (2.0 * mu.sqrt())).ln()
        + mu * (0.5 * u).ln()
        + u.ln()
        + ln_bessel_k(mu, u)?
        - ln_gamma_pos(1.0 + mu))
}

/// Upper end of the `u` domain: past the integrand's peak, where it has
/// dropped below the configured floor.
fn cutoff_u(n: u64, mu: f64, cfg: &QuadratureConfig) -> Result<f64> {
    const STEP: f64 = 0.5;
    const MAX_STEPS: usize = 1_000_000;
    let mut ln_peak = f64::NEG_INFINITY;
    let mut past_peak = false;
    for i in 1..=MAX_STEPS {
        let u = STEP * i as f64;
        let v = ln_substituted_integrand(n, mu, u)?;
        if v > ln_peak {
            ln_peak = v;
        } else {
            past_peak = true;
        }
        let floor = (cfg.abs_tol * cfg.cutoff_factor).ln() + ln_peak.max(0.0);
        if past_peak && v < floor {
            return Ok(u);
        }
    }
    Err(Error::NonConvergence {
        what: "moment integrand cutoff search",
        limit: MAX_STEPS,
    })
}

/// `∫_0^∞ J^n ρ(J) dJ` integrated in `u = 2√(Jμ)`, where the integrand is
/// smooth at the origin.
pub fn moment_integral_substituted(
    n: u64,
    p: &SpectrumParams,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    check_order(n)?;
    cfg.validate()?;
    let mu = p.mu();
    let u_max = cutoff_u(n, mu, cfg)?;
    integrate_fallible(
        |u| Ok(ln_substituted_integrand(n, mu, u)?.exp()),
        0.0,
        u_max,
        cfg.abs_tol,
        cfg.rel_tol,
        cfg.max_intervals,
    )
}

/// The same moment integrated directly in `J`, over the image of the `u`
/// domain.
pub fn moment_integral_direct(
    n: u64,
    p: &SpectrumParams,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    check_order(n)?;
    cfg.validate()?;
    let mu = p.mu();
    let u_max = cutoff_u(n, mu, cfg)?;
    let j_max = u_max * u_max / (4.0 * mu);
    integrate_fallible(
        |j| {
            if j == 0.0 {
                return Ok(0.0);
            }
            Ok((n as f64 * j.ln() + ln_density_rho(j, p)?).exp())
        },
        0.0,
        j_max,
        cfg.abs_tol,
        cfg.rel_tol,
        cfg.max_intervals,
    )
}

/// Compares `∫ J^n ρ(J) dJ` against `ρ_n`.
pub fn moment_check(n: u64, p: &SpectrumParams, cfg: &QuadratureConfig) -> Result<MomentReport> {
    let integral = moment_integral_substituted(n, p, cfg)?;
    let rho_n = ln_moment_rho(n, p).exp();
    Ok(MomentReport {
        n,
        integral: integral.value,
        rho_n,
        rel_err: ((integral.value - rho_n) / rho_n).abs(),
        error_estimate: integral.error,
    })
}
