//! Energy ladder of the nonlinear oscillator on its infinite (λ < 0) branch,
//! shifted so the ground state sits at zero: `e_n = n(n + μ)/μ` in units of
//! `ħα`, with `ħ = 1`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::specfun::ln_gamma_pos;

/// Oscillator frequency `α` and deformation parameter `μ = 2/|Λ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumParams {
    alpha: f64,
    mu: f64,
}

impl SpectrumParams {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mu must be positive and finite, got {mu}"
            )));
        }
        Ok(Self { alpha, mu })
    }

    /// `α = 1`.
    pub fn with_mu(mu: f64) -> Result<Self> {
        Self::new(1.0, mu)
    }

    /// Builds the parameters from the dimensionless deformation `Λ < 0`.
    pub fn from_deformation(alpha: f64, lambda: f64) -> Result<Self> {
        if !(lambda < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "only the infinite ladder (Lambda < 0) is supported, got {lambda}"
            )));
        }
        Self::new(alpha, 2.0 / lambda.abs())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `Λ = -2/μ`.
    pub fn deformation(&self) -> f64 {
        -2.0 / self.mu
    }

    pub fn mu_is_integer(&self) -> bool {
        self.mu.fract() == 0.0
    }
}

/// `e_n = n(n + μ)/μ`.
pub fn energy_level(n: u64, p: &SpectrumParams) -> f64 {
    let n = n as f64;
    n * (n + p.mu) / p.mu
}

/// `ln ρ_n` from the gamma-function form
/// `ρ_n = Γ(n+1) Γ(n+1+μ) / (μ^n Γ(1+μ))`.
pub fn ln_moment_rho(n: u64, p: &SpectrumParams) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let mu = p.mu;
    ln_gamma_pos(nf + 1.0) + ln_gamma_pos(nf + 1.0 + mu) - nf * mu.ln() - ln_gamma_pos(1.0 + mu)
}

/// `ln ρ_n` from the product `Π_{i=1}^n e_i`.
pub fn ln_moment_rho_product(n: u64, p: &SpectrumParams) -> f64 {
    (1..=n).map(|i| energy_level(i, p).ln()).sum()
}

/// `t_rev = 2πμ/α`.
pub fn revival_time(p: &SpectrumParams) -> f64 {
    TAU * p.mu / p.alpha
}

/// `T_cl = 2π / |dE/dn|` at `n̄`, i.e. `2πμ / (α(2n̄ + μ))`.
pub fn classical_period(n_bar: f64, p: &SpectrumParams) -> Result<f64> {
    if !(n_bar >= 0.0) || !n_bar.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "n_bar must be finite and >= 0, got {n_bar}"
        )));
    }
    Ok(TAU * p.mu / (p.alpha * (2.0 * n_bar + p.mu)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeScales {
    pub t_classical: f64,
    pub t_revival: f64,
}

impl TimeScales {
    pub fn at(n_bar: f64, p: &SpectrumParams) -> Result<Self> {
        Ok(Self {
            t_classical: classical_period(n_bar, p)?,
            t_revival: revival_time(p),
        })
    }

    /// `t_rev / T_cl = 2n̄ + μ`.
    pub fn ratio(&self) -> f64 {
        self.t_revival / self.t_classical
    }
}
