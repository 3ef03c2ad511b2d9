//! Real-parameter special functions: log-gamma, modified Bessel functions of
//! the first and second kind of arbitrary real order, and the ratio
//! `I_{ν+1}/I_ν`.
//!
//! Everything that can overflow is computed in the log domain. The public
//! Bessel entry points return exponentially scaled values (`e^{-x} I_ν(x)`
//! and `e^{x} K_ν(x)`); `ln_bessel_i` and `ln_bessel_k` give the logarithm of
//! the unscaled function.

mod bessel;
mod gamma;

pub(crate) use bessel::BesselISeries;
pub use bessel::{
    bessel_i_ratio, bessel_i_ratio_with, bessel_i_scaled, bessel_k_scaled, ln_bessel_i,
    ln_bessel_i_with, ln_bessel_k, ln_bessel_k_with,
};
pub use gamma::ln_gamma;
pub(crate) use gamma::ln_gamma_pos;

use crate::error::{Error, Result};

/// Accuracy targets for the series, continued fractions and quadratures in
/// this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyPolicy {
    rel_tol: f64,
    max_terms: usize,
}

impl AccuracyPolicy {
    pub const DEFAULT: AccuracyPolicy = AccuracyPolicy {
        rel_tol: 1e-12,
        max_terms: 5000,
    };

    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-6], got {rel_tol}"
            )));
        }
        if max_terms < 100 {
            return Err(Error::InvalidParameter(format!(
                "max_terms must be at least 100, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for AccuracyPolicy {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `ln Σ exp(v)` without overflow. Returns `-inf` for an empty slice or when
/// every entry is `-inf`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max.is_infinite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}
