//! Gazeau-Klauder coherent states `|J, γ⟩` of the quadratic spectrum.
//!
//! A state stores `ln |c_n|²` for `n = 0..=n_max`, where
//!
//! ```text
//! |c_n|² = (Jμ)^{n+μ/2} / (n! Γ(n+1+μ) I_μ(2√(Jμ)))
//! ```
//!
//! and synthesizes the phases `e^{-iγ e_n}` on demand. Every observable has a
//! closed Bessel form and a direct truncated-series form; both are exposed so
//! they can be checked against each other.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::phase::phase_turns;
use crate::specfun::{
    bessel_i_ratio, ln_bessel_i, ln_gamma_pos, log_sum_exp, AccuracyPolicy, BesselISeries,
};
use crate::spectrum::{energy_level, ln_moment_rho, SpectrumParams};

pub const DEFAULT_TAIL_TOL: f64 = 1e-14;

/// Hard cap on the number of retained components.
pub const MAX_COMPONENTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    j: f64,
    gamma: f64,
    params: SpectrumParams,
    ln_weights: Vec<f64>,
    ln_norm_sq: f64,
    tail_tol: f64,
}

/// `ln N(J)²` from `Γ(1+μ) (Jμ)^{-μ/2} I_μ(2√(Jμ))`.
pub fn ln_normalization_sq(j: f64, p: &SpectrumParams) -> Result<f64> {
    check_action(j)?;
    if j == 0.0 {
        return Ok(0.0);
    }
    let mu = p.mu();
    let ln_jmu = (j * mu).ln();
    let x = 2.0 * (j * mu).sqrt();
    Ok(ln_gamma_pos(1.0 + mu) - 0.5 * mu * ln_jmu + ln_bessel_i(mu, x)?)
}

/// `ln N(J)²` from the defining series `Σ_{n<terms} J^n / ρ_n`.
pub fn ln_normalization_sq_series(j: f64, p: &SpectrumParams, terms: usize) -> Result<f64> {
    check_action(j)?;
    if j == 0.0 {
        return Ok(0.0);
    }
    let ln_j = j.ln();
    let logs: Vec<f64> = (0..terms as u64)
        .map(|n| n as f64 * ln_j - ln_moment_rho(n, p))
        .collect();
    Ok(log_sum_exp(&logs))
}

/// Overlap `⟨J', γ|J, γ⟩` at equal angles from the Bessel form
/// `I_μ(2(JJ'μ²)^{1/4}) / √(I_μ(2√(Jμ)) I_μ(2√(J'μ)))`.
pub fn overlap_closed_form(j1: f64, j2: f64, p: &SpectrumParams) -> Result<f64> {
    check_action(j1)?;
    check_action(j2)?;
    if j1 == 0.0 || j2 == 0.0 {
        // only the vacuum component survives
        let other = if j1 == 0.0 { j2 } else { j1 };
        return Ok((-0.5 * ln_normalization_sq(other, p)?).exp());
    }
    let mu = p.mu();
    let cross = 2.0 * (j1 * j2 * mu * mu).powf(0.25);
    let a = 2.0 * (j1 * mu).sqrt();
    let b = 2.0 * (j2 * mu).sqrt();
    let ln = ln_bessel_i(mu, cross)? - 0.5 * (ln_bessel_i(mu, a)? + ln_bessel_i(mu, b)?);
    Ok(ln.exp())
}

fn check_action(j: f64) -> Result<()> {
    if !(j >= 0.0) || !j.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "action J must be finite and >= 0, got {j}"
        )));
    }
    Ok(())
}

impl CoherentState {
    /// Builds `|J, γ⟩`.
    ///
    /// The weights are the normalized terms of the ascending series of
    /// `I_μ(2√(Jμ))`, generated from the term ratio
    /// `r_n = |c_{n+1}|²/|c_n|² = Jμ/((n+1)(n+1+μ))` outwards from the largest
    /// term. Components are kept until the omitted tail of
    /// `Σ |c_n|² (1 + e_n)` is below `tail_tol` times the largest weight, which
    /// bounds both the missing probability and the missing energy. Past the
    /// maximum the tail terms shrink by a decreasing factor, so the tail is
    /// bounded by a geometric series.
    pub fn build(j: f64, gamma: f64, params: SpectrumParams, tail_tol: f64) -> Result<Self> {
        check_action(j)?;
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be finite, got {gamma}"
            )));
        }
        if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
            return Err(Error::InvalidParameter(format!(
                "tail_tol must lie in (0, 1e-6], got {tail_tol}"
            )));
        }
        if j == 0.0 {
            return Ok(Self {
                j,
                gamma,
                params,
                ln_weights: vec![0.0],
                ln_norm_sq: 0.0,
                tail_tol,
            });
        }

        let mu = params.mu();
        let jmu = j * mu;
        let series = BesselISeries::sum(mu, 2.0 * jmu.sqrt(), &AccuracyPolicy::DEFAULT)?;
        let ln_norm_sq =
            ln_gamma_pos(1.0 + mu) - 0.5 * mu * jmu.ln() + series.ln_peak_term + series.ln_sum;

        let peak = series.peak as usize;
        if peak >= MAX_COMPONENTS {
            return Err(Error::Degenerate(format!(
                "weight maximum for J = {j}, mu = {mu} lies beyond {MAX_COMPONENTS} terms"
            )));
        }
        let ratio = |n: usize| {
            let n = n as f64;
            jmu / ((n + 1.0) * (n + 1.0 + mu))
        };

        let mut ln_weights = vec![0.0; peak + 1];
        ln_weights[peak] = -series.ln_sum;
        for n in (0..peak).rev() {
            ln_weights[n] = ln_weights[n + 1] - ratio(n).ln();
        }

        let ln_max = ln_weights[peak];
        let ln_tol = tail_tol.ln();
        let with_energy = |n: usize| 1.0 + energy_level(n as u64, &params);
        let mut n = peak;
        loop {
            let next = n + 1;
            let ln_next = ln_weights[n] + ratio(n).ln();
            let shrink = ratio(next) * with_energy(next + 1) / with_energy(next);
            if shrink < 1.0 {
                let ln_tail = ln_next + with_energy(next).ln() - (1.0 - shrink).ln();
                if ln_tail < ln_tol + ln_max {
                    break;
                }
            }
            if next >= MAX_COMPONENTS {
                return Err(Error::Degenerate(format!(
                    "tail mass for J = {j}, mu = {mu} not bounded within {MAX_COMPONENTS} terms"
                )));
            }
            ln_weights.push(ln_next);
            n = next;
        }

        Ok(Self {
            j,
            gamma,
            params,
            ln_weights,
            ln_norm_sq,
            tail_tol,
        })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn params(&self) -> &SpectrumParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.ln_weights.len() - 1
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub fn ln_weights(&self) -> &[f64] {
        &self.ln_weights
    }

    /// `ln N(J)²`.
    pub fn ln_norm_sq(&self) -> f64 {
        self.ln_norm_sq
    }

    /// `|c_n|²`, zero past the truncation index.
    pub fn weight(&self, n: usize) -> f64 {
        self.ln_weights.get(n).map_or(0.0, |lw| lw.exp())
    }

    pub fn weights(&self) -> Vec<f64> {
        self.ln_weights.iter().map(|lw| lw.exp()).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.ln_weights.iter().map(|lw| lw.exp()).sum()
    }

    /// Complex amplitude `|c_n| e^{-iγ e_n}`.
    pub fn amplitude(&self, n: usize) -> Complex64 {
        let modulus = self.weight(n).sqrt();
        let turns = phase_turns(n as u64, self.params.mu(), self.gamma_in_turn_units());
        Complex64::from_polar(modulus, -TAU * turns)
    }

    /// `γ e_n = 2π (μn + n²) · γ/(2πμ)`; returns the factor multiplying
    /// `μn + n²`.
    fn gamma_in_turn_units(&self) -> f64 {
        self.gamma / (TAU * self.params.mu())
    }

    /// `⟨n⟩ = √(Jμ) I_{μ+1}(2√(Jμ)) / I_μ(2√(Jμ))`.
    pub fn mean_n(&self) -> Result<f64> {
        if self.j == 0.0 {
            return Ok(0.0);
        }
        let z = (self.j * self.params.mu()).sqrt();
        Ok(z * bessel_i_ratio(self.params.mu(), 2.0 * z)?)
    }

    /// Mandel `Q = √(Jμ) [I_{μ+2}/I_{μ+1} - I_{μ+1}/I_μ]` at `2√(Jμ)`.
    pub fn mandel_q(&self) -> Result<f64> {
        if self.j == 0.0 {
            return Err(Error::UndefinedAtZero);
        }
        let mu = self.params.mu();
        let z = (self.j * mu).sqrt();
        let x = 2.0 * z;
        Ok(z * (bessel_i_ratio(mu + 1.0, x)? - bessel_i_ratio(mu, x)?))
    }

    /// `(Σ w_n, Σ n w_n / Σ w_n, Σ (n - ⟨n⟩)² w_n / Σ w_n)` over the stored
    /// components.
    fn series_moments(&self) -> (f64, f64, f64) {
        let w = self.weights();
        let total: f64 = w.iter().sum();
        let mean = w.iter().enumerate().map(|(n, w)| n as f64 * w).sum::<f64>() / total;
        let var = w
            .iter()
            .enumerate()
            .map(|(n, w)| (n as f64 - mean).powi(2) * w)
            .sum::<f64>()
            / total;
        (total, mean, var)
    }

    /// `⟨n⟩` from the truncated sum of `n |c_n|²`.
    pub fn mean_n_series(&self) -> f64 {
        self.series_moments().1
    }

    /// `(⟨n²⟩ - ⟨n⟩²)` from the truncated sums.
    pub fn variance_series(&self) -> f64 {
        self.series_moments().2
    }

    /// `Q = (Δn)²/⟨n⟩ - 1` from the truncated sums.
    pub fn mandel_q_series(&self) -> Result<f64> {
        if self.j == 0.0 {
            return Err(Error::UndefinedAtZero);
        }
        let (_, mean, var) = self.series_moments();
        Ok(var / mean - 1.0)
    }

    /// `⟨J,γ|H|J,γ⟩` in units of `ħα`; equals `J` up to truncation.
    pub fn mean_energy(&self) -> f64 {
        self.ln_weights
            .iter()
            .enumerate()
            .map(|(n, lw)| lw.exp() * energy_level(n as u64, &self.params))
            .sum()
    }

    /// `e^{-iHt}|J,γ⟩ = |J, γ + αt⟩`.
    pub fn evolve(&self, t: f64) -> Self {
        let mut next = self.clone();
        next.gamma += self.params.alpha() * t;
        next
    }

    /// `⟨self|other⟩ = Σ |c_n||c'_n| e^{i(γ - γ')e_n}`.
    pub fn overlap(&self, other: &CoherentState) -> Result<Complex64> {
        if self.params != other.params {
            return Err(Error::ParameterMismatch);
        }
        let mu = self.params.mu();
        let t = (self.gamma - other.gamma) / (TAU * mu);
        let sum = self
            .ln_weights
            .iter()
            .zip(&other.ln_weights)
            .enumerate()
            .map(|(n, (a, b))| {
                Complex64::from_polar((0.5 * (a + b)).exp(), TAU * phase_turns(n as u64, mu, t))
            })
            .sum();
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(mu: f64) -> SpectrumParams {
        SpectrumParams::with_mu(mu).unwrap()
    }

    fn state(j: f64, mu: f64) -> CoherentState {
        CoherentState::build(j, 0.0, params(mu), DEFAULT_TAIL_TOL).unwrap()
    }

    #[test]
    fn vacuum_state() {
        let s = state(0.0, 28.0);
        assert_eq!(s.n_max(), 0);
        assert_eq!(s.weight(0), 1.0);
        assert_eq!(s.weight(5), 0.0);
        assert_eq!(s.mean_n().unwrap(), 0.0);
        assert_eq!(s.mean_energy(), 0.0);
        assert_eq!(s.mandel_q(), Err(Error::UndefinedAtZero));
        assert_eq!(ln_normalization_sq(0.0, &params(3.0)).unwrap(), 0.0);
    }

    #[test]
    fn build_rejects_bad_input() {
        let p = params(2.0);
        assert!(CoherentState::build(-1.0, 0.0, p, 1e-14).is_err());
        assert!(CoherentState::build(1.0, f64::NAN, p, 1e-14).is_err());
        assert!(CoherentState::build(1.0, 0.0, p, 1e-3).is_err());
        assert!(CoherentState::build(1.0, 0.0, p, 0.0).is_err());
    }

    #[test]
    fn weight_ratio_matches_recurrence() {
        let s = state(10.0, 28.0);
        let jmu = 280.0;
        for n in 0..s.n_max() {
            let r = s.weight(n + 1) / s.weight(n);
            let expect = jmu / ((n as f64 + 1.0) * (n as f64 + 29.0));
            assert!((r / expect - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn truncation_tail_is_bounded() {
        let s = state(10.0, 80.0);
        let w = s.weights();
        let max = w.iter().cloned().fold(0.0, f64::max);
        let next = w[s.n_max()] * 800.0 / ((s.n_max() as f64 + 1.0) * (s.n_max() as f64 + 81.0));
        assert!(next < DEFAULT_TAIL_TOL * max);
        assert!((s.total_weight() - 1.0).abs() < 1e-10);
        let mean = s.mean_n().unwrap();
        assert!((s.n_max() as f64) < 10.0 * mean.max(1.0));
    }

    #[test]
    fn weights_are_unimodal() {
        for &(j, mu) in &[(10.0, 28.0), (10.0, 80.0), (3.7, 1.0), (50.0, 0.5)] {
            let w = state(j, mu).weights();
            let peak = w
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            assert!(w[..=peak].windows(2).all(|p| p[0] <= p[1]));
            assert!(w[peak..].windows(2).all(|p| p[0] >= p[1]));
        }
    }

    #[test]
    fn self_overlap_is_one_and_hermitian() {
        let p = params(2.0);
        let a = CoherentState::build(1.0, 0.3, p, 1e-14).unwrap();
        let b = CoherentState::build(4.0, -1.1, p, 1e-14).unwrap();
        let aa = a.overlap(&a).unwrap();
        assert!((aa.re - 1.0).abs() < 1e-12 && aa.im.abs() < 1e-15);
        let ab = a.overlap(&b).unwrap();
        let ba = b.overlap(&a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-14);
    }

    #[test]
    fn overlap_parameter_mismatch() {
        let a = state(1.0, 2.0);
        let b = state(1.0, 3.0);
        assert_eq!(a.overlap(&b), Err(Error::ParameterMismatch));
    }

    #[test]
    fn evolve_shifts_gamma_only() {
        let p = SpectrumParams::new(2.0, 28.0).unwrap();
        let s = CoherentState::build(10.0, 0.5, p, 1e-14).unwrap();
        assert_eq!(s.evolve(0.0), s);
        let e = s.evolve(1.25);
        assert_eq!(e.gamma(), 0.5 + 2.5);
        assert_eq!(e.ln_weights(), s.ln_weights());
        let twice = s.evolve(0.625).evolve(0.625);
        assert!((twice.gamma() - e.gamma()).abs() < 1e-15);
    }

    #[test]
    fn amplitude_modulus_and_phase() {
        let p = params(2.0);
        let s = CoherentState::build(1.0, 0.7, p, 1e-14).unwrap();
        for n in 0..5 {
            let a = s.amplitude(n);
            assert!((a.norm_sqr() - s.weight(n)).abs() < 1e-15);
            let expect =
                Complex64::from_polar(s.weight(n).sqrt(), -0.7 * energy_level(n as u64, &p));
            assert!((a - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn mandel_small_j_limit() {
        // two-term expansion of the moment sums: Q ≈ -Jμ/((μ+1)(μ+2))
        for &mu in &[1.0, 2.0, 28.0] {
            let j = 1e-6;
            let q = state(j, mu).mandel_q().unwrap();
            let expect = -j * mu / ((mu + 1.0) * (mu + 2.0));
            assert!(q < 0.0);
            assert!(
                (q / expect - 1.0).abs() < 1e-4,
                "mu = {mu}: {q} vs {expect}"
            );
        }
    }
}
