//! Revival dynamics: the autocorrelation `A(t)`, its regrouping into packet
//! fractions `P_Δ(t)` by residue of `n` mod `q`, and the split of `|A(t)|²`
//! into diagonal and interference terms.
//!
//! Times are dimensionless, in units of the revival time `t_rev = 2πμ/α`, so
//! the phase of component `n` is `2π(μn + n²)t`. Nothing here requires an
//! integer `μ` except [`phase_group_check`]; the full-revival and mirror
//! symmetries of `|A|²` only hold when `μ` is an integer.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::gkstate::CoherentState;
use crate::phase::{circular_distance, phase_turns};
use crate::sampling::map_points;

#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    Complex(Vec<Complex64>),
    Real(Vec<f64>),
}

impl Samples {
    pub fn len(&self) -> usize {
        match self {
            Samples::Complex(v) => v.len(),
            Samples::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Samples of one observable over a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    label: String,
    t_grid: Vec<f64>,
    values: Samples,
}

impl TimeSeries {
    pub fn new(label: impl Into<String>, t_grid: Vec<f64>, values: Samples) -> Result<Self> {
        if t_grid.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} points but {} values were given",
                t_grid.len(),
                values.len()
            )));
        }
        if !t_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "time grid must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            label: label.into(),
            t_grid,
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn values(&self) -> &Samples {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.t_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_grid.is_empty()
    }

    pub fn real(&self) -> Option<&[f64]> {
        match &self.values {
            Samples::Real(v) => Some(v),
            Samples::Complex(_) => None,
        }
    }

    pub fn complex(&self) -> Option<&[Complex64]> {
        match &self.values {
            Samples::Complex(v) => Some(v),
            Samples::Real(_) => None,
        }
    }
}

#[inline]
fn rotor(n: usize, mu: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -TAU * phase_turns(n as u64, mu, t))
}

/// `A(t) = Σ |c_n|² e^{-iφ_n(t)}`.
pub fn autocorrelation(s: &CoherentState, t: f64) -> Complex64 {
    let mu = s.params().mu();
    s.ln_weights()
        .iter()
        .enumerate()
        .map(|(n, lw)| lw.exp() * rotor(n, mu, t))
        .sum()
}

/// Complex `A(t)` on the grid.
pub fn autocorrelation_samples(s: &CoherentState, t_grid: &[f64]) -> Result<TimeSeries> {
    let values = map_points(t_grid, |&t| autocorrelation(s, t));
    TimeSeries::new("A", t_grid.to_vec(), Samples::Complex(values))
}

/// `|A(t)|²` on the grid.
pub fn autocorrelation_series(s: &CoherentState, t_grid: &[f64]) -> Result<TimeSeries> {
    let values = map_points(t_grid, |&t| autocorrelation(s, t).norm_sqr());
    TimeSeries::new("abs2_A", t_grid.to_vec(), Samples::Real(values))
}

fn check_order(q: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "revival order q must be >= 2, got {q}"
        )));
    }
    Ok(())
}

fn check_residue(q: usize, delta: usize) -> Result<()> {
    check_order(q)?;
    if delta >= q {
        return Err(Error::InvalidParameter(format!(
            "residue delta must lie in [0, {q}), got {delta}"
        )));
    }
    Ok(())
}

/// All `q` packet fractions `P_Δ(t)`, `Δ = 0..q`, in one pass.
pub fn packet_fractions(s: &CoherentState, q: usize, t: f64) -> Result<Vec<Complex64>> {
    check_order(q)?;
    let mu = s.params().mu();
    let mut out = vec![Complex64::new(0.0, 0.0); q];
    for (n, lw) in s.ln_weights().iter().enumerate() {
        out[n % q] += lw.exp() * rotor(n, mu, t);
    }
    Ok(out)
}

/// `P_Δ(t) = Σ_k |c_{kq+Δ}|² e^{-iφ_{kq+Δ}(t)}`.
pub fn survival_fraction(s: &CoherentState, q: usize, delta: usize, t: f64) -> Result<Complex64> {
    check_residue(q, delta)?;
    let mu = s.params().mu();
    Ok(s.ln_weights()
        .iter()
        .enumerate()
        .skip(delta)
        .step_by(q)
        .map(|(n, lw)| lw.exp() * rotor(n, mu, t))
        .sum())
}

/// `Σ_k |c_{kq+Δ}|²`, the modulus of `P_Δ` at `t = 0` and at `t = 1/q`.
pub fn residue_weight(s: &CoherentState, q: usize, delta: usize) -> Result<f64> {
    check_residue(q, delta)?;
    Ok(s.ln_weights()
        .iter()
        .skip(delta)
        .step_by(q)
        .map(|lw| lw.exp())
        .sum())
}

/// `|P_Δ(t)|²` on the grid.
pub fn survival_fraction_series(
    s: &CoherentState,
    q: usize,
    delta: usize,
    t_grid: &[f64],
) -> Result<TimeSeries> {
    check_residue(q, delta)?;
    let values = map_points(t_grid, |&t| {
        survival_fraction(s, q, delta, t)
            .expect("residue validated")
            .norm_sqr()
    });
    TimeSeries::new(
        format!("abs2_P{delta}"),
        t_grid.to_vec(),
        Samples::Real(values),
    )
}

/// `Σ_Δ |P_Δ|²`.
pub fn diagonal_from_fractions(fractions: &[Complex64]) -> f64 {
    fractions.iter().map(|p| p.norm_sqr()).sum()
}

/// `Σ_Δ Σ_{Γ≠Δ} P_Δ conj(P_Γ)`, evaluated as the literal double sum. The
/// imaginary part cancels pairwise and is returned for inspection.
pub fn interference_from_fractions(fractions: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (d, pd) in fractions.iter().enumerate() {
        for (g, pg) in fractions.iter().enumerate() {
            if d != g {
                acc += pd * pg.conj();
            }
        }
    }
    acc
}

pub fn diagonal_term(s: &CoherentState, q: usize, t: f64) -> Result<f64> {
    Ok(diagonal_from_fractions(&packet_fractions(s, q, t)?))
}

pub fn interference_term(s: &CoherentState, q: usize, t: f64) -> Result<f64> {
    Ok(interference_from_fractions(&packet_fractions(s, q, t)?).re)
}

/// The `q` packet fractions sampled over a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalDecomposition {
    q: usize,
    t_grid: Vec<f64>,
    /// `rows[i][Δ] = P_Δ(t_i)`
    rows: Vec<Vec<Complex64>>,
}

impl FractionalDecomposition {
    pub fn compute(s: &CoherentState, q: usize, t_grid: &[f64]) -> Result<Self> {
        check_order(q)?;
        if !t_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "time grid must be strictly increasing".into(),
            ));
        }
        let rows = map_points(t_grid, |&t| {
            packet_fractions(s, q, t).expect("order validated")
        });
        Ok(Self {
            q,
            t_grid: t_grid.to_vec(),
            rows,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn at(&self, index: usize) -> &[Complex64] {
        &self.rows[index]
    }

    /// `P_Δ` over the grid.
    pub fn fraction(&self, delta: usize) -> Result<TimeSeries> {
        check_residue(self.q, delta)?;
        let v = self.rows.iter().map(|r| r[delta]).collect();
        TimeSeries::new(
            format!("P{delta}"),
            self.t_grid.clone(),
            Samples::Complex(v),
        )
    }

    /// `Σ_Δ P_Δ`, which reproduces `A(t)`.
    pub fn total(&self) -> Vec<Complex64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn diagonal(&self) -> Result<TimeSeries> {
        let v = self
            .rows
            .iter()
            .map(|r| diagonal_from_fractions(r))
            .collect();
        TimeSeries::new("diagonal", self.t_grid.clone(), Samples::Real(v))
    }

    pub fn interference(&self) -> Result<TimeSeries> {
        let v = self
            .rows
            .iter()
            .map(|r| interference_from_fractions(r).re)
            .collect();
        TimeSeries::new("interference", self.t_grid.clone(), Samples::Real(v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGroup {
    pub delta: usize,
    /// `2π(μΔ + Δ²)/q mod 2π`
    pub expected: f64,
    /// `φ_Δ(1/q) mod 2π`
    pub observed: f64,
    /// largest circular distance of `φ_{kq+Δ}(1/q)` from `observed`
    pub spread: f64,
    /// largest circular distance of `φ_{kq+Δ}(1/q)` from `expected`
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGroupReport {
    pub q: usize,
    pub mu: u64,
    pub k_max: u64,
    pub groups: Vec<PhaseGroup>,
}

impl PhaseGroupReport {
    pub fn max_deviation(&self) -> f64 {
        self.groups
            .iter()
            .map(|g| g.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn max_spread(&self) -> f64 {
        self.groups.iter().map(|g| g.spread).fold(0.0, f64::max)
    }
}

/// Checks that at `t = 1/q` the phases `φ_{kq+Δ}` collapse onto `q` constant
/// values `2π(μΔ + Δ²)/q`, for `k = 0..=k_max`.
pub fn phase_group_check(q: usize, mu: f64, k_max: u64) -> Result<PhaseGroupReport> {
    check_order(q)?;
    if !(mu > 0.0) || mu.fract() != 0.0 || !mu.is_finite() {
        return Err(Error::NonIntegerMu(mu));
    }
    if k_max < 1 {
        return Err(Error::InvalidParameter("k_max must be >= 1".into()));
    }
    let mu_int = mu as u64;
    let qq = q as u64;
    let t = 1.0 / q as f64;
    let groups = (0..qq)
        .map(|delta| {
            let residue = (mu_int * delta + delta * delta) % qq;
            let expected = TAU * residue as f64 / q as f64;
            let phases: Vec<f64> = (0..=k_max)
                .map(|k| TAU * phase_turns(k * qq + delta, mu, t))
                .collect();
            let observed = phases[0];
            let spread = phases
                .iter()
                .map(|&p| circular_distance(p, observed))
                .fold(0.0, f64::max);
            let max_deviation = phases
                .iter()
                .map(|&p| circular_distance(p, expected))
                .fold(0.0, f64::max);
            PhaseGroup {
                delta: delta as usize,
                expected,
                observed,
                spread,
                max_deviation,
            }
        })
        .collect();
    Ok(PhaseGroupReport {
        q,
        mu: mu_int,
        k_max,
        groups,
    })
}
