//! Gazeau-Klauder coherent states for the nonlinear oscillator with the
//! quadratic spectrum `e_n = n(n + μ)/μ`, and the analysis of their revival
//! dynamics.
//!
//! * [`specfun`]: log-gamma and modified Bessel functions of real order.
//! * [`spectrum`]: energy ladder, moments `ρ_n`, classical and revival times.
//! * [`gkstate`]: state construction, normalization, `⟨n⟩`, Mandel `Q`,
//!   overlaps and time evolution.
//! * [`revival`]: autocorrelation, packet fractions, diagonal and
//!   interference terms, phase grouping at fractional revivals.
//! * [`measure`]: the resolution-of-unity measure and its moment check.
//! * [`cli`] and [`dataset`]: the command-line front end and its CSV format.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dataset;
pub mod error;
pub mod gkstate;
pub mod measure;
pub mod phase;
pub mod quad;
pub mod revival;
pub mod sampling;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
pub use gkstate::CoherentState;
pub use spectrum::SpectrumParams;
