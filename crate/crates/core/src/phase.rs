//! Stationary-state phases `φ_n(t) = 2π(μn + n²)t`, with `t` in units of the
//! revival time.
//!
//! For `n` in the hundreds and `t` of order one the product `(μn + n²)t` is
//! large, and a naive `sin`/`cos` of it loses several digits. The reduction
//! here splits `μn + n²` into exactly representable pieces, multiplies each by
//! `t` with an error-free product, and keeps only fractional parts. With
//! integer `μ` and `t = 1` the result is exactly zero for every `n`.

use std::f64::consts::TAU;

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn frac_of_product(c: f64, t: f64) -> f64 {
    let (p, e) = two_prod(c, t);
    (p - p.floor()) + e
}

/// Fractional part of `(μn + n²)·t`, in `[0, 1)`.
pub fn phase_turns(n: u64, mu: f64, t: f64) -> f64 {
    let nf = n as f64;
    let (sq, sq_err) = two_prod(nf, nf);
    let (lin, lin_err) = two_prod(mu, nf);
    let total = frac_of_product(sq, t)
        + frac_of_product(sq_err, t)
        + frac_of_product(lin, t)
        + frac_of_product(lin_err, t);
    let r = total.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Unreduced phase `2π(μn + n²)t`.
pub fn phase(n: u64, t: f64, mu: f64) -> f64 {
    let nf = n as f64;
    TAU * (mu * nf + nf * nf) * t
}

/// `φ_n(t)` reduced to `[0, 2π)`.
pub fn reduced_phase(n: u64, t: f64, mu: f64) -> f64 {
    TAU * phase_turns(n, mu, t)
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
