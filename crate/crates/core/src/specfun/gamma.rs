use crate::error::{Error, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Stirling series needs `x >= STIRLING_MIN`; smaller arguments are shifted up.
const STIRLING_MIN: f64 = 10.0;

// B_{2k} / (2k (2k - 1)), k = 1..8
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

/// `ln Γ(x)` without argument checks. Caller guarantees `x > 0`.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x.fract() == 0.0 && x <= 20.0 {
        // exact factorial for small integers
        let mut f = 1.0f64;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f.ln();
    }
    if x >= STIRLING_MIN {
        return stirling(x);
    }
    let mut shifted = x;
    let mut prod = 1.0f64;
    while shifted < STIRLING_MIN {
        prod *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) - prod.ln()
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING_COEFFS {
        series += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn known_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
        assert!(rel(ln_gamma(0.5).unwrap(), ln_sqrt_pi) < 1e-14);
        assert!(rel(ln_gamma(11.0).unwrap(), 3_628_800f64.ln()) < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn recurrence_across_stirling_boundary() {
        // ln Γ(x + 1) = ln Γ(x) + ln x
        for i in 1..400 {
            let x = 0.037 * i as f64 + 0.01;
            let lhs = ln_gamma_pos(x + 1.0);
            let rhs = ln_gamma_pos(x) + x.ln();
            assert!((lhs - rhs).abs() < 1e-13 * lhs.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn integer_arguments_match_factorials() {
        assert_eq!(ln_gamma_pos(2.0), 0.0);
        let mut f = 1.0f64;
        for n in 2..=25u32 {
            let x = f64::from(n);
            assert!(
                rel(ln_gamma_pos(x + 1.0), {
                    f *= x;
                    f.ln()
                }) < 1e-14
            );
        }
    }

    #[test]
    fn large_argument_is_finite() {
        let v = ln_gamma(1e6).unwrap();
        // Stirling leading terms
        let approx = (1e6 - 0.5) * 1e6f64.ln() - 1e6 + HALF_LN_TWO_PI;
        assert!(rel(v, approx) < 1e-12);
    }
}
