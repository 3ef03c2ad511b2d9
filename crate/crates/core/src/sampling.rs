//! Point-wise evaluation over grids.
//!
//! With the `parallel` feature (on by default) [`map_points`] fans the work
//! out over the rayon pool; without it the sequential path is used. Both
//! preserve input order, and every sample is computed independently, so the
//! two paths return bit-identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Evaluates `f` at every point, in order.
pub fn map_points<I, T, F>(points: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_points_parallel(points, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_points_sequential(points, f)
    }
}

pub fn map_points_sequential<I, T, F>(points: &[I], f: F) -> Vec<T>
where
    F: Fn(&I) -> T,
{
    points.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_points_parallel<I, T, F>(points: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    points.par_iter().map(f).collect()
}

/// Fallible variant of [`map_points`]; returns the first error in grid order.
pub fn try_map_points<I, T, F>(points: &[I], f: F) -> Result<Vec<T>>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Result<T> + Sync + Send,
{
    map_points(points, f).into_iter().collect()
}

/// `points` equally spaced samples of `[0, t_max]`, both ends included.
pub fn uniform_grid(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!(
            "a grid needs at least 2 points, got {points}"
        )));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|i| t_max * i as f64 / last).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = uniform_grid(1.0, 2001).unwrap();
        assert_eq!(g.len(), 2001);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[2000], 1.0);
        assert_eq!(g[1000], 0.5);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(uniform_grid(1.0, 1).is_err());
        assert!(uniform_grid(0.0, 10).is_err());
    }

    #[test]
    fn ordering_is_preserved() {
        let pts: Vec<u32> = (0..10_000).collect();
        let out = map_points(&pts, |&p| p * 2);
        assert_eq!(out, map_points_sequential(&pts, |&p| p * 2));
    }

    #[test]
    fn first_error_wins() {
        let pts: Vec<i32> = (0..100).collect();
        let r = try_map_points(&pts, |&p| {
            if p >= 40 {
                Err(Error::Degenerate(p.to_string()))
            } else {
                Ok(p)
            }
        });
        assert_eq!(r, Err(Error::Degenerate("40".into())));
    }
}
