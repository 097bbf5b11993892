//! Least-squares fit of `F(c) = (K₀/b)·b^{1/c^a}` to scan output.
//!
//! In logs, `log F - log K₀ = log b·(c^-a - 1)`, linear in `log b` for a
//! fixed `a`, so only `a` needs a one-dimensional search.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    pub a: f64,
    pub b: f64,
    /// Residual sum of squares in log space.
    pub rss: f64,
    pub points: usize,
    /// `a·log b`; as `a → 0` the model tends to `K₀·c^-exponent`.
    pub exponent: f64,
    /// The optimum sits on an end of the searched range of `a`.
    pub at_boundary: bool,
}

/// Searched range of `a`.
pub const A_RANGE: (f64, f64) = (0.01, 4.0);

/// Best `log b` and residual for a fixed `a`.
fn fit_for_a(points: &[(f64, f64)], k0: f64, a: f64) -> (f64, f64) {
    let lk = k0.ln();
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(c, y) in points {
        let x = c.powf(-a) - 1.0;
        sxy += x * (y.ln() - lk);
        sxx += x * x;
    }
    let lb = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let rss = points
        .iter()
        .map(|&(c, y)| (y.ln() - lk - lb * (c.powf(-a) - 1.0)).powi(2))
        .sum();
    (lb, rss)
}

/// Fits `(c, F)` pairs with `0 < c ≤ 1`, `F > 0`.
pub fn fit_decay(points: &[(f64, f64)], k0: f64) -> Result<DecayFit> {
    let points: Vec<(f64, f64)> = points.iter().copied().filter(|&(c, _)| c > 0.0 && c <= 1.0).collect();
    if points.len() < 2 {
        return Err(Error::InvalidInput("need at least two points with 0 < c ≤ 1".into()));
    }
    if points.iter().any(|&(_, y)| !(y > 0.0)) {
        return Err(Error::InvalidInput("values must be positive".into()));
    }
    // coarse grid, then golden section around the best cell
    let grid: Vec<f64> = (1..=400).map(|i| i as f64 * 0.01).filter(|a| (A_RANGE.0..=A_RANGE.1).contains(a)).collect();
    let best = grid
        .iter()
        .copied()
        .min_by(|&p, &q| fit_for_a(&points, k0, p).1.total_cmp(&fit_for_a(&points, k0, q).1))
        .unwrap_or(1.0);
    let (mut lo, mut hi) = ((best - 0.01).max(A_RANGE.0), (best + 0.01).min(A_RANGE.1));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if fit_for_a(&points, k0, m1).1 < fit_for_a(&points, k0, m2).1 {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let a = (lo + hi) / 2.0;
    let (lb, rss) = fit_for_a(&points, k0, a);
    Ok(DecayFit {
        a,
        b: lb.exp(),
        rss,
        points: points.len(),
        exponent: a * lb,
        at_boundary: a - A_RANGE.0 < 1e-3 || A_RANGE.1 - a < 1e-3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_synthetic_parameters() {
        let (k0, a, b): (f64, f64, f64) = (2.685452, 0.7, 1.3);
        let pts: Vec<(f64, f64)> = (1..=20)
            .map(|i| {
                let c = i as f64 / 20.0;
                (c, k0 / b * b.powf(c.powf(-a)))
            })
            .collect();
        let fit = fit_decay(&pts, k0).unwrap();
        assert!((fit.a - a).abs() < 1e-6 && (fit.b - b).abs() < 1e-6, "{fit:?}");
        assert!(!fit.at_boundary);
    }
}
