//! Caller-supplied functions as (grid, values) samples with linear
//! interpolation.
//!
//! The lemma verifiers take their test functions in this form so the
//! interface stays language-agnostic; grid density is the caller's
//! responsibility and is echoed back in reports.

use crate::error::{Error, Result};
use crate::sum::KahanSum;

#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Input(format!(
                "grid/value length mismatch: {} vs {}",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 2 {
            return Err(Error::Input("need at least 2 samples".to_string()));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Input("grid must be strictly ascending".to_string()));
        }
        if grid.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Input("samples must be finite".to_string()));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` on `n+1` evenly spaced points of [a, b].
    pub fn from_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<Self> {
        let grid: Vec<f64> = (0..=n)
            .map(|i| a + (b - a) * i as f64 / n as f64)
            .collect();
        let values = grid.iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    /// Samples `f` on `{0} ∪ geomspace(lo, hi, n)`; handy for slowly varying
    /// functions over wide ranges.
    pub fn from_fn_log(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<Self> {
        assert!(lo > 0.0 && hi > lo);
        let ratio = (hi / lo).ln() / (n as f64 - 1.0);
        let mut grid = vec![0.0];
        grid.extend((0..n).map(|i| lo * (ratio * i as f64).exp()));
        grid.dedup_by(|a, b| a == b);
        let values = grid.iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.grid[0], *self.grid.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest value of f(t)/log²(t+2); the growth constant used by tail
    /// bounds.
    pub fn log2_growth_constant(&self) -> f64 {
        self.grid
            .iter()
            .zip(&self.values)
            .map(|(&t, &v)| v / (t + 2.0).ln().powi(2))
            .fold(0.0, f64::max)
    }

    /// Linear interpolation; clamps to the boundary values outside the grid.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.grid.len();
        if t <= self.grid[0] {
            return self.values[0];
        }
        if t >= self.grid[n - 1] {
            return self.values[n - 1];
        }
        let i = self.grid.partition_point(|&g| g <= t);
        let (g0, g1) = (self.grid[i - 1], self.grid[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        v0 + (v1 - v0) * (t - g0) / (g1 - g0)
    }

    /// Exact ∫ₐᵇ of the interpolant (trapezoids, partial cells included).
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if a < lo - 1e-12 || b > hi + 1e-12 || a > b {
            return Err(Error::Range(format!(
                "integral range [{a}, {b}] outside sampled domain [{lo}, {hi}]"
            )));
        }
        let mut acc = KahanSum::new();
        for (y0, y1, f0, f1) in self.pieces_in(a, b) {
            acc.add(0.5 * (f0 + f1) * (y1 - y0));
        }
        Ok(acc.value())
    }

    /// Linear pieces of the interpolant restricted to [a, b], as
    /// (y0, y1, f(y0), f(y1)) with y ascending.
    pub fn pieces_in(&self, a: f64, b: f64) -> Vec<(f64, f64, f64, f64)> {
        let mut out = Vec::new();
        if a >= b {
            return out;
        }
        let start = self.grid.partition_point(|&g| g <= a);
        let mut y0 = a;
        let mut f0 = self.eval(a);
        for i in start..self.grid.len() {
            let g = self.grid[i];
            if g >= b {
                break;
            }
            out.push((y0, g, f0, self.values[i]));
            y0 = g;
            f0 = self.values[i];
        }
        out.push((y0, b, f0, self.eval(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(SampledFunction::new(vec![0.0, 0.0, 1.0], vec![1.0; 3]).is_err());
        assert!(SampledFunction::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(SampledFunction::new(vec![0.0], vec![1.0]).is_err());
        assert!(SampledFunction::new(vec![0.0, 1.0], vec![f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn interpolates_and_integrates_linear_functions_exactly() {
        let f = SampledFunction::from_fn(|t| 3.0 * t + 1.0, 0.0, 10.0, 13).unwrap();
        assert!((f.eval(2.7) - 9.1).abs() < 1e-12);
        // ∫₁^4 (3t+1) dt = 1.5(16-1) + 3 = 25.5
        assert!((f.integral(1.0, 4.0).unwrap() - 25.5).abs() < 1e-12);
    }

    #[test]
    fn partial_cells_handled() {
        let f = SampledFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap();
        // triangle area over [0.5, 1.5]: 2 * (1/2)(0.5+1)(0.5)·... = 0.75
        assert!((f.integral(0.5, 1.5).unwrap() - 0.75).abs() < 1e-12);
    }
}
