//! Natural cubic spline through ordered samples.
//!
//! The interpolant is C² on the sample interval, so its first derivative is
//! continuous and can drive an ODE right-hand side directly.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots (zero at both ends).
    m: Vec<f64>,
}

impl CubicSpline {
    pub const MIN_SAMPLES: usize = 4;

    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::invalid(
                "tabulated samples",
                format!("{} times but {} values", xs.len(), ys.len()),
            ));
        }
        if xs.len() < Self::MIN_SAMPLES {
            return Err(Error::invalid(
                "tabulated samples",
                format!("need at least {} samples, got {}", Self::MIN_SAMPLES, xs.len()),
            ));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::invalid("tabulated samples", "non-finite value"));
        }
        if let Some(w) = xs.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::invalid(
                "tabulated samples",
                format!("times must be strictly increasing ({} then {})", w[0], w[1]),
            ));
        }
        let m = natural_second_derivatives(&xs, &ys);
        Ok(Self { xs, ys, m })
    }

    pub fn knots(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    pub fn start(&self) -> f64 {
        self.xs[0]
    }

    pub fn end(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    /// Smallest spacing between consecutive knots.
    pub fn min_spacing(&self) -> f64 {
        self.xs
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    fn check(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < self.start() || x > self.end() {
            return Err(Error::OutOfRange {
                t: x,
                start: self.start(),
                end: self.end(),
            });
        }
        Ok(())
    }

    fn segment(&self, x: f64) -> usize {
        // partition_point gives the first knot > x; clamp to a valid segment
        let i = self.xs.partition_point(|&k| k <= x);
        i.clamp(1, self.xs.len() - 1) - 1
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let i = self.segment(x);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        Ok(a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let i = self.segment(x);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        Ok((self.ys[i + 1] - self.ys[i]) / h
            + ((1.0 - 3.0 * a * a) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]) * h / 6.0)
    }
}

/// Solves the tridiagonal system for knot second derivatives with natural
/// end conditions (Thomas algorithm).
fn natural_second_derivatives(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    let interior = n - 2;
    let mut diag = vec![0.0; interior];
    let mut upper = vec![0.0; interior];
    let mut rhs = vec![0.0; interior];
    for k in 0..interior {
        let i = k + 1;
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        diag[k] = 2.0 * (h0 + h1);
        upper[k] = h1;
        rhs[k] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    // forward sweep; the sub-diagonal entry for row k is h0 of that row
    for k in 1..interior {
        let lower = xs[k + 1] - xs[k];
        let w = lower / diag[k - 1];
        diag[k] -= w * upper[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    let mut sol = vec![0.0; interior];
    sol[interior - 1] = rhs[interior - 1] / diag[interior - 1];
    for k in (0..interior - 1).rev() {
        sol[k] = (rhs[k] - upper[k] * sol[k + 1]) / diag[k];
    }
    m[1..n - 1].copy_from_slice(&sol);
    m
}
