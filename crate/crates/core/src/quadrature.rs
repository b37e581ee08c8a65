//! Simpson quadrature: a composite rule on uniform samples and a recursive
//! adaptive rule used as the independent oracle.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 50;

/// Composite Simpson's 1/3 rule over uniformly spaced samples.
///
/// `values.len()` must be odd and at least 3.
pub fn composite_simpson(values: &[f64], h: f64) -> Result<f64> {
    let n = values.len();
    if n < 3 {
        return Err(Error::domain(
            "composite_simpson",
            format!("need at least 3 samples, got {n}"),
        ));
    }
    if n.is_multiple_of(2) {
        return Err(Error::domain(
            "composite_simpson",
            format!("need an odd sample count, got {n}"),
        ));
    }
    let interior: f64 = values[1..n - 1]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    Ok(h / 3.0 * (values[0] + interior + values[n - 1]))
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// Refinement stops on a panel once the Richardson error estimate falls below
/// its share of `rel_tol * |I|` (with a tiny absolute floor so integrals that
/// vanish terminate).
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(rel_tol > 0.0) {
        return Err(Error::domain("adaptive_simpson", "rel_tol must be positive"));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

    // coarse magnitude estimate sets the absolute target
    let scale = {
        let k = 64;
        let h = (b - a) / k as f64;
        let mut s = 0.0;
        for i in 0..=k {
            s += f(a + h * i as f64)?.abs();
        }
        s * h.abs()
    };
    let tol = (rel_tol * scale).max(1e-300);
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}
