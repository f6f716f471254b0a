//! Small numeric helpers shared by the oracles.

use crate::error::{Error, Result};

/// Damped Newton iteration on a scalar function returning `(f, f')`.
///
/// A step is halved until `|f|` decreases (at most 40 times); converges when
/// the step falls below `tol * (1 + |x|)`.
pub fn newton(
    mut fdf: impl FnMut(f64) -> (f64, f64),
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut x = x0;
    let (mut fx, mut dfx) = fdf(x);
    for _ in 0..max_iter {
        if fx == 0.0 {
            return Ok(x);
        }
        if dfx == 0.0 || !dfx.is_finite() {
            return Err(Error::NoConvergence(format!("zero derivative at x = {x}")));
        }
        let step = -fx / dfx;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let xn = x + lambda * step;
            let (fn_, dfn) = fdf(xn);
            if fn_.abs() <= fx.abs() || (lambda * step).abs() <= tol * (1.0 + x.abs()) {
                accepted = Some((xn, fn_, dfn));
                break;
            }
            lambda *= 0.5;
        }
        let Some((xn, fn_, dfn)) = accepted else {
            return Err(Error::NoConvergence(format!("line search stalled at x = {x}")));
        };
        let moved = (xn - x).abs();
        x = xn;
        fx = fn_;
        dfx = dfn;
        if moved <= tol * (1.0 + x.abs()) {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(format!(
        "no convergence after {max_iter} iterations (x = {x}, f = {fx:e})"
    )))
}

/// Neville-style Richardson extrapolation to `h -> 0`.
///
/// `values[i]` is the sample at `h0 / ratio^i`; the error is assumed to expand
/// in `h^powers[0], h^powers[1], ...`. Returns the estimate and the size of the
/// last correction as an error indicator.
pub fn richardson(values: &[f64], ratio: f64, powers: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty());
    let mut table = values.to_vec();
    let mut best = *table.last().expect("nonempty");
    let mut correction = f64::INFINITY;
    for p in powers.iter().take(values.len() - 1) {
        let factor = ratio.powf(*p);
        table = table
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / (factor - 1.0))
            .collect();
        let next = *table.last().expect("nonempty");
        correction = (next - best).abs();
        best = next;
    }
    (best, correction)
}

/// Least-squares slope of `log|y|` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// `count` evenly spaced samples on `[a, b]` (just `a` when `count == 1`).
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..count)
            .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn det(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    dot(cross(a, b), c)
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}
