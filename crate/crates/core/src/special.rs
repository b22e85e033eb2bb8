//! Small numerical helpers shared by the model modules.

/// `sinh(t) / t`, continuous at `t = 0`.
pub fn sinhc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 + t2 / 6.0 * (1.0 + t2 / 20.0 * (1.0 + t2 / 42.0))
    } else {
        t.sinh() / t
    }
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn fit_line(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let n = x.len();
    if n < 2 || n != y.len() {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Least-squares slope of `log(err)` against `log(param)`: the observed
/// convergence order.
pub fn convergence_slope(params: &[f64], errors: &[f64]) -> Option<f64> {
    if params.iter().chain(errors).any(|v| !(*v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = params.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = errors.iter().map(|v| v.ln()).collect();
    fit_line(&lx, &ly).map(|(s, _)| s)
}

/// Largest distance of the points from the line through the first and
/// last point. Zero for fewer than three points.
pub fn collinearity_residual(points: &[Vec<f64>]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let (first, last) = (&points[0], &points[points.len() - 1]);
    let dir: Vec<f64> = last.iter().zip(first).map(|(a, b)| a - b).collect();
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return points
            .iter()
            .map(|p| p.iter().zip(first).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
    }
    let unit: Vec<f64> = dir.iter().map(|v| v / norm).collect();
    points
        .iter()
        .map(|p| {
            let d: Vec<f64> = p.iter().zip(first).map(|(a, b)| a - b).collect();
            let along: f64 = d.iter().zip(&unit).map(|(a, b)| a * b).sum();
            d.iter()
                .zip(&unit)
                .map(|(a, u)| (a - along * u).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// Is the sequence non-decreasing (with absolute slack `tol`)?
pub fn is_monotonic(values: &[f64], tol: f64) -> bool {
    values.windows(2).all(|w| w[1] >= w[0] - tol) || values.windows(2).all(|w| w[1] <= w[0] + tol)
}
