//! Explicit fourth-order flow integration with per-step Richardson error
//! estimates, and conservation monitoring along the output.

use crate::error::{Error, Result};
use crate::poisson::{hamiltonian_vector_field, BivectorSpec, ScalarField};

/// Smallest step the integrator will try before giving up.
pub const MIN_STEP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Initial (and maximal) step.
    pub h: f64,
    /// Bound on the estimated local error of each accepted step.
    pub tol: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { h: 1e-3, tol: 1e-8 }
    }
}

/// Counters and checks gathered while integrating.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlowStats {
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub final_step: f64,
    /// Times at which the post-step hook modified the state.
    pub corrections: Vec<f64>,
    /// `max |H(x(t)) - H(x(0))|` when a hamiltonian was integrated.
    pub hamiltonian_drift: Option<f64>,
    /// `10 * tol * t_end`
    pub drift_bound: Option<f64>,
    /// Largest constraint violation seen before a post-step correction, for
    /// flows that monitor one.
    pub constraint_defect: Option<f64>,
}

impl FlowStats {
    pub fn drift_within_bound(&self) -> Option<bool> {
        Some(self.hamiltonian_drift? <= self.drift_bound?)
    }
}

/// Time-stamped chart points.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    /// Estimated local error of each accepted step (`points.len() - 1` entries).
    pub step_errors: Vec<f64>,
    pub stats: FlowStats,
}

impl Trajectory {
    /// Wraps externally produced samples, checking the time axis.
    pub fn from_samples(times: Vec<f64>, points: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::Contract(format!(
                "{} times but {} points",
                times.len(),
                points.len()
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Contract("trajectory times must be strictly increasing".into()));
        }
        Ok(Self {
            times,
            points,
            step_errors: Vec::new(),
            stats: FlowStats::default(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &[f64])> {
        Some((*self.times.last()?, self.points.last()?.as_slice()))
    }

    pub fn max_step_error(&self) -> f64 {
        self.step_errors.iter().copied().fold(0.0, f64::max)
    }

    /// Linear interpolation of the state at time `t` (clamped to the ends).
    pub fn sample(&self, t: f64) -> Option<Vec<f64>> {
        let first = *self.times.first()?;
        if t <= first {
            return Some(self.points[0].clone());
        }
        let k = self.times.partition_point(|s| *s < t);
        if k >= self.times.len() {
            return self.points.last().cloned();
        }
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let w = (t - t0) / (t1 - t0);
        Some(
            self.points[k - 1]
                .iter()
                .zip(&self.points[k])
                .map(|(a, b)| a + w * (b - a))
                .collect(),
        )
    }
}

fn axpy(x: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect()
}

/// One classical Runge-Kutta step of an autonomous system.
pub fn rk4_step<F>(rhs: &mut F, x: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let k1 = rhs(x)?;
    let k2 = rhs(&axpy(x, 0.5 * h, &k1))?;
    let k3 = rhs(&axpy(x, 0.5 * h, &k2))?;
    let k4 = rhs(&axpy(x, h, &k3))?;
    Ok(x.iter()
        .enumerate()
        .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Endpoint of `n` equal RK4 steps over `[0, t_end]`, no error control.
pub fn rk4_fixed<F>(mut rhs: F, x0: &[f64], t_end: f64, n: usize) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    if n == 0 {
        return Err(Error::Contract("need at least one step".into()));
    }
    let h = t_end / n as f64;
    let mut x = x0.to_vec();
    for _ in 0..n {
        x = rk4_step(&mut rhs, &x, h)?;
    }
    Ok(x)
}

/// Integrates `x' = rhs(x)` from `x0` to `t_end`.
///
/// Each step is taken once with `h` and twice with `h/2`; the difference
/// divided by 15 is the error estimate. Steps whose estimate exceeds
/// `step.tol` are retried with half the step. The half-step result is kept.
/// After each accepted step `post_step(t, &mut x)` may adjust the state and
/// returns whether it did.
pub fn integrate<F, P>(mut rhs: F, x0: &[f64], t_end: f64, step: StepControl, mut post_step: P) -> Result<Trajectory>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
    P: FnMut(f64, &mut Vec<f64>) -> bool,
{
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(Error::Contract(format!("t_end must be positive, got {t_end}")));
    }
    if !(step.h > 0.0) || !(step.tol > 0.0) {
        return Err(Error::Contract("step size and tolerance must be positive".into()));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Contract("initial state is not finite".into()));
    }

    let mut traj = Trajectory {
        times: vec![0.0],
        points: vec![x0.to_vec()],
        step_errors: Vec::new(),
        stats: FlowStats::default(),
    };
    let mut t = 0.0;
    let mut x = x0.to_vec();
    let mut h = step.h;
    // Guard against a final sliver step much smaller than h.
    let end_slack = 1e-9 * step.h;

    while t_end - t > end_slack {
        let h_try = h.min(t_end - t);
        let full = rk4_step(&mut rhs, &x, h_try);
        let half = rk4_step(&mut rhs, &x, 0.5 * h_try).and_then(|mid| rk4_step(&mut rhs, &mid, 0.5 * h_try));
        let (full, half) = match (full, half) {
            (Ok(f), Ok(hf)) if f.iter().chain(&hf).all(|v| v.is_finite()) => (f, hf),
            (Err(e @ Error::DimensionMismatch { .. }), _) | (_, Err(e @ Error::DimensionMismatch { .. })) => {
                return Err(e)
            }
            _ => return Err(Error::Divergence { last_good_time: t }),
        };
        let err = full
            .iter()
            .zip(&half)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
            / 15.0;
        if err > step.tol {
            traj.stats.rejected_steps += 1;
            h = 0.5 * h_try;
            if h < MIN_STEP {
                return Err(Error::Stiffness { h, t });
            }
            continue;
        }
        t = if t_end - (t + h_try) <= end_slack { t_end } else { t + h_try };
        x = half;
        if post_step(t, &mut x) {
            traj.stats.corrections.push(t);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { last_good_time: *traj.times.last().unwrap() });
        }
        traj.stats.accepted_steps += 1;
        traj.times.push(t);
        traj.points.push(x.clone());
        traj.step_errors.push(err);
    }
    traj.stats.final_step = h;
    Ok(traj)
}

/// Flow of the hamiltonian vector field `x' = {H, x}` with drift check.
pub fn integrate_flow(biv: &BivectorSpec, h: &ScalarField, x0: &[f64], t_end: f64, step: StepControl) -> Result<Trajectory> {
    let mut traj = integrate(|x| hamiltonian_vector_field(biv, h, x), x0, t_end, step, |_, _| false)?;
    traj.stats.hamiltonian_drift = Some(conservation_drift(&traj, h)?);
    traj.stats.drift_bound = Some(10.0 * step.tol * t_end.abs());
    Ok(traj)
}

/// `max_t |f(x(t)) - f(x(0))|` over the samples.
pub fn conservation_drift(traj: &Trajectory, f: &ScalarField) -> Result<f64> {
    let first = traj
        .points
        .first()
        .ok_or_else(|| Error::Contract("empty trajectory".into()))?;
    let f0 = f.value(first);
    Ok(traj
        .points
        .iter()
        .map(|x| (f.value(x) - f0).abs())
        .fold(0.0, f64::max))
}
