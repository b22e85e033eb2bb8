//! Deformed Minkowski space-times: the two-dimensional light-cone model and
//! the κ-deformation in `1 + n` dimensions.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::groupoid::{metric_sign, AbelianRSpec, GeneratorField, Side};
use crate::poisson::BivectorSpec;
use crate::special::{fit_line, is_monotonic, sinhc};

/// Two-dimensional model `{x+, x-} = eps x+ x-`, with `x± = x0 ± x1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minkowski2DSpec {
    pub epsilon: f64,
    pub mass: f64,
}

impl Minkowski2DSpec {
    pub fn new(epsilon: f64, mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !epsilon.is_finite() {
            return Err(Error::Contract(format!("need m > 0 and finite eps (m = {mass}, eps = {epsilon})")));
        }
        Ok(Self { epsilon, mass })
    }
}

pub const LIGHT_CONE_NAMES: [&str; 2] = ["x+", "x-"];

/// `pi^{+-} = eps x+ x-` on the chart `(x+, x-)`.
pub fn minkowski2d_bivector(spec: &Minkowski2DSpec) -> BivectorSpec {
    let eps = spec.epsilon;
    BivectorSpec::new(LIGHT_CONE_NAMES)
        .and_then(|b| b.with_component(0, 1, move |x| eps * x[0] * x[1]))
        .expect("static chart")
}

/// `eps (x+ d+) ∧ (x- d-)` as an abelian r-matrix.
pub fn minkowski2d_r(spec: &Minkowski2DSpec) -> AbelianRSpec {
    AbelianRSpec::new(
        spec.epsilon,
        GeneratorField::Scaling { dim: 2, coords: vec![0] },
        GeneratorField::Scaling { dim: 2, coords: vec![1] },
    )
    .expect("scalings commute")
}

/// Samples of the branch `(x+ - c+)(x- - c-) = -1/(eps^2 m^2)` at the given
/// `x+` values.
pub fn hyperbola_curve(spec: &Minkowski2DSpec, c_plus: f64, c_minus: f64, x_plus: &[f64]) -> Result<Vec<[f64; 2]>> {
    if !(c_plus * c_minus < 0.0) {
        return Err(Error::Contract(format!("hyperbola needs c+ c- < 0, got c+ = {c_plus}, c- = {c_minus}")));
    }
    if spec.epsilon == 0.0 {
        return Err(Error::Domain("hyperbola degenerates at eps = 0".into()));
    }
    let k = hyperbola_constant(spec);
    x_plus
        .iter()
        .map(|&xp| {
            let d = xp - c_plus;
            if d == 0.0 {
                return Err(Error::Domain(format!("x+ = c+ = {c_plus} lies on the asymptote")));
            }
            Ok([xp, c_minus + k / d])
        })
        .collect()
}

/// `-1/(eps^2 m^2)`.
pub fn hyperbola_constant(spec: &Minkowski2DSpec) -> f64 {
    -1.0 / (spec.epsilon * spec.epsilon * spec.mass * spec.mass)
}

/// Relative residual of the defining relation at one point.
pub fn hyperbola_residual(spec: &Minkowski2DSpec, c_plus: f64, c_minus: f64, pt: [f64; 2]) -> f64 {
    let k = hyperbola_constant(spec);
    ((pt[0] - c_plus) * (pt[1] - c_minus) - k).abs() / k.abs()
}

/// Least-squares fit of `(x+ - a)(x- - b) = k` to points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolaFit {
    pub c_plus: f64,
    pub c_minus: f64,
    pub constant: f64,
    /// Largest `|(x+ - a)(x- - b) - k|` over the input, relative to `|k|`.
    pub residual: f64,
}

/// Fits the asymptotes and constant of a rectangular hyperbola by linear
/// least squares on `x+ x- = b x+ + a x- + C`.
pub fn fit_hyperbola(points: &[[f64; 2]]) -> Result<HyperbolaFit> {
    if points.len() < 3 {
        return Err(Error::Estimation("hyperbola fit needs at least 3 points".into()));
    }
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for p in points {
        let row = Vector3::new(p[0], p[1], 1.0);
        ata += row * row.transpose();
        atb += row * (p[0] * p[1]);
    }
    let sol = ata
        .lu()
        .solve(&atb)
        .ok_or_else(|| Error::Estimation("degenerate hyperbola fit".into()))?;
    let (b, a, c) = (sol[0], sol[1], sol[2]);
    let constant = c + a * b;
    let scale = constant.abs().max(f64::MIN_POSITIVE);
    let residual = points
        .iter()
        .map(|p| ((p[0] - a) * (p[1] - b) - constant).abs() / scale)
        .fold(0.0, f64::max);
    Ok(HyperbolaFit { c_plus: a, c_minus: b, constant, residual })
}

/// Trajectory constants `(alpha, beta)` of the parametric curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCurveSpec {
    pub alpha: f64,
    pub beta: f64,
}

/// Point of a parametric curve in light-cone coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightConePoint {
    pub p: f64,
    pub q_plus: f64,
    pub q_minus: f64,
}

impl LightConePoint {
    /// `q0 = (q+ + q-)/2`
    pub fn q0(&self) -> f64 {
        0.5 * (self.q_plus + self.q_minus)
    }

    /// `q1 = (q+ - q-)/2`
    pub fn q1(&self) -> f64 {
        0.5 * (self.q_plus - self.q_minus)
    }
}

/// `sinh(eps u / 2) / (eps m / 2)`, with the `eps = 0` limit `u / m`.
fn light_cone_arm(eps: f64, m: f64, u: f64) -> f64 {
    if eps == 0.0 {
        u / m
    } else {
        u * sinhc(0.5 * eps * u) / m
    }
}

/// Cotangent-bundle projection of a phase trajectory, parameterized by `p`:
///
/// `q+ = e^a sinh(eps p/2)/(eps m/2)`, `q- = e^-a sinh(eps (p - b)/2)/(eps m/2)`.
pub fn parametric_trajectory_2d(spec: &Minkowski2DSpec, curve: &ScatteringCurveSpec, p_grid: &[f64]) -> Result<Vec<LightConePoint>> {
    if !(spec.mass > 0.0) {
        return Err(Error::Contract("mass must be positive".into()));
    }
    let (ea, eps, m) = (curve.alpha.exp(), spec.epsilon, spec.mass);
    Ok(p_grid
        .iter()
        .map(|&p| LightConePoint {
            p,
            q_plus: ea * light_cone_arm(eps, m, p),
            q_minus: light_cone_arm(eps, m, p - curve.beta) / ea,
        })
        .collect())
}

/// The odd monotone map in the closed-form scattering data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VelocityMap {
    /// Agrees with the `p → ∓∞` limits of the parametric curves.
    #[default]
    Tanh,
    /// The circular variant, kept for comparison.
    Tan,
}

impl VelocityMap {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            VelocityMap::Tanh => t.tanh(),
            VelocityMap::Tan => t.tan(),
        }
    }
}

/// Closed-form `(v_in, v_out) = (T(a - |eps| b/4), T(a + |eps| b/4))`.
///
/// For `eps < 0` the roles of the two exponential tails swap, which the
/// absolute value accounts for.
pub fn scattering_data(spec: &Minkowski2DSpec, curve: &ScatteringCurveSpec, map: VelocityMap) -> (f64, f64) {
    let shift = spec.epsilon.abs() * curve.beta / 4.0;
    (map.apply(curve.alpha - shift), map.apply(curve.alpha + shift))
}

/// `q1/q0` of the parametric curve at `p = ∓40/|eps|` (or `∓1e12` when
/// `eps = 0`).
pub fn scattering_limit_numeric(spec: &Minkowski2DSpec, curve: &ScatteringCurveSpec) -> Result<(f64, f64)> {
    let far = if spec.epsilon == 0.0 { 1e12 } else { 40.0 / spec.epsilon.abs() };
    let pts = parametric_trajectory_2d(spec, curve, &[-far, far])?;
    Ok((pts[0].q1() / pts[0].q0(), pts[1].q1() / pts[1].q0()))
}

/// Largest deviation of the parametric curve from its `eps = 0` straight
/// line over the grid.
pub fn classical_limit_deviation_2d(spec: &Minkowski2DSpec, curve: &ScatteringCurveSpec, p_grid: &[f64]) -> Result<f64> {
    let deformed = parametric_trajectory_2d(spec, curve, p_grid)?;
    let flat = parametric_trajectory_2d(&Minkowski2DSpec { epsilon: 0.0, ..*spec }, curve, p_grid)?;
    Ok(deformed
        .iter()
        .zip(&flat)
        .map(|(a, b)| (a.q_plus - b.q_plus).abs().max((a.q_minus - b.q_minus).abs()))
        .fold(0.0, f64::max))
}

/// κ-deformation `pi = eps d0 ∧ sum_k x^k d_k` on `1 + spatial_dim` dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaSpec {
    pub epsilon: f64,
    pub spatial_dim: usize,
}

impl KappaSpec {
    pub fn new(epsilon: f64, spatial_dim: usize) -> Result<Self> {
        if spatial_dim == 0 {
            return Err(Error::Contract("kappa model needs spatial_dim >= 1".into()));
        }
        Ok(Self { epsilon, spatial_dim })
    }

    pub fn dim(&self) -> usize {
        self.spatial_dim + 1
    }

    pub fn coord_names(&self) -> Vec<String> {
        (0..self.dim()).map(|k| format!("x{k}")).collect()
    }
}

/// `pi^{0k} = eps x^k`, and the matching abelian r-matrix with
/// `X1 = d0`, `X2 = sum_k x^k d_k`.
pub fn kappa_bivector(spec: &KappaSpec) -> (BivectorSpec, AbelianRSpec) {
    let eps = spec.epsilon;
    let mut b = BivectorSpec::new(spec.coord_names()).expect("generated names are distinct");
    for k in 1..spec.dim() {
        b = b.with_component(0, k, move |x| eps * x[k]).expect("valid index");
    }
    let n = spec.dim();
    let r = AbelianRSpec::new(
        eps,
        GeneratorField::translation(n, 0),
        GeneratorField::Scaling { dim: n, coords: (1..n).collect() },
    )
    .expect("time translation commutes with spatial scaling");
    (b, r)
}

/// Which map sends the phase trajectory to space-time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectionKind {
    Ordinary,
    Left,
    Right,
}

impl ProjectionKind {
    pub const ALL: [ProjectionKind; 3] = [ProjectionKind::Ordinary, ProjectionKind::Left, ProjectionKind::Right];

    pub fn name(self) -> &'static str {
        match self {
            ProjectionKind::Ordinary => "ordinary",
            ProjectionKind::Left => "left",
            ProjectionKind::Right => "right",
        }
    }
}

/// Free phase trajectory on the shell `p^2 = m^2` with spatial momentum of
/// magnitude `p_mag` along the first spatial axis, sampled at `times`.
///
/// With `x' = {H, x}`, `H = p^2/2` and `{x^i, p_j} = delta`, the base point
/// moves as `x(t) = x0 - t g^{-1} p`.
pub fn shell_trajectory(spatial_dim: usize, m: f64, p_mag: f64, x0: &[f64], times: &[f64]) -> Vec<(Vec<f64>, Vec<f64>)> {
    let n = spatial_dim + 1;
    let mut p = vec![0.0; n];
    p[0] = (m * m + p_mag * p_mag).sqrt();
    // contravariant spatial momentum +p_mag along x1
    p[1] = -p_mag;
    times
        .iter()
        .map(|&t| {
            let x: Vec<f64> = (0..n).map(|k| x0[k] - t * metric_sign(k) * p[k]).collect();
            (x, p.clone())
        })
        .collect()
}

/// One profile: coordinate speed against spatial momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityProfile {
    pub projection: ProjectionKind,
    /// `(p, v)` sorted by `p`.
    pub rows: Vec<(f64, f64)>,
}

impl VelocityProfile {
    pub fn is_monotonic(&self) -> bool {
        let v: Vec<f64> = self.rows.iter().map(|r| r.1).collect();
        is_monotonic(&v, 1e-12)
    }
}

const PROFILE_SAMPLES: usize = 64;
const PROFILE_TIME: f64 = 4.0;

/// Tail least-squares estimate of `|dx/dx0|` along a sampled curve in
/// space-time, using the last quarter of the samples.
pub fn tail_speed(points: &[Vec<f64>]) -> Result<f64> {
    let tail = &points[points.len() - points.len() / 4..];
    if tail.len() < 8 {
        return Err(Error::Estimation(format!("tail has {} samples, need at least 8", tail.len())));
    }
    let t: Vec<f64> = tail.iter().map(|x| x[0]).collect();
    let mut speed2 = 0.0;
    for k in 1..points[0].len() {
        let xs: Vec<f64> = tail.iter().map(|x| x[k]).collect();
        let (slope, _) = fit_line(&t, &xs).ok_or_else(|| Error::Estimation("time coordinate is constant on the tail".into()))?;
        speed2 += slope * slope;
    }
    Ok(speed2.sqrt())
}

/// Coordinate velocity as a function of spatial momentum under one of the
/// three projections.
pub fn velocity_momentum_profile(spec: &KappaSpec, m: f64, projection: ProjectionKind, grid: &[f64]) -> Result<VelocityProfile> {
    if !(m > 0.0) {
        return Err(Error::Contract("shell mass must be positive".into()));
    }
    let (_, r) = kappa_bivector(spec);
    let n = spec.dim();
    let x0: Vec<f64> = (0..n).map(|k| if k == 0 { 0.0 } else { 0.25 * k as f64 }).collect();
    let times: Vec<f64> = (0..PROFILE_SAMPLES)
        .map(|k| PROFILE_TIME * k as f64 / (PROFILE_SAMPLES - 1) as f64)
        .collect();
    let mut rows = grid
        .iter()
        .map(|&p| {
            if p < 0.0 {
                return Err(Error::Contract(format!("momentum magnitude {p} is negative")));
            }
            let pts = shell_trajectory(spec.spatial_dim, m, p, &x0, &times)
                .into_iter()
                .map(|(x, mom)| match projection {
                    ProjectionKind::Ordinary => Ok(x),
                    ProjectionKind::Left => crate::groupoid::groupoid_projection(&r, &x, &mom, Side::Left),
                    ProjectionKind::Right => crate::groupoid::groupoid_projection(&r, &x, &mom, Side::Right),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((p, tail_speed(&pts)?))
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(VelocityProfile { projection, rows })
}

/// Largest `|(v_L + v_R)/2 - v|` over the grid, where `v` is the ordinary
/// profile. Each one-sided profile departs from `v` at first order in `eps`
/// with opposite signs; their mean departs at second order.
pub fn kappa_classical_limit_deviation(spec: &KappaSpec, m: f64, grid: &[f64]) -> Result<f64> {
    let ord = velocity_momentum_profile(spec, m, ProjectionKind::Ordinary, grid)?;
    let left = velocity_momentum_profile(spec, m, ProjectionKind::Left, grid)?;
    let right = velocity_momentum_profile(spec, m, ProjectionKind::Right, grid)?;
    Ok(ord
        .rows
        .iter()
        .zip(left.rows.iter().zip(&right.rows))
        .map(|(o, (l, r))| (0.5 * (l.1 + r.1) - o.1).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{eval_bracket, ScalarField};

    #[test]
    fn light_cone_bivector_values() {
        let zero = minkowski2d_bivector(&Minkowski2DSpec::new(0.0, 1.0).unwrap());
        assert_eq!(zero.component(0, 1, &[3.0, 4.0]).unwrap(), 0.0);
        let one = minkowski2d_bivector(&Minkowski2DSpec::new(1.0, 1.0).unwrap());
        assert_eq!(one.component(0, 1, &[1.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn spec_rejects_nonpositive_mass() {
        assert!(Minkowski2DSpec::new(0.1, 0.0).is_err());
        assert!(Minkowski2DSpec::new(0.1, -1.0).is_err());
    }

    #[test]
    fn hyperbola_point_example() {
        let spec = Minkowski2DSpec::new(1.0, 1.0).unwrap();
        let pts = hyperbola_curve(&spec, 1.0, -1.0, &[2.0]).unwrap();
        assert_eq!(pts[0], [2.0, -2.0]);
    }

    #[test]
    fn hyperbola_contract_errors() {
        let spec = Minkowski2DSpec::new(1.0, 1.0).unwrap();
        assert!(matches!(hyperbola_curve(&spec, 1.0, 1.0, &[2.0]), Err(Error::Contract(_))));
        assert!(matches!(hyperbola_curve(&spec, 0.0, 1.0, &[2.0]), Err(Error::Contract(_))));
        let flat = Minkowski2DSpec::new(0.0, 1.0).unwrap();
        assert!(matches!(hyperbola_curve(&flat, 1.0, -1.0, &[2.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn hyperbola_fit_recovers_asymptotes_over_widening_windows() {
        let spec = Minkowski2DSpec::new(0.7, 1.3).unwrap();
        let (cp, cm) = (0.8, -2.5);
        for width in [10.0, 100.0, 1000.0] {
            let xs: Vec<f64> = (0..200).map(|k| cp + 0.05 + width * k as f64 / 199.0).collect();
            let pts = hyperbola_curve(&spec, cp, cm, &xs).unwrap();
            let fit = fit_hyperbola(&pts).unwrap();
            assert!(fit.residual < 1e-6, "{fit:?}");
            assert!((fit.c_plus - cp).abs() < 1e-6 && (fit.c_minus - cm).abs() < 1e-6, "{fit:?}");
            assert!((fit.constant - hyperbola_constant(&spec)).abs() < 1e-6 * hyperbola_constant(&spec).abs());
        }
    }

    #[test]
    fn parametric_curve_zeros() {
        let spec = Minkowski2DSpec::new(0.4, 2.0).unwrap();
        let c = ScatteringCurveSpec { alpha: 0.7, beta: 1.5 };
        let pts = parametric_trajectory_2d(&spec, &c, &[0.0, 1.5]).unwrap();
        assert_eq!(pts[0].q_plus, 0.0);
        assert_eq!(pts[1].q_minus, 0.0);
    }

    #[test]
    fn parametric_curve_matches_sinh_form() {
        let spec = Minkowski2DSpec::new(0.4, 2.0).unwrap();
        let c = ScatteringCurveSpec { alpha: 0.7, beta: 1.5 };
        let p = 3.3;
        let pt = parametric_trajectory_2d(&spec, &c, &[p]).unwrap()[0];
        let qp = 0.7f64.exp() * (0.2 * p).sinh() / (0.2 * 2.0);
        let qm = (-0.7f64).exp() * (0.2 * (p - 1.5)).sinh() / (0.2 * 2.0);
        assert!((pt.q_plus - qp).abs() < 1e-14 && (pt.q_minus - qm).abs() < 1e-14);
    }

    #[test]
    fn scattering_closed_form_properties() {
        let spec = Minkowski2DSpec::new(0.5, 1.0).unwrap();
        let (vi, vo) = scattering_data(&spec, &ScatteringCurveSpec { alpha: 0.3, beta: 0.0 }, VelocityMap::Tanh);
        assert_eq!(vi, vo);
        assert_eq!(vi, 0.3f64.tanh());
        let (vi, vo) = scattering_data(&spec, &ScatteringCurveSpec { alpha: 0.0, beta: 1.7 }, VelocityMap::Tan);
        assert_eq!(vi, -vo);
    }

    #[test]
    fn scattering_limit_matches_closed_form() {
        let spec = Minkowski2DSpec::new(0.5, 1.0).unwrap();
        let c = ScatteringCurveSpec { alpha: 0.3, beta: 2.0 };
        let (ni, no) = scattering_limit_numeric(&spec, &c).unwrap();
        let (vi, vo) = scattering_data(&spec, &c, VelocityMap::Tanh);
        assert!((ni - vi).abs() < 1e-6 && (no - vo).abs() < 1e-6, "{ni} {vi} {no} {vo}");
        // negative eps swaps the tails
        let neg = Minkowski2DSpec::new(-0.5, 1.0).unwrap();
        let (ni, no) = scattering_limit_numeric(&neg, &c).unwrap();
        assert!((ni - vi).abs() < 1e-6 && (no - vo).abs() < 1e-6);
    }

    #[test]
    fn kappa_components() {
        let (b, r) = kappa_bivector(&KappaSpec::new(0.3, 3).unwrap());
        assert!((b.component(0, 1, &[7.0, 2.0, 0.0, 0.0]).unwrap() - 0.6).abs() < 1e-15);
        let x = [0.4, -1.0, 2.0, 0.5];
        for i in 1..4 {
            for j in 1..4 {
                assert_eq!(b.component(i, j, &x).unwrap(), 0.0);
            }
        }
        let from_r = r.bivector(["t", "a", "b", "c"]).unwrap();
        for k in 1..4 {
            assert!((from_r.component(0, k, &x).unwrap() - b.component(0, k, &x).unwrap()).abs() < 1e-15);
        }
        let v = eval_bracket(&b, &ScalarField::coordinate(0), &ScalarField::coordinate(3), &x).unwrap();
        assert!((v - 0.15).abs() < 1e-15);
        assert!(KappaSpec::new(0.3, 0).is_err());
    }

    #[test]
    fn kappa_bivector_is_homogeneous_in_space() {
        let (b, _) = kappa_bivector(&KappaSpec::new(0.8, 3).unwrap());
        let x = [0.3, 1.0, -2.0, 0.5];
        let scaled = [0.3, 2.5, -5.0, 1.25];
        for k in 1..4 {
            assert_eq!(b.component(0, k, &scaled).unwrap(), 2.5 * b.component(0, k, &x).unwrap());
        }
    }

    #[test]
    fn profile_classical_and_rest_limits() {
        let flat = KappaSpec::new(0.0, 3).unwrap();
        let grid = [0.0, 0.5, 1.0, 2.0, 5.0];
        for kind in ProjectionKind::ALL {
            let prof = velocity_momentum_profile(&flat, 1.0, kind, &grid).unwrap();
            for (p, v) in &prof.rows {
                assert!((v - p / (p * p + 1.0).sqrt()).abs() < 1e-12, "{kind:?} {p} {v}");
            }
        }
        let deformed = KappaSpec::new(0.5, 3).unwrap();
        for kind in ProjectionKind::ALL {
            let prof = velocity_momentum_profile(&deformed, 1.0, kind, &[0.0]).unwrap();
            assert!(prof.rows[0].1.abs() < 1e-15);
        }
    }

    #[test]
    fn kappa_deviation_is_second_order() {
        let grid = [0.5, 1.0, 1.5];
        let devs: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&e| kappa_classical_limit_deviation(&KappaSpec::new(e, 3).unwrap(), 1.0, &grid).unwrap())
            .collect();
        let slope = crate::special::convergence_slope(&[1e-2, 5e-3, 2.5e-3], &devs).unwrap();
        assert!((slope - 2.0).abs() < 0.1, "{slope} {devs:?}");
    }

    #[test]
    fn profile_rows_are_sorted_and_validated() {
        let spec = KappaSpec::new(0.5, 3).unwrap();
        let prof = velocity_momentum_profile(&spec, 1.0, ProjectionKind::Left, &[2.0, 0.5, 1.0]).unwrap();
        assert!(prof.rows.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(velocity_momentum_profile(&spec, 0.0, ProjectionKind::Left, &[1.0]).is_err());
        assert!(velocity_momentum_profile(&spec, 1.0, ProjectionKind::Left, &[-1.0]).is_err());
    }

    #[test]
    fn tail_fit_needs_eight_samples() {
        let pts: Vec<Vec<f64>> = (0..20).map(|k| vec![k as f64, 0.5 * k as f64]).collect();
        assert!(matches!(tail_speed(&pts), Err(Error::Estimation(_))));
        let pts: Vec<Vec<f64>> = (0..32).map(|k| vec![k as f64, 0.5 * k as f64]).collect();
        assert!((tail_speed(&pts).unwrap() - 0.5).abs() < 1e-14);
    }
}
