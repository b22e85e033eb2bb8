//! Abelian r-matrix realization of the symplectic groupoid inside `T*M`.
//!
//! For `r = eps X1 ∧ X2` with commuting, analytically flowable generators
//! the phase space keeps the canonical cotangent structure and only the two
//! projections onto `M` are deformed:
//!
//! ```text
//! left(x, p)  = Phi^{X1}_{-(eps/2) J2} ∘ Phi^{X2}_{+(eps/2) J1} (x)
//! right(x, p) = Phi^{X1}_{+(eps/2) J2} ∘ Phi^{X2}_{-(eps/2) J1} (x)
//! ```
//!
//! with `J_k = <p, X_k(x)>`. Here `r` acts on `g*` as
//! `mu ↦ eps (<mu, X2> X1 - <mu, X1> X2)`; with this sign the left
//! projection pushes the canonical bracket onto `pi_M = eps X1 ∧ X2`.
//!
//! The module also carries Poincaré generators and triangular r-matrices
//! for the shifted bracket `pi_0 + r_{T*M}` on the cotangent bundle.

use nalgebra::DMatrix;

use crate::error::{check_dim, Error, Result};
use crate::integrate::Trajectory;
use crate::poisson::{BivectorSpec, BracketMatrix, ScalarField};

/// A vector field on `M` whose flow is known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorField {
    /// Constant field; flow `x + t v`.
    Translation(Vec<f64>),
    /// `x ↦ L x`; flow `exp(t L) x`.
    Linear(DMatrix<f64>),
    /// `sum_{k in coords} x^k d_k`; flow rescales those coordinates by `e^t`.
    Scaling { dim: usize, coords: Vec<usize> },
}

impl GeneratorField {
    pub fn translation(dim: usize, axis: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[axis] = 1.0;
        GeneratorField::Translation(v)
    }

    pub fn scaling(dim: usize, coords: impl IntoIterator<Item = usize>) -> Result<Self> {
        let coords: Vec<usize> = coords.into_iter().collect();
        if coords.iter().any(|&k| k >= dim) {
            return Err(Error::Contract(format!("scaling coordinate out of range for dim {dim}")));
        }
        Ok(GeneratorField::Scaling { dim, coords })
    }

    pub fn linear(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Contract("linear generator must be square".into()));
        }
        Ok(GeneratorField::Linear(matrix))
    }

    pub fn dim(&self) -> usize {
        match self {
            GeneratorField::Translation(v) => v.len(),
            GeneratorField::Linear(m) => m.nrows(),
            GeneratorField::Scaling { dim, .. } => *dim,
        }
    }

    /// Jacobian `dX^b/dx^a` as a matrix (zero for translations).
    pub fn linear_part(&self) -> DMatrix<f64> {
        match self {
            GeneratorField::Translation(v) => DMatrix::zeros(v.len(), v.len()),
            GeneratorField::Linear(m) => m.clone(),
            GeneratorField::Scaling { dim, coords } => {
                let mut m = DMatrix::zeros(*dim, *dim);
                for &k in coords {
                    m[(k, k)] = 1.0;
                }
                m
            }
        }
    }

    /// The field's value at `x`.
    pub fn vector_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        Ok(match self {
            GeneratorField::Translation(v) => v.clone(),
            GeneratorField::Linear(m) => (m * nalgebra::DVector::from_column_slice(x)).as_slice().to_vec(),
            GeneratorField::Scaling { coords, .. } => {
                let mut v = vec![0.0; x.len()];
                for &k in coords {
                    v[k] = x[k];
                }
                v
            }
        })
    }

    /// Time-`t` flow applied to `x`.
    pub fn flow(&self, t: f64, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        let out: Vec<f64> = match self {
            GeneratorField::Translation(v) => x.iter().zip(v).map(|(a, b)| a + t * b).collect(),
            GeneratorField::Linear(m) => {
                let e = (m * t).exp();
                (e * nalgebra::DVector::from_column_slice(x)).as_slice().to_vec()
            }
            GeneratorField::Scaling { coords, .. } => {
                let s = t.exp();
                let mut y = x.to_vec();
                for &k in coords {
                    y[k] *= s;
                }
                y
            }
        };
        if out.iter().all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(Error::Domain(format!("generator flow left the chart at t = {t}")))
        }
    }

    /// Value of the cotangent lift at `(x, p)`: `(X(x), -(dX)^T p)`.
    pub fn cotangent_lift(&self, x: &[f64], p: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), p.len())?;
        let mut out = self.vector_at(x)?;
        let jac = self.linear_part();
        for a in 0..p.len() {
            out.push(-(0..p.len()).map(|b| jac[(b, a)] * p[b]).sum::<f64>());
        }
        Ok(out)
    }
}

/// `|Phi^X_s Phi^Y_t x - Phi^Y_t Phi^X_s x|_inf`.
pub fn flow_commutator(x_gen: &GeneratorField, y_gen: &GeneratorField, s: f64, t: f64, x: &[f64]) -> Result<f64> {
    let a = x_gen.flow(s, &y_gen.flow(t, x)?)?;
    let b = y_gen.flow(t, &x_gen.flow(s, x)?)?;
    Ok(a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max))
}

/// Pairings of a covector with the two generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentValue {
    pub j1: f64,
    pub j2: f64,
}

/// `r = eps X1 ∧ X2` with commuting generators.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianRSpec {
    pub epsilon: f64,
    pub x1: GeneratorField,
    pub x2: GeneratorField,
}

impl AbelianRSpec {
    /// Checks that the generators share a dimension and that their flows
    /// commute on a fixed set of probe points.
    pub fn new(epsilon: f64, x1: GeneratorField, x2: GeneratorField) -> Result<Self> {
        check_dim(x1.dim(), x2.dim())?;
        let dim = x1.dim();
        for (s, t) in [(0.3, -0.7), (-0.45, 0.2), (0.9, 0.6)] {
            let x: Vec<f64> = (0..dim).map(|k| 0.5 - 0.37 * k as f64 + 0.11 * s).collect();
            let c = flow_commutator(&x1, &x2, s, t, &x)?;
            if c > 1e-9 {
                return Err(Error::Contract(format!(
                    "generator flows do not commute (residual {c:e})"
                )));
            }
        }
        Ok(Self { epsilon, x1, x2 })
    }

    pub fn dim(&self) -> usize {
        self.x1.dim()
    }

    /// `pi_M = eps X1 ∧ X2` on a chart with the given names.
    pub fn bivector<S: Into<String>>(&self, names: impl IntoIterator<Item = S>) -> Result<BivectorSpec> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_dim(self.dim(), names.len())?;
        let spec = self.clone();
        BivectorSpec::from_packed(names, move |x| {
            let (a, b) = match (spec.x1.vector_at(x), spec.x2.vector_at(x)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return vec![f64::NAN; x.len() * x.len().saturating_sub(1) / 2],
            };
            let n = x.len();
            let mut out = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    out.push(spec.epsilon * (a[i] * b[j] - b[i] * a[j]));
                }
            }
            out
        })
    }

    pub fn moments(&self, x: &[f64], p: &[f64]) -> Result<MomentValue> {
        Ok(MomentValue {
            j1: moment_j0(x, p, &self.x1)?,
            j2: moment_j0(x, p, &self.x2)?,
        })
    }

    /// Image of a moment under `r: g* -> g`, as flow times `(t1, t2)` along
    /// `(X1, X2)`: `r(mu) = eps (mu2 X1 - mu1 X2)`.
    pub fn r_of_moment(&self, m: MomentValue) -> (f64, f64) {
        (self.epsilon * m.j2, -self.epsilon * m.j1)
    }

    /// Projection using given moment values instead of `J0(x, p)`.
    pub fn project_with_moments(&self, x: &[f64], m: MomentValue, side: Side) -> Result<Vec<f64>> {
        let (t1, t2) = self.r_of_moment(m);
        let sign = match side {
            Side::Left => -0.5,
            Side::Right => 0.5,
        };
        self.x1.flow(sign * t1, &self.x2.flow(sign * t2, x)?)
    }
}

/// Canonical moment map on one generator: `<p, X(x)>`.
pub fn moment_j0(x: &[f64], p: &[f64], generator: &GeneratorField) -> Result<f64> {
    check_dim(x.len(), p.len())?;
    let v = generator.vector_at(x)?;
    Ok(v.iter().zip(p).map(|(a, b)| a * b).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Left or right groupoid projection of `(x, p)` onto `M`.
pub fn groupoid_projection(r: &AbelianRSpec, x: &[f64], p: &[f64], side: Side) -> Result<Vec<f64>> {
    check_dim(r.dim(), x.len())?;
    if x.iter().chain(p).any(|v| !v.is_finite()) {
        return Err(Error::Contract("projection input is not finite".into()));
    }
    let m = r.moments(x, p)?;
    r.project_with_moments(x, m, side)
}

/// Splits a `T*M` chart point `(x, p)` into its halves.
pub fn split_phase_point(point: &[f64]) -> Result<(&[f64], &[f64])> {
    if !point.len().is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "phase point has odd length {}",
            point.len()
        )));
    }
    Ok(point.split_at(point.len() / 2))
}

/// Pointwise projection of a phase trajectory; keeps the sample times.
pub fn project_trajectory(r: &AbelianRSpec, traj: &Trajectory, side: Side) -> Result<Trajectory> {
    let points = traj
        .points
        .iter()
        .map(|pt| {
            let (x, p) = split_phase_point(pt)?;
            groupoid_projection(r, x, p, side)
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_samples(traj.times.clone(), points)
}

/// Ordinary cotangent projection `(x, p) ↦ x` of a phase trajectory.
pub fn cotangent_projection(traj: &Trajectory) -> Result<Trajectory> {
    let points = traj
        .points
        .iter()
        .map(|pt| split_phase_point(pt).map(|(x, _)| x.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::from_samples(traj.times.clone(), points)
}

/// Coordinate names `x0.., p0..` for the cotangent chart over `base`.
pub fn phase_names(base: &[String]) -> Vec<String> {
    base.iter()
        .cloned()
        .chain(base.iter().map(|n| format!("p_{n}")))
        .collect()
}

/// Canonical structure `pi_0` on `T*M`: `{x^i, p_j} = delta^i_j`.
pub fn canonical_bivector(base: &[String]) -> Result<BivectorSpec> {
    let n = base.len();
    let mut b = BivectorSpec::new(phase_names(base))?;
    for i in 0..n {
        b = b.with_component(i, n + i, |_| 1.0)?;
    }
    Ok(b)
}

/// All coordinate brackets of `pi_0 + r_action` at a `T*M` point.
pub fn shifted_bracket(r_action: &BivectorSpec, point: &[f64]) -> Result<BracketMatrix> {
    check_dim(r_action.dim(), point.len())?;
    let (x, _) = split_phase_point(point)?;
    let base: Vec<String> = (0..x.len()).map(|k| format!("x{k}")).collect();
    let canonical = canonical_bivector(&base)?;
    let r0 = r_action.upper(point)?;
    let c0 = canonical.upper(point)?;
    let packed: Vec<f64> = r0.iter().zip(&c0).map(|(a, b)| a + b).collect();
    Ok(BracketMatrix::from_packed(point.len(), &packed))
}

/// `g = diag(+1, -1, ..., -1)`.
pub fn metric_sign(k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `p^2 = g^{ij} p_i p_j` on the cotangent chart of an `n`-dimensional
/// Minkowski space, with analytic gradient.
pub fn momentum_square(n: usize) -> ScalarField {
    ScalarField::with_gradient(
        move |z| (0..n).map(|k| metric_sign(k) * z[n + k] * z[n + k]).sum(),
        move |z| {
            let mut g = vec![0.0; 2 * n];
            for k in 0..n {
                g[n + k] = 2.0 * metric_sign(k) * z[n + k];
            }
            g
        },
    )
}

/// Generators of the Poincaré algebra of an `n`-dimensional Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoincareGenerator {
    /// `d_k`
    Translation(usize),
    /// `M_{ij} = x_i d_j - x_j d_i`, indices lowered with `g`.
    Lorentz(usize, usize),
}

impl PoincareGenerator {
    pub fn is_translation(&self) -> bool {
        matches!(self, PoincareGenerator::Translation(_))
    }

    pub fn field(&self, n: usize) -> Result<GeneratorField> {
        match *self {
            PoincareGenerator::Translation(k) if k < n => Ok(GeneratorField::translation(n, k)),
            PoincareGenerator::Lorentz(i, j) if i < n && j < n && i != j => {
                let mut m = DMatrix::zeros(n, n);
                m[(j, i)] += metric_sign(i);
                m[(i, j)] -= metric_sign(j);
                Ok(GeneratorField::Linear(m))
            }
            _ => Err(Error::Contract(format!("invalid generator {self:?} for dim {n}"))),
        }
    }
}

/// Which summand of `∧²V ⊕ (V ∧ h) ⊕ ∧²h` a wedge term lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RPart {
    /// `a ∈ ∧²V`: constant part of `pi_M`.
    Constant,
    /// `b ∈ V ∧ h`: linear part.
    Linear,
    /// `c ∈ ∧²h`: quadratic part.
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RTerm {
    pub coeff: f64,
    pub first: PoincareGenerator,
    pub second: PoincareGenerator,
}

impl RTerm {
    pub fn part(&self) -> RPart {
        match (self.first.is_translation(), self.second.is_translation()) {
            (true, true) => RPart::Constant,
            (false, false) => RPart::Quadratic,
            _ => RPart::Linear,
        }
    }
}

/// `r = sum coeff X ∧ Y` over Poincaré generators.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    pub dim: usize,
    pub terms: Vec<RTerm>,
}

/// `r = a + b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct RDecomposition {
    pub a: RMatrix,
    pub b: RMatrix,
    pub c: RMatrix,
}

impl RMatrix {
    pub fn new(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    pub fn with_term(mut self, coeff: f64, first: PoincareGenerator, second: PoincareGenerator) -> Result<Self> {
        first.field(self.dim)?;
        second.field(self.dim)?;
        self.terms.push(RTerm { coeff, first, second });
        Ok(self)
    }

    pub fn decomposition(&self) -> RDecomposition {
        let pick = |part| RMatrix {
            dim: self.dim,
            terms: self.terms.iter().copied().filter(|t| t.part() == part).collect(),
        };
        RDecomposition {
            a: pick(RPart::Constant),
            b: pick(RPart::Linear),
            c: pick(RPart::Quadratic),
        }
    }

    fn fields(&self) -> Result<Vec<(f64, GeneratorField, GeneratorField)>> {
        self.terms
            .iter()
            .map(|t| Ok((t.coeff, t.first.field(self.dim)?, t.second.field(self.dim)?)))
            .collect()
    }

    /// `pi_M = r_M`: the bivector `x ↦ r x` on space-time.
    pub fn spacetime_bivector(&self) -> Result<BivectorSpec> {
        let fields = self.fields()?;
        let names: Vec<String> = (0..self.dim).map(|k| format!("x{k}")).collect();
        BivectorSpec::from_packed(names, move |x| {
            wedge_sum(&fields, x.len(), |g| g.vector_at(x))
        })
    }

    /// `r_{T*M}` from the cotangent-lifted action on `M × V*`.
    pub fn cotangent_bivector(&self) -> Result<BivectorSpec> {
        let fields = self.fields()?;
        let base: Vec<String> = (0..self.dim).map(|k| format!("x{k}")).collect();
        let n = self.dim;
        BivectorSpec::from_packed(phase_names(&base), move |z| {
            wedge_sum(&fields, z.len(), |g| g.cotangent_lift(&z[..n], &z[n..]))
        })
    }
}

fn wedge_sum(
    fields: &[(f64, GeneratorField, GeneratorField)],
    dim: usize,
    value: impl Fn(&GeneratorField) -> Result<Vec<f64>>,
) -> Vec<f64> {
    let mut out = vec![0.0; dim * dim.saturating_sub(1) / 2];
    for (c, f, g) in fields {
        let (Ok(a), Ok(b)) = (value(f), value(g)) else {
            return vec![f64::NAN; out.len()];
        };
        let mut k = 0;
        for i in 0..dim {
            for j in i + 1..dim {
                out[k] += c * (a[i] * b[j] - b[i] * a[j]);
                k += 1;
            }
        }
    }
    out
}
