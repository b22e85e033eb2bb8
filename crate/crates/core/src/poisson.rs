//! Coordinate-chart Poisson engine.
//!
//! A [`BivectorSpec`] holds the strictly upper-triangular components
//! `pi^{ij}(x)`, `i < j`, of a bivector field on a chart. Brackets are
//! `{f, g} = sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g)` and the flow
//! convention throughout the crate is `x' = {H, x}`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};

/// Real-valued function on a chart.
pub type PointFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Gradient of a [`PointFn`], same length as the chart point.
pub type GradFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
/// Packed upper triangle of a bivector, row-major over `i < j`.
pub type PackedFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Central-difference step for first derivatives.
pub fn gradient_step(xi: f64) -> f64 {
    1e-6 * xi.abs().max(1.0)
}

/// Central-difference step for the component derivatives inside the
/// Jacobiator.
pub fn nested_step(xi: f64) -> f64 {
    1e-4 * xi.abs().max(1.0)
}

/// Central-difference gradient of `f` at `x` with per-coordinate step `step`.
pub fn central_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], step: fn(f64) -> f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = step(x[i]);
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// A scalar field with an optional analytic gradient.
#[derive(Clone)]
pub struct ScalarField {
    value: PointFn,
    gradient: Option<GradFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("analytic_gradient", &self.gradient.is_some())
            .finish()
    }
}

impl ScalarField {
    pub fn new(value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            value: Arc::new(value),
            gradient: None,
        }
    }

    pub fn with_gradient(
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Arc::new(value),
            gradient: Some(Arc::new(gradient)),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::with_gradient(move |_| c, |x| vec![0.0; x.len()])
    }

    /// The coordinate function `x ↦ x^i`.
    pub fn coordinate(i: usize) -> Self {
        Self::with_gradient(
            move |x| x[i],
            move |x| {
                let mut g = vec![0.0; x.len()];
                g[i] = 1.0;
                g
            },
        )
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }

    pub fn has_analytic_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    /// Analytic gradient when supplied, central differences otherwise.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        match &self.gradient {
            Some(g) => g(x),
            None => self.finite_difference_gradient(x),
        }
    }

    pub fn finite_difference_gradient(&self, x: &[f64]) -> Vec<f64> {
        central_gradient(&*self.value, x, gradient_step)
    }

    /// Largest discrepancy between the analytic and finite-difference
    /// gradients, relative to `max(1, |grad|_inf)`. `None` without an
    /// analytic gradient.
    pub fn gradient_discrepancy(&self, x: &[f64]) -> Option<f64> {
        let analytic = self.gradient.as_ref()?(x);
        let numeric = self.finite_difference_gradient(x);
        let scale = analytic.iter().fold(1.0_f64, |m, g| m.max(g.abs()));
        Some(
            analytic
                .iter()
                .zip(&numeric)
                .map(|(a, n)| (a - n).abs() / scale)
                .fold(0.0, f64::max),
        )
    }

    /// Pointwise product, with the product rule applied to gradients.
    pub fn product(&self, other: &ScalarField) -> ScalarField {
        let (f, g) = (self.clone(), other.clone());
        let (f2, g2) = (self.clone(), other.clone());
        ScalarField::with_gradient(
            move |x| f.value(x) * g.value(x),
            move |x| {
                let (fv, gv) = (f2.value(x), g2.value(x));
                f2.gradient(x)
                    .iter()
                    .zip(g2.gradient(x))
                    .map(|(df, dg)| df * gv + fv * dg)
                    .collect()
            },
        )
    }
}

enum Repr {
    Sparse(Vec<(usize, usize, PointFn)>),
    Packed(PackedFn),
}

impl Clone for Repr {
    fn clone(&self) -> Self {
        match self {
            Repr::Sparse(v) => Repr::Sparse(v.clone()),
            Repr::Packed(f) => Repr::Packed(f.clone()),
        }
    }
}

/// A bivector field `pi` on a coordinate chart.
///
/// Only components with `i < j` are stored; `pi^{ji} = -pi^{ij}` and
/// `pi^{ii} = 0` hold structurally.
#[derive(Clone)]
pub struct BivectorSpec {
    names: Vec<String>,
    repr: Repr,
}

impl fmt::Debug for BivectorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BivectorSpec")
            .field("coord_names", &self.names)
            .finish()
    }
}

fn validate_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Contract("bivector chart needs dim >= 1".into()));
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::Contract(format!("duplicate coordinate name `{n}`")));
        }
    }
    Ok(())
}

/// Index of `(i, j)`, `i < j`, in a packed upper triangle of size `dim`.
pub fn packed_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl BivectorSpec {
    /// The zero bivector on a chart with the given coordinate names.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        validate_names(&names)?;
        Ok(Self {
            names,
            repr: Repr::Sparse(Vec::new()),
        })
    }

    /// Bivector given by a closure returning the packed upper triangle.
    pub fn from_packed<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        packed: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        validate_names(&names)?;
        Ok(Self {
            names,
            repr: Repr::Packed(Arc::new(packed)),
        })
    }

    /// Sets `pi^{ij}`; passing `i > j` stores the negated field at `(j, i)`.
    pub fn with_component(
        self,
        i: usize,
        j: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let dim = self.dim();
        if i == j || i >= dim || j >= dim {
            return Err(Error::Contract(format!(
                "component ({i},{j}) invalid on a {dim}-dimensional chart"
            )));
        }
        let Repr::Sparse(mut entries) = self.repr else {
            return Err(Error::Contract(
                "cannot add components to a packed bivector".into(),
            ));
        };
        let (lo, hi) = (i.min(j), i.max(j));
        if entries.iter().any(|(a, b, _)| (*a, *b) == (lo, hi)) {
            return Err(Error::Contract(format!("component ({lo},{hi}) set twice")));
        }
        let field: PointFn = if i < j {
            Arc::new(f)
        } else {
            Arc::new(move |x: &[f64]| -f(x))
        };
        entries.push((lo, hi, field));
        Ok(Self {
            names: self.names,
            repr: Repr::Sparse(entries),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn coord_names(&self) -> &[String] {
        &self.names
    }

    /// Packed upper triangle at `x`, checked for finiteness.
    pub fn upper(&self, x: &[f64]) -> Result<Vec<f64>> {
        let dim = self.dim();
        check_dim(dim, x.len())?;
        let packed = self.upper_unchecked(x);
        check_dim(dim * (dim - 1) / 2, packed.len())?;
        if let Some(k) = packed.iter().position(|v| !v.is_finite()) {
            let (i, j) = unpack_index(dim, k);
            return Err(Error::NonFiniteComponent(i, j));
        }
        Ok(packed)
    }

    fn upper_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let dim = self.dim();
        match &self.repr {
            Repr::Packed(f) => f(x),
            Repr::Sparse(entries) => {
                let mut out = vec![0.0; dim * (dim - 1) / 2];
                for (i, j, f) in entries {
                    out[packed_index(dim, *i, *j)] = f(x);
                }
                out
            }
        }
    }

    /// `pi^{ij}(x)` for any ordered pair.
    pub fn component(&self, i: usize, j: usize, x: &[f64]) -> Result<f64> {
        let dim = self.dim();
        if i >= dim || j >= dim {
            return Err(Error::Contract(format!("index out of range for dim {dim}")));
        }
        if i == j {
            return Ok(0.0);
        }
        let packed = self.upper(x)?;
        let v = packed[packed_index(dim, i.min(j), i.max(j))];
        Ok(if i < j { v } else { -v })
    }

    /// Full antisymmetric matrix of coordinate brackets at `x`.
    pub fn matrix(&self, x: &[f64]) -> Result<BracketMatrix> {
        let packed = self.upper(x)?;
        Ok(BracketMatrix::from_packed(self.dim(), &packed))
    }

    /// Pointwise sum of two bivectors on the same chart.
    pub fn sum(&self, other: &BivectorSpec) -> Result<BivectorSpec> {
        if self.names != other.names {
            return Err(Error::Contract(
                "bivector sum requires identical charts".into(),
            ));
        }
        let (a, b) = (self.clone(), other.clone());
        BivectorSpec::from_packed(self.names.clone(), move |x| {
            let mut s = a.upper_unchecked(x);
            for (si, bi) in s.iter_mut().zip(b.upper_unchecked(x)) {
                *si += bi;
            }
            s
        })
    }
}

fn unpack_index(dim: usize, k: usize) -> (usize, usize) {
    let mut k = k;
    for i in 0..dim {
        let row = dim - i - 1;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    unreachable!("packed index out of range")
}

/// Dense antisymmetric matrix of coordinate brackets at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl BracketMatrix {
    pub fn from_packed(dim: usize, packed: &[f64]) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = packed[packed_index(dim, i, j)];
                data[i * dim + j] = v;
                data[j * dim + i] = -v;
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim)
    }
}

/// `{f, g}` from gradients at a point.
pub fn bracket_from_gradients(biv: &BivectorSpec, df: &[f64], dg: &[f64], x: &[f64]) -> Result<f64> {
    let dim = biv.dim();
    check_dim(dim, df.len())?;
    check_dim(dim, dg.len())?;
    let packed = biv.upper(x)?;
    let mut acc = 0.0;
    for i in 0..dim {
        for j in i + 1..dim {
            acc += packed[packed_index(dim, i, j)] * (df[i] * dg[j] - df[j] * dg[i]);
        }
    }
    Ok(acc)
}

/// `{f, g}(x)`. Gradients are analytic where supplied, central differences
/// otherwise.
pub fn eval_bracket(biv: &BivectorSpec, f: &ScalarField, g: &ScalarField, x: &[f64]) -> Result<f64> {
    check_dim(biv.dim(), x.len())?;
    bracket_from_gradients(biv, &f.gradient(x), &g.gradient(x), x)
}

/// Components `{H, x^i}` of the hamiltonian vector field of `h`.
pub fn hamiltonian_vector_field(biv: &BivectorSpec, h: &ScalarField, x: &[f64]) -> Result<Vec<f64>> {
    let dim = biv.dim();
    check_dim(dim, x.len())?;
    let dh = h.gradient(x);
    check_dim(dim, dh.len())?;
    let m = biv.matrix(x)?;
    Ok((0..dim)
        .map(|i| (0..dim).map(|l| dh[l] * m.get(l, i)).sum())
        .collect())
}

/// `d pi / d x^l` for every `l`, each in packed form.
fn component_derivatives(biv: &BivectorSpec, x: &[f64]) -> Result<Vec<Vec<f64>>> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|l| {
            let h = nested_step(x[l]);
            probe[l] = x[l] + h;
            let up = biv.upper(&probe)?;
            probe[l] = x[l] - h;
            let down = biv.upper(&probe)?;
            probe[l] = x[l];
            Ok(up.iter().zip(&down).map(|(u, d)| (u - d) / (2.0 * h)).collect())
        })
        .collect()
}

fn signed(packed: &[f64], dim: usize, i: usize, j: usize) -> f64 {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => packed[packed_index(dim, i, j)],
        Greater => -packed[packed_index(dim, j, i)],
        Equal => 0.0,
    }
}

fn jacobiator(pi: &[f64], dpi: &[Vec<f64>], dim: usize, (i, j, k): (usize, usize, usize)) -> f64 {
    let term = |a: usize, b: usize, c: usize| -> f64 {
        (0..dim)
            .map(|l| signed(pi, dim, a, l) * signed(&dpi[l], dim, b, c))
            .sum()
    };
    term(i, j, k) + term(j, k, i) + term(k, i, j)
}

/// Cyclic sum `{x^i, {x^j, x^k}} + cyc.` at `x`.
pub fn jacobi_residual(biv: &BivectorSpec, x: &[f64], (i, j, k): (usize, usize, usize)) -> Result<f64> {
    let dim = biv.dim();
    check_dim(dim, x.len())?;
    if i == j || j == k || i == k {
        return Err(Error::Contract(format!(
            "jacobi triple ({i},{j},{k}) has repeated indices"
        )));
    }
    if i >= dim || j >= dim || k >= dim {
        return Err(Error::Contract(format!("jacobi triple out of range for dim {dim}")));
    }
    let pi = biv.upper(x)?;
    let dpi = component_derivatives(biv, x)?;
    Ok(jacobiator(&pi, &dpi, dim, (i, j, k)))
}

/// Largest `|jacobi_residual|` over all triples at `x`, with the triple.
/// `None` when the chart has fewer than three coordinates.
pub fn max_jacobi_residual(biv: &BivectorSpec, x: &[f64]) -> Result<Option<(f64, (usize, usize, usize))>> {
    let dim = biv.dim();
    check_dim(dim, x.len())?;
    if dim < 3 {
        return Ok(None);
    }
    let pi = biv.upper(x)?;
    let dpi = component_derivatives(biv, x)?;
    let mut worst = (0.0, (0, 1, 2));
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let r = jacobiator(&pi, &dpi, dim, (i, j, k)).abs();
                if r > worst.0 {
                    worst = (r, (i, j, k));
                }
            }
        }
    }
    Ok(Some(worst))
}

/// Outcome of a Jacobi certificate run over a set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiCertificate {
    pub points_checked: usize,
    pub max_residual: f64,
    pub worst_point: Option<Vec<f64>>,
    pub worst_triple: Option<(usize, usize, usize)>,
    /// Charts of dimension < 3 have no triples to check.
    pub vacuous: bool,
}

impl JacobiCertificate {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

pub fn jacobi_certificate(biv: &BivectorSpec, points: &[Vec<f64>]) -> Result<JacobiCertificate> {
    let mut cert = JacobiCertificate {
        points_checked: points.len(),
        max_residual: 0.0,
        worst_point: None,
        worst_triple: None,
        vacuous: biv.dim() < 3,
    };
    for x in points {
        if let Some((r, triple)) = max_jacobi_residual(biv, x)? {
            if r > cert.max_residual || cert.worst_point.is_none() {
                cert.max_residual = cert.max_residual.max(r);
                cert.worst_point = Some(x.clone());
                cert.worst_triple = Some(triple);
            }
        } else {
            check_dim(biv.dim(), x.len())?;
        }
    }
    Ok(cert)
}

/// Pushforward of a bivector through a map `phi` from its chart to a chart
/// of dimension `out_dim`, evaluated at `x` by central differences:
/// `{phi^a, phi^b}(x)`.
pub fn pushforward(
    biv: &BivectorSpec,
    phi: &dyn Fn(&[f64]) -> Vec<f64>,
    out_dim: usize,
    x: &[f64],
) -> Result<BracketMatrix> {
    let dim = biv.dim();
    check_dim(dim, x.len())?;
    let grads: Vec<Vec<f64>> = (0..out_dim)
        .map(|a| central_gradient(&|y: &[f64]| phi(y)[a], x, gradient_step))
        .collect();
    let mut packed = Vec::with_capacity(out_dim * out_dim.saturating_sub(1) / 2);
    for a in 0..out_dim {
        for b in a + 1..out_dim {
            packed.push(bracket_from_gradients(biv, &grads[a], &grads[b], x)?);
        }
    }
    Ok(BracketMatrix::from_packed(out_dim, &packed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minkowski(eps: f64) -> BivectorSpec {
        BivectorSpec::new(["x+", "x-"])
            .unwrap()
            .with_component(0, 1, move |x| eps * x[0] * x[1])
            .unwrap()
    }

    fn kappa3(eps: f64) -> BivectorSpec {
        let mut b = BivectorSpec::new(["x0", "x1", "x2", "x3"]).unwrap();
        for k in 1..4 {
            b = b.with_component(0, k, move |x| eps * x[k]).unwrap();
        }
        b
    }

    #[test]
    fn packed_index_roundtrip() {
        for dim in 2..7 {
            let mut k = 0;
            for i in 0..dim {
                for j in i + 1..dim {
                    assert_eq!(packed_index(dim, i, j), k);
                    assert_eq!(unpack_index(dim, k), (i, j));
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn bracket_of_light_cone_coordinates() {
        let b = minkowski(0.1);
        let v = eval_bracket(&b, &ScalarField::coordinate(0), &ScalarField::coordinate(1), &[1.0, 1.0]).unwrap();
        assert_eq!(v, 0.1);
    }

    #[test]
    fn bracket_of_function_with_itself_is_exact_zero() {
        let b = kappa3(0.7);
        let f = ScalarField::new(|x| x[0].sin() * x[1] + x[2] * x[3].exp());
        assert_eq!(eval_bracket(&b, &f, &f, &[0.3, -1.2, 0.4, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn kappa_time_space_bracket() {
        let b = kappa3(0.5);
        let v = eval_bracket(&b, &ScalarField::coordinate(0), &ScalarField::coordinate(2), &[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let b = minkowski(0.1);
        let err = eval_bracket(&b, &ScalarField::coordinate(0), &ScalarField::coordinate(1), &[1.0, 2.0, 3.0]);
        assert_eq!(err, Err(Error::DimensionMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn non_finite_component_reports_index() {
        let b = BivectorSpec::new(["a", "b", "c"])
            .unwrap()
            .with_component(1, 2, |x| 1.0 / x[0])
            .unwrap();
        let err = b.upper(&[0.0, 1.0, 1.0]).unwrap_err();
        assert_eq!(err, Error::NonFiniteComponent(1, 2));
    }

    #[test]
    fn chart_validation() {
        assert!(BivectorSpec::new(Vec::<String>::new()).is_err());
        assert!(BivectorSpec::new(["x", "x"]).is_err());
        let b = BivectorSpec::new(["x", "y"]).unwrap();
        assert!(b.clone().with_component(0, 0, |_| 1.0).is_err());
        assert!(b.with_component(0, 1, |_| 1.0).unwrap().with_component(1, 0, |_| 1.0).is_err());
    }

    #[test]
    fn reversed_component_is_negated() {
        let b = BivectorSpec::new(["x", "y"]).unwrap().with_component(1, 0, |_| 2.0).unwrap();
        assert_eq!(b.component(0, 1, &[0.0, 0.0]).unwrap(), -2.0);
        assert_eq!(b.component(1, 0, &[0.0, 0.0]).unwrap(), 2.0);
    }

    #[test]
    fn hamiltonian_vector_field_of_constant_vanishes() {
        let b = kappa3(0.3);
        let v = hamiltonian_vector_field(&b, &ScalarField::constant(4.0), &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(v.iter().all(|c| *c == 0.0));
    }

    #[test]
    fn hamiltonian_vector_field_follows_h_x_convention() {
        // x' = {H, x}: with H = x+ the x- component is {x+, x-} = eps x+ x-.
        let b = minkowski(0.1);
        let v = hamiltonian_vector_field(&b, &ScalarField::coordinate(0), &[2.0, 3.0]).unwrap();
        assert_eq!(v[0], 0.0);
        assert!((v[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn jacobi_constant_bivector() {
        let b = BivectorSpec::new(["a", "b", "c", "d"])
            .unwrap()
            .with_component(0, 1, |_| 1.5)
            .unwrap()
            .with_component(1, 3, |_| -0.5)
            .unwrap()
            .with_component(0, 2, |_| 2.0)
            .unwrap();
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (1, 2, 3), (0, 2, 3)] {
            assert!(jacobi_residual(&b, &[0.3, 4.0, -2.0, 1.0], (i, j, k)).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn jacobi_rejects_repeated_indices_and_reports_vacuous_2d() {
        let b = kappa3(1.0);
        assert!(matches!(jacobi_residual(&b, &[0.0; 4], (0, 0, 1)), Err(Error::Contract(_))));
        let cert = jacobi_certificate(&minkowski(1.0), &[vec![1.0, 2.0]]).unwrap();
        assert!(cert.vacuous);
        assert_eq!(cert.max_residual, 0.0);
    }

    #[test]
    fn jacobi_detects_non_poisson_bivector() {
        // pi^12 = x3, pi^13 = x1, pi^23 = 0. Symbolic expansion of the
        // Jacobiator gives exactly x3.
        let b = BivectorSpec::new(["x1", "x2", "x3"])
            .unwrap()
            .with_component(0, 1, |x| x[2])
            .unwrap()
            .with_component(0, 2, |x| x[0])
            .unwrap();
        let r = jacobi_residual(&b, &[1.0, 1.0, 1.0], (0, 1, 2)).unwrap();
        assert!((r - 1.0).abs() < 1e-9, "{r}");
        let r = jacobi_residual(&b, &[0.2, -0.7, 2.5], (0, 1, 2)).unwrap();
        assert!((r - 2.5).abs() < 1e-8, "{r}");
        // odd permutations flip the sign
        let r = jacobi_residual(&b, &[1.0, 1.0, 1.0], (1, 0, 2)).unwrap();
        assert!((r + 1.0).abs() < 1e-9);
    }

    #[test]
    fn gradient_discrepancy_for_analytic_gradient() {
        let f = ScalarField::with_gradient(
            |x| x[0] * x[0] * x[1] + x[1].sin(),
            |x| vec![2.0 * x[0] * x[1], x[0] * x[0] + x[1].cos()],
        );
        assert!(f.gradient_discrepancy(&[1.3, -0.4]).unwrap() < 1e-6);
        assert!(ScalarField::new(|x| x[0]).gradient_discrepancy(&[1.0]).is_none());
    }

    #[test]
    fn sum_adds_componentwise() {
        let s = minkowski(1.0).sum(&minkowski(2.0)).unwrap();
        assert_eq!(s.component(0, 1, &[2.0, 3.0]).unwrap(), 18.0);
        assert!(minkowski(1.0).sum(&kappa3(1.0)).is_err());
    }

    #[test]
    fn pushforward_through_identity_is_the_bivector() {
        let b = kappa3(0.4);
        let x = [0.1, 0.2, -0.3, 0.5];
        let m = pushforward(&b, &|y| y.to_vec(), 4, &x).unwrap();
        let direct = b.matrix(&x).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((m.get(i, j) - direct.get(i, j)).abs() < 1e-9);
            }
        }
    }
}
