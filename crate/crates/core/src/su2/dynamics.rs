//! Free motion on SL(2,C) with hamiltonian `H = tr(A^† A)/2`.

use num_complex::Complex64;

use super::brackets::sl2c_bivector;
use super::group::{iwasawa, SB2Element, SL2CElement};
use super::mat2::{Mat2, I};
use super::momentum::{momentum_isomorphism, LinearMomentum};
use crate::error::{Error, Result};
use crate::integrate::{conservation_drift, integrate, StepControl, Trajectory};
use crate::poisson::{hamiltonian_vector_field, ScalarField};

/// `|det A - 1|` above which a flow state is rescaled back onto SL(2,C).
pub const RENORMALIZE_TOL: f64 = 1e-10;

/// `H = tr(A^† A)/2`.
pub fn free_hamiltonian(a: &Mat2) -> f64 {
    0.5 * a.frobenius_sqr()
}

/// Which biinvariant function drives the flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Su2Hamiltonian {
    /// `H = tr(A^† A)/2`
    #[default]
    Free,
    /// `H' = (arcosh(H) / (2 eps))^2 / 2`
    Prime,
    /// `H'' = (H - 1) / (4 eps^2)`
    DoublePrime,
}

impl Su2Hamiltonian {
    /// The hamiltonian as a field on the eight real coordinates of `A`.
    pub fn field(self, eps: f64) -> Result<ScalarField> {
        if self != Su2Hamiltonian::Free && eps == 0.0 {
            return Err(Error::Domain(format!("{self:?} is undefined at eps = 0")));
        }
        Ok(match self {
            Su2Hamiltonian::Free => ScalarField::with_gradient(|x| 0.5 * x.iter().map(|v| v * v).sum::<f64>(), |x| x.to_vec()),
            Su2Hamiltonian::DoublePrime => {
                let k = 1.0 / (4.0 * eps * eps);
                ScalarField::with_gradient(
                    move |x| k * (0.5 * x.iter().map(|v| v * v).sum::<f64>() - 1.0),
                    move |x| x.iter().map(|v| k * v).collect(),
                )
            }
            Su2Hamiltonian::Prime => {
                let k = 1.0 / (2.0 * eps);
                ScalarField::with_gradient(
                    move |x| {
                        let h = 0.5 * x.iter().map(|v| v * v).sum::<f64>();
                        0.5 * (k * h.max(1.0).acosh()).powi(2)
                    },
                    move |x| {
                        let h: f64 = 0.5 * x.iter().map(|v| v * v).sum::<f64>();
                        // d/dH of (k arcosh H)^2 / 2, with its H -> 1 limit k^2
                        let s = (h * h - 1.0).max(0.0).sqrt();
                        let dh = if s < 1e-8 { k * k } else { k * k * h.acosh() / s };
                        x.iter().map(|v| dh * v).collect()
                    },
                )
            }
        })
    }
}

/// `i eps (H A + Y conj(A) Y)`.
pub fn flow_rhs(a: &Mat2, eps: f64) -> Mat2 {
    let h = free_hamiltonian(a);
    let y = Mat2::y();
    (a.scale(Complex64::new(h, 0.0)) + y * a.conj() * y).scale(I * eps)
}

/// Body velocity `u^{-1} u' = i eps (H + Y conj(B) Y B^{-1})` determined by
/// the momentum `B`.
pub fn legendre_velocity(b: &SB2Element, eps: f64, h: f64) -> Mat2 {
    let bm = b.matrix();
    let y = Mat2::y();
    let binv = bm.inverse().expect("rho > 0 makes B invertible");
    (Mat2::identity().scale(Complex64::new(h, 0.0)) + y * bm.conj() * y * binv).scale(I * eps)
}

/// `A(t) = u0 exp(t Omega) B0`, the exact solution through `A0`.
pub fn closed_form_solution(a0: &SL2CElement, eps: f64, t: f64) -> Mat2 {
    let (u0, b0) = iwasawa(a0);
    let omega = legendre_velocity(&b0, eps, free_hamiltonian(a0.matrix()));
    u0.matrix() * omega.scale(Complex64::new(t, 0.0)).exp() * b0.matrix()
}

/// Projection `u(t) = u0 exp(t Omega)` of the exact solution onto SU(2).
pub fn configurational_geodesic(a0: &SL2CElement, eps: f64, t: f64) -> Mat2 {
    let (u0, b0) = iwasawa(a0);
    let omega = legendre_velocity(&b0, eps, free_hamiltonian(a0.matrix()));
    u0.matrix() * omega.scale(Complex64::new(t, 0.0)).exp()
}

/// Rescales `x` (real chart of A) by `det(A)^{-1/2}` when it has drifted
/// off SL(2,C). Returns whether it did.
pub fn renormalize_det(x: &mut [f64]) -> bool {
    let m = Mat2::from_real(x);
    let det = m.det();
    if (det - 1.0).norm() <= RENORMALIZE_TOL {
        return false;
    }
    let fixed = m.scale(det.sqrt().inv());
    x.copy_from_slice(&fixed.to_real());
    true
}

/// Integrates `A' = {H, A}` using the realified bracket table, with
/// determinant renormalization after each step. Renormalization times are
/// in `stats.corrections`; the largest `|det A - 1|` reached before any
/// renormalization is `stats.constraint_defect`.
pub fn free_flow(a0: &SL2CElement, eps: f64, hamiltonian: Su2Hamiltonian, t_end: f64, step: StepControl) -> Result<Trajectory> {
    let biv = sl2c_bivector(eps);
    let h = hamiltonian.field(eps)?;
    let mut defect: f64 = 0.0;
    let mut traj = integrate(
        |x| hamiltonian_vector_field(&biv, &h, x),
        &a0.to_real(),
        t_end,
        step,
        |_, x| {
            defect = defect.max((Mat2::from_real(x).det() - 1.0).norm());
            renormalize_det(x)
        },
    )?;
    traj.stats.constraint_defect = Some(defect);
    traj.stats.hamiltonian_drift = Some(conservation_drift(&traj, &h)?);
    traj.stats.drift_bound = Some(10.0 * step.tol * t_end);
    Ok(traj)
}

/// Largest `|det A - 1|` along a trajectory on the real chart.
pub fn max_det_residual(traj: &Trajectory) -> f64 {
    traj.points
        .iter()
        .map(|x| (Mat2::from_real(x).det() - 1.0).norm())
        .fold(0.0, f64::max)
}

/// Largest drift of `(rho, re n, im n)` along a trajectory.
pub fn momentum_drift(traj: &Trajectory) -> Result<[f64; 3]> {
    let coords = |x: &[f64]| -> Result<[f64; 3]> {
        // A state that left SL(2,C) is still factorized; the check is on B.
        let m = Mat2::from_real(x);
        let a = SL2CElement::new(m).or_else(|_| SL2CElement::new(m.scale(m.det().sqrt().inv())))?;
        let (_, b) = iwasawa(&a);
        Ok([b.rho, b.n.re, b.n.im])
    };
    let first = coords(traj.points.first().ok_or_else(|| Error::Contract("empty trajectory".into()))?)?;
    let mut drift = [0.0; 3];
    for x in &traj.points {
        let c = coords(x)?;
        for k in 0..3 {
            drift[k] = f64::max(drift[k], (c[k] - first[k]).abs());
        }
    }
    Ok(drift)
}

/// `|H'' - h|` at the momentum that corresponds to `pt` under the momentum
/// isomorphism, with `H''` read off the group element `B(zeta, w)`.
pub fn classical_limit_deviation(pt: &LinearMomentum, eps: f64) -> Result<f64> {
    if eps == 0.0 {
        return Ok(0.0);
    }
    let (zeta, w) = momentum_isomorphism(pt, eps)?;
    let b = SB2Element::from_zeta_w(zeta, w, eps)?;
    let h2 = (free_hamiltonian(&b.matrix()) - 1.0) / (4.0 * eps * eps);
    Ok((h2 - pt.usual_hamiltonian()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;
    use crate::su2::group::SU2Element;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hamiltonian_values() {
        assert_eq!(free_hamiltonian(&Mat2::identity()), 1.0);
        let s: f64 = 1.7;
        let a = Mat2::diag(c(s, 0.0), c(1.0 / s, 0.0));
        assert!((free_hamiltonian(&a) - 0.5 * (s * s + 1.0 / (s * s))).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_is_biinvariant() {
        let mut smp = Sampler::new(5);
        for _ in 0..100 {
            let (a1, g1) = smp.unit_quaternion();
            let (a2, g2) = smp.unit_quaternion();
            let u1 = SU2Element::new(a1, g1).unwrap().matrix();
            let u2 = SU2Element::new(a2, g2).unwrap().matrix();
            let b = SB2Element::new(smp.uniform(0.3, 3.0), smp.complex_in_box()).unwrap().matrix();
            let a = u2 * b;
            let h = free_hamiltonian(&a);
            assert!((free_hamiltonian(&(u1 * a * u2)) - h).abs() < 1e-10);
            assert!(h >= 1.0);
        }
    }

    #[test]
    fn rhs_on_diagonal_example() {
        let a = Mat2::diag(c(2.0, 0.0), c(0.5, 0.0));
        let rhs = flow_rhs(&a, 1.0);
        let want = Mat2::diag(c(0.0, 17.0 / 4.0 - 0.5), c(0.0, 17.0 / 16.0 - 2.0));
        assert!(rhs.dist(&want) < 1e-15, "{rhs:?}");
    }

    #[test]
    fn su2_points_are_equilibria() {
        let mut smp = Sampler::new(3);
        for _ in 0..50 {
            let (al, ga) = smp.unit_quaternion();
            let u = SU2Element::new(al, ga).unwrap().matrix();
            assert!(flow_rhs(&u, 0.7).max_abs() < 1e-12);
        }
    }

    #[test]
    fn legendre_rest_and_diagonal() {
        assert!(legendre_velocity(&SB2Element::identity(), 0.4, 1.0).max_abs() < 1e-16);
        let rho: f64 = 1.6;
        let b = SB2Element::new(rho, c(0.0, 0.0)).unwrap();
        let h = 0.5 * (rho * rho + 1.0 / (rho * rho));
        let om = legendre_velocity(&b, 0.4, h);
        let want = Mat2::diag(c(h - rho.powi(-2), 0.0), c(h - rho * rho, 0.0)).scale(I * 0.4);
        assert!(om.dist(&want) < 1e-15);
    }

    #[test]
    fn legendre_velocity_is_in_su2_algebra() {
        let b = SB2Element::new(0.7, c(0.4, -1.1)).unwrap();
        let h = free_hamiltonian(&b.matrix());
        let om = legendre_velocity(&b, 0.3, h);
        assert!(om.trace().norm() < 1e-15);
        assert!((om + om.adjoint()).max_abs() < 1e-15);
    }

    #[test]
    fn closed_form_solves_the_equation_of_motion() {
        let a0 = SL2CElement::new(SU2Element::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap().matrix() * SB2Element::new(1.4, c(0.3, 0.2)).unwrap().matrix()).unwrap();
        let eps = 0.3;
        let t = 0.7;
        let dt = 1e-5;
        let deriv = (closed_form_solution(&a0, eps, t + dt) - closed_form_solution(&a0, eps, t - dt)).scale(c(0.5 / dt, 0.0));
        let a = closed_form_solution(&a0, eps, t);
        assert!(deriv.dist(&flow_rhs(&a, eps)) < 1e-8);
    }

    #[test]
    fn renormalization_restores_unit_determinant() {
        let mut x = Mat2::identity().scale(c(1.01, 0.02)).to_real();
        assert!(renormalize_det(&mut x));
        assert!((Mat2::from_real(&x).det() - 1.0).norm() < 1e-14);
        assert!(!renormalize_det(&mut x));
    }

    #[test]
    fn h_double_prime_tends_to_h() {
        let pt = LinearMomentum::new(0.6, -0.3, 0.8);
        let eps = [1e-2, 5e-3, 2.5e-3];
        let devs: Vec<f64> = eps.iter().map(|&e| classical_limit_deviation(&pt, e).unwrap()).collect();
        let slope = crate::special::convergence_slope(&eps, &devs).unwrap();
        assert!((slope - 2.0).abs() < 0.1, "{slope} {devs:?}");
        // leading term r^4 eps^2 / 6
        let r = pt.radius();
        assert!((devs[0] / (r.powi(4) * 1e-4 / 6.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn alternative_hamiltonians() {
        assert!(Su2Hamiltonian::Prime.field(0.0).is_err());
        let a = SB2Element::new(1.5, c(0.3, 0.1)).unwrap().matrix().to_real();
        for kind in [Su2Hamiltonian::Free, Su2Hamiltonian::Prime, Su2Hamiltonian::DoublePrime] {
            let f = kind.field(0.4).unwrap();
            assert!(f.gradient_discrepancy(&a).unwrap() < 1e-6, "{kind:?}");
        }
    }
}
