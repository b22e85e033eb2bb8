//! Momentum space SB(2) in coordinates `(zeta, w)`, the linear structure on
//! su(2)*, the isomorphism between them and the hamiltonian relations.

use num_complex::Complex64;

use super::mat2::I;
use crate::error::{Error, Result};
use crate::poisson::BivectorSpec;
use crate::special::sinhc;

/// `asinh(t) / t`, continuous at 0.
fn asinhc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 * (1.0 - 9.0 * t2 / 20.0)
    } else {
        t.asinh() / t
    }
}

/// `({zeta, w}, {conj(w), w}) = (-i w, i sinh(2 eps zeta)/eps)`.
pub fn momentum_bracket(zeta: f64, w: Complex64, eps: f64) -> (Complex64, Complex64) {
    (-I * w, I * (2.0 * zeta * sinhc(2.0 * eps * zeta)))
}

/// The momentum-space structure on `(zeta, re w, im w)`:
/// `{zeta, re w} = im w`, `{zeta, im w} = -re w`,
/// `{re w, im w} = sinh(2 eps zeta)/(2 eps)`.
pub fn momentum_bivector(eps: f64) -> BivectorSpec {
    BivectorSpec::from_packed(["zeta", "re_w", "im_w"], move |x| {
        vec![x[2], -x[1], x[0] * sinhc(2.0 * eps * x[0])]
    })
    .expect("static chart")
}

/// Linear structure on su(2)*: `{x, y} = z`, `{y, z} = x`, `{z, x} = y`.
pub fn linear_bivector() -> BivectorSpec {
    BivectorSpec::from_packed(["x", "y", "z"], |v| vec![v[2], -v[1], v[0]]).expect("static chart")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMomentum {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl LinearMomentum {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn radius(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// `h = r^2 / 2`
    pub fn usual_hamiltonian(&self) -> f64 {
        0.5 * (self.x * self.x + self.y * self.y + self.z * self.z)
    }
}

/// `sqrt((sinh^2(eps r) - sinh^2(eps z)) / (eps^2 (r^2 - z^2)))`.
///
/// Evaluated as `sqrt(sinhc(eps (r - z)) sinhc(eps (r + z)))`, which is
/// regular on the axis `r = |z|`. `rho2 = r^2 - z^2` is passed separately so
/// the small difference is never formed by cancellation.
pub fn isomorphism_factor(r: f64, z: f64, rho2: f64, eps: f64) -> Result<f64> {
    if !(r >= z.abs()) || rho2 < 0.0 {
        return Err(Error::Contract(format!("isomorphism needs r >= |z| (r = {r}, z = {z})")));
    }
    let (diff, sum) = if z >= 0.0 {
        let s = r + z;
        (if s > 0.0 { rho2 / s } else { 0.0 }, s)
    } else {
        let d = r - z;
        (d, if d > 0.0 { rho2 / d } else { 0.0 })
    };
    Ok((sinhc(eps * diff) * sinhc(eps * sum)).sqrt())
}

/// `zeta = z`, `w = (1/eps) sqrt((sinh^2 eps r - sinh^2 eps z)/(r^2 - z^2)) (x + i y)`.
pub fn momentum_isomorphism(pt: &LinearMomentum, eps: f64) -> Result<(f64, Complex64)> {
    if ![pt.x, pt.y, pt.z, eps].iter().all(|v| v.is_finite()) {
        return Err(Error::Contract("non-finite momentum".into()));
    }
    let rho2 = pt.x * pt.x + pt.y * pt.y;
    let f = isomorphism_factor(pt.radius(), pt.z, rho2, eps)?;
    Ok((pt.z, Complex64::new(pt.x, pt.y) * f))
}

/// Inverse of [`momentum_isomorphism`].
pub fn inverse_momentum_isomorphism(zeta: f64, w: Complex64, eps: f64) -> Result<LinearMomentum> {
    let r_big = casimir_r_squared(zeta, w, eps).sqrt();
    let r = r_big * asinhc(eps * r_big);
    // |x + i y| is fixed by the factor, which is insensitive to rounding in r - z
    let z = zeta;
    let diff = (r - z.abs()).max(0.0);
    let f = (sinhc(eps * diff) * sinhc(eps * (r + z.abs()))).sqrt();
    let xy = w / f;
    Ok(LinearMomentum::new(xy.re, xy.im, z))
}

/// `R^2 = |w|^2 + (sinh(eps zeta)/eps)^2`.
pub fn casimir_r_squared(zeta: f64, w: Complex64, eps: f64) -> f64 {
    let s = zeta * sinhc(eps * zeta);
    w.norm_sqr() + s * s
}

/// One of the mutually determined quantities `H`, `h`, `R^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelationInput {
    /// `H = tr(A^† A)/2`
    Big(f64),
    /// `h = r^2/2`
    Small(f64),
    /// `R^2`
    RSquared(f64),
}

/// `H = cosh(2 eps r) = 1 + 2 eps^2 R^2`, `eps R = sinh(eps r)`,
/// `H'' = R^2/2 = (H - 1)/(4 eps^2)`, `H' = (arcosh(H)/(2 eps))^2/2 = h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianRelations {
    pub big_h: f64,
    pub small_h: f64,
    pub r_squared: f64,
    pub h_double_prime: f64,
    pub h_prime: f64,
}

pub fn hamiltonian_relations(input: RelationInput, eps: f64) -> Result<HamiltonianRelations> {
    let eps = eps.abs();
    let r = match input {
        RelationInput::Big(h) => {
            if !(h >= 1.0) {
                return Err(Error::Domain(format!("H = {h} < 1 is not reached on SL(2,C)")));
            }
            if eps == 0.0 {
                return Err(Error::Domain("H is identically 1 at eps = 0; h cannot be recovered".into()));
            }
            h.acosh() / (2.0 * eps)
        }
        RelationInput::Small(h) => {
            if !(h >= 0.0) {
                return Err(Error::Domain(format!("h = {h} is negative")));
            }
            (2.0 * h).sqrt()
        }
        RelationInput::RSquared(r2) => {
            if !(r2 >= 0.0) {
                return Err(Error::Domain(format!("R^2 = {r2} is negative")));
            }
            let rb = r2.sqrt();
            rb * asinhc(eps * rb)
        }
    };
    let s = r * sinhc(eps * r);
    let r_squared = match input {
        RelationInput::RSquared(r2) => r2,
        _ => s * s,
    };
    let big_h = match input {
        RelationInput::Big(h) => h,
        _ => 1.0 + 2.0 * eps * eps * r_squared,
    };
    let small_h = match input {
        RelationInput::Small(h) => h,
        _ => 0.5 * r * r,
    };
    let h_prime = if eps == 0.0 {
        small_h
    } else {
        0.5 * (big_h.acosh() / (2.0 * eps)).powi(2)
    };
    Ok(HamiltonianRelations {
        big_h,
        small_h,
        r_squared,
        h_double_prime: 0.5 * r_squared,
        h_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::{eval_bracket, hamiltonian_vector_field, pushforward, ScalarField};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn momentum_bracket_zeros_and_limit() {
        assert_eq!(momentum_bracket(0.7, c(0.0, 0.0), 0.3).0, c(0.0, 0.0));
        assert_eq!(momentum_bracket(0.0, c(1.0, 2.0), 0.3).1, c(0.0, 0.0));
        let (_, ww) = momentum_bracket(0.6, c(1.0, 2.0), 1e-9);
        assert!((ww - c(0.0, 1.2)).norm() < 1e-12);
    }

    #[test]
    fn realified_momentum_bivector_matches_complex_brackets() {
        let eps = 0.45;
        let b = momentum_bivector(eps);
        let x = [0.3, -0.8, 0.5];
        let br = |i, j| eval_bracket(&b, &ScalarField::coordinate(i), &ScalarField::coordinate(j), &x).unwrap();
        let (zw, ww) = momentum_bracket(x[0], c(x[1], x[2]), eps);
        assert!((c(br(0, 1), br(0, 2)) - zw).norm() < 1e-15);
        // {conj w, w} = 2 i {re w, im w}
        assert!((c(0.0, 2.0 * br(1, 2)) - ww).norm() < 1e-15);
    }

    #[test]
    fn linear_bivector_matches_complex_form() {
        let b = linear_bivector();
        let v = [0.2, -0.4, 0.9];
        let br = |i, j| eval_bracket(&b, &ScalarField::coordinate(i), &ScalarField::coordinate(j), &v).unwrap();
        // {x - iy, x + iy} = 2i {x, y} = 2 i z
        assert!((br(0, 1) - v[2]).abs() < 1e-15);
        // {z, x + iy} = -i (x + iy) = y - i x
        assert!((br(2, 0) - v[1]).abs() < 1e-15 && (br(2, 1) + v[0]).abs() < 1e-15);
    }

    #[test]
    fn isomorphism_on_equator_and_small_eps() {
        let (x, y) = (0.6, -0.3);
        let r = f64::hypot(x, y);
        let eps = 0.7;
        let (z, w) = momentum_isomorphism(&LinearMomentum::new(x, y, 0.0), eps).unwrap();
        assert_eq!(z, 0.0);
        let want = c(x, y) * ((eps * r).sinh() / (eps * r));
        assert!((w - want).norm() < 1e-15);
        let (z, w) = momentum_isomorphism(&LinearMomentum::new(x, y, 0.4), 1e-9).unwrap();
        assert_eq!(z, 0.4);
        assert!((w - c(x, y)).norm() < 1e-15);
    }

    #[test]
    fn factor_is_continuous_across_the_axis() {
        let eps = 0.5;
        for z in [0.8, -0.8] {
            let on_axis = isomorphism_factor(0.8, z, 0.0, eps).unwrap();
            // direct generic formula just off the axis
            let rho2: f64 = 1e-6;
            let r = (rho2 + z * z).sqrt();
            let direct = (((eps * r).sinh().powi(2) - (eps * z).sinh().powi(2)) / rho2).sqrt() / eps;
            assert!((on_axis - direct).abs() < 1e-6, "{on_axis} {direct}");
        }
        assert!(isomorphism_factor(0.5, 0.8, 0.0, eps).is_err());
        assert_eq!(isomorphism_factor(0.0, 0.0, 0.0, eps).unwrap(), 1.0);
    }

    #[test]
    fn isomorphism_pushes_linear_to_momentum_structure() {
        let eps = 0.3;
        let p = [0.4, 0.1, 0.7];
        let map = |v: &[f64]| {
            let (z, w) = momentum_isomorphism(&LinearMomentum::new(v[0], v[1], v[2]), eps).unwrap();
            vec![z, w.re, w.im]
        };
        let pushed = pushforward(&linear_bivector(), &map, 3, &p).unwrap();
        let image = map(&p);
        let target = momentum_bivector(eps).matrix(&image).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((pushed.get(i, j) - target.get(i, j)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn inverse_isomorphism_roundtrip() {
        for (x, y, z, eps) in [(0.4, 0.1, 0.7, 0.3), (-1.2, 0.5, -0.3, 0.9), (0.0, 0.0, 0.5, 0.4), (1e-5, 0.0, -2.0, 0.6)] {
            let pt = LinearMomentum::new(x, y, z);
            let (zeta, w) = momentum_isomorphism(&pt, eps).unwrap();
            let back = inverse_momentum_isomorphism(zeta, w, eps).unwrap();
            assert!((back.x - x).abs() < 1e-12 && (back.y - y).abs() < 1e-12 && (back.z - z).abs() < 1e-15, "{back:?}");
        }
    }

    #[test]
    fn casimir_correspondence() {
        let eps = 0.35;
        let pt = LinearMomentum::new(0.9, -0.2, 0.5);
        let (z, w) = momentum_isomorphism(&pt, eps).unwrap();
        let big_r = casimir_r_squared(z, w, eps).sqrt();
        assert!((eps * big_r - (eps * pt.radius()).sinh()).abs() < 1e-12);
    }

    #[test]
    fn r_squared_is_a_casimir() {
        let eps = 0.5;
        let b = momentum_bivector(eps);
        let f = ScalarField::new(move |x| casimir_r_squared(x[0], c(x[1], x[2]), eps));
        let v = hamiltonian_vector_field(&b, &f, &[0.3, -0.6, 0.2]).unwrap();
        assert!(v.iter().all(|c| c.abs() < 1e-8), "{v:?}");
    }

    #[test]
    fn relations_at_rest_and_domain_errors() {
        let rel = hamiltonian_relations(RelationInput::Small(0.0), 0.4).unwrap();
        assert_eq!((rel.big_h, rel.r_squared, rel.h_double_prime), (1.0, 0.0, 0.0));
        assert!(hamiltonian_relations(RelationInput::Big(0.5), 0.4).is_err());
        assert!(hamiltonian_relations(RelationInput::Small(-1.0), 0.4).is_err());
        assert!(hamiltonian_relations(RelationInput::RSquared(-1.0), 0.4).is_err());
        assert!(hamiltonian_relations(RelationInput::Big(1.5), 0.0).is_err());
    }

    #[test]
    fn relations_are_consistent() {
        let eps = 0.3;
        let rel = hamiltonian_relations(RelationInput::Small(1.7), eps).unwrap();
        let r = (2.0 * 1.7f64).sqrt();
        assert!((rel.big_h - (2.0 * eps * r).cosh()).abs() < 1e-12);
        assert!((rel.r_squared - (rel.big_h - 1.0) / (2.0 * eps * eps)).abs() < 1e-12);
        assert!((rel.h_double_prime - (rel.big_h - 1.0) / (4.0 * eps * eps)).abs() < 1e-12);
        assert!((rel.h_prime - 1.7).abs() < 1e-12);
    }
}
