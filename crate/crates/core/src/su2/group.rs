use num_complex::Complex64;

use super::mat2::Mat2;
use crate::error::{Error, Result};

/// Tolerance on `|det A - 1|` accepted by [`SL2CElement::new`].
pub const DET_TOL: f64 = 1e-9;

/// A unimodular complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL2CElement(Mat2);

impl SL2CElement {
    pub fn new(m: Mat2) -> Result<Self> {
        let r = (m.det() - 1.0).norm();
        if !(r <= DET_TOL) {
            return Err(Error::Contract(format!("det A - 1 = {r:e} exceeds {DET_TOL:e}")));
        }
        Ok(Self(m))
    }

    pub fn from_real(x: &[f64]) -> Result<Self> {
        if x.len() != 8 {
            return Err(Error::DimensionMismatch { expected: 8, got: x.len() });
        }
        Self::new(Mat2::from_real(x))
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn to_real(&self) -> [f64; 8] {
        self.0.to_real()
    }

    pub fn det_residual(&self) -> f64 {
        (self.0.det() - 1.0).norm()
    }
}

/// `u = [[alpha, -conj(gamma)], [gamma, conj(alpha)]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Element {
    pub alpha: Complex64,
    pub gamma: Complex64,
}

impl SU2Element {
    pub fn new(alpha: Complex64, gamma: Complex64) -> Result<Self> {
        let r = (alpha.norm_sqr() + gamma.norm_sqr() - 1.0).abs();
        if !(r <= 1e-10) {
            return Err(Error::Contract(format!("|alpha|^2 + |gamma|^2 - 1 = {r:e}")));
        }
        Ok(Self { alpha, gamma })
    }

    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            gamma: Complex64::new(0.0, 0.0),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.alpha, -self.gamma.conj(), self.gamma, self.alpha.conj())
    }

    /// Reads `alpha`, `gamma` off the first column; the matrix is assumed
    /// to be special unitary.
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        Self::new(m.a, m.c)
    }
}

/// `B = [[rho, n], [0, 1/rho]]` with `rho > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SB2Element {
    pub rho: f64,
    pub n: Complex64,
}

impl SB2Element {
    pub fn new(rho: f64, n: Complex64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() || !n.is_finite() {
            return Err(Error::Contract(format!("SB(2) needs finite rho > 0, got {rho}")));
        }
        Ok(Self { rho, n })
    }

    pub fn identity() -> Self {
        Self {
            rho: 1.0,
            n: Complex64::new(0.0, 0.0),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(
            Complex64::new(self.rho, 0.0),
            self.n,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0 / self.rho, 0.0),
        )
    }

    /// Momentum-space coordinates `(zeta, w)` with `rho = e^{eps zeta}`,
    /// `n = 2 eps w`.
    pub fn zeta_w(&self, eps: f64) -> Result<(f64, Complex64)> {
        if eps == 0.0 {
            return Err(Error::Domain("(zeta, w) coordinates need eps != 0".into()));
        }
        Ok((self.rho.ln() / eps, self.n / (2.0 * eps)))
    }

    pub fn from_zeta_w(zeta: f64, w: Complex64, eps: f64) -> Result<Self> {
        Self::new((eps * zeta).exp(), w * (2.0 * eps))
    }
}

/// Unique factorization `A = u B`, `u ∈ SU(2)`, `B ∈ SB(2)`.
pub fn iwasawa(a: &SL2CElement) -> (SU2Element, SB2Element) {
    let m = a.matrix();
    let rho = (m.a.norm_sqr() + m.c.norm_sqr()).sqrt();
    assert!(rho > 0.0, "first column of a unimodular matrix cannot vanish");
    let alpha = m.a / rho;
    let gamma = m.c / rho;
    let n = alpha.conj() * m.b + gamma.conj() * m.d;
    (SU2Element { alpha, gamma }, SB2Element { rho, n })
}

/// `u B` as an SL(2,C) element.
pub fn compose(u: &SU2Element, b: &SB2Element) -> Mat2 {
    u.matrix() * b.matrix()
}
