use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    /// `Y = [[0, -1], [1, 0]]`
    pub const fn y() -> Self {
        Self::new(ZERO, Complex64::new(-1.0, 0.0), ONE, ZERO)
    }

    pub fn diag(p: Complex64, q: Complex64) -> Self {
        Self::new(p, ZERO, ZERO, q)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        Some(Self::new(self.d, -self.b, -self.c, self.a).scale(det.inv()))
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `sum |entries|^2`
    pub fn frobenius_sqr(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `[Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d]`
    pub fn to_real(&self) -> [f64; 8] {
        let e = self.entries();
        [e[0].re, e[0].im, e[1].re, e[1].im, e[2].re, e[2].im, e[3].re, e[3].im]
    }

    pub fn from_real(x: &[f64]) -> Self {
        Self::new(
            Complex64::new(x[0], x[1]),
            Complex64::new(x[2], x[3]),
            Complex64::new(x[4], x[5]),
            Complex64::new(x[6], x[7]),
        )
    }

    /// Closed-form exponential. Writing `M = s I + N` with `N` traceless,
    /// Cayley-Hamilton gives `N^2 = q^2 I`, `q^2 = -det N`, hence
    /// `exp M = e^s (cosh q I + sinh(q)/q N)`.
    pub fn exp(&self) -> Self {
        let s = self.trace() * 0.5;
        let n = *self - Mat2::identity().scale(s);
        let q = (-n.det()).sqrt();
        let (cosh_q, sinhc_q) = if q.norm() < 1e-4 {
            let q2 = q * q;
            (
                ONE + q2 / 2.0 * (ONE + q2 / 12.0 * (ONE + q2 / 30.0)),
                ONE + q2 / 6.0 * (ONE + q2 / 20.0 * (ONE + q2 / 42.0)),
            )
        } else {
            (q.cosh(), q.sinh() / q)
        };
        (Mat2::identity().scale(cosh_q) + n.scale(sinhc_q)).scale(s.exp())
    }

    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}
