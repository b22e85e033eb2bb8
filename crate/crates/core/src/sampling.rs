//! Seeded point generators for certificates. The generator is
//! `ChaCha8Rng` from `rand_chacha` 0.3, named so runs can be reproduced.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GENERATOR_NAME: &str = "ChaCha8Rng/rand_chacha-0.3";

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    /// A point of `[-1, 1]^dim`.
    pub fn unit_box(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.uniform(-1.0, 1.0)).collect()
    }

    pub fn unit_box_points(&mut self, dim: usize, count: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| self.unit_box(dim)).collect()
    }

    pub fn complex_in_box(&mut self) -> Complex64 {
        Complex64::new(self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0))
    }

    /// A point uniformly distributed on the unit 3-sphere, as two complex
    /// numbers with `|a|^2 + |b|^2 = 1`.
    pub fn unit_quaternion(&mut self) -> (Complex64, Complex64) {
        loop {
            let v: Vec<f64> = (0..4).map(|_| self.uniform(-1.0, 1.0)).collect();
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                return (Complex64::new(v[0] / n, v[1] / n), Complex64::new(v[2] / n, v[3] / n));
            }
        }
    }
}
