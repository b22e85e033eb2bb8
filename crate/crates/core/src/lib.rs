//! Numerical Poisson geometry: bracket engines with Jacobi certificates,
//! projections of cotangent dynamics through abelian symplectic groupoids,
//! deformed spacetime models and free motion on Poisson SU(2).

pub mod error;
pub mod groupoid;
pub mod integrate;
pub mod poisson;
pub mod sampling;
pub mod spacetime;
pub mod special;
pub mod su2;

pub use error::{Error, Result};
pub use integrate::{StepControl, Trajectory};
pub use poisson::{BivectorSpec, ScalarField};
