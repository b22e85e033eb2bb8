//! Poisson SU(2) realized inside SL(2,C) = SU(2) · SB(2).

pub mod brackets;
pub mod dynamics;
pub mod group;
pub mod mat2;
pub mod momentum;

pub use brackets::{sl2c_bivector, sl2c_bracket_table, SL2CBracketTable, ENTRY_NAMES, REAL_NAMES};
pub use dynamics::{
    closed_form_solution, configurational_geodesic, flow_rhs, free_flow, free_hamiltonian, legendre_velocity,
    classical_limit_deviation, max_det_residual, momentum_drift, renormalize_det, Su2Hamiltonian,
};
pub use group::{compose, iwasawa, SB2Element, SL2CElement, SU2Element};
pub use mat2::Mat2;
pub use momentum::{
    casimir_r_squared, hamiltonian_relations, inverse_momentum_isomorphism, isomorphism_factor, linear_bivector,
    momentum_bivector, momentum_bracket, momentum_isomorphism, HamiltonianRelations, LinearMomentum, RelationInput,
};
