//! Complex matrix arithmetic and the pure and mixed states built on it.

pub mod density;
pub mod matrix;
pub mod state;

pub use density::{
    density_from_pure, expectation, validate_density, validate_matrix, DensityMatrix,
    DensityReport, PHYSICALITY_TOL,
};
pub use matrix::{pauli, ComplexMatrix};
pub use state::{ghz_state, superposition_state, w_state, PureState, SuperpositionSpec};
