//! Dense linear algebra and spectral primitives.

mod eigen;
mod matrix;
mod spectral;

pub use eigen::{sym_eig, EigenDecomposition, CONVERGENCE_TOL, MAX_SWEEPS, SYMMETRY_TOL};
pub use matrix::{dot, norm, RealMatrix, RealVector};
pub use spectral::{dft, largest_singular_value, numerical_rank, ComplexVector};
