//! Symplectic spectral toolkit.
//!
//! Symplectic eigenvalues and Williamson normal forms of positive-definite
//! and positive-semidefinite quadratic forms, simultaneous diagonalization of
//! Poisson-commuting families, and a few consumers of those normal forms
//! (linear Hamiltonian flow, Gaussian partition functions, capacities).
//!
//! Coordinates are ordered `(x₁,…,xₙ,p₁,…,pₙ)` and `J = [[0, I], [−I, 0]]`.

pub mod applications;
pub mod cli;
pub mod degenerate;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod simultaneous;
pub mod symplectic;
pub mod tolerance;
pub mod williamson;

pub use error::{Error, Result};
pub use linalg::{matrix_power, nullspace, symmetric_eigen, EigenDecomposition};
pub use matrix::Matrix;
pub use symplectic::{
    is_orthosymplectic, is_symplectic, standard_symplectic_form, symplectic_gram_schmidt,
};
pub use tolerance::{Tolerances, CLUSTER_GAP};
pub use williamson::{
    eigenspace_projectors, flow_matrix, hamiltonian_flow, is_orthosymplectically_diagonalizable,
    orthosymplectic_decompose, symplectic_spectrum, williamson_decompose, SpectralProjector,
    WilliamsonDecomposition,
};
pub use degenerate::{
    degenerate_williamson, hormander_psd_normal_form, kernel_is_symplectic, DegenerateDecomposition,
    HormanderPSDForm,
};
pub use simultaneous::{
    family_diagonalize, geometric_mean, poisson_commutator, poisson_commutes, power_commutator_residual,
    simultaneous_williamson, simultaneous_williamson_psd, SimDiagResult,
};
pub use applications::{
    capacity, gromov_gap, hormander_constraints, nonsqueezing_embeddable, partition_interacting,
    partition_noninteracting, ConstraintReport, PhaseSpaceRegion, QuadraticHamiltonian, ThermoParams,
};
