//! Consumers of the normal forms: Gaussian partition functions, constraints
//! between a degenerate Hamiltonian and a nondegenerate extension, and
//! symplectic capacities of balls, cylinders and ellipsoids.

mod capacity;
mod constraints;
mod partition;

pub use capacity::{capacity, nonsqueezing_embeddable, PhaseSpaceRegion};
pub use constraints::{gromov_gap, hormander_constraints, ConstraintReport};
pub use partition::{partition_interacting, partition_noninteracting, QuadraticHamiltonian, ThermoParams};
