//! Coherent-state overlaps for the determinant representation, Plücker
//! coordinates and the energy (covariant symbol) of a diagonal Hamiltonian.

mod energy;
mod overlap;
mod plucker;

pub use overlap::{
    cayley_distance, cayley_distance_frames, diastasis, kernel, normalized_overlap, OverlapValue, ZERO_OVERLAP,
};
pub use plucker::{
    g24_relation, plucker_embed, plucker_of_matrix, plucker_overlap_oracle, subset_rank, subsets, PluckerVector,
};
pub use energy::{
    critical_points, energy, energy_gradient, CriticalPoint, EnergySpec, CRITICAL_TOL, DISTINCT_GAP,
};
