//! Posets, reduction maps, k-potential instances and diversity measures.

mod diversity;
mod instance;
mod poset;
mod solve;

pub use diversity::{d_cov, d_phi_star, d_sum, d_sum_pairwise, SolutionTuple};
pub use instance::{
    build_instance, h_value, solutions_from_potential, validate_potential, KPotential,
    KPotentialInstance, PotentialViolation, WeightedArc,
};
pub use poset::{sup_r, Ideal, PosetDag, ReductionMap, BOT, TOP};
pub use solve::{resolve, solve_diverse, Backend, DiverseSolution, Measure};
