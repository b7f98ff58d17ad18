//! Walk-equitable collections, bounds on blocks of `M̂` with their tightness
//! conditions, and structural classification of `M̂[S, S]`.

mod bounds;
mod classify;
mod equitable;
mod notes;

pub use bounds::{
    msbar_lower_bound, msbar_lower_bound_for, mss_lower_bound, mss_lower_bound_for, mss_upper_bound,
    mss_upper_bound_for, return_probability_bounds, schur_square_sandwich_violation, BoundReport, BoundSide,
    ReturnProbabilityBounds, TIGHT_TOL,
};
pub use classify::{
    automorphism_check, classify_mss, classify_mss_for, is_degree_separating, AutomorphismCheck,
    MssClassification, UniformConditions,
};
pub use equitable::{
    is_walk_equitable, neighborhood_strongly_cospectral, neighborhoods_walk_equitable, strongly_cospectral,
    unmarked_neighborhoods, walk_matrix, EquitMethod, EquitWitness, WalkEquitReport,
};
pub use notes::{adjudications, Adjudication};
