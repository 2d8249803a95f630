//! Analyses over weighted transducers.

mod determinize;
mod shortest_distance;

pub use determinize::{
    determinize, determinize_with_subsets, DeterminizeOptions, Determinized, Residual, SubsetState,
    DEFAULT_MAX_STATES,
};
pub use shortest_distance::{
    shortest_distance, shortest_distance_bounded, shortest_path, shortest_path_with, Direction,
    DistanceVector, DEFAULT_RELAXATION_BOUND,
};
