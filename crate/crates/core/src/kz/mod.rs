//! The connection `∇ = d − Γ` on the trivial bundle over the configuration
//! space of `n` distinct points in the plane, with
//! `Γ = Σ_{i<j} A_{ij} (dz_i − dz_j)/(z_i − z_j)`.
//!
//! Flatness is decided exactly from the infinitesimal braid relations;
//! [`numeric_curvature_sample`] evaluates `Γ ∧ Γ` at a point as an
//! independent check. [`holonomy`] integrates parallel transport around a
//! loop in double precision.

mod curvature;
mod holonomy;
mod matrix;
mod system;

pub use curvature::{
    curvature_is_zero, numeric_curvature_sample, numeric_curvature_sample_with, sn_equivariance_check,
    ConfigurationPoint, FlatnessWitness,
};
pub use holonomy::{
    base_point, convergence_order, holonomy, holonomy_with, CMatrix, HolonomyOptions, HolonomyResult, LoopPath,
};
pub use matrix::{Matrix, RationalMatrix};
pub use system::{
    check_infinitesimal_relations, pairs, permutation_representation, scalar_system, tensor_swap, transposition_system,
    transposition_system_bounded, InfinitesimalSystem, RelationReport, TriangleViolation, MAX_TENSOR_DIM,
};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KzError {
    #[error("invalid system: {0}")]
    InvalidSystem(&'static str),
    #[error("matrix for pair ({0},{1}) is missing")]
    MissingPair(usize, usize),
    #[error("pair ({0},{1}) is not of the form 1 <= i < j <= n")]
    UnexpectedPair(usize, usize),
    #[error("matrix for pair {pair:?} is {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch {
        pair: (usize, usize),
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("tensor dimension {dim} exceeds the configured bound {bound}")]
    TooLarge { dim: u128, bound: usize },
    #[error("points {0} and {1} are closer than the diagonal clearance")]
    DiagonalProximity(usize, usize),
    #[error("configuration has {got} coordinates, system has {expected} points")]
    PointCount { got: usize, expected: usize },
    #[error("rho is not a representation of the symmetric group: {0}")]
    NotARepresentation(String),
    #[error("system is not flat ({0} relation violations); pass the override to integrate anyway")]
    NotFlat(usize),
    #[error("at least {min} steps are required, got {got}")]
    TooFewSteps { got: usize, min: usize },
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
}
