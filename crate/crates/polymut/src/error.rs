use thiserror::Error;

use crate::vector::Space;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("space mismatch: expected {expected:?}, found {found:?}")]
    SpaceMismatch { expected: Space, found: Space },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("the intersection of the half-spaces is empty")]
    EmptyPolyhedron,

    #[error("the polyhedron contains a line")]
    NotPointed,

    #[error("the polyhedron does not contain the origin")]
    OriginNotContained,

    #[error("the width vector takes both signs on the cone generators")]
    MixedSigns,

    #[error("height must be nonpositive")]
    InvalidHeight,

    #[error("the mutation is not defined")]
    UndefinedMutation,

    #[error("the polytope is not full-dimensional in its ambient space")]
    LowerDimensional,

    #[error("the polyhedron is unbounded")]
    Unbounded,

    #[error("the point lies outside the polytope")]
    OutsidePolytope,

    #[error("invalid factor: {0}")]
    InvalidFactor(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid input: {0}")]
    Parse(String),
}
