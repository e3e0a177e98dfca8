//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, IsoError>;

/// Everything that can go wrong while validating inputs or running solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsoError {
    #[error("a polygon needs at least 3 sides, got {n}")]
    TooFewSides { n: usize },
    #[error("side {index} is not a positive finite length (value {value})")]
    NonPositiveSide { index: usize, value: f64 },
    #[error("polygon inequality violated: side {index} is at least half the perimeter")]
    PolygonInequalityViolated { index: usize },
    #[error("vertex list is degenerate (repeated vertices or vanishing area)")]
    DegenerateVertices,
    #[error("invalid count {n} for this family")]
    BadCount { n: usize },
    #[error("radius must be positive, got {value}")]
    NonPositiveRadius { value: f64 },
    #[error("circumradius solver hit the iteration cap")]
    NoConvergence,
    #[error("two maximal sides are exactly tied in a center-outside instance")]
    AmbiguousMax,
    #[error("operation requires the circumcenter strictly inside the polygon")]
    CenterNotInside,
    #[error("area must be positive")]
    NonPositiveArea,
    #[error("perturbation must satisfy |eps| < pi/n")]
    EpsilonTooLarge,
    #[error("alpha must lie strictly inside (0, pi)")]
    AlphaOutOfRange,
    #[error("theta must lie in [0, pi - alpha]")]
    ThetaOutOfRange,
    #[error("closing chord dominates the arc chords; polygon inequality fails")]
    ChordDominates,
}
