//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point cloud must contain at least one point")]
    EmptyPointCloud,

    #[error("point {index} has {found} coordinates, expected {expected}")]
    RaggedPoint {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("point {index} has no coordinates")]
    EmptyPoint { index: usize },

    #[error("coordinate {value} of point {point}, axis {axis}, is not finite")]
    NonFiniteCoordinate { point: usize, axis: usize, value: f64 },

    #[error("scaling factor {value} at axis {axis} must be strictly positive and finite")]
    InvalidScalingFactor { axis: usize, value: f64 },

    #[error("scaling transform needs at least one factor")]
    EmptyTransform,

    #[error("transform sequence is empty")]
    EmptyTransformSequence,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("need at least {needed} points, have {available}")]
    InsufficientPoints { needed: usize, available: usize },

    #[error("filtration radius {value} must be strictly positive")]
    NonPositiveRadius { value: f64 },

    #[error("filtration would exceed the simplex budget of {budget}")]
    SimplexBudgetExceeded { budget: usize },

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("homology dimension {requested} needs simplices of dimension {}, but the filtration was built for max_dim {built}", requested + 1)]
    InsufficientSkeleton { requested: usize, built: usize },

    #[error("diagrams have different homology dimensions: {left} vs {right}")]
    DiagramDimensionMismatch { left: usize, right: usize },

    #[error("invalid persistence diagram: {0}")]
    InvalidDiagram(String),

    #[error("Wasserstein order p = {p} must be finite and >= 1")]
    InvalidWassersteinOrder { p: f64 },

    #[error("{size} diagram points exceed the brute-force oracle limit of {limit}")]
    OracleSizeExceeded { size: usize, limit: usize },

    #[error("invalid scaling distribution: {0}")]
    InvalidDistribution(String),

    #[error("rejection sampling failed to hit the truncation window after {attempts} attempts")]
    RejectionSamplingFailed { attempts: usize },

    #[error(
        "corrected stability bound violated for H{homology_dim}: measured {measured} > bound {bound}; \
         this indicates a defect in the persistence or distance computation"
    )]
    CorrectedBoundViolated {
        homology_dim: usize,
        measured: f64,
        bound: f64,
    },

    #[error("cloud of {points} points exceeds the H{homology_dim} budget of {limit} points")]
    PersistenceBudgetExceeded {
        points: usize,
        limit: usize,
        homology_dim: usize,
    },

    #[error("tolerance epsilon = {value} must be strictly positive and finite")]
    NonPositiveEpsilon { value: f64 },

    #[error("diameter {value} must be strictly positive and finite (a single-point cloud has an unbounded variability cap)")]
    NonPositiveDiameter { value: f64 },

    #[error("boundary-spread count {count} must lie in 1..={axes}")]
    SpreadCountOutOfRange { count: usize, axes: usize },

    #[error("modality group {index} is empty")]
    EmptyGroup { index: usize },

    #[error("modality scaling needs at least one group")]
    NoGroups,

    #[error("CSV parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error("PPM parse error: {0}")]
    PpmParse(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal an exceeded budget or a failed internal
    /// assertion rather than invalid input.
    pub fn is_budget_or_assertion(&self) -> bool {
        matches!(
            self,
            Error::SimplexBudgetExceeded { .. }
                | Error::PersistenceBudgetExceeded { .. }
                | Error::CorrectedBoundViolated { .. }
                | Error::OracleSizeExceeded { .. }
        )
    }
}
