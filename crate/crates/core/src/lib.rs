//! Persistent homology of finite Euclidean point clouds and the stability
//! of their persistence diagrams under per-axis scaling.
//!
//! The crate measures how much a non-uniform scaling transform perturbs
//! the topology of a point cloud, checks the perturbation against bounds
//! expressed in the scaling variability `Δs = s_max - s_min`, and solves
//! for factors that minimize `Δs` under a perturbation tolerance.
//!
//! * [`metric`] — point clouds, distance matrices, scaling transforms
//! * [`filtration`] — Vietoris–Rips filtration construction
//! * [`persistence`] — boundary-matrix reduction and diagrams
//! * [`distance`] — bottleneck and p-Wasserstein diagram distances
//! * [`stability`] — variability bounds, empirical verification, Monte Carlo
//! * [`optimize`] — closed-form factor selection under a tolerance
//! * [`io`] — CSV/PPM ingestion and the JSON wire formats

pub mod distance;
pub mod error;
pub mod filtration;
pub mod io;
pub mod metric;
pub mod optimize;
pub mod persistence;
pub mod stability;

pub use distance::{
    bottleneck, bottleneck_matching, brute_force_bottleneck, wasserstein, wasserstein_matching,
    DiagramMatching, MatchEnd, BRUTE_FORCE_LIMIT,
};
pub use error::{Error, Result};
pub use filtration::{
    build_filtration, build_filtration_with_budget, Filtration, Simplex, DEFAULT_SIMPLEX_BUDGET,
};
pub use metric::{DistanceMatrix, PointCloud, ScalingTransform};
pub use optimize::{
    max_variability, modality_scaling, solve, ModalityScaling, OptimizationRequest,
    OptimizationResult, ScalingStrategy,
};
pub use persistence::{compute_persistence, compute_persistence_opts, PersistenceDiagram};
pub use stability::{
    corrected_bound, corrected_factor, cumulative_bound, cumulative_bound_corrected,
    default_point_budget, dimension_bound, dimension_bound_corrected,
    expected_variability_uniform, monte_carlo_expected_bound, paper_bound, trial_rng,
    verify_stability, MonteCarloReport, RandomScalingSpec, ScalingDistribution, StabilityReport,
    WassersteinMeasurement, BOUND_TOLERANCE,
};

// Re-exported so downstream crates can seed campaign RNGs without taking
// their own rand_chacha dependency.
pub use rand_chacha::ChaCha8Rng;
