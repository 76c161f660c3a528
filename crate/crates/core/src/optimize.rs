//! Closed-form solution of the variability-minimization problem: find
//! per-axis factors minimizing `Δs = s_max - s_min` subject to
//! `Δs <= epsilon / diam`.
//!
//! The program is convex and collapses to a one-dimensional choice after
//! substitution, so no LP solver is involved. `Δs = 0` (uniform factors) is
//! always feasible and optimal; the boundary-spread strategy is exposed
//! separately for callers that want to exhaust the variability cap, e.g.
//! to push one axis or modality as far as the tolerance allows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::ScalingTransform;

/// How `solve` distributes factors across axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScalingStrategy {
    /// All factors equal to `s_min_choice`; the global optimum `Δs = 0`.
    UniformPreferred,
    /// The last `axes_at_max` axes at `s_min_choice + Δs_max`, the rest at
    /// `s_min_choice`, exhausting the cap (when both levels are occupied).
    BoundarySpread { axes_at_max: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationRequest {
    pub axes: usize,
    pub epsilon: f64,
    pub diam: f64,
    pub strategy: ScalingStrategy,
    /// The low factor level; 1 keeps unscaled axes untouched.
    pub s_min_choice: f64,
}

impl OptimizationRequest {
    pub fn new(axes: usize, epsilon: f64, diam: f64) -> Self {
        Self {
            axes,
            epsilon,
            diam,
            strategy: ScalingStrategy::UniformPreferred,
            s_min_choice: 1.0,
        }
    }

    pub fn with_strategy(mut self, strategy: ScalingStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_s_min_choice(mut self, s_min_choice: f64) -> Self {
        self.s_min_choice = s_min_choice;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub transform: ScalingTransform,
    /// `s_max - s_min` of the returned factors.
    pub achieved_variability: f64,
    /// `Δs_max = epsilon / diam`.
    pub variability_cap: f64,
    /// The guaranteed bottleneck bound of the returned assignment,
    /// computed from the construction (0 when all factors share one level,
    /// `cap * diam` otherwise) so that exhausting the cap reports exactly
    /// `epsilon`.
    pub bound_at_solution: f64,
}

/// Per-group factors for grouped (modality) scaling along with their
/// expansion to one factor per axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalityScaling {
    pub group_factors: Vec<f64>,
    pub transform: ScalingTransform,
}

/// The variability cap `Δs_max = epsilon / diam`.
///
/// A zero diameter is rejected: a single-point cloud is topologically safe
/// under any scaling, so its cap is unbounded rather than a number.
pub fn max_variability(epsilon: f64, diam: f64) -> Result<f64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::NonPositiveEpsilon { value: epsilon });
    }
    if !diam.is_finite() || diam <= 0.0 {
        return Err(Error::NonPositiveDiameter { value: diam });
    }
    Ok(epsilon / diam)
}

/// Solves the minimization problem for the requested strategy.
pub fn solve(request: &OptimizationRequest) -> Result<OptimizationResult> {
    if request.axes == 0 {
        return Err(Error::EmptyTransform);
    }
    if !request.s_min_choice.is_finite() || request.s_min_choice <= 0.0 {
        return Err(Error::InvalidScalingFactor {
            axis: 0,
            value: request.s_min_choice,
        });
    }
    let cap = max_variability(request.epsilon, request.diam)?;
    let low = request.s_min_choice;
    let (factors, spans_both_levels) = match request.strategy {
        ScalingStrategy::UniformPreferred => (vec![low; request.axes], false),
        ScalingStrategy::BoundarySpread { axes_at_max } => {
            if axes_at_max < 1 || axes_at_max > request.axes {
                return Err(Error::SpreadCountOutOfRange {
                    count: axes_at_max,
                    axes: request.axes,
                });
            }
            let mut factors = vec![low; request.axes];
            for f in factors.iter_mut().skip(request.axes - axes_at_max) {
                *f = low + cap;
            }
            (factors, axes_at_max < request.axes)
        }
    };
    let transform = ScalingTransform::new(factors)?;
    let achieved_variability = transform.variability();
    let bound_at_solution = if spans_both_levels { cap * request.diam } else { 0.0 };
    Ok(OptimizationResult {
        transform,
        achieved_variability,
        variability_cap: cap,
        bound_at_solution,
    })
}

/// Grouped scaling: every group but the last at 1, the last at
/// `1 + epsilon / diam`; a single group stays at 1. Each group factor is
/// repeated over the group's axes to form the full transform.
pub fn modality_scaling(
    group_sizes: &[usize],
    epsilon: f64,
    diam: f64,
) -> Result<ModalityScaling> {
    if group_sizes.is_empty() {
        return Err(Error::NoGroups);
    }
    for (index, &size) in group_sizes.iter().enumerate() {
        if size == 0 {
            return Err(Error::EmptyGroup { index });
        }
    }
    let cap = max_variability(epsilon, diam)?;
    let groups = group_sizes.len();
    let group_factors: Vec<f64> = (0..groups)
        .map(|g| if groups > 1 && g == groups - 1 { 1.0 + cap } else { 1.0 })
        .collect();
    let mut factors = Vec::with_capacity(group_sizes.iter().sum());
    for (&factor, &size) in group_factors.iter().zip(group_sizes) {
        factors.extend(std::iter::repeat_n(factor, size));
    }
    Ok(ModalityScaling {
        group_factors,
        transform: ScalingTransform::new(factors)?,
    })
}
