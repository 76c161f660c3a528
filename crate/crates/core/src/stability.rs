//! Stability bounds on diagram perturbation under scaling, their empirical
//! verification, and Monte Carlo estimation for random scaling factors.
//!
//! Two perturbation factors are carried side by side:
//!
//! * the *nominal* factor `Δs = s_max - s_min` (the `paper` fields), which
//!   bounds the relative distance distortion only when the factors
//!   straddle 1 (`s_min <= 1 <= s_max`), and
//! * the *corrected* factor `max(s_max - 1, 1 - s_min)`, which bounds it
//!   for every positive transform.
//!
//! [`verify_stability`] measures the actual bottleneck (and optionally
//! Wasserstein) distance between the diagrams of a cloud and its scaled
//! image and reports both bounds with their pass/fail flags. A corrected
//! bound violation is impossible mathematically, so it is escalated to a
//! hard error: it would mean the persistence or distance computation is
//! broken, not the bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::distance::{bottleneck, wasserstein};
use crate::error::{Error, Result};
use crate::filtration::build_filtration;
use crate::metric::{DistanceMatrix, PointCloud, ScalingTransform};
use crate::persistence::compute_persistence;

/// Absolute slack used when comparing measured distances against bounds;
/// all quantities are O(diam), so this is pure floating-point headroom.
pub const BOUND_TOLERANCE: f64 = 1e-9;

const MAX_REJECTION_ATTEMPTS: usize = 100_000;

/// Outcome of one measured-versus-bound comparison for one homology
/// dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub homology_dim: usize,
    pub measured_bottleneck: f64,
    pub measured_wasserstein: Option<WassersteinMeasurement>,
    /// `Δs * diam`.
    pub bound_paper: f64,
    /// `max(s_max - 1, 1 - s_min, 0) * diam`.
    pub bound_corrected: f64,
    /// `s_min <= 1 <= s_max`; `bound_paper` is only guaranteed here.
    pub regime_contains_one: bool,
    pub holds_paper: bool,
    pub holds_corrected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WassersteinMeasurement {
    pub p: f64,
    pub value: f64,
}

/// Per-axis distribution for random scaling factors. Supports must be
/// strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ScalingDistribution {
    Uniform { lo: f64, hi: f64 },
    TruncatedNormal { mean: f64, stddev: f64, lo: f64, hi: f64 },
}

impl ScalingDistribution {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = match *self {
            ScalingDistribution::Uniform { lo, hi } => (lo, hi),
            ScalingDistribution::TruncatedNormal { mean, stddev, lo, hi } => {
                if !mean.is_finite() {
                    return Err(Error::InvalidDistribution(format!(
                        "mean {mean} must be finite"
                    )));
                }
                if !stddev.is_finite() || stddev <= 0.0 {
                    return Err(Error::InvalidDistribution(format!(
                        "stddev {stddev} must be strictly positive"
                    )));
                }
                (lo, hi)
            }
        };
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "support [{lo}, {hi}] must be strictly positive and finite"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidDistribution(format!(
                "support bounds are reversed: {lo} > {hi}"
            )));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut impl Rng) -> Result<f64> {
        match *self {
            ScalingDistribution::Uniform { lo, hi } => {
                if lo == hi {
                    Ok(lo)
                } else {
                    Ok(rng.random_range(lo..=hi))
                }
            }
            ScalingDistribution::TruncatedNormal { mean, stddev, lo, hi } => {
                let normal = Normal::new(mean, stddev)
                    .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
                for _ in 0..MAX_REJECTION_ATTEMPTS {
                    let x = normal.sample(rng);
                    if (lo..=hi).contains(&x) {
                        return Ok(x);
                    }
                }
                Err(Error::RejectionSamplingFailed {
                    attempts: MAX_REJECTION_ATTEMPTS,
                })
            }
        }
    }
}

/// Specification of a Monte Carlo campaign over i.i.d. per-axis factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomScalingSpec {
    pub distribution: ScalingDistribution,
    pub axes: usize,
    pub trials: usize,
    pub seed: u64,
}

impl RandomScalingSpec {
    pub fn validate(&self) -> Result<()> {
        self.distribution.validate()?;
        if self.axes == 0 {
            return Err(Error::InvalidDistribution("axis count must be >= 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidDistribution("trial count must be >= 1".into()));
        }
        Ok(())
    }
}

/// Monte Carlo estimate of `E[Δs]` and the implied expected bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub mean_variability: f64,
    pub std_error: f64,
    pub expected_bound: f64,
    pub trials: usize,
    pub seed: u64,
}

/// The nominal bound `Δs * diam`, guaranteed only when the factors
/// straddle 1.
pub fn paper_bound(transform: &ScalingTransform, diam: f64) -> f64 {
    transform.variability() * diam
}

/// The perturbation factor valid for every positive transform.
pub fn corrected_factor(transform: &ScalingTransform) -> f64 {
    (transform.s_max() - 1.0).max(1.0 - transform.s_min()).max(0.0)
}

/// `max(s_max - 1, 1 - s_min, 0) * diam`.
pub fn corrected_bound(transform: &ScalingTransform, diam: f64) -> f64 {
    corrected_factor(transform) * diam
}

/// Per-dimension bound `Δs * diam_k`.
pub fn dimension_bound(transform: &ScalingTransform, dm: &DistanceMatrix, k: usize) -> Result<f64> {
    Ok(transform.variability() * dm.diameter_k(k)?)
}

/// Per-dimension bound with the corrected factor.
pub fn dimension_bound_corrected(
    transform: &ScalingTransform,
    dm: &DistanceMatrix,
    k: usize,
) -> Result<f64> {
    Ok(corrected_factor(transform) * dm.diameter_k(k)?)
}

/// Bound for a sequence of transforms applied in order:
/// `(prod s_max - prod s_min) * diam`.
pub fn cumulative_bound(transforms: &[ScalingTransform], diam: f64) -> Result<f64> {
    let (max_product, min_product) = cumulative_products(transforms)?;
    Ok((max_product - min_product) * diam)
}

/// Corrected cumulative variant, valid for any positive sequence:
/// `max(prod s_max - 1, 1 - prod s_min, 0) * diam`.
pub fn cumulative_bound_corrected(transforms: &[ScalingTransform], diam: f64) -> Result<f64> {
    let (max_product, min_product) = cumulative_products(transforms)?;
    Ok((max_product - 1.0).max(1.0 - min_product).max(0.0) * diam)
}

fn cumulative_products(transforms: &[ScalingTransform]) -> Result<(f64, f64)> {
    let first = transforms.first().ok_or(Error::EmptyTransformSequence)?;
    let dim = first.dim();
    let mut max_product = 1.0;
    let mut min_product = 1.0;
    for t in transforms {
        if t.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: t.dim(),
            });
        }
        max_product *= t.s_max();
        min_product *= t.s_min();
    }
    Ok((max_product, min_product))
}

/// Closed-form `E[Δs] = (b - a)(1 - 2 / (n + 1))` for n i.i.d. factors
/// uniform on `[a, b]`. Valid for `0 < a <= b` and `n >= 1`.
pub fn expected_variability_uniform(lo: f64, hi: f64, axes: usize) -> f64 {
    (hi - lo) * (1.0 - 2.0 / (axes as f64 + 1.0))
}

/// RNG for one trial of a seeded campaign. Each trial gets its own ChaCha
/// stream, so results do not depend on execution order or parallelism.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Estimates `E[Δs]` by sampling, reporting the standard error of the mean
/// and the implied expected bound `E[Δs] * diam`. Deterministic for a given
/// seed.
pub fn monte_carlo_expected_bound(spec: &RandomScalingSpec, diam: f64) -> Result<MonteCarloReport> {
    spec.validate()?;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for trial in 0..spec.trials {
        let mut rng = trial_rng(spec.seed, trial);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for _ in 0..spec.axes {
            let s = spec.distribution.sample(&mut rng)?;
            lo = lo.min(s);
            hi = hi.max(s);
        }
        let variability = hi - lo;
        // Welford
        let count = (trial + 1) as f64;
        let delta = variability - mean;
        mean += delta / count;
        m2 += delta * (variability - mean);
    }
    let trials = spec.trials as f64;
    let variance = if spec.trials > 1 { m2 / (trials - 1.0) } else { 0.0 };
    let std_error = (variance.max(0.0) / trials).sqrt();
    Ok(MonteCarloReport {
        mean_variability: mean,
        std_error,
        expected_bound: mean * diam,
        trials: spec.trials,
        seed: spec.seed,
    })
}

/// Default point-count budget for persistence at homology dimension `k`.
pub fn default_point_budget(k: usize) -> usize {
    match k {
        0 => 1024,
        1 => 64,
        2 => 25,
        _ => 16,
    }
}

fn check_point_budget(points: usize, max_k: usize) -> Result<()> {
    let limit = default_point_budget(max_k);
    if points > limit {
        return Err(Error::PersistenceBudgetExceeded {
            points,
            limit,
            homology_dim: max_k,
        });
    }
    Ok(())
}

/// Computes the diagrams of `cloud` and of its scaled image, measures their
/// bottleneck distance (and `W_p` when `wasserstein_p` is given) for every
/// requested homology dimension, and checks both bounds.
///
/// Filtrations are complete: Rips filtration values never exceed the cloud
/// diameter, so truncating at the diameter loses nothing.
pub fn verify_stability(
    cloud: &PointCloud,
    transform: &ScalingTransform,
    dims: &[usize],
    wasserstein_p: Option<f64>,
) -> Result<Vec<StabilityReport>> {
    let Some(&max_k) = dims.iter().max() else {
        return Ok(Vec::new());
    };
    check_point_budget(cloud.len(), max_k)?;

    let dm = cloud.distance_matrix();
    let scaled = cloud.apply_scaling(transform)?;
    let dm_scaled = scaled.distance_matrix();
    let diam = dm.diameter();

    // a positive radius is still needed when all points coincide
    let radius = if diam > 0.0 { diam } else { 1.0 };
    let radius_scaled = {
        let d = dm_scaled.diameter();
        if d > 0.0 {
            d
        } else {
            1.0
        }
    };
    let diagrams = compute_persistence(&build_filtration(&dm, max_k, radius)?, max_k)?;
    let diagrams_scaled =
        compute_persistence(&build_filtration(&dm_scaled, max_k, radius_scaled)?, max_k)?;

    let bound_paper = paper_bound(transform, diam);
    let bound_corrected = corrected_bound(transform, diam);
    let regime = transform.regime_contains_one();

    let mut reports = Vec::with_capacity(dims.len());
    for &k in dims {
        let measured = bottleneck(&diagrams[k], &diagrams_scaled[k])?;
        let measured_wasserstein = match wasserstein_p {
            Some(p) => Some(WassersteinMeasurement {
                p,
                value: wasserstein(&diagrams[k], &diagrams_scaled[k], p)?,
            }),
            None => None,
        };
        let holds_corrected = measured <= bound_corrected + BOUND_TOLERANCE;
        if !holds_corrected {
            return Err(Error::CorrectedBoundViolated {
                homology_dim: k,
                measured,
                bound: bound_corrected,
            });
        }
        reports.push(StabilityReport {
            homology_dim: k,
            measured_bottleneck: measured,
            measured_wasserstein,
            bound_paper,
            bound_corrected,
            regime_contains_one: regime,
            holds_paper: measured <= bound_paper + BOUND_TOLERANCE,
            holds_corrected,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(points: &[&[f64]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn paper_bound_worked_values() {
        let diam = 69300.0f64.sqrt();
        let t = ScalingTransform::new(vec![1.0, 1.019]).unwrap();
        let b = paper_bound(&t, diam);
        assert!((b - 5.0).abs() < 0.02, "got {b}"); // 0.019 * 263.249 ~ 5.0017
        let uniform = ScalingTransform::uniform(3, 1.7).unwrap();
        assert_eq!(paper_bound(&uniform, diam), 0.0);
        let t2 = ScalingTransform::new(vec![1.0, 1.025]).unwrap();
        assert!((paper_bound(&t2, 200.0) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn corrected_bound_worked_values() {
        let t = ScalingTransform::uniform(2, 3.0).unwrap();
        assert_eq!(corrected_bound(&t, 1.0), 2.0);
        let id = ScalingTransform::identity(2).unwrap();
        assert_eq!(corrected_bound(&id, 10.0), 0.0);
        let t2 = ScalingTransform::new(vec![0.9, 1.1]).unwrap();
        assert!((corrected_bound(&t2, 10.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn corrected_factor_never_exceeds_variability_in_regime() {
        let t = ScalingTransform::new(vec![0.8, 1.3]).unwrap();
        assert!(t.regime_contains_one());
        assert!(corrected_factor(&t) <= t.variability());
    }

    #[test]
    fn dimension_bound_worked_values() {
        let square = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        let dm = square.distance_matrix();
        let t = ScalingTransform::new(vec![1.0, 1.1]).unwrap();
        let b = dimension_bound(&t, &dm, 1).unwrap();
        assert!((b - 0.1 * 2.0f64.sqrt()).abs() < 1e-12);

        let any = ScalingTransform::uniform(2, 2.0).unwrap();
        assert_eq!(dimension_bound(&any, &dm, 0).unwrap(), 0.0);

        let collinear = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]);
        let t3 = ScalingTransform::new(vec![1.0, 1.5]).unwrap();
        let b3 = dimension_bound(&t3, &collinear.distance_matrix(), 1).unwrap();
        assert!((b3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cumulative_bound_worked_values() {
        let a = ScalingTransform::new(vec![1.0, 1.1]).unwrap();
        let b = ScalingTransform::new(vec![1.0, 1.2]).unwrap();
        let got = cumulative_bound(&[a.clone(), b], 1.0).unwrap();
        assert_eq!(got, 1.1 * 1.2 - 1.0);

        let single = cumulative_bound(std::slice::from_ref(&a), 7.0).unwrap();
        assert_eq!(single, paper_bound(&a, 7.0));

        let id = ScalingTransform::identity(2).unwrap();
        assert_eq!(cumulative_bound(&[id.clone(), id], 5.0).unwrap(), 0.0);

        assert!(matches!(
            cumulative_bound(&[], 1.0),
            Err(Error::EmptyTransformSequence)
        ));
    }

    #[test]
    fn expected_variability_uniform_closed_form() {
        assert_eq!(expected_variability_uniform(1.0, 2.0, 3), 0.5);
        assert_eq!(expected_variability_uniform(1.5, 1.5, 4), 0.0);
        assert_eq!(expected_variability_uniform(1.0, 2.0, 1), 0.0);
        assert!((expected_variability_uniform(1.0, 2.0, 50) - 49.0 / 51.0).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_agrees_with_closed_form() {
        let spec = RandomScalingSpec {
            distribution: ScalingDistribution::Uniform { lo: 1.0, hi: 2.0 },
            axes: 3,
            trials: 20_000,
            seed: 7,
        };
        let report = monte_carlo_expected_bound(&spec, 10.0).unwrap();
        assert!(
            (report.mean_variability - 0.5).abs() <= 3.0 * report.std_error,
            "mean {} se {}",
            report.mean_variability,
            report.std_error
        );
        assert!((report.expected_bound - report.mean_variability * 10.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_matches_closed_form_for_many_axes() {
        let spec = RandomScalingSpec {
            distribution: ScalingDistribution::Uniform { lo: 1.0, hi: 2.0 },
            axes: 50,
            trials: 20_000,
            seed: 3,
        };
        let report = monte_carlo_expected_bound(&spec, 1.0).unwrap();
        let expected = expected_variability_uniform(1.0, 2.0, 50);
        assert!(
            (report.mean_variability - expected).abs() <= 3.0 * report.std_error,
            "mean {} expected {expected} se {}",
            report.mean_variability,
            report.std_error
        );
    }

    #[test]
    fn monte_carlo_point_mass_is_exact_zero() {
        let spec = RandomScalingSpec {
            distribution: ScalingDistribution::Uniform { lo: 1.3, hi: 1.3 },
            axes: 5,
            trials: 100,
            seed: 1,
        };
        let report = monte_carlo_expected_bound(&spec, 4.0).unwrap();
        assert_eq!(report.mean_variability, 0.0);
        assert_eq!(report.std_error, 0.0);
        assert_eq!(report.expected_bound, 0.0);
    }

    #[test]
    fn monte_carlo_is_deterministic_for_a_seed() {
        let spec = RandomScalingSpec {
            distribution: ScalingDistribution::TruncatedNormal {
                mean: 1.0,
                stddev: 0.2,
                lo: 0.5,
                hi: 1.5,
            },
            axes: 4,
            trials: 500,
            seed: 42,
        };
        let a = monte_carlo_expected_bound(&spec, 1.0).unwrap();
        let b = monte_carlo_expected_bound(&spec, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn distribution_validation() {
        assert!(ScalingDistribution::Uniform { lo: 0.0, hi: 1.0 }.validate().is_err());
        assert!(ScalingDistribution::Uniform { lo: 2.0, hi: 1.0 }.validate().is_err());
        assert!(ScalingDistribution::TruncatedNormal {
            mean: 1.0,
            stddev: 0.0,
            lo: 0.5,
            hi: 1.5
        }
        .validate()
        .is_err());
        assert!(ScalingDistribution::Uniform { lo: 1.0, hi: 2.0 }.validate().is_ok());
    }

    #[test]
    fn verify_uniform_upscale_breaks_paper_bound_only() {
        let c = cloud(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let t = ScalingTransform::uniform(2, 3.0).unwrap();
        let reports = verify_stability(&c, &t, &[0], None).unwrap();
        let r = &reports[0];
        assert!((r.measured_bottleneck - 1.5).abs() < 1e-12);
        assert_eq!(r.bound_paper, 0.0);
        assert!(!r.holds_paper);
        assert!(!r.regime_contains_one);
        assert_eq!(r.bound_corrected, 2.0);
        assert!(r.holds_corrected);
    }

    #[test]
    fn verify_identity_measures_zero() {
        let c = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.3, 0.9]]);
        let t = ScalingTransform::identity(2).unwrap();
        for r in verify_stability(&c, &t, &[0, 1], Some(2.0)).unwrap() {
            assert_eq!(r.measured_bottleneck, 0.0);
            assert_eq!(r.measured_wasserstein.unwrap().value, 0.0);
            assert!(r.holds_paper && r.holds_corrected);
        }
    }

    #[test]
    fn verify_square_in_regime_respects_paper_bound() {
        let c = cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        let t = ScalingTransform::new(vec![1.0, 1.02]).unwrap();
        let reports = verify_stability(&c, &t, &[1], None).unwrap();
        let r = &reports[0];
        assert!(r.regime_contains_one);
        assert!(r.holds_paper);
        assert!(r.measured_bottleneck <= 0.02 * 2.0f64.sqrt() + BOUND_TOLERANCE);
    }

    #[test]
    fn verify_rejects_oversized_clouds() {
        let points: Vec<Vec<f64>> = (0..70).map(|i| vec![i as f64, 0.0]).collect();
        let c = PointCloud::new(points).unwrap();
        let t = ScalingTransform::identity(2).unwrap();
        assert!(matches!(
            verify_stability(&c, &t, &[1], None),
            Err(Error::PersistenceBudgetExceeded { points: 70, limit: 64, homology_dim: 1 })
        ));
    }

    #[test]
    fn verify_empty_dims_is_empty() {
        let c = cloud(&[&[0.0], &[1.0]]);
        let t = ScalingTransform::identity(1).unwrap();
        assert!(verify_stability(&c, &t, &[], None).unwrap().is_empty());
    }
}
