//! Point clouds, Euclidean distance matrices, and per-axis scaling
//! transforms.
//!
//! A [`ScalingTransform`] multiplies coordinate `i` of every point by a
//! strictly positive factor `s_i`. The spread `s_max - s_min` of those
//! factors (the *variability*) is the quantity the stability bounds and the
//! optimizer are expressed in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Clouds up to this size use literal subset enumeration in
/// [`DistanceMatrix::diameter_k`]; larger clouds use the equal-by-definition
/// shortcut through [`DistanceMatrix::diameter`].
const DIAMETER_K_ENUMERATION_LIMIT: usize = 25;

/// A finite, nonempty set of points in `R^n` with finite coordinates.
///
/// Point order is preserved by every operation; duplicate points are
/// allowed (they produce zero off-diagonal distances).
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointCloud)?;
        if first.is_empty() {
            return Err(Error::EmptyPoint { index: 0 });
        }
        let dim = first.len();
        for (index, point) in points.iter().enumerate() {
            if point.len() != dim {
                return Err(Error::RaggedPoint {
                    index,
                    expected: dim,
                    found: point.len(),
                });
            }
            for (axis, &value) in point.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFiniteCoordinate {
                        point: index,
                        axis,
                        value,
                    });
                }
            }
        }
        Ok(Self { points, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; the constructor rejects empty clouds.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &[f64] {
        &self.points[index]
    }

    /// Euclidean distance matrix over all point pairs.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::from_cloud(self)
    }

    /// Maximum pairwise Euclidean distance; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        self.distance_matrix().diameter()
    }

    /// Multiplies coordinate `i` of every point by `transform`'s factor
    /// `s_i`, preserving point order.
    pub fn apply_scaling(&self, transform: &ScalingTransform) -> Result<PointCloud> {
        if transform.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: transform.dim(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(transform.factors())
                    .map(|(x, s)| x * s)
                    .collect()
            })
            .collect();
        Ok(Self {
            points,
            dim: self.dim,
        })
    }
}

fn euclidean(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Per-axis scaling factors `s_1..s_n`, all strictly positive and finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScalingTransform", into = "RawScalingTransform")]
pub struct ScalingTransform {
    factors: Vec<f64>,
}

/// Wire form of a transform: `{"factors": [f1, ..., fn]}`.
#[derive(Serialize, Deserialize)]
struct RawScalingTransform {
    factors: Vec<f64>,
}

impl TryFrom<RawScalingTransform> for ScalingTransform {
    type Error = Error;

    fn try_from(raw: RawScalingTransform) -> Result<Self> {
        ScalingTransform::new(raw.factors)
    }
}

impl From<ScalingTransform> for RawScalingTransform {
    fn from(t: ScalingTransform) -> Self {
        RawScalingTransform { factors: t.factors }
    }
}

impl ScalingTransform {
    pub fn new(factors: Vec<f64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyTransform);
        }
        for (axis, &value) in factors.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidScalingFactor { axis, value });
            }
        }
        Ok(Self { factors })
    }

    /// The same factor on every axis.
    pub fn uniform(dim: usize, factor: f64) -> Result<Self> {
        Self::new(vec![factor; dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::uniform(dim, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    pub fn s_min(&self) -> f64 {
        self.factors.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn s_max(&self) -> f64 {
        self.factors
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The scaling variability `Δs = s_max - s_min`.
    pub fn variability(&self) -> f64 {
        self.s_max() - self.s_min()
    }

    /// True when `s_min <= 1 <= s_max`, the regime in which the
    /// variability `Δs` is a valid distance-distortion factor.
    pub fn regime_contains_one(&self) -> bool {
        self.s_min() <= 1.0 && 1.0 <= self.s_max()
    }

    /// Componentwise product of a nonempty sequence of transforms, i.e. the
    /// single transform equivalent to applying them all in order.
    pub fn compose(transforms: &[ScalingTransform]) -> Result<ScalingTransform> {
        let first = transforms.first().ok_or(Error::EmptyTransformSequence)?;
        let dim = first.dim();
        let mut factors = vec![1.0; dim];
        for t in transforms {
            if t.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: t.dim(),
                });
            }
            for (f, s) in factors.iter_mut().zip(t.factors()) {
                *f *= s;
            }
        }
        Self::new(factors)
    }
}

/// Symmetric matrix of pairwise Euclidean distances with zero diagonal.
///
/// Only the strict upper triangle is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    condensed: Vec<f64>,
}

impl DistanceMatrix {
    fn from_cloud(cloud: &PointCloud) -> Self {
        let n = cloud.len();
        let mut condensed = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                condensed.push(euclidean(cloud.point(i), cloud.point(j)));
            }
        }
        Self { n, condensed }
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Distance between points `i` and `j`. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index out of range");
        if i == j {
            return 0.0;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // row i starts after the rows 0..i, each row k holding n-1-k entries
        let offset = i * self.n - i * (i + 1) / 2 + (j - i - 1);
        self.condensed[offset]
    }

    /// Maximum entry; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        self.condensed.iter().copied().fold(0.0, f64::max)
    }

    /// Maximum diameter over vertex subsets of size `max(k + 1, 2)`; equals
    /// [`Self::diameter`] whenever such a subset exists.
    ///
    /// Small instances are enumerated literally, so tests can pin the
    /// equality; larger instances take the shortcut.
    pub fn diameter_k(&self, k: usize) -> Result<f64> {
        if self.n < k + 1 {
            return Err(Error::InsufficientPoints {
                needed: k + 1,
                available: self.n,
            });
        }
        // A pairwise maximum needs at least two vertices: H0 features live
        // on pairs even though 0-simplices are single vertices.
        let subset = (k + 1).max(2);
        if self.n < subset {
            return Ok(0.0); // single point, k <= 1
        }
        if self.n <= DIAMETER_K_ENUMERATION_LIMIT {
            let mut best = 0.0f64;
            let mut chosen = Vec::with_capacity(subset);
            self.max_over_subsets(0, subset, 0.0, &mut chosen, &mut best);
            Ok(best)
        } else {
            Ok(self.diameter())
        }
    }

    fn max_over_subsets(
        &self,
        start: usize,
        remaining: usize,
        current_max: f64,
        chosen: &mut Vec<usize>,
        best: &mut f64,
    ) {
        if remaining == 0 {
            *best = best.max(current_max);
            return;
        }
        for v in start..=(self.n - remaining) {
            let mut m = current_max;
            for &u in chosen.iter() {
                m = m.max(self.get(u, v));
            }
            chosen.push(v);
            self.max_over_subsets(v + 1, remaining - 1, m, chosen, best);
            chosen.pop();
        }
    }

    /// Checks `d(i,k) <= d(i,j) + d(j,k) + tolerance` over all triples.
    /// Intended for small instances; O(N^3).
    pub fn satisfies_triangle_inequality(&self, tolerance: f64) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if self.get(i, k) > self.get(i, j) + self.get(j, k) + tolerance {
                        return false;
                    }
                }
            }
        }
        true
    }
}
