//! Vietoris–Rips filtration construction.
//!
//! A simplex enters the filtration at the maximum pairwise distance among
//! its vertices (its diameter), so filtration values live on the distance
//! scale rather than the radius scale. To read off homology up to
//! dimension `max_dim`, simplices up to dimension `max_dim + 1` are built.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// Default cap on the total number of simplices a filtration may hold.
pub const DEFAULT_SIMPLEX_BUDGET: usize = 5_000_000;

/// A simplex together with its Rips filtration value.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<usize>,
    filtration_value: f64,
}

impl Simplex {
    /// Vertex indices, strictly increasing.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Diameter of the vertex set; 0 for vertices.
    pub fn filtration_value(&self) -> f64 {
        self.filtration_value
    }
}

/// All simplices of a Vietoris–Rips filtration, ordered by
/// (filtration value, dimension, lexicographic vertices).
#[derive(Debug, Clone)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    max_dim: usize,
}

impl Filtration {
    pub(crate) fn from_parts(simplices: Vec<Simplex>, max_dim: usize) -> Self {
        Self { simplices, max_dim }
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Highest homology dimension this filtration's skeleton supports.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Checks the ordering invariants: vertices strictly increasing,
    /// filtration values nondecreasing along the order, and every face
    /// present no later than the simplex itself.
    pub fn validate(&self) -> Result<()> {
        let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(self.simplices.len());
        let mut previous = f64::NEG_INFINITY;
        for (position, simplex) in self.simplices.iter().enumerate() {
            if simplex.vertices.is_empty() {
                return Err(Error::InvalidFiltration(format!(
                    "simplex at position {position} has no vertices"
                )));
            }
            if !simplex.vertices.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidFiltration(format!(
                    "simplex at position {position} has unsorted vertices {:?}",
                    simplex.vertices
                )));
            }
            if simplex.filtration_value < previous {
                return Err(Error::InvalidFiltration(format!(
                    "filtration value decreases at position {position}"
                )));
            }
            previous = simplex.filtration_value;
            if simplex.dim() > 0 {
                let mut face = Vec::with_capacity(simplex.vertices.len() - 1);
                for omit in 0..simplex.vertices.len() {
                    face.clear();
                    face.extend(
                        simplex
                            .vertices
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != omit)
                            .map(|(_, &v)| v),
                    );
                    if !seen.contains_key(face.as_slice()) {
                        return Err(Error::InvalidFiltration(format!(
                            "face {face:?} of simplex at position {position} is missing or late"
                        )));
                    }
                }
            }
            seen.insert(&simplex.vertices, position);
        }
        Ok(())
    }
}

/// Builds the Rips filtration containing every simplex of dimension
/// `<= max_dim + 1` whose diameter is `<= max_radius`, under the default
/// simplex budget. Pass the cloud diameter as `max_radius` for a complete
/// filtration.
pub fn build_filtration(dm: &DistanceMatrix, max_dim: usize, max_radius: f64) -> Result<Filtration> {
    build_filtration_with_budget(dm, max_dim, max_radius, DEFAULT_SIMPLEX_BUDGET)
}

pub fn build_filtration_with_budget(
    dm: &DistanceMatrix,
    max_dim: usize,
    max_radius: f64,
    budget: usize,
) -> Result<Filtration> {
    if !max_radius.is_finite() || max_radius <= 0.0 {
        return Err(Error::NonPositiveRadius { value: max_radius });
    }
    let mut simplices = Vec::new();
    let mut current = Vec::new();
    enumerate_cliques(
        dm,
        max_radius,
        max_dim + 2,
        &mut current,
        0.0,
        &mut simplices,
        budget,
    )?;
    simplices.sort_by(|a, b| {
        a.filtration_value
            .total_cmp(&b.filtration_value)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    Ok(Filtration::from_parts(simplices, max_dim))
}

/// Depth-first enumeration of cliques in the `<= max_radius` graph, in
/// lexicographic vertex order, tracking the running diameter.
fn enumerate_cliques(
    dm: &DistanceMatrix,
    max_radius: f64,
    max_vertices: usize,
    current: &mut Vec<usize>,
    current_value: f64,
    out: &mut Vec<Simplex>,
    budget: usize,
) -> Result<()> {
    let start = current.last().map_or(0, |&v| v + 1);
    for candidate in start..dm.size() {
        let mut value = current_value;
        let mut admissible = true;
        for &chosen in current.iter() {
            let d = dm.get(chosen, candidate);
            if d > max_radius {
                admissible = false;
                break;
            }
            value = value.max(d);
        }
        if !admissible {
            continue;
        }
        current.push(candidate);
        if out.len() >= budget {
            return Err(Error::SimplexBudgetExceeded { budget });
        }
        out.push(Simplex {
            vertices: current.clone(),
            filtration_value: value,
        });
        if current.len() < max_vertices {
            enumerate_cliques(dm, max_radius, max_vertices, current, value, out, budget)?;
        }
        current.pop();
    }
    Ok(())
}
