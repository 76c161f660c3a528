//! Persistent homology by column reduction of the boundary matrix over
//! GF(2), in filtration order, with the clearing optimization.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::Filtration;

/// A persistence diagram for one homology dimension: a multiset of finite
/// (birth, death) pairs plus the births of essential (never-dying) classes.
///
/// Pairs are kept sorted by (birth, death) and essential births ascending,
/// so diagrams compare as multisets with `==`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct PersistenceDiagram {
    dim: usize,
    finite_pairs: Vec<(f64, f64)>,
    essential_births: Vec<f64>,
}

/// Wire form: `{"dim": k, "pairs": [[b, d], ...], "essential": [b, ...]}`.
#[derive(Serialize, Deserialize)]
struct RawDiagram {
    dim: usize,
    pairs: Vec<(f64, f64)>,
    essential: Vec<f64>,
}

impl TryFrom<RawDiagram> for PersistenceDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        PersistenceDiagram::new(raw.dim, raw.pairs, raw.essential)
    }
}

impl From<PersistenceDiagram> for RawDiagram {
    fn from(d: PersistenceDiagram) -> Self {
        RawDiagram {
            dim: d.dim,
            pairs: d.finite_pairs,
            essential: d.essential_births,
        }
    }
}

impl PersistenceDiagram {
    pub fn new(
        dim: usize,
        mut finite_pairs: Vec<(f64, f64)>,
        mut essential_births: Vec<f64>,
    ) -> Result<Self> {
        for &(birth, death) in &finite_pairs {
            if !birth.is_finite() || !death.is_finite() {
                return Err(Error::InvalidDiagram(format!(
                    "non-finite pair ({birth}, {death})"
                )));
            }
            if death < birth {
                return Err(Error::InvalidDiagram(format!(
                    "death {death} precedes birth {birth}"
                )));
            }
        }
        for &birth in &essential_births {
            if !birth.is_finite() {
                return Err(Error::InvalidDiagram(format!(
                    "non-finite essential birth {birth}"
                )));
            }
        }
        finite_pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        essential_births.sort_by(f64::total_cmp);
        Ok(Self {
            dim,
            finite_pairs,
            essential_births,
        })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            finite_pairs: Vec::new(),
            essential_births: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn finite_pairs(&self) -> &[(f64, f64)] {
        &self.finite_pairs
    }

    pub fn essential_births(&self) -> &[f64] {
        &self.essential_births
    }

    /// Finite plus essential point count.
    pub fn total_points(&self) -> usize {
        self.finite_pairs.len() + self.essential_births.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total_points() == 0
    }
}

/// Persistence diagrams for homology dimensions `0..=max_homology_dim`,
/// with zero-persistence pairs dropped (they sit on the diagonal and
/// contribute nothing to bottleneck or Wasserstein distances).
pub fn compute_persistence(
    filtration: &Filtration,
    max_homology_dim: usize,
) -> Result<Vec<PersistenceDiagram>> {
    compute_persistence_opts(filtration, max_homology_dim, false)
}

/// As [`compute_persistence`], optionally retaining zero-persistence pairs
/// (useful when comparing raw pairings against external oracles).
pub fn compute_persistence_opts(
    filtration: &Filtration,
    max_homology_dim: usize,
    keep_zero_persistence: bool,
) -> Result<Vec<PersistenceDiagram>> {
    if max_homology_dim > filtration.max_dim() {
        return Err(Error::InsufficientSkeleton {
            requested: max_homology_dim,
            built: filtration.max_dim(),
        });
    }
    filtration.validate()?;

    let simplices = filtration.simplices();
    let m = simplices.len();
    let index: HashMap<&[usize], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.vertices(), i))
        .collect();
    let max_simplex_dim = simplices.iter().map(|s| s.dim()).max().unwrap_or(0);

    // reduced[j] holds the reduced column of a death simplex j;
    // pivot_owner[i] names the death column whose pivot row is i.
    let mut reduced: Vec<Option<Vec<usize>>> = vec![None; m];
    let mut pivot_owner: Vec<Option<usize>> = vec![None; m];
    let mut cleared = vec![false; m];

    for d in (1..=max_simplex_dim).rev() {
        for j in 0..m {
            if simplices[j].dim() != d || cleared[j] {
                continue;
            }
            let mut column = boundary_column(simplices[j].vertices(), &index);
            while let Some(&low) = column.last() {
                match pivot_owner[low] {
                    None => {
                        pivot_owner[low] = Some(j);
                        // column `low` is now known to reduce to zero;
                        // skip it in the next dimension's pass
                        cleared[low] = true;
                        reduced[j] = Some(column);
                        break;
                    }
                    Some(owner) => {
                        column = xor_columns(&column, reduced[owner].as_ref().expect("owner reduced"));
                    }
                }
            }
        }
    }

    let mut pairs: Vec<Vec<(f64, f64)>> = vec![Vec::new(); max_homology_dim + 1];
    let mut essential: Vec<Vec<f64>> = vec![Vec::new(); max_homology_dim + 1];
    for i in 0..m {
        if reduced[i].is_some() {
            continue; // death column, creates nothing
        }
        let k = simplices[i].dim();
        if k > max_homology_dim {
            continue;
        }
        let birth = simplices[i].filtration_value();
        match pivot_owner[i] {
            Some(j) => {
                let death = simplices[j].filtration_value();
                if keep_zero_persistence || death > birth {
                    pairs[k].push((birth, death));
                }
            }
            None => essential[k].push(birth),
        }
    }

    pairs
        .into_iter()
        .zip(essential)
        .enumerate()
        .map(|(k, (p, e))| PersistenceDiagram::new(k, p, e))
        .collect()
}

/// Indices of the facets of a simplex, sorted ascending.
fn boundary_column(vertices: &[usize], index: &HashMap<&[usize], usize>) -> Vec<usize> {
    let mut column: Vec<usize> = (0..vertices.len())
        .map(|omit| {
            let face: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .map(|(_, &v)| v)
                .collect();
            *index.get(face.as_slice()).expect("validated filtration")
        })
        .collect();
    column.sort_unstable();
    column
}

/// Symmetric difference of two sorted index sets (GF(2) column addition).
fn xor_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::build_filtration;
    use crate::metric::PointCloud;

    fn cloud(points: &[&[f64]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn diagrams_for(points: &[&[f64]], max_dim: usize) -> Vec<PersistenceDiagram> {
        let dm = cloud(points).distance_matrix();
        let radius = dm.diameter().max(1.0);
        let f = build_filtration(&dm, max_dim, radius).unwrap();
        compute_persistence(&f, max_dim).unwrap()
    }

    #[test]
    fn two_points_merge_at_their_distance() {
        let d = diagrams_for(&[&[0.0, 0.0], &[3.0, 4.0]], 0);
        assert_eq!(d[0].finite_pairs(), &[(0.0, 5.0)]);
        assert_eq!(d[0].essential_births(), &[0.0]);
    }

    #[test]
    fn unit_square_has_one_loop() {
        let d = diagrams_for(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]], 1);
        assert_eq!(d[0].finite_pairs(), &[(0.0, 1.0); 3]);
        assert_eq!(d[0].essential_births(), &[0.0]);
        assert_eq!(d[1].finite_pairs(), &[(1.0, 2.0f64.sqrt())]);
        assert!(d[1].essential_births().is_empty());
    }

    #[test]
    fn equilateral_triangle_kills_its_loop_immediately() {
        let h = 3.0f64.sqrt() / 2.0;
        let d = diagrams_for(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]], 1);
        let deaths: Vec<f64> = d[0].finite_pairs().iter().map(|&(_, death)| death).collect();
        assert_eq!(deaths.len(), 2);
        assert!(deaths.iter().all(|&death| (death - 1.0).abs() < 1e-12));
        assert_eq!(d[0].essential_births(), &[0.0]);
        assert!(d[1].is_empty());
    }

    #[test]
    fn octahedron_has_a_two_dimensional_void() {
        let points: Vec<Vec<f64>> = vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ];
        let dm = PointCloud::new(points).unwrap().distance_matrix();
        let f = build_filtration(&dm, 2, dm.diameter()).unwrap();
        let d = compute_persistence(&f, 2).unwrap();
        let s = 2.0f64.sqrt();
        assert_eq!(d[0].finite_pairs(), &[(0.0, s); 5]);
        assert!(d[1].is_empty());
        assert_eq!(d[2].finite_pairs(), &[(s, 2.0)]);
        assert!(d[2].essential_births().is_empty());
    }

    #[test]
    fn finite_deaths_are_filtration_values_of_cofacet_dimension() {
        // H_k deaths come from (k+1)-simplices
        let points: Vec<Vec<f64>> = (0..7)
            .map(|i| vec![(i as f64 * 1.3).cos(), (i as f64 * 1.7).sin()])
            .collect();
        let dm = PointCloud::new(points).unwrap().distance_matrix();
        let f = build_filtration(&dm, 1, dm.diameter()).unwrap();
        let diagrams = compute_persistence(&f, 1).unwrap();
        for (k, diagram) in diagrams.iter().enumerate() {
            let cofacet_values: Vec<f64> = f
                .simplices()
                .iter()
                .filter(|s| s.dim() == k + 1)
                .map(|s| s.filtration_value())
                .collect();
            for &(_, death) in diagram.finite_pairs() {
                assert!(
                    cofacet_values.contains(&death),
                    "H{k} death {death} is not a {}-simplex value",
                    k + 1
                );
            }
        }
    }

    #[test]
    fn zero_persistence_pairs_are_dropped_unless_requested() {
        // duplicate points create a zero-length edge and a (0, 0) pair
        let dm = cloud(&[&[1.0, 1.0], &[1.0, 1.0], &[2.0, 1.0]]).distance_matrix();
        let f = build_filtration(&dm, 0, 1.0).unwrap();
        let dropped = compute_persistence(&f, 0).unwrap();
        assert_eq!(dropped[0].finite_pairs(), &[(0.0, 1.0)]);
        let kept = compute_persistence_opts(&f, 0, true).unwrap();
        assert_eq!(kept[0].finite_pairs(), &[(0.0, 0.0), (0.0, 1.0)]);
    }

    #[test]
    fn truncated_radius_leaves_extra_essential_components() {
        let dm = cloud(&[&[0.0], &[1.0], &[10.0]]).distance_matrix();
        let f = build_filtration(&dm, 0, 2.0).unwrap();
        let d = compute_persistence(&f, 0).unwrap();
        assert_eq!(d[0].finite_pairs(), &[(0.0, 1.0)]);
        assert_eq!(d[0].essential_births(), &[0.0, 0.0]);
    }

    #[test]
    fn rejects_undersized_skeleton() {
        let dm = cloud(&[&[0.0], &[1.0]]).distance_matrix();
        let f = build_filtration(&dm, 0, 1.0).unwrap();
        assert!(matches!(
            compute_persistence(&f, 1),
            Err(Error::InsufficientSkeleton { requested: 1, built: 0 })
        ));
    }

    #[test]
    fn rejects_out_of_order_filtration() {
        use crate::filtration::{build_filtration_with_budget, Filtration};
        let dm = cloud(&[&[0.0], &[1.0]]).distance_matrix();
        let good = build_filtration_with_budget(&dm, 0, 1.0, 100).unwrap();
        let mut simplices = good.simplices().to_vec();
        simplices.reverse(); // edge now precedes its vertices
        let bad = Filtration::from_parts(simplices, 0);
        assert!(matches!(
            compute_persistence(&bad, 0),
            Err(Error::InvalidFiltration(_))
        ));
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = PersistenceDiagram::new(1, vec![(1.0, 2.0f64.sqrt())], vec![]).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"dim":1,"pairs":[[1.0,1.4142135623730951]],"essential":[]}"#);
        let back: PersistenceDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<PersistenceDiagram>(
            r#"{"dim":0,"pairs":[[2.0,1.0]],"essential":[]}"#
        )
        .is_err());
    }

    #[test]
    fn diagram_rejects_non_finite_entries() {
        assert!(PersistenceDiagram::new(0, vec![(0.0, f64::INFINITY)], vec![]).is_err());
        assert!(PersistenceDiagram::new(0, vec![], vec![f64::NAN]).is_err());
    }
}
