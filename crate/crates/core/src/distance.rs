//! Bottleneck and p-Wasserstein distances between persistence diagrams.
//!
//! Both distances optimize over bijections that may send points to the
//! diagonal. The ground cost between two diagram points is the L-infinity
//! norm; a point's diagonal cost is half its persistence. Essential
//! (infinite-death) points match only against essential points, by birth
//! value; diagrams with different essential counts are infinitely far
//! apart, reported as `f64::INFINITY` rather than as an error.
//!
//! The bottleneck value is found by binary search over the finite set of
//! candidate assignment costs, with a bipartite-matching feasibility test
//! at each probe, so the result is exact (no epsilon termination). The
//! Wasserstein value comes from an exact min-cost perfect matching on the
//! diagonal-augmented bipartite graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::persistence::PersistenceDiagram;

/// Combined point-count cap of [`brute_force_bottleneck`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// One side of a matching assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchEnd {
    /// Index into a diagram's finite pairs.
    Finite(usize),
    /// Index into a diagram's essential births.
    Essential(usize),
    /// The diagonal.
    Diagonal,
}

/// An optimal matching between two diagrams. Every off-diagonal point of
/// either diagram appears in exactly one assignment; diagonal-to-diagonal
/// assignments are omitted. `cost` is the max assignment cost under the
/// bottleneck distance and the sum of p-th powers under Wasserstein.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramMatching {
    pub assignments: Vec<(MatchEnd, MatchEnd)>,
    pub cost: f64,
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn diagonal_cost(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

fn check_dims(left: &PersistenceDiagram, right: &PersistenceDiagram) -> Result<()> {
    if left.dim() != right.dim() {
        return Err(Error::DiagramDimensionMismatch {
            left: left.dim(),
            right: right.dim(),
        });
    }
    Ok(())
}

/// Exact bottleneck distance; `f64::INFINITY` when the essential counts
/// differ.
pub fn bottleneck(left: &PersistenceDiagram, right: &PersistenceDiagram) -> Result<f64> {
    check_dims(left, right)?;
    if left.essential_births().len() != right.essential_births().len() {
        return Ok(f64::INFINITY);
    }
    let essential = essential_bottleneck(left.essential_births(), right.essential_births());
    let finite = finite_bottleneck_value(left.finite_pairs(), right.finite_pairs());
    Ok(essential.max(finite))
}

/// Bottleneck distance together with a witnessing optimal matching.
pub fn bottleneck_matching(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
) -> Result<DiagramMatching> {
    check_dims(left, right)?;
    if left.essential_births().len() != right.essential_births().len() {
        return Ok(DiagramMatching {
            assignments: Vec::new(),
            cost: f64::INFINITY,
        });
    }
    let essential = essential_bottleneck(left.essential_births(), right.essential_births());
    let value = finite_bottleneck_value(left.finite_pairs(), right.finite_pairs());
    let mut assignments =
        finite_bottleneck_assignment(left.finite_pairs(), right.finite_pairs(), value);
    assignments.extend(essential_assignments(
        left.essential_births(),
        right.essential_births(),
    ));
    Ok(DiagramMatching {
        assignments,
        cost: essential.max(value),
    })
}

/// Exact p-Wasserstein distance with L-infinity ground cost;
/// `f64::INFINITY` when the essential counts differ.
pub fn wasserstein(left: &PersistenceDiagram, right: &PersistenceDiagram, p: f64) -> Result<f64> {
    check_dims(left, right)?;
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidWassersteinOrder { p });
    }
    if left.essential_births().len() != right.essential_births().len() {
        return Ok(f64::INFINITY);
    }
    let essential = essential_wasserstein_power(left.essential_births(), right.essential_births(), p);
    let (finite, _) = finite_wasserstein(left.finite_pairs(), right.finite_pairs(), p);
    Ok((essential + finite).powf(1.0 / p))
}

/// Wasserstein matching; `cost` is the sum of p-th powers of assignment
/// costs (take the p-th root for the distance).
pub fn wasserstein_matching(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
    p: f64,
) -> Result<DiagramMatching> {
    check_dims(left, right)?;
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidWassersteinOrder { p });
    }
    if left.essential_births().len() != right.essential_births().len() {
        return Ok(DiagramMatching {
            assignments: Vec::new(),
            cost: f64::INFINITY,
        });
    }
    let essential = essential_wasserstein_power(left.essential_births(), right.essential_births(), p);
    let (finite, mut assignments) = finite_wasserstein(left.finite_pairs(), right.finite_pairs(), p);
    assignments.extend(essential_assignments(
        left.essential_births(),
        right.essential_births(),
    ));
    Ok(DiagramMatching {
        assignments,
        cost: essential + finite,
    })
}

/// Exhaustive-enumeration bottleneck oracle for tiny diagrams
/// (at most [`BRUTE_FORCE_LIMIT`] points across both).
pub fn brute_force_bottleneck(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
) -> Result<f64> {
    check_dims(left, right)?;
    let size = left.total_points() + right.total_points();
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleSizeExceeded {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if left.essential_births().len() != right.essential_births().len() {
        return Ok(f64::INFINITY);
    }
    let essential =
        brute_force_essential(left.essential_births(), right.essential_births());
    let mut best = f64::INFINITY;
    let mut used = vec![false; right.finite_pairs().len()];
    brute_force_finite(
        left.finite_pairs(),
        right.finite_pairs(),
        0,
        &mut used,
        0.0,
        &mut best,
    );
    Ok(essential.max(best))
}

// --- essential parts ----------------------------------------------------

/// Births are pre-sorted by `PersistenceDiagram`; matching in sorted order
/// is optimal on the line for both the max and any convex sum.
fn essential_bottleneck(left: &[f64], right: &[f64]) -> f64 {
    left.iter()
        .zip(right)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

fn essential_wasserstein_power(left: &[f64], right: &[f64], p: f64) -> f64 {
    left.iter()
        .zip(right)
        .map(|(a, b)| (a - b).abs().powf(p))
        .sum()
}

fn essential_assignments(left: &[f64], right: &[f64]) -> Vec<(MatchEnd, MatchEnd)> {
    (0..left.len().min(right.len()))
        .map(|i| (MatchEnd::Essential(i), MatchEnd::Essential(i)))
        .collect()
}

// --- finite bottleneck ---------------------------------------------------

fn finite_bottleneck_value(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates = vec![0.0f64];
    for &x in a {
        candidates.push(diagonal_cost(x));
        for &y in b {
            candidates.push(linf(x, y));
        }
    }
    for &y in b {
        candidates.push(diagonal_cost(y));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // the largest candidate always admits the all-diagonal matching
    let mut lo = 0;
    let mut hi = candidates.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if matching_feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Bipartite graph for the threshold test: left = A-points then diagonal
/// slots for B, right = B-points then diagonal slots for A. Diagonal slots
/// pair with each other for free.
fn threshold_adjacency(a: &[(f64, f64)], b: &[(f64, f64)], c: f64) -> Vec<Vec<usize>> {
    let (na, nb) = (a.len(), b.len());
    let mut adj = vec![Vec::new(); na + nb];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if linf(x, y) <= c {
                adj[i].push(j);
            }
        }
        if diagonal_cost(x) <= c {
            adj[i].push(nb + i);
        }
    }
    for (j, &y) in b.iter().enumerate() {
        if diagonal_cost(y) <= c {
            adj[na + j].push(j);
        }
        for i in 0..na {
            adj[na + j].push(nb + i);
        }
    }
    adj
}

fn matching_feasible(a: &[(f64, f64)], b: &[(f64, f64)], c: f64) -> bool {
    let adj = threshold_adjacency(a, b, c);
    let total = a.len() + b.len();
    max_bipartite_matching(&adj, total).0 == total
}

fn finite_bottleneck_assignment(
    a: &[(f64, f64)],
    b: &[(f64, f64)],
    c: f64,
) -> Vec<(MatchEnd, MatchEnd)> {
    let (na, nb) = (a.len(), b.len());
    if na + nb == 0 {
        return Vec::new();
    }
    let adj = threshold_adjacency(a, b, c);
    let (size, match_left) = max_bipartite_matching(&adj, na + nb);
    debug_assert_eq!(size, na + nb, "optimal threshold must be feasible");
    let mut assignments = Vec::new();
    for (u, partner) in match_left.iter().enumerate() {
        let v = partner.expect("perfect matching");
        match (u < na, v < nb) {
            (true, true) => assignments.push((MatchEnd::Finite(u), MatchEnd::Finite(v))),
            (true, false) => assignments.push((MatchEnd::Finite(u), MatchEnd::Diagonal)),
            (false, true) => assignments.push((MatchEnd::Diagonal, MatchEnd::Finite(v))),
            (false, false) => {} // diagonal to diagonal
        }
    }
    assignments
}

/// Kuhn's augmenting-path maximum matching. Returns the matching size and
/// the partner of every left vertex.
fn max_bipartite_matching(adj: &[Vec<usize>], n_right: usize) -> (usize, Vec<Option<usize>>) {
    let n_left = adj.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    let mut size = 0;
    for u in 0..n_left {
        let mut visited = vec![false; n_right];
        if augment(u, adj, &mut visited, &mut match_right) {
            size += 1;
        }
    }
    let mut match_left: Vec<Option<usize>> = vec![None; n_left];
    for (v, owner) in match_right.iter().enumerate() {
        if let Some(u) = owner {
            match_left[*u] = Some(v);
        }
    }
    (size, match_left)
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(owner) => augment(owner, adj, visited, match_right),
        };
        if free {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

// --- finite Wasserstein --------------------------------------------------

fn finite_wasserstein(
    a: &[(f64, f64)],
    b: &[(f64, f64)],
    p: f64,
) -> (f64, Vec<(MatchEnd, MatchEnd)>) {
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    if n == 0 {
        return (0.0, Vec::new());
    }
    let cost = |i: usize, j: usize| -> f64 {
        match (i < na, j < nb) {
            (true, true) => linf(a[i], b[j]).powf(p),
            (true, false) => diagonal_cost(a[i]).powf(p),
            (false, true) => diagonal_cost(b[j]).powf(p),
            (false, false) => 0.0,
        }
    };
    let row_of_col = hungarian(n, &cost);
    let mut total = 0.0;
    let mut assignments = Vec::new();
    for (j, &i) in row_of_col.iter().enumerate() {
        total += cost(i, j);
        match (i < na, j < nb) {
            (true, true) => assignments.push((MatchEnd::Finite(i), MatchEnd::Finite(j))),
            (true, false) => assignments.push((MatchEnd::Finite(i), MatchEnd::Diagonal)),
            (false, true) => assignments.push((MatchEnd::Diagonal, MatchEnd::Finite(j))),
            (false, false) => {}
        }
    }
    (total, assignments)
}

/// O(n^3) Kuhn–Munkres with row/column potentials; minimizes the total
/// cost of a perfect matching on an n-by-n matrix. Returns, for each
/// column, the assigned row.
fn hungarian(n: usize, cost: &dyn Fn(usize, usize) -> f64) -> Vec<usize> {
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j]: 1-based row matched to column j
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let current = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if current < minv[j] {
                    minv[j] = current;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| p[j] - 1).collect()
}

// --- brute force ----------------------------------------------------------

fn brute_force_essential(left: &[f64], right: &[f64]) -> f64 {
    if left.is_empty() {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; right.len()];
    fn recurse(i: usize, left: &[f64], right: &[f64], used: &mut [bool], cur: f64, best: &mut f64) {
        if i == left.len() {
            *best = best.min(cur);
            return;
        }
        for j in 0..right.len() {
            if !used[j] {
                used[j] = true;
                recurse(i + 1, left, right, used, cur.max((left[i] - right[j]).abs()), best);
                used[j] = false;
            }
        }
    }
    recurse(0, left, right, &mut used, 0.0, &mut best);
    best
}

fn brute_force_finite(
    a: &[(f64, f64)],
    b: &[(f64, f64)],
    i: usize,
    used: &mut [bool],
    current: f64,
    best: &mut f64,
) {
    if current >= *best {
        return;
    }
    if i == a.len() {
        let mut m = current;
        for (j, &taken) in used.iter().enumerate() {
            if !taken {
                m = m.max(diagonal_cost(b[j]));
            }
        }
        *best = best.min(m);
        return;
    }
    brute_force_finite(a, b, i + 1, used, current.max(diagonal_cost(a[i])), best);
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            brute_force_finite(a, b, i + 1, used, current.max(linf(a[i], b[j])), best);
            used[j] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(dim: usize, pairs: &[(f64, f64)], essential: &[f64]) -> PersistenceDiagram {
        PersistenceDiagram::new(dim, pairs.to_vec(), essential.to_vec()).unwrap()
    }

    #[test]
    fn bottleneck_identical_diagrams_is_zero() {
        let d = diagram(0, &[(0.0, 1.0), (0.5, 3.0)], &[0.0]);
        assert_eq!(bottleneck(&d, &d).unwrap(), 0.0);
    }

    #[test]
    fn bottleneck_against_empty_uses_diagonal() {
        let d = diagram(1, &[(0.0, 2.0)], &[]);
        let empty = PersistenceDiagram::empty(1);
        assert_eq!(bottleneck(&d, &empty).unwrap(), 1.0);
        assert_eq!(bottleneck(&empty, &d).unwrap(), 1.0);
    }

    #[test]
    fn bottleneck_prefers_direct_match() {
        let d1 = diagram(0, &[(0.0, 2.0)], &[]);
        let d2 = diagram(0, &[(0.0, 3.0)], &[]);
        assert_eq!(bottleneck(&d1, &d2).unwrap(), 1.0);
    }

    #[test]
    fn bottleneck_rejects_mixed_dimensions() {
        let d1 = diagram(0, &[], &[]);
        let d2 = diagram(1, &[], &[]);
        assert!(matches!(
            bottleneck(&d1, &d2),
            Err(Error::DiagramDimensionMismatch { left: 0, right: 1 })
        ));
    }

    #[test]
    fn unequal_essential_counts_are_infinitely_far() {
        let d1 = diagram(0, &[], &[0.0]);
        let d2 = diagram(0, &[], &[0.0, 0.0]);
        assert_eq!(bottleneck(&d1, &d2).unwrap(), f64::INFINITY);
        assert_eq!(wasserstein(&d1, &d2, 2.0).unwrap(), f64::INFINITY);
        assert_eq!(brute_force_bottleneck(&d1, &d2).unwrap(), f64::INFINITY);
    }

    #[test]
    fn essential_births_are_matched_by_value() {
        let d1 = diagram(0, &[], &[0.0]);
        let d2 = diagram(0, &[], &[0.5]);
        assert_eq!(bottleneck(&d1, &d2).unwrap(), 0.5);
    }

    #[test]
    fn wasserstein_identical_is_zero() {
        let d = diagram(0, &[(0.0, 1.0)], &[0.0]);
        assert_eq!(wasserstein(&d, &d, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn wasserstein_single_diagonal_match() {
        let d = diagram(0, &[(0.0, 2.0)], &[]);
        let empty = PersistenceDiagram::empty(0);
        assert!((wasserstein(&d, &empty, 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wasserstein_mixed_matching() {
        let d1 = diagram(0, &[(0.0, 2.0), (0.0, 4.0)], &[]);
        let d2 = diagram(0, &[(0.0, 2.0)], &[]);
        assert!((wasserstein(&d1, &d2, 1.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn wasserstein_rejects_bad_order() {
        let d = PersistenceDiagram::empty(0);
        assert!(matches!(
            wasserstein(&d, &d, 0.5),
            Err(Error::InvalidWassersteinOrder { .. })
        ));
        assert!(wasserstein(&d, &d, f64::INFINITY).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let d1 = diagram(0, &[(0.0, 2.0)], &[]);
        let d2 = diagram(0, &[(0.0, 3.0)], &[]);
        assert_eq!(brute_force_bottleneck(&d1, &d2).unwrap(), 1.0);
        assert_eq!(bottleneck(&d1, &d2).unwrap(), 1.0);

        let empty = PersistenceDiagram::empty(0);
        assert_eq!(brute_force_bottleneck(&empty, &empty).unwrap(), 0.0);

        let d3 = diagram(0, &[(1.0, 3.0), (2.0, 6.0)], &[]);
        let d4 = diagram(0, &[(1.0, 3.0)], &[]);
        assert_eq!(brute_force_bottleneck(&d3, &d4).unwrap(), 2.0);
    }

    #[test]
    fn brute_force_rejects_large_input() {
        let pairs: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, i as f64 + 1.0)).collect();
        let d = diagram(0, &pairs, &[]);
        assert!(matches!(
            brute_force_bottleneck(&d, &d),
            Err(Error::OracleSizeExceeded { size: 10, limit: 8 })
        ));
    }

    #[test]
    fn bottleneck_matching_covers_every_point() {
        let d1 = diagram(0, &[(0.0, 2.0), (1.0, 5.0)], &[0.0]);
        let d2 = diagram(0, &[(0.2, 2.1)], &[0.1]);
        let m = bottleneck_matching(&d1, &d2).unwrap();
        assert_eq!(m.cost, bottleneck(&d1, &d2).unwrap());
        let mut left_seen = vec![false; 2];
        let mut right_seen = vec![false; 1];
        let mut essential_seen = 0;
        for (l, r) in &m.assignments {
            match l {
                MatchEnd::Finite(i) => {
                    assert!(!left_seen[*i]);
                    left_seen[*i] = true;
                }
                MatchEnd::Essential(_) => essential_seen += 1,
                MatchEnd::Diagonal => {}
            }
            if let MatchEnd::Finite(j) = r {
                assert!(!right_seen[*j]);
                right_seen[*j] = true;
            }
        }
        assert!(left_seen.into_iter().all(|s| s));
        assert!(right_seen.into_iter().all(|s| s));
        assert_eq!(essential_seen, 1);
        // every assignment cost is within the bottleneck value
        for (l, r) in &m.assignments {
            let c = match (l, r) {
                (MatchEnd::Finite(i), MatchEnd::Finite(j)) => {
                    linf(d1.finite_pairs()[*i], d2.finite_pairs()[*j])
                }
                (MatchEnd::Finite(i), MatchEnd::Diagonal) => diagonal_cost(d1.finite_pairs()[*i]),
                (MatchEnd::Diagonal, MatchEnd::Finite(j)) => diagonal_cost(d2.finite_pairs()[*j]),
                (MatchEnd::Essential(i), MatchEnd::Essential(j)) => {
                    (d1.essential_births()[*i] - d2.essential_births()[*j]).abs()
                }
                other => panic!("unexpected assignment {other:?}"),
            };
            assert!(c <= m.cost + 1e-15);
        }
    }

    #[test]
    fn wasserstein_matching_cost_is_sum_of_powers() {
        let d1 = diagram(0, &[(0.0, 2.0), (0.0, 4.0)], &[]);
        let d2 = diagram(0, &[(0.0, 2.0)], &[]);
        let m = wasserstein_matching(&d1, &d2, 2.0).unwrap();
        assert!((m.cost - 4.0).abs() < 1e-12); // (0,4) to diagonal costs 2^2
        assert!((m.cost.sqrt() - wasserstein(&d1, &d2, 2.0).unwrap()).abs() < 1e-12);
    }

    /// Exhaustive Wasserstein for cross-checking the Hungarian path.
    fn brute_force_wasserstein_power(
        a: &[(f64, f64)],
        b: &[(f64, f64)],
        p: f64,
        i: usize,
        used: &mut [bool],
        current: f64,
        best: &mut f64,
    ) {
        if i == a.len() {
            let mut total = current;
            for (j, &taken) in used.iter().enumerate() {
                if !taken {
                    total += diagonal_cost(b[j]).powf(p);
                }
            }
            *best = best.min(total);
            return;
        }
        brute_force_wasserstein_power(
            a,
            b,
            p,
            i + 1,
            used,
            current + diagonal_cost(a[i]).powf(p),
            best,
        );
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                brute_force_wasserstein_power(
                    a,
                    b,
                    p,
                    i + 1,
                    used,
                    current + linf(a[i], b[j]).powf(p),
                    best,
                );
                used[j] = false;
            }
        }
    }

    #[test]
    fn hungarian_agrees_with_exhaustive_search() {
        let diagrams = [
            vec![(0.0, 1.0), (0.5, 2.5), (1.0, 1.5)],
            vec![(0.1, 0.9), (2.0, 4.0)],
            vec![(0.0, 3.0)],
            vec![],
        ];
        for a in &diagrams {
            for b in &diagrams {
                for p in [1.0, 2.0, 3.0] {
                    let (fast, _) = finite_wasserstein(a, b, p);
                    let mut slow = f64::INFINITY;
                    let mut used = vec![false; b.len()];
                    brute_force_wasserstein_power(a, b, p, 0, &mut used, 0.0, &mut slow);
                    assert!(
                        (fast - slow).abs() < 1e-9,
                        "p={p} a={a:?} b={b:?}: {fast} vs {slow}"
                    );
                }
            }
        }
    }
}
