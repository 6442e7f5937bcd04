//! d-dimensional grids: the counting lower bound and the `2d + 2` landmark
//! construction for one extra edge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, GridShape};
use crate::perturb::{augmented_matrix, ExtraEdge};
use crate::solver::resolution_unchecked;

/// A d-dimensional grid with extra edge `E–F`, coordinates 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DimGridConfig {
    pub dims: Vec<usize>,
    pub e: Vec<usize>,
    pub f: Vec<usize>,
}

impl DimGridConfig {
    pub fn new(dims: Vec<usize>, e: Vec<usize>, f: Vec<usize>) -> Result<Self> {
        let shape = GridShape::new(&dims)?;
        for p in [&e, &f] {
            if !shape.contains(p) {
                return Err(Error::invalid(format!("{p:?} lies outside {dims:?}")));
            }
        }
        let c = DimGridConfig { dims, e, f };
        if c.endpoint_distance() < 2 {
            return Err(Error::invalid("endpoints must be at distance at least 2"));
        }
        Ok(c)
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    pub fn shape(&self) -> GridShape {
        GridShape::new(&self.dims).expect("validated")
    }

    fn endpoint_distance(&self) -> usize {
        self.e
            .iter()
            .zip(&self.f)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    pub fn grid_distances(&self) -> DistanceMatrix {
        let shape = self.shape();
        DistanceMatrix::from_fn(shape.size(), |a, b| shape.distance(a, b))
    }

    pub fn extra_edge(&self, d: &DistanceMatrix) -> ExtraEdge {
        let shape = self.shape();
        ExtraEdge::new(d, shape.id_of(&self.e), shape.id_of(&self.f)).expect("validated")
    }

    pub fn augmented_distances(&self) -> DistanceMatrix {
        let d = self.grid_distances();
        let e = self.extra_edge(&d);
        augmented_matrix(&d, e)
    }

    pub fn swapped(&self) -> Self {
        DimGridConfig {
            dims: self.dims.clone(),
            e: self.f.clone(),
            f: self.e.clone(),
        }
    }

    /// Dimension 1 carries a largest gap and `E ≤ F` in every coordinate.
    pub fn is_canonical(&self) -> bool {
        let gaps: Vec<usize> = self
            .e
            .iter()
            .zip(&self.f)
            .map(|(a, b)| a.abs_diff(*b))
            .collect();
        gaps.iter().all(|&g| g <= gaps[0]) && self.e.iter().zip(&self.f).all(|(a, b)| a <= b)
    }
}

/// Smallest `k` with `(N_Σ − d + 1)^k ≥ N_Π`: each landmark sees at most
/// `N_Σ − d + 1` distinct distances.
pub fn md_lower_bound(dims: &[usize]) -> Result<usize> {
    let shape = GridShape::new(dims)?;
    let d = dims.len();
    let sum: usize = dims.iter().sum();
    let base = (sum + 1 - d) as u128;
    if base <= 1 {
        return Err(Error::Degenerate(format!(
            "{dims:?} has a single vertex; no distance vectors to count"
        )));
    }
    let target = shape.size() as u128;
    let mut k = 0;
    let mut power: u128 = 1;
    while power < target {
        power = power.saturating_mul(base);
        k += 1;
    }
    Ok(k)
}

/// Dimension relabeling followed by per-dimension reflections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimTransform {
    /// New dimension `i` is old dimension `perm[i]`.
    pub perm: Vec<usize>,
    /// Reflect new dimension `i` (`x ↦ n_i + 1 − x`) after relabeling.
    pub reflect: Vec<bool>,
}

impl DimTransform {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && !self.reflect.contains(&true)
    }

    pub fn apply_dims(&self, dims: &[usize]) -> Vec<usize> {
        self.perm.iter().map(|&p| dims[p]).collect()
    }

    pub fn apply_point(&self, dims: &[usize], p: &[usize]) -> Vec<usize> {
        self.perm
            .iter()
            .enumerate()
            .map(|(i, &old)| {
                if self.reflect[i] {
                    dims[old] + 1 - p[old]
                } else {
                    p[old]
                }
            })
            .collect()
    }

    /// Maps a point of the transformed grid back; `dims` are the original sides.
    pub fn invert_point(&self, dims: &[usize], q: &[usize]) -> Vec<usize> {
        let mut p = vec![0; dims.len()];
        for (i, &old) in self.perm.iter().enumerate() {
            p[old] = if self.reflect[i] {
                dims[old] + 1 - q[i]
            } else {
                q[i]
            };
        }
        p
    }
}

/// Moves the lowest-index dimension with the largest gap to the front, then
/// reflects dimensions so that `E ≤ F` coordinatewise.
pub fn canonicalize_ddim(c: &DimGridConfig) -> (DimGridConfig, DimTransform) {
    let d = c.dimension();
    let gaps: Vec<usize> = c.e.iter().zip(&c.f).map(|(a, b)| a.abs_diff(*b)).collect();
    let max = *gaps.iter().max().expect("at least one dimension");
    let lead = gaps.iter().position(|&g| g == max).expect("max exists");
    let mut perm = vec![lead];
    perm.extend((0..d).filter(|&i| i != lead));
    let reflect = perm.iter().map(|&old| c.e[old] > c.f[old]).collect();
    let t = DimTransform { perm, reflect };
    let out = DimGridConfig {
        dims: t.apply_dims(&c.dims),
        e: t.apply_point(&c.dims, &c.e),
        f: t.apply_point(&c.dims, &c.f),
    };
    (out, t)
}

/// `O_1 = (1, …, 1)` and, for `j ≥ 2`, `O_j` = `O_1` with coordinate `j` at
/// `n_j`. Requires canonical input.
pub fn corner_set_o(c: &DimGridConfig) -> Result<Vec<Vec<usize>>> {
    if !c.is_canonical() {
        return Err(Error::precondition(
            "corner set needs a canonical configuration",
        ));
    }
    let d = c.dimension();
    let origin = vec![1; d];
    let mut out = vec![origin.clone()];
    for j in 1..d {
        let mut o = origin.clone();
        o[j] = c.dims[j];
        out.push(o);
    }
    Ok(out)
}

/// Monotone shortest path from `x` to `O_j` (0-based `j`): lower every other
/// coordinate to 1, then raise coordinate `j` to `n_j` (for `j = 0`, lower
/// everything).
pub fn staircase_path(dims: &[usize], x: &[usize], j: usize) -> Vec<Vec<usize>> {
    let mut cur = x.to_vec();
    let mut path = vec![cur.clone()];
    for i in 0..dims.len() {
        if i == j && j != 0 {
            continue;
        }
        while cur[i] > 1 {
            cur[i] -= 1;
            path.push(cur.clone());
        }
    }
    if j != 0 {
        while cur[j] < dims[j] {
            cur[j] += 1;
            path.push(cur.clone());
        }
    }
    path
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoDPlusTwo {
    /// Vertex ids, sorted and deduplicated.
    pub set: Vec<usize>,
    /// Whether the set with `E` and `F` removed still resolves; recorded as
    /// data only.
    pub resolves_without_endpoints: bool,
}

/// Corner sets for both halves (the second from the endpoint-swapped
/// configuration) plus both endpoints. Fails loudly if the set does not
/// resolve the augmented grid.
pub fn resolving_set_2d_plus_2(c: &DimGridConfig) -> Result<TwoDPlusTwo> {
    let shape = c.shape();
    let mut corners = Vec::new();
    for side in [c.clone(), c.swapped()] {
        let (canon, t) = canonicalize_ddim(&side);
        for o in corner_set_o(&canon)? {
            corners.push(shape.id_of(&t.invert_point(&c.dims, &o)));
        }
    }
    corners.sort_unstable();
    corners.dedup();
    let endpoints = [shape.id_of(&c.e), shape.id_of(&c.f)];
    let mut set = corners.clone();
    set.extend(endpoints);
    set.sort_unstable();
    set.dedup();

    let d = c.augmented_distances();
    if !resolution_unchecked(&d, &set).is_resolving() {
        return Err(Error::Fault(format!(
            "2d+2 landmark set {set:?} does not resolve {c:?}"
        )));
    }
    let without: Vec<usize> = corners
        .iter()
        .copied()
        .filter(|v| !endpoints.contains(v))
        .collect();
    let resolves_without_endpoints =
        !without.is_empty() && resolution_unchecked(&d, &without).is_resolving();
    Ok(TwoDPlusTwo {
        set,
        resolves_without_endpoints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::metric_dimension;

    #[test]
    fn lower_bound_examples() {
        assert_eq!(md_lower_bound(&[5, 5]).unwrap(), 2);
        assert_eq!(md_lower_bound(&[2, 2]).unwrap(), 2);
        assert_eq!(md_lower_bound(&[7]).unwrap(), 1);
        assert!(matches!(
            md_lower_bound(&[1, 1, 1]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn lower_bound_reaches_d_for_large_sides() {
        for d in 2..=4usize {
            let n = d.pow(d as u32 - 1);
            assert!(md_lower_bound(&vec![n; d]).unwrap() > d - 1, "d={d}");
        }
    }

    #[test]
    fn canonical_input_is_fixed() {
        let c = DimGridConfig::new(vec![5, 5, 5], vec![1, 2, 2], vec![4, 3, 2]).unwrap();
        let (out, t) = canonicalize_ddim(&c);
        assert!(t.is_identity());
        assert_eq!(out, c);
    }

    #[test]
    fn largest_gap_moves_to_front() {
        let c = DimGridConfig::new(vec![4, 5, 6], vec![3, 1, 2], vec![2, 5, 2]).unwrap();
        let (out, t) = canonicalize_ddim(&c);
        assert_eq!(t.perm, vec![1, 0, 2]);
        assert_eq!(out.dims, vec![5, 4, 6]);
        assert!(out.is_canonical());
        assert_eq!(t.invert_point(&c.dims, &out.e), c.e);
        assert_eq!(t.invert_point(&c.dims, &out.f), c.f);
    }

    #[test]
    fn canonicalization_preserves_md_on_small_3d() {
        let c = DimGridConfig::new(vec![3, 3, 2], vec![3, 1, 2], vec![1, 2, 1]).unwrap();
        let (out, _) = canonicalize_ddim(&c);
        let a = metric_dimension(&c.augmented_distances())
            .unwrap()
            .dimension;
        let b = metric_dimension(&out.augmented_distances())
            .unwrap()
            .dimension;
        assert_eq!(a, b);
    }

    #[test]
    fn two_dim_corner_set_is_p_and_s() {
        let c = DimGridConfig::new(vec![6, 4], vec![2, 2], vec![5, 3]).unwrap();
        assert_eq!(corner_set_o(&c).unwrap(), vec![vec![1, 1], vec![1, 4]]);
    }

    #[test]
    fn corners_resolve_plain_grid_and_sit_in_v1() {
        let c = DimGridConfig::new(vec![4, 4, 4], vec![2, 1, 2], vec![4, 3, 3]).unwrap();
        let shape = c.shape();
        let o: Vec<usize> = corner_set_o(&c)
            .unwrap()
            .iter()
            .map(|p| shape.id_of(p))
            .collect();
        let d = c.grid_distances();
        assert!(resolution_unchecked(&d, &o).is_resolving());
        let (e, f) = (shape.id_of(&c.e), shape.id_of(&c.f));
        assert!(o.iter().all(|&v| d.get(v, e) <= d.get(v, f)));
    }

    #[test]
    fn staircase_is_monotone_shortest() {
        let dims = [4, 5, 3];
        let x = [3, 2, 2];
        for j in 0..3 {
            let path = staircase_path(&dims, &x, j);
            let end = path.last().unwrap();
            let len: usize = end.iter().zip(&x).map(|(a, b)| a.abs_diff(*b)).sum();
            assert_eq!(path.len(), len + 1);
            assert!(end
                .iter()
                .enumerate()
                .all(|(i, &v)| v == if i == j && j > 0 { dims[i] } else { 1 }));
        }
    }

    #[test]
    fn two_d_plus_two_resolves() {
        let c = DimGridConfig::new(vec![5, 5, 5], vec![2, 4, 3], vec![4, 2, 2]).unwrap();
        let r = resolving_set_2d_plus_2(&c).unwrap();
        assert!(r.set.len() <= 8);
        let c2 = DimGridConfig::new(vec![6, 6], vec![2, 3], vec![5, 5]).unwrap();
        assert!(resolving_set_2d_plus_2(&c2).unwrap().set.len() <= 6);
    }
}
