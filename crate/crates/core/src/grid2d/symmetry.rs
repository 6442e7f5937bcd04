use serde::Serialize;

use super::{GridEdgeConfig, Point};

/// A grid automorphism: optional transpose, then `h1` (`x ↦ n+1−x`), then
/// `h2` (`y ↦ m+1−y`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GridSymmetry {
    pub transpose: bool,
    pub h1: bool,
    pub h2: bool,
}

impl GridSymmetry {
    pub fn apply(&self, n: usize, m: usize, p: Point) -> Point {
        let Point { mut x, mut y } = p;
        if self.transpose {
            debug_assert_eq!(n, m);
            std::mem::swap(&mut x, &mut y);
        }
        if self.h1 {
            x = n + 1 - x;
        }
        if self.h2 {
            y = m + 1 - y;
        }
        Point::new(x, y)
    }

    pub fn invert(&self, n: usize, m: usize, p: Point) -> Point {
        let Point { mut x, mut y } = p;
        if self.h2 {
            y = m + 1 - y;
        }
        if self.h1 {
            x = n + 1 - x;
        }
        if self.transpose {
            std::mem::swap(&mut x, &mut y);
        }
        Point::new(x, y)
    }

    /// Image of an ordered configuration; endpoints keep their roles.
    pub fn apply_config(&self, c: &GridEdgeConfig) -> GridEdgeConfig {
        GridEdgeConfig {
            e: self.apply(c.n, c.m, c.e),
            f: self.apply(c.n, c.m, c.f),
            ..*c
        }
    }
}

/// All eight symmetries of a square grid, or the four without transpose on a
/// rectangle.
pub fn symmetry_group(n: usize, m: usize) -> Vec<GridSymmetry> {
    let transposes: &[bool] = if n == m { &[false, true] } else { &[false] };
    let mut out = Vec::with_capacity(8);
    for &transpose in transposes {
        for h1 in [false, true] {
            for h2 in [false, true] {
                out.push(GridSymmetry { transpose, h1, h2 });
            }
        }
    }
    out
}

/// Unordered extra-edge placements on an `n × m` grid grouped into orbits
/// under the grid's symmetries. Each entry is `(representative, orbit)` with
/// the orbit listed as distinct `(E, F)` placements, `E` the smaller id.
pub fn unordered_orbit_reps(n: usize, m: usize) -> Vec<(GridEdgeConfig, Vec<GridEdgeConfig>)> {
    let group = symmetry_group(n, m);
    let size = n * m;
    let point = |id: usize| Point::new(id % n + 1, id / n + 1);
    let id = |p: Point| (p.y - 1) * n + (p.x - 1);
    let mut out = Vec::new();
    for u in 0..size {
        for v in u + 1..size {
            let (pu, pv) = (point(u), point(v));
            if pu.manhattan(pv) < 2 {
                continue;
            }
            let mut images: Vec<(usize, usize)> = group
                .iter()
                .map(|s| {
                    let (a, b) = (id(s.apply(n, m, pu)), id(s.apply(n, m, pv)));
                    (a.min(b), a.max(b))
                })
                .collect();
            images.sort_unstable();
            images.dedup();
            if images[0] != (u, v) {
                continue;
            }
            let orbit = images
                .into_iter()
                .map(|(a, b)| GridEdgeConfig {
                    n,
                    m,
                    e: point(a),
                    f: point(b),
                })
                .collect::<Vec<_>>();
            out.push((orbit[0], orbit));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(symmetry_group(5, 5).len(), 8);
        assert_eq!(symmetry_group(5, 7).len(), 4);
    }

    #[test]
    fn invert_undoes_apply() {
        for s in symmetry_group(6, 6) {
            for x in 1..=6 {
                for y in 1..=6 {
                    let p = Point::new(x, y);
                    assert_eq!(s.invert(6, 6, s.apply(6, 6, p)), p);
                }
            }
        }
    }

    #[test]
    fn orbits_partition_all_placements() {
        for (n, m) in [(4, 4), (5, 5), (4, 6)] {
            let reps = unordered_orbit_reps(n, m);
            let total: usize = reps.iter().map(|(_, o)| o.len()).sum();
            let size = n * m;
            let adjacent = (n - 1) * m + n * (m - 1);
            assert_eq!(total, size * (size - 1) / 2 - adjacent);
            let mut all: Vec<_> = reps.iter().flat_map(|(_, o)| o.clone()).collect();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), total);
        }
    }
}
