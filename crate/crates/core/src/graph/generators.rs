use super::Graph;
use crate::error::{Error, Result};

/// Side lengths of a d-dimensional grid and the mixed-radix id scheme:
/// the 1-based tuple `(x1, …, xd)` has id `Σ (x_i − 1) · Π_{j<i} n_j`, so the
/// first dimension varies fastest. In 2D this is `(y − 1)·n + (x − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridShape {
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl GridShape {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("grid needs at least one dimension"));
        }
        if dims.contains(&0) {
            return Err(Error::invalid("grid side lengths must be at least 1"));
        }
        let mut strides = Vec::with_capacity(dims.len());
        let mut size = 1usize;
        for &d in dims {
            strides.push(size);
            size = size
                .checked_mul(d)
                .ok_or_else(|| Error::invalid("grid too large"))?;
        }
        Ok(GridShape {
            dims: dims.to_vec(),
            strides,
            size,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        coords.len() == self.dims.len()
            && coords
                .iter()
                .zip(&self.dims)
                .all(|(&x, &n)| x >= 1 && x <= n)
    }

    /// Id of a 1-based coordinate tuple. Panics on out-of-range input.
    pub fn id_of(&self, coords: &[usize]) -> usize {
        assert!(self.contains(coords), "coordinates {coords:?} outside grid");
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&x, &s)| (x - 1) * s)
            .sum()
    }

    pub fn coords_of(&self, id: usize) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (id / s) % n + 1)
            .collect()
    }

    /// Manhattan distance between two vertex ids.
    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((a / s) % n).abs_diff((b / s) % n) as u32)
            .sum()
    }

    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for id in 0..self.size {
            for (&n, &s) in self.dims.iter().zip(&self.strides) {
                if (id / s) % n + 1 < n {
                    edges.push((id, id + s));
                }
            }
        }
        Graph::from_edges(self.size, &edges).expect("grid edges are simple")
    }
}

/// Cartesian product of paths with the given side lengths.
pub fn grid(dims: &[usize]) -> Result<Graph> {
    Ok(GridShape::new(dims)?.graph())
}

/// Cycle `0 – 1 – … – (n−1) – 0`.
pub fn ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("ring needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// The layered graph whose metric dimension jumps from logarithmic to linear
/// when its two apex vertices are joined.
#[derive(Debug, Clone)]
pub struct GStar {
    pub graph: Graph,
    /// Level-4 apex.
    pub e: usize,
    /// Level −1 apex.
    pub f: usize,
    /// Number of level-0 ("bit") vertices, `⌈log2 n⌉`.
    pub bits: usize,
    pub n: usize,
}

impl GStar {
    /// Id of `v^(0)_j`, `j` in `1..=bits`.
    pub fn bit_vertex(&self, j: usize) -> usize {
        assert!((1..=self.bits).contains(&j));
        j
    }

    /// Id of `v^(l)_i` for `l` in `1..=3`, `i` in `1..n`.
    pub fn level_vertex(&self, level: usize, i: usize) -> usize {
        assert!((1..=3).contains(&level) && (1..self.n).contains(&i));
        self.bits + (level - 1) * (self.n - 1) + i
    }
}

/// Id layout: `F` = 0, level 0 in ascending `j`, levels 1–3 in ascending `i`,
/// then `E` last. Bit `j` of `i` counts from the most significant of the
/// `⌈log2 n⌉` bits, so `v^(1)_1` only touches `v^(0)_{bits}`.
pub fn gstar(n: usize) -> Result<GStar> {
    if n <= 1 {
        return Err(Error::invalid(format!("gstar needs n > 1, got {n}")));
    }
    let bits = ceil_log2(n);
    let f = 0;
    let level = |l: usize, i: usize| bits + (l - 1) * (n - 1) + i;
    let e = bits + 3 * (n - 1) + 1;
    let count = e + 1;

    let mut edges = Vec::new();
    let mut labels = vec![String::new(); count];
    labels[f] = "F".to_string();
    labels[e] = "E".to_string();
    for (j, label) in (1..=bits).zip(&mut labels[1..=bits]) {
        edges.push((f, j));
        *label = format!("v0_{j}");
    }
    for i in 1..n {
        for j in 1..=bits {
            if (i >> (bits - j)) & 1 == 1 {
                edges.push((j, level(1, i)));
            }
        }
        edges.push((level(1, i), level(2, i)));
        edges.push((level(2, i), level(3, i)));
        edges.push((level(3, i), e));
        for l in 1..=3 {
            labels[level(l, i)] = format!("v{l}_{i}");
        }
    }
    let graph = Graph::from_edges(count, &edges)?.with_labels(labels)?;
    Ok(GStar {
        graph,
        e,
        f,
        bits,
        n,
    })
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    let mut bits = 0;
    while (1usize << bits) < n {
        bits += 1;
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::apsp;

    #[test]
    fn one_dimensional_grid_is_a_path() {
        let g = grid(&[3]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn two_by_two_grid_is_a_four_cycle() {
        let g = grid(&[2, 2]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn three_by_three_grid_counts() {
        let g = grid(&[3, 3]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
        let d = apsp(&g).unwrap();
        assert_eq!(d.get(0, 8), 4);
    }

    #[test]
    fn grid_rejects_bad_dims() {
        assert!(grid(&[]).is_err());
        assert!(grid(&[3, 0]).is_err());
    }

    #[test]
    fn corner_to_corner_edge_on_3x3() {
        let shape = GridShape::new(&[3, 3]).unwrap();
        let g = shape.graph();
        let h = g
            .add_edge(shape.id_of(&[1, 1]), shape.id_of(&[3, 3]))
            .unwrap();
        assert_eq!(h.edge_count(), 13);
    }

    #[test]
    fn mixed_radix_ids_put_first_dimension_fastest() {
        let shape = GridShape::new(&[4, 3]).unwrap();
        assert_eq!(shape.id_of(&[2, 1]), 1);
        assert_eq!(shape.id_of(&[1, 2]), 4);
        assert_eq!(shape.coords_of(11), vec![4, 3]);
    }

    #[test]
    fn ring_basics() {
        assert_eq!(ring(3).unwrap().edge_count(), 3);
        let r4 = ring(4).unwrap();
        assert!((0..4).all(|v| r4.degree(v) == 2));
        let d = apsp(&ring(6).unwrap()).unwrap();
        assert_eq!(d.get(0, 3), 3);
        assert!(ring(2).is_err());
    }

    #[test]
    fn gstar_sizes() {
        let g = gstar(8).unwrap();
        assert_eq!(g.graph.vertex_count(), 26);
        let g2 = gstar(2).unwrap();
        assert_eq!(g2.bits, 1);
        assert_eq!(g2.graph.vertex_count(), 3 + 1 + 2);
        assert!(gstar(1).is_err());
    }

    #[test]
    fn gstar_level_one_vertex_one_touches_lowest_bit_only() {
        let g = gstar(8).unwrap();
        let v = g.level_vertex(1, 1);
        let bit_neighbors: Vec<usize> = g
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| (1..=g.bits).contains(&w))
            .collect();
        assert_eq!(bit_neighbors, vec![g.bit_vertex(3)]);
    }

    #[test]
    fn gstar_level_distances_to_f() {
        let g = gstar(8).unwrap();
        let d = apsp(&g.graph).unwrap();
        for i in 1..8 {
            for l in 1..=3 {
                assert_eq!(d.get(g.level_vertex(l, i), g.f), l as u32 + 1);
            }
        }
        assert_eq!(d.get(g.e, g.f), 5);
    }

    #[test]
    fn gstar_counts_match_closed_forms() {
        for n in 2..=32usize {
            let g = gstar(n).unwrap();
            let bits = ceil_log2(n);
            assert_eq!(g.graph.vertex_count(), 3 * (n - 1) + bits + 2);
            let popcounts: usize = (1..n).map(|i| i.count_ones() as usize).sum();
            assert_eq!(g.graph.edge_count(), bits + popcounts + 3 * (n - 1));
            assert!(g.graph.is_connected());
        }
    }
}
