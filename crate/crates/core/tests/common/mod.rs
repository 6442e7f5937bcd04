#![allow(dead_code)]

use edgemd::graph::{apsp, Graph};
use edgemd::grid2d::{GridEdgeConfig, Point};
use edgemd::perturb::ExtraEdge;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random spanning tree on `n` vertices plus each remaining pair with
/// probability `p`.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent.min(order[i]), parent.max(order[i])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Uniform pair at distance at least two, or `None` for a complete graph.
pub fn random_extra_edge(rng: &mut impl Rng, g: &Graph) -> Option<ExtraEdge> {
    let d = apsp(g).ok()?;
    let pairs: Vec<(usize, usize)> = (0..d.n())
        .flat_map(|u| (0..d.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| d.get(u, v) >= 2)
        .collect();
    let &(e, f) = pairs.choose(rng)?;
    ExtraEdge::new(&d, e, f).ok()
}

pub fn random_grid_config(rng: &mut impl Rng, n: usize, m: usize) -> GridEdgeConfig {
    loop {
        let e = Point::new(rng.gen_range(1..=n), rng.gen_range(1..=m));
        let f = Point::new(rng.gen_range(1..=n), rng.gen_range(1..=m));
        if let Ok(c) = GridEdgeConfig::new(n, m, e, f) {
            return c;
        }
    }
}

/// Brute-force special region: `Z` with `d'(A, Z) < d(A, Z)`.
pub fn special_region_brute(g: &Graph, g_prime: &Graph, a: usize) -> Vec<bool> {
    let before = g.bfs(a);
    let after = g_prime.bfs(a);
    before.iter().zip(&after).map(|(x, y)| y < x).collect()
}
