mod common;

use std::collections::HashSet;

use edgemd::distribution::q_enumerate;
use edgemd::graph::{apsp, DistanceMatrix, Graph, GridShape};
use edgemd::grid2d::{symmetry_group, GridEdgeConfig, Point};
use edgemd::perturb::{
    augmented_apsp, augmented_distance, gain, gain_max_closed_form, region_of, special_region,
    ExtraEdge, Region,
};
use edgemd::solver::{is_resolving, metric_dimension_with, SolverOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_connected_graph, random_extra_edge, random_grid_config};

fn graph_with_edge(n: usize, seed: u64, p: f64) -> Option<(Graph, ExtraEdge)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_connected_graph(&mut rng, n, p);
    let e = random_extra_edge(&mut rng, &g)?;
    Some((g, e))
}

fn grid_config(n: usize, m: usize, seed: u64) -> GridEdgeConfig {
    random_grid_config(&mut ChaCha8Rng::seed_from_u64(seed), n, m)
}

/// Smallest resolving set size by trying every subset in order of size,
/// using a hash set of distance vectors.
fn subset_oracle(d: &DistanceMatrix) -> usize {
    let n = d.n();
    if n <= 1 {
        return 0;
    }
    let mut masks: Vec<u32> = (1..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let distinct: HashSet<Vec<u32>> = (0..n)
            .map(|v| set.iter().map(|&x| d.get(x, v)).collect())
            .collect();
        if distinct.len() == n {
            return set.len();
        }
    }
    unreachable!()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apsp_is_a_metric(n in 2usize..=14, seed: u64, p in 0.0f64..0.4) {
        let g = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let d = apsp(&g).unwrap();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), 0);
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                prop_assert!(u == v || d.get(u, v) > 0);
                prop_assert_eq!(d.get(u, v) == 1, g.has_edge(u, v));
                for w in 0..n {
                    prop_assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w));
                }
            }
        }
    }

    #[test]
    fn grid_distances_are_manhattan(dims in prop::collection::vec(1usize..=4, 1..=3)) {
        let shape = GridShape::new(&dims).unwrap();
        let d = apsp(&shape.graph()).unwrap();
        for a in 0..shape.size() {
            let ca = shape.coords_of(a);
            for b in 0..shape.size() {
                let cb = shape.coords_of(b);
                let manhattan: usize = ca.iter().zip(&cb).map(|(x, y)| x.abs_diff(*y)).sum();
                prop_assert_eq!(d.get(a, b) as usize, manhattan);
            }
        }
    }

    #[test]
    fn augmented_apsp_matches_bfs(n in 3usize..=16, seed: u64, p in 0.0f64..0.3) {
        let Some((g, e)) = graph_with_edge(n, seed, p) else { return Ok(()) };
        let literal = apsp(&g.add_edge(e.e(), e.f()).unwrap()).unwrap();
        prop_assert_eq!(augmented_apsp(&g, e).unwrap(), literal);
    }

    #[test]
    fn special_regions_symmetric_and_anti_transitive(
        n in 3usize..=14, seed: u64, p in 0.0f64..0.3
    ) {
        let Some((g, e)) = graph_with_edge(n, seed, p) else { return Ok(()) };
        let d = apsp(&g).unwrap();
        let regions: Vec<HashSet<usize>> =
            (0..n).map(|a| special_region(&d, e, a).into_iter().collect()).collect();
        for a in 0..n {
            prop_assert!(!regions[a].contains(&a));
            for &b in &regions[a] {
                prop_assert!(regions[b].contains(&a));
                for &c in &regions[b] {
                    prop_assert!(!regions[c].contains(&a), "{} {} {}", a, b, c);
                }
            }
        }
    }

    #[test]
    fn same_special_side_has_no_gain(n in 3usize..=14, seed: u64, p in 0.0f64..0.3) {
        let Some((g, e)) = graph_with_edge(n, seed, p) else { return Ok(()) };
        let d = apsp(&g).unwrap();
        let side: Vec<Region> = (0..n).map(|a| region_of(&d, e, a)).collect();
        for a in 0..n {
            for b in 0..n {
                if side[a] == side[b] && side[a] != Region::N {
                    prop_assert_eq!(augmented_distance(&d, e, a, b), d.get(a, b));
                }
            }
        }
    }

    #[test]
    fn gain_max_is_attained(n in 3usize..=14, seed: u64, p in 0.0f64..0.3) {
        let Some((g, e)) = graph_with_edge(n, seed, p) else { return Ok(()) };
        let d = apsp(&g).unwrap();
        for a in 0..n {
            let brute = (0..n).map(|b| gain(&d, e, a, b)).max().unwrap();
            prop_assert_eq!(gain_max_closed_form(&d, e, a), brute);
        }
    }

    #[test]
    fn positive_grid_gains_share_parity(n in 2usize..=8, m in 2usize..=8, seed: u64) {
        prop_assume!(n * m >= 4);
        let c = grid_config(n, m, seed);
        let d = c.grid_distances();
        let e = c.extra_edge(&d);
        let parity = (d.get(e.e(), e.f()) - 1) % 2;
        for a in 0..d.n() {
            for b in 0..d.n() {
                let g_ab = gain(&d, e, a, b);
                prop_assert!(g_ab == 0 || g_ab % 2 == parity);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_is_minimal_on_small_graphs(n in 2usize..=9, seed: u64, p in 0.0f64..0.5) {
        let g = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let d = apsp(&g).unwrap();
        let r = metric_dimension_with(&d, &SolverOptions::with_k_max(n)).unwrap();
        prop_assert_eq!(r.dimension, subset_oracle(&d));
        prop_assert!(is_resolving(&d, &r.witness).unwrap().is_resolving());
    }

    #[test]
    fn pruning_and_prefilter_do_not_change_the_answer(
        n in 3usize..=12, seed: u64, p in 0.0f64..0.3
    ) {
        let Some((g, e)) = graph_with_edge(n, seed, p) else { return Ok(()) };
        let d = augmented_apsp(&g, e).unwrap();
        let base = SolverOptions::with_k_max(n);
        let reference = metric_dimension_with(&d, &base).unwrap();
        for (prune, threshold, parallel) in
            [(false, None, false), (true, None, false), (true, Some(2), false), (true, Some(8), true)]
        {
            let opts = SolverOptions {
                prune,
                forced_threshold: threshold,
                parallel,
                ..base.clone()
            };
            let r = metric_dimension_with(&d, &opts).unwrap();
            prop_assert_eq!(r.dimension, reference.dimension);
            prop_assert_eq!(&r.witness, &reference.witness);
        }
    }
}

/// Ordered placements with interior endpoints, no shared row or column and
/// `||Δy| − |Δx|| ≥ 3`.
fn p_set(n: usize) -> HashSet<(Point, Point)> {
    let interior: Vec<Point> = (2..n)
        .flat_map(|y| (2..n).map(move |x| Point::new(x, y)))
        .collect();
    let mut out = HashSet::new();
    for &e in &interior {
        for &f in &interior {
            let (ax, ay) = (e.x.abs_diff(f.x), e.y.abs_diff(f.y));
            if ax > 0 && ay > 0 && ax.abs_diff(ay) >= 3 {
                out.insert((e, f));
            }
        }
    }
    out
}

#[test]
fn q_orbits_partition_p() {
    for n in 5..=10 {
        let group = symmetry_group(n, n);
        let mut covered = HashSet::new();
        let mut q_count = 0;
        for c in q_enumerate(n) {
            q_count += 1;
            let images: HashSet<(Point, Point)> = group
                .iter()
                .map(|s| {
                    let h = s.apply_config(&c);
                    (h.e, h.f)
                })
                .collect();
            assert_eq!(images.len(), 8, "{c}");
            for &(e, f) in &images {
                let assumed = GridEdgeConfig::new(n, n, e, f).unwrap().assumptions().all();
                assert_eq!(assumed, (e, f) == (c.e, c.f), "{c} -> {e} {f}");
                assert!(covered.insert((e, f)), "orbits of Q overlap at {e} {f}");
            }
        }
        assert_eq!(covered, p_set(n), "n = {n}");
        assert_eq!(covered.len(), 8 * q_count);
    }
}
