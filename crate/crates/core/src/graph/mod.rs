//! Simple undirected graphs, all-pairs hop distances, and the graph families
//! used throughout the crate.

mod edgelist;
mod generators;

pub use edgelist::{read_edge_list, write_edge_list};
pub use generators::{grid, gstar, ring, GStar, GridShape};

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Immutable simple undirected graph on vertices `0..vertex_count`.
///
/// Adjacency lists are kept sorted, which makes `has_edge` a binary search and
/// gives a canonical edge order for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, parallel edges and
    /// out-of-range ids.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("parallel edge at vertex {u}")));
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Returns a copy with the edge `u–v` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("vertex out of range: ({u}, {v})")));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::invalid(format!("edge ({u}, {v}) already present")));
        }
        let mut g = self.clone();
        let pos = g.adjacency[u].binary_search(&v).unwrap_err();
        g.adjacency[u].insert(pos, v);
        let pos = g.adjacency[v].binary_search(&u).unwrap_err();
        g.adjacency[v].insert(pos, u);
        Ok(g)
    }

    /// Subgraph induced on `vertices`. The returned map sends new ids to old
    /// ids; new ids follow the ascending order of the old ones.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.vertex_count();
        let mut old_ids: Vec<usize> = vertices.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        if old_ids.is_empty() {
            return Err(Error::invalid("induced subgraph needs at least one vertex"));
        }
        if let Some(&bad) = old_ids.iter().find(|&&v| v >= n) {
            return Err(Error::invalid(format!("vertex {bad} out of range")));
        }
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let adjacency = old_ids
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (new_id[w] != usize::MAX).then_some(new_id[w]))
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| old_ids.iter().map(|&v| l[v].clone()).collect());
        Ok((Graph { adjacency, labels }, old_ids))
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }
}

/// All-pairs hop distances of a connected graph, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    /// Wraps a row-major `n × n` table. The caller guarantees it is a metric.
    pub fn from_raw(n: usize, dist: Vec<u32>) -> Result<Self> {
        if dist.len() != n * n {
            return Err(Error::invalid(format!(
                "distance table of length {} is not {n}x{n}",
                dist.len()
            )));
        }
        Ok(DistanceMatrix { n, dist })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut dist = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                dist.push(f(u, v));
            }
        }
        DistanceMatrix { n, dist }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }
}

/// BFS from every source. Fails on a disconnected graph, naming one
/// unreachable pair.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let mut dist = vec![0u32; n * n];
    if n == 0 {
        return Ok(DistanceMatrix { n, dist });
    }
    dist.par_chunks_mut(n)
        .enumerate()
        .try_for_each(|(s, row)| -> Result<()> {
            for (v, d) in g.bfs(s).into_iter().enumerate() {
                row[v] = d.ok_or(Error::Disconnected(s, v))?;
            }
            Ok(())
        })?;
    Ok(DistanceMatrix { n, dist })
}
