//! Distances after inserting a single edge `E–F`, and what that does to
//! regions, gains, and resolving sets.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{apsp, DistanceMatrix, Graph};
use crate::solver::{self, Resolution, SolverOptions};

/// An edge between two vertices at distance at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtraEdge {
    e: usize,
    f: usize,
}

impl ExtraEdge {
    pub fn new(d: &DistanceMatrix, e: usize, f: usize) -> Result<Self> {
        if e >= d.n() || f >= d.n() {
            return Err(Error::invalid(format!("edge ({e}, {f}) out of range")));
        }
        if d.get(e, f) < 2 {
            return Err(Error::invalid(format!(
                "endpoints {e} and {f} are at distance {}, need at least 2",
                d.get(e, f)
            )));
        }
        Ok(ExtraEdge { e, f })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn swapped(&self) -> Self {
        ExtraEdge {
            e: self.f,
            f: self.e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    /// `AE − AF > 1`: shortcuts leave through `F` and arrive through `E`.
    #[serde(rename = "R_E")]
    RE,
    #[serde(rename = "N")]
    N,
    /// `AE − AF < −1`.
    #[serde(rename = "R_F")]
    RF,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::RE, Region::N, Region::RF];

    pub fn tag(self) -> &'static str {
        match self {
            Region::RE => "R_E",
            Region::N => "N",
            Region::RF => "R_F",
        }
    }
}

pub fn augmented_distance(d: &DistanceMatrix, e: ExtraEdge, a: usize, b: usize) -> u32 {
    let (ef, fe) = (
        d.get(a, e.e) + 1 + d.get(e.f, b),
        d.get(a, e.f) + 1 + d.get(e.e, b),
    );
    d.get(a, b).min(ef).min(fe)
}

/// Distance matrix of the graph with `e` inserted, from the closed form.
pub fn augmented_matrix(d: &DistanceMatrix, e: ExtraEdge) -> DistanceMatrix {
    DistanceMatrix::from_fn(d.n(), |a, b| augmented_distance(d, e, a, b))
}

pub fn augmented_apsp(g: &Graph, e: ExtraEdge) -> Result<DistanceMatrix> {
    Ok(augmented_matrix(&apsp(g)?, e))
}

pub fn region_of(d: &DistanceMatrix, e: ExtraEdge, a: usize) -> Region {
    let diff = i64::from(d.get(a, e.e)) - i64::from(d.get(a, e.f));
    if diff > 1 {
        Region::RE
    } else if diff < -1 {
        Region::RF
    } else {
        Region::N
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionPartition {
    pub region_of: Vec<Region>,
}

impl RegionPartition {
    pub fn members(&self, r: Region) -> Vec<usize> {
        (0..self.region_of.len())
            .filter(|&v| self.region_of[v] == r)
            .collect()
    }

    pub fn regions_json(&self) -> Value {
        json!({
            "R_E": self.members(Region::RE),
            "N": self.members(Region::N),
            "R_F": self.members(Region::RF),
        })
    }
}

pub fn region_partition(d: &DistanceMatrix, e: ExtraEdge) -> RegionPartition {
    RegionPartition {
        region_of: (0..d.n()).map(|a| region_of(d, e, a)).collect(),
    }
}

/// `R_A`: vertices strictly closer to `a` once the edge is present.
pub fn special_region(d: &DistanceMatrix, e: ExtraEdge, a: usize) -> Vec<usize> {
    (0..d.n())
        .filter(|&z| augmented_distance(d, e, a, z) < d.get(a, z))
        .collect()
}

pub fn gain(d: &DistanceMatrix, e: ExtraEdge, a: usize, b: usize) -> u32 {
    d.get(a, b) - augmented_distance(d, e, a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GainProfile {
    pub gain_max: Vec<u32>,
}

pub fn gain_max_closed_form(d: &DistanceMatrix, e: ExtraEdge, a: usize) -> u32 {
    d.get(a, e.e).abs_diff(d.get(a, e.f)).saturating_sub(1)
}

/// Per-vertex maximum gain, computed both from the closed form and by
/// maximizing over every partner; the two must agree.
pub fn gain_profile(d: &DistanceMatrix, e: ExtraEdge) -> Result<GainProfile> {
    let mut gain_max = Vec::with_capacity(d.n());
    for a in 0..d.n() {
        let closed = gain_max_closed_form(d, e, a);
        let brute = (0..d.n()).map(|b| gain(d, e, a, b)).max().unwrap_or(0);
        if closed != brute {
            return Err(Error::Fault(format!(
                "gain_max({a}): closed form {closed}, brute force {brute}"
            )));
        }
        gain_max.push(closed);
    }
    Ok(GainProfile { gain_max })
}

/// `{"regions": {...}, "gain_max": [...]}` for an edge on a distance matrix.
pub fn region_report(d: &DistanceMatrix, e: ExtraEdge) -> Result<Value> {
    Ok(json!({
        "regions": region_partition(d, e).regions_json(),
        "gain_max": gain_profile(d, e)?.gain_max,
    }))
}

/// Which branch of the three-way minimum realizes the new distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DistanceCase {
    /// `AE + 1 + FB`.
    #[serde(rename = "via_EF")]
    ViaEF,
    /// `AF + 1 + EB`.
    #[serde(rename = "via_FE")]
    ViaFE,
    #[serde(rename = "unchanged")]
    Unchanged,
}

/// Picks the branch from region membership alone, then evaluates it.
pub fn classify_distance(
    d: &DistanceMatrix,
    e: ExtraEdge,
    a: usize,
    b: usize,
) -> (DistanceCase, u32) {
    let b_in_ra = augmented_distance(d, e, a, b) < d.get(a, b);
    match (b_in_ra, region_of(d, e, a)) {
        (true, Region::RF) => (DistanceCase::ViaEF, d.get(a, e.e) + 1 + d.get(e.f, b)),
        (true, Region::RE) => (DistanceCase::ViaFE, d.get(a, e.f) + 1 + d.get(e.e, b)),
        _ => (DistanceCase::Unchanged, d.get(a, b)),
    }
}

/// `V1 = {U : UE ≤ UF}`, `V2 = {U : UE ≥ UF}`.
pub fn split_v1_v2(d: &DistanceMatrix, e: ExtraEdge) -> (Vec<usize>, Vec<usize>) {
    let v1 = (0..d.n())
        .filter(|&u| d.get(u, e.e) <= d.get(u, e.f))
        .collect();
    let v2 = (0..d.n())
        .filter(|&u| d.get(u, e.e) >= d.get(u, e.f))
        .collect();
    (v1, v2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub v1_size: usize,
    pub v2_size: usize,
    pub beta_g1: usize,
    pub beta_g2: usize,
    pub bound: usize,
    /// Exact β(G') when the graph is small enough to solve.
    pub exact: Option<usize>,
    pub holds: Option<bool>,
}

/// Vertex count up to which the exact β(G') is computed alongside the bound.
pub const COMPOSITION_EXACT_CAP: usize = 64;

fn exact_md(d: &DistanceMatrix) -> Result<usize> {
    let opts = SolverOptions {
        k_max: d.n().max(1),
        ..Default::default()
    };
    Ok(solver::metric_dimension_with(d, &opts)?.dimension)
}

/// `β(G') ≤ β(G1) + β(G2) + 2` with `G1`, `G2` induced on `V1`, `V2`.
pub fn composition_upper_bound(g: &Graph, e: ExtraEdge) -> Result<CompositionReport> {
    let d = apsp(g)?;
    let (v1, v2) = split_v1_v2(&d, e);
    let mut betas = [0usize; 2];
    for (slot, (name, part)) in betas.iter_mut().zip([("V1", &v1), ("V2", &v2)]) {
        let (sub, _) = g.induced_subgraph(part)?;
        if !sub.is_connected() {
            return Err(Error::InapplicableBound(format!(
                "subgraph induced on {name} is disconnected"
            )));
        }
        *slot = exact_md(&apsp(&sub)?)?;
    }
    let bound = betas[0] + betas[1] + 2;
    let mut report = CompositionReport {
        v1_size: v1.len(),
        v2_size: v2.len(),
        beta_g1: betas[0],
        beta_g2: betas[1],
        bound,
        exact: None,
        holds: None,
    };
    if g.vertex_count() <= COMPOSITION_EXACT_CAP {
        let dp = augmented_matrix(&d, e);
        let opts = SolverOptions::with_k_max(bound);
        match solver::metric_dimension_with(&dp, &opts) {
            Ok(r) => {
                report.exact = Some(r.dimension);
                report.holds = Some(true);
            }
            Err(Error::ExceedsKmax { .. }) => report.holds = Some(false),
            Err(other) => return Err(other),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecreaseReport {
    pub beta_g_prime: usize,
    /// Minimum resolving set of `G'` found by the solver.
    pub witness: Vec<usize>,
    /// Whether `witness ∪ {E, F}` resolves the original graph.
    pub holds: bool,
}

/// A minimum resolving set of `G'` plus both endpoints resolves `G`, so
/// adding an edge lowers β by at most two.
pub fn decrease_bound_check(g: &Graph, e: ExtraEdge) -> Result<DecreaseReport> {
    let d = apsp(g)?;
    let dp = augmented_matrix(&d, e);
    let opts = SolverOptions {
        k_max: d.n().max(1),
        ..Default::default()
    };
    let md = solver::metric_dimension_with(&dp, &opts)?;
    let mut set = md.witness.clone();
    set.extend([e.e, e.f]);
    set.sort_unstable();
    set.dedup();
    let holds = solver::is_resolving(&d, &set)? == Resolution::Resolving;
    Ok(DecreaseReport {
        beta_g_prime: md.dimension,
        witness: md.witness,
        holds,
    })
}

/// Landmarks for the ring `0 – 1 – … – (n−1)` with chord `0 – (x−1)`: the
/// two vertices straddling the middle of the shorter arc side, `⌊x/2⌋ − 1`
/// and `⌊x/2⌋` (0-based).
pub fn ring_chord_set(n: usize, x: usize) -> Result<[usize; 2]> {
    if n < 3 {
        return Err(Error::invalid(format!("ring needs n >= 3, got {n}")));
    }
    if !(3..n).contains(&x) {
        return Err(Error::invalid(format!(
            "chord 0-{} on a ring of {n} joins adjacent or equal vertices",
            x.wrapping_sub(1)
        )));
    }
    Ok([x / 2 - 1, x / 2])
}

/// Resolving pair for an arbitrary chord `u–v` of the ring on `n` vertices,
/// obtained by rotating [`ring_chord_set`].
pub fn ring_chord_set_for(n: usize, u: usize, v: usize) -> Result<[usize; 2]> {
    if u >= n || v >= n {
        return Err(Error::invalid(format!("chord ({u}, {v}) out of range")));
    }
    let x = (v + n - u) % n + 1;
    let [a, b] = ring_chord_set(n, x)?;
    Ok([(a + u) % n, (b + u) % n])
}
