use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{unordered_orbit_reps, GridEdgeConfig};
use crate::error::{Error, Result};
use crate::solver::{metric_dimension_with, SolverOptions};

/// The conjecture's bullets, in precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Clause {
    /// No corner endpoint, `Gain′` positive and even, and both offsets at
    /// least `Gain′/2 + 2`.
    #[serde(rename = "four")]
    Four,
    #[serde(rename = "gain_one")]
    GainOne,
    /// `Gain′ ≤ 1`, odd `Gain`, a corner endpoint.
    #[serde(rename = "corner_low_gain_prime")]
    CornerLowGainPrime,
    /// `Gain′ ≥ 3`, odd `Gain`, `Gain − Gain′ ≤ 2`, a corner endpoint.
    #[serde(rename = "corner_narrow")]
    CornerNarrow,
    /// Odd `Gain` with both endpoints at corners.
    #[serde(rename = "both_corners")]
    BothCorners,
    #[serde(rename = "default")]
    Default,
}

impl Clause {
    pub fn value(self) -> usize {
        match self {
            Clause::Four => 4,
            Clause::Default => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub predicted: usize,
    pub clause: Clause,
    /// Every non-default clause whose conditions hold.
    pub matching: Vec<Clause>,
    /// A value-4 clause and a value-2 clause both hold.
    pub conflict: bool,
    pub gain: i64,
    /// `||Δy| − |Δx|| − 1`, not clamped.
    pub gain_prime: i64,
}

/// Evaluates the conjecture on any placement; it only depends on absolute
/// offsets and corner membership.
pub fn conjecture_predict(c: &GridEdgeConfig) -> ConjectureVerdict {
    let adx = c.e.x.abs_diff(c.f.x) as i64;
    let ady = c.e.y.abs_diff(c.f.y) as i64;
    let gain = adx + ady - 1;
    let gain_p = (ady - adx).abs() - 1;
    let corners = [c.e, c.f].iter().filter(|&&p| c.is_corner(p)).count();
    let gain_odd = gain % 2 != 0;

    let mut matching = Vec::new();
    if corners == 0 && gain_p > 0 && gain_p % 2 == 0 && 2 * adx.min(ady) >= gain_p + 4 {
        matching.push(Clause::Four);
    }
    if gain == 1 {
        matching.push(Clause::GainOne);
    }
    if gain_p <= 1 && gain_odd && corners >= 1 {
        matching.push(Clause::CornerLowGainPrime);
    }
    if gain_p >= 3 && gain_odd && gain - gain_p <= 2 && corners >= 1 {
        matching.push(Clause::CornerNarrow);
    }
    if gain_odd && corners == 2 {
        matching.push(Clause::BothCorners);
    }
    let clause = matching.first().copied().unwrap_or(Clause::Default);
    let conflict = matching.contains(&Clause::Four) && matching.len() > 1;
    ConjectureVerdict {
        predicted: clause.value(),
        clause,
        matching,
        conflict,
        gain,
        gain_prime: gain_p,
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Wall-clock allowance; orbits not started in time are skipped and the
    /// report is flagged incomplete.
    pub budget: Option<Duration>,
    pub workers: Option<usize>,
    /// Restricts the check to placements accepted by this predicate.
    pub filter: Option<fn(&GridEdgeConfig) -> bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub config: GridEdgeConfig,
    pub predicted: usize,
    pub clause: Clause,
    /// `None` when the solver found no resolving set of size ≤ 4.
    pub exact: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvedOrbit {
    pub representative: GridEdgeConfig,
    pub members: Vec<GridEdgeConfig>,
    pub exact: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub m: usize,
    /// Placements compared against the solver.
    pub checked: usize,
    /// Symmetry classes actually solved.
    pub orbits_solved: usize,
    /// Exact β over checked placements.
    pub histogram: BTreeMap<String, usize>,
    pub mismatches: Vec<Mismatch>,
    /// Placements where the value-4 clause overlaps a value-2 clause.
    pub conflicts: Vec<GridEdgeConfig>,
    pub incomplete: bool,
    pub runtime_ms: u128,
    #[serde(skip)]
    pub orbits: Vec<SolvedOrbit>,
}

/// Largest vertex count accepted by [`conjecture_verify`].
pub const VERIFY_VERTEX_CAP: usize = 400;

/// Compares the conjecture with the exact metric dimension on every
/// non-adjacent placement. The dimension is computed once per symmetry
/// class, since grid automorphisms preserve it.
pub fn conjecture_verify(n: usize, m: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    if n * m > VERIFY_VERTEX_CAP {
        return Err(Error::invalid(format!(
            "{n}x{m} exceeds the verification cap of {VERIFY_VERTEX_CAP} vertices"
        )));
    }
    if n < 2 || m < 2 {
        return Err(Error::invalid("grid sides must be at least 2"));
    }
    let start = Instant::now();
    let run = || {
        let over_budget = AtomicBool::new(false);
        let work: Vec<_> = unordered_orbit_reps(n, m)
            .into_iter()
            .filter_map(|(rep, orbit)| {
                let members: Vec<_> = match opts.filter {
                    Some(keep) => orbit.into_iter().filter(keep).collect(),
                    None => orbit,
                };
                (!members.is_empty()).then_some((rep, members))
            })
            .collect();
        let orbits: Vec<Option<SolvedOrbit>> = work
            .into_par_iter()
            .map(|(rep, members)| {
                if opts.budget.is_some_and(|b| start.elapsed() > b) {
                    over_budget.store(true, Ordering::Relaxed);
                    return None;
                }
                let d = rep.augmented_distances();
                let exact = match metric_dimension_with(&d, &SolverOptions::with_k_max(4)) {
                    Ok(r) => Some(r.dimension),
                    Err(_) => None,
                };
                Some(SolvedOrbit {
                    representative: rep,
                    members,
                    exact,
                })
            })
            .collect();
        (orbits, over_budget.into_inner())
    };
    let (orbits, incomplete) = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let orbits: Vec<SolvedOrbit> = orbits.into_iter().flatten().collect();

    let mut report = VerifyReport {
        n,
        m,
        checked: 0,
        orbits_solved: orbits.len(),
        histogram: BTreeMap::new(),
        mismatches: Vec::new(),
        conflicts: Vec::new(),
        incomplete,
        runtime_ms: 0,
        orbits: Vec::new(),
    };
    for orbit in &orbits {
        for member in &orbit.members {
            let verdict = conjecture_predict(member);
            report.checked += 1;
            let key = orbit
                .exact
                .map_or("unresolved".to_string(), |v| v.to_string());
            *report.histogram.entry(key).or_default() += 1;
            if verdict.conflict {
                report.conflicts.push(*member);
            }
            if orbit.exact != Some(verdict.predicted) {
                report.mismatches.push(Mismatch {
                    config: *member,
                    predicted: verdict.predicted,
                    clause: verdict.clause,
                    exact: orbit.exact,
                });
            }
        }
    }
    report.mismatches.sort_by_key(|mm| mm.config);
    report.conflicts.sort();
    report.orbits = orbits;
    report.runtime_ms = start.elapsed().as_millis();
    Ok(report)
}
