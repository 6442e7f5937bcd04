//! Counting canonical placements on the `n × n` grid and the distribution of
//! β under a uniformly random extra edge.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid2d::{conjecture_predict, conjecture_verify, GridEdgeConfig, Point, VerifyOptions};

/// Canonical placements satisfying both assumptions: interior endpoints,
/// `x_F < x_E`, `y_E < y_F`, and `Gain′ = Δy − Δx − 1 ≥ 2`.
pub fn q_enumerate(n: usize) -> impl Iterator<Item = GridEdgeConfig> {
    (2..n.max(2)).flat_map(move |xf| q_with_xf(n, xf))
}

fn q_with_xf(n: usize, xf: usize) -> impl Iterator<Item = GridEdgeConfig> {
    (xf + 1..n).flat_map(move |xe| {
        let a = xe - xf;
        (2..n).flat_map(move |ye| {
            (ye + a + 3..n).map(move |yf| GridEdgeConfig {
                n,
                m: n,
                e: Point::new(xe, ye),
                f: Point::new(xf, yf),
            })
        })
    })
}

/// Membership in `C̄`: `Gain′` even and `Δx ≥ Gain′/2 + 2`.
pub fn in_cbar(c: &GridEdgeConfig) -> bool {
    let gain_p = c.dy() - c.dx() - 1;
    gain_p % 2 == 0 && 2 * c.dx() >= gain_p + 4
}

/// `|Q(n)|` by summing interior placements over offsets `(a, b)`.
pub fn q_size(n: usize) -> u64 {
    let n = n as i64;
    let mut total = 0i64;
    for a in 1..=n - 3 {
        for b in a + 3..=n - 3 {
            total += (n - 2 - a) * (n - 2 - b);
        }
    }
    total.max(0) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CbarCount {
    /// Direct enumeration over `Q`; authoritative.
    pub enumerated: u64,
    /// Summation over `(Gain′/2, Δy)` with `(n − 2 − a)(n − 2 − b)` interior
    /// placements per offset pair.
    pub summed: u64,
    /// The same summation with `(n − a − 1)(n − b − 1)` placements per pair,
    /// which also counts boundary-touching edges.
    pub loose_placements: u64,
}

fn cbar_sum(n: usize, placements: impl Fn(i64, i64, i64) -> i64) -> u64 {
    let n = n as i64;
    let mut total = 0i64;
    let mut i = 1;
    while 3 * (i + 1) <= n - 2 {
        for b in 3 * (i + 1)..=n - 2 {
            let a = b - 2 * i - 1;
            total += placements(n, a, b).max(0);
        }
        i += 1;
    }
    total as u64
}

pub fn cbar_count(n: usize) -> Result<CbarCount> {
    let enumerated = (2..n.max(2))
        .into_par_iter()
        .map(|xf| q_with_xf(n, xf).filter(in_cbar).count() as u64)
        .sum();
    let summed = cbar_sum(n, |n, a, b| (n - 2 - a) * (n - 2 - b));
    let loose_placements = cbar_sum(n, |n, a, b| (n - a - 1) * (n - b - 1));
    if enumerated != summed {
        return Err(Error::Fault(format!(
            "C-bar count at n = {n}: enumeration {enumerated}, summation {summed}"
        )));
    }
    Ok(CbarCount {
        enumerated,
        summed,
        loose_placements,
    })
}

/// `|C̄(n)| / |Q(n)|`.
pub fn fraction_cbar(n: usize) -> Result<Ratio<u64>> {
    let q = q_size(n);
    if q == 0 {
        return Err(Error::UndefinedFraction(format!("Q is empty for n = {n}")));
    }
    Ok(Ratio::new(cbar_count(n)?.enumerated, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exhaustive over placements, exact solver.
    Exact,
    /// Exhaustive over placements, conjectured value.
    Conjecture,
    /// Uniform random ordered vertex pairs, conjectured value.
    Sample,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "conjecture" => Ok(Mode::Conjecture),
            "sample" => Ok(Mode::Sample),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DistributionOptions {
    pub mode: Mode,
    /// Accepted samples in sample mode.
    pub samples: u64,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    /// Largest side accepted in exact mode.
    pub exact_cap: usize,
}

impl Default for DistributionOptions {
    fn default() -> Self {
        DistributionOptions {
            mode: Mode::Conjecture,
            samples: 10_000,
            seed: None,
            workers: None,
            exact_cap: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionReport {
    pub n: usize,
    pub mode: Mode,
    pub counts: BTreeMap<String, u64>,
    pub q_size: u64,
    pub cbar: u64,
    /// `cbar / q_size`; `None` when `Q` is empty.
    pub fraction: Option<f64>,
    pub seed: Option<u64>,
    /// Sampled pairs discarded for lying at distance below 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<u64>,
}

impl DistributionReport {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn share(&self, value: usize) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        self.counts.get(&value.to_string()).copied().unwrap_or(0) as f64 / total as f64
    }
}

/// Samples handled by one deterministic sub-stream.
const SAMPLE_CHUNK: u64 = 4096;

pub fn md_distribution(n: usize, opts: &DistributionOptions) -> Result<DistributionReport> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "grid side must be at least 2, got {n}"
        )));
    }
    let run = || -> Result<(Vec<u64>, Option<u64>)> {
        match opts.mode {
            Mode::Exact => exact_counts(n, opts.exact_cap).map(|c| (c, None)),
            Mode::Conjecture => Ok((conjecture_counts(n), None)),
            Mode::Sample => {
                let seed = opts
                    .seed
                    .ok_or_else(|| Error::invalid("sample mode needs a seed"))?;
                let (c, r) = sample_counts(n, opts.samples, seed);
                Ok((c, Some(r)))
            }
        }
    };
    let (counts, rejected) = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let q = q_size(n);
    let cbar = cbar_count(n)?.enumerated;
    Ok(DistributionReport {
        n,
        mode: opts.mode,
        counts: (2..=4).map(|v| (v.to_string(), counts[v])).collect(),
        q_size: q,
        cbar,
        fraction: (q > 0).then(|| cbar as f64 / q as f64),
        seed: (opts.mode == Mode::Sample).then_some(opts.seed).flatten(),
        rejected,
    })
}

fn point(n: usize, id: usize) -> Point {
    Point::new(id % n + 1, id / n + 1)
}

fn conjecture_counts(n: usize) -> Vec<u64> {
    let size = n * n;
    (0..size)
        .into_par_iter()
        .map(|u| {
            let mut local = vec![0u64; 5];
            let pu = point(n, u);
            for v in u + 1..size {
                let pv = point(n, v);
                if pu.manhattan(pv) < 2 {
                    continue;
                }
                let c = GridEdgeConfig {
                    n,
                    m: n,
                    e: pu,
                    f: pv,
                };
                local[conjecture_predict(&c).predicted] += 1;
            }
            local
        })
        .reduce(|| vec![0; 5], add_counts)
}

fn exact_counts(n: usize, cap: usize) -> Result<Vec<u64>> {
    if n > cap {
        return Err(Error::invalid(format!(
            "exact mode is capped at n = {cap}, got {n}"
        )));
    }
    let report = conjecture_verify(n, n, &VerifyOptions::default())?;
    let mut counts = vec![0u64; 5];
    for orbit in &report.orbits {
        let v = orbit.exact.filter(|v| (2..=4).contains(v)).ok_or_else(|| {
            Error::Fault(format!(
                "{}: metric dimension outside 2..=4",
                orbit.representative
            ))
        })?;
        counts[v] += orbit.members.len() as u64;
    }
    Ok(counts)
}

/// Returns counts and the number of rejected draws. Chunk `i` draws from its
/// own generator seeded with `seed + i`, so results do not depend on the
/// number of threads.
fn sample_counts(n: usize, samples: u64, seed: u64) -> (Vec<u64>, u64) {
    let size = n * n;
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let (counts, rejected) = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let quota = SAMPLE_CHUNK.min(samples - i * SAMPLE_CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let mut local = vec![0u64; 5];
            let mut rejected = 0u64;
            let mut accepted = 0u64;
            while accepted < quota {
                let (pu, pv) = (
                    point(n, rng.gen_range(0..size)),
                    point(n, rng.gen_range(0..size)),
                );
                if pu.manhattan(pv) < 2 {
                    rejected += 1;
                    continue;
                }
                let c = GridEdgeConfig {
                    n,
                    m: n,
                    e: pu,
                    f: pv,
                };
                local[conjecture_predict(&c).predicted] += 1;
                accepted += 1;
            }
            (local, rejected)
        })
        .reduce(
            || (vec![0; 5], 0),
            |(a, ra), (b, rb)| (add_counts(a, b), ra + rb),
        );
    (counts, rejected)
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_enumeration_matches_brute_filter() {
        for n in 5..=7 {
            let mut direct = Vec::new();
            for xe in 1..=n {
                for ye in 1..=n {
                    for xf in 1..=n {
                        for yf in 1..=n {
                            let Ok(c) =
                                GridEdgeConfig::new(n, n, Point::new(xe, ye), Point::new(xf, yf))
                            else {
                                continue;
                            };
                            let dx = c.dx();
                            let dy = c.dy();
                            if c.is_interior(c.e)
                                && c.is_interior(c.f)
                                && dx > 0
                                && dy > 0
                                && dx < dy
                                && dy - dx > 2
                            {
                                direct.push(c);
                            }
                        }
                    }
                }
            }
            let mut listed: Vec<_> = q_enumerate(n).collect();
            listed.sort();
            direct.sort();
            assert_eq!(listed, direct, "n = {n}");
            assert_eq!(q_size(n), listed.len() as u64);
        }
    }

    #[test]
    fn q_is_empty_below_five() {
        for n in 0..5 {
            assert_eq!(q_enumerate(n).count(), 0);
            assert_eq!(q_size(n), 0);
        }
    }

    #[test]
    fn cbar_small_values() {
        for n in 0..=8 {
            assert_eq!(cbar_count(n).unwrap().enumerated, 0, "n = {n}");
        }
        let c9 = cbar_count(9).unwrap();
        // Only (a, b) = (3, 6): 4 * 1 interior placements.
        assert_eq!(c9.enumerated, 4);
        assert_eq!(c9.loose_placements, 5 * 2 + 4);
    }

    #[test]
    fn fraction_undefined_for_tiny_grids() {
        assert!(matches!(fraction_cbar(4), Err(Error::UndefinedFraction(_))));
        assert!(fraction_cbar(9).is_ok());
    }

    #[test]
    fn sample_mode_is_reproducible_and_thread_independent() {
        let base = DistributionOptions {
            mode: Mode::Sample,
            samples: 10_000,
            seed: Some(7),
            ..Default::default()
        };
        let a = md_distribution(20, &base).unwrap();
        let b = md_distribution(
            20,
            &DistributionOptions {
                workers: Some(1),
                ..base.clone()
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 10_000);
        assert!(a.rejected.is_some());
        assert_eq!(a.seed, Some(7));
    }

    #[test]
    fn sample_mode_requires_seed() {
        let opts = DistributionOptions {
            mode: Mode::Sample,
            ..Default::default()
        };
        assert!(md_distribution(10, &opts).is_err());
    }

    #[test]
    fn exact_mode_cap() {
        let opts = DistributionOptions {
            mode: Mode::Exact,
            ..Default::default()
        };
        assert!(md_distribution(9, &opts).is_err());
    }

    #[test]
    fn exact_matches_conjecture_on_small_grid() {
        let exact = md_distribution(
            6,
            &DistributionOptions {
                mode: Mode::Exact,
                ..Default::default()
            },
        )
        .unwrap();
        let conj = md_distribution(6, &DistributionOptions::default()).unwrap();
        assert_eq!(exact.counts, conj.counts);
        assert_eq!(exact.total(), 36 * 35 / 2 - 60);
    }
}
