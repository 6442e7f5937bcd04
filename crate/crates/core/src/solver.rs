//! Resolving-set checks and exact metric dimension by iterative deepening.
//!
//! The search enumerates k-subsets of the candidate list in lexicographic
//! order, maintaining the partition of vertices induced by the landmarks
//! chosen so far. Branches are cut only when no extension inside the
//! remaining suffix can separate some pair still sharing a class, so the first
//! hit is the lexicographically smallest minimum witness with or without
//! pruning.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;

/// Outcome of a resolving check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    /// Two distinct vertices (`a < b`) with identical distance vectors.
    Collision(usize, usize),
}

impl Resolution {
    pub fn is_resolving(self) -> bool {
        matches!(self, Resolution::Resolving)
    }
}

/// Checks whether `landmarks` resolves the metric `d` by sorting signature
/// tuples and comparing neighbors.
pub fn is_resolving(d: &DistanceMatrix, landmarks: &[usize]) -> Result<Resolution> {
    if landmarks.is_empty() {
        return Err(Error::invalid("landmark set is empty"));
    }
    if let Some(&bad) = landmarks.iter().find(|&&x| x >= d.n()) {
        return Err(Error::invalid(format!("landmark {bad} out of range")));
    }
    Ok(resolution_unchecked(d, landmarks))
}

pub(crate) fn resolution_unchecked(d: &DistanceMatrix, landmarks: &[usize]) -> Resolution {
    let n = d.n();
    let signature = |v: usize| landmarks.iter().map(move |&x| d.get(x, v));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| signature(a).cmp(signature(b)).then(a.cmp(&b)));
    for w in order.windows(2) {
        if signature(w[0]).eq(signature(w[1])) {
            return Resolution::Collision(w[0].min(w[1]), w[0].max(w[1]));
        }
    }
    Resolution::Resolving
}

/// A vertex pair together with every vertex that tells its members apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedPair {
    pub a: usize,
    pub b: usize,
    pub distinguishers: Vec<usize>,
}

/// Pairs `a < b` whose distinguisher set has at most `threshold` members.
/// Every resolving set must hit each of these sets.
pub fn forced_pairs(d: &DistanceMatrix, threshold: usize) -> Vec<ForcedPair> {
    let n = d.n();
    let mut out = Vec::new();
    for a in 0..n {
        let ra = d.row(a);
        for b in a + 1..n {
            let rb = d.row(b);
            let mut distinguishers = Vec::new();
            for x in 0..n {
                if ra[x] != rb[x] {
                    distinguishers.push(x);
                    if distinguishers.len() > threshold {
                        break;
                    }
                }
            }
            if distinguishers.len() <= threshold {
                out.push(ForcedPair {
                    a,
                    b,
                    distinguishers,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    /// Largest subset size tried before giving up.
    pub k_max: usize,
    /// Distinguisher-set size cap for the hitting-set filter; `None` disables it.
    pub forced_threshold: Option<usize>,
    /// Enables the sound suffix-distinguisher cuts.
    pub prune: bool,
    /// Restricts landmarks to these vertices.
    pub candidates: Option<Vec<usize>>,
    /// Splits each level across threads by first landmark.
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            k_max: 8,
            forced_threshold: Some(8),
            prune: true,
            candidates: None,
            parallel: false,
        }
    }
}

impl SolverOptions {
    pub fn with_k_max(k_max: usize) -> Self {
        SolverOptions {
            k_max,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdResult {
    pub dimension: usize,
    pub witness: Vec<usize>,
    pub explored: u64,
    /// True when the search ran over a strict subset of the vertices, so the
    /// dimension is only an upper bound on β.
    pub candidate_restricted: bool,
}

/// Smallest resolving set of `d` with default options.
pub fn metric_dimension(d: &DistanceMatrix) -> Result<MdResult> {
    metric_dimension_with(d, &SolverOptions::default())
}

pub fn metric_dimension_with(d: &DistanceMatrix, opts: &SolverOptions) -> Result<MdResult> {
    let n = d.n();
    let mut cand: Vec<usize> = match &opts.candidates {
        Some(c) => c.clone(),
        None => (0..n).collect(),
    };
    cand.sort_unstable();
    cand.dedup();
    if let Some(&bad) = cand.iter().find(|&&x| x >= n) {
        return Err(Error::invalid(format!("candidate {bad} out of range")));
    }
    let candidate_restricted = cand.len() < n;

    if n <= 1 {
        return Ok(MdResult {
            dimension: 0,
            witness: Vec::new(),
            explored: 0,
            candidate_restricted,
        });
    }

    let shared = Shared::new(d, cand, opts);
    let explored = AtomicU64::new(0);
    for k in 1..=opts.k_max.min(shared.cand.len()) {
        let found = if opts.parallel {
            (0..=shared.cand.len() - k)
                .into_par_iter()
                .find_map_first(|first| {
                    let mut st = State::new(&shared, k);
                    let hit = st.search_from_first(first);
                    explored.fetch_add(st.explored, Ordering::Relaxed);
                    hit
                })
        } else {
            let mut st = State::new(&shared, k);
            let hit = st.search(0, 0);
            explored.fetch_add(st.explored, Ordering::Relaxed);
            hit.then(|| st.chosen.clone())
        };
        if let Some(positions) = found {
            let witness = positions.iter().map(|&p| shared.cand[p]).collect();
            return Ok(MdResult {
                dimension: k,
                witness,
                explored: explored.load(Ordering::Relaxed),
                candidate_restricted,
            });
        }
    }
    Err(Error::ExceedsKmax {
        k_max: opts.k_max,
        explored: explored.load(Ordering::Relaxed),
    })
}

/// Fixed-size bitsets over candidate positions, packed in one buffer.
#[derive(Debug, Clone)]
struct Bits {
    words: usize,
}

impl Bits {
    fn len_for(bits: usize) -> usize {
        bits.div_ceil(64).max(1)
    }

    fn set(buf: &mut [u64], p: usize) {
        buf[p / 64] |= 1 << (p % 64);
    }

    fn suffix(&self, buf: &mut [u64], start: usize, len: usize) {
        buf.fill(0);
        for p in start..len {
            Self::set(buf, p);
        }
    }

    fn intersects(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }
}

/// Precomputed per-pair distinguisher sets are kept only below this many words.
const PAIR_TABLE_WORD_CAP: usize = 1 << 22;

struct Shared<'a> {
    d: &'a DistanceMatrix,
    cand: Vec<usize>,
    bits: Bits,
    /// Distinguishers of pair `(a, b)`, `a < b`, at `tri(a, b) * words`.
    pair_table: Option<Vec<u64>>,
    /// Forced pairs: members and distinguisher masks over candidate positions.
    forced: Vec<(usize, usize, Vec<u64>)>,
    prune: bool,
    max_dist: u32,
}

impl<'a> Shared<'a> {
    fn new(d: &'a DistanceMatrix, cand: Vec<usize>, opts: &SolverOptions) -> Self {
        let n = d.n();
        let words = Bits::len_for(cand.len());
        let bits = Bits { words };
        let pairs = n * (n - 1) / 2;
        let pair_table = (opts.prune && pairs * words <= PAIR_TABLE_WORD_CAP).then(|| {
            let mut table = vec![0u64; pairs * words];
            table
                .par_chunks_mut(words)
                .enumerate()
                .for_each(|(idx, slot)| {
                    let (a, b) = untri(n, idx);
                    fill_distinguishers(d, &cand, a, b, slot);
                });
            table
        });
        let forced = match (opts.prune, opts.forced_threshold) {
            (true, Some(t)) => forced_pairs(d, t)
                .into_iter()
                .map(|fp| {
                    let mut mask = vec![0u64; words];
                    for x in fp.distinguishers {
                        if let Ok(p) = cand.binary_search(&x) {
                            Bits::set(&mut mask, p);
                        }
                    }
                    (fp.a, fp.b, mask)
                })
                .collect(),
            _ => Vec::new(),
        };
        Shared {
            d,
            cand,
            bits,
            pair_table,
            forced,
            prune: opts.prune,
            max_dist: d.diameter(),
        }
    }

    fn tri(&self, a: usize, b: usize) -> usize {
        let n = self.d.n();
        a * (2 * n - a - 1) / 2 + (b - a - 1)
    }
}

fn untri(n: usize, mut idx: usize) -> (usize, usize) {
    let mut a = 0;
    while idx >= n - a - 1 {
        idx -= n - a - 1;
        a += 1;
    }
    (a, a + 1 + idx)
}

fn fill_distinguishers(d: &DistanceMatrix, cand: &[usize], a: usize, b: usize, out: &mut [u64]) {
    out.fill(0);
    let (ra, rb) = (d.row(a), d.row(b));
    for (p, &x) in cand.iter().enumerate() {
        if ra[x] != rb[x] {
            Bits::set(out, p);
        }
    }
}

/// Per-thread search state for one value of k.
struct State<'s, 'a> {
    sh: &'s Shared<'a>,
    k: usize,
    /// Class id of every vertex after each depth.
    classes: Vec<Vec<u32>>,
    class_count: Vec<usize>,
    scratch: Vec<u32>,
    chosen: Vec<usize>,
    explored: u64,
    first_of: Vec<u32>,
    suffix: Vec<u64>,
    mask: Vec<u64>,
    tmp: Vec<u64>,
}

const UNSET: u32 = u32::MAX;

impl<'s, 'a> State<'s, 'a> {
    fn new(sh: &'s Shared<'a>, k: usize) -> Self {
        let n = sh.d.n();
        let words = sh.bits.words;
        State {
            sh,
            k,
            classes: vec![vec![0; n]; k + 1],
            class_count: vec![1; k + 1],
            scratch: vec![UNSET; n * (sh.max_dist as usize + 1)],
            chosen: Vec::with_capacity(k),
            explored: 0,
            first_of: vec![UNSET; n],
            suffix: vec![0; words],
            mask: vec![0; words],
            tmp: vec![0; words],
        }
    }

    fn search_from_first(&mut self, first: usize) -> Option<Vec<usize>> {
        self.explored += 1;
        self.refine(0, first);
        self.chosen.push(first);
        self.search(1, first + 1).then(|| self.chosen.clone())
    }

    /// Partition at `depth + 1` from the partition at `depth` plus the
    /// landmark at candidate position `p`.
    fn refine(&mut self, depth: usize, p: usize) {
        let d = self.sh.d;
        let x = self.sh.cand[p];
        let width = self.sh.max_dist as usize + 1;
        let row = d.row(x);
        let (lo, hi) = self.classes.split_at_mut(depth + 1);
        let (cur, next) = (&lo[depth], &mut hi[0]);
        let mut fresh = 0u32;
        for v in 0..cur.len() {
            let key = cur[v] as usize * width + row[v] as usize;
            if self.scratch[key] == UNSET {
                self.scratch[key] = fresh;
                fresh += 1;
            }
            next[v] = self.scratch[key];
        }
        for v in 0..cur.len() {
            self.scratch[cur[v] as usize * width + row[v] as usize] = UNSET;
        }
        self.class_count[depth + 1] = fresh as usize;
    }

    fn distinguishers_into(&self, a: usize, b: usize, out: &mut [u64]) {
        match &self.sh.pair_table {
            Some(t) => {
                let w = self.sh.bits.words;
                let i = self.sh.tri(a, b);
                out.copy_from_slice(&t[i * w..(i + 1) * w]);
            }
            None => fill_distinguishers(self.sh.d, &self.sh.cand, a, b, out),
        }
    }

    /// Pairs forming a spanning star of every non-singleton class.
    fn rep_pairs(&mut self, depth: usize) -> Vec<(usize, usize)> {
        let cls = &self.classes[depth];
        let mut pairs = Vec::new();
        for (v, &c) in cls.iter().enumerate() {
            let f = &mut self.first_of[c as usize];
            if *f == UNSET {
                *f = v as u32;
            } else {
                pairs.push((*f as usize, v));
            }
        }
        for &c in cls.iter() {
            self.first_of[c as usize] = UNSET;
        }
        pairs
    }

    fn search(&mut self, depth: usize, start: usize) -> bool {
        let n = self.sh.d.n();
        let len = self.sh.cand.len();
        let r = self.k - depth;
        if self.class_count[depth] == n {
            return depth == self.k;
        }
        if r == 0 || start + r > len {
            return false;
        }
        self.explored += 1;

        if self.sh.prune {
            self.sh.bits.suffix(&mut self.suffix, start, len);
            let reps = self.rep_pairs(depth);
            if r == 1 {
                self.mask.copy_from_slice(&self.suffix);
                for &(a, b) in &reps {
                    let mut tmp = std::mem::take(&mut self.tmp);
                    self.distinguishers_into(a, b, &mut tmp);
                    for (m, t) in self.mask.iter_mut().zip(&tmp) {
                        *m &= t;
                    }
                    self.tmp = tmp;
                    if self.mask.iter().all(|&w| w == 0) {
                        return false;
                    }
                }
                let cls = &self.classes[depth];
                for (a, b, fm) in &self.sh.forced {
                    if cls[*a] == cls[*b] {
                        for (m, t) in self.mask.iter_mut().zip(fm) {
                            *m &= t;
                        }
                    }
                }
                let mask = self.mask.clone();
                for (wi, &word) in mask.iter().enumerate() {
                    let mut w = word;
                    while w != 0 {
                        let p = wi * 64 + w.trailing_zeros() as usize;
                        w &= w - 1;
                        self.explored += 1;
                        self.refine(depth, p);
                        if self.class_count[depth + 1] == n {
                            self.chosen.push(p);
                            return true;
                        }
                    }
                }
                return false;
            }
            for &(a, b) in &reps {
                let mut tmp = std::mem::take(&mut self.tmp);
                self.distinguishers_into(a, b, &mut tmp);
                let ok = Bits::intersects(&tmp, &self.suffix);
                self.tmp = tmp;
                if !ok {
                    return false;
                }
            }
            if !self.forced_feasible(depth, r) {
                return false;
            }
        }

        for p in start..=len - r {
            self.refine(depth, p);
            self.chosen.push(p);
            if self.search(depth + 1, p + 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }

    /// Every still-unseparated forced pair needs a distinguisher in the
    /// suffix, and pairwise disjoint ones each need their own landmark.
    fn forced_feasible(&mut self, depth: usize, r: usize) -> bool {
        let cls = &self.classes[depth];
        let mut used = vec![0u64; self.sh.bits.words];
        let mut disjoint = 0usize;
        for (a, b, fm) in &self.sh.forced {
            if cls[*a] != cls[*b] {
                continue;
            }
            let mut live = false;
            let mut clash = false;
            for ((f, s), u) in fm.iter().zip(&self.suffix).zip(&used) {
                let x = f & s;
                live |= x != 0;
                clash |= x & u != 0;
            }
            if !live {
                return false;
            }
            if !clash {
                for ((u, f), s) in used.iter_mut().zip(fm).zip(&self.suffix) {
                    *u |= f & s;
                }
                disjoint += 1;
                if disjoint > r {
                    return false;
                }
            }
        }
        true
    }
}
