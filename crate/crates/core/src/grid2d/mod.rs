//! Two-dimensional grids with one extra edge: canonical placement, gains,
//! region closed forms, resolving-set constructions, and the conjectured
//! formula for β together with its exhaustive checker.
//!
//! Coordinates are 1-based `(x, y)` with `x` the column in `1..=n` and `y` the
//! row in `1..=m`, row 1 on top. Vertex ids are `(y − 1)·n + (x − 1)`.

mod conjecture;
mod construct;
mod regions;
mod render;
mod symmetry;

pub use conjecture::{
    conjecture_predict, conjecture_verify, Clause, ConjectureVerdict, Mismatch, SolvedOrbit,
    VerifyOptions, VerifyReport,
};
pub use construct::{four_corner_set, resolving_set_even, resolving_set_odd};
pub use regions::{boundary_special_region, normal_region_closed_form, special_regions_flood};
pub use render::{region_map_ascii, region_map_json};
pub use symmetry::{symmetry_group, unordered_orbit_reps, GridSymmetry};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, GridShape};
use crate::perturb::{augmented_matrix, ExtraEdge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub const fn new(x: usize, y: usize) -> Self {
        Point { x, y }
    }

    pub fn manhattan(self, other: Point) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An `n × m` grid (`n` columns, `m` rows) with extra edge `E–F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridEdgeConfig {
    pub n: usize,
    pub m: usize,
    pub e: Point,
    pub f: Point,
}

impl GridEdgeConfig {
    pub fn new(n: usize, m: usize, e: Point, f: Point) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::invalid("grid sides must be positive"));
        }
        for p in [e, f] {
            if !(1..=n).contains(&p.x) || !(1..=m).contains(&p.y) {
                return Err(Error::invalid(format!("{p} lies outside the {n}x{m} grid")));
            }
        }
        if e.manhattan(f) < 2 {
            return Err(Error::invalid(format!(
                "E={e} and F={f} are at distance {}, need at least 2",
                e.manhattan(f)
            )));
        }
        Ok(GridEdgeConfig { n, m, e, f })
    }

    pub fn shape(&self) -> GridShape {
        GridShape::new(&[self.n, self.m]).expect("positive sides")
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.m
    }

    pub fn id(&self, p: Point) -> usize {
        (p.y - 1) * self.n + (p.x - 1)
    }

    pub fn point(&self, id: usize) -> Point {
        Point::new(id % self.n + 1, id / self.n + 1)
    }

    pub fn contains(&self, p: Point) -> bool {
        (1..=self.n).contains(&p.x) && (1..=self.m).contains(&p.y)
    }

    /// `x_E − x_F`.
    pub fn dx(&self) -> i64 {
        self.e.x as i64 - self.f.x as i64
    }

    /// `y_F − y_E`.
    pub fn dy(&self) -> i64 {
        self.f.y as i64 - self.e.y as i64
    }

    /// `P = (1, 1)`, `Q = (n, 1)`, `R = (n, m)`, `S = (1, m)`.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(1, 1),
            Point::new(self.n, 1),
            Point::new(self.n, self.m),
            Point::new(1, self.m),
        ]
    }

    pub fn is_corner(&self, p: Point) -> bool {
        (p.x == 1 || p.x == self.n) && (p.y == 1 || p.y == self.m)
    }

    pub fn is_interior(&self, p: Point) -> bool {
        p.x > 1 && p.x < self.n && p.y > 1 && p.y < self.m
    }

    /// Manhattan distances of the plain grid.
    pub fn grid_distances(&self) -> DistanceMatrix {
        let n = self.n;
        DistanceMatrix::from_fn(self.vertex_count(), |a, b| {
            ((a % n).abs_diff(b % n) + (a / n).abs_diff(b / n)) as u32
        })
    }

    pub fn extra_edge(&self, d: &DistanceMatrix) -> ExtraEdge {
        ExtraEdge::new(d, self.id(self.e), self.id(self.f)).expect("validated at construction")
    }

    /// Distances of the grid with the extra edge.
    pub fn augmented_distances(&self) -> DistanceMatrix {
        let d = self.grid_distances();
        let e = self.extra_edge(&d);
        augmented_matrix(&d, e)
    }

    pub fn augmented_graph(&self) -> Graph {
        self.shape()
            .graph()
            .add_edge(self.id(self.e), self.id(self.f))
            .expect("endpoints at distance two or more")
    }

    pub fn swapped(&self) -> Self {
        GridEdgeConfig {
            e: self.f,
            f: self.e,
            ..*self
        }
    }

    pub fn assumptions(&self) -> AssumptionStatus {
        let (dx, dy) = (self.dx(), self.dy());
        AssumptionStatus {
            orientation: dx >= 0 && dy >= 0 && dx <= dy,
            distinct_columns: dx != 0,
            gain_prime_at_least_two: dy - dx > 2,
            interior_endpoints: self.is_interior(self.e) && self.is_interior(self.f),
        }
    }
}

impl fmt::Display for GridEdgeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} E={} F={}", self.n, self.m, self.e, self.f)
    }
}

/// Per-clause status of the two placement assumptions. The first field is the
/// orientation assumption; the remaining three together form the second one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssumptionStatus {
    /// `x_F ≤ x_E`, `y_E ≤ y_F` and `x_E − x_F ≤ y_F − y_E`.
    pub orientation: bool,
    pub distinct_columns: bool,
    pub gain_prime_at_least_two: bool,
    pub interior_endpoints: bool,
}

impl AssumptionStatus {
    pub fn satisfies_a1(&self) -> bool {
        self.orientation
    }

    pub fn satisfies_a2(&self) -> bool {
        self.distinct_columns && self.gain_prime_at_least_two && self.interior_endpoints
    }

    pub fn all(&self) -> bool {
        self.satisfies_a1() && self.satisfies_a2()
    }
}

/// A number with denominator 2, stored as its double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}", self.as_f64())
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.as_f64())
        }
    }
}

/// Reflections and endpoint swap taking a configuration to canonical form.
/// Applied in the order transpose, `h1`, `h2`, `h3`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalTransform {
    /// Swap `x` and `y` (square grids only).
    pub transpose: bool,
    /// `x ↦ n + 1 − x`.
    pub h1: bool,
    /// `y ↦ m + 1 − y`.
    pub h2: bool,
    /// Swap `E` and `F`.
    pub h3: bool,
}

impl CanonicalTransform {
    pub fn is_identity(&self) -> bool {
        *self == CanonicalTransform::default()
    }

    fn symmetry(&self) -> GridSymmetry {
        GridSymmetry {
            transpose: self.transpose,
            h1: self.h1,
            h2: self.h2,
        }
    }

    pub fn apply_point(&self, n: usize, m: usize, p: Point) -> Point {
        self.symmetry().apply(n, m, p)
    }

    /// Maps a point of the transformed grid back to the original grid.
    pub fn invert_point(&self, n: usize, m: usize, p: Point) -> Point {
        self.symmetry().invert(n, m, p)
    }

    pub fn apply(&self, c: &GridEdgeConfig) -> Result<GridEdgeConfig> {
        if self.transpose && c.n != c.m {
            return Err(Error::CannotCanonicalize(format!(
                "transpose needs a square grid, got {}x{}",
                c.n, c.m
            )));
        }
        let (e, f) = (
            self.apply_point(c.n, c.m, c.e),
            self.apply_point(c.n, c.m, c.f),
        );
        let (e, f) = if self.h3 { (f, e) } else { (e, f) };
        Ok(GridEdgeConfig { e, f, ..*c })
    }
}

/// A configuration satisfying the orientation assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalConfig(GridEdgeConfig);

impl CanonicalConfig {
    pub fn new(c: GridEdgeConfig) -> Result<Self> {
        if !c.assumptions().satisfies_a1() {
            return Err(Error::precondition(format!(
                "{c} is not in canonical orientation"
            )));
        }
        Ok(CanonicalConfig(c))
    }

    pub fn config(&self) -> &GridEdgeConfig {
        &self.0
    }

    /// `(Gain, Gain′)`.
    pub fn gains(&self) -> (i64, i64) {
        let (dx, dy) = (self.0.dx(), self.0.dy());
        (dy + dx - 1, (dy - dx - 1).max(0))
    }

    /// `(α, β)`, the row levels bounding the normal strip left of `F` and
    /// right of `E`.
    pub fn alpha_beta(&self) -> (HalfInt, HalfInt) {
        let c = &self.0;
        let base = 1 + c.f.y as i64 + c.e.y as i64;
        (
            HalfInt::from_twice(base - c.dx()),
            HalfInt::from_twice(base + c.dx()),
        )
    }

    pub(crate) fn require_assumptions(&self) -> Result<()> {
        let s = self.0.assumptions();
        if !s.satisfies_a2() {
            return Err(Error::precondition(format!(
                "{} violates the placement assumption: {s:?}",
                self.0
            )));
        }
        Ok(())
    }
}

/// Applies transpose (square grids only), then `h3` when both offsets are
/// negative, else `h1`/`h2` for the negative one.
pub fn canonicalize(c: &GridEdgeConfig) -> Result<(CanonicalConfig, CanonicalTransform)> {
    let mut t = CanonicalTransform {
        transpose: c.dx().abs() > c.dy().abs(),
        ..Default::default()
    };
    if t.transpose && c.n != c.m {
        return Err(Error::CannotCanonicalize(format!(
            "{c}: |dx| > |dy| on a rectangular grid needs a transpose"
        )));
    }
    let moved = t.apply(c)?;
    match (moved.dx() < 0, moved.dy() < 0) {
        (true, true) => t.h3 = true,
        (dx_neg, dy_neg) => {
            t.h1 = dx_neg;
            t.h2 = dy_neg;
        }
    }
    let out = t.apply(c)?;
    Ok((CanonicalConfig::new(out)?, t))
}
