//! Validated polygon primitives: side lists, vertex polygons, elementary areas.
//!
//! A [`SideList`] is the domain object everything else is built on. Its
//! constructor enforces the polygon inequality `2 a_i < L`, which also
//! guarantees that every factor `1 - 2 a_i / L` used by the functionals is
//! strictly positive.

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{IsoError, Result};

/// Factors `1 - 2 a_i / L` below this are treated as degenerate: the roots
/// and logarithms taken downstream lose all precision there.
pub const NEAR_DEGENERATE_FACTOR: f64 = 1e-14;

/// Solver and comparison tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative tolerance for iterative refinement.
    pub rel_tol: f64,
    /// Absolute tolerance for residual and case tests.
    pub abs_tol: f64,
    /// Iteration cap for the root finder.
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Validated list of side lengths of an n-gon, in input order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SideList {
    lengths: Vec<f64>,
}

impl SideList {
    /// Validates raw lengths into a side list. Order is preserved.
    ///
    /// Rejects lists with fewer than three entries, non-positive or non-finite
    /// entries, and lists where some side reaches half the perimeter (within
    /// [`NEAR_DEGENERATE_FACTOR`]).
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.len() < 3 {
            return Err(IsoError::TooFewSides { n: raw.len() });
        }
        for (index, &value) in raw.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(IsoError::NonPositiveSide { index, value });
            }
        }
        let perimeter: f64 = raw.iter().sum();
        for (index, &value) in raw.iter().enumerate() {
            if 1.0 - 2.0 * value / perimeter < NEAR_DEGENERATE_FACTOR {
                return Err(IsoError::PolygonInequalityViolated { index });
            }
        }
        Ok(Self { lengths: raw })
    }

    /// Number of sides.
    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// Side lengths in input order.
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Perimeter `L`.
    pub fn perimeter(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// Index of the largest side (first one on exact ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &a) in self.lengths.iter().enumerate() {
            if a > self.lengths[best] {
                best = i;
            }
        }
        best
    }

    /// Same sides scaled by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.lengths.iter().map(|a| a * c).collect())
    }
}

impl<'de> Deserialize<'de> for SideList {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: Deserializer<'de>,
    {
        let raw = Vec::<f64>::deserialize(deserializer)?;
        SideList::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Planar point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Simple polygon given by its vertices, normalized to counterclockwise
/// orientation on construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexPolygon {
    vertices: Vec<Point>,
}

impl VertexPolygon {
    /// Builds a polygon from an ordered vertex list. Clockwise input is
    /// reversed rather than rejected; consecutive duplicate vertices are
    /// rejected.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(IsoError::TooFewSides { n: vertices.len() });
        }
        for i in 0..vertices.len() {
            let j = (i + 1) % vertices.len();
            if vertices[i].distance(&vertices[j]) == 0.0 {
                return Err(IsoError::DegenerateVertices);
            }
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Consecutive vertex distances, side `i` running from vertex `i` to `i+1`.
    pub fn side_lengths(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].distance(&self.vertices[(i + 1) % n]))
            .collect()
    }
}

/// Signed area by the cross-product sum; positive for counterclockwise input.
pub fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        acc += vertices[i].x * vertices[j].y - vertices[j].x * vertices[i].y;
    }
    acc / 2.0
}

/// Positive area of a simple polygon by the shoelace formula.
pub fn shoelace_area(polygon: &VertexPolygon) -> Result<f64> {
    let area = signed_area(polygon.vertices()).abs();
    if area < Tolerance::default().abs_tol {
        return Err(IsoError::DegenerateVertices);
    }
    Ok(area)
}

/// Triangle area from its side lengths,
/// `A = (L^2/4) sqrt((1 - 2a/L)(1 - 2b/L)(1 - 2c/L))`.
pub fn heron_area(a: f64, b: f64, c: f64) -> Result<f64> {
    let sides = SideList::new(vec![a, b, c])?;
    let perimeter = sides.perimeter();
    let product: f64 = sides
        .lengths()
        .iter()
        .map(|s| 1.0 - 2.0 * s / perimeter)
        .product();
    Ok(perimeter * perimeter / 4.0 * product.sqrt())
}

/// Upper bound on the area of a quadrilateral with the given sides,
/// attained exactly when the quadrilateral is cyclic.
pub fn brahmagupta_bound(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    let sides = SideList::new(vec![a, b, c, d])?;
    let perimeter = sides.perimeter();
    let product: f64 = sides
        .lengths()
        .iter()
        .map(|s| 1.0 - 2.0 * s / perimeter)
        .product();
    Ok(perimeter * perimeter / 4.0 * product.sqrt())
}

/// Regular n-gon with vertex `k` at angle `2 pi k / n` on the circle of
/// radius `circumradius`.
pub fn regular_polygon(n: usize, circumradius: f64) -> Result<VertexPolygon> {
    if n < 3 {
        return Err(IsoError::BadCount { n });
    }
    if !(circumradius.is_finite() && circumradius > 0.0) {
        return Err(IsoError::NonPositiveRadius {
            value: circumradius,
        });
    }
    let vertices = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Point::new(circumradius * angle.cos(), circumradius * angle.sin())
        })
        .collect();
    VertexPolygon::new(vertices)
}
