//! Cyclic realization of a side list: circumradius solve with
//! center-inside/center-outside case analysis, vertex synthesis, area and
//! inradius.
//!
//! Writing `theta_i = arcsin(a_i / (2R))` for the half of the central angle
//! subtended by side `i`, the circumradius is the unique `R >= a_max / 2`
//! with
//!
//! * center inside:  `sum_i theta_i = pi`,
//! * center outside: `sum_{i != k} theta_i = theta_k`, `k = argmax a_i`,
//!
//! and the boundary case `theta_k = pi/2` (longest side is a diameter)
//! separating the two. Which equation applies is decided once at
//! `R = a_max / 2`: the inside residual is positive there exactly when the
//! inside equation has a root.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{IsoError, Result};
use crate::geometry::{Point, SideList, Tolerance, VertexPolygon};

/// Position of the circumcenter relative to the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CenterLocation {
    /// Strictly inside; the side half-angles sum to pi.
    Inside,
    /// The longest side is a diameter of the circumscribed circle.
    Boundary,
    /// Outside, beyond the longest side; the payload is that side's index.
    Outside(usize),
}

/// A side list together with its cyclic realization.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicPolygon {
    sides: SideList,
    circumradius: f64,
    half_angles: Vec<f64>,
    center: CenterLocation,
    vertices: VertexPolygon,
}

impl CyclicPolygon {
    pub fn sides(&self) -> &SideList {
        &self.sides
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    /// Half central angles `theta_i = arcsin(a_i / (2R))`, one per side.
    pub fn half_angles(&self) -> &[f64] {
        &self.half_angles
    }

    pub fn center_location(&self) -> CenterLocation {
        self.center
    }

    pub fn vertices(&self) -> &VertexPolygon {
        &self.vertices
    }
}

fn half_angle(side: f64, radius: f64) -> f64 {
    // The ratio can creep above 1 by rounding when R is at its lower bound.
    (side / (2.0 * radius)).min(1.0).asin()
}

/// Residual of the applicable angle equation at radius `r`, decreasing in `r`
/// for the inside case and increasing through its root for the outside case.
fn residual(sides: &[f64], outside_index: Option<usize>, r: f64) -> f64 {
    match outside_index {
        None => sides.iter().map(|&a| half_angle(a, r)).sum::<f64>() - PI,
        Some(k) => {
            let mut acc = 0.0;
            for (i, &a) in sides.iter().enumerate() {
                if i != k {
                    acc += half_angle(a, r);
                }
            }
            acc - half_angle(sides[k], r)
        }
    }
}

/// d(residual)/dR = -(1/R) * sum +- tan(theta_i).
fn residual_derivative(sides: &[f64], outside_index: Option<usize>, r: f64) -> f64 {
    let mut acc = 0.0;
    for (i, &a) in sides.iter().enumerate() {
        let t = half_angle(a, r).tan();
        match outside_index {
            Some(k) if i == k => acc -= t,
            _ => acc += t,
        }
    }
    -acc / r
}

/// Bisection until the bracket is 1e-6 wide in relative terms, then guarded
/// Newton polish. The initial bracket must straddle the root.
///
/// Near the boundary case the residual has a square-root singularity in `R`
/// and one ulp of the radius moves it by ~1e-8, so the polish drives the
/// residual down to the evaluation noise floor or until the bracket is
/// exhausted at machine resolution, and returns the radius with the smallest
/// residual seen.
fn solve_radius(
    sides: &[f64],
    outside_index: Option<usize>,
    mut lo: f64,
    mut hi: f64,
    tol: &Tolerance,
) -> Result<f64> {
    let max_iter = tol.max_iter.max(1);
    let noise_floor = 5e-15 * sides.len() as f64;
    let mut f_lo = residual(sides, outside_index, lo);
    let mut iter = 0usize;
    while hi - lo > 1e-6 * lo {
        if iter >= max_iter {
            return Err(IsoError::NoConvergence);
        }
        iter += 1;
        let mid = 0.5 * (lo + hi);
        let f_mid = residual(sides, outside_index, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut best_r = 0.5 * (lo + hi);
    let mut best_abs = f64::INFINITY;
    let mut r = best_r;
    loop {
        if iter >= max_iter {
            return Err(IsoError::NoConvergence);
        }
        iter += 1;
        let f = residual(sides, outside_index, r);
        if f.abs() < best_abs {
            best_abs = f.abs();
            best_r = r;
        }
        if f.abs() <= noise_floor {
            return Ok(r);
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = r;
            f_lo = f;
        } else {
            hi = r;
        }
        // Bracket exhausted at machine resolution: no representable radius
        // does better than the best one already seen.
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(best_r);
        }
        let df = residual_derivative(sides, outside_index, r);
        let mut next = if df != 0.0 && df.is_finite() {
            r - f / df
        } else {
            0.5 * (lo + hi)
        };
        if !(next > lo && next < hi) || next == r {
            next = 0.5 * (lo + hi);
        }
        r = next;
    }
}

/// Relative distance of `R` to `a_max/2` below which the residual's
/// square-root singularity makes direct radius iteration ulp-limited; such
/// solves are re-run in the offset parametrization.
const NEAR_BOUNDARY_U: f64 = 1e-8;

/// Half-angles at `R = (a_max/2)(1 + s^2)`: the dominant side evaluates as
/// `pi/2 - arcsin(sqrt(u(2+u))/(1+u))` with `u = s^2`, which stays accurate
/// when `u` is many orders below the ulp of `R`.
fn half_angles_at_offset(sides: &[f64], k: usize, s: f64) -> Vec<f64> {
    let u = s * s;
    let scale = 1.0 + u;
    let a_max = sides[k];
    sides
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            if i == k {
                let q = (s * (2.0 + u).sqrt() / scale).min(1.0);
                std::f64::consts::FRAC_PI_2 - q.asin()
            } else {
                (a / (a_max * scale)).min(1.0).asin()
            }
        })
        .collect()
}

fn residual_at_offset(sides: &[f64], k: usize, outside_index: Option<usize>, s: f64) -> f64 {
    let angles = half_angles_at_offset(sides, k, s);
    match outside_index {
        None => angles.iter().sum::<f64>() - PI,
        Some(_) => {
            let mut acc = 0.0;
            for (i, &theta) in angles.iter().enumerate() {
                if i == k {
                    acc -= theta;
                } else {
                    acc += theta;
                }
            }
            acc
        }
    }
}

/// Re-solves a near-boundary root in `s = sqrt(2R/a_max - 1)`, where the
/// residual is smooth with an O(1) slope, and returns the refined offset
/// `u = s^2` together with the half-angles evaluated there.
fn refine_near_boundary(
    sides: &[f64],
    k: usize,
    outside_index: Option<usize>,
    u_guess: f64,
) -> (f64, Vec<f64>) {
    let f_zero = residual_at_offset(sides, k, outside_index, 0.0);
    let mut s_hi = (u_guess.max(1e-18)).sqrt();
    let mut grow = 0;
    while residual_at_offset(sides, k, outside_index, s_hi) * f_zero > 0.0 && grow < 200 {
        s_hi *= 2.0;
        grow += 1;
    }
    let mut lo = 0.0;
    let mut hi = s_hi;
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let f_mid = residual_at_offset(sides, k, outside_index, mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > 0.0) == (f_zero > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    (s * s, half_angles_at_offset(sides, k, s))
}

struct SolvedAngles {
    radius: f64,
    center: CenterLocation,
    half_angles: Vec<f64>,
}

fn solve_cyclic_angles(sides: &SideList, tol: &Tolerance) -> Result<SolvedAngles> {
    let lengths = sides.lengths();
    let k = sides.argmax();
    let a_max = lengths[k];
    let r_min = a_max / 2.0;

    // Case selection at R = a_max / 2, where theta_k = pi/2.
    let probe = residual(lengths, None, r_min);
    if probe.abs() <= tol.abs_tol {
        return Ok(SolvedAngles {
            radius: r_min,
            center: CenterLocation::Boundary,
            half_angles: lengths.iter().map(|&a| half_angle(a, r_min)).collect(),
        });
    }
    let outside_index = if probe > 0.0 {
        None
    } else {
        if lengths.iter().enumerate().any(|(i, &a)| i != k && a == a_max) {
            return Err(IsoError::AmbiguousMax);
        }
        Some(k)
    };
    let mut lo = r_min;
    let mut hi = a_max;
    match outside_index {
        // Inside: residual is positive at the left end and decreases to -pi.
        None => {
            while residual(lengths, None, hi) > 0.0 {
                hi *= 2.0;
                if !hi.is_finite() {
                    return Err(IsoError::NoConvergence);
                }
            }
        }
        // Outside: residual is negative at the left end and turns positive.
        Some(k) => {
            while residual(lengths, Some(k), hi) < 0.0 {
                lo = hi;
                hi *= 2.0;
                if !hi.is_finite() {
                    return Err(IsoError::NoConvergence);
                }
            }
        }
    }
    let radius = solve_radius(lengths, outside_index, lo, hi, tol)?;
    let u_guess = 2.0 * radius / a_max - 1.0;
    if u_guess < NEAR_BOUNDARY_U {
        let (u, half_angles) = refine_near_boundary(lengths, k, outside_index, u_guess);
        return Ok(SolvedAngles {
            radius: r_min * (1.0 + u),
            center: match outside_index {
                None => CenterLocation::Inside,
                Some(k) => CenterLocation::Outside(k),
            },
            half_angles,
        });
    }
    Ok(SolvedAngles {
        radius,
        center: match outside_index {
            None => CenterLocation::Inside,
            Some(k) => CenterLocation::Outside(k),
        },
        half_angles: lengths.iter().map(|&a| half_angle(a, radius)).collect(),
    })
}

/// Solves for the circumradius of the cyclic polygon realizing `sides`,
/// reporting where the circumcenter falls.
pub fn circumradius_of_sides(
    sides: &SideList,
    tol: &Tolerance,
) -> Result<(f64, CenterLocation)> {
    let solved = solve_cyclic_angles(sides, tol)?;
    Ok((solved.radius, solved.center))
}

/// Constructs the cyclic polygon: solves for the circumradius and places the
/// vertices on the circle, vertex 0 at angle 0, side 0 proceeding
/// counterclockwise. The longest side of a center-outside polygon steps back
/// along the circle; every other side steps forward by its central angle.
pub fn build_cyclic(sides: &SideList, tol: &Tolerance) -> Result<CyclicPolygon> {
    let SolvedAngles {
        radius,
        center,
        half_angles,
    } = solve_cyclic_angles(sides, tol)?;
    let outside_index = match center {
        CenterLocation::Outside(k) => Some(k),
        _ => None,
    };
    let mut angle = 0.0_f64;
    let mut vertices = Vec::with_capacity(sides.n());
    for (i, &theta) in half_angles.iter().enumerate() {
        vertices.push(Point::new(radius * angle.cos(), radius * angle.sin()));
        if outside_index == Some(i) {
            angle -= 2.0 * theta;
        } else {
            angle += 2.0 * theta;
        }
    }
    let vertices = VertexPolygon::new(vertices)?;
    Ok(CyclicPolygon {
        sides: sides.clone(),
        circumradius: radius,
        half_angles,
        center,
        vertices,
    })
}

/// Area of the cyclic polygon as a signed sum of center triangles,
/// `A = sum (R^2/2) sin(2 theta_i)` with the longest side counted negatively
/// in the center-outside case.
pub fn cyclic_area(polygon: &CyclicPolygon) -> f64 {
    let r2 = polygon.circumradius * polygon.circumradius;
    let outside_index = match polygon.center {
        CenterLocation::Outside(k) => Some(k),
        _ => None,
    };
    polygon
        .half_angles
        .iter()
        .enumerate()
        .map(|(i, &theta)| {
            let triangle = r2 / 2.0 * (2.0 * theta).sin();
            if outside_index == Some(i) {
                -triangle
            } else {
                triangle
            }
        })
        .sum()
}

/// Distance from the circumcenter to the nearest side,
/// `r = min_i R cos(theta_i)`. Defined only when the center is inside.
pub fn cyclic_inradius(polygon: &CyclicPolygon) -> Result<f64> {
    if polygon.center != CenterLocation::Inside {
        return Err(IsoError::CenterNotInside);
    }
    Ok(polygon
        .half_angles
        .iter()
        .map(|&theta| polygon.circumradius * theta.cos())
        .fold(f64::INFINITY, f64::min))
}
