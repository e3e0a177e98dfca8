//! Scalar functionals of a polygon and the identities tying them together.
//!
//! For a side list with perimeter `L` and factors `f_i = 1 - 2 a_i / L`:
//!
//! * `P    = (L^2/4) sqrt(prod f_i)` — the side-length area proxy that
//!   reduces to the triangle and cyclic-quadrilateral area formulas,
//! * `Lhat = L (n/(n-2)) (prod f_i)^(1/n)` — pseudo-perimeter, `Lhat <= L`
//!   with equality exactly for regular polygons,
//! * `phi  = A / P`, `phi0 = phi` of the regular n-gon, `tau = phi / phi0`,
//! * `nu   = (L/Lhat)^(n/2 - 2)`,
//! * `zeta = (4 n tan(pi/n) A / L^2) (Lhat/L)^(n/2)`,
//!
//! plus the classical deficit `L^2 - 4 n tan(pi/n) A` and its
//! pseudo-perimeter analogue `Lhat^2 - 4 n tan(pi/n) A`. `zeta` equals
//! `tau / nu^(2n/(n-4))` whenever `n != 4`; the closed form above is the
//! definition so the `n = 4` exponent singularity never arises.
//!
//! The area is always an explicit argument so that vertex-derived and
//! cyclic areas can both be audited against the same side list.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{IsoError, Result};
use crate::geometry::SideList;

/// Product switches to exp(sum of logs) above this side count to keep the
/// n-th roots of tiny products accurate.
const DIRECT_PRODUCT_MAX_N: usize = 32;

fn log_factor_sum(sides: &SideList) -> f64 {
    let perimeter = sides.perimeter();
    sides
        .lengths()
        .iter()
        .map(|&a| (1.0 - 2.0 * a / perimeter).ln())
        .sum()
}

fn factor_product(sides: &SideList) -> f64 {
    let perimeter = sides.perimeter();
    sides
        .lengths()
        .iter()
        .map(|&a| 1.0 - 2.0 * a / perimeter)
        .product()
}

/// `4 n tan(pi/n)`, the polygon analogue of `4 pi`.
pub fn isoperimetric_constant(n: usize) -> f64 {
    let nf = n as f64;
    4.0 * nf * (PI / nf).tan()
}

/// Side-length area proxy `P = (L^2/4) sqrt(prod (1 - 2 a_i / L))`.
pub fn p_functional(sides: &SideList) -> f64 {
    let l = sides.perimeter();
    let root = if sides.n() <= DIRECT_PRODUCT_MAX_N {
        factor_product(sides).sqrt()
    } else {
        (0.5 * log_factor_sum(sides)).exp()
    };
    l * l / 4.0 * root
}

/// Pseudo-perimeter `Lhat = L (n/(n-2)) (prod (1 - 2 a_i / L))^(1/n)`.
pub fn pseudo_perimeter(sides: &SideList) -> f64 {
    let n = sides.n();
    let l = sides.perimeter();
    let root = if n <= DIRECT_PRODUCT_MAX_N {
        factor_product(sides).powf(1.0 / n as f64)
    } else {
        (log_factor_sum(sides) / n as f64).exp()
    };
    l * n as f64 / (n as f64 - 2.0) * root
}

/// `phi = A / P` for a supplied area.
pub fn phi(sides: &SideList, area: f64) -> Result<f64> {
    if !(area.is_finite() && area > 0.0) {
        return Err(IsoError::NonPositiveArea);
    }
    Ok(area / p_functional(sides))
}

/// `phi` of the regular n-gon: `1 / (n tan(pi/n) (1 - 2/n)^(n/2))`.
pub fn phi_regular(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(IsoError::BadCount { n });
    }
    let nf = n as f64;
    Ok(1.0 / (nf * (PI / nf).tan() * (1.0 - 2.0 / nf).powf(nf / 2.0)))
}

/// Limit of [`phi_regular`] as the side count grows: `e / pi`.
pub fn phi_regular_limit() -> f64 {
    E / PI
}

/// Defect ratio `tau = phi / phi_regular(n)`.
pub fn tau(sides: &SideList, area: f64) -> Result<f64> {
    Ok(phi(sides, area)? / phi_regular(sides.n())?)
}

/// Spread ratio `nu = (L / Lhat)^(n/2 - 2)`; identically 1 for
/// quadrilaterals.
pub fn nu(sides: &SideList) -> f64 {
    let n = sides.n() as f64;
    (sides.perimeter() / pseudo_perimeter(sides)).powf(n / 2.0 - 2.0)
}

/// `zeta = (4 n tan(pi/n) A / L^2) (Lhat / L)^(n/2)`.
pub fn zeta(sides: &SideList, area: f64) -> Result<f64> {
    if !(area.is_finite() && area > 0.0) {
        return Err(IsoError::NonPositiveArea);
    }
    let n = sides.n();
    let l = sides.perimeter();
    let lhat = pseudo_perimeter(sides);
    Ok(isoperimetric_constant(n) * area / (l * l) * (lhat / l).powf(n as f64 / 2.0))
}

/// Classical polygon deficit `L^2 - 4 n tan(pi/n) A`, nonnegative for every
/// n-gon and zero exactly for the regular one.
pub fn classic_deficit(n: usize, perimeter: f64, area: f64) -> f64 {
    perimeter * perimeter - isoperimetric_constant(n) * area
}

/// Pseudo-perimeter deficit `Lhat^2 - 4 n tan(pi/n) A`.
pub fn zhang_deficit(sides: &SideList, area: f64) -> Result<f64> {
    if !(area.is_finite() && area > 0.0) {
        return Err(IsoError::NonPositiveArea);
    }
    let lhat = pseudo_perimeter(sides);
    Ok(lhat * lhat - isoperimetric_constant(sides.n()) * area)
}

/// Both sides of the Bonnesen-type lower bound
/// `Lhat^2 - 4 n tan(pi/n) A >= Lhat^2 (1 - tau)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Corollary2Check {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Sharper bound `Lhat^2 (1 - 1/nu)`, reported when `tau * nu >= 1`.
    pub sharper_rhs: Option<f64>,
}

pub fn corollary2_check(sides: &SideList, area: f64) -> Result<Corollary2Check> {
    let lhs = zhang_deficit(sides, area)?;
    let t = tau(sides, area)?;
    let v = nu(sides);
    let lhat = pseudo_perimeter(sides);
    let rhs = lhat * lhat * (1.0 - t);
    let sharper_rhs = if t * v >= 1.0 {
        Some(lhat * lhat * (1.0 - 1.0 / v))
    } else {
        None
    };
    Ok(Corollary2Check {
        lhs,
        rhs,
        margin: lhs - rhs,
        sharper_rhs,
    })
}

/// `zeta` against its circumradius and inradius bounds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZhangBounds {
    pub zeta: f64,
    /// `1 - (2 R n sin(pi/n) / L - 1)^2`, upper bound.
    pub circumradius_upper: f64,
    /// `1 - (1 - 2 r n tan(pi/n) / L)^2`, upper bound.
    pub inradius_upper: f64,
    /// `(2 r n tan(pi/n) / L)^2`, lower bound.
    pub inradius_lower: f64,
    pub within_circumradius_upper: bool,
    pub within_inradius_upper: bool,
    pub above_inradius_lower: bool,
}

/// Evaluates `zeta` against the three Bonnesen-style bounds built from the
/// circumradius `big_r` and inradius `small_r` of the cyclic realization.
/// Meaningful only when the circumcenter is inside (so `small_r` exists).
pub fn zhang_bounds_check(
    sides: &SideList,
    area: f64,
    big_r: f64,
    small_r: f64,
) -> Result<ZhangBounds> {
    if !(small_r.is_finite() && small_r > 0.0) {
        return Err(IsoError::CenterNotInside);
    }
    let z = zeta(sides, area)?;
    let n = sides.n() as f64;
    let l = sides.perimeter();
    let circum_term = 2.0 * big_r * n * (PI / n).sin() / l - 1.0;
    let inrad_term = 1.0 - 2.0 * small_r * n * (PI / n).tan() / l;
    let circumradius_upper = 1.0 - circum_term * circum_term;
    let inradius_upper = 1.0 - inrad_term * inrad_term;
    let lower_root = 2.0 * small_r * n * (PI / n).tan() / l;
    let inradius_lower = lower_root * lower_root;
    Ok(ZhangBounds {
        zeta: z,
        circumradius_upper,
        inradius_upper,
        inradius_lower,
        within_circumradius_upper: z <= circumradius_upper,
        within_inradius_upper: z <= inradius_upper,
        above_inradius_lower: z >= inradius_lower,
    })
}

/// Relative residuals of the exact identities between the functionals.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityResiduals {
    /// `Lhat` against `(n/(n-2)) (4P)^(2/n) L^((n-4)/n)`.
    pub r10: f64,
    /// `tau` against `(4 n tan(pi/n) A / Lhat^2) nu`.
    pub r14: f64,
    /// `tau` against `(4 n tan(pi/n) A / L^2) nu^(n/(n-4))`; undefined at
    /// `n = 4` where the exponent is singular.
    pub r13: Option<f64>,
}

pub fn identity_residuals(sides: &SideList, area: f64) -> Result<IdentityResiduals> {
    let n = sides.n();
    let nf = n as f64;
    let l = sides.perimeter();
    let lhat = pseudo_perimeter(sides);
    let p = p_functional(sides);
    let t = tau(sides, area)?;
    let v = nu(sides);
    let c = isoperimetric_constant(n);

    let r10_rhs = nf / (nf - 2.0) * (4.0 * p).powf(2.0 / nf) * l.powf((nf - 4.0) / nf);
    let r10 = (lhat - r10_rhs).abs() / lhat.abs();

    let r14_rhs = c * area / (lhat * lhat) * v;
    let r14 = (t - r14_rhs).abs() / t.abs();

    let r13 = if n == 4 {
        None
    } else {
        let r13_rhs = c * area / (l * l) * v.powf(nf / (nf - 4.0));
        Some((t - r13_rhs).abs() / t.abs())
    };

    Ok(IdentityResiduals { r10, r14, r13 })
}

/// Every scalar functional of one polygon, as a flat record.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct FunctionalReport {
    pub n: usize,
    #[serde(rename = "L")]
    pub perimeter: f64,
    #[serde(rename = "A")]
    pub area: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "Lhat")]
    pub lhat: f64,
    pub phi: f64,
    pub phi0: f64,
    pub tau: f64,
    pub nu: f64,
    pub zeta: f64,
    pub classic_deficit: f64,
    pub zhang_deficit: f64,
    pub corollary2_rhs: f64,
}

/// Populates a [`FunctionalReport`] for one side list / area pairing.
pub fn report(sides: &SideList, area: f64) -> Result<FunctionalReport> {
    let n = sides.n();
    let perimeter = sides.perimeter();
    let p = p_functional(sides);
    let lhat = pseudo_perimeter(sides);
    let phi_value = phi(sides, area)?;
    let phi0 = phi_regular(n)?;
    let tau_value = phi_value / phi0;
    let nu_value = nu(sides);
    Ok(FunctionalReport {
        n,
        perimeter,
        area,
        p,
        lhat,
        phi: phi_value,
        phi0,
        tau: tau_value,
        nu: nu_value,
        zeta: zeta(sides, area)?,
        classic_deficit: classic_deficit(n, perimeter, area),
        zhang_deficit: lhat * lhat - isoperimetric_constant(n) * area,
        corollary2_rhs: lhat * lhat * (1.0 - tau_value),
    })
}
