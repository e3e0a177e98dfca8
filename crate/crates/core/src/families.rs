//! Closed-form evaluators for the special polygon families: alternate-sided
//! equiangular 2n-gons, perturbed regular n-gons, and the two curvilinear
//! limit families inscribed in the unit circle.
//!
//! Curvilinear convention used throughout: `Pi(alpha)` is the region bounded
//! by a circular arc of central angle `2 alpha` on the unit circle and the
//! chord (length `2 sin alpha`) closing it, so `alpha -> pi` is the full
//! circle (`phi -> e/pi`) and `alpha -> 0` the degenerate sliver
//! (`phi -> sqrt(e/3)`). `Pi(alpha, theta)` replaces the chord by two chords
//! through a third circle point, splitting the complementary half-angle
//! `pi - alpha` into `theta` and `pi - alpha - theta`.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{IsoError, Result};
use crate::functionals::{phi_regular, pseudo_perimeter, tau};
use crate::geometry::SideList;

/// Which closed-form family a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Regular,
    Macnab,
    Perturbed,
    LevyOne,
    LevyTwo,
}

/// Closed-form evaluation record for one parameter point of a family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyPoint {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
    #[serde(rename = "L")]
    pub perimeter: f64,
    #[serde(rename = "A")]
    pub area: f64,
    #[serde(rename = "Lhat")]
    pub lhat: f64,
    pub phi: f64,
    /// `phi / phi0`, the defect ratio `tau`.
    pub ratio: f64,
    pub nu: Option<f64>,
    pub aux: BTreeMap<String, f64>,
}

fn params(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect()
}

/// `phi -> sqrt(e/3)` at the degenerate end of the one-parameter family.
pub fn levy_phi_sliver_limit() -> f64 {
    (E / 3.0).sqrt()
}

/// Reference point: the regular n-gon on the circle of radius `circumradius`.
pub fn regular_point(n: usize, circumradius: f64) -> Result<FamilyPoint> {
    if n < 3 {
        return Err(IsoError::BadCount { n });
    }
    if !(circumradius.is_finite() && circumradius > 0.0) {
        return Err(IsoError::NonPositiveRadius {
            value: circumradius,
        });
    }
    let nf = n as f64;
    let side = 2.0 * circumradius * (PI / nf).sin();
    let sides = SideList::new(vec![side; n])?;
    let area = nf / 2.0 * circumradius * circumradius * (2.0 * PI / nf).sin();
    let ratio = tau(&sides, area)?;
    Ok(FamilyPoint {
        family: Family::Regular,
        params: params(&[("n", nf), ("R", circumradius)]),
        perimeter: sides.perimeter(),
        area,
        lhat: pseudo_perimeter(&sides),
        phi: ratio * phi_regular(n)?,
        ratio,
        nu: Some(crate::functionals::nu(&sides)),
        aux: BTreeMap::new(),
    })
}

/// Side list of the cyclic equiangular 2n-gon alternating between `a` and
/// `b`, starting with `a`.
pub fn macnab_sides(n: usize, a: f64, b: f64) -> Result<SideList> {
    if n < 2 {
        return Err(IsoError::BadCount { n });
    }
    let mut raw = Vec::with_capacity(2 * n);
    for _ in 0..n {
        raw.push(a);
        raw.push(b);
    }
    SideList::new(raw)
}

/// Closed forms for the alternate-sided 2n-gon:
///
/// * `A    = (n / (4 sin(pi/n))) ((a^2+b^2) cos(pi/n) + 2ab)`
/// * `Lhat^2 = (n^2/(n-1)^2) (n(n-2)(a^2+b^2) + n^2 ab + (n-2)^2 ab)`
/// * `ratio = (1 + (E-1)/(n-1)^2)^(-n/2) (1 + (E-1)(1-cos(pi/n))/(1+cos(pi/n)))`
///   with `E = 4ab/(a+b)^2`.
///
/// The regular-polygon reference for `ratio` uses the 2n-gon side count.
pub fn macnab(n: usize, a: f64, b: f64) -> Result<FamilyPoint> {
    if n < 2 {
        return Err(IsoError::BadCount { n });
    }
    for (index, value) in [(0usize, a), (1usize, b)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(IsoError::NonPositiveSide { index, value });
        }
    }
    let nf = n as f64;
    let cos_t = (PI / nf).cos();
    let sin_t = (PI / nf).sin();
    let sq = a * a + b * b;
    let area = nf / (4.0 * sin_t) * (sq * cos_t + 2.0 * a * b);
    let lhat_sq = nf * nf / ((nf - 1.0) * (nf - 1.0))
        * (nf * (nf - 2.0) * sq + nf * nf * a * b + (nf - 2.0) * (nf - 2.0) * a * b);
    let lhat = lhat_sq.sqrt();
    let perimeter = nf * (a + b);
    let eccentricity = 4.0 * a * b / ((a + b) * (a + b));
    let ratio = (1.0 + (eccentricity - 1.0) / ((nf - 1.0) * (nf - 1.0))).powf(-nf / 2.0)
        * (1.0 + (eccentricity - 1.0) * (1.0 - cos_t) / (1.0 + cos_t));
    let phi = ratio * phi_regular(2 * n)?;
    let nu = (perimeter / lhat).powf(nf - 2.0);
    Ok(FamilyPoint {
        family: Family::Macnab,
        params: params(&[("n", nf), ("a", a), ("b", b)]),
        perimeter,
        area,
        lhat,
        phi,
        ratio,
        nu: Some(nu),
        aux: params(&[("E", eccentricity)]),
    })
}

/// Second-order predictions for the perturbed regular n-gon.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PerturbedPrediction {
    #[serde(rename = "L")]
    pub perimeter: f64,
    #[serde(rename = "A")]
    pub area: f64,
    pub ratio: f64,
}

/// A perturbed regular n-gon: the exact cyclic side list plus the
/// second-order closed-form predictions for it.
#[derive(Debug, Clone, Serialize)]
pub struct PerturbedPolygon {
    pub point: FamilyPoint,
    pub sides: SideList,
    pub prediction: PerturbedPrediction,
}

/// Regular n-gon on the circle of radius `circumradius` with two adjacent
/// central half-angles moved to `pi/n - eps` and `pi/n + eps`. The
/// construction stays cyclic with the same circumradius, so exact values come
/// from angle sums; the prediction fields carry the second-order expansions
///
/// * `A   ~ A0 (1 - 4 eps^2 / n)`
/// * `L   ~ L0 (1 - eps^2 / n)`
/// * `ratio ~ 1 - (2 eps^2/(n-2)^2) ((n-2)^2/(2n) + (n-2)/2 + 2/n - 1/sin^2(pi/n))`.
pub fn perturbed_regular(n: usize, eps: f64, circumradius: f64) -> Result<PerturbedPolygon> {
    if n < 4 {
        return Err(IsoError::BadCount { n });
    }
    if !(circumradius.is_finite() && circumradius > 0.0) {
        return Err(IsoError::NonPositiveRadius {
            value: circumradius,
        });
    }
    let nf = n as f64;
    if !(eps.is_finite() && eps.abs() < PI / nf) {
        return Err(IsoError::EpsilonTooLarge);
    }
    let base = PI / nf;
    let mut half_angles = vec![base; n];
    half_angles[0] = base - eps;
    half_angles[1] = base + eps;
    let raw: Vec<f64> = half_angles
        .iter()
        .map(|&t| 2.0 * circumradius * t.sin())
        .collect();
    let sides = SideList::new(raw)?;
    let area: f64 = half_angles
        .iter()
        .map(|&t| circumradius * circumradius / 2.0 * (2.0 * t).sin())
        .sum();
    let perimeter = sides.perimeter();
    let lhat = pseudo_perimeter(&sides);
    let ratio = tau(&sides, area)?;
    let phi = ratio * phi_regular(n)?;
    let nu = crate::functionals::nu(&sides);

    let sin_sq = (PI / nf).sin() * (PI / nf).sin();
    let bracket = (nf - 2.0) * (nf - 2.0) / (2.0 * nf) + (nf - 2.0) / 2.0 + 2.0 / nf
        - 1.0 / sin_sq;
    let area0 = nf / 2.0 * circumradius * circumradius * (2.0 * PI / nf).sin();
    let perimeter0 = 2.0 * nf * circumradius * (PI / nf).sin();
    let prediction = PerturbedPrediction {
        perimeter: perimeter0 * (1.0 - eps * eps / nf),
        area: area0 * (1.0 - 4.0 * eps * eps / nf),
        ratio: 1.0 - 2.0 * eps * eps / ((nf - 2.0) * (nf - 2.0)) * bracket,
    };
    let point = FamilyPoint {
        family: Family::Perturbed,
        params: params(&[("n", nf), ("eps", eps), ("R", circumradius)]),
        perimeter,
        area,
        lhat,
        phi,
        ratio,
        nu: Some(nu),
        aux: params(&[("bracket", bracket)]),
    };
    Ok(PerturbedPolygon {
        point,
        sides,
        prediction,
    })
}

/// `x - sin x` without cancellation, by Taylor series for small `x`.
pub fn x_minus_sin(x: f64) -> f64 {
    if x.abs() >= 0.9 {
        return x - x.sin();
    }
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut acc = term;
    let mut k = 1u32;
    loop {
        // term_{k+1} / term_k = -x^2 / ((2k+2)(2k+3))
        term *= -x2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
        let next = acc + term;
        if next == acc {
            return acc;
        }
        acc = next;
        k += 1;
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < PI) {
        return Err(IsoError::AlphaOutOfRange);
    }
    Ok(())
}

/// One-parameter curvilinear family: arc of central angle `2 alpha` plus the
/// closing chord. All quantities are limits of the inscribed (m+1)-gon:
///
/// * `L = 2 (alpha + sin alpha)`, `A = alpha - sin alpha cos alpha`
/// * `P = (alpha + sin alpha)^(3/2) sqrt(alpha - sin alpha) e^(-alpha/(alpha + sin alpha))`
/// * `Lhat -> L`, with `nu = sqrt((alpha + sin alpha)/(alpha - sin alpha))
///    e^(-sin alpha/(alpha + sin alpha))` capturing the convergence rate.
///
/// `aux` carries `4A/Lhat^2 = (alpha - sin(2 alpha)/2) / (alpha + sin alpha)^2`.
pub fn levy_pi(alpha: f64) -> Result<FamilyPoint> {
    check_alpha(alpha)?;
    let s = alpha.sin();
    let arc_plus = alpha + s;
    let arc_minus = x_minus_sin(alpha);
    let area = x_minus_sin(2.0 * alpha) / 2.0;
    let perimeter = 2.0 * arc_plus;
    let p = arc_plus.powf(1.5) * arc_minus.sqrt() * (-alpha / arc_plus).exp();
    let phi = area / p;
    let ratio = phi * PI / E;
    let nu = (arc_plus / arc_minus).sqrt() * (-s / arc_plus).exp();
    let four_a = area / (arc_plus * arc_plus);
    Ok(FamilyPoint {
        family: Family::LevyOne,
        params: params(&[("alpha", alpha)]),
        perimeter,
        area,
        lhat: perimeter,
        phi,
        ratio,
        nu: Some(nu),
        aux: params(&[("four_a_over_lhat_sq", four_a)]),
    })
}

/// Inscribed (m+1)-gon approximating `Pi(alpha)`: `m` equal chords
/// subdividing the arc of central angle `2 alpha`, plus the closing chord.
pub fn levy_discrete(alpha: f64, m: usize) -> Result<SideList> {
    check_alpha(alpha)?;
    if m < 3 {
        return Err(IsoError::BadCount { n: m });
    }
    let chord = 2.0 * alpha.sin();
    let small = 2.0 * (alpha / m as f64).sin();
    let mut raw = vec![small; m];
    raw.push(chord);
    SideList::new(raw).map_err(|err| match err {
        IsoError::PolygonInequalityViolated { .. } => IsoError::ChordDominates,
        other => other,
    })
}

/// Two-parameter curvilinear family: the closing chord of `Pi(alpha)` is
/// replaced by chords of length `2 sin theta` and `2 sin(alpha + theta)`
/// through a third circle point, `0 <= theta <= pi - alpha`:
///
/// * `L = 2 (alpha + sin theta + sin(alpha + theta))`
/// * `A = alpha - sin alpha cos(alpha + 2 theta)`
/// * `phi = A e^(2 alpha / L) / ((L/2) sqrt(alpha^2 - 4 sin^2(alpha/2) cos^2(alpha/2 + theta)))`
///
/// `phi(alpha, .)` is symmetric about `theta0 = (pi - alpha)/2`; `aux`
/// carries `theta0` and `4A/Lhat^2` evaluated there,
/// `(alpha + sin alpha) / (alpha + 2 cos(alpha/2))^2`.
pub fn levy_pi2(alpha: f64, theta: f64) -> Result<FamilyPoint> {
    check_alpha(alpha)?;
    if !(theta.is_finite() && theta >= 0.0 && theta <= PI - alpha) {
        return Err(IsoError::ThetaOutOfRange);
    }
    let area = (x_minus_sin(2.0 * (alpha + theta)) - x_minus_sin(2.0 * theta)) / 2.0;
    let half_l = alpha + theta.sin() + (alpha + theta).sin();
    let perimeter = 2.0 * half_l;
    // alpha^2 - (sin(alpha+theta) - sin theta)^2, factored to avoid
    // cancellation when theta and alpha are both small.
    let diff = x_minus_sin(alpha + theta) - x_minus_sin(theta);
    let sum = alpha + (alpha + theta).sin() - theta.sin();
    let p = half_l * (diff * sum).sqrt() * (-alpha / half_l).exp();
    let phi = area / p;
    let ratio = phi * PI / E;
    let theta0 = (PI - alpha) / 2.0;
    let q = (alpha + alpha.sin()) / {
        let d = alpha + 2.0 * (alpha / 2.0).cos();
        d * d
    };
    Ok(FamilyPoint {
        family: Family::LevyTwo,
        params: params(&[("alpha", alpha), ("theta", theta)]),
        perimeter,
        area,
        lhat: perimeter,
        phi,
        ratio,
        nu: None,
        aux: params(&[("theta0", theta0), ("four_a_over_lhat_sq_at_theta0", q)]),
    })
}
