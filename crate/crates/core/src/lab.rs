//! Population testing of the polygon inequalities: deterministic sampling,
//! grid sweeps, trichotomy classification, counterexample search, and corpus
//! summaries.
//!
//! Every sampled side list is paired with the area of its cyclic realization,
//! so the verdicts quantify over cyclic polygons. Margins are stored in
//! scale-invariant form (deficits divided by `L^2` or `Lhat^2`), with a
//! `1e-9` band around zero reported as `Boundary` rather than `Violated` to
//! keep rounding at equality cases from producing false counterexamples.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::{build_cyclic, cyclic_area};
use crate::error::{IsoError, Result};
use crate::families::macnab_sides;
use crate::functionals::{self, FunctionalReport};
use crate::geometry::{SideList, Tolerance};
use crate::rng::CounterRng;

/// Half-width of the scale-invariant equality band for verdicts and
/// classification.
pub const VERDICT_BAND: f64 = 1e-9;

/// Where a trial's side list came from.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type")]
pub enum Source {
    Random { seed: u64, index: u64 },
    Grid { family: String, params: BTreeMap<String, f64> },
    Search { step: u64 },
}

/// Trichotomy cell of one polygon, from the relative position of `tau`
/// against 1 and `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem1Case {
    #[serde(rename = "RegularEquality")]
    RegularEquality,
    #[serde(rename = "CaseI_tau_le_1")]
    CaseI,
    #[serde(rename = "CaseII_between")]
    CaseII,
    #[serde(rename = "CaseIII_nu_lt_tau")]
    CaseIII,
}

impl fmt::Display for Theorem1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Theorem1Case::RegularEquality => "RegularEquality",
            Theorem1Case::CaseI => "CaseI_tau_le_1",
            Theorem1Case::CaseII => "CaseII_between",
            Theorem1Case::CaseIII => "CaseIII_nu_lt_tau",
        };
        f.write_str(name)
    }
}

impl Theorem1Case {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "RegularEquality" => Some(Self::RegularEquality),
            "CaseI_tau_le_1" => Some(Self::CaseI),
            "CaseII_between" => Some(Self::CaseII),
            "CaseIII_nu_lt_tau" => Some(Self::CaseIII),
            _ => None,
        }
    }
}

/// Outcome of one inequality on one polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Boundary,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Boundary => "Boundary",
            Verdict::Violated => "Violated",
        })
    }
}

impl Verdict {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "Holds" => Some(Self::Holds),
            "Boundary" => Some(Self::Boundary),
            "Violated" => Some(Self::Violated),
            _ => None,
        }
    }

    /// Verdict of `margin >= 0` with the equality band.
    pub fn from_margin(margin: f64) -> Self {
        if margin.abs() <= VERDICT_BAND {
            Verdict::Boundary
        } else if margin > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

/// Verdict plus the scale-invariant margin it was derived from.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub verdict: Verdict,
    pub margin: f64,
}

impl ConjectureVerdict {
    fn from_margin(margin: f64) -> Self {
        Self {
            verdict: Verdict::from_margin(margin),
            margin,
        }
    }
}

/// Per-conjecture verdicts for one polygon. Margins: `phi - e/pi` (1a),
/// `1 - phi` (1b), `zhang_deficit / Lhat^2` (2), `min(tau - 1, nu - tau)` (3).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Verdicts {
    pub c1a: ConjectureVerdict,
    pub c1b: ConjectureVerdict,
    pub c2: ConjectureVerdict,
    pub c3: ConjectureVerdict,
}

/// Derives all four verdicts from a functional report.
pub fn verdicts_of_report(report: &FunctionalReport) -> Verdicts {
    let c1a = report.phi - functionals::phi_regular_limit();
    let c1b = 1.0 - report.phi;
    let c2 = report.zhang_deficit / (report.lhat * report.lhat);
    let c3 = (report.tau - 1.0).min(report.nu - report.tau);
    Verdicts {
        c1a: ConjectureVerdict::from_margin(c1a),
        c1b: ConjectureVerdict::from_margin(c1b),
        c2: ConjectureVerdict::from_margin(c2),
        c3: ConjectureVerdict::from_margin(c3),
    }
}

/// Classifies `tau` against 1 and `nu` with the equality band.
pub fn classify_theorem1(sides: &SideList, area: f64) -> Result<Theorem1Case> {
    let tau = functionals::tau(sides, area)?;
    let nu = functionals::nu(sides);
    Ok(classify_values(tau, nu))
}

pub fn classify_values(tau: f64, nu: f64) -> Theorem1Case {
    if (tau - 1.0).abs() <= VERDICT_BAND && (nu - 1.0).abs() <= VERDICT_BAND {
        Theorem1Case::RegularEquality
    } else if tau < 1.0 - VERDICT_BAND {
        Theorem1Case::CaseI
    } else if tau <= nu + VERDICT_BAND {
        Theorem1Case::CaseII
    } else {
        Theorem1Case::CaseIII
    }
}

/// One row of a sweep, sample, or search run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    pub source: Source,
    pub sides: SideList,
    pub report: FunctionalReport,
    pub theorem1_case: Theorem1Case,
    pub verdicts: Verdicts,
}

/// Side lengths drawn as normalized exponential variates (sum 1),
/// resampled until the polygon inequality holds. Deterministic in
/// `(n, seed)`: attempt `t` consumes stream indices `t*n .. t*n + n`.
///
/// # Panics
/// If `n < 3`, which can never yield a polygon.
pub fn sample_cyclic(n: usize, seed: u64) -> SideList {
    assert!(n >= 3, "sample_cyclic needs n >= 3, got {n}");
    let rng = CounterRng::new(seed);
    let mut attempt = 0u64;
    loop {
        let base = attempt * n as u64;
        let draws: Vec<f64> = (0..n as u64).map(|i| rng.exp_at(base + i)).collect();
        let total: f64 = draws.iter().sum();
        if let Ok(sides) = SideList::new(draws.iter().map(|d| d / total).collect()) {
            return sides;
        }
        attempt += 1;
    }
}

/// Builds the cyclic realization of `sides` and evaluates one trial.
pub fn evaluate_trial(
    trial_id: u64,
    source: Source,
    sides: SideList,
    tol: &Tolerance,
) -> Result<TrialRecord> {
    let polygon = build_cyclic(&sides, tol)?;
    let area = cyclic_area(&polygon);
    let report = functionals::report(&sides, area)?;
    let theorem1_case = classify_values(report.tau, report.nu);
    let verdicts = verdicts_of_report(&report);
    Ok(TrialRecord {
        trial_id,
        source,
        sides,
        report,
        theorem1_case,
        verdicts,
    })
}

/// A sweep population: either a deterministic grid over one family or a
/// seeded random sample.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    /// Regular n-gons with unit side, `n = n_min ..= n_max`.
    Regular { n_min: usize, n_max: usize },
    /// Alternate-sided 2n-gons with `a = 1` and `b` on a uniform grid of
    /// `steps` ratios in `[ratio_min, ratio_max]`.
    Macnab {
        n_min: usize,
        n_max: usize,
        ratio_min: f64,
        ratio_max: f64,
        steps: usize,
    },
    /// Perturbed regular n-gons, `eps` on a uniform grid.
    Perturbed {
        n_min: usize,
        n_max: usize,
        eps_min: f64,
        eps_max: f64,
        steps: usize,
    },
    /// `count` random cyclic n-gons from [`sample_cyclic`].
    Random { n: usize, count: usize, seed: u64 },
}

fn grid_value(lo: f64, hi: f64, steps: usize, index: usize) -> f64 {
    if steps <= 1 {
        lo
    } else {
        lo + (hi - lo) * index as f64 / (steps - 1) as f64
    }
}

/// Sweep result: records in deterministic trial order plus a summary.
#[derive(Debug, Clone, Serialize)]
pub struct SweepOutput {
    pub records: Vec<TrialRecord>,
    pub summary: CorpusSummary,
}

/// Runs one sweep. Grid populations are emitted in lexicographic parameter
/// order, samples by index; a record-level failure is captured in the
/// summary instead of aborting the run.
pub fn sweep(spec: &SweepSpec, tol: &Tolerance) -> SweepOutput {
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut trial_id = 0u64;
    let mut push = |result: Result<TrialRecord>, id: u64, errors: &mut Vec<String>| match result {
        Ok(record) => records.push(record),
        Err(err) => errors.push(format!("trial {id}: {err}")),
    };
    match *spec {
        SweepSpec::Regular { n_min, n_max } => {
            for n in n_min..=n_max.max(n_min) {
                let source = Source::Grid {
                    family: "regular".to_string(),
                    params: BTreeMap::from([("n".to_string(), n as f64)]),
                };
                let result = SideList::new(vec![1.0; n])
                    .and_then(|sides| evaluate_trial(trial_id, source, sides, tol));
                push(result, trial_id, &mut errors);
                trial_id += 1;
            }
        }
        SweepSpec::Macnab {
            n_min,
            n_max,
            ratio_min,
            ratio_max,
            steps,
        } => {
            for n in n_min..=n_max.max(n_min) {
                for index in 0..steps {
                    let ratio = grid_value(ratio_min, ratio_max, steps, index);
                    let source = Source::Grid {
                        family: "macnab".to_string(),
                        params: BTreeMap::from([
                            ("n".to_string(), n as f64),
                            ("ratio".to_string(), ratio),
                        ]),
                    };
                    let result = macnab_sides(n, 1.0, ratio)
                        .and_then(|sides| evaluate_trial(trial_id, source, sides, tol));
                    push(result, trial_id, &mut errors);
                    trial_id += 1;
                }
            }
        }
        SweepSpec::Perturbed {
            n_min,
            n_max,
            eps_min,
            eps_max,
            steps,
        } => {
            for n in n_min..=n_max.max(n_min) {
                for index in 0..steps {
                    let eps = grid_value(eps_min, eps_max, steps, index);
                    let source = Source::Grid {
                        family: "perturbed".to_string(),
                        params: BTreeMap::from([
                            ("n".to_string(), n as f64),
                            ("eps".to_string(), eps),
                        ]),
                    };
                    let result = crate::families::perturbed_regular(n, eps, 1.0)
                        .and_then(|p| evaluate_trial(trial_id, source, p.sides, tol));
                    push(result, trial_id, &mut errors);
                    trial_id += 1;
                }
            }
        }
        SweepSpec::Random { n, count, seed } => {
            for index in 0..count as u64 {
                let source = Source::Random { seed, index };
                let sides = sample_cyclic(n, seed.wrapping_add(index.wrapping_mul(0x51_7C_C1_B7_27_22_0A_95)));
                let result = evaluate_trial(trial_id, source, sides, tol);
                push(result, trial_id, &mut errors);
                trial_id += 1;
            }
        }
    }
    let mut summary = verify_corpus(&records);
    summary.errors = errors;
    SweepOutput { records, summary }
}

/// Violation margins a search can maximize; positive values falsify the
/// corresponding inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchObjective {
    /// `tau - nu` (upper half of the sandwich conjecture).
    TauMinusNu,
    /// `-zhang_deficit / Lhat^2`.
    NegZhangDeficit,
    /// `phi - 1`.
    PhiMinus1,
    /// `e/pi - phi`.
    EOverPiMinusPhi,
}

impl SearchObjective {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TauMinusNu => "TauMinusNu",
            Self::NegZhangDeficit => "NegZhangDeficit",
            Self::PhiMinus1 => "PhiMinus1",
            Self::EOverPiMinusPhi => "EOverPiMinusPhi",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "TauMinusNu" => Some(Self::TauMinusNu),
            "NegZhangDeficit" => Some(Self::NegZhangDeficit),
            "PhiMinus1" => Some(Self::PhiMinus1),
            "EOverPiMinusPhi" => Some(Self::EOverPiMinusPhi),
            _ => None,
        }
    }

    /// Violation margin of the cyclic polygon with the given sides.
    pub fn margin(&self, sides: &SideList, tol: &Tolerance) -> Result<f64> {
        let polygon = build_cyclic(sides, tol)?;
        let area = cyclic_area(&polygon);
        match self {
            Self::TauMinusNu => {
                Ok(functionals::tau(sides, area)? - functionals::nu(sides))
            }
            Self::NegZhangDeficit => {
                let lhat = functionals::pseudo_perimeter(sides);
                Ok(-functionals::zhang_deficit(sides, area)? / (lhat * lhat))
            }
            Self::PhiMinus1 => Ok(functionals::phi(sides, area)? - 1.0),
            Self::EOverPiMinusPhi => {
                Ok(functionals::phi_regular_limit() - functionals::phi(sides, area)?)
            }
        }
    }
}

/// Outcome of a counterexample search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub best_sides: SideList,
    pub objective_name: String,
    pub best_margin: f64,
    pub evaluations: u64,
    pub converged: bool,
}

const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;
const STALL_LIMIT: usize = 50;
const STALL_EPS: f64 = 1e-12;
const COLLAPSE_DIAMETER: f64 = 1e-10;

/// Point on the open side simplex: first n-1 normalized sides, last implied.
fn simplex_sides(coords: &[f64]) -> Option<SideList> {
    let tail = 1.0 - coords.iter().sum::<f64>();
    if tail <= 0.0 || coords.iter().any(|&c| c <= 0.0) {
        return None;
    }
    let mut raw = coords.to_vec();
    raw.push(tail);
    SideList::new(raw).ok()
}

/// Derivative-free simplex search over normalized side lengths, maximizing
/// the objective's violation margin. Invalid proposals are rejected by
/// scoring them at negative infinity; the search restarts from a fresh
/// sample after stalling. Deterministic in `(n, objective, seed, budget)`.
pub fn search_counterexample(
    n: usize,
    objective: SearchObjective,
    seed: u64,
    budget: u64,
    tol: &Tolerance,
) -> SearchResult {
    assert!(n >= 3, "search needs n >= 3, got {n}");
    let dim = n - 1;
    let mut evaluations = 0u64;
    let mut best_coords: Option<Vec<f64>> = None;
    let mut best_value = f64::NEG_INFINITY;
    let mut converged = false;
    let mut restart = 0u64;

    let score = |coords: &[f64], evaluations: &mut u64| -> f64 {
        if *evaluations >= budget {
            return f64::NEG_INFINITY;
        }
        *evaluations += 1;
        match simplex_sides(coords) {
            Some(sides) => objective.margin(&sides, tol).unwrap_or(f64::NEG_INFINITY),
            None => f64::NEG_INFINITY,
        }
    };

    'outer: while evaluations < budget {
        // Fresh base point for this restart.
        let base_sides = sample_cyclic(n, seed.wrapping_add(restart.wrapping_mul(0x9E3779B97F4A7C15)));
        restart += 1;
        let base: Vec<f64> = base_sides.lengths()[..dim].to_vec();
        let mut vertices: Vec<Vec<f64>> = vec![base.clone()];
        for i in 0..dim {
            let mut v = base.clone();
            let mut h = 0.25 * v[i];
            // Shrink the offset until the vertex stays valid.
            loop {
                v[i] = base[i] + h;
                if simplex_sides(&v).is_some() {
                    break;
                }
                h *= 0.5;
            }
            vertices.push(v);
        }
        let mut values: Vec<f64> = vertices
            .iter()
            .map(|v| score(v, &mut evaluations))
            .collect();
        let mut stall = 0usize;

        while evaluations < budget {
            let mut order: Vec<usize> = (0..vertices.len()).collect();
            order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
            let best_i = order[0];
            let worst_i = order[dim];
            let second_worst_i = order[dim.saturating_sub(1)];

            if values[best_i] > best_value + STALL_EPS {
                best_value = values[best_i];
                best_coords = Some(vertices[best_i].clone());
                stall = 0;
            } else {
                stall += 1;
            }

            let diameter = vertices
                .iter()
                .map(|v| {
                    v.iter()
                        .zip(&vertices[best_i])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt()
                })
                .fold(0.0, f64::max);
            if diameter < COLLAPSE_DIAMETER {
                converged = true;
                continue 'outer;
            }
            if stall >= STALL_LIMIT {
                continue 'outer;
            }

            let mut centroid = vec![0.0; dim];
            for (i, v) in vertices.iter().enumerate() {
                if i != worst_i {
                    for (c, x) in centroid.iter_mut().zip(v) {
                        *c += x;
                    }
                }
            }
            for c in centroid.iter_mut() {
                *c /= dim as f64;
            }

            let reflected: Vec<f64> = centroid
                .iter()
                .zip(&vertices[worst_i])
                .map(|(c, w)| c + REFLECTION * (c - w))
                .collect();
            let reflected_value = score(&reflected, &mut evaluations);

            if reflected_value > values[best_i] {
                let expanded: Vec<f64> = centroid
                    .iter()
                    .zip(&reflected)
                    .map(|(c, r)| c + EXPANSION * (r - c))
                    .collect();
                let expanded_value = score(&expanded, &mut evaluations);
                if expanded_value > reflected_value {
                    vertices[worst_i] = expanded;
                    values[worst_i] = expanded_value;
                } else {
                    vertices[worst_i] = reflected;
                    values[worst_i] = reflected_value;
                }
            } else if reflected_value > values[second_worst_i] {
                vertices[worst_i] = reflected;
                values[worst_i] = reflected_value;
            } else {
                let contracted: Vec<f64> = if reflected_value > values[worst_i] {
                    centroid
                        .iter()
                        .zip(&reflected)
                        .map(|(c, r)| c + CONTRACTION * (r - c))
                        .collect()
                } else {
                    centroid
                        .iter()
                        .zip(&vertices[worst_i])
                        .map(|(c, w)| c + CONTRACTION * (w - c))
                        .collect()
                };
                let contracted_value = score(&contracted, &mut evaluations);
                if contracted_value > values[worst_i].max(reflected_value) {
                    vertices[worst_i] = contracted;
                    values[worst_i] = contracted_value;
                } else {
                    let anchor = vertices[best_i].clone();
                    for (i, vertex) in vertices.iter_mut().enumerate() {
                        if i == best_i {
                            continue;
                        }
                        for (x, a) in vertex.iter_mut().zip(&anchor) {
                            *x = a + SHRINK * (*x - *a);
                        }
                        values[i] = score(vertex, &mut evaluations);
                    }
                }
            }
        }
    }

    let best_sides = best_coords
        .and_then(|c| simplex_sides(&c))
        .unwrap_or_else(|| sample_cyclic(n, seed));
    // Re-evaluate so the stored margin always matches the stored sides.
    let best_margin = objective
        .margin(&best_sides, tol)
        .unwrap_or(f64::NEG_INFINITY);
    SearchResult {
        best_sides,
        objective_name: objective.name().to_string(),
        best_margin,
        evaluations,
        converged,
    }
}

/// Degenerate-side reduction comparison: `phi` of the n-gon against the
/// (n+1)-gon with an appended side of `1e-8 L`, plus the `tau` ordering
/// between them.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReductionCheck {
    pub phi_base: f64,
    pub phi_appended: f64,
    pub phi_gap: f64,
    pub tau_base: f64,
    pub tau_appended: f64,
    /// Verdict of `tau_appended > tau_base`; equality is a boundary. The
    /// gap degenerates to zero for triangles because the regular reference
    /// value is 1 for both three and four sides.
    pub tau_ordering: Verdict,
}

pub fn reduction_check(sides: &SideList, tol: &Tolerance) -> Result<ReductionCheck> {
    let base_polygon = build_cyclic(sides, tol)?;
    let base_area = cyclic_area(&base_polygon);
    let phi_base = functionals::phi(sides, base_area)?;
    let tau_base = functionals::tau(sides, base_area)?;

    let mut raw = sides.lengths().to_vec();
    raw.push(1e-8 * sides.perimeter());
    let appended = SideList::new(raw)?;
    let appended_polygon = build_cyclic(&appended, tol)?;
    let appended_area = cyclic_area(&appended_polygon);
    let phi_appended = functionals::phi(&appended, appended_area)?;
    let tau_appended = functionals::tau(&appended, appended_area)?;

    Ok(ReductionCheck {
        phi_base,
        phi_appended,
        phi_gap: (phi_appended - phi_base).abs(),
        tau_base,
        tau_appended,
        tau_ordering: Verdict::from_margin(tau_appended - tau_base),
    })
}

/// Verdict tallies for one conjecture across a corpus.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct VerdictCounts {
    pub holds: u64,
    pub boundary: u64,
    pub violated: u64,
}

impl VerdictCounts {
    fn add(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Boundary => self.boundary += 1,
            Verdict::Violated => self.violated += 1,
        }
    }
}

/// One violated inequality in a corpus.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationNote {
    pub trial_id: u64,
    pub conjecture: String,
    pub margin: f64,
}

/// Aggregated verdicts of a record corpus, in stable order.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub total: u64,
    pub by_case: BTreeMap<String, u64>,
    pub by_conjecture: BTreeMap<String, VerdictCounts>,
    pub worst_margins: BTreeMap<String, f64>,
    pub violations: Vec<ViolationNote>,
    pub errors: Vec<String>,
}

impl CorpusSummary {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Tallies verdicts, tracks worst margins per conjecture, and lists every
/// violation ordered by trial id then conjecture name.
pub fn verify_corpus(records: &[TrialRecord]) -> CorpusSummary {
    let mut by_case: BTreeMap<String, u64> = BTreeMap::new();
    let mut by_conjecture: BTreeMap<String, VerdictCounts> = BTreeMap::new();
    let mut worst_margins: BTreeMap<String, f64> = BTreeMap::new();
    let mut violations = Vec::new();
    for record in records {
        *by_case.entry(record.theorem1_case.to_string()).or_default() += 1;
        let labelled = [
            ("c1a", record.verdicts.c1a),
            ("c1b", record.verdicts.c1b),
            ("c2", record.verdicts.c2),
            ("c3", record.verdicts.c3),
        ];
        for (name, cv) in labelled {
            by_conjecture.entry(name.to_string()).or_default().add(cv.verdict);
            worst_margins
                .entry(name.to_string())
                .and_modify(|worst| *worst = worst.min(cv.margin))
                .or_insert(cv.margin);
            if cv.verdict == Verdict::Violated {
                violations.push(ViolationNote {
                    trial_id: record.trial_id,
                    conjecture: name.to_string(),
                    margin: cv.margin,
                });
            }
        }
    }
    violations.sort_by(|a, b| {
        a.trial_id
            .cmp(&b.trial_id)
            .then_with(|| a.conjecture.cmp(&b.conjecture))
    });
    CorpusSummary {
        total: records.len() as u64,
        by_case,
        by_conjecture,
        worst_margins,
        violations,
        errors: Vec::new(),
    }
}

/// Unit-side regular n-gon side list.
pub fn regular_sides(n: usize) -> Result<SideList> {
    if n < 3 {
        return Err(IsoError::BadCount { n });
    }
    SideList::new(vec![1.0; n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sample_cyclic(5, 42);
        let b = sample_cyclic(5, 42);
        assert_eq!(a, b);
        let c = sample_cyclic(3, 7);
        let lengths = c.lengths();
        let max = lengths.iter().cloned().fold(0.0, f64::max);
        assert!(2.0 * max < c.perimeter());
    }

    #[test]
    fn pipeline_roundtrip_octagon() {
        let sides = sample_cyclic(8, 7);
        let polygon = build_cyclic(&sides, &Tolerance::default()).unwrap();
        let rebuilt = polygon.vertices().side_lengths();
        for (got, want) in rebuilt.iter().zip(sides.lengths()) {
            assert!((got - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn classification_cells() {
        // Regular heptagon.
        let heptagon = regular_sides(7).unwrap();
        let area = 7.0 / 4.0 / (PI / 7.0).tan();
        assert_eq!(
            classify_theorem1(&heptagon, area).unwrap(),
            Theorem1Case::RegularEquality
        );
        // Alternating hexagon sits strictly between.
        let hexagon = macnab_sides(3, 1.0, 2.0).unwrap();
        let polygon = build_cyclic(&hexagon, &Tolerance::default()).unwrap();
        assert_eq!(
            classify_theorem1(&hexagon, cyclic_area(&polygon)).unwrap(),
            Theorem1Case::CaseII
        );
        // Non-equilateral triangle: nu < tau = 1.
        let triangle = SideList::new(vec![1.0, 1.0, 1.5]).unwrap();
        let a = crate::geometry::heron_area(1.0, 1.0, 1.5).unwrap();
        assert_eq!(
            classify_theorem1(&triangle, a).unwrap(),
            Theorem1Case::CaseIII
        );
        // Deflated area forces tau below 1.
        let pentagon = regular_sides(5).unwrap();
        let cyclic = build_cyclic(&pentagon, &Tolerance::default()).unwrap();
        let deflated = 0.8 * cyclic_area(&cyclic);
        assert_eq!(
            classify_theorem1(&pentagon, deflated).unwrap(),
            Theorem1Case::CaseI
        );
    }

    #[test]
    fn sweep_regular_all_boundary() {
        let out = sweep(
            &SweepSpec::Regular { n_min: 3, n_max: 12 },
            &Tolerance::default(),
        );
        assert_eq!(out.records.len(), 10);
        assert!(out.summary.errors.is_empty());
        for record in &out.records {
            assert_eq!(record.theorem1_case, Theorem1Case::RegularEquality);
            assert_eq!(record.verdicts.c2.verdict, Verdict::Boundary);
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let spec = SweepSpec::Random { n: 6, count: 25, seed: 42 };
        let a = sweep(&spec, &Tolerance::default());
        let b = sweep(&spec, &Tolerance::default());
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert_eq!(ra.sides, rb.sides);
            assert_eq!(ra.report.tau.to_bits(), rb.report.tau.to_bits());
        }
    }

    #[test]
    fn triangle_search_finds_violation() {
        let result = search_counterexample(
            3,
            SearchObjective::NegZhangDeficit,
            1,
            2000,
            &Tolerance::default(),
        );
        assert!(result.best_margin > 0.0);
        assert!(result.evaluations <= 2000);
    }

    #[test]
    fn quad_search_margin_is_flat_zero() {
        let result = search_counterexample(
            4,
            SearchObjective::TauMinusNu,
            9,
            1000,
            &Tolerance::default(),
        );
        assert!(result.best_margin.abs() < 1e-9);
    }

    #[test]
    fn search_is_deterministic() {
        let a = search_counterexample(
            5,
            SearchObjective::PhiMinus1,
            3,
            1500,
            &Tolerance::default(),
        );
        let b = search_counterexample(
            5,
            SearchObjective::PhiMinus1,
            3,
            1500,
            &Tolerance::default(),
        );
        assert_eq!(a.best_margin.to_bits(), b.best_margin.to_bits());
        assert_eq!(a.best_sides, b.best_sides);
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn sweep_captures_record_errors_without_aborting() {
        // eps = 0.5 exceeds pi/n for n >= 7; those grid points fail while
        // the rest of the sweep completes.
        let out = sweep(
            &SweepSpec::Perturbed {
                n_min: 6,
                n_max: 8,
                eps_min: 0.5,
                eps_max: 0.5,
                steps: 1,
            },
            &Tolerance::default(),
        );
        assert_eq!(out.records.len(), 1); // n = 6 succeeds
        assert_eq!(out.summary.errors.len(), 2); // n = 7, 8 rejected
        assert!(out.summary.errors[0].contains("eps"));
    }

    #[test]
    fn pentagon_search_stays_nonpositive() {
        let result = search_counterexample(
            5,
            SearchObjective::TauMinusNu,
            1,
            5000,
            &Tolerance::default(),
        );
        assert!(result.best_margin <= 0.0);
    }

    #[test]
    fn reduction_check_triangle() {
        let sides = SideList::new(vec![3.0, 4.0, 5.0]).unwrap();
        let check = reduction_check(&sides, &Tolerance::default()).unwrap();
        assert!(check.phi_gap < 1e-6);
        assert!((check.phi_base - 1.0).abs() < 1e-12);
        // Three-to-four sides is the equality case of the ordering.
        assert_ne!(check.tau_ordering, Verdict::Violated);
    }

    #[test]
    fn reduction_check_quad_strict() {
        let sides = SideList::new(vec![1.0, 1.2, 0.9, 1.1]).unwrap();
        let check = reduction_check(&sides, &Tolerance::default()).unwrap();
        assert!(check.phi_gap < 1e-6);
        assert_eq!(check.tau_ordering, Verdict::Holds);
    }

    #[test]
    fn corpus_summary_lists_violation() {
        let triangle = SideList::new(vec![1.0, 1.0, 1.5]).unwrap();
        let record = evaluate_trial(
            0,
            Source::Search { step: 0 },
            triangle,
            &Tolerance::default(),
        )
        .unwrap();
        let summary = verify_corpus(&[record]);
        assert!(summary.has_violations());
        assert!(summary
            .violations
            .iter()
            .any(|v| v.conjecture == "c2" && v.margin < -0.05));
        let empty = verify_corpus(&[]);
        assert_eq!(empty.total, 0);
        assert!(!empty.has_violations());
    }
}
