//! Slice geometry, the Schwarz-lemma gap bound, limit estimation and the
//! end-to-end restricted-admissible limit check.
//!
//! For a ζ-curve Γ with normal projection γ, the slice through `γ(t)` and
//! `Γ(t)` is `λ -> γ(t) + λ (Γ(t) - γ(t))`. A constant `k` such that
//! `|λ|^m |Γ - γ|^m < k |ζ - γ|` keeps the slice inside the domain gives the
//! disc radius
//!
//! ```text
//! R(t) = (k |ζ - γ(t)|)^(1/m) / |Γ(t) - γ(t)|
//! ```
//!
//! and the Schwarz lemma applied to `g(λ) - g(0)` bounds
//! `|f(Γ) - f(γ)| <= 2 ||f||_∞ / R(t)` once `R(t) > 1`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{
    classify, eventually_in_admissible, project_curve, Capture, ClassifyOptions,
    CurveClassification, NamedCurve, Verdict, ZetaCurve, DEFAULT_ALPHA_GRID, DEFAULT_RATIO_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::{project_to_normal_line, BoundaryFrame, ComplexPoint, DomainModel};
use crate::holo::{checked_eval, eval_along, BoundedHolomorphicFunction};
use crate::schedule::{in_tail_window, Schedule};

/// `|Γ - γ|` below this makes the slice degenerate (Γ = γ).
pub const DEGENERATE_TANGENTIAL: f64 = 1e-14;
const K_REL_TOL: f64 = 1e-3;
const K_MAX_ITER: usize = 40;
const K_BRACKET_STEPS: i32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaGrid {
    pub angles: usize,
    pub radii: usize,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self {
            angles: 16,
            radii: 16,
        }
    }
}

impl LambdaGrid {
    /// Polar grid points with modulus up to `radius`, the origin excluded.
    pub fn points(&self, radius: f64) -> impl Iterator<Item = Complex64> + '_ {
        (1..=self.radii).flat_map(move |i| {
            let r = radius * i as f64 / self.radii as f64;
            (0..self.angles)
                .map(move |j| Complex64::from_polar(r, TAU * j as f64 / self.angles as f64))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub limit_tol: f64,
    pub ratio_tol: f64,
    /// Largest admissible gap over the trace tail for special curves.
    pub gap_tail_tol: f64,
    /// Relative shrink of `R(t)` for disc-membership assertions.
    pub disc_margin: f64,
    /// Relative slack on the Schwarz bound.
    pub schwarz_slack: f64,
    pub alpha_grid: Vec<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            limit_tol: 1e-6,
            ratio_tol: DEFAULT_RATIO_TOL,
            gap_tail_tol: 1e-4,
            disc_margin: 1e-3,
            schwarz_slack: 1e-9,
            alpha_grid: DEFAULT_ALPHA_GRID.to_vec(),
        }
    }
}

/// Number of trailing samples treated as the tail of a trace.
pub fn tail_len(n: usize) -> usize {
    n.div_ceil(4).max(n.min(4))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceGeometry {
    pub t: f64,
    pub gamma_t: ComplexPoint,
    pub big_gamma_t: ComplexPoint,
    pub k: f64,
    pub radius: f64,
}

impl SliceGeometry {
    pub fn new(
        t: f64,
        gamma_t: ComplexPoint,
        big_gamma_t: ComplexPoint,
        k: f64,
        frame: &BoundaryFrame,
    ) -> Result<Self> {
        let radius = slice_radius(
            frame.zeta.distance(&gamma_t),
            big_gamma_t.distance(&gamma_t),
            k,
            frame.type_m,
        )?;
        Ok(Self {
            t,
            gamma_t,
            big_gamma_t,
            k,
            radius,
        })
    }

    pub fn point(&self, lambda: Complex64) -> ComplexPoint {
        slice_point(&self.gamma_t, &self.big_gamma_t, lambda)
    }

    /// `R` recomputed from the stored points and `k`.
    pub fn recomputed_radius(&self, frame: &BoundaryFrame) -> f64 {
        (self.k * frame.zeta.distance(&self.gamma_t)).powf(1.0 / frame.type_m as f64)
            / self.big_gamma_t.distance(&self.gamma_t)
    }
}

/// `(1 - λ) γ + λ Γ`.
pub fn slice_point(
    gamma: &ComplexPoint,
    big_gamma: &ComplexPoint,
    lambda: Complex64,
) -> ComplexPoint {
    *gamma + (*big_gamma - *gamma).scale(lambda)
}

pub fn slice_radius(normal_dist: f64, tangential_dist: f64, k: f64, m: u32) -> Result<f64> {
    if tangential_dist < DEGENERATE_TANGENTIAL {
        return Err(Error::DegenerateSlice {
            tangential: tangential_dist,
        });
    }
    Ok((k * normal_dist).powf(1.0 / m as f64) / tangential_dist)
}

fn curve_points(
    curve: &ZetaCurve,
    frame: &BoundaryFrame,
    t: f64,
) -> Result<(ComplexPoint, ComplexPoint)> {
    let big = curve
        .point(frame, 1.0 - t)
        .ok_or_else(|| Error::InvalidCurve(format!("curve is not sampled at t = {t}")))?;
    Ok((project_to_normal_line(&big, frame), big))
}

fn slice_fits(
    domain: &DomainModel,
    gamma: &ComplexPoint,
    big_gamma: &ComplexPoint,
    radius: f64,
    grid: &LambdaGrid,
) -> bool {
    grid.points(radius * (1.0 - 1e-9))
        .all(|lambda| domain.is_inside(&slice_point(gamma, big_gamma, lambda)))
}

fn estimate_k_at(
    domain: &DomainModel,
    frame: &BoundaryFrame,
    gamma: &ComplexPoint,
    big_gamma: &ComplexPoint,
    t: f64,
    grid: &LambdaGrid,
) -> Result<f64> {
    if !domain.is_inside(gamma) || !domain.is_inside(big_gamma) {
        return Err(Error::PointLeftDomain { t });
    }
    let nd = frame.zeta.distance(gamma);
    let td = big_gamma.distance(gamma);
    if td < DEGENERATE_TANGENTIAL {
        return Err(Error::DegenerateSlice { tangential: td });
    }
    let m = frame.type_m as f64;
    let fits = |k: f64| slice_fits(domain, gamma, big_gamma, (k * nd).powf(1.0 / m) / td, grid);

    let (mut lo, mut hi);
    if fits(1.0) {
        lo = 1.0;
        hi = 2.0;
        let mut steps = 0;
        while fits(hi) {
            lo = hi;
            hi *= 2.0;
            steps += 1;
            if steps >= K_BRACKET_STEPS {
                return Ok(lo);
            }
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        let mut steps = 0;
        while !fits(lo) {
            hi = lo;
            lo *= 0.5;
            steps += 1;
            if steps >= K_BRACKET_STEPS {
                return Err(Error::PointLeftDomain { t });
            }
        }
    }
    let mut iter = 0;
    while hi - lo > K_REL_TOL * lo && iter < K_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    Ok(lo)
}

/// Largest `k` (bisection to 1e-3 relative) for which every polar grid
/// point of the slice disc of radius `R_k` lies inside the domain.
pub fn estimate_k(
    domain: &DomainModel,
    frame: &BoundaryFrame,
    curve: &ZetaCurve,
    t: f64,
    grid: &LambdaGrid,
) -> Result<f64> {
    let (gamma, big) = curve_points(curve, frame, t)?;
    estimate_k_at(domain, frame, &gamma, &big, t, grid)
}

/// Slice grid points with `|λ| <= (1 - margin) R` that are not inside.
pub fn disc_membership_violations(
    domain: &DomainModel,
    geometry: &SliceGeometry,
    grid: &LambdaGrid,
    margin: f64,
) -> usize {
    grid.points((1.0 - margin) * geometry.radius)
        .filter(|&lambda| !domain.is_inside(&geometry.point(lambda)))
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchwarzStatus {
    Pass,
    Fail,
    /// `R(t) <= 1`: `λ = 1` is outside the certified disc.
    NotApplicable,
    /// `Γ = γ`; the gap vanishes identically.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzCheck {
    pub gap: f64,
    pub bound: Option<f64>,
    pub status: SchwarzStatus,
}

fn schwarz_status(
    gap: f64,
    radius: f64,
    sup_norm: f64,
    slack: f64,
) -> (Option<f64>, SchwarzStatus) {
    if radius <= 1.0 {
        return (None, SchwarzStatus::NotApplicable);
    }
    let bound = 2.0 * sup_norm / radius;
    let status = if gap <= bound * (1.0 + slack) {
        SchwarzStatus::Pass
    } else {
        SchwarzStatus::Fail
    };
    (Some(bound), status)
}

/// `|f(Γ(t)) - f(γ(t))|` against `2 ||f|| / R(t)`.
#[allow(clippy::too_many_arguments)]
pub fn schwarz_gap_check(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    frame: &BoundaryFrame,
    curve: &ZetaCurve,
    t: f64,
    k: f64,
    grid: &LambdaGrid,
    tol: &Tolerances,
) -> Result<SchwarzCheck> {
    let (gamma, big) = curve_points(curve, frame, t)?;
    let gap = (checked_eval(f, domain, &big, t)? - checked_eval(f, domain, &gamma, t)?).norm();
    let geometry = match SliceGeometry::new(t, gamma, big, k, frame) {
        Ok(g) => g,
        Err(Error::DegenerateSlice { .. }) => {
            return Ok(SchwarzCheck {
                gap,
                bound: None,
                status: SchwarzStatus::Degenerate,
            })
        }
        Err(e) => return Err(e),
    };
    if disc_membership_violations(domain, &geometry, grid, tol.disc_margin) > 0 {
        return Err(Error::PointLeftDomain { t });
    }
    let (bound, status) = schwarz_status(gap, geometry.radius, f.sup_norm(), tol.schwarz_slack);
    Ok(SchwarzCheck { gap, bound, status })
}

/// One row of a per-curve trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceRow {
    pub t: f64,
    pub s: f64,
    pub normal_dist: f64,
    pub tangential_dist: f64,
    pub ratio: f64,
    /// `None` stands for the `+∞` sentinel of a degenerate slice.
    pub k: Option<f64>,
    pub radius: Option<f64>,
    pub gap: f64,
    pub bound: Option<f64>,
    pub status: SchwarzStatus,
    pub f_value: Complex64,
    pub membership_violations: usize,
}

fn slice_row(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    frame: &BoundaryFrame,
    s: f64,
    big: ComplexPoint,
    grid: &LambdaGrid,
    tol: &Tolerances,
) -> Result<SliceRow> {
    let t = 1.0 - s;
    let gamma = project_to_normal_line(&big, frame);
    let nd = frame.zeta.distance(&gamma);
    let td = big.distance(&gamma);
    let f_big = checked_eval(f, domain, &big, t)?;
    let f_gamma = checked_eval(f, domain, &gamma, t)?;
    let gap = (f_big - f_gamma).norm();
    let mut row = SliceRow {
        t,
        s,
        normal_dist: nd,
        tangential_dist: td,
        ratio: td.powi(frame.type_m as i32) / nd,
        k: None,
        radius: None,
        gap,
        bound: None,
        status: SchwarzStatus::Degenerate,
        f_value: f_big,
        membership_violations: 0,
    };
    if td < DEGENERATE_TANGENTIAL {
        return Ok(row);
    }
    let k = estimate_k_at(domain, frame, &gamma, &big, t, grid)?;
    let geometry = SliceGeometry::new(t, gamma, big, k, frame)?;
    let (bound, status) = schwarz_status(gap, geometry.radius, f.sup_norm(), tol.schwarz_slack);
    row.k = Some(k);
    row.radius = Some(geometry.radius);
    row.bound = bound;
    row.status = status;
    row.membership_violations =
        disc_membership_violations(domain, &geometry, grid, tol.disc_margin);
    Ok(row)
}

/// Slice geometry and Schwarz check at every schedule point, in schedule
/// order.
pub fn slice_trace(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    frame: &BoundaryFrame,
    curve: &ZetaCurve,
    schedule: &Schedule,
    grid: &LambdaGrid,
    tol: &Tolerances,
) -> Result<Vec<SliceRow>> {
    let samples = curve.sample(frame, schedule);
    samples
        .par_iter()
        .map(|p| slice_row(f, domain, frame, p.s, p.point, grid, tol))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LimitStatus {
    Converged { value: Complex64, residual: f64 },
    Oscillating { amplitude: f64 },
    Diverging,
    Inconclusive,
}

impl LimitStatus {
    pub fn value(&self) -> Option<Complex64> {
        match self {
            LimitStatus::Converged { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            LimitStatus::Converged { .. } => "Converged",
            LimitStatus::Oscillating { .. } => "Oscillating",
            LimitStatus::Diverging => "Diverging",
            LimitStatus::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub status: LimitStatus,
    pub trace: Vec<(f64, Complex64)>,
}

fn diameter(values: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

/// Tail-diameter verdict on a trace of `(t, f)` values.
pub fn limit_from_trace(
    trace: Vec<(f64, Complex64)>,
    sup_norm: f64,
    limit_tol: f64,
) -> LimitEstimate {
    let values: Vec<Complex64> = trace.iter().map(|p| p.1).collect();
    let status = if values.is_empty() {
        LimitStatus::Inconclusive
    } else if values.iter().any(|v| v.norm() > sup_norm * (1.0 + 1e-6)) {
        LimitStatus::Diverging
    } else {
        let tail = &values[values.len() - tail_len(values.len())..];
        let diam = diameter(tail);
        if diam <= limit_tol {
            LimitStatus::Converged {
                value: tail[tail.len() - 1],
                residual: diam,
            }
        } else {
            // a contracting tail is a slow trend, not an oscillation
            let half = tail.len().div_ceil(2);
            let contracting = diameter(&tail[tail.len() - half..]) < 0.75 * diameter(&tail[..half]);
            if diam > 100.0 * limit_tol && !contracting {
                LimitStatus::Oscillating { amplitude: diam }
            } else {
                LimitStatus::Inconclusive
            }
        }
    };
    LimitEstimate { status, trace }
}

pub fn estimate_limit(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    frame: &BoundaryFrame,
    curve: &ZetaCurve,
    schedule: &Schedule,
    limit_tol: f64,
) -> Result<LimitEstimate> {
    let trace = eval_along(f, domain, frame, curve, schedule)?;
    Ok(limit_from_trace(trace, f.sup_norm(), limit_tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LindelofCheck {
    pub pass: bool,
    pub reference: LimitEstimate,
    pub other: LimitEstimate,
}

fn require_nontangential_projection(
    curve: &NamedCurve,
    frame: &BoundaryFrame,
    opts: &ClassifyOptions,
) -> Result<()> {
    let inapplicable = |reason: &str| Error::InapplicableCurve {
        name: curve.name.clone(),
        reason: reason.to_string(),
    };
    if curve.curve.max_tangential(frame, &opts.schedule) >= DEGENERATE_TANGENTIAL {
        return Err(inapplicable("curve has a tangential component"));
    }
    if !classify(&curve.curve, frame, opts)?
        .nontangential_projection
        .is_yes()
    {
        return Err(inapplicable("curve is not non-tangential"));
    }
    Ok(())
}

/// One-variable Lindelöf step: `f` along two non-tangential normal
/// approaches must converge to the same value.
#[allow(clippy::too_many_arguments)]
pub fn one_var_lindelof_check(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    frame: &BoundaryFrame,
    gamma0: &NamedCurve,
    gamma: &NamedCurve,
    schedule: &Schedule,
    tol: &Tolerances,
) -> Result<LindelofCheck> {
    let opts = ClassifyOptions {
        ratio_tol: tol.ratio_tol,
        alpha_grid: tol.alpha_grid.clone(),
        schedule: schedule.clone(),
    };
    require_nontangential_projection(gamma0, frame, &opts)?;
    require_nontangential_projection(gamma, frame, &opts)?;
    let reference = estimate_limit(f, domain, frame, &gamma0.curve, schedule, tol.limit_tol)?;
    let other = estimate_limit(f, domain, frame, &gamma.curve, schedule, tol.limit_tol)?;
    let pass = match (reference.status.value(), other.status.value()) {
        (Some(a), Some(b)) => (a - b).norm() <= 10.0 * tol.limit_tol,
        _ => false,
    };
    Ok(LindelofCheck {
        pass,
        reference,
        other,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremScenario {
    pub id: String,
    pub domain: DomainModel,
    pub frame: BoundaryFrame,
    pub function: BoundedHolomorphicFunction,
    pub reference: NamedCurve,
    pub tests: Vec<NamedCurve>,
    pub schedule: Schedule,
    pub tolerances: Tolerances,
    pub lambda_grid: LambdaGrid,
}

impl TheoremScenario {
    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            ratio_tol: self.tolerances.ratio_tol,
            alpha_grid: self.tolerances.alpha_grid.clone(),
            schedule: self.schedule.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScenarioVerdict {
    Pass,
    Fail,
    BadScenario,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveRole {
    Reference,
    Test,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzSummary {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    pub degenerate: usize,
    pub max_gap_tail: f64,
    pub gap_vanishes: bool,
    pub k_tail_infimum: Option<f64>,
    pub k_decays: bool,
    pub membership_violations: usize,
}

impl SchwarzSummary {
    pub fn from_rows(rows: &[SliceRow], gap_tail_tol: f64) -> Self {
        let count = |st: SchwarzStatus| rows.iter().filter(|r| r.status == st).count();
        let tail = &rows[rows.len() - tail_len(rows.len())..];
        let max_gap_tail = tail.iter().map(|r| r.gap).fold(0.0, f64::max);
        let tail_k: Vec<f64> = rows
            .iter()
            .filter(|r| in_tail_window(r.s))
            .filter_map(|r| r.k)
            .collect();
        let k_tail_infimum = tail_k.iter().copied().reduce(f64::min);
        let k_decays = match (tail_k.first(), tail_k.last()) {
            (Some(&first), Some(&last)) => last < 0.1 * first,
            _ => false,
        };
        Self {
            checked: rows.len(),
            passed: count(SchwarzStatus::Pass),
            failed: count(SchwarzStatus::Fail),
            not_applicable: count(SchwarzStatus::NotApplicable),
            degenerate: count(SchwarzStatus::Degenerate),
            max_gap_tail,
            gap_vanishes: max_gap_tail <= gap_tail_tol,
            k_tail_infimum,
            k_decays,
            membership_violations: rows.iter().map(|r| r.membership_violations).sum(),
        }
    }

    pub fn sound(&self) -> bool {
        self.failed == 0 && self.membership_violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub name: String,
    pub role: CurveRole,
    pub special: Verdict,
    pub nontangential_projection: Verdict,
    pub restricted: Verdict,
    pub capture: Capture,
    pub limit: Option<LimitStatus>,
    pub projection_limit: Option<LimitStatus>,
    pub lindelof_pass: Option<bool>,
    pub agrees_with_reference: Option<bool>,
    pub schwarz: Option<SchwarzSummary>,
    pub mandatory: bool,
    pub passed: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub trace: Vec<SliceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario_id: String,
    pub domain: String,
    pub zeta: ComplexPoint,
    pub type_m: u32,
    pub function: String,
    pub verdict: ScenarioVerdict,
    pub reason: Option<String>,
    pub limit: Option<Complex64>,
    pub curves: Vec<CurveReport>,
}

impl VerificationReport {
    pub fn bad_scenario(scn: &TheoremScenario, reason: String) -> Self {
        Self {
            scenario_id: scn.id.clone(),
            domain: scn.domain.name.clone(),
            zeta: scn.frame.zeta,
            type_m: scn.frame.type_m,
            function: scn.function.id().to_string(),
            verdict: ScenarioVerdict::BadScenario,
            reason: Some(reason),
            limit: None,
            curves: Vec::new(),
        }
    }

    pub fn curve(&self, name: &str) -> Option<&CurveReport> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// Limits of every restricted curve, reference first.
    pub fn restricted_limits(&self) -> Vec<Complex64> {
        self.curves
            .iter()
            .filter(|c| c.restricted.is_yes())
            .filter_map(|c| c.limit.and_then(|l| l.value()))
            .collect()
    }
}

fn base_curve_report(
    scn: &TheoremScenario,
    named: &NamedCurve,
    role: CurveRole,
    class: &CurveClassification,
) -> CurveReport {
    CurveReport {
        name: named.name.clone(),
        role,
        special: class.special,
        nontangential_projection: class.nontangential_projection,
        restricted: class.restricted,
        capture: eventually_in_admissible(
            &named.curve,
            &scn.frame,
            &scn.tolerances.alpha_grid,
            &scn.schedule,
        ),
        limit: None,
        projection_limit: None,
        lindelof_pass: None,
        agrees_with_reference: None,
        schwarz: None,
        mandatory: role == CurveRole::Reference || class.restricted.is_yes(),
        passed: false,
        note: None,
        trace: Vec::new(),
    }
}

fn projected(named: &NamedCurve, frame: &BoundaryFrame) -> NamedCurve {
    NamedCurve::new(
        format!("{} (projection)", named.name),
        project_curve(&named.curve, frame),
    )
}

fn check_test_curve(
    scn: &TheoremScenario,
    reference: &NamedCurve,
    limit: Complex64,
    named: &NamedCurve,
    report: &mut CurveReport,
) -> Result<()> {
    let tol = &scn.tolerances;
    let f = scn.function;
    let est = estimate_limit(
        f,
        &scn.domain,
        &scn.frame,
        &named.curve,
        &scn.schedule,
        tol.limit_tol,
    )?;
    report.limit = Some(est.status);
    report.agrees_with_reference = Some(
        est.status
            .value()
            .is_some_and(|v| (v - limit).norm() <= 10.0 * tol.limit_tol),
    );
    let rows = slice_trace(
        f,
        &scn.domain,
        &scn.frame,
        &named.curve,
        &scn.schedule,
        &scn.lambda_grid,
        tol,
    )?;
    report.schwarz = Some(SchwarzSummary::from_rows(&rows, tol.gap_tail_tol));
    report.trace = rows;
    if report.restricted.is_yes() {
        let gamma0 = projected(reference, &scn.frame);
        let gamma = projected(named, &scn.frame);
        let lv = one_var_lindelof_check(
            f,
            &scn.domain,
            &scn.frame,
            &gamma0,
            &gamma,
            &scn.schedule,
            tol,
        )?;
        report.projection_limit = Some(lv.other.status);
        report.lindelof_pass = Some(lv.pass);
    }
    Ok(())
}

/// Runs the full transfer argument for one scenario.
///
/// Fails with `BadScenario` when the reference curve is not restricted or
/// `f` does not converge along it. Curves that are not restricted are
/// reported but do not affect the verdict.
pub fn verify_theorem(scn: &TheoremScenario) -> Result<VerificationReport> {
    let opts = scn.classify_options();
    let tol = &scn.tolerances;
    let f = scn.function;
    let bad = |msg: String| Error::BadScenario(msg);

    let ref_class = classify(&scn.reference.curve, &scn.frame, &opts)?;
    if !ref_class.restricted.is_yes() {
        return Err(bad(format!(
            "reference curve `{}` is not restricted (special: {}, non-tangential projection: {})",
            scn.reference.name, ref_class.special, ref_class.nontangential_projection
        )));
    }
    let ref_limit = estimate_limit(
        f,
        &scn.domain,
        &scn.frame,
        &scn.reference.curve,
        &scn.schedule,
        tol.limit_tol,
    )
    .map_err(|e| bad(format!("reference curve `{}`: {e}", scn.reference.name)))?;
    let limit = match ref_limit.status {
        LimitStatus::Converged { value, .. } => value,
        LimitStatus::Oscillating { amplitude } => {
            return Err(bad(format!(
                "{f} does not converge along reference curve `{}`: Oscillating (amplitude {amplitude:.3e})",
                scn.reference.name
            )))
        }
        other => {
            return Err(bad(format!(
                "{f} does not converge along reference curve `{}`: {}",
                scn.reference.name,
                other.label()
            )))
        }
    };

    let mut curves = Vec::with_capacity(scn.tests.len() + 1);

    let mut rep = base_curve_report(scn, &scn.reference, CurveRole::Reference, &ref_class);
    rep.limit = Some(ref_limit.status);
    let rows = slice_trace(
        f,
        &scn.domain,
        &scn.frame,
        &scn.reference.curve,
        &scn.schedule,
        &scn.lambda_grid,
        tol,
    )
    .map_err(|e| bad(format!("reference curve `{}`: {e}", scn.reference.name)))?;
    let summary = SchwarzSummary::from_rows(&rows, tol.gap_tail_tol);
    let gamma0 = projected(&scn.reference, &scn.frame);
    let proj = estimate_limit(
        f,
        &scn.domain,
        &scn.frame,
        &gamma0.curve,
        &scn.schedule,
        tol.limit_tol,
    )?;
    let proj_ok = proj
        .status
        .value()
        .is_some_and(|v| (v - limit).norm() <= 10.0 * tol.limit_tol);
    rep.projection_limit = Some(proj.status);
    rep.agrees_with_reference = Some(true);
    rep.passed = summary.sound() && summary.gap_vanishes && proj_ok;
    if !proj_ok {
        rep.note = Some("limit along the projection differs from the limit along the curve".into());
    }
    rep.schwarz = Some(summary);
    rep.trace = rows;
    curves.push(rep);

    for named in &scn.tests {
        let class = classify(&named.curve, &scn.frame, &opts)?;
        let mut rep = base_curve_report(scn, named, CurveRole::Test, &class);
        match check_test_curve(scn, &scn.reference, limit, named, &mut rep) {
            Ok(()) => {
                rep.passed = if rep.mandatory {
                    let s = rep.schwarz.as_ref().expect("summary set on success");
                    s.sound()
                        && s.gap_vanishes
                        && rep.lindelof_pass == Some(true)
                        && rep.agrees_with_reference == Some(true)
                } else {
                    rep.schwarz.as_ref().is_some_and(SchwarzSummary::sound)
                };
            }
            Err(e) => {
                rep.passed = false;
                rep.note = Some(e.to_string());
            }
        }
        curves.push(rep);
    }

    let verdict = if curves.iter().filter(|c| c.mandatory).all(|c| c.passed)
        && curves
            .iter()
            .filter_map(|c| c.schwarz.as_ref())
            .all(SchwarzSummary::sound)
    {
        ScenarioVerdict::Pass
    } else {
        ScenarioVerdict::Fail
    };

    Ok(VerificationReport {
        scenario_id: scn.id.clone(),
        domain: scn.domain.name.clone(),
        zeta: scn.frame.zeta,
        type_m: scn.frame.type_m,
        function: f.id().to_string(),
        verdict,
        reason: None,
        limit: Some(limit),
        curves,
    })
}
