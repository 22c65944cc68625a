//! ζ-curves, their projections to the complex normal line, special /
//! restricted classification and the model admissible region.
//!
//! Curves are parametrized by `s = 1 - t`. An exponent-family curve is
//!
//! ```text
//! Γ(s) = ζ - w(s) ν + c_t s^b e^{iθ(s)} τ,
//! w(s) = c_n s^a e^{iψ} + i c_d s^{a_d},
//! ```
//!
//! so `w` is the normal depth `<ζ - Γ, ν>` and the second term is the
//! tangential displacement `Γ - γ`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{project_to_normal_line, BoundaryFrame, ComplexPoint, DomainModel};
use crate::schedule::{in_tail_window, Schedule};

pub const DEFAULT_RATIO_TOL: f64 = 1e-3;
pub const DEFAULT_ALPHA_GRID: [f64; 4] = [1.25, 2.0, 4.0, 8.0];
/// Minimum number of tail-window samples for a numeric verdict.
pub const MIN_TAIL_SAMPLES: usize = 8;
/// Fitted log-log slopes within this band count as flat.
const FLAT_SLOPE: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            _ => Verdict::Inconclusive,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhaseLaw {
    Constant(f64),
    /// `θ(s) = theta0 + omega ln s`.
    LogSpiral {
        theta0: f64,
        omega: f64,
    },
}

impl PhaseLaw {
    pub fn angle(&self, s: f64) -> f64 {
        match *self {
            PhaseLaw::Constant(theta) => theta,
            PhaseLaw::LogSpiral { theta0, omega } => theta0 + omega * s.ln(),
        }
    }

    /// Same law rotated by a constant `delta`.
    pub fn rotated(&self, delta: f64) -> PhaseLaw {
        match *self {
            PhaseLaw::Constant(theta) => PhaseLaw::Constant(theta + delta),
            PhaseLaw::LogSpiral { theta0, omega } => PhaseLaw::LogSpiral {
                theta0: theta0 + delta,
                omega,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFamily {
    pub normal_exp: f64,
    pub normal_scale: f64,
    /// `ψ`, the angle of the leading normal term; `|ψ| < π/2`.
    pub normal_angle: f64,
    /// `c_d`; a positive value adds the imaginary drift `i c_d s^{a_d}`.
    pub drift_scale: f64,
    pub drift_exp: f64,
    pub tangential_exp: f64,
    pub tangential_scale: f64,
    pub phase: PhaseLaw,
}

impl ExponentFamily {
    pub fn new(
        normal_exp: f64,
        normal_scale: f64,
        tangential_exp: f64,
        tangential_scale: f64,
    ) -> Self {
        Self {
            normal_exp,
            normal_scale,
            normal_angle: 0.0,
            drift_scale: 0.0,
            drift_exp: 1.0,
            tangential_exp,
            tangential_scale,
            phase: PhaseLaw::Constant(0.0),
        }
    }

    /// Straight inward normal approach `ζ - s ν`.
    pub fn radial() -> Self {
        Self::new(1.0, 1.0, 1.0, 0.0)
    }

    pub fn with_normal_angle(mut self, psi: f64) -> Self {
        self.normal_angle = psi;
        self
    }

    pub fn with_drift(mut self, scale: f64, exp: f64) -> Self {
        self.drift_scale = scale;
        self.drift_exp = exp;
        self
    }

    pub fn with_phase(mut self, phase: PhaseLaw) -> Self {
        self.phase = phase;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidCurve(msg.to_string()))
            }
        };
        check(
            self.normal_exp > 0.0 && self.normal_exp.is_finite(),
            "normal exponent must be positive",
        )?;
        check(
            self.normal_scale > 0.0 && self.normal_scale.is_finite(),
            "normal scale must be positive",
        )?;
        check(
            self.normal_angle.abs() < FRAC_PI_2,
            "normal angle must lie in (-pi/2, pi/2)",
        )?;
        check(
            self.drift_scale >= 0.0 && self.drift_scale.is_finite(),
            "drift scale must be non-negative",
        )?;
        check(
            self.drift_exp > 0.0 && self.drift_exp.is_finite(),
            "drift exponent must be positive",
        )?;
        check(
            self.tangential_exp > 0.0 && self.tangential_exp.is_finite(),
            "tangential exponent must be positive",
        )?;
        check(
            self.tangential_scale >= 0.0 && self.tangential_scale.is_finite(),
            "tangential scale must be non-negative",
        )
    }

    /// `w(s) = <ζ - Γ(s), ν>`.
    pub fn normal_coordinate(&self, s: f64) -> Complex64 {
        let lead = Complex64::from_polar(
            self.normal_scale * s.powf(self.normal_exp),
            self.normal_angle,
        );
        if self.drift_scale > 0.0 {
            lead + Complex64::new(0.0, self.drift_scale * s.powf(self.drift_exp))
        } else {
            lead
        }
    }

    /// `<Γ(s) - ζ, τ>`.
    pub fn tangential_coordinate(&self, s: f64) -> Complex64 {
        if self.tangential_scale == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(
            self.tangential_scale * s.powf(self.tangential_exp),
            self.phase.angle(s),
        )
    }

    pub fn point(&self, frame: &BoundaryFrame, s: f64) -> ComplexPoint {
        frame.point_at(self.normal_coordinate(s), self.tangential_coordinate(s))
    }

    /// Leading exponent of `|ζ - γ(s)|`.
    pub fn normal_order(&self) -> f64 {
        if self.drift_scale > 0.0 {
            self.normal_exp.min(self.drift_exp)
        } else {
            self.normal_exp
        }
    }

    /// `lim |Im w| / Re w` as `s -> 0`.
    pub fn normal_slope_limit(&self) -> f64 {
        let (sin, cos) = self.normal_angle.sin_cos();
        if self.drift_scale == 0.0 || self.drift_exp > self.normal_exp {
            (sin / cos).abs()
        } else if self.drift_exp == self.normal_exp {
            (self.normal_scale * sin + self.drift_scale).abs() / (self.normal_scale * cos)
        } else {
            f64::INFINITY
        }
    }

    pub fn exact_special(&self, m: u32) -> Verdict {
        if self.tangential_scale == 0.0
            || m as f64 * self.tangential_exp > self.normal_order() * (1.0 + 1e-12)
        {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn exact_nontangential(&self, alpha_grid: &[f64]) -> Verdict {
        let limit = self.normal_slope_limit();
        if alpha_grid.iter().any(|&alpha| limit <= alpha - 1.0) {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

/// A curve known only through a table of `(s, Γ)`, sorted by decreasing `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    samples: Vec<(f64, ComplexPoint)>,
}

impl SampledCurve {
    pub fn from_s_table(mut samples: Vec<(f64, ComplexPoint)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidCurve("empty sample table".into()));
        }
        if samples
            .iter()
            .any(|(s, p)| !(*s > 0.0 && *s < 1.0) || !p.is_finite())
        {
            return Err(Error::InvalidCurve(
                "samples need t in (0, 1) and finite points".into(),
            ));
        }
        samples.sort_by(|a, b| b.0.total_cmp(&a.0));
        if samples.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidCurve("duplicate sample parameter".into()));
        }
        Ok(Self { samples })
    }

    pub fn from_t_table(samples: Vec<(f64, ComplexPoint)>) -> Result<Self> {
        Self::from_s_table(samples.into_iter().map(|(t, p)| (1.0 - t, p)).collect())
    }

    pub fn samples(&self) -> &[(f64, ComplexPoint)] {
        &self.samples
    }

    /// Exact table value when `s` is a node, linear interpolation between
    /// nodes otherwise, `None` outside the table.
    pub fn point_at(&self, s: f64) -> Option<ComplexPoint> {
        let first = self.samples.first()?.0;
        let last = self.samples.last()?.0;
        // t-tables lose about 1e-8 relative accuracy in s = 1 - t near t = 1
        let near = |a: f64, b: f64| (a - b).abs() <= 1e-6 * a.abs().max(b.abs());
        if let Some((_, p)) = self.samples.iter().find(|(node, _)| near(*node, s)) {
            return Some(*p);
        }
        if s > first || s < last {
            return None;
        }
        let i = self.samples.iter().position(|(node, _)| *node < s)?;
        let (s0, p0) = self.samples[i - 1];
        let (s1, p1) = self.samples[i];
        let w = (s0 - s) / (s0 - s1);
        Some((1.0 - w) * p0 + w * p1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZetaCurve {
    Family(ExponentFamily),
    Sampled(SampledCurve),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub s: f64,
    pub point: ComplexPoint,
}

impl CurveSample {
    pub fn t(&self) -> f64 {
        1.0 - self.s
    }
}

impl ZetaCurve {
    pub fn point(&self, frame: &BoundaryFrame, s: f64) -> Option<ComplexPoint> {
        match self {
            ZetaCurve::Family(fam) => Some(fam.point(frame, s)),
            ZetaCurve::Sampled(table) => table.point_at(s),
        }
    }

    /// Points at every schedule parameter the curve covers.
    pub fn sample(&self, frame: &BoundaryFrame, schedule: &Schedule) -> Vec<CurveSample> {
        schedule
            .s_values()
            .iter()
            .filter_map(|&s| self.point(frame, s).map(|point| CurveSample { s, point }))
            .collect()
    }

    /// The curve's own nodes: the schedule for families, the table for
    /// sampled curves.
    pub fn native_samples(&self, frame: &BoundaryFrame, schedule: &Schedule) -> Vec<CurveSample> {
        match self {
            ZetaCurve::Family(_) => self.sample(frame, schedule),
            ZetaCurve::Sampled(table) => table
                .samples()
                .iter()
                .map(|&(s, point)| CurveSample { s, point })
                .collect(),
        }
    }

    pub fn to_sampled(&self, frame: &BoundaryFrame, schedule: &Schedule) -> Result<SampledCurve> {
        SampledCurve::from_s_table(
            self.native_samples(frame, schedule)
                .into_iter()
                .map(|p| (p.s, p.point))
                .collect(),
        )
    }

    /// Smallest sampled `t` beyond which every sample lies inside `domain`.
    pub fn t_min(
        &self,
        domain: &DomainModel,
        frame: &BoundaryFrame,
        schedule: &Schedule,
    ) -> Option<f64> {
        let samples = self.native_samples(frame, schedule);
        let start = samples
            .iter()
            .rposition(|p| !domain.is_inside(&p.point))
            .map_or(0, |i| i + 1);
        samples.get(start).map(CurveSample::t)
    }

    /// `|Γ - ζ|` strictly decreases along the samples and ends below `tol`.
    pub fn approaches(&self, frame: &BoundaryFrame, schedule: &Schedule, tol: f64) -> bool {
        let d: Vec<f64> = self
            .native_samples(frame, schedule)
            .iter()
            .map(|p| p.point.distance(&frame.zeta))
            .collect();
        d.windows(2).all(|w| w[1] < w[0]) && d.last().is_some_and(|&x| x < tol)
    }

    /// Largest `|Γ - γ|` over the samples.
    pub fn max_tangential(&self, frame: &BoundaryFrame, schedule: &Schedule) -> f64 {
        self.native_samples(frame, schedule)
            .iter()
            .map(|p| p.point.distance(&project_to_normal_line(&p.point, frame)))
            .fold(0.0, f64::max)
    }
}

pub fn project_curve(curve: &ZetaCurve, frame: &BoundaryFrame) -> ZetaCurve {
    match curve {
        ZetaCurve::Family(fam) => ZetaCurve::Family(ExponentFamily {
            tangential_scale: 0.0,
            ..*fam
        }),
        ZetaCurve::Sampled(table) => ZetaCurve::Sampled(SampledCurve {
            samples: table
                .samples()
                .iter()
                .map(|&(s, p)| (s, project_to_normal_line(&p, frame)))
                .collect(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOptions {
    pub ratio_tol: f64,
    pub alpha_grid: Vec<f64>,
    pub schedule: Schedule,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            ratio_tol: DEFAULT_RATIO_TOL,
            alpha_grid: DEFAULT_ALPHA_GRID.to_vec(),
            schedule: Schedule::default(),
        }
    }
}

impl ClassifyOptions {
    fn max_alpha(&self) -> f64 {
        self.alpha_grid
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveClassification {
    pub special: Verdict,
    pub nontangential_projection: Verdict,
    pub restricted: Verdict,
    /// `(t, |Γ - γ|^m / |ζ - γ|)` over the tail window.
    pub measured_ratio_trend: Vec<(f64, f64)>,
}

struct TailMeasurement {
    t: f64,
    normal_dist: f64,
    ratio: f64,
    depth: Complex64,
}

fn measure_tail(samples: &[CurveSample], frame: &BoundaryFrame) -> Vec<TailMeasurement> {
    let m = frame.type_m as i32;
    samples
        .iter()
        .filter(|p| in_tail_window(p.s))
        .map(|p| {
            let gamma = project_to_normal_line(&p.point, frame);
            let normal_dist = frame.zeta.distance(&gamma);
            let tangential = p.point.distance(&gamma);
            TailMeasurement {
                t: p.t(),
                normal_dist,
                ratio: tangential.powi(m) / normal_dist,
                depth: frame.normal_depth(&p.point),
            }
        })
        .collect()
}

/// Least-squares slope of `y` against `x`.
fn fitted_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn numeric_special(tail: &[TailMeasurement], ratio_tol: f64) -> Verdict {
    if tail.iter().all(|m| m.ratio == 0.0) {
        return Verdict::Yes;
    }
    let last = tail.last().map_or(f64::NAN, |m| m.ratio);
    if !last.is_finite() {
        return Verdict::No;
    }
    // ratio ~ |ζ - γ|^slope: positive slope means the ratio decays
    let logs: Vec<(f64, f64)> = tail
        .iter()
        .filter(|m| m.ratio > 0.0 && m.normal_dist > 0.0)
        .map(|m| (m.normal_dist.ln(), m.ratio.ln()))
        .collect();
    let slope = fitted_slope(&logs);
    match slope {
        Some(p) if p > FLAT_SLOPE && last < ratio_tol => Verdict::Yes,
        _ if last > 1.0 / ratio_tol => Verdict::No,
        Some(p) if p < -FLAT_SLOPE => Verdict::No,
        _ => Verdict::Inconclusive,
    }
}

fn numeric_nontangential(tail: &[TailMeasurement], max_alpha: f64) -> Verdict {
    if tail
        .iter()
        .any(|m| m.depth.re.is_nan() || m.depth.re <= 0.0)
    {
        return Verdict::No;
    }
    let q: Vec<f64> = tail.iter().map(|m| m.depth.im.abs() / m.depth.re).collect();
    let cone = max_alpha - 1.0;
    let (first, last) = (q[0], q[q.len() - 1]);
    if last > cone {
        Verdict::No
    } else if q.iter().all(|&x| x <= cone) && last <= first * (1.0 + 1e-6) + 1e-9 {
        Verdict::Yes
    } else {
        Verdict::Inconclusive
    }
}

/// Classifies from samples alone, whatever the curve's representation.
pub fn classify_samples(
    samples: &[CurveSample],
    frame: &BoundaryFrame,
    opts: &ClassifyOptions,
) -> Result<CurveClassification> {
    let tail = measure_tail(samples, frame);
    if tail.len() < MIN_TAIL_SAMPLES {
        return Err(Error::TooFewSamples {
            found: tail.len(),
            needed: MIN_TAIL_SAMPLES,
        });
    }
    let special = numeric_special(&tail, opts.ratio_tol);
    let nontangential_projection = numeric_nontangential(&tail, opts.max_alpha());
    Ok(CurveClassification {
        special,
        nontangential_projection,
        restricted: special.and(nontangential_projection),
        measured_ratio_trend: tail.iter().map(|m| (m.t, m.ratio)).collect(),
    })
}

/// Exponent families use the exact exponent rules; sampled curves use the
/// tail-window numerics.
pub fn classify(
    curve: &ZetaCurve,
    frame: &BoundaryFrame,
    opts: &ClassifyOptions,
) -> Result<CurveClassification> {
    match curve {
        ZetaCurve::Family(fam) => {
            fam.validate()?;
            let tail = measure_tail(&curve.sample(frame, &opts.schedule), frame);
            if tail.len() < MIN_TAIL_SAMPLES {
                return Err(Error::TooFewSamples {
                    found: tail.len(),
                    needed: MIN_TAIL_SAMPLES,
                });
            }
            let special = fam.exact_special(frame.type_m);
            let nontangential_projection = fam.exact_nontangential(&opts.alpha_grid);
            Ok(CurveClassification {
                special,
                nontangential_projection,
                restricted: special.and(nontangential_projection),
                measured_ratio_trend: tail.iter().map(|m| (m.t, m.ratio)).collect(),
            })
        }
        ZetaCurve::Sampled(_) => {
            classify_samples(&curve.native_samples(frame, &opts.schedule), frame, opts)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleRegion {
    pub frame: BoundaryFrame,
    pub alpha: f64,
    pub m: u32,
}

/// Normal slot in a Stolz cone of aperture `alpha`, tangential offset
/// bounded by `(alpha δ)^(1/m)` at normal depth `δ`.
pub fn in_admissible(p: &ComplexPoint, region: &AdmissibleRegion) -> bool {
    let depth = region.frame.normal_depth(p);
    let delta = depth.norm();
    let tangential = region.frame.tangential_offset(p).norm();
    depth.re > 0.0
        && depth.im.abs() < region.alpha * depth.re
        && tangential.powi(region.m as i32) < region.alpha * delta
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Capture {
    /// Every sample with `t >= t0` lies in the region of aperture `alpha`.
    Captured {
        alpha: f64,
        t0: f64,
    },
    NotCaptured,
}

/// Smallest grid aperture whose region contains the curve on the whole
/// tail window.
pub fn eventually_in_admissible(
    curve: &ZetaCurve,
    frame: &BoundaryFrame,
    alpha_grid: &[f64],
    schedule: &Schedule,
) -> Capture {
    let samples = curve.native_samples(frame, schedule);
    let mut grid = alpha_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    for alpha in grid {
        let region = AdmissibleRegion {
            frame: *frame,
            alpha,
            m: frame.type_m,
        };
        let inside: Vec<bool> = samples
            .iter()
            .map(|p| in_admissible(&p.point, &region))
            .collect();
        let start = inside.iter().rposition(|&ok| !ok).map_or(0, |i| i + 1);
        let tail_start = samples.iter().position(|p| in_tail_window(p.s));
        if let Some(ts) = tail_start {
            if start <= ts {
                return Capture::Captured {
                    alpha,
                    t0: samples[start].t(),
                };
            }
        }
    }
    Capture::NotCaptured
}

/// A named curve of a test family.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedCurve {
    pub name: String,
    pub curve: ZetaCurve,
}

impl NamedCurve {
    pub fn new(name: impl Into<String>, curve: ZetaCurve) -> Self {
        Self {
            name: name.into(),
            curve,
        }
    }
}

/// Tangential scale used by the shipped restricted families; shrinks with
/// `m` so the tangential displacement is resolved on the default schedule.
pub fn family_tangential_scale(m: u32) -> f64 {
    0.5 * 0.2f64.powi(m as i32 - 2)
}

/// Six restricted curves at type `m`: `a = 1`, `b in {1.5, 2, 3} / m`,
/// each with a constant phase on a radial normal law and with a
/// log-spiral phase on a normal law tilted by `π/6`.
pub fn restricted_family(m: u32) -> Vec<NamedCurve> {
    let ct = family_tangential_scale(m);
    let mut out = Vec::new();
    for (label, numer) in [("1.5", 1.5), ("2", 2.0), ("3", 3.0)] {
        let b = numer / m as f64;
        out.push(NamedCurve::new(
            format!("b={label}/{m} const"),
            ZetaCurve::Family(
                ExponentFamily::new(1.0, 1.0, b, ct).with_phase(PhaseLaw::Constant(0.3)),
            ),
        ));
        out.push(NamedCurve::new(
            format!("b={label}/{m} spiral"),
            ZetaCurve::Family(
                ExponentFamily::new(1.0, 1.0, b, ct)
                    .with_normal_angle(std::f64::consts::FRAC_PI_6)
                    .with_phase(PhaseLaw::LogSpiral {
                        theta0: 0.0,
                        omega: 2.0,
                    }),
            ),
        ));
    }
    out
}

/// Non-special curves at type `m`: the boundary case `m b = a` with a
/// tangential constant beyond every grid aperture, and `m b = a / 2`.
pub fn non_special_family(m: u32) -> Vec<NamedCurve> {
    let spiral = PhaseLaw::LogSpiral {
        theta0: 0.0,
        omega: 2.0,
    };
    let b1 = 1.0 / m as f64;
    let b2 = 0.5 / m as f64;
    vec![
        NamedCurve::new(
            "mb=a const",
            ZetaCurve::Family(ExponentFamily::new(1.0, 1.0, b1, 3.0)),
        ),
        NamedCurve::new(
            "mb=a spiral",
            ZetaCurve::Family(ExponentFamily::new(1.0, 1.0, b1, 3.0).with_phase(spiral)),
        ),
        NamedCurve::new(
            "mb=a/2 const",
            ZetaCurve::Family(ExponentFamily::new(1.0, 1.0, b2, 1.0)),
        ),
        NamedCurve::new(
            "mb=a/2 spiral",
            ZetaCurve::Family(ExponentFamily::new(1.0, 1.0, b2, 1.0).with_phase(spiral)),
        ),
    ]
}

/// Special curve whose projection approaches tangentially:
/// `w = s + i s^(3/4)`.
pub fn special_tangential_curve(m: u32) -> ZetaCurve {
    ZetaCurve::Family(
        ExponentFamily::new(1.0, 1.0, 3.0 / m as f64, family_tangential_scale(m))
            .with_drift(1.0, 0.75),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn egg_frame(m_egg: u32) -> BoundaryFrame {
        DomainModel::egg(m_egg)
            .boundary_frame(ComplexPoint::real(1.0, 0.0), 2 * m_egg)
            .unwrap()
    }

    fn vertex_frame(m_egg: u32) -> BoundaryFrame {
        DomainModel::egg_vertex(m_egg)
            .boundary_frame(ComplexPoint::ORIGIN, 2 * m_egg)
            .unwrap()
    }

    fn fam(a: f64, b: f64, ct: f64) -> ZetaCurve {
        ZetaCurve::Family(ExponentFamily::new(a, 1.0, b, ct))
    }

    #[test]
    fn projection_drops_the_tangential_part() {
        let frame = egg_frame(2);
        let ZetaCurve::Family(p) = project_curve(&fam(1.0, 1.0, 1.0), &frame) else {
            panic!("family expected")
        };
        assert_eq!(p.tangential_scale, 0.0);
        assert_eq!(p.normal_exp, 1.0);
        let normal = fam(1.0, 1.0, 0.0);
        assert_eq!(project_curve(&normal, &frame), normal);

        let sampled = ZetaCurve::Sampled(
            fam(1.0, 0.5, 1.0)
                .to_sampled(&frame, &Schedule::default())
                .unwrap(),
        );
        let ZetaCurve::Sampled(proj) = project_curve(&sampled, &frame) else {
            panic!("sampled expected")
        };
        for (s, p) in proj.samples() {
            let expect = frame.zeta - frame.nu.scale(Complex64::new(*s, 0.0));
            assert!(p.distance(&expect) < 1e-15);
        }
    }

    #[test]
    fn classification_examples_at_type_four() {
        let frame = egg_frame(2);
        let opts = ClassifyOptions::default();
        let c = classify(&fam(1.0, 0.5, 1.0), &frame, &opts).unwrap();
        assert_eq!((c.special, c.restricted), (Verdict::Yes, Verdict::Yes));
        let c = classify(&fam(1.0, 0.25, 1.0), &frame, &opts).unwrap();
        assert_eq!(c.special, Verdict::No);
        assert_eq!(c.restricted, Verdict::No);
        let c = classify(&fam(1.0, 0.375, 1.0), &frame, &opts).unwrap();
        assert_eq!(c.special, Verdict::Yes);
    }

    #[test]
    fn tangential_projection_is_not_restricted() {
        let frame = egg_frame(2);
        let opts = ClassifyOptions::default();
        let curve = special_tangential_curve(4);
        let c = classify(&curve, &frame, &opts).unwrap();
        assert_eq!(c.special, Verdict::Yes);
        assert_eq!(c.nontangential_projection, Verdict::No);
        assert_eq!(c.restricted, Verdict::No);
        // the numeric path agrees
        let sampled = ZetaCurve::Sampled(curve.to_sampled(&frame, &opts.schedule).unwrap());
        let c = classify(&sampled, &frame, &opts).unwrap();
        assert_eq!(c.nontangential_projection, Verdict::No);
    }

    #[test]
    fn short_schedules_are_rejected() {
        let frame = egg_frame(2);
        let opts = ClassifyOptions {
            schedule: Schedule::from_s(vec![1e-3, 1e-4, 1e-5]),
            ..ClassifyOptions::default()
        };
        assert_eq!(
            classify(&fam(1.0, 0.5, 1.0), &frame, &opts),
            Err(Error::TooFewSamples {
                found: 3,
                needed: 8
            })
        );
    }

    #[test]
    fn numeric_classifier_matches_exponent_rule_off_the_boundary() {
        let opts = ClassifyOptions::default();
        for m_egg in [1u32, 2, 3] {
            let frame = vertex_frame(m_egg);
            let m = frame.type_m as f64;
            for a in [0.5, 1.0, 2.0] {
                for b in [0.125, 0.25, 0.375, 0.5, 1.0] {
                    if (m * b - a).abs() < 1e-12 {
                        continue;
                    }
                    let curve = fam(a, b, 0.1);
                    let sampled =
                        ZetaCurve::Sampled(curve.to_sampled(&frame, &opts.schedule).unwrap());
                    let numeric = classify(&sampled, &frame, &opts).unwrap().special;
                    let exact = classify(&curve, &frame, &opts).unwrap().special;
                    assert_eq!(numeric, exact, "m={m} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn classification_survives_monotone_reparametrization() {
        let frame = vertex_frame(2);
        let opts = ClassifyOptions::default();
        for (a, b) in [(1.0, 0.5), (1.0, 0.125), (0.5, 0.375)] {
            let curve = fam(a, b, 0.1);
            let ZetaCurve::Family(f) = &curve else {
                unreachable!()
            };
            // Γ~(t') = Γ(t'^2): the node s maps to s' = 1 - sqrt(1 - s)
            let table: Vec<(f64, ComplexPoint)> = (8..=48)
                .map(|k| 10f64.powf(-k as f64 / 6.0))
                .map(|s| (s / (1.0 + (1.0 - s).sqrt()), f.point(&frame, s)))
                .collect();
            let original: Vec<(f64, ComplexPoint)> = (8..=48)
                .map(|k| 10f64.powf(-k as f64 / 6.0))
                .map(|s| (s, f.point(&frame, s)))
                .collect();
            let v1 = classify(
                &ZetaCurve::Sampled(SampledCurve::from_s_table(original).unwrap()),
                &frame,
                &opts,
            )
            .unwrap();
            let v2 = classify(
                &ZetaCurve::Sampled(SampledCurve::from_s_table(table).unwrap()),
                &frame,
                &opts,
            )
            .unwrap();
            assert_eq!(v1.special, v2.special);
            assert_eq!(v1.nontangential_projection, v2.nontangential_projection);
        }
    }

    #[test]
    fn phase_rotation_does_not_change_verdicts() {
        let frame = vertex_frame(2);
        let opts = ClassifyOptions::default();
        let base = ExponentFamily::new(1.0, 1.0, 0.375, 0.1).with_phase(PhaseLaw::LogSpiral {
            theta0: 0.1,
            omega: 3.0,
        });
        let reference = classify(
            &ZetaCurve::Sampled(
                ZetaCurve::Family(base)
                    .to_sampled(&frame, &opts.schedule)
                    .unwrap(),
            ),
            &frame,
            &opts,
        )
        .unwrap();
        for k in 1..6 {
            let rotated = base.with_phase(base.phase.rotated(k as f64));
            let sampled = ZetaCurve::Family(rotated)
                .to_sampled(&frame, &opts.schedule)
                .unwrap();
            let c = classify(&ZetaCurve::Sampled(sampled), &frame, &opts).unwrap();
            assert_eq!(c.special, reference.special);
            assert_eq!(c.restricted, reference.restricted);
        }
    }

    #[test]
    fn admissible_membership_examples() {
        let frame = egg_frame(2);
        let alpha = 2.0;
        let region = AdmissibleRegion { frame, alpha, m: 4 };
        let s = 1e-4;
        let inward = frame.point_at(Complex64::new(s, 0.0), Complex64::new(0.0, 0.0));
        assert!(in_admissible(&inward, &region));
        let wide = frame.point_at(
            Complex64::new(s, 0.0),
            Complex64::new((2.0 * alpha * s).powf(0.25), 0.0),
        );
        assert!(!in_admissible(&wide, &region));
        let steep = frame.point_at(Complex64::new(s, 2.0 * alpha * s), Complex64::new(0.0, 0.0));
        assert!(!in_admissible(&steep, &region));
        assert!(!in_admissible(&frame.zeta, &region));
    }

    #[test]
    fn capture_examples() {
        let frame = egg_frame(2);
        let grid = DEFAULT_ALPHA_GRID;
        let sch = Schedule::default();
        match eventually_in_admissible(&fam(1.0, 0.5, 1.0), &frame, &grid, &sch) {
            Capture::Captured { alpha, .. } => assert!(alpha <= 4.0),
            Capture::NotCaptured => panic!("restricted curve must be captured"),
        }
        assert_eq!(
            eventually_in_admissible(&fam(1.0, 0.25, 2.0), &frame, &grid, &sch),
            Capture::NotCaptured
        );
        assert!(matches!(
            eventually_in_admissible(&fam(1.0, 1.0, 0.0), &frame, &grid, &sch),
            Capture::Captured { alpha, .. } if alpha == 1.25
        ));
    }

    #[test]
    fn shipped_families_live_in_the_egg_and_approach_zeta() {
        for m_egg in 1..=3 {
            let domain = DomainModel::egg(m_egg);
            let frame = egg_frame(m_egg);
            let sch = Schedule::default();
            for c in restricted_family(frame.type_m) {
                assert_eq!(
                    c.curve.t_min(&domain, &frame, &sch),
                    Some(0.9),
                    "{}",
                    c.name
                );
                assert!(c.curve.approaches(&frame, &sch, 2e-2), "{}", c.name);
            }
        }
    }

    #[test]
    fn sampled_lookup_interpolates_between_nodes() {
        let table = SampledCurve::from_s_table(vec![
            (0.2, ComplexPoint::real(0.8, 0.0)),
            (0.1, ComplexPoint::real(0.9, 0.0)),
        ])
        .unwrap();
        assert_eq!(table.point_at(0.1), Some(ComplexPoint::real(0.9, 0.0)));
        let mid = table.point_at(0.15).unwrap();
        assert!((mid.z1.re - 0.85).abs() < 1e-15);
        assert_eq!(table.point_at(0.05), None);
        assert!(SampledCurve::from_s_table(vec![]).is_err());
    }
}
