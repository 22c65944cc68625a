//! Line-oriented scenario files.
//!
//! ```text
//! # comment
//! id = egg2_inner
//! domain = egg 2            # egg M | ball | egg_vertex M | sheared_egg M
//! zeta = 1 0 0 0            # Re z1, Im z1, Re z2, Im z2
//! type = 4                  # optional; computed when absent
//! function = INNER
//! schedule = 4:32:4         # optional
//! limit_tol = 1e-6          # optional overrides: ratio_tol, membership_tol
//!
//! curve = radial            # starts a curve block
//! role = reference          # reference | test (default)
//! a = 1
//! c_t = 0
//!
//! curve = table
//! form = sampled
//! sample = 0.9 0.9 0 0.01 0 # t, then the point
//! ```

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::curves::{ExponentFamily, NamedCurve, PhaseLaw, SampledCurve, ZetaCurve};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryFrame, ComplexPoint, DomainModel, DEFAULT_MEMBERSHIP_TOL};
use crate::holo::{catalog, BoundedHolomorphicFunction};
use crate::lindelof::{CurveRole, LambdaGrid, TheoremScenario, Tolerances};
use crate::schedule::{Schedule, ScheduleSpec};
use crate::type_analysis::{point_type, DEFAULT_DISC_DEGREE_BOUND, DEFAULT_TRUNCATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainSpec {
    Egg(u32),
    EggVertex(u32),
    ShearedEgg(u32),
}

impl DomainSpec {
    pub fn build(&self) -> DomainModel {
        match *self {
            DomainSpec::Egg(m) => DomainModel::egg(m),
            DomainSpec::EggVertex(m) => DomainModel::egg_vertex(m),
            DomainSpec::ShearedEgg(m) => DomainModel::sheared_egg(m),
        }
    }

    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let exponent = |w: Option<&&str>| -> std::result::Result<u32, String> {
            let w = w.ok_or("missing exponent")?;
            match w.parse::<u32>() {
                Ok(m) if m >= 1 => Ok(m),
                _ => Err(format!("exponent must be a positive integer, got `{w}`")),
            }
        };
        let spec = match words.first().map(|w| w.to_ascii_lowercase()).as_deref() {
            Some("ball") if words.len() == 1 => return Ok(DomainSpec::Egg(1)),
            Some("egg") => DomainSpec::Egg(exponent(words.get(1))?),
            Some("egg_vertex") => DomainSpec::EggVertex(exponent(words.get(1))?),
            Some("sheared_egg") => DomainSpec::ShearedEgg(exponent(words.get(1))?),
            _ => return Err(format!("unknown domain `{text}`")),
        };
        if words.len() > 2 {
            return Err(format!("trailing input in `{text}`"));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub name: String,
    pub role: CurveRole,
    pub line: usize,
    pub curve: ZetaCurve,
}

impl CurveSpec {
    pub fn named(&self) -> NamedCurve {
        NamedCurve::new(self.name.clone(), self.curve.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub id: String,
    pub domain: DomainSpec,
    pub zeta: ComplexPoint,
    pub declared_type: Option<u32>,
    pub function: BoundedHolomorphicFunction,
    pub schedule: ScheduleSpec,
    pub ratio_tol: Option<f64>,
    pub limit_tol: Option<f64>,
    pub membership_tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub curves: Vec<CurveSpec>,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub schedule: Option<ScheduleSpec>,
    pub ratio_tol: Option<f64>,
    pub limit_tol: Option<f64>,
    pub check_type: bool,
}

fn perr(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_f64(line: usize, field: &str, v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(perr(
            line,
            field,
            format!("expected a finite number, got `{v}`"),
        )),
    }
}

fn parse_numbers(line: usize, field: &str, v: &str, n: usize) -> Result<Vec<f64>> {
    let xs: Vec<f64> = v
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| parse_f64(line, field, w))
        .collect::<Result<_>>()?;
    if xs.len() != n {
        return Err(perr(
            line,
            field,
            format!("expected {n} numbers, got {}", xs.len()),
        ));
    }
    Ok(xs)
}

/// `Re z1, Im z1, Re z2, Im z2`, separated by spaces or commas.
pub fn parse_point(v: &str) -> Result<ComplexPoint> {
    let xs = parse_numbers(0, "zeta", v, 4)?;
    Ok(point_from(&xs))
}

fn point_from(xs: &[f64]) -> ComplexPoint {
    ComplexPoint::new(Complex64::new(xs[0], xs[1]), Complex64::new(xs[2], xs[3]))
}

#[derive(Debug)]
struct CurveBuilder {
    name: String,
    line: usize,
    role: CurveRole,
    sampled: bool,
    family: ExponentFamily,
    theta0: f64,
    omega: Option<f64>,
    samples: Vec<(f64, ComplexPoint)>,
    family_keys: bool,
}

impl CurveBuilder {
    fn new(name: String, line: usize) -> Self {
        Self {
            name,
            line,
            role: CurveRole::Test,
            sampled: false,
            family: ExponentFamily::new(1.0, 1.0, 1.0, 0.0),
            theta0: 0.0,
            omega: None,
            samples: Vec::new(),
            family_keys: false,
        }
    }

    fn set(&mut self, line: usize, key: &str, v: &str) -> Result<()> {
        let num = || parse_f64(line, key, v);
        match key {
            "role" => {
                self.role = match v.to_ascii_lowercase().as_str() {
                    "reference" => CurveRole::Reference,
                    "test" => CurveRole::Test,
                    _ => {
                        return Err(perr(
                            line,
                            key,
                            format!("expected `reference` or `test`, got `{v}`"),
                        ))
                    }
                }
            }
            "form" => {
                self.sampled = match v.to_ascii_lowercase().as_str() {
                    "family" => false,
                    "sampled" => true,
                    _ => {
                        return Err(perr(
                            line,
                            key,
                            format!("expected `family` or `sampled`, got `{v}`"),
                        ))
                    }
                }
            }
            "sample" => {
                let xs = parse_numbers(line, key, v, 5)?;
                self.samples.push((xs[0], point_from(&xs[1..])));
            }
            "a" => self.family.normal_exp = num()?,
            "c_n" => self.family.normal_scale = num()?,
            "normal_angle" => self.family.normal_angle = num()?,
            "drift_scale" => self.family.drift_scale = num()?,
            "drift_exp" => self.family.drift_exp = num()?,
            "b" => self.family.tangential_exp = num()?,
            "c_t" => self.family.tangential_scale = num()?,
            "phase" => self.theta0 = num()?,
            "spiral" => self.omega = Some(num()?),
            _ => return Err(perr(line, key, "unknown curve key")),
        }
        if !matches!(key, "role" | "form" | "sample") {
            self.family_keys = true;
        }
        Ok(())
    }

    fn finish(self) -> Result<CurveSpec> {
        let curve = if self.sampled {
            if self.family_keys {
                return Err(perr(
                    self.line,
                    "form",
                    "sampled curves take only `sample` rows",
                ));
            }
            let table = SampledCurve::from_t_table(self.samples)
                .map_err(|e| perr(self.line, "sample", e.to_string()))?;
            ZetaCurve::Sampled(table)
        } else {
            if !self.samples.is_empty() {
                return Err(perr(
                    self.line,
                    "sample",
                    "`sample` rows need `form = sampled`",
                ));
            }
            let phase = match self.omega {
                Some(omega) => PhaseLaw::LogSpiral {
                    theta0: self.theta0,
                    omega,
                },
                None => PhaseLaw::Constant(self.theta0),
            };
            let fam = self.family.with_phase(phase);
            fam.validate()
                .map_err(|e| perr(self.line, "curve", e.to_string()))?;
            ZetaCurve::Family(fam)
        };
        Ok(CurveSpec {
            name: self.name,
            role: self.role,
            line: self.line,
            curve,
        })
    }
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut id = None;
        let mut domain = None;
        let mut zeta = None;
        let mut declared_type = None;
        let mut function = None;
        let mut schedule = ScheduleSpec::default();
        let mut ratio_tol = None;
        let mut limit_tol = None;
        let mut membership_tol = None;
        let mut out = None;
        let mut curves = Vec::new();
        let mut current: Option<CurveBuilder> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| perr(line, content, "expected `key = value`"))?;
            if value.is_empty() {
                return Err(perr(line, key, "missing value"));
            }
            if key == "curve" {
                if let Some(b) = current.take() {
                    curves.push(b.finish()?);
                }
                if curves.iter().any(|c: &CurveSpec| c.name == value) {
                    return Err(perr(line, key, format!("duplicate curve name `{value}`")));
                }
                current = Some(CurveBuilder::new(value.to_string(), line));
                continue;
            }
            if let Some(b) = current.as_mut() {
                b.set(line, key, value)?;
                continue;
            }
            match key {
                "id" => id = Some(value.to_string()),
                "domain" => {
                    domain = Some(DomainSpec::parse(value).map_err(|m| perr(line, key, m))?)
                }
                "zeta" => zeta = Some(point_from(&parse_numbers(line, key, value, 4)?)),
                "type" => {
                    declared_type = Some(match value.parse::<u32>() {
                        Ok(m) if m >= 2 => m,
                        _ => {
                            return Err(perr(
                                line,
                                key,
                                format!("expected an integer >= 2, got `{value}`"),
                            ))
                        }
                    })
                }
                "function" => {
                    function = Some(catalog(value).map_err(|e| perr(line, key, e.to_string()))?)
                }
                "schedule" => {
                    schedule = value.parse().map_err(|e: Error| match e {
                        Error::Parse { message, .. } => perr(line, key, message),
                        other => other,
                    })?
                }
                "ratio_tol" => ratio_tol = Some(positive(line, key, value)?),
                "limit_tol" => limit_tol = Some(positive(line, key, value)?),
                "membership_tol" => membership_tol = Some(positive(line, key, value)?),
                "out" => out = Some(PathBuf::from(value)),
                _ => return Err(perr(line, key, "unknown key")),
            }
        }
        if let Some(b) = current.take() {
            curves.push(b.finish()?);
        }
        let missing = |field: &str| perr(0, field, "required key is missing");
        Ok(Self {
            id: id.ok_or_else(|| missing("id"))?,
            domain: domain.ok_or_else(|| missing("domain"))?,
            zeta: zeta.ok_or_else(|| missing("zeta"))?,
            declared_type,
            function: function.ok_or_else(|| missing("function"))?,
            schedule,
            ratio_tol,
            limit_tol,
            membership_tol,
            out,
            curves,
        })
    }

    pub fn domain_model(&self) -> DomainModel {
        self.domain
            .build()
            .with_membership_tol(self.membership_tol.unwrap_or(DEFAULT_MEMBERSHIP_TOL))
    }

    /// The declared type, verified against the computed one under
    /// `check_type`; computed when not declared.
    pub fn resolve_type(&self, domain: &DomainModel, check_type: bool) -> Result<u32> {
        let compute = || {
            point_type(
                domain,
                self.zeta,
                DEFAULT_DISC_DEGREE_BOUND,
                DEFAULT_TRUNCATION,
            )
        };
        match self.declared_type {
            Some(m) if check_type => {
                let computed = compute()?;
                if computed != m {
                    return Err(Error::BadScenario(format!(
                        "declared type {m} does not match computed type {computed}"
                    )));
                }
                Ok(m)
            }
            Some(m) => Ok(m),
            None => compute(),
        }
    }

    pub fn frame(&self, domain: &DomainModel, overrides: &Overrides) -> Result<BoundaryFrame> {
        let m = self.resolve_type(domain, overrides.check_type)?;
        domain.boundary_frame(self.zeta, m)
    }

    pub fn tolerances(&self, overrides: &Overrides) -> Tolerances {
        let base = Tolerances::default();
        Tolerances {
            ratio_tol: overrides
                .ratio_tol
                .or(self.ratio_tol)
                .unwrap_or(base.ratio_tol),
            limit_tol: overrides
                .limit_tol
                .or(self.limit_tol)
                .unwrap_or(base.limit_tol),
            ..base
        }
    }

    pub fn schedule(&self, overrides: &Overrides) -> Schedule {
        Schedule::geometric(overrides.schedule.unwrap_or(self.schedule))
    }

    pub fn theorem(&self, overrides: &Overrides) -> Result<TheoremScenario> {
        let domain = self.domain_model();
        let frame = self.frame(&domain, overrides)?;
        let mut refs = self
            .curves
            .iter()
            .filter(|c| c.role == CurveRole::Reference);
        let reference = match (refs.next(), refs.next()) {
            (Some(r), None) => r.named(),
            (None, _) => return Err(Error::BadScenario("no curve has `role = reference`".into())),
            (Some(_), Some(second)) => {
                return Err(Error::BadScenario(format!(
                    "second reference curve `{}` at line {}",
                    second.name, second.line
                )))
            }
        };
        Ok(TheoremScenario {
            id: self.id.clone(),
            domain,
            frame,
            function: self.function,
            reference,
            tests: self
                .curves
                .iter()
                .filter(|c| c.role == CurveRole::Test)
                .map(CurveSpec::named)
                .collect(),
            schedule: self.schedule(overrides),
            tolerances: self.tolerances(overrides),
            lambda_grid: LambdaGrid::default(),
        })
    }
}

fn positive(line: usize, field: &str, v: &str) -> Result<f64> {
    let x = parse_f64(line, field, v)?;
    if x <= 0.0 {
        return Err(perr(line, field, "must be positive"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# test
id = demo
domain = egg 2
zeta = 1, 0, 0, 0
type = 4
function = inner
limit_tol = 1e-7

curve = radial
role = reference
c_t = 0

curve = spiral
a = 1
b = 0.5
c_t = 0.02
phase = 0.1
spiral = 2

curve = table
form = sampled
sample = 0.9 0.9 0 0 0
sample = 0.99 0.99 0 0 0
";

    #[test]
    fn parses_a_scenario() {
        let f = ScenarioFile::parse(SAMPLE).unwrap();
        assert_eq!(f.id, "demo");
        assert_eq!(f.domain, DomainSpec::Egg(2));
        assert_eq!(f.function, BoundedHolomorphicFunction::Inner);
        assert_eq!(f.curves.len(), 3);
        assert_eq!(f.curves[0].role, CurveRole::Reference);
        match &f.curves[1].curve {
            ZetaCurve::Family(fam) => assert_eq!(
                fam.phase,
                PhaseLaw::LogSpiral {
                    theta0: 0.1,
                    omega: 2.0
                }
            ),
            other => panic!("{other:?}"),
        }
        assert!(matches!(f.curves[2].curve, ZetaCurve::Sampled(_)));
        let scn = f.theorem(&Overrides::default()).unwrap();
        assert_eq!(scn.frame.type_m, 4);
        assert_eq!(scn.tolerances.limit_tol, 1e-7);
        assert_eq!(scn.tests.len(), 2);
    }

    #[test]
    fn errors_name_line_and_field() {
        let text = SAMPLE.replace("b = 0.5", "b = half");
        match ScenarioFile::parse(&text) {
            Err(Error::Parse { line, field, .. }) => {
                assert_eq!(line, 15);
                assert_eq!(field, "b");
            }
            other => panic!("{other:?}"),
        }
        let text = SAMPLE.replace("function = inner", "function = bessel");
        assert!(matches!(
            ScenarioFile::parse(&text),
            Err(Error::Parse { line: 6, .. })
        ));
        let text = SAMPLE.replace("domain = egg 2", "domain = torus");
        assert!(matches!(
            ScenarioFile::parse(&text),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            ScenarioFile::parse("id = x\n"),
            Err(Error::Parse { line: 0, .. })
        ));
    }

    #[test]
    fn declared_type_is_checked_on_request() {
        let text = SAMPLE.replace("type = 4", "type = 6");
        let f = ScenarioFile::parse(&text).unwrap();
        assert!(f.theorem(&Overrides::default()).is_ok());
        let check = Overrides {
            check_type: true,
            ..Overrides::default()
        };
        assert!(matches!(f.theorem(&check), Err(Error::BadScenario(_))));
        let f = ScenarioFile::parse(&SAMPLE.replace("type = 4\n", "")).unwrap();
        assert_eq!(f.theorem(&Overrides::default()).unwrap().frame.type_m, 4);
    }

    #[test]
    fn domain_specs() {
        assert_eq!(DomainSpec::parse("ball"), Ok(DomainSpec::Egg(1)));
        assert_eq!(
            DomainSpec::parse("sheared_egg 3"),
            Ok(DomainSpec::ShearedEgg(3))
        );
        assert!(DomainSpec::parse("egg 0").is_err());
        assert!(DomainSpec::parse("egg").is_err());
    }
}
