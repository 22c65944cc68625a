//! Catalog of bounded holomorphic test functions on the egg domains.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::ZetaCurve;
use crate::error::{Error, Result};
use crate::geometry::{BoundaryFrame, ComplexPoint, DomainModel};
use crate::schedule::Schedule;

/// Boundary behavior at `ζ = (1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExpectedBehavior {
    Limit(Complex64),
    Oscillating,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundedHolomorphicFunction {
    /// `z1`
    Coord1,
    /// `z1 z2`
    Product,
    /// `exp((z1 + 1) / (z1 - 1))`
    Inner,
    /// `(1 - z1)^i`, principal branch
    Spiral,
}

pub const CATALOG: [BoundedHolomorphicFunction; 4] = [
    BoundedHolomorphicFunction::Coord1,
    BoundedHolomorphicFunction::Product,
    BoundedHolomorphicFunction::Inner,
    BoundedHolomorphicFunction::Spiral,
];

impl BoundedHolomorphicFunction {
    pub fn id(&self) -> &'static str {
        match self {
            Self::Coord1 => "COORD1",
            Self::Product => "PRODUCT",
            Self::Inner => "INNER",
            Self::Spiral => "SPIRAL",
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            Self::Coord1 => "z1",
            Self::Product => "z1*z2",
            Self::Inner => "exp((z1+1)/(z1-1))",
            Self::Spiral => "(1-z1)^i",
        }
    }

    pub fn eval(&self, z: &ComplexPoint) -> Complex64 {
        match self {
            Self::Coord1 => z.z1,
            Self::Product => z.z1 * z.z2,
            Self::Inner => ((z.z1 + 1.0) / (z.z1 - 1.0)).exp(),
            Self::Spiral => (Complex64::i() * (1.0 - z.z1).ln()).exp(),
        }
    }

    /// Certified bound for `|f|` on every egg domain (all lie in `|z1| < 1`,
    /// `|z2| < 1`).
    pub fn sup_norm(&self) -> f64 {
        match self {
            Self::Coord1 | Self::Product | Self::Inner => 1.0,
            // |exp(i Log w)| = exp(-arg w) and |arg(1 - z1)| < π/2
            Self::Spiral => FRAC_PI_2.exp(),
        }
    }

    pub fn expected_behavior_at_vertex(&self) -> ExpectedBehavior {
        match self {
            Self::Coord1 => ExpectedBehavior::Limit(Complex64::new(1.0, 0.0)),
            Self::Product | Self::Inner => ExpectedBehavior::Limit(Complex64::new(0.0, 0.0)),
            Self::Spiral => ExpectedBehavior::Oscillating,
        }
    }

    /// `|∂f/∂conj(z_j)|` summed over both variables, by centered differences
    /// with step `h`.
    pub fn cauchy_riemann_residual(&self, z: &ComplexPoint, h: f64) -> f64 {
        let mut total = 0.0;
        for j in 0..2 {
            let shift = |d: Complex64| {
                let mut p = *z;
                if j == 0 {
                    p.z1 += d;
                } else {
                    p.z2 += d;
                }
                self.eval(&p)
            };
            let dx = (shift(Complex64::new(h, 0.0)) - shift(Complex64::new(-h, 0.0))) / (2.0 * h);
            let dy = (shift(Complex64::new(0.0, h)) - shift(Complex64::new(0.0, -h))) / (2.0 * h);
            total += (0.5 * (dx + Complex64::i() * dy)).norm();
        }
        total
    }
}

impl fmt::Display for BoundedHolomorphicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BoundedHolomorphicFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        catalog(s)
    }
}

pub fn catalog(id: &str) -> Result<BoundedHolomorphicFunction> {
    CATALOG
        .iter()
        .copied()
        .find(|f| f.id().eq_ignore_ascii_case(id.trim()))
        .ok_or_else(|| Error::UnknownFunction(id.to_string()))
}

/// Evaluates only at points strictly inside the domain.
pub fn checked_eval(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    p: &ComplexPoint,
    t: f64,
) -> Result<Complex64> {
    if !domain.is_inside(p) {
        return Err(Error::PointLeftDomain { t });
    }
    let v = f.eval(p);
    debug_assert!(
        v.norm() <= f.sup_norm() * (1.0 + 1e-12),
        "{f} exceeds its sup norm at {p}"
    );
    Ok(v)
}

/// `(t, f(Γ(t)))` at every schedule point the curve covers.
pub fn eval_along(
    f: BoundedHolomorphicFunction,
    domain: &DomainModel,
    frame: &BoundaryFrame,
    curve: &ZetaCurve,
    schedule: &Schedule,
) -> Result<Vec<(f64, Complex64)>> {
    curve
        .sample(frame, schedule)
        .iter()
        .map(|p| checked_eval(f, domain, &p.point, p.t()).map(|v| (p.t(), v)))
        .collect()
}

/// Radical-inverse sequence in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= b as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// Deterministic quasi-random points of `domain` with `rho <= -margin`,
/// drawn from a 4-d Halton sequence on the bounding box.
pub fn interior_samples(domain: &DomainModel, n: usize, margin: f64) -> Vec<ComplexPoint> {
    let r = domain.bounding_radius.min(2.0);
    let mut out = Vec::with_capacity(n);
    let mut i = 1u64;
    while out.len() < n {
        let x: Vec<f64> = [2u64, 3, 5, 7]
            .iter()
            .map(|&b| (2.0 * radical_inverse(i, b) - 1.0) * r)
            .collect();
        i += 1;
        let p = ComplexPoint::new(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]));
        let rho = domain.eval_rho(&p);
        if rho < 0.0 && rho <= -margin {
            out.push(p);
        }
    }
    out
}
