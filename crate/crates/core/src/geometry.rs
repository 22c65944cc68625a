//! Points of C^2, polynomial defining functions and boundary frames.
//!
//! Inner products are linear in the first slot:
//! `<a, b> = a1 conj(b1) + a2 conj(b2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-12;

/// Gradients shorter than this are treated as singular.
pub const SINGULAR_GRADIENT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ComplexPoint {
    pub const ORIGIN: ComplexPoint = ComplexPoint {
        z1: Complex64::new(0.0, 0.0),
        z2: Complex64::new(0.0, 0.0),
    };

    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }

    pub fn real(x1: f64, x2: f64) -> Self {
        Self::new(Complex64::new(x1, 0.0), Complex64::new(x2, 0.0))
    }

    /// Hermitian inner product, linear in `self`.
    pub fn inner(&self, other: &ComplexPoint) -> Complex64 {
        self.z1 * other.z1.conj() + self.z2 * other.z2.conj()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> ComplexPoint {
        ComplexPoint::new(self.z1 * c, self.z2 * c)
    }

    pub fn conj(&self) -> ComplexPoint {
        ComplexPoint::new(self.z1.conj(), self.z2.conj())
    }

    pub fn is_finite(&self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    /// The Hermitian-orthogonal partner `(a, b) -> (-conj(b), conj(a))`.
    pub fn orthogonal_complement(&self) -> ComplexPoint {
        ComplexPoint::new(-self.z2.conj(), self.z1.conj())
    }

    pub fn distance(&self, other: &ComplexPoint) -> f64 {
        (*self - *other).norm()
    }
}

impl Add for ComplexPoint {
    type Output = ComplexPoint;
    fn add(self, rhs: ComplexPoint) -> ComplexPoint {
        ComplexPoint::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for ComplexPoint {
    type Output = ComplexPoint;
    fn sub(self, rhs: ComplexPoint) -> ComplexPoint {
        ComplexPoint::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Neg for ComplexPoint {
    type Output = ComplexPoint;
    fn neg(self) -> ComplexPoint {
        ComplexPoint::new(-self.z1, -self.z2)
    }
}

impl Mul<ComplexPoint> for Complex64 {
    type Output = ComplexPoint;
    fn mul(self, rhs: ComplexPoint) -> ComplexPoint {
        rhs.scale(self)
    }
}

impl Mul<ComplexPoint> for f64 {
    type Output = ComplexPoint;
    fn mul(self, rhs: ComplexPoint) -> ComplexPoint {
        rhs.scale(Complex64::new(self, 0.0))
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{:+}i, {}{:+}i)",
            self.z1.re, self.z1.im, self.z2.re, self.z2.im
        )
    }
}

/// One monomial `coef * z1^p0 * conj(z1)^p1 * z2^p2 * conj(z2)^p3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub powers: [u32; 4],
}

impl Monomial {
    pub fn new(coef: f64, powers: [u32; 4]) -> Self {
        Self { coef, powers }
    }

    /// Swap each variable's power with its conjugate's.
    pub fn conjugate_powers(&self) -> [u32; 4] {
        let [a, b, c, d] = self.powers;
        [b, a, d, c]
    }

    pub fn total_degree(&self) -> u32 {
        self.powers.iter().sum()
    }

    fn eval(&self, z: &ComplexPoint) -> Complex64 {
        let [a, b, c, d] = self.powers;
        self.coef * z.z1.powu(a) * z.z1.conj().powu(b) * z.z2.powu(c) * z.z2.conj().powu(d)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.powers;
        write!(f, "{}*z1^{a}*z1b^{b}*z2^{c}*z2b^{d}", self.coef)
    }
}

/// Real polynomial in `z, conj(z)` with real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DefiningFunction {
    terms: Vec<Monomial>,
}

impl DefiningFunction {
    /// Builds a defining function, rejecting term lists that are not
    /// closed under Hermitian conjugation.
    pub fn new(terms: Vec<Monomial>) -> Result<Self> {
        let mut merged: Vec<Monomial> = Vec::new();
        for t in terms {
            match merged.iter_mut().find(|m| m.powers == t.powers) {
                Some(m) => m.coef += t.coef,
                None => merged.push(t),
            }
        }
        merged.retain(|m| m.coef != 0.0);
        for t in &merged {
            let partner = t.conjugate_powers();
            let coef = merged.iter().find(|m| m.powers == partner).map(|m| m.coef);
            let ok = matches!(coef, Some(c) if (c - t.coef).abs() <= 1e-15 * t.coef.abs().max(1.0));
            if !ok {
                return Err(Error::NotHermitian {
                    term: t.to_string(),
                });
            }
        }
        Ok(Self { terms: merged })
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, z: &ComplexPoint) -> f64 {
        self.terms.iter().map(|t| t.eval(z)).sum::<Complex64>().re
    }

    /// `(d rho / d conj(z1), d rho / d conj(z2))`, which points along the
    /// real gradient of `rho` under the identification C^2 = R^4.
    pub fn conj_gradient(&self, z: &ComplexPoint) -> ComplexPoint {
        let mut g = ComplexPoint::ORIGIN;
        for t in &self.terms {
            let [a, b, c, d] = t.powers;
            if b > 0 {
                g.z1 += Monomial::new(t.coef * b as f64, [a, b - 1, c, d]).eval(z);
            }
            if d > 0 {
                g.z2 += Monomial::new(t.coef * d as f64, [a, b, c, d - 1]).eval(z);
            }
        }
        g
    }

    /// Holomorphic gradient `(d rho / d z1, d rho / d z2)`; the conjugate
    /// of [`conj_gradient`](Self::conj_gradient) for real `rho`.
    pub fn holo_gradient(&self, z: &ComplexPoint) -> ComplexPoint {
        self.conj_gradient(z).conj()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainModel {
    pub name: String,
    pub rho: DefiningFunction,
    pub membership_tol: f64,
    pub bounding_radius: f64,
}

impl DomainModel {
    pub fn new(name: impl Into<String>, rho: DefiningFunction, bounding_radius: f64) -> Self {
        Self {
            name: name.into(),
            rho,
            membership_tol: DEFAULT_MEMBERSHIP_TOL,
            bounding_radius,
        }
    }

    /// `|z1|^2 + |z2|^(2m) - 1 < 0`; the unit ball for `m = 1`.
    pub fn egg(m: u32) -> Self {
        assert!(m >= 1, "egg exponent must be positive");
        let rho = DefiningFunction::new(vec![
            Monomial::new(1.0, [1, 1, 0, 0]),
            Monomial::new(1.0, [0, 0, m, m]),
            Monomial::new(-1.0, [0, 0, 0, 0]),
        ])
        .expect("egg terms are Hermitian");
        Self::new(format!("egg {m}"), rho, 2f64.sqrt())
    }

    pub fn ball() -> Self {
        Self::egg(1)
    }

    /// The egg translated by `z1 -> z1 + 1`, so that its type-`2m` point
    /// sits at the origin: `|z1|^2 + z1 + conj(z1) + |z2|^(2m) < 0`.
    pub fn egg_vertex(m: u32) -> Self {
        assert!(m >= 1, "egg exponent must be positive");
        let rho = DefiningFunction::new(vec![
            Monomial::new(1.0, [1, 1, 0, 0]),
            Monomial::new(1.0, [1, 0, 0, 0]),
            Monomial::new(1.0, [0, 1, 0, 0]),
            Monomial::new(1.0, [0, 0, m, m]),
        ])
        .expect("egg terms are Hermitian");
        Self::new(format!("egg_vertex {m}"), rho, 2.5)
    }

    /// Pull-back of the egg under `(z1, z2) -> (z1 + z2^2, z2)`:
    /// `|z1 + z2^2|^2 + |z2|^(2m) - 1 < 0`. At `(1, 0)` the tangent line
    /// has contact 2 while the curved disc `(1 - u^2, u)` reaches `2m`.
    pub fn sheared_egg(m: u32) -> Self {
        assert!(m >= 1, "egg exponent must be positive");
        let rho = DefiningFunction::new(vec![
            Monomial::new(1.0, [1, 1, 0, 0]),
            Monomial::new(1.0, [1, 0, 0, 2]),
            Monomial::new(1.0, [0, 1, 2, 0]),
            Monomial::new(1.0, [0, 0, 2, 2]),
            Monomial::new(1.0, [0, 0, m, m]),
            Monomial::new(-1.0, [0, 0, 0, 0]),
        ])
        .expect("sheared egg terms are Hermitian");
        Self::new(format!("sheared_egg {m}"), rho, 2.0)
    }

    pub fn with_membership_tol(mut self, tol: f64) -> Self {
        self.membership_tol = tol;
        self
    }

    pub fn eval_rho(&self, z: &ComplexPoint) -> f64 {
        self.rho.eval(z)
    }

    pub fn contains(&self, p: &ComplexPoint) -> Membership {
        let r = self.eval_rho(p);
        if r < -self.membership_tol {
            Membership::Inside
        } else if r > self.membership_tol {
            Membership::Outside
        } else {
            Membership::Boundary
        }
    }

    pub fn is_inside(&self, p: &ComplexPoint) -> bool {
        self.contains(p) == Membership::Inside
    }

    /// Smallest `|grad rho|` over a deterministic sample of points within
    /// `radius` of `zeta`.
    pub fn min_gradient_near(&self, zeta: &ComplexPoint, radius: f64) -> f64 {
        let mut min = self.rho.conj_gradient(zeta).norm();
        let steps = [0.25, 0.5, 1.0];
        for &frac in &steps {
            for k in 0..8 {
                let angle = std::f64::consts::TAU * k as f64 / 8.0;
                let dir = Complex64::from_polar(radius * frac, angle);
                for offset in [
                    ComplexPoint::new(dir, Complex64::new(0.0, 0.0)),
                    ComplexPoint::new(Complex64::new(0.0, 0.0), dir),
                    ComplexPoint::new(dir, dir)
                        .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)),
                ] {
                    min = min.min(self.rho.conj_gradient(&(*zeta + offset)).norm());
                }
            }
        }
        min
    }

    pub fn boundary_frame(&self, zeta: ComplexPoint, type_m: u32) -> Result<BoundaryFrame> {
        let residual = self.eval_rho(&zeta).abs();
        if residual.is_nan() || residual > self.membership_tol {
            return Err(Error::NotOnBoundary {
                residual,
                tol: self.membership_tol,
            });
        }
        let grad = self.rho.conj_gradient(&zeta);
        let norm = grad.norm();
        if norm < SINGULAR_GRADIENT {
            return Err(Error::SingularPoint { norm });
        }
        let nu = grad.scale(Complex64::new(1.0 / norm, 0.0));
        let tau = nu.orthogonal_complement();
        Ok(BoundaryFrame {
            zeta,
            nu,
            tau,
            type_m,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFrame {
    pub zeta: ComplexPoint,
    /// Unit outward normal.
    pub nu: ComplexPoint,
    /// Unit complex tangent, Hermitian-orthogonal to `nu`.
    pub tau: ComplexPoint,
    pub type_m: u32,
}

impl BoundaryFrame {
    pub fn with_type(mut self, type_m: u32) -> Self {
        self.type_m = type_m;
        self
    }

    /// Coordinate of `zeta - p` along the normal, `<zeta - p, nu>`.
    /// Positive real part means `p` lies on the inner side.
    pub fn normal_depth(&self, p: &ComplexPoint) -> Complex64 {
        (self.zeta - *p).inner(&self.nu)
    }

    /// Coordinate of `p - zeta` along the tangent, `<p - zeta, tau>`.
    pub fn tangential_offset(&self, p: &ComplexPoint) -> Complex64 {
        (*p - self.zeta).inner(&self.tau)
    }

    /// Point with normal coordinate `w` (depth, as in
    /// [`normal_depth`](Self::normal_depth)) and tangential coordinate `v`.
    pub fn point_at(&self, w: Complex64, v: Complex64) -> ComplexPoint {
        self.zeta - self.nu.scale(w) + self.tau.scale(v)
    }
}

/// Affine orthogonal projection onto the complex normal line
/// `zeta + C nu`.
pub fn project_to_normal_line(p: &ComplexPoint, frame: &BoundaryFrame) -> ComplexPoint {
    frame.zeta + frame.nu.scale((*p - frame.zeta).inner(&frame.nu))
}
