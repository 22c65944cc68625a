//! Order of contact of analytic discs with the boundary, and the type of a
//! boundary point.
//!
//! The defining function is composed with a polynomial disc
//! `phi(u) = zeta + c_1 u + ... + c_d u^d` as a jet in `(u, conj(u))`. The
//! lowest total degree with a nonvanishing coefficient is the contact order
//! of the disc. The type search starts from the tangent line and greedily
//! adds higher coefficients along the normal that cancel pure `u^j`
//! (harmonic) terms. Mixed terms `u^j conj(u)^k`, `j, k >= 1`, cannot be
//! removed by a holomorphic change of the disc, so they end the search.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ComplexPoint, DomainModel};
use crate::jet::{HoloSeries, SeriesJet};

pub const DEFAULT_COEF_TOL: f64 = 1e-10;
pub const DEFAULT_DISC_DEGREE_BOUND: usize = 4;
/// `2 * m_max * disc degree bound` with `m_max = 8`.
pub const DEFAULT_TRUNCATION: usize = 64;

/// `phi(u) = base + sum_j coeffs[j-1] u^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticDisc {
    base: ComplexPoint,
    coeffs: Vec<ComplexPoint>,
}

impl AnalyticDisc {
    pub fn new(base: ComplexPoint, coeffs: Vec<ComplexPoint>) -> Result<Self> {
        match coeffs.first() {
            Some(c1) if c1.norm() > 0.0 => Ok(Self { base, coeffs }),
            _ => Err(Error::InvalidDisc(
                "first coefficient must be nonzero".into(),
            )),
        }
    }

    /// `zeta + u * direction`.
    pub fn line(base: ComplexPoint, direction: ComplexPoint) -> Result<Self> {
        Self::new(base, vec![direction])
    }

    pub fn base(&self) -> ComplexPoint {
        self.base
    }

    pub fn coeffs(&self) -> &[ComplexPoint] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, u: Complex64) -> ComplexPoint {
        let mut acc = ComplexPoint::ORIGIN;
        for c in self.coeffs.iter().rev() {
            acc = (acc + *c).scale(u);
        }
        self.base + acc
    }

    /// The disc `phi(lambda u)`.
    pub fn reparametrize(&self, lambda: Complex64) -> Self {
        let mut f = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                f *= lambda;
                c.scale(f)
            })
            .collect();
        Self {
            base: self.base,
            coeffs,
        }
    }

    fn add_coeff(&mut self, degree: usize, delta: ComplexPoint) {
        if self.coeffs.len() < degree {
            self.coeffs.resize(degree, ComplexPoint::ORIGIN);
        }
        self.coeffs[degree - 1] = self.coeffs[degree - 1] + delta;
    }

    fn component_series(&self, n: usize, pick: impl Fn(&ComplexPoint) -> Complex64) -> HoloSeries {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(pick(&self.base));
        c.extend(self.coeffs.iter().map(&pick));
        HoloSeries::from_coeffs(n, &c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactOrder {
    pub order: Order,
    pub witnessed_disc: AnalyticDisc,
}

/// Jet of `rho(phi(u))` in `(u, conj(u))`.
///
/// Fails with `TruncationTooSmall` unless `truncation >= deg(rho) * deg(phi)`,
/// the degree at which the composition is represented exactly.
pub fn compose_rho_disc(
    domain: &DomainModel,
    disc: &AnalyticDisc,
    truncation: usize,
) -> Result<SeriesJet> {
    let required = domain.rho.total_degree() as usize * disc.degree();
    if truncation < required.max(1) {
        return Err(Error::TruncationTooSmall {
            requested: truncation,
            required: required.max(1),
        });
    }
    let n = truncation;
    let terms = domain.rho.terms();
    let max_pow = |i: usize| terms.iter().map(|t| t.powers[i]).max().unwrap_or(0);
    let p1 = disc
        .component_series(n, |p| p.z1)
        .powers(max_pow(0).max(max_pow(1)));
    let p2 = disc
        .component_series(n, |p| p.z2)
        .powers(max_pow(2).max(max_pow(3)));

    let mut jet = SeriesJet::zero(n);
    for t in terms {
        let [a, b, c, d] = t.powers.map(|p| p as usize);
        let holo = p1[a].mul_trunc(&p2[c]);
        let anti = p1[b].mul_trunc(&p2[d]);
        jet.axpy(
            Complex64::new(t.coef, 0.0),
            &SeriesJet::outer(n, &holo, &anti),
        );
    }
    Ok(jet)
}

/// Lowest total degree `>= 1` of a coefficient above `coef_tol`.
pub fn contact_order(
    domain: &DomainModel,
    disc: &AnalyticDisc,
    truncation: usize,
    coef_tol: f64,
) -> Result<ContactOrder> {
    let jet = compose_rho_disc(domain, disc, truncation)?;
    let order = match jet.lowest_degree(1, coef_tol) {
        Some(d) => Order::Finite(d as u32),
        None => Order::Infinite,
    };
    Ok(ContactOrder {
        order,
        witnessed_disc: disc.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeSearch {
    pub disc_degree_bound: usize,
    pub truncation: usize,
    pub coef_tol: f64,
}

impl Default for TypeSearch {
    fn default() -> Self {
        Self {
            disc_degree_bound: DEFAULT_DISC_DEGREE_BOUND,
            truncation: DEFAULT_TRUNCATION,
            coef_tol: DEFAULT_COEF_TOL,
        }
    }
}

/// Greedy jet-cancellation search; returns the best disc found.
pub fn best_contact(
    domain: &DomainModel,
    zeta: ComplexPoint,
    search: &TypeSearch,
) -> Result<ContactOrder> {
    let frame = domain.boundary_frame(zeta, 0)?;
    let normal = domain.rho.conj_gradient(&zeta);
    let normal_sqr = normal.norm_sqr();
    let mut disc = AnalyticDisc::line(zeta, frame.tau)?;

    loop {
        let jet = compose_rho_disc(domain, &disc, search.truncation)?;
        let Some(d) = jet.lowest_degree(1, search.coef_tol) else {
            return Err(Error::TypeUnboundedAtSearchDepth {
                truncation: search.truncation,
            });
        };
        let mixed = (1..d).any(|k| jet.coeff(d - k, k).norm() > search.coef_tol);
        if mixed || d > search.disc_degree_bound {
            return Ok(ContactOrder {
                order: Order::Finite(d as u32),
                witnessed_disc: disc,
            });
        }
        // Adding delta u^d moves the (d, 0) coefficient by
        // <delta, conj_gradient>, and leaves lower degrees untouched.
        let pure = jet.coeff(d, 0);
        disc.add_coeff(d, normal.scale(-pure / normal_sqr));
    }
}

pub fn point_type(
    domain: &DomainModel,
    zeta: ComplexPoint,
    disc_degree_bound: usize,
    truncation: usize,
) -> Result<u32> {
    let search = TypeSearch {
        disc_degree_bound,
        truncation,
        ..TypeSearch::default()
    };
    match best_contact(domain, zeta, &search)?.order {
        Order::Finite(m) => Ok(m),
        Order::Infinite => Err(Error::TypeUnboundedAtSearchDepth { truncation }),
    }
}
