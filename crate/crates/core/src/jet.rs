//! Truncated power series in `u` and in `(u, conj(u))`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Holomorphic series `sum_j a_j u^j`, truncated at degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloSeries {
    coeffs: Vec<Complex64>,
}

impl HoloSeries {
    pub fn zero(n: usize) -> Self {
        Self {
            coeffs: vec![ZERO; n + 1],
        }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    /// Series from leading coefficients; entries past `n` are dropped.
    pub fn from_coeffs(n: usize, coeffs: &[Complex64]) -> Self {
        let mut s = Self::zero(n);
        for (dst, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = c;
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn mul_trunc(&self, other: &HoloSeries) -> HoloSeries {
        let n = self.degree().min(other.degree());
        let mut out = HoloSeries::zero(n);
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `[1, s, s^2, ..., s^k]`.
    pub fn powers(&self, k: u32) -> Vec<HoloSeries> {
        let mut out = Vec::with_capacity(k as usize + 1);
        out.push(HoloSeries::constant(
            self.degree(),
            Complex64::new(1.0, 0.0),
        ));
        for i in 1..=k as usize {
            let next = out[i - 1].mul_trunc(self);
            out.push(next);
        }
        out
    }
}

/// Truncated series `sum c_{jk} u^j conj(u)^k` over `j + k <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesJet {
    truncation: usize,
    coeffs: Vec<Complex64>,
}

fn index(j: usize, k: usize) -> usize {
    let d = j + k;
    d * (d + 1) / 2 + k
}

impl SeriesJet {
    pub fn zero(truncation: usize) -> Self {
        Self {
            truncation,
            coeffs: vec![ZERO; index(0, truncation + 1)],
        }
    }

    pub fn constant(truncation: usize, c: Complex64) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = c;
        s
    }

    /// The jet of `u`.
    pub fn u(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.set(1, 0, Complex64::new(1.0, 0.0));
        s
    }

    /// The jet of `conj(u)`.
    pub fn u_bar(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.set(0, 1, Complex64::new(1.0, 0.0));
        s
    }

    /// `a(u) * conj(b(u))` for holomorphic `a, b`.
    pub fn outer(truncation: usize, a: &HoloSeries, b: &HoloSeries) -> Self {
        let mut s = Self::zero(truncation);
        for (j, &x) in a.coeffs().iter().enumerate().take(truncation + 1) {
            if x == ZERO {
                continue;
            }
            for (k, &y) in b.coeffs().iter().enumerate().take(truncation + 1 - j) {
                s.coeffs[index(j, k)] = x * y.conj();
            }
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, j: usize, k: usize) -> Complex64 {
        if j + k > self.truncation {
            ZERO
        } else {
            self.coeffs[index(j, k)]
        }
    }

    pub fn set(&mut self, j: usize, k: usize, c: Complex64) {
        assert!(
            j + k <= self.truncation,
            "bidegree ({j},{k}) beyond truncation"
        );
        self.coeffs[index(j, k)] = c;
    }

    /// Iterates `((j, k), c)` in order of increasing total degree.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        (0..=self.truncation)
            .flat_map(|d| (0..=d).map(move |k| (d - k, k)))
            .map(move |(j, k)| ((j, k), self.coeffs[index(j, k)]))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn axpy(&mut self, c: Complex64, other: &SeriesJet) {
        let n = self.truncation.min(other.truncation);
        for d in 0..=n {
            for k in 0..=d {
                self.coeffs[index(d - k, k)] += c * other.coeffs[index(d - k, k)];
            }
        }
    }

    pub fn mul_trunc(&self, other: &SeriesJet) -> SeriesJet {
        let n = self.truncation.min(other.truncation);
        let mut out = SeriesJet::zero(n);
        for ((j1, k1), a) in self.iter() {
            if a == ZERO || j1 + k1 > n {
                continue;
            }
            let rest = n - j1 - k1;
            for ((j2, k2), b) in other.iter().take_while(|((j, k), _)| j + k <= rest) {
                out.coeffs[index(j1 + j2, k1 + k2)] += a * b;
            }
        }
        out
    }

    pub fn powi(&self, e: u32) -> SeriesJet {
        let mut out = SeriesJet::constant(self.truncation, Complex64::new(1.0, 0.0));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul_trunc(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base);
            }
        }
        out
    }

    /// Jet of the conjugate function: `c'_{jk} = conj(c_{kj})`.
    pub fn conj(&self) -> SeriesJet {
        let mut out = SeriesJet::zero(self.truncation);
        for ((j, k), c) in self.iter() {
            out.coeffs[index(k, j)] = c.conj();
        }
        out
    }

    /// Largest `|c_{jk} - conj(c_{kj})|`; zero for real-valued jets.
    pub fn reality_defect(&self) -> f64 {
        self.iter()
            .map(|((j, k), c)| (c - self.coeff(k, j).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Smallest total degree `d >= min_degree` carrying a coefficient with
    /// modulus above `threshold`.
    pub fn lowest_degree(&self, min_degree: usize, threshold: f64) -> Option<usize> {
        (min_degree..=self.truncation)
            .find(|&d| (0..=d).any(|k| self.coeffs[index(d - k, k)].norm() > threshold))
    }

    /// Evaluates the polynomial at `u`.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.iter()
            .map(|((j, k), c)| c * u.powu(j as u32) * u.conj().powu(k as u32))
            .sum()
    }
}

impl Add for &SeriesJet {
    type Output = SeriesJet;
    fn add(self, rhs: &SeriesJet) -> SeriesJet {
        let mut out = SeriesJet::zero(self.truncation.min(rhs.truncation));
        out.axpy(Complex64::new(1.0, 0.0), self);
        out.axpy(Complex64::new(1.0, 0.0), rhs);
        out
    }
}

impl Sub for &SeriesJet {
    type Output = SeriesJet;
    fn sub(self, rhs: &SeriesJet) -> SeriesJet {
        let mut out = SeriesJet::zero(self.truncation.min(rhs.truncation));
        out.axpy(Complex64::new(1.0, 0.0), self);
        out.axpy(Complex64::new(-1.0, 0.0), rhs);
        out
    }
}

impl Mul for &SeriesJet {
    type Output = SeriesJet;
    fn mul(self, rhs: &SeriesJet) -> SeriesJet {
        self.mul_trunc(rhs)
    }
}
