//! Truncated complex power series.
//!
//! A [`ComplexSeries`] stores `c_0..=c_N` and is evaluated by Horner's rule.
//! [`NormalizedSeries`] adds the class-A normalization `c_0 = 0, c_1 = 1` and
//! carries the operations that only make sense for a normalized function:
//! sections, tails and the two differential quotients used by the theorems.

use std::ops::{Add, Deref, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Moduli below this are treated as zeros of the denominator in
/// [`NormalizedSeries::log_derivative_at`] and
/// [`NormalizedSeries::star_quotient_at`].
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk { z })
    }
}

/// Power series `c_0 + c_1 z + ... + c_N z^N` with `N >= 1` and finite
/// coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Builds a series from a coefficient vector, padding to order 1.
    fn from_vec_padded(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.len() < 2 {
            coeffs.resize(2, ZERO);
        }
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec_padded(vec![ZERO; order + 1])
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Same coefficients, cut or zero-padded to `degree`.
    pub fn resized(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, ZERO);
        Self::from_vec_padded(coeffs)
    }

    /// Series whose coefficients are the complex conjugates of these.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Value of the truncated series at `z`, `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(horner(&self.coeffs, z))
    }

    /// Termwise derivative. The order drops by one, but never below 1.
    pub fn differentiate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self::from_vec_padded(coeffs)
    }

    /// Antiderivative vanishing at 0 of a series with constant term 1, so the
    /// result is normalized.
    pub fn integrate_normalized(&self) -> Result<NormalizedSeries> {
        if self.coeffs[0] != ONE {
            return Err(Error::ConstantTerm {
                expected: 1.0,
                found: self.coeffs[0],
            });
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64));
        Ok(NormalizedSeries(Self { coeffs }))
    }

    /// Cauchy product truncated to `degree`.
    pub fn multiply(&self, other: &Self, degree: usize) -> Self {
        let mut out = vec![ZERO; degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::from_vec_padded(out)
    }

    /// `exp` of a series with zero constant term, to `degree`, via
    /// `m e_m = sum_{j=1}^m j c_j e_{m-j}`.
    pub fn exponential(&self, degree: usize) -> Result<Self> {
        if self.coeffs[0] != ZERO {
            return Err(Error::ConstantTerm {
                expected: 0.0,
                found: self.coeffs[0],
            });
        }
        let mut e = vec![ZERO; degree + 1];
        e[0] = ONE;
        for m in 1..=degree {
            let mut acc = ZERO;
            for j in 1..=m.min(self.order()) {
                acc += self.coeffs[j] * j as f64 * e[m - j];
            }
            e[m] = acc / m as f64;
        }
        Ok(Self::from_vec_padded(e))
    }

    /// Coefficients of `(1 - z^m)^gamma` up to `degree` for real `gamma`.
    ///
    /// Term `j` sits at degree `j*m` and equals `(-1)^j binom(gamma, j)`, with
    /// the binomial built by the ratio `binom(gamma, j-1) (gamma - j + 1) / j`.
    pub fn binomial_power(gamma: f64, m: usize, degree: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("binomial_power needs m >= 1".into()));
        }
        if !gamma.is_finite() {
            return Err(Error::domain("gamma", gamma, "finite reals"));
        }
        let mut coeffs = vec![ZERO; degree + 1];
        let mut binom = 1.0;
        let mut sign = 1.0;
        let mut j = 0usize;
        while j * m <= degree {
            coeffs[j * m] = Complex64::new(sign * binom, 0.0);
            j += 1;
            binom *= (gamma - (j as f64) + 1.0) / j as f64;
            sign = -sign;
        }
        Ok(Self::from_vec_padded(coeffs))
    }
}

impl Add for &ComplexSeries {
    type Output = ComplexSeries;

    fn add(self, rhs: Self) -> ComplexSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexSeries {
            coeffs: (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Mul for &ComplexSeries {
    type Output = ComplexSeries;

    fn mul(self, rhs: Self) -> ComplexSeries {
        self.multiply(rhs, self.order().max(rhs.order()))
    }
}

/// A series with `c_0 = 0` and `c_1 = 1` exactly: `f(z) = z + a_2 z^2 + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexSeries", into = "ComplexSeries")]
pub struct NormalizedSeries(ComplexSeries);

impl TryFrom<ComplexSeries> for NormalizedSeries {
    type Error = Error;

    fn try_from(s: ComplexSeries) -> Result<Self> {
        if s.coeffs[0] != ZERO || s.coeffs[1] != ONE {
            return Err(Error::NotNormalized);
        }
        Ok(Self(s))
    }
}

impl From<NormalizedSeries> for ComplexSeries {
    fn from(f: NormalizedSeries) -> Self {
        f.0
    }
}

impl Deref for NormalizedSeries {
    type Target = ComplexSeries;

    fn deref(&self) -> &ComplexSeries {
        &self.0
    }
}

impl NormalizedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        ComplexSeries::new(coeffs)?.try_into()
    }

    /// `z + a_2 z^2 + a_3 z^3 + ...` from the coefficients `a_2, a_3, ...`.
    pub fn from_higher(higher: impl IntoIterator<Item = Complex64>) -> Result<Self> {
        let mut coeffs = vec![ZERO, ONE];
        coeffs.extend(higher);
        Self::new(coeffs)
    }

    pub fn identity(order: usize) -> Self {
        let mut s = ComplexSeries::zero(order.max(1));
        s.coeffs[1] = ONE;
        Self(s)
    }

    /// Koebe function `z/(1-z)^2 = sum k z^k`, truncated.
    pub fn koebe(order: usize) -> Self {
        let coeffs = (0..=order.max(1)).map(|k| Complex64::new(k as f64, 0.0)).collect();
        Self(ComplexSeries { coeffs })
    }

    pub fn as_series(&self) -> &ComplexSeries {
        &self.0
    }

    /// The n-th section `z + a_2 z^2 + ... + a_n z^n`, as a series of order n.
    pub fn section(&self, n: usize) -> Result<Self> {
        if n < 2 || n > self.order() {
            return Err(Error::SectionIndex { n, order: self.order() });
        }
        Ok(Self(ComplexSeries {
            coeffs: self.0.coeffs[..=n].to_vec(),
        }))
    }

    /// `sigma_n(z) = f(z) - s_n(z)`, summed directly over `k > n`.
    pub fn tail_eval(&self, n: usize, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        if n < 2 {
            return Err(Error::SectionIndex { n, order: self.order() });
        }
        if n >= self.order() {
            return Ok(ZERO);
        }
        // Horner on the tail coefficients, then shift by z^(n+1).
        Ok(horner(&self.0.coeffs[n + 1..], z) * z.powu(n as u32 + 1))
    }

    /// `1 + z f''(z)/f'(z)`.
    pub fn log_derivative_at(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        self.jet().log_derivative(z)
    }

    /// `z f'(z)/f(z)`, equal to 1 at the removable singularity `z = 0`.
    pub fn star_quotient_at(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        self.jet().star_quotient(z)
    }

    /// Coefficients `b_0 = 1, b_1, ..., b_degree` of `z/f(z)`, from
    /// `b_m = -a_{m+1} - sum_{k=1}^{m-1} b_k a_{m-k+1}`.
    pub fn reciprocal_z_over_f(&self, degree: usize) -> ComplexSeries {
        // g = f/z has g_0 = 1, g_j = a_{j+1}.
        let g = |j: usize| self.coeff(j + 1);
        let mut b = vec![ZERO; degree + 1];
        b[0] = ONE;
        for m in 1..=degree {
            let convolution: Complex64 = (1..m).map(|k| b[k] * g(m - k)).sum();
            b[m] = -g(m) - convolution;
        }
        ComplexSeries::from_vec_padded(b)
    }

    /// Precomputed `f, f', f''` coefficient vectors for repeated evaluation.
    pub fn jet(&self) -> Jet {
        let d1 = self.0.differentiate();
        let d2 = d1.differentiate();
        Jet {
            f: self.0.coeffs.clone(),
            d1: d1.coeffs,
            d2: d2.coeffs,
        }
    }
}

/// A normalized function together with its first two derivatives, for
/// sweeping many points without re-differentiating.
///
/// The methods here do not check `|z| < 1`; callers sample inside the disk.
#[derive(Debug, Clone)]
pub struct Jet {
    f: Vec<Complex64>,
    d1: Vec<Complex64>,
    d2: Vec<Complex64>,
}

impl Jet {
    pub fn value(&self, z: Complex64) -> Complex64 {
        horner(&self.f, z)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        horner(&self.d1, z)
    }

    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        horner(&self.d2, z)
    }

    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64> {
        let d1 = self.derivative(z);
        if d1.norm() <= SINGULAR_THRESHOLD {
            return Err(Error::Singular {
                quantity: "f'",
                z,
                modulus: d1.norm(),
            });
        }
        Ok(ONE + z * self.second_derivative(z) / d1)
    }

    pub fn star_quotient(&self, z: Complex64) -> Result<Complex64> {
        if z == ZERO {
            return Ok(ONE);
        }
        let v = self.value(z);
        if v.norm() <= SINGULAR_THRESHOLD {
            return Err(Error::Singular {
                quantity: "f",
                z,
                modulus: v.norm(),
            });
        }
        Ok(z * self.derivative(z) / v)
    }
}
