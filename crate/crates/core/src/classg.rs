//! The class G(α): normalized functions with
//! `Re(1 + z f''/f') < 1 + α/2` on the unit disk.
//!
//! Members are generated from finite Herglotz mixtures. If
//! `p(z) = sum_j λ_j (1 + u_j z)/(1 - u_j z)` with `|u_j| = 1`, then `p(0) = 1`
//! and `Re p > 0`, and setting `1 + z f''/f' = 1 + α/2 - (α/2) p` puts `f` in
//! G(α). Expanding the Möbius kernels gives
//! `log f'(z) = -α sum_{k>=1} μ_k z^k / k` with moments `μ_k = sum_j λ_j u_j^k`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::series::{ComplexSeries, NormalizedSeries};
use crate::{DiskGrid, Error, Result};

/// Most atoms a generated Herglotz measure may carry.
pub const MAX_ATOMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GAlphaSpec {
    alpha: f64,
}

impl GAlphaSpec {
    /// Any `alpha > 0`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain("alpha", alpha, "(0, inf)"));
        }
        Ok(Self { alpha })
    }

    /// `alpha` restricted to (0, 1], the range every theorem assumes.
    pub fn theorem(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain("alpha", alpha, "(0, 1]"));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Finite Herglotz measure: weights `λ_j` on the unit-circle points
/// `e^{i θ_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerglotzSpec {
    weights: Vec<f64>,
    angles: Vec<f64>,
    seed: u64,
}

impl HerglotzSpec {
    pub fn new(weights: Vec<f64>, angles: Vec<f64>, seed: u64) -> Result<Self> {
        if weights.len() != angles.len() {
            return Err(Error::Invalid(format!(
                "{} weights but {} angles",
                weights.len(),
                angles.len()
            )));
        }
        if weights.is_empty() || weights.len() > MAX_ATOMS {
            return Err(Error::Invalid(format!(
                "atom count {} outside [1, {MAX_ATOMS}]",
                weights.len()
            )));
        }
        if let Some(&w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(Error::domain("weight", w, "[0, inf)"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain("sum of weights", total, "1 +/- 1e-12"));
        }
        if let Some(&t) = angles.iter().find(|t| !(**t >= 0.0 && **t < TAU)) {
            return Err(Error::domain("angle", t, "[0, 2 pi)"));
        }
        Ok(Self { weights, angles, seed })
    }

    /// A single unit atom at angle `theta`.
    pub fn point_mass(theta: f64) -> Result<Self> {
        Self::new(vec![1.0], vec![theta], 0)
    }

    /// Draws between 1 and 8 atoms with uniform angles and normalized
    /// uniform weights. Identical seeds give identical specs.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let atoms = rng.gen_range(1..=MAX_ATOMS);
        let raw: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.05..1.0)).collect();
        let angles = (0..atoms).map(|_| rng.gen_range(0.0..TAU)).collect();
        let total: f64 = raw.iter().sum();
        let weights = raw.iter().map(|w| w / total).collect();
        Self { weights, angles, seed }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `μ_k = sum_j λ_j e^{i k θ_j}`.
    fn moment(&self, k: usize) -> Complex64 {
        self.weights
            .iter()
            .zip(&self.angles)
            .map(|(&w, &t)| Complex64::from_polar(w, k as f64 * t))
            .sum()
    }

    /// Series of the Carathéodory function `p`, to `degree`.
    pub fn caratheodory(&self, degree: usize) -> ComplexSeries {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        coeffs.extend((1..=degree).map(|k| 2.0 * self.moment(k)));
        ComplexSeries::new(coeffs).expect("moments are finite")
    }
}

/// `f'` of the function attaining the coefficient bound at index `n`:
/// `(1 - z^{n-1})^{alpha/(n-1)}`.
pub fn extremal_derivative(alpha: f64, n: usize, degree: usize) -> Result<ComplexSeries> {
    GAlphaSpec::new(alpha)?;
    if n < 2 {
        return Err(Error::Invalid(format!("extremal index must be >= 2, got {n}")));
    }
    ComplexSeries::binomial_power(alpha / (n - 1) as f64, n - 1, degree)
}

/// The extremal function itself, as a series of order `degree`.
pub fn extremal_function(alpha: f64, n: usize, degree: usize) -> Result<NormalizedSeries> {
    extremal_derivative(alpha, n, degree.max(2) - 1)?.integrate_normalized()
}

/// `|a_k| <= alpha / (k (k - 1))` for `f` in G(alpha), `k >= 2`.
pub fn coefficient_bound(alpha: f64, k: usize) -> f64 {
    debug_assert!(k >= 2);
    alpha / (k * (k - 1)) as f64
}

/// Member of G(alpha) built from the Herglotz measure `h`, as a series of
/// order `degree`. Its first `degree` coefficients are exact up to rounding.
pub fn random_member(spec: &GAlphaSpec, h: &HerglotzSpec, degree: usize) -> Result<NormalizedSeries> {
    if degree < 2 {
        return Err(Error::Invalid(format!("member degree must be >= 2, got {degree}")));
    }
    let alpha = spec.alpha();
    let derivative_degree = degree - 1;
    let mut log_derivative = vec![Complex64::new(0.0, 0.0)];
    log_derivative.extend((1..=derivative_degree).map(|k| -alpha * h.moment(k) / k as f64));
    ComplexSeries::new(log_derivative)?
        .exponential(derivative_degree)?
        .integrate_normalized()
}

/// Largest value of `Re(1 + z f''/f') - (1 + alpha/2)` over the grid.
///
/// A negative result means the sampled defining inequality holds; a grid can
/// refute membership but never prove it.
pub fn membership_margin(f: &NormalizedSeries, alpha: f64, grid: &DiskGrid) -> Result<f64> {
    let jet = f.jet();
    let ceiling = 1.0 + alpha / 2.0;
    let rows: Vec<Result<f64>> = (0..grid.radius_count())
        .into_par_iter()
        .map(|i| {
            grid.circle(i).try_fold(f64::NEG_INFINITY, |worst, z| {
                Ok(worst.max(jet.log_derivative(z)?.re - ceiling))
            })
        })
        .collect();
    rows.into_iter()
        .try_fold(f64::NEG_INFINITY, |worst, row| Ok(worst.max(row?)))
}
