//! Majorants for tails and section quotients, and the C/E/F sequences that
//! fix the section indices beyond which `Re s_n' > 0` on `|z| <= 0.6321` and
//! `s_n` is starlike on `|z| <= 0.5698`.
//!
//! The rounded constants used by the threshold arguments live in
//! [`ThresholdConstants::ROUNDED`];
//! [`ThresholdConstants::recomputed`] rebuilds each one from its defining
//! expression so the two can be compared.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::radii::DOMAIN_CLIP;
use crate::{Error, Result};

/// Stopping threshold for the remainder of an infinite tail sum.
pub const TAIL_REMAINDER: f64 = 1e-16;
const MAX_TERMS: usize = 10_000_000;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "(0, inf)"))
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=DOMAIN_CLIP).contains(&rho) {
        Ok(())
    } else {
        Err(Error::domain("rho", rho, "[0, 1 - 1e-9]"))
    }
}

/// `|σ_n(z)| <= α((1-ρ) ln(1-ρ) + ρ - ρ²/2)` on `|z| = ρ`, for every `n >= 2`.
///
/// Proved for α in (0, 1]; the formula itself is accepted for any α > 0.
pub fn tail_abs_bound(alpha: f64, rho: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_rho(rho)?;
    Ok(alpha * ((1.0 - rho) * (-rho).ln_1p() + rho - rho * rho / 2.0))
}

/// `|σ_n'(z)| <= -α(ln(1-ρ) + ρ)`.
pub fn tail_deriv_bound(alpha: f64, rho: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_rho(rho)?;
    Ok(-alpha * ((-rho).ln_1p() + rho))
}

/// `|σ_n''(z)| <= αρ/(1-ρ)`.
pub fn tail_second_deriv_bound(alpha: f64, rho: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_rho(rho)?;
    Ok(alpha * rho / (1.0 - rho))
}

/// Sums `term(k)` for `k = first, first+1, ...` until `remainder(k)`, a bound
/// on everything after `k`, drops below [`TAIL_REMAINDER`].
fn tail_sum(first: usize, term: impl Fn(usize) -> f64, remainder: impl Fn(usize) -> f64) -> Result<f64> {
    let mut total = 0.0;
    for k in first..first + MAX_TERMS {
        total += term(k);
        if remainder(k) < TAIL_REMAINDER {
            return Ok(total);
        }
    }
    Err(Error::SlowConvergence { terms: MAX_TERMS })
}

fn check_sequence_args(n: usize, rho: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid(format!("sequence index must be >= 2, got {n}")));
    }
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::domain("rho", rho, "[0, 1)"));
    }
    Ok(())
}

/// `S₁(n, ρ) = sum_{k > n} ρ^k / (k(k-1))`.
pub fn s1_value(n: usize, rho: f64) -> Result<f64> {
    check_sequence_args(n, rho)?;
    if rho == 0.0 {
        return Ok(0.0);
    }
    tail_sum(
        n + 1,
        |k| rho.powi(k as i32) / (k * (k - 1)) as f64,
        |k| {
            let next = rho.powi(k as i32 + 1) / (k * (k + 1)) as f64;
            next / (1.0 - rho)
        },
    )
}

/// `S₂(n, ρ) = sum_{k >= n} ρ^k / k`.
pub fn s2_value(n: usize, rho: f64) -> Result<f64> {
    check_sequence_args(n, rho)?;
    if rho == 0.0 {
        return Ok(0.0);
    }
    tail_sum(
        n,
        |k| rho.powi(k as i32) / k as f64,
        |k| rho.powi(k as i32 + 1) / ((k + 1) as f64 * (1.0 - rho)),
    )
}

/// Majorant of `|s_n'(z)/f'(z) - 1|` for `f` in G(1), valid for `|z| < ρ`:
/// `|z|^n (1/n + (π/√6 + 1) |z| √(2ρ-ρ²) / (ρ^n (1-ρ)(ρ-|z|)))`.
pub fn section_deriv_ratio_bound(n: usize, rho_outer: f64, z_abs: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Invalid(format!("section index must be >= 2, got {n}")));
    }
    if !(rho_outer > 0.0 && rho_outer < 1.0) {
        return Err(Error::domain("rho_outer", rho_outer, "(0, 1)"));
    }
    if !(0.0..rho_outer).contains(&z_abs) {
        return Err(Error::domain("|z|", z_abs, "[0, rho_outer)"));
    }
    let ni = n as i32;
    let tail = (PI / 6f64.sqrt() + 1.0) * z_abs * (2.0 * rho_outer - rho_outer * rho_outer).sqrt()
        / (rho_outer.powi(ni) * (1.0 - rho_outer) * (rho_outer - z_abs));
    Ok(z_abs.powi(ni) * (1.0 / n as f64 + tail))
}

/// Majorant of `|s_n(z)/f(z) - 1|` for `f` in G(1):
/// `|z|^n (1/(n(n+1)) + 2|z| / (√3 (1-|z|)))`.
pub fn section_ratio_bound(n: usize, z_abs: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Invalid(format!("section index must be >= 2, got {n}")));
    }
    if !(0.0..1.0).contains(&z_abs) {
        return Err(Error::domain("|z|", z_abs, "[0, 1)"));
    }
    let nf = n as f64;
    Ok(z_abs.powi(n as i32) * (1.0 / (nf * (nf + 1.0)) + 2.0 * z_abs / (3f64.sqrt() * (1.0 - z_abs))))
}

/// Constants of the two threshold arguments. Angles are in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConstants {
    /// Circle on which `Re s_n' > 0` is shown.
    pub ctc_radius: f64,
    /// Circle on which starlikeness is shown.
    pub starlike_radius: f64,
    /// Auxiliary radius `ρ = 4/5` plugged into the derivative-ratio bound.
    pub outer_radius: f64,
    /// Factor multiplying `(5/4)^n` in `C_n`.
    pub c_factor: f64,
    /// Factor multiplying `(5/4)^n` in `E_n`.
    pub e_factor: f64,
    /// Additive constant in `F_n`.
    pub f_factor: f64,
    /// Bound on `|arg f'|` on the ctc circle.
    pub derivative_arg_deg: f64,
    /// Budget left for `asin C_n`.
    pub ctc_budget_deg: f64,
    /// Bound on `|arg z f'/f|` on the starlike circle.
    pub star_arg_deg: f64,
    /// Budget left for `asin E_n + asin F_n`.
    pub starlike_budget_deg: f64,
}

impl ThresholdConstants {
    pub const ROUNDED: ThresholdConstants = ThresholdConstants {
        ctc_radius: 0.6321,
        starlike_radius: 0.5698,
        outer_radius: 0.8,
        c_factor: 42.097_953_34,
        e_factor: 27.678_529_53,
        f_factor: 1.529_401_131,
        derivative_arg_deg: 39.206,
        ctc_budget_deg: 50.794,
        star_arg_deg: 19.883_78,
        starlike_budget_deg: 70.116_271,
    };

    /// Every derived constant rebuilt from its defining expression at the
    /// rounded radii.
    pub fn recomputed() -> Self {
        let p = Self::ROUNDED;
        let rho = p.outer_radius;
        let ratio_factor =
            |z: f64| (PI / 6f64.sqrt() + 1.0) * z * (2.0 * rho - rho * rho).sqrt() / ((1.0 - rho) * (rho - z));
        let z = p.starlike_radius;
        let derivative_arg_deg = p.ctc_radius.asin().to_degrees();
        let star_arg_deg = (z / (2.0 - z * z)).asin().to_degrees();
        Self {
            c_factor: ratio_factor(p.ctc_radius),
            e_factor: ratio_factor(z),
            f_factor: 2.0 * z / (3f64.sqrt() * (1.0 - z)),
            derivative_arg_deg,
            ctc_budget_deg: 90.0 - derivative_arg_deg,
            star_arg_deg,
            starlike_budget_deg: 90.0 - star_arg_deg,
            ..p
        }
    }

    /// `C_n = r^n (1/n + (5/4)^n c)` with `r = 0.6321`.
    pub fn c_n(&self, n: usize) -> f64 {
        let r = self.ctc_radius;
        let ni = n as i32;
        r.powi(ni) * (1.0 / n as f64 + (1.0 / self.outer_radius).powi(ni) * self.c_factor)
    }

    /// `E_n = r^n (1/n + (5/4)^n e)` with `r = 0.5698`.
    pub fn e_n(&self, n: usize) -> f64 {
        let r = self.starlike_radius;
        let ni = n as i32;
        r.powi(ni) * (1.0 / n as f64 + (1.0 / self.outer_radius).powi(ni) * self.e_factor)
    }

    /// `F_n = r^n (1/(n(n+1)) + f)` with `r = 0.5698`.
    pub fn f_n(&self, n: usize) -> f64 {
        let nf = n as f64;
        self.starlike_radius.powi(n as i32) * (1.0 / (nf * (nf + 1.0)) + self.f_factor)
    }

    /// `asin C_n < budget`, in degrees; fails when `C_n > 1`.
    pub fn ctc_holds(&self, n: usize) -> bool {
        let c = self.c_n(n);
        c <= 1.0 && c.asin().to_degrees() < self.ctc_budget_deg
    }

    /// Angle sum `asin E_n + asin F_n` in degrees, or `None` if either
    /// exceeds 1.
    pub fn starlike_angle_deg(&self, n: usize) -> Option<f64> {
        let (e, f) = (self.e_n(n), self.f_n(n));
        (e <= 1.0 && f <= 1.0).then(|| e.asin().to_degrees() + f.asin().to_degrees())
    }

    pub fn starlike_holds(&self, n: usize) -> bool {
        self.starlike_angle_deg(n)
            .is_some_and(|angle| angle < self.starlike_budget_deg)
    }

    /// Least `n >= 2` with [`Self::ctc_holds`].
    pub fn threshold_ctc(&self) -> usize {
        (2..).find(|&n| self.ctc_holds(n)).expect("C_n tends to 0")
    }

    /// Least `n >= 2` with [`Self::starlike_holds`].
    pub fn threshold_starlike(&self) -> usize {
        (2..).find(|&n| self.starlike_holds(n)).expect("E_n, F_n tend to 0")
    }
}

/// Least section index covered by the `Re s_n' > 0` argument on
/// `|z| <= 0.6321`, with the rounded constants.
pub fn threshold_ctc() -> usize {
    ThresholdConstants::ROUNDED.threshold_ctc()
}

/// Least section index covered by the starlikeness argument on
/// `|z| <= 0.5698`, with the rounded constants.
pub fn threshold_starlike() -> usize {
    ThresholdConstants::ROUNDED.threshold_starlike()
}

/// How a rounded constant relates to its recomputed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantRelation {
    /// Must agree to 1e-6.
    Equal,
    /// A strict bound rounded up: `rounded >= recomputed` and the
    /// gap is below 1e-3.
    UpperBound,
    /// A budget rounded down: `rounded <= recomputed`, gap below
    /// 1e-3.
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantCheck {
    pub name: &'static str,
    pub rounded: f64,
    pub recomputed: f64,
    pub relation: ConstantRelation,
    pub pass: bool,
}

/// Compares every rounded constant against its recomputation.
pub fn constant_cross_checks() -> Vec<ConstantCheck> {
    let p = ThresholdConstants::ROUNDED;
    let r = ThresholdConstants::recomputed();
    let rows = [
        ("c_factor", p.c_factor, r.c_factor, ConstantRelation::Equal),
        ("e_factor", p.e_factor, r.e_factor, ConstantRelation::Equal),
        ("f_factor", p.f_factor, r.f_factor, ConstantRelation::Equal),
        (
            "derivative_arg_deg",
            p.derivative_arg_deg,
            r.derivative_arg_deg,
            ConstantRelation::UpperBound,
        ),
        (
            "ctc_budget_deg",
            p.ctc_budget_deg,
            r.ctc_budget_deg,
            ConstantRelation::LowerBound,
        ),
        (
            "star_arg_deg",
            p.star_arg_deg,
            r.star_arg_deg,
            ConstantRelation::UpperBound,
        ),
        (
            "starlike_budget_deg",
            p.starlike_budget_deg,
            r.starlike_budget_deg,
            ConstantRelation::Equal,
        ),
    ];
    rows.into_iter()
        .map(|(name, rounded, recomputed, relation)| {
            let gap = rounded - recomputed;
            let pass = match relation {
                ConstantRelation::Equal => gap.abs() <= 1e-6,
                ConstantRelation::UpperBound => (0.0..1e-3).contains(&gap),
                ConstantRelation::LowerBound => (0.0..1e-3).contains(&-gap),
            };
            ConstantCheck {
                name,
                rounded,
                recomputed,
                relation,
                pass,
            }
        })
        .collect()
}

/// Radius of the disk where `sum_{k=2}^n k|a_k||z|^{k-1} <= 1` with the
/// extremal moduli `|a_k| = 1/(k(k-1))`, i.e. the root in (0, 1] of
/// `sum_{j=1}^{n-1} ρ^j / j = 1`.
pub fn fig3_radius(n: usize) -> f64 {
    assert!(n >= 2, "fig3_radius needs n >= 2");
    let g = |r: f64| (1..n).rev().fold(0.0, |acc, j| (acc + 1.0 / j as f64) * r) - 1.0;
    if g(1.0) <= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The named sequences, evaluated at index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum BoundSequence {
    S1 { rho: f64 },
    S2 { rho: f64 },
    C,
    E,
    F,
}

impl BoundSequence {
    pub fn value(&self, n: usize) -> Result<f64> {
        let p = ThresholdConstants::ROUNDED;
        let check_n = || {
            if n >= 1 {
                Ok(())
            } else {
                Err(Error::Invalid("sequence index must be >= 1".into()))
            }
        };
        match *self {
            BoundSequence::S1 { rho } => s1_value(n, rho),
            BoundSequence::S2 { rho } => s2_value(n, rho),
            BoundSequence::C => check_n().map(|_| p.c_n(n)),
            BoundSequence::E => check_n().map(|_| p.e_n(n)),
            BoundSequence::F => check_n().map(|_| p.f_n(n)),
        }
    }
}
