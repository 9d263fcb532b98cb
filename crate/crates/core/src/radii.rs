//! Radius indicators and the least-positive-root solver.
//!
//! Each radius theorem names a transcendental indicator in `rho` whose least
//! positive root in `[0, 1)` is the radius for that property:
//!
//! - convexity of order β: [`convexity_indicator`] (`I`),
//! - starlikeness of order β: [`starlikeness_indicator`] (`J`),
//! - close-to-convexity of order β: [`ctc_indicator`] (`K`).
//!
//! Only root locations are meaningful. At `(alpha, beta) = (1, 0)` the
//! indicators reduce to `-(1 - 2ρ + (1-ρ) ln(1-ρ))`,
//! `-2(2-ρ)(ρ - ρ² + (2-3ρ) ln(1-ρ))` and `1 + ln(1-ρ)`, which differ from
//! the one-parameter forms by sign or by a positive factor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Indicators are evaluated on `[0, 1 - 1e-9]`, away from the logarithmic
/// singularity at 1.
pub const DOMAIN_CLIP: f64 = 1.0 - 1e-9;
pub const SCAN_STEP: f64 = 1e-3;
pub const ROOT_TOL: f64 = 1e-12;
/// `J` vanishes identically at 0, so the starlike scan starts here.
pub const STARLIKE_FLOOR: f64 = 1e-3;
/// Largest `|indicator(rho)|` accepted for a converged root at the default
/// tolerance.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    ConvexOrder,
    StarlikeOrder,
    CloseToConvexOrder,
}

impl Property {
    pub const ALL: [Property; 3] = [
        Property::ConvexOrder,
        Property::StarlikeOrder,
        Property::CloseToConvexOrder,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Property::ConvexOrder => "convex",
            Property::StarlikeOrder => "starlike",
            Property::CloseToConvexOrder => "ctc",
        }
    }

    pub fn scan_floor(self) -> f64 {
        match self {
            Property::StarlikeOrder => STARLIKE_FLOOR,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Property::ConvexOrder),
            "starlike" => Ok(Property::StarlikeOrder),
            "ctc" => Ok(Property::CloseToConvexOrder),
            other => Err(Error::Invalid(format!(
                "unknown property {other:?} (expected convex, starlike or ctc)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusQuery {
    pub alpha: f64,
    pub beta: f64,
    pub property: Property,
}

impl RadiusQuery {
    /// Query with `alpha` in (0, 1] and `beta` in [0, 1).
    pub fn new(alpha: f64, beta: f64, property: Property) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain("alpha", alpha, "(0, 1]"));
        }
        Self::exploratory(alpha, beta, property)
    }

    /// Like [`RadiusQuery::new`] but only requires `alpha > 0`.
    pub fn exploratory(alpha: f64, beta: f64, property: Property) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain("alpha", alpha, "(0, inf)"));
        }
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::domain("beta", beta, "[0, 1)"));
        }
        Ok(Self { alpha, beta, property })
    }

    pub fn indicator(&self, rho: f64) -> Result<f64> {
        indicator(self.property, self.alpha, self.beta, rho)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub rho: f64,
    /// Indicator value at `rho`.
    pub residual: f64,
    pub bracket_low: f64,
    pub bracket_high: f64,
    pub converged: bool,
    /// Bisection steps taken after the sign change was bracketed.
    pub iterations: u32,
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=DOMAIN_CLIP).contains(&rho) {
        Ok(())
    } else {
        Err(Error::domain("rho", rho, "[0, 1 - 1e-9]"))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "(0, inf)"))
    }
}

/// `I_{α,β}(ρ) = (1-ρ)^α (ρ(1+α-β) - (1-β)) + αρ((2-β)ρ - (1-β))
///              - α(1-β)(1-ρ) ln(1-ρ)`.
pub fn convexity_indicator(alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(convexity_unchecked(alpha, beta, rho))
}

fn convexity_unchecked(a: f64, b: f64, r: f64) -> f64 {
    let log = (-r).ln_1p();
    (1.0 - r).powf(a) * (r * (1.0 + a - b) - (1.0 - b)) + a * r * ((2.0 - b) * r - (1.0 - b))
        - a * (1.0 - b) * (1.0 - r) * log
}

/// `J_{α,β}(ρ) = (1 - (1-ρ)^{1+α})((1+α)(1-β-ρ) + βρ)
///   + α(1+α)(1+α-ρ)(((3-β)ρ - (2-β)) ln(1-ρ) - (2-β)ρ + (2-β/2)ρ²)`.
pub fn starlikeness_indicator(alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(starlikeness_unchecked(alpha, beta, rho))
}

fn starlikeness_unchecked(a: f64, b: f64, r: f64) -> f64 {
    let log = (-r).ln_1p();
    // 1 - (1-ρ)^{1+α} without cancellation near ρ = 0
    let outer = -((1.0 + a) * log).exp_m1();
    outer * ((1.0 + a) * (1.0 - b - r) + b * r)
        + a * (1.0 + a) * (1.0 + a - r) * (((3.0 - b) * r - (2.0 - b)) * log - (2.0 - b) * r + (2.0 - b / 2.0) * r * r)
}

/// `K_{α,β}(ρ) = (1-ρ)^α + α(ln(1-ρ) + ρ) - β`.
pub fn ctc_indicator(alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(ctc_unchecked(alpha, beta, rho))
}

fn ctc_unchecked(a: f64, b: f64, r: f64) -> f64 {
    (1.0 - r).powf(a) + a * ((-r).ln_1p() + r) - b
}

pub fn indicator(property: Property, alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    match property {
        Property::ConvexOrder => convexity_indicator(alpha, beta, rho),
        Property::StarlikeOrder => starlikeness_indicator(alpha, beta, rho),
        Property::CloseToConvexOrder => ctc_indicator(alpha, beta, rho),
    }
}

/// First sign change of `indicator` on `[floor, 1 - 1e-9]`, scanned in
/// steps of `scan_step` and then bisected to width `tol`.
///
/// A value of exactly zero at a scan point counts as a root. If no sign
/// change is found the result has `converged == false` and brackets the whole
/// scanned interval.
pub fn least_positive_root(indicator: impl Fn(f64) -> f64, floor: f64, scan_step: f64, tol: f64) -> RadiusResult {
    assert!(scan_step > 0.0, "scan step must be positive");
    assert!(tol > 0.0, "tolerance must be positive");
    assert!((0.0..DOMAIN_CLIP).contains(&floor), "floor must lie in [0, 1)");

    let exact = |x: f64| RadiusResult {
        rho: x,
        residual: 0.0,
        bracket_low: x,
        bracket_high: x,
        converged: true,
        iterations: 0,
    };

    let mut lo = floor;
    let mut f_lo = indicator(lo);
    if f_lo == 0.0 {
        return exact(lo);
    }
    let mut step: u64 = 1;
    loop {
        let hi = (floor + step as f64 * scan_step).min(DOMAIN_CLIP);
        let f_hi = indicator(hi);
        if f_hi == 0.0 {
            return exact(hi);
        }
        if f_lo.signum() != f_hi.signum() && !f_lo.is_nan() && !f_hi.is_nan() {
            return bisect(&indicator, lo, f_lo, hi, tol);
        }
        if hi >= DOMAIN_CLIP {
            return RadiusResult {
                rho: hi,
                residual: f_hi,
                bracket_low: floor,
                bracket_high: hi,
                converged: false,
                iterations: 0,
            };
        }
        lo = hi;
        f_lo = f_hi;
        step += 1;
    }
}

fn bisect(indicator: &impl Fn(f64) -> f64, mut lo: f64, mut f_lo: f64, mut hi: f64, tol: f64) -> RadiusResult {
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = indicator(mid);
        iterations += 1;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    let residual = indicator(rho);
    RadiusResult {
        rho,
        residual,
        bracket_low: lo,
        bracket_high: hi,
        converged: hi - lo <= tol && residual.abs() <= RESIDUAL_TOL.max(100.0 * tol),
        iterations,
    }
}

/// Least positive root of the indicator for `q`, with the default scan step
/// and a bisection tolerance of 1e-12.
pub fn radius_of_property(q: &RadiusQuery) -> RadiusResult {
    radius_of_property_with_tol(q, ROOT_TOL)
}

pub fn radius_of_property_with_tol(q: &RadiusQuery, tol: f64) -> RadiusResult {
    let (a, b) = (q.alpha, q.beta);
    let floor = q.property.scan_floor();
    match q.property {
        Property::ConvexOrder => least_positive_root(|r| convexity_unchecked(a, b, r), floor, SCAN_STEP, tol),
        Property::StarlikeOrder => least_positive_root(|r| starlikeness_unchecked(a, b, r), floor, SCAN_STEP, tol),
        Property::CloseToConvexOrder => least_positive_root(|r| ctc_unchecked(a, b, r), floor, SCAN_STEP, tol),
    }
}

/// The three radii for the class G = G(1) at order 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalConstants {
    /// Root of `1 - 2ρ + (1-ρ) ln(1-ρ)`, about 0.3578.
    pub rho_convex: f64,
    /// Root of `ρ - ρ² + (2-3ρ) ln(1-ρ)` beyond 0, about 0.5698.
    pub rho_starlike: f64,
    /// `1 - 1/e`, the root of `1 + ln(1-ρ)`.
    pub rho_ctc: f64,
}

pub fn classical_constants() -> ClassicalConstants {
    let convex = least_positive_root(|r| 1.0 - 2.0 * r + (1.0 - r) * (-r).ln_1p(), 0.0, SCAN_STEP, ROOT_TOL);
    let starlike = least_positive_root(
        |r| r - r * r + (2.0 - 3.0 * r) * (-r).ln_1p(),
        STARLIKE_FLOOR,
        SCAN_STEP,
        ROOT_TOL,
    );
    ClassicalConstants {
        rho_convex: convex.rho,
        rho_starlike: starlike.rho,
        rho_ctc: -(-1.0f64).exp_m1(),
    }
}

impl ClassicalConstants {
    pub fn for_property(&self, property: Property) -> f64 {
        match property {
            Property::ConvexOrder => self.rho_convex,
            Property::StarlikeOrder => self.rho_starlike,
            Property::CloseToConvexOrder => self.rho_ctc,
        }
    }
}

/// Which argument a proof curve takes besides `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiArgument {
    Beta,
    Rho,
}

pub fn psi_argument(index: u8) -> Result<PsiArgument> {
    match index {
        1 | 2 | 5 | 6 | 9 | 10 => Ok(PsiArgument::Beta),
        3 | 4 | 7 | 8 | 11 => Ok(PsiArgument::Rho),
        _ => Err(Error::Invalid(format!("no proof curve psi_{index}"))),
    }
}

/// The auxiliary curves ψ₁..ψ₁₁ from the radius proofs.
///
/// `x` is β for indices 1, 2, 5, 6, 9, 10 and ρ for 3, 4, 7, 8, 11.
///
/// - ψ₁, ψ₂: bounds on ρ making s₂, s₃ convex of order β;
/// - ψ₃ = ψ₁₁: lower bound for `|f'| - |σ_n'|` and for `Re s_n'`;
/// - ψ₄, ψ₈: lower bounds for the convexity and starlikeness quotients of s_n;
/// - ψ₅, ψ₆: bounds making s₂, s₃ starlike of order β;
/// - ψ₇: lower bound for `|f| - |σ_n|`;
/// - ψ₉, ψ₁₀: bounds making `Re s₂' > β`, `Re s₃' > β`.
pub fn aux_psi(index: u8, alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    match psi_argument(index)? {
        PsiArgument::Beta if !(0.0..1.0).contains(&x) => return Err(Error::domain("beta", x, "[0, 1)")),
        PsiArgument::Rho => check_rho(x)?,
        PsiArgument::Beta => {}
    }
    let a = alpha;
    let v = match index {
        1 => {
            let b = x;
            (1.0 - b) / (a * (2.0 - b))
        }
        2 => {
            let b = x;
            (((2.0 - b).powi(2) + 2.0 * a * (1.0 - b) * (3.0 - b)).sqrt() - a * (2.0 - b)) / (a * (3.0 - b))
        }
        3 | 11 => {
            let r = x;
            (1.0 - r).powf(a) + a * ((-r).ln_1p() + r)
        }
        4 => {
            let r = x;
            let log = (-r).ln_1p();
            let num = (1.0 - r).powf(a) * (1.0 - r * (1.0 + a)) + a * r * (1.0 - 2.0 * r) + a * (1.0 - r) * log;
            let den = (1.0 - r) * ((1.0 - r).powf(a) + a * (log + r));
            num / den
        }
        5 => {
            let b = x;
            2.0 * (1.0 - b) / (a * (2.0 - b))
        }
        6 => {
            let b = x;
            ((9.0 * (2.0 - b).powi(2) * a * a + 24.0 * a * (1.0 - b) * (3.0 - b)).sqrt() - 3.0 * (2.0 - b) * a)
                / (2.0 * a * (3.0 - b))
        }
        7 => {
            let r = x;
            psi7(a, r)
        }
        8 => {
            let r = x;
            let log = (-r).ln_1p();
            let outer = -((1.0 + a) * log).exp_m1();
            let num = (1.0 - r) * outer + a * (1.0 + a - r) * ((3.0 * r - 2.0) * log - 2.0 * r + 2.0 * r * r);
            num / ((1.0 + a - r) * psi7(a, r))
        }
        9 => {
            let b = x;
            (1.0 - b) / a
        }
        10 => {
            let b = x;
            (1.0 + 2.0 * (1.0 - b) / a).sqrt() - 1.0
        }
        _ => unreachable!("index validated above"),
    };
    Ok(v)
}

fn psi7(a: f64, r: f64) -> f64 {
    let log = (-r).ln_1p();
    let outer = -((1.0 + a) * log).exp_m1();
    outer / (1.0 + a) - a * ((1.0 - r) * log + r - r * r / 2.0)
}
