//! Grid and sample based confirmation of the section theorems.
//!
//! Every check produces a [`VerificationReport`] whose margin is positive
//! when the inequality holds. Suites draw their random members from one
//! global seed through [`case_seed`], so a given seed always yields the same
//! reports in the same order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{
    constant_cross_checks, fig3_radius, s1_value, s2_value, section_ratio_bound, tail_abs_bound, tail_deriv_bound,
    tail_second_deriv_bound, ThresholdConstants,
};
use crate::classg::{coefficient_bound, extremal_function, random_member, GAlphaSpec, HerglotzSpec};
use crate::radii::{aux_psi, classical_constants, psi_argument, Property, PsiArgument};
use crate::seeds::case_seed;
use crate::series::{Jet, NormalizedSeries};
use crate::{DiskGrid, Error, Result, DEFAULT_ORDER};

/// Reports with a margin at or below `-PASS_SLACK` fail.
pub const PASS_SLACK: f64 = 1e-9;
/// Minimum modulus below which `s_n` or `s_n'` counts as vanishing.
pub const NONVANISHING: f64 = 1e-9;
/// Failing grid checks are repeated on a grid this many times finer.
pub const REFINE_FACTOR: usize = 4;
/// Angles per circle in [`empirical_property_radius`].
pub const EMPIRICAL_ANGLES: usize = 256;
pub const FD_STEP: f64 = 1e-5;

/// Margin assigned to a point where the checked quotient is undefined.
fn vanishing_margin(modulus: f64) -> f64 {
    modulus - NONVANISHING - 1.0
}

/// Where a report's worst margin was found. Only the relevant fields are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Complex64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub args: BTreeMap<String, f64>,
}

impl Witness {
    fn point(z: Complex64) -> Self {
        Self {
            z: Some(z),
            ..Self::default()
        }
    }

    fn member(mut self, label: &str) -> Self {
        self.member = Some(label.to_owned());
        self
    }

    fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn arg(mut self, name: &str, value: f64) -> Self {
        self.args.insert(name.to_owned(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check_id: String,
    pub pass: bool,
    pub worst_margin: f64,
    pub witness: Witness,
    pub parameters: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// An inequality check: passes iff `margin > -PASS_SLACK`.
    pub fn inequality(check_id: impl Into<String>, margin: f64, witness: Witness) -> Self {
        let margin = if margin.is_nan() { -1.0 } else { margin };
        Self {
            check_id: check_id.into(),
            pass: margin > -PASS_SLACK,
            worst_margin: margin,
            witness,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// An equality check: passes iff `deviation <= tol`; the margin is
    /// `tol - deviation`.
    pub fn tolerance(check_id: impl Into<String>, deviation: f64, tol: f64, witness: Witness) -> Self {
        let deviation = if deviation.is_nan() { f64::MAX } else { deviation };
        Self {
            pass: deviation <= tol,
            worst_margin: tol - deviation,
            ..Self::inequality(check_id, 0.0, witness)
        }
    }

    /// A yes/no check: margin 0 on success, -1 on failure.
    pub fn exact(check_id: impl Into<String>, pass: bool, witness: Witness) -> Self {
        Self {
            pass,
            worst_margin: if pass { 0.0 } else { -1.0 },
            ..Self::inequality(check_id, 0.0, witness)
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(name.to_owned(), value.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// A sampled function with a stable label for witnesses.
#[derive(Debug, Clone)]
pub struct Member {
    pub label: String,
    pub f: NormalizedSeries,
}

/// `count` random members of G(alpha), case `i` seeded by
/// `case_seed(global, salt, i)`.
pub fn random_members(alpha: f64, count: usize, global: u64, salt: u64, degree: usize) -> Result<Vec<Member>> {
    let spec = GAlphaSpec::new(alpha)?;
    (0..count)
        .map(|i| {
            let seed = case_seed(global, salt, i as u64);
            let f = random_member(&spec, &HerglotzSpec::random(seed), degree)?;
            Ok(Member {
                label: format!("random(alpha={alpha},seed={seed:#018x})"),
                f,
            })
        })
        .collect()
}

/// Extremal functions of G(alpha) for the given indices.
pub fn extremal_members(alpha: f64, indices: impl IntoIterator<Item = usize>, degree: usize) -> Result<Vec<Member>> {
    indices
        .into_iter()
        .map(|n| {
            Ok(Member {
                label: format!("extremal(alpha={alpha},n={n})"),
                f: extremal_function(alpha, n, degree)?,
            })
        })
        .collect()
}

/// Minimum of `margin` over the grid and the first point attaining it, in
/// row-major order regardless of scheduling.
fn sweep<F>(grid: &DiskGrid, margin: F) -> (f64, Complex64)
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let rows: Vec<(f64, Complex64)> = (0..grid.radius_count())
        .into_par_iter()
        .map(|i| worst_on(grid.circle(i), &margin))
        .collect();
    rows.into_iter()
        .fold((f64::INFINITY, Complex64::default()), |best, row| {
            if row.0 < best.0 {
                row
            } else {
                best
            }
        })
}

fn worst_on<F>(points: impl Iterator<Item = Complex64>, margin: &F) -> (f64, Complex64)
where
    F: Fn(Complex64) -> f64,
{
    points.fold((f64::INFINITY, Complex64::default()), |best, z| {
        let m = margin(z);
        let m = if m.is_nan() { -1.0 } else { m };
        if m < best.0 {
            (m, z)
        } else {
            best
        }
    })
}

/// Pointwise margin of `property` of order `beta` for the function behind
/// `jet`, with vanishing denominators mapped below -1.
fn property_margin(jet: &Jet, property: Property, beta: f64, z: Complex64) -> f64 {
    match property {
        Property::ConvexOrder => {
            let d = jet.derivative(z);
            if d.norm() < NONVANISHING {
                return vanishing_margin(d.norm());
            }
            (1.0 + z * jet.second_derivative(z) / d).re - beta
        }
        Property::StarlikeOrder => {
            if z == Complex64::default() {
                return 1.0 - beta;
            }
            let v = jet.value(z);
            if v.norm() < NONVANISHING {
                return vanishing_margin(v.norm());
            }
            (z * jet.derivative(z) / v).re - beta
        }
        Property::CloseToConvexOrder => jet.derivative(z).re - beta,
    }
}

fn check_property_order(
    property: Property,
    f: &NormalizedSeries,
    n: usize,
    rho: f64,
    beta: f64,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    if !(rho < 1.0 && grid.max_radius() <= rho) {
        return Err(Error::Invalid(format!(
            "grid radius {} must not exceed rho = {rho} < 1",
            grid.max_radius()
        )));
    }
    if !(beta < 1.0 && beta.is_finite()) {
        return Err(Error::domain("beta", beta, "(-inf, 1)"));
    }
    let jet = f.section(n)?.jet();
    let margin = |z| property_margin(&jet, property, beta, z);
    let (mut worst, mut z) = sweep(grid, margin);
    let mut used = *grid;
    if worst <= -PASS_SLACK {
        used = grid.refined(REFINE_FACTOR);
        (worst, z) = sweep(&used, margin);
    }
    let mut report =
        VerificationReport::inequality(format!("{}/n={n:02}", property.name()), worst, Witness::point(z).n(n))
            .param("n", n)
            .param("rho", rho)
            .param("beta", beta)
            .param("grid", format!("{}x{}", used.radius_count(), used.angle_count()));
    if used != *grid {
        report = report.note("failed on the base grid; reported from the refined grid");
    }
    Ok(report)
}

/// `Re(1 + z s_n''/s_n') - β` minimized over the grid, failing wherever
/// `|s_n'| < 1e-9`.
pub fn check_convex_order(
    f: &NormalizedSeries,
    n: usize,
    rho: f64,
    beta: f64,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    check_property_order(Property::ConvexOrder, f, n, rho, beta, grid)
}

/// `Re(z s_n'/s_n) - β` minimized over the grid, failing wherever
/// `|s_n| < 1e-9`.
pub fn check_starlike_order(
    f: &NormalizedSeries,
    n: usize,
    rho: f64,
    beta: f64,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    check_property_order(Property::StarlikeOrder, f, n, rho, beta, grid)
}

/// `Re s_n' - β` minimized over the grid.
pub fn check_ctc_order(
    f: &NormalizedSeries,
    n: usize,
    rho: f64,
    beta: f64,
    grid: &DiskGrid,
) -> Result<VerificationReport> {
    check_property_order(Property::CloseToConvexOrder, f, n, rho, beta, grid)
}

/// Largest `r = k * radial_step < 1` such that `property` of order `beta`
/// holds for `s_n` on every circle of radius `<= r`, sampled at 256 angles.
/// Returns 0 when the first circle already fails.
pub fn empirical_property_radius(
    f: &NormalizedSeries,
    n: usize,
    property: Property,
    beta: f64,
    radial_step: f64,
) -> Result<f64> {
    if !(radial_step > 0.0 && radial_step <= 0.01) {
        return Err(Error::domain("radial_step", radial_step, "(0, 0.01]"));
    }
    let jet = f.section(n)?.jet();
    let angles: Vec<Complex64> = (0..EMPIRICAL_ANGLES)
        .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / EMPIRICAL_ANGLES as f64))
        .collect();
    let mut passed = 0.0;
    for k in 1.. {
        let r = k as f64 * radial_step;
        if r >= 1.0 - 1e-12 {
            break;
        }
        let ok = angles
            .iter()
            .all(|&u| property_margin(&jet, property, beta, u * r) > -PASS_SLACK);
        if !ok {
            break;
        }
        passed = r;
    }
    Ok(passed)
}

/// Worst `coefficient_bound(alpha, k) - |a_k|` over `members` and
/// `k in [2, n_max]`.
pub fn coefficient_bound_check(check_id: &str, members: &[Member], alpha: f64, n_max: usize) -> VerificationReport {
    let mut worst = (f64::INFINITY, Witness::default());
    for m in members {
        for k in 2..=n_max.min(m.f.order()) {
            let margin = coefficient_bound(alpha, k) - m.f.coeff(k).norm();
            if margin < worst.0 {
                worst = (margin, Witness::default().member(&m.label).k(k));
            }
        }
    }
    VerificationReport::inequality(check_id, worst.0, worst.1)
        .param("alpha", alpha)
        .param("members", members.len())
        .param("N", n_max)
}

/// [`coefficient_bound_check`] over `seed_count` random members of G(alpha)
/// generated at degree `n`.
pub fn coefficient_bound_suite(
    alpha: f64,
    seed_count: usize,
    n: usize,
    global_seed: u64,
) -> Result<VerificationReport> {
    GAlphaSpec::theorem(alpha)?;
    let members = random_members(alpha, seed_count, global_seed, salt::COEFFS, n)?;
    Ok(coefficient_bound_check(&format!("coeffs/bound/alpha={alpha}"), &members, alpha, n).param("seed", global_seed))
}

/// Partial sums of `|b_k|²` for `z/f = 1 + sum b_k z^k` against
/// `(1/3)(1 - 4^{-n})`, and `|b_k|` against `1/√3`, for `n, k <= n_max`.
///
/// Returns the partial-sum report and the coefficient report.
pub fn rogosinski_suite(members: &[Member], n_max: usize) -> (VerificationReport, VerificationReport) {
    let mut sums = (f64::INFINITY, Witness::default());
    let mut coeffs = (f64::INFINITY, Witness::default());
    let cap = 1.0 / 3f64.sqrt();
    for m in members {
        let b = m.f.reciprocal_z_over_f(n_max);
        let mut total = 0.0;
        for k in 1..=n_max {
            let modulus = b.coeff(k).norm();
            total += modulus * modulus;
            let bound = (1.0 - 0.25f64.powi(k as i32)) / 3.0;
            if bound - total < sums.0 {
                sums = (bound - total, Witness::default().member(&m.label).n(k));
            }
            if cap - modulus < coeffs.0 {
                coeffs = (cap - modulus, Witness::default().member(&m.label).k(k));
            }
        }
    }
    let finish = |id: &str, (margin, witness): (f64, Witness)| {
        VerificationReport::inequality(id, margin, witness)
            .param("members", members.len())
            .param("N", n_max)
    };
    (
        finish("rogosinski/partial_sums", sums),
        finish("rogosinski/coefficients", coeffs),
    )
}

/// Worst `section_ratio_bound(n, |z|) - |s_n(z)/f(z) - 1|` over members and
/// grid points, skipping points where `|f| < 1e-12`.
pub fn section_ratio_suite(members: &[Member], n: usize, grid: &DiskGrid) -> Result<VerificationReport> {
    let cases: Vec<(f64, Complex64, usize)> = members
        .par_iter()
        .map(|m| -> Result<(f64, Complex64, usize)> {
            let full = m.f.jet();
            let section = m.f.section(n)?.jet();
            let skipped = grid.points().filter(|&z| full.value(z).norm() < 1e-12).count();
            let bound = |z: Complex64| section_ratio_bound(n, z.norm()).unwrap_or(f64::NAN);
            let (worst, z) = sweep(grid, |z| {
                let v = full.value(z);
                if v.norm() < 1e-12 {
                    return f64::INFINITY;
                }
                bound(z) - (section.value(z) / v - 1.0).norm()
            });
            Ok((worst, z, skipped))
        })
        .collect::<Result<_>>()?;
    let mut best: Option<(f64, Witness)> = None;
    let mut skipped = 0;
    for (m, (worst, z, s)) in members.iter().zip(cases) {
        skipped += s;
        if best.as_ref().is_none_or(|b| worst < b.0) {
            best = Some((worst, Witness::point(z).member(&m.label).n(n)));
        }
    }
    let (margin, witness) = best.unwrap_or((f64::INFINITY, Witness::default()));
    let mut report = VerificationReport::inequality(format!("sections/ratio/n={n:02}"), margin, witness)
        .param("n", n)
        .param("members", members.len())
        .param("max_radius", grid.max_radius());
    if skipped > 0 {
        report = report.note(format!("skipped {skipped} points with |f| < 1e-12"));
    }
    Ok(report)
}

/// Which parameter a monotonicity claim differentiates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Alpha,
    Beta,
}

/// Claim that ψ_`psi` decreases in `parameter`. For α-claims `fixed` lists
/// ρ values and `points` lists α values; for β-claims `fixed` lists α values
/// and `points` lists β values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityTarget {
    pub psi: u8,
    pub parameter: Parameter,
    pub fixed: Vec<f64>,
    pub points: Vec<f64>,
}

fn steps(from: f64, to: f64, step: f64) -> Vec<f64> {
    let count = ((to - from) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| from + i as f64 * step).collect()
}

/// The decrease claims made for the proof curves: ψ₃, ψ₇, ψ₈, ψ₁₁ in α on
/// ρ in [0.05, 0.95]; ψ₄ in α on ρ in [0.05, 0.6]; ψ₁, ψ₂, ψ₅, ψ₆, ψ₉, ψ₁₀ in
/// β on α in [0.05, 1].
pub fn default_monotonicity_targets() -> Vec<MonotonicityTarget> {
    let alphas = steps(0.05, 1.0, 0.05);
    let betas = steps(0.0, 0.95, 0.05);
    let mut targets: Vec<MonotonicityTarget> = [3u8, 7, 8, 11]
        .into_iter()
        .map(|psi| MonotonicityTarget {
            psi,
            parameter: Parameter::Alpha,
            fixed: steps(0.05, 0.95, 0.05),
            points: alphas.clone(),
        })
        .collect();
    targets.push(MonotonicityTarget {
        psi: 4,
        parameter: Parameter::Alpha,
        fixed: steps(0.05, 0.6, 0.05),
        points: alphas.clone(),
    });
    targets.extend([1u8, 2, 5, 6, 9, 10].into_iter().map(|psi| MonotonicityTarget {
        psi,
        parameter: Parameter::Beta,
        fixed: alphas.clone(),
        points: betas.clone(),
    }));
    targets.sort_by_key(|t| t.psi);
    targets
}

/// Central differences with step 1e-5; the margin of each target is the
/// negated largest difference quotient. Points are clamped into
/// `[h, 1 - h]` so both stencil points stay in the domain.
pub fn monotonicity_suite(targets: &[MonotonicityTarget]) -> Result<Vec<VerificationReport>> {
    targets
        .iter()
        .map(|t| {
            let expected = match t.parameter {
                Parameter::Alpha => PsiArgument::Rho,
                Parameter::Beta => PsiArgument::Beta,
            };
            if psi_argument(t.psi)? != expected {
                return Err(Error::Invalid(format!(
                    "psi_{} does not vary in {:?}",
                    t.psi, t.parameter
                )));
            }
            let h = FD_STEP;
            let mut worst = (f64::INFINITY, Witness::default());
            for &fixed in &t.fixed {
                for &p in &t.points {
                    let p = p.clamp(h, 1.0 - h);
                    let (alpha, x, name) = match t.parameter {
                        Parameter::Alpha => ((p - h, p + h), (fixed, fixed), ["alpha", "rho"]),
                        Parameter::Beta => ((fixed, fixed), (p - h, p + h), ["alpha", "beta"]),
                    };
                    let diff = (aux_psi(t.psi, alpha.1, x.1)? - aux_psi(t.psi, alpha.0, x.0)?) / (2.0 * h);
                    if -diff < worst.0 {
                        let (a, b) = match t.parameter {
                            Parameter::Alpha => (p, fixed),
                            Parameter::Beta => (fixed, p),
                        };
                        worst = (-diff, Witness::default().arg(name[0], a).arg(name[1], b));
                    }
                }
            }
            let varied = match t.parameter {
                Parameter::Alpha => "alpha",
                Parameter::Beta => "beta",
            };
            Ok(
                VerificationReport::inequality(format!("monotonicity/psi{:02}/{varied}", t.psi), worst.0, worst.1)
                    .param("psi", t.psi)
                    .param("cells", t.fixed.len() * t.points.len()),
            )
        })
        .collect()
}

mod salt {
    pub const COEFFS: u64 = 1;
    pub const TAILS: u64 = 2;
    pub const RADII: u64 = 3;
    pub const SECTIONS: u64 = 4;
    pub const ROGOSINSKI: u64 = 5;
}

/// Sample sizes for the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub coeff_members: usize,
    pub coeff_degree: usize,
    pub tail_members: usize,
    pub radius_members: usize,
    pub section_members: usize,
    pub rogosinski_members: usize,
    pub rogosinski_degree: usize,
    pub radial_step: f64,
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: crate::seeds::DEFAULT_SEED,
            coeff_members: 100,
            coeff_degree: 32,
            tail_members: 20,
            radius_members: 20,
            section_members: 20,
            rogosinski_members: 50,
            rogosinski_degree: 32,
            radial_step: 0.005,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Coeffs,
    Radii,
    Tails,
    Sections,
    Rogosinski,
    Monotonicity,
    Thresholds,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Coeffs,
        Suite::Radii,
        Suite::Tails,
        Suite::Sections,
        Suite::Rogosinski,
        Suite::Monotonicity,
        Suite::Thresholds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Coeffs => "coeffs",
            Suite::Radii => "radii",
            Suite::Tails => "tails",
            Suite::Sections => "sections",
            Suite::Rogosinski => "rogosinski",
            Suite::Monotonicity => "monotonicity",
            Suite::Thresholds => "thresholds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }
}

/// Runs `suite` and returns its reports sorted by check id.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut reports = match suite {
        Suite::All => {
            let parts = Suite::EACH
                .par_iter()
                .map(|&s| run_suite(s, config))
                .collect::<Result<Vec<_>>>()?;
            parts.into_iter().flatten().collect()
        }
        Suite::Coeffs => coeffs_suite(config)?,
        Suite::Radii => radii_suite(config)?,
        Suite::Tails => tails_suite(config)?,
        Suite::Sections => sections_suite(config)?,
        Suite::Rogosinski => rogosinski_reports(config)?,
        Suite::Monotonicity => monotonicity_suite(&default_monotonicity_targets())?,
        Suite::Thresholds => thresholds_suite(),
    };
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

fn coeffs_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for alpha in [0.25, 0.5, 1.0] {
        reports.push(coefficient_bound_suite(
            alpha,
            config.coeff_members,
            config.coeff_degree,
            config.seed,
        )?);
        let mut worst = (0.0f64, Witness::default());
        for n in 2..=8 {
            let f = extremal_function(alpha, n, config.coeff_degree)?;
            let deviation = (f.coeff(n).norm() - coefficient_bound(alpha, n)).abs();
            if deviation >= worst.0 {
                worst = (deviation, Witness::default().n(n).k(n));
            }
        }
        reports.push(
            VerificationReport::tolerance(
                format!("coeffs/extremal_equality/alpha={alpha}"),
                worst.0,
                1e-12,
                worst.1,
            )
            .param("alpha", alpha),
        );
    }
    Ok(reports)
}

fn tails_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let grid = DiskGrid::default();
    let mut reports = Vec::new();
    for alpha in [0.25, 0.5, 1.0] {
        let salt = salt::TAILS + 16 * (alpha * 4.0) as u64;
        let members = random_members(alpha, config.tail_members, config.seed, salt, DEFAULT_ORDER)?;
        let worst: Vec<[(f64, Witness); 3]> = members
            .par_iter()
            .map(|m| tail_margins(m, alpha, &grid, 2..=12))
            .collect::<Result<_>>()?;
        let names = ["abs", "deriv", "second_deriv"];
        for (j, name) in names.iter().enumerate() {
            let (margin, witness) =
                worst
                    .iter()
                    .map(|w| w[j].clone())
                    .fold(
                        (f64::INFINITY, Witness::default()),
                        |a, b| if b.0 < a.0 { b } else { a },
                    );
            reports.push(
                VerificationReport::inequality(format!("tails/{name}/alpha={alpha}"), margin, witness)
                    .param("alpha", alpha)
                    .param("members", members.len())
                    .param("n", "2..=12"),
            );
        }
    }
    reports.extend(s1_s2_reports());
    Ok(reports)
}

/// Worst `bound - |σ_n^{(j)}(z)|` for `j = 0, 1, 2` over the grid and the
/// given section indices. All tails at a point come from one backward pass
/// over the coefficients.
fn tail_margins(
    m: &Member,
    alpha: f64,
    grid: &DiskGrid,
    ns: std::ops::RangeInclusive<usize>,
) -> Result<[(f64, Witness); 3]> {
    let order = m.f.order();
    let a = m.f.coeffs();
    let mut worst: [(f64, Witness); 3] = Default::default();
    for w in worst.iter_mut() {
        w.0 = f64::INFINITY;
    }
    let (n_min, n_max) = (*ns.start(), *ns.end());
    for i in 0..grid.radius_count() {
        let r = grid.radius(i);
        let bounds = [
            tail_abs_bound(alpha, r)?,
            tail_deriv_bound(alpha, r)?,
            tail_second_deriv_bound(alpha, r)?,
        ];
        for z in grid.circle(i) {
            let mut tails = [Complex64::default(); 3];
            let mut pow = vec![Complex64::new(1.0, 0.0); order + 1];
            for k in 1..=order {
                pow[k] = pow[k - 1] * z;
            }
            for k in (n_min + 1..=order).rev() {
                let kf = k as f64;
                tails[0] += a[k] * pow[k];
                tails[1] += a[k] * kf * pow[k - 1];
                tails[2] += a[k] * kf * (kf - 1.0) * pow[k - 2];
                let n = k - 1;
                if n <= n_max {
                    for j in 0..3 {
                        let margin = bounds[j] - tails[j].norm();
                        if margin < worst[j].0 {
                            worst[j] = (margin, Witness::point(z).member(&m.label).n(n));
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn s1_s2_reports() -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    for (id, value) in [("s1", s1_value as fn(usize, f64) -> Result<f64>), ("s2", s2_value)] {
        let mut violation = None;
        for i in 1..=9 {
            let rho = i as f64 / 10.0;
            let mut prev = f64::INFINITY;
            for n in 2..=50 {
                let v = value(n, rho).unwrap_or(f64::NAN);
                let decreasing = v < prev;
                if !decreasing && violation.is_none() {
                    violation = Some(Witness::default().n(n).arg("rho", rho));
                }
                prev = v;
            }
        }
        let pass = violation.is_none();
        reports.push(
            VerificationReport::exact(format!("tails/{id}_decreasing"), pass, violation.unwrap_or_default())
                .param("n", "2..=50")
                .param("rho", "0.1..=0.9"),
        );
    }
    reports
}

fn radii_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let constants = classical_constants();
    let mut members = random_members(1.0, config.radius_members, config.seed, salt::RADII, DEFAULT_ORDER)?;
    members.extend(extremal_members(1.0, 2..=8, DEFAULT_ORDER)?);
    let ns: Vec<usize> = (2..=12).collect();

    let mut cases = Vec::new();
    for property in Property::ALL {
        for &n in &ns {
            cases.push((property, n));
        }
    }
    let mut reports: Vec<VerificationReport> = cases
        .par_iter()
        .map(|&(property, n)| -> Result<Vec<VerificationReport>> {
            let rho = constants.for_property(property);
            let grid = DiskGrid::with_max_radius(rho)?;
            let mut grid_worst: Option<VerificationReport> = None;
            let mut empirical = (f64::INFINITY, String::new());
            let mut largest: f64 = 0.0;
            for m in &members {
                let report = check_property_order(property, &m.f, n, rho, 0.0, &grid)?;
                if grid_worst.as_ref().is_none_or(|w| report.worst_margin < w.worst_margin) {
                    let mut report = report;
                    report.witness.member = Some(m.label.clone());
                    grid_worst = Some(report);
                }
                let r = empirical_property_radius(&m.f, n, property, 0.0, config.radial_step)?;
                largest = largest.max(r);
                if r < empirical.0 {
                    empirical = (r, m.label.clone());
                }
            }
            let mut grid_report = grid_worst.expect("members are non-empty");
            grid_report.check_id = format!("radii/grid/{}/n={n:02}", property.name());
            grid_report = grid_report.param("members", members.len());
            let empirical_report = VerificationReport::inequality(
                format!("radii/empirical/{}/n={n:02}", property.name()),
                empirical.0 - rho + 1e-2,
                Witness::default().member(&empirical.1).n(n),
            )
            .param("classical", rho)
            .param("min_empirical", empirical.0)
            .param("max_empirical", largest)
            .param("radial_step", config.radial_step)
            .param("members", members.len());
            Ok(vec![grid_report, empirical_report])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    reports.extend(ctc_closed_disk_reports(&members)?);
    Ok(reports)
}

/// `Re s_n' > 0` on `|z| <= 0.6321` for `n >= 17`, plus one index below the
/// threshold where the argument does not apply but the grid still passes.
fn ctc_closed_disk_reports(members: &[Member]) -> Result<Vec<VerificationReport>> {
    let radius = ThresholdConstants::ROUNDED.ctc_radius;
    let grid = DiskGrid::with_max_radius(radius)?;
    [12usize, 17, 18, 20, 24]
        .par_iter()
        .map(|&n| {
            let mut worst: Option<VerificationReport> = None;
            for m in members {
                let mut report = check_ctc_order(&m.f, n, radius, 0.0, &grid)?;
                report.witness.member = Some(m.label.clone());
                if worst.as_ref().is_none_or(|w| report.worst_margin < w.worst_margin) {
                    worst = Some(report);
                }
            }
            let mut report = worst.expect("members are non-empty");
            report.check_id = format!("radii/ctc_0.6321/n={n:02}");
            if n < 17 && report.pass {
                report = report.note("bound not tight here");
            }
            Ok(report)
        })
        .collect()
}

fn sections_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let grid = DiskGrid::with_max_radius(0.9)?;
    let mut members = extremal_members(1.0, [2], DEFAULT_ORDER)?;
    members.extend(random_members(
        1.0,
        config.section_members,
        config.seed,
        salt::SECTIONS,
        DEFAULT_ORDER,
    )?);
    (2..=8).map(|n| section_ratio_suite(&members, n, &grid)).collect()
}

fn rogosinski_reports(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let degree = config.rogosinski_degree;
    let members = random_members(
        1.0,
        config.rogosinski_members,
        config.seed,
        salt::ROGOSINSKI,
        degree + 1,
    )?;
    let (sums, coeffs) = rogosinski_suite(&members, degree);

    let extremal = NormalizedSeries::from_higher([Complex64::new(-0.5, 0.0)])?;
    let b = extremal.reciprocal_z_over_f(degree);
    let mut total = 0.0;
    let mut worst = (0.0f64, Witness::default());
    for n in 1..=degree {
        total += b.coeff(n).norm_sqr();
        let deviation = (total - (1.0 - 0.25f64.powi(n as i32)) / 3.0).abs();
        if deviation >= worst.0 {
            worst = (deviation, Witness::default().n(n));
        }
    }
    let equality = VerificationReport::tolerance("rogosinski/equality", worst.0, 1e-12, worst.1.member("z - z^2/2"))
        .param("N", degree);
    Ok(vec![sums.note("members lie in G(1) by construction"), coeffs, equality])
}

fn thresholds_suite() -> Vec<VerificationReport> {
    let rounded = ThresholdConstants::ROUNDED;
    let recomputed = ThresholdConstants::recomputed();
    let mut reports = Vec::new();

    let ctc = rounded.threshold_ctc();
    let c_prev = rounded.c_n(ctc - 1);
    let c_budget = rounded.ctc_budget_deg.to_radians().sin();
    reports.push(
        VerificationReport::exact(
            "thresholds/ctc",
            ctc == 17 && c_prev > c_budget,
            Witness::default().n(ctc),
        )
        .param("threshold", ctc)
        .param("c_at_threshold", rounded.c_n(ctc))
        .param("c_before", c_prev)
        .param("sin_budget", c_budget),
    );

    let star = rounded.threshold_starlike();
    let e_prev = rounded.e_n(star - 1);
    reports.push(
        VerificationReport::exact(
            "thresholds/starlike",
            star == 10 && e_prev > 1.0,
            Witness::default().n(star),
        )
        .param("threshold", star)
        .param("e_at_threshold", rounded.e_n(star))
        .param("f_at_threshold", rounded.f_n(star))
        .param("angle_deg", rounded.starlike_angle_deg(star).unwrap_or(f64::NAN))
        .param("e_before", e_prev),
    );

    let stable = recomputed.threshold_ctc() == ctc && recomputed.threshold_starlike() == star;
    reports.push(
        VerificationReport::exact("thresholds/recomputed_constants", stable, Witness::default())
            .param("ctc", recomputed.threshold_ctc())
            .param("starlike", recomputed.threshold_starlike()),
    );

    for check in constant_cross_checks() {
        reports.push(
            VerificationReport::exact(
                format!("thresholds/constant/{}", check.name),
                check.pass,
                Witness::default(),
            )
            .param("rounded", check.rounded)
            .param("recomputed", check.recomputed)
            .param("relation", json!(check.relation)),
        );
    }

    reports.extend(fig3_reports());
    reports
}

fn fig3_reports() -> Vec<VerificationReport> {
    let radii: Vec<(usize, f64)> = (2..=60).map(|n| (n, fig3_radius(n))).collect();
    let increase = radii
        .windows(2)
        .map(|w| (w[1].1 - w[0].1, w[1].0))
        .fold((f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a });
    let plateau = radii
        .iter()
        .filter(|(n, _)| *n >= 17)
        .map(|&(n, r)| ((r - 0.6321).abs(), n))
        .fold((0.0f64, 0), |a, b| if b.0 > a.0 { b } else { a });
    vec![
        VerificationReport::inequality(
            "thresholds/fig3/nonincreasing",
            -increase.0,
            Witness::default().n(increase.1),
        )
        .param("n", "2..=60"),
        VerificationReport::tolerance(
            "thresholds/fig3/n=3",
            (fig3_radius(3) - (3f64.sqrt() - 1.0)).abs(),
            1e-9,
            Witness::default().n(3),
        ),
        VerificationReport::tolerance(
            "thresholds/fig3/plateau",
            plateau.0,
            1e-3,
            Witness::default().n(plateau.1),
        )
        .param("n", "17..=60"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn koebe_s2() -> NormalizedSeries {
        NormalizedSeries::from_higher([Complex64::new(2.0, 0.0)]).unwrap()
    }

    fn identity() -> NormalizedSeries {
        NormalizedSeries::identity(8)
    }

    #[test]
    fn identity_passes_every_check_with_margin_one_minus_beta() {
        let grid = DiskGrid::default();
        for beta in [0.0, 0.3, 0.9] {
            for check in [check_convex_order, check_starlike_order, check_ctc_order] {
                let r = check(&identity(), 3, 0.99, beta, &grid).unwrap();
                assert!(r.pass);
                assert_abs_diff_eq!(r.worst_margin, 1.0 - beta, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn check_preconditions() {
        let grid = DiskGrid::with_max_radius(0.5).unwrap();
        assert!(check_convex_order(&identity(), 2, 0.4, 0.0, &grid).is_err());
        assert!(check_convex_order(&identity(), 2, 1.0, 0.0, &grid).is_err());
        assert!(check_convex_order(&identity(), 2, 0.5, 1.0, &grid).is_err());
        assert!(check_convex_order(&identity(), 9, 0.5, 0.0, &grid).is_err());
    }

    #[test]
    fn extremal_s2_convex_at_classical_radius() {
        let f = extremal_function(1.0, 2, 8).unwrap();
        let rho = classical_constants().rho_convex;
        let r = check_convex_order(&f, 2, rho, 0.0, &DiskGrid::with_max_radius(rho).unwrap()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn koebe_s2_fails_convexity_near_quarter() {
        let r = check_convex_order(&koebe_s2(), 2, 0.26, 0.0, &DiskGrid::with_max_radius(0.26).unwrap()).unwrap();
        assert!(!r.pass);
        assert!(r.worst_margin < -0.5);
        let z = r.witness.z.unwrap();
        assert!(z.re < 0.0 && z.norm() > 0.125);
        assert_eq!(r.parameters["grid"], "256x1024");
    }

    #[test]
    fn starlike_fails_when_section_vanishes_inside() {
        let f = NormalizedSeries::from_higher([Complex64::new(-1.25, 0.0)]).unwrap();
        let grid = DiskGrid::new(9, 8, 0.9).unwrap();
        let r = check_starlike_order(&f, 2, 0.9, 0.0, &grid).unwrap();
        assert!(!r.pass);
        assert!(r.worst_margin <= -1.0, "{r:?}");
        let z = r.witness.z.unwrap();
        assert!(z.im.abs() < 1e-12 && (z.re - 0.8).abs() < 0.05, "{z}");
    }

    #[test]
    fn ctc_examples() {
        let f = extremal_function(1.0, 2, 8).unwrap();
        let r = check_ctc_order(&f, 2, 0.99, 0.0, &DiskGrid::default()).unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.worst_margin, 0.01, epsilon = 1e-12);
    }

    #[test]
    fn empirical_radius_examples() {
        for property in Property::ALL {
            let r = empirical_property_radius(&identity(), 2, property, 0.0, 0.01).unwrap();
            assert_abs_diff_eq!(r, 0.99, epsilon = 1e-12);
        }
        let step = 0.005;
        let convex = empirical_property_radius(&koebe_s2(), 2, Property::ConvexOrder, 0.0, step).unwrap();
        assert!((convex - 0.125).abs() <= step, "{convex}");
        let starlike = empirical_property_radius(&koebe_s2(), 2, Property::StarlikeOrder, 0.0, step).unwrap();
        assert!((starlike - 0.25).abs() <= step, "{starlike}");
        assert!(empirical_property_radius(&identity(), 2, Property::ConvexOrder, 0.0, 0.02).is_err());
    }

    #[test]
    fn corrupted_coefficient_fails_at_two() {
        let mut coeffs = extremal_function(1.0, 2, 32).unwrap().coeffs().to_vec();
        coeffs[2] *= 2.0;
        let bad = Member {
            label: "corrupted".into(),
            f: NormalizedSeries::new(coeffs).unwrap(),
        };
        let r = coefficient_bound_check("coeffs/corrupted", &[bad], 1.0, 32);
        assert!(!r.pass);
        assert_eq!(r.witness.k, Some(2));
        assert_abs_diff_eq!(r.worst_margin, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn identity_passes_coefficient_and_rogosinski_checks() {
        let id = Member {
            label: "z".into(),
            f: NormalizedSeries::identity(32),
        };
        assert!(coefficient_bound_check("coeffs/identity", std::slice::from_ref(&id), 1e-6, 32).pass);
        let (sums, coeffs) = rogosinski_suite(&[id], 16);
        assert!(sums.pass && coeffs.pass);
    }

    #[test]
    fn section_ratio_identity_margin_is_bound() {
        let id = Member {
            label: "z".into(),
            f: NormalizedSeries::identity(16),
        };
        let r = section_ratio_suite(&[id], 3, &DiskGrid::with_max_radius(0.9).unwrap()).unwrap();
        assert!(r.pass);
        assert!(r.worst_margin > 0.0);
    }

    #[test]
    fn monotonicity_examples() {
        let targets = [
            MonotonicityTarget {
                psi: 1,
                parameter: Parameter::Beta,
                fixed: vec![1.0],
                points: steps(0.0, 0.95, 0.05),
            },
            MonotonicityTarget {
                psi: 3,
                parameter: Parameter::Alpha,
                fixed: vec![0.3],
                points: steps(0.05, 1.0, 0.05),
            },
        ];
        for r in monotonicity_suite(&targets).unwrap() {
            assert!(r.pass && r.worst_margin > 0.0, "{r:?}");
        }
        let wrong = MonotonicityTarget {
            psi: 3,
            parameter: Parameter::Beta,
            fixed: vec![1.0],
            points: vec![0.5],
        };
        assert!(monotonicity_suite(&[wrong]).is_err());
    }

    #[test]
    fn monotonicity_witness_records_arguments() {
        let t = MonotonicityTarget {
            psi: 7,
            parameter: Parameter::Alpha,
            fixed: vec![0.5],
            points: vec![0.5],
        };
        let r = &monotonicity_suite(&[t]).unwrap()[0];
        assert!(r.pass);
        assert_eq!(r.witness.args["rho"], 0.5);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn thresholds_suite_passes() {
        for r in thresholds_suite() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn report_serializes_camel_case() {
        let r = VerificationReport::inequality("x", 0.5, Witness::point(Complex64::new(0.1, 0.2)).n(3));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checkId"], "x");
        assert_eq!(v["worstMargin"], 0.5);
        assert_eq!(v["witness"]["n"], 3);
        assert!(v.get("notes").is_none());
    }
}
