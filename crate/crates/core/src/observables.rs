//! Center-of-mass statistics of the lattice product state.
//!
//! With every particle in its own orbital, the center of mass `R = Σ rᵢ/N`
//! and total momentum `P = Σ pᵢ` are sums of independent single-particle
//! variables. Per axis each orbital contributes `⟨x²⟩ = 4/λ²` and
//! `⟨p_x²⟩ = ħ²λ²/12`, hence `χ = 4/(λ²N)`, `ω = ħ²λ²N/12` and the product
//! `√(χω) = ħ/√3` for every λ and N.
//!
//! Lengths are in σ and momenta in ħ/σ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{centroid, norm, sub, Cluster, Vec3};
use crate::model::{orbital_norm_constant, OrbitalParams};
use crate::oracle::{rng_for, Accumulator, ExponentialDensity, McEstimate};
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComStatistics {
    /// Per-axis position variance, σ².
    pub chi: f64,
    /// Per-axis total-momentum variance, ħ²/σ².
    pub omega: f64,
    /// √(χω), in ħ.
    pub product: f64,
    pub n: f64,
    pub mean_r: Vec3,
    /// ħ/σ.
    pub mean_p: Vec3,
}

pub fn com_statistics(lambda: f64, n: f64) -> Result<ComStatistics> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
    }
    if !(n >= 1.0 && n.is_finite()) {
        return Err(Error::invalid(format!("particle number must be at least 1, got {n}")));
    }
    let chi = 4.0 / (lambda * lambda * n);
    let omega = lambda * lambda * n / 12.0;
    Ok(ComStatistics { chi, omega, product: (chi * omega).sqrt(), n, mean_r: [0.0; 3], mean_p: [0.0; 3] })
}

/// Monte Carlo check of the center-of-mass position variance on an explicit
/// cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComSamplingCheck {
    pub per_axis: [McEstimate; 3],
    pub expected: f64,
    /// Largest deviation from `expected` in standard errors.
    pub max_deviation: f64,
    pub passed: bool,
}

pub const COM_CHECK_STD_ERRORS: f64 = 4.0;

/// Samples every particle from its site density and estimates `Var(R_i)`.
/// The cluster is centered, so `⟨R⟩ = 0` and the variance is `⟨R_i²⟩`.
pub fn verify_com_on_cluster(lambda: f64, cluster: &Cluster, samples: usize, seed: u64) -> Result<ComSamplingCheck> {
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let density = ExponentialDensity::new(lambda)?;
    let shift = centroid(&cluster.sites);
    if norm(shift) > 1e-9 {
        return Err(Error::invalid("cluster must be centered"));
    }
    let n = cluster.count_n as f64;
    let mut rng = rng_for(seed);
    let mut acc = [Accumulator::default(); 3];
    for _ in 0..samples {
        let mut r = [0.0; 3];
        for site in &cluster.sites {
            let x = density.sample(&mut rng);
            for i in 0..3 {
                r[i] += site[i] + x[i];
            }
        }
        for i in 0..3 {
            let ri = r[i] / n;
            acc[i].push(ri * ri);
        }
    }
    let per_axis = acc.map(|a| a.estimate(seed));
    let expected = 4.0 / (lambda * lambda * n);
    let max_deviation = per_axis.iter().map(|e| e.deviation(expected)).fold(0.0, f64::max);
    Ok(ComSamplingCheck { per_axis, expected, max_deviation, passed: max_deviation <= COM_CHECK_STD_ERRORS })
}

/// Gives the body the uniform velocity `velocity_m_per_s`; only the mean
/// momentum changes.
pub fn galilean_boost(stats: &ComStatistics, velocity_m_per_s: Vec3, units: &UnitSystem) -> ComStatistics {
    // N μ v, expressed in ħ/σ
    let scale = stats.n * units.mass_kg() * units.sigma_m / units.hbar_si;
    let mut out = *stats;
    for (p, v) in out.mean_p.iter_mut().zip(velocity_m_per_s) {
        *p += scale * v;
    }
    out
}

/// Per-axis position variance after free evolution for `t_seconds`,
/// `χ(t) = χ(0) + ω t²/(Nμ)²`. Assumes no initial position–momentum
/// correlation, which holds for real orbitals.
pub fn free_spread(stats: &ComStatistics, t_seconds: f64, units: &UnitSystem) -> Result<f64> {
    if !(t_seconds >= 0.0) {
        return Err(Error::invalid(format!("time must be non-negative, got {t_seconds}")));
    }
    Ok(stats.chi + spread_rate(stats, units) * t_seconds * t_seconds)
}

/// Coefficient of t² in the free spread, σ²/s².
pub fn spread_rate(stats: &ComStatistics, units: &UnitSystem) -> f64 {
    // ω is in ħ²/σ²; velocity variance ω ħ²/(σ² N² μ²), then divided by σ².
    let v = units.hbar_si / (stats.n * units.mass_kg() * units.sigma_m * units.sigma_m);
    stats.omega * v * v
}

/// Per-axis velocity variance of the center of mass, (m/s)².
pub fn velocity_variance(stats: &ComStatistics, units: &UnitSystem) -> f64 {
    spread_rate(stats, units) * units.sigma_m * units.sigma_m
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionSpec {
    pub displacements: Vec<Vec3>,
    /// Moduli |c_k| of the branch amplitudes.
    pub weights: Vec<f64>,
    pub cutoff_a: f64,
}

pub const NORMALIZATION_TOL: f64 = 1e-12;

impl SuperpositionSpec {
    /// Checks normalization `Σ|c_k|² = 1` and that every pair of branches is
    /// more than `2a` apart, which makes the branches orthogonal.
    pub fn new(displacements: Vec<Vec3>, weights: Vec<f64>, cutoff_a: f64) -> Result<Self> {
        if displacements.is_empty() || displacements.len() != weights.len() {
            return Err(Error::invalid("need one weight per displacement and at least one branch"));
        }
        if !(cutoff_a > 0.0 && cutoff_a.is_finite()) {
            return Err(Error::invalid(format!("orbital cutoff must be positive, got {cutoff_a}")));
        }
        let total: f64 = weights.iter().map(|w| w * w).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(format!("branch weights are not normalized: Σ|c|² = {total}")));
        }
        if let Some(s) = min_separation(&displacements) {
            if s <= 2.0 * cutoff_a {
                return Err(Error::invalid(format!(
                    "branches {s} apart overlap (cutoff a = {cutoff_a}); separations must exceed 2a"
                )));
            }
        }
        Ok(SuperpositionSpec { displacements, weights, cutoff_a })
    }

    pub fn branch_overlap(&self, lambda: f64) -> Result<f64> {
        branch_overlap(&self.displacements, self.cutoff_a, lambda)
    }
}

fn min_separation(points: &[Vec3]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let s = norm(sub(*a, *b));
            best = Some(best.map_or(s, |m| m.min(s)));
        }
    }
    best
}

/// Per-axis center-of-mass variance of the superposition: intrinsic spread
/// plus the variance of the branch displacements weighted by `|c_k|²`. Cross
/// terms vanish because the branches are orthogonal.
pub fn superposition_spread(spec: &SuperpositionSpec, lambda: f64, n: f64) -> Result<Vec3> {
    let intrinsic = com_statistics(lambda, n)?.chi;
    let mut out = [intrinsic; 3];
    for (axis, slot) in out.iter_mut().enumerate() {
        let mean: f64 = spec.displacements.iter().zip(&spec.weights).map(|(a, c)| c * c * a[axis]).sum();
        let second: f64 =
            spec.displacements.iter().zip(&spec.weights).map(|(a, c)| c * c * (a[axis] - mean).powi(2)).sum();
        *slot += second;
    }
    Ok(out)
}

/// Largest bound on the overlap `⟨φ(r − a_j)|φ(r − a_k)⟩` of one truncated
/// orbital displaced between two branches. Both factors are at most
/// `D e^{−λs/4}` inside the lens where their supports meet, so the overlap
/// is at most `D² e^{−λs/2}` times the lens volume; it is exactly zero once
/// the separation reaches `2a`.
pub fn branch_overlap(displacements: &[Vec3], cutoff_a: f64, lambda: f64) -> Result<f64> {
    let d2 = orbital_norm_constant(&OrbitalParams::new(lambda, Some(cutoff_a))?)?;
    let mut worst: f64 = 0.0;
    for (i, a) in displacements.iter().enumerate() {
        for b in &displacements[i + 1..] {
            let s = norm(sub(*a, *b));
            if s < 2.0 * cutoff_a {
                let lens = std::f64::consts::PI * (4.0 * cutoff_a + s) * (2.0 * cutoff_a - s).powi(2) / 12.0;
                worst = worst.max(d2 * (-lambda * s / 2.0).exp() * lens);
            }
        }
    }
    Ok(worst)
}
