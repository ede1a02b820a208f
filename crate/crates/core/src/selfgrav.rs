//! Variational ground states of N particles bound only by their mutual
//! attraction `−κ/r`.
//!
//! Bosons share one orbital `e^{−βr}`, which gives a closed form. Fermions
//! are treated in the Thomas–Fermi approximation with the exponential
//! density `ρ = Nγ³e^{−γr}/(8π)` and a kinetic term proportional to
//! `∫ρ^{5/3}`.
//!
//! Every function takes ħ, κ and μ explicitly so that the formulas can be
//! evaluated in any consistent unit system.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coulomb self-energy `∫∫ρρ'/|r−r'|` of the unit exponential density with
/// rate γ, divided by γ.
pub const EXPONENTIAL_COULOMB_COEFF: f64 = 5.0 / 16.0;

/// `∫ρ^{5/3} d³r` of the unit exponential density with rate γ, divided by γ².
pub fn kinetic_coefficient() -> f64 {
    216.0 * PI / (125.0 * (8.0 * PI).powf(5.0 / 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GravSystem {
    pub kappa: f64,
    pub mu: f64,
    pub hbar: f64,
}

impl GravSystem {
    pub fn new(kappa: f64, mu: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("kappa", kappa), ("mass", mu), ("hbar", hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(GravSystem { kappa, mu, hbar })
    }

    /// `16ħ²/(5κμ)`.
    pub fn g_const(&self) -> f64 {
        16.0 * self.hbar * self.hbar / (5.0 * self.kappa * self.mu)
    }
}

impl Default for GravSystem {
    fn default() -> Self {
        GravSystem { kappa: 1.0, mu: 1.0, hbar: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BosonSolution {
    pub n: f64,
    pub beta_star: f64,
    pub energy: f64,
    /// Per-axis center-of-mass position variance.
    pub chi: f64,
    /// Per-axis total-momentum variance.
    pub omega: f64,
    pub g_const: f64,
}

impl BosonSolution {
    pub fn uncertainty_product(&self) -> f64 {
        (self.chi * self.omega).sqrt()
    }
}

fn check_n(n: f64, min: f64) -> Result<()> {
    if n >= min && n.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("particle number must be at least {min}, got {n}")))
    }
}

/// `Nħ²β²/(2μ) − 5κN(N−1)β/16`.
pub fn boson_energy(beta: f64, n: f64, sys: &GravSystem) -> Result<f64> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("beta must be non-negative, got {beta}")));
    }
    check_n(n, 1.0)?;
    let kinetic = n * sys.hbar * sys.hbar * beta * beta / (2.0 * sys.mu);
    let pair = 2.0 * EXPONENTIAL_COULOMB_COEFF * beta * sys.kappa * n * (n - 1.0) / 2.0;
    Ok(kinetic - pair)
}

pub fn boson_solve(n: f64, sys: &GravSystem) -> Result<BosonSolution> {
    check_n(n, 2.0)?;
    let g = sys.g_const();
    let beta_star = (n - 1.0) / g;
    let energy = boson_energy(beta_star, n, sys)?;
    // each particle has ⟨x²⟩ = 1/β² and ⟨p_x²⟩ = ħ²β²/3
    let chi = g * g / (n * (n - 1.0).powi(2));
    let omega = n * sys.hbar * sys.hbar * beta_star * beta_star / 3.0;
    Ok(BosonSolution { n, beta_star, energy, chi, omega, g_const: g })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermionSolution {
    pub n: f64,
    pub gamma_star: f64,
    /// γ* expressed as `f κμN^{1/3}/ħ²`.
    pub f_factor: f64,
    pub energy: f64,
    pub chi: f64,
    pub q: f64,
    pub e_coeff: f64,
}

fn check_fermion_inputs(q: f64, e_coeff: f64) -> Result<()> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::invalid(format!("occupation number must be at least 1, got {q}")));
    }
    if !(e_coeff > 0.0 && e_coeff.is_finite()) {
        return Err(Error::invalid(format!("kinetic coefficient must be positive, got {e_coeff}")));
    }
    Ok(())
}

fn kinetic_prefactor(q: f64, e_coeff: f64, sys: &GravSystem) -> f64 {
    e_coeff * sys.hbar * sys.hbar / (q.powf(2.0 / 3.0) * sys.mu) * kinetic_coefficient()
}

/// `A N^{5/3} γ² − (5/32) κ N² γ` with `A = e ħ² C / (q^{2/3} μ)`.
pub fn fermion_tf_energy(gamma: f64, n: f64, q: f64, e_coeff: f64, sys: &GravSystem) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("gamma must be positive, got {gamma}")));
    }
    check_n(n, 1.0)?;
    check_fermion_inputs(q, e_coeff)?;
    let a = kinetic_prefactor(q, e_coeff, sys);
    Ok(a * n.powf(5.0 / 3.0) * gamma * gamma - EXPONENTIAL_COULOMB_COEFF / 2.0 * sys.kappa * n * n * gamma)
}

pub fn fermion_solve(n: f64, q: f64, e_coeff: f64, sys: &GravSystem) -> Result<FermionSolution> {
    check_n(n, 2.0)?;
    check_fermion_inputs(q, e_coeff)?;
    let f_factor = 5.0 * q.powf(2.0 / 3.0) / (64.0 * e_coeff * kinetic_coefficient());
    let gamma_star = f_factor * sys.kappa * sys.mu * n.cbrt() / (sys.hbar * sys.hbar);
    let energy = fermion_tf_energy(gamma_star, n, q, e_coeff, sys)?;
    let chi = 4.0 / (gamma_star * gamma_star * n);
    Ok(FermionSolution { n, gamma_star, f_factor, energy, chi, q, e_coeff })
}
