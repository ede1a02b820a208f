//! Natural units of the model solid and the conversions to laboratory units.
//!
//! Lengths are measured in σ, energies in ε and masses in the particle mass μ.
//! In these units the only remaining physical parameter is the dimensionless
//! quantum coupling Λ = ħ²/(μσ²ε), and ħ itself equals √Λ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 reduced Planck constant, J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// CODATA 2018 Boltzmann constant, J/K (exact).
pub const KB_SI: f64 = 1.380_649e-23;
/// CODATA 2018 unified atomic mass unit, kg.
pub const AMU_SI: f64 = 1.660_539_066_60e-27;
/// Avogadro constant, 1/mol (exact).
pub const AVOGADRO: f64 = 6.022_140_76e23;
/// Thermochemical calorie, J.
pub const CALORIE_J: f64 = 4.184;
/// Pascals per kilobar.
pub const PA_PER_KBAR: f64 = 1.0e8;
/// Meters per ångström.
pub const ANGSTROM_M: f64 = 1.0e-10;

/// Krypton two-Yukawa length scale σ, in meters.
pub const KRYPTON_SIGMA_M: f64 = 3.6e-10;
/// Krypton two-Yukawa well depth ε/k_B, in kelvin.
pub const KRYPTON_EPSILON_K: f64 = 170.0;
/// Standard atomic weight of krypton, in u.
pub const KRYPTON_MASS_U: f64 = 83.798;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub sigma_m: f64,
    pub epsilon_k: f64,
    pub mass_u: f64,
    pub hbar_si: f64,
    pub kb_si: f64,
    pub amu_si: f64,
    pub avogadro: f64,
    /// Λ = ħ²/(μσ²ε).
    pub coupling: f64,
}

impl UnitSystem {
    /// Builds a unit system from the SI length scale, the well depth in kelvin
    /// and the particle mass in atomic mass units.
    pub fn new(sigma_m: f64, epsilon_k: f64, mass_u: f64) -> Result<Self> {
        for (name, v) in [("sigma_m", sigma_m), ("epsilon_k", epsilon_k), ("mass_u", mass_u)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let epsilon_j = KB_SI * epsilon_k;
        let coupling = HBAR_SI * HBAR_SI / (mass_u * AMU_SI * sigma_m * sigma_m * epsilon_j);
        Ok(UnitSystem {
            sigma_m,
            epsilon_k,
            mass_u,
            hbar_si: HBAR_SI,
            kb_si: KB_SI,
            amu_si: AMU_SI,
            avogadro: AVOGADRO,
            coupling,
        })
    }

    pub fn krypton() -> Self {
        Self::new(KRYPTON_SIGMA_M, KRYPTON_EPSILON_K, KRYPTON_MASS_U).expect("krypton constants are valid")
    }

    /// ε in joules.
    pub fn epsilon_j(&self) -> f64 {
        self.kb_si * self.epsilon_k
    }

    pub fn mass_kg(&self) -> f64 {
        self.mass_u * self.amu_si
    }

    /// ħ expressed in natural units (ε·τ with τ the natural time unit).
    pub fn hbar(&self) -> f64 {
        self.coupling.sqrt()
    }

    /// Natural time unit τ = σ·√(μ/ε), in seconds.
    pub fn time_unit_s(&self) -> f64 {
        self.sigma_m * (self.mass_kg() / self.epsilon_j()).sqrt()
    }

    /// Natural velocity unit σ/τ = √(ε/μ), in m/s.
    pub fn velocity_unit_m_per_s(&self) -> f64 {
        (self.epsilon_j() / self.mass_kg()).sqrt()
    }

    /// Per-particle energy in ε to cal/mole.
    pub fn energy_to_cal_per_mole(&self, u: f64) -> f64 {
        u * self.epsilon_j() * self.avogadro / CALORIE_J
    }

    pub fn cal_per_mole_to_energy(&self, cal: f64) -> f64 {
        cal * CALORIE_J / (self.epsilon_j() * self.avogadro)
    }

    /// Pressure in ε/σ³ to kbar.
    pub fn pressure_to_kbar(&self, p: f64) -> f64 {
        p * self.epsilon_j() / self.sigma_m.powi(3) / PA_PER_KBAR
    }

    pub fn kbar_to_pressure(&self, kbar: f64) -> f64 {
        kbar * PA_PER_KBAR * self.sigma_m.powi(3) / self.epsilon_j()
    }

    pub fn length_to_angstrom(&self, x: f64) -> f64 {
        x * self.sigma_m / ANGSTROM_M
    }

    pub fn angstrom_to_length(&self, a: f64) -> f64 {
        a * ANGSTROM_M / self.sigma_m
    }
}

pub fn make_krypton_units() -> UnitSystem {
    UnitSystem::krypton()
}
