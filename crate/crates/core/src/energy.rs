//! Energy per particle of the lattice product state.
//!
//! Every site is equivalent in the bulk, so the average energy is
//! `T + ½ Σ_shells c_n E(r_n)`: the kinetic energy of one orbital plus half
//! the pair energies to all neighbors of one site.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_shells, norm, sub, Cluster, LatticeKind, LatticeShells};
use crate::model::{pair_energy, OrbitalParams, TwoYukawaParams};
use crate::quadrature::QuadratureOptions;
use crate::units::UnitSystem;

/// Default shell cutoff in units of the nearest-neighbor distance.
pub const DEFAULT_SHELL_CUTOFF: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellContribution {
    pub distance: f64,
    pub coordination: usize,
    pub pair_energy: f64,
    /// `½ c_n E(r_n)`, per particle.
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub potential_shells: Vec<ShellContribution>,
    pub potential_total: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SameSiteEnergy {
    pub w: f64,
    /// `W / |potential energy per particle|`.
    pub ratio: f64,
}

/// `ħ²λ²/(8μ)` in ε: the kinetic energy of an orbital `∝ e^{−λr/2}`.
pub fn kinetic_per_particle(p: &OrbitalParams, units: &UnitSystem) -> Result<f64> {
    if !(p.lambda > 0.0 && p.lambda.is_finite()) {
        return Err(Error::invalid(format!("lambda must be positive, got {}", p.lambda)));
    }
    if p.cutoff_a.is_some() {
        return Err(Error::invalid("kinetic energy is only defined for the untruncated orbital"));
    }
    Ok(units.coupling * p.lambda * p.lambda / 8.0)
}

pub fn energy_per_particle(
    p: &OrbitalParams,
    pot: &TwoYukawaParams,
    shells: &LatticeShells,
    units: &UnitSystem,
    quad: &QuadratureOptions,
) -> Result<EnergyBreakdown> {
    if shells.shells.is_empty() {
        return Err(Error::invalid("shell list is empty"));
    }
    let kinetic = kinetic_per_particle(p, units)?;
    let potential_shells = shells
        .shells
        .iter()
        .map(|s| {
            let e = pair_energy(p, pot, s.distance, quad)?;
            Ok(ShellContribution {
                distance: s.distance,
                coordination: s.coordination,
                pair_energy: e,
                energy: 0.5 * s.coordination as f64 * e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // Sum from the outermost shell inwards so small tails are not swamped.
    let potential_total: f64 = potential_shells.iter().rev().map(|c| c.energy).sum();
    Ok(EnergyBreakdown { kinetic, potential_shells, potential_total, total: kinetic + potential_total })
}

/// Same-site pair energy and its size relative to the interaction energy per
/// particle of the lattice described by `shells`.
pub fn same_site_w(
    p: &OrbitalParams,
    pot: &TwoYukawaParams,
    shells: &LatticeShells,
    units: &UnitSystem,
    quad: &QuadratureOptions,
) -> Result<SameSiteEnergy> {
    let w = pair_energy(p, pot, 0.0, quad)?;
    let potential = energy_per_particle(p, pot, shells, units, quad)?.potential_total;
    let ratio = if potential == 0.0 { f64::INFINITY } else { w / potential.abs() };
    Ok(SameSiteEnergy { w, ratio })
}

/// Interaction energy of `occupancy` particles sharing one site.
pub fn occupancy_penalty(occupancy: u32, w: f64) -> f64 {
    let p = occupancy as f64;
    p * (p - 1.0) * w / 2.0
}

/// Energy of one site of an explicit cluster: its kinetic energy plus half of
/// its pair energies with every other site.
pub fn cluster_site_energy(
    p: &OrbitalParams,
    pot: &TwoYukawaParams,
    cluster: &Cluster,
    site: usize,
    units: &UnitSystem,
    quad: &QuadratureOptions,
) -> Result<f64> {
    let center = *cluster
        .sites
        .get(site)
        .ok_or_else(|| Error::invalid(format!("site {site} outside cluster of {}", cluster.count_n)))?;
    let kinetic = kinetic_per_particle(p, units)?;
    let mut pairs = Vec::with_capacity(cluster.count_n);
    for (j, x) in cluster.sites.iter().enumerate() {
        if j != site {
            pairs.push(pair_energy(p, pot, norm(sub(*x, center)), quad)?);
        }
    }
    pairs.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(kinetic + 0.5 * pairs.iter().sum::<f64>())
}

/// A lattice solid with fixed potential and units, evaluated at varying
/// `(λ, d)`. Shells are enumerated once at unit spacing and rescaled.
#[derive(Debug, Clone)]
pub struct SolidModel {
    pub pot: TwoYukawaParams,
    pub units: UnitSystem,
    pub quad: QuadratureOptions,
    unit_shells: LatticeShells,
}

impl SolidModel {
    /// `shell_cutoff` is the shell truncation radius in units of `d`.
    pub fn new(
        kind: LatticeKind,
        pot: TwoYukawaParams,
        units: UnitSystem,
        shell_cutoff: f64,
        quad: QuadratureOptions,
    ) -> Result<Self> {
        pot.validate()?;
        let unit_shells = enumerate_shells(kind, 1.0, shell_cutoff)?;
        Ok(SolidModel { pot, units, quad, unit_shells })
    }

    pub fn krypton_fcc() -> Self {
        SolidModel::new(
            LatticeKind::Fcc,
            TwoYukawaParams::default(),
            UnitSystem::krypton(),
            DEFAULT_SHELL_CUTOFF,
            QuadratureOptions::default(),
        )
        .expect("default krypton model is valid")
    }

    pub fn kind(&self) -> LatticeKind {
        self.unit_shells.kind
    }

    pub fn shells(&self, d: f64) -> Result<LatticeShells> {
        self.unit_shells.rescaled(d)
    }

    pub fn breakdown(&self, lambda: f64, d: f64) -> Result<EnergyBreakdown> {
        let p = OrbitalParams::untruncated(lambda)?;
        energy_per_particle(&p, &self.pot, &self.shells(d)?, &self.units, &self.quad)
    }

    pub fn energy(&self, lambda: f64, d: f64) -> Result<f64> {
        Ok(self.breakdown(lambda, d)?.total)
    }

    pub fn same_site(&self, lambda: f64, d: f64) -> Result<SameSiteEnergy> {
        let p = OrbitalParams::untruncated(lambda)?;
        same_site_w(&p, &self.pot, &self.shells(d)?, &self.units, &self.quad)
    }

    /// Volume per particle at spacing `d`.
    pub fn volume_per_particle(&self, d: f64) -> f64 {
        self.kind().volume_per_site(d)
    }
}
