use std::path::Path;

use natstate_core::lattice::Vec3;
use natstate_core::observables::{
    com_statistics, free_spread, galilean_boost, superposition_spread, velocity_variance, ComStatistics,
    SuperpositionSpec,
};
use natstate_core::optimize::{brent, solve_solid, SolidSolution};
use natstate_core::selfgrav::{boson_solve, fermion_solve};
use natstate_core::EnergyBreakdown;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::Table;

/// Solid Krypton at 0 K.
pub const EXPERIMENT_D_ANGSTROM: f64 = 3.992;
pub const EXPERIMENT_U_CAL_PER_MOLE: f64 = -2666.0;
pub const EXPERIMENT_B_KBAR: f64 = 34.3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub d_angstrom: f64,
    pub u_cal_per_mole: f64,
    pub b_kbar: f64,
    pub d_relative_deviation: f64,
    pub u_relative_deviation: f64,
    pub b_relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeReport {
    /// 1/σ.
    pub lambda_star: f64,
    pub d_star_angstrom: f64,
    #[serde(rename = "U_cal_per_mole")]
    pub u_cal_per_mole: f64,
    #[serde(rename = "B_kbar")]
    pub b_kbar: f64,
    /// Same-site pair energy, ε.
    pub same_site_w: f64,
    /// W divided by |potential energy per particle|.
    pub same_site_ratio: f64,
    /// N times the per-axis center-of-mass variance, σ².
    pub com_chi_times_n: f64,
    pub product_hbar: f64,
    pub solution: SolidSolution,
    pub experiment: Comparison,
    pub config: RunConfig,
}

pub fn optimize(cfg: &RunConfig) -> CliResult<OptimizeReport> {
    let model = cfg.model()?;
    let sol = solve_solid(&model, &cfg.optimize_options())?;
    let bulk = sol.bulk_modulus.ok_or_else(|| CliError::Convergence("bulk modulus unavailable".into()))?;
    let w = model.same_site(sol.lambda_star, sol.d_star)?;
    let com = com_statistics(sol.lambda_star, 1.0)?;
    let rel = |x: f64, r: f64| (x - r) / r.abs();
    Ok(OptimizeReport {
        lambda_star: sol.lambda_star,
        d_star_angstrom: sol.d_star_angstrom,
        u_cal_per_mole: sol.u_min_cal_per_mole,
        b_kbar: bulk.kbar,
        same_site_w: w.w,
        same_site_ratio: w.ratio,
        com_chi_times_n: com.chi,
        product_hbar: com.product,
        experiment: Comparison {
            d_angstrom: EXPERIMENT_D_ANGSTROM,
            u_cal_per_mole: EXPERIMENT_U_CAL_PER_MOLE,
            b_kbar: EXPERIMENT_B_KBAR,
            d_relative_deviation: rel(sol.d_star_angstrom, EXPERIMENT_D_ANGSTROM),
            u_relative_deviation: rel(sol.u_min_cal_per_mole, EXPERIMENT_U_CAL_PER_MOLE),
            b_relative_deviation: rel(bulk.kbar, EXPERIMENT_B_KBAR),
        },
        solution: sol,
        config: cfg.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservablesReport {
    pub lambda: f64,
    pub n: f64,
    /// σ².
    pub chi: f64,
    pub chi_angstrom2: f64,
    /// ħ²/σ².
    pub omega: f64,
    pub product_hbar: f64,
    pub mean_r: Vec3,
    /// ħ/σ.
    pub mean_p: Vec3,
    /// Per-axis center-of-mass velocity variance, m²/s².
    pub velocity_variance: f64,
    pub velocity_m_per_s: Option<Vec3>,
    pub time_s: Option<f64>,
    /// σ², at `time_s`.
    pub chi_at_time: Option<f64>,
}

pub fn observables(
    cfg: &RunConfig,
    lambda: f64,
    n: f64,
    velocity: Option<Vec3>,
    time_s: Option<f64>,
) -> CliResult<ObservablesReport> {
    let units = cfg.units()?;
    let mut stats: ComStatistics = com_statistics(lambda, n)?;
    if let Some(v) = velocity {
        stats = galilean_boost(&stats, v, &units);
    }
    let chi_at_time = time_s.map(|t| free_spread(&stats, t, &units)).transpose()?;
    let sigma_a = units.length_to_angstrom(1.0);
    Ok(ObservablesReport {
        lambda,
        n,
        chi: stats.chi,
        chi_angstrom2: stats.chi * sigma_a * sigma_a,
        omega: stats.omega,
        product_hbar: stats.product,
        mean_r: stats.mean_r,
        mean_p: stats.mean_p,
        velocity_variance: velocity_variance(&stats, &units),
        velocity_m_per_s: velocity,
        time_s,
        chi_at_time,
    })
}

/// Input file of the `superposition` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperpositionFile {
    /// Branch displacements, σ.
    pub displacements: Vec<Vec3>,
    /// Moduli of the branch amplitudes.
    pub weights: Vec<f64>,
    /// Orbital cutoff radius, σ.
    pub cutoff_a: f64,
    pub lambda: f64,
    pub n: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionReport {
    /// Per-axis center-of-mass variance, σ².
    pub variance: Vec3,
    pub intrinsic_chi: f64,
    pub branch_overlap: f64,
    pub mean_p: Vec3,
}

pub fn superposition_from_file(path: &Path) -> CliResult<SuperpositionReport> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read superposition spec {}: {e}", path.display())))?;
    let file: SuperpositionFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed superposition spec {}: {e}", path.display())))?;
    superposition(&file)
}

pub fn superposition(file: &SuperpositionFile) -> CliResult<SuperpositionReport> {
    let spec = SuperpositionSpec::new(file.displacements.clone(), file.weights.clone(), file.cutoff_a)?;
    Ok(SuperpositionReport {
        variance: superposition_spread(&spec, file.lambda, file.n)?,
        intrinsic_chi: com_statistics(file.lambda, file.n)?.chi,
        branch_overlap: spec.branch_overlap(file.lambda)?,
        mean_p: [0.0; 3],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Statistics {
    Boson,
    Fermion,
}

pub const BOSON_COLUMNS: [&str; 6] = ["n", "beta_star", "energy", "chi", "omega", "product"];
pub const FERMION_COLUMNS: [&str; 5] = ["n", "gamma_star", "f_factor", "energy", "chi"];

pub fn selfgrav(cfg: &RunConfig, kind: Statistics, n_list: &[f64]) -> CliResult<Table> {
    let sys = cfg.grav()?;
    let rows: Vec<Vec<f64>> = n_list
        .par_iter()
        .map(|&n| -> CliResult<Vec<f64>> {
            Ok(match kind {
                Statistics::Boson => {
                    let s = boson_solve(n, &sys)?;
                    vec![n, s.beta_star, s.energy, s.chi, s.omega, s.uncertainty_product()]
                }
                Statistics::Fermion => {
                    let s = fermion_solve(n, cfg.fermion_q, cfg.fermion_e_coeff, &sys)?;
                    vec![n, s.gamma_star, s.f_factor, s.energy, s.chi]
                }
            })
        })
        .collect::<CliResult<_>>()?;
    let header = match kind {
        Statistics::Boson => BOSON_COLUMNS.to_vec(),
        Statistics::Fermion => FERMION_COLUMNS.to_vec(),
    };
    let mut table = Table::new(header);
    for r in rows {
        table.push_floats(&r);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    Lambda,
    D,
}

pub const SWEEP_COLUMNS: [&str; 6] = ["lambda", "d", "kinetic", "potential", "total", "total_cal_per_mole"];

/// Parses `start:stop:count` into `count` evenly spaced values including
/// both ends.
pub fn parse_range(text: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Input(format!("range must be start:stop:count, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let span = stop - start;
    let last = (count - 1) as f64;
    Ok((0..count).map(|i| if i + 1 == count { stop } else { start + span * i as f64 / last }).collect())
}

/// Energy per particle along λ at fixed d, or along d at fixed λ. With
/// `relax`, a d sweep re-minimizes λ at every spacing and `fixed` is only the
/// center of the λ search.
pub fn sweep(cfg: &RunConfig, param: SweepParam, values: &[f64], fixed: Option<f64>, relax: bool) -> CliResult<Table> {
    let model = cfg.model()?;
    let rows: Vec<Vec<f64>> = values
        .par_iter()
        .map(|&x| -> CliResult<Vec<f64>> {
            let (lambda, d) = match param {
                SweepParam::Lambda => (x, fixed.unwrap_or(cfg.d0)),
                SweepParam::D if relax => {
                    let center = fixed.unwrap_or(cfg.lambda0).ln();
                    let (t, _, _) = brent(|t| model.energy(t.exp(), x), center - 1.5, center + 1.5, 1e-10, 500)?;
                    (t.exp(), x)
                }
                SweepParam::D => (fixed.unwrap_or(cfg.lambda0), x),
            };
            let e: EnergyBreakdown = model.breakdown(lambda, d)?;
            Ok(vec![lambda, d, e.kinetic, e.potential_total, e.total, model.units.energy_to_cal_per_mole(e.total)])
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(SWEEP_COLUMNS.to_vec());
    for r in rows {
        table.push_floats(&r);
    }
    Ok(table)
}
