//! Cross-checks of the closed forms and quadratures against independent
//! oracles.

use std::f64::consts::PI;

use natstate_core::energy::{cluster_site_energy, energy_per_particle};
use natstate_core::lattice::build_cluster;
use natstate_core::model::{density_fourier, pair_energy, two_yukawa_fourier};
use natstate_core::observables::{com_statistics, verify_com_on_cluster, COM_CHECK_STD_ERRORS};
use natstate_core::oracle::{mc_pair_integral, radial_transform_check, ExponentialDensity, McEstimate};
use natstate_core::quadrature::integrate_semi_infinite;
use natstate_core::selfgrav::{boson_solve, kinetic_coefficient, EXPONENTIAL_COULOMB_COEFF};
use natstate_core::{LatticeKind, OrbitalParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{fmt_float, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// |observed − expected| / |expected|.
    Relative,
    Absolute,
    /// |observed − expected| in Monte Carlo standard errors.
    StdErrors,
}

impl Metric {
    fn name(self) -> &'static str {
        match self {
            Metric::Relative => "relative",
            Metric::Absolute => "absolute",
            Metric::StdErrors => "std_errors",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub metric: Metric,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Generator seed of a Monte Carlo check.
    pub seed: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, observed: f64, expected: f64, metric: Metric, tolerance: f64) -> Self {
        let diff = (observed - expected).abs();
        let deviation = match metric {
            Metric::Relative => diff / expected.abs(),
            Metric::Absolute | Metric::StdErrors => diff,
        };
        Check {
            name: name.into(),
            observed,
            expected,
            metric,
            deviation,
            tolerance,
            passed: deviation <= tolerance,
            seed: None,
        }
    }

    pub fn monte_carlo(name: impl Into<String>, est: &McEstimate, expected: f64, n_se: f64) -> Self {
        let deviation = est.deviation(expected);
        Check {
            name: name.into(),
            observed: est.mean,
            expected,
            metric: Metric::StdErrors,
            deviation,
            tolerance: n_se,
            passed: deviation <= n_se,
            seed: Some(est.seed),
        }
    }
}

pub const CHECK_COLUMNS: [&str; 8] =
    ["check", "observed", "expected", "metric", "deviation", "tolerance", "status", "seed"];

pub fn render(checks: &[Check]) -> Table {
    let mut t = Table::new(CHECK_COLUMNS.to_vec());
    for c in checks {
        t.rows.push(vec![
            c.name.clone(),
            fmt_float(c.observed),
            fmt_float(c.expected),
            c.metric.name().to_string(),
            fmt_float(c.deviation),
            fmt_float(c.tolerance),
            if c.passed { "PASS" } else { "FAIL" }.to_string(),
            c.seed.map(|s| s.to_string()).unwrap_or_default(),
        ]);
    }
    t
}

const LAMBDA_REF: f64 = 91.33;
const D_REF: f64 = 3.953 / 3.6;

/// Pair energy points for the Monte Carlo comparison, (λ, s).
const PAIR_POINTS: [(f64, f64); 3] = [(LAMBDA_REF, D_REF), (60.0, 1.0), (140.0, 1.6)];

type Job<'a> = Box<dyn Fn() -> CliResult<Vec<Check>> + Send + Sync + 'a>;

/// Runs every check. Each Monte Carlo estimate draws from its own stream
/// derived from `cfg.seed`, so the result does not depend on scheduling.
pub fn run_checks(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let model = cfg.model()?;
    let pot = model.pot;
    let quad = model.quad;
    let units = model.units;
    let samples = cfg.mc_samples.max(1000);
    let seed = cfg.seed;

    let mut jobs: Vec<Job> = Vec::new();
    for (i, &(lambda, s)) in PAIR_POINTS.iter().enumerate() {
        jobs.push(Box::new(move || {
            let p = OrbitalParams::untruncated(lambda)?;
            let d = ExponentialDensity::new(lambda)?;
            let est = mc_pair_integral(&d, &d, |r| pot.potential(r), s, samples, seed.wrapping_add(i as u64))?;
            let e = pair_energy(&p, &pot, s, &quad)?;
            Ok(vec![Check::monte_carlo(format!("pair_energy_mc(lambda={lambda},s={s:.6})"), &est, e, 3.0)])
        }));
    }
    jobs.push(Box::new(move || {
        let tight = quad.tightened(10.0);
        [0.0, 0.7, 2.5, 9.0, 30.0]
            .iter()
            .map(|&k| {
                let v = radial_transform_check(|r| pot.potential(r), k, 1.0 / pot.m, &tight)?;
                Ok(Check::new(
                    format!("two_yukawa_fourier(k={k})"),
                    two_yukawa_fourier(k, &pot)?,
                    v,
                    Metric::Relative,
                    1e-9,
                ))
            })
            .collect()
    }));
    jobs.push(Box::new(move || {
        let p = OrbitalParams::untruncated(LAMBDA_REF)?;
        let d = ExponentialDensity::new(LAMBDA_REF)?;
        [10.0, 91.33, 400.0]
            .iter()
            .map(|&k| {
                let v = radial_transform_check(|r| d.value(r), k, 1.0 / LAMBDA_REF, &quad)?;
                Ok(Check::new(format!("density_fourier(k={k})"), density_fourier(&p, k)?, v, Metric::Relative, 1e-9))
            })
            .collect()
    }));
    let model_ref = &model;
    jobs.push(Box::new(move || {
        let p = OrbitalParams::untruncated(LAMBDA_REF)?;
        let cluster = build_cluster(LatticeKind::Fcc, D_REF, 201)?;
        let shells = model_ref.shells(D_REF)?.truncated(10);
        let by_shell = energy_per_particle(&p, &pot, &shells, &units, &quad)?.total;
        let by_pairs = cluster_site_energy(&p, &pot, &cluster, 0, &units, &quad)?;
        Ok(vec![Check::new("shell_sum_vs_201_site_cluster", by_shell, by_pairs, Metric::Absolute, 1e-8)])
    }));
    jobs.push(Box::new(move || {
        let cluster = build_cluster(LatticeKind::Fcc, D_REF, 13)?;
        let check = verify_com_on_cluster(LAMBDA_REF, &cluster, (samples / 10).max(1000), seed.wrapping_add(100))?;
        Ok(check
            .per_axis
            .iter()
            .zip(["x", "y", "z"])
            .map(|(est, axis)| {
                Check::monte_carlo(format!("com_variance_13_sites_{axis}"), est, check.expected, COM_CHECK_STD_ERRORS)
            })
            .collect())
    }));
    jobs.push(Box::new(move || {
        let gamma = 2.0;
        let d = ExponentialDensity::new(gamma)?;
        let est = mc_pair_integral(&d, &d, |r| 1.0 / r, 0.0, samples, seed.wrapping_add(200))?;
        Ok(vec![Check::monte_carlo("coulomb_self_energy_5/16", &est, EXPONENTIAL_COULOMB_COEFF * gamma, 3.0)])
    }));
    jobs.push(Box::new(move || {
        let gamma: f64 = 1.5;
        let rho = |r: f64| gamma.powi(3) * (-gamma * r).exp() / (8.0 * PI);
        let tf = integrate_semi_infinite(|r| 4.0 * PI * r * r * rho(r).powf(5.0 / 3.0), 1.0 / gamma, &quad)?.value;
        Ok(vec![Check::new(
            "thomas_fermi_kinetic_coefficient",
            kinetic_coefficient(),
            tf / (gamma * gamma),
            Metric::Relative,
            1e-9,
        )])
    }));
    jobs.push(Box::new(move || {
        let target = 1.0 / 3f64.sqrt();
        let solid = com_statistics(LAMBDA_REF, 1e21)?.product;
        let boson = boson_solve(1e3, &cfg.grav()?)?.uncertainty_product() / cfg.grav_hbar;
        Ok(vec![
            Check::new("solid_uncertainty_product", solid, target, Metric::Absolute, 1e-12),
            Check::new("boson_uncertainty_product", boson, target, Metric::Absolute, 1e-12),
        ])
    }));

    let nested: Vec<Vec<Check>> = jobs.par_iter().map(|job| job()).collect::<CliResult<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}
