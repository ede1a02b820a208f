//! Run configuration: a flat JSON object with snake_case keys. Every key is
//! optional; an empty object `{}` reproduces the Krypton FCC calculation.

use std::path::Path;

use natstate_core::energy::DEFAULT_SHELL_CUTOFF;
use natstate_core::units::{KRYPTON_EPSILON_K, KRYPTON_MASS_U, KRYPTON_SIGMA_M};
use natstate_core::{
    CompressionMode, GravSystem, LatticeKind, OptimizeOptions, QuadratureOptions, SolidModel, TwoYukawaParams,
    UnitSystem,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Two-Yukawa amplitude.
    pub b: f64,
    /// Attractive range parameter, 1/σ.
    pub m: f64,
    /// Repulsive range parameter, 1/σ.
    pub n: f64,
    pub epsilon_k: f64,
    pub sigma_angstrom: f64,
    pub mass_u: f64,

    /// Initial orbital exponent, 1/σ.
    pub lambda0: f64,
    /// Initial nearest-neighbor spacing, σ.
    pub d0: f64,
    pub param_rel_tol: f64,
    pub max_iterations: usize,
    pub fd_rel_step: f64,
    pub richardson_tol: f64,
    pub compression: CompressionMode,

    /// Shell truncation radius in units of the spacing d.
    pub shell_max_distance: f64,
    pub quad_rel_tol: f64,
    pub quad_max_evals: usize,

    /// Particle numbers for scaling reports.
    pub n_list: Vec<f64>,
    pub seed: u64,
    pub mc_samples: usize,

    /// Self-gravitation: coupling, particle mass and ħ in one consistent
    /// unit system.
    pub grav_kappa: f64,
    pub grav_mass: f64,
    pub grav_hbar: f64,
    /// Fermion occupation per orbital.
    pub fermion_q: f64,
    /// Thomas–Fermi kinetic prefactor.
    pub fermion_e_coeff: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let pot = TwoYukawaParams::default();
        let opt = OptimizeOptions::default();
        let quad = QuadratureOptions::default();
        RunConfig {
            b: pot.b,
            m: pot.m,
            n: pot.n,
            epsilon_k: KRYPTON_EPSILON_K,
            sigma_angstrom: KRYPTON_SIGMA_M * 1e10,
            mass_u: KRYPTON_MASS_U,
            lambda0: opt.lambda0,
            d0: opt.d0,
            param_rel_tol: opt.param_rel_tol,
            max_iterations: opt.max_iterations,
            fd_rel_step: opt.fd_rel_step,
            richardson_tol: opt.richardson_tol,
            compression: opt.compression,
            shell_max_distance: DEFAULT_SHELL_CUTOFF,
            quad_rel_tol: quad.rel_tol,
            quad_max_evals: quad.max_evals,
            n_list: vec![1e2, 1e3, 1e4, 1e5, 1e6],
            seed: 1,
            mc_samples: 1_000_000,
            grav_kappa: 1.0,
            grav_mass: 1.0,
            grav_hbar: 1.0,
            fermion_q: 2.0,
            fermion_e_coeff: 5.0,
        }
    }
}

impl RunConfig {
    /// Reads and validates a config file; `None` gives the defaults.
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let cfg = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", p.display())))?;
                Self::from_json(&text).map_err(|e| match e {
                    CliError::Input(m) => CliError::Input(format!("{}: {m}", p.display())),
                    other => other,
                })?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let positive = [
            ("b", self.b),
            ("m", self.m),
            ("n", self.n),
            ("epsilon_k", self.epsilon_k),
            ("sigma_angstrom", self.sigma_angstrom),
            ("mass_u", self.mass_u),
            ("lambda0", self.lambda0),
            ("d0", self.d0),
            ("shell_max_distance", self.shell_max_distance),
            ("grav_kappa", self.grav_kappa),
            ("grav_mass", self.grav_mass),
            ("grav_hbar", self.grav_hbar),
            ("fermion_e_coeff", self.fermion_e_coeff),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Input(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let fractions = [
            ("param_rel_tol", self.param_rel_tol),
            ("fd_rel_step", self.fd_rel_step),
            ("richardson_tol", self.richardson_tol),
            ("quad_rel_tol", self.quad_rel_tol),
        ];
        for (name, v) in fractions {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::Input(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if self.max_iterations == 0 || self.quad_max_evals == 0 {
            return Err(CliError::Input("iteration and evaluation budgets must be positive".into()));
        }
        if self.m >= self.n {
            return Err(CliError::Input(format!("need m < n, got m = {} and n = {}", self.m, self.n)));
        }
        if let Some(bad) = self.n_list.iter().find(|&&v| !(v >= 1.0 && v.is_finite())) {
            return Err(CliError::Input(format!("n_list entries must be at least 1, got {bad}")));
        }
        if !(self.fermion_q >= 1.0 && self.fermion_q.is_finite()) {
            return Err(CliError::Input(format!("fermion_q must be at least 1, got {}", self.fermion_q)));
        }
        Ok(())
    }

    pub fn units(&self) -> CliResult<UnitSystem> {
        Ok(UnitSystem::new(self.sigma_angstrom * 1e-10, self.epsilon_k, self.mass_u)?)
    }

    /// Potential in natural units (ε = σ = 1).
    pub fn potential(&self) -> CliResult<TwoYukawaParams> {
        Ok(TwoYukawaParams::new(1.0, 1.0, self.b, self.m, self.n)?)
    }

    pub fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions { rel_tol: self.quad_rel_tol, max_evals: self.quad_max_evals, ..QuadratureOptions::default() }
    }

    pub fn model(&self) -> CliResult<SolidModel> {
        Ok(SolidModel::new(
            LatticeKind::Fcc,
            self.potential()?,
            self.units()?,
            self.shell_max_distance,
            self.quadrature(),
        )?)
    }

    pub fn optimize_options(&self) -> OptimizeOptions {
        OptimizeOptions {
            lambda0: self.lambda0,
            d0: self.d0,
            param_rel_tol: self.param_rel_tol,
            max_iterations: self.max_iterations,
            fd_rel_step: self.fd_rel_step,
            richardson_tol: self.richardson_tol,
            compression: self.compression,
        }
    }

    pub fn grav(&self) -> CliResult<GravSystem> {
        Ok(GravSystem::new(self.grav_kappa, self.grav_mass, self.grav_hbar)?)
    }
}
