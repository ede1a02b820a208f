//! Minimization of the solid's energy per particle over (λ, d), and the
//! cohesive energy and bulk modulus at the optimum.

mod simplex;

pub use simplex::{brent, nelder_mead, Minimum, NelderMeadOptions};

use serde::{Deserialize, Serialize};

use crate::energy::SolidModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompressionMode {
    /// λ re-optimized at every spacing.
    Relaxed,
    /// λ held at its optimum while the lattice is compressed.
    FrozenLambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOptions {
    /// Initial λ, 1/σ.
    pub lambda0: f64,
    /// Initial spacing, σ.
    pub d0: f64,
    /// Relative tolerance on λ and d.
    pub param_rel_tol: f64,
    pub max_iterations: usize,
    /// Relative finite-difference step in d for the bulk modulus.
    pub fd_rel_step: f64,
    /// Largest accepted relative disagreement between steps h and h/2.
    pub richardson_tol: f64,
    pub compression: CompressionMode,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            lambda0: 50.0,
            d0: 1.1,
            param_rel_tol: 1e-6,
            max_iterations: 2000,
            fd_rel_step: 1e-2,
            richardson_tol: 1e-2,
            compression: CompressionMode::Relaxed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub iterations: usize,
    pub evaluations: usize,
    /// Final vertex spread relative to the requested tolerance (≤ 1).
    pub simplex_size: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkModulus {
    /// B at step h, ε/σ³.
    pub value: f64,
    pub kbar: f64,
    /// B at step h/2.
    pub check_value: f64,
    pub check_kbar: f64,
    pub relative_discrepancy: f64,
    pub reduced_confidence: bool,
    pub compression: CompressionMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidSolution {
    pub lambda_star: f64,
    pub d_star: f64,
    pub d_star_angstrom: f64,
    /// Energy per particle, ε.
    pub u_min: f64,
    pub u_min_cal_per_mole: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub convergence: Convergence,
    pub bulk_modulus: Option<BulkModulus>,
}

/// Nelder–Mead over (ln λ, d).
pub fn minimize_solid(model: &SolidModel, opts: &OptimizeOptions) -> Result<SolidSolution> {
    if !(opts.lambda0 > 0.0 && opts.d0 > 0.0) {
        return Err(Error::invalid("initial lambda and d must be positive"));
    }
    if !(opts.param_rel_tol > 0.0 && opts.param_rel_tol < 1.0) {
        return Err(Error::invalid("param_rel_tol must lie in (0, 1)"));
    }
    let objective = |x: &[f64]| -> Result<f64> {
        if x[1] <= 0.0 {
            return Ok(f64::INFINITY);
        }
        model.energy(x[0].exp(), x[1])
    };
    // A step in ln λ is already relative; the d tolerance is scaled by d0.
    let nm = NelderMeadOptions {
        steps: vec![0.3, 0.05 * opts.d0],
        tolerances: vec![opts.param_rel_tol, opts.param_rel_tol * opts.d0],
        max_iterations: opts.max_iterations,
    };
    let min = nelder_mead(objective, &[opts.lambda0.ln(), opts.d0], &nm).map_err(|e| match e {
        Error::NotConverged { iterations, best_point, best_value } => {
            Error::NotConverged { iterations, best_point: vec![best_point[0].exp(), best_point[1]], best_value }
        }
        other => other,
    })?;
    let (lambda_star, d_star) = (min.x[0].exp(), min.x[1]);
    let b = model.breakdown(lambda_star, d_star)?;
    Ok(SolidSolution {
        lambda_star,
        d_star,
        d_star_angstrom: model.units.length_to_angstrom(d_star),
        u_min: b.total,
        u_min_cal_per_mole: model.units.energy_to_cal_per_mole(b.total),
        kinetic: b.kinetic,
        potential: b.potential_total,
        convergence: Convergence {
            iterations: min.iterations,
            evaluations: min.evaluations,
            simplex_size: min.simplex_size,
        },
        bulk_modulus: None,
    })
}

/// Lowest energy at fixed spacing, with λ found by Brent's method in ln λ
/// around `lambda_hint`.
pub fn relaxed_energy(model: &SolidModel, d: f64, lambda_hint: f64) -> Result<(f64, f64)> {
    let center = lambda_hint.ln();
    let (x, u, _) = brent(|x| model.energy(x.exp(), d), center - 0.5, center + 0.5, 1e-10, 500)?;
    Ok((x.exp(), u))
}

/// `B = v d²u/dv²` at the optimum, with `v` the volume per particle.
pub fn bulk_modulus(sol: &SolidSolution, model: &SolidModel, opts: &OptimizeOptions) -> Result<BulkModulus> {
    let curve = |d: f64| -> Result<f64> {
        match opts.compression {
            CompressionMode::Relaxed => Ok(relaxed_energy(model, d, sol.lambda_star)?.1),
            CompressionMode::FrozenLambda => model.energy(sol.lambda_star, d),
        }
    };
    let kind = model.kind();
    let (value, check_value) =
        bulk_modulus_from_curve(sol.d_star, |d| kind.volume_per_site(d), curve, opts.fd_rel_step)?;
    let relative_discrepancy = ((value - check_value) / check_value).abs();
    Ok(BulkModulus {
        value,
        kbar: model.units.pressure_to_kbar(value),
        check_value,
        check_kbar: model.units.pressure_to_kbar(check_value),
        relative_discrepancy,
        reduced_confidence: !(relative_discrepancy <= opts.richardson_tol),
        compression: opts.compression,
    })
}

/// Bulk modulus of an energy-versus-spacing curve at `d0`, from five-point
/// central differences in `d` with relative steps `h` and `h/2`. The volume
/// `v(d)` must be a cubic `c·d³`.
///
/// `d²u/dv² = (u'' − u' v''/v') / v'²`; the `u'` term vanishes at a true
/// minimum but is kept so the formula holds anywhere on the curve.
pub fn bulk_modulus_from_curve<V, U>(d0: f64, volume: V, mut curve: U, h: f64) -> Result<(f64, f64)>
where
    V: Fn(f64) -> f64,
    U: FnMut(f64) -> Result<f64>,
{
    if !(h > 0.0 && h < 0.2) {
        return Err(Error::invalid(format!("finite-difference step must lie in (0, 0.2), got {h}")));
    }
    let c = volume(d0) / d0.powi(3);
    let mut estimate = |step: f64| -> Result<f64> {
        let dh = step * d0;
        let u: Vec<f64> = (-2..=2).map(|j| curve(d0 + j as f64 * dh)).collect::<Result<_>>()?;
        let du = (u[0] - 8.0 * u[1] + 8.0 * u[3] - u[4]) / (12.0 * dh);
        let d2u = (-u[0] + 16.0 * u[1] - 30.0 * u[2] + 16.0 * u[3] - u[4]) / (12.0 * dh * dh);
        let dv = 3.0 * c * d0 * d0;
        let d2v = 6.0 * c * d0;
        Ok(volume(d0) * (d2u - du * d2v / dv) / (dv * dv))
    };
    Ok((estimate(h)?, estimate(0.5 * h)?))
}

/// Minimization followed by the bulk modulus.
pub fn solve_solid(model: &SolidModel, opts: &OptimizeOptions) -> Result<SolidSolution> {
    let mut sol = minimize_solid(model, opts)?;
    sol.bulk_modulus = Some(bulk_modulus(&sol, model, opts)?);
    Ok(sol)
}
