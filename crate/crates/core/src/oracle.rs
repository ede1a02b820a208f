//! Independent verifiers: Monte Carlo estimates of six-dimensional pair
//! integrals and density moments, and real-space radial Fourier transforms.
//!
//! Every estimate owns a `ChaCha8Rng` seeded from a `u64` with
//! `SeedableRng::seed_from_u64`, so a seed fully determines the result.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Vec3;
use crate::quadrature::{integrate_semi_infinite, QuadratureOptions};

pub const MIN_PAIR_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// |value − mean| in units of the standard error.
    pub fn deviation(&self, value: f64) -> f64 {
        if self.std_error == 0.0 {
            if value == self.mean {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (value - self.mean).abs() / self.std_error
        }
    }

    pub fn agrees_with(&self, value: f64, n_se: f64) -> bool {
        self.deviation(value) <= n_se
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalized density `rate³ e^{−rate·r}/(8π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialDensity {
    pub rate: f64,
}

impl ExponentialDensity {
    pub fn new(rate: f64) -> Result<Self> {
        if rate > 0.0 && rate.is_finite() {
            Ok(ExponentialDensity { rate })
        } else {
            Err(Error::invalid(format!("density rate must be positive, got {rate}")))
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.rate.powi(3) * (-self.rate * r).exp() / (8.0 * PI)
    }

    /// The radial distribution is Gamma(3, 1/rate): a sum of three
    /// exponential variates.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec3 {
        let u: f64 = (1.0 - rng.random::<f64>()) * (1.0 - rng.random::<f64>()) * (1.0 - rng.random::<f64>());
        let r = -u.ln() / self.rate;
        let dir = unit_vector(rng);
        [r * dir[0], r * dir[1], r * dir[2]]
    }
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi = 2.0 * PI * rng.random::<f64>();
    let rho = (1.0 - z * z).max(0.0).sqrt();
    [rho * phi.cos(), rho * phi.sin(), z]
}

/// Running mean and variance (Welford).
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn estimate(&self, seed: u64) -> McEstimate {
        let n = self.count as f64;
        let var = if self.count > 1 { self.m2 / (n - 1.0) } else { 0.0 };
        McEstimate { mean: self.mean, std_error: (var / n).sqrt(), samples: self.count, seed }
    }
}

/// `∫∫ n_a(r) K(|r − r' − s ẑ|) n_b(r') d³r d³r'` by direct sampling of both
/// densities. A singular but integrable kernel such as `1/r` is evaluated as
/// is; coincident samples occur with probability zero.
pub fn mc_pair_integral<K: Fn(f64) -> f64>(
    density_a: &ExponentialDensity,
    density_b: &ExponentialDensity,
    kernel: K,
    separation: f64,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if samples < MIN_PAIR_SAMPLES {
        return Err(Error::invalid(format!("need at least {MIN_PAIR_SAMPLES} samples, got {samples}")));
    }
    let mut rng = rng_for(seed);
    let mut acc = Accumulator::default();
    for _ in 0..samples {
        let a = density_a.sample(&mut rng);
        let b = density_b.sample(&mut rng);
        let dx = a[0] - b[0];
        let dy = a[1] - b[1];
        let dz = a[2] - b[2] - separation;
        acc.push(kernel((dx * dx + dy * dy + dz * dz).sqrt()));
    }
    Ok(acc.estimate(seed))
}

/// Mean of `g(x)` for `x` drawn from `density`, e.g. a coordinate moment.
pub fn mc_density_moment<G: Fn(Vec3) -> f64>(
    density: &ExponentialDensity,
    g: G,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let mut rng = rng_for(seed);
    let mut acc = Accumulator::default();
    for _ in 0..samples {
        acc.push(g(density.sample(&mut rng)));
    }
    Ok(acc.estimate(seed))
}

/// `(4π/k) ∫₀^∞ r sin(kr) f(r) dr`, the 3-D Fourier transform of a radial
/// function evaluated in real space. `scale` sets where the semi-infinite map
/// places half of its nodes and should be the decay length of `f`.
pub fn radial_transform_check<F: Fn(f64) -> f64>(f: F, k: f64, scale: f64, quad: &QuadratureOptions) -> Result<f64> {
    if !(k >= 0.0) || !(scale > 0.0) {
        return Err(Error::invalid("radial transform needs k >= 0 and scale > 0"));
    }
    if k == 0.0 {
        return Ok(4.0 * PI * integrate_semi_infinite(|r| r * r * f(r), scale, quad)?.value);
    }
    let r = integrate_semi_infinite(|r| r * (k * r).sin() * f(r), scale, quad)?;
    Ok(4.0 * PI * r.value / k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_kernel_gives_normalization() {
        let a = ExponentialDensity::new(3.0).unwrap();
        let est = mc_pair_integral(&a, &a, |_| 1.0, 0.7, 5000, 1).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn rejects_too_few_samples() {
        let a = ExponentialDensity::new(1.0).unwrap();
        assert!(mc_pair_integral(&a, &a, |_| 1.0, 0.0, 999, 0).is_err());
        assert!(ExponentialDensity::new(0.0).is_err());
    }

    #[test]
    fn same_seed_same_estimate() {
        let a = ExponentialDensity::new(2.0).unwrap();
        let x = mc_pair_integral(&a, &a, |r| (-r).exp(), 0.5, 10_000, 42).unwrap();
        let y = mc_pair_integral(&a, &a, |r| (-r).exp(), 0.5, 10_000, 42).unwrap();
        let z = mc_pair_integral(&a, &a, |r| (-r).exp(), 0.5, 10_000, 43).unwrap();
        assert_eq!(x, y);
        assert_ne!(x.mean, z.mean);
    }

    #[test]
    fn standard_error_shrinks_as_inverse_root() {
        let a = ExponentialDensity::new(2.0).unwrap();
        let small = mc_pair_integral(&a, &a, |r| 1.0 / r, 0.0, 20_000, 7).unwrap();
        let large = mc_pair_integral(&a, &a, |r| 1.0 / r, 0.0, 80_000, 7).unwrap();
        let ratio = large.std_error / small.std_error;
        assert!((ratio - 0.5).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn coulomb_self_energy_of_exponential_densities() {
        // High-resolution radial quadrature: the potential of the shell
        // distribution is U(r) = (1/r)∫₀^r n 4πr'² + ∫_r^∞ n 4πr' ; then ∫ n U.
        let gamma: f64 = 2.0;
        let d = ExponentialDensity::new(gamma).unwrap();
        let q = QuadratureOptions::default();
        let inner = |r: f64| {
            let enclosed = crate::quadrature::integrate(|x| 4.0 * PI * x * x * d.value(x), 0.0, r, &q).unwrap().value;
            let outer =
                integrate_semi_infinite(|x| 4.0 * PI * (x + r) * d.value(x + r), 1.0 / gamma, &q).unwrap().value;
            enclosed / r + outer
        };
        let quad_value = integrate_semi_infinite(
            |r| if r == 0.0 { 0.0 } else { 4.0 * PI * r * r * d.value(r) * inner(r) },
            1.0 / gamma,
            &QuadratureOptions { rel_tol: 1e-9, ..q },
        )
        .unwrap()
        .value;
        assert_relative_eq!(quad_value, 5.0 * gamma / 16.0, max_relative = 1e-8);

        let est = mc_pair_integral(&d, &d, |r| 1.0 / r, 0.0, 400_000, 11).unwrap();
        assert!(est.agrees_with(5.0 * gamma / 16.0, 3.0), "{est:?}");
    }

    #[test]
    fn yukawa_transform() {
        let alpha = 1.7;
        for k in [0.0, 0.5, 3.0, 12.0] {
            let v = radial_transform_check(|r| (-alpha * r).exp() / r, k, 1.0 / alpha, &QuadratureOptions::default())
                .unwrap();
            assert_relative_eq!(v, 4.0 * PI / (k * k + alpha * alpha), max_relative = 1e-10);
        }
    }

    #[test]
    fn exponential_density_transform() {
        let lambda = 91.33;
        let d = ExponentialDensity::new(lambda).unwrap();
        for k in [1.0, 10.0, 91.33, 400.0] {
            let v = radial_transform_check(|r| d.value(r), k, 1.0 / lambda, &QuadratureOptions::default()).unwrap();
            let expect = (1.0 + (k / lambda).powi(2)).powi(-2);
            assert_relative_eq!(v, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn narrow_gaussian_is_nearly_a_point_mass() {
        let w: f64 = 1e-3;
        let norm = (2.0 * PI * w * w).powf(-1.5);
        let v =
            radial_transform_check(|r| norm * (-r * r / (2.0 * w * w)).exp(), 0.1, w, &QuadratureOptions::default())
                .unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn sampled_density_has_expected_second_moment() {
        let lambda = 3.0;
        let d = ExponentialDensity::new(lambda).unwrap();
        let est = mc_density_moment(&d, |x| x[0] * x[0], 200_000, 5).unwrap();
        assert!(est.agrees_with(4.0 / (lambda * lambda), 4.0), "{est:?}");
    }
}
