//! Site orbital, pair potentials and the two-site pair energy.
//!
//! Each lattice site carries the orbital `φ(r) = D·exp(−λ|r − x|/2)`, so its
//! density is `n(r) = λ³ e^{−λr}/(8π)` with 3-D Fourier transform
//! `ñ(k) = (1 + k²/λ²)^{−2}`. The six-dimensional interaction of two such
//! densities through `v` collapses, by the convolution theorem, to
//!
//! ```text
//! E(s) = 1/(2π²) ∫₀^∞ k² ṽ(k) ñ(k)² j₀(ks) dk
//! ```
//!
//! which is what [`pair_energy`] evaluates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, QuadratureOptions};

/// Above this value of `λ·s` the `e^{−λs}` part of the pair energy is below
/// 1e-15 ε and the Yukawa pole terms are exact.
pub const FAR_FIELD_LAMBDA_S: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitalParams {
    /// Density decay rate λ, in 1/σ.
    pub lambda: f64,
    /// Support radius `a`; `None` is an untruncated orbital.
    pub cutoff_a: Option<f64>,
}

impl OrbitalParams {
    pub fn new(lambda: f64, cutoff_a: Option<f64>) -> Result<Self> {
        check_lambda(lambda)?;
        if let Some(a) = cutoff_a {
            if !(a > 0.0) {
                return Err(Error::invalid(format!("cutoff radius must be positive, got {a}")));
            }
        }
        Ok(OrbitalParams { lambda, cutoff_a })
    }

    pub fn untruncated(lambda: f64) -> Result<Self> {
        Self::new(lambda, None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoYukawaParams {
    pub epsilon: f64,
    pub sigma: f64,
    pub b: f64,
    pub m: f64,
    pub n: f64,
}

impl Default for TwoYukawaParams {
    /// Noble-gas fit in natural units.
    fn default() -> Self {
        TwoYukawaParams { epsilon: 1.0, sigma: 1.0, b: 2.026, m: 2.69, n: 14.70 }
    }
}

/// One screened-Coulomb term `amplitude·e^{−αr}/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YukawaTerm {
    pub amplitude: f64,
    pub alpha: f64,
}

impl TwoYukawaParams {
    pub fn new(epsilon: f64, sigma: f64, b: f64, m: f64, n: f64) -> Result<Self> {
        let p = TwoYukawaParams { epsilon, sigma, b, m, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.sigma > 0.0) {
            return Err(Error::invalid("epsilon and sigma must be positive"));
        }
        if !(self.b > 0.0 && self.m > 0.0 && self.n > self.m) {
            return Err(Error::invalid(format!(
                "two-Yukawa parameters need b > 0 and n > m > 0 (b={}, m={}, n={})",
                self.b, self.m, self.n
            )));
        }
        Ok(())
    }

    /// The potential written as a sum of two Yukawa terms.
    pub fn terms(&self) -> [YukawaTerm; 2] {
        let scale = self.epsilon * self.b * self.sigma;
        [
            YukawaTerm { amplitude: -scale * self.m.exp(), alpha: self.m / self.sigma },
            YukawaTerm { amplitude: scale * self.n.exp(), alpha: self.n / self.sigma },
        ]
    }

    pub fn potential(&self, r: f64) -> f64 {
        let x = r / self.sigma;
        -self.epsilon * self.b * ((-self.m * (x - 1.0)).exp() - (-self.n * (x - 1.0)).exp()) / x
    }

    pub fn fourier(&self, k: f64) -> f64 {
        let ks2 = (k * self.sigma).powi(2);
        -4.0 * PI
            * self.epsilon
            * self.b
            * self.sigma.powi(3)
            * (self.m.exp() / (ks2 + self.m * self.m) - self.n.exp() / (ks2 + self.n * self.n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GravParams {
    pub kappa: f64,
}

impl GravParams {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa > 0.0 && kappa.is_finite() {
            Ok(GravParams { kappa })
        } else {
            Err(Error::invalid(format!("kappa must be positive, got {kappa}")))
        }
    }

    pub fn potential(&self, r: f64) -> f64 {
        -self.kappa / r
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("lambda must be positive, got {lambda}")))
    }
}

fn require_untruncated(p: &OrbitalParams) -> Result<()> {
    check_lambda(p.lambda)?;
    match p.cutoff_a {
        None => Ok(()),
        Some(a) => Err(Error::invalid(format!("analytic Fourier path needs an untruncated orbital (cutoff a = {a})"))),
    }
}

/// D² such that the orbital is normalized.
pub fn orbital_norm_constant(p: &OrbitalParams) -> Result<f64> {
    check_lambda(p.lambda)?;
    let l = p.lambda;
    let full = l.powi(3) / (8.0 * PI);
    match p.cutoff_a {
        None => Ok(full),
        Some(a) => {
            let x = l * a;
            // 1 − e^{−x}(1 + x + x²/2), written to stay accurate for small x
            let bracket = if x < 1e-2 {
                x.powi(3) / 6.0 - x.powi(4) / 8.0 + x.powi(5) / 20.0
            } else {
                1.0 - (-x).exp() * (1.0 + x + 0.5 * x * x)
            };
            Ok(full / bracket)
        }
    }
}

/// Fourier transform of the normalized site density, `(1 + k²/λ²)^{−2}`.
pub fn density_fourier(p: &OrbitalParams, k: f64) -> Result<f64> {
    require_untruncated(p)?;
    if !(k >= 0.0) {
        return Err(Error::invalid(format!("wavenumber must be non-negative, got {k}")));
    }
    Ok(density_fourier_unchecked(p.lambda, k))
}

#[inline]
fn density_fourier_unchecked(lambda: f64, k: f64) -> f64 {
    let q = k / lambda;
    let t = 1.0 + q * q;
    1.0 / (t * t)
}

pub fn two_yukawa(r: f64, p: &TwoYukawaParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!("two-Yukawa potential needs r > 0, got {r}")));
    }
    Ok(p.potential(r))
}

pub fn two_yukawa_fourier(k: f64, p: &TwoYukawaParams) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::invalid(format!("wavenumber must be non-negative, got {k}")));
    }
    Ok(p.fourier(k))
}

/// Spherical Bessel j₀(x) = sin(x)/x.
#[inline]
pub fn j0(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Interaction energy of two site densities whose centers are `s` apart.
///
/// Uses the Fourier-space quadrature except where `λs` is large enough that
/// the result is carried entirely by the Yukawa poles, see
/// [`pair_energy_far_field`]. In that regime the quadrature only resolves
/// roundoff of the `b·eⁿ` repulsive amplitude.
pub fn pair_energy(p: &OrbitalParams, pot: &TwoYukawaParams, s: f64, quad: &QuadratureOptions) -> Result<f64> {
    require_untruncated(p)?;
    if !(s >= 0.0) {
        return Err(Error::invalid(format!("separation must be non-negative, got {s}")));
    }
    if far_field_applies(p.lambda, pot, s) {
        Ok(pair_energy_far_field_unchecked(p.lambda, pot, s))
    } else {
        pair_energy_quadrature(p, pot, s, quad)
    }
}

pub fn far_field_applies(lambda: f64, pot: &TwoYukawaParams, s: f64) -> bool {
    let alpha_max = pot.terms().iter().map(|t| t.alpha).fold(0.0, f64::max);
    lambda * s >= FAR_FIELD_LAMBDA_S && 2.0 * alpha_max <= lambda
}

/// The Fourier-space integral, always by quadrature.
pub fn pair_energy_quadrature(
    p: &OrbitalParams,
    pot: &TwoYukawaParams,
    s: f64,
    quad: &QuadratureOptions,
) -> Result<f64> {
    require_untruncated(p)?;
    if !(s >= 0.0) {
        return Err(Error::invalid(format!("separation must be non-negative, got {s}")));
    }
    let lambda = p.lambda;
    let integrand = |k: f64| {
        let nk = density_fourier_unchecked(lambda, k);
        k * k * pot.fourier(k) * nk * nk * j0(k * s)
    };
    let r = integrate_semi_infinite(integrand, lambda, quad)?;
    Ok(r.value / (2.0 * PI * PI))
}

/// Pole contribution of the pair energy: each Yukawa term `A e^{−αr}/r`
/// contributes `A ñ(iα)² e^{−αs}/s`, with `ñ(iα) = (1 − α²/λ²)^{−2}`.
/// Exact up to terms of order `e^{−λs}`.
pub fn pair_energy_far_field(p: &OrbitalParams, pot: &TwoYukawaParams, s: f64) -> Result<f64> {
    require_untruncated(p)?;
    if !(s > 0.0) {
        return Err(Error::invalid(format!("far-field form needs s > 0, got {s}")));
    }
    if pot.terms().iter().any(|t| t.alpha >= p.lambda) {
        return Err(Error::invalid("far-field form needs every Yukawa rate below lambda"));
    }
    Ok(pair_energy_far_field_unchecked(p.lambda, pot, s))
}

fn pair_energy_far_field_unchecked(lambda: f64, pot: &TwoYukawaParams, s: f64) -> f64 {
    pot.terms()
        .iter()
        .map(|t| {
            let q = 1.0 - (t.alpha / lambda).powi(2);
            let form = 1.0 / (q * q);
            t.amplitude * form * form * (-t.alpha * s).exp() / s
        })
        .sum()
}
