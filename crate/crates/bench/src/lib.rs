//! Benchmark fixtures shared by the criterion targets.

use natstate_core::{OrbitalParams, SolidModel};

/// Reference orbital exponent and spacing near the Krypton optimum, σ units.
pub const LAMBDA: f64 = 91.33;
pub const D: f64 = 3.953 / 3.6;

pub fn krypton() -> SolidModel {
    SolidModel::krypton_fcc()
}

pub fn orbital() -> OrbitalParams {
    OrbitalParams::untruncated(LAMBDA).expect("positive lambda")
}
