//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! error drops below `max(abs_tol, rel_tol·|I|)` or the evaluation budget is
//! spent. The achievable error is floored at a few ulps of `∫|f|`, so strongly
//! cancelling integrands still terminate instead of chasing roundoff.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5] and the center.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { rel_tol: 1e-10, abs_tol: 0.0, max_evals: 1 << 20 }
    }
}

impl QuadratureOptions {
    /// Tolerances tightened by `factor` with a proportionally larger budget.
    pub fn tightened(self, factor: f64) -> Self {
        QuadratureOptions {
            rel_tol: self.rel_tol / factor,
            abs_tol: self.abs_tol / factor,
            max_evals: self.max_evals.saturating_mul(4),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    /// The requested tolerance was below the roundoff floor `50·ε_mach·∫|f|`;
    /// `error` then reports that floor.
    pub roundoff_limited: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut fv = [(0.0, 0.0); 7];
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_value = WGK[7] * fc.abs();
    for (j, slot) in fv.iter_mut().enumerate() {
        let x = half * XGK[j];
        let (f1, f2) = (f(center - x), f(center + x));
        *slot = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_value += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    // QUADPACK error rescaling: |K − G| is compared against the variation
    // of f about its mean on the segment.
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let h = half.abs();
    let (abs_value, asc) = (abs_value * h, asc * h);
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    Segment { a, b, value: kronrod * half, error, abs_value }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<Integral> {
    let floor = |seg: &Segment| 50.0 * f64::EPSILON * seg.abs_value;
    let first = gauss_kronrod(&f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    // Segments whose error is already at their roundoff floor.
    let mut settled: Vec<Segment> = Vec::new();
    let (mut value, mut error, mut abs_value) = (first.value, first.error, first.abs_value);
    if first.error <= floor(&first) {
        settled.push(first);
    } else {
        heap.push(first);
    }
    let mut splits = 0usize;

    loop {
        if !value.is_finite() {
            return Err(Error::QuadratureNotConverged { estimate: value, error, evaluations });
        }
        let roundoff = 50.0 * f64::EPSILON * abs_value;
        let requested = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= requested.max(roundoff) || heap.is_empty() {
            return Ok(Integral {
                value,
                error: error.max(roundoff),
                evaluations,
                roundoff_limited: roundoff > requested,
            });
        }
        if evaluations + 30 > opts.max_evals {
            return Err(Error::QuadratureNotConverged { estimate: value, error, evaluations });
        }
        let worst = heap.pop().expect("checked non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        evaluations += 30;
        splits += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        for seg in [left, right] {
            if seg.error <= floor(&seg) {
                settled.push(seg);
            } else {
                heap.push(seg);
            }
        }
        // Periodic re-summation removes drift from the running updates.
        if splits.is_multiple_of(64) {
            let all = || heap.iter().chain(settled.iter());
            value = all().map(|s| s.value).sum();
            error = all().map(|s| s.error).sum();
            abs_value = all().map(|s| s.abs_value).sum();
        }
    }
}

/// Integrates `f` over `[0, ∞)` through the map `x = scale·t/(1 − t)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, scale: f64, opts: &QuadratureOptions) -> Result<Integral> {
    let g = |t: f64| {
        let one_minus = 1.0 - t;
        let x = scale * t / one_minus;
        let jac = scale / (one_minus * one_minus);
        let y = f(x);
        if y == 0.0 {
            0.0
        } else {
            y * jac
        }
    };
    integrate(g, 0.0, 1.0, opts)
}
