//! Derivative-free minimizers: Nelder–Mead for the (ln λ, d) plane and
//! Brent's method for one-dimensional relaxations.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Largest per-coordinate distance from the best vertex when stopping,
    /// scaled by the per-coordinate tolerance reference.
    pub simplex_size: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOptions {
    /// Initial simplex offset along each coordinate.
    pub steps: Vec<f64>,
    /// Per-coordinate tolerance on the vertex spread.
    pub tolerances: Vec<f64>,
    pub max_iterations: usize,
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction ½,
/// shrink ½). Stops when every vertex lies within `tolerances[j]` of the best
/// vertex along every coordinate `j`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let dim = x0.len();
    if dim == 0 || opts.steps.len() != dim || opts.tolerances.len() != dim {
        return Err(Error::invalid("simplex steps and tolerances must match the dimension"));
    }
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evaluations: &mut usize| -> Result<f64> {
        *evaluations += 1;
        let v = f(x)?;
        // Treat non-finite values as a wall.
        Ok(if v.is_finite() { v } else { f64::INFINITY })
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evaluations)?));
    for j in 0..dim {
        let mut x = x0.to_vec();
        x[j] += opts.steps[j];
        let v = eval(&x, &mut evaluations)?;
        simplex.push((x, v));
    }

    let spread = |s: &[(Vec<f64>, f64)]| -> f64 {
        let best = &s[0].0;
        s[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(best).zip(&opts.tolerances).map(|((a, b), t)| (a - b).abs() / t))
            .fold(0.0, f64::max)
    };

    for iteration in 0..opts.max_iterations {
        // Stable sort keeps the iteration order deterministic on ties.
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let size = spread(&simplex);
        if size <= 1.0 {
            let (x, value) = simplex.swap_remove(0);
            return Ok(Minimum { x, value, iterations: iteration, evaluations, simplex_size: size });
        }

        let worst = simplex[dim].clone();
        let centroid: Vec<f64> =
            (0..dim).map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64).collect();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };

        let xr = along(1.0);
        let fr = eval(&xr, &mut evaluations)?;
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = eval(&xe, &mut evaluations)?;
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        // outside contraction when the reflection helped at all, else inside
        let xc = along(if fr < worst.1 { 0.5 } else { -0.5 });
        let fc = eval(&xc, &mut evaluations)?;
        if fc < worst.1.min(fr) {
            simplex[dim] = (xc, fc);
            continue;
        }
        // shrink towards the best vertex
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
            let v = eval(&x, &mut evaluations)?;
            *vertex = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Err(Error::NotConverged {
        iterations: opts.max_iterations,
        best_point: simplex[0].0.clone(),
        best_value: simplex[0].1,
    })
}

/// Brent's minimization on `[lo, hi]`, absolute tolerance `tol` on the
/// abscissa. Returns `(x, f(x), evaluations)`.
#[allow(clippy::explicit_counter_loop)]
pub fn brent<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iterations: usize) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x = a + GOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    let mut evaluations = 1;

    for _ in 0..max_iterations {
        let m = 0.5 * (a + b);
        let tol1 = 1e-3 * f64::EPSILON.sqrt() * x.abs() + tol / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            return Ok((x, fx, evaluations));
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u)?;
        evaluations += 1;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::NotConverged { iterations: max_iterations, best_point: vec![x], best_value: fx })
}
