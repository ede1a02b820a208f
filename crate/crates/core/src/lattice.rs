//! Neighbor shells and finite clusters of Bravais lattices.
//!
//! Enumeration is brute force over integer combinations of the primitive
//! vectors. The search box along each primitive direction is bounded with the
//! reciprocal vectors, `|n_i| <= R |b_i| / 2π`, so no lattice point within the
//! requested radius is ever missed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

/// Relative tolerance used to decide that two squared distances belong to
/// the same shell.
const SHELL_MERGE_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Fcc,
}

impl LatticeKind {
    /// Primitive vectors for nearest-neighbor distance `d`.
    pub fn primitive_vectors(self, d: f64) -> [Vec3; 3] {
        match self {
            LatticeKind::Fcc => {
                let h = d / std::f64::consts::SQRT_2;
                [[0.0, h, h], [h, 0.0, h], [h, h, 0.0]]
            }
        }
    }

    /// Volume per lattice site for nearest-neighbor distance `d`.
    pub fn volume_per_site(self, d: f64) -> f64 {
        let [a, b, c] = self.primitive_vectors(d);
        dot(a, cross(b, c)).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    pub distance: f64,
    pub coordination: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeShells {
    pub kind: LatticeKind,
    pub spacing_d: f64,
    pub shells: Vec<Shell>,
}

impl LatticeShells {
    /// Total number of neighbors over all shells.
    pub fn neighbor_count(&self) -> usize {
        self.shells.iter().map(|s| s.coordination).sum()
    }

    pub fn max_distance(&self) -> f64 {
        self.shells.last().map_or(0.0, |s| s.distance)
    }

    /// The same shell structure at a different spacing. Shell radii scale
    /// linearly with `d` and the coordination numbers do not change.
    pub fn rescaled(&self, d: f64) -> Result<Self> {
        check_spacing(d)?;
        let f = d / self.spacing_d;
        Ok(LatticeShells {
            kind: self.kind,
            spacing_d: d,
            shells: self
                .shells
                .iter()
                .map(|s| Shell { distance: s.distance * f, coordination: s.coordination })
                .collect(),
        })
    }

    /// Keeps only the first `count` shells.
    pub fn truncated(&self, count: usize) -> Self {
        LatticeShells {
            kind: self.kind,
            spacing_d: self.spacing_d,
            shells: self.shells.iter().take(count).copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub kind: LatticeKind,
    pub spacing_d: f64,
    /// Site positions after centering. `sites[0]` is the site that sat at the
    /// lattice origin before centering.
    pub sites: Vec<Vec3>,
    pub count_n: usize,
}

impl Cluster {
    pub fn centroid(&self) -> Vec3 {
        centroid(&self.sites)
    }

    pub fn min_pair_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.sites.iter().enumerate() {
            for b in &self.sites[i + 1..] {
                best = best.min(norm(sub(*a, *b)));
            }
        }
        best
    }
}

/// All distinct neighbor distances up to `max_distance` with exact
/// coordination counts.
pub fn enumerate_shells(kind: LatticeKind, d: f64, max_distance: f64) -> Result<LatticeShells> {
    check_spacing(d)?;
    if !(max_distance >= d) {
        return Err(Error::invalid(format!("max_distance ({max_distance}) must be at least the spacing ({d})")));
    }
    let mut d2: Vec<f64> =
        lattice_points_within(kind, d, max_distance).into_iter().map(norm2).filter(|&r2| r2 > 0.0).collect();
    d2.sort_by(f64::total_cmp);

    let mut shells: Vec<(f64, usize)> = Vec::new();
    for r2 in d2 {
        match shells.last_mut() {
            Some((s2, c)) if (r2 - *s2) <= SHELL_MERGE_RTOL * *s2 => *c += 1,
            _ => shells.push((r2, 1)),
        }
    }
    Ok(LatticeShells {
        kind,
        spacing_d: d,
        shells: shells.into_iter().map(|(r2, c)| Shell { distance: r2.sqrt(), coordination: c }).collect(),
    })
}

/// The `n` lattice sites closest to the origin, ties broken lexicographically
/// on (x, y, z), translated so their centroid is zero.
pub fn build_cluster(kind: LatticeKind, d: f64, n: usize) -> Result<Cluster> {
    check_spacing(d)?;
    if n == 0 {
        return Err(Error::invalid("cluster size must be at least 1"));
    }
    // Sphere holding roughly n sites, padded by a few spacings.
    let mut radius = (3.0 * n as f64 * kind.volume_per_site(d) / (4.0 * std::f64::consts::PI)).cbrt() + 2.0 * d;
    let mut points = loop {
        let pts = lattice_points_within(kind, d, radius);
        if pts.len() > n {
            break pts;
        }
        radius *= 1.5;
    };

    // Shell index as sort key so equal distances compare exactly equal.
    let mut radii: Vec<f64> = points.iter().map(|&p| norm2(p)).collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup_by(|b, a| (*b - *a) <= SHELL_MERGE_RTOL * a.max(d * d));
    let shell_of = |p: Vec3| radii.partition_point(|&s| s < norm2(p) * (1.0 - SHELL_MERGE_RTOL));
    points.sort_by(|&a, &b| {
        shell_of(a)
            .cmp(&shell_of(b))
            .then(a[0].total_cmp(&b[0]))
            .then(a[1].total_cmp(&b[1]))
            .then(a[2].total_cmp(&b[2]))
    });
    points.truncate(n);

    // The origin itself is the unique closest point, keep it first.
    debug_assert!(norm2(points[0]) == 0.0);
    let c = centroid(&points);
    let sites: Vec<Vec3> = points.into_iter().map(|p| sub(p, c)).collect();
    Ok(Cluster { kind, spacing_d: d, count_n: sites.len(), sites })
}

/// Every lattice point (including the origin) with |x| <= radius.
pub fn lattice_points_within(kind: LatticeKind, d: f64, radius: f64) -> Vec<Vec3> {
    let a = kind.primitive_vectors(d);
    let vol = dot(a[0], cross(a[1], a[2]));
    // |b_i| / 2π = |a_j × a_k| / V
    let bound = |j: usize, k: usize| -> i64 { (radius * norm(cross(a[j], a[k])) / vol.abs()).ceil() as i64 + 1 };
    let (m0, m1, m2) = (bound(1, 2), bound(2, 0), bound(0, 1));
    let r2max = radius * radius * (1.0 + 1e-12);
    let mut out = Vec::new();
    for i in -m0..=m0 {
        for j in -m1..=m1 {
            for k in -m2..=m2 {
                let (fi, fj, fk) = (i as f64, j as f64, k as f64);
                let p = [
                    fi * a[0][0] + fj * a[1][0] + fk * a[2][0],
                    fi * a[0][1] + fj * a[1][1] + fk * a[2][1],
                    fi * a[0][2] + fj * a[1][2] + fk * a[2][2],
                ];
                if norm2(p) <= r2max {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn check_spacing(d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("lattice spacing must be positive, got {d}")))
    }
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm2(a: Vec3) -> f64 {
    dot(a, a)
}

pub(crate) fn norm(a: Vec3) -> f64 {
    norm2(a).sqrt()
}

pub(crate) fn centroid(points: &[Vec3]) -> Vec3 {
    let n = points.len() as f64;
    let mut c = [0.0; 3];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    c.map(|x| x / n)
}
