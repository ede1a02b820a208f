//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails if any
//! criterion fails, except those listed in `EXPECTED_FAILURES`, which are
//! still printed as FAIL and must keep failing.

use std::process::Command;
use std::time::{Duration, Instant};

use natstate_cli::commands::OptimizeReport;
use natstate_core::energy::{cluster_site_energy, energy_per_particle};
use natstate_core::lattice::build_cluster;
use natstate_core::model::{pair_energy, two_yukawa_fourier};
use natstate_core::observables::{branch_overlap, com_statistics, superposition_spread};
use natstate_core::oracle::{mc_pair_integral, radial_transform_check, rng_for, ExponentialDensity};
use natstate_core::selfgrav::{boson_energy, boson_solve, fermion_solve, fermion_tf_energy};
use natstate_core::{GravSystem, LatticeKind, OrbitalParams, QuadratureOptions, SolidModel, SuperpositionSpec};
use rand::Rng;

/// Criterion 6 asks for a log-log slope of exactly −3 for the boson χ, but
/// the closed form is g²/(N(N−1)²), whose fitted slope over N = 10²…10⁶ is
/// −3.00183. The solid and fermion parts hold to rounding.
const EXPECTED_FAILURES: &[u32] = &[6];

const SEED: u64 = 20_240_601;

struct Outcome {
    id: u32,
    passed: bool,
    detail: String,
}

fn report(id: u32, title: &str, passed: bool, detail: String) -> Outcome {
    println!("{} [{id:>2}] {title}: {detail}", if passed { "PASS" } else { "FAIL" });
    Outcome { id, passed, detail }
}

fn natstate(args: &[&str]) -> (Vec<u8>, Duration, bool) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_natstate")).args(args).output().expect("binary runs");
    (out.stdout, start.elapsed(), out.status.success())
}

fn rel(x: f64, r: f64) -> f64 {
    ((x - r) / r).abs()
}

fn slope(n: &[f64], y: &[f64]) -> f64 {
    let x: Vec<f64> = n.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = x.iter().sum::<f64>() / x.len() as f64;
    let my = ly.iter().sum::<f64>() / ly.len() as f64;
    let sxy: f64 = x.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn main() {
    let mut out = Vec::new();

    let (stdout, elapsed, ok) = natstate(&["optimize"]);
    let opt: Option<OptimizeReport> = if ok { serde_json::from_slice(&stdout).ok() } else { None };
    match &opt {
        Some(r) => {
            let dl = rel(r.lambda_star, 91.33);
            let dd = rel(r.d_star_angstrom, 3.953);
            out.push(report(
                1,
                "solid optimum",
                dl <= 1e-2 && dd <= 5e-3 && elapsed < Duration::from_secs(300),
                format!(
                    "lambda*={:.4}/sigma (dev {dl:.2e} <= 1e-2), d*={:.5} A (dev {dd:.2e} <= 5e-3), runtime {:.2}s",
                    r.lambda_star,
                    r.d_star_angstrom,
                    elapsed.as_secs_f64()
                ),
            ));
            let du = rel(r.u_cal_per_mole, -2690.0);
            out.push(report(
                2,
                "cohesive energy",
                du <= 1e-2,
                format!("U={:.2} cal/mole (dev {du:.2e} <= 1e-2)", r.u_cal_per_mole),
            ));
            let db = rel(r.b_kbar, 33.4);
            let rich = r.solution.bulk_modulus.map_or(f64::INFINITY, |b| b.relative_discrepancy);
            out.push(report(
                3,
                "bulk modulus",
                db <= 5e-2 && rich <= 1e-2,
                format!("B={:.3} kbar (dev {db:.2e} <= 5e-2), h vs h/2 discrepancy {rich:.2e} <= 1e-2", r.b_kbar),
            ));
            let ratio = r.same_site_ratio;
            out.push(report(
                4,
                "same-site penalty",
                r.same_site_w > 0.0 && (ratio / 1e7).log10().abs() <= 1.0,
                format!("W={:.4e} eps, W/|potential|={ratio:.4e} (within a decade of 1e7)", r.same_site_w),
            ));
        }
        None => {
            for (id, title) in
                [(1, "solid optimum"), (2, "cohesive energy"), (3, "bulk modulus"), (4, "same-site penalty")]
            {
                out.push(report(id, title, false, "optimize command failed".into()));
            }
        }
    }

    let mut rng = rng_for(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let lambda = 10f64.powf(rng.random_range(-2.0..4.0));
        let n = 10f64.powf(rng.random_range(0.0..25.0));
        let s = com_statistics(lambda, n).expect("valid inputs");
        worst = worst.max((s.product - 1.0 / 3f64.sqrt()).abs());
    }
    out.push(report(
        5,
        "uncertainty product",
        worst <= 1e-12,
        format!("max |product - 1/sqrt(3)| = {worst:.2e} over 100 draws"),
    ));

    let ns = [1e2, 1e3, 1e4, 1e5, 1e6];
    let sys = GravSystem::default();
    let solid: Vec<f64> = ns.iter().map(|&n| com_statistics(91.33, n).unwrap().chi).collect();
    let boson: Vec<f64> = ns.iter().map(|&n| boson_solve(n, &sys).unwrap().chi).collect();
    let fermion: Vec<f64> = ns.iter().map(|&n| fermion_solve(n, 2.0, 5.0, &sys).unwrap().chi).collect();
    let slopes = [(slope(&ns, &solid), -1.0), (slope(&ns, &boson), -3.0), (slope(&ns, &fermion), -5.0 / 3.0)];
    out.push(report(
        6,
        "scaling laws",
        slopes.iter().all(|(s, t)| (s - t).abs() <= 1e-9),
        format!(
            "slopes solid {:.12} (|d|={:.1e}), boson {:.12} (|d|={:.1e}), fermion {:.12} (|d|={:.1e}); tolerance 1e-9",
            slopes[0].0,
            (slopes[0].0 - slopes[0].1).abs(),
            slopes[1].0,
            (slopes[1].0 - slopes[1].1).abs(),
            slopes[2].0,
            (slopes[2].0 - slopes[2].1).abs()
        ),
    ));

    let model = SolidModel::krypton_fcc();
    let quad = QuadratureOptions::default();
    let mut max_se: f64 = 0.0;
    for i in 0..10 {
        let lambda = rng.random_range(50.0..150.0);
        let s = rng.random_range(0.95..2.0);
        let p = OrbitalParams::untruncated(lambda).unwrap();
        let d = ExponentialDensity::new(lambda).unwrap();
        let est = mc_pair_integral(&d, &d, |r| model.pot.potential(r), s, 1_000_000, SEED + i).unwrap();
        max_se = max_se.max(est.deviation(pair_energy(&p, &model.pot, s, &quad).unwrap()));
    }
    let mut max_rel: f64 = 0.0;
    for _ in 0..20 {
        let k = rng.random_range(0.0..50.0);
        let oracle =
            radial_transform_check(|r| model.pot.potential(r), k, 1.0 / model.pot.m, &quad.tightened(10.0)).unwrap();
        max_rel = max_rel.max(rel(two_yukawa_fourier(k, &model.pot).unwrap(), oracle));
    }
    out.push(report(
        7,
        "oracle equivalence",
        max_se <= 3.0 && max_rel <= 1e-9,
        format!("pair energy vs MC max {max_se:.2} SE (<= 3, 10 points x 1e6), Fourier max rel {max_rel:.2e} (<= 1e-9, 20 k)"),
    ));

    let points = match &opt {
        Some(r) => vec![(r.lambda_star, r.solution.d_star), (91.33, 3.953 / 3.6)],
        None => vec![(91.33, 3.953 / 3.6)],
    };
    let mut max_abs: f64 = 0.0;
    for (lambda, d) in points {
        let p = OrbitalParams::untruncated(lambda).unwrap();
        let cluster = build_cluster(LatticeKind::Fcc, d, 201).unwrap();
        let shells = model.shells(d).unwrap().truncated(10);
        let by_shell = energy_per_particle(&p, &model.pot, &shells, &model.units, &quad).unwrap().total;
        let by_pairs = cluster_site_energy(&p, &model.pot, &cluster, 0, &model.units, &quad).unwrap();
        max_abs = max_abs.max((by_shell - by_pairs).abs());
    }
    out.push(report(
        8,
        "cluster equivalence",
        max_abs <= 1e-8,
        format!("201-site cluster vs shell sum max |diff| = {max_abs:.2e} eps (<= 1e-8)"),
    ));

    let mut beta_dev: f64 = 0.0;
    let mut cert = true;
    for (kappa, mu, hbar, n) in
        [(1.0, 1.0, 1.0, 2.0), (0.3, 2.0, 0.7, 57.0), (6.674e-11, 1.0e-25, 1.054_571_817e-34, 1e6)]
    {
        let sys = GravSystem::new(kappa, mu, hbar).unwrap();
        let sol = boson_solve(n, &sys).unwrap();
        let analytic = 5.0 * kappa * mu * (n - 1.0) / (16.0 * hbar * hbar);
        beta_dev = beta_dev.max(rel(sol.beta_star, analytic));
        for k in [0.99, 1.01] {
            cert &= boson_energy(sol.beta_star * k, n, &sys).unwrap() > sol.energy;
        }
    }
    out.push(report(
        9,
        "boson closed form",
        beta_dev <= 1e-12 && cert,
        format!("max rel |beta* - analytic| = {beta_dev:.2e} (<= 1e-12), +-1% certificate {cert}"),
    ));

    let mut f_ok = true;
    let mut cert = true;
    let mut f_seen = Vec::new();
    for n in [2.0, 1e3, 1e9] {
        let sol = fermion_solve(n, 2.0, 5.0, &sys).unwrap();
        f_ok &= sol.f_factor > 0.1 && sol.f_factor < 10.0;
        f_seen.push(sol.f_factor);
        for k in [0.99, 1.01] {
            cert &= fermion_tf_energy(sol.gamma_star * k, n, 2.0, 5.0, &sys).unwrap() > sol.energy;
        }
    }
    out.push(report(
        10,
        "fermion factor",
        f_ok && cert,
        format!("f = {:.6} in (0.1, 10), +-1% certificate {cert}", f_seen[0]),
    ));

    let h = 0.5f64.sqrt();
    let (lambda, n, a) = (91.33, 1e4, 0.5);
    let chi = 4.0 / (lambda * lambda * n);
    let mut var_dev: f64 = 0.0;
    let mut overlap_zero = true;
    for l in [1.0 + 1e-9, 3.0, 1e3, 1e12] {
        let spec = SuperpositionSpec::new(vec![[-l / 2.0, 0.0, 0.0], [l / 2.0, 0.0, 0.0]], vec![h, h], a).unwrap();
        let v = superposition_spread(&spec, lambda, n).unwrap();
        var_dev = var_dev.max(rel(v[0], chi + l * l / 4.0));
        overlap_zero &= spec.branch_overlap(lambda).unwrap() == 0.0;
    }
    for s in [2.0 * a + 1e-12, 5.0, 17.0] {
        overlap_zero &= branch_overlap(&[[0.0; 3], [0.0, s, 0.0], [0.0, 2.0 * s, 1.0]], a, lambda).unwrap() == 0.0;
    }
    out.push(report(
        11,
        "superposition",
        var_dev <= 1e-15 && overlap_zero,
        format!("max rel |Var_x - (chi + L^2/4)| = {var_dev:.1e}, overlap zero beyond 2a: {overlap_zero}"),
    ));

    let dir = std::env::temp_dir().join(format!("natstate-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, format!(r#"{{"seed": {SEED}, "mc_samples": 20000}}"#)).unwrap();
    let cfg = cfg.to_str().unwrap();
    let runs: Vec<(Vec<u8>, bool)> = (0..2)
        .flat_map(|_| {
            [
                natstate(&["optimize", "--config", cfg]),
                natstate(&["observables", "--lambda", "91.33", "--N", "1e21", "--config", cfg]),
            ]
        })
        .map(|(o, _, ok)| (o, ok))
        .collect();
    let _ = std::fs::remove_dir_all(&dir);
    let identical = runs.iter().all(|r| r.1 && !r.0.is_empty()) && runs[0].0 == runs[2].0 && runs[1].0 == runs[3].0;
    out.push(report(
        12,
        "determinism",
        identical,
        format!("optimize and observables JSON byte-identical across two runs: {identical}"),
    ));

    let unexpected: Vec<&Outcome> = out.iter().filter(|o| o.passed == EXPECTED_FAILURES.contains(&o.id)).collect();
    let passed = out.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed; expected failures: {EXPECTED_FAILURES:?}", out.len());
    if !unexpected.is_empty() {
        for o in unexpected {
            let what = if o.passed { "unexpectedly passed" } else { "failed" };
            eprintln!("criterion {} {what}: {}", o.id, o.detail);
        }
        std::process::exit(1);
    }
}
