//! Acceptance gate: twelve numbered end-to-end checks covering generation,
//! measurement, optimization, export, and the experiment harness. Each test
//! prints one `[criterion NN] PASS/FAIL` line (visible with `--nocapture`,
//! and on failure); the test name itself carries the criterion number, so
//! the default `cargo test` output also reads as one line per criterion.
//!
//! The two 10⁵-point greedy runs are shared between criteria through lazy
//! statics, so the whole gate runs in a few minutes on one core.

use std::collections::BTreeSet;

use once_cell::sync::Lazy;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lowdisc::discrepancy::{l2_star_warnock, linf_star_exact, linf_star_sampled};
use lowdisc::functional::{cell_containing, functional_nd, gradient_nd, FunctionalContext};
use lowdisc::greedy1d::{generate_1d, next_point_bruteforce, next_point_sweep, SortedSet1D};
use lowdisc::nlp::{build_model, canonical_assignment, check_solution};
use lowdisc::optim::{descend_from, minimize_grid, DescentParams, Method, OptimizerConfig};
use lowdisc::points::validate_point_set;
use lowdisc::sequences::{kronecker, sobol, KroneckerSpec, SobolSpec};
use lowdisc::PointSet;
use lowdisc_cli::harness::{bad_init_points, nd_experiment, scaled_value};

const N_LONG: usize = 100_000;

/// Greedy 1-D run from the single start 0.5, shared by criteria 2, 4, 5.
static KRITZ_HALF: Lazy<PointSet> =
    Lazy::new(|| generate_1d(&PointSet::from_coords_1d(&[0.5]), N_LONG - 1).unwrap());

/// Greedy 1-D run from the clustered 100-point set, shared by criteria 2, 3.
static BAD_SET: Lazy<PointSet> = Lazy::new(|| {
    generate_1d(&PointSet::from_coords_1d(&bad_init_points()), N_LONG - 100).unwrap()
});

fn verdict(id: u32, pass: bool, detail: &str) {
    println!(
        "[criterion {id:02}] {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "[criterion {id:02}] FAIL: {detail}");
}

#[test]
fn criterion_01_sweep_matches_bruteforce_oracle() {
    let mut set = SortedSet1D::from_points(&PointSet::from_coords_1d(&[0.5])).unwrap();
    let mut mismatches = 0usize;
    for _ in 0..2000 {
        let (fast, _) = next_point_sweep(&set).unwrap();
        let (slow, _) = next_point_bruteforce(&set).unwrap();
        if fast.numerator() != slow.numerator() || fast.denominator() != slow.denominator() {
            mismatches += 1;
        }
        set.insert(fast.value()).unwrap();
    }
    verdict(
        1,
        mismatches == 0,
        &format!("sweep vs brute-force candidate choice over 2000 steps: {mismatches} mismatches"),
    );
}

/// Every point appended after the initial set must be an exact member of the
/// candidate set for its step — value (2i+1)/(2(n+1)) with n the size before
/// insertion — and all values must be pairwise distinct.
fn candidate_membership_violations(ps: &PointSet, init_len: usize) -> usize {
    let mut violations = 0usize;
    let mut seen = BTreeSet::new();
    for (i, p) in ps.points().iter().enumerate() {
        let v = p.coords[0];
        if !seen.insert(v.to_bits()) {
            violations += 1;
        }
        if i < init_len {
            continue;
        }
        let den = 2 * (i as u64 + 1);
        let num = (v * den as f64).round() as u64;
        let member = num % 2 == 1 && num < den && num as f64 / den as f64 == v;
        if !member {
            violations += 1;
        }
    }
    violations
}

#[test]
fn criterion_02_all_points_stay_in_the_candidate_set() {
    let mut total = 0usize;
    let mut details = Vec::new();
    for (label, init_len, points) in [
        ("0.5", 1usize, &*KRITZ_HALF),
        ("0", 1, &generate_1d(&PointSet::from_coords_1d(&[0.0]), N_LONG - 1).unwrap()),
        (
            "0.9999",
            1,
            &generate_1d(&PointSet::from_coords_1d(&[0.9999]), N_LONG - 1).unwrap(),
        ),
        ("bad-set", 100, &*BAD_SET),
    ] {
        assert_eq!(points.len(), N_LONG);
        let v = candidate_membership_violations(points, init_len);
        total += v;
        details.push(format!("init {label}: {v}"));
    }
    verdict(
        2,
        total == 0,
        &format!(
            "candidate-set membership and distinctness to n=10^5 ({})",
            details.join(", ")
        ),
    );
}

#[test]
fn criterion_03_clustered_init_recovers_to_the_known_level() {
    let d7000 = linf_star_exact(&BAD_SET.prefix(7000)).unwrap().value;
    let anchor = 0.00438;
    let pass = (d7000 - anchor).abs() <= 0.05 * anchor && d7000 >= 0.00428;
    verdict(
        3,
        pass,
        &format!("clustered-init L∞ at n=7000: {d7000:.10} (anchor {anchor} ± 5%, floor 0.00428)"),
    );
}

fn kron_100k() -> PointSet {
    kronecker(&KroneckerSpec::default(), N_LONG).unwrap()
}

fn exact_at_checkpoints(ps: &PointSet) -> Vec<(usize, f64)> {
    (1..=N_LONG / 1000)
        .map(|k| {
            let n = k * 1000;
            (n, linf_star_exact(&ps.prefix(n)).unwrap().value)
        })
        .collect()
}

#[test]
fn criterion_04_win_proportion_against_kronecker() {
    let kritz = exact_at_checkpoints(&KRITZ_HALF);
    let kron = exact_at_checkpoints(&kron_100k());
    let mut score = 0.0f64;
    for ((_, dk), (_, dg)) in kritz.iter().zip(&kron) {
        score += if dg < dk {
            1.0
        } else if dg == dk {
            0.5
        } else {
            0.0
        };
    }
    let prop = score / kritz.len() as f64;
    let pass = (prop - 0.35).abs() <= 0.10;
    verdict(
        4,
        pass,
        &format!(
            "Kronecker win proportion over 100 checkpoints: {prop:.4} (required 0.35 ± 0.10)"
        ),
    );
}

#[test]
fn criterion_05_scaled_trace_band_and_mean_ordering() {
    let kritz = exact_at_checkpoints(&KRITZ_HALF);
    let kron = exact_at_checkpoints(&kron_100k());
    let scale = |t: &[(usize, f64)]| -> Vec<f64> {
        t.iter().map(|&(n, raw)| scaled_value(n, raw, 1.0)).collect()
    };
    let sk = scale(&kritz);
    let sg = scale(&kron);
    let in_band = sk.iter().all(|&v| v > 0.05 && v < 0.5);
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let mk = mean(&sk);
    let mg = mean(&sg);
    let pass = in_band && mk < mg;
    verdict(
        5,
        pass,
        &format!(
            "greedy scaled trace in (0.05, 0.5): {in_band}; means greedy {mk:.5} < kronecker {mg:.5}: {}",
            mk < mg
        ),
    );
}

#[test]
fn criterion_06_warnock_matches_monte_carlo() {
    // Anchors first.
    let a1 = l2_star_warnock(&PointSet::from_coords_1d(&[0.5])).unwrap().value;
    let a2 = l2_star_warnock(&PointSet::from_rows(2, vec![vec![0.5, 0.5]]).unwrap())
        .unwrap()
        .value;
    let anchors_ok = (a1 - 1.0 / 12.0).abs() <= 1e-12 && (a2 - 23.0 / 288.0).abs() <= 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 1_000_000usize;
    let mut failures = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let d = rng.random_range(1..=3usize);
        let n = rng.random_range(1..=50usize);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random::<f64>()).collect())
            .collect();
        let ps = PointSet::from_rows(d, rows).unwrap();
        let w = l2_star_warnock(&ps).unwrap().value;
        // Welford mean/variance of the squared local discrepancy at uniform
        // box corners.
        let mut mean = 0.0f64;
        let mut m2 = 0.0f64;
        let mut z = [0.0f64; 3];
        for i in 1..=samples {
            for zk in z.iter_mut().take(d) {
                *zk = rng.random::<f64>();
            }
            let mut count = 0usize;
            'points: for p in ps.points() {
                for k in 0..d {
                    if p.coords[k] >= z[k] {
                        continue 'points;
                    }
                }
                count += 1;
            }
            let vol: f64 = z.iter().take(d).product();
            let g = (count as f64 / n as f64 - vol).powi(2);
            let delta = g - mean;
            mean += delta / i as f64;
            m2 += delta * (g - mean);
        }
        let se = (m2 / (samples as f64 - 1.0) / samples as f64).sqrt();
        let dev = (w - mean).abs() / se;
        worst = worst.max(dev);
        if dev > 3.0 {
            failures += 1;
        }
    }
    verdict(
        6,
        anchors_ok && failures == 0,
        &format!(
            "anchors 1/12 and 23/288 within 1e-12: {anchors_ok}; Monte-Carlo deviations > 3 SE: \
             {failures}/100 (worst {worst:.2} SE)"
        ),
    );
}

#[test]
fn criterion_07_exact_linf_dominates_the_sampled_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let m = 400usize;
    let mut violations = 0usize;
    for trial in 0..100 {
        let d = 2 + trial % 2;
        let n = rng.random_range(1..=20usize);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random::<f64>()).collect())
            .collect();
        let ps = PointSet::from_rows(d, rows).unwrap();
        let exact = linf_star_exact(&ps).unwrap().value;
        let lower = linf_star_sampled(&ps, m).unwrap().value;
        if !(lower <= exact && exact - lower <= d as f64 / m as f64) {
            violations += 1;
        }
    }
    verdict(
        7,
        violations == 0,
        &format!(
            "exact ≥ sampled(m={m}) with gap ≤ d/m on 100 random sets (d alternating 2/3): \
             {violations} violations"
        ),
    );
}

#[test]
fn criterion_08_gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let h = 1e-6;
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    while checked < 100 {
        let d = 2 + checked % 2;
        let n = rng.random_range(0..=8usize);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random::<f64>()).collect())
            .collect();
        let ctx =
            FunctionalContext::from_points(&PointSet::from_rows(d, rows).unwrap()).unwrap();
        let y: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        let cell = cell_containing(&ctx, &y).unwrap();
        // Keep the difference stencil strictly inside the cell.
        if y.iter()
            .zip(cell.lo.iter().zip(&cell.hi))
            .any(|(&c, (&lo, &hi))| c - 2.0 * h <= lo || c + 2.0 * h >= hi)
        {
            continue;
        }
        let g = gradient_nd(&ctx, &y, &cell).unwrap();
        for m in 0..d {
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[m] += h;
            ym[m] -= h;
            let fd = (functional_nd(&ctx, &yp).unwrap() - functional_nd(&ctx, &ym).unwrap())
                / (2.0 * h);
            let rel = (g[m] - fd).abs() / g[m].abs().max(1e-3);
            worst = worst.max(rel);
        }
        checked += 1;
    }
    verdict(
        8,
        worst < 1e-5,
        &format!("analytic vs central-difference gradient at 100 cell-interior points: worst relative error {worst:.2e}"),
    );
}

#[test]
fn criterion_09_first_2d_point_is_the_golden_minimizer() {
    let ctx = FunctionalContext::from_points(&PointSet::new(2).unwrap()).unwrap();
    let grid_cfg = OptimizerConfig {
        method: Method::Grid,
        grid_resolution: 2000,
        budget: 5_000_000,
        ..Default::default()
    };
    let coarse = minimize_grid(&ctx, &grid_cfg).unwrap();
    let refined = descend_from(&ctx, &coarse.point, &DescentParams::default()).unwrap();
    // Positive root of t² + t − 1 = 0.
    let t = (5.0f64.sqrt() - 1.0) / 2.0;
    let ok = refined
        .point
        .iter()
        .all(|&c| (c - t).abs() <= 1e-3 && (c - 0.6180).abs() <= 1e-3);
    verdict(
        9,
        ok && refined.converged,
        &format!(
            "grid(m=2000)+descent minimizer ({:.7}, {:.7}) vs ({t:.7}, {t:.7}) ± 0.001",
            refined.point[0], refined.point[1]
        ),
    );
}

#[test]
fn criterion_10_heuristic_2d_run_is_competitive_with_sobol() {
    let cfg = OptimizerConfig {
        method: Method::Random,
        budget: 10_000,
        seed: 0,
        ..Default::default()
    };
    let result = nd_experiment(2, &cfg, 500, 10, 1.0, None).unwrap();
    let mut max_ratio = 0.0f64;
    let mut at_n = 0usize;
    for (k, s) in result.kritzinger.iter().zip(&result.sobol) {
        assert_eq!(k.n, s.n);
        if k.n < 100 {
            continue;
        }
        let ratio = k.raw / s.raw;
        if ratio > max_ratio {
            max_ratio = ratio;
            at_n = k.n;
        }
    }
    verdict(
        10,
        max_ratio <= 1.6,
        &format!(
            "greedy-2D (random heuristic, budget 10^4, seed 0) vs Sobol, N=500: \
             max L∞ ratio {max_ratio:.4} at n={at_n} (limit 1.6)"
        ),
    );
}

#[test]
fn criterion_11_nd_functional_argmin_agrees_with_the_sweep() {
    // At d = 1 the general functional equals the sweep's objective plus the
    // constant n, so the two argmins coincide in exact arithmetic. Exact
    // rational ties between adjacent candidates do occur along this run
    // (e.g. at steps 218, 238, 358); the sweep's contract breaks them toward
    // the smaller y, and this side must do the same. Because the functional
    // here is assembled from n terms of order one, its rounding noise is a
    // few ulps *of n* (about 7 ulps observed at the exact ties), not of the
    // O(1) result; the tie window below covers that. The verdict is the same
    // for any window from 8 to 256 ulps of (n+1), so the constant is not
    // load-bearing.
    let tie_window_ulps = 32.0;
    let mut set = SortedSet1D::from_points(&PointSet::from_coords_1d(&[0.5])).unwrap();
    let mut mismatches = 0usize;
    let mut values = Vec::new();
    for _ in 0..500 {
        let (fast, _) = next_point_sweep(&set).unwrap();
        let n = set.len();
        let ctx =
            FunctionalContext::from_points(&PointSet::from_coords_1d(set.values())).unwrap();
        let den = 2 * (n as u64 + 1);
        values.clear();
        for i in 0..=n as u64 {
            let y = (2 * i + 1) as f64 / den as f64;
            values.push(functional_nd(&ctx, &[y]).unwrap());
        }
        let fmin = values.iter().copied().fold(f64::INFINITY, f64::min);
        let tol = tie_window_ulps * f64::EPSILON * (n as f64 + 1.0);
        let chosen = values.iter().position(|&f| f <= fmin + tol).unwrap() as u64;
        if chosen != fast.index() {
            mismatches += 1;
        }
        set.insert(fast.value()).unwrap();
    }
    verdict(
        11,
        mismatches == 0,
        &format!(
            "argmin of the d-dimensional functional at d=1 vs the sweep over 500 steps: \
             {mismatches} mismatches"
        ),
    );
}

#[test]
fn criterion_12_model_export_counts_and_feasible_candidate() {
    let mut counts_ok = true;
    let mut details = Vec::new();
    for n in [0usize, 1, 10] {
        let ps = if n == 1 {
            PointSet::from_rows(2, vec![vec![0.5, 0.5]]).unwrap()
        } else {
            sobol(&SobolSpec::new(2).unwrap(), n).unwrap()
        };
        let m = build_model(&ps).unwrap();
        let binaries = m.vars.iter().filter(|v| v.binary).count();
        let fixing = m
            .constraints
            .iter()
            .filter(|c| c.name.starts_with("fix_"))
            .count();
        let ok = binaries == 2 * n && m.constraints.len() == 8 * n + 3 && fixing == 2 * n;
        counts_ok &= ok;
        details.push(format!(
            "n={n}: {binaries} binaries, {} constraints ({fixing} fixing)",
            m.constraints.len()
        ));
    }

    let model = build_model(&PointSet::new(2).unwrap()).unwrap();
    let y = 0.618034f64;
    let assignment = canonical_assignment(&model, &[y, y]).unwrap();
    let report = check_solution(&model, &assignment).unwrap();
    // Oracle: −(1/2)(1−y²)² + (1−y)² at y = 0.618034.
    let oracle = -0.045084971874737007f64;
    let candidate_ok =
        report.max_violation <= 1e-9 && (report.objective - oracle).abs() <= 1e-6;
    verdict(
        12,
        counts_ok && candidate_ok,
        &format!(
            "{}; n=0 candidate at ({y}, {y}): violation {:.2e}, objective {:.15} vs oracle {oracle:.15}",
            details.join("; "),
            report.max_violation,
            report.objective
        ),
    );
}

#[test]
fn generated_sets_validate_globally() {
    // Not one of the numbered criteria: a cheap guard that the shared
    // fixtures are well-formed [0,1) sets (criteria 2-5 build on them).
    assert!(validate_point_set(&KRITZ_HALF).is_empty());
    assert!(validate_point_set(&BAD_SET).is_empty());
}
