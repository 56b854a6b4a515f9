//! Heuristic minimizers of the d-dimensional greedy objective, and the
//! greedy generator for d = 2, 3 built on top of them.
//!
//! The objective is piecewise polynomial over the cell decomposition of
//! [`crate::functional`], so the descent method works cell-locally: projected
//! gradient steps with backtracking inside the current cell, clamping at cell
//! faces, and a bounded number of hops to the adjacent cell when the gradient
//! pushes through a face. Random search and midpoint-grid search provide
//! derivative-free baselines; multistart combines the grid starts with seeded
//! random starts.
//!
//! All methods are deterministic given the configuration (seeded generators,
//! fixed iteration orders) and break exact value ties toward the
//! lexicographically smallest point.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::functional::{
    cell_containing, cell_from_indices, functional_in_cell, functional_nd, gradient_in_cell, Cell,
    FunctionalContext,
};
use crate::points::{require_valid, Point, PointSet};
use crate::{Error, Result};

/// Minimization strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Uniform random draws, best of `budget`.
    Random,
    /// Exhaustive midpoint lattice `((2j+1)/(2m))^d`.
    Grid,
    /// Cell-restricted projected gradient descent from a coarse lattice of
    /// starts.
    GradDesc,
    /// Gradient descent from the coarse lattice plus seeded random starts.
    MultiStart,
}

/// Line-search and termination parameters for the descent methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentParams {
    /// Initial step length per line search.
    pub init_step: f64,
    /// Backtracking factor in (0,1).
    pub shrink: f64,
    /// Maximum descent iterations per start.
    pub max_iters: u32,
    /// Gradient-norm threshold declaring convergence.
    pub grad_tol: f64,
}

impl Default for DescentParams {
    fn default() -> Self {
        DescentParams {
            init_step: 0.1,
            shrink: 0.5,
            max_iters: 500,
            grad_tol: 1e-9,
        }
    }
}

/// Full optimizer configuration. `grid_resolution` is the per-axis lattice
/// size of [`Method::Grid`]; the descent methods always start from a fixed
/// 4-per-axis midpoint lattice. `budget` caps function evaluations for every
/// method (and is the draw count for [`Method::Random`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub method: Method,
    pub budget: u64,
    pub grid_resolution: usize,
    pub seed: u64,
    pub descent: DescentParams,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            method: Method::Random,
            budget: 10_000,
            grid_resolution: 100,
            seed: 0,
            descent: DescentParams::default(),
        }
    }
}

/// Starts per axis for the descent methods' coarse start lattice.
const DESCENT_STARTS_PER_AXIS: usize = 4;
/// Random starts added by [`Method::MultiStart`].
const MULTISTART_RANDOM_STARTS: usize = 8;

/// Result of a minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    /// For descent methods: the winning start met the gradient tolerance or
    /// reached a point admitting no further descent. Always true for the
    /// exhaustive methods.
    pub converged: bool,
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Tracks the best (value, point) seen, breaking exact ties toward the
/// lexicographically smaller point.
struct Best {
    value: f64,
    point: Vec<f64>,
    converged: bool,
}

impl Best {
    fn new() -> Self {
        Best {
            value: f64::INFINITY,
            point: Vec::new(),
            converged: false,
        }
    }

    fn offer(&mut self, value: f64, point: &[f64], converged: bool) {
        if value < self.value || (value == self.value && lex_less(point, &self.point)) {
            self.value = value;
            self.point = point.to_vec();
            self.converged = converged;
        }
    }

    fn into_minimum(self) -> Result<Minimum> {
        if !self.value.is_finite() {
            return Err(Error::Internal("minimizer saw no candidates".into()));
        }
        Ok(Minimum {
            point: self.point,
            value: self.value,
            converged: self.converged,
        })
    }
}

/// Best of `budget` uniform draws. Draws are made coordinate-by-coordinate in
/// point order from a ChaCha8 stream seeded with `cfg.seed`, so a larger
/// budget extends (never reshuffles) a smaller one.
pub fn minimize_random(ctx: &FunctionalContext, cfg: &OptimizerConfig) -> Result<Minimum> {
    if cfg.budget == 0 {
        return Err(Error::domain("budget must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let d = ctx.dim();
    let mut best = Best::new();
    let mut y = vec![0.0f64; d];
    for _ in 0..cfg.budget {
        for c in y.iter_mut() {
            *c = rng.random::<f64>();
        }
        let f = functional_nd(ctx, &y)?;
        best.offer(f, &y, true);
    }
    best.into_minimum()
}

/// Exhaustive search over the midpoint lattice `(2j+1)/(2m)` per axis.
/// Rejects `m^d > budget`. Ties (within 4 ulps of the exact lattice minimum)
/// break toward the lexicographically smallest point, mirroring the 1-D
/// sweep's leftmost rule.
pub fn minimize_grid(ctx: &FunctionalContext, cfg: &OptimizerConfig) -> Result<Minimum> {
    let m = cfg.grid_resolution;
    let d = ctx.dim();
    if m == 0 {
        return Err(Error::domain("grid resolution must be at least 1"));
    }
    let cells = (m as u64)
        .checked_pow(d as u32)
        .filter(|&c| c <= cfg.budget)
        .ok_or_else(|| {
            Error::domain(format!(
                "grid of {m}^{d} points exceeds the evaluation budget {}",
                cfg.budget
            ))
        })?;
    let axis: Vec<f64> = (0..m).map(|j| (2 * j + 1) as f64 / (2 * m) as f64).collect();
    let point_at = |lin: u64| -> Vec<f64> {
        let mut rem = lin;
        let mut idx = vec![0usize; d];
        for k in (0..d).rev() {
            idx[k] = (rem % m as u64) as usize;
            rem /= m as u64;
        }
        idx.iter().map(|&j| axis[j]).collect()
    };
    let mut fmin = f64::INFINITY;
    for lin in 0..cells {
        fmin = fmin.min(functional_nd(ctx, &point_at(lin))?);
    }
    let tol = 4.0 * f64::EPSILON * fmin.abs();
    for lin in 0..cells {
        let y = point_at(lin);
        let f = functional_nd(ctx, &y)?;
        if f <= fmin + tol {
            return Ok(Minimum {
                point: y,
                value: f,
                converged: true,
            });
        }
    }
    Err(Error::Internal("grid minimum vanished between passes".into()))
}

/// Nudges a point off the faces of `cell` so the cell gradient is defined
/// and the point stays inside the domain [0,1)^d.
fn interiorize(y: &mut [f64], cell: &Cell) {
    for k in 0..y.len() {
        let w = cell.hi[k] - cell.lo[k];
        let eps = w * 1e-12;
        y[k] = y[k].clamp(cell.lo[k] + eps, cell.hi[k] - eps);
    }
}

struct DescentOutcome {
    point: Vec<f64>,
    value: f64,
    converged: bool,
    evals: u64,
}

/// Projected gradient descent restricted to the cell decomposition: steps
/// clamp at the current cell's faces; when no in-cell descent remains and the
/// gradient pushes through a face, the search hops to the neighboring cell
/// (at most `4·d` hops when `allow_hops`).
fn descend_inner(
    ctx: &FunctionalContext,
    start: &[f64],
    params: &DescentParams,
    allow_hops: bool,
    cell: Option<Cell>,
) -> Result<DescentOutcome> {
    if !(0.0 < params.shrink && params.shrink < 1.0) {
        return Err(Error::domain(format!(
            "shrink factor must lie in (0,1), got {}",
            params.shrink
        )));
    }
    if !(params.init_step > 0.0) || !(params.grad_tol > 0.0) {
        return Err(Error::domain("init_step and grad_tol must be positive"));
    }
    let d = ctx.dim();
    let mut y = start.to_vec();
    let mut cell = match cell {
        Some(c) => c,
        None => cell_containing(ctx, &y)?,
    };
    interiorize(&mut y, &cell);
    let mut f = functional_in_cell(ctx, &y, &cell)?;
    let mut evals = 1u64;
    let hop_budget = 4 * d;
    let mut hops = 0usize;
    let mut converged = false;

    for _ in 0..params.max_iters {
        let g = gradient_in_cell(ctx, &y, &cell);
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm < params.grad_tol {
            converged = true;
            break;
        }
        // Backtracking line search on the projected step.
        let mut step = params.init_step;
        let mut moved = false;
        while step * gnorm > 1e-18 {
            let mut cand = vec![0.0f64; d];
            for k in 0..d {
                let upper = if cell.hi[k] < 1.0 {
                    cell.hi[k]
                } else {
                    1.0 - f64::EPSILON / 2.0
                };
                cand[k] = (y[k] - step * g[k]).clamp(cell.lo[k], upper);
            }
            // Predicted decrease of the projected move (Armijo condition).
            let desc: f64 = g
                .iter()
                .zip(y.iter().zip(&cand))
                .map(|(gk, (yk, ck))| gk * (yk - ck))
                .sum();
            if desc <= 0.0 {
                break;
            }
            let fc = functional_in_cell(ctx, &cand, &cell)?;
            evals += 1;
            if fc <= f - 1e-4 * desc {
                y = cand;
                f = fc;
                moved = true;
                break;
            }
            step *= params.shrink;
        }
        if moved {
            continue;
        }
        // No in-cell descent remains. Hop through any face the gradient
        // pushes through; otherwise we are at a constrained minimum.
        let mut next_index = cell.index.clone();
        let mut wants_hop = false;
        for k in 0..d {
            if y[k] == cell.lo[k] && g[k] > 0.0 && cell.index[k] > 0 {
                next_index[k] -= 1;
                wants_hop = true;
            } else if y[k] == cell.hi[k]
                && g[k] < 0.0
                && cell.index[k] + 2 < ctx.boundaries()[k].len()
            {
                next_index[k] += 1;
                wants_hop = true;
            }
        }
        if allow_hops && wants_hop && hops < hop_budget {
            hops += 1;
            cell = cell_from_indices(ctx, &next_index)?;
            interiorize(&mut y, &cell);
            f = functional_in_cell(ctx, &y, &cell)?;
            evals += 1;
            continue;
        }
        converged = true;
        break;
    }
    Ok(DescentOutcome {
        point: y,
        value: f,
        converged,
        evals,
    })
}

/// Runs the cell-restricted descent from an arbitrary start in [0,1)^d.
/// Useful for refining a grid result.
pub fn descend_from(
    ctx: &FunctionalContext,
    start: &[f64],
    params: &DescentParams,
) -> Result<Minimum> {
    let out = descend_inner(ctx, start, params, true, None)?;
    Ok(Minimum {
        point: out.point,
        value: out.value,
        converged: out.converged,
    })
}

fn midpoint_lattice_starts(d: usize, per_axis: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..per_axis)
        .map(|j| (2 * j + 1) as f64 / (2 * per_axis) as f64)
        .collect();
    let mut starts = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::with_capacity(starts.len() * per_axis);
        for s in &starts {
            for &v in &axis {
                let mut s2 = s.clone();
                s2.push(v);
                next.push(s2);
            }
        }
        starts = next;
    }
    starts
}

fn minimize_descent_family(
    ctx: &FunctionalContext,
    cfg: &OptimizerConfig,
    extra_random_starts: usize,
) -> Result<Minimum> {
    if cfg.budget == 0 {
        return Err(Error::domain("budget must be at least 1"));
    }
    let d = ctx.dim();
    let mut starts = midpoint_lattice_starts(d, DESCENT_STARTS_PER_AXIS);
    if extra_random_starts > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..extra_random_starts {
            starts.push((0..d).map(|_| rng.random::<f64>()).collect());
        }
    }
    let mut best = Best::new();
    let mut evals = 0u64;
    for start in &starts {
        if evals >= cfg.budget {
            break;
        }
        let out = descend_inner(ctx, start, &cfg.descent, true, None)?;
        evals += out.evals;
        best.offer(out.value, &out.point, out.converged);
    }
    best.into_minimum()
}

/// Gradient descent from the fixed coarse start lattice.
pub fn minimize_graddesc(ctx: &FunctionalContext, cfg: &OptimizerConfig) -> Result<Minimum> {
    minimize_descent_family(ctx, cfg, 0)
}

/// Gradient descent from the coarse lattice plus seeded random starts.
pub fn minimize_multistart(ctx: &FunctionalContext, cfg: &OptimizerConfig) -> Result<Minimum> {
    minimize_descent_family(ctx, cfg, MULTISTART_RANDOM_STARTS)
}

/// Dispatches on `cfg.method`.
pub fn minimize(ctx: &FunctionalContext, cfg: &OptimizerConfig) -> Result<Minimum> {
    match cfg.method {
        Method::Random => minimize_random(ctx, cfg),
        Method::Grid => minimize_grid(ctx, cfg),
        Method::GradDesc => minimize_graddesc(ctx, cfg),
        Method::MultiStart => minimize_multistart(ctx, cfg),
    }
}

/// Reference argmin by full cell enumeration, for d = 2 and n ≤ 12 only
/// (cost grows like (n+1)²·descents). Every cell is probed on an interior
/// lattice and the best probe refined by hop-free in-cell descent.
pub fn argmin_by_cell_enumeration(
    ctx: &FunctionalContext,
    params: &DescentParams,
) -> Result<Minimum> {
    if ctx.dim() != 2 {
        return Err(Error::domain(format!(
            "cell enumeration supports d = 2 only, got {}",
            ctx.dim()
        )));
    }
    if ctx.len() > 12 {
        return Err(Error::domain(format!(
            "cell enumeration supports n ≤ 12, got {}",
            ctx.len()
        )));
    }
    const PROBES: usize = 7;
    let bx = ctx.boundaries()[0].len() - 1;
    let by = ctx.boundaries()[1].len() - 1;
    let mut best = Best::new();
    for ix in 0..bx {
        for iy in 0..by {
            let cell = cell_from_indices(ctx, &[ix, iy])?;
            let mut probe_best = f64::INFINITY;
            let mut probe_point = [0.0f64; 2];
            for px in 0..PROBES {
                for py in 0..PROBES {
                    let fx = (2 * px + 1) as f64 / (2 * PROBES) as f64;
                    let fy = (2 * py + 1) as f64 / (2 * PROBES) as f64;
                    let y = [
                        cell.lo[0] + fx * (cell.hi[0] - cell.lo[0]),
                        cell.lo[1] + fy * (cell.hi[1] - cell.lo[1]),
                    ];
                    let f = functional_in_cell(ctx, &y, &cell)?;
                    if f < probe_best {
                        probe_best = f;
                        probe_point = y;
                    }
                }
            }
            let out = descend_inner(ctx, &probe_point, params, false, Some(cell))?;
            best.offer(out.value, &out.point, out.converged);
        }
    }
    best.into_minimum()
}

/// Greedy generation in d ∈ {2, 3}: each step minimizes the functional over
/// the current set with the configured heuristic and appends the minimizer.
/// Per-step seeds are drawn from a master ChaCha8 stream seeded with
/// `cfg.seed`, so runs are reproducible end to end.
pub fn generate_nd(init: &PointSet, count: usize, cfg: &OptimizerConfig) -> Result<PointSet> {
    let d = init.dim();
    if !(2..=3).contains(&d) {
        return Err(Error::domain(format!(
            "n-dimensional generation supports d ∈ {{2, 3}}, got {d}"
        )));
    }
    require_valid(init)?;
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut current = init.clone();
    for _ in 0..count {
        let ctx = FunctionalContext::from_points(&current)?;
        let step_cfg = OptimizerConfig {
            seed: master.random::<u64>(),
            ..*cfg
        };
        let m = minimize(&ctx, &step_cfg)?;
        current.push(Point::new(m.point));
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::validate_point_set;

    const GOLDEN_T: f64 = 0.6180339887498949; // (√5 − 1)/2
    const GOLDEN_F: f64 = -0.045084971874737145; // −0.5(1−t²)² + (1−t)²

    fn empty_ctx(d: usize) -> FunctionalContext {
        FunctionalContext::from_points(&PointSet::new(d).unwrap()).unwrap()
    }

    fn ctx_1d(vals: &[f64]) -> FunctionalContext {
        FunctionalContext::from_points(&PointSet::from_coords_1d(vals)).unwrap()
    }

    #[test]
    fn random_is_deterministic_and_extends_with_budget() {
        let ctx = empty_ctx(2);
        let cfg = OptimizerConfig {
            budget: 2000,
            seed: 42,
            ..Default::default()
        };
        let a = minimize_random(&ctx, &cfg).unwrap();
        let b = minimize_random(&ctx, &cfg).unwrap();
        assert_eq!(a, b);
        let bigger = minimize_random(
            &ctx,
            &OptimizerConfig {
                budget: 8000,
                ..cfg
            },
        )
        .unwrap();
        assert!(bigger.value <= a.value);
    }

    #[test]
    fn random_approaches_the_golden_minimum() {
        let ctx = empty_ctx(2);
        let cfg = OptimizerConfig {
            budget: 10_000,
            seed: 7,
            ..Default::default()
        };
        let m = minimize_random(&ctx, &cfg).unwrap();
        assert!(m.value >= GOLDEN_F - 1e-12, "below the true minimum");
        assert!(m.value - GOLDEN_F < 5e-3, "random budget missed: {}", m.value);
    }

    #[test]
    fn grid_matches_direct_enumeration_and_respects_budget() {
        let ctx = ctx_1d(&[0.3, 0.8]);
        let m = 17;
        let cfg = OptimizerConfig {
            method: Method::Grid,
            grid_resolution: m,
            budget: 1000,
            ..Default::default()
        };
        let got = minimize_grid(&ctx, &cfg).unwrap();
        let mut best = f64::INFINITY;
        let mut arg = 0.0;
        for j in 0..m {
            let y = (2 * j + 1) as f64 / (2 * m) as f64;
            let f = functional_nd(&ctx, &[y]).unwrap();
            if f < best {
                best = f;
                arg = y;
            }
        }
        assert_eq!(got.point[0], arg);
        assert_eq!(got.value, best);

        let too_big = OptimizerConfig {
            method: Method::Grid,
            grid_resolution: 40,
            budget: 10,
            ..Default::default()
        };
        assert!(minimize_grid(&ctx, &too_big).is_err());
    }

    #[test]
    fn grid_breaks_ties_toward_smaller_points() {
        // P = {0.5}: F(0.25) = F(0.75) exactly (dyadic arithmetic), so the
        // 2-point lattice must return 0.25.
        let ctx = ctx_1d(&[0.5]);
        let cfg = OptimizerConfig {
            method: Method::Grid,
            grid_resolution: 2,
            budget: 10,
            ..Default::default()
        };
        let got = minimize_grid(&ctx, &cfg).unwrap();
        assert_eq!(got.point[0], 0.25);
    }

    #[test]
    fn descent_finds_interior_vertex_in_1d() {
        // P = {0.5}: global minima at 0.25 and 0.75; from 0.9 the descent
        // stays in the right cell and lands on 0.75.
        let ctx = ctx_1d(&[0.5]);
        let m = descend_from(&ctx, &[0.9], &DescentParams::default()).unwrap();
        assert!(m.converged);
        assert!((m.point[0] - 0.75).abs() < 1e-7, "{:?}", m.point);
        assert!((m.value - functional_nd(&ctx, &[0.75]).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn descent_hops_out_of_a_dead_cell() {
        // P = {0.2}: the left cell's parabola bottoms at 0.25, outside the
        // cell; descent must clamp at the face and hop right to reach 0.75.
        let ctx = ctx_1d(&[0.2]);
        let m = descend_from(&ctx, &[0.1], &DescentParams::default()).unwrap();
        assert!(m.converged);
        assert!((m.point[0] - 0.75).abs() < 1e-7, "{:?}", m.point);
    }

    #[test]
    fn graddesc_locates_the_golden_point() {
        let ctx = empty_ctx(2);
        let cfg = OptimizerConfig {
            method: Method::GradDesc,
            budget: 100_000,
            ..Default::default()
        };
        let m = minimize_graddesc(&ctx, &cfg).unwrap();
        assert!(m.converged);
        assert!((m.point[0] - GOLDEN_T).abs() < 1e-6, "{:?}", m.point);
        assert!((m.point[1] - GOLDEN_T).abs() < 1e-6);
        assert!((m.value - GOLDEN_F).abs() < 1e-12);
    }

    #[test]
    fn grid_plus_descent_refines_to_the_golden_point() {
        let ctx = empty_ctx(2);
        let cfg = OptimizerConfig {
            method: Method::Grid,
            grid_resolution: 50,
            budget: 10_000,
            ..Default::default()
        };
        let coarse = minimize_grid(&ctx, &cfg).unwrap();
        let refined = descend_from(&ctx, &coarse.point, &DescentParams::default()).unwrap();
        assert!(refined.value <= coarse.value);
        assert!((refined.point[0] - GOLDEN_T).abs() < 1e-6);
    }

    #[test]
    fn multistart_is_deterministic() {
        let ps = PointSet::from_rows(2, vec![vec![0.3, 0.6], vec![0.7, 0.2]]).unwrap();
        let ctx = FunctionalContext::from_points(&ps).unwrap();
        let cfg = OptimizerConfig {
            method: Method::MultiStart,
            budget: 50_000,
            seed: 11,
            ..Default::default()
        };
        let a = minimize_multistart(&ctx, &cfg).unwrap();
        let b = minimize_multistart(&ctx, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cell_enumeration_agrees_with_multistart_on_small_sets() {
        let ps = PointSet::from_rows(
            2,
            vec![vec![0.61, 0.62], vec![0.25, 0.8], vec![0.85, 0.3]],
        )
        .unwrap();
        let ctx = FunctionalContext::from_points(&ps).unwrap();
        let oracle = argmin_by_cell_enumeration(&ctx, &DescentParams::default()).unwrap();
        let cfg = OptimizerConfig {
            method: Method::MultiStart,
            budget: 200_000,
            seed: 3,
            ..Default::default()
        };
        let m = minimize_multistart(&ctx, &cfg).unwrap();
        assert!(
            m.value >= oracle.value - 1e-10,
            "heuristic {} beat the oracle {}",
            m.value,
            oracle.value
        );
        assert!(
            (m.value - oracle.value).abs() < 1e-7,
            "heuristic missed the oracle minimum: {} vs {}",
            m.value,
            oracle.value
        );
        // Oracle preconditions.
        assert!(argmin_by_cell_enumeration(&empty_ctx(3), &DescentParams::default()).is_err());
    }

    #[test]
    fn generate_nd_validates_and_is_deterministic() {
        assert!(generate_nd(&PointSet::new(1).unwrap(), 1, &OptimizerConfig::default()).is_err());
        assert!(generate_nd(&PointSet::new(4).unwrap(), 1, &OptimizerConfig::default()).is_err());

        let cfg = OptimizerConfig {
            budget: 300,
            seed: 5,
            ..Default::default()
        };
        let a = generate_nd(&PointSet::new(2).unwrap(), 12, &cfg).unwrap();
        let b = generate_nd(&PointSet::new(2).unwrap(), 12, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 12);
        assert!(validate_point_set(&a).is_empty());
    }

    #[test]
    fn generate_nd_first_point_with_descent_is_golden() {
        let cfg = OptimizerConfig {
            method: Method::GradDesc,
            budget: 100_000,
            ..Default::default()
        };
        let ps = generate_nd(&PointSet::new(2).unwrap(), 1, &cfg).unwrap();
        assert!((ps.coord(0, 0) - GOLDEN_T).abs() < 1e-6);
        assert!((ps.coord(0, 1) - GOLDEN_T).abs() < 1e-6);
    }

    #[test]
    fn generate_nd_d3_stays_in_domain() {
        let cfg = OptimizerConfig {
            budget: 200,
            seed: 9,
            ..Default::default()
        };
        let ps = generate_nd(&PointSet::new(3).unwrap(), 8, &cfg).unwrap();
        assert_eq!(ps.dim(), 3);
        assert!(validate_point_set(&ps).is_empty());
    }

    #[test]
    fn configs_are_validated() {
        let ctx = empty_ctx(2);
        let zero_budget = OptimizerConfig {
            budget: 0,
            ..Default::default()
        };
        assert!(minimize_random(&ctx, &zero_budget).is_err());
        assert!(minimize_graddesc(&ctx, &zero_budget).is_err());
        let bad_shrink = DescentParams {
            shrink: 1.5,
            ..Default::default()
        };
        assert!(descend_from(&ctx, &[0.5, 0.5], &bad_shrink).is_err());
    }
}
