//! Star-discrepancy measures for point sets on [0,1)^d.
//!
//! Three measures are provided:
//!
//! * [`linf_star_exact`] — the exact L∞ star discrepancy for d ≤ 3. The
//!   supremum over anchored boxes is attained on the *critical grid* (the
//!   per-dimension sorted point coordinates plus 1), and for each grid corner
//!   only two values matter: the open count (points strictly below the
//!   corner in every coordinate) and the closed count (points less-or-equal).
//!   A coordinate sweep with rank-binned prefix counting evaluates all
//!   corners in O(n²) for d = 2 and O(n³) time / O(n²) memory for d = 3.
//! * [`linf_star_sampled`] — a guaranteed lower bound from the lattice
//!   {k/m : k = 1..m}^d, evaluating both the open and closed variant at each
//!   lattice corner. Independent of the exact engine by construction (direct
//!   per-dimension filtering and merging), so the pair can cross-check.
//! * [`l2_star_warnock`] — Warnock's closed form for the *squared* L2 star
//!   discrepancy, with compensated (Neumaier) summation.

use crate::points::{require_valid, PointSet};
use crate::{Error, Result};

/// Which measure produced a [`DiscrepancyValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyKind {
    /// Exact L∞ star discrepancy.
    LinfExact,
    /// Lattice lower bound on the L∞ star discrepancy.
    LinfLowerBound,
    /// Squared L2 star discrepancy (Warnock).
    L2Squared,
}

/// A measured discrepancy, tagged with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyValue {
    pub value: f64,
    pub kind: DiscrepancyKind,
    /// Number of points measured.
    pub n: usize,
    /// Dimension of the measured set.
    pub d: usize,
}

/// The grid on which the L∞ star discrepancy attains its supremum: per
/// dimension, the sorted distinct coordinates with 1 appended.
#[derive(Debug, Clone)]
pub struct CriticalGrid {
    axes: Vec<Vec<f64>>,
}

impl CriticalGrid {
    pub fn from_points(ps: &PointSet) -> Result<Self> {
        require_valid(ps)?;
        if ps.is_empty() {
            return Err(Error::domain("critical grid of an empty point set"));
        }
        let axes = (0..ps.dim())
            .map(|k| {
                let mut v = ps.column(k);
                v.sort_by(|a, b| a.partial_cmp(b).expect("validated: no NaN"));
                v.dedup();
                v.push(1.0);
                v
            })
            .collect();
        Ok(CriticalGrid { axes })
    }

    /// Per-dimension grid values, each strictly increasing and ending at 1.
    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    /// Number of corners the exact computation visits.
    pub fn corner_count(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }
}

fn check_nonempty(ps: &PointSet) -> Result<()> {
    require_valid(ps)?;
    if ps.is_empty() {
        return Err(Error::domain("discrepancy of an empty point set"));
    }
    Ok(())
}

/// Exact L∞ star discrepancy in d = 1 by the closed form
/// `max_i max(x_(i) − i/n, (i+1)/n − x_(i))` over the sorted points.
pub fn linf_star_1d(ps: &PointSet) -> Result<DiscrepancyValue> {
    check_nonempty(ps)?;
    if ps.dim() != 1 {
        return Err(Error::domain(format!(
            "closed-form L∞ requires dimension 1, got {}",
            ps.dim()
        )));
    }
    let mut xs = ps.column(0);
    xs.sort_by(|a, b| a.partial_cmp(b).expect("validated: no NaN"));
    let n = xs.len() as f64;
    let mut best = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let below = x - i as f64 / n;
        let above = (i + 1) as f64 / n - x;
        best = best.max(below).max(above);
    }
    Ok(DiscrepancyValue {
        value: best,
        kind: DiscrepancyKind::LinfExact,
        n: xs.len(),
        d: 1,
    })
}

/// Exact L∞ star discrepancy for d ∈ {1, 2, 3}. Cost grows like n^d corner
/// evaluations; d = 1 routes to the closed form.
pub fn linf_star_exact(ps: &PointSet) -> Result<DiscrepancyValue> {
    check_nonempty(ps)?;
    match ps.dim() {
        1 => linf_star_1d(ps),
        2 => Ok(DiscrepancyValue {
            value: exact_2d(ps),
            kind: DiscrepancyKind::LinfExact,
            n: ps.len(),
            d: 2,
        }),
        3 => Ok(DiscrepancyValue {
            value: exact_3d(ps),
            kind: DiscrepancyKind::LinfExact,
            n: ps.len(),
            d: 3,
        }),
        d => Err(Error::domain(format!(
            "exact L∞ star discrepancy implemented for d ≤ 3, got d = {d}"
        ))),
    }
}

/// Rank of `x` in the strictly increasing `axis` (exact membership).
fn rank(axis: &[f64], x: f64) -> usize {
    let r = axis.partition_point(|&v| v < x);
    debug_assert!(r < axis.len() && axis[r] == x);
    r
}

fn exact_2d(ps: &PointSet) -> f64 {
    let grid = CriticalGrid::from_points(ps).expect("validated");
    let xs = &grid.axes()[0];
    let ys = &grid.axes()[1];
    let n = ps.len();
    let nf = n as f64;

    // Points ordered by x; each point carries its y-rank.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        ps.coord(a, 0)
            .partial_cmp(&ps.coord(b, 0))
            .expect("validated")
    });
    let yrank: Vec<usize> = (0..n).map(|i| rank(ys, ps.coord(i, 1))).collect();

    let mut hist_open = vec![0u32; ys.len()];
    let mut hist_closed = vec![0u32; ys.len()];
    let (mut po, mut pc) = (0usize, 0usize);
    let mut best = 0.0f64;

    for &qx in xs {
        while po < n && ps.coord(order[po], 0) < qx {
            hist_open[yrank[order[po]]] += 1;
            po += 1;
        }
        while pc < n && ps.coord(order[pc], 0) <= qx {
            hist_closed[yrank[order[pc]]] += 1;
            pc += 1;
        }
        let mut acc_open = 0u32; // ranks < iy among points with px < qx
        let mut acc_closed = 0u32; // ranks ≤ iy among points with px ≤ qx
        for (iy, &qy) in ys.iter().enumerate() {
            let vol = qx * qy;
            best = best.max(vol - acc_open as f64 / nf);
            acc_closed += hist_closed[iy];
            best = best.max(acc_closed as f64 / nf - vol);
            acc_open += hist_open[iy];
        }
    }
    best
}

fn exact_3d(ps: &PointSet) -> f64 {
    let grid = CriticalGrid::from_points(ps).expect("validated");
    let xs = &grid.axes()[0];
    let ys = &grid.axes()[1];
    let zs = &grid.axes()[2];
    let n = ps.len();
    let nf = n as f64;
    let zl = zs.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        ps.coord(a, 0)
            .partial_cmp(&ps.coord(b, 0))
            .expect("validated")
    });
    let yrank: Vec<usize> = (0..n).map(|i| rank(ys, ps.coord(i, 1))).collect();
    let zrank: Vec<usize> = (0..n).map(|i| rank(zs, ps.coord(i, 2))).collect();

    // 2-D (y-rank × z-rank) histograms of the points admitted so far.
    let mut hist_open = vec![0u32; ys.len() * zl];
    let mut hist_closed = vec![0u32; ys.len() * zl];
    let mut row_open = vec![0u32; zl]; // Σ_{ry < iy} hist_open[ry][·]
    let mut row_closed = vec![0u32; zl]; // Σ_{ry ≤ iy} hist_closed[ry][·]
    let (mut po, mut pc) = (0usize, 0usize);
    let mut best = 0.0f64;

    for &qx in xs {
        while po < n && ps.coord(order[po], 0) < qx {
            let i = order[po];
            hist_open[yrank[i] * zl + zrank[i]] += 1;
            po += 1;
        }
        while pc < n && ps.coord(order[pc], 0) <= qx {
            let i = order[pc];
            hist_closed[yrank[i] * zl + zrank[i]] += 1;
            pc += 1;
        }
        row_open.iter_mut().for_each(|v| *v = 0);
        row_closed.iter_mut().for_each(|v| *v = 0);
        for (iy, &qy) in ys.iter().enumerate() {
            for (rz, v) in row_closed.iter_mut().enumerate() {
                *v += hist_closed[iy * zl + rz];
            }
            let qxy = qx * qy;
            let mut acc_open = 0u32;
            let mut acc_closed = 0u32;
            for (iz, &qz) in zs.iter().enumerate() {
                let vol = qxy * qz;
                best = best.max(vol - acc_open as f64 / nf);
                acc_closed += row_closed[iz];
                best = best.max(acc_closed as f64 / nf - vol);
                acc_open += row_open[iz];
            }
            for (rz, v) in row_open.iter_mut().enumerate() {
                *v += hist_open[iy * zl + rz];
            }
        }
    }
    best
}

/// Lower bound on the L∞ star discrepancy from the lattice
/// {k/m : k = 1..m}^d, taking at each corner the larger of the open and
/// closed box deviation. Always ≤ the exact value, and within d/m of it.
///
/// Implemented by per-dimension filtering and merged counting, deliberately
/// sharing no machinery with [`linf_star_exact`].
pub fn linf_star_sampled(ps: &PointSet, m: usize) -> Result<DiscrepancyValue> {
    check_nonempty(ps)?;
    if m < 1 {
        return Err(Error::domain("lattice resolution m must be at least 1"));
    }
    let value = match ps.dim() {
        1 => sampled_1d(ps, m),
        2 => sampled_2d(ps, m),
        3 => sampled_3d(ps, m),
        d => {
            return Err(Error::domain(format!(
                "sampled L∞ star discrepancy implemented for d ≤ 3, got d = {d}"
            )))
        }
    };
    Ok(DiscrepancyValue {
        value,
        kind: DiscrepancyKind::LinfLowerBound,
        n: ps.len(),
        d: ps.dim(),
    })
}

fn sampled_1d(ps: &PointSet, m: usize) -> f64 {
    let mut xs = ps.column(0);
    xs.sort_by(|a, b| a.partial_cmp(b).expect("validated"));
    let n = xs.len();
    let nf = n as f64;
    let mf = m as f64;
    let (mut lt, mut le) = (0usize, 0usize);
    let mut best = 0.0f64;
    for k in 1..=m {
        let q = k as f64 / mf;
        while lt < n && xs[lt] < q {
            lt += 1;
        }
        while le < n && xs[le] <= q {
            le += 1;
        }
        best = best.max(q - lt as f64 / nf).max(le as f64 / nf - q);
    }
    best
}

fn sampled_2d(ps: &PointSet, m: usize) -> f64 {
    let n = ps.len();
    let nf = n as f64;
    let mf = m as f64;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        ps.coord(a, 0)
            .partial_cmp(&ps.coord(b, 0))
            .expect("validated")
    });
    // Sorted y-coordinates of the points passing the x filter.
    let mut ys_open: Vec<f64> = Vec::with_capacity(n);
    let mut ys_closed: Vec<f64> = Vec::with_capacity(n);
    let insert_sorted = |v: &mut Vec<f64>, y: f64| {
        let pos = v.partition_point(|&t| t < y);
        v.insert(pos, y);
    };
    let (mut po, mut pc) = (0usize, 0usize);
    let mut best = 0.0f64;
    for kx in 1..=m {
        let qx = kx as f64 / mf;
        while po < n && ps.coord(order[po], 0) < qx {
            insert_sorted(&mut ys_open, ps.coord(order[po], 1));
            po += 1;
        }
        while pc < n && ps.coord(order[pc], 0) <= qx {
            insert_sorted(&mut ys_closed, ps.coord(order[pc], 1));
            pc += 1;
        }
        let (mut lt, mut le) = (0usize, 0usize);
        for ky in 1..=m {
            let qy = ky as f64 / mf;
            while lt < ys_open.len() && ys_open[lt] < qy {
                lt += 1;
            }
            while le < ys_closed.len() && ys_closed[le] <= qy {
                le += 1;
            }
            let vol = qx * qy;
            best = best.max(vol - lt as f64 / nf).max(le as f64 / nf - vol);
        }
    }
    best
}

/// Smallest k ∈ 1..=m with k/m > y (strict) or k/m ≥ y (non-strict),
/// decided by actual float comparisons so no exactness of k/m is assumed.
fn first_lattice_index(y: f64, m: usize, strict: bool) -> usize {
    let mf = m as f64;
    let (mut lo, mut hi) = (1usize, m); // predicate holds at m: m/m = 1 > y ≥ 0
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let q = mid as f64 / mf;
        let holds = if strict { q > y } else { q >= y };
        if holds {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

fn sampled_3d(ps: &PointSet, m: usize) -> f64 {
    let n = ps.len();
    let nf = n as f64;
    let mf = m as f64;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        ps.coord(a, 0)
            .partial_cmp(&ps.coord(b, 0))
            .expect("validated")
    });
    // Lattice-threshold bins: a point contributes to the open count at
    // (ky, kz) iff ky ≥ ty_open and kz ≥ tz_open; counts live in (m+1)² grids
    // indexed by threshold, prefix-summed per x step.
    let w = m + 1;
    let mut bins_open = vec![0u32; w * w];
    let mut bins_closed = vec![0u32; w * w];
    let mut row_open = vec![0u32; w];
    let mut row_closed = vec![0u32; w];
    let (mut po, mut pc) = (0usize, 0usize);
    let mut best = 0.0f64;
    for kx in 1..=m {
        let qx = kx as f64 / mf;
        while po < n && ps.coord(order[po], 0) < qx {
            let i = order[po];
            let ty = first_lattice_index(ps.coord(i, 1), m, true);
            let tz = first_lattice_index(ps.coord(i, 2), m, true);
            bins_open[ty * w + tz] += 1;
            po += 1;
        }
        while pc < n && ps.coord(order[pc], 0) <= qx {
            let i = order[pc];
            let ty = first_lattice_index(ps.coord(i, 1), m, false);
            let tz = first_lattice_index(ps.coord(i, 2), m, false);
            bins_closed[ty * w + tz] += 1;
            pc += 1;
        }
        row_open.iter_mut().for_each(|v| *v = 0);
        row_closed.iter_mut().for_each(|v| *v = 0);
        for ky in 1..=m {
            for t in 1..=m {
                row_open[t] += bins_open[ky * w + t];
                row_closed[t] += bins_closed[ky * w + t];
            }
            let qxy = qx * ky as f64 / mf;
            let mut acc_open = 0u32;
            let mut acc_closed = 0u32;
            for kz in 1..=m {
                acc_open += row_open[kz];
                acc_closed += row_closed[kz];
                let vol = qxy * kz as f64 / mf;
                best = best
                    .max(vol - acc_open as f64 / nf)
                    .max(acc_closed as f64 / nf - vol);
            }
        }
    }
    best
}

/// Compensated (Neumaier) accumulator: the error of each addition is carried
/// in a secondary term, so long sums of small terms keep full precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    s: f64,
    c: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn total(&self) -> f64 {
        self.s + self.c
    }
}

/// Squared L2 star discrepancy by Warnock's formula:
///
/// ```text
/// d₂*²(P) = 3^{−d} − (2^{1−d}/n)·Σ_i Π_k (1 − x_{i,k}²)
///         + n^{−2}·Σ_i Σ_j Π_k (1 − max(x_{i,k}, x_{j,k}))
/// ```
///
/// Both sums use compensated accumulation; the double sum exploits symmetry
/// (2·Σ_{i<j} plus the diagonal). Note the result is the *square* — callers
/// wanting the L2 discrepancy itself take the square root.
pub fn l2_star_warnock(ps: &PointSet) -> Result<DiscrepancyValue> {
    check_nonempty(ps)?;
    let d = ps.dim();
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let n = ps.len();
    let nf = n as f64;

    let mut single = NeumaierSum::new();
    for i in 0..n {
        let mut prod = 1.0;
        for k in 0..d {
            let x = ps.coord(i, k);
            prod *= 1.0 - x * x;
        }
        single.add(prod);
    }

    let mut off_diag = NeumaierSum::new();
    let mut diag = NeumaierSum::new();
    for i in 0..n {
        let mut prod = 1.0;
        for k in 0..d {
            prod *= 1.0 - ps.coord(i, k);
        }
        diag.add(prod);
        for j in i + 1..n {
            let mut prod = 1.0;
            for k in 0..d {
                prod *= 1.0 - ps.coord(i, k).max(ps.coord(j, k));
            }
            off_diag.add(prod);
        }
    }

    let value = 3.0f64.powi(d as i32).recip() - (2.0f64.powi(1 - d as i32) / nf) * single.total()
        + (2.0 * off_diag.total() + diag.total()) / (nf * nf);
    Ok(DiscrepancyValue {
        value,
        kind: DiscrepancyKind::L2Squared,
        n,
        d,
    })
}
