//! Greedy construction of one-dimensional low-discrepancy sequences.
//!
//! Given a point set P of size n, the next point is the minimizer over
//! y ∈ [0,1) of
//!
//! ```text
//! F(y, P) = (n+1)·y² − y − 2·Σ_{x ∈ P} max(x, y)
//! ```
//!
//! which is (up to terms constant in y) the squared L2 star discrepancy of
//! P ∪ {y}. F is piecewise quadratic: on the interval between two adjacent
//! sorted points it equals `(n+1)y² − (2i+1)y − 2·Σ_{j≥i} x_(j)` where `i`
//! counts the points below the interval. Each piece's vertex is the rational
//! `(2i+1)/(2(n+1))`, so the global minimizer always lies on that candidate
//! grid and never coincides with an existing point. The sweep below visits
//! the n+1 cells once, updating the quadratic's coefficients by the
//! recurrences `A_{i−1} = A_i − 2`, `B_{i−1} = B_i + 2·x_(i−1)`, which makes
//! one greedy step linear in n.
//!
//! Ties (several cells whose vertex values agree to within 4 ulps) are broken
//! toward the smallest y; the tie rule is part of the output contract and is
//! applied identically by the sweep and the brute-force reference.

use crate::points::{require_valid, CandidateRational, PointSet};
use crate::{Error, Result};

/// Relative width of the tie window: vertex values within
/// `4·ε·|f_min|` of the minimum are considered tied.
const TIE_ULPS: f64 = 4.0;

/// A one-dimensional point multiset kept sorted, with suffix sums maintained
/// so the greedy functional can be evaluated in O(log n).
#[derive(Debug, Clone)]
pub struct SortedSet1D {
    values: Vec<f64>,
    /// `suffix[k] = Σ_{j ≥ k} values[j]`, with `suffix[len] = 0`.
    suffix: Vec<f64>,
}

impl SortedSet1D {
    pub fn new() -> Self {
        SortedSet1D {
            values: Vec::new(),
            suffix: vec![0.0],
        }
    }

    /// Builds from a 1-D point set; rejects d ≠ 1 and coordinates outside
    /// [0,1). Input order is forgotten (the set sorts internally).
    pub fn from_points(ps: &PointSet) -> Result<Self> {
        if ps.dim() != 1 {
            return Err(Error::domain(format!(
                "SortedSet1D requires dimension 1, got {}",
                ps.dim()
            )));
        }
        require_valid(ps)?;
        let mut values = ps.column(0);
        values.sort_by(|a, b| a.partial_cmp(b).expect("validated: no NaN"));
        let mut set = SortedSet1D {
            values,
            suffix: Vec::new(),
        };
        set.rebuild_suffix();
        Ok(set)
    }

    /// Inserts a value, keeping order and suffix sums consistent.
    pub fn insert(&mut self, x: f64) -> Result<()> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::domain(format!("value {x} outside [0,1)")));
        }
        let pos = self.values.partition_point(|&v| v < x);
        self.values.insert(pos, x);
        self.rebuild_suffix();
        Ok(())
    }

    fn rebuild_suffix(&mut self) {
        let n = self.values.len();
        self.suffix.clear();
        self.suffix.resize(n + 1, 0.0);
        for k in (0..n).rev() {
            self.suffix[k] = self.values[k] + self.suffix[k + 1];
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Σ_{j ≥ k}` of the sorted values (`k ≤ len`).
    pub fn suffix_sum(&self, k: usize) -> f64 {
        self.suffix[k]
    }

    /// True iff `x` equals one of the stored values bit-for-bit.
    pub fn contains(&self, x: f64) -> bool {
        let pos = self.values.partition_point(|&v| v < x);
        pos < self.values.len() && self.values[pos] == x
    }
}

impl Default for SortedSet1D {
    fn default() -> Self {
        Self::new()
    }
}

/// The restriction of the greedy functional to one inter-point interval:
/// `F_i(y) = (n+1)·y² − a·y − b` on `[lo, hi]`, where `index` counts the
/// points strictly below the interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCell {
    pub index: usize,
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    /// Linear coefficient `a = 2·index + 1`.
    pub a: f64,
    /// Constant term `b = 2·Σ_{j ≥ index} x_(j)`.
    pub b: f64,
}

impl QuadCell {
    pub fn eval(&self, y: f64) -> f64 {
        (self.n as f64 + 1.0) * y * y - self.a * y - self.b
    }

    /// The parabola's vertex `(2i+1)/(2(n+1))`; the cell's minimum when it
    /// lies inside the cell.
    pub fn vertex(&self) -> CandidateRational {
        CandidateRational::from_index(self.index as u64, self.n as u64)
    }

    /// Functional value at the vertex: `−a²/(4(n+1)) − b`.
    pub fn vertex_value(&self) -> f64 {
        -(self.a * self.a) / (4.0 * (self.n as f64 + 1.0)) - self.b
    }

    /// True iff the vertex lies strictly inside `(lo, hi)`, i.e. the vertex
    /// is this cell's minimizer and coincides with no existing point.
    pub fn vertex_admissible(&self) -> bool {
        let v = self.vertex().value();
        self.lo < v && v < self.hi
    }
}

/// All n+1 cells of the piecewise-quadratic functional, in left-to-right
/// order. Intended for inspection and testing; the production sweep uses the
/// coefficient recurrences without materializing cells.
pub fn cells(set: &SortedSet1D) -> Vec<QuadCell> {
    let n = set.len();
    let vals = set.values();
    (0..=n)
        .map(|i| QuadCell {
            index: i,
            n,
            lo: if i == 0 { 0.0 } else { vals[i - 1] },
            hi: if i == n { 1.0 } else { vals[i] },
            a: (2 * i + 1) as f64,
            b: 2.0 * set.suffix_sum(i),
        })
        .collect()
}

/// Evaluates `F(y, P) = (n+1)y² − y − 2·Σ max(x, y)` directly.
pub fn functional_1d(y: f64, set: &SortedSet1D) -> Result<f64> {
    if !(0.0..1.0).contains(&y) {
        return Err(Error::domain(format!("argument {y} outside [0,1)")));
    }
    let n = set.len();
    // p points lie strictly below y, so Σ max(x,y) = p·y + Σ_{j≥p} x_(j).
    let p = set.values().partition_point(|&v| v < y);
    let sum_max = p as f64 * y + set.suffix_sum(p);
    Ok((n as f64 + 1.0) * y * y - y - 2.0 * sum_max)
}

/// Given candidates `(index, value)` in descending-index order, returns the
/// smallest-index entry whose value lies within the tie window of the
/// minimum. Two passes: an exact minimum first, then the leftmost candidate
/// within `TIE_ULPS · ε · |min|` of it.
fn pick_leftmost_min(cands: &[(u64, f64)]) -> Option<(u64, f64)> {
    let fmin = cands.iter().map(|&(_, f)| f).fold(f64::INFINITY, f64::min);
    if !fmin.is_finite() {
        return None;
    }
    let tol = TIE_ULPS * f64::EPSILON * fmin.abs();
    // Reverse order = ascending index = ascending y.
    cands.iter().rev().find(|&&(_, f)| f <= fmin + tol).copied()
}

/// Absolute distance from a cell boundary below which vertex admissibility
/// is re-decided with an exact division instead of the fast reciprocal
/// product. Far larger than the reciprocal's error (≤ 2 ulps ≈ 4·10⁻¹⁶) and
/// far smaller than any real inter-point gap, so the fast path and the exact
/// path always agree outside the fallback zone.
const ADMISSIBILITY_MARGIN: f64 = 1e-13;

/// One greedy step in O(n): sweeps the cells once, evaluating each vertex
/// value from the maintained suffix sums (`B_i = 2·Σ_{j≥i} x_(j)`, the same
/// bits the right-to-left coefficient recurrence produces, since doubling is
/// exact), and returns the minimizing candidate (leftmost under ties) with
/// its functional value.
pub fn next_point_sweep(set: &SortedSet1D) -> Result<(CandidateRational, f64)> {
    let mut scratch = Vec::new();
    next_point_sweep_with(set, &mut scratch)
}

/// [`next_point_sweep`] with a caller-provided scratch buffer, so repeated
/// generation does not reallocate.
pub fn next_point_sweep_with(
    set: &SortedSet1D,
    scratch: &mut Vec<f64>,
) -> Result<(CandidateRational, f64)> {
    let n = set.len();
    let vals = set.values();
    let nf = n as f64 + 1.0;
    let inv4 = 1.0 / (4.0 * nf);
    let den = 2.0 * nf;
    let inv_den = 1.0 / den;

    // Vertex admissibility, exact up to the margin: `a·inv_den` is within
    // 2 ulps of the correctly rounded `a/den`, so only vertices hugging a
    // boundary need the division.
    let admissible = |i: usize, a: f64| -> bool {
        let lo = if i == 0 { 0.0 } else { vals[i - 1] };
        let hi = if i == n { 1.0 } else { vals[i] };
        let v = a * inv_den;
        if v > lo + ADMISSIBILITY_MARGIN && v < hi - ADMISSIBILITY_MARGIN {
            true
        } else if v < lo - ADMISSIBILITY_MARGIN || v > hi + ADMISSIBILITY_MARGIN {
            false
        } else {
            let ve = a / den;
            lo < ve && ve < hi
        }
    };

    scratch.clear();
    scratch.resize(n + 1, f64::INFINITY);
    let mut fmin = f64::INFINITY;
    for (i, slot) in scratch.iter_mut().enumerate() {
        let a = (2 * i + 1) as f64;
        if admissible(i, a) {
            let f = -(a * a) * inv4 - 2.0 * set.suffix[i];
            *slot = f;
            fmin = fmin.min(f);
        }
    }
    if !fmin.is_finite() {
        return Err(Error::Internal(
            "no admissible greedy candidate (floating-point degeneracy)".into(),
        ));
    }
    // Leftmost candidate within the tie window of the exact minimum.
    let tol = TIE_ULPS * f64::EPSILON * fmin.abs();
    let i = scratch
        .iter()
        .position(|&f| f <= fmin + tol)
        .expect("fmin is in the buffer");
    Ok((
        CandidateRational::from_index(i as u64, n as u64),
        scratch[i],
    ))
}

/// O(n²) reference: evaluates the functional directly at every candidate
/// `(2i+1)/(2(n+1))` not already in the set and applies the same tie rule.
pub fn next_point_bruteforce(set: &SortedSet1D) -> Result<(CandidateRational, f64)> {
    let n = set.len();
    let mut cands = Vec::with_capacity(n + 1);
    for i in (0..=n).rev() {
        let cand = CandidateRational::from_index(i as u64, n as u64);
        let v = cand.value();
        if set.contains(v) {
            continue;
        }
        cands.push((i as u64, functional_1d(v, set)?));
    }
    let (i, f) = pick_leftmost_min(&cands).ok_or_else(|| {
        Error::Internal("no admissible greedy candidate (floating-point degeneracy)".into())
    })?;
    Ok((CandidateRational::from_index(i, n as u64), f))
}

/// Extends `init` by `count` greedy points. The result lists the initial
/// points in their given order followed by the generated points in
/// generation order.
pub fn generate_1d(init: &PointSet, count: usize) -> Result<PointSet> {
    let mut set = SortedSet1D::from_points(init)?;
    let mut out = init.column(0);
    out.reserve(count);
    let mut scratch = Vec::new();
    for _ in 0..count {
        let (cand, _) = next_point_sweep_with(&set, &mut scratch)?;
        let x = cand.value();
        set.insert(x)?;
        out.push(x);
    }
    Ok(PointSet::from_coords_1d(&out))
}
