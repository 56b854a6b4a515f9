//! The d-dimensional greedy objective and its piecewise-smooth structure.
//!
//! For a point set P of size n in [0,1)^d, the next greedy point minimizes
//!
//! ```text
//! F_d(y, P) = −2^{1−d}·(n+1)·Π_k (1−y_k²) + Π_k (1−y_k)
//!           + 2·Σ_{x ∈ P} Π_k (1−max(x_k, y_k))
//! ```
//!
//! which equals (n+1)²·d₂*²(P ∪ {y}) minus terms constant in y. In d = 1 it
//! reduces to the sweep functional of [`crate::greedy1d`] plus the constant
//! n. F_d is continuous, and smooth away from the hyperplanes y_k = x_{i,k}:
//! between consecutive point coordinates (a *cell*) every max resolves to a
//! fixed argument and F_d is a polynomial with an explicit gradient.

use crate::points::{require_valid, PointSet};
use crate::{Error, Result};

/// A point set prepared for repeated functional evaluation: flattened
/// coordinates plus per-dimension cell boundaries (0, the sorted distinct
/// coordinates, 1).
#[derive(Debug, Clone)]
pub struct FunctionalContext {
    d: usize,
    n: usize,
    flat: Vec<f64>,
    boundaries: Vec<Vec<f64>>,
}

impl FunctionalContext {
    pub fn from_points(ps: &PointSet) -> Result<Self> {
        require_valid(ps)?;
        let d = ps.dim();
        let n = ps.len();
        let mut flat = Vec::with_capacity(n * d);
        for p in ps.points() {
            flat.extend_from_slice(&p.coords);
        }
        let boundaries = (0..d)
            .map(|k| {
                let mut b = ps.column(k);
                b.push(0.0);
                b.push(1.0);
                b.sort_by(|a, c| a.partial_cmp(c).expect("validated: no NaN"));
                b.dedup();
                b
            })
            .collect();
        Ok(FunctionalContext {
            d,
            n,
            flat,
            boundaries,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Coordinate k of stored point i.
    fn x(&self, i: usize, k: usize) -> f64 {
        self.flat[i * self.d + k]
    }

    /// Per-dimension cell boundaries: strictly increasing, first 0, last 1.
    pub fn boundaries(&self) -> &[Vec<f64>] {
        &self.boundaries
    }

    fn check_arg(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.d {
            return Err(Error::domain(format!(
                "argument has dimension {}, context has {}",
                y.len(),
                self.d
            )));
        }
        for (k, &c) in y.iter().enumerate() {
            if !(0.0..1.0).contains(&c) {
                return Err(Error::domain(format!(
                    "coordinate {k}: {c} is outside [0,1)"
                )));
            }
        }
        Ok(())
    }
}

/// Evaluates F_d directly (valid at any y in [0,1)^d, cells or not).
pub fn functional_nd(ctx: &FunctionalContext, y: &[f64]) -> Result<f64> {
    ctx.check_arg(y)?;
    let d = ctx.d as i32;
    let mut prod_sq = 1.0;
    let mut prod_lin = 1.0;
    for &c in y {
        prod_sq *= 1.0 - c * c;
        prod_lin *= 1.0 - c;
    }
    let mut sum = 0.0;
    for i in 0..ctx.n {
        let mut prod = 1.0;
        for (k, &c) in y.iter().enumerate() {
            prod *= 1.0 - ctx.x(i, k).max(c);
        }
        sum += prod;
    }
    Ok(-(2.0f64.powi(1 - d)) * (ctx.n as f64 + 1.0) * prod_sq + prod_lin + 2.0 * sum)
}

/// An axis-aligned differentiability cell: the box between consecutive
/// point coordinates in every dimension. `index[k]` identifies the interval
/// within `ctx.boundaries()[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: Vec<usize>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// The cell containing y; points exactly on a boundary belong to the cell on
/// their right (lo = y_k).
pub fn cell_containing(ctx: &FunctionalContext, y: &[f64]) -> Result<Cell> {
    ctx.check_arg(y)?;
    let mut index = Vec::with_capacity(ctx.d);
    let mut lo = Vec::with_capacity(ctx.d);
    let mut hi = Vec::with_capacity(ctx.d);
    for (k, &c) in y.iter().enumerate() {
        let b = &ctx.boundaries[k];
        // Last j with b[j] <= c; c < 1 = b[last] keeps j+1 in range.
        let j = b.partition_point(|&v| v <= c) - 1;
        index.push(j);
        lo.push(b[j]);
        hi.push(b[j + 1]);
    }
    Ok(Cell { index, lo, hi })
}

/// Builds the cell with the given per-dimension interval indices.
pub fn cell_from_indices(ctx: &FunctionalContext, index: &[usize]) -> Result<Cell> {
    if index.len() != ctx.d {
        return Err(Error::domain(format!(
            "index has dimension {}, context has {}",
            index.len(),
            ctx.d
        )));
    }
    let mut lo = Vec::with_capacity(ctx.d);
    let mut hi = Vec::with_capacity(ctx.d);
    for (k, &j) in index.iter().enumerate() {
        let b = &ctx.boundaries[k];
        if j + 1 >= b.len() {
            return Err(Error::domain(format!(
                "interval {j} out of range in dimension {k} ({} intervals)",
                b.len() - 1
            )));
        }
        lo.push(b[j]);
        hi.push(b[j + 1]);
    }
    Ok(Cell {
        index: index.to_vec(),
        lo,
        hi,
    })
}

/// Evaluates the cell's polynomial at y (every max resolved by the cell, not
/// by y). Valid on the cell's closure; agrees with [`functional_nd`] in the
/// interior and extends it continuously to the faces.
pub fn functional_in_cell(ctx: &FunctionalContext, y: &[f64], cell: &Cell) -> Result<f64> {
    ctx.check_arg(y)?;
    for k in 0..ctx.d {
        if y[k] < cell.lo[k] || y[k] > cell.hi[k] {
            return Err(Error::domain(format!(
                "coordinate {k}: {} outside cell [{}, {}]",
                y[k], cell.lo[k], cell.hi[k]
            )));
        }
    }
    let d = ctx.d as i32;
    let mut prod_sq = 1.0;
    let mut prod_lin = 1.0;
    for &c in y {
        prod_sq *= 1.0 - c * c;
        prod_lin *= 1.0 - c;
    }
    let mut sum = 0.0;
    for i in 0..ctx.n {
        let mut prod = 1.0;
        for (k, &c) in y.iter().enumerate() {
            let x = ctx.x(i, k);
            // Coordinates never fall inside (lo, hi), so x > lo ⟺ x ≥ hi.
            prod *= 1.0 - if x > cell.lo[k] { x } else { c };
        }
        sum += prod;
    }
    Ok(-(2.0f64.powi(1 - d)) * (ctx.n as f64 + 1.0) * prod_sq + prod_lin + 2.0 * sum)
}

/// Gradient of the cell polynomial, with the membership split pinned by the
/// cell (`x_{i,m} ≤ lo_m` ⟺ the max resolves to y_m). Valid on the closure.
pub(crate) fn gradient_in_cell(ctx: &FunctionalContext, y: &[f64], cell: &Cell) -> Vec<f64> {
    let d = ctx.d;
    let np1 = ctx.n as f64 + 1.0;
    let coef = 2.0f64.powi(2 - d as i32);
    let mut g = Vec::with_capacity(d);
    for m in 0..d {
        let mut prod_sq = 1.0;
        let mut prod_lin = 1.0;
        for (k, &c) in y.iter().enumerate() {
            if k != m {
                prod_sq *= 1.0 - c * c;
                prod_lin *= 1.0 - c;
            }
        }
        let mut sum = 0.0;
        for i in 0..ctx.n {
            if ctx.x(i, m) <= cell.lo[m] {
                let mut prod = 1.0;
                for (k, &c) in y.iter().enumerate() {
                    if k != m {
                        let x = ctx.x(i, k);
                        prod *= 1.0 - if x > cell.lo[k] { x } else { c };
                    }
                }
                sum += prod;
            }
        }
        g.push(coef * np1 * y[m] * prod_sq - prod_lin - 2.0 * sum);
    }
    g
}

/// Analytic gradient of F_d at a strictly cell-interior point:
///
/// ```text
/// ∂F/∂y_m = 2^{2−d}·(n+1)·y_m·Π_{k≠m}(1−y_k²) − Π_{k≠m}(1−y_k)
///         − 2·Σ_{i: x_{i,m} < y_m} Π_{k≠m}(1−max(x_{i,k}, y_k))
/// ```
///
/// Rejects y on a cell boundary, where F_d is not differentiable.
pub fn gradient_nd(ctx: &FunctionalContext, y: &[f64], cell: &Cell) -> Result<Vec<f64>> {
    ctx.check_arg(y)?;
    for k in 0..ctx.d {
        if y[k] <= cell.lo[k] || y[k] >= cell.hi[k] {
            return Err(Error::domain(format!(
                "coordinate {k}: {} is not strictly inside cell ({}, {})",
                y[k], cell.lo[k], cell.hi[k]
            )));
        }
    }
    Ok(gradient_in_cell(ctx, y, cell))
}
