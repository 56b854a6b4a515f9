use num_integer::Integer;

use crate::{Error, Result};

/// A point of the half-open unit cube [0,1)^d.
///
/// The struct itself does not enforce the range; [`validate_point_set`]
/// reports violations so callers can decide how to handle dirty data.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// An ordered, duplicate-tolerant collection of points with a declared
/// dimension. Order is meaningful: a `PointSet` is usually a sequence prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// An empty set of the given dimension. Rejects `dim == 0`.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("point set dimension must be at least 1"));
        }
        Ok(PointSet {
            dim,
            points: Vec::new(),
        })
    }

    /// Builds a set from rows, declaring dimension `dim`. Rows are stored as
    /// given; range/dimension violations are diagnosed by
    /// [`validate_point_set`], not here.
    pub fn from_rows(dim: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let mut ps = PointSet::new(dim)?;
        for row in rows {
            ps.push(Point::new(row));
        }
        Ok(ps)
    }

    /// Convenience for d = 1.
    pub fn from_coords_1d(values: &[f64]) -> Self {
        PointSet {
            dim: 1,
            points: values.iter().map(|&v| Point::new(vec![v])).collect(),
        }
    }

    pub fn push(&mut self, p: Point) {
        self.points.push(p);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Coordinate `k` of point `i`.
    pub fn coord(&self, i: usize, k: usize) -> f64 {
        self.points[i].coords[k]
    }

    /// The first `k` points as a new set (`k` capped at `len`).
    pub fn prefix(&self, k: usize) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points[..k.min(self.points.len())].to_vec(),
        }
    }

    /// All coordinates of one dimension, in point order.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.points.iter().map(|p| p.coords[k]).collect()
    }
}

/// A single defect found by [`validate_point_set`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Coordinate not in [0,1) (NaN included).
    CoordOutOfRange {
        point: usize,
        coord: usize,
        value: f64,
    },
    /// Point dimension differs from the set's declared dimension.
    DimensionMismatch {
        point: usize,
        expected: usize,
        got: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::CoordOutOfRange {
                point,
                coord,
                value,
            } => write!(
                f,
                "point {point}, coordinate {coord}: {value} is outside [0,1)"
            ),
            Violation::DimensionMismatch {
                point,
                expected,
                got,
            } => write!(
                f,
                "point {point}: dimension {got}, set declares {expected}"
            ),
        }
    }
}

/// Checks every point of `ps` against the unit-cube contract: dimension
/// matches the set's, every coordinate finite and in [0,1). Returns all
/// violations (empty vector = valid).
pub fn validate_point_set(ps: &PointSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, p) in ps.points().iter().enumerate() {
        if p.dim() != ps.dim() {
            out.push(Violation::DimensionMismatch {
                point: i,
                expected: ps.dim(),
                got: p.dim(),
            });
        }
        for (k, &c) in p.coords.iter().enumerate() {
            // The negated comparison also catches NaN.
            if !(0.0..1.0).contains(&c) {
                out.push(Violation::CoordOutOfRange {
                    point: i,
                    coord: k,
                    value: c,
                });
            }
        }
    }
    out
}

/// Validates and converts the violation list into a `Domain` error naming the
/// first few defects. Used by operations that require clean input.
pub(crate) fn require_valid(ps: &PointSet) -> Result<()> {
    let v = validate_point_set(ps);
    if v.is_empty() {
        return Ok(());
    }
    let shown: Vec<String> = v.iter().take(3).map(|x| x.to_string()).collect();
    let suffix = if v.len() > 3 {
        format!(" (+{} more)", v.len() - 3)
    } else {
        String::new()
    };
    Err(Error::domain(format!(
        "invalid point set: {}{}",
        shown.join("; "),
        suffix
    )))
}

/// A greedy-step candidate in d = 1, stored exactly as the rational
/// (2i+1) / (2(n+1)) where `n` is the size of the set being extended and
/// `i ∈ {0, …, n}` is the candidate index.
///
/// Keeping the integer pair instead of an `f64` makes candidate identity
/// exact: equality across steps is decided on the reduced fraction, and the
/// float value is produced once, by a single correctly-rounded division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CandidateRational {
    num: u64,
    den: u64,
}

impl CandidateRational {
    /// Builds from an explicit numerator/denominator. The numerator must be
    /// odd, the denominator even and larger than the numerator (so the value
    /// lies in (0,1) and has the canonical (2i+1)/(2(n+1)) shape).
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num % 2 == 0 {
            return Err(Error::domain(format!(
                "candidate numerator must be odd, got {num}"
            )));
        }
        if den < 2 || den % 2 != 0 {
            return Err(Error::domain(format!(
                "candidate denominator must be a positive even integer, got {den}"
            )));
        }
        if num >= den {
            return Err(Error::domain(format!(
                "candidate {num}/{den} is not inside (0,1)"
            )));
        }
        Ok(CandidateRational { num, den })
    }

    /// The candidate with index `i` for a set of size `n` (`i ≤ n`).
    pub fn from_index(i: u64, n: u64) -> Self {
        debug_assert!(i <= n);
        CandidateRational {
            num: 2 * i + 1,
            den: 2 * (n + 1),
        }
    }

    /// Candidate index `i` such that `num == 2i+1`.
    pub fn index(&self) -> u64 {
        (self.num - 1) / 2
    }

    /// Size `n` of the point set this candidate extends (`den == 2(n+1)`).
    pub fn set_size(&self) -> u64 {
        self.den / 2 - 1
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Lowest-terms form, for exact identity checks across different steps.
    pub fn reduced(&self) -> (u64, u64) {
        let g = self.num.gcd(&self.den);
        (self.num / g, self.den / g)
    }

    /// The `f64` value. This division is the only place a candidate becomes a
    /// float, so equal reduced fractions always map to identical bits.
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}
