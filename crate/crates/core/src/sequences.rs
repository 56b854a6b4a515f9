//! Classical reference sequences: Kronecker rotations, (generalized)
//! van der Corput, and a small Sobol generator for d ≤ 3.

use std::io::{BufRead, BufReader, Read};

use crate::points::{Point, PointSet};
use crate::{Error, Result};

/// The golden ratio (1+√5)/2, the default Kronecker rotation.
pub const GOLDEN_RATIO: f64 = 1.618033988749895;

/// Kronecker (irrational rotation) sequence: `x_i = frac(i·alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KroneckerSpec {
    pub alpha: f64,
    /// Index of the first emitted element (default 1, so the sequence starts
    /// at `frac(alpha)`).
    pub start_index: u64,
}

impl Default for KroneckerSpec {
    fn default() -> Self {
        KroneckerSpec {
            alpha: GOLDEN_RATIO,
            start_index: 1,
        }
    }
}

/// Generates `n` points of the Kronecker sequence. `alpha` must be positive
/// and finite; the fractional part of `i·alpha` is exact in f64 for the index
/// ranges supported here (products below 2⁵³).
pub fn kronecker(spec: &KroneckerSpec, n: usize) -> Result<PointSet> {
    if !spec.alpha.is_finite() || spec.alpha <= 0.0 {
        return Err(Error::domain(format!(
            "kronecker alpha must be positive and finite, got {}",
            spec.alpha
        )));
    }
    let mut out = Vec::with_capacity(n);
    for c in 0..n as u64 {
        let idx = spec.start_index + c;
        let x = (idx as f64 * spec.alpha).fract();
        debug_assert!((0.0..1.0).contains(&x));
        out.push(x);
    }
    Ok(PointSet::from_coords_1d(&out))
}

/// How digit permutations are assigned to positions of the van der Corput
/// radical inverse.
#[derive(Debug, Clone, PartialEq)]
pub enum PermAssignment {
    /// No permutation (identity at every position).
    Identity,
    /// One permutation applied at every digit position. If it moves 0, the
    /// infinitely many zero digits beyond the index's length contribute a
    /// closed-form geometric tail.
    Broadcast(Vec<u32>),
    /// One permutation per position; identity beyond the end of the list.
    PerPosition(Vec<Vec<u32>>),
}

fn validate_perm(perm: &[u32], base: u32) -> Result<()> {
    if perm.len() != base as usize {
        return Err(Error::domain(format!(
            "permutation has {} entries, base is {base}",
            perm.len()
        )));
    }
    let mut seen = vec![false; base as usize];
    for &v in perm {
        if v >= base {
            return Err(Error::domain(format!(
                "permutation value {v} out of range for base {base}"
            )));
        }
        if seen[v as usize] {
            return Err(Error::domain(format!(
                "permutation repeats value {v}; not a bijection"
            )));
        }
        seen[v as usize] = true;
    }
    Ok(())
}

/// Generalized van der Corput sequence in base `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct VdcSpec {
    pub base: u32,
    pub perms: PermAssignment,
}

impl VdcSpec {
    pub fn new(base: u32) -> Self {
        VdcSpec {
            base,
            perms: PermAssignment::Identity,
        }
    }
}

/// Generates `x_i = Σ_j π_j(a_j(i))·b^{−j−1}` for i = 1..=n, where `a_j(i)`
/// are the base-b digits of i (least significant first).
pub fn van_der_corput(spec: &VdcSpec, n: usize) -> Result<PointSet> {
    let b = spec.base;
    if b < 2 {
        return Err(Error::domain(format!("base must be at least 2, got {b}")));
    }
    match &spec.perms {
        PermAssignment::Identity => {}
        PermAssignment::Broadcast(p) => validate_perm(p, b)?,
        PermAssignment::PerPosition(list) => {
            for p in list {
                validate_perm(p, b)?;
            }
        }
    }
    let bf = b as f64;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n as u64 {
        let mut x = 0.0f64;
        let mut scale = 1.0 / bf;
        let mut k = i;
        let mut pos = 0usize;
        while k > 0 {
            let digit = (k % b as u64) as u32;
            let image = match &spec.perms {
                PermAssignment::Identity => digit,
                PermAssignment::Broadcast(p) => p[digit as usize],
                PermAssignment::PerPosition(list) => {
                    list.get(pos).map_or(digit, |p| p[digit as usize])
                }
            };
            x += image as f64 * scale;
            scale /= bf;
            k /= b as u64;
            pos += 1;
        }
        // Positions beyond the index's digits hold digit 0; permutations
        // moving 0 make those positions contribute as well.
        match &spec.perms {
            PermAssignment::Identity => {}
            PermAssignment::Broadcast(p) => {
                if p[0] != 0 {
                    // Σ_{j ≥ pos} π(0)·b^{−j−1} = π(0)·b^{−pos}/(b−1)
                    x += p[0] as f64 * scale * bf / (bf - 1.0);
                }
            }
            PermAssignment::PerPosition(list) => {
                for p in list.iter().skip(pos) {
                    x += p[0] as f64 * scale;
                    scale /= bf;
                }
            }
        }
        // Guard against accumulated round-up at the open right endpoint.
        if x >= 1.0 {
            x = 1.0 - f64::EPSILON / 2.0;
        }
        out.push(x);
    }
    Ok(PointSet::from_coords_1d(&out))
}

/// Sobol sequence for d ≤ 3 with the canonical direction numbers
/// (dimension 1: van der Corput base 2; dimension 2: polynomial x+1,
/// m = 1; dimension 3: polynomial x²+x+1, m = 1, 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SobolSpec {
    pub dim: usize,
    /// Drop the all-zeros point at index 0 and start at index 1 (default).
    pub skip_zero: bool,
}

impl SobolSpec {
    pub fn new(dim: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::domain(format!(
                "sobol supports dimensions 1..=3, got {dim}"
            )));
        }
        Ok(SobolSpec {
            dim,
            skip_zero: true,
        })
    }
}

const SOBOL_BITS: u32 = 52;

/// Direction integers `v_k = m_k · 2^(BITS−k)`, k = 1..=BITS, for one
/// dimension. `poly` lists the recurrence (degree s, coefficient a_1 for
/// dimension 3); `m_init` seeds the first s values.
fn direction_integers(m_init: &[u64], recurrence: fn(&[u64], usize) -> u64) -> Vec<u64> {
    let s = m_init.len();
    let mut m = vec![0u64; SOBOL_BITS as usize + 1];
    m[1..=s].copy_from_slice(m_init);
    for k in s + 1..=SOBOL_BITS as usize {
        m[k] = recurrence(&m, k);
    }
    let mut v = vec![0u64; SOBOL_BITS as usize + 1];
    for k in 1..=SOBOL_BITS as usize {
        debug_assert!(m[k] % 2 == 1 && m[k] < (1 << k), "m_{k} out of range");
        v[k] = m[k] << (SOBOL_BITS - k as u32);
    }
    v
}

fn sobol_directions(dim: usize) -> Vec<Vec<u64>> {
    let mut dirs = Vec::with_capacity(dim);
    // Dimension 1: m_k = 1 for all k (plain van der Corput in base 2).
    dirs.push(direction_integers(
        &(0..SOBOL_BITS as usize).map(|_| 1u64).collect::<Vec<_>>(),
        |_, _| unreachable!("fully seeded"),
    ));
    if dim >= 2 {
        // x + 1: m_k = 2·m_{k−1} ⊕ m_{k−1}
        dirs.push(direction_integers(&[1], |m, k| (2 * m[k - 1]) ^ m[k - 1]));
    }
    if dim >= 3 {
        // x² + x + 1: m_k = 2·m_{k−1} ⊕ 4·m_{k−2} ⊕ m_{k−2}
        dirs.push(direction_integers(&[1, 3], |m, k| {
            (2 * m[k - 1]) ^ (4 * m[k - 2]) ^ m[k - 2]
        }));
    }
    dirs
}

/// Generates `n` Sobol points by direct binary expansion of the index
/// (coordinate k of point i is the XOR of the direction integers selected by
/// the set bits of i). With `skip_zero` the sequence starts at index 1, which
/// makes dimension 1 coincide with van der Corput base 2 point by point.
pub fn sobol(spec: &SobolSpec, n: usize) -> Result<PointSet> {
    if !(1..=3).contains(&spec.dim) {
        return Err(Error::domain(format!(
            "sobol supports dimensions 1..=3, got {}",
            spec.dim
        )));
    }
    let dirs = sobol_directions(spec.dim);
    let scale = 1.0 / (1u64 << SOBOL_BITS) as f64;
    let start: u64 = if spec.skip_zero { 1 } else { 0 };
    let mut ps = PointSet::new(spec.dim)?;
    for c in 0..n as u64 {
        let idx = start + c;
        if idx >= (1 << SOBOL_BITS) {
            return Err(Error::domain("sobol index exceeds 2^52".to_string()));
        }
        let mut coords = Vec::with_capacity(spec.dim);
        for v in &dirs {
            let mut acc = 0u64;
            let mut t = idx;
            let mut k = 1usize;
            while t > 0 {
                if t & 1 == 1 {
                    acc ^= v[k];
                }
                t >>= 1;
                k += 1;
            }
            coords.push(acc as f64 * scale);
        }
        ps.push(Point::new(coords));
    }
    Ok(ps)
}

/// Parses a permutation file: one permutation per line, the images of
/// 0, 1, …, b−1 as whitespace-separated integers; `#` comments and blank
/// lines are skipped. Bijectivity is checked against the base at use time.
pub fn parse_permutations<R: Read>(r: R) -> Result<Vec<Vec<u32>>> {
    let reader = BufReader::new(r);
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::parse(lineno, format!("read failed: {e}")))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut perm = Vec::new();
        for tok in trimmed.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("not a digit image: {tok:?}")))?;
            perm.push(v);
        }
        out.push(perm);
    }
    if out.is_empty() {
        return Err(Error::parse(0, "no permutations found".to_string()));
    }
    Ok(out)
}
