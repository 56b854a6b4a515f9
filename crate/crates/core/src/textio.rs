use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::points::{Point, PointSet};
use crate::{Error, Result};

/// Formats a float with 17 significant decimal digits, enough to reproduce
/// the exact bit pattern when re-parsed. Values with decimal exponent in
/// [-4, 16] are written in positional notation (`0.50000000000000000`),
/// anything more extreme in scientific notation.
pub fn fmt_g17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.16e}"); // d.dddddddddddddddde<exp>
    let (mant, exp) = s.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 17);
    if !(-4..17).contains(&exp) {
        return format!("{sign}{mant}e{exp}");
    }
    if exp >= 0 {
        let split = (exp + 1) as usize;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

/// Writes a point set in the plain-text exchange format: any number of
/// leading `#` comment lines, then one point per line, coordinates separated
/// by single spaces, every value at 17 significant digits, LF line endings.
pub fn write_points<W: Write>(w: &mut W, ps: &PointSet, comments: &[String]) -> std::io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    for p in ps.points() {
        let line: Vec<String> = p.coords.iter().map(|&c| fmt_g17(c)).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Reads the format produced by [`write_points`]. Blank lines and lines
/// starting with `#` are skipped. All rows must have the same number of
/// columns; coordinate range is *not* enforced here (use
/// [`crate::points::validate_point_set`]).
pub fn read_points<R: Read>(r: R) -> Result<PointSet> {
    let reader = BufReader::new(r);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dim = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::parse(lineno, format!("read failed: {e}")))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for tok in trimmed.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("not a number: {tok:?}")))?;
            row.push(v);
        }
        if rows.is_empty() {
            dim = row.len();
        } else if row.len() != dim {
            return Err(Error::parse(
                lineno,
                format!("expected {dim} coordinates, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(0, "file contains no points".to_string()));
    }
    let mut ps = PointSet::new(dim)?;
    for row in rows {
        ps.push(Point::new(row));
    }
    Ok(ps)
}

/// [`write_points`] to a filesystem path.
pub fn write_points_to_path(path: &Path, ps: &PointSet, comments: &[String]) -> Result<()> {
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_points(&mut f, ps, comments).map_err(|e| Error::io(path, e))
}

/// [`read_points`] from a filesystem path.
pub fn read_points_from_path(path: &Path) -> Result<PointSet> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_points(f)
}
