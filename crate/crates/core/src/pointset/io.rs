//! Plain-text point files: one point per line, coordinates separated by
//! whitespace, no header. Blank lines are ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::Scalar;

pub fn read_points<T: Scalar>(path: impl AsRef<Path>) -> Result<PointSet<T>> {
    let reader = BufReader::new(File::open(path)?);
    parse_points(reader)
}

pub(crate) fn parse_points<T: Scalar, R: BufRead>(reader: R) -> Result<PointSet<T>> {
    let mut dim = None;
    let mut coords = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut count = 0;
        for tok in line.split_whitespace() {
            let value: T = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                reason: format!("malformed number {tok:?}"),
            })?;
            if !(value >= T::zero() && value <= T::one()) {
                return Err(Error::Parse {
                    line: lineno,
                    reason: format!("coordinate {tok} outside [0,1]"),
                });
            }
            coords.push(value);
            count += 1;
        }
        match dim {
            None => dim = Some(count),
            Some(d) if d != count => {
                return Err(Error::Parse {
                    line: lineno,
                    reason: format!("expected {d} coordinates, found {count}"),
                })
            }
            Some(_) => {}
        }
    }
    let dim = dim.ok_or(Error::NoPoints)?;
    PointSet::new(dim, coords)
}

/// Writes with 17 significant digits, enough for an exact round trip.
pub fn write_points<T: Scalar>(points: &PointSet<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    format_points(points, &mut w)?;
    w.flush()?;
    Ok(())
}

/// Writes points in the file format to any writer.
pub fn format_points<T: Scalar, W: Write>(points: &PointSet<T>, w: &mut W) -> Result<()> {
    for p in points.iter() {
        let mut first = true;
        for c in p {
            if !first {
                w.write_all(b" ")?;
            }
            write!(w, "{c:.16e}")?;
            first = false;
        }
        w.write_all(b"\n")?;
    }
    Ok(())
}
