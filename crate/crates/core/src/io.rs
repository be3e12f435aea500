//! Vertex-per-line text format.
//!
//! One point per line as three whitespace-separated decimals. Blank lines
//! and everything after `#` are ignored. Closed polygons do not repeat the
//! first vertex. Coordinates are written with 17 significant digits so that
//! a write/read cycle is exact.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::polygon::{Polygon, EQUILATERAL_TOL};

pub fn parse_points(text: &str) -> Result<Vec<Vec3>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut c = [0.0; 3];
        for (k, f) in fields.iter().enumerate() {
            c[k] = f.parse::<f64>().map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("{f:?}: {e}"),
            })?;
        }
        out.push(Vec3::from(c));
    }
    Ok(out)
}

pub fn parse_polygon(text: &str) -> Result<Polygon> {
    Polygon::from_vertices(parse_points(text)?, EQUILATERAL_TOL)
}

pub fn read_polygon(path: impl AsRef<Path>) -> Result<Polygon> {
    parse_polygon(&std::fs::read_to_string(path)?)
}

/// Seventeen significant digits, enough to round-trip any `f64`; `inf`,
/// `-inf` and `NaN` otherwise.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn format_points(points: &[Vec3], header: Option<&str>) -> String {
    let mut s = String::with_capacity(points.len() * 72);
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(s, "# {line}");
        }
    }
    for p in points {
        let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z);
    }
    s
}

pub fn format_polygon(p: &Polygon) -> String {
    format_points(
        p.vertices(),
        Some(&format!("n={} length={:.16e}", p.n(), p.length())),
    )
}

pub fn write_polygon(path: impl AsRef<Path>, p: &Polygon) -> Result<()> {
    std::fs::write(path, format_polygon(p))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let text = "# square\n\n0 0 0\n0.25 0 0 # trailing\n  0.25 0.25 0\n0 0.25 0\n";
        let p = parse_polygon(text).unwrap();
        assert_eq!(p.n(), 4);
    }

    #[test]
    fn bad_lines_report_line_number() {
        match parse_points("0 0 0\n1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_points("0 0 x"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn write_read_is_exact() {
        let p = Polygon::regular(17).unwrap();
        let q = parse_polygon(&format_polygon(&p)).unwrap();
        assert_eq!(p.vertices(), q.vertices());
    }
}
