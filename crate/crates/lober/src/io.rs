//! Tecplot-ASCII curve files and the batch output contract.
//!
//! A curve file is one `VARIABLES` header naming two variables, an optional
//! `ZONE` line, and N rows of two reals. Both the standard quote style
//! (`VARIABLES = "x" "y"`) and the doubled-single-quote style sometimes found
//! in the wild (`VARIABLES=''x''''y''`) are accepted on read; writes emit the
//! standard form. Numbers are written in shortest round-trip form, so
//! write-then-read reproduces the exact values. All writes go to a temp file
//! first and are renamed into place, so failed runs leave no partial files.

use crate::classes::LobeReport;
use crate::geometry::{ClosedCurve, CurveLoc, Point2, Walk};
use crate::intersect::IntersectionSet;
use crate::winding;
use crate::{Error, Result};
use std::io::Write;
use std::path::Path;

/// A parsed curve file, before geometric validation.
#[derive(Debug, Clone)]
pub struct CurveFile {
    pub zone_title: String,
    pub rows: Vec<Point2>,
    pub warnings: Vec<String>,
}

fn format_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

/// Counts the declared variables in a `VARIABLES` header, accepting `"x"`,
/// `'x'`, and `''x''` quoting with or without separators.
fn count_variables(rest: &str) -> usize {
    let mut names = 0;
    let mut in_quote = false;
    for ch in rest.chars() {
        match ch {
            '"' | '\'' => {
                in_quote = !in_quote;
                if in_quote {
                    names += 1;
                }
            }
            _ => {}
        }
    }
    // doubled single quotes ('' x '') open and close around each name, so
    // every name toggles twice; plain quotes toggle once per side. Both end
    // balanced; names were counted on opening toggles. The doubled style
    // counts each name twice.
    if rest.contains("''") && names % 2 == 0 {
        names / 2
    } else {
        names
    }
}

/// Reads a curve file: header, first zone, data rows.
pub fn read_curve_file(path: &Path) -> Result<CurveFile> {
    let text = std::fs::read_to_string(path)?;
    let mut zone_title = String::new();
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut saw_variables = false;
    let mut zones_seen = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let upper = line.to_ascii_uppercase();
        if upper.starts_with("VARIABLES") {
            if saw_variables {
                warnings.push(format!("line {line_no}: extra VARIABLES header ignored"));
                continue;
            }
            let rest = line
                .split_once('=')
                .map(|x| x.1)
                .ok_or_else(|| format_err(path, line_no, "VARIABLES header without '='"))?;
            let n = count_variables(rest);
            if n != 2 {
                return Err(format_err(
                    path,
                    line_no,
                    format!("expected exactly two variables, found {n}"),
                ));
            }
            saw_variables = true;
            continue;
        }
        if upper.starts_with("ZONE") {
            zones_seen += 1;
            if zones_seen == 1 {
                if let Some(t) = line.split_once('=').map(|(_, t)| t.trim()) {
                    zone_title = t.trim_matches(|c| c == '"' || c == '\'').to_string();
                }
            } else {
                warnings.push(format!(
                    "line {line_no}: additional ZONE ignored; only the first zone is read"
                ));
                break;
            }
            continue;
        }
        if !saw_variables {
            return Err(format_err(
                path,
                line_no,
                "data before a VARIABLES header (not a curve file?)",
            ));
        }
        let mut it = line.split_whitespace();
        let (xs, ys) = match (it.next(), it.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(format_err(path, line_no, "expected two columns")),
        };
        if it.next().is_some() {
            return Err(format_err(path, line_no, "expected exactly two columns"));
        }
        let x: f64 = xs
            .parse()
            .map_err(|_| format_err(path, line_no, format!("not a number: {xs:?}")))?;
        let y: f64 = ys
            .parse()
            .map_err(|_| format_err(path, line_no, format!("not a number: {ys:?}")))?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(format_err(path, line_no, "non-finite coordinate"));
        }
        rows.push(Point2::new(x, y));
    }
    if !saw_variables {
        return Err(format_err(path, 1, "missing VARIABLES header"));
    }
    Ok(CurveFile {
        zone_title,
        rows,
        warnings,
    })
}

/// Reads and validates a curve. A trailing repeat of the first point is
/// dropped by the curve constructor.
pub fn read_curve(path: &Path) -> Result<ClosedCurve> {
    ClosedCurve::new(read_curve_file(path)?.rows)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn render_points<'a>(zone_title: &str, pts: impl Iterator<Item = &'a Point2>) -> String {
    let mut out = String::new();
    out.push_str("VARIABLES = \"x\" \"y\"\n");
    out.push_str(&format!("ZONE T=\"{zone_title}\"\n"));
    for p in pts {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

/// Writes a curve in Tecplot ASCII form.
pub fn write_curve(path: &Path, curve: &ClosedCurve, zone_title: &str) -> Result<()> {
    write_atomic(path, &render_points(zone_title, curve.vertices().iter()))
}

/// Writes a bare point list (used for crossing and boundary files).
pub fn write_points(path: &Path, points: &[Point2], zone_title: &str) -> Result<()> {
    write_atomic(path, &render_points(zone_title, points.iter()))
}

/// Writes the one-line result file: the two set-difference areas and their
/// relative errors. Areas at or below the error estimate print as 0; the
/// relative error of a zero area prints as 0.
pub fn write_result(path: &Path, report: &LobeReport) -> Result<()> {
    let delta = report.error_estimate;
    let fmt = |area: f64| -> (f64, f64) {
        if area <= delta || area <= 0.0 {
            (0.0, 0.0)
        } else {
            (area, delta / area)
        }
    };
    let (a12, r12) = fmt(report.a1_minus_a2);
    let (a21, r21) = fmt(report.a2_minus_a1);
    write_atomic(path, &format!("{a12} {a21} {r12} {r21}\n"))
}

/// Like [`write_result`] but with caller-supplied relative-error columns
/// (used when an oracle cross-check replaces the redundancy estimate).
pub fn write_result_with_rel(path: &Path, report: &LobeReport, r12: f64, r21: f64) -> Result<()> {
    let delta = report.error_estimate;
    let area = |a: f64| if a <= delta || a <= 0.0 { 0.0 } else { a };
    write_atomic(
        path,
        &format!(
            "{} {} {} {}\n",
            area(report.a1_minus_a2),
            area(report.a2_minus_a1),
            r12,
            r21
        ),
    )
}

/// File names of the six per-run artifacts.
pub const ARTIFACT_NAMES: [&str; 6] = [
    "c10.dat", "c20.dat", "c11.dat", "c22.dat", "c12.dat", "c21.dat",
];

/// Writes the six artifact files into `dir`:
/// crossings ordered along C1 (`c10.dat`) and along C2 (`c20.dat`), the
/// boundary points of `C1 n C2` / `C2 n C1` (`c11.dat`, `c22.dat`), and of
/// `C1 \ C2` / `C2 \ C1` (`c12.dat`, `c21.dat`). Curve points are
/// partitioned by the interior indicator of the other curve; crossing points
/// belong to both partitions and appear in both files. Points riding on the
/// other curve (shared segments) go to the intersection-boundary file.
pub fn write_artifacts(
    dir: &Path,
    set: &IntersectionSet,
    c1: &ClosedCurve,
    c2: &ClosedCurve,
) -> Result<()> {
    let along_c1: Vec<Point2> = set.points().iter().map(|p| p.point).collect();
    let along_c2: Vec<Point2> = (0..set.len()).map(|r| set.by_rank_c2(r).point).collect();
    write_points(&dir.join("c10.dat"), &along_c1, "crossings along C1")?;
    write_points(&dir.join("c20.dat"), &along_c2, "crossings along C2")?;

    let locs1: Vec<CurveLoc> = set.points().iter().map(|p| p.on_c1).collect();
    let locs2: Vec<CurveLoc> = set.points().iter().map(|p| p.on_c2).collect();
    let (inside1, outside1) = partition_boundary(c1, c2, &locs1);
    let (inside2, outside2) = partition_boundary(c2, c1, &locs2);
    write_points(&dir.join("c11.dat"), &inside1, "C1 boundary of C1 n C2")?;
    write_points(&dir.join("c22.dat"), &inside2, "C2 boundary of C2 n C1")?;
    write_points(&dir.join("c12.dat"), &outside1, "C1 boundary of C1 \\ C2")?;
    write_points(&dir.join("c21.dat"), &outside2, "C2 boundary of C2 \\ C1")?;
    Ok(())
}

/// Splits a curve's points into (inside other, outside other) by arcs
/// between crossings. Arc end points (the crossings) land in both lists.
fn partition_boundary(
    curve: &ClosedCurve,
    other: &ClosedCurve,
    locs: &[CurveLoc],
) -> (Vec<Point2>, Vec<Point2>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    let arcs = winding::arc_partition(curve, other, locs);
    if locs.is_empty() {
        let target = if arcs[0].2 <= 0 {
            &mut inside
        } else {
            &mut outside
        };
        target.extend_from_slice(curve.vertices());
        return (inside, outside);
    }
    for (from, to, w) in arcs {
        let target = if w <= 0 { &mut inside } else { &mut outside };
        let pts = if from == to {
            // a single crossing: the arc wraps the whole curve
            let n = curve.len();
            let mut v = vec![curve.point_at(from)];
            let mut i = (from.seg + 1) % n;
            for _ in 0..n {
                v.push(curve.vertices()[i]);
                i = (i + 1) % n;
            }
            v.push(curve.point_at(from));
            v
        } else {
            curve.arc_points(from, to, Walk::Forward)
        };
        for p in pts {
            if target.last() != Some(&p) {
                target.push(p);
            }
        }
    }
    (inside, outside)
}
