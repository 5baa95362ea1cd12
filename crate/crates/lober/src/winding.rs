//! Interior function from the exact winding integral, and the redundant
//! area integrals that yield set differences with an error estimate.
//!
//! For a polyline, the total angle a closed curve subtends about a point is
//! a closed-form sum: each segment contributes the signed angle between the
//! vectors from the query point to its two end points,
//! `atan2(u x w, u . w)` with `u = a - p`, `w = b - p`. No quadrature is
//! involved, so `|J|` is 2*pi inside and 0 outside a simple curve up to
//! rounding. Thresholding at pi gives the interior indicator.
//!
//! The Q integrals weight each curve's contour sum by the indicator of the
//! other curve. Curves are split at every detectable crossing so the
//! indicator is constant along each integrated arc; an arc whose probe point
//! lies on the other curve is bisected, and slivers that stay on-boundary at
//! full depth get the two-sided average weight 0, which reproduces the exact
//! limits for overlapping common segments.

use crate::classes::{LobeReport, Method};
use crate::geometry::{ClosedCurve, CurveLoc, Orientation, Point2, Segment, Walk};
use crate::intersect::find_intersections_tolerant;
use crate::{exec, Error, Result};

/// On-boundary rejection distance as a fraction of the curve's
/// bounding-box diagonal.
pub const BOUNDARY_TOL_FACTOR: f64 = 1e-9;

/// Maximum recursive bisections of an arc whose probe point sits on the
/// other curve.
const MAX_BISECT: usize = 8;

/// Winding integral plus derived indicator at one query point.
#[derive(Debug, Clone, Copy)]
pub struct WindingResult {
    /// Total subtended angle in radians (2*pi times the turn count).
    pub j_value: f64,
    /// -1 inside, +1 outside.
    pub indicator: i8,
}

/// Absolute on-boundary tolerance for a curve.
pub fn boundary_tolerance(curve: &ClosedCurve) -> f64 {
    BOUNDARY_TOL_FACTOR * curve.bbox_diag()
}

fn point_segment_distance(s: Segment, p: Point2) -> f64 {
    let (vx, vy) = s.dir();
    let wx = p.x - s.a.x;
    let wy = p.y - s.a.y;
    let proj = vx * wx + vy * wy;
    if proj <= 0.0 {
        return p.dist(s.a);
    }
    let len2 = vx * vx + vy * vy;
    if proj >= len2 {
        return p.dist(s.b);
    }
    p.dist(s.eval(proj / len2))
}

/// Distance from a point to the nearest point of the curve.
pub fn distance_to(curve: &ClosedCurve, p: Point2) -> f64 {
    exec::min_indexed(curve.len(), |i| point_segment_distance(curve.segment(i), p))
}

/// Sequential twin of [`distance_to`].
pub fn distance_to_seq(curve: &ClosedCurve, p: Point2) -> f64 {
    (0..curve.len())
        .map(|i| point_segment_distance(curve.segment(i), p))
        .fold(f64::INFINITY, f64::min)
}

/// Grid over a curve's segments answering "is this point within `tol` of
/// the curve" in O(1). The cell size is far above `tol`, so every segment
/// within `tol` of a query point sits in the 3x3 cell neighborhood.
struct ProximityIndex<'a> {
    curve: &'a ClosedCurve,
    tol: f64,
    cell: f64,
    origin: Point2,
    map: std::collections::HashMap<(i64, i64), Vec<u32>>,
}

impl<'a> ProximityIndex<'a> {
    fn build(curve: &'a ClosedCurve, tol: f64) -> Self {
        let (lo, _) = curve.bbox();
        let diag = curve.bbox_diag();
        let mean_seg = perimeter_estimate(curve) / curve.len() as f64;
        let cell = (diag / 1024.0)
            .max(mean_seg)
            .max(tol * 16.0)
            .max(f64::MIN_POSITIVE);
        let mut map: std::collections::HashMap<(i64, i64), Vec<u32>> =
            std::collections::HashMap::new();
        for i in 0..curve.len() {
            let s = curve.segment(i);
            let (x0, x1) = if s.a.x <= s.b.x {
                (s.a.x, s.b.x)
            } else {
                (s.b.x, s.a.x)
            };
            let (y0, y1) = if s.a.y <= s.b.y {
                (s.a.y, s.b.y)
            } else {
                (s.b.y, s.a.y)
            };
            let cx0 = ((x0 - lo.x) / cell).floor() as i64;
            let cx1 = ((x1 - lo.x) / cell).floor() as i64;
            let cy0 = ((y0 - lo.y) / cell).floor() as i64;
            let cy1 = ((y1 - lo.y) / cell).floor() as i64;
            for cx in cx0..=cx1 {
                for cy in cy0..=cy1 {
                    map.entry((cx, cy)).or_default().push(i as u32);
                }
            }
        }
        Self {
            curve,
            tol,
            cell,
            origin: lo,
            map,
        }
    }

    /// Same answer as `distance_to(curve, p) <= tol`.
    fn on_boundary(&self, p: Point2) -> bool {
        let cx = ((p.x - self.origin.x) / self.cell).floor() as i64;
        let cy = ((p.y - self.origin.y) / self.cell).floor() as i64;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(segs) = self.map.get(&(cx + dx, cy + dy)) {
                    for &i in segs {
                        if point_segment_distance(self.curve.segment(i as usize), p) <= self.tol {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

fn perimeter_estimate(curve: &ClosedCurve) -> f64 {
    (0..curve.len()).map(|i| curve.segment(i).len()).sum()
}

fn j_term(s: Segment, p: Point2) -> f64 {
    let ux = s.a.x - p.x;
    let uy = s.a.y - p.y;
    let wx = s.b.x - p.x;
    let wy = s.b.y - p.y;
    let cross = ux * wy - uy * wx;
    if cross == 0.0 {
        // query point collinear with the segment: zero subtended angle
        return 0.0;
    }
    cross.atan2(ux * wx + uy * wy)
}

fn j_sum(curve: &ClosedCurve, p: Point2) -> f64 {
    exec::sum_indexed(curve.len(), |i| j_term(curve.segment(i), p))
}

/// Sequential twin of the winding sum, for benchmarking.
pub fn winding_integral_seq(curve: &ClosedCurve, p: Point2) -> Result<f64> {
    if distance_to_seq(curve, p) <= boundary_tolerance(curve) {
        return Err(Error::OnBoundary { x: p.x, y: p.y });
    }
    Ok(exec::sum_indexed_seq(curve.len(), |i| {
        j_term(curve.segment(i), p)
    }))
}

/// Total angle the curve subtends about `p` (signed; one positive turn of a
/// counter-clockwise curve gives 2*pi). Errors if `p` lies on the curve
/// within boundary tolerance.
pub fn winding_integral(curve: &ClosedCurve, p: Point2) -> Result<f64> {
    if distance_to(curve, p) <= boundary_tolerance(curve) {
        return Err(Error::OnBoundary { x: p.x, y: p.y });
    }
    Ok(j_sum(curve, p))
}

/// -1 if `p` is inside the curve, +1 outside, judged by `|J| >= pi` so the
/// test is orientation-independent. Multiply-wound curves are rejected.
pub fn interior_indicator(curve: &ClosedCurve, p: Point2) -> Result<i8> {
    let j = winding_integral(curve, p)?;
    indicator_checked(j)
}

/// Winding integral and indicator together.
pub fn winding_result(curve: &ClosedCurve, p: Point2) -> Result<WindingResult> {
    let j = winding_integral(curve, p)?;
    Ok(WindingResult {
        j_value: j,
        indicator: indicator_checked(j)?,
    })
}

fn indicator_checked(j: f64) -> Result<i8> {
    if j.abs() > 3.0 * std::f64::consts::PI {
        return Err(Error::MultiWinding(j));
    }
    Ok(indicator_raw(j))
}

fn indicator_raw(j: f64) -> i8 {
    if j.abs() >= std::f64::consts::PI {
        -1
    } else {
        1
    }
}

/// The three redundant area integrals: `q1` the symmetric difference,
/// `q2` the union, `q3` the intersection area.
#[derive(Debug, Clone, Copy)]
pub struct QTriple {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl QTriple {
    /// Redundancy residual `|q2 - q3 - q1| / 4`, the area error estimate.
    pub fn delta(&self) -> f64 {
        0.25 * (self.q2 - self.q3 - self.q1).abs()
    }
}

/// Cumulative arclength table for locating points along a curve.
struct ArcLength {
    acc: Vec<f64>,
}

impl ArcLength {
    fn build(curve: &ClosedCurve) -> Self {
        let n = curve.len();
        let mut acc = Vec::with_capacity(n + 1);
        acc.push(0.0);
        for i in 0..n {
            acc.push(acc[i] + curve.segment(i).len());
        }
        Self { acc }
    }

    fn total(&self) -> f64 {
        *self.acc.last().unwrap()
    }

    fn position_of(&self, loc: CurveLoc) -> f64 {
        let seg_len = self.acc[loc.seg + 1] - self.acc[loc.seg];
        self.acc[loc.seg] + loc.t * seg_len
    }

    fn loc_at(&self, len: f64) -> CurveLoc {
        let total = self.total();
        let mut len = len % total;
        if len < 0.0 {
            len += total;
        }
        // acc[seg] <= len < acc[seg+1]
        let seg = self.acc.partition_point(|&a| a <= len).saturating_sub(1);
        let seg = seg.min(self.acc.len() - 2);
        let seg_len = self.acc[seg + 1] - self.acc[seg];
        let t = if seg_len > 0.0 {
            ((len - self.acc[seg]) / seg_len).min(1.0 - f64::EPSILON)
        } else {
            0.0
        };
        CurveLoc::new(seg, t)
    }
}

/// One integrated piece of a curve: indicator weight (of the other curve)
/// and the conventional `x dy - y dx` half-sum along the piece.
struct Piece {
    weight: f64,
    contour: f64,
}

struct PieceScan<'a> {
    curve: &'a ClosedCurve,
    lengths: ArcLength,
    other: &'a ClosedCurve,
    near_other: ProximityIndex<'a>,
    multiwound: usize,
    exhausted: usize,
}

impl<'a> PieceScan<'a> {
    fn new(curve: &'a ClosedCurve, other: &'a ClosedCurve) -> Self {
        Self {
            curve,
            lengths: ArcLength::build(curve),
            other,
            near_other: ProximityIndex::build(other, boundary_tolerance(other)),
            multiwound: 0,
            exhausted: 0,
        }
    }

    /// Conventional contour half-sum between two arclength positions
    /// (walking forward; `b - a` may wrap past the curve start).
    fn conventional_sum(&self, a: f64, b: f64) -> f64 {
        let total = self.lengths.total();
        if b - a >= total {
            return -self.curve.contour_integral();
        }
        let from = self.lengths.loc_at(a);
        let to = self.lengths.loc_at(b);
        -self.curve.arc_chord_sum(from, to, Walk::Forward)
    }

    /// An on-boundary sub-arc that spans at most a quarter of one straight
    /// segment and whose end points also ride the other curve is a shared
    /// segment: further bisection cannot separate it from the boundary.
    fn is_shared_sliver(&self, a: f64, b: f64, mid_loc: CurveLoc) -> bool {
        let seg_len = self.curve.segment(mid_loc.seg).len();
        if b - a > 0.26 * seg_len {
            return false;
        }
        let pa = self.curve.point_at(self.lengths.loc_at(a));
        let pb = self.curve.point_at(self.lengths.loc_at(b));
        self.near_other.on_boundary(pa) && self.near_other.on_boundary(pb)
    }

    fn scan(&mut self, a: f64, b: f64, depth: usize, out: &mut Vec<Piece>) {
        let mid = 0.5 * (a + b);
        let mid_loc = self.lengths.loc_at(mid);
        let probe = self.curve.point_at(mid_loc);
        if !self.near_other.on_boundary(probe) {
            let j = j_sum(self.other, probe);
            if j.abs() > 3.0 * std::f64::consts::PI {
                self.multiwound += 1;
            }
            out.push(Piece {
                weight: indicator_raw(j) as f64,
                contour: self.conventional_sum(a, b),
            });
        } else if depth >= MAX_BISECT || self.is_shared_sliver(a, b, mid_loc) {
            // a sliver that hugs the other curve at every probe: weight it
            // with the two-sided average 0, exact for shared segments
            self.exhausted += 1;
            out.push(Piece {
                weight: 0.0,
                contour: self.conventional_sum(a, b),
            });
        } else {
            self.scan(a, mid, depth + 1, out);
            self.scan(mid, b, depth + 1, out);
        }
    }
}

/// Splits `curve` at the given locations (sorted along it) and returns the
/// indicator-weighted pieces against `other`.
fn curve_pieces(
    curve: &ClosedCurve,
    other: &ClosedCurve,
    mut locs: Vec<CurveLoc>,
    notes: &mut Vec<String>,
) -> Vec<Piece> {
    locs.sort_by(|a, b| (a.seg, a.t).partial_cmp(&(b.seg, b.t)).unwrap());
    locs.dedup_by(|a, b| a == b);
    let mut scan = PieceScan::new(curve, other);
    let mut out = Vec::new();
    if locs.is_empty() {
        scan.scan(0.0, scan.lengths.total(), 0, &mut out);
    } else {
        let total = scan.lengths.total();
        let positions: Vec<f64> = locs.iter().map(|&l| scan.lengths.position_of(l)).collect();
        for k in 0..positions.len() {
            let a = positions[k];
            let b = if k + 1 < positions.len() {
                positions[k + 1]
            } else {
                positions[0] + total
            };
            if b > a {
                scan.scan(a, b, 0, &mut out);
            }
        }
    }
    if scan.multiwound > 0 {
        notes.push(format!(
            "{} probe(s) saw a multiply-wound curve; indicator taken from the pi threshold",
            scan.multiwound
        ));
    }
    if scan.exhausted > 0 {
        notes.push(format!(
            "{} arc sliver(s) stayed on-boundary through {} bisections and were \
             weighted 0 (shared-segment limit)",
            scan.exhausted, MAX_BISECT
        ));
    }
    out
}

fn q_fold(pieces: &[Piece]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let q1 = pieces.iter().map(|p| p.weight * p.contour).collect();
    let q2 = pieces
        .iter()
        .map(|p| 0.5 * (p.weight + 1.0) * p.contour)
        .collect();
    let q3 = pieces
        .iter()
        .map(|p| 0.5 * (1.0 - p.weight) * p.contour)
        .collect();
    (q1, q2, q3)
}

/// Computes the three redundant area integrals. Both curves are normalized
/// counter-clockwise internally and split at every crossing the tolerant
/// detector can find, so the indicator is constant on each integrated arc.
pub fn q_integrals(c1: &ClosedCurve, c2: &ClosedCurve) -> QTriple {
    q_integrals_with_notes(c1, c2).0
}

fn q_integrals_with_notes(c1: &ClosedCurve, c2: &ClosedCurve) -> (QTriple, Vec<String>) {
    let c1n = c1.oriented(Orientation::Ccw);
    let c2n = c2.oriented(Orientation::Ccw);
    let set = find_intersections_tolerant(&c1n, &c2n);
    let mut notes = Vec::new();
    let locs1: Vec<CurveLoc> = set.points().iter().map(|p| p.on_c1).collect();
    let locs2: Vec<CurveLoc> = set.points().iter().map(|p| p.on_c2).collect();
    let pieces1 = curve_pieces(&c1n, &c2n, locs1, &mut notes);
    let pieces2 = curve_pieces(&c2n, &c1n, locs2, &mut notes);

    let (mut t1, mut t2, mut t3) = q_fold(&pieces1);
    let (u1, u2, u3) = q_fold(&pieces2);
    t1.extend(u1);
    t2.extend(u2);
    t3.extend(u3);
    (
        QTriple {
            q1: exec::pairwise_sum(&t1),
            q2: exec::pairwise_sum(&t2),
            q3: exec::pairwise_sum(&t3),
        },
        notes,
    )
}

/// Set-difference areas by the winding method, with the redundancy residual
/// as the error estimate. Valid for non-transverse inputs, including curves
/// with shared segments.
pub fn set_difference_areas(c1: &ClosedCurve, c2: &ClosedCurve) -> LobeReport {
    let a1 = c1.enclosed_area();
    let a2 = c2.enclosed_area();
    let (q, mut notes) = q_integrals_with_notes(c1, c2);
    let common = 0.25 * (q.q1 + q.q2 - q.q3);
    let delta = q.delta();
    let mut a1_minus_a2 = 0.5 * (a1 - a2) + common;
    let mut a2_minus_a1 = 0.5 * (a2 - a1) + common;
    for (name, v) in [
        ("[A1\\A2]", &mut a1_minus_a2),
        ("[A2\\A1]", &mut a2_minus_a1),
    ] {
        if *v < 0.0 {
            if -*v > delta {
                notes.push(format!(
                    "{name} = {v} clamped to 0 beyond the error estimate {delta}"
                ));
            }
            *v = 0.0;
        }
    }
    LobeReport {
        classes: Vec::new(),
        a1_minus_a2,
        a2_minus_a1,
        method: Method::Winding,
        error_estimate: delta,
        notes,
    }
}

/// Partitions a curve into arcs between the given split locations and
/// assigns each arc the interior indicator of `other` (-1 inside, +1
/// outside, 0 when every probe lands on `other`, i.e. a shared segment).
/// With no splits the whole curve is one arc.
pub fn arc_partition(
    curve: &ClosedCurve,
    other: &ClosedCurve,
    locs: &[CurveLoc],
) -> Vec<(CurveLoc, CurveLoc, i8)> {
    let lengths = ArcLength::build(curve);
    let near_other = ProximityIndex::build(other, boundary_tolerance(other));
    let total = lengths.total();
    let mut sorted: Vec<CurveLoc> = locs.to_vec();
    sorted.sort_by(|a, b| (a.seg, a.t).partial_cmp(&(b.seg, b.t)).unwrap());
    sorted.dedup_by(|a, b| a == b);

    let probe_indicator = |a: f64, b: f64| -> i8 {
        for frac in [0.5, 0.25, 0.75, 0.375, 0.625] {
            let p = curve.point_at(lengths.loc_at(a + frac * (b - a)));
            if !near_other.on_boundary(p) {
                return indicator_raw(j_sum(other, p));
            }
        }
        0
    };

    if sorted.is_empty() {
        let w = probe_indicator(0.0, total);
        let start = CurveLoc::new(0, 0.0);
        return vec![(start, start, w)];
    }
    let positions: Vec<f64> = sorted.iter().map(|&l| lengths.position_of(l)).collect();
    let mut out = Vec::new();
    for k in 0..sorted.len() {
        let a = positions[k];
        let b = if k + 1 < sorted.len() {
            positions[k + 1]
        } else {
            positions[0] + total
        };
        let to = sorted[(k + 1) % sorted.len()];
        out.push((sorted[k], to, probe_indicator(a, b)));
    }
    out
}
