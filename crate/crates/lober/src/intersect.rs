//! Crossing detection between two closed curves.
//!
//! Candidate segment pairs come from an interval index over x-extents, are
//! screened by a cheap line-side product test (a necessary condition), then
//! confirmed by the two-sided product test (necessary and sufficient), and
//! finally solved as a 2x2 linear system. Crossings at shared vertices are
//! attributed to the segment with `t` in `[0, 1)` and merged within a
//! relative distance tolerance, so each geometric crossing is reported once.

use crate::geometry::{
    cross_dirs, joint_bbox_diag, ClosedCurve, CurveLoc, Orientation, Point2, Segment,
};
use crate::{exec, Error, Result};

/// A crossing below this threshold on `|sin|` of the tangent angle is
/// treated as non-transverse.
pub const TRANSVERSALITY_TOL: f64 = 1e-10;

/// Crossings closer than this fraction of the joint bounding-box diagonal
/// are merged into one.
pub const MERGE_TOL_FACTOR: f64 = 1e-9;

/// One transverse crossing of the two curves.
#[derive(Debug, Clone)]
pub struct IntersectionPoint {
    pub point: Point2,
    /// Location on the first curve, `t` in `[0, 1)`.
    pub on_c1: CurveLoc,
    /// Location on the second curve, `t` in `[0, 1)`.
    pub on_c2: CurveLoc,
    /// Sign of the cross product of the (C1, C2) unit tangents at the
    /// crossing: +1 where C1 passes from the right of C2 to its left.
    pub sign: i8,
    /// Rank of this crossing in traversal order along C1 (0-based).
    pub rank_c1: usize,
    /// Rank of this crossing in traversal order along C2 (0-based).
    pub rank_c2: usize,
}

/// All crossings of a curve pair, ordered along C1.
#[derive(Debug, Clone)]
pub struct IntersectionSet {
    points: Vec<IntersectionPoint>,
    /// `by_rank_c2[r]` = index into `points` of the crossing with C2-rank `r`.
    by_rank_c2: Vec<usize>,
    pub c1_orientation: Orientation,
    pub c2_orientation: Orientation,
    /// Crossings that landed on a curve vertex and were re-attributed.
    pub endpoint_contacts: usize,
}

impl IntersectionSet {
    /// Builds a set from explicit crossings, e.g. a hand-written
    /// configuration. `points` must be ordered by `rank_c1` and the two rank
    /// fields must each be a permutation of `0..points.len()`.
    pub fn from_points(
        points: Vec<IntersectionPoint>,
        c1_orientation: Orientation,
        c2_orientation: Orientation,
    ) -> Result<Self> {
        let n = points.len();
        let mut by_rank_c2 = vec![usize::MAX; n];
        for (i, p) in points.iter().enumerate() {
            if p.rank_c1 != i {
                return Err(Error::Topology(format!(
                    "point {i} is out of C1 order (rank_c1 = {})",
                    p.rank_c1
                )));
            }
            if p.rank_c2 >= n || by_rank_c2[p.rank_c2] != usize::MAX {
                return Err(Error::Topology(format!(
                    "rank_c2 values are not a permutation (point {i})"
                )));
            }
            by_rank_c2[p.rank_c2] = i;
        }
        Ok(Self {
            points,
            by_rank_c2,
            c1_orientation,
            c2_orientation,
            endpoint_contacts: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Crossings in C1 traversal order (`points()[i].rank_c1 == i`).
    pub fn points(&self) -> &[IntersectionPoint] {
        &self.points
    }

    pub fn by_rank_c1(&self, rank: usize) -> &IntersectionPoint {
        &self.points[rank]
    }

    pub fn by_rank_c2(&self, rank: usize) -> &IntersectionPoint {
        &self.points[self.by_rank_c2[rank]]
    }

    /// Index (into `points`) of the crossing one step along C1 from `idx`,
    /// in stored traversal direction.
    pub fn next_along_c1(&self, idx: usize) -> usize {
        (idx + 1) % self.points.len()
    }

    pub fn prev_along_c1(&self, idx: usize) -> usize {
        (idx + self.points.len() - 1) % self.points.len()
    }

    pub fn next_along_c2(&self, idx: usize) -> usize {
        let r = (self.points[idx].rank_c2 + 1) % self.points.len();
        self.by_rank_c2[r]
    }

    pub fn prev_along_c2(&self, idx: usize) -> usize {
        let n = self.points.len();
        let r = (self.points[idx].rank_c2 + n - 1) % n;
        self.by_rank_c2[r]
    }
}

/// Value of the line equation through `s` at point `p`:
/// `(y2-y1) x - (x2-x1) y - x1 y2 + y1 x2`.
#[inline]
fn line_eq(s: Segment, p: Point2) -> f64 {
    (s.b.y - s.a.y) * p.x - (s.b.x - s.a.x) * p.y - s.a.x * s.b.y + s.a.y * s.b.x
}

/// Necessary condition: the endpoints of `s2` do not lie strictly on the
/// same side of the line through `s1`. `false` guarantees no intersection.
pub fn may_intersect(s1: Segment, s2: Segment) -> bool {
    line_eq(s1, s2.a) * line_eq(s1, s2.b) <= 0.0
}

/// Necessary and sufficient: both one-sided conditions hold.
pub fn segments_intersect(s1: Segment, s2: Segment) -> bool {
    may_intersect(s1, s2) && may_intersect(s2, s1)
}

/// Solves the 2x2 system for the crossing of two segments known to
/// intersect. Returns the point (evaluated on `s1`) and both parameters.
/// Near-parallel pairs (relative determinant below the transversality
/// threshold) are rejected.
pub fn intersection_point(s1: Segment, s2: Segment) -> Result<(Point2, f64, f64)> {
    let (v1x, v1y) = s1.dir();
    let (v2x, v2y) = s2.dir();
    let det = v1x * v2y - v1y * v2x;
    let scale = (v1x * v1x + v1y * v1y).sqrt() * (v2x * v2x + v2y * v2y).sqrt();
    if det.abs() < TRANSVERSALITY_TOL * scale {
        return Err(Error::NonTransverse { seg1: 0, seg2: 0 });
    }
    let dx = s2.a.x - s1.a.x;
    let dy = s2.a.y - s1.a.y;
    let t1 = (dx * v2y - dy * v2x) / det;
    let t2 = (dx * v1y - dy * v1x) / det;
    let t1 = t1.clamp(0.0, 1.0);
    let t2 = t2.clamp(0.0, 1.0);
    Ok((s1.eval(t1), t1, t2))
}

/// Sign of the cross product of the two curves' unit tangents at a crossing.
pub fn orientation_sign(ip: &IntersectionPoint, c1: &ClosedCurve, c2: &ClosedCurve) -> Result<i8> {
    let (ax, ay) = c1.tangent_at(ip.on_c1.seg);
    let (bx, by) = c2.tangent_at(ip.on_c2.seg);
    let s = ax * by - ay * bx;
    if s.abs() < TRANSVERSALITY_TOL {
        return Err(Error::NonTransverse {
            seg1: ip.on_c1.seg,
            seg2: ip.on_c2.seg,
        });
    }
    Ok(if s > 0.0 { 1 } else { -1 })
}

/// Finds every transverse crossing of the two curves. Errors on a
/// near-parallel crossing pair and on an odd total count; both indicate the
/// configuration needs densifying or the winding method.
pub fn find_intersections(c1: &ClosedCurve, c2: &ClosedCurve) -> Result<IntersectionSet> {
    find_impl(c1, c2, true, false)
}

/// Best-effort variant: skips near-parallel pairs instead of failing and
/// accepts any count. Used by the densifier and the winding-method splitter.
pub fn find_intersections_tolerant(c1: &ClosedCurve, c2: &ClosedCurve) -> IntersectionSet {
    find_impl(c1, c2, false, false).expect("tolerant intersection search cannot fail")
}

/// Sequential twin of [`find_intersections`], for benchmarking.
pub fn find_intersections_seq(c1: &ClosedCurve, c2: &ClosedCurve) -> Result<IntersectionSet> {
    find_impl(c1, c2, true, true)
}

struct RawHit {
    seg1: usize,
    t1: f64,
    seg2: usize,
    t2: f64,
    point: Point2,
    sign: i8,
}

fn find_impl(
    c1: &ClosedCurve,
    c2: &ClosedCurve,
    strict: bool,
    sequential: bool,
) -> Result<IntersectionSet> {
    let index = XIntervalIndex::build(c2);
    let n1 = c1.len();
    let n2 = c2.len();

    let per_segment = |range: std::ops::Range<usize>| {
        let mut out = Vec::new();
        let mut candidates = Vec::new();
        for i in range {
            let s1 = c1.segment(i);
            let (lo, hi) = minmax(s1.a.x, s1.b.x);
            candidates.clear();
            index.query(lo, hi, &mut candidates);
            let (y_lo, y_hi) = minmax(s1.a.y, s1.b.y);
            for &j in &candidates {
                let s2 = c2.segment(j as usize);
                let (o_lo, o_hi) = minmax(s2.a.y, s2.b.y);
                if o_lo > y_hi || o_hi < y_lo {
                    continue;
                }
                if !may_intersect(s1, s2) {
                    continue;
                }
                if !may_intersect(s2, s1) {
                    continue;
                }
                match intersection_point(s1, s2) {
                    Ok((point, t1, t2)) => {
                        let cross = cross_dirs(s1.a, s1.b, s2.a, s2.b);
                        out.push(RawHit {
                            seg1: i,
                            t1,
                            seg2: j as usize,
                            t2,
                            point,
                            sign: if cross > 0.0 { 1 } else { -1 },
                        });
                    }
                    Err(_) if strict => {
                        return Err(Error::NonTransverse {
                            seg1: i,
                            seg2: j as usize,
                        })
                    }
                    Err(_) => {}
                }
            }
        }
        Ok(out)
    };
    let mut hits = if sequential {
        exec::try_chunk_concat_seq(n1, per_segment)?
    } else {
        exec::try_chunk_concat(n1, per_segment)?
    };

    // Re-attribute t == 1 end points to the start of the next segment, so a
    // crossing at a shared vertex has one canonical location per curve.
    let mut endpoint_contacts = 0;
    for h in &mut hits {
        if h.t1 == 1.0 {
            h.seg1 = (h.seg1 + 1) % n1;
            h.t1 = 0.0;
        }
        if h.t2 == 1.0 {
            h.seg2 = (h.seg2 + 1) % n2;
            h.t2 = 0.0;
        }
        if h.t1 == 0.0 || h.t2 == 0.0 {
            endpoint_contacts += 1;
        }
    }
    hits.sort_by(|a, b| {
        (a.seg1, a.t1, a.seg2, a.t2)
            .partial_cmp(&(b.seg1, b.t1, b.seg2, b.t2))
            .unwrap()
    });

    // Merge duplicates (same crossing seen from adjacent segment pairs or
    // grazing splits) within the distance tolerance, keeping the first in
    // traversal order.
    let tol = MERGE_TOL_FACTOR * joint_bbox_diag(c1, c2);
    let merged = dedup_by_distance(hits, tol, c1.bbox().0);

    if strict && merged.len() % 2 == 1 {
        return Err(Error::OddIntersectionCount(merged.len()));
    }

    let mut points: Vec<IntersectionPoint> = merged
        .into_iter()
        .map(|h| IntersectionPoint {
            point: h.point,
            on_c1: CurveLoc::new(h.seg1, h.t1),
            on_c2: CurveLoc::new(h.seg2, h.t2),
            sign: h.sign,
            rank_c1: 0,
            rank_c2: 0,
        })
        .collect();
    for (r, p) in points.iter_mut().enumerate() {
        p.rank_c1 = r;
    }
    let mut order_c2: Vec<usize> = (0..points.len()).collect();
    order_c2.sort_by(|&a, &b| {
        (points[a].on_c2.seg, points[a].on_c2.t)
            .partial_cmp(&(points[b].on_c2.seg, points[b].on_c2.t))
            .unwrap()
    });
    for (r, &idx) in order_c2.iter().enumerate() {
        points[idx].rank_c2 = r;
    }

    Ok(IntersectionSet {
        points,
        by_rank_c2: order_c2,
        c1_orientation: c1.orientation(),
        c2_orientation: c2.orientation(),
        endpoint_contacts,
    })
}

fn dedup_by_distance(hits: Vec<RawHit>, tol: f64, origin: Point2) -> Vec<RawHit> {
    if hits.len() < 2 || tol <= 0.0 {
        return hits;
    }
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> =
        std::collections::HashMap::new();
    let mut kept: Vec<RawHit> = Vec::with_capacity(hits.len());
    'next: for h in hits {
        let kx = ((h.point.x - origin.x) / tol).floor() as i64;
        let ky = ((h.point.y - origin.y) / tol).floor() as i64;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(cell) = grid.get(&(kx + dx, ky + dy)) {
                    for &k in cell {
                        if kept[k].point.dist(h.point) <= tol {
                            continue 'next;
                        }
                    }
                }
            }
        }
        grid.entry((kx, ky)).or_default().push(kept.len());
        kept.push(h);
    }
    kept
}

#[inline]
fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Static interval-stabbing index over the x-extents of a curve's segments.
///
/// Segments are sorted by their lower x-bound; a segment tree over the upper
/// bounds answers "which segments' x-intervals overlap [lo, hi]" in
/// `O(log n + matches)`, returned in ascending x-min order.
pub(crate) struct XIntervalIndex {
    xmin: Vec<f64>,
    seg: Vec<u32>,
    /// Binary max-tree over xmax, 1-based heap layout; leaves at `base`.
    tree: Vec<f64>,
    base: usize,
    n: usize,
}

impl XIntervalIndex {
    pub fn build(curve: &ClosedCurve) -> Self {
        let n = curve.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        let lows: Vec<f64> = (0..n)
            .map(|i| {
                let s = curve.segment(i);
                s.a.x.min(s.b.x)
            })
            .collect();
        order.sort_by(|&a, &b| lows[a as usize].partial_cmp(&lows[b as usize]).unwrap());
        let xmin: Vec<f64> = order.iter().map(|&i| lows[i as usize]).collect();
        let base = n.next_power_of_two();
        let mut tree = vec![f64::NEG_INFINITY; 2 * base];
        for (k, &i) in order.iter().enumerate() {
            let s = curve.segment(i as usize);
            tree[base + k] = s.a.x.max(s.b.x);
        }
        for v in (1..base).rev() {
            tree[v] = tree[2 * v].max(tree[2 * v + 1]);
        }
        Self {
            xmin,
            seg: order,
            tree,
            base,
            n,
        }
    }

    /// Pushes the ids of all segments whose x-interval overlaps `[lo, hi]`.
    pub fn query(&self, lo: f64, hi: f64, out: &mut Vec<u32>) {
        let cut = self.xmin.partition_point(|&x| x <= hi);
        if cut == 0 {
            return;
        }
        self.descend(1, 0, self.base, cut, lo, out);
    }

    fn descend(&self, node: usize, l: usize, r: usize, cut: usize, lo: f64, out: &mut Vec<u32>) {
        if l >= cut || self.tree[node] < lo {
            return;
        }
        if r - l == 1 {
            if l < self.n {
                out.push(self.seg[l]);
            }
            return;
        }
        let mid = (l + r) / 2;
        self.descend(2 * node, l, mid, cut, lo, out);
        self.descend(2 * node + 1, mid, r, cut, lo, out);
    }
}

/// Validation scan: does the curve cross itself? Adjacent segments (which
/// share a vertex) are skipped; any other touching pair counts.
pub fn self_intersects(curve: &ClosedCurve) -> bool {
    let index = XIntervalIndex::build(curve);
    let n = curve.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        let s1 = curve.segment(i);
        let (lo, hi) = minmax(s1.a.x, s1.b.x);
        candidates.clear();
        index.query(lo, hi, &mut candidates);
        for &j in &candidates {
            let j = j as usize;
            if j <= i || j == (i + 1) % n || i == (j + 1) % n {
                continue;
            }
            if segments_intersect(s1, curve.segment(j)) {
                return true;
            }
        }
    }
    false
}
