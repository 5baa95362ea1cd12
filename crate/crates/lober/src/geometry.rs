//! Closed polylines, exact contour-integral signed area, and arc walking.
//!
//! A [`ClosedCurve`] stores its vertices without the repeated first point;
//! every sum wraps the last segment back to vertex 0. The cached contour
//! integral is the polygon-exact value of the `y dx - x dy` line integral,
//! which is the *negative* of the conventional shoelace sum: it comes out
//! negative for counter-clockwise curves. User-facing areas are therefore
//! routed through [`ClosedCurve::enclosed_area`], which is sign-free.

use crate::{Error, Result};

/// Relative tolerance for merging consecutive duplicate vertices,
/// scaled by the bounding-box diagonal.
pub const DEDUP_TOL_FACTOR: f64 = 1e-12;

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// z-component of `(b - a) x (d - c)`.
pub(crate) fn cross_dirs(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
}

/// One directed linear piece of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    /// Direction vector `b - a`.
    pub fn dir(&self) -> (f64, f64) {
        (self.b.x - self.a.x, self.b.y - self.a.y)
    }

    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Point at parameter `t` in `[0, 1]`.
    pub fn eval(&self, t: f64) -> Point2 {
        Point2::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }
}

/// Traversal sense of a closed curve, derived from the sign of its
/// conventional shoelace sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

/// A location on a curve: segment index plus parameter `t` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveLoc {
    pub seg: usize,
    pub t: f64,
}

impl CurveLoc {
    pub const fn new(seg: usize, t: f64) -> Self {
        Self { seg, t }
    }
}

/// Direction of an arc walk relative to the curve's stored vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Walk {
    Forward,
    Backward,
}

/// Per-chord term of the `y dx - x dy` contour integral.
#[inline]
pub(crate) fn chord_term(a: Point2, b: Point2) -> f64 {
    a.y * b.x - a.x * b.y
}

/// An implicitly closed, non-degenerate polyline.
#[derive(Debug, Clone)]
pub struct ClosedCurve {
    verts: Vec<Point2>,
    contour: f64,
    bbox_min: Point2,
    bbox_max: Point2,
}

impl ClosedCurve {
    /// Builds a curve, merging consecutive duplicate vertices (including a
    /// trailing repeat of the first point) within `1e-12 x` the bounding-box
    /// diagonal. Rejects curves with fewer than 3 distinct vertices, a
    /// non-finite coordinate, or zero enclosed area.
    pub fn new(verts: Vec<Point2>) -> Result<Self> {
        for (i, v) in verts.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(Error::NonFiniteVertex(i));
            }
        }
        if verts.len() < 3 {
            return Err(Error::TooFewVertices(verts.len()));
        }
        let (bbox_min, bbox_max) = bbox_of(&verts);
        let tol = DEDUP_TOL_FACTOR * bbox_min.dist(bbox_max);

        let mut deduped: Vec<Point2> = Vec::with_capacity(verts.len());
        for v in verts {
            if deduped.last().is_none_or(|last| last.dist(v) > tol) {
                deduped.push(v);
            }
        }
        while deduped.len() > 1 && deduped[0].dist(*deduped.last().unwrap()) <= tol {
            deduped.pop();
        }
        if deduped.len() < 3 {
            return Err(Error::TooFewVertices(deduped.len()));
        }

        let n = deduped.len();
        // compensated term-order sum; exact enough that downstream identity
        // residuals sit at a few ulps of the area
        let mut sum = 0.0;
        let mut comp = 0.0;
        for i in 0..n {
            let term = chord_term(deduped[i], deduped[(i + 1) % n]);
            let s = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - s) + term
            } else {
                (term - s) + sum
            };
            sum = s;
        }
        let contour = 0.5 * (sum + comp);
        if contour == 0.0 {
            return Err(Error::ZeroArea);
        }
        let (bbox_min, bbox_max) = bbox_of(&deduped);
        Ok(Self {
            verts: deduped,
            contour,
            bbox_min,
            bbox_max,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    /// Number of vertices (= number of segments).
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Segment `i`, wrapping the last vertex back to the first.
    pub fn segment(&self, i: usize) -> Segment {
        let n = self.verts.len();
        Segment::new(self.verts[i], self.verts[(i + 1) % n])
    }

    /// Exact value of the `y dx - x dy` contour integral,
    /// `0.5 * sum(y_i x_{i+1} - x_i y_{i+1})` with wrapping index.
    pub fn contour_integral(&self) -> f64 {
        self.contour
    }

    /// Strictly positive enclosed area, independent of orientation.
    pub fn enclosed_area(&self) -> f64 {
        self.contour.abs()
    }

    /// CCW iff the conventional shoelace sum is positive.
    pub fn orientation(&self) -> Orientation {
        if self.contour < 0.0 {
            Orientation::Ccw
        } else {
            Orientation::Cw
        }
    }

    /// The same curve traversed the other way.
    pub fn reverse(&self) -> ClosedCurve {
        let mut verts = self.verts.clone();
        verts.reverse();
        ClosedCurve {
            verts,
            contour: -self.contour,
            bbox_min: self.bbox_min,
            bbox_max: self.bbox_max,
        }
    }

    /// Borrowed view with the requested orientation, reversing if needed.
    pub fn oriented(&self, want: Orientation) -> std::borrow::Cow<'_, ClosedCurve> {
        if self.orientation() == want {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.reverse())
        }
    }

    /// Unit tangent of segment `i`, along the stored traversal direction.
    pub fn tangent_at(&self, i: usize) -> (f64, f64) {
        let s = self.segment(i);
        let (dx, dy) = s.dir();
        let len = (dx * dx + dy * dy).sqrt();
        (dx / len, dy / len)
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        (self.bbox_min, self.bbox_max)
    }

    pub fn bbox_diag(&self) -> f64 {
        self.bbox_min.dist(self.bbox_max)
    }

    /// Point at a location on the curve.
    pub fn point_at(&self, loc: CurveLoc) -> Point2 {
        self.segment(loc.seg).eval(loc.t)
    }

    /// Visits the arc polyline from `from` to `to` in the given walk
    /// direction: both end points (split at their exact parameters) plus
    /// every stored vertex between them. Consecutive duplicates arising from
    /// `t = 0` end points are suppressed. `from == to` yields a single point;
    /// a walk that passes its own start wraps the whole way around.
    pub fn walk_arc<F: FnMut(Point2)>(&self, from: CurveLoc, to: CurveLoc, dir: Walk, mut f: F) {
        let n = self.verts.len();
        let mut last: Option<Point2> = None;
        let mut emit = |p: Point2| {
            if last != Some(p) {
                f(p);
                last = Some(p);
            }
        };
        emit(self.point_at(from));
        if from == to {
            return;
        }
        let direct = from.seg == to.seg
            && match dir {
                Walk::Forward => from.t < to.t,
                Walk::Backward => from.t > to.t,
            };
        if !direct {
            match dir {
                Walk::Forward => {
                    // vertices from.seg+1 ..= to.seg, wrapping
                    let steps = (to.seg + n - from.seg - 1) % n + 1;
                    let mut i = (from.seg + 1) % n;
                    for _ in 0..steps {
                        emit(self.verts[i]);
                        i = (i + 1) % n;
                    }
                }
                Walk::Backward => {
                    // vertices from.seg ..= to.seg+1, wrapping downward
                    let steps = (from.seg + n - to.seg - 1) % n + 1;
                    let mut i = from.seg;
                    for _ in 0..steps {
                        emit(self.verts[i]);
                        i = (i + n - 1) % n;
                    }
                }
            }
        }
        emit(self.point_at(to));
    }

    /// `0.5 * sum(y_a x_b - x_a y_b)` over the chords of the arc polyline,
    /// i.e. the `y dx - x dy` line integral along the arc. Compensated
    /// summation keeps long arcs accurate to a few ulps.
    pub fn arc_chord_sum(&self, from: CurveLoc, to: CurveLoc, dir: Walk) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut prev: Option<Point2> = None;
        self.walk_arc(from, to, dir, |p| {
            if let Some(q) = prev {
                let term = chord_term(q, p);
                let s = sum + term;
                comp += if sum.abs() >= term.abs() {
                    (sum - s) + term
                } else {
                    (term - s) + sum
                };
                sum = s;
            }
            prev = Some(p);
        });
        0.5 * (sum + comp)
    }

    /// Arc polyline as a point list (both end points included).
    pub fn arc_points(&self, from: CurveLoc, to: CurveLoc, dir: Walk) -> Vec<Point2> {
        let mut out = Vec::new();
        self.walk_arc(from, to, dir, |p| out.push(p));
        out
    }
}

fn bbox_of(verts: &[Point2]) -> (Point2, Point2) {
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in verts {
        min.x = min.x.min(v.x);
        min.y = min.y.min(v.y);
        max.x = max.x.max(v.x);
        max.y = max.y.max(v.y);
    }
    (min, max)
}

/// Diagonal of the joint bounding box of two curves.
pub(crate) fn joint_bbox_diag(c1: &ClosedCurve, c2: &ClosedCurve) -> f64 {
    let (a_min, a_max) = c1.bbox();
    let (b_min, b_max) = c2.bbox();
    let min = Point2::new(a_min.x.min(b_min.x), a_min.y.min(b_min.y));
    let max = Point2::new(a_max.x.max(b_max.x), a_max.y.max(b_max.y));
    min.dist(max)
}
