//! Equivalence classes of crossings and per-lobe areas.
//!
//! Each crossing is paired with a unique successor: the nearest crossing
//! reached by walking one of the two curves in a sense dictated by the
//! crossing's tangent sign. Successor cycles partition the crossing set, and
//! the arc contour sums around one cycle add up to (twice signed) the area of
//! one lobe. The two walk variants produce the lobes of `A1\A2` and `A2\A1`.
//!
//! The walk senses are absolute (counter-clockwise is positive regardless of
//! how a curve is stored); [`lobe_areas`] normalizes its inputs to the
//! convention the signs are derived under (C1 counter-clockwise, C2
//! clockwise) before detecting crossings.

use crate::geometry::{ClosedCurve, Orientation, Walk};
use crate::intersect::{find_intersections, IntersectionPoint, IntersectionSet};
use crate::{winding, Error, Result};

/// Which input curve a walk refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveId {
    C1,
    C2,
}

/// Absolute arc sense: positive is counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Positive,
    Negative,
}

fn walk_for(sense: Sense, orientation: Orientation) -> Walk {
    if (sense == Sense::Positive) == (orientation == Orientation::Ccw) {
        Walk::Forward
    } else {
        Walk::Backward
    }
}

/// Is crossing `j` the immediate neighbor of crossing `i` when traversing
/// the named curve in the named sense? O(1) from the stored ranks.
pub fn adjacency(set: &IntersectionSet, which: CurveId, sense: Sense, i: usize, j: usize) -> bool {
    if i == j {
        return false;
    }
    let (orientation, forward_neighbor, backward_neighbor) = match which {
        CurveId::C1 => (
            set.c1_orientation,
            set.next_along_c1(i),
            set.prev_along_c1(i),
        ),
        CurveId::C2 => (
            set.c2_orientation,
            set.next_along_c2(i),
            set.prev_along_c2(i),
        ),
    };
    match walk_for(sense, orientation) {
        Walk::Forward => forward_neighbor == j,
        Walk::Backward => backward_neighbor == j,
    }
}

/// The two pairing rules. [`Variant::Downstream`] walks C1 positively from
/// `sign = +1` crossings and C2 negatively from `sign = -1` crossings; its
/// cycles bound the lobes of `A2\A1` (for C1 counter-clockwise, C2
/// clockwise). [`Variant::Upstream`] swaps both senses and bounds `A1\A2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Downstream,
    Upstream,
}

impl Variant {
    fn moves(self, sign: i8) -> (CurveId, Sense) {
        match (self, sign >= 0) {
            (Variant::Downstream, true) => (CurveId::C1, Sense::Positive),
            (Variant::Downstream, false) => (CurveId::C2, Sense::Negative),
            (Variant::Upstream, true) => (CurveId::C1, Sense::Negative),
            (Variant::Upstream, false) => (CurveId::C2, Sense::Positive),
        }
    }
}

/// Signed adjacency: the tangent sign of crossing `i` selects which
/// adjacency relation applies between `i` and `j`.
pub fn signed_adjacency(set: &IntersectionSet, variant: Variant, i: usize, j: usize) -> bool {
    let (which, sense) = variant.moves(set.points()[i].sign);
    adjacency(set, which, sense, i, j)
}

/// Total bijection pairing every crossing with its unique successor.
#[derive(Debug, Clone)]
pub struct SuccessorMap {
    variant: Variant,
    next: Vec<usize>,
    prev: Vec<usize>,
}

impl SuccessorMap {
    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn next(&self, i: usize) -> usize {
        self.next[i]
    }

    pub fn prev(&self, i: usize) -> usize {
        self.prev[i]
    }
}

/// Builds the successor map for a crossing set, verifying the structural
/// preconditions of the class method: an even crossing count, alternating
/// tangent signs along both curves, and bijectivity of the pairing.
pub fn successor_map(set: &IntersectionSet, variant: Variant) -> Result<SuccessorMap> {
    let n = set.len();
    if n == 0 || n % 2 == 1 {
        return Err(Error::Topology(format!(
            "successor map needs an even, positive crossing count, got {n}"
        )));
    }
    for i in 0..n {
        let along_c1 = set.by_rank_c1(i).sign + set.by_rank_c1((i + 1) % n).sign;
        let along_c2 = set.by_rank_c2(i).sign + set.by_rank_c2((i + 1) % n).sign;
        if along_c1 != 0 || along_c2 != 0 {
            return Err(Error::Topology(
                "tangent signs do not alternate along the curves (non-simple input \
                 or a missed crossing)"
                    .into(),
            ));
        }
    }
    let mut next = vec![0usize; n];
    let mut prev = vec![usize::MAX; n];
    for (i, slot) in next.iter_mut().enumerate() {
        let (which, sense) = variant.moves(set.points()[i].sign);
        let j = neighbor(set, which, sense, i);
        *slot = j;
        if prev[j] != usize::MAX {
            return Err(Error::Topology(format!(
                "crossings {} and {} share successor {}",
                prev[j], i, j
            )));
        }
        prev[j] = i;
    }
    Ok(SuccessorMap {
        variant,
        next,
        prev,
    })
}

fn neighbor(set: &IntersectionSet, which: CurveId, sense: Sense, i: usize) -> usize {
    let (orientation, fwd, back) = match which {
        CurveId::C1 => (
            set.c1_orientation,
            set.next_along_c1(i),
            set.prev_along_c1(i),
        ),
        CurveId::C2 => (
            set.c2_orientation,
            set.next_along_c2(i),
            set.prev_along_c2(i),
        ),
    };
    match walk_for(sense, orientation) {
        Walk::Forward => fwd,
        Walk::Backward => back,
    }
}

/// Cycles of the successor map, each starting at its lowest C1 rank, in
/// ascending order of that rank. The cycles are disjoint and cover every
/// crossing.
pub fn partition(sigma: &SuccessorMap) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = sigma.next(start);
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = sigma.next(i);
        }
        cycles.push(cycle);
    }
    cycles
}

/// Arc contour sum from crossing `idx` to its successor, over the curve and
/// sense selected by the crossing's tangent sign (the `y dx - x dy` partial
/// sum, end segments split at the exact crossing parameters).
pub fn class_integral(
    set: &IntersectionSet,
    sigma: &SuccessorMap,
    idx: usize,
    c1: &ClosedCurve,
    c2: &ClosedCurve,
) -> f64 {
    let p = &set.points()[idx];
    let q = &set.points()[sigma.next(idx)];
    let (which, sense) = sigma.variant().moves(p.sign);
    match which {
        CurveId::C1 => c1.arc_chord_sum(p.on_c1, q.on_c1, walk_for(sense, set.c1_orientation)),
        CurveId::C2 => c2.arc_chord_sum(p.on_c2, q.on_c2, walk_for(sense, set.c2_orientation)),
    }
}

/// Which set difference a class belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A1MinusA2,
    A2MinusA1,
}

/// One equivalence class: a successor cycle and the area of the lobe its
/// arcs bound.
#[derive(Debug, Clone)]
pub struct EquivalenceClass {
    pub side: Side,
    /// Members in cycle order (successive application of the successor map).
    pub members: Vec<IntersectionPoint>,
    pub lobe_area: f64,
}

/// How a report's areas were computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Transverse,
    Winding,
}

/// Set-difference areas, per-lobe breakdown, and diagnostics.
#[derive(Debug, Clone)]
pub struct LobeReport {
    pub classes: Vec<EquivalenceClass>,
    pub a1_minus_a2: f64,
    pub a2_minus_a1: f64,
    pub method: Method,
    /// Redundancy-based error estimate; zero for the transverse method.
    pub error_estimate: f64,
    pub notes: Vec<String>,
}

/// Computes `[A1\A2]` and `[A2\A1]` by the transverse-crossing class method.
///
/// Inputs are normalized to C1 counter-clockwise and C2 clockwise (recorded
/// in the report notes). Zero-crossing configurations fall back to exact
/// set semantics for disjoint or nested curves. The totals are always
/// cross-checked against the winding method and the discrepancy reported.
pub fn lobe_areas(c1: &ClosedCurve, c2: &ClosedCurve) -> Result<LobeReport> {
    let mut notes = Vec::new();
    if c1.orientation() != Orientation::Ccw {
        notes.push("C1 reversed to counter-clockwise for class analysis".into());
    }
    if c2.orientation() != Orientation::Cw {
        notes.push("C2 reversed to clockwise for class analysis".into());
    }
    let c1n = c1.oriented(Orientation::Ccw);
    let c2n = c2.oriented(Orientation::Cw);

    let set = find_intersections(&c1n, &c2n)?;
    if set.is_empty() {
        return no_crossing_report(&c1n, &c2n, notes);
    }

    let mut classes = Vec::new();
    let mut a1_minus_a2 = 0.0;
    let mut a2_minus_a1 = 0.0;
    for (variant, side) in [
        (Variant::Upstream, Side::A1MinusA2),
        (Variant::Downstream, Side::A2MinusA1),
    ] {
        let sigma = successor_map(&set, variant)?;
        for cycle in partition(&sigma) {
            let sum: f64 = cycle
                .iter()
                .map(|&i| class_integral(&set, &sigma, i, &c1n, &c2n))
                .sum();
            let area = sum.abs();
            match side {
                Side::A1MinusA2 => a1_minus_a2 += area,
                Side::A2MinusA1 => a2_minus_a1 += area,
            }
            classes.push(EquivalenceClass {
                side,
                members: cycle.into_iter().map(|i| set.points()[i].clone()).collect(),
                lobe_area: area,
            });
        }
    }

    let check = winding::set_difference_areas(c1, c2);
    notes.push(format!(
        "winding cross-check: [A1\\A2] {} vs {} (diff {:.3e}), [A2\\A1] {} vs {} (diff {:.3e}), delta {:.3e}",
        a1_minus_a2,
        check.a1_minus_a2,
        (a1_minus_a2 - check.a1_minus_a2).abs(),
        a2_minus_a1,
        check.a2_minus_a1,
        (a2_minus_a1 - check.a2_minus_a1).abs(),
        check.error_estimate,
    ));

    Ok(LobeReport {
        classes,
        a1_minus_a2,
        a2_minus_a1,
        method: Method::Transverse,
        error_estimate: 0.0,
        notes,
    })
}

/// Reconstructs the closed boundary polyline of one lobe from its class.
/// `c1` and `c2` are the curves handed to [`lobe_areas`]; the same
/// normalization is applied here so the stored locations line up.
pub fn class_polygon(
    class: &EquivalenceClass,
    c1: &ClosedCurve,
    c2: &ClosedCurve,
) -> Vec<crate::geometry::Point2> {
    let c1n = c1.oriented(Orientation::Ccw);
    let c2n = c2.oriented(Orientation::Cw);
    let variant = match class.side {
        Side::A1MinusA2 => Variant::Upstream,
        Side::A2MinusA1 => Variant::Downstream,
    };
    let mut out = Vec::new();
    let k = class.members.len();
    for (i, p) in class.members.iter().enumerate() {
        let q = &class.members[(i + 1) % k];
        let (which, sense) = variant.moves(p.sign);
        let pts = match which {
            CurveId::C1 => c1n.arc_points(p.on_c1, q.on_c1, walk_for(sense, Orientation::Ccw)),
            CurveId::C2 => c2n.arc_points(p.on_c2, q.on_c2, walk_for(sense, Orientation::Cw)),
        };
        for pt in pts {
            if out.last() != Some(&pt) {
                out.push(pt);
            }
        }
    }
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn no_crossing_report(
    c1: &ClosedCurve,
    c2: &ClosedCurve,
    mut notes: Vec<String>,
) -> Result<LobeReport> {
    let a1 = c1.enclosed_area();
    let a2 = c2.enclosed_area();
    let c2_inside_c1 = representative_inside(c2, c1)?;
    let c1_inside_c2 = representative_inside(c1, c2)?;
    let (a1_minus_a2, a2_minus_a1) = match (c2_inside_c1, c1_inside_c2) {
        (true, false) => {
            notes.push("no crossings: C2 is contained in C1".into());
            (a1 - a2, 0.0)
        }
        (false, true) => {
            notes.push("no crossings: C1 is contained in C2".into());
            (0.0, a2 - a1)
        }
        (false, false) => {
            notes.push("no crossings: curves are disjoint".into());
            (a1, a2)
        }
        (true, true) => {
            return Err(Error::Topology(
                "curves report mutual containment without crossings".into(),
            ))
        }
    };
    Ok(LobeReport {
        classes: Vec::new(),
        a1_minus_a2,
        a2_minus_a1,
        method: Method::Transverse,
        error_estimate: 0.0,
        notes,
    })
}

/// Is `inner` (represented by one off-boundary vertex) inside `outer`?
fn representative_inside(inner: &ClosedCurve, outer: &ClosedCurve) -> Result<bool> {
    let tol = winding::boundary_tolerance(outer);
    for v in inner.vertices() {
        if winding::distance_to(outer, *v) > tol {
            return Ok(winding::interior_indicator(outer, *v)? == -1);
        }
    }
    Err(Error::Topology(
        "every vertex of one curve lies on the other; cannot classify containment".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{circle, ellipse, lens_area};
    use crate::geometry::{CurveLoc, Point2};
    use crate::intersect::IntersectionSet;

    /// The worked six-crossing configuration: ranks along C1 are 0..5, the
    /// C2 traversal order is p1, p6, p3, p4, p5, p2, and signs alternate
    /// starting +1 at p1. Coordinates are placeholders; the class machinery
    /// only reads ranks and signs.
    fn six_point_set() -> IntersectionSet {
        let order_c2 = [0usize, 5, 2, 3, 4, 1]; // rank_c2 of p1..p6
        let points = (0..6)
            .map(|i| IntersectionPoint {
                point: Point2::new(i as f64, 0.0),
                on_c1: CurveLoc::new(i, 0.5),
                on_c2: CurveLoc::new(order_c2[i], 0.5),
                sign: if i % 2 == 0 { 1 } else { -1 },
                rank_c1: i,
                rank_c2: order_c2[i],
            })
            .collect();
        IntersectionSet::from_points(points, Orientation::Ccw, Orientation::Cw).unwrap()
    }

    #[test]
    fn six_point_adjacency_tables() {
        let set = six_point_set();
        // positive adjacency on C1: successor in index order
        let a_plus_c1 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];
        for i in 0..6 {
            for j in 0..6 {
                let want = a_plus_c1.contains(&(i, j));
                assert_eq!(adjacency(&set, CurveId::C1, Sense::Positive, i, j), want);
            }
        }
        // negative adjacency on C2 for the same configuration
        let a_minus_c2 = [(0, 5), (1, 0), (2, 3), (3, 4), (4, 1), (5, 2)];
        for i in 0..6 {
            for j in 0..6 {
                let want = a_minus_c2.contains(&(i, j));
                assert_eq!(adjacency(&set, CurveId::C2, Sense::Negative, i, j), want);
            }
        }
    }

    #[test]
    fn six_point_signed_adjacency_matrix() {
        let set = six_point_set();
        let gamma = [(0, 1), (1, 0), (2, 3), (3, 4), (4, 5), (5, 2)];
        for i in 0..6 {
            for j in 0..6 {
                let want = gamma.contains(&(i, j));
                assert_eq!(signed_adjacency(&set, Variant::Downstream, i, j), want);
            }
        }
        // a positive-sign row of the signed adjacency reduces to the
        // positive C1 adjacency row
        for j in 0..6 {
            assert_eq!(
                signed_adjacency(&set, Variant::Downstream, 0, j),
                adjacency(&set, CurveId::C1, Sense::Positive, 0, j)
            );
        }
    }

    #[test]
    fn six_point_successor_and_partition() {
        let set = six_point_set();
        let sigma = successor_map(&set, Variant::Downstream).unwrap();
        assert_eq!(
            (0..6).map(|i| sigma.next(i)).collect::<Vec<_>>(),
            vec![1, 0, 3, 4, 5, 2]
        );
        for i in 0..6 {
            assert_eq!(sigma.prev(sigma.next(i)), i);
        }
        let cycles = partition(&sigma);
        assert_eq!(cycles, vec![vec![0, 1], vec![2, 3, 4, 5]]);
    }

    #[test]
    fn six_point_swapped_variant_is_also_a_bijection() {
        let set = six_point_set();
        let sigma = successor_map(&set, Variant::Upstream).unwrap();
        let mut image: Vec<usize> = (0..6).map(|i| sigma.next(i)).collect();
        image.sort_unstable();
        assert_eq!(image, (0..6).collect::<Vec<_>>());
    }

    fn two_circle_fixture() -> (ClosedCurve, ClosedCurve) {
        (
            circle(Point2::new(0.0, 0.0), 1.0, 4096),
            circle(Point2::new(1.0, 0.0), 1.0, 4096),
        )
    }

    #[test]
    fn two_circle_crossings_pair_with_each_other() {
        let (c1, c2) = two_circle_fixture();
        let set = find_intersections(
            &c1.oriented(Orientation::Ccw),
            &c2.oriented(Orientation::Cw),
        )
        .unwrap();
        assert_eq!(set.len(), 2);
        assert!(adjacency(&set, CurveId::C1, Sense::Positive, 0, 1));
        assert!(adjacency(&set, CurveId::C1, Sense::Positive, 1, 0));
        let sigma = successor_map(&set, Variant::Downstream).unwrap();
        assert_eq!(sigma.next(0), 1);
        assert_eq!(sigma.next(1), 0);
        let cycles = partition(&sigma);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
    }

    /// Overlapping axis-aligned unit squares (0.5 x 1 overlap). The
    /// configuration is non-transverse for the detector (collinear shared
    /// edges), so the crossing set and pairing are written out by hand; the
    /// arc integrals themselves are what is under test.
    #[test]
    fn square_overlap_class_integrals_are_exact() {
        let c1 = ClosedCurve::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        // stored clockwise
        let c2 = ClosedCurve::new(vec![
            Point2::new(0.5, 0.0),
            Point2::new(0.5, 1.0),
            Point2::new(1.5, 1.0),
            Point2::new(1.5, 0.0),
        ])
        .unwrap();
        assert_eq!(c2.orientation(), Orientation::Cw);
        // crossings of interest: (0.5, 0) and (0.5, 1), bounding the lobe
        // [0, 0.5] x [0, 1] of A1\A2
        let p_bottom = IntersectionPoint {
            point: Point2::new(0.5, 0.0),
            on_c1: CurveLoc::new(0, 0.5),
            on_c2: CurveLoc::new(0, 0.0),
            sign: 1,
            rank_c1: 0,
            rank_c2: 0,
        };
        let p_top = IntersectionPoint {
            point: Point2::new(0.5, 1.0),
            on_c1: CurveLoc::new(2, 0.5),
            on_c2: CurveLoc::new(1, 0.0),
            sign: -1,
            rank_c1: 1,
            rank_c2: 1,
        };
        let set =
            IntersectionSet::from_points(vec![p_bottom, p_top], Orientation::Ccw, Orientation::Cw)
                .unwrap();
        let sigma = successor_map(&set, Variant::Upstream).unwrap();
        assert_eq!(sigma.next(0), 1);
        assert_eq!(sigma.next(1), 0);
        let s_bottom = class_integral(&set, &sigma, 0, &c1, &c2);
        let s_top = class_integral(&set, &sigma, 1, &c1, &c2);
        assert!((s_bottom - 0.25).abs() < 1e-12, "got {s_bottom}");
        assert!((s_top - 0.25).abs() < 1e-12, "got {s_top}");
        assert!(((s_bottom + s_top).abs() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn two_circle_lobe_area_matches_the_lens_complement() {
        let (c1, c2) = two_circle_fixture();
        let lune = std::f64::consts::PI - lens_area(1.0, 1.0, 1.0).unwrap();
        let report = lobe_areas(&c1, &c2).unwrap();
        assert!(
            (report.a1_minus_a2 - lune).abs() < 1e-4,
            "{}",
            report.a1_minus_a2
        );
        assert!((report.a2_minus_a1 - lune).abs() < 1e-4);
        assert_eq!(report.classes.len(), 2); // one lobe per side
        assert_eq!(report.method, Method::Transverse);
        assert_eq!(report.error_estimate, 0.0);
        // [A1\A2] = [A1] - [A1 n A2], taking the intersection area from the
        // independent winding integrals
        let q = winding::q_integrals(&c1, &c2);
        let delta = q.delta();
        let diff = (report.a1_minus_a2 - (c1.enclosed_area() - q.q3)).abs();
        assert!(
            diff < (1e-6f64).max(10.0 * delta),
            "identity residual {diff}"
        );
    }

    #[test]
    fn asymmetric_circles_pin_the_side_assignment() {
        // r1 = 1 at origin, r2 = 0.5 at (1, 0): [A1\A2] and [A2\A1] differ
        let c1 = circle(Point2::new(0.0, 0.0), 1.0, 4096);
        let c2 = circle(Point2::new(1.0, 0.0), 0.5, 4096);
        let lens = lens_area(1.0, 0.5, 1.0).unwrap();
        let report = lobe_areas(&c1, &c2).unwrap();
        let want_a1 = std::f64::consts::PI - lens;
        let want_a2 = 0.25 * std::f64::consts::PI - lens;
        assert!(
            (report.a1_minus_a2 - want_a1).abs() < 1e-4,
            "{} vs {want_a1}",
            report.a1_minus_a2
        );
        assert!(
            (report.a2_minus_a1 - want_a2).abs() < 1e-4,
            "{} vs {want_a2}",
            report.a2_minus_a1
        );
    }

    #[test]
    fn two_ellipse_fixture_has_two_classes_per_side() {
        let e1 = ellipse(Point2::new(0.0, 0.0), 1.0, 2.0, 0.0, 4096);
        let e2 = ellipse(Point2::new(0.0, 0.0), 2.0, 1.0, 0.0, 4096);
        let report = lobe_areas(&e1, &e2).unwrap();
        let per_side = |side: Side| {
            report
                .classes
                .iter()
                .filter(|c| c.side == side)
                .collect::<Vec<_>>()
        };
        assert_eq!(per_side(Side::A1MinusA2).len(), 2);
        assert_eq!(per_side(Side::A2MinusA1).len(), 2);
        for class in &report.classes {
            assert_eq!(class.members.len(), 2);
            assert_eq!(class.members[0].sign * class.members[1].sign, -1);
        }
        // identity [A1\A2] = [A1] - [A1 n A2] against the winding method
        let w = winding::set_difference_areas(&e1, &e2);
        let tol = (1e-4f64).max(10.0 * w.error_estimate);
        assert!((report.a1_minus_a2 - w.a1_minus_a2).abs() < tol);
        assert!((report.a2_minus_a1 - w.a2_minus_a1).abs() < tol);
    }

    #[test]
    fn disjoint_and_nested_curves_fall_back_to_set_semantics() {
        let c1 = circle(Point2::new(0.0, 0.0), 1.0, 256);
        let far = circle(Point2::new(5.0, 0.0), 0.5, 256);
        let report = lobe_areas(&c1, &far).unwrap();
        assert!(report.classes.is_empty());
        assert!((report.a1_minus_a2 - c1.enclosed_area()).abs() < 1e-12);
        assert!((report.a2_minus_a1 - far.enclosed_area()).abs() < 1e-12);

        let inner = circle(Point2::new(0.1, 0.0), 0.4, 256);
        let report = lobe_areas(&c1, &inner).unwrap();
        assert!((report.a1_minus_a2 - (c1.enclosed_area() - inner.enclosed_area())).abs() < 1e-12);
        assert_eq!(report.a2_minus_a1, 0.0);

        let report = lobe_areas(&inner, &c1).unwrap();
        assert_eq!(report.a1_minus_a2, 0.0);
        assert!((report.a2_minus_a1 - (c1.enclosed_area() - inner.enclosed_area())).abs() < 1e-12);
    }

    #[test]
    fn reversed_inputs_produce_the_same_report() {
        let (c1, c2) = two_circle_fixture();
        let a = lobe_areas(&c1, &c2).unwrap();
        let b = lobe_areas(&c1.reverse(), &c2.reverse()).unwrap();
        assert!((a.a1_minus_a2 - b.a1_minus_a2).abs() < 1e-9);
        assert!((a.a2_minus_a1 - b.a2_minus_a1).abs() < 1e-9);
        let mut areas_a: Vec<f64> = a.classes.iter().map(|c| c.lobe_area).collect();
        let mut areas_b: Vec<f64> = b.classes.iter().map(|c| c.lobe_area).collect();
        areas_a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        areas_b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in areas_a.iter().zip(&areas_b) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn partition_laws_hold_on_a_random_transverse_fixture() {
        let e1 = ellipse(Point2::new(0.0, 0.0), 1.3, 0.8, 0.4, 2048);
        let e2 = ellipse(Point2::new(0.4, -0.2), 0.9, 1.4, -0.7, 2048);
        let set = find_intersections(
            &e1.oriented(Orientation::Ccw),
            &e2.oriented(Orientation::Cw),
        )
        .unwrap();
        let sigma = successor_map(&set, Variant::Downstream).unwrap();
        let cycles = partition(&sigma);
        let total: usize = cycles.iter().map(|c| c.len()).sum();
        assert_eq!(total, set.len());
        let mut all: Vec<usize> = cycles.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), set.len());
        for cycle in &cycles {
            assert!(cycle.len() >= 2);
            for k in 0..cycle.len() {
                let a = set.points()[cycle[k]].sign;
                let b = set.points()[cycle[(k + 1) % cycle.len()]].sign;
                assert_eq!(a * b, -1, "signs must alternate around a cycle");
            }
        }
    }
}
