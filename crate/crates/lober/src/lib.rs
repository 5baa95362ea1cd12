//! Geometry kernel for transport-area computations on closed planar curves.
//!
//! Two closed polylines bound regions `A1` and `A2`; this crate finds their
//! crossing points, groups the crossings into equivalence classes whose
//! cycles bound individual lobes, and computes the set-difference areas
//! `[A1\A2]` and `[A2\A1]` by two independent routes:
//!
//! * a transverse-crossing class method built on exact polygon contour sums,
//! * a winding-number interior-function method with redundant area integrals
//!   and a built-in error estimate, valid for non-transverse inputs.
//!
//! A local densifier refines the curves near crossings, Tecplot-ASCII I/O
//! and a command line front end reproduce the batch-tool file contract, and
//! the fixtures module generates analytic and flow-advected test curves with
//! independent Monte-Carlo / ray-casting oracles.

pub mod classes;
pub mod cli;
pub mod densify;
mod exec;
pub mod fixtures;
pub mod geometry;
pub mod intersect;
pub mod io;
pub mod winding;

pub use classes::{lobe_areas, EquivalenceClass, LobeReport, Method, Side};
pub use geometry::{ClosedCurve, CurveLoc, Orientation, Point2, Segment};
pub use intersect::{find_intersections, IntersectionPoint, IntersectionSet};
pub use winding::{interior_indicator, set_difference_areas, winding_integral, QTriple};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("closed curve needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteVertex(usize),
    #[error("curve encloses zero area")]
    ZeroArea,
    #[error("segments C1[{seg1}] and C2[{seg2}] cross below the transversality threshold")]
    NonTransverse { seg1: usize, seg2: usize },
    #[error("odd crossing count {0}: a crossing was missed or merged (densify, or use the winding method)")]
    OddIntersectionCount(usize),
    #[error("crossing structure is inconsistent: {0}")]
    Topology(String),
    #[error("point ({x}, {y}) lies on the curve within boundary tolerance")]
    OnBoundary { x: f64, y: f64 },
    #[error("winding integral {0} indicates a multiply-wound curve")]
    MultiWinding(f64),
    #[error("densifier pass {pass} would grow a curve to {count} vertices (cap {cap})")]
    VertexBudget {
        pass: usize,
        count: usize,
        cap: usize,
    },
    #[error("{path}:{line}: {msg}")]
    Format {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("velocity field is singular at ({x}, {y})")]
    FieldSingularity { x: f64, y: f64 },
    #[error("circles do not overlap (d >= r1 + r2)")]
    LensDisjoint,
    #[error("one circle contains the other (d <= |r1 - r2|)")]
    LensContained,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
