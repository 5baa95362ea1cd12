//! Analytic test curves, flow fields for advected fixtures, and independent
//! area/interior oracles (ray casting and Monte Carlo).
//!
//! The oracles deliberately avoid the winding machinery: point membership is
//! decided by crossing parity of a horizontal ray over a y-bucketed edge
//! index, so they can cross-check the shipped method.

use crate::geometry::{ClosedCurve, Point2};
use crate::{exec, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Regular `n`-gon inscribed in the circle, counter-clockwise.
pub fn circle(center: Point2, r: f64, n: usize) -> ClosedCurve {
    ellipse(center, r, r, 0.0, n)
}

/// Axis lengths `a`, `b`, rotated by `phase`, counter-clockwise.
pub fn ellipse(center: Point2, a: f64, b: f64, phase: f64, n: usize) -> ClosedCurve {
    assert!(a > 0.0 && b > 0.0 && n >= 3);
    let (sp, cp) = phase.sin_cos();
    let verts = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            let (x, y) = (a * t.cos(), b * t.sin());
            Point2::new(center.x + cp * x - sp * y, center.y + sp * x + cp * y)
        })
        .collect();
    ClosedCurve::new(verts).expect("regular ellipse is a valid curve")
}

/// A time-dependent planar velocity field.
pub trait VectorField2: Sync {
    fn eval(&self, x: f64, y: f64, t: f64) -> Result<(f64, f64)>;
}

/// Oscillating vortex pair flow in the co-moving frame: two counter-rotating
/// point vortices at `(0, +1)` and `(0, -1)` under a sinusoidal perturbation
/// of amplitude `eps` with period `2 pi gamma`.
#[derive(Debug, Clone, Copy)]
pub struct OvpField {
    /// Circulation-timescale parameter.
    pub gamma: f64,
    /// Perturbation amplitude.
    pub eps: f64,
}

/// Velocity of the oscillating vortex pair flow at `(x, y)` and time `t`.
pub fn ovp_velocity(x: f64, y: f64, t: f64, gamma: f64, eps: f64) -> Result<(f64, f64)> {
    let i_minus = x * x + (y - 1.0) * (y - 1.0);
    let i_plus = x * x + (y + 1.0) * (y + 1.0);
    if i_minus == 0.0 || i_plus == 0.0 {
        return Err(Error::FieldSingularity { x, y });
    }
    let f1 = -(y - 1.0) / i_minus + (y + 1.0) / i_plus - 0.5;
    let f2 = x / i_minus - x / i_plus;
    if eps == 0.0 {
        return Ok((f1, f2));
    }
    let phase = t / gamma;
    let (sin_p, cos_p) = phase.sin_cos();
    let cos_m1 = cos_p - 1.0;
    let im2 = i_minus * i_minus;
    let ip2 = i_plus * i_plus;
    let g1 = cos_m1
        * (1.0 / i_minus + 1.0 / i_plus
            - 2.0 * (y - 1.0) * (y - 1.0) / im2
            - 2.0 * (y + 1.0) * (y + 1.0) / ip2)
        + (x / gamma) * sin_p * (gamma * gamma * ((y - 1.0) / im2 - (y + 1.0) / ip2) + 1.0)
        - 0.5;
    let g2 = 2.0 * x * cos_m1 * ((y - 1.0) / im2 + (y + 1.0) / ip2)
        + (1.0 / gamma)
            * sin_p
            * (0.5 * gamma * gamma * (1.0 / i_minus - 1.0 / i_plus)
                - x * x * gamma * gamma * (1.0 / im2 - 1.0 / ip2)
                - y);
    Ok((f1 + eps * g1, f2 - eps * g2))
}

impl VectorField2 for OvpField {
    fn eval(&self, x: f64, y: f64, t: f64) -> Result<(f64, f64)> {
        ovp_velocity(x, y, t, self.gamma, self.eps)
    }
}

/// The zero field; advection under it is the identity.
#[derive(Debug, Clone, Copy)]
pub struct ZeroField;

impl VectorField2 for ZeroField {
    fn eval(&self, _x: f64, _y: f64, _t: f64) -> Result<(f64, f64)> {
        Ok((0.0, 0.0))
    }
}

/// Right-hand side of the coupled roll-pitch capsize system,
/// state `(x, y, vx, vy)`, frequency ratio `R`.
pub fn capsize_field(x: f64, y: f64, vx: f64, vy: f64, r: f64) -> [f64; 4] {
    [vx, vy, -x + 2.0 * x * y, -r * r * y + 0.5 * r * r * x * x]
}

/// Conserved energy of the capsize system.
pub fn capsize_energy(state: [f64; 4], r: f64) -> f64 {
    let [x, y, vx, vy] = state;
    0.5 * vx * vx + vy * vy / (r * r) + 0.5 * x * x + y * y - x * x * y
}

/// Fixed-step RK4 on the capsize system.
pub fn capsize_trajectory(mut state: [f64; 4], r: f64, dt: f64, steps: usize) -> [f64; 4] {
    let add = |s: [f64; 4], k: [f64; 4], h: f64| {
        [
            s[0] + h * k[0],
            s[1] + h * k[1],
            s[2] + h * k[2],
            s[3] + h * k[3],
        ]
    };
    let f = |s: [f64; 4]| capsize_field(s[0], s[1], s[2], s[3], r);
    for _ in 0..steps {
        let k1 = f(state);
        let k2 = f(add(state, k1, 0.5 * dt));
        let k3 = f(add(state, k2, 0.5 * dt));
        let k4 = f(add(state, k3, dt));
        for i in 0..4 {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    state
}

fn rk4_point(
    field: &impl VectorField2,
    p: Point2,
    t0: f64,
    dt: f64,
    steps: usize,
) -> Result<Point2> {
    let mut x = p.x;
    let mut y = p.y;
    let mut t = t0;
    for _ in 0..steps {
        let (k1x, k1y) = field.eval(x, y, t)?;
        let (k2x, k2y) = field.eval(x + 0.5 * dt * k1x, y + 0.5 * dt * k1y, t + 0.5 * dt)?;
        let (k3x, k3y) = field.eval(x + 0.5 * dt * k2x, y + 0.5 * dt * k2y, t + 0.5 * dt)?;
        let (k4x, k4y) = field.eval(x + dt * k3x, y + dt * k3y, t + dt)?;
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        t += dt;
    }
    Ok(Point2::new(x, y))
}

/// Advects every vertex with fixed-step RK4 from `t0` to `t1`, preserving
/// connectivity. Vertices advect independently, so the result is identical
/// for any worker count.
pub fn advect_curve(
    curve: &ClosedCurve,
    field: &impl VectorField2,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<ClosedCurve> {
    assert!(steps > 0);
    let dt = (t1 - t0) / steps as f64;
    let moved = exec::map_collect(curve.len(), |i| {
        rk4_point(field, curve.vertices()[i], t0, dt, steps)
    });
    ClosedCurve::new(moved.into_iter().collect::<Result<Vec<_>>>()?)
}

/// Sequential twin of [`advect_curve`], for benchmarking.
pub fn advect_curve_seq(
    curve: &ClosedCurve,
    field: &impl VectorField2,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<ClosedCurve> {
    assert!(steps > 0);
    let dt = (t1 - t0) / steps as f64;
    let moved = exec::map_collect_seq(curve.len(), |i| {
        rk4_point(field, curve.vertices()[i], t0, dt, steps)
    });
    ClosedCurve::new(moved.into_iter().collect::<Result<Vec<_>>>()?)
}

/// Crossing-parity point-in-polygon test over a y-bucketed edge index.
/// Independent of the winding-integral path.
pub struct RayCaster {
    buckets: Vec<Vec<u32>>,
    y_min: f64,
    inv_dy: f64,
    edges: Vec<(Point2, Point2)>,
}

impl RayCaster {
    pub fn build(curve: &ClosedCurve) -> Self {
        let n = curve.len();
        let (lo, hi) = curve.bbox();
        let n_buckets = (n / 4).clamp(16, 65_536);
        let span = (hi.y - lo.y).max(f64::MIN_POSITIVE);
        let inv_dy = n_buckets as f64 / span;
        let mut buckets = vec![Vec::new(); n_buckets];
        let edges: Vec<(Point2, Point2)> = (0..n)
            .map(|i| {
                let s = curve.segment(i);
                (s.a, s.b)
            })
            .collect();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a.y == b.y {
                continue; // horizontal edges never toggle the parity
            }
            let (y0, y1) = if a.y < b.y { (a.y, b.y) } else { (b.y, a.y) };
            let b0 = (((y0 - lo.y) * inv_dy) as usize).min(n_buckets - 1);
            let b1 = (((y1 - lo.y) * inv_dy) as usize).min(n_buckets - 1);
            for bucket in &mut buckets[b0..=b1] {
                bucket.push(i as u32);
            }
        }
        Self {
            buckets,
            y_min: lo.y,
            inv_dy,
            edges,
        }
    }

    /// Parity of crossings of the ray from `p` toward `+x`.
    pub fn contains(&self, p: Point2) -> bool {
        let k = (p.y - self.y_min) * self.inv_dy;
        if k < 0.0 || k >= self.buckets.len() as f64 {
            return false;
        }
        let mut inside = false;
        for &i in &self.buckets[k as usize] {
            let (a, b) = self.edges[i as usize];
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x_cross > p.x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// A Monte-Carlo area estimate with its sampling uncertainty.
#[derive(Debug, Clone, Copy)]
pub struct OracleEstimate {
    pub value: f64,
    /// One-sigma binomial error scaled to area units.
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

const MC_BLOCK: usize = 1 << 16;

/// Monte-Carlo estimate of `[A1\A2]`: uniform samples over the joint
/// bounding box, membership by ray casting. Sampling is split into fixed
/// blocks with one counter-based RNG stream each, so the estimate is
/// bit-identical for any worker count and across platforms.
pub fn montecarlo_diff_area(
    c1: &ClosedCurve,
    c2: &ClosedCurve,
    n_samples: usize,
    seed: u64,
) -> OracleEstimate {
    montecarlo_impl(c1, c2, n_samples, seed, false)
}

/// Sequential twin of [`montecarlo_diff_area`], for benchmarking. Same
/// block-stream construction, bit-identical estimate.
pub fn montecarlo_diff_area_seq(
    c1: &ClosedCurve,
    c2: &ClosedCurve,
    n_samples: usize,
    seed: u64,
) -> OracleEstimate {
    montecarlo_impl(c1, c2, n_samples, seed, true)
}

fn montecarlo_impl(
    c1: &ClosedCurve,
    c2: &ClosedCurve,
    n_samples: usize,
    seed: u64,
    sequential: bool,
) -> OracleEstimate {
    assert!(n_samples >= 1_000);
    let cast1 = RayCaster::build(c1);
    let cast2 = RayCaster::build(c2);
    let (a_min, a_max) = c1.bbox();
    let (b_min, b_max) = c2.bbox();
    let lo = Point2::new(a_min.x.min(b_min.x), a_min.y.min(b_min.y));
    let hi = Point2::new(a_max.x.max(b_max.x), a_max.y.max(b_max.y));
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);

    let blocks = n_samples.div_ceil(MC_BLOCK);
    let count_block = |b: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64 + 1);
        let in_block = MC_BLOCK.min(n_samples - b * MC_BLOCK);
        let mut hits = 0u64;
        for _ in 0..in_block {
            let x = lo.x + w * rng.random::<f64>();
            let y = lo.y + h * rng.random::<f64>();
            let p = Point2::new(x, y);
            if cast1.contains(p) && !cast2.contains(p) {
                hits += 1;
            }
        }
        hits
    };
    let counts = if sequential {
        exec::map_collect_seq(blocks, count_block)
    } else {
        exec::map_collect(blocks, count_block)
    };
    let hits: u64 = counts.iter().sum();
    let box_area = w * h;
    let p = hits as f64 / n_samples as f64;
    OracleEstimate {
        value: box_area * p,
        std_error: box_area * (p * (1.0 - p) / n_samples as f64).sqrt(),
        samples: n_samples,
        seed,
    }
}

/// Exact overlap area of two circles with radii `r1`, `r2` at center
/// distance `d` (partial overlap only).
pub fn lens_area(r1: f64, r2: f64, d: f64) -> Result<f64> {
    assert!(r1 > 0.0 && r2 > 0.0 && d >= 0.0);
    if d >= r1 + r2 {
        return Err(Error::LensDisjoint);
    }
    if d <= (r1 - r2).abs() {
        return Err(Error::LensContained);
    }
    let alpha = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
    let beta = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
    let tri = 0.5
        * ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2))
            .max(0.0)
            .sqrt();
    Ok(r1 * r1 * alpha.acos() + r2 * r2 * beta.acos() - tri)
}
