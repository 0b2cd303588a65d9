//! Planar vectors, angles on the circle and directed lines.
//!
//! Angles parametrize *inward* normals: `u(theta) = (cos theta, sin theta)`
//! points into the half-plane that contains the curve, and
//! `v(theta)` is `u(theta)` rotated a quarter turn clockwise.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point or displacement in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector at polar angle `a`.
    #[inline]
    pub fn polar(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Vec2::new(c, s)
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    #[inline]
    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// An angle reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Self {
        Angle(wrap(theta))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    /// Inward normal `u_θ`.
    #[inline]
    pub fn normal(self) -> Vec2 {
        inward(self.0)
    }

    /// Tangent `v_θ`, the inward normal turned a quarter clockwise.
    #[inline]
    pub fn tangent(self) -> Vec2 {
        tangent(self.0)
    }

    /// Counterclockwise arc length from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: Angle) -> f64 {
        wrap(other.0 - self.0)
    }

    /// True if `self` lies on the counterclockwise arc from `start` of length `len`.
    pub fn in_arc(self, start: Angle, len: f64) -> bool {
        start.ccw_to(self) <= len
    }
}

/// Reduce to `[0, 2π)`.
#[inline]
pub fn wrap(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[inline]
pub fn inward(theta: f64) -> Vec2 {
    Vec2::polar(theta)
}

#[inline]
pub fn tangent(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(s, -c)
}

/// An oriented line: a base point and a unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedLine {
    pub base: Vec2,
    pub direction: Vec2,
}

pub const DIRECTION_TOL: f64 = 1e-12;

impl DirectedLine {
    /// Panics if `direction` is not unit length within 1e-12.
    pub fn new(base: Vec2, direction: Vec2) -> Self {
        assert!(
            (direction.norm() - 1.0).abs() <= DIRECTION_TOL,
            "direction must be a unit vector"
        );
        DirectedLine { base, direction }
    }

    pub fn through(base: Vec2, theta: f64) -> Self {
        DirectedLine {
            base,
            direction: inward(theta),
        }
    }

    pub fn is_parallel(&self, other: &DirectedLine) -> bool {
        self.direction.cross(other.direction).abs() <= DIRECTION_TOL
    }

    /// Euclidean distance to a parallel line; independent of either base point.
    pub fn dist_parallel(&self, other: &DirectedLine) -> f64 {
        debug_assert!(self.is_parallel(other));
        (self.base - other.base).dot(self.direction.perp()).abs()
    }

    /// Signed offset of `p` from this line, positive on the left.
    pub fn side(&self, p: Vec2) -> f64 {
        (p - self.base).dot(self.direction.perp())
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.side(p).abs() <= tol
    }
}

/// Signed doubled area of a closed polygon, positive when counterclockwise.
pub fn signed_area2(pts: &[Vec2]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    s
}

pub fn polygon_area(pts: &[Vec2]) -> f64 {
    0.5 * signed_area2(pts).abs()
}

pub fn polyline_perimeter(pts: &[Vec2]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).sum()
}

pub fn centroid(pts: &[Vec2]) -> Vec2 {
    let a2 = signed_area2(pts);
    if a2.abs() < 1e-300 {
        let s = pts.iter().fold(Vec2::ZERO, |acc, &p| acc + p);
        return s / pts.len().max(1) as f64;
    }
    let n = pts.len();
    let mut c = Vec2::ZERO;
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        let w = p.cross(q);
        c += (p + q) * w;
    }
    c / (3.0 * a2)
}

/// Orientation of `c` relative to the directed segment `a -> b`.
#[inline]
pub fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_dist(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sq();
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / l2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Minimum distance between two closed segments.
pub fn segment_segment_dist(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_dist(a, c, d)
        .min(point_segment_dist(b, c, d))
        .min(point_segment_dist(c, a, b))
        .min(point_segment_dist(d, a, b))
}

/// Proper or touching intersection of two closed segments.
pub fn segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Vec2, q: Vec2, r: Vec2, o: f64| {
        o == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4)
}

/// Intersection parameters `(s, t)` of the lines `p + s r` and `q + t u`, if not parallel.
pub fn line_intersection(p: Vec2, r: Vec2, q: Vec2, u: Vec2) -> Option<(f64, f64)> {
    let den = r.cross(u);
    if den.abs() < 1e-300 {
        return None;
    }
    let w = q - p;
    Some((w.cross(u) / den, w.cross(r) / den))
}

pub const HALF_PI: f64 = PI / 2.0;

/// Part of `poly` in the half-plane `{x : (x − a) · n ≤ 0}`.
pub fn clip_halfplane(poly: &[Vec2], a: Vec2, n: Vec2) -> Vec<Vec2> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..m {
        let (p, q) = (poly[i], poly[(i + 1) % m]);
        let (dp, dq) = ((p - a).dot(n), (q - a).dot(n));
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            out.push(p + (q - p) * (dp / (dp - dq)));
        }
    }
    out
}

/// Intersection of `poly` with the counterclockwise convex polygon `clip`.
pub fn clip_convex(poly: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let m = clip.len();
    let mut out = poly.to_vec();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % m]);
        // outward normal of a counterclockwise edge
        let n = Vec2::new(b.y - a.y, a.x - b.x);
        out = clip_halfplane(&out, a, n);
    }
    out
}
