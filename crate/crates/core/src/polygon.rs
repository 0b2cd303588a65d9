//! Convex polygons (including two-vertex segments) with support queries.

use std::f64::consts::TAU;

use crate::error::{GeomError, Result};
use crate::geometry::{orient, point_segment_dist, polyline_perimeter, signed_area2, wrap, Vec2};

/// Facet-normal tie tolerance, in radians.
pub const FACET_TOL: f64 = 1e-12;

/// A convex polygon with strictly counterclockwise vertices and no collinear
/// triples. Two vertices encode a segment (a degenerate 2-gon).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
    /// Inward normal angle of edge `i` (from vertex `i` to `i + 1`).
    normals: Vec<f64>,
    /// Edge indices sorted by normal angle.
    order: Vec<usize>,
}

pub enum Hull {
    Point(Vec2),
    Polygon(Polygon),
}

fn scale_of(pts: &[Vec2]) -> f64 {
    pts.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs())).max(1.0)
}

/// Convex hull by monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[Vec2]) -> Hull {
    let mut pts: Vec<Vec2> = points.iter().copied().filter(|p| p.is_finite()).collect();
    assert!(!pts.is_empty(), "hull of an empty point set");
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let eps = 1e-14 * scale_of(&pts);
    pts.dedup_by(|a, b| a.dist(*b) <= eps);
    if pts.len() == 1 {
        return Hull::Point(pts[0]);
    }
    let tol = 1e-13 * scale_of(&pts) * scale_of(&pts);
    let mut h: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &Vec2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while h.len() >= start + 2 && orient(h[h.len() - 2], h[h.len() - 1], p) <= tol {
                h.pop();
            }
            h.push(p);
        }
        h.pop();
    }
    if h.len() == 1 {
        return Hull::Point(h[0]);
    }
    if h.len() == 2 && h[0].dist(h[1]) <= eps {
        return Hull::Point(h[0]);
    }
    Hull::Polygon(Polygon::from_ccw_unchecked(h))
}

impl Polygon {
    /// Builds a polygon from a convex vertex loop in either orientation.
    /// Duplicate and collinear vertices are removed; non-convex input is rejected.
    pub fn new(vertices: &[Vec2]) -> Result<Polygon> {
        if vertices.len() < 2 {
            return Err(GeomError::InvalidCurve("polygon needs at least two vertices".into()));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::InvalidCurve("non-finite vertex".into()));
        }
        let s = scale_of(vertices);
        let eps = 1e-13 * s;
        let mut pts: Vec<Vec2> = Vec::with_capacity(vertices.len());
        for &p in vertices {
            if pts.last().is_none_or(|q: &Vec2| q.dist(p) > eps) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= eps {
            pts.pop();
        }
        if signed_area2(&pts) < 0.0 {
            pts.reverse();
        }
        let n = pts.len();
        let tol = 1e-10 * s * s;
        if n >= 3 {
            for i in 0..n {
                let o = orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
                if o < -tol {
                    return Err(GeomError::InvalidCurve(format!(
                        "polygon is not convex at vertex {}",
                        (i + 1) % n
                    )));
                }
            }
        }
        match convex_hull(&pts) {
            Hull::Polygon(p) => {
                // every input vertex must lie on the hull boundary
                for &q in &pts {
                    let d = (0..p.len())
                        .map(|i| point_segment_dist(q, p.vertex(i), p.vertex(i + 1)))
                        .fold(f64::INFINITY, f64::min);
                    if d > 1e-9 * s {
                        return Err(GeomError::InvalidCurve("polygon is not convex".into()));
                    }
                }
                Ok(p)
            }
            Hull::Point(_) => Err(GeomError::InvalidCurve("polygon collapses to a point".into())),
        }
    }

    pub(crate) fn from_ccw_unchecked(vertices: Vec<Vec2>) -> Polygon {
        let n = vertices.len();
        let normals: Vec<f64> = (0..n)
            .map(|i| {
                let d = vertices[(i + 1) % n] - vertices[i];
                wrap(d.perp().angle())
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| normals[a].total_cmp(&normals[b]));
        Polygon {
            vertices,
            normals,
            order,
        }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Vertex with cyclic indexing.
    #[inline]
    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Inward normal angles of the edges; the support point jumps at these.
    pub fn edge_normals(&self) -> &[f64] {
        &self.normals
    }

    /// Boundary point with inward normal `u_θ`. On a facet normal the edge
    /// midpoint is returned.
    pub fn support_point(&self, theta: f64) -> Vec2 {
        let t = wrap(theta);
        let n = self.order.len();
        let k = self.order.partition_point(|&e| self.normals[e] < t);
        let near = |e: usize| {
            let d = (self.normals[e] - t).abs();
            d <= FACET_TOL || (TAU - d) <= FACET_TOL
        };
        let next = self.order[k % n];
        let prev = self.order[(k + n - 1) % n];
        for e in [next, prev] {
            if near(e) {
                return self.vertex(e).lerp(self.vertex(e + 1), 0.5);
            }
        }
        self.vertices[next]
    }

    pub fn perimeter(&self) -> f64 {
        polyline_perimeter(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        0.5 * signed_area2(&self.vertices)
    }

    /// Largest vertex-pair distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        if n <= 2048 {
            let mut best = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    best = best.max(v[i].dist(v[j]));
                }
            }
            return best;
        }
        // rotating calipers over antipodal pairs
        let mut best = 0.0f64;
        let mut j = 1;
        for i in 0..n {
            let e = v[(i + 1) % n] - v[i];
            while e.cross(v[(j + 1) % n] - v[i]) > e.cross(v[j] - v[i]) {
                j = (j + 1) % n;
            }
            best = best.max(v[i].dist(v[j])).max(v[(i + 1) % n].dist(v[j]));
        }
        best
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        let n = self.vertices.len();
        if n == 2 {
            return point_segment_dist(p, self.vertices[0], self.vertices[1]) <= tol;
        }
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let len = a.dist(b);
            orient(a, b, p) >= -tol * len
        })
    }

    pub fn translate(&self, d: Vec2) -> Polygon {
        Polygon::from_ccw_unchecked(self.vertices.iter().map(|&p| p + d).collect())
    }
}
