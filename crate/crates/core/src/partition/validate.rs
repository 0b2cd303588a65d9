use std::f64::consts::TAU;

use serde::Serialize;

use super::{FaceLabel, PlanarPartition};
use crate::geometry::{orient, point_segment_dist, segment_segment_dist, Vec2};

const AREA_TOL: f64 = 1e-8;
const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub k: usize,
    pub l: usize,
    pub violations: Vec<String>,
}

/// Consecutive duplicates removed (cyclically).
fn distinct_loop(poly: &[Vec2]) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(poly.len());
    for &p in poly {
        if out.last().is_none_or(|q| q.dist(p) > 1e-12) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= 1e-12 {
        out.pop();
    }
    out
}

/// Convex, counterclockwise and turning exactly once; straight angles allowed.
pub(crate) fn is_convex_loop(poly: &[Vec2]) -> bool {
    let p = distinct_loop(poly);
    let n = p.len();
    if n < 3 {
        return true;
    }
    let mut turning = 0.0;
    for i in 0..n {
        let (a, b, c) = (p[i], p[(i + 1) % n], p[(i + 2) % n]);
        let (u, v) = (b - a, c - b);
        if orient(a, b, c) < -1e-12 * u.norm() * v.norm().max(1e-300) - 1e-15 {
            return false;
        }
        turning += u.cross(v).atan2(u.dot(v));
    }
    (turning - TAU).abs() < 1e-6
}

fn edge_axes(p: &[Vec2]) -> impl Iterator<Item = Vec2> + '_ {
    let n = p.len();
    (0..n).filter_map(move |i| (p[(i + 1) % n] - p[i]).perp().normalized())
}

/// Penetration depth of two convex polygons along the best separating axis;
/// positive means the interiors overlap.
pub fn overlap_depth(a: &[Vec2], b: &[Vec2]) -> f64 {
    let range = |p: &[Vec2], ax: Vec2| {
        p.iter()
            .map(|q| q.dot(ax))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
    };
    edge_axes(a)
        .chain(edge_axes(b))
        .map(|ax| {
            let (a0, a1) = range(a, ax);
            let (b0, b1) = range(b, ax);
            a1.min(b1) - a0.max(b0)
        })
        .fold(f64::INFINITY, f64::min)
}

fn loop_gap(a: &[Vec2], b: &[Vec2]) -> f64 {
    let (n, m) = (a.len(), b.len());
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in 0..m {
            let d = if n == 1 && m == 1 {
                a[0].dist(b[0])
            } else if n == 1 {
                point_segment_dist(a[0], b[j], b[(j + 1) % m])
            } else if m == 1 {
                point_segment_dist(b[0], a[i], a[(i + 1) % n])
            } else {
                segment_segment_dist(a[i], a[(i + 1) % n], b[j], b[(j + 1) % m])
            };
            best = best.min(d);
        }
    }
    best
}

impl PlanarPartition {
    /// Checks tiling, convexity, disjointness and the hole conditions.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let nf = self.faces.len();
        let polys: Vec<Vec<Vec2>> = (0..nf).map(|f| self.face_polygon(f)).collect();
        let loops: Vec<Vec<Vec2>> = polys.iter().map(|p| distinct_loop(p)).collect();
        let container = self.container.vertices();
        let carea = self.container.area();

        let total: f64 = (0..nf).map(|f| self.face_area(f)).sum();
        if (total - carea).abs() > AREA_TOL * carea.max(1.0) {
            v.push(format!("face areas sum to {total}, container area is {carea}"));
        }
        for f in 0..nf {
            if !is_convex_loop(&polys[f]) {
                v.push(format!("face {f} is not convex"));
            }
            if polys[f].iter().any(|&p| !self.container.contains(p, GEOM_TOL)) {
                v.push(format!("face {f} leaves the container"));
            }
        }
        for i in 0..nf {
            if loops[i].len() < 3 {
                continue;
            }
            for j in i + 1..nf {
                if loops[j].len() >= 3 && overlap_depth(&loops[i], &loops[j]) > GEOM_TOL {
                    v.push(format!("interiors not disjoint: faces {i} and {j}"));
                }
            }
        }
        let holes: Vec<usize> = (0..nf).filter(|&f| self.faces[f].label == FaceLabel::Hole).collect();
        for (a, &h) in holes.iter().enumerate() {
            if loop_gap(&loops[h], container) <= 0.0 + 1e-12 {
                v.push(format!("hole face {h} touches the container boundary"));
            }
            for &g in &holes[a + 1..] {
                if loop_gap(&loops[h], &loops[g]) <= 1e-12 {
                    v.push(format!("hole faces {h} and {g} touch"));
                }
            }
        }
        let mut uses = vec![0usize; self.edges.len()];
        for f in &self.faces {
            for &e in &f.cycle {
                uses[e] += 1;
            }
        }
        let on_boundary = |p: Vec2| {
            let n = container.len();
            (0..n).any(|i| point_segment_dist(p, container[i], container[(i + 1) % n]) <= GEOM_TOL)
        };
        for (e, &u) in uses.iter().enumerate() {
            let [a, b] = self.edges[e];
            match u {
                0 => v.push(format!("edge {e} borders no face")),
                1 if !(on_boundary(self.vertices[a])
                    && on_boundary(self.vertices[b])
                    && on_boundary(self.vertices[a].lerp(self.vertices[b], 0.5))) =>
                {
                    v.push(format!("edge {e} borders a single face but is interior"))
                }
                1 | 2 => {}
                _ => v.push(format!("edge {e} borders {u} faces")),
            }
        }
        ValidationReport {
            valid: v.is_empty(),
            k: self.body_count(),
            l: self.hole_count(),
            violations: v,
        }
    }
}
