//! Extension of a partition of `D` to a partition of a larger container.
//!
//! Every chord ending on the boundary of `D` is continued straight outward.
//! Where several chords share a boundary vertex a single ray along the
//! bisector of the two outermost chords is used. Rays stop when they reach the
//! trace of an earlier ray or the outer boundary, so no two of them cross.

use serde::Serialize;

use super::build::{arrangement, inside_convex, SNAP_TOL};
use super::validate::is_convex_loop;
use super::{Face, PlanarPartition};
use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::{centroid, clip_convex, point_segment_dist, polygon_area, signed_area2, Vec2};
use crate::polygon::{convex_hull, Hull, Polygon};

/// Boundary samples used to replace a curved outer container by a polygon.
pub const EXTENSION_SAMPLES: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RaySegment {
    pub start: Vec2,
    pub end: Vec2,
    pub length: f64,
}

#[derive(Debug, Clone)]
pub struct ExtensionResult {
    /// Face `i` extends face `i` of the original partition.
    pub extended: PlanarPartition,
    pub added_segments: Vec<RaySegment>,
}

impl ExtensionResult {
    pub fn added_length(&self) -> f64 {
        self.added_segments.iter().map(|s| s.length).sum()
    }

    /// Both sides of
    /// `Σ per(C′) − per(D) = Σ per(C″) − per(D′) − 2 Σ l`,
    /// where `D′` is the container of the extension.
    pub fn perimeter_identity(&self, original: &PlanarPartition) -> (f64, f64) {
        let lhs = original.face_perimeters().iter().sum::<f64>() - original.container_perimeter();
        let rhs = self.extended.face_perimeters().iter().sum::<f64>()
            - self.extended.container_perimeter()
            - 2.0 * self.added_length();
        (lhs, rhs)
    }

    /// Largest area difference between an original face and its extension
    /// clipped back to the original container.
    pub fn restriction_error(&self, original: &PlanarPartition) -> f64 {
        let d = original.container().vertices();
        (0..original.faces().len())
            .map(|f| {
                let mut g = self.extended.face_polygon(f);
                if signed_area2(&g) < 0.0 {
                    g.reverse();
                }
                let clipped = clip_convex(&g, d);
                (polygon_area(&clipped).abs() - original.face_area(f)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Polygon standing in for `d_prime`: itself if polygonal, otherwise the hull
/// of boundary samples together with the vertices of `inner`.
fn outer_polygon(d_prime: &ConvexCurve, inner: &Polygon) -> Result<Polygon> {
    let mut pts = match d_prime {
        ConvexCurve::Polygon(p) => p.vertices().to_vec(),
        _ => d_prime.sample_boundary(EXTENSION_SAMPLES),
    };
    pts.extend_from_slice(inner.vertices());
    match convex_hull(&pts) {
        Hull::Polygon(p) if !p.is_segment() => Ok(p),
        _ => Err(GeomError::ExtensionFailure("outer container has empty interior".into())),
    }
}

/// Distance along `p + t·d` to the boundary of a counterclockwise convex polygon containing `p`.
fn exit_distance(poly: &[Vec2], p: Vec2, d: Vec2) -> f64 {
    let n = poly.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let out = Vec2::new(b.y - a.y, a.x - b.x);
        let rate = d.dot(out);
        if rate > 0.0 {
            best = best.min((-(p - a).dot(out) / rate).max(0.0));
        }
    }
    best
}

struct Ray {
    start: Vec2,
    dir: Vec2,
    stop: f64,
}

/// Stops each ray at the first point where it meets the trace of another.
fn stop_rays(rays: &mut [Ray]) {
    let n = rays.len();
    // (time of i, i, j, time at which j passes the point)
    let mut events: Vec<(f64, usize, usize, f64)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&rays[i], &rays[j]);
            let den = a.dir.cross(b.dir);
            if den.abs() < 1e-14 {
                continue;
            }
            let w = b.start - a.start;
            let s = w.cross(b.dir) / den;
            let t = w.cross(a.dir) / den;
            let eps = 1e-12 * (1.0 + s.abs());
            if s > eps && t > eps && s <= a.stop && t <= b.stop && t <= s + eps {
                events.push((s, i, j, t));
            }
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut crashed = vec![false; n];
    for (s, i, j, t) in events {
        if crashed[i] {
            continue;
        }
        if rays[j].stop + 1e-12 * (1.0 + t) < t {
            continue;
        }
        rays[i].stop = s;
        crashed[i] = true;
    }
}

/// Extends a partition of the polygon `D` to the convex container `d_prime ⊇ D`.
pub fn extend_to_container(p: &PlanarPartition, d_prime: &ConvexCurve) -> Result<ExtensionResult> {
    let report = p.validate();
    if !report.valid {
        return Err(GeomError::InvalidPartition(report.violations.join("; ")));
    }
    let d = p.container();
    if let Some(i) = d.vertices().iter().position(|&v| !d_prime.contains(v, 1e-9)) {
        return Err(GeomError::ExtensionFailure(format!(
            "container vertex {i} lies outside the new container"
        )));
    }
    if let Some(e) = (0..p.edges().len()).find(|&e| p.edge_length(e) <= SNAP_TOL) {
        return Err(GeomError::ExtensionFailure(format!(
            "edge {e} has zero length; extend before normalizing"
        )));
    }
    let outer = outer_polygon(d_prime, d)?;
    let dv = d.vertices();
    let on_d = |x: Vec2| (0..dv.len()).any(|i| point_segment_dist(x, dv[i], dv[(i + 1) % dv.len()]) <= SNAP_TOL);

    let verts = p.vertices();
    let mut chords = Vec::new();
    let mut rays = Vec::new();
    for (e, &[a, b]) in p.edges().iter().enumerate() {
        if on_d(verts[a]) && on_d(verts[b]) && on_d(verts[a].lerp(verts[b], 0.5)) {
            continue;
        }
        chords.push(e);
    }
    for v in 0..verts.len() {
        if !on_d(verts[v]) {
            continue;
        }
        let dirs: Vec<Vec2> = chords
            .iter()
            .filter_map(|&e| {
                let [a, b] = p.edges()[e];
                let other = if a == v { b } else if b == v { a } else { return None };
                (verts[v] - verts[other]).normalized()
            })
            .collect();
        if dirs.is_empty() {
            continue;
        }
        let mid = dirs.iter().fold(Vec2::ZERO, |s, &u| s + u).normalized().ok_or_else(|| {
            GeomError::ExtensionFailure(format!("chords at vertex {v} have no common outward direction"))
        })?;
        let ang = |u: Vec2| mid.cross(u).atan2(mid.dot(u));
        let lo = dirs.iter().copied().min_by(|x, y| ang(*x).total_cmp(&ang(*y))).unwrap();
        let hi = dirs.iter().copied().max_by(|x, y| ang(*x).total_cmp(&ang(*y))).unwrap();
        let dir = (lo + hi)
            .normalized()
            .ok_or_else(|| GeomError::ExtensionFailure(format!("opposite chords at boundary vertex {v}")))?;
        let start = verts[v];
        let stop = exit_distance(outer.vertices(), start, dir);
        rays.push(Ray { start, dir, stop });
    }
    stop_rays(&mut rays);

    let mut segs: Vec<(Vec2, Vec2)> = chords
        .iter()
        .map(|&e| {
            let [a, b] = p.edges()[e];
            (verts[a], verts[b])
        })
        .collect();
    let mut added = Vec::new();
    for r in &rays {
        if r.stop > SNAP_TOL {
            let end = r.start + r.dir * r.stop;
            segs.push((r.start, end));
            added.push(RaySegment {
                start: r.start,
                end,
                length: r.stop,
            });
        }
    }
    let ov = outer.vertices();
    for i in 0..ov.len() {
        segs.push((ov[i], ov[(i + 1) % ov.len()]));
    }

    let arr = arrangement(&segs).map_err(|e| GeomError::ExtensionFailure(e.to_string()))?;
    let old_centroids: Vec<Vec2> = (0..p.faces().len()).map(|f| centroid(&p.face_polygon(f))).collect();
    let mut slots: Vec<Option<Vec<usize>>> = vec![None; p.faces().len()];
    for cyc in arr.cycles {
        let m = cyc.len();
        let poly: Vec<Vec2> = (0..m)
            .map(|i| {
                let [a, b] = arr.edges[cyc[i]];
                let [c, dd] = arr.edges[cyc[(i + m - 1) % m]];
                let start = if a == c || a == dd { a } else { b };
                arr.vertices[start]
            })
            .collect();
        if !is_convex_loop(&poly) {
            let c = centroid(&poly);
            return Err(GeomError::ExtensionFailure(format!(
                "extended face around ({:.6}, {:.6}) is not convex",
                c.x, c.y
            )));
        }
        let hits: Vec<usize> = (0..old_centroids.len())
            .filter(|&f| inside_convex(&poly, old_centroids[f]))
            .collect();
        match hits.as_slice() {
            [f] if slots[*f].is_none() => slots[*f] = Some(cyc),
            _ => {
                return Err(GeomError::ExtensionFailure(format!(
                    "extended face matches {} original faces",
                    hits.len()
                )))
            }
        }
    }
    let faces = slots
        .into_iter()
        .zip(p.faces())
        .map(|(cyc, old)| {
            cyc.map(|cycle| Face {
                cycle,
                label: old.label,
            })
            .ok_or_else(|| GeomError::ExtensionFailure("an original face was lost".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let extended = PlanarPartition::new(&ConvexCurve::Polygon(outer), arr.vertices, arr.edges, faces)?;
    Ok(ExtensionResult {
        extended,
        added_segments: added,
    })
}
