//! Building partitions from face polygons via a segment arrangement.

use std::collections::HashMap;

use super::{Face, FaceLabel, PlanarPartition};
use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::{centroid, orient, point_segment_dist, signed_area2, Vec2};

/// Points closer than this are merged.
pub const SNAP_TOL: f64 = 1e-9;

struct Snapper {
    cells: HashMap<(i64, i64), Vec<usize>>,
    points: Vec<Vec2>,
}

impl Snapper {
    fn new() -> Self {
        Snapper {
            cells: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(p: Vec2) -> (i64, i64) {
        ((p.x / SNAP_TOL).floor() as i64, (p.y / SNAP_TOL).floor() as i64)
    }

    fn insert(&mut self, p: Vec2) -> usize {
        let (kx, ky) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(kx + dx, ky + dy)) {
                    for &i in ids {
                        if self.points[i].dist(p) <= SNAP_TOL {
                            return i;
                        }
                    }
                }
            }
        }
        let id = self.points.len();
        self.points.push(p);
        self.cells.entry((kx, ky)).or_default().push(id);
        id
    }
}

/// Planar arrangement of non-crossing segments: vertices, undirected edges
/// and the bounded faces as counterclockwise edge cycles.
pub(crate) struct Arrangement {
    pub vertices: Vec<Vec2>,
    pub edges: Vec<[usize; 2]>,
    pub cycles: Vec<Vec<usize>>,
}

pub(crate) fn arrangement(segments: &[(Vec2, Vec2)]) -> Result<Arrangement> {
    let mut snap = Snapper::new();
    let ids: Vec<(usize, usize)> = segments.iter().map(|&(a, b)| (snap.insert(a), snap.insert(b))).collect();
    let pts = snap.points;
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges: Vec<[usize; 2]> = Vec::new();
    for &(a, b) in &ids {
        if a == b {
            continue;
        }
        let (pa, pb) = (pts[a], pts[b]);
        let len2 = (pb - pa).norm_sq();
        let mut on: Vec<(f64, usize)> = vec![(0.0, a), (1.0, b)];
        for (i, &p) in pts.iter().enumerate() {
            if i == a || i == b {
                continue;
            }
            if point_segment_dist(p, pa, pb) <= SNAP_TOL {
                let t = (p - pa).dot(pb - pa) / len2;
                if t > 0.0 && t < 1.0 {
                    on.push((t, i));
                }
            }
        }
        on.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in on.windows(2) {
            let (u, v) = (w[0].1, w[1].1);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            edge_index.entry(key).or_insert_with(|| {
                edges.push([key.0, key.1]);
                edges.len() - 1
            });
        }
    }
    // half-edge 2e is edges[e][0] -> edges[e][1], 2e + 1 the reverse
    let n = pts.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &[a, b]) in edges.iter().enumerate() {
        out[a].push(2 * e);
        out[b].push(2 * e + 1);
    }
    let head = |h: usize| if h.is_multiple_of(2) { edges[h / 2][1] } else { edges[h / 2][0] };
    let tail = |h: usize| if h.is_multiple_of(2) { edges[h / 2][0] } else { edges[h / 2][1] };
    let mut pos = vec![0usize; 2 * edges.len()];
    for (v, hs) in out.iter_mut().enumerate() {
        hs.sort_by(|&x, &y| {
            let ax = (pts[head(x)] - pts[v]).angle();
            let ay = (pts[head(y)] - pts[v]).angle();
            ax.total_cmp(&ay)
        });
        for (i, &h) in hs.iter().enumerate() {
            pos[h] = i;
        }
    }
    let next = |h: usize| {
        let v = head(h);
        let twin = h ^ 1;
        let hs = &out[v];
        hs[(pos[twin] + hs.len() - 1) % hs.len()]
    };
    let mut seen = vec![false; 2 * edges.len()];
    let mut cycles = Vec::new();
    for start in 0..2 * edges.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            cyc.push(h);
            h = next(h);
        }
        if h != start {
            return Err(GeomError::InvalidPartition("inconsistent arrangement".into()));
        }
        let poly: Vec<Vec2> = cyc.iter().map(|&h| pts[tail(h)]).collect();
        if signed_area2(&poly) > 0.0 {
            cycles.push(cyc.iter().map(|&h| h / 2).collect());
        }
    }
    Ok(Arrangement {
        vertices: pts,
        edges,
        cycles,
    })
}

pub(super) fn inside_convex(poly: &[Vec2], p: Vec2) -> bool {
    let n = poly.len();
    let sign = if signed_area2(poly) >= 0.0 { 1.0 } else { -1.0 };
    (0..n).all(|i| {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        sign * orient(a, b, p) >= -SNAP_TOL * a.dist(b)
    })
}

impl PlanarPartition {
    /// Partition whose faces are the given convex polygons, which are
    /// expected to tile `container`. Shared boundaries are merged; vertices
    /// of one face lying on an edge of another split that edge.
    pub fn from_face_polygons(container: &ConvexCurve, faces: &[(Vec<Vec2>, FaceLabel)]) -> Result<Self> {
        let mut segs = Vec::new();
        for (poly, _) in faces {
            let n = poly.len();
            for i in 0..n {
                segs.push((poly[i], poly[(i + 1) % n]));
            }
        }
        Self::from_segments(container, &segs, |p| {
            let hits: Vec<FaceLabel> = faces
                .iter()
                .filter(|(poly, _)| inside_convex(poly, p))
                .map(|(_, l)| *l)
                .collect();
            (hits.len() == 1).then(|| hits[0])
        })
    }

    /// Partition from the arrangement of `segments`. `label` classifies each
    /// bounded face by an interior point; `None` rejects the input.
    pub fn from_segments<F>(container: &ConvexCurve, segments: &[(Vec2, Vec2)], label: F) -> Result<Self>
    where
        F: Fn(Vec2) -> Option<FaceLabel>,
    {
        let arr = arrangement(segments)?;
        let mut faces = Vec::with_capacity(arr.cycles.len());
        for cyc in arr.cycles {
            let poly: Vec<Vec2> = {
                let m = cyc.len();
                (0..m)
                    .map(|i| {
                        let [a, b] = arr.edges[cyc[i]];
                        let [c, d] = arr.edges[cyc[(i + 1) % m]];
                        // the endpoint of cyc[i] shared with cyc[i+1]
                        let end = if a == c || a == d { a } else { b };
                        arr.vertices[end]
                    })
                    .collect()
            };
            let c = centroid(&poly);
            let l = label(c).ok_or_else(|| {
                GeomError::InvalidPartition(format!("cannot label the face around ({:.6}, {:.6})", c.x, c.y))
            })?;
            faces.push(Face { cycle: cyc, label: l });
        }
        PlanarPartition::new(container, arr.vertices, arr.edges, faces)
    }
}
