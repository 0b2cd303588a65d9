//! Seeded instance generators.

use std::f64::consts::{PI, TAU};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constant_width::{cw_from_harmonics, reuleaux_polygon, ConstantWidthBody};
use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::{centroid, clip_halfplane, polygon_area, Vec2};
use crate::io::CurveSpec;
use crate::partition::{FaceLabel, PartitionSpec, PlanarPartition};
use crate::polygon::Polygon;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for item `index` of family `tag` under `seed`.
pub fn derive_seed(seed: u64, tag: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    DisjointBodies {
        container: CurveSpec,
        bodies: Vec<CurveSpec>,
    },
    PartitionWithHoles {
        reference: CurveSpec,
        partition: PartitionSpec,
    },
    PolygonInCw {
        body: CurveSpec,
        vertices: Vec<Vec2>,
    },
    TriangleFamily {
        /// Triangles with the bisector length `t` used for each.
        triangles: Vec<([Vec2; 3], f64)>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub seed: u64,
    #[serde(flatten)]
    pub payload: Payload,
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::DisjointBodies { .. } => "disjoint-bodies",
            Payload::PartitionWithHoles { .. } => "partition-with-holes",
            Payload::PolygonInCw { .. } => "polygon-in-cw",
            Payload::TriangleFamily { .. } => "triangle-family",
        }
    }
}

/// Random convex polygon with `n` vertices on a jittered circle.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, n: usize, center: Vec2, radius: f64) -> Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let r = radius * rng.gen_range(0.5..1.0);
        let stretch = rng.gen_range(0.4..1.0);
        let rot = rng.gen_range(0.0..TAU);
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|&a| {
                let p = Vec2::new(r * a.cos(), r * stretch * a.sin());
                center + Vec2::new(p.x * rot.cos() - p.y * rot.sin(), p.x * rot.sin() + p.y * rot.cos())
            })
            .collect();
        if let Ok(p) = Polygon::new(&pts) {
            if !p.is_segment() && p.len() >= 3.min(n) {
                return p;
            }
        }
    }
}

/// A polygon (3 to 30 vertices), a disk or a Reuleaux polygon.
pub fn random_curve<R: Rng>(rng: &mut R) -> ConvexCurve {
    let c = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let size = rng.gen_range(0.2..2.0);
    match rng.gen_range(0..4) {
        0 | 1 => {
            let n = rng.gen_range(3..=30);
            ConvexCurve::Polygon(random_convex_polygon(rng, n, c, size))
        }
        2 => ConvexCurve::disk(c, size).unwrap(),
        _ => random_reuleaux(rng, c, size).into_curve(),
    }
}

pub fn random_polygon_curve<R: Rng>(rng: &mut R) -> ConvexCurve {
    let c = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let n = rng.gen_range(3..=30);
    let size = rng.gen_range(0.2..2.0);
    ConvexCurve::Polygon(random_convex_polygon(rng, n, c, size))
}

fn random_reuleaux<R: Rng>(rng: &mut R, center: Vec2, width: f64) -> ConstantWidthBody {
    let n = 2 * rng.gen_range(1..=4) + 1;
    reuleaux_polygon(n, width, center, rng.gen_range(0.0..TAU)).unwrap()
}

/// A Reuleaux polygon, a disk or a smooth harmonic body of constant width.
pub fn random_cw_body<R: Rng>(rng: &mut R) -> ConstantWidthBody {
    let c = Vec2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let w = rng.gen_range(0.5..2.0);
    match rng.gen_range(0..3) {
        0 => random_reuleaux(rng, c, w),
        1 => ConstantWidthBody::new(ConvexCurve::disk(c, w / 2.0).unwrap(), 1e-12).unwrap(),
        _ => loop {
            // keep h + h'' = w/2 − Σ (k² − 1)(a cos kφ + b sin kφ) positive
            let k = 2 * rng.gen_range(1..=3) + 1;
            let amp = rng.gen_range(0.0..0.9) * w / 2.0 / ((k * k - 1) as f64);
            let ph = rng.gen_range(0.0..TAU);
            if let Ok(b) = cw_from_harmonics(w, &[(k, amp * ph.cos(), amp * ph.sin())], c) {
                break b;
            }
        },
    }
}

/// Uniform point in a convex polygon by rejection from its bounding box.
fn point_in<R: Rng>(rng: &mut R, poly: &Polygon) -> Vec2 {
    let v = poly.vertices();
    let (x0, x1) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
    let (y0, y1) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.y), b.max(p.y)));
    loop {
        let p = Vec2::new(rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
        if poly.contains(p, 0.0) {
            return p;
        }
    }
}

/// Uniform point in a convex curve.
pub fn point_in_curve<R: Rng>(rng: &mut R, c: &ConvexCurve) -> Vec2 {
    let h = |phi: f64| c.support_value(phi);
    let (x0, x1, y0, y1) = (-h(PI), h(0.0), -h(1.5 * PI), h(0.5 * PI));
    loop {
        let p = Vec2::new(rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
        if c.contains(p, 0.0) {
            return p;
        }
    }
}

/// `k` convex bodies with disjoint interiors: Voronoi cells of random sites,
/// clipped to the container and shrunk toward their centroids.
pub fn gen_disjoint_bodies(seed: u64, k: usize, container: &ConvexCurve) -> Result<Scenario> {
    if k == 0 {
        return Err(GeomError::InvalidParameter("k must be at least 1".into()));
    }
    let mut rng = rng_for(seed);
    let poly = match container.to_polygon(256) {
        ConvexCurve::Polygon(p) if !p.is_segment() => p,
        _ => return Err(GeomError::DegenerateInstance("container has empty interior".into())),
    };
    let sites: Vec<Vec2> = (0..k).map(|_| point_in(&mut rng, &poly)).collect();
    let mut bodies = Vec::with_capacity(k);
    for i in 0..k {
        let mut cell = poly.vertices().to_vec();
        for j in 0..k {
            if i != j {
                let n = sites[j] - sites[i];
                cell = clip_halfplane(&cell, sites[i].lerp(sites[j], 0.5), n);
            }
        }
        if cell.len() < 3 || polygon_area(&cell).abs() < 1e-12 {
            return Err(GeomError::DegenerateInstance(format!("Voronoi cell {i} collapsed")));
        }
        let c = centroid(&cell);
        let s = rng.gen_range(0.3..=1.0);
        let shrunk: Vec<Vec2> = cell.iter().map(|&p| c + (p - c) * s).collect();
        let body = Polygon::new(&shrunk)
            .map_err(|_| GeomError::DegenerateInstance(format!("Voronoi cell {i} collapsed")))?;
        bodies.push(CurveSpec::from_curve(&ConvexCurve::Polygon(body)));
    }
    Ok(Scenario {
        seed,
        payload: Payload::DisjointBodies {
            container: CurveSpec::from_curve(container),
            bodies,
        },
    })
}

fn split(poly: &[Vec2], a: Vec2, n: Vec2) -> (Vec<Vec2>, Vec<Vec2>) {
    (clip_halfplane(poly, a, n), clip_halfplane(poly, a, -n))
}

fn near_vertex(faces: &[Vec<Vec2>], p: Vec2, tol: f64) -> bool {
    faces.iter().flatten().any(|q| q.dist(p) < tol)
}

/// Polygon faces tiling `d`: random chord or full-line cuts until there are
/// `bodies` faces, then up to `holes` faces replaced by a homothetic hole
/// inside a ring of trapezoids, as long as at most `max_bodies` bodies result.
/// Returns `None` when the random cuts keep producing slivers.
fn random_faces<R: Rng>(
    rng: &mut R,
    d: &Polygon,
    bodies: usize,
    holes: usize,
    max_bodies: usize,
) -> Option<Vec<(Vec<Vec2>, FaceLabel)>> {
    let area = d.area();
    let diam = d.diameter();
    let min_area = area * 0.2 / (bodies as f64 + 4.0).powi(2);
    let min_gap = 1e-3 * diam;
    let mut faces: Vec<Vec<Vec2>> = vec![d.vertices().to_vec()];
    let mut tries = 0;
    while faces.len() < bodies {
        tries += 1;
        if tries > 2000 {
            return None;
        }
        let weights: Vec<f64> = faces.iter().map(|f| polygon_area(f).abs()).collect();
        let total: f64 = weights.iter().sum();
        let mut pick = rng.gen_range(0.0..total);
        let mut fi = 0;
        while fi + 1 < faces.len() && pick >= weights[fi] {
            pick -= weights[fi];
            fi += 1;
        }
        let fpoly = Polygon::new(&faces[fi]).ok()?;
        let a = point_in(rng, &fpoly);
        let ang = rng.gen_range(0.0..PI);
        let n = Vec2::new(ang.cos(), ang.sin());
        let line_cut = rng.gen_bool(0.3);
        let targets: Vec<usize> = if line_cut { (0..faces.len()).collect() } else { vec![fi] };
        let mut pieces = Vec::new();
        let mut cut = Vec::new();
        let mut ok = true;
        for &t in &targets {
            let (l, r) = split(&faces[t], a, n);
            let (al, ar) = (polygon_area(&l).abs(), polygon_area(&r).abs());
            if al == 0.0 || ar == 0.0 {
                continue;
            }
            if al < min_area || ar < min_area {
                ok = false;
                break;
            }
            // new vertices must keep away from existing ones
            for p in l.iter().chain(&r) {
                let fresh = !faces[t].iter().any(|q| q.dist(*p) < 1e-12);
                if fresh && near_vertex(&faces, *p, min_gap) {
                    ok = false;
                }
            }
            cut.push(t);
            pieces.push(l);
            pieces.push(r);
        }
        if !ok || cut.is_empty() || faces.len() + cut.len() > bodies {
            continue;
        }
        // a cut line must not pass through an existing vertex off the cut faces
        if faces.iter().flatten().any(|p| {
            let s = (*p - a).dot(n).abs();
            s > 1e-12 && s < min_gap
        }) {
            continue;
        }
        let mut next: Vec<Vec<Vec2>> = faces
            .iter()
            .enumerate()
            .filter(|(i, _)| !cut.contains(i))
            .map(|(_, f)| f.clone())
            .collect();
        next.extend(pieces);
        faces = next;
    }
    let mut out: Vec<(Vec<Vec2>, FaceLabel)> = Vec::new();
    let mut order: Vec<usize> = (0..faces.len()).collect();
    order.shuffle(rng);
    let mut hole_faces = Vec::new();
    let mut count = faces.len();
    for i in order {
        let extra = faces[i].len() - 1;
        if hole_faces.len() < holes && count + extra <= max_bodies {
            hole_faces.push(i);
            count += extra;
        }
    }
    for (i, f) in faces.into_iter().enumerate() {
        if !hole_faces.contains(&i) {
            out.push((f, FaceLabel::Body));
            continue;
        }
        let c = centroid(&f);
        let s = rng.gen_range(0.2..0.6);
        let h: Vec<Vec2> = f.iter().map(|&p| c + (p - c) * s).collect();
        let m = f.len();
        for j in 0..m {
            out.push((vec![f[j], f[(j + 1) % m], h[(j + 1) % m], h[j]], FaceLabel::Body));
        }
        out.push((h, FaceLabel::Hole));
    }
    Some(out)
}

/// Random valid partition of `d` (not normalized): `faces` faces from cuts,
/// then up to `holes` holes, each surrounded by a ring of bodies, keeping at
/// most `max_bodies` bodies.
pub fn random_partition_raw<R: Rng>(
    rng: &mut R,
    d: &Polygon,
    faces: usize,
    holes: usize,
    max_bodies: usize,
) -> Result<PlanarPartition> {
    for _ in 0..50 {
        let Some(polys) = random_faces(rng, d, faces.max(1), holes, max_bodies.max(faces)) else {
            continue;
        };
        let p = PlanarPartition::from_face_polygons(&ConvexCurve::Polygon(d.clone()), &polys)?;
        if p.validate().valid {
            return Ok(p);
        }
    }
    Err(GeomError::DegenerateInstance("could not generate a partition without slivers".into()))
}

/// [`random_partition_raw`] followed by degree-3 normalization.
pub fn random_partition<R: Rng>(
    rng: &mut R,
    d: &Polygon,
    faces: usize,
    holes: usize,
    max_bodies: usize,
) -> Result<PlanarPartition> {
    random_partition_raw(rng, d, faces, holes, max_bodies)?.normalize_degree3()
}

/// Random partition without holes, the input shape for extension.
pub fn random_plain_partition<R: Rng>(rng: &mut R, d: &Polygon, faces: usize) -> Result<PlanarPartition> {
    random_partition_raw(rng, d, faces, 0, faces)
}

/// Partition-with-holes scenario over a random constant-width body: the
/// container is a polygon inscribed in the body.
pub fn gen_partition_scenario(seed: u64, max_k: usize, max_holes: usize) -> Result<Scenario> {
    let mut rng = rng_for(seed);
    let body = random_cw_body(&mut rng);
    let holes = rng.gen_range(0..=max_holes);
    let cuts = rng.gen_range(1..=max_k.max(1));
    let inscribed = inscribed_polygon(&mut rng, body.curve());
    let p = random_partition(&mut rng, &inscribed, cuts, holes, max_k)?;
    Ok(Scenario {
        seed,
        payload: Payload::PartitionWithHoles {
            reference: CurveSpec::from_curve(body.curve()),
            partition: p.to_spec(),
        },
    })
}

/// Polygon with random vertices on the boundary of `c` (plus its kinks).
pub fn inscribed_polygon<R: Rng>(rng: &mut R, c: &ConvexCurve) -> Polygon {
    let n = rng.gen_range(5..=24);
    let mut pts: Vec<Vec2> = (0..n).map(|_| c.support_point(rng.gen_range(0.0..TAU))).collect();
    pts.extend(c.kinks().into_iter().map(|t| c.support_point(t)));
    let mut out = Polygon::new(&pts).ok();
    // fall back to regular sampling if the random points were too clustered
    if out.as_ref().is_none_or(|p| p.area() < 0.2 * c.diameter().powi(2)) {
        out = Polygon::new(&c.sample_boundary(32)).ok();
    }
    let p = out.expect("boundary samples of a body with interior form a polygon");
    // drop near-duplicate vertices so faces avoid microscopic edges
    let v = p.vertices();
    let gap = 1e-3 * c.diameter();
    let mut keep: Vec<Vec2> = Vec::new();
    for &q in v {
        if keep.iter().all(|k| k.dist(q) > gap) {
            keep.push(q);
        }
    }
    Polygon::new(&keep).unwrap_or(p)
}

/// Random convex polygon with vertices inside a constant-width body.
pub fn gen_polygon_in_cw(seed: u64, m: usize) -> Scenario {
    let mut rng = rng_for(seed);
    let body = random_cw_body(&mut rng);
    let vertices = polygon_in(&mut rng, body.curve(), m);
    Scenario {
        seed,
        payload: Payload::PolygonInCw {
            body: CurveSpec::from_curve(body.curve()),
            vertices,
        },
    }
}

/// `m` points of `c` in convex position, counterclockwise (fewer if the
/// random points were not in convex position).
pub fn polygon_in<R: Rng>(rng: &mut R, c: &ConvexCurve, m: usize) -> Vec<Vec2> {
    if m <= 2 {
        return (0..m).map(|_| point_in_curve(rng, c)).collect();
    }
    for _ in 0..100 {
        let pts: Vec<Vec2> = (0..m)
            .map(|_| {
                // bias toward the boundary so large polygons appear
                let b = c.support_point(rng.gen_range(0.0..TAU));
                let x = point_in_curve(rng, c);
                x.lerp(b, rng.gen_range(0.0..1.0))
            })
            .collect();
        if let Ok(p) = Polygon::new(&pts) {
            if p.len() == m {
                return p.vertices().to_vec();
            }
        }
    }
    let p = Polygon::new(&c.sample_boundary(m)).expect("regular samples are in convex position");
    p.vertices().to_vec()
}

/// Random triangles with `t = per/2 · (1 + u)`, `u ∈ [0, 2]`.
pub fn gen_triangle_family(seed: u64, count: usize) -> Scenario {
    let mut rng = rng_for(seed);
    let mut triangles = Vec::with_capacity(count);
    while triangles.len() < count {
        let a: [Vec2; 3] = std::array::from_fn(|_| Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let area = 0.5 * (a[1] - a[0]).cross(a[2] - a[0]).abs();
        if area < 1e-6 {
            continue;
        }
        let per = a[0].dist(a[1]) + a[1].dist(a[2]) + a[2].dist(a[0]);
        let t = 0.5 * per * (1.0 + rng.gen_range(0.0..=2.0));
        triangles.push((a, t));
    }
    Scenario {
        seed,
        payload: Payload::TriangleFamily { triangles },
    }
}
