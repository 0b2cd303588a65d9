//! Theorem and lemma checks producing verification records.

use crate::constant_width::{complete_to_constant_width, ConstantWidthBody};
use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::Vec2;
use crate::io::CurveSpec;
use crate::partition::{extend_to_container, FaceLabel, PlanarPartition};
use crate::pseudometric::{pdist_point_half_range, pper, triangle_excess, DEGENERATE_AREA};
use crate::quadrature::QuadratureSpec;
use crate::report::{CheckKind, VerificationReport};

use super::generate::{Payload, Scenario};

/// Identity tolerance on unit-scale bodies.
pub const IDENTITY_TOL: f64 = 1e-6;
/// Allowed negative slack for inequality checks on unit-scale bodies.
pub const INEQUALITY_TOL: f64 = 1e-6;
/// Accumulated tolerance of the extension pipeline.
pub const PIPELINE_TOL: f64 = 1e-5;

fn scaled(tol: f64, diam: f64) -> f64 {
    tol * diam.max(1.0)
}

/// `Σ per(Cᵢ) ≤ per(C) + 2(k − 1)·diam(C)` for bodies with disjoint interiors in `C`.
pub fn check_main_theorem(s: &Scenario, q: &QuadratureSpec) -> Result<VerificationReport> {
    let Payload::DisjointBodies { container, bodies } = &s.payload else {
        return Err(GeomError::InvalidParameter(format!("{} is not a disjoint-bodies scenario", s.kind())));
    };
    let c = container.to_curve()?;
    let bodies: Vec<ConvexCurve> = bodies.iter().map(CurveSpec::to_curve).collect::<Result<_>>()?;
    let k = bodies.len();
    let diam = c.diameter();
    let mut lhs = 0.0;
    for b in &bodies {
        lhs += b.perimeter(q)?;
    }
    let rhs = c.perimeter(q)? + 2.0 * (k as f64 - 1.0) * diam;
    let inside = bodies.iter().all(|b| c.contains_curve(b, 1e-9));
    let r = VerificationReport::inequality("main_theorem", lhs, rhs, scaled(INEQUALITY_TOL, diam))
        .with_seed(s.seed)
        .with_detail("k", k);
    Ok(if inside { r } else { r.fail("a body leaves the container") })
}

/// Theorem on degree-3 partitions of (a polygon inside) a constant-width body
/// `D`: `Σ_bodies pper_D(Cᵢ) ≤ per(D) + 2(k − 1)·diam(D)`. The left side is
/// recomputed through the partition identity with holes subtracted.
pub fn check_theorem_mainp(p: &PlanarPartition, d: &ConstantWidthBody, q: &QuadratureSpec) -> Result<VerificationReport> {
    let dc = d.curve();
    let diam = d.diameter();
    if let Some(i) = p.container().vertices().iter().position(|&v| !dc.contains(v, 1e-9 * diam.max(1.0))) {
        return Err(GeomError::VerticesOutsideBody { index: i });
    }
    let partition_vertices = p.euler_vertex_count()?;
    let k = p.body_count();
    let mut bodies = 0.0;
    let mut holes = 0.0;
    for f in 0..p.faces().len() {
        let v = pper(dc, &p.face_curve(f), q)?.value;
        match p.faces()[f].label {
            FaceLabel::Body => bodies += v,
            FaceLabel::Hole => holes += v,
        }
    }
    let container = pper(dc, &p.container_curve(), q)?.value;
    let mut vertex_sum = 0.0;
    for v in p.partition_vertices() {
        vertex_sum += pdist_point_half_range(p.vertices()[v], d, q)?.value;
    }
    let recomputed = container + vertex_sum - holes;
    let tol = scaled(IDENTITY_TOL, diam);
    if (recomputed - bodies).abs() > tol {
        return Err(GeomError::ConsistencyFailure(format!(
            "body pper sum {bodies} disagrees with the identity value {recomputed}"
        )));
    }
    let per = dc.perimeter(q)?;
    let rhs = per + 2.0 * (k as f64 - 1.0) * diam;
    Ok(VerificationReport::inequality("theorem_mainp", bodies, rhs, scaled(INEQUALITY_TOL, diam))
        .with_detail("k", k)
        .with_detail("l", p.hole_count())
        .with_detail("partition_vertices", partition_vertices)
        .with_detail("identity_lhs", recomputed)
        .with_detail("pper_container", container))
}

pub fn check_theorem_mainp_scenario(s: &Scenario, q: &QuadratureSpec) -> Result<VerificationReport> {
    let Payload::PartitionWithHoles { reference, partition } = &s.payload else {
        return Err(GeomError::InvalidParameter(format!("{} is not a partition scenario", s.kind())));
    };
    let d = ConstantWidthBody::new(reference.to_curve()?, 1e-6)?;
    let p = PlanarPartition::from_spec(partition)?;
    Ok(check_theorem_mainp(&p, &d, q)?.with_seed(s.seed))
}

/// `Σ pdist(aᵢ, D) ≤ pper_D(P) + (m − 2)·diam(D)` for a convex polygon `P`
/// with vertices `a₁…a_m` in `D`. A single point reduces to `pdist(v, D) ≤ diam(D)`.
pub fn check_key_lemma(vertices: &[Vec2], d: &ConstantWidthBody, q: &QuadratureSpec) -> Result<VerificationReport> {
    let dc = d.curve();
    let diam = d.diameter();
    if vertices.is_empty() {
        return Err(GeomError::InvalidParameter("key lemma needs at least one vertex".into()));
    }
    if let Some(i) = vertices.iter().position(|&v| !dc.contains(v, 1e-9 * diam.max(1.0))) {
        return Err(GeomError::VerticesOutsideBody { index: i });
    }
    let tol = scaled(INEQUALITY_TOL, diam);
    let m = vertices.len();
    let mut lhs = 0.0;
    for &v in vertices {
        lhs += pdist_point_half_range(v, d, q)?.value;
    }
    if m == 1 {
        return Ok(VerificationReport::inequality("key_lemma", lhs, diam, tol).with_detail("m", 1));
    }
    let poly = ConvexCurve::hull(vertices);
    let pp = pper(dc, &poly, q)?.value;
    let rhs = pp + (m as f64 - 2.0) * diam;
    let mut r = VerificationReport::inequality("key_lemma", lhs, rhs, tol).with_detail("m", m);
    if m == 3 {
        let ex = triangle_excess([vertices[0], vertices[1], vertices[2]], d, q)?;
        r = r.with_detail("triangle_excess", ex.value);
        if (ex.value - (lhs - pp)).abs() > scaled(IDENTITY_TOL, diam) {
            r = r.fail("triangle excess disagrees with the direct sum");
        }
        if ex.value > diam + tol {
            r = r.fail("triangle excess exceeds the diameter");
        }
    }
    Ok(r)
}

pub fn check_key_lemma_scenario(s: &Scenario, q: &QuadratureSpec) -> Result<VerificationReport> {
    let Payload::PolygonInCw { body, vertices } = &s.payload else {
        return Err(GeomError::InvalidParameter(format!("{} is not a polygon-in-cw scenario", s.kind())));
    };
    let d = ConstantWidthBody::new(body.to_curve()?, 1e-6)?;
    Ok(check_key_lemma(vertices, &d, q)?.with_seed(s.seed))
}

/// Points at distance `t` from `x₁` and `x₂` along the interior angle
/// bisectors of the triangle `x₁x₂x₃`.
pub fn bisector_points(x1: Vec2, x2: Vec2, x3: Vec2, t: f64) -> Result<(Vec2, Vec2)> {
    let scale = x1.dist(x2).max(x2.dist(x3)).max(x3.dist(x1));
    if 0.5 * (x2 - x1).cross(x3 - x1).abs() <= DEGENERATE_AREA * scale.max(1.0).powi(2) {
        return Err(GeomError::DegenerateTriangle);
    }
    let bis = |a: Vec2, b: Vec2, c: Vec2| {
        let u = (b - a).normalized().unwrap() + (c - a).normalized().unwrap();
        u.normalized().ok_or(GeomError::DegenerateTriangle)
    };
    Ok((x1 + bis(x1, x2, x3)? * t, x2 + bis(x2, x1, x3)? * t))
}

/// With `t ≥ per/2`, the bisector points satisfy `|y₁y₂| > t`. Below the
/// hypothesis the comparison is recorded as an observation only.
pub fn check_balitskiy(x1: Vec2, x2: Vec2, x3: Vec2, t: f64) -> Result<VerificationReport> {
    let (y1, y2) = bisector_points(x1, x2, x3, t)?;
    let per = x1.dist(x2) + x2.dist(x3) + x3.dist(x1);
    let hypothesis = t >= 0.5 * per;
    let kind = if hypothesis { CheckKind::Inequality } else { CheckKind::Observation };
    let mut r = VerificationReport::new("balitskiy", kind, t, y1.dist(y2), 0.0)
        .with_detail("hypothesis", hypothesis)
        .with_detail("perimeter", per);
    if hypothesis && r.slack <= 0.0 {
        r = r.fail("bisector points are not farther apart than t");
    }
    Ok(r)
}

pub fn check_balitskiy_scenario(s: &Scenario) -> Result<Vec<VerificationReport>> {
    let Payload::TriangleFamily { triangles } = &s.payload else {
        return Err(GeomError::InvalidParameter(format!("{} is not a triangle-family scenario", s.kind())));
    };
    triangles
        .iter()
        .map(|(a, t)| Ok(check_balitskiy(a[0], a[1], a[2], *t)?.with_seed(s.seed)))
        .collect()
}

/// Point classes for the `pdist(v, D)` versus `diam(D)` trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Boundary,
    Interior,
    Exterior,
}

/// Boundary points give `pdist = diam`, interior points less, exterior more.
pub fn check_pdist_diam(v: Vec2, class: PointClass, d: &ConstantWidthBody, q: &QuadratureSpec) -> Result<VerificationReport> {
    let diam = d.diameter();
    let value = pdist_point_half_range(v, d, q)?.value;
    Ok(match class {
        PointClass::Boundary => VerificationReport::identity("pdist_diam_boundary", value, diam, scaled(IDENTITY_TOL, diam)),
        PointClass::Interior => {
            let r = VerificationReport::inequality("pdist_diam_interior", value, diam, 0.0);
            if r.slack > 0.0 { r } else { r.fail("interior point does not fall below the diameter") }
        }
        PointClass::Exterior => {
            let r = VerificationReport::inequality("pdist_diam_exterior", diam, value, 0.0);
            if r.slack > 0.0 { r } else { r.fail("exterior point does not exceed the diameter") }
        }
    })
}

/// End-to-end reduction for a partition of a polygon `D`: extend to the
/// constant-width completion `D′`, normalize, check the theorem on `D′` and
/// pull the bound back through the perimeter identity
/// `Σ per(C′) = per(D) + Σ per(C″) − per(D″) − 2 Σ l`, where `D″` is the
/// polygonal container of the extension. Since `per(C″) ≤ pper_{D′}(C″)`,
/// `Σ per(C′) ≤ per(D) − per(D″) − 2 Σ l + Σ pper_{D′}(C″)`, which the theorem
/// bounds by `per(D) + 2(k − 1)·diam(D)` up to `per(D′) − per(D″)`.
pub fn check_pipeline(p: &PlanarPartition, q: &QuadratureSpec) -> Result<VerificationReport> {
    let d = p.container_curve();
    let diam = d.diameter();
    let completion = complete_to_constant_width(&d)?;
    let ext = extend_to_container(p, completion.body.curve())?;
    let (id_lhs, id_rhs) = ext.perimeter_identity(p);
    let restriction = ext.restriction_error(p);
    let normalized = ext.extended.normalize_degree3()?;
    let mainp = check_theorem_mainp(&normalized, &completion.body, q)?;

    let k = p.body_count();
    let bodies = |x: &PlanarPartition| -> f64 {
        (0..x.faces().len())
            .filter(|&f| x.faces()[f].label == FaceLabel::Body)
            .map(|f| x.face_perimeter(f))
            .sum()
    };
    let original = bodies(p);
    let per_d = p.container_perimeter();
    let per_outer = ext.extended.container_perimeter();
    let chained = per_d - per_outer - 2.0 * ext.added_length() + mainp.lhs;
    let bound = per_d + 2.0 * (k as f64 - 1.0) * diam;
    let mut r = VerificationReport::inequality("pipeline", original, bound, scaled(PIPELINE_TOL, diam))
        .with_detail("k", k)
        .with_detail("identity_lhs", id_lhs)
        .with_detail("identity_rhs", id_rhs)
        .with_detail("restriction_error", restriction)
        .with_detail("added_length", ext.added_length())
        .with_detail("chained_bound", chained)
        .with_detail("theorem_mainp_slack", mainp.slack)
        .with_detail("completion_iterations", completion.iterations);
    let tol = scaled(IDENTITY_TOL, diam);
    if (id_lhs - id_rhs).abs() > tol {
        r = r.fail("perimeter identity does not hold");
    }
    if restriction > 1e-10 * diam.max(1.0).powi(2) {
        r = r.fail("restriction does not reproduce the original faces");
    }
    if !mainp.pass {
        r = r.fail("theorem fails on the completion");
    }
    if original > chained + tol {
        r = r.fail("chained bound is violated");
    }
    if chained > bound + r.tolerance {
        r = r.fail("chained bound exceeds the target bound");
    }
    Ok(r)
}
