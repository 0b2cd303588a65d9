use super::*;
use crate::constant_width::complete_to_constant_width;
use crate::geometry::Vec2;

fn v(x: f64, y: f64) -> Vec2 {
    Vec2::new(x, y)
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Vec2> {
    vec![v(x0, y0), v(x1, y0), v(x1, y1), v(x0, y1)]
}

fn square(s: f64) -> ConvexCurve {
    ConvexCurve::polygon(&rect(0.0, 0.0, s, s)).unwrap()
}

fn halves() -> PlanarPartition {
    PlanarPartition::from_face_polygons(
        &square(1.0),
        &[
            (rect(0.0, 0.0, 0.5, 1.0), FaceLabel::Body),
            (rect(0.5, 0.0, 1.0, 1.0), FaceLabel::Body),
        ],
    )
    .unwrap()
}

fn grid2() -> PlanarPartition {
    let mut faces = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let (x, y) = (i as f64, j as f64);
            faces.push((rect(x, y, x + 1.0, y + 1.0), FaceLabel::Body));
        }
    }
    PlanarPartition::from_face_polygons(&square(2.0), &faces).unwrap()
}

fn fan() -> PlanarPartition {
    PlanarPartition::from_face_polygons(
        &square(1.0),
        &[
            (vec![v(0.0, 0.0), v(0.5, 0.0), v(0.0, 1.0)], FaceLabel::Body),
            (vec![v(0.5, 0.0), v(1.0, 1.0), v(0.0, 1.0)], FaceLabel::Body),
            (vec![v(0.5, 0.0), v(1.0, 0.0), v(1.0, 1.0)], FaceLabel::Body),
        ],
    )
    .unwrap()
}

fn trivial() -> PlanarPartition {
    PlanarPartition::from_face_polygons(&square(1.0), &[(rect(0.0, 0.0, 1.0, 1.0), FaceLabel::Body)]).unwrap()
}

fn exact() -> QuadratureSpec {
    QuadratureSpec::adaptive(1e-11)
}

#[test]
fn square_halves_are_valid() {
    let p = halves();
    let r = p.validate();
    assert!(r.valid, "{:?}", r.violations);
    assert_eq!((r.k, r.l), (2, 0));
    assert_eq!(p.face_perimeters(), vec![3.0, 3.0]);
    assert_eq!(p.total_body_perimeter(), 6.0);
    assert_eq!(p.euler_vertex_count().unwrap(), 2);
    assert_eq!(p.normalize_degree3().unwrap(), p);
}

#[test]
fn trivial_partition() {
    let p = trivial();
    assert_eq!(p.face_perimeters(), vec![4.0]);
    assert_eq!(p.euler_vertex_count().unwrap(), 0);
    let d = ConvexCurve::disk(v(0.3, 0.2), 3.0).unwrap();
    let r = p.partition_identity_check(&d, &exact(), 1e-9).unwrap();
    assert!(r.pass && r.slack < 1e-12, "{r:?}");
}

#[test]
fn overlapping_faces_are_reported() {
    let p = PlanarPartition::from_segments(
        &square(1.0),
        &[
            (v(0.0, 0.0), v(1.0, 0.0)),
            (v(1.0, 0.0), v(1.0, 1.0)),
            (v(1.0, 1.0), v(0.0, 1.0)),
            (v(0.0, 1.0), v(0.0, 0.0)),
        ],
        |_| Some(FaceLabel::Body),
    )
    .unwrap();
    // duplicate the single face
    let mut faces = p.faces().to_vec();
    faces.push(faces[0].clone());
    let q = PlanarPartition::new(&square(1.0), p.vertices().to_vec(), p.edges().to_vec(), faces).unwrap();
    let r = q.validate();
    assert!(!r.valid);
    assert!(r.violations.iter().any(|s| s.contains("interiors not disjoint")), "{:?}", r.violations);
}

#[test]
fn hole_touching_boundary_is_reported() {
    let faces = vec![
        (rect(0.0, 0.0, 0.5, 1.0), FaceLabel::Hole),
        (rect(0.5, 0.0, 1.0, 1.0), FaceLabel::Body),
    ];
    let p = PlanarPartition::from_face_polygons(&square(1.0), &faces).unwrap();
    let r = p.validate();
    assert!(r.violations.iter().any(|s| s.contains("touches the container boundary")), "{:?}", r.violations);
}

#[test]
fn grid_normalizes_to_degenerate_hole() {
    let p = grid2();
    assert!(p.validate().valid);
    assert!(matches!(p.euler_vertex_count(), Err(GeomError::EulerMismatch { .. })));
    let n = p.normalize_degree3().unwrap();
    assert_eq!((n.body_count(), n.hole_count()), (4, 1));
    assert_eq!(n.euler_vertex_count().unwrap(), 8);
    assert!(n.degrees().iter().all(|&d| d == 2 || d == 3));
    let hole = n.faces().iter().position(|f| f.label == FaceLabel::Hole).unwrap();
    assert_eq!(n.faces()[hole].cycle.len(), 4);
    assert_eq!(n.face_perimeter(hole), 0.0);
    for f in 0..4 {
        assert_eq!(n.face_perimeter(f), p.face_perimeter(f));
        assert_eq!(n.face_area(f), p.face_area(f));
    }
    assert!(n.validate().valid, "{:?}", n.validate().violations);
}

#[test]
fn boundary_vertex_of_degree_four_becomes_chain() {
    let p = fan();
    assert!(p.validate().valid, "{:?}", p.validate().violations);
    let n = p.normalize_degree3().unwrap();
    assert_eq!(n.hole_count(), 0);
    assert_eq!(n.euler_vertex_count().unwrap(), 4);
    let at = |q: Vec2| n.vertices().iter().filter(|&&x| x == q).count();
    assert_eq!(at(v(0.5, 0.0)), 2);
    assert_eq!(n.face_perimeters(), p.face_perimeters());
}

#[test]
fn identity_on_square_halves() {
    let d = ConvexCurve::disk(v(0.5, 0.5), 10.0).unwrap();
    let r = halves().partition_identity_check(&d, &exact(), 1e-7).unwrap();
    assert!((r.lhs - 6.0).abs() < 1e-7 && (r.rhs - 6.0).abs() < 1e-7, "{r:?}");
    assert!(r.pass);
}

#[test]
fn identity_on_normalized_grid() {
    let n = grid2().normalize_degree3().unwrap();
    let d = ConvexCurve::disk(v(1.3, 0.8), 3.0).unwrap();
    let r = n.partition_identity_check(&d, &exact(), 1e-7).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn extension_of_chord_into_large_disk() {
    let p = halves();
    let d = ConvexCurve::disk(v(0.5, 0.5), 10.0).unwrap();
    let ext = extend_to_container(&p, &d).unwrap();
    assert_eq!(ext.added_segments.len(), 2);
    // the chord x = 0.5 meets the disk at y = 0.5 ± 10; the sampled
    // container has a vertex exactly there
    for s in &ext.added_segments {
        assert!((s.start.x - 0.5).abs() < 1e-12 && (s.end.x - 0.5).abs() < 1e-9);
        assert!((s.length - 9.5).abs() < 1e-9, "{}", s.length);
    }
    assert!(ext.extended.validate().valid, "{:?}", ext.extended.validate().violations);
    assert!(ext.restriction_error(&p) < 1e-10);
    let (l, r) = ext.perimeter_identity(&p);
    assert!((l - r).abs() < 1e-9, "{l} {r}");
}

#[test]
fn trivial_extension_adds_nothing() {
    let d = ConvexCurve::polygon(&rect(-1.0, -1.0, 2.0, 2.0)).unwrap();
    let ext = extend_to_container(&trivial(), &d).unwrap();
    assert!(ext.added_segments.is_empty());
    assert_eq!(ext.extended.faces().len(), 1);
    assert!((ext.extended.face_area(0) - 9.0).abs() < 1e-12);
}

#[test]
fn triangle_extends_to_its_completion() {
    let h = 3f64.sqrt() / 2.0;
    let tri = ConvexCurve::polygon(&[v(0.0, 0.0), v(1.0, 0.0), v(0.5, h)]).unwrap();
    let (a, b, c, e) = (v(0.4, 0.0), v(0.75, h / 2.0), v(0.45, 0.3), v(0.3, 0.6 * h));
    let faces = vec![
        (vec![v(0.0, 0.0), a, c, e], FaceLabel::Body),
        (vec![a, v(1.0, 0.0), b, c], FaceLabel::Body),
        (vec![b, v(0.5, h), e, c], FaceLabel::Body),
    ];
    let p = PlanarPartition::from_face_polygons(&tri, &faces).unwrap();
    let dp = complete_to_constant_width(&tri).unwrap().body.into_curve();
    let ext = extend_to_container(&p, &dp).unwrap();
    assert_eq!(ext.added_segments.len(), 3);
    assert!(ext.extended.validate().valid);
    let (l, r) = ext.perimeter_identity(&p);
    assert!((l - r).abs() < 1e-6, "{l} {r}");
    assert!(ext.restriction_error(&p) < 1e-10);
}

#[test]
fn extension_keeps_holes() {
    let faces = vec![
        (rect(0.0, 0.0, 3.0, 1.0), FaceLabel::Body),
        (rect(0.0, 1.0, 1.0, 2.0), FaceLabel::Body),
        (rect(1.0, 1.0, 2.0, 2.0), FaceLabel::Hole),
        (rect(2.0, 1.0, 3.0, 2.0), FaceLabel::Body),
        (rect(0.0, 2.0, 3.0, 3.0), FaceLabel::Body),
    ];
    let p = PlanarPartition::from_face_polygons(&square(3.0), &faces).unwrap();
    assert!(p.validate().valid, "{:?}", p.validate().violations);
    let d = ConvexCurve::disk(v(1.5, 1.5), 4.0).unwrap();
    let ext = extend_to_container(&p, &d).unwrap();
    assert_eq!(ext.extended.hole_count(), 1);
    assert!(ext.restriction_error(&p) < 1e-10);
    let (l, r) = ext.perimeter_identity(&p);
    assert!((l - r).abs() < 1e-9);
}

#[test]
fn spec_round_trip() {
    let n = grid2().normalize_degree3().unwrap();
    let json = serde_json::to_string(&n.to_spec()).unwrap();
    let back = PlanarPartition::from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, n);
}
