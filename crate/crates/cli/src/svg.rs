//! Deterministic SVG scenes.

use normline::constant_width::complete_to_constant_width;
use normline::partition::{extend_to_container, PartitionSpec, PlanarPartition};
use normline::{ConvexCurve, CurveSpec, Vec2};
use serde::Deserialize;

use crate::fmt::coord;

/// Boundary samples for curved outlines.
const OUTLINE_SAMPLES: usize = 720;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Style {
    #[serde(default = "black")]
    pub stroke: String,
    #[serde(default = "none")]
    pub fill: String,
    pub stroke_width: Option<f64>,
}

fn black() -> String {
    "#000000".into()
}

fn none() -> String {
    "none".into()
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke: black(),
            fill: none(),
            stroke_width: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SceneItem {
    Curve {
        curve: CurveSpec,
        #[serde(default)]
        style: Style,
    },
    Partition {
        partition: PartitionSpec,
        #[serde(default)]
        style: Style,
    },
    Segments {
        segments: Vec<(Vec2, Vec2)>,
        #[serde(default)]
        style: Style,
    },
    /// A partition of a polygon inside its constant-width completion, with
    /// the segments that extend it.
    Extension {
        partition: PartitionSpec,
        #[serde(default)]
        style: Style,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default)]
    pub items: Vec<SceneItem>,
}

enum Shape {
    Outline(Vec<Vec2>),
    Dot(Vec2),
    Line(Vec2, Vec2),
}

struct Group {
    class: &'static str,
    style: Style,
    shapes: Vec<Shape>,
}

fn outline(c: &ConvexCurve) -> Shape {
    match c.to_polygon(OUTLINE_SAMPLES) {
        ConvexCurve::Polygon(p) => Shape::Outline(p.vertices().to_vec()),
        ConvexCurve::Point(p) => Shape::Dot(p),
        _ => unreachable!("polygonal approximations are polygons or points"),
    }
}

fn faces(p: &PlanarPartition) -> Vec<Shape> {
    (0..p.faces().len()).map(|f| Shape::Outline(p.face_polygon(f))).collect()
}

fn groups(scene: &Scene) -> normline::Result<Vec<Group>> {
    let mut out = Vec::new();
    for item in &scene.items {
        match item {
            SceneItem::Curve { curve, style } => out.push(Group {
                class: "curve",
                style: style.clone(),
                shapes: vec![outline(&curve.to_curve()?)],
            }),
            SceneItem::Partition { partition, style } => out.push(Group {
                class: "faces",
                style: style.clone(),
                shapes: faces(&PlanarPartition::from_spec(partition)?),
            }),
            SceneItem::Segments { segments, style } => out.push(Group {
                class: "segments",
                style: style.clone(),
                shapes: segments.iter().map(|&(a, b)| Shape::Line(a, b)).collect(),
            }),
            SceneItem::Extension { partition, style } => {
                let p = PlanarPartition::from_spec(partition)?;
                let completion = complete_to_constant_width(&p.container_curve())?;
                let ext = extend_to_container(&p, completion.body.curve())?;
                out.push(Group {
                    class: "outer",
                    style: style.clone(),
                    shapes: vec![outline(completion.body.curve())],
                });
                out.push(Group {
                    class: "faces",
                    style: style.clone(),
                    shapes: faces(&p),
                });
                out.push(Group {
                    class: "segments",
                    style: Style {
                        stroke: "#c0392b".into(),
                        ..style.clone()
                    },
                    shapes: ext.added_segments.iter().map(|s| Shape::Line(s.start, s.end)).collect(),
                });
            }
        }
    }
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG document for `scene`, fitted to a square canvas with y pointing up.
pub fn render(scene: &Scene, canvas: f64, stroke_width: f64) -> normline::Result<String> {
    let groups = groups(scene)?;
    let pts: Vec<Vec2> = groups
        .iter()
        .flat_map(|g| g.shapes.iter())
        .flat_map(|s| match s {
            Shape::Outline(v) => v.clone(),
            Shape::Dot(p) => vec![*p],
            Shape::Line(a, b) => vec![*a, *b],
        })
        .collect();
    let margin = 0.05 * canvas;
    let (mut x0, mut x1, mut y0, mut y1) = (0.0, 1.0, 0.0, 1.0);
    if !pts.is_empty() {
        x0 = pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
        x1 = pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        y0 = pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        y1 = pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let s = (canvas - 2.0 * margin) / span;
    let (ox, oy) = (
        margin + 0.5 * (span - (x1 - x0)) * s,
        margin + 0.5 * (span - (y1 - y0)) * s,
    );
    let map = |p: Vec2| (coord(ox + (p.x - x0) * s), coord(canvas - (oy + (p.y - y0) * s)));

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n",
        c = coord(canvas)
    );
    for g in &groups {
        let w = g.style.stroke_width.unwrap_or(stroke_width);
        svg.push_str(&format!(
            "  <g class=\"{}\" stroke=\"{}\" fill=\"{}\" stroke-width=\"{}\">\n",
            g.class,
            escape(&g.style.stroke),
            escape(&g.style.fill),
            coord(w)
        ));
        for shape in &g.shapes {
            match shape {
                Shape::Outline(v) => {
                    let mut d = String::new();
                    for (i, &p) in v.iter().enumerate() {
                        let (x, y) = map(p);
                        d.push_str(&format!("{}{x} {y} ", if i == 0 { "M" } else { "L" }));
                    }
                    d.push('Z');
                    svg.push_str(&format!("    <path d=\"{d}\"/>\n"));
                }
                Shape::Dot(p) => {
                    let (x, y) = map(*p);
                    svg.push_str(&format!("    <circle cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>\n", coord(2.0 * w)));
                }
                Shape::Line(a, b) => {
                    let ((ax, ay), (bx, by)) = (map(*a), map(*b));
                    svg.push_str(&format!("    <line x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\"/>\n"));
                }
            }
        }
        svg.push_str("  </g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
