//! Convex partitions of a polygonal container into bodies and holes.
//!
//! Vertices are identified by id, never by coordinates: normalization creates
//! coincident vertices joined by zero-length edges. Face cycles list edge ids
//! in counterclockwise traversal order.

mod build;
mod extend;
mod normalize;
mod validate;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::{polyline_perimeter, signed_area2, Vec2};
use crate::polygon::Polygon;
use crate::pseudometric::{pdist, pper};
use crate::quadrature::QuadratureSpec;
use crate::report::VerificationReport;

pub use build::SNAP_TOL;
pub use extend::{extend_to_container, ExtensionResult, RaySegment};
pub use validate::overlap_depth;
pub use validate::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceLabel {
    Body,
    Hole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub cycle: Vec<usize>,
    pub label: FaceLabel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPartition {
    container: Polygon,
    vertices: Vec<Vec2>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Face>,
}

impl PlanarPartition {
    /// Assembles a partition from raw parts. Only structural consistency is
    /// checked here (ids in range, cycles chained); geometry is checked by
    /// [`PlanarPartition::validate`].
    pub fn new(container: &ConvexCurve, vertices: Vec<Vec2>, edges: Vec<[usize; 2]>, faces: Vec<Face>) -> Result<Self> {
        let container = match container {
            ConvexCurve::Polygon(p) if !p.is_segment() => p.clone(),
            _ => {
                return Err(GeomError::InvalidPartition(
                    "partition containers must be polygons with nonempty interior".into(),
                ))
            }
        };
        for (i, e) in edges.iter().enumerate() {
            if e[0] >= vertices.len() || e[1] >= vertices.len() || e[0] == e[1] {
                return Err(GeomError::InvalidPartition(format!("edge {i} has invalid endpoints")));
            }
        }
        let p = PlanarPartition {
            container,
            vertices,
            edges,
            faces,
        };
        for (i, f) in p.faces.iter().enumerate() {
            if f.cycle.len() < 2 || f.cycle.iter().any(|&e| e >= p.edges.len()) {
                return Err(GeomError::InvalidPartition(format!("face {i} has an invalid cycle")));
            }
            p.face_vertex_ids(i)?;
        }
        Ok(p)
    }

    pub fn container(&self) -> &Polygon {
        &self.container
    }

    pub fn container_curve(&self) -> ConvexCurve {
        ConvexCurve::Polygon(self.container.clone())
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn body_count(&self) -> usize {
        self.faces.iter().filter(|f| f.label == FaceLabel::Body).count()
    }

    pub fn hole_count(&self) -> usize {
        self.faces.iter().filter(|f| f.label == FaceLabel::Hole).count()
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edges[e];
        self.vertices[a].dist(self.vertices[b])
    }

    /// Vertex ids of face `f` in cycle order; vertex `i` starts edge `cycle[i]`.
    pub fn face_vertex_ids(&self, f: usize) -> Result<Vec<usize>> {
        let cyc = &self.faces[f].cycle;
        let m = cyc.len();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let prev = self.edges[cyc[(i + m - 1) % m]];
            let cur = self.edges[cyc[i]];
            let shared: Vec<usize> = cur.iter().copied().filter(|v| prev.contains(v)).collect();
            if shared.len() != 1 {
                return Err(GeomError::InvalidPartition(format!(
                    "face {f}: edges {} and {} are not chained",
                    cyc[(i + m - 1) % m],
                    cyc[i]
                )));
            }
            out.push(shared[0]);
        }
        Ok(out)
    }

    /// Vertex positions of face `f` in cycle order (coincident points kept).
    pub fn face_polygon(&self, f: usize) -> Vec<Vec2> {
        self.face_vertex_ids(f)
            .expect("cycles are checked on construction")
            .into_iter()
            .map(|v| self.vertices[v])
            .collect()
    }

    /// Face as a convex curve (a point for degenerate holes).
    pub fn face_curve(&self, f: usize) -> ConvexCurve {
        ConvexCurve::hull(&self.face_polygon(f))
    }

    pub fn face_area(&self, f: usize) -> f64 {
        0.5 * signed_area2(&self.face_polygon(f))
    }

    /// Exact edge-length sum over the face cycle.
    pub fn face_perimeter(&self, f: usize) -> f64 {
        self.faces[f].cycle.iter().map(|&e| self.edge_length(e)).sum()
    }

    pub fn face_perimeters(&self) -> Vec<f64> {
        (0..self.faces.len()).map(|f| self.face_perimeter(f)).collect()
    }

    /// Sum of perimeters over body faces only.
    pub fn total_body_perimeter(&self) -> f64 {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].label == FaceLabel::Body)
            .map(|f| self.face_perimeter(f))
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e[0]] += 1;
            deg[e[1]] += 1;
        }
        deg
    }

    /// Partition vertices: graph vertices of degree at least 3. Degree-2
    /// vertices are corners of the boundary polylines.
    pub fn partition_vertices(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d >= 3)
            .map(|(i, _)| i)
            .collect()
    }

    /// Counts partition vertices of a degree-3 normalized partition and checks
    /// the count against `2(k + l − 1)`.
    pub fn euler_vertex_count(&self) -> Result<usize> {
        let deg = self.degrees();
        let count = deg.iter().filter(|&&d| d >= 3).count();
        let expected = 2 * (self.body_count() + self.hole_count()) - 2;
        if deg.iter().any(|&d| d > 3) || count != expected {
            return Err(GeomError::EulerMismatch {
                vertices: count,
                expected,
            });
        }
        Ok(count)
    }

    /// The partition identity
    /// `Σ_faces pper_D(C_i) = pper_D(container) + Σ_j pdist(v_j, D)`
    /// over all faces (holes included) and all degree-3 vertices.
    pub fn partition_identity_check(
        &self,
        d_ref: &ConvexCurve,
        q: &QuadratureSpec,
        tol: f64,
    ) -> Result<VerificationReport> {
        let deg = self.degrees();
        if deg.iter().any(|&d| d > 3) {
            return Err(GeomError::InvalidPartition("partition is not degree-3 normalized".into()));
        }
        let mut lhs = 0.0;
        for f in 0..self.faces.len() {
            lhs += pper(d_ref, &self.face_curve(f), q)?.value;
        }
        let mut rhs = pper(d_ref, &self.container_curve(), q)?.value;
        let pv = self.partition_vertices();
        for &v in &pv {
            rhs += pdist(&ConvexCurve::point(self.vertices[v]), d_ref, q)?.value;
        }
        Ok(VerificationReport::identity("partition_identity", lhs, rhs, tol)
            .with_detail("faces", self.faces.len())
            .with_detail("vertices", pv.len()))
    }

    pub fn to_spec(&self) -> PartitionSpec {
        PartitionSpec {
            container: crate::io::CurveSpec::from_curve(&self.container_curve()),
            vertices: self.vertices.iter().enumerate().map(|(i, v)| (i, v.x, v.y)).collect(),
            edges: self.edges.iter().enumerate().map(|(i, e)| (i, e[0], e[1])).collect(),
            faces: self
                .faces
                .iter()
                .enumerate()
                .map(|(i, f)| FaceSpec {
                    id: i,
                    cycle: f.cycle.clone(),
                    label: f.label,
                })
                .collect(),
        }
    }

    pub fn from_spec(spec: &PartitionSpec) -> Result<Self> {
        let container = spec.container.to_curve()?;
        let vmap: HashMap<usize, usize> = spec.vertices.iter().enumerate().map(|(i, v)| (v.0, i)).collect();
        let emap: HashMap<usize, usize> = spec.edges.iter().enumerate().map(|(i, e)| (e.0, i)).collect();
        if vmap.len() != spec.vertices.len() || emap.len() != spec.edges.len() {
            return Err(GeomError::InvalidPartition("duplicate vertex or edge id".into()));
        }
        let lookup = |m: &HashMap<usize, usize>, id: usize, what: &str| {
            m.get(&id)
                .copied()
                .ok_or_else(|| GeomError::InvalidPartition(format!("unknown {what} id {id}")))
        };
        let vertices = spec.vertices.iter().map(|v| Vec2::new(v.1, v.2)).collect();
        let edges = spec
            .edges
            .iter()
            .map(|e| Ok([lookup(&vmap, e.1, "vertex")?, lookup(&vmap, e.2, "vertex")?]))
            .collect::<Result<Vec<_>>>()?;
        let faces = spec
            .faces
            .iter()
            .map(|f| {
                Ok(Face {
                    cycle: f.cycle.iter().map(|&e| lookup(&emap, e, "edge")).collect::<Result<_>>()?,
                    label: f.label,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PlanarPartition::new(&container, vertices, edges, faces)
    }

    /// Perimeter of the container polygon.
    pub fn container_perimeter(&self) -> f64 {
        polyline_perimeter(self.container.vertices())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub id: usize,
    pub cycle: Vec<usize>,
    pub label: FaceLabel,
}

/// JSON form of a partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub container: crate::io::CurveSpec,
    pub vertices: Vec<(usize, f64, f64)>,
    pub edges: Vec<(usize, usize, usize)>,
    pub faces: Vec<FaceSpec>,
}

#[cfg(test)]
mod tests;
