//! Degree-3 normalization with coincident vertices and zero-length edges.

use std::collections::HashMap;

use super::{Face, FaceLabel, PlanarPartition};
use crate::error::{GeomError, Result};

/// A face corner at vertex `p`: the face arrives along `e_in` and leaves along
/// `e_out`, so it fills the counterclockwise sector from `e_out` to `e_in`.
#[derive(Debug, Clone, Copy)]
struct Corner {
    face: usize,
    e_in: usize,
    e_out: usize,
}

impl PlanarPartition {
    /// Splits every vertex of degree `r ≥ 4`:
    ///
    /// * if all faces around it are bodies, into `r` coincident vertices on a
    ///   new degenerate hole bounded by `r` zero-length edges;
    /// * otherwise (the vertex is on the container boundary or on a hole),
    ///   into a chain of `r − 2` coincident vertices along that boundary.
    ///
    /// Face shapes, perimeters and areas are unchanged.
    pub fn normalize_degree3(&self) -> Result<PlanarPartition> {
        let report = self.validate();
        if !report.valid {
            return Err(GeomError::InvalidPartition(report.violations.join("; ")));
        }
        let mut p = self.clone();
        let n0 = p.vertices.len();
        for v in 0..n0 {
            let deg = p.degrees()[v];
            if deg >= 4 {
                p.split_vertex(v)?;
            }
        }
        Ok(p)
    }

    fn corners_at(&self, v: usize) -> Result<Vec<Corner>> {
        let mut out = Vec::new();
        for f in 0..self.faces.len() {
            let ids = self.face_vertex_ids(f)?;
            let cyc = &self.faces[f].cycle;
            let m = cyc.len();
            for i in 0..m {
                if ids[i] == v {
                    out.push(Corner {
                        face: f,
                        e_in: cyc[(i + m - 1) % m],
                        e_out: cyc[i],
                    });
                }
            }
        }
        Ok(out)
    }

    /// Incident edges in counterclockwise order `e_1..e_r` and the face
    /// between `e_j` and `e_{j+1}` (index `j − 1`; the last entry is the face
    /// between `e_r` and `e_1`, `None` for the unbounded face).
    fn rotation(&self, v: usize) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
        let incident: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].contains(&v)).collect();
        let corners = self.corners_at(v)?;
        let next: HashMap<usize, Corner> = corners.iter().map(|c| (c.e_out, *c)).collect();
        let bad = || GeomError::InvalidPartition(format!("vertex {v} has an inconsistent rotation"));
        if next.len() != corners.len() {
            return Err(bad());
        }
        let r = incident.len();
        let start = match corners.len() {
            n if n == r => incident[0],
            n if n + 1 == r => {
                let targets: Vec<usize> = corners.iter().map(|c| c.e_in).collect();
                *incident.iter().find(|e| !targets.contains(e)).ok_or_else(bad)?
            }
            _ => return Err(bad()),
        };
        let mut order = vec![start];
        let mut faces = Vec::with_capacity(r);
        let mut e = start;
        for _ in 0..r {
            match next.get(&e) {
                Some(c) => {
                    faces.push(Some(c.face));
                    e = c.e_in;
                    if e == start {
                        break;
                    }
                    order.push(e);
                }
                None => {
                    faces.push(None);
                    break;
                }
            }
        }
        if order.len() != r || faces.len() != r {
            return Err(bad());
        }
        Ok((order, faces))
    }

    fn new_vertex_like(&mut self, v: usize) -> usize {
        self.vertices.push(self.vertices[v]);
        self.vertices.len() - 1
    }

    fn reattach(&mut self, e: usize, from: usize, to: usize) {
        for x in self.edges[e].iter_mut() {
            if *x == from {
                *x = to;
            }
        }
    }

    fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push([a, b]);
        self.edges.len() - 1
    }

    /// Inserts `chain` into the cycle of `face` between the consecutive
    /// entries `e_in` and `e_out`.
    fn insert_between(&mut self, face: usize, e_in: usize, e_out: usize, chain: &[usize]) -> Result<()> {
        let cyc = &mut self.faces[face].cycle;
        let m = cyc.len();
        let i = (0..m)
            .find(|&i| cyc[i] == e_out && cyc[(i + m - 1) % m] == e_in)
            .ok_or_else(|| GeomError::InvalidPartition(format!("face {face} does not pass {e_in} -> {e_out}")))?;
        cyc.splice(i..i, chain.iter().copied());
        Ok(())
    }

    fn split_vertex(&mut self, p: usize) -> Result<()> {
        let (mut e, mut f) = self.rotation(p)?;
        let r = e.len();
        let special = f
            .iter()
            .position(|x| x.is_none())
            .or_else(|| f.iter().position(|x| x.is_some_and(|x| self.faces[x].label == FaceLabel::Hole)));
        match special {
            None => {
                // degenerate hole: e_i moves to p'_i, g_i joins p'_i and p'_{i+1}
                let mut q = vec![p];
                for _ in 1..r {
                    q.push(self.new_vertex_like(p));
                }
                for i in 1..r {
                    self.reattach(e[i], p, q[i]);
                }
                let g: Vec<usize> = (0..r).map(|i| self.add_edge(q[i], q[(i + 1) % r])).collect();
                for i in 0..r {
                    let face = f[i].unwrap();
                    self.insert_between(face, e[(i + 1) % r], e[i], &[g[i]])?;
                }
                self.faces.push(Face {
                    cycle: g,
                    label: FaceLabel::Hole,
                });
            }
            Some(s) => {
                // rotate so the special face sits between e_r and e_1
                e.rotate_left((s + 1) % r);
                f.rotate_left((s + 1) % r);
                let mut q = vec![p];
                for _ in 1..r - 2 {
                    q.push(self.new_vertex_like(p));
                }
                // e_1, e_2 stay on q_1; e_{j+1} -> q_j; e_{r-1}, e_r -> q_{r-2}
                for j in 2..r - 2 {
                    self.reattach(e[j], p, q[j - 1]);
                }
                self.reattach(e[r - 2], p, q[r - 3]);
                self.reattach(e[r - 1], p, q[r - 3]);
                let c: Vec<usize> = (0..r - 3).map(|j| self.add_edge(q[j], q[j + 1])).collect();
                for j in 0..r - 3 {
                    // face between e_{j+2} and e_{j+3} (1-based) borders c_{j+1}
                    let face = f[j + 1].unwrap();
                    self.insert_between(face, e[j + 2], e[j + 1], &[c[j]])?;
                }
                if let Some(h) = f[r - 1] {
                    self.insert_between(h, e[0], e[r - 1], &c)?;
                }
            }
        }
        Ok(())
    }
}
