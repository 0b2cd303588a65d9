//! Multi-start coordinate search for large triangle excess.

use std::f64::consts::TAU;

use rand::Rng;
use serde::Serialize;

use crate::constant_width::ConstantWidthBody;
use crate::error::Result;
use crate::geometry::Vec2;
use crate::pseudometric::triangle_excess;
use crate::quadrature::QuadratureSpec;

use super::generate::rng_for;

/// Random starting triangles evaluated before the descent.
const INITIAL_SAMPLES: usize = 16;
const BOUNDARY_TOL: f64 = 1e-3;
const MIN_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct ExcessSearch {
    pub best: [Vec2; 3],
    pub value: f64,
    pub evaluations: usize,
    /// Vertices of the incumbent within `1e−3·diam` of the boundary.
    pub boundary_vertices: usize,
}

impl ExcessSearch {
    /// The structural claim about maximizers; reported, never asserted.
    pub fn two_on_boundary(&self) -> bool {
        self.boundary_vertices >= 2
    }
}

/// Triangle parameters: vertex `i` is `c + sᵢ·(γ(θᵢ) − c)`.
#[derive(Clone, Copy)]
struct Params([f64; 6]);

struct Searcher<'a> {
    d: &'a ConstantWidthBody,
    center: Vec2,
    q: QuadratureSpec,
    evaluations: usize,
    budget: usize,
}

impl Searcher<'_> {
    fn triangle(&self, p: &Params) -> [Vec2; 3] {
        std::array::from_fn(|i| {
            let b = self.d.curve().support_point(p.0[2 * i]);
            self.center + (b - self.center) * p.0[2 * i + 1]
        })
    }

    fn eval(&mut self, p: &Params) -> Result<f64> {
        self.evaluations += 1;
        Ok(triangle_excess(self.triangle(p), self.d, &self.q)?.value)
    }

    fn exhausted(&self) -> bool {
        self.evaluations >= self.budget
    }
}

/// Searches triangles in `D` for the largest excess
/// `Σ pdist(aᵢ, D) − pper_D(a₁a₂a₃)` within `budget` evaluations (at least one
/// evaluation is always made).
pub fn maximize_triangle_excess(d: &ConstantWidthBody, budget: usize, seed: u64) -> Result<ExcessSearch> {
    let mut rng = rng_for(seed);
    let samples = d.curve().sample_boundary(64);
    let center = samples.iter().fold(Vec2::ZERO, |s, &p| s + p) / samples.len() as f64;
    let mut s = Searcher {
        d,
        center,
        q: QuadratureSpec::adaptive(1e-10),
        evaluations: 0,
        budget: budget.max(1),
    };
    let random = |rng: &mut rand_chacha::ChaCha8Rng| {
        Params(std::array::from_fn(|j| {
            if j % 2 == 0 {
                rng.gen_range(0.0..TAU)
            } else {
                rng.gen_range(0.0..=1.0f64).sqrt()
            }
        }))
    };
    let mut best = random(&mut rng);
    let mut best_value = s.eval(&best)?;
    for _ in 1..INITIAL_SAMPLES {
        if s.exhausted() {
            break;
        }
        let p = random(&mut rng);
        let v = s.eval(&p)?;
        if v > best_value {
            best = p;
            best_value = v;
        }
    }
    let mut start = best;
    let mut start_value = best_value;
    while !s.exhausted() {
        // coordinate ascent with shrinking steps
        let mut cur = start;
        let mut cur_value = start_value;
        let mut step = [0.5f64, 0.25];
        while !s.exhausted() && step[0].max(step[1]) > MIN_STEP {
            let mut improved = false;
            for j in 0..6 {
                for sign in [1.0, -1.0] {
                    if s.exhausted() {
                        break;
                    }
                    let mut p = cur;
                    p.0[j] += sign * step[j % 2];
                    if j % 2 == 1 {
                        p.0[j] = p.0[j].clamp(0.0, 1.0);
                        if p.0[j] == cur.0[j] {
                            continue;
                        }
                    }
                    let v = s.eval(&p)?;
                    if v > cur_value {
                        cur = p;
                        cur_value = v;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step[0] *= 0.5;
                step[1] *= 0.5;
            }
        }
        if cur_value > best_value {
            best = cur;
            best_value = cur_value;
        }
        if s.exhausted() {
            break;
        }
        start = random(&mut rng);
        start_value = s.eval(&start)?;
    }
    let tri = s.triangle(&best);
    let diam = d.diameter();
    let boundary_vertices = tri
        .iter()
        .filter(|&&v| !d.curve().contains(v, 0.0) || boundary_distance(d, v) < BOUNDARY_TOL * diam)
        .count();
    Ok(ExcessSearch {
        best: tri,
        value: best_value,
        evaluations: s.evaluations,
        boundary_vertices,
    })
}

/// Distance from an interior point to the boundary, `min_φ h(φ) − ⟨v, n_φ⟩`.
fn boundary_distance(d: &ConstantWidthBody, v: Vec2) -> f64 {
    (0..4096)
        .map(|i| {
            let phi = TAU * i as f64 / 4096.0;
            d.curve().support_value(phi) - v.dot(Vec2::new(phi.cos(), phi.sin()))
        })
        .fold(f64::INFINITY, f64::min)
}
