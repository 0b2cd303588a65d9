//! The normal-line pseudometric, the generalized perimeter and the
//! triangle-excess functional.
//!
//! All integrands have the form `|d(θ) · v_θ|` where `d(θ)` is a difference of
//! support points, so for polygonal input `d` is constant between kinks and
//! the integral has a closed form.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::constant_width::ConstantWidthBody;
use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::{tangent, wrap, DirectedLine, Vec2};
use crate::quadrature::{self, abs_tangential, panel_edges, signed_tangential, Estimate, QuadMethod, QuadratureSpec};

/// Integrate `Σ_k |d_k(θ) · v_θ|` over `[a, b]`. `ds` returns the `d_k` at
/// `θ`; in exact mode it is called at panel midpoints only.
fn integrate_abs<const K: usize, F>(
    ds: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    piecewise_constant: bool,
    q: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> [Vec2; K],
{
    q.validate()?;
    let f = |t: f64| {
        let v = tangent(t);
        ds(t).iter().map(|d| d.dot(v).abs()).sum::<f64>()
    };
    match q.method {
        QuadMethod::ExactPiecewise => {
            if !piecewise_constant {
                return Err(GeomError::IncompatibleMethod);
            }
            let edges = panel_edges(a, b, breaks);
            let value = edges
                .windows(2)
                .map(|w| {
                    let mid = 0.5 * (w[0] + w[1]);
                    ds(mid).iter().map(|&d| abs_tangential(d, w[0], w[1])).sum::<f64>()
                })
                .sum();
            Ok(Estimate { value, error: 0.0 })
        }
        QuadMethod::Adaptive => {
            let mut all = breaks.to_vec();
            all.extend(sign_changes(&ds, &panel_edges(a, b, breaks)));
            quadrature::adaptive(f, a, b, &all, q.abs_tol, q.max_subdivisions)
        }
        QuadMethod::FixedGrid => Ok(quadrature::fixed_grid(f, a, b, q.grid_size)),
    }
}

/// Cells scanned per integral when looking for zeros of `d · v_θ`.
const ROOT_SCAN: usize = 2048;

/// Zeros of each `d_k(θ) · v_θ` inside the panels. A zero close to a panel
/// end can hide between the outermost quadrature node and the end, so the
/// kinks of `|d · v_θ|` are located explicitly and used as panel breaks.
fn sign_changes<const K: usize, F>(ds: &F, edges: &[f64]) -> Vec<f64>
where
    F: Fn(f64) -> [Vec2; K],
{
    let g = |t: f64| ds(t).map(|d| d.dot(tangent(t)));
    let panels = edges.len().saturating_sub(1).max(1);
    let m = (ROOT_SCAN / panels).max(8);
    let mut roots = Vec::new();
    for w in edges.windows(2) {
        let (p, q) = (w[0], w[1]);
        // stay clear of the facet tolerance of polygon support points
        let nudge = (1e-9 * (q - p)).max(1e-11).min(0.25 * (q - p));
        let ts: Vec<f64> = (0..=m)
            .map(|i| (p + (q - p) * i as f64 / m as f64).clamp(p + nudge, q - nudge))
            .collect();
        let vals: Vec<[f64; K]> = ts.iter().map(|&t| g(t)).collect();
        for i in 0..m {
            for k in 0..K {
                let (y0, y1) = (vals[i][k], vals[i + 1][k]);
                if y0 == 0.0 || y0.signum() == y1.signum() {
                    continue;
                }
                let (mut lo, mut hi, mut ylo) = (ts[i], ts[i + 1], y0);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let ym = g(mid)[k];
                    if ym.signum() == ylo.signum() {
                        lo = mid;
                        ylo = ym;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
        }
    }
    roots
}

fn kinks2(a: &ConvexCurve, b: &ConvexCurve) -> Vec<f64> {
    let mut k = a.kinks();
    k.extend(b.kinks());
    k
}

/// `pdist(C₁, C₂) = ½ ∫₀^{2π} dist(ℓ_θ(C₁), ℓ_θ(C₂)) dθ`.
pub fn pdist(c1: &ConvexCurve, c2: &ConvexCurve, q: &QuadratureSpec) -> Result<Estimate> {
    let pc = c1.is_piecewise_constant() && c2.is_piecewise_constant();
    let e = integrate_abs(
        |t| [c1.support_point(t) - c2.support_point(t)],
        0.0,
        TAU,
        &kinks2(c1, c2),
        pc,
        q,
    )?;
    Ok(e.scale(0.5))
}

/// `pdist(v, D)` for a point and a constant-width `D` as `∫₀^π`: the normal
/// lines at `θ` and `θ + π` coincide.
pub fn pdist_point_half_range(v: Vec2, d: &ConstantWidthBody, q: &QuadratureSpec) -> Result<Estimate> {
    let c = d.curve();
    integrate_abs(
        |t| [v - c.support_point(t)],
        0.0,
        PI,
        &c.kinks(),
        c.is_piecewise_constant(),
        q,
    )
}

/// Signed variant of [`pdist`]: the sign records on which side of `ℓ_θ(C₂)`
/// the normal line of `C₁` lies, measured along `u_θ` turned a quarter
/// counterclockwise. The full-turn integral vanishes.
pub fn signed_line_integral(c1: &ConvexCurve, c2: &ConvexCurve, q: &QuadratureSpec) -> Result<Estimate> {
    q.validate()?;
    let f = |t: f64| -(c1.support_point(t) - c2.support_point(t)).dot(tangent(t));
    let breaks = kinks2(c1, c2);
    let e = match q.method {
        QuadMethod::ExactPiecewise => {
            if !(c1.is_piecewise_constant() && c2.is_piecewise_constant()) {
                return Err(GeomError::IncompatibleMethod);
            }
            let edges = panel_edges(0.0, TAU, &breaks);
            let value = edges
                .windows(2)
                .map(|w| {
                    let mid = 0.5 * (w[0] + w[1]);
                    let d = c1.support_point(mid) - c2.support_point(mid);
                    -signed_tangential(d, w[0], w[1])
                })
                .sum();
            Estimate { value, error: 0.0 }
        }
        QuadMethod::Adaptive => quadrature::adaptive(f, 0.0, TAU, &breaks, q.abs_tol, q.max_subdivisions)?,
        QuadMethod::FixedGrid => quadrature::fixed_grid(f, 0.0, TAU, q.grid_size),
    };
    Ok(e.scale(0.5))
}

/// `∫_{θ₁}^{θ₂} γ(θ) · v_θ dθ`, which telescopes to `γ(θ₁)·u_{θ₁} − γ(θ₂)·u_{θ₂}`.
pub fn tangential_integral(c: &ConvexCurve, theta1: f64, theta2: f64, q: &QuadratureSpec) -> Result<Estimate> {
    let f = |t: f64| c.support_point(t).dot(tangent(t));
    match q.method {
        QuadMethod::FixedGrid => Ok(quadrature::fixed_grid(f, theta1, theta2, q.grid_size)),
        _ => quadrature::adaptive(f, theta1, theta2, &c.kinks(), q.abs_tol, q.max_subdivisions),
    }
}

fn pper_range(d: &ConvexCurve, c: &ConvexCurve, end: f64, q: &QuadratureSpec) -> Result<Estimate> {
    let mut breaks = d.kinks();
    for k in c.kinks() {
        breaks.push(k + FRAC_PI_2);
        breaks.push(k - FRAC_PI_2);
    }
    integrate_abs(
        |t| {
            let g = d.support_point(t);
            [c.support_point(t + FRAC_PI_2) - g, c.support_point(t - FRAC_PI_2) - g]
        },
        0.0,
        end,
        &breaks,
        d.is_piecewise_constant() && c.is_piecewise_constant(),
        q,
    )
}

/// `pper_D(C) = ½ ∫₀^{2π} (dist(ℓ^r_θ(C), ℓ_θ(D)) + dist(ℓ^l_θ(C), ℓ_θ(D))) dθ`.
pub fn pper(d: &ConvexCurve, c: &ConvexCurve, q: &QuadratureSpec) -> Result<Estimate> {
    Ok(pper_range(d, c, TAU, q)?.scale(0.5))
}

/// [`pper`] against a constant-width `D`, integrated over `[0, π)` only.
pub fn pper_half_range(d: &ConstantWidthBody, c: &ConvexCurve, q: &QuadratureSpec) -> Result<Estimate> {
    pper_range(d.curve(), c, PI, q)
}

/// Index of the vertex carrying the interjacent line: the median of the
/// projections on `v_θ`, smallest index on ties.
pub fn interjacent_index(a: &[Vec2; 3], theta: f64) -> usize {
    let v = tangent(theta);
    let p = a.map(|x| x.dot(v));
    let mut sorted = p;
    sorted.sort_by(f64::total_cmp);
    let med = sorted[1];
    (0..3).find(|&i| p[i] == med).unwrap()
}

/// The middle one of the three lines in direction `u_θ` through the vertices.
pub fn interjacent_line(a: &[Vec2; 3], theta: f64) -> DirectedLine {
    DirectedLine::through(a[interjacent_index(a, theta)], theta)
}

/// Angles in `[0, π)` where the interjacent line may switch vertex.
pub fn interjacent_breakpoints(a: &[Vec2; 3]) -> Vec<f64> {
    let mut out = Vec::with_capacity(3);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = a[j] - a[i];
        if d.norm() > 0.0 {
            out.push(d.angle().rem_euclid(PI));
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct TriangleExcess {
    pub vertices: [Vec2; 3],
    /// `Σ pdist(a_i, D) − pper_D(a₁a₂a₃)`.
    pub value: f64,
    /// `∫₀^π dist(ℓ^mid_θ, ℓ_θ(D)) dθ`.
    pub interjacent_integral: f64,
    pub breakpoints: Vec<f64>,
    pub degenerate: bool,
}

/// Evaluates the triangle excess both as a difference of functionals and as
/// the interjacent-line integral, and checks that the two agree.
pub fn triangle_excess(a: [Vec2; 3], d: &ConstantWidthBody, q: &QuadratureSpec) -> Result<TriangleExcess> {
    let dc = d.curve();
    let area = 0.5 * (a[1] - a[0]).cross(a[2] - a[0]).abs();
    let degenerate = area < DEGENERATE_AREA;
    let tri = ConvexCurve::hull(&a);
    let mut lhs = -pper(dc, &tri, q)?.value;
    for &v in &a {
        lhs += pdist(&ConvexCurve::point(v), dc, q)?.value;
    }
    let breakpoints = interjacent_breakpoints(&a);
    let mut breaks = breakpoints.clone();
    breaks.extend(dc.kinks());
    let rhs = integrate_abs(
        |t| [a[interjacent_index(&a, t)] - dc.support_point(t)],
        0.0,
        PI,
        &breaks,
        dc.is_piecewise_constant(),
        q,
    )?
    .value;
    let tol = 10.0 * q.abs_tol.max(if q.method == QuadMethod::FixedGrid { 1e-8 } else { 0.0 });
    if (lhs - rhs).abs() > tol * d.width().max(1.0) {
        return Err(GeomError::ConsistencyFailure(format!(
            "triangle excess {lhs} disagrees with interjacent integral {rhs}"
        )));
    }
    Ok(TriangleExcess {
        vertices: a,
        value: lhs,
        interjacent_integral: rhs,
        breakpoints: breakpoints.into_iter().map(wrap).collect(),
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constant_width::reuleaux_polygon;

    fn pt(x: f64, y: f64) -> ConvexCurve {
        ConvexCurve::point(Vec2::new(x, y))
    }

    fn square() -> ConvexCurve {
        ConvexCurve::polygon(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn pdist_examples() {
        let q = QuadratureSpec::default();
        let v = pdist(&pt(0.0, 0.0), &pt(3.0, 4.0), &q).unwrap().value;
        assert!((v - 10.0).abs() < 1e-9);
        let e = pdist(&pt(0.0, 0.0), &pt(3.0, 4.0), &QuadratureSpec::exact()).unwrap().value;
        assert!((e - 10.0).abs() < 1e-12);
        let d1 = ConvexCurve::disk(Vec2::ZERO, 1.0).unwrap();
        let d2 = ConvexCurve::disk(Vec2::ZERO, 2.0).unwrap();
        assert!(pdist(&d1, &d2, &q).unwrap().value < 1e-10);
        let b = pdist(&pt(1.0, 0.0), &d1, &q).unwrap().value;
        assert!((b - 2.0).abs() < 1e-9);
        assert!(matches!(pdist(&d1, &d2, &QuadratureSpec::exact()), Err(GeomError::IncompatibleMethod)));
    }

    #[test]
    fn signed_integral_examples() {
        let q = QuadratureSpec::default();
        let s = square();
        assert_eq!(signed_line_integral(&s, &s, &q).unwrap().value, 0.0);
        let p = signed_line_integral(&pt(0.0, 0.0), &pt(1.0, 0.0), &q).unwrap().value;
        assert!(p.abs() < 1e-10);
        let e = signed_line_integral(&s, &pt(0.3, 2.0), &QuadratureSpec::exact()).unwrap().value;
        assert!(e.abs() < 1e-12);
    }

    #[test]
    fn pper_examples() {
        let q = QuadratureSpec::default();
        let big = ConvexCurve::disk(Vec2::new(0.5, 0.5), 5.0).unwrap();
        let v = pper(&big, &square(), &q).unwrap().value;
        assert!((v - 4.0).abs() < 1e-9, "{v}");
        let d = ConvexCurve::disk(Vec2::ZERO, 1.0).unwrap();
        let v = pper(&d, &d, &q).unwrap().value;
        assert!((v - TAU).abs() < 1e-9);
        let p = pt(0.3, -0.2);
        let a = pper(&square(), &p, &q).unwrap().value;
        let b = pdist(&p, &square(), &q).unwrap().value;
        assert!((a - 2.0 * b).abs() < 1e-8);
        let ea = pper(&square(), &p, &QuadratureSpec::exact()).unwrap().value;
        assert!((ea - a).abs() < 1e-9);
    }

    #[test]
    fn half_range_matches_full_range() {
        let q = QuadratureSpec::default();
        let r = reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.2).unwrap();
        let v = Vec2::new(0.1, -0.05);
        let full = pdist(&ConvexCurve::point(v), r.curve(), &q).unwrap().value;
        let half = pdist_point_half_range(v, &r, &q).unwrap().value;
        assert!((full - half).abs() < 1e-8);
        let c = ConvexCurve::polygon(&[Vec2::new(0.0, 0.0), Vec2::new(0.2, 0.1), Vec2::new(-0.1, 0.2)]).unwrap();
        let full = pper(r.curve(), &c, &q).unwrap().value;
        let half = pper_half_range(&r, &c, &q).unwrap().value;
        assert!((full - half).abs() < 1e-8);
    }

    #[test]
    fn interjacent_examples() {
        let a = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)];
        let l = interjacent_line(&a, FRAC_PI_2);
        assert_eq!(l.base, Vec2::new(0.0, 0.0));
        let l = interjacent_line(&a, 0.0);
        assert_eq!(l.base.y, 0.0);
        let h = 3f64.sqrt() / 2.0;
        let eq = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, h)];
        // vertical lines, orthogonal to the base: the apex separates the base vertices
        assert_eq!(interjacent_index(&eq, FRAC_PI_2), 2);
    }

    #[test]
    fn triangle_excess_examples() {
        let q = QuadratureSpec::default();
        let d = crate::constant_width::cw_from_harmonics(2.0, &[], Vec2::ZERO).unwrap();
        let v = Vec2::new(1.0, 0.0);
        let t = triangle_excess([v, v, v], &d, &q).unwrap();
        assert!(t.degenerate);
        assert!((t.value - 2.0).abs() < 1e-8);
        let t = triangle_excess([Vec2::ZERO; 3], &d, &q).unwrap();
        assert!(t.value.abs() < 1e-8);
        let r = reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.0).unwrap();
        let tri = [Vec2::new(0.1, 0.1), Vec2::new(-0.2, 0.05), Vec2::new(0.0, -0.25)];
        let t = triangle_excess(tri, &r, &q).unwrap();
        assert!(t.value <= 1.0 + 1e-6);
    }
}
