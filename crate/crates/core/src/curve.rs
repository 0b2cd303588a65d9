//! Closed convex planar curves with a uniform support-query interface.
//!
//! Every curve answers `support_point(θ)`: the boundary point whose inward
//! normal is `u_θ`. The outward support function is `h(φ)` with the usual
//! convention `h(φ) = max ⟨x, (cos φ, sin φ)⟩`, so `support_point(θ)` is the
//! maximizer for `φ = θ + π`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::constant_width::DiskPolygon;
use crate::error::{GeomError, Result};
use crate::geometry::{inward, tangent, wrap, DirectedLine, Vec2};
use crate::polygon::{convex_hull, Hull, Polygon};
use crate::quadrature::{self, QuadratureSpec};

/// Default resolution of every angular validation grid.
pub const GRID: usize = 4096;

/// Tolerance on `h + h''` for the convexity check.
pub const CONVEXITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexCurve {
    Point(Vec2),
    Polygon(Polygon),
    Support(SupportCurve),
    /// `wa·A + wb·B` in the Minkowski sense.
    Minkowski {
        wa: f64,
        a: Box<ConvexCurve>,
        wb: f64,
        b: Box<ConvexCurve>,
    },
}

/// Curves given by a support function.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportCurve {
    Disk { center: Vec2, radius: f64 },
    Reuleaux(Reuleaux),
    Harmonics(Harmonics),
    Samples(SampledSupport),
    DiskPolygon(DiskPolygon),
}

/// Reuleaux polygon on a regular odd `n`-gon.
#[derive(Debug, Clone, PartialEq)]
pub struct Reuleaux {
    pub n: usize,
    pub width: f64,
    pub center: Vec2,
    pub rotation: f64,
    vertices: Vec<Vec2>,
}

impl Reuleaux {
    pub fn new(n: usize, width: f64, center: Vec2, rotation: f64) -> Result<Reuleaux> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(GeomError::InvalidParameter(format!(
                "Reuleaux polygons need an odd vertex count >= 3, got {n}"
            )));
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(GeomError::InvalidParameter("width must be positive".into()));
        }
        let circumradius = width / (2.0 * (PI / (2.0 * n as f64)).cos());
        let vertices = (0..n)
            .map(|i| center + Vec2::polar(rotation + TAU * i as f64 / n as f64) * circumradius)
            .collect();
        Ok(Reuleaux {
            n,
            width,
            center,
            rotation,
            vertices,
        })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Maximizer of `⟨x, n(φ)⟩`.
    fn outward_point(&self, phi: f64) -> Vec2 {
        let n = self.n as i64;
        let step = PI / n as f64;
        let k = ((phi - self.rotation) / step).round() as i64;
        if k.rem_euclid(2) == 0 {
            self.vertices[(k / 2).rem_euclid(n) as usize]
        } else {
            let j = ((k - 1) / 2 + (n + 1) / 2).rem_euclid(n) as usize;
            self.vertices[j] + Vec2::polar(phi) * self.width
        }
    }

    /// Outward angles where the boundary switches between vertex and arc.
    fn outward_kinks(&self) -> Vec<f64> {
        let step = PI / self.n as f64;
        (0..2 * self.n)
            .map(|m| wrap(self.rotation + step * (m as f64 + 0.5)))
            .collect()
    }
}

/// `h(φ) = w/2 + ⟨c, n(φ)⟩ + Σ (a_k cos kφ + b_k sin kφ)` over odd `k ≥ 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Harmonics {
    pub width: f64,
    pub center: Vec2,
    pub coeffs: Vec<(u32, f64, f64)>,
}

impl Harmonics {
    fn h_parts(&self, phi: f64) -> (f64, f64, f64) {
        let (mut h, mut dh, mut d2h) = (0.5 * self.width, 0.0, 0.0);
        for &(k, a, b) in &self.coeffs {
            let k = k as f64;
            let (s, c) = (k * phi).sin_cos();
            h += a * c + b * s;
            dh += k * (-a * s + b * c);
            d2h += -k * k * (a * c + b * s);
        }
        (h, dh, d2h)
    }

    /// Radius of curvature `h + h''` from the analytic derivative.
    pub fn curvature_radius(&self, phi: f64) -> f64 {
        let (h, _, d2h) = self.h_parts(phi);
        h + d2h
    }

    fn outward_point(&self, phi: f64) -> Vec2 {
        let (h, dh, _) = self.h_parts(phi);
        let n = Vec2::polar(phi);
        self.center + n * h + n.perp() * dh
    }
}

/// Support function sampled on a uniform outward-angle grid, interpolated by
/// cubic Hermite splines with central-difference slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSupport {
    pub h: Vec<f64>,
}

impl SampledSupport {
    fn slope(&self, i: usize) -> f64 {
        let n = self.h.len();
        let step = TAU / n as f64;
        (self.h[(i + 1) % n] - self.h[(i + n - 1) % n]) / (2.0 * step)
    }

    fn eval(&self, phi: f64) -> (f64, f64) {
        let n = self.h.len();
        let step = TAU / n as f64;
        let x = wrap(phi) / step;
        let i = (x.floor() as usize).min(n - 1);
        let t = x - i as f64;
        let (p0, p1) = (self.h[i], self.h[(i + 1) % n]);
        let (m0, m1) = (self.slope(i) * step, self.slope(i + 1) * step);
        let t2 = t * t;
        let t3 = t2 * t;
        let h = (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1;
        let dh = ((6.0 * t2 - 6.0 * t) * p0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * p1
            + (3.0 * t2 - 2.0 * t) * m1)
            / step;
        (h, dh)
    }

    fn outward_point(&self, phi: f64) -> Vec2 {
        let (h, dh) = self.eval(phi);
        let n = Vec2::polar(phi);
        n * h + n.perp() * dh
    }
}

impl SupportCurve {
    fn outward_point(&self, phi: f64) -> Vec2 {
        match self {
            SupportCurve::Disk { center, radius } => *center + Vec2::polar(phi) * *radius,
            SupportCurve::Reuleaux(r) => r.outward_point(phi),
            SupportCurve::Harmonics(hm) => hm.outward_point(phi),
            SupportCurve::Samples(s) => s.outward_point(phi),
            SupportCurve::DiskPolygon(dp) => dp.outward_point(phi),
        }
    }

    fn outward_kinks(&self) -> Vec<f64> {
        match self {
            SupportCurve::Reuleaux(r) => r.outward_kinks(),
            SupportCurve::DiskPolygon(dp) => dp.outward_kinks(),
            _ => Vec::new(),
        }
    }
}

impl ConvexCurve {
    pub fn point(p: Vec2) -> Self {
        ConvexCurve::Point(p)
    }

    /// Convex polygon from a convex vertex loop (either orientation).
    pub fn polygon(vertices: &[Vec2]) -> Result<Self> {
        if vertices.len() == 1 {
            return Ok(ConvexCurve::Point(vertices[0]));
        }
        Polygon::new(vertices).map(ConvexCurve::Polygon)
    }

    /// Convex hull of arbitrary points; collapses to a segment or point when degenerate.
    pub fn hull(points: &[Vec2]) -> Self {
        match convex_hull(points) {
            Hull::Point(p) => ConvexCurve::Point(p),
            Hull::Polygon(p) => ConvexCurve::Polygon(p),
        }
    }

    pub fn disk(center: Vec2, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidParameter("radius must be non-negative".into()));
        }
        if radius == 0.0 {
            return Ok(ConvexCurve::Point(center));
        }
        Ok(ConvexCurve::Support(SupportCurve::Disk { center, radius }))
    }

    pub fn samples(h: Vec<f64>) -> Result<Self> {
        if h.len() < 8 || h.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::InvalidCurve("support samples need at least 8 finite values".into()));
        }
        let c = ConvexCurve::Support(SupportCurve::Samples(SampledSupport { h }));
        c.validate()?;
        Ok(c)
    }

    /// `weight·A + (1 − weight)·B`.
    pub fn minkowski_combine(t: f64, a: &ConvexCurve, b: &ConvexCurve) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeomError::InvalidParameter("weight must lie in [0, 1]".into()));
        }
        Self::minkowski_sum(t, a, 1.0 - t, b)
    }

    /// Weighted Minkowski sum with non-negative weights.
    pub fn minkowski_sum(wa: f64, a: &ConvexCurve, wb: f64, b: &ConvexCurve) -> Result<Self> {
        if !(wa >= 0.0 && wb >= 0.0) {
            return Err(GeomError::InvalidParameter("Minkowski weights must be non-negative".into()));
        }
        if wb == 0.0 {
            return Ok(a.scaled(wa));
        }
        if wa == 0.0 {
            return Ok(b.scaled(wb));
        }
        if let (ConvexCurve::Point(p), ConvexCurve::Point(q)) = (a, b) {
            return Ok(ConvexCurve::Point(*p * wa + *q * wb));
        }
        Ok(ConvexCurve::Minkowski {
            wa,
            a: Box::new(a.clone()),
            wb,
            b: Box::new(b.clone()),
        })
    }

    fn scaled(&self, s: f64) -> ConvexCurve {
        if s == 1.0 {
            return self.clone();
        }
        match self {
            ConvexCurve::Point(p) => ConvexCurve::Point(*p * s),
            _ => ConvexCurve::Minkowski {
                wa: s,
                a: Box::new(self.clone()),
                wb: 0.0,
                b: Box::new(ConvexCurve::Point(Vec2::ZERO)),
            },
        }
    }

    /// `γ(θ)`: the boundary point with inward normal `u_θ`.
    pub fn support_point(&self, theta: f64) -> Vec2 {
        match self {
            ConvexCurve::Point(p) => *p,
            ConvexCurve::Polygon(p) => p.support_point(theta),
            ConvexCurve::Support(s) => s.outward_point(theta + PI),
            ConvexCurve::Minkowski { wa, a, wb, b } => {
                a.support_point(theta) * *wa + b.support_point(theta) * *wb
            }
        }
    }

    /// Outward support function `h(φ)`.
    pub fn support_value(&self, phi: f64) -> f64 {
        match self {
            ConvexCurve::Support(SupportCurve::Disk { center, radius }) => {
                center.dot(Vec2::polar(phi)) + radius
            }
            ConvexCurve::Minkowski { wa, a, wb, b } => wa * a.support_value(phi) + wb * b.support_value(phi),
            _ => self.support_point(phi + PI).dot(Vec2::polar(phi)),
        }
    }

    /// `ℓ_θ(C)`: the line through `γ(θ)` in direction `u_θ`.
    pub fn normal_line(&self, theta: f64) -> DirectedLine {
        DirectedLine {
            base: self.support_point(theta),
            direction: inward(theta),
        }
    }

    /// The two supporting lines parallel to `u_θ`: `(right, left)`, where the
    /// right line bounds the curve on the `+v_θ` side.
    pub fn supporting_lines(&self, theta: f64) -> (DirectedLine, DirectedLine) {
        let u = inward(theta);
        (
            DirectedLine {
                base: self.support_point(theta + FRAC_PI_2),
                direction: u,
            },
            DirectedLine {
                base: self.support_point(theta - FRAC_PI_2),
                direction: u,
            },
        )
    }

    /// Distance between the supporting lines parallel to `u_θ`.
    pub fn width(&self, theta: f64) -> f64 {
        if let ConvexCurve::Support(SupportCurve::Disk { radius, .. }) = self {
            return 2.0 * radius;
        }
        let (r, l) = self.supporting_lines(theta);
        (r.base - l.base).dot(tangent(theta)).abs()
    }

    /// Inward angles where `γ` is not smooth (or jumps).
    pub fn kinks(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_kinks(&mut out);
        out
    }

    fn collect_kinks(&self, out: &mut Vec<f64>) {
        match self {
            ConvexCurve::Point(_) => {}
            ConvexCurve::Polygon(p) => out.extend_from_slice(p.edge_normals()),
            ConvexCurve::Support(s) => out.extend(s.outward_kinks().into_iter().map(|k| wrap(k + PI))),
            ConvexCurve::Minkowski { a, b, .. } => {
                a.collect_kinks(out);
                b.collect_kinks(out);
            }
        }
    }

    /// True when `γ` is piecewise constant, so integrals have closed forms.
    pub fn is_piecewise_constant(&self) -> bool {
        match self {
            ConvexCurve::Point(_) | ConvexCurve::Polygon(_) => true,
            ConvexCurve::Support(_) => false,
            ConvexCurve::Minkowski { a, b, .. } => a.is_piecewise_constant() && b.is_piecewise_constant(),
        }
    }

    /// Perimeter: exact edge sum for polygons, otherwise the width integral.
    pub fn perimeter(&self, q: &QuadratureSpec) -> Result<f64> {
        match self {
            ConvexCurve::Point(_) => Ok(0.0),
            ConvexCurve::Polygon(p) => Ok(p.perimeter()),
            ConvexCurve::Support(SupportCurve::Disk { radius, .. }) => Ok(TAU * radius),
            _ => self.perimeter_by_width(q),
        }
    }

    /// `½ ∫₀^{2π} width(θ) dθ`, regardless of representation.
    pub fn perimeter_by_width(&self, q: &QuadratureSpec) -> Result<f64> {
        let mut breaks = self.kinks();
        let shifted: Vec<f64> = breaks.iter().flat_map(|&k| [k + FRAC_PI_2, k - FRAC_PI_2]).collect();
        breaks = shifted;
        let est = match q.method {
            crate::quadrature::QuadMethod::FixedGrid => {
                quadrature::fixed_grid(|t| self.width(t), 0.0, TAU, q.grid_size)
            }
            _ => quadrature::adaptive(|t| self.width(t), 0.0, TAU, &breaks, q.abs_tol, q.max_subdivisions)?,
        };
        Ok(0.5 * est.value)
    }

    /// Diameter: exact for points, polygons, disks and Reuleaux polygons;
    /// otherwise the maximal width over a grid refined by golden section.
    pub fn diameter(&self) -> f64 {
        match self {
            ConvexCurve::Point(_) => 0.0,
            ConvexCurve::Polygon(p) => p.diameter(),
            ConvexCurve::Support(SupportCurve::Disk { radius, .. }) => 2.0 * radius,
            ConvexCurve::Support(SupportCurve::Reuleaux(r)) => r.width,
            ConvexCurve::Support(SupportCurve::DiskPolygon(dp)) => dp.width_extrema().max_width,
            _ => self.max_width(),
        }
    }

    fn max_width(&self) -> f64 {
        let n = GRID;
        let step = PI / n as f64;
        let widths: Vec<f64> = (0..n).map(|i| self.width(i as f64 * step)).collect();
        let mut best = widths.iter().copied().fold(0.0, f64::max);
        // refine around the top few grid maxima
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| widths[b].total_cmp(&widths[a]));
        for &i in idx.iter().take(4) {
            let (mut lo, mut hi) = ((i as f64 - 1.0) * step, (i as f64 + 1.0) * step);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..60 {
                let m1 = hi - g * (hi - lo);
                let m2 = lo + g * (hi - lo);
                if self.width(m1) < self.width(m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            best = best.max(self.width(0.5 * (lo + hi)));
        }
        best
    }

    /// Closed-body point membership; boundary points count as inside.
    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        match self {
            ConvexCurve::Point(q) => q.dist(p) <= tol,
            ConvexCurve::Polygon(poly) => poly.contains(p, tol),
            ConvexCurve::Support(SupportCurve::Disk { center, radius }) => center.dist(p) <= radius + tol,
            ConvexCurve::Support(SupportCurve::Reuleaux(r)) => {
                r.vertices.iter().all(|v| v.dist(p) <= r.width + tol)
            }
            ConvexCurve::Support(SupportCurve::DiskPolygon(dp)) => dp.contains(p, tol),
            _ => (0..GRID).all(|i| {
                let phi = TAU * i as f64 / GRID as f64;
                p.dot(Vec2::polar(phi)) <= self.support_value(phi) + tol
            }),
        }
    }

    /// `inner ⊆ self`, via vertices for polygonal inner curves and support
    /// functions on the grid otherwise.
    pub fn contains_curve(&self, inner: &ConvexCurve, tol: f64) -> bool {
        match inner {
            ConvexCurve::Point(p) => self.contains(*p, tol),
            ConvexCurve::Polygon(poly) => poly.vertices().iter().all(|&v| self.contains(v, tol)),
            _ => (0..GRID).all(|i| {
                let phi = TAU * i as f64 / GRID as f64;
                inner.support_value(phi) <= self.support_value(phi) + tol
            }),
        }
    }

    /// Numerical convexity check on the grid: `h + h'' ≥ −1e−8` by second
    /// differences. Points and polygons are convex by construction.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexCurve::Point(p) if p.is_finite() => Ok(()),
            ConvexCurve::Point(_) => Err(GeomError::InvalidCurve("non-finite point".into())),
            ConvexCurve::Polygon(_) => Ok(()),
            ConvexCurve::Minkowski { a, b, .. } => {
                a.validate()?;
                b.validate()
            }
            ConvexCurve::Support(_) => {
                let (theta, value) = self.min_curvature_radius(GRID);
                if value < -CONVEXITY_TOL {
                    Err(GeomError::NotConvex { theta, value })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Minimum over the grid of the finite-difference `h + h''`, with its location.
    pub fn min_curvature_radius(&self, n: usize) -> (f64, f64) {
        let step = TAU / n as f64;
        let h: Vec<f64> = (0..n).map(|i| self.support_value(i as f64 * step)).collect();
        let mut worst = (0.0, f64::INFINITY);
        for i in 0..n {
            let d2 = (h[(i + 1) % n] - 2.0 * h[i] + h[(i + n - 1) % n]) / (step * step);
            let r = h[i] + d2;
            if r < worst.1 {
                worst = (i as f64 * step, r);
            }
        }
        worst
    }

    /// Boundary points at `n` uniformly spaced inward angles.
    pub fn sample_boundary(&self, n: usize) -> Vec<Vec2> {
        (0..n).map(|i| self.support_point(TAU * i as f64 / n as f64)).collect()
    }

    /// Inscribed polygonal approximation. Polygons and points are returned as is.
    pub fn to_polygon(&self, n: usize) -> ConvexCurve {
        match self {
            ConvexCurve::Point(_) | ConvexCurve::Polygon(_) => self.clone(),
            _ => ConvexCurve::hull(&self.sample_boundary(n)),
        }
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            ConvexCurve::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// Hausdorff distance between two convex bodies, `max |h₁ − h₂|` on the grid.
    pub fn hausdorff(&self, other: &ConvexCurve) -> f64 {
        (0..GRID)
            .map(|i| {
                let phi = TAU * i as f64 / GRID as f64;
                (self.support_value(phi) - other.support_value(phi)).abs()
            })
            .fold(0.0, f64::max)
    }
}
