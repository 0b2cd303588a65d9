//! Constant-width bodies: construction, validation, smoothing and completion.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::curve::{ConvexCurve, Harmonics, Reuleaux, SupportCurve, GRID};
use crate::error::{GeomError, Result};
use crate::geometry::{wrap, Vec2};

/// Width deficit at which completion stops.
pub const COMPLETION_TOL: f64 = 1e-6;
pub const COMPLETION_MAX_ITER: usize = 10_000;

/// A convex curve certified to have constant width within `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantWidthBody {
    curve: ConvexCurve,
    width: f64,
    tolerance: f64,
}

impl ConstantWidthBody {
    /// Validates the width certificate; `width` is the median grid width.
    pub fn new(curve: ConvexCurve, tolerance: f64) -> Result<Self> {
        let report = width_report(&curve);
        if report.spread > tolerance {
            return Err(GeomError::InvalidCurve(format!(
                "width varies by {:.3e} (tolerance {tolerance:e})",
                report.spread
            )));
        }
        Ok(ConstantWidthBody {
            curve,
            width: report.median,
            tolerance,
        })
    }

    pub fn curve(&self) -> &ConvexCurve {
        &self.curve
    }

    pub fn into_curve(self) -> ConvexCurve {
        self.curve
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Equals the width for constant-width bodies.
    pub fn diameter(&self) -> f64 {
        self.width
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl AsRef<ConvexCurve> for ConstantWidthBody {
    fn as_ref(&self) -> &ConvexCurve {
        &self.curve
    }
}

pub fn reuleaux_polygon(n: usize, width: f64, center: Vec2, rotation: f64) -> Result<ConstantWidthBody> {
    let r = Reuleaux::new(n, width, center, rotation)?;
    Ok(ConstantWidthBody {
        curve: ConvexCurve::Support(SupportCurve::Reuleaux(r)),
        width,
        tolerance: 1e-9,
    })
}

/// Body with support function `w/2 + Σ a_k cos kφ + b_k sin kφ` over odd `k ≥ 3`.
pub fn cw_from_harmonics(width: f64, coeffs: &[(u32, f64, f64)], center: Vec2) -> Result<ConstantWidthBody> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(GeomError::InvalidParameter("width must be positive".into()));
    }
    for &(k, a, b) in coeffs {
        if k < 3 || k % 2 == 0 {
            return Err(GeomError::InvalidParameter(format!(
                "harmonic order must be odd and at least 3, got {k}"
            )));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(GeomError::InvalidParameter("non-finite coefficient".into()));
        }
    }
    let curve = if coeffs.iter().all(|&(_, a, b)| a == 0.0 && b == 0.0) {
        ConvexCurve::disk(center, 0.5 * width)?
    } else {
        ConvexCurve::Support(SupportCurve::Harmonics(Harmonics {
            width,
            center,
            coeffs: coeffs.to_vec(),
        }))
    };
    curve.validate()?;
    Ok(ConstantWidthBody {
        curve,
        width,
        tolerance: 1e-10,
    })
}

/// `D + εB`: width grows by `2ε`, curvature radius is at least `ε`.
pub fn smooth_approx(d: &ConstantWidthBody, eps: f64) -> Result<ConstantWidthBody> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(GeomError::InvalidParameter("eps must be non-negative".into()));
    }
    if eps == 0.0 {
        return Ok(d.clone());
    }
    let disk = ConvexCurve::disk(Vec2::ZERO, eps)?;
    Ok(ConstantWidthBody {
        curve: ConvexCurve::minkowski_sum(1.0, &d.curve, 1.0, &disk)?,
        width: d.width + 2.0 * eps,
        tolerance: d.tolerance,
    })
}

/// Width statistics over `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthReport {
    pub min: f64,
    pub max: f64,
    pub median: f64,
    /// `max − min`.
    pub spread: f64,
    /// Largest `|width − median|`.
    pub from_median: f64,
}

/// Width scan; exact for disk polygons, grid-based otherwise.
pub fn width_report(curve: &ConvexCurve) -> WidthReport {
    if let ConvexCurve::Support(SupportCurve::DiskPolygon(dp)) = curve {
        let e = dp.width_extrema();
        let median = 0.5 * (e.min_width + e.max_width);
        return WidthReport {
            min: e.min_width,
            max: e.max_width,
            median,
            spread: e.max_width - e.min_width,
            from_median: 0.5 * (e.max_width - e.min_width),
        };
    }
    let mut w: Vec<f64> = (0..GRID).map(|i| curve.width(PI * i as f64 / GRID as f64)).collect();
    w.sort_by(f64::total_cmp);
    let median = 0.5 * (w[GRID / 2 - 1] + w[GRID / 2]);
    let (min, max) = (w[0], w[GRID - 1]);
    WidthReport {
        min,
        max,
        median,
        spread: max - min,
        from_median: (max - median).max(median - min),
    }
}

/// Constant-width test: true when the width spread is within `tol`.
pub fn is_constant_width(curve: &ConvexCurve, tol: f64) -> (bool, WidthReport) {
    let r = width_report(curve);
    (r.spread <= tol, r)
}

/// Proxy for strict convexity on the grid: adjacent support points move by at
/// most about `width · Δθ`, so the boundary contains no segments.
/// Returns the worst ratio of jump to `max_width · Δθ`.
pub fn strict_convexity_ratio(curve: &ConvexCurve) -> f64 {
    let step = TAU / GRID as f64;
    let wmax = width_report(curve).max;
    let pts = curve.sample_boundary(GRID);
    (0..GRID)
        .map(|i| pts[i].dist(pts[(i + 1) % GRID]) / (wmax * step))
        .fold(0.0, f64::max)
}

pub fn is_strictly_convex(curve: &ConvexCurve) -> bool {
    strict_convexity_ratio(curve) <= 1.0 + 1e-6
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Arc {
    start: f64,
    len: f64,
    center: usize,
}

/// Intersection of equal-radius disks, stored as its boundary arcs.
/// Gaps between consecutive arcs (in outward-normal angle) are vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskPolygon {
    centers: Vec<Vec2>,
    radius: f64,
    arcs: Vec<Arc>,
}

/// Exact width range of a disk polygon with the outward angles where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthExtrema {
    pub min_width: f64,
    pub argmin: f64,
    pub max_width: f64,
    pub argmax: f64,
}

fn intersect_arcs(a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
    if a.1 >= TAU {
        return Some(b);
    }
    if b.1 >= TAU {
        return Some(a);
    }
    let mut best: Option<(f64, f64)> = None;
    let o = wrap(b.0 - a.0);
    if o <= a.1 {
        best = Some((b.0, (a.1 - o).min(b.1)));
    }
    let o = wrap(a.0 - b.0);
    if o <= b.1 {
        let len = (b.1 - o).min(a.1);
        if best.is_none_or(|x| len > x.1) {
            best = Some((a.0, len));
        }
    }
    best
}

impl DiskPolygon {
    pub fn new(centers: &[Vec2], radius: f64) -> Result<DiskPolygon> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidParameter("disk polygon radius must be positive".into()));
        }
        if centers.is_empty() || centers.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::InvalidParameter("disk polygon needs finite centers".into()));
        }
        let eps = 1e-12 * radius;
        let mut uniq: Vec<Vec2> = Vec::with_capacity(centers.len());
        for &c in centers {
            if uniq.iter().all(|u| u.dist(c) > eps) {
                uniq.push(c);
            }
        }
        let mut arcs = Vec::new();
        for (i, &ci) in uniq.iter().enumerate() {
            let mut arc = Some((0.0, TAU));
            for (j, &cj) in uniq.iter().enumerate() {
                if i == j {
                    continue;
                }
                let delta = ci - cj;
                let m = delta.norm();
                if m > 2.0 * radius * (1.0 + 1e-12) {
                    return Err(GeomError::InvalidParameter("disk intersection is empty".into()));
                }
                let beta = (m / (2.0 * radius)).min(1.0).acos();
                let piece = (wrap(delta.angle() + PI - beta), 2.0 * beta);
                arc = arc.and_then(|a| intersect_arcs(a, piece));
                if arc.is_none() {
                    break;
                }
            }
            if let Some((start, len)) = arc {
                if len > 0.0 {
                    arcs.push(Arc {
                        start: wrap(start),
                        len,
                        center: i,
                    });
                }
            }
        }
        if arcs.is_empty() {
            return Err(GeomError::InvalidParameter("disk intersection is degenerate".into()));
        }
        arcs.sort_by(|a, b| a.start.total_cmp(&b.start));
        Ok(DiskPolygon {
            centers: uniq,
            radius,
            arcs,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn centers(&self) -> &[Vec2] {
        &self.centers
    }

    /// Centers whose circles contribute a boundary arc.
    pub fn active_centers(&self) -> Vec<Vec2> {
        let mut idx: Vec<usize> = self.arcs.iter().map(|a| a.center).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|i| self.centers[i]).collect()
    }

    fn arc_at(&self, phi: f64) -> (&Arc, bool) {
        let phi = wrap(phi);
        let k = self.arcs.partition_point(|a| a.start <= phi);
        let arc = if k == 0 { self.arcs.last().unwrap() } else { &self.arcs[k - 1] };
        (arc, wrap(phi - arc.start) <= arc.len || arc.len >= TAU)
    }

    /// `h(φ) = ⟨p, n(φ)⟩ + k` on the piece containing `φ`.
    fn piece(&self, phi: f64) -> (Vec2, f64) {
        let (arc, on) = self.arc_at(phi);
        let c = self.centers[arc.center];
        if on {
            (c, self.radius)
        } else {
            (c + Vec2::polar(arc.start + arc.len) * self.radius, 0.0)
        }
    }

    pub(crate) fn outward_point(&self, phi: f64) -> Vec2 {
        let (p, k) = self.piece(phi);
        if k > 0.0 {
            p + Vec2::polar(phi) * k
        } else {
            p
        }
    }

    pub(crate) fn outward_kinks(&self) -> Vec<f64> {
        if self.arcs.len() == 1 && self.arcs[0].len >= TAU {
            return Vec::new();
        }
        self.arcs
            .iter()
            .flat_map(|a| [a.start, wrap(a.start + a.len)])
            .collect()
    }

    pub fn support_value(&self, phi: f64) -> f64 {
        let (p, k) = self.piece(phi);
        p.dot(Vec2::polar(phi)) + k
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.centers.iter().all(|c| c.dist(p) <= self.radius + tol)
    }

    /// Exact width extrema: on each piece `w(φ) = ⟨a, n(φ)⟩ + const`.
    pub fn width_extrema(&self) -> WidthExtrema {
        let mut cuts: Vec<f64> = vec![0.0, PI];
        for k in self.outward_kinks() {
            cuts.push(k.rem_euclid(PI));
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let mut out = WidthExtrema {
            min_width: f64::INFINITY,
            argmin: 0.0,
            max_width: f64::NEG_INFINITY,
            argmax: 0.0,
        };
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a <= 0.0 {
                continue;
            }
            let m = 0.5 * (a + b);
            let (p1, k1) = self.piece(m);
            let (p2, k2) = self.piece(m + PI);
            let dir = p1 - p2;
            let f = |phi: f64| dir.dot(Vec2::polar(phi)) + k1 + k2;
            let mut cand = vec![a, b];
            if dir.norm() > 0.0 {
                for c in [dir.angle(), dir.angle() + PI] {
                    let c = a + wrap(c - a);
                    if c <= b {
                        cand.push(c);
                    }
                }
            }
            for phi in cand {
                let v = f(phi);
                if v < out.min_width {
                    out.min_width = v;
                    out.argmin = phi;
                }
                if v > out.max_width {
                    out.max_width = v;
                    out.argmax = phi;
                }
            }
        }
        out
    }

    pub fn into_curve(self) -> ConvexCurve {
        ConvexCurve::Support(SupportCurve::DiskPolygon(self))
    }
}

/// Result of [`complete_to_constant_width`].
#[derive(Debug, Clone)]
pub struct Completion {
    pub body: ConstantWidthBody,
    pub iterations: usize,
    /// Final `max(w_max − d, d − w_min)`.
    pub deviation: f64,
    pub diameter: f64,
}

/// Extends `c` to a body of constant width equal to its diameter by greedy
/// augmentation of a ball hull `X* = ∩_{x∈X} B(x, d)`: the worst width
/// direction of `X*` gets a new point of `X*` added to `X` until the width is
/// constant. `X ⊆ X*` is kept throughout, so the diameter never exceeds `d`
/// and `c ⊆ X*`.
pub fn complete_to_constant_width(c: &ConvexCurve) -> Result<Completion> {
    complete_with(c, COMPLETION_TOL, COMPLETION_MAX_ITER)
}

pub fn complete_with(c: &ConvexCurve, tol: f64, max_iter: usize) -> Result<Completion> {
    let d = c.diameter();
    if !(d > 0.0) {
        return Err(GeomError::InvalidParameter("completion needs a positive diameter".into()));
    }
    if !matches!(c, ConvexCurve::Polygon(_)) {
        let (ok, rep) = is_constant_width(c, tol);
        if ok {
            return Ok(Completion {
                body: ConstantWidthBody {
                    curve: c.clone(),
                    width: rep.median,
                    tolerance: tol,
                },
                iterations: 0,
                deviation: rep.spread,
                diameter: d,
            });
        }
    }
    let mut all: Vec<Vec2> = match c {
        ConvexCurve::Polygon(p) => p.vertices().to_vec(),
        _ => c.sample_boundary(2048),
    };
    let mut dp = DiskPolygon::new(&all, d)?;
    let mut iterations = 0;
    loop {
        let e = dp.width_extrema();
        let over = e.max_width - d;
        let under = d - e.min_width;
        let deviation = over.max(under);
        if deviation < tol {
            return Ok(Completion {
                body: ConstantWidthBody {
                    curve: dp.into_curve(),
                    width: d,
                    tolerance: tol,
                },
                iterations,
                deviation,
                diameter: d,
            });
        }
        if iterations >= max_iter {
            return Err(GeomError::ConvergenceFailure { deviation, iterations });
        }
        let phi = if over >= under { e.argmax } else { e.argmin };
        let mut best: Option<(f64, Vec2)> = None;
        for dir in [phi, phi + PI] {
            let n = Vec2::polar(dir);
            let y = dp.outward_point(dir);
            let hull = all.iter().map(|x| x.dot(n)).fold(f64::NEG_INFINITY, f64::max);
            let gap = y.dot(n) - hull;
            if best.is_none_or(|b| gap > b.0) {
                best = Some((gap, y));
            }
        }
        let (gap, y) = best.unwrap();
        if gap <= 1e-14 * d {
            return Err(GeomError::ConvergenceFailure { deviation, iterations });
        }
        all.push(y);
        let mut active = dp.active_centers();
        active.push(y);
        dp = DiskPolygon::new(&active, d)?;
        iterations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;

    fn equilateral(side: f64) -> ConvexCurve {
        let h = side * 3f64.sqrt() / 2.0;
        ConvexCurve::polygon(&[Vec2::new(0.0, 0.0), Vec2::new(side, 0.0), Vec2::new(side / 2.0, h)]).unwrap()
    }

    #[test]
    fn reuleaux_examples() {
        let even = reuleaux_polygon(4, 1.0, Vec2::ZERO, 0.0);
        assert!(matches!(even, Err(GeomError::InvalidParameter(_))));
        let r3 = reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.0).unwrap();
        let (ok, rep) = is_constant_width(r3.curve(), 1e-9);
        assert!(ok, "{rep:?}");
        let per = r3.curve().perimeter(&QuadratureSpec::default()).unwrap();
        // oracle: edge-sum perimeter of a 10^5-gon inscribed in the body
        let fine = r3.curve().to_polygon(100_000).perimeter(&QuadratureSpec::exact()).unwrap();
        assert!((per - PI).abs() < 1e-8, "{per}");
        assert!((fine - PI).abs() < 1e-8, "{fine}");
        let r5 = reuleaux_polygon(5, 2.0, Vec2::new(1.0, 1.0), 0.3).unwrap();
        assert!((r5.curve().diameter() - 2.0).abs() < 1e-9);
        assert!(is_strictly_convex(r5.curve()));
    }

    #[test]
    fn harmonics_examples() {
        let disk = cw_from_harmonics(2.0, &[], Vec2::ZERO).unwrap();
        assert_eq!(*disk.curve(), ConvexCurve::disk(Vec2::ZERO, 1.0).unwrap());
        let b = cw_from_harmonics(1.0, &[(3, 0.05, 0.0)], Vec2::ZERO).unwrap();
        let (ok, _) = is_constant_width(b.curve(), 1e-10);
        assert!(ok);
        let bad = cw_from_harmonics(1.0, &[(3, 0.2, 0.0)], Vec2::ZERO);
        assert!(matches!(bad, Err(GeomError::NotConvex { .. })));
        if let ConvexCurve::Support(SupportCurve::Harmonics(h)) = b.curve() {
            let analytic = (0..GRID)
                .map(|i| h.curvature_radius(TAU * i as f64 / GRID as f64))
                .fold(f64::INFINITY, f64::min);
            assert!((analytic - (0.5 - 8.0 * 0.05)).abs() < 1e-9);
        }
        assert!(matches!(
            cw_from_harmonics(1.0, &[(2, 0.01, 0.0)], Vec2::ZERO),
            Err(GeomError::InvalidParameter(_))
        ));
    }

    #[test]
    fn smoothing_examples() {
        let q = QuadratureSpec::default();
        let r = reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.0).unwrap();
        let s = smooth_approx(&r, 0.1).unwrap();
        assert!((s.width() - 1.2).abs() < 1e-15);
        let (ok, rep) = is_constant_width(s.curve(), 1e-9);
        assert!(ok && (rep.median - 1.2).abs() < 1e-9);
        assert_eq!(smooth_approx(&r, 0.0).unwrap(), r);
        let grow = s.curve().perimeter(&q).unwrap() - r.curve().perimeter(&q).unwrap();
        assert!((grow - 0.2 * PI).abs() < 1e-8);
    }

    #[test]
    fn width_report_examples() {
        let (ok, rep) = is_constant_width(&ConvexCurve::disk(Vec2::ZERO, 1.0).unwrap(), 1e-12);
        assert!(ok && rep.spread == 0.0);
        let sq = ConvexCurve::polygon(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        let (ok, rep) = is_constant_width(&sq, 1e-6);
        assert!(!ok);
        assert!((rep.spread - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn disk_polygon_of_triangle_is_reuleaux() {
        let tri = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, 3f64.sqrt() / 2.0)];
        let dp = DiskPolygon::new(&tri, 1.0).unwrap();
        let e = dp.width_extrema();
        assert!((e.max_width - 1.0).abs() < 1e-12 && (e.min_width - 1.0).abs() < 1e-12);
        let r = reuleaux_polygon(3, 1.0, Vec2::new(0.5, 3f64.sqrt() / 6.0), 0.5 * PI).unwrap();
        assert!(dp.clone().into_curve().hausdorff(r.curve()) < 1e-12);
    }

    #[test]
    fn completion_examples() {
        let c = complete_to_constant_width(&equilateral(1.0)).unwrap();
        let r = reuleaux_polygon(3, 1.0, Vec2::new(0.5, 3f64.sqrt() / 6.0), 0.5 * PI).unwrap();
        assert!(c.body.curve().hausdorff(r.curve()) < 1e-4);
        let disk = ConvexCurve::disk(Vec2::new(1.0, 2.0), 0.5).unwrap();
        let c = complete_to_constant_width(&disk).unwrap();
        assert_eq!(c.iterations, 0);
        assert_eq!(*c.body.curve(), disk);
        let seg = ConvexCurve::polygon(&[Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)]).unwrap();
        let c = complete_to_constant_width(&seg).unwrap();
        assert!(c.deviation < 1e-6);
        assert!(c.body.curve().contains_curve(&seg, 1e-9));
        assert!((c.body.curve().diameter() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn completion_of_square_and_thin_rectangle() {
        for pts in [
            vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0)],
            vec![Vec2::new(0.0, 0.0), Vec2::new(3.0, 0.0), Vec2::new(3.0, 0.2), Vec2::new(0.0, 0.2)],
        ] {
            let poly = ConvexCurve::polygon(&pts).unwrap();
            let c = complete_to_constant_width(&poly).unwrap();
            assert!(c.body.curve().contains_curve(&poly, 1e-9));
            assert!((c.body.curve().diameter() - poly.diameter()).abs() < 1e-6);
            let (ok, _) = is_constant_width(c.body.curve(), 1e-6);
            assert!(ok);
            // completing again is a no-op
            let again = complete_to_constant_width(c.body.curve()).unwrap();
            assert!(again.body.curve().hausdorff(c.body.curve()) < 1e-6);
        }
    }
}
