//! JSON schema for curves.

use serde::{Deserialize, Serialize};

use crate::constant_width::{cw_from_harmonics, DiskPolygon};
use crate::curve::{ConvexCurve, SupportCurve};
use crate::error::{GeomError, Result};
use crate::geometry::Vec2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Polygon {
        vertices: Vec<Vec2>,
    },
    Point {
        at: Vec2,
    },
    Disk {
        center: Vec2,
        radius: f64,
    },
    Reuleaux {
        n: usize,
        width: f64,
        #[serde(default)]
        center: Vec2,
        #[serde(default)]
        rotation: f64,
    },
    CwHarmonics {
        width: f64,
        coeffs: Vec<(u32, f64, f64)>,
        #[serde(default)]
        center: Vec2,
    },
    SupportSamples {
        h: Vec<f64>,
    },
    DiskPolygon {
        centers: Vec<Vec2>,
        radius: f64,
    },
    /// `t·a + (1 − t)·b`.
    Minkowski {
        t: f64,
        a: Box<CurveSpec>,
        b: Box<CurveSpec>,
    },
    /// `wa·a + wb·b` with arbitrary non-negative weights.
    MinkowskiSum {
        wa: f64,
        a: Box<CurveSpec>,
        wb: f64,
        b: Box<CurveSpec>,
    },
}

impl CurveSpec {
    pub fn to_curve(&self) -> Result<ConvexCurve> {
        match self {
            CurveSpec::Polygon { vertices } => {
                if vertices.is_empty() {
                    return Err(GeomError::InvalidCurve("polygon without vertices".into()));
                }
                ConvexCurve::polygon(vertices)
            }
            CurveSpec::Point { at } => {
                if !at.is_finite() {
                    return Err(GeomError::InvalidCurve("non-finite point".into()));
                }
                Ok(ConvexCurve::point(*at))
            }
            CurveSpec::Disk { center, radius } => ConvexCurve::disk(*center, *radius),
            CurveSpec::Reuleaux {
                n,
                width,
                center,
                rotation,
            } => Ok(crate::constant_width::reuleaux_polygon(*n, *width, *center, *rotation)?.into_curve()),
            CurveSpec::CwHarmonics { width, coeffs, center } => {
                Ok(cw_from_harmonics(*width, coeffs, *center)?.into_curve())
            }
            CurveSpec::SupportSamples { h } => ConvexCurve::samples(h.clone()),
            CurveSpec::DiskPolygon { centers, radius } => Ok(DiskPolygon::new(centers, *radius)?.into_curve()),
            CurveSpec::Minkowski { t, a, b } => ConvexCurve::minkowski_combine(*t, &a.to_curve()?, &b.to_curve()?),
            CurveSpec::MinkowskiSum { wa, a, wb, b } => {
                ConvexCurve::minkowski_sum(*wa, &a.to_curve()?, *wb, &b.to_curve()?)
            }
        }
    }

    pub fn from_curve(c: &ConvexCurve) -> CurveSpec {
        match c {
            ConvexCurve::Point(p) => CurveSpec::Point { at: *p },
            ConvexCurve::Polygon(p) => CurveSpec::Polygon {
                vertices: p.vertices().to_vec(),
            },
            ConvexCurve::Support(s) => match s {
                SupportCurve::Disk { center, radius } => CurveSpec::Disk {
                    center: *center,
                    radius: *radius,
                },
                SupportCurve::Reuleaux(r) => CurveSpec::Reuleaux {
                    n: r.n,
                    width: r.width,
                    center: r.center,
                    rotation: r.rotation,
                },
                SupportCurve::Harmonics(h) => CurveSpec::CwHarmonics {
                    width: h.width,
                    coeffs: h.coeffs.clone(),
                    center: h.center,
                },
                SupportCurve::Samples(s) => CurveSpec::SupportSamples { h: s.h.clone() },
                SupportCurve::DiskPolygon(dp) => CurveSpec::DiskPolygon {
                    centers: dp.active_centers(),
                    radius: dp.radius(),
                },
            },
            ConvexCurve::Minkowski { wa, a, wb, b } => {
                if (wa + wb - 1.0).abs() == 0.0 {
                    CurveSpec::Minkowski {
                        t: *wa,
                        a: Box::new(Self::from_curve(a)),
                        b: Box::new(Self::from_curve(b)),
                    }
                } else {
                    CurveSpec::MinkowskiSum {
                        wa: *wa,
                        a: Box::new(Self::from_curve(a)),
                        wb: *wb,
                        b: Box::new(Self::from_curve(b)),
                    }
                }
            }
        }
    }

    /// Support-function samples on `n` uniform outward angles.
    pub fn sampled(c: &ConvexCurve, n: usize) -> CurveSpec {
        let h = (0..n)
            .map(|i| c.support_value(std::f64::consts::TAU * i as f64 / n as f64))
            .collect();
        CurveSpec::SupportSamples { h }
    }
}

pub fn curve_from_json(s: &str) -> Result<ConvexCurve> {
    let spec: CurveSpec =
        serde_json::from_str(s).map_err(|e| GeomError::InvalidCurve(format!("curve JSON: {e}")))?;
    spec.to_curve()
}

pub fn curve_to_json(c: &ConvexCurve) -> String {
    serde_json::to_string(&CurveSpec::from_curve(c)).expect("curve specs always serialize")
}
