//! Integration over angle ranges.
//!
//! Three engines are provided: an exact closed form for integrands that are
//! piecewise `|d · v_θ|` with constant `d`, adaptive Gauss–Kronrod (7/15) with
//! panels seeded at known kinks, and a fixed midpoint grid.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadMethod {
    ExactPiecewise,
    Adaptive,
    FixedGrid,
}

impl std::str::FromStr for QuadMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" | "exact-piecewise" => Ok(QuadMethod::ExactPiecewise),
            "adaptive" => Ok(QuadMethod::Adaptive),
            "grid" | "fixed-grid" => Ok(QuadMethod::FixedGrid),
            other => Err(format!("unknown quadrature method '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub method: QuadMethod,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub grid_size: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            method: QuadMethod::Adaptive,
            abs_tol: 1e-10,
            max_subdivisions: 200_000,
            grid_size: 1 << 16,
        }
    }
}

impl QuadratureSpec {
    pub fn exact() -> Self {
        QuadratureSpec {
            method: QuadMethod::ExactPiecewise,
            ..Default::default()
        }
    }

    pub fn adaptive(abs_tol: f64) -> Self {
        QuadratureSpec {
            method: QuadMethod::Adaptive,
            abs_tol,
            ..Default::default()
        }
    }

    pub fn grid(grid_size: usize) -> Self {
        QuadratureSpec {
            method: QuadMethod::FixedGrid,
            grid_size,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(GeomError::InvalidParameter("abs_tol must be positive".into()));
        }
        if self.method == QuadMethod::FixedGrid && self.grid_size < 2 {
            return Err(GeomError::InvalidParameter("grid_size must be at least 2".into()));
        }
        Ok(())
    }
}

/// An integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
        }
    }
}

impl Estimate {
    pub fn scale(self, s: f64) -> Estimate {
        Estimate {
            value: self.value * s,
            error: self.error * s.abs(),
        }
    }
}

/// Antiderivative of `|sin x|`.
fn abs_sin_primitive(x: f64) -> f64 {
    let k = (x / PI).floor();
    let r = x - k * PI;
    2.0 * k + (1.0 - r.cos())
}

/// Exact `∫_a^b |d · v_θ| dθ` for constant `d`, with `v_θ = (sin θ, −cos θ)`.
pub fn abs_tangential(d: Vec2, a: f64, b: f64) -> f64 {
    let r = d.norm();
    if r == 0.0 || b <= a {
        return 0.0;
    }
    // d · v_θ = r sin(θ − ψ)
    let psi = d.y.atan2(d.x);
    r * (abs_sin_primitive(b - psi) - abs_sin_primitive(a - psi))
}

/// Exact `∫_a^b d · v_θ dθ`.
pub fn signed_tangential(d: Vec2, a: f64, b: f64) -> f64 {
    // ∫ (d.x sin θ − d.y cos θ) dθ
    d.x * (a.cos() - b.cos()) - d.y * (b.sin() - a.sin())
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1], kept at published precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss–Kronrod panel: value and the (pessimistic) QUADPACK error estimate.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut fv = [(0.0, 0.0); 7];
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x), f(c + x));
        fv[j] = (f1, f2);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc - mean).abs();
    let mut abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let (f1, f2) = fv[j];
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
        abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let (asc, abs) = (asc * h.abs(), abs * h.abs());
    let mut err = ((kron - gauss) * h).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    err = err.max(50.0 * f64::EPSILON * abs);
    (kron * h, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Sorted, deduplicated split points inside `(a, b)` plus the endpoints.
pub fn panel_edges(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    pts.push(a);
    let width = b - a;
    for &t in breaks {
        // bring each break into [a, a + 2π) before testing membership
        let mut x = t;
        if width <= 2.0 * PI + 1e-12 {
            x = a + (t - a).rem_euclid(2.0 * PI);
        }
        if x > a && x < b {
            pts.push(x);
        }
    }
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    pts
}

/// Adaptive Gauss–Kronrod integration of `f` on `[a, b]`, with initial panels
/// split at `breaks` (angles, reduced into the range modulo 2π).
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Estimate> {
    let edges = panel_edges(a, b, breaks);
    let mut heap = BinaryHeap::with_capacity(edges.len() * 2);
    let mut err = 0.0;
    for w in edges.windows(2) {
        let (v, e) = gk15(&f, w[0], w[1]);
        err += e;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
        });
    }
    let mut splits = 0usize;
    while err > abs_tol {
        let Some(p) = heap.pop() else { break };
        // below this width the panel cannot be refined further
        if p.b - p.a < 1e-13 {
            heap.push(p);
            break;
        }
        if splits >= max_subdivisions {
            heap.push(p);
            break;
        }
        splits += 1;
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(&f, p.a, m);
        let (v2, e2) = gk15(&f, m, p.b);
        err += e1 + e2 - p.error;
        heap.push(Panel {
            a: p.a,
            b: m,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: m,
            b: p.b,
            value: v2,
            error: e2,
        });
    }
    // re-sum in panel order so the result does not depend on heap history
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    if error > abs_tol {
        return Err(GeomError::QuadratureFailure {
            tol: abs_tol,
            estimate: error,
        });
    }
    Ok(Estimate { value, error })
}

/// Composite midpoint rule with `n` cells; error estimated against the
/// half-resolution rule.
pub fn fixed_grid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> Estimate {
    let n = n.max(2) & !1;
    let h = (b - a) / n as f64;
    let vals: Vec<f64> = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).collect();
    let fine: f64 = vals.iter().sum::<f64>() * h;
    let h2 = 2.0 * h;
    let coarse: f64 = (0..n / 2).map(|i| f(a + (i as f64 + 0.5) * h2)).sum::<f64>() * h2;
    Estimate {
        value: fine,
        error: (fine - coarse).abs() / 3.0,
    }
}
