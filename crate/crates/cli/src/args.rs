use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normline::{QuadMethod, QuadratureSpec};

#[derive(Debug, Parser)]
#[command(name = "normline", version, about = "Normal-line pseudometric, generalized perimeters and partition checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Adaptive,
    Grid,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every random choice [default: 20240601, or the suite file's seed].
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Quadrature method.
    #[arg(long = "quad-method", global = true, value_enum)]
    pub quad_method: Option<Method>,
    /// Absolute tolerance of adaptive quadrature.
    #[arg(long = "abs-tol", global = true)]
    pub abs_tol: Option<f64>,
    /// Panels of the fixed-grid rule.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl Global {
    /// Quadrature from the flags, on top of `base`.
    pub fn quadrature(&self, base: QuadratureSpec) -> QuadratureSpec {
        let mut q = base;
        if let Some(m) = self.quad_method {
            q.method = match m {
                Method::Exact => QuadMethod::ExactPiecewise,
                Method::Adaptive => QuadMethod::Adaptive,
                Method::Grid => QuadMethod::FixedGrid,
            };
        }
        if let Some(t) = self.abs_tol {
            q.abs_tol = t;
        }
        if let Some(n) = self.grid {
            q.grid_size = n;
        }
        q
    }

    pub fn quad_overridden(&self) -> bool {
        self.quad_method.is_some() || self.abs_tol.is_some() || self.grid.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    DisjointBodies,
    PartitionWithHoles,
    PolygonInCw,
    TriangleFamily,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pseudometric distance between two curves.
    Pdist { a: PathBuf, b: PathBuf },
    /// Generalized perimeter of a curve relative to a reference body.
    Pper {
        /// Reference body D.
        reference: PathBuf,
        curve: PathBuf,
    },
    /// Run a verification suite (or the check matching a generated scenario).
    Verify {
        /// Suite configuration or scenario JSON; defaults apply without it.
        config: Option<PathBuf>,
        /// Scale right-hand sides by 0.9 so that checks fail.
        #[arg(long)]
        negative_control: bool,
    },
    /// Complete a convex body to a body of constant width with the same diameter.
    Complete {
        curve: PathBuf,
        /// Emit the exact disk-polygon form instead of support samples.
        #[arg(long)]
        exact: bool,
        /// Support samples in the default output.
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Generate a scenario.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Bodies (disjoint-bodies) or at most this many bodies (partition-with-holes).
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// At most this many holes (partition-with-holes).
        #[arg(long, default_value_t = 2)]
        holes: usize,
        /// Polygon vertices (polygon-in-cw).
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Triangles (triangle-family).
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Container curve for disjoint bodies (default: unit square).
        #[arg(long)]
        container: Option<PathBuf>,
    },
    /// Render a scene to SVG.
    Render {
        scene: PathBuf,
        /// Canvas width and height in pixels.
        #[arg(long, default_value_t = 512.0)]
        canvas: f64,
        #[arg(long = "stroke-width", default_value_t = 1.5)]
        stroke_width: f64,
    },
}
