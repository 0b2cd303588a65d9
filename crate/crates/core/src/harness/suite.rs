//! Seeded verification suite.

use std::f64::consts::TAU;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constant_width::{reuleaux_polygon, ConstantWidthBody};
use crate::curve::ConvexCurve;
use crate::error::{GeomError, Result};
use crate::geometry::Vec2;
use crate::quadrature::QuadratureSpec;
use crate::report::{Summary, VerificationReport};

use super::checks::*;
use super::generate::*;
use super::search::maximize_triangle_excess;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random disjoint-body scenarios.
    pub main_theorem: usize,
    pub max_bodies: usize,
    /// Random degree-3 partitions with holes.
    pub theorem_mainp: usize,
    pub max_holes: usize,
    pub key_lemma: usize,
    /// Random triangles for the bisector lemma.
    pub balitskiy: usize,
    pub pipeline: usize,
    /// Points per class and body for the `pdist` versus diameter trichotomy.
    pub pdist_diam: usize,
    /// Evaluation budget of each triangle-excess search; 0 skips the search.
    pub search_budget: usize,
    pub quadrature: QuadratureSpec,
    /// Worker threads; `None` uses all cores. Results do not depend on it.
    pub workers: Option<usize>,
    /// Scale every right-hand side by 0.9 so that checks fail.
    pub negative_control: bool,
    pub include_runtime: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            main_theorem: 100,
            max_bodies: 20,
            theorem_mainp: 40,
            max_holes: 3,
            key_lemma: 100,
            balitskiy: 200,
            pipeline: 8,
            pdist_diam: 10,
            search_budget: 400,
            quadrature: QuadratureSpec::adaptive(1e-10),
            workers: None,
            negative_control: false,
            include_runtime: false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Anchor,
    Main(u64),
    Mainp(u64),
    Key(u64),
    Balitskiy,
    Pipeline(u64),
    PdistDiam(u64),
    Search(u64),
}

impl Job {
    fn name(self) -> &'static str {
        match self {
            Job::Anchor | Job::Main(_) => "main_theorem",
            Job::Mainp(_) => "theorem_mainp",
            Job::Key(_) => "key_lemma",
            Job::Balitskiy => "balitskiy",
            Job::Pipeline(_) => "pipeline",
            Job::PdistDiam(_) => "pdist_diam",
            Job::Search(_) => "triangle_excess_search",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Job::Anchor => 0,
            Job::Main(_) => 1,
            Job::Mainp(_) => 2,
            Job::Key(_) => 3,
            Job::Balitskiy => 4,
            Job::Pipeline(_) => 5,
            Job::PdistDiam(_) => 6,
            Job::Search(_) => 7,
        }
    }

    fn index(self) -> u64 {
        match self {
            Job::Anchor | Job::Balitskiy => 0,
            Job::Main(i)
            | Job::Mainp(i)
            | Job::Key(i)
            | Job::Pipeline(i)
            | Job::PdistDiam(i)
            | Job::Search(i) => i,
        }
    }
}

/// Retries generators that may reject an instance, each time on a fresh stream.
fn with_retries<T>(seed: u64, tag: u64, index: u64, mut f: impl FnMut(u64) -> Result<T>) -> Result<(u64, T)> {
    let mut last = None;
    for attempt in 0..16 {
        let s = derive_seed(seed, tag, index * 16 + attempt);
        match f(s) {
            Ok(t) => return Ok((s, t)),
            Err(e @ GeomError::DegenerateInstance(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// The two halves of the unit square inside the square.
pub fn square_halves_scenario() -> Scenario {
    let rect = |x0: f64, x1: f64| {
        ConvexCurve::polygon(&[Vec2::new(x0, 0.0), Vec2::new(x1, 0.0), Vec2::new(x1, 1.0), Vec2::new(x0, 1.0)])
            .unwrap()
    };
    Scenario {
        seed: 0,
        payload: Payload::DisjointBodies {
            container: crate::io::CurveSpec::from_curve(&rect(0.0, 1.0)),
            bodies: vec![
                crate::io::CurveSpec::from_curve(&rect(0.0, 0.5)),
                crate::io::CurveSpec::from_curve(&rect(0.5, 1.0)),
            ],
        },
    }
}

fn run_job(job: Job, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let q = &cfg.quadrature;
    let (tag, idx) = (job.tag(), job.index());
    match job {
        Job::Anchor => Ok(vec![check_main_theorem(&square_halves_scenario(), q)?.with_detail("anchor", true)]),
        Job::Main(_) => {
            let (_, s) = with_retries(cfg.seed, tag, idx, |s| {
                let mut rng = rng_for(s);
                let container = random_curve(&mut rng);
                let k = rng.gen_range(1..=cfg.max_bodies.max(1));
                gen_disjoint_bodies(s, k, &container)
            })?;
            Ok(vec![check_main_theorem(&s, q)?])
        }
        Job::Mainp(_) => {
            let (_, s) = with_retries(cfg.seed, tag, idx, |s| gen_partition_scenario(s, cfg.max_bodies, cfg.max_holes))?;
            Ok(vec![check_theorem_mainp_scenario(&s, q)?])
        }
        Job::Key(_) => {
            let seed = derive_seed(cfg.seed, tag, idx);
            let m = [1, 2, 3, 3, 3, 4, 5, 6, 8][(idx % 9) as usize];
            Ok(vec![check_key_lemma_scenario(&gen_polygon_in_cw(seed, m), q)?])
        }
        Job::Balitskiy => {
            let seed = derive_seed(cfg.seed, tag, 0);
            check_balitskiy_scenario(&gen_triangle_family(seed, cfg.balitskiy))
        }
        Job::Pipeline(_) => {
            let (seed, p) = with_retries(cfg.seed, tag, idx, |s| {
                let mut rng = rng_for(s);
                let n = rng.gen_range(3..=8);
                let d = random_convex_polygon(&mut rng, n, Vec2::ZERO, 1.0);
                let k = rng.gen_range(1..=6);
                random_plain_partition(&mut rng, &d, k)
            })?;
            Ok(vec![check_pipeline(&p, q)?.with_seed(seed)])
        }
        Job::PdistDiam(_) => {
            let seed = derive_seed(cfg.seed, tag, idx);
            let mut rng = rng_for(seed);
            let d = random_cw_body(&mut rng);
            let c = d.curve().sample_boundary(64).iter().fold(Vec2::ZERO, |s, &p| s + p) / 64.0;
            let mut out = Vec::new();
            for _ in 0..cfg.pdist_diam {
                let b = d.curve().support_point(rng.gen_range(0.0..TAU));
                out.push(check_pdist_diam(b, PointClass::Boundary, &d, q)?);
                let s = rng.gen_range(0.0..0.99);
                out.push(check_pdist_diam(c + (b - c) * s, PointClass::Interior, &d, q)?);
                let s = rng.gen_range(1.01..2.0);
                out.push(check_pdist_diam(c + (b - c) * s, PointClass::Exterior, &d, q)?);
            }
            Ok(out.into_iter().map(|r| r.with_seed(seed)).collect())
        }
        Job::Search(i) => {
            let d = if i == 0 {
                ConstantWidthBody::new(ConvexCurve::disk(Vec2::ZERO, 1.0)?, 1e-12)?
            } else {
                reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.0)?
            };
            let seed = derive_seed(cfg.seed, tag, idx);
            let s = maximize_triangle_excess(&d, cfg.search_budget, seed)?;
            Ok(vec![VerificationReport::inequality("triangle_excess_search", s.value, d.diameter(), 1e-4)
                .with_seed(seed)
                .with_detail("body", if i == 0 { "disk" } else { "reuleaux_triangle" })
                .with_detail("evaluations", s.evaluations)
                .with_detail("boundary_vertices", s.boundary_vertices)])
        }
    }
}

fn jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let mut out = vec![Job::Anchor];
    out.extend((0..cfg.main_theorem as u64).map(Job::Main));
    out.extend((0..cfg.theorem_mainp as u64).map(Job::Mainp));
    out.extend((0..cfg.key_lemma as u64).map(Job::Key));
    if cfg.balitskiy > 0 {
        out.push(Job::Balitskiy);
    }
    out.extend((0..cfg.pipeline as u64).map(Job::Pipeline));
    if cfg.pdist_diam > 0 {
        out.extend((0..5).map(Job::PdistDiam));
    }
    if cfg.search_budget > 0 {
        out.extend((0..2).map(Job::Search));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutput {
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl SuiteOutput {
    /// One report per line followed by the summary.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            s.push_str(&serde_json::to_string(r).expect("reports serialize"));
            s.push('\n');
        }
        s.push_str(&serde_json::to_string(&self.summary).expect("summaries serialize"));
        s.push('\n');
        s
    }
}

/// Runs every configured check. Reports come back in job order whatever the
/// number of workers; a check that errors becomes a failed record.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutput> {
    cfg.quadrature.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| GeomError::InvalidParameter(format!("thread pool: {e}")))?;
    let jobs = jobs(cfg);
    let results: Vec<Vec<VerificationReport>> = pool.install(|| {
        jobs.par_iter()
            .map(|&job| {
                let t0 = Instant::now();
                let mut rs = run_job(job, cfg).unwrap_or_else(|e| {
                    vec![VerificationReport::error(job.name(), e.to_string())
                        .with_seed(derive_seed(cfg.seed, job.tag(), job.index()))]
                });
                let ms = t0.elapsed().as_secs_f64() * 1e3 / rs.len().max(1) as f64;
                for r in &mut rs {
                    if cfg.include_runtime {
                        r.runtime_ms = Some(ms);
                    }
                    if cfg.negative_control {
                        *r = r.corrupted(0.9);
                    }
                }
                rs
            })
            .collect()
    });
    let reports: Vec<VerificationReport> = results.into_iter().flatten().collect();
    let summary = Summary::of(&reports);
    Ok(SuiteOutput { reports, summary })
}
