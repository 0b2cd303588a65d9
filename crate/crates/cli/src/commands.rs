use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use normline::constant_width::{complete_to_constant_width, width_report};
use normline::harness::{self, Scenario, SuiteConfig, SuiteOutput, DEFAULT_SEED};
use normline::pseudometric::{pdist, pper};
use normline::{ConvexCurve, CurveSpec, GeomError, QuadratureSpec, Summary, VerificationReport, Vec2};
use serde_json::json;

use crate::args::{Cli, Command, GenKind, Global};
use crate::fmt::num;
use crate::svg::{render, Scene};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_curve(path: &Path) -> Result<ConvexCurve> {
    let spec: CurveSpec =
        serde_json::from_str(&read(path)?).with_context(|| format!("parsing curve {}", path.display()))?;
    Ok(spec.to_curve()?)
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Exit status for a failed command: 3 for numeric failures, 2 for bad input.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<GeomError>() {
        Some(
            GeomError::QuadratureFailure { .. }
            | GeomError::ConsistencyFailure(_)
            | GeomError::ConvergenceFailure { .. }
            | GeomError::EulerMismatch { .. }
            | GeomError::ExtensionFailure(_),
        ) => 3,
        _ => 2,
    }
}

/// Runs the command; returns 0, or 1 when verification checks failed.
pub fn run(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Pdist { a, b } => {
            let q = g.quadrature(QuadratureSpec::default());
            let e = pdist(&read_curve(a)?, &read_curve(b)?, &q)?;
            emit(g, &format!("{}\nerror_estimate={}\n", num(e.value), num(e.error)))?;
            Ok(0)
        }
        Command::Pper { reference, curve } => {
            let q = g.quadrature(QuadratureSpec::default());
            let e = pper(&read_curve(reference)?, &read_curve(curve)?, &q)?;
            emit(g, &format!("{}\nerror_estimate={}\n", num(e.value), num(e.error)))?;
            Ok(0)
        }
        Command::Verify {
            config,
            negative_control,
        } => verify(g, config.as_deref(), *negative_control),
        Command::Complete { curve, exact, samples } => complete(g, curve, *exact, *samples),
        Command::Gen {
            kind,
            k,
            holes,
            m,
            count,
            container,
        } => {
            let seed = g.seed.unwrap_or(DEFAULT_SEED);
            let s = match kind {
                GenKind::DisjointBodies => {
                    let c = match container {
                        Some(p) => read_curve(p)?,
                        None => ConvexCurve::polygon(&[
                            Vec2::new(0.0, 0.0),
                            Vec2::new(1.0, 0.0),
                            Vec2::new(1.0, 1.0),
                            Vec2::new(0.0, 1.0),
                        ])?,
                    };
                    harness::gen_disjoint_bodies(seed, *k, &c)?
                }
                GenKind::PartitionWithHoles => harness::gen_partition_scenario(seed, *k, *holes)?,
                GenKind::PolygonInCw => harness::gen_polygon_in_cw(seed, *m),
                GenKind::TriangleFamily => harness::gen_triangle_family(seed, *count),
            };
            emit(g, &(serde_json::to_string(&s)? + "\n"))?;
            Ok(0)
        }
        Command::Render {
            scene,
            canvas,
            stroke_width,
        } => {
            let scene: Scene =
                serde_json::from_str(&read(scene)?).with_context(|| format!("parsing scene {}", scene.display()))?;
            if !(*canvas > 0.0 && *stroke_width >= 0.0) {
                anyhow::bail!(GeomError::InvalidParameter("canvas must be positive".into()));
            }
            emit(g, &render(&scene, *canvas, *stroke_width)?)?;
            Ok(0)
        }
    }
}

fn scenario_reports(s: &Scenario, q: &QuadratureSpec) -> Vec<VerificationReport> {
    use harness::Payload;
    let single = |r: normline::Result<VerificationReport>, name: &str| {
        vec![r.unwrap_or_else(|e| VerificationReport::error(name, e.to_string()).with_seed(s.seed))]
    };
    match &s.payload {
        Payload::DisjointBodies { .. } => single(harness::check_main_theorem(s, q), "main_theorem"),
        Payload::PartitionWithHoles { .. } => single(harness::check_theorem_mainp_scenario(s, q), "theorem_mainp"),
        Payload::PolygonInCw { .. } => single(harness::check_key_lemma_scenario(s, q), "key_lemma"),
        Payload::TriangleFamily { .. } => harness::check_balitskiy_scenario(s)
            .unwrap_or_else(|e| vec![VerificationReport::error("balitskiy", e.to_string()).with_seed(s.seed)]),
    }
}

fn verify(g: &Global, config: Option<&Path>, negative_control: bool) -> Result<i32> {
    let value: serde_json::Value = match config {
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None => json!({}),
    };
    let out = if value.get("kind").is_some() {
        let s: Scenario = serde_json::from_value(value).context("parsing scenario")?;
        let q = g.quadrature(SuiteConfig::default().quadrature);
        q.validate()?;
        let mut reports = scenario_reports(&s, &q);
        if negative_control {
            reports = reports.iter().map(|r| r.corrupted(0.9)).collect();
        }
        let summary = Summary::of(&reports);
        SuiteOutput { reports, summary }
    } else {
        let mut cfg: SuiteConfig = serde_json::from_value(value).context("parsing suite configuration")?;
        if let Some(seed) = g.seed {
            cfg.seed = seed;
        }
        if g.workers.is_some() {
            cfg.workers = g.workers;
        }
        if g.quad_overridden() {
            cfg.quadrature = g.quadrature(cfg.quadrature);
        }
        cfg.negative_control |= negative_control;
        harness::run_suite(&cfg)?
    };
    emit(g, &out.to_jsonl())?;
    Ok(if out.summary.failed == 0 { 0 } else { 1 })
}

fn complete(g: &Global, path: &Path, exact: bool, samples: usize) -> Result<i32> {
    let input = read_curve(path)?;
    let c = complete_to_constant_width(&input)?;
    let body = c.body.curve();
    let spec = if c.iterations == 0 && !matches!(input, ConvexCurve::Polygon(_) | ConvexCurve::Point(_)) {
        CurveSpec::from_curve(&input)
    } else if exact {
        CurveSpec::from_curve(body)
    } else {
        CurveSpec::sampled(body, samples.max(16))
    };
    let w = width_report(body);
    let summary = json!({
        "iterations": c.iterations,
        "input_diameter": input.diameter(),
        "diameter": c.diameter,
        "width_min": w.min,
        "width_max": w.max,
        "width_deviation": c.deviation,
        "contains_input": body.contains_curve(&input, 1e-9),
    });
    let curve = serde_json::to_string(&spec)? + "\n";
    let summary = serde_json::to_string(&summary)? + "\n";
    if g.output.is_some() {
        emit(g, &curve)?;
        print!("{summary}");
    } else {
        print!("{curve}");
        eprint!("{summary}");
    }
    Ok(0)
}
