//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! report stays readable; exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::json;

use normline::constant_width::{complete_to_constant_width, cw_from_harmonics, reuleaux_polygon, width_report};
use normline::harness::*;
use normline::partition::{extend_to_container, PlanarPartition};
use normline::pseudometric::{pdist, pdist_point_half_range, pper, signed_line_integral};
use normline::{ConstantWidthBody, ConvexCurve, FaceLabel, QuadratureSpec, Vec2};

const SEED: u64 = 0x5eed_acce;

fn q() -> QuadratureSpec {
    QuadratureSpec::adaptive(1e-10)
}

fn seed(criterion: u64, i: u64) -> u64 {
    derive_seed(SEED, criterion, i)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Wraps a criterion: catches panics and enforces the runtime limit.
fn criterion(n: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        ok(false, format!("panicked: {msg}"))
    });
    let dt = t0.elapsed();
    let slow = limit.is_some_and(|l| dt > l);
    let pass = out.pass && !slow;
    let limit_note = limit.map(|l| format!(" (limit {:.0}s)", l.as_secs_f64())).unwrap_or_default();
    println!(
        "criterion {n:>2} {}: {title}: {}; {:.2}s{limit_note}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        dt.as_secs_f64()
    );
    pass
}

fn c1_point_anchor() -> Outcome {
    let v = pdist(
        &ConvexCurve::point(Vec2::new(0.0, 0.0)),
        &ConvexCurve::point(Vec2::new(3.0, 4.0)),
        &q(),
    )
    .unwrap()
    .value;
    ok((v - 10.0).abs() < 1e-9, format!("pdist = {v:.12}"))
}

fn c2_axioms() -> Outcome {
    let (mut sym, mut tri, mut selfd) = (0.0f64, f64::INFINITY, 0.0f64);
    for i in 0..1000 {
        let mut rng = rng_for(seed(2, i));
        let (a, b, c) = (random_curve(&mut rng), random_curve(&mut rng), random_curve(&mut rng));
        let ab = pdist(&a, &b, &q()).unwrap().value;
        let ba = pdist(&b, &a, &q()).unwrap().value;
        let bc = pdist(&b, &c, &q()).unwrap().value;
        let ac = pdist(&a, &c, &q()).unwrap().value;
        sym = sym.max((ab - ba).abs());
        tri = tri.min(ab + bc - ac);
        selfd = selfd.max(pdist(&a, &a, &q()).unwrap().value.abs());
    }
    ok(
        sym <= 1e-9 && tri >= -1e-8 && selfd <= 1e-8,
        format!("1000 triples, max asymmetry {sym:.2e}, min triangle slack {tri:.2e}, max self-distance {selfd:.2e}"),
    )
}

fn c3_minkowski() -> Outcome {
    let mut worst = f64::INFINITY;
    for i in 0..500 {
        let mut rng = rng_for(seed(3, i));
        let t = rng.gen_range(0.0..=1.0);
        let (a, b, d) = (random_curve(&mut rng), random_curve(&mut rng), random_curve(&mut rng));
        let m = ConvexCurve::minkowski_combine(t, &a, &b).unwrap();
        let lhs = pdist(&m, &d, &q()).unwrap().value;
        let rhs = t * pdist(&a, &d, &q()).unwrap().value + (1.0 - t) * pdist(&b, &d, &q()).unwrap().value;
        worst = worst.min(rhs - lhs);
    }
    // points on opposite sides of D: every normal line pair straddles D's
    let (a, b) = (ConvexCurve::point(Vec2::new(-1.0, 0.0)), ConvexCurve::point(Vec2::new(1.0, 0.0)));
    let d = ConvexCurve::point(Vec2::ZERO);
    let m = ConvexCurve::minkowski_combine(0.5, &a, &b).unwrap();
    let gap = 0.5 * pdist(&a, &d, &q()).unwrap().value + 0.5 * pdist(&b, &d, &q()).unwrap().value
        - pdist(&m, &d, &q()).unwrap().value;
    ok(
        worst >= -1e-8 && gap > 1e-3,
        format!("500 instances, min slack {worst:.2e}, strict instance gap {gap:.6}"),
    )
}

fn c4_signed() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let mut rng = rng_for(seed(4, i));
        let (a, b) = (random_curve(&mut rng), random_curve(&mut rng));
        worst = worst.max(signed_line_integral(&a, &b, &q()).unwrap().value.abs());
    }
    ok(worst < 1e-7, format!("1000 pairs, max |value| {worst:.2e}"))
}

fn body_center(d: &ConstantWidthBody) -> Vec2 {
    let pts = d.curve().sample_boundary(256);
    pts.iter().fold(Vec2::ZERO, |s, &p| s + p) * (1.0 / pts.len() as f64)
}

fn c5_trichotomy() -> Outcome {
    let mut rng = rng_for(seed(5, 0));
    let bodies = vec![
        reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.0).unwrap(),
        reuleaux_polygon(5, 2.0, Vec2::new(0.3, -0.2), 0.4).unwrap(),
        ConstantWidthBody::new(ConvexCurve::disk(Vec2::new(1.0, 1.0), 0.75).unwrap(), 1e-12).unwrap(),
        cw_from_harmonics(1.5, &[(3, 0.05, 0.02)], Vec2::ZERO).unwrap(),
        random_cw_body(&mut rng),
    ];
    let (mut bnd, mut inner_ok, mut outer_ok) = (0.0f64, 0usize, 0usize);
    for d in &bodies {
        let diam = d.diameter();
        let c = body_center(d);
        for _ in 0..200 {
            let b = d.curve().support_point(rng.gen_range(0.0..TAU));
            let v = pdist_point_half_range(b, d, &q()).unwrap().value;
            bnd = bnd.max((v - diam).abs());
            let inner = c + (b - c) * rng.gen_range(0.0..0.99);
            inner_ok += (pdist_point_half_range(inner, d, &q()).unwrap().value < diam) as usize;
            let outer = c + (b - c) * rng.gen_range(1.01..3.0);
            outer_ok += (pdist_point_half_range(outer, d, &q()).unwrap().value > diam) as usize;
        }
    }
    ok(
        bnd < 1e-6 && inner_ok == 1000 && outer_ok == 1000,
        format!("5 bodies, boundary max |pdist - diam| {bnd:.2e}, interior {inner_ok}/1000, exterior {outer_ok}/1000"),
    )
}

fn square_halves() -> PlanarPartition {
    let p = |x: f64, y: f64| Vec2::new(x, y);
    let sq = ConvexCurve::polygon(&[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]).unwrap();
    let faces = vec![
        (vec![p(0.0, 0.0), p(0.5, 0.0), p(0.5, 1.0), p(0.0, 1.0)], FaceLabel::Body),
        (vec![p(0.5, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.5, 1.0)], FaceLabel::Body),
    ];
    PlanarPartition::from_face_polygons(&sq, &faces).unwrap()
}

fn random_container<R: Rng>(rng: &mut R) -> normline::Polygon {
    let n = rng.gen_range(3..=10);
    random_convex_polygon(rng, n, Vec2::ZERO, 1.0)
}

fn c6_partition_identity() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..500 {
        let mut rng = rng_for(seed(6, i));
        let d = random_container(&mut rng);
        let k = rng.gen_range(1..=12);
        let holes = rng.gen_range(0..=3);
        let p = random_partition(&mut rng, &d, k, holes, 20).unwrap();
        let reference = random_curve(&mut rng);
        let r = p.partition_identity_check(&reference, &q(), 1e-6).unwrap();
        worst = worst.max((r.lhs - r.rhs).abs());
    }
    let disk = ConvexCurve::disk(Vec2::new(0.5, 0.5), 10.0).unwrap();
    let a = square_halves().partition_identity_check(&disk, &q(), 1e-6).unwrap();
    let anchor = (a.lhs - 6.0).abs() < 1e-6 && (a.rhs - 6.0).abs() < 1e-6;
    ok(
        worst < 1e-6 && anchor,
        format!(
            "500 partitions, max |lhs - rhs| {worst:.2e}; square anchor lhs {:.9} rhs {:.9}",
            a.lhs, a.rhs
        ),
    )
}

fn c7_exact_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..500 {
        let mut rng = rng_for(seed(7, i));
        let (a, b) = (random_polygon_curve(&mut rng), random_polygon_curve(&mut rng));
        for f in [pdist, pper] {
            let e = f(&a, &b, &QuadratureSpec::exact()).unwrap().value;
            let n = f(&a, &b, &q()).unwrap().value;
            worst = worst.max((e - n).abs());
        }
    }
    ok(worst < 1e-7, format!("500 polygon pairs, pdist and pper, max difference {worst:.2e}"))
}

fn c8_constant_width() -> Outcome {
    let mut barbier = 0.0f64;
    for i in 0..50 {
        let mut rng = rng_for(seed(8, i));
        let d = random_cw_body(&mut rng);
        barbier = barbier.max((d.curve().perimeter(&q()).unwrap() - PI * d.width()).abs());
    }
    let h = cw_from_harmonics(1.0, &[(3, 0.04, -0.01), (5, 0.005, 0.003)], Vec2::ZERO).unwrap();
    let hdev = width_report(h.curve()).spread;

    let s = 3f64.sqrt();
    let tri = ConvexCurve::polygon(&[Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, s / 2.0)]).unwrap();
    let completed = complete_to_constant_width(&tri).unwrap();
    let exact = reuleaux_polygon(3, 1.0, Vec2::new(0.5, s / 6.0), FRAC_PI_2).unwrap();
    let haus = completed.body.curve().hausdorff(exact.curve());

    let mut post_fail = 0;
    for i in 0..100 {
        let mut rng = rng_for(seed(8, 1000 + i));
        let p = ConvexCurve::Polygon(random_container(&mut rng));
        let c = complete_to_constant_width(&p).unwrap();
        let body = c.body.curve();
        let diam = p.diameter();
        let w = width_report(body);
        let good = body.contains_curve(&p, 1e-9)
            && (body.diameter() - diam).abs() < 1e-6
            && w.max - diam < 1e-6
            && diam - w.min < 1e-6;
        post_fail += (!good) as usize;
    }
    ok(
        barbier < 1e-6 && hdev < 1e-10 && haus < 1e-4 && post_fail == 0,
        format!(
            "Barbier max error {barbier:.2e}, harmonic width spread {hdev:.2e}, triangle completion Hausdorff {haus:.2e}, postcondition failures {post_fail}/100"
        ),
    )
}

fn c9_normalization() -> Outcome {
    let (mut euler_fail, mut perim_fail) = (0, 0);
    for i in 0..1000 {
        let mut rng = rng_for(seed(9, i));
        let d = random_container(&mut rng);
        let k = rng.gen_range(1..=15);
        let holes = rng.gen_range(0..=3);
        let raw = random_partition_raw(&mut rng, &d, k, holes, 20).unwrap();
        let m = raw.normalize_degree3().unwrap();
        let expected = 2 * (m.body_count() + m.hole_count() - 1);
        euler_fail += (m.euler_vertex_count().ok() != Some(expected)) as usize;
        perim_fail += (0..raw.faces().len()).any(|f| raw.face_perimeter(f) != m.face_perimeter(f)) as usize;
    }
    ok(
        euler_fail == 0 && perim_fail == 0,
        format!("1000 partitions, Euler count failures {euler_fail}, perimeter changes {perim_fail}"),
    )
}

fn c10_extension() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..200 {
        let mut rng = rng_for(seed(10, i));
        let n = rng.gen_range(3..=8);
        let d = random_convex_polygon(&mut rng, n, Vec2::ZERO, 1.0);
        let k = rng.gen_range(1..=8);
        let holes = rng.gen_range(0..=2);
        let p = random_partition_raw(&mut rng, &d, k, holes, 12).unwrap();
        let outer = complete_to_constant_width(&p.container_curve()).unwrap();
        let ext = extend_to_container(&p, outer.body.curve()).unwrap();
        let (l, r) = ext.perimeter_identity(&p);
        worst = worst.max((l - r).abs());
    }
    ok(worst < 1e-6, format!("200 extensions, max identity error {worst:.2e}"))
}

fn c11_theorems() -> Outcome {
    let cfg = SuiteConfig {
        seed: SEED,
        main_theorem: 1000,
        max_bodies: 20,
        theorem_mainp: 1000,
        max_holes: 3,
        key_lemma: 0,
        balitskiy: 0,
        pipeline: 0,
        pdist_diam: 0,
        search_budget: 0,
        ..SuiteConfig::default()
    };
    let out = run_suite(&cfg).unwrap();
    let count = |name: &str| out.reports.iter().filter(|r| r.check == name).count();
    let bad = out
        .reports
        .iter()
        .filter(|r| !r.pass || r.slack < -1e-6)
        .count();
    let anchor = out
        .reports
        .iter()
        .find(|r| r.details.contains_key("anchor"))
        .expect("anchor report");
    let rhs = 4.0 + 2.0 * 2f64.sqrt();
    let anchor_ok = (anchor.lhs - 6.0).abs() < 1e-9 && (anchor.rhs - rhs).abs() < 1e-9;
    let max_k = out
        .reports
        .iter()
        .filter_map(|r| r.details.get("k").and_then(|v| v.as_u64()))
        .max()
        .unwrap_or(0);
    ok(
        bad == 0 && anchor_ok && count("main_theorem") >= 1000 && count("theorem_mainp") >= 1000,
        format!(
            "{} main-theorem and {} partition reports, violations {bad}, largest k {max_k}; anchor lhs {:.12} rhs {:.12}",
            count("main_theorem"),
            count("theorem_mainp"),
            anchor.lhs,
            anchor.rhs
        ),
    )
}

fn c12_search_and_bisector() -> Outcome {
    let bodies = [
        ("disk", ConstantWidthBody::new(ConvexCurve::disk(Vec2::ZERO, 0.5).unwrap(), 1e-12).unwrap()),
        ("Reuleaux triangle", reuleaux_polygon(3, 1.0, Vec2::ZERO, 0.0).unwrap()),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, d) in &bodies {
        let s = maximize_triangle_excess(d, 10_000, seed(12, 0)).unwrap();
        pass &= s.value <= d.diameter() + 1e-4;
        notes.push(format!("{name} best {:.6} (diam {:.1}, {} evals)", s.value, d.diameter(), s.evaluations));
    }
    let fam = gen_triangle_family(seed(12, 1), 1000);
    let reports = check_balitskiy_scenario(&fam).unwrap();
    let failed = reports.iter().filter(|r| !r.pass).count();
    pass &= failed == 0 && reports.len() == 1000;
    notes.push(format!("bisector lemma {} triangles, failures {failed}", reports.len()));
    ok(pass, notes.join("; "))
}

fn cli(args: &[&str]) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_normline")).args(args).output().unwrap();
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    o.stdout
}

fn c13_determinism() -> Outcome {
    let cfg = SuiteConfig {
        seed: 42,
        main_theorem: 20,
        theorem_mainp: 10,
        key_lemma: 20,
        balitskiy: 50,
        pipeline: 2,
        pdist_diam: 4,
        search_budget: 100,
        ..SuiteConfig::default()
    };
    let a = run_suite(&SuiteConfig { workers: Some(1), ..cfg.clone() }).unwrap().to_jsonl();
    let b = run_suite(&SuiteConfig { workers: Some(4), ..cfg.clone() }).unwrap().to_jsonl();
    let c = run_suite(&cfg).unwrap().to_jsonl();
    let suite_same = a == b && b == c;

    let dir = std::env::temp_dir().join(format!("normline-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let s3 = 3f64.sqrt();
    let t = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, s3 / 2.0)];
    let m: Vec<Vec2> = (0..3).map(|i| t[i].lerp(t[(i + 1) % 3], 0.5)).collect();
    let c0 = (t[0] + t[1] + t[2]) * (1.0 / 3.0);
    let part = PlanarPartition::from_face_polygons(
        &ConvexCurve::polygon(&t).unwrap(),
        &[
            (vec![t[0], m[0], c0, m[2]], FaceLabel::Body),
            (vec![m[0], t[1], m[1], c0], FaceLabel::Body),
            (vec![c0, m[1], t[2], m[2]], FaceLabel::Body),
        ],
    )
    .unwrap();
    let scene = dir.join("scene.json");
    std::fs::write(
        &scene,
        json!({"items": [{"type": "extension", "partition": part.to_spec()}]}).to_string(),
    )
    .unwrap();
    let scene = scene.to_str().unwrap();
    let svg_same = cli(&["render", scene]) == cli(&["render", scene]);
    let gen = ["--seed", "9", "gen", "--kind", "partition-with-holes", "--k", "6"];
    let gen_same = cli(&gen) == cli(&gen);
    let verify = ["--seed", "42", "verify"];
    let verify_same = cli(&verify) == cli(&verify);
    let _ = std::fs::remove_dir_all(&dir);
    ok(
        suite_same && svg_same && gen_same && verify_same,
        format!("suite (1/4/all workers) {suite_same}, SVG {svg_same}, gen {gen_same}, CLI verify {verify_same}"),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "point-distance anchor", Some(secs(1)), c1_point_anchor),
        criterion(2, "pseudometric axioms", Some(secs(60)), c2_axioms),
        criterion(3, "Minkowski convexity", Some(secs(60)), c3_minkowski),
        criterion(4, "signed integral vanishes", None, c4_signed),
        criterion(5, "pdist versus diameter trichotomy", None, c5_trichotomy),
        criterion(6, "partition identity", None, c6_partition_identity),
        criterion(7, "exact versus adaptive", None, c7_exact_oracle),
        criterion(8, "constant-width constructions", Some(secs(300)), c8_constant_width),
        criterion(9, "normalization and Euler count", None, c9_normalization),
        criterion(10, "extension bookkeeping", None, c10_extension),
        criterion(11, "theorem suites", None, c11_theorems),
        criterion(12, "triangle excess search and bisector lemma", None, c12_search_and_bisector),
        criterion(13, "determinism", None, c13_determinism),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
