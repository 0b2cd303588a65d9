use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use normline::constant_width::width_report;
use normline::partition::PlanarPartition;
use normline::{ConvexCurve, CurveSpec, FaceLabel, Vec2};
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_normline"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("normline-cli-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&p);
        fs::create_dir_all(&p).unwrap();
        Dir(p)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn first_number(s: &str) -> f64 {
    s.lines().next().unwrap().trim().parse().unwrap()
}

fn tri() -> Vec<Vec2> {
    vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, 3f64.sqrt() / 2.0)]
}

/// Triangle cut into three quadrilaterals meeting at its centroid.
fn tri_partition() -> PlanarPartition {
    let t = tri();
    let c = (t[0] + t[1] + t[2]) * (1.0 / 3.0);
    let m: Vec<Vec2> = (0..3).map(|i| t[i].lerp(t[(i + 1) % 3], 0.5)).collect();
    let faces = vec![
        (vec![t[0], m[0], c, m[2]], FaceLabel::Body),
        (vec![m[0], t[1], m[1], c], FaceLabel::Body),
        (vec![c, m[1], t[2], m[2]], FaceLabel::Body),
    ];
    PlanarPartition::from_face_polygons(&ConvexCurve::polygon(&t).unwrap(), &faces).unwrap()
}

#[test]
fn pdist_of_points() {
    let d = Dir::new("pts");
    let a = d.file("a.json", r#"{"type":"point","at":[0,0]}"#);
    let b = d.file("b.json", r#"{"type":"point","at":[3,4]}"#);
    let o = run(&["pdist", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("10.0"));
}

#[test]
fn pdist_identical_and_concentric() {
    let d = Dir::new("disks");
    let a = d.file("a.json", r#"{"type":"polygon","vertices":[[0,0],[2,0],[1,1.5]]}"#);
    let o = run(&["pdist", &a, &a]);
    assert_eq!(stdout(&o).lines().next(), Some("0.0"));
    let b = d.file("b.json", r#"{"type":"disk","center":[1,1],"radius":1}"#);
    let c = d.file("c.json", r#"{"type":"disk","center":[1,1],"radius":3}"#);
    let o = run(&["pdist", &b, &c]);
    assert_eq!(o.status.code(), Some(0));
    assert!(first_number(&stdout(&o)).abs() <= 1e-8);
}

#[test]
fn pper_against_itself_is_perimeter() {
    let d = Dir::new("pper");
    let a = d.file("a.json", r#"{"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]}"#);
    let o = run(&["pper", &a, &a]);
    assert_eq!(o.status.code(), Some(0));
    assert!((first_number(&stdout(&o)) - 4.0).abs() < 1e-12);
}

#[test]
fn bad_input_exits_2() {
    let d = Dir::new("bad");
    let a = d.file("a.json", r#"{"type":"blob"}"#);
    assert_eq!(run(&["pdist", &a, &a]).status.code(), Some(2));
    assert_eq!(run(&["pdist", "/nonexistent/a.json", &a]).status.code(), Some(2));
}

fn small_suite(d: &Dir) -> String {
    d.file(
        "cfg.json",
        &json!({
            "main_theorem": 4, "theorem_mainp": 3, "key_lemma": 6, "balitskiy": 10,
            "pipeline": 1, "pdist_diam": 3, "search_budget": 60
        })
        .to_string(),
    )
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let d = Dir::new("verify");
    let cfg = small_suite(&d);
    let o = run(&["verify", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", &cfg, "--negative-control"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let d = Dir::new("det");
    let cfg = small_suite(&d);
    let a = run(&["--seed", "42", "verify", &cfg]);
    let b = run(&["--seed", "42", "--workers", "3", "verify", &cfg]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

fn complete_output(path: &str, extra: &[&str]) -> (ConvexCurve, Value) {
    let mut args = vec!["complete", path];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let spec: CurveSpec = serde_json::from_str(stdout(&o).trim()).unwrap();
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    (spec.to_curve().unwrap(), summary)
}

#[test]
fn complete_triangle_and_disk() {
    let d = Dir::new("complete");
    let t = d.file("t.json", &serde_json::to_string(&CurveSpec::Polygon { vertices: tri() }).unwrap());
    for extra in [&["--exact"][..], &[][..]] {
        let (c, s) = complete_output(&t, extra);
        let q = normline::QuadratureSpec::adaptive(1e-10);
        let w = width_report(&c);
        assert!((w.min - 1.0).abs() < 1e-3 && (w.max - 1.0).abs() < 1e-3, "{w:?}");
        assert_eq!(s["contains_input"], Value::Bool(true));
        assert!(c.perimeter(&q).unwrap() > 3.0);
    }
    let disk = r#"{"type":"disk","center":[1,2],"radius":0.5}"#;
    let p = d.file("d.json", disk);
    let o = run(&["complete", &p]);
    let back: CurveSpec = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(back, serde_json::from_str::<CurveSpec>(disk).unwrap());
}

#[test]
fn complete_thin_rectangle() {
    let d = Dir::new("rect");
    let r = d.file("r.json", r#"{"type":"polygon","vertices":[[0,0],[4,0],[4,0.1],[0,0.1]]}"#);
    let (c, s) = complete_output(&r, &["--exact"]);
    let diam = (16.0f64 + 0.01).sqrt();
    let w = width_report(&c);
    assert!((w.min - diam).abs() < 1e-6 && (w.max - diam).abs() < 1e-6, "{w:?}");
    assert_eq!(s["contains_input"], Value::Bool(true));
}

fn figure_scene() -> String {
    json!({"items": [{"type": "extension", "partition": tri_partition().to_spec()}]}).to_string()
}

#[test]
fn render_extension_scene() {
    let d = Dir::new("render");
    let scene = d.file("s.json", &figure_scene());
    let o = run(&["render", &scene]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let group = |class: &str| {
        let start = svg.find(&format!("<g class=\"{class}\"")).unwrap();
        let end = start + svg[start..].find("</g>").unwrap();
        svg[start..end].to_string()
    };
    assert_eq!(group("outer").matches("<path").count(), 1);
    assert_eq!(group("faces").matches("<path").count(), 3);
    assert!(group("segments").matches("<line").count() >= 3);
    assert_eq!(run(&["render", &scene]).stdout, o.stdout);
}

#[test]
fn render_empty_scene() {
    let d = Dir::new("empty");
    let scene = d.file("s.json", r#"{"items":[]}"#);
    let o = run(&["render", &scene, "--canvas", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.contains("</svg>"));
}

#[test]
fn gen_is_valid_and_deterministic() {
    let a = run(&["--seed", "5", "gen", "--kind", "partition-with-holes", "--k", "3"]);
    let b = run(&["--seed", "5", "gen", "--kind", "partition-with-holes", "--k", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s: normline::harness::Scenario = serde_json::from_slice(&a.stdout).unwrap();
    let normline::harness::Payload::PartitionWithHoles { partition, .. } = &s.payload else {
        panic!("wrong kind")
    };
    let p = PlanarPartition::from_spec(partition).unwrap();
    assert!(p.validate().valid);
    assert!(p.body_count() <= 3);
    assert_eq!(run(&["gen", "--kind", "no-such-kind"]).status.code(), Some(2));
}

#[test]
fn gen_output_verifies() {
    let d = Dir::new("genverify");
    for (i, kind) in ["disjoint-bodies", "partition-with-holes", "polygon-in-cw", "triangle-family"]
        .iter()
        .enumerate()
    {
        let o = run(&["--seed", "11", "gen", "--kind", kind]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
        let path = d.file(&format!("s{i}.json"), &stdout(&o));
        let v = run(&["verify", &path]);
        assert_eq!(v.status.code(), Some(0), "{kind}: {}", stdout(&v));
    }
}

#[test]
fn output_flag_writes_file() {
    let d = Dir::new("out");
    let a = d.file("a.json", r#"{"type":"point","at":[0,0]}"#);
    let out = d.0.join("res.txt");
    let o = run(&["--output", out.to_str().unwrap(), "pdist", &a, &a]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(Path::new(&out)).unwrap().starts_with("0.0"));
}
