use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kss_cli::plot::{svg_canvas, svg_number};
use kss_cli::report::{point_text, VerdictReport};
use kss_cli::spec::parse_rational;
use kss_cli::DomainReport;
use tempfile::TempDir;

const TWO_LINES: &str = r#"{"format_version": 1,
  "ambient": {"kind": "projective_space", "dim": 2},
  "boundary": [{"label": "L1", "prime_degree": "1", "multiplier": "3"},
               {"label": "L2", "prime_degree": "1", "multiplier": "3"}]}"#;

const TWO_CONICS: &str = r#"{"format_version": 1,
  "ambient": {"kind": "projective_space", "dim": 2},
  "boundary": [{"label": "Q1", "prime_degree": "2", "multiplier": "3/2"},
               {"label": "Q2", "prime_degree": "2", "multiplier": "3/2"}]}"#;

const CONIC_LINE: &str = r#"{"format_version": 1,
  "ambient": {"kind": "projective_space", "dim": 2},
  "boundary": [{"label": "Q", "prime_degree": "2", "multiplier": "3/2"},
               {"label": "L", "prime_degree": "1", "multiplier": "3"}]}"#;

const QUADRIC_LINE: &str = r#"{"format_version": 1,
  "ambient": {"kind": "projective_space", "dim": 2},
  "boundary": [{"label": "Q", "prime_degree": "2", "multiplier": "1"},
               {"label": "L", "prime_degree": "1", "multiplier": "1"}]}"#;

const HYPERPLANES_ON_Q3: &str = r#"{"format_version": 1,
  "ambient": {"kind": "quadric", "dim": 3},
  "boundary": [{"label": "H1", "prime_degree": "1", "multiplier": "1"},
               {"label": "H2", "prime_degree": "1", "multiplier": "1"}]}"#;

const BARE_P2: &str = r#"{"format_version": 1, "ambient": {"kind": "projective_space", "dim": 2}, "boundary": []}"#;
const BARE_P3: &str = r#"{"format_version": 1, "ambient": {"kind": "projective_space", "dim": 3}, "boundary": []}"#;
const ONE_CONIC: &str = r#"{"format_version": 1,
  "ambient": {"kind": "projective_space", "dim": 2},
  "boundary": [{"label": "Q", "prime_degree": "2", "multiplier": "3/2"}]}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, content: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, content).unwrap();
        p
    }
}

fn kss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kss")).args(args).output().unwrap()
}

fn kss_ok(args: &[&str]) -> String {
    let out = kss(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "kss {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    kss(args).status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn vertex_strings(vrep: &[Vec<kss_cli::spec::Exact>]) -> Vec<String> {
    vrep.iter().map(|v| point_text(v)).collect()
}

#[test]
fn beta_examples() {
    let ws = Workspace::new();
    let ql = ws.file("ql.json", QUADRIC_LINE);
    assert_eq!(kss_ok(&["beta", p(&ql), "Q"]), "1/2 - 2/3·x + 1/6·y\n");
    assert_eq!(kss_ok(&["beta", p(&ql), "Q", "--at", "0,0"]), "1/2\n");
    assert_eq!(kss_ok(&["beta", p(&ql), "L"]), "2/3·x - 2/3·y\n");
    let p3 = ws.file("p3.json", BARE_P3);
    assert_eq!(kss_ok(&["beta", p(&p3), "external:1"]), "0\n");
    let json = kss_ok(&["beta", p(&ql), "Q", "--at", "1/2,0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["constant"], "1/2");
    assert_eq!(v["coeffs"], serde_json::json!(["-2/3", "1/6"]));
    assert_eq!(v["value"], "1/6");
}

#[test]
fn two_lines_domain_is_a_point_with_mu_zero() {
    let ws = Workspace::new();
    let spec = ws.file("lines.json", TWO_LINES);
    let report = DomainReport::from_json(&kss_ok(&["domain", p(&spec), "--json"])).unwrap();
    assert_eq!(vertex_strings(&report.necessary.vrep), ["(0, 0)"]);
    assert_eq!(report.mu.necessary.to_string(), "0");
    assert!(report.verdict.is_none());
    assert_eq!(kss_ok(&["mu", p(&spec)]), "0\n");
}

#[test]
fn two_conics_certify_gives_the_pentagon() {
    let ws = Workspace::new();
    let spec = ws.file("conics.json", TWO_CONICS);
    let report = DomainReport::from_json(&kss_ok(&["certify", p(&spec), "--json"])).unwrap();
    let pentagon = ["(0, 0)", "(0, 1/2)", "(1/3, 2/3)", "(1/2, 0)", "(2/3, 1/3)"];
    assert_eq!(vertex_strings(&report.necessary.vrep), pentagon);
    assert_eq!(vertex_strings(&report.certified.as_ref().unwrap().vrep), pentagon);
    assert_eq!(report.verdict, Some(VerdictReport::Determined));
    let betas: Vec<&str> = report.beta_forms.iter().map(|b| b.form.text.as_str()).collect();
    assert_eq!(betas, ["1/2 - x + 1/2·y", "1/2 + 1/2·x - y"]);
}

#[test]
fn gap_verdict_exits_zero() {
    let ws = Workspace::new();
    let spec = ws.file("gap.json", HYPERPLANES_ON_Q3);
    let report = DomainReport::from_json(&kss_ok(&["certify", p(&spec), "--json"])).unwrap();
    assert_eq!(report.verdict, Some(VerdictReport::Gap));
    assert!(kss_ok(&["certify", p(&spec)]).contains("verdict: gap"));
    assert_eq!(code(&["mu", p(&spec)]), 0);
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let ws = Workspace::new();
    for (name, text) in [("a", TWO_CONICS), ("b", CONIC_LINE), ("c", HYPERPLANES_ON_Q3)] {
        let spec = ws.file(&format!("{name}.json"), text);
        for cmd in ["domain", "certify"] {
            let first = kss_ok(&[cmd, p(&spec), "--json"]);
            assert_eq!(first, kss_ok(&[cmd, p(&spec), "--json"]));
            assert_eq!(kss_ok(&[cmd, p(&spec)]), kss_ok(&[cmd, p(&spec)]));
            let parsed = DomainReport::from_json(&first).unwrap();
            assert_eq!(parsed.to_json() + "\n", first);
        }
    }
}

#[test]
fn human_and_json_carry_the_same_numbers() {
    let ws = Workspace::new();
    for (name, text) in [("a", TWO_CONICS), ("b", CONIC_LINE), ("c", HYPERPLANES_ON_Q3)] {
        let spec = ws.file(&format!("{name}.json"), text);
        let human = kss_ok(&["certify", p(&spec)]);
        let report = DomainReport::from_json(&kss_ok(&["certify", p(&spec), "--json"])).unwrap();
        let mut expected: Vec<String> = Vec::new();
        expected.extend(report.necessary.hrep.iter().map(|h| format!("    {} >= 0\n", h.text)));
        expected.extend(vertex_strings(&report.necessary.vrep).into_iter().map(|v| format!("    {v}\n")));
        let cert = report.certified.as_ref().unwrap();
        expected.extend(vertex_strings(&cert.vrep).into_iter().map(|v| format!("    {v}\n")));
        expected.extend(cert.anchors.iter().map(|a| format!("    {}  ", point_text(&a.point))));
        expected.extend(report.beta_forms.iter().map(|b| format!("beta({}) = {}\n", b.divisor, b.form.text)));
        expected.push(format!("mu: {}\n", report.mu_text()));
        for line in expected {
            assert!(human.contains(&line), "{name}: missing {line:?} in\n{human}");
        }
        // The text fields are the rendering of the exact coefficient lists.
        for h in &report.necessary.hrep {
            for c in &h.coeffs {
                let r = parse_rational(&c.to_string()).unwrap();
                assert_eq!(r, c.0);
            }
        }
    }
}

#[test]
fn oracle_line() {
    let ws = Workspace::new();
    let spec = ws.file("p2.json", BARE_P2);
    let line = kss_ok(&["oracle", p(&spec), "external:2", "--subdivisions", "1000"]);
    let rest = line.strip_prefix("exact 1/2, numeric 0.500000000, diff ").unwrap();
    let diff: f64 = rest.trim().parse().unwrap();
    assert!(diff < 1e-9);
    let conic = ws.file("conic.json", ONE_CONIC);
    let json = kss_ok(&["oracle", p(&conic), "Q", "--at", "1/3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // level 3 - 3·(1/3) = 2, S = 2 / (2·3) = 1/3
    assert_eq!(v["exact"], "1/3");
    assert!(v["diff"].as_f64().unwrap() < 1e-9);
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    let ql = ws.file("ql.json", QUADRIC_LINE);
    let conic = ws.file("conic.json", ONE_CONIC);
    let bad_json = ws.file("bad.json", "{\"format_version\": 1, ");
    let float = ws.file(
        "float.json",
        &QUADRIC_LINE.replacen("\"multiplier\": \"1\"", "\"multiplier\": 1.0", 1),
    );
    let float_string = ws.file("fs.json", &QUADRIC_LINE.replacen("\"2\"", "\"2.0\"", 1));
    let kind = ws.file("kind.json", &QUADRIC_LINE.replace("projective_space", "grassmannian"));
    let version = ws.file("v2.json", &QUADRIC_LINE.replace("\"format_version\": 1", "\"format_version\": 2"));
    let p0 = ws.file("p0.json", &BARE_P2.replace("\"dim\": 2", "\"dim\": 0"));
    let dup = ws.file("dup.json", &QUADRIC_LINE.replace("\"L\"", "\"Q\""));

    for args in [
        vec!["domain", p(&bad_json)],
        vec!["domain", p(&float)],
        vec!["domain", p(&float_string)],
        vec!["domain", p(&kind)],
        vec!["domain", p(&version)],
        vec!["domain", "/nonexistent/spec.json"],
        vec!["beta", p(&ql), "Z"],
        vec!["beta", p(&ql), "external:x"],
        vec!["beta", p(&ql), "Q", "--at", "1/2,0.5"],
        vec!["plot", p(&ql), "--format", "png"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&args), 2, "{args:?}");
    }
    for args in [
        vec!["plot", p(&conic)],
        vec!["plot", p(&conic), "--format", "tikz"],
        vec!["domain", p(&p0)],
        vec!["domain", p(&dup)],
        vec!["beta", p(&ql), "Q", "--at", "0"],
        vec!["oracle", p(&ql), "Q", "--at", "1,2"],
        vec!["oracle", p(&ql), "Q", "--subdivisions", "7"],
    ] {
        assert_eq!(code(&args), 3, "{args:?}");
    }
    let out = kss(&["plot", p(&conic)]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("kss domain"));
}

#[test]
fn user_anchors_are_checked() {
    let ws = Workspace::new();
    let with = |anchors: &str| {
        HYPERPLANES_ON_Q3.trim_end().trim_end_matches('}').to_string() + ", \"anchors\": " + anchors + "}"
    };
    let midpoint = ws.file(
        "mid.json",
        &with(
            r#"[{"point": ["1/6", "0"], "certificate": {"kind": "convex_combination",
                 "weights": ["1/2", "1/2"],
                 "anchors": [{"point": ["0", "0"], "certificate": {"kind": "axiom_bare_fano"}},
                             {"point": ["1/3", "0"], "certificate": {"kind": "known_interval", "coordinate": 0,
                               "source": {"kind": "quadric_fact", "fact": 2, "param": 3}, "prime_bound": "1/3"}}]}}]"#,
        ),
    );
    let report = DomainReport::from_json(&kss_ok(&["certify", p(&midpoint), "--json"])).unwrap();
    let anchors = &report.certified.unwrap().anchors;
    assert!(anchors.iter().any(|a| point_text(&a.point) == "(1/6, 0)"));

    let false_claim = ws.file(
        "lie.json",
        &with(r#"[{"point": ["1/2", "1/2"], "certificate": {"kind": "lc_calabi_yau"}}]"#),
    );
    assert_eq!(code(&["certify", p(&false_claim)]), 3);
    let unknown_kind = ws.file(
        "unknown.json",
        &with(r#"[{"point": ["0", "0"], "certificate": {"kind": "trust_me"}}]"#),
    );
    assert_eq!(code(&["certify", p(&unknown_kind)]), 2);
}

fn svg_polygon(svg: &str, id: &str) -> Vec<(String, String)> {
    let tag = format!(r#"<polygon id="{id}" points=""#);
    let start = svg.find(&tag).unwrap() + tag.len();
    let end = start + svg[start..].find('"').unwrap();
    let mut pts: Vec<(String, String)> = svg[start..end]
        .split(' ')
        .map(|xy| {
            let (x, y) = xy.split_once(',').unwrap();
            (x.to_string(), y.to_string())
        })
        .collect();
    pts.sort();
    pts
}

#[test]
fn svg_polygon_matches_report_vertices() {
    let ws = Workspace::new();
    for (name, text) in [("conics", TWO_CONICS), ("triangle", CONIC_LINE), ("ql", QUADRIC_LINE)] {
        let spec = ws.file(&format!("{name}.json"), text);
        let report = DomainReport::from_json(&kss_ok(&["certify", p(&spec), "--json"])).unwrap();
        let svg = kss_ok(&["plot", p(&spec), "--format", "svg"]);
        assert!(svg.contains(r#"version="1.1""#));
        let mut expected: Vec<(String, String)> = report
            .necessary
            .vrep
            .iter()
            .map(|v| {
                let (x, y) = svg_canvas(&v[0].0, &v[1].0);
                (svg_number(&x), svg_number(&y))
            })
            .collect();
        expected.sort();
        assert_eq!(svg_polygon(&svg, "necessary"), expected, "{name}");
    }
    let spec = ws.file("conics.json", TWO_CONICS);
    let svg = kss_ok(&["plot", p(&spec)]);
    assert_eq!(svg_polygon(&svg, "necessary").len(), 5);
}

#[test]
fn tikz_triangle_uses_exact_coordinates() {
    let ws = Workspace::new();
    let spec = ws.file("triangle.json", CONIC_LINE);
    let tikz = kss_ok(&["plot", p(&spec), "--format", "tikz"]);
    let path = tikz
        .lines()
        .find(|l| l.contains("-- cycle"))
        .expect("closed polygon path");
    for coord in ["(0,0)", "({1/2},0)", "({2/3},{1/3})"] {
        assert!(path.contains(coord), "{coord} missing from {path}");
    }
    assert_eq!(path.matches("--").count(), 3);
    for guide in ["\\draw[dashed, gray] ({1/2},0)", "\\draw[dashed, gray] ({2/3},0)", "\\draw[dashed, gray] (0,{1/3})"] {
        assert!(tikz.contains(guide), "{guide}");
    }
    assert!(tikz.contains("$\\frac{2}{3}$"));
}

#[test]
fn plot_out_file_matches_stdout_and_gap_draws_both_regions() {
    let ws = Workspace::new();
    let spec = ws.file("conics.json", TWO_CONICS);
    let target = ws.dir.path().join("pentagon.svg");
    assert_eq!(kss_ok(&["plot", p(&spec), "--out", p(&target), "--shade-excluded"]), "");
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(written, kss_ok(&["plot", p(&spec), "--shade-excluded"]));
    assert!(written.contains(r#"id="excluded""#));

    let gap = ws.file("gap.json", HYPERPLANES_ON_Q3);
    let svg = kss_ok(&["plot", p(&gap)]);
    assert_eq!(svg_polygon(&svg, "necessary").len(), 4);
    assert_eq!(svg_polygon(&svg, "certified").len(), 3);
}

#[test]
fn two_lines_plot_is_a_single_point() {
    let ws = Workspace::new();
    let spec = ws.file("lines.json", TWO_LINES);
    let svg = kss_ok(&["plot", p(&spec)]);
    assert!(svg.contains(r#"<circle id="necessary" cx="40" cy="360""#));
    let tikz = kss_ok(&["plot", p(&spec), "--format", "tikz"]);
    assert!(tikz.contains("\\fill[thick] (0,0) circle"));
}

#[test]
fn shipped_specs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let spec = |name: &str| dir.join(name).to_str().unwrap().to_string();
    for (name, verdict) in [
        ("two_lines.json", VerdictReport::Determined),
        ("two_conics.json", VerdictReport::Determined),
        ("conic_line.json", VerdictReport::Determined),
        ("quadric_hyperplane_p4.json", VerdictReport::Determined),
        ("hyperplanes_q3.json", VerdictReport::Gap),
    ] {
        let report = DomainReport::from_json(&kss_ok(&["certify", &spec(name), "--json"])).unwrap();
        assert_eq!(report.verdict, Some(verdict), "{name}");
    }
    assert!(kss_ok(&["oracle", &spec("bare_p2.json"), "external:1"]).starts_with("exact 1, "));
    assert_eq!(code(&["certify", &spec("bare_p2.json")]), 3);
}
