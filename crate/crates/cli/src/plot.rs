//! SVG and TikZ drawings of a two-coefficient domain report.
//!
//! SVG canvas: 400 x 400 user units, data point `(x, y)` drawn at
//! `X = 40 + 320·x`, `Y = 360 - 320·y`. TikZ uses the data coordinates
//! themselves, written as exact fractions, under `scale=4`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use kss_core::{integer, Rational};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::CliError;
use crate::report::{DomainReport, VerdictReport};
use crate::spec::Exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PlotFormat {
    Svg,
    Tikz,
}

pub const SVG_ORIGIN: (i64, i64) = (40, 360);
pub const SVG_SCALE: i64 = 320;

/// Exact SVG canvas position of a data point.
pub fn svg_canvas(x: &Rational, y: &Rational) -> (Rational, Rational) {
    (
        integer(SVG_ORIGIN.0) + integer(SVG_SCALE) * x,
        integer(SVG_ORIGIN.1) - integer(SVG_SCALE) * y,
    )
}

/// Decimal with at most three places, trailing zeros removed.
pub fn svg_number(r: &Rational) -> String {
    let s = format!("{:.3}", r.to_f64().unwrap_or(f64::NAN));
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// TikZ coordinate component: integers bare, fractions braced (`{2/3}`).
pub fn tikz_number(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("{{{r}}}")
    }
}

fn tikz_label(r: &Rational) -> String {
    if r.is_integer() {
        format!("${r}$")
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("${sign}\\frac{{{}}}{{{}}}$", r.numer().abs(), r.denom())
    }
}

type Pt = (Rational, Rational);

fn points(vrep: &[Vec<Exact>]) -> Vec<Pt> {
    vrep.iter().map(|v| (v[0].0.clone(), v[1].0.clone())).collect()
}

/// Vertices of a convex polygon in counter-clockwise order, starting from
/// the direction of the positive x-axis as seen from the centroid.
pub fn counter_clockwise(mut pts: Vec<Pt>) -> Vec<Pt> {
    if pts.len() < 3 {
        return pts;
    }
    let n = integer(pts.len() as i64);
    let cx = pts.iter().fold(Rational::zero(), |a, p| a + &p.0) / &n;
    let cy = pts.iter().fold(Rational::zero(), |a, p| a + &p.1) / &n;
    // Lower half-plane (angle in [π, 2π)) sorts after the upper one; within a
    // half-plane, a before b when cross(a, b) > 0.
    let key = |p: &Pt| {
        let (dx, dy) = (&p.0 - &cx, &p.1 - &cy);
        let lower = dy.is_negative() || (dy.is_zero() && dx.is_negative());
        (lower, dx, dy)
    };
    pts.sort_by(|a, b| {
        let (la, ax, ay) = key(a);
        let (lb, bx, by) = key(b);
        la.cmp(&lb).then_with(|| {
            let cross = &ax * &by - &ay * &bx;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts
}

/// Distinct non-zero values among the given coordinates, ascending.
fn guide_values(pts: &[Pt], pick: impl Fn(&Pt) -> &Rational) -> Vec<Rational> {
    let mut v: Vec<Rational> = pts.iter().map(pick).filter(|r| !r.is_zero()).cloned().collect();
    v.sort();
    v.dedup();
    v
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Scene {
    necessary: Vec<Pt>,
    certified: Option<Vec<Pt>>,
    guides_x: Vec<Rational>,
    guides_y: Vec<Rational>,
}

/// Plots exist only for families with exactly two boundary coefficients.
pub fn require_planar(k: usize) -> Result<(), CliError> {
    if k == 2 {
        return Ok(());
    }
    Err(CliError::contract(format!(
        "plotting needs exactly two boundary coefficients, this family has {k}; \
         use `kss domain` for a text or JSON report instead"
    )))
}

fn scene(report: &DomainReport) -> Result<Scene, CliError> {
    require_planar(report.coordinates.len())?;
    let necessary = counter_clockwise(points(&report.necessary.vrep));
    let certified = match (&report.verdict, &report.certified) {
        (Some(VerdictReport::Gap), Some(c)) => Some(counter_clockwise(points(&c.vrep))),
        _ => None,
    };
    let mut all = necessary.clone();
    all.extend(certified.iter().flatten().cloned());
    Ok(Scene {
        guides_x: guide_values(&all, |p| &p.0),
        guides_y: guide_values(&all, |p| &p.1),
        necessary,
        certified,
    })
}

pub fn render(report: &DomainReport, format: PlotFormat, shade_excluded: bool) -> Result<String, CliError> {
    let scene = scene(report)?;
    Ok(match format {
        PlotFormat::Svg => svg(report, &scene, shade_excluded),
        PlotFormat::Tikz => tikz(report, &scene, shade_excluded),
    })
}

fn svg_xy(p: &Pt) -> (String, String) {
    let (x, y) = svg_canvas(&p.0, &p.1);
    (svg_number(&x), svg_number(&y))
}

fn svg_shape(out: &mut String, pts: &[Pt], id: &str, style: &str) {
    match pts {
        [] => {}
        [p] => {
            let (x, y) = svg_xy(p);
            let _ = writeln!(out, r#"  <circle id="{id}" cx="{x}" cy="{y}" r="4" {style}/>"#);
        }
        [a, b] => {
            let ((x1, y1), (x2, y2)) = (svg_xy(a), svg_xy(b));
            let _ = writeln!(
                out,
                r#"  <line id="{id}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#
            );
        }
        _ => {
            let coords: Vec<String> = pts
                .iter()
                .map(|p| {
                    let (x, y) = svg_xy(p);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(out, r#"  <polygon id="{id}" points="{}" {style}/>"#, coords.join(" "));
        }
    }
}

fn svg(report: &DomainReport, scene: &Scene, shade: bool) -> String {
    let mut out = String::new();
    let o = &mut out;
    let _ = writeln!(o, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="400" height="400" viewBox="0 0 400 400">"#
    );
    let _ = writeln!(o, "  <title>{}</title>", xml_escape(&report.family));
    let _ = writeln!(o, "  <desc>format_version {}</desc>", report.format_version);
    let zero = Rational::zero();
    let one = integer(1);
    let (x0, y0) = svg_xy(&(zero.clone(), zero.clone()));
    let (x1, y1) = svg_xy(&(one.clone(), one.clone()));
    if shade {
        let _ = writeln!(
            o,
            r##"  <rect id="excluded" x="{x0}" y="{y1}" width="{SVG_SCALE}" height="{SVG_SCALE}" fill="#d9d9d9"/>"##
        );
    }
    let _ = writeln!(o, r#"  <g id="guides" stroke="gray" stroke-width="1" stroke-dasharray="4 3">"#);
    for g in &scene.guides_x {
        let (x, _) = svg_xy(&(g.clone(), zero.clone()));
        let _ = writeln!(o, r#"    <line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}"/>"#);
    }
    for g in &scene.guides_y {
        let (_, y) = svg_xy(&(zero.clone(), g.clone()));
        let _ = writeln!(o, r#"    <line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}"/>"#);
    }
    let _ = writeln!(o, "  </g>");
    let _ = writeln!(o, r#"  <g id="axes" stroke="black" stroke-width="1.5">"#);
    let _ = writeln!(o, r#"    <line x1="{x0}" y1="{y0}" x2="392" y2="{y0}"/>"#);
    let _ = writeln!(o, r#"    <line x1="{x0}" y1="{y0}" x2="{x0}" y2="8"/>"#);
    let _ = writeln!(o, "  </g>");
    let _ = writeln!(o, r#"  <g id="ticks" font-family="serif" font-size="12">"#);
    for g in &scene.guides_x {
        let (x, _) = svg_xy(&(g.clone(), zero.clone()));
        let _ = writeln!(o, r#"    <text x="{x}" y="376" text-anchor="middle">{g}</text>"#);
    }
    for g in &scene.guides_y {
        let (_, y) = svg_xy(&(zero.clone(), g.clone()));
        let _ = writeln!(o, r#"    <text x="34" y="{y}" text-anchor="end" dominant-baseline="middle">{g}</text>"#);
    }
    let _ = writeln!(o, r#"    <text x="392" y="376" text-anchor="end">x</text>"#);
    let _ = writeln!(o, r#"    <text x="30" y="14" text-anchor="end">y</text>"#);
    let _ = writeln!(o, "  </g>");
    let fill = if shade { "white" } else { "#c6dbef" };
    svg_shape(
        o,
        &scene.necessary,
        "necessary",
        &format!(r##"fill="{fill}" stroke="black" stroke-width="2""##),
    );
    if let Some(c) = &scene.certified {
        svg_shape(o, c, "certified", r##"fill="#6baed6" fill-opacity="0.6" stroke="#08519c" stroke-width="1.5" stroke-dasharray="6 3""##);
    }
    let _ = writeln!(o, r#"  <g id="vertices" fill="black">"#);
    for p in &scene.necessary {
        let (x, y) = svg_xy(p);
        let _ = writeln!(o, r#"    <circle cx="{x}" cy="{y}" r="3"/>"#);
    }
    let _ = writeln!(o, "  </g>");
    let _ = writeln!(o, "</svg>");
    out
}

fn tikz_xy(p: &Pt) -> String {
    format!("({},{})", tikz_number(&p.0), tikz_number(&p.1))
}

fn tikz_shape(out: &mut String, pts: &[Pt], style: &str) {
    match pts {
        [] => {}
        [p] => {
            let _ = writeln!(out, "  \\fill[{style}] {} circle (0.6pt);", tikz_xy(p));
        }
        _ => {
            let path: Vec<String> = pts.iter().map(tikz_xy).collect();
            let close = if pts.len() > 2 { " -- cycle" } else { "" };
            let _ = writeln!(out, "  \\draw[{style}] {}{close};", path.join(" -- "));
        }
    }
}

fn tikz(report: &DomainReport, scene: &Scene, shade: bool) -> String {
    let mut out = String::new();
    let o = &mut out;
    let _ = writeln!(o, "% format_version: {}", report.format_version);
    let _ = writeln!(o, "% family: {}", report.family);
    for c in &report.coordinates {
        let _ = writeln!(o, "% {} = {}", c.name, c.label);
    }
    let _ = writeln!(o, "\\begin{{tikzpicture}}[scale=4]");
    if shade {
        let _ = writeln!(o, "  \\fill[gray!30] (0,0) rectangle (1,1);");
    }
    for g in &scene.guides_x {
        let x = tikz_number(g);
        let _ = writeln!(o, "  \\draw[dashed, gray] ({x},0) -- ({x},1);");
        let _ = writeln!(o, "  \\node[below] at ({x},0) {{{}}};", tikz_label(g));
    }
    for g in &scene.guides_y {
        let y = tikz_number(g);
        let _ = writeln!(o, "  \\draw[dashed, gray] (0,{y}) -- (1,{y});");
        let _ = writeln!(o, "  \\node[left] at (0,{y}) {{{}}};", tikz_label(g));
    }
    let _ = writeln!(o, "  \\draw[->] (0,0) -- (1.1,0) node[right] {{$x$}};");
    let _ = writeln!(o, "  \\draw[->] (0,0) -- (0,1.1) node[above] {{$y$}};");
    let fill = if shade { "white" } else { "blue!15" };
    if scene.necessary.len() > 2 {
        tikz_shape(o, &scene.necessary, &format!("thick, fill={fill}"));
    } else {
        tikz_shape(o, &scene.necessary, "thick");
    }
    if let Some(c) = &scene.certified {
        tikz_shape(o, c, "dashed, fill=blue!40, fill opacity=0.6");
    }
    for p in &scene.necessary {
        let _ = writeln!(o, "  \\fill {} circle (0.4pt);", tikz_xy(p));
    }
    let _ = writeln!(o, "\\end{{tikzpicture}}");
    out
}
