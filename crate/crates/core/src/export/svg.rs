//! Standalone SVG 1.1 output: path diagrams and length-vs-α plots.
//!
//! Output depends only on the scene; all numbers go through fixed-precision
//! formatting. World y points up, so y is negated when written.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use super::format_significant;
use super::sample::sample_path;
use crate::error::{Error, Result};
use crate::geometry::{Configuration, Point};
use crate::paths::{CscPath, PathType};
use crate::sweep::SweepResult;
use crate::target::TargetCircle;

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub position: Point,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PathScene {
    pub paths: Vec<CscPath>,
    pub circles: Vec<TargetCircle>,
    pub start: Option<Configuration>,
    pub markers: Vec<Marker>,
    pub show_turn_circles: bool,
}

/// Length curves over α in `[0, 2π)`, one per sweep.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlphaPlot {
    pub curves: Vec<SweepResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SvgScene {
    Paths(PathScene),
    AlphaPlot(AlphaPlot),
}

impl SvgScene {
    pub fn is_empty(&self) -> bool {
        match self {
            SvgScene::Paths(s) => {
                s.paths.is_empty()
                    && s.circles.is_empty()
                    && s.markers.is_empty()
                    && s.start.is_none()
            }
            SvgScene::AlphaPlot(p) => p.curves.is_empty(),
        }
    }

    pub fn to_svg(&self) -> Result<String> {
        if self.is_empty() {
            return Err(Error::InvalidArgument(
                "cannot render an empty scene".into(),
            ));
        }
        Ok(match self {
            SvgScene::Paths(s) => render_paths(s),
            SvgScene::AlphaPlot(p) => render_alpha_plot(p),
        })
    }
}

pub fn render_svg(scene: &SvgScene, destination: &Path) -> Result<()> {
    let svg = scene.to_svg()?;
    std::fs::write(destination, svg).map_err(|source| Error::Io {
        path: destination.to_path_buf(),
        source,
    })
}

fn style(t: PathType) -> (&'static str, &'static str) {
    match t {
        PathType::Lsl => ("#1f77b4", "none"),
        PathType::Rsl => ("#d62728", "8 4"),
        PathType::Rsr => ("#2ca02c", "2 3"),
        PathType::Lsr => ("#9467bd", "10 3 2 3"),
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .trim_matches(|c| c == '0' || c == '.')
        .is_empty()
    {
        "0".to_string()
    } else {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn header(out: &mut String, min_x: f64, min_y: f64, w: f64, h: f64, px_w: f64) {
    let px_h = px_w * h / w;
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(px_w),
        num(px_h),
        num(min_x),
        num(min_y),
        num(w),
        num(h)
    );
}

#[derive(Default)]
struct Bounds {
    min: Option<(f64, f64)>,
    max: Option<(f64, f64)>,
}

impl Bounds {
    fn add(&mut self, p: Point) {
        let (lx, ly) = self.min.unwrap_or((p.x, p.y));
        let (hx, hy) = self.max.unwrap_or((p.x, p.y));
        self.min = Some((lx.min(p.x), ly.min(p.y)));
        self.max = Some((hx.max(p.x), hy.max(p.y)));
    }

    fn add_circle(&mut self, c: Point, r: f64) {
        self.add(Point::new(c.x - r, c.y - r));
        self.add(Point::new(c.x + r, c.y + r));
    }
}

fn render_paths(scene: &PathScene) -> String {
    let mut bounds = Bounds::default();
    let polylines: Vec<(PathType, Vec<Point>)> = scene
        .paths
        .iter()
        .map(|p| {
            let step = p.radius * 0.02;
            let poly = sample_path(p, &p.start, step).expect("positive step");
            let pts: Vec<Point> = poly.poses.iter().map(|q| q.position()).collect();
            (p.path_type, pts)
        })
        .collect();
    for (_, pts) in &polylines {
        pts.iter().for_each(|&p| bounds.add(p));
    }
    for c in &scene.circles {
        bounds.add_circle(c.center, c.radius);
    }
    if scene.show_turn_circles {
        for p in &scene.paths {
            bounds.add_circle(p.c1, p.radius);
            bounds.add_circle(p.c2, p.radius);
        }
    }
    for m in &scene.markers {
        bounds.add(m.position);
    }
    if let Some(s) = &scene.start {
        bounds.add(s.position());
    }
    let (lx, ly) = bounds.min.unwrap_or((0.0, 0.0));
    let (hx, hy) = bounds.max.unwrap_or((1.0, 1.0));
    let extent = (hx - lx).max(hy - ly).max(1e-9);
    let margin = 0.05 * extent;
    let (w, h) = ((hx - lx) + 2.0 * margin, (hy - ly) + 2.0 * margin);
    let stroke = 0.004 * extent;

    let mut out = String::new();
    header(&mut out, lx - margin, -hy - margin, w, h, 800.0);
    let _ = writeln!(
        out,
        r#"  <g fill="none" stroke-linecap="round" stroke-linejoin="round">"#
    );

    for c in &scene.circles {
        let _ = writeln!(
            out,
            r#"    <circle class="target" cx="{}" cy="{}" r="{}" stroke="black" stroke-width="{}"/>"#,
            num(c.center.x),
            num(-c.center.y),
            num(c.radius),
            num(stroke)
        );
    }
    if scene.show_turn_circles {
        for p in &scene.paths {
            for c in [p.c1, p.c2] {
                let _ = writeln!(
                    out,
                    r##"    <circle class="turn" cx="{}" cy="{}" r="{}" stroke="#999999" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
                    num(c.x),
                    num(-c.y),
                    num(p.radius),
                    num(0.5 * stroke),
                    num(2.0 * stroke),
                    num(2.0 * stroke)
                );
            }
        }
    }
    for (t, pts) in &polylines {
        let (color, dash) = style(*t);
        let coords: Vec<String> = pts
            .iter()
            .map(|p| format!("{},{}", num(p.x), num(-p.y)))
            .collect();
        let dash_attr = if dash == "none" {
            String::new()
        } else {
            let scaled: Vec<String> = dash
                .split(' ')
                .map(|d| num(d.parse::<f64>().unwrap() * stroke))
                .collect();
            format!(r#" stroke-dasharray="{}""#, scaled.join(" "))
        };
        let _ = writeln!(
            out,
            r#"    <polyline class="path {t}" stroke="{color}" stroke-width="{}"{dash_attr} points="{}"/>"#,
            num(stroke),
            coords.join(" ")
        );
    }
    let _ = writeln!(out, "  </g>");

    if let Some(s) = &scene.start {
        let size = 0.03 * extent;
        let d = s.direction();
        let n = d.perp();
        let p = s.position();
        let tip = p + d * size;
        let left = p - d * (0.5 * size) + n * (0.5 * size);
        let right = p - d * (0.5 * size) - n * (0.5 * size);
        let _ = writeln!(
            out,
            r#"  <polygon class="start" fill="black" points="{},{} {},{} {},{}"/>"#,
            num(tip.x),
            num(-tip.y),
            num(left.x),
            num(-left.y),
            num(right.x),
            num(-right.y)
        );
    }
    for m in &scene.markers {
        let _ = writeln!(
            out,
            r#"  <circle class="marker" cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(m.position.x),
            num(-m.position.y),
            num(2.0 * stroke)
        );
        if let Some(label) = &m.label {
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="{}" font-family="sans-serif">{}</text>"#,
                num(m.position.x + 3.0 * stroke),
                num(-m.position.y - 3.0 * stroke),
                num(8.0 * stroke),
                escape(label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

const PLOT_W: f64 = 800.0;
const PLOT_H: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 110.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

fn render_alpha_plot(plot: &AlphaPlot) -> String {
    let lengths = plot
        .curves
        .iter()
        .flat_map(|c| c.samples.iter().filter_map(|s| s.length()));
    let (mut lo, mut hi) = lengths.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| {
        (lo.min(l), hi.max(l))
    });
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    let pad = 0.05 * (hi - lo).max(1e-9);
    let (lo, hi) = (lo - pad, hi + pad);
    let pw = PLOT_W - LEFT - RIGHT;
    let ph = PLOT_H - TOP - BOTTOM;
    let x_of = |a: f64| LEFT + pw * a / TAU;
    let y_of = |l: f64| TOP + ph * (hi - l) / (hi - lo);

    let mut out = String::new();
    header(&mut out, 0.0, 0.0, PLOT_W, PLOT_H, PLOT_W);
    let _ = writeln!(
        out,
        r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        num(LEFT),
        num(TOP),
        num(pw),
        num(ph)
    );
    let _ = writeln!(out, r#"  <g font-family="sans-serif" font-size="12">"#);
    for (i, label) in ["0", "π/2", "π", "3π/2", "2π"].iter().enumerate() {
        let x = x_of(TAU * i as f64 / 4.0);
        let _ = writeln!(
            out,
            r#"    <line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>"#,
            num(x),
            num(TOP + ph),
            num(TOP + ph + 5.0)
        );
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" text-anchor="middle">{label}</text>"#,
            num(x),
            num(TOP + ph + 20.0)
        );
    }
    for i in 0..=4 {
        let l = lo + (hi - lo) * i as f64 / 4.0;
        let y = y_of(l);
        let _ = writeln!(
            out,
            r#"    <line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>"#,
            num(LEFT - 5.0),
            num(y),
            num(LEFT)
        );
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" text-anchor="end">{}</text>"#,
            num(LEFT - 8.0),
            num(y + 4.0),
            format_significant(l, 4)
        );
    }
    let _ = writeln!(
        out,
        r#"    <text x="{}" y="{}" text-anchor="middle">α (rad)</text>"#,
        num(LEFT + pw / 2.0),
        num(PLOT_H - 8.0)
    );
    let _ = writeln!(
        out,
        r#"    <text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">length</text>"#,
        num(TOP + ph / 2.0)
    );
    let _ = writeln!(out, "  </g>");

    for (i, curve) in plot.curves.iter().enumerate() {
        let t = curve.path_type;
        let (color, dash) = style(t);
        let dash_attr = if dash == "none" {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            out,
            r#"  <g class="curve" id="curve-{t}" fill="none" stroke="{color}" stroke-width="1.5"{dash_attr}>"#
        );
        // jumps and infeasible stretches break the curve
        let threshold = std::f64::consts::PI * curve.radius;
        let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut prev: Option<f64> = None;
        for s in &curve.samples {
            match s.length() {
                Some(l) => {
                    let connected = prev.is_some_and(|p| (l - p).abs() <= threshold);
                    if !connected {
                        runs.push(Vec::new());
                    }
                    runs.last_mut().unwrap().push((s.alpha, l));
                    prev = Some(l);
                }
                None => prev = None,
            }
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            let pts: Vec<String> = run
                .iter()
                .map(|&(a, l)| format!("{},{}", num(x_of(a)), num(y_of(l))))
                .collect();
            let _ = writeln!(out, r#"    <polyline points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(out, "  </g>");

        let ly = TOP + 20.0 + 22.0 * i as f64;
        let lx = PLOT_W - RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"  <line class="legend" x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="{color}" stroke-width="1.5"{dash_attr}/>"#,
            num(lx),
            num(lx + 30.0),
            num(ly)
        );
        let _ = writeln!(
            out,
            r#"  <text class="legend" x="{}" y="{}" font-family="sans-serif" font-size="12">{t} ({})</text>"#,
            num(lx + 36.0),
            num(ly + 4.0),
            curve.direction
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::lsl_between;
    use crate::sweep::sweep;
    use crate::target::{length_at_alpha, Rotation};

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn straight_path_single_polyline() {
        let s = Configuration::new(0.0, 0.0, 0.0);
        let p = lsl_between(&s, &Configuration::new(5.0, 0.0, 0.0), 1.0).unwrap();
        let scene = SvgScene::Paths(PathScene {
            paths: vec![p],
            start: Some(s),
            ..Default::default()
        });
        let svg = scene.to_svg().unwrap();
        assert_eq!(count(&svg, "<polyline"), 1);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        // 5 % margin on a 5-unit extent
        assert!(svg.contains(r#"viewBox="-0.25 -0.25 5.5 0.5""#), "{svg}");
    }

    #[test]
    fn full_scene_is_deterministic() {
        let s = Configuration::new(0.0, 0.0, 0.0);
        let c = TargetCircle::new(Point::new(10.0, 5.0), 1.0, Rotation::Clockwise).unwrap();
        let paths: Vec<CscPath> = PathType::ALL
            .iter()
            .map(|&t| length_at_alpha(&s, &c, t, 2.0).unwrap())
            .collect();
        let scene = SvgScene::Paths(PathScene {
            paths,
            circles: vec![c],
            start: Some(s),
            markers: vec![Marker {
                position: c.point_at(2.0),
                label: Some("B <arrival>".into()),
            }],
            show_turn_circles: true,
        });
        let a = scene.to_svg().unwrap();
        assert_eq!(a, scene.to_svg().unwrap());
        assert_eq!(count(&a, "<polyline"), 4);
        assert_eq!(count(&a, r#"class="turn""#), 8);
        assert!(a.contains("B &lt;arrival&gt;"));
        assert!(a.contains("stroke-dasharray"));
    }

    #[test]
    fn alpha_plot_structure() {
        let s = Configuration::new(0.0, 0.0, 0.0);
        let c = TargetCircle::new(Point::new(10.0, 5.0), 1.0, Rotation::Clockwise).unwrap();
        let curves: Vec<SweepResult> = PathType::ALL
            .iter()
            .map(|&t| sweep(&s, &c, t, 512).unwrap())
            .collect();
        // the wrap from the last sample back to the first is never drawn
        let breaks: usize = curves
            .iter()
            .map(|c| {
                c.jumps(std::f64::consts::PI)
                    .iter()
                    .filter(|&&k| k + 1 < c.n)
                    .count()
            })
            .sum();
        let svg = SvgScene::AlphaPlot(AlphaPlot { curves }).to_svg().unwrap();
        assert_eq!(count(&svg, r#"class="curve""#), 4);
        for t in ["LSL", "RSL", "RSR", "LSR"] {
            assert!(svg.contains(&format!(r#"id="curve-{t}""#)));
            assert!(svg.contains(&format!(">{t} (cw)</text>")));
        }
        assert!(breaks > 0);
        assert_eq!(count(&svg, "<polyline"), 4 + breaks);
    }

    #[test]
    fn empty_scene_rejected() {
        assert!(SvgScene::Paths(PathScene::default()).to_svg().is_err());
        assert!(SvgScene::AlphaPlot(AlphaPlot::default()).to_svg().is_err());
    }
}
