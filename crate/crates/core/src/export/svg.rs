//! SVG pictures of the affine chart `{x₁ + x₂ + x₃ = 1}` for `m = 3`.
//!
//! The chart is drawn with `e₁, e₂, e₃` at the corners of a unit
//! equilateral triangle, so the quadric conic of a symmetric form is a
//! circle around the centroid.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::atlas::{self, BoundaryPatch, Chamber};
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::export::json::SymLayer;
use crate::matrix::RatMatrix;
use crate::symmetric::{self, PsefLayer};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;
const CANVAS_WIDTH: f64 = 800.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Palette {
    /// Blue nef cone, red flop chambers, grey orbit.
    Paper,
    Mono,
}

struct Colors {
    nef: &'static str,
    flop: &'static str,
    orbit: &'static str,
    stroke: &'static str,
    conic: &'static str,
    accent: &'static str,
}

impl Palette {
    fn colors(self) -> Colors {
        match self {
            Palette::Paper => Colors {
                nef: "#3b6fd8",
                flop: "#d8453b",
                orbit: "#7f8c99",
                stroke: "#222222",
                conic: "#1a9850",
                accent: "#8e44ad",
            },
            Palette::Mono => Colors {
                nef: "#444444",
                flop: "#888888",
                orbit: "#bbbbbb",
                stroke: "#000000",
                conic: "#000000",
                accent: "#000000",
            },
        }
    }
}

/// Drawing options.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderConfig {
    pub depth: u32,
    /// `[x_min, y_min, x_max, y_max]` in chart coordinates, `y` up.
    pub viewport: [f64; 4],
    pub palette: Palette,
    pub labels: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            depth: 4,
            viewport: [-0.15, -0.38, 1.15, 1.0],
            palette: Palette::Paper,
            labels: false,
        }
    }
}

impl RenderConfig {
    pub fn with_depth(depth: u32) -> Self {
        RenderConfig {
            depth,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let [x0, y0, x1, y1] = self.viewport;
        if self.viewport.iter().any(|v| !v.is_finite()) || x1 <= x0 || y1 <= y0 {
            return Err(Error::InvalidParameters(format!("bad viewport {:?}", self.viewport)));
        }
        Ok(())
    }
}

/// Decimal with 12 significant digits, without exponent or trailing zeros.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let mut out = String::new();
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat('0').take(point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    if out == "0" {
        return out;
    }
    if negative {
        out.insert(0, '-');
    }
    out
}

struct Canvas {
    cfg: RenderConfig,
    scale: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(cfg: &RenderConfig) -> Result<Self> {
        cfg.validate()?;
        let [x0, y0, x1, y1] = cfg.viewport;
        let scale = CANVAS_WIDTH / (x1 - x0);
        Ok(Canvas {
            cfg: cfg.clone(),
            scale,
            height: (y1 - y0) * scale,
            body: String::new(),
        })
    }

    /// Chart point of a class, or `None` at infinity or behind the chart.
    fn chart(&self, v: &[BigRational]) -> Option<(f64, f64)> {
        let sum: BigRational = v.iter().sum();
        if !sum.is_positive() {
            return None;
        }
        let p: Vec<f64> = v.iter().map(|x| (x / &sum).to_f64().unwrap_or(f64::NAN)).collect();
        Some(self.to_canvas(p[1] + 0.5 * p[2], SQRT3_2 * p[2]))
    }

    fn chart_f64(&self, v: &[f64]) -> Option<(f64, f64)> {
        let sum: f64 = v.iter().sum();
        if sum <= 0.0 {
            return None;
        }
        Some(self.to_canvas((v[1] + 0.5 * v[2]) / sum, SQRT3_2 * v[2] / sum))
    }

    fn to_canvas(&self, x: f64, y: f64) -> (f64, f64) {
        let [x0, _, _, y1] = self.cfg.viewport;
        ((x - x0) * self.scale, (y1 - y) * self.scale)
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, opacity: f64, stroke: &str, extra: &str) {
        let points: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", fmt_num(*x), fmt_num(*y))).collect();
        let _ = writeln!(
            self.body,
            r#"    <polygon points="{}" fill="{fill}" fill-opacity="{}" stroke="{stroke}" stroke-width="0.8"{extra}/>"#,
            points.join(" "),
            fmt_num(opacity)
        );
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64, extra: &str) {
        let _ = writeln!(
            self.body,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"{extra}/>"#,
            fmt_num(a.0),
            fmt_num(a.1),
            fmt_num(b.0),
            fmt_num(b.1),
            fmt_num(width)
        );
    }

    fn dot(&mut self, p: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"    <circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            fmt_num(p.0),
            fmt_num(p.1),
            fmt_num(r)
        );
    }

    fn label(&mut self, p: (f64, f64), text: &str) {
        let _ = writeln!(
            self.body,
            r#"    <text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{text}</text>"#,
            fmt_num(p.0),
            fmt_num(p.1)
        );
    }

    /// The conic `xᵀ·Q̂·x = 0` when `Q̂ = α·I + β·J` and the conic is real.
    fn conic(&mut self, q: &RatMatrix, stroke: &str) {
        let diag = q.get(0, 0);
        let off = q.get(0, 1);
        let symmetric = (0..3).all(|r| (0..3).all(|c| q.get(r, c) == if r == c { diag } else { off }));
        let alpha = diag - off;
        if !symmetric || alpha.is_zero() {
            return;
        }
        // on the chart Σx = 1 the conic is Σx² = -β/α
        let sum_sq = -(off / &alpha);
        let r2 = (sum_sq - BigRational::new(1.into(), 3.into())) / BigRational::from_integer(2.into());
        if !r2.is_positive() {
            return;
        }
        let r = r2.to_f64().unwrap_or(0.0).sqrt() * self.scale;
        let c = self.to_canvas(0.5, SQRT3_2 / 3.0);
        let _ = writeln!(
            self.body,
            r#"    <circle cx="{}" cy="{}" r="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
            fmt_num(c.0),
            fmt_num(c.1),
            fmt_num(r)
        );
    }

    fn finish(self, title: &str) -> String {
        let w = fmt_num(CANVAS_WIDTH);
        let h = fmt_num(self.height);
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, "  <title>{title}</title>");
        let _ = writeln!(s, r#"  <defs><clipPath id="viewport"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath></defs>"#);
        let _ = writeln!(s, r##"  <rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);
        let _ = writeln!(s, r#"  <g clip-path="url(#viewport)">"#);
        s.push_str(&self.body);
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(s, "</svg>");
        s
    }
}

fn require_rank_three(sys: &CoxeterSystem) -> Result<()> {
    if sys.rank() != 3 {
        return Err(Error::InvalidParameters(format!(
            "SVG output needs m = 3, got m = {}",
            sys.rank()
        )));
    }
    Ok(())
}

fn rays_rational(rays: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rays.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

fn orbit_opacity(len: usize) -> f64 {
    (0.55 - 0.08 * len as f64).max(0.08)
}

fn draw_chamber(canvas: &mut Canvas, ch: &Chamber, fill: &str, opacity: f64, stroke: &str) {
    let pts: Option<Vec<_>> = rays_rational(&ch.rays).iter().map(|r| canvas.chart(r)).collect();
    if let Some(pts) = pts {
        canvas.polygon(&pts, fill, opacity, stroke, "");
    }
}

/// Chamber tiling to `cfg.depth`, the fundamental domain highlighted and
/// the conic overlaid.
pub fn render_chambers(sys: &CoxeterSystem, cfg: &RenderConfig, budget: u64) -> Result<String> {
    require_rank_three(sys)?;
    let chambers = atlas::enumerate_chambers(sys, cfg.depth, budget)?;
    let colors = cfg.palette.colors();
    let mut canvas = Canvas::new(cfg)?;
    for ch in chambers.iter().filter(|c| c.word.len() > 1) {
        draw_chamber(&mut canvas, ch, colors.orbit, orbit_opacity(ch.word.len()), colors.stroke);
    }
    for ch in atlas::fundamental_domain(sys) {
        let (fill, op) = if ch.word.is_empty() { (colors.nef, 0.75) } else { (colors.flop, 0.6) };
        draw_chamber(&mut canvas, &ch, fill, op, colors.stroke);
    }
    canvas.conic(&sys.quadric_matrix()?, colors.conic);
    if cfg.labels {
        for ch in atlas::fundamental_domain(sys) {
            if let Some(p) = canvas.chart(&ch.interior_point()) {
                let text = if ch.word.is_empty() { "D".to_string() } else { format!("t{}D", ch.word.0[0]) };
                canvas.label(p, &text);
            }
        }
    }
    Ok(canvas.finish("chamber tiling"))
}

/// Boundary cones: segments from each apex to its base ray, or the base
/// rays alone when `n = 2`.
pub fn render_boundary(sys: &CoxeterSystem, cfg: &RenderConfig, budget: u64) -> Result<String> {
    require_rank_three(sys)?;
    let patches = atlas::boundary_patches(sys, cfg.depth, budget)?;
    let chambers = atlas::enumerate_chambers(sys, cfg.depth, budget)?;
    let colors = cfg.palette.colors();
    let mut canvas = Canvas::new(cfg)?;
    for ch in &chambers {
        draw_chamber(&mut canvas, ch, colors.orbit, 0.12, colors.orbit);
    }
    canvas.conic(&sys.quadric_matrix()?, colors.conic);
    for patch in &patches {
        draw_patch(&mut canvas, patch, &colors);
    }
    Ok(canvas.finish("movable cone boundary"))
}

fn draw_patch(canvas: &mut Canvas, patch: &BoundaryPatch, colors: &Colors) {
    let base: Vec<_> = rays_rational(&patch.base_rays).iter().filter_map(|r| canvas.chart(r)).collect();
    if patch.has_apex() {
        let apex: Vec<f64> = patch.apex.iter().map(|x| x.to_f64()).collect();
        if let Some(a) = canvas.chart_f64(&apex) {
            for b in &base {
                canvas.line(a, *b, colors.accent, 1.6, "");
            }
            canvas.dot(a, 2.5, colors.conic);
        }
    }
    for b in base {
        canvas.dot(b, 2.5, colors.accent);
    }
}

/// The symmetric example: the orbit of the quadrilateral `Π`, or the
/// expected pseudoeffective cone with proven segments solid and expected
/// cones dashed.
pub fn render_symmetric(layer: SymLayer, cfg: &RenderConfig, budget: u64) -> Result<String> {
    let sys = symmetric::sym_system();
    let colors = cfg.palette.colors();
    let mut canvas = Canvas::new(cfg)?;
    match layer {
        SymLayer::Movable => {
            for cone in symmetric::sym_enumerate(cfg.depth, budget)? {
                let pts: Option<Vec<_>> = rays_rational(&cone.rays).iter().map(|r| canvas.chart(r)).collect();
                let Some(pts) = pts else { continue };
                let (fill, op) = if cone.word.is_empty() {
                    (colors.flop, 0.6)
                } else {
                    (colors.orbit, orbit_opacity(cone.word.word_length() as usize))
                };
                canvas.polygon(&pts, fill, op, colors.stroke, "");
            }
            canvas.conic(&sys.quadric_matrix()?, colors.conic);
        }
        SymLayer::Psef => {
            canvas.conic(&sys.quadric_matrix()?, colors.conic);
            let patches = symmetric::psef_patches(cfg.depth, budget)?;
            for p in patches.iter().filter(|p| p.layer == PsefLayer::Expected) {
                let pts: Option<Vec<_>> = rays_rational(&p.vertices).iter().map(|r| canvas.chart(r)).collect();
                if let Some(pts) = pts {
                    canvas.polygon(&pts, colors.flop, 0.25, colors.flop, r#" stroke-dasharray="4 3""#);
                }
            }
            for p in patches.iter().filter(|p| p.layer == PsefLayer::Proven) {
                let pts: Option<Vec<_>> = rays_rational(&p.vertices).iter().map(|r| canvas.chart(r)).collect();
                if let Some(pts) = pts {
                    canvas.line(pts[0], pts[1], colors.stroke, 1.6, "");
                }
            }
            if cfg.labels {
                let (d1, d2) = symmetric::d_classes();
                for (name, d) in [("D1", d1), ("D2", d2)] {
                    if let Some(p) = canvas.chart(&rays_rational(&[d])[0]) {
                        canvas.label((p.0, p.1 - 6.0), name);
                    }
                }
            }
        }
    }
    Ok(canvas.finish(match layer {
        SymLayer::Movable => "symmetric movable cone",
        SymLayer::Psef => "expected pseudoeffective cone",
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-2.5), "-2.5");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(123456.789), "123456.789");
        assert_eq!(fmt_num(0.000125), "0.000125");
        assert_eq!(fmt_num(1e13), "10000000000000");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_num(-1e-20), "-0.00000000000000000001");
    }

    #[test]
    fn chambers_svg_is_deterministic() {
        let sys = CoxeterSystem::new(2, 3, true).unwrap();
        let cfg = RenderConfig::with_depth(3);
        let a = render_chambers(&sys, &cfg, 1000).unwrap();
        let b = render_chambers(&sys, &cfg, 1000).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert_eq!(a.matches("<polygon").count(), 22);
        assert!(a.contains("<circle"));
    }

    #[test]
    fn rejects_other_ranks() {
        let sys = CoxeterSystem::new(2, 4, true).unwrap();
        assert!(render_chambers(&sys, &RenderConfig::default(), 1000).is_err());
        let bad = RenderConfig {
            viewport: [0.0, 0.0, f64::NAN, 1.0],
            ..Default::default()
        };
        let sys3 = CoxeterSystem::new(2, 3, true).unwrap();
        assert!(render_chambers(&sys3, &bad, 1000).is_err());
    }

    #[test]
    fn symmetric_layers() {
        let cfg = RenderConfig::with_depth(2);
        let m = render_symmetric(SymLayer::Movable, &cfg, 1000).unwrap();
        assert_eq!(m.matches("<polygon").count(), 10);
        let p = render_symmetric(SymLayer::Psef, &cfg, 1000).unwrap();
        assert!(p.contains("stroke-dasharray"));
    }

    #[test]
    fn boundary_svg() {
        let sys = CoxeterSystem::new(3, 3, true).unwrap();
        let s = render_boundary(&sys, &RenderConfig::with_depth(1), 1000).unwrap();
        assert!(s.contains("<line"));
    }
}
