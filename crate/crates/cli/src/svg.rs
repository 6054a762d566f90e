//! Static SVG scenes. All numbers are printed with fixed precision, so the
//! same scene always renders to the same bytes.

use std::fmt::Write as _;

use poncelet_core::{Conic, ConicKind, Point};

pub const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;

pub const OUTER: &str = "black";
pub const CAUSTIC: &str = "#8b4513";
pub const ENVELOPE: &str = "red";
pub const LOCUS: &str = "green";
pub const TRIANGLE: &str = "#1f4fbf";

/// Closed polyline through `m` points of a real circle or ellipse.
pub fn conic_polyline(c: &Conic, m: usize) -> Option<Vec<Point>> {
    let s = c.shape();
    if !matches!(s.kind, ConicKind::Circle | ConicKind::Ellipse) {
        return None;
    }
    let (ctr, (ax, bx), rot) = (s.center?, s.semi_axes?, s.rotation.unwrap_or(0.0));
    let (sr, cr) = rot.sin_cos();
    Some(
        (0..m)
            .map(|i| {
                let (st, ct) = (std::f64::consts::TAU * i as f64 / m as f64).sin_cos();
                let (x, y) = (ax * ct, bx * st);
                Point::xy(ctr.x + cr * x - sr * y, ctr.y + sr * x + cr * y)
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub title: String,
    pub outer: Option<Vec<Point>>,
    pub caustics: Vec<Vec<Point>>,
    pub triangle: Option<[Point; 3]>,
    pub envelope: Option<Vec<Point>>,
    pub envelope_point: Option<Point>,
    /// Label, runs of valid samples, whether the single run is closed.
    pub loci: Vec<(String, Vec<Vec<Point>>, bool)>,
}

/// World-to-pixel map: `px = (x − x0)·k`, `py = (y1 − y)·k`.
#[derive(Debug, Clone, Copy)]
pub struct Viewport {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub k: f64,
}

impl Viewport {
    fn fit<'a>(points: impl Iterator<Item = &'a Point>) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points.filter(|p| p.is_finite()) {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        if x0.partial_cmp(&x1).is_none_or(|o| o.is_gt()) {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let pad = MARGIN * (x1 - x0).max(y1 - y0).max(1e-9);
        let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
        Viewport { x0, x1, y0, y1, k: WIDTH / (x1 - x0) }
    }

    pub fn height(&self) -> f64 {
        (self.y1 - self.y0) * self.k
    }

    pub fn map(&self, p: Point) -> (f64, f64) {
        ((p.x - self.x0) * self.k, (self.y1 - p.y) * self.k)
    }
}

fn points_attr(vp: &Viewport, pts: &[Point]) -> String {
    let mut s = String::new();
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = vp.map(*p);
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{x:.3},{y:.3}").expect("string write");
    }
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;").replace("--", "- -")
}

impl Scene {
    pub fn new(title: String) -> Self {
        Scene { title, ..Default::default() }
    }

    pub fn viewport(&self) -> Viewport {
        let mut all: Vec<&Point> = Vec::new();
        all.extend(self.outer.iter().flatten());
        all.extend(self.caustics.iter().flatten());
        all.extend(self.triangle.iter().flatten());
        all.extend(self.envelope.iter().flatten());
        all.extend(self.envelope_point.iter());
        all.extend(self.loci.iter().flat_map(|l| l.1.iter().flatten()));
        Viewport::fit(all.into_iter())
    }

    pub fn render(&self) -> String {
        let vp = self.viewport();
        let h = vp.height();
        let mut s = String::new();
        let w = |s: &mut String, line: String| {
            s.push_str(&line);
            s.push('\n');
        };
        w(&mut s, r#"<?xml version="1.0" encoding="UTF-8"?>"#.into());
        w(
            &mut s,
            format!(
                "<!-- {}\n     viewport: x in [{:.6}, {:.6}], y in [{:.6}, {:.6}] (world units)\n     \
                 mapped to {WIDTH:.0} x {h:.3} px: px = (x - {:.6}) * {:.6}, py = ({:.6} - y) * {:.6}; y axis up -->",
                escape(&self.title),
                vp.x0,
                vp.x1,
                vp.y0,
                vp.y1,
                vp.x0,
                vp.k,
                vp.y1,
                vp.k
            ),
        );
        w(
            &mut s,
            format!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{h:.3}" viewBox="0 0 {WIDTH:.0} {h:.3}">"#
            ),
        );
        w(&mut s, r#"<rect width="100%" height="100%" fill="white"/>"#.to_string());
        let poly = |closed: bool| if closed { "polygon" } else { "polyline" };
        if let Some(o) = &self.outer {
            w(&mut s, format!(r#"<polygon class="outer" fill="none" stroke="{OUTER}" stroke-width="1.5" points="{}"/>"#, points_attr(&vp, o)));
        }
        for c in &self.caustics {
            w(&mut s, format!(r#"<polygon class="caustic" fill="none" stroke="{CAUSTIC}" stroke-width="1.2" points="{}"/>"#, points_attr(&vp, c)));
        }
        if let Some(e) = &self.envelope {
            w(
                &mut s,
                format!(
                    r#"<polygon class="envelope" fill="none" stroke="{ENVELOPE}" stroke-width="1.2" stroke-dasharray="6 4" points="{}"/>"#,
                    points_attr(&vp, e)
                ),
            );
        }
        if let Some(p) = self.envelope_point {
            let (x, y) = vp.map(p);
            w(&mut s, format!(r#"<circle class="envelope" cx="{x:.3}" cy="{y:.3}" r="3.000" fill="{ENVELOPE}"/>"#));
        }
        if let Some(t) = &self.triangle {
            w(&mut s, format!(r#"<polygon class="triangle" fill="none" stroke="{TRIANGLE}" stroke-width="1.2" points="{}"/>"#, points_attr(&vp, t)));
        }
        for (label, runs, closed) in &self.loci {
            for run in runs {
                w(
                    &mut s,
                    format!(
                        r#"<{} class="locus" data-tracked="{}" fill="none" stroke="{LOCUS}" stroke-width="1.2" points="{}"/>"#,
                        poly(*closed && runs.len() == 1),
                        escape(label),
                        points_attr(&vp, run)
                    ),
                );
            }
        }
        w(&mut s, "</svg>".into());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viewport_maps_corners() {
        let sc = Scene { outer: conic_polyline(&Conic::circle(Point::xy(0.0, 0.0), 1.0), 4), ..Default::default() };
        let vp = sc.viewport();
        let (x, y) = vp.map(Point::xy(-1.1, 1.1));
        assert!(x.abs() < 1e-9 && y.abs() < 1e-9);
        assert!((vp.height() - WIDTH).abs() < 1e-9);
    }

    #[test]
    fn empty_scene_renders() {
        let s = Scene::new("x".into()).render();
        assert!(s.starts_with("<?xml") && s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn hyperbola_has_no_polyline() {
        let h = Conic::new([1.0, 0.0, -1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(conic_polyline(&h, 8).is_none());
    }
}
