use serde::Serialize;

use super::LocusError;
use crate::families::critical_lambda;
use crate::geometry::Point;
use crate::linalg::{poly_eval, real_roots};

/// True iff the turn at every vertex of the closed polyline has the same
/// sign and every sample lies on the boundary of the convex hull. The hull
/// test rejects loops (which turn one way throughout) while accepting a
/// convex curve swept several times over, as the loci of periodic families
/// are. Turns smaller than 1e-12 of the adjacent edge lengths count as zero;
/// repeated points are skipped.
pub fn convexity_check(samples: &[Point]) -> bool {
    let pts: Vec<Point> = samples.iter().copied().filter(|p| p.is_finite()).collect();
    let mut edges: Vec<Point> = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        let e = pts[(i + 1) % pts.len()] - pts[i];
        if e.norm() > 0.0 {
            edges.push(e);
        }
    }
    let (mut pos, mut neg) = (false, false);
    for i in 0..edges.len() {
        let (e, f) = (edges[i], edges[(i + 1) % edges.len()]);
        let c = e.cross(f);
        if c.abs() <= 1e-12 * e.norm() * f.norm() {
            continue;
        }
        if c > 0.0 {
            pos = true;
        } else {
            neg = true;
        }
    }
    !(pos && neg) && all_on_hull(&pts)
}

/// Andrew's monotone chain, counter-clockwise, collinear points dropped.
fn convex_hull(pts: &[Point]) -> Vec<Point> {
    let mut p = pts.to_vec();
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && (hull[hull.len() - 1] - hull[hull.len() - 2]).cross(q - hull[hull.len() - 2]) <= 0.0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull
}

/// Every point within 1e-9 of the diameter from the hull boundary.
fn all_on_hull(pts: &[Point]) -> bool {
    let hull = convex_hull(pts);
    if hull.len() < 3 {
        return true;
    }
    let diam = super::diameter(&hull);
    let tol = 1e-9 * diam;
    let edges: Vec<(Point, Point)> = (0..hull.len()).map(|i| (hull[i], hull[(i + 1) % hull.len()])).collect();
    let inside_depth = |q: Point| {
        edges
            .iter()
            .map(|&(a, b)| {
                let e = b - a;
                e.cross(q - a) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    };
    pts.iter().all(|&q| inside_depth(q) <= tol)
}

/// Coefficients of the convexity quintic in λ, highest power first, with
/// `c² = a² − b²`.
pub fn convexity_quintic(a: f64, b: f64) -> [f64; 6] {
    let (a2, b2) = (a * a, b * b);
    let c2 = a2 - b2;
    let (a4, b4) = (a2 * a2, b2 * b2);
    [
        c2.powi(4),
        b2 * (3.0 * a4 - 2.0 * a2 * b2 + 3.0 * b4) * c2 * c2,
        2.0 * a2 * b4 * (a4 + 5.0 * a2 * b2 - 2.0 * b4) * c2,
        2.0 * a4 * b4 * b2 * (a4 + b4),
        -b4 * b4 * a4 * a2 * (11.0 * a2 - 4.0 * b2),
        3.0 * b4 * b4 * b2 * a4 * a4,
    ]
}

/// Upper bound used to select the convexity root among the real roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootBound {
    /// Roots below the billiard caustic parameter `critical_lambda(a, b)`.
    Critical,
    /// Roots below `a` taken literally as a λ value.
    A,
    /// Roots below `a²` (λ carries squared length units).
    ASquared,
    /// Roots below `b²`, the range of admissible confocal caustics.
    BSquared,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityRoot {
    pub lambda_o: f64,
    pub bound: f64,
    pub roots: Vec<f64>,
    /// `|q(λ_o)|` over the largest coefficient magnitude.
    pub residual: f64,
}

/// λ_o for which the conf-II incenter locus is convex when `λ < λ_o`
/// (equivalently `a'² > a² − λ_o`). Selects the largest non-negative root
/// below the billiard parameter; see [`RootBound`] for the other readings.
pub fn convexity_lambda_root(a: f64, b: f64) -> Result<ConvexityRoot, LocusError> {
    convexity_lambda_root_with(a, b, RootBound::Critical)
}

pub fn convexity_lambda_root_with(a: f64, b: f64, bound: RootBound) -> Result<ConvexityRoot, LocusError> {
    let q = convexity_quintic(a, b);
    let limit = match bound {
        RootBound::Critical => critical_lambda(a, b)?,
        RootBound::A => a,
        RootBound::ASquared => a * a,
        RootBound::BSquared => b * b,
    };
    let roots = real_roots(&q);
    let lambda_o = roots
        .iter()
        .copied()
        .filter(|&x| x >= 0.0 && x < limit)
        .fold(None, |best: Option<f64>, x| Some(best.map_or(x, |b| b.max(x))))
        .ok_or(LocusError::NoConvexityRoot)?;
    let scale = q.iter().map(|c| c.abs()).fold(0.0, f64::max);
    Ok(ConvexityRoot { lambda_o, bound: limit, roots, residual: poly_eval(&q, lambda_o).abs() / scale })
}
