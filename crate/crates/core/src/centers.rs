//! Triangle centers indexed by their Kimberling number, and the excentral
//! triangle.
//!
//! Weight-based centers use homogeneous functions of the side lengths
//! `(a, b, c) = (s1, s2, s3)` written for the first vertex; the other two
//! weights follow by cyclic permutation. Trilinear weights are turned into
//! barycentric ones by multiplying with the matching side length.

use serde::Serialize;
use thiserror::Error;

use crate::families::Triangle;
use crate::geometry::{invert_in_circle, GeometryError, Point};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CenterError {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("center X{0} is at infinity for this triangle")]
    PointAtInfinity(u32),
    #[error("unknown center {0:?}")]
    UnknownCenter(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Relative area below which a triangle counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Trilinear,
    Barycentric,
}

/// Named weight functions `f(a, b, c)` for the first vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Weight {
    /// 1
    Unit,
    /// cos A
    Cos,
    /// (a²+b²−c²)(a²−b²+c²), barycentric tan A
    TanBary,
    /// a²(b²+c²) − (b²−c²)²
    NinePointBary,
    /// a²
    ASquared,
    /// b + c − a
    Nagel,
    /// a (b + c − a)
    Mittenpunkt,
    /// b + c
    Spieker,
    /// (b − c)² (b + c − a)
    Feuerbach,
    /// 1 + 2 cos A
    OnePlusTwoCos,
    /// 1 − 2 cos A
    OneMinusTwoCos,
    /// cos B + cos C − cos A
    CosBCMinusA,
    /// a (b + c − a)
    X55,
    /// a / (b + c − a)
    X56,
    /// 1 / (b + c − a)
    X57,
    /// a² / ((b − c)² (b + c − a))
    X59,
    /// cos B + cos C
    CosBC,
}

impl Weight {
    pub fn eval<T: Real>(self, a: T, b: T, c: T) -> T {
        let two = T::from_f64(2.0);
        let cos = |a: T, b: T, c: T| (b * b + c * c - a * a) / (two * b * c);
        match self {
            Weight::Unit => T::one(),
            Weight::Cos => cos(a, b, c),
            Weight::TanBary => (a * a + b * b - c * c) * (a * a - b * b + c * c),
            Weight::NinePointBary => {
                let d = b * b - c * c;
                a * a * (b * b + c * c) - d * d
            }
            Weight::ASquared => a * a,
            Weight::Nagel => b + c - a,
            Weight::Mittenpunkt | Weight::X55 => a * (b + c - a),
            Weight::Spieker => b + c,
            Weight::Feuerbach => (b - c) * (b - c) * (b + c - a),
            Weight::OnePlusTwoCos => T::one() + two * cos(a, b, c),
            Weight::OneMinusTwoCos => T::one() - two * cos(a, b, c),
            Weight::CosBCMinusA => cos(b, c, a) + cos(c, a, b) - cos(a, b, c),
            Weight::X56 => a / (b + c - a),
            Weight::X57 => T::one() / (b + c - a),
            Weight::X59 => a * a / ((b - c) * (b - c) * (b + c - a)),
            Weight::CosBC => cos(b, c, a) + cos(c, a, b),
        }
    }
}

/// Centers defined by a construction on other centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// Inverse of another center in the circumcircle.
    CircumInverse(u32),
    /// `2·X3 − X1`.
    Bevan,
    /// `X3 + (X3 − X1)/3`.
    ExcentralCentroid,
    /// Centroid of the intouch triangle.
    IntouchCentroid,
    /// Nine-point center of the intouch triangle, `(X1 + X65)/2`.
    IntouchNinePoint,
    /// Reflection of X1 in another center.
    IncenterReflection(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Rule {
    Weights { basis: Basis, weight: Weight },
    Construction(Construction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CenterDefinition {
    pub id: u32,
    pub name: &'static str,
    pub rule: Rule,
}

impl CenterDefinition {
    const fn tri(id: u32, name: &'static str, weight: Weight) -> Self {
        CenterDefinition { id, name, rule: Rule::Weights { basis: Basis::Trilinear, weight } }
    }

    const fn bary(id: u32, name: &'static str, weight: Weight) -> Self {
        CenterDefinition { id, name, rule: Rule::Weights { basis: Basis::Barycentric, weight } }
    }

    const fn built(id: u32, name: &'static str, c: Construction) -> Self {
        CenterDefinition { id, name, rule: Rule::Construction(c) }
    }

    pub fn label(&self) -> String {
        format!("X{}", self.id)
    }

    /// Barycentric weights for sides `s`, when the center is weight-based.
    pub fn weights<T: Real>(&self, s: [T; 3]) -> Option<[T; 3]> {
        let Rule::Weights { basis, weight } = self.rule else {
            return None;
        };
        let [a, b, c] = s;
        let mut w = [weight.eval(a, b, c), weight.eval(b, c, a), weight.eval(c, a, b)];
        if basis == Basis::Trilinear {
            for i in 0..3 {
                w[i] *= s[i];
            }
        }
        Some(w)
    }
}

const BUILTIN: [CenterDefinition; 25] = [
    CenterDefinition::tri(1, "incenter", Weight::Unit),
    CenterDefinition::bary(2, "centroid", Weight::Unit),
    CenterDefinition::tri(3, "circumcenter", Weight::Cos),
    CenterDefinition::bary(4, "orthocenter", Weight::TanBary),
    CenterDefinition::bary(5, "nine-point center", Weight::NinePointBary),
    CenterDefinition::bary(6, "symmedian point", Weight::ASquared),
    CenterDefinition::bary(8, "Nagel point", Weight::Nagel),
    CenterDefinition::bary(9, "mittenpunkt", Weight::Mittenpunkt),
    CenterDefinition::bary(10, "Spieker center", Weight::Spieker),
    CenterDefinition::bary(11, "Feuerbach point", Weight::Feuerbach),
    CenterDefinition::tri(35, "X35", Weight::OnePlusTwoCos),
    CenterDefinition::built(36, "inverse of incenter", Construction::CircumInverse(1)),
    CenterDefinition::built(40, "Bevan point", Construction::Bevan),
    CenterDefinition::tri(46, "X46", Weight::CosBCMinusA),
    CenterDefinition::tri(55, "internal similitude center", Weight::X55),
    CenterDefinition::tri(56, "external similitude center", Weight::X56),
    CenterDefinition::tri(57, "X57", Weight::X57),
    CenterDefinition::bary(59, "X59", Weight::X59),
    CenterDefinition::tri(65, "intouch orthocenter", Weight::CosBC),
    CenterDefinition::built(165, "excentral centroid", Construction::ExcentralCentroid),
    CenterDefinition::built(354, "Weill point", Construction::IntouchCentroid),
    CenterDefinition::built(484, "first Evans perspector", Construction::IncenterReflection(36)),
    CenterDefinition::built(942, "intouch nine-point center", Construction::IntouchNinePoint),
    CenterDefinition::built(2077, "inverse of Bevan point", Construction::CircumInverse(40)),
    CenterDefinition::bary(7, "Gergonne point", Weight::X57),
];

/// Built-in centers, ordered by index.
pub fn builtin_centers() -> Vec<CenterDefinition> {
    let mut v = BUILTIN.to_vec();
    v.sort_by_key(|d| d.id);
    v
}

pub fn center_by_id(id: u32) -> Option<CenterDefinition> {
    BUILTIN.iter().copied().find(|d| d.id == id)
}

/// Accepts "X165", "x165" or "165".
pub fn parse_center(s: &str) -> Result<CenterDefinition, CenterError> {
    let t = s.trim();
    let digits = t.strip_prefix('X').or_else(|| t.strip_prefix('x')).unwrap_or(t);
    digits.parse::<u32>().ok().and_then(center_by_id).ok_or_else(|| CenterError::UnknownCenter(s.to_string()))
}

fn check_nondegenerate<T: Real>(tri: &Triangle<T>) -> Result<(), CenterError> {
    let [a, b, c] = tri.sides();
    let diam = a.max(b).max(c).to_f64();
    let area = tri.signed_area().to_f64().abs();
    if !tri.valid || !(diam > 0.0) || !(area > DEGENERACY_TOL * diam * diam) {
        return Err(CenterError::DegenerateTriangle);
    }
    Ok(())
}

fn combine<T: Real>(tri: &Triangle<T>, w: [T; 3], id: u32) -> Result<Point<T>, CenterError> {
    let sum = w[0] + w[1] + w[2];
    let mag = w[0].abs() + w[1].abs() + w[2].abs();
    if !(sum.abs() > mag * T::from_f64(1e-15)) {
        return Err(CenterError::PointAtInfinity(id));
    }
    let p = (tri.p1.scale(w[0]) + tri.p2.scale(w[1]) + tri.p3.scale(w[2])).scale(T::one() / sum);
    if !p.is_finite() {
        return Err(CenterError::PointAtInfinity(id));
    }
    Ok(p)
}

pub fn circumcenter<T: Real>(tri: &Triangle<T>) -> Result<Point<T>, CenterError> {
    check_nondegenerate(tri)?;
    let (a, b, c) = (tri.p1, tri.p2, tri.p3);
    let two = T::from_f64(2.0);
    let d = two * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let (na, nb, nc) = (a.norm2(), b.norm2(), c.norm2());
    let ux = (na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y)) / d;
    let uy = (na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x)) / d;
    Ok(Point::new(ux, uy))
}

pub fn incenter<T: Real>(tri: &Triangle<T>) -> Result<Point<T>, CenterError> {
    check_nondegenerate(tri)?;
    combine(tri, tri.sides(), 1)
}

/// Contact points of the incircle, opposite P1, P2, P3.
pub fn intouch<T: Real>(tri: &Triangle<T>) -> Result<[Point<T>; 3], CenterError> {
    check_nondegenerate(tri)?;
    let [a, b, c] = tri.sides();
    let s = (a + b + c) * T::from_f64(0.5);
    let (p1, p2, p3) = (tri.p1, tri.p2, tri.p3);
    Ok([p2 + (p3 - p2).scale((s - b) / a), p3 + (p1 - p3).scale((s - c) / b), p1 + (p2 - p1).scale((s - a) / c)])
}

/// `2·X3 − X1`.
pub fn bevan_point<T: Real>(tri: &Triangle<T>) -> Result<Point<T>, CenterError> {
    let x3 = circumcenter(tri)?;
    let x1 = incenter(tri)?;
    Ok(x3.scale(T::from_f64(2.0)) - x1)
}

/// `X3 + (X3 − X1)/3`.
pub fn excentral_centroid<T: Real>(tri: &Triangle<T>) -> Result<Point<T>, CenterError> {
    let x3 = circumcenter(tri)?;
    let x1 = incenter(tri)?;
    Ok(x3 + (x3 - x1).scale(T::one() / T::from_f64(3.0)))
}

/// Evaluates a center on a triangle.
pub fn center<T: Real>(tri: &Triangle<T>, def: &CenterDefinition) -> Result<Point<T>, CenterError> {
    check_nondegenerate(tri)?;
    match def.rule {
        Rule::Weights { .. } => {
            let w = def.weights(tri.sides()).expect("weight rule");
            combine(tri, w, def.id)
        }
        Rule::Construction(c) => construct(tri, c, def.id),
    }
}

fn by_id<T: Real>(tri: &Triangle<T>, id: u32) -> Result<Point<T>, CenterError> {
    let def = center_by_id(id).ok_or_else(|| CenterError::UnknownCenter(format!("X{id}")))?;
    center(tri, &def)
}

fn construct<T: Real>(tri: &Triangle<T>, c: Construction, id: u32) -> Result<Point<T>, CenterError> {
    let half = T::from_f64(0.5);
    match c {
        Construction::CircumInverse(k) => {
            let o = circumcenter(tri)?;
            let r = o.dist(tri.p1);
            let p = by_id(tri, k)?;
            invert_in_circle(p, o, r).map_err(|_| CenterError::PointAtInfinity(id))
        }
        Construction::Bevan => bevan_point(tri),
        Construction::ExcentralCentroid => excentral_centroid(tri),
        Construction::IntouchCentroid => {
            let [a, b, c] = intouch(tri)?;
            Ok((a + b + c).scale(T::one() / T::from_f64(3.0)))
        }
        Construction::IntouchNinePoint => {
            let x1 = incenter(tri)?;
            let x65 = by_id(tri, 65)?;
            Ok((x1 + x65).scale(half))
        }
        Construction::IncenterReflection(k) => {
            let x1 = incenter(tri)?;
            let p = by_id(tri, k)?;
            Ok(p.scale(T::from_f64(2.0)) - x1)
        }
    }
}

/// Excenters opposite P1, P2, P3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcentralTriangle<T = f64> {
    pub p1p: Point<T>,
    pub p2p: Point<T>,
    pub p3p: Point<T>,
}

impl<T: Real> ExcentralTriangle<T> {
    pub fn get(&self, i: usize) -> Point<T> {
        match i {
            1 => self.p1p,
            2 => self.p2p,
            3 => self.p3p,
            _ => panic!("excenter index must be 1, 2 or 3"),
        }
    }

    pub fn as_triangle(&self) -> Triangle<T> {
        Triangle::new(self.p1p, self.p2p, self.p3p, 0.0)
    }
}

pub fn excenters<T: Real>(tri: &Triangle<T>) -> Result<ExcentralTriangle<T>, CenterError> {
    check_nondegenerate(tri)?;
    let s = tri.sides();
    let one = |i: usize| {
        let mut w = s;
        w[i] = -w[i];
        combine(tri, w, 0)
    };
    Ok(ExcentralTriangle { p1p: one(0)?, p2p: one(1)?, p3p: one(2)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Line;

    fn t345() -> Triangle {
        Triangle::new(Point::xy(0.0, 0.0), Point::xy(4.0, 0.0), Point::xy(0.0, 3.0), 0.0)
    }

    fn scalene() -> Triangle {
        Triangle::new(Point::xy(-0.3, 0.1), Point::xy(2.2, -0.4), Point::xy(0.9, 1.7), 0.0)
    }

    fn equilateral() -> Triangle {
        let h = 3f64.sqrt() / 2.0;
        Triangle::new(Point::xy(1.0, 0.0), Point::xy(-0.5, h), Point::xy(-0.5, -h), 0.0)
    }

    fn x(tri: &Triangle, id: u32) -> Point {
        center(tri, &center_by_id(id).unwrap()).unwrap()
    }

    #[test]
    fn right_triangle_examples() {
        let t = t345();
        assert!(x(&t, 1).dist(Point::xy(1.0, 1.0)) < 1e-15);
        assert!(x(&t, 2).dist(Point::xy(4.0 / 3.0, 1.0)) < 1e-15);
        let e = excenters(&t).unwrap();
        assert!(e.p1p.dist(Point::xy(6.0, 6.0)) < 1e-14);
        assert!(x(&t, 40).dist(Point::xy(3.0, 2.0)) < 1e-14);
        assert!(x(&t, 165).dist(Point::xy(7.0 / 3.0, 5.0 / 3.0)) < 1e-14);
        assert!(x(&t, 3).dist(Point::xy(2.0, 1.5)) < 1e-14);
    }

    #[test]
    fn equilateral_collapses_to_centroid() {
        let t = equilateral();
        for d in builtin_centers() {
            if d.id == 59 || d.id == 11 {
                // undefined or equal to the centroid only in the limit
                continue;
            }
            let p = center(&t, &d);
            match (d.id, p) {
                (36 | 2077 | 484, Err(_)) => {}
                (_, Ok(p)) => assert!(p.norm() < 1e-12, "X{} = {p:?}", d.id),
                (_, Err(e)) => panic!("X{}: {e}", d.id),
            }
        }
        let e = excenters(&t).unwrap();
        let g = (e.p1p + e.p2p + e.p3p).scale(1.0 / 3.0);
        assert!(g.norm() < 1e-14);
        assert!((e.p1p.dist(e.p2p) - e.p2p.dist(e.p3p)).abs() < 1e-13);
    }

    #[test]
    fn incenter_is_on_bisectors() {
        let t = scalene();
        let i = x(&t, 1);
        let sides = [Line::through(t.p2, t.p3).unwrap(), Line::through(t.p1, t.p3).unwrap(), Line::through(t.p1, t.p2).unwrap()];
        let d: Vec<f64> = sides.iter().map(|l| l.distance(i)).collect();
        assert!((d[0] - d[1]).abs() < 1e-14 && (d[1] - d[2]).abs() < 1e-14);
    }

    #[test]
    fn circumcenter_equidistant_and_trilinear_path_agrees() {
        let t = scalene();
        let o = circumcenter(&t).unwrap();
        let w = x(&t, 3);
        assert!(o.dist(w) < 1e-13);
        assert!((o.dist(t.p1) - o.dist(t.p2)).abs() < 1e-14);
    }

    #[test]
    fn orthocenter_on_altitudes() {
        let t = scalene();
        let h = x(&t, 4);
        assert!((h - t.p1).dot(t.p3 - t.p2).abs() < 1e-13);
        assert!((h - t.p2).dot(t.p3 - t.p1).abs() < 1e-13);
        // Euler line ratios
        let (g, o, n) = (x(&t, 2), x(&t, 3), x(&t, 5));
        assert!(h.dist(g.scale(3.0) - o.scale(2.0)) < 1e-13);
        assert!(n.dist((o + h).scale(0.5)) < 1e-13);
    }

    #[test]
    fn mittenpunkt_concurrence() {
        let t = scalene();
        let e = excenters(&t).unwrap();
        let m = x(&t, 9);
        let mids = [(t.p2 + t.p3).scale(0.5), (t.p1 + t.p3).scale(0.5), (t.p1 + t.p2).scale(0.5)];
        for (ex, mid) in [e.p1p, e.p2p, e.p3p].into_iter().zip(mids) {
            assert!(Line::through(ex, mid).unwrap().distance(m) < 1e-13);
        }
    }

    #[test]
    fn symmedian_distances_proportional_to_sides() {
        let t = scalene();
        let k = x(&t, 6);
        let s = t.sides();
        let l = [Line::through(t.p2, t.p3).unwrap(), Line::through(t.p1, t.p3).unwrap(), Line::through(t.p1, t.p2).unwrap()];
        let r: Vec<f64> = (0..3).map(|i| l[i].distance(k) / s[i]).collect();
        assert!((r[0] - r[1]).abs() < 1e-14 && (r[1] - r[2]).abs() < 1e-14);
    }

    #[test]
    fn nagel_spieker_feuerbach() {
        let t = scalene();
        let (i, g) = (x(&t, 1), x(&t, 2));
        let n = x(&t, 8);
        assert!(n.dist(g.scale(3.0) - i.scale(2.0)) < 1e-13);
        assert!(x(&t, 10).dist((i + n).scale(0.5)) < 1e-13);
        let f = x(&t, 11);
        let r = Line::through(t.p1, t.p2).unwrap().distance(i);
        let o = circumcenter(&t).unwrap();
        let big_r = o.dist(t.p1);
        assert!((f.dist(i) - r).abs() < 1e-13);
        assert!((f.dist(x(&t, 5)) - big_r / 2.0).abs() < 1e-13);
    }

    #[test]
    fn similitude_centers() {
        let t = scalene();
        let i = x(&t, 1);
        let o = circumcenter(&t).unwrap();
        let big_r = o.dist(t.p1);
        let r = Line::through(t.p1, t.p2).unwrap().distance(i);
        let internal = (i.scale(big_r) + o.scale(r)).scale(1.0 / (big_r + r));
        let external = (i.scale(big_r) - o.scale(r)).scale(1.0 / (big_r - r));
        assert!(x(&t, 55).dist(internal) < 1e-13);
        assert!(x(&t, 56).dist(external) < 1e-13);
    }

    #[test]
    fn isogonal_pairs() {
        // X57 is the isogonal conjugate of X9, X59 of X11
        let t = scalene();
        let s = t.sides();
        let sq = [s[0] * s[0], s[1] * s[1], s[2] * s[2]];
        let conj = |id: u32| {
            let w = center_by_id(id).unwrap().weights(s).unwrap();
            let v = [sq[0] / w[0], sq[1] / w[1], sq[2] / w[2]];
            combine(&t, v, 0).unwrap()
        };
        assert!(conj(9).dist(x(&t, 57)) < 1e-12);
        assert!(conj(11).dist(x(&t, 59)) < 1e-10);
    }

    #[test]
    fn intouch_orthocenter_is_x65() {
        let t = scalene();
        let [a, b, c] = intouch(&t).unwrap();
        let it = Triangle::new(a, b, c, 0.0);
        let h = x(&it, 4);
        assert!(h.dist(x(&t, 65)) < 1e-12);
        let n = x(&it, 5);
        assert!(n.dist(x(&t, 942)) < 1e-12);
        assert!(x(&it, 2).dist(x(&t, 354)) < 1e-14);
    }

    #[test]
    fn x35_x36_trilinears_agree_with_constructions() {
        let t = scalene();
        let s = t.sides();
        let c = |id: u32| center(&t, &center_by_id(id).unwrap()).unwrap();
        let w36 = CenterDefinition::tri(0, "", Weight::OneMinusTwoCos).weights(s).unwrap();
        assert!(combine(&t, w36, 0).unwrap().dist(c(36)) < 1e-12);
        let l = Line::through(c(1), c(3)).unwrap();
        assert!(l.distance(c(35)) < 1e-12 && l.distance(c(36)) < 1e-12);
        // barycentric form a²(b²+bc+c²−a²)
        let [a, b, cc] = s;
        let f = |a: f64, b: f64, c: f64| a * a * (b * b + b * c + c * c - a * a);
        let w35 = [f(a, b, cc), f(b, cc, a), f(cc, a, b)];
        assert!(combine(&t, w35, 0).unwrap().dist(c(35)) < 1e-12);
    }

    #[test]
    fn x40_x165_direct_constructions() {
        let t = scalene();
        let e = excenters(&t).unwrap().as_triangle();
        assert!(circumcenter(&e).unwrap().dist(x(&t, 40)) < 1e-12);
        assert!(x(&e, 2).dist(x(&t, 165)) < 1e-13);
        // orthocenter of the excentral triangle is X1
        assert!(x(&e, 4).dist(x(&t, 1)) < 1e-12);
    }

    #[test]
    fn excentral_side_passes_through_vertex_perpendicular_to_bisector() {
        let t = scalene();
        let e = excenters(&t).unwrap();
        let i = x(&t, 1);
        // side P2'P3' passes through P1, perpendicular to the bisector P1 X1
        for (a, b, v) in [(e.p2p, e.p3p, t.p1), (e.p1p, e.p3p, t.p2), (e.p1p, e.p2p, t.p3)] {
            let side = Line::through(a, b).unwrap();
            assert!(side.distance(v) < 1e-12);
            assert!((b - a).dot(i - v).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_rejected() {
        let t = Triangle::new(Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(2.0, 0.0), 0.0);
        assert_eq!(center(&t, &center_by_id(1).unwrap()), Err(CenterError::DegenerateTriangle));
        assert!(excenters(&t).is_err());
    }

    #[test]
    fn parse_labels() {
        assert_eq!(parse_center("X165").unwrap().id, 165);
        assert_eq!(parse_center("x2").unwrap().id, 2);
        assert_eq!(parse_center("40").unwrap().id, 40);
        assert!(parse_center("X12345").is_err());
    }
}
