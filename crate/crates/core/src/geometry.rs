//! Planar primitives: points, lines, conics in implicit form, circle
//! pencils, tangents from a point, circle inversion and limiting points.
//!
//! Most types are generic over [`Real`] so the same construction code runs
//! in `f64` and in double-double precision. The default parameter is `f64`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("all conic coefficients vanish")]
    ZeroConic,
    #[error("pencil member at u = {0} has vanishing coefficients")]
    DegeneratePencilMember(f64),
    #[error("point lies on the conic: only one tangent")]
    TangentFromBoundary,
    #[error("point lies inside the conic: no real tangent")]
    NoRealTangent,
    #[error("conic is not a circle")]
    NotACircle,
    #[error("conic is not a real ellipse or circle")]
    NotAnEllipse,
    #[error("cannot invert the center of the circle")]
    InversionOfCenter,
    #[error("circles intersect: limiting points are complex")]
    ComplexLimitingPoints,
    #[error("concentric circles have no radical axis")]
    ConcentricPencil,
    #[error("the two points coincide")]
    CoincidentPoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn from_f64(p: Point<f64>) -> Self {
        Point::new(T::from_f64(p.x), T::from_f64(p.y))
    }

    pub fn to_f64(self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm2().sqrt()
    }

    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Rotation by +90 degrees.
    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    pub fn scale(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Point<f64> {
    pub fn xy(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

impl<T: Real> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Neg for Point<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

impl<T: Real> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

/// `a x + b y + c = 0` with `a² + b² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> Line<T> {
    /// Normalizes `(a, b)` to unit length. Returns `None` when both vanish.
    pub fn new(a: T, b: T, c: T) -> Option<Self> {
        let n = (a * a + b * b).sqrt();
        if !(n > T::zero()) {
            return None;
        }
        Some(Line { a: a / n, b: b / n, c: c / n })
    }

    pub fn through(p: Point<T>, q: Point<T>) -> Result<Self, GeometryError> {
        let d = q - p;
        Line::new(-d.y, d.x, d.y * p.x - d.x * p.y).ok_or(GeometryError::CoincidentPoints)
    }

    pub fn signed_distance(&self, p: Point<T>) -> T {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn distance(&self, p: Point<T>) -> T {
        self.signed_distance(p).abs()
    }

    /// Foot of the perpendicular from the origin.
    pub fn foot(&self) -> Point<T> {
        Point::new(-self.c * self.a, -self.c * self.b)
    }

    pub fn direction(&self) -> Point<T> {
        Point::new(-self.b, self.a)
    }

    /// Intersection with another line, `None` when parallel.
    pub fn intersect(&self, o: &Line<T>) -> Option<Point<T>> {
        let det = self.a * o.b - self.b * o.a;
        if det.abs().to_f64() <= 1e-300 {
            return None;
        }
        let x = (self.b * o.c - self.c * o.b) / det;
        let y = (self.c * o.a - self.a * o.c) / det;
        Some(Point::new(x, y))
    }

    pub fn to_f64(self) -> Line<f64> {
        Line { a: self.a.to_f64(), b: self.b.to_f64(), c: self.c.to_f64() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    /// A real point (two conjugate imaginary lines).
    Point,
    Circle,
    Ellipse,
    /// An ellipse with no real points.
    Imaginary,
    Parabola,
    Hyperbola,
    /// Line pair, parallel pair or double line.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicShape {
    pub kind: ConicKind,
    pub center: Option<Point>,
    /// `(major, minor)` for real ellipses and circles.
    pub semi_axes: Option<(f64, f64)>,
    /// Angle of the major axis from +x, radians in `(-π/2, π/2]`.
    pub rotation: Option<f64>,
}

/// `A x² + B xy + C y² + D x + E y + F = 0`, stored unit-normalized with the
/// first nonzero coefficient positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic<T = f64> {
    coeffs: [T; 6],
}

pub const CIRCLE_TOL: f64 = 1e-8;

impl<T: Real> Conic<T> {
    pub fn new(coeffs: [T; 6]) -> Result<Self, GeometryError> {
        let n = coeffs.iter().fold(T::zero(), |s, &c| s + c * c).sqrt();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(GeometryError::ZeroConic);
        }
        let first = coeffs.iter().copied().find(|c| *c != T::zero()).unwrap_or(T::one());
        let s = if first < T::zero() { -n } else { n };
        Ok(Conic { coeffs: coeffs.map(|c| c / s) })
    }

    pub fn circle(center: Point<T>, radius: T) -> Self {
        let two = T::from_f64(2.0);
        Conic::new([
            T::one(),
            T::zero(),
            T::one(),
            -two * center.x,
            -two * center.y,
            center.norm2() - radius * radius,
        ])
        .expect("monic circle is never the zero conic")
    }

    /// Axis-parallel ellipse `((x-cx)/a)² + ((y-cy)/b)² = 1`.
    pub fn ellipse(center: Point<T>, a: T, b: T) -> Self {
        let ia = T::one() / (a * a);
        let ib = T::one() / (b * b);
        let two = T::from_f64(2.0);
        Conic::new([
            ia,
            T::zero(),
            ib,
            -two * center.x * ia,
            -two * center.y * ib,
            center.x * center.x * ia + center.y * center.y * ib - T::one(),
        ])
        .expect("ellipse is never the zero conic")
    }

    pub fn coeffs(&self) -> [T; 6] {
        self.coeffs
    }

    pub fn eval(&self, p: Point<T>) -> T {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// Symmetric bilinear form of the homogeneous matrix at `(p,1)`, `(q,1)`.
    fn bilinear(&self, p: Point<T>, pw: T, q: Point<T>, qw: T) -> T {
        let [a, b, c, d, e, f] = self.coeffs;
        let h = T::from_f64(0.5);
        a * p.x * q.x
            + h * b * (p.x * q.y + p.y * q.x)
            + c * p.y * q.y
            + h * d * (p.x * qw + pw * q.x)
            + h * e * (p.y * qw + pw * q.y)
            + f * pw * qw
    }

    /// Center of a central conic, `None` for parabolas and parallel pairs.
    pub fn center(&self) -> Option<Point<T>> {
        let [a, b, c, d, e, _] = self.coeffs;
        let two = T::from_f64(2.0);
        let det = T::from_f64(4.0) * a * c - b * b;
        if det.abs().to_f64() <= 1e-14 {
            return None;
        }
        let x = (b * e - two * c * d) / det;
        let y = (b * d - two * a * e) / det;
        Some(Point::new(x, y))
    }

    /// Positive outside a real ellipse, negative inside.
    pub fn outward_value(&self, p: Point<T>) -> T {
        let v = self.eval(p);
        if self.coeffs[0] + self.coeffs[2] < T::zero() {
            -v
        } else {
            v
        }
    }

    /// The two contact points of the tangents from `p`. The first is
    /// counter-clockwise of the ray from the conic center to `p`.
    pub fn tangent_contacts(&self, p: Point<T>) -> Result<(Point<T>, Point<T>), GeometryError> {
        let center = self.center().ok_or(GeometryError::NotAnEllipse)?;
        let [a, b, c, d, e, f] = self.coeffs;
        let h = T::from_f64(0.5);
        // polar line of p
        let la = a * p.x + h * b * p.y + h * d;
        let lb = h * b * p.x + c * p.y + h * e;
        let lc = h * d * p.x + h * e * p.y + f;
        let line = Line::new(la, lb, lc).ok_or(GeometryError::NoRealTangent)?;
        let q0 = line.foot();
        let v = line.direction();
        let qa = self.bilinear(v, T::zero(), v, T::zero());
        let qb = self.bilinear(q0, T::one(), v, T::zero());
        let qc = self.eval(q0);
        let disc = qb * qb - qa * qc;
        let scale = T::one() + p.norm2();
        let tol = T::from_f64(T::EPSILON * 1e3) * scale * scale;
        if disc.abs() <= tol || self.outward_value(p).abs() <= T::from_f64(T::EPSILON * 64.0) * scale {
            return Err(GeometryError::TangentFromBoundary);
        }
        if disc < T::zero() || self.outward_value(p) < T::zero() {
            return Err(GeometryError::NoRealTangent);
        }
        let sq = disc.sqrt();
        let s1 = (-qb + sq) / qa;
        let s2 = (-qb - sq) / qa;
        let t1 = q0 + v.scale(s1);
        let t2 = q0 + v.scale(s2);
        let ray = p - center;
        if ray.cross(t1 - center) >= ray.cross(t2 - center) {
            Ok((t1, t2))
        } else {
            Ok((t2, t1))
        }
    }

    /// Second intersection of the line through `p` (a point on the conic)
    /// along `dir` with the conic.
    pub fn second_intersection(&self, p: Point<T>, dir: Point<T>) -> Point<T> {
        let qa = self.bilinear(dir, T::zero(), dir, T::zero());
        let qb = self.bilinear(p, T::one(), dir, T::zero());
        let two = T::from_f64(2.0);
        p - dir.scale(two * qb / qa)
    }

    /// Tangency discriminant of `line` against this conic: zero iff tangent,
    /// positive for a secant, negative when the line misses.
    pub fn line_residual(&self, line: &Line<T>) -> T {
        let q0 = line.foot();
        let v = line.direction();
        let qa = self.bilinear(v, T::zero(), v, T::zero());
        let qb = self.bilinear(q0, T::one(), v, T::zero());
        let qc = self.eval(q0);
        qb * qb - qa * qc
    }

    pub fn to_f64(&self) -> Conic<f64> {
        Conic { coeffs: self.coeffs.map(|c| c.to_f64()) }
    }

    /// Coefficients scaled so that `A + C = 2` (monic for circles); falls
    /// back to the stored unit-norm form when the trace vanishes.
    pub fn trace_normalized(&self) -> [T; 6] {
        let tr = self.coeffs[0] + self.coeffs[2];
        if tr.abs().to_f64() <= 1e-12 {
            return self.coeffs;
        }
        let k = T::from_f64(2.0) / tr;
        self.coeffs.map(|c| c * k)
    }
}

impl Conic<f64> {
    pub fn kind(&self) -> ConicKind {
        classify_conic(self, CIRCLE_TOL).kind
    }

    pub fn shape(&self) -> ConicShape {
        classify_conic(self, CIRCLE_TOL)
    }

    /// Center and radius when the conic is a real circle.
    pub fn as_circle(&self) -> Result<(Point, f64), GeometryError> {
        let s = classify_conic(self, CIRCLE_TOL);
        match (s.kind, s.center, s.semi_axes) {
            (ConicKind::Circle, Some(c), Some((r, _))) => Ok((c, r)),
            _ => Err(GeometryError::NotACircle),
        }
    }

    /// Euclidean distance between coefficient vectors, sign-aligned.
    pub fn coeff_distance(&self, o: &Conic) -> f64 {
        let d1: f64 = self.coeffs.iter().zip(o.coeffs.iter()).map(|(a, b)| (a - b).powi(2)).sum();
        let d2: f64 = self.coeffs.iter().zip(o.coeffs.iter()).map(|(a, b)| (a + b).powi(2)).sum();
        d1.min(d2).sqrt()
    }

    /// Distance of the coefficient vector from the span of two others.
    pub fn span_distance(&self, g1: &Conic, g2: &Conic) -> f64 {
        let v = self.coeffs;
        let u1 = g1.coeffs;
        let mut u2 = g2.coeffs;
        let p: f64 = u1.iter().zip(u2.iter()).map(|(a, b)| a * b).sum();
        for i in 0..6 {
            u2[i] -= p * u1[i];
        }
        let n2 = u2.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut r = v;
        let c1: f64 = v.iter().zip(u1.iter()).map(|(a, b)| a * b).sum();
        for i in 0..6 {
            r[i] -= c1 * u1[i];
        }
        if n2 > 1e-14 {
            let c2: f64 = r.iter().zip(u2.iter()).map(|(a, b)| a * b / n2).sum();
            for i in 0..6 {
                r[i] -= c2 * u2[i] / n2;
            }
        }
        r.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Linear combination `(1-u)·C1 + u·C2` of the trace-normalized forms,
/// returned unit-normalized. For circles this is the classical coaxal
/// pencil, so centers move linearly in `u`.
pub fn pencil_member<T: Real>(c1: &Conic<T>, c2: &Conic<T>, u: T) -> Result<Conic<T>, GeometryError> {
    let a = c1.trace_normalized();
    let b = c2.trace_normalized();
    let w = T::one() - u;
    let mut m = [T::zero(); 6];
    for i in 0..6 {
        m[i] = w * a[i] + u * b[i];
    }
    let n = m.iter().fold(T::zero(), |s, &c| s + c * c).sqrt();
    if n.to_f64() <= 1e-13 {
        return Err(GeometryError::DegeneratePencilMember(u.to_f64()));
    }
    Conic::new(m)
}

/// Classification by the discriminant `B² − 4AC` and the determinant of the
/// 3×3 form. A conic is a circle when `|A − C| ≤ tol` and `|B| ≤ tol`.
pub fn classify_conic(conic: &Conic, tol: f64) -> ConicShape {
    let [a, b, c, d, e, f] = conic.coeffs;
    let det3 = a * (c * f - e * e / 4.0) - b / 2.0 * (b / 2.0 * f - e * d / 4.0) + d / 2.0 * (b * e / 4.0 - c * d / 2.0);
    let disc = b * b - 4.0 * a * c;
    let none = |kind| ConicShape { kind, center: None, semi_axes: None, rotation: None };
    if disc.abs() <= tol * 1e-3 {
        return if det3.abs() <= tol * 1e-3 { none(ConicKind::Degenerate) } else { none(ConicKind::Parabola) };
    }
    let center = conic.center();
    if disc > 0.0 {
        let kind = if det3.abs() <= tol * 1e-3 { ConicKind::Degenerate } else { ConicKind::Hyperbola };
        return ConicShape { kind, center, semi_axes: None, rotation: None };
    }
    let ctr = center.expect("elliptic conic has a center");
    let fc = f + (d * ctr.x + e * ctr.y) / 2.0;
    // eigenvalues of [[a, b/2], [b/2, c]]
    let mean = (a + c) / 2.0;
    let half = (((a - c) / 2.0).powi(2) + (b / 2.0).powi(2)).sqrt();
    let (l1, l2) = (mean - half, mean + half);
    if fc.abs() <= tol * 1e-3 || det3.abs() <= tol * 1e-6 {
        return ConicShape { kind: ConicKind::Point, center, semi_axes: None, rotation: None };
    }
    let q1 = -fc / l1;
    let q2 = -fc / l2;
    if q1 <= 0.0 || q2 <= 0.0 {
        return ConicShape { kind: ConicKind::Imaginary, center, semi_axes: None, rotation: None };
    }
    let (major, minor) = (q1.sqrt(), q2.sqrt());
    // smaller eigenvalue l1 belongs to the major axis
    let rotation = if half <= 1e-300 { 0.0 } else { 0.5 * b.atan2(a - c) + std::f64::consts::FRAC_PI_2 };
    let rotation = wrap_half_pi(rotation);
    let is_circle = (a - c).abs() <= tol && b.abs() <= tol;
    if is_circle {
        let r = ((major + minor) / 2.0).max(0.0);
        return ConicShape {
            kind: ConicKind::Circle,
            center,
            semi_axes: Some((r, r)),
            rotation: Some(0.0),
        };
    }
    ConicShape { kind: ConicKind::Ellipse, center, semi_axes: Some((major, minor)), rotation: Some(rotation) }
}

fn wrap_half_pi(a: f64) -> f64 {
    use std::f64::consts::PI;
    let mut a = a;
    while a > PI / 2.0 {
        a -= PI;
    }
    while a <= -PI / 2.0 {
        a += PI;
    }
    a
}

/// Both tangent lines from `p`, in the order of [`Conic::tangent_contacts`].
pub fn tangent_lines_from_point<T: Real>(p: Point<T>, conic: &Conic<T>) -> Result<(Line<T>, Line<T>), GeometryError> {
    let (t1, t2) = conic.tangent_contacts(p)?;
    Ok((Line::through(p, t1)?, Line::through(p, t2)?))
}

/// Inversion in the circle `(center, radius)`.
pub fn invert_in_circle<T: Real>(p: Point<T>, center: Point<T>, radius: T) -> Result<Point<T>, GeometryError> {
    let v = p - center;
    let n2 = v.norm2();
    let floor = radius * T::from_f64(T::EPSILON.powf(0.75));
    if !(n2 > floor * floor) {
        return Err(GeometryError::InversionOfCenter);
    }
    Ok(center + v.scale(radius * radius / n2))
}

pub fn circle_inverse(p: Point, circle: &Conic) -> Result<Point, GeometryError> {
    let (c, r) = circle.as_circle()?;
    invert_in_circle(p, c, r)
}

pub fn line_tangent_to_conic_residual<T: Real>(line: &Line<T>, conic: &Conic<T>) -> T {
    conic.line_residual(line)
}

/// A coaxal pencil spanned by two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePencil {
    c1: Conic,
    c2: Conic,
}

impl CirclePencil {
    pub fn new(c1: Conic, c2: Conic) -> Result<Self, GeometryError> {
        c1.as_circle()?;
        c2.as_circle()?;
        Ok(CirclePencil { c1, c2 })
    }

    pub fn generators(&self) -> (Conic, Conic) {
        (self.c1, self.c2)
    }

    pub fn member(&self, u: f64) -> Result<Conic, GeometryError> {
        pencil_member(&self.c1, &self.c2, u)
    }

    pub fn radical_axis(&self) -> Result<Line, GeometryError> {
        let a = self.c1.trace_normalized();
        let b = self.c2.trace_normalized();
        Line::new(a[3] - b[3], a[4] - b[4], a[5] - b[5]).ok_or(GeometryError::ConcentricPencil)
    }

    /// Pencil parameters at which the member has zero radius.
    pub fn limiting_parameters(&self) -> Result<(f64, f64), GeometryError> {
        // monic member: x² + y² + D(u) x + E(u) y + F(u), radius² = (D²+E²)/4 − F
        let a = self.c1.trace_normalized();
        let b = self.c2.trace_normalized();
        let dd = [b[3] - a[3], b[4] - a[4], b[5] - a[5]];
        let q2 = (dd[0] * dd[0] + dd[1] * dd[1]) / 4.0;
        let q1 = (a[3] * dd[0] + a[4] * dd[1]) / 2.0 - dd[2];
        let q0 = (a[3] * a[3] + a[4] * a[4]) / 4.0 - a[5];
        if q2.abs() <= 1e-15 * (q1.abs() + q0.abs()) {
            if q1 == 0.0 {
                return Err(GeometryError::ConcentricPencil);
            }
            let u = -q0 / q1;
            return Ok((u, u));
        }
        let disc = q1 * q1 - 4.0 * q2 * q0;
        if disc < -1e-14 * q1 * q1 {
            return Err(GeometryError::ComplexLimitingPoints);
        }
        let sq = disc.max(0.0).sqrt();
        let qq = -0.5 * (q1 + q1.signum() * sq);
        let (u1, u2) = if qq == 0.0 { (0.0, 0.0) } else { (qq / q2, q0 / qq) };
        Ok(if u1 <= u2 { (u1, u2) } else { (u2, u1) })
    }

    pub fn limiting_points(&self) -> Result<(Point, Point), GeometryError> {
        let (u1, u2) = self.limiting_parameters()?;
        let center_at = |u: f64| {
            let a = self.c1.trace_normalized();
            let b = self.c2.trace_normalized();
            let d = (1.0 - u) * a[3] + u * b[3];
            let e = (1.0 - u) * a[4] + u * b[4];
            Point::xy(-d / 2.0, -e / 2.0)
        };
        let (p, q) = (center_at(u1), center_at(u2));
        // order along the x axis, then y, so the result is symmetric in (C1, C2)
        if (p.x, p.y) <= (q.x, q.y) {
            Ok((p, q))
        } else {
            Ok((q, p))
        }
    }
}

pub fn limiting_points(pencil: &CirclePencil) -> Result<(Point, Point), GeometryError> {
    pencil.limiting_points()
}
