//! The six triangle families: bicentric (circles) and confocal (ellipses)
//! with one, two or three caustics.
//!
//! In every family P1 is driven around the outer conic by its eccentric
//! angle `t`. P2 is reached along a tangent to the first caustic and P3
//! along a tangent to the second caustic (the same conic for the
//! two-caustic families). The third side P2P3 then envelopes a conic of the
//! same pencil.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{pencil_member, Conic, GeometryError, Line, Point};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("R < 2r: no poristic pair exists")]
    NoPoristicPair,
    #[error("outer conic is a circle (a = b); confocal formulas need a > b")]
    CircularOuterUnsupported,
    #[error("vertex lies inside the caustic at t = {0}")]
    VertexInsideCaustic(f64),
    #[error("pencil circle has nonpositive squared radius {0}")]
    ImaginaryPencilCircle(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `d = √(R(R − 2r))`, the center distance of a poristic pair.
pub fn chapple_distance(big_r: f64, r: f64) -> Result<f64, FamilyError> {
    let q = big_r * (big_r - 2.0 * r);
    if q < 0.0 {
        return Err(FamilyError::NoPoristicPair);
    }
    Ok(q.sqrt())
}

/// Residual `1/(R−d)² + 1/(R+d)² − 1/r²`; holds when `|residual|·r² ≤ 1e-10`.
pub fn kerawala_holds(big_r: f64, r: f64, d: f64) -> (bool, f64) {
    let res = 1.0 / (big_r - d).powi(2) + 1.0 / (big_r + d).powi(2) - 1.0 / (r * r);
    ((res * r * r).abs() <= 1e-10, res)
}

/// Semi-axes of the confocal caustic admitting 3-periodics.
pub fn confocal_caustic(a: f64, b: f64) -> Result<(f64, f64), FamilyError> {
    if !(a > b) || !(b > 0.0) {
        return Err(FamilyError::CircularOuterUnsupported);
    }
    let c2 = a * a - b * b;
    let delta = (a.powi(4) - a * a * b * b + b.powi(4)).sqrt();
    Ok((a * (delta - b * b) / c2, b * (a * a - delta) / c2))
}

/// λ of the billiard (confocal) caustic.
pub fn critical_lambda(a: f64, b: f64) -> Result<f64, FamilyError> {
    if !(a > b) || !(b > 0.0) {
        return Err(FamilyError::CircularOuterUnsupported);
    }
    let c2 = a * a - b * b;
    let delta = (a.powi(4) - a * a * b * b + b.powi(4)).sqrt();
    Ok(a * a * b * b * (2.0 * delta - a * a - b * b) / (c2 * c2))
}

/// Caustic of the 4-periodic family.
pub fn n4_caustic(a: f64, b: f64) -> (f64, f64) {
    let h = (a * a + b * b).sqrt();
    (a * a / h, b * b / h)
}

/// Caustic of the 6-periodic family.
pub fn n6_caustic(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    ((a * (a * (a + 2.0 * b)).sqrt()) / s, (b * (b * (2.0 * a + b)).sqrt()) / s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangentBranch {
    pub first: Sign,
    pub second: Sign,
}

impl TangentBranch {
    pub const PLUS_PLUS: TangentBranch = TangentBranch { first: Sign::Plus, second: Sign::Plus };

    pub fn all() -> [TangentBranch; 4] {
        use Sign::*;
        [(Plus, Plus), (Plus, Minus), (Minus, Plus), (Minus, Minus)].map(|(first, second)| TangentBranch { first, second })
    }
}

impl Default for TangentBranch {
    fn default() -> Self {
        TangentBranch::PLUS_PLUS
    }
}

impl fmt::Display for TangentBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: Sign| if x == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{}", s(self.first), s(self.second))
    }
}

impl FromStr for TangentBranch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = if s.contains(',') { s.split(',').map(str::trim).collect() } else { s.trim().split("").filter(|x| !x.is_empty()).collect() };
        if parts.len() != 2 {
            return Err(format!("branch must look like '++', '+-' or 'plus,minus', got {s:?}"));
        }
        let one = |p: &str| match p {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            _ => Err(format!("bad branch sign {p:?}")),
        };
        Ok(TangentBranch { first: one(parts[0])?, second: one(parts[1])? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BicentricParams {
    #[serde(rename = "R")]
    pub big_r: f64,
    pub r: f64,
    pub d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
}

impl BicentricParams {
    pub fn new(big_r: f64, r: f64, d: f64) -> Self {
        BicentricParams { big_r, r, d, u: None }
    }

    pub fn poristic(big_r: f64, r: f64) -> Result<Self, FamilyError> {
        Ok(BicentricParams::new(big_r, r, chapple_distance(big_r, r)?))
    }

    pub fn with_u(mut self, u: f64) -> Self {
        self.u = Some(u);
        self
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let ok = self.big_r > 0.0 && self.r > 0.0 && self.d >= 0.0 && self.r + self.d < self.big_r;
        if !ok {
            return Err(FamilyError::InvalidParams(format!(
                "need R > 0, r > 0, d >= 0, r + d < R (got R={}, r={}, d={})",
                self.big_r, self.r, self.d
            )));
        }
        Ok(())
    }

    /// `|d² − R(R−2r)|` relative to R².
    pub fn chapple_defect(&self) -> f64 {
        (self.d * self.d - self.big_r * (self.big_r - 2.0 * self.r)).abs() / (self.big_r * self.big_r)
    }

    /// Center abscissa `d(u) = d(1−u)` of the pencil circle.
    pub fn pencil_center(&self, u: f64) -> f64 {
        self.d * (1.0 - u)
    }

    /// Squared radius `d²u² + (R² − d² − r²)u + r²` of the pencil circle.
    pub fn pencil_radius2(&self, u: f64) -> f64 {
        let (big_r, r, d) = (self.big_r, self.r, self.d);
        d * d * u * u + (big_r * big_r - d * d - r * r) * u + r * r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfocalParams {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pencil_u: Option<f64>,
}

impl ConfocalParams {
    pub fn new(a: f64, b: f64, lambda: f64) -> Self {
        ConfocalParams { a, b, lambda, pencil_u: None }
    }

    /// Caustic given by its semi-axes instead of λ (must be confocal).
    pub fn from_caustic(a: f64, b: f64, ap: f64) -> Self {
        ConfocalParams::new(a, b, a * a - ap * ap)
    }

    pub fn with_u(mut self, u: f64) -> Self {
        self.pencil_u = Some(u);
        self
    }

    pub fn c2(&self) -> f64 {
        self.a * self.a - self.b * self.b
    }

    pub fn delta(&self) -> f64 {
        (self.a.powi(4) - self.a * self.a * self.b * self.b + self.b.powi(4)).sqrt()
    }

    /// `(a', b')` with `a'² = a² − λ`, `b'² = b² − λ`.
    pub fn caustic_axes(&self) -> (f64, f64) {
        ((self.a * self.a - self.lambda).sqrt(), (self.b * self.b - self.lambda).sqrt())
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if !(self.a > self.b && self.b > 0.0) {
            return Err(FamilyError::CircularOuterUnsupported);
        }
        if !(self.lambda >= 0.0 && self.lambda < self.b * self.b) {
            return Err(FamilyError::InvalidParams(format!("need 0 <= lambda < b² (got {})", self.lambda)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "bic-I")]
    BicI,
    #[serde(rename = "bic-II")]
    BicII,
    #[serde(rename = "bic-III")]
    BicIII,
    #[serde(rename = "conf-I")]
    ConfI,
    #[serde(rename = "conf-II")]
    ConfII,
    #[serde(rename = "conf-III")]
    ConfIII,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::BicI, Family::BicII, Family::BicIII, Family::ConfI, Family::ConfII, Family::ConfIII];

    pub fn name(self) -> &'static str {
        match self {
            Family::BicI => "bic-I",
            Family::BicII => "bic-II",
            Family::BicIII => "bic-III",
            Family::ConfI => "conf-I",
            Family::ConfII => "conf-II",
            Family::ConfIII => "conf-III",
        }
    }

    pub fn is_bicentric(self) -> bool {
        matches!(self, Family::BicI | Family::BicII | Family::BicIII)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let k = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == k || f.name().to_ascii_lowercase().replace('-', "") == k)
            .ok_or_else(|| format!("unknown family {s:?} (expected bic-I, bic-II, bic-III, conf-I, conf-II or conf-III)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyParams {
    Bicentric(BicentricParams),
    Confocal(ConfocalParams),
}

/// A family plus its shape parameters and tangent branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub family: Family,
    pub params: FamilyParams,
    #[serde(default)]
    pub branch: TangentBranch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle<T = f64> {
    pub p1: Point<T>,
    pub p2: Point<T>,
    pub p3: Point<T>,
    pub t: f64,
    pub valid: bool,
}

impl<T: Real> Triangle<T> {
    pub fn new(p1: Point<T>, p2: Point<T>, p3: Point<T>, t: f64) -> Self {
        Triangle { p1, p2, p3, t, valid: true }
    }

    pub fn invalid(t: f64) -> Self {
        let o = Point::origin();
        Triangle { p1: o, p2: o, p3: o, t, valid: false }
    }

    pub fn vertices(&self) -> [Point<T>; 3] {
        [self.p1, self.p2, self.p3]
    }

    /// `s_i`: length of the side opposite `P_i`.
    pub fn sides(&self) -> [T; 3] {
        [self.p2.dist(self.p3), self.p1.dist(self.p3), self.p1.dist(self.p2)]
    }

    pub fn perimeter(&self) -> T {
        let [a, b, c] = self.sides();
        a + b + c
    }

    pub fn signed_area(&self) -> T {
        (self.p2 - self.p1).cross(self.p3 - self.p1) * T::from_f64(0.5)
    }

    /// Interior-angle cosines at P1, P2, P3.
    pub fn cosines(&self) -> [T; 3] {
        let [a, b, c] = self.sides();
        let two = T::from_f64(2.0);
        [
            (b * b + c * c - a * a) / (two * b * c),
            (c * c + a * a - b * b) / (two * c * a),
            (a * a + b * b - c * c) / (two * a * b),
        ]
    }

    pub fn to_f64(&self) -> Triangle<f64> {
        Triangle { p1: self.p1.to_f64(), p2: self.p2.to_f64(), p3: self.p3.to_f64(), t: self.t, valid: self.valid }
    }

    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        Triangle { p1: f(self.p1), p2: f(self.p2), p3: f(self.p3), t: self.t, valid: self.valid }
    }
}

/// Driving parameter of sample `i` out of `n` uniform samples on `[0, 2π)`.
pub fn sample_parameter(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

fn t_const<T: Real>(x: f64) -> T {
    T::from_f64(x)
}

/// Closed-form tangent vertices. Returns the vertex reached through the tangent
/// whose contact is clockwise of the ray caustic-center → P1 (`cw`), and the
/// counter-clockwise one (`ccw`). Caustic is `[(dc, 0), rc]`, outer `[O, R]`.
fn bicentric_pair<T: Real>(big_r: T, dc: T, rc: T, p1: Point<T>, t: f64) -> Result<(Point<T>, Point<T>), FamilyError> {
    let (x1, y1) = (p1.x, p1.y);
    let two = t_const::<T>(2.0);
    let four = t_const::<T>(4.0);
    let r2 = big_r * big_r;
    let d2 = dc * dc;
    let base = r2 + d2 - two * dc * x1;
    let delta2 = base - rc * rc;
    if !(delta2 > T::zero()) {
        return Err(FamilyError::VertexInsideCaustic(t));
    }
    let delta = delta2.sqrt();
    let den = base * base;
    let k = delta2 - rc * rc;
    let x2 = (two * rc * y1 * (r2 - d2) * delta + (two * dc * r2 - (r2 + d2) * x1) * k) / den;
    let y2 = ((four * r2 * dc - two * (r2 + d2) * x1) * rc * delta - y1 * (r2 - d2) * k) / den;
    let x3 = x2 - four * (r2 - d2) * y1 * rc * delta / den;
    let y3 = y2 - four * (two * r2 * dc - (r2 + d2) * x1) * rc * delta / den;
    Ok((Point::new(x2, y2), Point::new(x3, y3)))
}

fn pick<T>(sign: Sign, canonical: T, other: T) -> T {
    if sign == Sign::Plus {
        canonical
    } else {
        other
    }
}

/// bic-II triangle from the closed form. The branch selects the tangent at
/// each step; `(plus, plus)` is the closed-form labelling.
pub fn bic2_vertices<T: Real>(p: &BicentricParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    bic2_vertices_at(T::from_f64(p.big_r), T::from_f64(p.r), T::from_f64(p.d), t, branch)
}

/// bic-I triangle with `d = √(R(R−2r))` evaluated in the working precision,
/// so the extended-precision family closes exactly.
pub fn bic1_vertices<T: Real>(p: &BicentricParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let (big_r, r) = (T::from_f64(p.big_r), T::from_f64(p.r));
    let d = (big_r * (big_r - T::from_f64(2.0) * r)).sqrt();
    bic2_vertices_at(big_r, r, d, t, branch)
}

fn bic2_vertices_at<T: Real>(big_r: T, r: T, d: T, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let (c, s) = T::unit(t);
    let p1 = Point::new(big_r * c, big_r * s);
    let (cw, ccw) = bicentric_pair(big_r, d, r, p1, t)?;
    Ok(Triangle::new(p1, pick(branch.first, cw, ccw), pick(branch.second, ccw, cw), t))
}

/// Circle of the bicentric pencil at parameter `u`: center `(d(1−u), 0)`.
pub fn bic3_caustic2(p: &BicentricParams) -> Result<Conic, FamilyError> {
    let u = p.u.unwrap_or(0.0);
    let rr = p.pencil_radius2(u);
    if !(rr > 0.0) {
        return Err(FamilyError::ImaginaryPencilCircle(rr));
    }
    Ok(Conic::circle(Point::xy(p.pencil_center(u), 0.0), rr.sqrt()))
}

/// bic-III triangle: P1P2 tangent to `[(d,0), r]`, P1P3 tangent to the
/// pencil circle at `u`; the free side P2P3 envelopes a third pencil circle.
pub fn bic3_vertices<T: Real>(p: &BicentricParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let u = p.u.unwrap_or(0.0);
    let rr = p.pencil_radius2(u);
    if !(rr > 0.0) {
        return Err(FamilyError::ImaginaryPencilCircle(rr));
    }
    let big_r = T::from_f64(p.big_r);
    let (c, s) = T::unit(t);
    let p1 = Point::new(big_r * c, big_r * s);
    let (cw1, ccw1) = bicentric_pair(big_r, T::from_f64(p.d), T::from_f64(p.r), p1, t)?;
    // radius from the exact quadratic so the DD path keeps full precision
    let (tu, td, tr) = (T::from_f64(u), T::from_f64(p.d), T::from_f64(p.r));
    let r2u = td * td * tu * tu + (big_r * big_r - td * td - tr * tr) * tu + tr * tr;
    let du = td * (T::one() - tu);
    let (cw2, ccw2) = bicentric_pair(big_r, du, r2u.sqrt(), p1, t)?;
    Ok(Triangle::new(p1, pick(branch.first, cw1, ccw1), pick(branch.second, ccw2, cw2), t))
}

type Vertices<T> = (Point<T>, Point<T>, Point<T>);

/// Closed-form conf-II vertices; `b_c` is taken as the caustic semi-axis `b'`.
fn conf2_closed<T: Real>(a: T, b: T, lam: T, t: f64) -> Result<Vertices<T>, FamilyError> {
    let (c, s) = T::unit(t);
    let (x1, y1) = (a * c, b * s);
    let (a2, b2) = (a * a, b * b);
    let ap2 = a2 - lam;
    let bp2 = b2 - lam;
    let two = t_const::<T>(2.0);
    let al1 = a2 * (b2 - bp2) - ap2 * b2;
    let al2 = (a2 - ap2) * b2 + a2 * bp2;
    let al3 = a2 * (b2 - bp2) + ap2 * b2;
    let w = al2 * al2 * x1 * x1 / a2 + al3 * al3 * y1 * y1 / b2;
    let dd2 = (a2 * bp2 - ap2 * bp2) * x1 * x1 + (a2 * ap2 - a2 * ap2 * bp2 / b2) * y1 * y1;
    // outside test: x²/a'² + y²/b'² > 1
    if !(x1 * x1 / ap2 + y1 * y1 / bp2 > T::one()) || !(dd2 > T::zero()) {
        return Err(FamilyError::VertexInsideCaustic(t));
    }
    let dd = dd2.sqrt();
    let p2 = Point::new((two * a * al3 * y1 * dd - al1 * al2 * x1) / w, (-two * b2 * al2 * x1 * dd - a * al1 * al3 * y1) / (a * w));
    let p3 = Point::new((-two * a * al3 * y1 * dd - al1 * al2 * x1) / w, (two * b2 * al2 * x1 * dd - a * al1 * al3 * y1) / (a * w));
    Ok((Point::new(x1, y1), p2, p3))
}

/// conf-II triangle from the closed form (see [`conf2_vertices_chain`] for
/// the geometric construction it is tested against).
pub fn conf2_vertices<T: Real>(p: &ConfocalParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let (p1, cw, ccw) = conf2_closed(T::from_f64(p.a), T::from_f64(p.b), T::from_f64(p.lambda), t)?;
    Ok(Triangle::new(p1, pick(branch.first, cw, ccw), pick(branch.second, ccw, cw), t))
}

/// conf-I triangle with the billiard caustic parameter evaluated in the
/// working precision.
pub fn conf1_vertices<T: Real>(p: &ConfocalParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let (a, b) = (T::from_f64(p.a), T::from_f64(p.b));
    let (a2, b2) = (a * a, b * b);
    let c2 = a2 - b2;
    if !(c2 > T::zero()) {
        return Err(FamilyError::CircularOuterUnsupported);
    }
    let delta = (a2 * a2 - a2 * b2 + b2 * b2).sqrt();
    let lam = a2 * b2 * (T::from_f64(2.0) * delta - a2 - b2) / (c2 * c2);
    let (p1, cw, ccw) = conf2_closed(a, b, lam, t)?;
    Ok(Triangle::new(p1, pick(branch.first, cw, ccw), pick(branch.second, ccw, cw), t))
}

fn chain<T: Real>(outer: &Conic<T>, c1: &Conic<T>, c2: &Conic<T>, p1: Point<T>, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let contacts = |c: &Conic<T>| match c.tangent_contacts(p1) {
        Ok(v) => Ok(v),
        Err(GeometryError::NoRealTangent) | Err(GeometryError::TangentFromBoundary) => Err(FamilyError::VertexInsideCaustic(t)),
        Err(e) => Err(e.into()),
    };
    let (ccw1, cw1) = contacts(c1)?;
    let (ccw2, cw2) = contacts(c2)?;
    let via = |q: Point<T>| outer.second_intersection(p1, q - p1);
    let p2 = via(pick(branch.first, cw1, ccw1));
    let p3 = via(pick(branch.second, ccw2, cw2));
    Ok(Triangle::new(p1, p2, p3, t))
}

/// Tangent-chain construction of a conf-II triangle.
pub fn conf2_vertices_chain<T: Real>(p: &ConfocalParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let (a, b) = (T::from_f64(p.a), T::from_f64(p.b));
    let lam = T::from_f64(p.lambda);
    let outer = Conic::ellipse(Point::origin(), a, b);
    let inner = Conic::ellipse(Point::origin(), (a * a - lam).sqrt(), (b * b - lam).sqrt());
    let (c, s) = T::unit(t);
    chain(&outer, &inner, &inner, Point::new(a * c, b * s), t, branch)
}

/// Tangent-chain construction of a bicentric triangle (II or III).
pub fn bic_vertices_chain<T: Real>(p: &BicentricParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let big_r = T::from_f64(p.big_r);
    let outer = Conic::circle(Point::origin(), big_r);
    let c1 = Conic::circle(Point::new(T::from_f64(p.d), T::zero()), T::from_f64(p.r));
    let c2 = match p.u {
        Some(u) => pencil_member(&c1, &outer, T::from_f64(u))?,
        None => c1,
    };
    let (c, s) = T::unit(t);
    chain(&outer, &c1, &c2, Point::new(big_r * c, big_r * s), t, branch)
}

/// Second conf-III caustic: the member of the pencil of `E'` and `E` at `u`
/// (`u = 0` is the confocal caustic, `u = 1` the outer ellipse).
pub fn conf3_caustic2<T: Real>(p: &ConfocalParams) -> Result<Conic<T>, FamilyError> {
    let (a, b) = (T::from_f64(p.a), T::from_f64(p.b));
    let lam = T::from_f64(p.lambda);
    let outer = Conic::ellipse(Point::origin(), a, b);
    let inner = Conic::ellipse(Point::origin(), (a * a - lam).sqrt(), (b * b - lam).sqrt());
    Ok(pencil_member(&inner, &outer, T::from_f64(p.pencil_u.unwrap_or(0.0)))?)
}

/// conf-III triangle by tangent chaining: P1P2 tangent to the confocal
/// caustic, P1P3 tangent to the in-pencil ellipse.
pub fn conf3_vertices<T: Real>(p: &ConfocalParams, t: f64, branch: TangentBranch) -> Result<Triangle<T>, FamilyError> {
    let (a, b) = (T::from_f64(p.a), T::from_f64(p.b));
    let lam = T::from_f64(p.lambda);
    let outer = Conic::ellipse(Point::origin(), a, b);
    let inner = Conic::ellipse(Point::origin(), (a * a - lam).sqrt(), (b * b - lam).sqrt());
    let second = conf3_caustic2::<T>(p)?;
    let (c, s) = T::unit(t);
    chain(&outer, &inner, &second, Point::new(a * c, b * s), t, branch)
}

/// Closed-form envelope circle of P2P3 over bic-II.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BicEnvelope {
    pub center_x: f64,
    pub radius: f64,
    /// Same radius from the `p = (R+d)/r`, `q = (R−d)/r` form.
    pub radius_pq: f64,
}

impl BicEnvelope {
    pub fn conic(&self) -> Conic {
        if self.radius == 0.0 {
            Conic::new([1.0, 0.0, 1.0, -2.0 * self.center_x, 0.0, self.center_x * self.center_x]).expect("point circle")
        } else {
            Conic::circle(Point::xy(self.center_x, 0.0), self.radius.abs())
        }
    }
}

pub fn bic2_envelope(p: &BicentricParams) -> BicEnvelope {
    let (big_r, r, d) = (p.big_r, p.r, p.d);
    let (r2, d2, rr) = (big_r * big_r, d * d, r * r);
    let den = (r2 - d2).powi(2);
    let center_x = 4.0 * d * r2 * rr / den;
    let radius = big_r * (r2 * r2 - 2.0 * r2 * d2 - 2.0 * r2 * rr + d2 * d2 - 2.0 * d2 * rr) / den;
    let (pp, qq) = ((big_r + d) / r, (big_r - d) / r);
    let radius_pq = big_r * (pp * pp * qq * qq - pp * pp - qq * qq) / (pp * qq).powi(2);
    BicEnvelope { center_x, radius, radius_pq }
}

/// Closed-form envelope ellipse of P2P3 over conf-II.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfEnvelope {
    pub a: f64,
    pub b: f64,
    pub zeta: f64,
}

impl ConfEnvelope {
    /// Implicit form, well defined also when ζ = 0 (point envelope).
    pub fn conic(&self, p: &ConfocalParams) -> Conic {
        let (a, b, lam) = (p.a, p.b, p.lambda);
        let c2 = p.c2();
        let d1 = a * a * b * b - c2 * lam;
        let d2 = a * a * b * b + c2 * lam;
        // x²/a''² + y²/b''² = 1 multiplied by a''² b''² / ζ²
        let kx = b * b / (d2 * d2);
        let ky = a * a / (d1 * d1);
        let kf = a * a * b * b * self.zeta.powi(2) / (d1 * d1 * d2 * d2);
        Conic::new([kx, 0.0, ky, 0.0, 0.0, -kf]).expect("envelope conic")
    }
}

pub fn conf2_envelope(p: &ConfocalParams) -> ConfEnvelope {
    let (a, b, lam) = (p.a, p.b, p.lambda);
    let c2 = p.c2();
    let zeta = a * a * b * b - (a * a + b * b) * lam;
    ConfEnvelope { a: (a * zeta).abs() / (a * a * b * b - c2 * lam), b: (b * zeta).abs() / (a * a * b * b + c2 * lam), zeta }
}

/// Residuals of a triangle against its family: worst on-outer value and
/// worst tangency discriminant of the designated sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleResiduals {
    pub on_outer: f64,
    pub tangency: f64,
}

impl FamilyConfig {
    pub fn bic_i(big_r: f64, r: f64) -> Result<Self, FamilyError> {
        Self::build(Family::BicI, FamilyParams::Bicentric(BicentricParams::poristic(big_r, r)?), TangentBranch::PLUS_PLUS)
    }

    pub fn bic_ii(big_r: f64, r: f64, d: f64) -> Result<Self, FamilyError> {
        Self::build(Family::BicII, FamilyParams::Bicentric(BicentricParams::new(big_r, r, d)), TangentBranch::PLUS_PLUS)
    }

    pub fn bic_iii(big_r: f64, r: f64, d: f64, u: f64, branch: TangentBranch) -> Result<Self, FamilyError> {
        Self::build(Family::BicIII, FamilyParams::Bicentric(BicentricParams::new(big_r, r, d).with_u(u)), branch)
    }

    pub fn conf_i(a: f64, b: f64) -> Result<Self, FamilyError> {
        Self::build(Family::ConfI, FamilyParams::Confocal(ConfocalParams::new(a, b, critical_lambda(a, b)?)), TangentBranch::PLUS_PLUS)
    }

    pub fn conf_ii(a: f64, b: f64, lambda: f64) -> Result<Self, FamilyError> {
        Self::build(Family::ConfII, FamilyParams::Confocal(ConfocalParams::new(a, b, lambda)), TangentBranch::PLUS_PLUS)
    }

    pub fn conf_iii(a: f64, b: f64, lambda: f64, u: f64, branch: TangentBranch) -> Result<Self, FamilyError> {
        Self::build(Family::ConfIII, FamilyParams::Confocal(ConfocalParams::new(a, b, lambda).with_u(u)), branch)
    }

    /// Fixed parameters used for tables and default checks: bic R=1, r=0.2,
    /// d=0.3 (bic-III: r=0.15, d=0.25, u=0.4); conf a=2, b=1 with λ=0.5
    /// (conf-III: λ=0.3, u=0.5).
    pub fn representative(family: Family) -> Self {
        let b = TangentBranch::PLUS_PLUS;
        match family {
            Family::BicI => Self::bic_i(1.0, 0.2),
            Family::BicII => Self::bic_ii(1.0, 0.2, 0.3),
            Family::BicIII => Self::bic_iii(1.0, 0.15, 0.25, 0.4, b),
            Family::ConfI => Self::conf_i(2.0, 1.0),
            Family::ConfII => Self::conf_ii(2.0, 1.0, 0.5),
            Family::ConfIII => Self::conf_iii(2.0, 1.0, 0.3, 0.5, b),
        }
        .expect("representative parameters are valid")
    }

    /// Validates the combination of family, parameters and branch.
    pub fn build(family: Family, params: FamilyParams, branch: TangentBranch) -> Result<Self, FamilyError> {
        let cfg = FamilyConfig { family, params, branch };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        match (self.family, &self.params) {
            (f, FamilyParams::Bicentric(p)) if f.is_bicentric() => {
                p.validate()?;
                if f == Family::BicI && p.chapple_defect() > 1e-12 {
                    return Err(FamilyError::InvalidParams(format!("bic-I needs d² = R(R−2r); defect {:e}", p.chapple_defect())));
                }
                if f == Family::BicIII {
                    let u = p.u.ok_or_else(|| FamilyError::InvalidParams("bic-III needs the pencil parameter u".into()))?;
                    let rr = p.pencil_radius2(u);
                    if !(rr > 0.0) {
                        return Err(FamilyError::ImaginaryPencilCircle(rr));
                    }
                }
                Ok(())
            }
            (f, FamilyParams::Confocal(p)) if !f.is_bicentric() => {
                p.validate()?;
                if f == Family::ConfI {
                    let lc = critical_lambda(p.a, p.b)?;
                    if (p.lambda - lc).abs() > 1e-12 * p.a * p.a {
                        return Err(FamilyError::InvalidParams(format!("conf-I needs lambda = {lc}")));
                    }
                }
                if f == Family::ConfIII {
                    let u = p.pencil_u.ok_or_else(|| FamilyError::InvalidParams("conf-III needs the pencil parameter u".into()))?;
                    if !(0.0..1.0).contains(&u) {
                        return Err(FamilyError::InvalidParams(format!("conf-III needs 0 <= u < 1 (got {u})")));
                    }
                }
                Ok(())
            }
            _ => Err(FamilyError::InvalidParams(format!("{} does not take these parameters", self.family))),
        }
    }

    pub fn bicentric(&self) -> Option<&BicentricParams> {
        match &self.params {
            FamilyParams::Bicentric(p) => Some(p),
            _ => None,
        }
    }

    pub fn confocal(&self) -> Option<&ConfocalParams> {
        match &self.params {
            FamilyParams::Confocal(p) => Some(p),
            _ => None,
        }
    }

    /// Linear size of the outer conic (R or a).
    pub fn outer_scale(&self) -> f64 {
        match &self.params {
            FamilyParams::Bicentric(p) => p.big_r,
            FamilyParams::Confocal(p) => p.a,
        }
    }

    pub fn outer_conic(&self) -> Conic {
        match &self.params {
            FamilyParams::Bicentric(p) => Conic::circle(Point::xy(0.0, 0.0), p.big_r),
            FamilyParams::Confocal(p) => Conic::ellipse(Point::xy(0.0, 0.0), p.a, p.b),
        }
    }

    /// Caustics of sides P1P2 and P1P3 (identical for one- and two-caustic
    /// families).
    pub fn caustics(&self) -> Result<(Conic, Conic), FamilyError> {
        match &self.params {
            FamilyParams::Bicentric(p) => {
                let c1 = Conic::circle(Point::xy(p.d, 0.0), p.r);
                let c2 = if self.family == Family::BicIII { bic3_caustic2(p)? } else { c1 };
                Ok((c1, c2))
            }
            FamilyParams::Confocal(p) => {
                let (ap, bp) = p.caustic_axes();
                let c1 = Conic::ellipse(Point::xy(0.0, 0.0), ap, bp);
                let c2 = if self.family == Family::ConfIII { conf3_caustic2::<f64>(p)? } else { c1 };
                Ok((c1, c2))
            }
        }
    }

    /// Triangle at driving parameter `t`.
    pub fn triangle<T: Real>(&self, t: f64) -> Result<Triangle<T>, FamilyError> {
        match (&self.params, self.family) {
            (FamilyParams::Bicentric(p), Family::BicI) => bic1_vertices(p, t, self.branch),
            (FamilyParams::Bicentric(p), Family::BicIII) => bic3_vertices(p, t, self.branch),
            (FamilyParams::Bicentric(p), _) => bic2_vertices(p, t, self.branch),
            (FamilyParams::Confocal(p), Family::ConfI) => conf1_vertices(p, t, self.branch),
            (FamilyParams::Confocal(p), Family::ConfIII) => conf3_vertices(p, t, self.branch),
            (FamilyParams::Confocal(p), _) => conf2_vertices(p, t, self.branch),
        }
    }

    /// `n` uniform samples; infeasible parameters become invalid triangles.
    pub fn sweep<T: Real>(&self, n: usize) -> Vec<Triangle<T>> {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let t = sample_parameter(i, n);
                self.triangle(t).unwrap_or_else(|_| Triangle::invalid(t))
            })
            .collect()
    }

    pub fn residuals(&self, tri: &Triangle) -> Result<TriangleResiduals, FamilyError> {
        let outer = self.outer_conic();
        let (c1, c2) = self.caustics()?;
        let on_outer = tri.vertices().iter().map(|&p| outer.eval(p).abs()).fold(0.0, f64::max);
        let l12 = Line::through(tri.p1, tri.p2)?;
        let l13 = Line::through(tri.p1, tri.p3)?;
        let tangency = c1.line_residual(&l12).abs().max(c2.line_residual(&l13).abs());
        Ok(TriangleResiduals { on_outer, tangency })
    }
}

impl fmt::Display for FamilyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.params {
            FamilyParams::Bicentric(p) => {
                write!(f, "{} R={} r={} d={}", self.family, p.big_r, p.r, p.d)?;
                if let Some(u) = p.u {
                    write!(f, " u={u}")?;
                }
            }
            FamilyParams::Confocal(p) => {
                write!(f, "{} a={} b={} lambda={}", self.family, p.a, p.b, p.lambda)?;
                if let Some(u) = p.pencil_u {
                    write!(f, " u={u}")?;
                }
            }
        }
        if self.branch != TangentBranch::PLUS_PLUS {
            write!(f, " branch={}", self.branch)?;
        }
        Ok(())
    }
}
