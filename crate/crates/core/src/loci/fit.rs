use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use super::{diameter, Locus, LocusError, MIN_SAMPLES};
use crate::dd::Dd;
use crate::geometry::{classify_conic, Conic, ConicKind, ConicShape, Point};
use crate::linalg::{householder_r, jacobi_svd};
use crate::real::Real;

/// Thresholds of the verdict ladder, in normalized coordinates.
///
/// The defaults assume double-double samples (what [`super::trace_locus`]
/// produces): an exact algebraic relation leaves residuals at or below
/// 2e-31, while an inexact fit can creep down to a few 1e-27 (the bic-III
/// barycenter at degree 8), so the cut sits at 1e-28.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub point_tol: f64,
    pub conic_tol: f64,
    pub curve_tol: f64,
    pub circle_tol: f64,
    pub max_degree: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { point_tol: 1e-8, conic_tol: 1e-28, curve_tol: 1e-28, circle_tol: 1e-8, max_degree: 8 }
    }
}

impl Tolerances {
    /// Thresholds for plain `f64` samples.
    pub fn double() -> Self {
        Tolerances { point_tol: 1e-8, conic_tol: 1e-7, curve_tol: 1e-6, circle_tol: 1e-8, max_degree: 8 }
    }

    pub fn for_real<T: Real>() -> Self {
        if T::EPSILON < 1e-20 {
            Tolerances::default()
        } else {
            Tolerances::double()
        }
    }

    fn for_degree(&self, degree: u32) -> f64 {
        if degree == 2 {
            self.conic_tol
        } else {
            self.curve_tol
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Point,
    Circle,
    Ellipse,
    /// Smallest degree with a vanishing residual (2 means a conic that is
    /// neither a real ellipse nor a point).
    AlgebraicDegree(u32),
    NonConic,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Point => "point",
            Verdict::Circle => "circle",
            Verdict::Ellipse => "ellipse",
            Verdict::AlgebraicDegree(_) => "algebraic",
            Verdict::NonConic => "nonconic",
        }
    }

    /// Table letter: P, C, E, the degree, or N.
    pub fn letter(&self) -> String {
        match self {
            Verdict::Point => "P".into(),
            Verdict::Circle => "C".into(),
            Verdict::Ellipse => "E".into(),
            Verdict::AlgebraicDegree(d) => d.to_string(),
            Verdict::NonConic => "N".into(),
        }
    }

    pub fn is_conic(&self) -> bool {
        matches!(self, Verdict::Circle | Verdict::Ellipse | Verdict::AlgebraicDegree(2))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AlgebraicDegree(d) => write!(f, "algebraic({d})"),
            v => f.write_str(v.name()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One rung of the degree ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderStep {
    pub degree: u32,
    pub residual: f64,
    /// Number of singular values at or below the degree's tolerance.
    pub null_dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveFit {
    pub verdict: Verdict,
    pub degree: u32,
    /// RMS of the implicit polynomial over the normalized samples.
    pub residual: f64,
    /// Unit-norm coefficients in normalized coordinates, ordered by
    /// descending total degree (`x², xy, y², x, y, 1` for conics).
    pub coeffs: Vec<f64>,
    /// More than one independent curve fits at `degree`.
    pub ambiguous: bool,
    pub ladder: Vec<LadderStep>,
    /// Max pairwise sample distance over the reference scale.
    pub spread: f64,
    /// Fitted conic in the input frame, for conic verdicts.
    pub conic: Option<ConicShape>,
    #[serde(skip)]
    pub conic_coeffs: Option<[f64; 6]>,
    pub center: Point,
    pub scale: f64,
}

/// `(i, j)` for `x^i y^j`, by ascending total degree, `x^k` first.
pub fn monomial_exponents(max_degree: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for k in 0..=max_degree {
        for j in 0..=k {
            v.push((k - j, j));
        }
    }
    v
}

fn monomial_count(degree: u32) -> usize {
    ((degree + 1) * (degree + 2) / 2) as usize
}

struct Normalized<T> {
    pts: Vec<Point<T>>,
    center: Point<T>,
    scale: T,
}

fn normalize<T: Real>(pts: &[Point<T>]) -> Normalized<T> {
    let n = T::from_f64(pts.len() as f64);
    let mut c = Point::origin();
    for p in pts {
        c = c + *p;
    }
    let center = c.scale(T::one() / n);
    let mut s2 = T::zero();
    for p in pts {
        s2 += (*p - center).norm2();
    }
    let mut scale = (s2 / n).sqrt();
    if !(scale > T::zero()) {
        scale = T::one();
    }
    let inv = T::one() / scale;
    Normalized { pts: pts.iter().map(|p| (*p - center).scale(inv)).collect(), center, scale }
}

struct RawStep<T> {
    degree: u32,
    residual: f64,
    singular: Vec<f64>,
    /// Ascending-degree order, matching [`monomial_exponents`].
    coeffs: Vec<T>,
}

/// Computes degree fits 1..=max lazily from one QR factorization.
struct Ladder<T> {
    r: Vec<Vec<T>>,
    rows: f64,
    max_degree: u32,
}

impl<T: Real> Ladder<T> {
    fn new(pts: &[Point<T>], max_degree: u32) -> Self {
        // highest degree with at least two samples per monomial
        let mut top = max_degree;
        while top > 1 && pts.len() < 2 * monomial_count(top) {
            top -= 1;
        }
        let exps = monomial_exponents(top);
        let mut cols: Vec<Vec<T>> = vec![Vec::with_capacity(pts.len()); exps.len()];
        for p in pts {
            let mut xp = vec![T::one(); top as usize + 1];
            let mut yp = vec![T::one(); top as usize + 1];
            for k in 1..=top as usize {
                xp[k] = xp[k - 1] * p.x;
                yp[k] = yp[k - 1] * p.y;
            }
            for (col, &(i, j)) in cols.iter_mut().zip(&exps) {
                col.push(xp[i as usize] * yp[j as usize]);
            }
        }
        Ladder { r: householder_r(cols), rows: pts.len() as f64, max_degree: top }
    }

    fn step(&self, degree: u32) -> RawStep<T> {
        let m = monomial_count(degree);
        let block: Vec<Vec<T>> = self.r[..m].iter().map(|row| row[..m].to_vec()).collect();
        let svd = jacobi_svd(&block);
        let norm = self.rows.sqrt();
        let singular: Vec<f64> = svd.values.iter().map(|s| s.to_f64() / norm).collect();
        RawStep { degree, residual: singular[0], singular, coeffs: svd.vectors[0].clone() }
    }
}

fn descending<T: Real>(degree: u32, ascending: &[T]) -> Vec<f64> {
    let exps = monomial_exponents(degree);
    let mut idx: Vec<usize> = (0..exps.len()).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(exps[i].0 + exps[i].1), std::cmp::Reverse(exps[i].0)));
    let mut out: Vec<f64> = idx.iter().map(|&i| ascending[i].to_f64()).collect();
    // sign: first nonzero (largest magnitude leading) positive
    if let Some(first) = out.iter().copied().find(|c| c.abs() > 1e-300) {
        if first < 0.0 {
            out.iter_mut().for_each(|c| *c = -*c);
        }
    }
    out
}

/// Conic of normalized coordinates `(p − center)/scale` expressed in the
/// input frame.
pub(super) fn denormalize_conic<T: Real>(asc: &[T], center: Point<T>, scale: T) -> [T; 6] {
    // ascending order: 1, x, y, x², xy, y²
    let (f, d, e, a, b, c) = (asc[0], asc[1], asc[2], asc[3], asc[4], asc[5]);
    let two = T::from_f64(2.0);
    let (cx, cy) = (center.x, center.y);
    let s2 = scale * scale;
    [
        a / s2,
        b / s2,
        c / s2,
        (-(two * a * cx) - b * cy) / s2 + d / scale,
        (-(two * c * cy) - b * cx) / s2 + e / scale,
        (a * cx * cx + b * cx * cy + c * cy * cy) / s2 - (d * cx + e * cy) / scale + f,
    ]
}

fn fit_result<T: Real>(
    step: &RawStep<T>,
    verdict: Verdict,
    ladder: Vec<LadderStep>,
    spread: f64,
    norm: &Normalized<T>,
    tol: f64,
    circle_tol: f64,
) -> CurveFit {
    let null = step.singular.iter().filter(|s| **s <= tol).count();
    let (conic, conic_coeffs) = if step.degree == 2 {
        let c = denormalize_conic(&step.coeffs, norm.center, norm.scale).map(|c| c.to_f64());
        match Conic::new(c) {
            Ok(k) => (Some(classify_conic(&k, circle_tol)), Some(k.coeffs())),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    CurveFit {
        verdict,
        degree: step.degree,
        residual: step.residual,
        coeffs: descending(step.degree, &step.coeffs),
        ambiguous: null > 1,
        ladder,
        spread,
        conic,
        conic_coeffs,
        center: norm.center.to_f64(),
        scale: norm.scale.to_f64(),
    }
}

fn conic_verdict(shape: Option<&ConicShape>) -> Verdict {
    match shape.map(|s| s.kind) {
        Some(ConicKind::Circle) => Verdict::Circle,
        Some(ConicKind::Ellipse) => Verdict::Ellipse,
        Some(ConicKind::Point) => Verdict::Point,
        _ => Verdict::AlgebraicDegree(2),
    }
}

fn check_count(n: usize, needed: usize) -> Result<(), LocusError> {
    if n < needed {
        return Err(LocusError::InsufficientSamples { found: n, required: needed });
    }
    Ok(())
}

/// Least-squares implicit fit of one degree with precision-appropriate
/// tolerances.
pub fn fit_curve<T: Real>(pts: &[Point<T>], degree: u32) -> Result<CurveFit, LocusError> {
    fit_curve_with(pts, degree, &Tolerances::for_real::<T>())
}

/// Fit of exactly `degree`. The verdict is the conic class (degree 2) or
/// `AlgebraicDegree(degree)` when the residual is within tolerance,
/// `NonConic` otherwise.
pub fn fit_curve_with<T: Real>(pts: &[Point<T>], degree: u32, tols: &Tolerances) -> Result<CurveFit, LocusError> {
    assert!(degree >= 1);
    check_count(pts.len(), 2 * monomial_count(degree))?;
    let norm = normalize(pts);
    let ladder = Ladder::new(&norm.pts, degree);
    let step = ladder.step(degree);
    let tol = tols.for_degree(degree);
    let mut fit = fit_result(&step, Verdict::NonConic, Vec::new(), 0.0, &norm, tol, tols.circle_tol);
    fit.ladder = vec![LadderStep { degree, residual: step.residual, null_dimension: step.singular.iter().filter(|s| **s <= tol).count() }];
    if step.residual <= tol {
        fit.verdict = if degree == 2 { conic_verdict(fit.conic.as_ref()) } else { Verdict::AlgebraicDegree(degree) };
    }
    Ok(fit)
}

/// Residuals for every degree from 1 to `max_degree`.
pub fn fit_ladder<T: Real>(pts: &[Point<T>], max_degree: u32, tols: &Tolerances) -> Result<Vec<LadderStep>, LocusError> {
    check_count(pts.len(), 2 * monomial_count(1))?;
    let norm = normalize(pts);
    let ladder = Ladder::new(&norm.pts, max_degree);
    Ok((1..=ladder.max_degree)
        .map(|d| {
            let s = ladder.step(d);
            let tol = tols.for_degree(d);
            LadderStep { degree: d, residual: s.residual, null_dimension: s.singular.iter().filter(|x| **x <= tol).count() }
        })
        .collect())
}

/// Verdict ladder: point, then degree 1, the conic fit, then degrees up to
/// `max_degree`; the first degree whose residual is within tolerance wins.
/// `scale` is the reference length for the point test.
pub fn classify_points<T: Real>(pts: &[Point<T>], scale: f64, tols: &Tolerances) -> Result<CurveFit, LocusError> {
    check_count(pts.len(), MIN_SAMPLES)?;
    let spread = diameter(pts) / scale;
    let norm = normalize(pts);
    if spread <= tols.point_tol {
        return Ok(CurveFit {
            verdict: Verdict::Point,
            degree: 0,
            residual: 0.0,
            coeffs: Vec::new(),
            ambiguous: false,
            ladder: Vec::new(),
            spread,
            conic: Some(ConicShape { kind: ConicKind::Point, center: Some(norm.center.to_f64()), semi_axes: None, rotation: None }),
            conic_coeffs: None,
            center: norm.center.to_f64(),
            scale: norm.scale.to_f64(),
        });
    }
    let ladder = Ladder::new(&norm.pts, tols.max_degree);
    let mut steps = Vec::new();
    let mut last = None;
    for degree in 1..=ladder.max_degree {
        let step = ladder.step(degree);
        let tol = tols.for_degree(degree);
        steps.push(LadderStep { degree, residual: step.residual, null_dimension: step.singular.iter().filter(|s| **s <= tol).count() });
        if step.residual <= tol {
            let mut fit = fit_result(&step, Verdict::AlgebraicDegree(degree), steps, spread, &norm, tol, tols.circle_tol);
            if degree == 2 {
                fit.verdict = conic_verdict(fit.conic.as_ref());
            }
            return Ok(fit);
        }
        last = Some(step);
    }
    let step = last.expect("ladder has at least degree 1");
    // report the best conic fit alongside the NonConic verdict
    let conic_step = if ladder.max_degree >= 2 { ladder.step(2) } else { step };
    Ok(fit_result(&conic_step, Verdict::NonConic, steps, spread, &norm, tols.conic_tol, tols.circle_tol))
}

pub fn classify_locus(l: &Locus, tols: &Tolerances) -> Result<CurveFit, LocusError> {
    classify_points::<Dd>(l.precise_points(), l.family.outer_scale(), tols)
}
