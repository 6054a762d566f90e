//! Envelopes of one-parameter line families.
//!
//! A conic envelope is fitted in line coordinates: the lines `(a, b, c)`
//! tangent to a conic satisfy `lᵀ D l = 0` for the dual conic `D`, and the
//! envelope itself is `adj(D)`. When every line passes through one point the
//! dual is a rank-one form, detected first by a linear fit.

use super::fit::denormalize_conic;
use super::LocusError;
use crate::families::{FamilyConfig, FamilyError};
use crate::geometry::{Conic, Line, Point};
use crate::linalg::{householder_r, jacobi_svd};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeFit {
    /// Common point of all lines, when they are concurrent.
    pub point: Option<Point>,
    pub conic: Option<Conic>,
    /// RMS of the linear (concurrency) condition, normalized frame.
    pub point_residual: f64,
    /// RMS of the dual-conic condition, normalized frame.
    pub conic_residual: f64,
}

/// Lines through sides `PiPj` of the valid triangles of an `n`-sample sweep.
pub fn chord_lines<T: Real>(cfg: &FamilyConfig, n: usize, side: (usize, usize)) -> Result<Vec<Line<T>>, FamilyError> {
    cfg.validate()?;
    Ok(cfg
        .sweep::<T>(n)
        .into_iter()
        .filter(|t| t.valid)
        .filter_map(|t| {
            let v = t.vertices();
            Line::through(v[side.0 - 1], v[side.1 - 1]).ok()
        })
        .collect())
}

fn smallest<T: Real>(cols: Vec<Vec<T>>) -> (f64, Vec<T>) {
    let rows = cols[0].len() as f64;
    let svd = jacobi_svd(&householder_r(cols));
    (svd.values[0].to_f64() / rows.sqrt(), svd.vectors[0].clone())
}

/// Fits the envelope of `lines`; `tol` bounds the residuals that count as
/// exact.
pub fn fit_envelope<T: Real>(lines: &[Line<T>], tol: f64) -> Result<EnvelopeFit, LocusError> {
    if lines.len() < super::MIN_SAMPLES {
        return Err(LocusError::InsufficientSamples { found: lines.len(), required: super::MIN_SAMPLES });
    }
    let n = T::from_f64(lines.len() as f64);
    let feet: Vec<Point<T>> = lines.iter().map(|l| l.foot()).collect();
    let mut center = Point::origin();
    for f in &feet {
        center = center + *f;
    }
    let center = center.scale(T::one() / n);
    let mut s2 = T::zero();
    for f in &feet {
        s2 += (*f - center).norm2();
    }
    let mut scale = (s2 / n).sqrt();
    if !(scale > T::zero()) {
        scale = T::one();
    }
    let norm: Vec<[T; 3]> = lines.iter().map(|l| [l.a, l.b, (l.a * center.x + l.b * center.y + l.c) / scale]).collect();

    let lin: Vec<Vec<T>> = (0..3).map(|k| norm.iter().map(|l| l[k]).collect()).collect();
    let (point_residual, v) = smallest(lin);
    let point = if point_residual <= tol && v[2].abs().to_f64() > 1e-300 {
        let p = Point::new(v[0] / v[2], v[1] / v[2]);
        Some((center + p.scale(scale)).to_f64())
    } else {
        None
    };

    let quad: Vec<Vec<T>> = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2)]
        .iter()
        .map(|&(i, j)| norm.iter().map(|l| l[i] * l[j]).collect())
        .collect();
    let (conic_residual, q) = smallest(quad);
    let conic = if point.is_some() {
        None
    } else {
        let two = T::from_f64(2.0);
        let m = [[q[0], q[1] / two, q[3] / two], [q[1] / two, q[2], q[4] / two], [q[3] / two, q[4] / two, q[5]]];
        let adj = |i: usize, j: usize| {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        // ascending monomial order: 1, x, y, x², xy, y²
        let asc = [adj(2, 2), two * adj(0, 2), two * adj(1, 2), adj(0, 0), two * adj(0, 1), adj(1, 1)];
        Conic::new(denormalize_conic(&asc, center, scale).map(|c| c.to_f64())).ok()
    };
    Ok(EnvelopeFit { point, conic, point_residual, conic_residual })
}

/// Intersections of consecutive lines: finite-difference samples of the
/// envelope.
pub fn characteristic_points<T: Real>(lines: &[Line<T>]) -> Vec<Point<T>> {
    lines.windows(2).filter_map(|w| w[0].intersect(&w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;
    use crate::families::{bic2_envelope, conf2_envelope, FamilyConfig};
    use crate::loci::fit_curve;

    #[test]
    fn tangents_of_an_ellipse() {
        let lines: Vec<Line<Dd>> = (0..100)
            .map(|i| {
                let (c, s) = <Dd as Real>::unit(0.0628 * i as f64);
                // tangent to x²/9 + (y-1)²/4 = 1 at (3c, 1 + 2s)
                let (a, b) = (c / Dd::from_f64(3.0), s / Dd::from_f64(2.0));
                Line::new(a, b, -(a * Dd::from_f64(3.0) * c + b * (Dd::from_f64(1.0) + Dd::from_f64(2.0) * s))).unwrap()
            })
            .collect();
        let fit = fit_envelope(&lines, 1e-24).unwrap();
        assert!(fit.point.is_none());
        assert!(fit.conic_residual < 1e-28);
        let want = Conic::ellipse(Point::xy(0.0, 1.0), 3.0, 2.0);
        assert!(fit.conic.unwrap().coeff_distance(&want) < 1e-14);
    }

    #[test]
    fn concurrent_lines_give_a_point() {
        let lines: Vec<Line<Dd>> = (0..60)
            .map(|i| {
                let (c, s) = <Dd as Real>::unit(0.05 * i as f64);
                Line::through(Point::new(Dd::from_f64(0.5), Dd::from_f64(-1.0)), Point::new(Dd::from_f64(0.5) + c, Dd::from_f64(-1.0) + s)).unwrap()
            })
            .collect();
        let fit = fit_envelope(&lines, 1e-24).unwrap();
        assert!(fit.point.unwrap().dist(Point::xy(0.5, -1.0)) < 1e-20);
    }

    #[test]
    fn bic_ii_envelope_matches_closed_form() {
        let cfg = FamilyConfig::bic_ii(1.0, 0.2, 0.3).unwrap();
        let lines = chord_lines::<Dd>(&cfg, 256, (2, 3)).unwrap();
        let fit = fit_envelope(&lines, 1e-24).unwrap();
        let env = bic2_envelope(cfg.bicentric().unwrap());
        assert!(fit.conic.unwrap().coeff_distance(&env.conic()) < 1e-12);
    }

    #[test]
    fn finite_difference_oracle_agrees() {
        let cfg = FamilyConfig::conf_ii(2.0, 1.0, 0.5).unwrap();
        let p = *cfg.confocal().unwrap();
        let lines = chord_lines::<Dd>(&cfg, 2048, (2, 3)).unwrap();
        let pts = characteristic_points(&lines);
        let fit = fit_curve(&pts, 2).unwrap();
        let env = conf2_envelope(&p);
        let (ma, mi) = fit.conic.unwrap().semi_axes.unwrap();
        assert!((ma - env.a.max(env.b)).abs() < 1e-4 && (mi - env.a.min(env.b)).abs() < 1e-4, "{ma} {mi} {env:?}");
    }
}
