//! Loci of tracked points over a family sweep, and the curve analysis run on
//! them.
//!
//! Sweeps are evaluated in double-double arithmetic. The `f64` samples are
//! what gets exported; the extended points feed the fitter so that exact
//! algebraic relations show up as residuals near 1e-30 instead of 1e-15.

mod convex;
mod envelope;
mod fit;
mod sextic;
mod sextic_tables;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::centers::{center, center_by_id, excenters, CenterError};
use crate::dd::Dd;
use crate::families::{FamilyConfig, FamilyError, Triangle};
use crate::geometry::Point;
use crate::real::Real;

pub use convex::{convexity_check, convexity_lambda_root, convexity_lambda_root_with, convexity_quintic, ConvexityRoot, RootBound};
pub use envelope::{characteristic_points, chord_lines, fit_envelope, EnvelopeFit};
pub use fit::{classify_locus, classify_points, fit_curve, fit_curve_with, fit_ladder, monomial_exponents, CurveFit, LadderStep, Tolerances, Verdict};
pub use sextic::{resultant_x2_sextic, sextic_residual, stated_x2_sextic, verify_implicit_sextic_x2, Poly2};

/// Minimum number of valid samples for any fit.
pub const MIN_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocusError {
    #[error("{found} valid samples, at least {required} required")]
    InsufficientSamples { found: usize, required: usize },
    #[error("unknown tracked point {0:?}")]
    UnknownTracked(String),
    #[error("no qualifying convexity root")]
    NoConvexityRoot,
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Center(#[from] CenterError),
}

/// A point followed over the sweep: a center, a vertex, or an excenter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tracked {
    Center(u32),
    /// Vertex `P1`..`P3`.
    Vertex(usize),
    /// Excenter `P1'`..`P3'` (opposite the vertex with the same index).
    Excenter(usize),
}

impl Tracked {
    pub fn label(&self) -> String {
        match self {
            Tracked::Center(k) => format!("X{k}"),
            Tracked::Vertex(i) => format!("P{i}"),
            Tracked::Excenter(i) => format!("P{i}'"),
        }
    }

    /// Position on one triangle.
    pub fn eval<T: Real>(&self, tri: &Triangle<T>) -> Result<Point<T>, CenterError> {
        match *self {
            Tracked::Center(k) => {
                let def = center_by_id(k).ok_or_else(|| CenterError::UnknownCenter(format!("X{k}")))?;
                center(tri, &def)
            }
            Tracked::Vertex(i) => Ok(tri.vertices()[i - 1]),
            Tracked::Excenter(i) => Ok(excenters(tri)?.get(i)),
        }
    }
}

impl fmt::Display for Tracked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Tracked {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Accepts `X9`, `x9`, `9`, `P2`, `P1'`, `P1p`.
impl FromStr for Tracked {
    type Err = LocusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || LocusError::UnknownTracked(s.to_string());
        if let Some(rest) = t.strip_prefix('P').or_else(|| t.strip_prefix('p')) {
            let (digits, ex) = match rest.strip_suffix('\'').or_else(|| rest.strip_suffix('p')) {
                Some(d) => (d, true),
                None => (rest, false),
            };
            let i: usize = digits.parse().map_err(|_| bad())?;
            if !(1..=3).contains(&i) {
                return Err(bad());
            }
            return Ok(if ex { Tracked::Excenter(i) } else { Tracked::Vertex(i) });
        }
        let digits = t.strip_prefix('X').or_else(|| t.strip_prefix('x')).unwrap_or(t);
        let k: u32 = digits.parse().map_err(|_| bad())?;
        center_by_id(k).ok_or_else(bad)?;
        Ok(Tracked::Center(k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub p: Point,
    pub valid: bool,
}

#[derive(Debug, Clone)]
pub struct Locus {
    pub family: FamilyConfig,
    pub tracked: Tracked,
    pub samples: Vec<Sample>,
    precise: Vec<Point<Dd>>,
}

impl Locus {
    /// Valid samples in extended precision, in sweep order.
    pub fn precise_points(&self) -> &[Point<Dd>] {
        &self.precise
    }

    pub fn valid_points(&self) -> Vec<Point> {
        self.samples.iter().filter(|s| s.valid).map(|s| s.p).collect()
    }

    pub fn valid_count(&self) -> usize {
        self.precise.len()
    }

    /// Builds a locus from externally produced samples (their `f64` values
    /// become the precise points).
    pub fn from_samples(family: FamilyConfig, tracked: Tracked, samples: Vec<Sample>) -> Self {
        let precise = samples.iter().filter(|s| s.valid).map(|s| Point::from_f64(s.p)).collect();
        Locus { family, tracked, samples, precise }
    }
}

/// Traces `tracked` at `n` uniform parameter values.
pub fn trace_locus(cfg: &FamilyConfig, tracked: Tracked, n: usize) -> Result<Locus, LocusError> {
    if n < MIN_SAMPLES {
        return Err(LocusError::InsufficientSamples { found: n, required: MIN_SAMPLES });
    }
    let locus = sample_locus(cfg, tracked, n)?;
    if locus.valid_count() < MIN_SAMPLES {
        return Err(LocusError::InsufficientSamples { found: locus.valid_count(), required: MIN_SAMPLES });
    }
    Ok(locus)
}

/// Like [`trace_locus`] without the minimum sample count (for export).
pub fn sample_locus(cfg: &FamilyConfig, tracked: Tracked, n: usize) -> Result<Locus, LocusError> {
    cfg.validate()?;
    if let Tracked::Center(k) = tracked {
        center_by_id(k).ok_or_else(|| CenterError::UnknownCenter(format!("X{k}")))?;
    }
    let points: Vec<(f64, Option<Point<Dd>>)> = cfg
        .sweep::<Dd>(n)
        .into_par_iter()
        .map(|tri| {
            let p = if tri.valid { tracked.eval(&tri).ok().filter(|p| p.is_finite()) } else { None };
            (tri.t, p)
        })
        .collect();
    let samples = points
        .iter()
        .map(|&(t, p)| match p {
            Some(p) => Sample { t, p: p.to_f64(), valid: true },
            None => Sample { t, p: Point::xy(f64::NAN, f64::NAN), valid: false },
        })
        .collect();
    let precise: Vec<Point<Dd>> = points.into_iter().filter_map(|(_, p)| p).collect();
    Ok(Locus { family: *cfg, tracked, samples, precise })
}

/// Diameter of a point set (max pairwise distance).
pub fn diameter<T: Real>(pts: &[Point<T>]) -> f64 {
    let mut best = T::zero();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let d = (*p - *q).norm2();
            if d > best {
                best = d;
            }
        }
    }
    best.sqrt().to_f64()
}

/// Max pairwise distance of the valid samples over the outer-conic scale.
pub fn stationarity_spread(l: &Locus) -> f64 {
    diameter(&l.precise) / l.family.outer_scale()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyConfig, TangentBranch};

    #[test]
    fn parse_tracked() {
        assert_eq!("X165".parse::<Tracked>().unwrap(), Tracked::Center(165));
        assert_eq!("9".parse::<Tracked>().unwrap(), Tracked::Center(9));
        assert_eq!("P2".parse::<Tracked>().unwrap(), Tracked::Vertex(2));
        assert_eq!("P1'".parse::<Tracked>().unwrap(), Tracked::Excenter(1));
        assert_eq!("P3p".parse::<Tracked>().unwrap(), Tracked::Excenter(3));
        assert!("P4".parse::<Tracked>().is_err());
        assert!("X12345".parse::<Tracked>().is_err());
        assert_eq!(Tracked::Excenter(2).to_string(), "P2'");
    }

    #[test]
    fn too_few_samples() {
        let cfg = FamilyConfig::bic_ii(1.0, 0.2, 0.3).unwrap();
        assert!(matches!(
            trace_locus(&cfg, Tracked::Center(1), 16),
            Err(LocusError::InsufficientSamples { found: 16, required: 32 })
        ));
    }

    #[test]
    fn conf_i_mittenpunkt_is_stationary() {
        let cfg = FamilyConfig::conf_i(2.0, 1.0).unwrap();
        let l = trace_locus(&cfg, Tracked::Center(9), 512).unwrap();
        assert_eq!(l.valid_count(), 512);
        assert!(l.valid_points().iter().all(|p| p.norm() < 1e-10));
    }

    #[test]
    fn bic_i_incenter_fixed() {
        let cfg = FamilyConfig::bic_i(1.0, 0.2).unwrap();
        let d = cfg.bicentric().unwrap().d;
        let l = trace_locus(&cfg, Tracked::Center(1), 128).unwrap();
        assert!(l.valid_points().iter().all(|p| p.dist(Point::xy(d, 0.0)) < 1e-12));
        assert!(stationarity_spread(&l) < 1e-10);
    }

    #[test]
    fn vertex_locus_is_outer_conic() {
        let cfgs = [
            FamilyConfig::bic_ii(1.0, 0.2, 0.3).unwrap(),
            FamilyConfig::conf_ii(2.0, 1.0, 0.5).unwrap(),
            FamilyConfig::bic_iii(1.0, 0.15, 0.25, 0.4, TangentBranch::PLUS_PLUS).unwrap(),
        ];
        for cfg in cfgs {
            let outer = cfg.outer_conic();
            for i in 1..=3 {
                let l = trace_locus(&cfg, Tracked::Vertex(i), 64).unwrap();
                assert!(l.valid_points().iter().all(|p| outer.eval(*p).abs() < 1e-12));
            }
        }
    }
}
