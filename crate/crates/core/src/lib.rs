//! Poncelet triangle families with one, two or three caustics from a pencil
//! of conics, loci of their triangle centers, and numerical checks of the
//! closed forms those loci obey.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod centers;
pub mod dd;
pub mod families;
pub mod geometry;
pub mod linalg;
pub mod loci;
pub mod real;
pub mod verification;

pub use centers::{builtin_centers, center, center_by_id, excenters, parse_center, CenterDefinition, CenterError, ExcentralTriangle};
pub use dd::Dd;
pub use families::{
    BicentricParams, ConfocalParams, Family, FamilyConfig, FamilyError, FamilyParams, Sign, TangentBranch, Triangle,
};
pub use geometry::{classify_conic, pencil_member, CirclePencil, Conic, ConicKind, ConicShape, GeometryError, Line, Point};
pub use loci::{classify_locus, fit_curve, sample_locus, trace_locus, CurveFit, Locus, LocusError, Sample, Tolerances, Tracked, Verdict};
pub use real::Real;
