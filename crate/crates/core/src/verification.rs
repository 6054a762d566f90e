//! Numerical checks of the closed forms obeyed by the loci, and the two
//! summary tables.
//!
//! Every check returns a [`ClaimReport`] holding a list of [`Condition`]s.
//! A condition compares one measured value against a bound, either from
//! above (residuals) or from below (negative controls, separations). The
//! report's `metric` is the worst condition expressed as a fraction of its
//! bound, so `status` is `pass` exactly when `metric <= tolerance = 1`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::centers::CenterError;
use crate::dd::Dd;
use crate::families::{
    bic2_envelope, conf2_envelope, critical_lambda, n4_caustic, n6_caustic, BicentricParams, ConfocalParams, Family,
    FamilyConfig, FamilyError, FamilyParams, TangentBranch,
};
use crate::geometry::{Conic, GeometryError, Line, Point};
use crate::loci::{
    chord_lines, classify_locus, convexity_check, convexity_lambda_root, diameter, fit_envelope, fit_ladder,
    resultant_x2_sextic, sextic_residual, stated_x2_sextic, trace_locus, CurveFit, Locus, LocusError, Tolerances,
    Tracked, Verdict,
};

/// Samples per traced locus unless a check says otherwise.
pub const DEFAULT_SAMPLES: usize = 512;

/// Centers of the bic-I stationarity table.
pub const TABLE1_CENTERS: [u32; 14] = [1, 3, 35, 36, 40, 46, 55, 56, 57, 65, 165, 354, 484, 942];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("claim {claim} needs {what} parameters")]
    WrongParams { claim: String, what: &'static str },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Locus(#[from] LocusError),
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Theorems and table reproductions fail a run; conjectures are reported
/// as numerical evidence only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Theorem,
    Table,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cmp {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub value: f64,
    pub cmp: Cmp,
    pub bound: f64,
    pub pass: bool,
}

impl Condition {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Condition { name: name.into(), value, cmp: Cmp::AtMost, bound, pass: value <= bound }
    }

    pub fn above(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Condition { name: name.into(), value, cmp: Cmp::Above, bound, pass: value > bound }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Condition::at_most(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    /// Value over bound (inverted for lower bounds); at most 1 iff it holds.
    pub fn ratio(&self) -> f64 {
        let r = match self.cmp {
            Cmp::AtMost if self.bound == 0.0 => {
                if self.value <= 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Cmp::AtMost => self.value / self.bound,
            Cmp::Above if self.value <= 0.0 => f64::INFINITY,
            Cmp::Above => self.bound / self.value,
        };
        match (self.pass, r.is_nan()) {
            (_, true) => f64::INFINITY,
            (true, _) => r.min(1.0),
            (false, _) => r.max(1.0 + f64::EPSILON),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub kind: ClaimKind,
    /// "verified" or "numerical evidence" for passing reports.
    pub label: String,
    pub status: Status,
    /// Worst condition as a fraction of its bound.
    pub metric: f64,
    pub tolerance: f64,
    pub params: Vec<FamilyConfig>,
    pub expected: String,
    pub observed: String,
    pub conditions: Vec<Condition>,
}

impl ClaimReport {
    pub fn new(
        claim_id: &str,
        kind: ClaimKind,
        params: Vec<FamilyConfig>,
        expected: impl Into<String>,
        observed: impl Into<String>,
        conditions: Vec<Condition>,
    ) -> Self {
        let metric = conditions.iter().map(Condition::ratio).fold(0.0, f64::max);
        let status = if metric <= 1.0 { Status::Pass } else { Status::Fail };
        let label = match (kind, status) {
            (ClaimKind::Conjecture, _) => "numerical evidence",
            (_, Status::Pass) => "verified",
            (_, Status::Fail) => "failed",
        };
        ClaimReport {
            claim_id: claim_id.to_string(),
            kind,
            label: label.to_string(),
            status,
            metric,
            tolerance: 1.0,
            params,
            expected: expected.into(),
            observed: observed.into(),
            conditions,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Whether this report fails a `verify` run.
    pub fn blocks_run(&self) -> bool {
        !self.passed() && self.kind != ClaimKind::Conjecture
    }

    pub fn failed_conditions(&self) -> Vec<&Condition> {
        self.conditions.iter().filter(|c| !c.pass).collect()
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let st = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{st} {} [{}] metric={:.3e}", self.claim_id, self.label, self.metric)?;
        for c in self.failed_conditions() {
            let op = if c.cmp == Cmp::AtMost { "<=" } else { ">" };
            write!(f, "; {}: {:.3e} not {op} {:.1e}", c.name, c.value, c.bound)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// closed forms

/// Center and radius of the bic-II incenter circle.
pub fn bic_x1_circle(p: &BicentricParams) -> (Point, f64) {
    let (big_r, r, d) = (p.big_r, p.r, p.d);
    let den = big_r * big_r - d * d;
    (Point::xy(2.0 * d * big_r * r / den, 0.0), big_r * (big_r * big_r - 2.0 * big_r * r - d * d) / den)
}

/// Radius of the circle swept by `P1'` over bic-II (centered at `-O1`).
pub fn bic_excenter_radius(p: &BicentricParams) -> f64 {
    let (big_r, r, d) = (p.big_r, p.r, p.d);
    big_r * (big_r * big_r + 2.0 * big_r * r - d * d) / (big_r * big_r - d * d)
}

/// Semi-axes `(a_e, b_e)` of the ellipse swept by `P2'` and `P3'` over
/// conf-II.
pub fn conf_excenter_ellipse(p: &ConfocalParams) -> (f64, f64) {
    let (a, b, lam) = (p.a, p.b, p.lambda);
    let (a2b2, c2) = (a * a * b * b, p.c2());
    let k = ((a + b).powi(2) * lam + a2b2) * ((a - b).powi(2) * lam + a2b2);
    let sk = k.sqrt();
    (sk * a / (a2b2 + c2 * lam), sk * b / (a2b2 - c2 * lam))
}

/// Semi-axes of the conf-I incenter ellipse along x and y.
pub fn conf1_incenter_axes(a: f64, b: f64) -> (f64, f64) {
    let delta = (a.powi(4) - a * a * b * b + b.powi(4)).sqrt();
    ((delta - b * b) / a, (a * a - delta) / b)
}

/// Semi-axes of the conf-I excentral ellipse along x and y.
pub fn conf1_excentral_axes(a: f64, b: f64) -> (f64, f64) {
    let delta = (a.powi(4) - a * a * b * b + b.powi(4)).sqrt();
    ((b * b + delta) / a, (a * a + delta) / b)
}

/// `r` for which the bic-II envelope circle collapses to a point.
pub fn degenerate_envelope_r(big_r: f64, d: f64) -> f64 {
    (big_r * big_r - d * d) / (2.0 * (big_r * big_r + d * d)).sqrt()
}

pub fn n4_lambda(a: f64, b: f64) -> f64 {
    a * a - n4_caustic(a, b).0.powi(2)
}

pub fn n6_lambda(a: f64, b: f64) -> f64 {
    a * a - n6_caustic(a, b).0.powi(2)
}

// ---------------------------------------------------------------------------
// helpers

fn bic_config(p: &BicentricParams) -> Result<FamilyConfig, FamilyError> {
    if p.chapple_defect() <= 1e-12 {
        FamilyConfig::bic_i(p.big_r, p.r)
    } else {
        FamilyConfig::bic_ii(p.big_r, p.r, p.d)
    }
}

fn conf_config(p: &ConfocalParams) -> Result<FamilyConfig, FamilyError> {
    let lc = critical_lambda(p.a, p.b)?;
    if (p.lambda - lc).abs() <= 1e-12 * p.a * p.a {
        FamilyConfig::conf_i(p.a, p.b)
    } else {
        FamilyConfig::conf_ii(p.a, p.b, p.lambda)
    }
}

fn circle_dev(pts: &[Point], c: Point, r: f64) -> f64 {
    pts.iter().map(|p| (p.dist(c) - r).abs()).fold(0.0, f64::max)
}

fn ellipse_dev(pts: &[Point], a: f64, b: f64) -> f64 {
    pts.iter().map(|p| (p.x * p.x / (a * a) + p.y * p.y / (b * b) - 1.0).abs()).fold(0.0, f64::max)
}

/// `|dist(center, line) − r|` for a line tangent to a circle.
fn circle_tangency(l: &Line, c: Point, r: f64) -> f64 {
    (l.distance(c) - r).abs()
}

/// Support-function residual of a line against the axis-aligned ellipse
/// `x²/A² + y²/B² = 1`.
fn ellipse_tangency(l: &Line, big_a: f64, big_b: f64) -> f64 {
    let n = (l.a * l.a + l.b * l.b).sqrt();
    let (a, b, c) = (l.a / n, l.b / n, l.c / n);
    ((big_a * big_a * a * a + big_b * big_b * b * b).sqrt() - c.abs()).abs()
}

/// Semi-axes along x and y of a centered axis-aligned conic.
fn axis_extents(c: &[f64; 6]) -> (f64, f64) {
    ((-c[5] / c[0]).abs().sqrt(), (-c[5] / c[2]).abs().sqrt())
}

fn sci(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(", "))
}

fn ladder_residual(fit: &[crate::loci::LadderStep], degree: u32) -> f64 {
    fit.iter().find(|s| s.degree == degree).map_or(f64::NAN, |s| s.residual)
}

/// Max over `a` of the distance to the nearest point of `b`.
fn directed_hausdorff(a: &[Point], b: &[Point]) -> f64 {
    a.iter().map(|p| b.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

pub fn hausdorff(a: &[Point], b: &[Point]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

fn tracked_at(cfg: &FamilyConfig, tracked: Tracked, t: f64) -> Option<Point<Dd>> {
    let tri = cfg.triangle::<Dd>(t).ok()?;
    tracked.eval(&tri).ok().filter(|p| p.is_finite())
}

/// Parameters `t` and points where the locus crosses the x-axis, refined
/// by bisection on `t`.
pub fn axis_crossings(l: &Locus) -> Vec<Point> {
    let s = &l.samples;
    let mut out = Vec::new();
    for i in 0..s.len() {
        let (a, b) = (s[i], s[(i + 1) % s.len()]);
        if !a.valid || !b.valid || a.p.y.signum() == b.p.y.signum() {
            continue;
        }
        let (mut lo, mut hi) = (a.t, if b.t > a.t { b.t } else { b.t + std::f64::consts::TAU });
        let ylo = a.p.y;
        let mut best = None;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let Some(p) = tracked_at(&l.family, l.tracked, mid) else { break };
            best = Some(p);
            if p.y.to_f64().signum() == ylo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if let Some(p) = best {
            out.push(p.to_f64());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// bicentric checks

/// The bic-II incenter sweeps the circle `[O1, r1]`; its reflection X40 the
/// circle `[−O1, r1]`, X165 the circle `[−O1/3, r1/3]`. The circle is not a
/// member of the pencil of the outer circle and the caustic.
pub fn check_bicii_x1_circle(p: &BicentricParams, n: usize) -> Result<ClaimReport, VerifyError> {
    let cfg = bic_config(p)?;
    let big_r = p.big_r;
    let (o1, r1) = bic_x1_circle(p);
    let x1 = trace_locus(&cfg, Tracked::Center(1), n)?.valid_points();
    let x40 = trace_locus(&cfg, Tracked::Center(40), n)?.valid_points();
    let x165 = trace_locus(&cfg, Tracked::Center(165), n)?.valid_points();
    let neg = o1.scale(-1.0);
    let dev = circle_dev(&x1, o1, r1) / big_r;
    let mut conds = vec![
        Condition::at_most("X1 distance to [O1, r1] / R", dev, 1e-9),
        Condition::at_most("X40 distance to [-O1, r1] / R", circle_dev(&x40, neg, r1) / big_r, 1e-9),
        Condition::at_most("X165 distance to [-O1/3, r1/3] / R", circle_dev(&x165, neg.scale(1.0 / 3.0), r1 / 3.0) / big_r, 1e-9),
        Condition::above(
            "negative control: X1 distance to [O1 + 1e-3 R, r1] / R",
            circle_dev(&x1, o1 + Point::xy(1e-3 * big_r, 0.0), r1) / big_r,
            1e-6,
        ),
    ];
    let poristic = cfg.family == Family::BicI;
    let mut observed = format!("O1=({:.15}, 0) r1={:.15} max deviation {:.2e} R", o1.x, r1, dev);
    if poristic {
        conds.push(Condition::at_most("|r1| / R at d² = R(R−2r)", r1.abs() / big_r, 1e-12));
        let spread = diameter(&x1) / big_r;
        conds.push(Condition::at_most("X1 spread / R", spread, 1e-10));
        observed += &format!(", X1 spread {spread:.2e} R");
    } else {
        let outer = Conic::circle(Point::xy(0.0, 0.0), big_r);
        let caustic = Conic::circle(Point::xy(p.d, 0.0), p.r);
        let span = Conic::circle(o1, r1).span_distance(&outer, &caustic);
        conds.push(Condition::above("span distance of [O1, r1] from the pencil", span, 1e-6));
        observed += &format!(", pencil span distance {span:.3e}");
    }
    Ok(ClaimReport::new(
        "thm:bicII-x1",
        ClaimKind::Theorem,
        vec![cfg],
        "X1 on [O1, r1], X40 on [-O1, r1], X165 on [-O1/3, r1/3]",
        observed,
        conds,
    ))
}

/// `P1'` sweeps `[−O1, r1']`; over bic-II the other two excenters sweep a
/// non-conic sextic and meet on the axis of symmetry.
pub fn check_bicii_excenter_circle(p: &BicentricParams, n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let cfg = bic_config(p)?;
    let big_r = p.big_r;
    let (o1, _) = bic_x1_circle(p);
    let r1p = bic_excenter_radius(p);
    let e1 = trace_locus(&cfg, Tracked::Excenter(1), n)?.valid_points();
    let center = o1.scale(-1.0);
    let dev = circle_dev(&e1, center, r1p) / big_r;
    let mut conds = vec![
        Condition::at_most("P1' distance to [-O1, r1'] / R", dev, 1e-9),
        Condition::above(
            "negative control: P1' distance to [-O1, 1.001 r1'] / R",
            circle_dev(&e1, center, 1.001 * r1p) / big_r,
            1e-6,
        ),
    ];
    let mut observed = format!("r1'={r1p:.15} max deviation {dev:.2e} R");
    if cfg.family == Family::BicI {
        conds.push(Condition::at_most("|r1' − 2R| / 2R", (r1p - 2.0 * big_r).abs() / (2.0 * big_r), 1e-12));
    } else {
        let l2 = trace_locus(&cfg, Tracked::Excenter(2), n)?;
        let l3 = trace_locus(&cfg, Tracked::Excenter(3), n)?;
        for (name, l) in [("P2'", &l2), ("P3'", &l3)] {
            let ladder = fit_ladder(l.precise_points(), 6, tols)?;
            let (c2, c6) = (ladder_residual(&ladder, 2), ladder_residual(&ladder, 6));
            conds.push(Condition::above(format!("{name} conic residual"), c2, 10.0 * tols.conic_tol));
            conds.push(Condition::at_most(format!("{name} degree-6 residual"), c6, 1e-8));
            observed += &format!(", {name} conic {c2:.2e} sextic {c6:.2e}");
        }
        let (x2, x3) = (axis_crossings(&l2), axis_crossings(&l3));
        let on_axis = x2.iter().chain(&x3).map(|q| q.y.abs()).fold(0.0, f64::max) / big_r;
        // every P2' crossing must coincide with a P3' crossing
        let mismatch = if x2.is_empty() || x3.is_empty() {
            f64::INFINITY
        } else {
            let nearest = |a: &Point| x3.iter().map(|b| (a.x - b.x).abs()).fold(f64::INFINITY, f64::min);
            x2.iter().map(nearest).fold(0.0, f64::max) / big_r
        };
        conds.push(Condition::at_most("|y| of the axis crossings / R", on_axis, 1e-6));
        conds.push(Condition::at_most("P2'/P3' axis crossing mismatch / R", mismatch, 1e-9));
        observed += &format!(", {} axis crossings", x2.len());
    }
    Ok(ClaimReport::new("cor:bicII-excenter", ClaimKind::Theorem, vec![cfg], "P1' on [-O1, r1']; P2', P3' non-conic sextics meeting on the axis", observed, conds))
}

/// The stated bic-II barycenter sextic vanishes on the traced X2 locus,
/// which is not a conic.
pub fn check_x2_sextic(p: &BicentricParams, n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let cfg = FamilyConfig::bic_ii(p.big_r, p.r, p.d)?;
    let l = trace_locus(&cfg, Tracked::Center(2), n)?;
    let stated = sextic_residual(&stated_x2_sextic(p), l.precise_points());
    let exact = sextic_residual(&resultant_x2_sextic(p), l.precise_points());
    let conic = ladder_residual(&fit_ladder(l.precise_points(), 2, tols)?, 2);
    Ok(ClaimReport::new(
        "app:bicII-x2-sextic",
        ClaimKind::Theorem,
        vec![cfg],
        "stated sextic vanishes on X2; X2 not a conic",
        format!("stated sextic residual {stated:.3e}, resultant sextic residual {exact:.3e}, conic residual {conic:.3e}"),
        vec![
            Condition::at_most("stated sextic normalized residual", stated, 1e-8),
            Condition::above("X2 conic residual", conic, 1e-3),
        ],
    ))
}

// ---------------------------------------------------------------------------
// confocal checks

/// `P2'` and `P3'` sweep one ellipse with semi-axes `(a_e, b_e)`; away from
/// the billiard caustic `P1'` is not a conic and fits a sextic to 1e-8.
pub fn check_confii_excenter_ellipse(p: &ConfocalParams, n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let cfg = conf_config(p)?;
    let exact = *cfg.confocal().expect("confocal");
    let (ae, be) = conf_excenter_ellipse(&exact);
    let mut conds = Vec::new();
    let mut observed = format!("(a_e, b_e) = ({ae:.15}, {be:.15})");
    for k in [2, 3] {
        let pts = trace_locus(&cfg, Tracked::Excenter(k), n)?.valid_points();
        let dev = ellipse_dev(&pts, ae, be);
        conds.push(Condition::at_most(format!("P{k}' ellipse equation residual"), dev, 1e-9));
        if k == 2 {
            conds.push(Condition::above(
                "negative control: P2' residual against (1.001 a_e, b_e)",
                ellipse_dev(&pts, 1.001 * ae, be),
                1e-6,
            ));
        }
        observed += &format!(", P{k}' residual {dev:.2e}");
    }
    if cfg.family == Family::ConfI {
        let (ea, eb) = conf1_excentral_axes(p.a, p.b);
        let err = ((ae - ea) / ea).abs().max(((be - eb) / eb).abs());
        conds.push(Condition::at_most("(a_e, b_e) against the conf-I excentral ellipse, relative", err, 1e-12));
    } else {
        let l1 = trace_locus(&cfg, Tracked::Excenter(1), n)?;
        let fit = classify_locus(&l1, tols)?;
        let (c2, c6) = (ladder_residual(&fit.ladder, 2), ladder_residual(&fit.ladder, 6));
        conds.push(Condition::above("P1' conic residual", c2, 10.0 * tols.conic_tol));
        conds.push(Condition::at_most("P1' degree-6 residual", c6, 1e-8));
        observed += &format!(", P1' conic {c2:.2e} sextic {c6:.2e} verdict {}", fit.verdict);
    }
    Ok(ClaimReport::new(
        "thm:confII-excenter",
        ClaimKind::Theorem,
        vec![cfg],
        "P2', P3' on x²/a_e² + y²/b_e² = 1; P1' non-conic of degree 6",
        observed,
        conds,
    ))
}

/// Samples whose mirror images `(−x, y)` and `(x, −y)` are not in the set,
/// as the worst nearest-neighbour distance over `scale`.
fn mirror_gap(pts: &[Point], scale: f64) -> f64 {
    let gap = |f: &dyn Fn(Point) -> Point| {
        pts.iter().map(|p| pts.iter().map(|q| q.dist(f(*p))).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    gap(&|p| Point::xy(-p.x, p.y)).max(gap(&|p| Point::xy(p.x, -p.y))) / scale
}

/// Over conf-II the incenter sweeps a conic only for the billiard caustic.
pub fn check_confii_x1_conic_only_at_critical(a: f64, b: f64, n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let lc = critical_lambda(a, b)?;
    let crit = FamilyConfig::conf_i(a, b)?;
    let l = trace_locus(&crit, Tracked::Center(1), n)?;
    let fit = classify_locus(&l, tols)?;
    let c2 = ladder_residual(&fit.ladder, 2);
    let (wa, wb) = conf1_incenter_axes(a, b);
    let axes_err = fit
        .conic_coeffs
        .map(|c| {
            let (xa, ya) = axis_extents(&c);
            ((xa - wa) / wa).abs().max(((ya - wb) / wb).abs())
        })
        .unwrap_or(f64::INFINITY);
    let mut conds = vec![
        Condition::at_most("X1 conic residual at the billiard caustic", c2, tols.conic_tol),
        Condition::at_most("X1 semi-axes against ((δ−b²)/a, (a²−δ)/b), relative", axes_err, 1e-8),
    ];
    let b2 = b * b;
    let grid: Vec<f64> = (1..24).map(|k| b2 * k as f64 / 24.0).filter(|l| (l - lc).abs() > 0.05 * b2).collect();
    let others: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&lam| -> Result<(f64, f64, f64), VerifyError> {
            let cfg = FamilyConfig::conf_ii(a, b, lam)?;
            let l = trace_locus(&cfg, Tracked::Center(1), n)?;
            let r = ladder_residual(&fit_ladder(l.precise_points(), 2, tols)?, 2);
            Ok((lam, r, mirror_gap(&l.valid_points(), a)))
        })
        .collect::<Result<_, _>>()?;
    let worst = others.iter().map(|o| o.1).fold(f64::INFINITY, f64::min);
    let sym = others.iter().map(|o| o.2).fold(mirror_gap(&l.valid_points(), a), f64::max);
    conds.push(Condition::above("off-critical λ values tested", others.len() as f64, 8.0));
    conds.push(Condition::above("smallest X1 conic residual off the billiard caustic", worst, 10.0 * tols.conic_tol));
    conds.push(Condition::at_most("mirror symmetry gap / a", sym, 1e-8));
    Ok(ClaimReport::new(
        "prop:confII-x1-critical",
        ClaimKind::Theorem,
        vec![crit],
        "X1 is an ellipse only at λ = λ_c",
        format!("λ_c={lc:.15}, conic residual {c2:.2e} there, at least {worst:.2e} on {} other λ", others.len()),
        conds,
    ))
}

/// With the 4-periodic caustic the barycenter sweeps the outer ellipse
/// scaled by 1/3 and the center bisects P2P3; for another λ the barycenter
/// locus is not a conic.
pub fn check_x2_homothety_half_n4(a: f64, b: f64, n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let lam = n4_lambda(a, b);
    let cfg = FamilyConfig::conf_ii(a, b, lam)?;
    let pts = trace_locus(&cfg, Tracked::Center(2), n)?.valid_points();
    let dev = ellipse_dev(&pts, a / 3.0, b / 3.0);
    let mid = cfg
        .sweep::<Dd>(n)
        .iter()
        .filter(|t| t.valid)
        .map(|t| ((t.p2 + t.p3).scale(Dd::from_f64(0.5))).norm().to_f64())
        .fold(0.0, f64::max)
        / a;
    let other = if (lam - 0.5 * b * b).abs() > 1e-3 { 0.5 * b * b } else { 0.25 * b * b };
    let ctl = FamilyConfig::conf_ii(a, b, other)?;
    let lc = trace_locus(&ctl, Tracked::Center(2), n)?;
    let c2 = ladder_residual(&fit_ladder(lc.precise_points(), 2, tols)?, 2);
    Ok(ClaimReport::new(
        "prop:x2-homothety",
        ClaimKind::Theorem,
        vec![cfg, ctl],
        "X2 on x²/(a/3)² + y²/(b/3)² = 1; O midpoint of P2P3",
        format!("ellipse residual {dev:.2e}, midpoint offset {mid:.2e} a, control conic residual {c2:.2e}"),
        vec![
            Condition::at_most("X2 residual against the 1/3-scaled ellipse", dev, 1e-9),
            Condition::at_most("|midpoint of P2P3| / a", mid, 1e-9),
            Condition::above(format!("negative control: X2 conic residual at λ={other}"), c2, 10.0 * tols.conic_tol),
        ],
    ))
}

/// 4-periodic caustic: the excenter ellipse has aspect ratio b/a and every
/// P2P3 chord passes through the center.
pub fn check_confii_n4(a: f64, b: f64, n: usize) -> Result<ClaimReport, VerifyError> {
    let lam = n4_lambda(a, b);
    let cfg = FamilyConfig::conf_ii(a, b, lam)?;
    let (ae, be) = conf_excenter_ellipse(cfg.confocal().expect("confocal"));
    let aspect = ((ae / be) - b / a).abs() / (b / a);
    let through = chord_lines::<f64>(&cfg, n, (2, 3))?.iter().map(|l| l.distance(Point::xy(0.0, 0.0))).fold(0.0, f64::max) / a;
    let pts = trace_locus(&cfg, Tracked::Excenter(2), n)?.valid_points();
    let dev = ellipse_dev(&pts, ae, be);
    let ctl = FamilyConfig::conf_ii(a, b, 0.5 * lam)?;
    let miss = chord_lines::<f64>(&ctl, n, (2, 3))?.iter().map(|l| l.distance(Point::xy(0.0, 0.0))).fold(f64::INFINITY, f64::min) / a;
    Ok(ClaimReport::new(
        "cor:confII-n4",
        ClaimKind::Theorem,
        vec![cfg, ctl],
        "a_e/b_e = b/a; P2P3 through the center",
        format!("a_e/b_e={:.15}, b/a={:.15}, chord offset {through:.2e} a", ae / be, b / a),
        vec![
            Condition::at_most("|a_e/b_e − b/a| / (b/a)", aspect, 1e-10),
            Condition::at_most("P2' residual against (a_e, b_e)", dev, 1e-9),
            Condition::at_most("max chord distance to the center / a", through, 1e-9),
            Condition::above("negative control: min chord distance at λ/2", miss, 1e-6),
        ],
    ))
}

/// 6-periodic caustic: the excenter ellipse is a circle.
pub fn check_confii_n6(a: f64, b: f64, n: usize) -> Result<ClaimReport, VerifyError> {
    let lam = n6_lambda(a, b);
    let cfg = FamilyConfig::conf_ii(a, b, lam)?;
    let (ae, be) = conf_excenter_ellipse(cfg.confocal().expect("confocal"));
    let pts = trace_locus(&cfg, Tracked::Excenter(2), n)?.valid_points();
    let dev = circle_dev(&pts, Point::xy(0.0, 0.0), ae) / ae;
    let (ce, de) = conf_excenter_ellipse(&ConfocalParams::new(a, b, 0.5 * lam));
    Ok(ClaimReport::new(
        "cor:confII-n6",
        ClaimKind::Theorem,
        vec![cfg],
        "a_e = b_e",
        format!("a_e={ae:.15}, b_e={be:.15}"),
        vec![
            Condition::at_most("|a_e − b_e| / a_e", (ae - be).abs() / ae, 1e-10),
            Condition::at_most("P2' distance to the circle / a_e", dev, 1e-9),
            Condition::above("negative control: |a_e − b_e| / a_e at λ/2", (ce - de).abs() / ce, 1e-6),
        ],
    ))
}

// ---------------------------------------------------------------------------
// envelopes

/// The free side of bic-II envelopes the circle `C''` (a point when
/// `(R²−d²)² = 2r²(R²+d²)`); the free side of conf-II envelopes `E''`.
pub fn check_envelopes(bic: &BicentricParams, conf: &ConfocalParams, n: usize) -> Result<ClaimReport, VerifyError> {
    let bcfg = FamilyConfig::bic_ii(bic.big_r, bic.r, bic.d)?;
    let env = bic2_envelope(bic);
    let oc = Point::xy(env.center_x, 0.0);
    let lines = chord_lines::<Dd>(&bcfg, n, (2, 3))?;
    let lf: Vec<Line> = lines.iter().map(|l| l.to_f64()).collect();
    let big_r = bic.big_r;
    let bt = lf.iter().map(|l| circle_tangency(l, oc, env.radius.abs())).fold(0.0, f64::max) / big_r;
    let bneg = lf.iter().map(|l| circle_tangency(l, oc, 1.001 * env.radius.abs())).fold(0.0, f64::max) / big_r;
    let bfit = fit_envelope(&lines, Tolerances::default().conic_tol)?;
    let bdist = bfit.conic.map_or(f64::INFINITY, |c| c.coeff_distance(&env.conic()));

    let ccfg = FamilyConfig::conf_ii(conf.a, conf.b, conf.lambda)?;
    let cenv = conf2_envelope(conf);
    let clines = chord_lines::<Dd>(&ccfg, n, (2, 3))?;
    let cf: Vec<Line> = clines.iter().map(|l| l.to_f64()).collect();
    let ct = cf.iter().map(|l| ellipse_tangency(l, cenv.a, cenv.b)).fold(0.0, f64::max) / conf.a;
    let cfit = fit_envelope(&clines, Tolerances::default().conic_tol)?;
    let cdist = cfit.conic.map_or(f64::INFINITY, |c| c.coeff_distance(&cenv.conic(conf)));

    let dr = degenerate_envelope_r(big_r, bic.d);
    let dcfg = FamilyConfig::bic_ii(big_r, dr, bic.d)?;
    let denv = bic2_envelope(dcfg.bicentric().expect("bicentric"));
    let o2 = Point::xy(denv.center_x, 0.0);
    let dlines = chord_lines::<Dd>(&dcfg, n, (2, 3))?;
    let through = dlines.iter().map(|l| l.to_f64().distance(o2)).fold(0.0, f64::max) / big_r;
    // r is rounded to f64, so the chords meet O'' only to about 1e-16
    let dfit = fit_envelope(&dlines, 1e-12)?;
    let dpoint = dfit.point.map_or(f64::INFINITY, |q| q.dist(o2)) / big_r;

    Ok(ClaimReport::new(
        "prop:envelopes",
        ClaimKind::Theorem,
        vec![bcfg, ccfg, dcfg],
        "P2P3 tangent to C'' (bic-II) and E'' (conf-II); through O'' when r'' = 0",
        format!(
            "C''=[({:.12},0), {:.12}], E''=({:.12}, {:.12}), degenerate r={dr:.15}, O''=({:.12},0)",
            env.center_x, env.radius, cenv.a, cenv.b, denv.center_x
        ),
        vec![
            Condition::at_most("bic-II tangency residual / R", bt, 1e-9),
            Condition::above("negative control: tangency to 1.001 r'' / R", bneg, 1e-6),
            Condition::at_most("bic-II fitted envelope coefficient distance", bdist, 1e-8),
            Condition::at_most("conf-II tangency residual / a", ct, 1e-9),
            Condition::at_most("conf-II fitted envelope coefficient distance", cdist, 1e-8),
            Condition::at_most("|r''| / R at the degenerate r", denv.radius.abs() / big_r, 1e-12),
            Condition::at_most("max chord distance to O'' / R", through, 1e-8),
            Condition::at_most("fitted concurrency point distance to O'' / R", dpoint, 1e-8),
        ],
    ))
}

// ---------------------------------------------------------------------------
// conserved quantities and convexity

/// bic-I: Σ cos = 1 + r/R. conf-I: constant perimeter, stationary X9, and
/// reciprocal aspect ratios of the incenter and excentral ellipses.
pub fn check_conserved(bic: (f64, f64), conf: (f64, f64), n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let (big_r, r) = bic;
    let bcfg = FamilyConfig::bic_i(big_r, r)?;
    let cos_dev = bcfg
        .sweep::<Dd>(n)
        .iter()
        .filter(|t| t.valid)
        .map(|t| {
            let [c1, c2, c3] = t.cosines();
            (c1 + c2 + c3 - Dd::ONE - Dd::from_f64(r) / Dd::from_f64(big_r)).abs().to_f64()
        })
        .fold(0.0, f64::max);
    let (a, b) = conf;
    let ccfg = FamilyConfig::conf_i(a, b)?;
    let per: Vec<f64> = ccfg.sweep::<Dd>(n).iter().filter(|t| t.valid).map(|t| t.perimeter().to_f64()).collect();
    let pmax = per.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pmin = per.iter().copied().fold(f64::INFINITY, f64::min);
    let x9 = crate::loci::stationarity_spread(&trace_locus(&ccfg, Tracked::Center(9), n)?);
    let axes = |t: Tracked| -> Result<(f64, f64), VerifyError> {
        let fit = classify_locus(&trace_locus(&ccfg, t, n)?, tols)?;
        Ok(fit.conic_coeffs.map_or((f64::NAN, f64::NAN), |c| axis_extents(&c)))
    };
    let (a1, b1) = axes(Tracked::Center(1))?;
    let (ae, be) = axes(Tracked::Excenter(1))?;
    let recip = ((a1 / b1) - (be / ae)).abs() / (be / ae);
    let (wa, wb) = conf1_incenter_axes(a, b);
    Ok(ClaimReport::new(
        "prop:conserved",
        ClaimKind::Theorem,
        vec![bcfg, ccfg],
        "Σcos = 1 + r/R; constant perimeter; X9 fixed; a1/b1 = b_e/a_e",
        format!("perimeter {pmax:.15}, X1 axes ({a1:.12}, {b1:.12}) want ({wa:.12}, {wb:.12}), excentral ({ae:.12}, {be:.12})"),
        vec![
            Condition::at_most("bic-I |Σcos − 1 − r/R|", cos_dev, 1e-10),
            Condition::at_most("conf-I perimeter relative spread", (pmax - pmin) / pmax, 1e-9),
            Condition::at_most("conf-I X9 spread / a", x9, 1e-10),
            Condition::at_most("|a1/b1 − b_e/a_e| / (b_e/a_e)", recip, 1e-10),
        ],
    ))
}

fn x1_convex(a: f64, b: f64, lam: f64, n: usize) -> Result<bool, VerifyError> {
    let cfg = FamilyConfig::conf_ii(a, b, lam)?;
    let pts: Vec<Point> = cfg
        .sweep::<f64>(n)
        .iter()
        .filter(|t| t.valid)
        .filter_map(|t| Tracked::Center(1).eval(t).ok())
        .collect();
    Ok(convexity_check(&pts))
}

/// First λ at which the conf-II incenter locus stops being convex, located
/// by a coarse scan followed by bisection down to `resolution`.
pub fn convexity_transition(a: f64, b: f64, n: usize, resolution: f64) -> Result<Option<f64>, VerifyError> {
    let lc = critical_lambda(a, b)?;
    let step = 0.02 * b * b;
    let mut lo = step;
    if !x1_convex(a, b, lo, n)? {
        return Ok(None);
    }
    let mut hi = lo + step;
    while hi < lc {
        if !x1_convex(a, b, hi, n)? {
            while hi - lo > resolution {
                let mid = 0.5 * (lo + hi);
                if x1_convex(a, b, mid, n)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        lo = hi;
        hi += step;
    }
    Ok(None)
}

/// The conf-II incenter locus turns non-convex at the root λ_o of the
/// convexity quintic, i.e. at `a'² = a² − λ_o`.
pub fn check_convexity_transition(a: f64, b: f64, n: usize) -> Result<ClaimReport, VerifyError> {
    let root = convexity_lambda_root(a, b)?;
    let found = convexity_transition(a, b, n, 5e-4)?;
    let gap = found.map_or(f64::INFINITY, |l| (l - root.lambda_o).abs());
    let cfg = FamilyConfig::conf_ii(a, b, root.lambda_o)?;
    Ok(ClaimReport::new(
        "prop:confII-convexity",
        ClaimKind::Theorem,
        vec![cfg],
        "X1 convex iff a'² > a² − λ_o",
        format!("λ_o={:.12} (real roots {:?}), bisected transition {:?}", root.lambda_o, root.roots, found),
        vec![
            Condition::at_most("normalized quintic residual at λ_o", root.residual, 1e-10),
            Condition::at_most("|bisected transition − λ_o|", gap, 1e-3),
        ],
    ))
}

// ---------------------------------------------------------------------------
// bic-III

/// Fitted P2P3 envelope for each of the four tangent branches.
pub fn bic3_branch_envelopes(p: &BicentricParams, n: usize) -> Result<Vec<(TangentBranch, Conic)>, VerifyError> {
    let u = p.u.unwrap_or(0.0);
    TangentBranch::all()
        .par_iter()
        .map(|&br| {
            let cfg = FamilyConfig::bic_iii(p.big_r, p.r, p.d, u, br)?;
            let fit = fit_envelope(&chord_lines::<Dd>(&cfg, n, (2, 3))?, Tolerances::default().conic_tol)?;
            let conic = match (fit.conic, fit.point) {
                (Some(c), _) => c,
                (None, Some(q)) => Conic::new([1.0, 0.0, 1.0, -2.0 * q.x, -2.0 * q.y, q.norm2()])?,
                (None, None) => return Err(VerifyError::Locus(LocusError::InsufficientSamples { found: 0, required: 1 })),
            };
            Ok((br, conic))
        })
        .collect()
}

/// Single-linkage clusters of conics under `coeff_distance <= link`.
fn cluster(conics: &[Conic], link: f64) -> Vec<usize> {
    let mut label: Vec<usize> = (0..conics.len()).collect();
    for i in 0..conics.len() {
        for j in 0..i {
            if conics[i].coeff_distance(&conics[j]) <= link {
                let (from, to) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    label
}

/// The four tangent branches of bic-III give exactly two envelopes of P2P3.
pub fn check_bic3_two_envelopes(p: &BicentricParams, n: usize) -> Result<ClaimReport, VerifyError> {
    let envs = bic3_branch_envelopes(p, n)?;
    let conics: Vec<Conic> = envs.iter().map(|e| e.1).collect();
    let labels = cluster(&conics, 1e-3);
    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let (mut intra, mut inter) = (0.0_f64, f64::INFINITY);
    for i in 0..conics.len() {
        for j in 0..i {
            let d = conics[i].coeff_distance(&conics[j]);
            if labels[i] == labels[j] {
                intra = intra.max(d);
            } else {
                inter = inter.min(d);
            }
        }
    }
    let circles: Vec<String> = conics
        .iter()
        .map(|c| match c.as_circle() {
            Ok((o, r)) => format!("[({:.9},{:.9}),{:.9}]", o.x, o.y, r),
            Err(_) => format!("{:?}", c.kind()),
        })
        .collect();
    let cfg = FamilyConfig::bic_iii(p.big_r, p.r, p.d, p.u.unwrap_or(0.0), TangentBranch::PLUS_PLUS)?;
    Ok(ClaimReport::new(
        "sec:bicIII-envelopes",
        ClaimKind::Theorem,
        vec![cfg],
        "two distinct P2P3 envelopes over the four branches",
        format!("{} clusters; envelopes {}", distinct.len(), circles.join(" ")),
        vec![
            Condition::at_most("|cluster count − 2|", (distinct.len() as f64 - 2.0).abs(), 0.0),
            Condition::at_most("largest distance within a cluster", intra, 1e-8),
            Condition::above("smallest distance between clusters", inter, 1e-3),
        ],
    ))
}

/// `u` in `(0, 1)` at which the bic-III P2P3 envelope shrinks to a point
/// (the internal limiting point of the pencil), by golden-section search on
/// the fitted envelope radius.
pub fn bic3_limiting_u(p: &BicentricParams, n: usize) -> Result<f64, VerifyError> {
    let radius2 = |u: f64| -> Result<f64, VerifyError> {
        let cfg = FamilyConfig::bic_iii(p.big_r, p.r, p.d, u, TangentBranch::PLUS_PLUS)?;
        let fit = fit_envelope(&chord_lines::<Dd>(&cfg, n, (2, 3))?, Tolerances::default().conic_tol)?;
        Ok(match fit.conic {
            Some(c) => {
                let k = c.coeffs();
                let (cx, cy) = (-k[3] / (2.0 * k[0]), -k[4] / (2.0 * k[2]));
                (cx * cx + cy * cy - k[5] / k[0]).abs()
            }
            None => 0.0,
        })
    };
    // coarse scan for the bracket, then golden section
    let grid: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
    let vals: Vec<f64> = grid.par_iter().map(|&u| radius2(u)).collect::<Result<_, _>>()?;
    let k = (0..vals.len()).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).expect("nonempty");
    let (mut lo, mut hi) = (grid[k] - 0.01, (grid[k] + 0.01).min(1.0 - 1e-9));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (radius2(x1)?, radius2(x2)?);
    while hi - lo > 1e-12 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = radius2(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = radius2(x2)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Centers checked for non-conic loci over bic-III.
pub const BIC3_CENTERS: [u32; 14] = [1, 2, 35, 36, 40, 46, 55, 56, 57, 65, 165, 354, 484, 942];

/// Over bic-III: X1 sweeps a convex curve, no tested center sweeps a conic,
/// and the three excenters sweep distinct non-conics, also when the
/// envelope of P2P3 is a limiting point.
pub fn check_conjectures_bic3(p: &BicentricParams, n: usize, tols: &Tolerances) -> Result<ClaimReport, VerifyError> {
    let u = p.u.unwrap_or(0.0);
    let cfg = FamilyConfig::bic_iii(p.big_r, p.r, p.d, u, TangentBranch::PLUS_PLUS)?;
    let big_r = p.big_r;
    let x1 = trace_locus(&cfg, Tracked::Center(1), n)?;
    let convex = convexity_check(&x1.valid_points());
    let fits: Vec<(u32, CurveFit)> = BIC3_CENTERS
        .par_iter()
        .map(|&k| -> Result<(u32, CurveFit), VerifyError> { Ok((k, classify_locus(&trace_locus(&cfg, Tracked::Center(k), n)?, tols)?)) })
        .collect::<Result<_, _>>()?;
    let conic_centers: Vec<String> = fits.iter().filter(|f| f.1.verdict.is_conic()).map(|f| format!("X{}", f.0)).collect();
    let min_center_conic = fits.iter().map(|f| ladder_residual(&f.1.ladder, 2)).fold(f64::INFINITY, f64::min);

    let excenter_stats = |cfg: &FamilyConfig| -> Result<(f64, Vec<f64>), VerifyError> {
        let ls: Vec<Locus> = (1..=3).map(|k| trace_locus(cfg, Tracked::Excenter(k), n)).collect::<Result<_, _>>()?;
        let pts: Vec<Vec<Point>> = ls.iter().map(|l| l.valid_points()).collect();
        let sep = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| hausdorff(&pts[i], &pts[j])).fold(f64::INFINITY, f64::min);
        let conic: Vec<f64> = ls
            .iter()
            .map(|l| Ok(ladder_residual(&fit_ladder(l.precise_points(), 2, tols)?, 2)))
            .collect::<Result<_, VerifyError>>()?;
        Ok((sep / big_r, conic))
    };
    let (sep, ex) = excenter_stats(&cfg)?;
    let u_lim = bic3_limiting_u(p, 256)?;
    let lcfg = FamilyConfig::bic_iii(p.big_r, p.r, p.d, u_lim, TangentBranch::PLUS_PLUS)?;
    let (lsep, lex) = excenter_stats(&lcfg)?;
    let min_ex = ex.iter().copied().fold(f64::INFINITY, f64::min);
    let min_lex = lex.iter().copied().fold(f64::INFINITY, f64::min);
    let verdicts: Vec<String> = fits.iter().map(|f| format!("X{}:{}", f.0, f.1.verdict.letter())).collect();
    Ok(ClaimReport::new(
        "conj:bicIII",
        ClaimKind::Conjecture,
        vec![cfg, lcfg],
        "X1 convex; no center sweeps a conic; three distinct non-conic excenter loci",
        format!(
            "verdicts {}; excenter conic residuals {}; limiting u={u_lim:.12} with conic residuals {} (P1' margin {:.2e} × conic_tol)",
            verdicts.join(" "),
            sci(&ex),
            sci(&lex),
            lex[0] / tols.conic_tol
        ),
        vec![
            Condition::holds("X1 locus convex", convex),
            Condition::holds(format!("no conic center loci {conic_centers:?}"), conic_centers.is_empty()),
            Condition::above("smallest center conic residual", min_center_conic, tols.conic_tol),
            Condition::above("min pairwise Hausdorff distance of excenter loci / R", sep, 1e-3),
            Condition::above("smallest excenter conic residual", min_ex, tols.conic_tol),
            Condition::above("limiting point: min pairwise Hausdorff distance / R", lsep, 1e-3),
            Condition::above("limiting point: smallest excenter conic residual", min_lex, tols.conic_tol),
        ],
    ))
}

// ---------------------------------------------------------------------------
// tables

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub center: String,
    pub bic1_spread: f64,
    pub bic2: Verdict,
    pub bic3: Verdict,
    pub expected_bic2: char,
    pub expected_bic3: char,
    pub bic2_matches: bool,
    pub bic3_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1 {
    pub params: Vec<FamilyConfig>,
    pub rows: Vec<Table1Row>,
}

/// Reference letters (bic-II, bic-III) of the stationarity table; X marks a
/// non-conic.
pub fn table1_expected(id: u32) -> Option<(char, char)> {
    Some(match id {
        1 => ('C', 'X'),
        3 => ('P', 'P'),
        35 | 36 | 55 | 354 | 484 | 942 => ('E', 'X'),
        40 | 165 => ('C', 'X'),
        46 | 56 | 57 | 65 => ('X', 'X'),
        _ => return None,
    })
}

fn table1_letter_matches(v: &Verdict, want: char) -> bool {
    match want {
        'X' => !v.is_conic() && *v != Verdict::Point,
        c => v.letter() == c.to_string(),
    }
}

/// Stationarity over bic-I and locus types over bic-II and bic-III for the
/// given centers at the representative parameters.
pub fn stationarity_table(ids: &[u32], n: usize, tols: &Tolerances) -> Result<Table1, VerifyError> {
    let cfgs = [Family::BicI, Family::BicII, Family::BicIII].map(FamilyConfig::representative);
    let rows = ids
        .par_iter()
        .map(|&id| -> Result<Table1Row, VerifyError> {
            let t = Tracked::Center(id);
            let spread = crate::loci::stationarity_spread(&trace_locus(&cfgs[0], t, n)?);
            let v2 = classify_locus(&trace_locus(&cfgs[1], t, n)?, tols)?.verdict;
            let v3 = classify_locus(&trace_locus(&cfgs[2], t, n)?, tols)?.verdict;
            let (e2, e3) = table1_expected(id).unwrap_or(('?', '?'));
            Ok(Table1Row {
                center: t.label(),
                bic1_spread: spread,
                bic2: v2,
                bic3: v3,
                expected_bic2: e2,
                expected_bic3: e3,
                bic2_matches: table1_letter_matches(&v2, e2),
                bic3_matches: table1_letter_matches(&v3, e3),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(Table1 { params: cfgs.to_vec(), rows })
}

/// Reproduction of the stationarity table: every center is fixed over
/// bic-I, and the bic-II and bic-III locus types match the reference rows.
pub fn check_table1(n: usize, tols: &Tolerances) -> Result<(Table1, ClaimReport), VerifyError> {
    let table = stationarity_table(&TABLE1_CENTERS, n, tols)?;
    let spread = table.rows.iter().map(|r| r.bic1_spread).fold(0.0, f64::max);
    let bad2: Vec<String> = table.rows.iter().filter(|r| !r.bic2_matches).map(|r| format!("{}={}", r.center, r.bic2.letter())).collect();
    let bad3: Vec<String> = table.rows.iter().filter(|r| !r.bic3_matches).map(|r| format!("{}={}", r.center, r.bic3.letter())).collect();
    let row = |f: &dyn Fn(&Table1Row) -> String| table.rows.iter().map(f).collect::<Vec<_>>().join(" ");
    let report = ClaimReport::new(
        "table1",
        ClaimKind::Table,
        table.params.clone(),
        format!(
            "bic-II {}; bic-III {}",
            row(&|r| format!("{}:{}", r.center, r.expected_bic2)),
            row(&|r| format!("{}:{}", r.center, r.expected_bic3))
        ),
        format!("bic-II {}; bic-III {}", row(&|r| format!("{}:{}", r.center, r.bic2.letter())), row(&|r| format!("{}:{}", r.center, r.bic3.letter()))),
        vec![
            Condition::at_most("largest bic-I spread / R", spread, 1e-9),
            Condition::at_most(format!("bic-II mismatches {bad2:?}"), bad2.len() as f64, 0.0),
            Condition::at_most(format!("bic-III mismatches {bad3:?}"), bad3.len() as f64, 0.0),
        ],
    );
    Ok((table, report))
}

/// A center whose bic-II locus is a conic is stationary over bic-I; the
/// converse fails (X46, X56, X57, X65 are stationary without a conic).
pub fn check_conjecture_bicii_stationary(ids: &[u32], n: usize, tols: &Tolerances) -> Result<(Table1, ClaimReport), VerifyError> {
    let table = stationarity_table(ids, n, tols)?;
    let violators: Vec<&str> = table
        .rows
        .iter()
        .filter(|r| (r.bic2.is_conic() || r.bic2 == Verdict::Point) && r.bic1_spread > 1e-9)
        .map(|r| r.center.as_str())
        .collect();
    let counter: Vec<&str> = table.rows.iter().filter(|r| r.bic1_spread <= 1e-9 && !r.bic2.is_conic() && r.bic2 != Verdict::Point).map(|r| r.center.as_str()).collect();
    let report = ClaimReport::new(
        "conj:bicII-stationary",
        ClaimKind::Conjecture,
        table.params.clone(),
        "conic over bic-II implies stationary over bic-I",
        format!("stationary without a bic-II conic: {counter:?}"),
        vec![Condition::at_most(format!("conic over bic-II but moving over bic-I {violators:?}"), violators.len() as f64, 0.0)],
    );
    Ok((table, report))
}

/// Tracked points of the summary table.
pub const TABLE2_TRACKED: [Tracked; 6] =
    [Tracked::Center(1), Tracked::Center(2), Tracked::Center(3), Tracked::Excenter(1), Tracked::Excenter(2), Tracked::Excenter(3)];

/// Reference letters of the summary table, rows bic-I .. conf-III.
pub const TABLE2_EXPECTED: [[&str; 6]; 6] = [
    ["P", "C", "P", "C", "C", "C"],
    ["C", "6", "P", "C", "6", "6"],
    ["N", "N", "P", "N", "N", "N"],
    ["E", "E", "E", "E", "E", "E"],
    ["N", "N", "N", "6", "E", "E"],
    ["N", "N", "N", "N", "N", "N"],
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table2Cell {
    pub tracked: String,
    pub letter: String,
    pub expected: String,
    pub verdict: Verdict,
    pub residual: f64,
    /// `N` satisfied by a verdict above degree 6 or no fit up to the
    /// maximum degree; `6` needs exactly degree 6.
    pub matches: bool,
    /// `N` satisfied by any non-conic verdict.
    pub matches_lenient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table2Row {
    pub family: Family,
    pub params: FamilyConfig,
    pub cells: Vec<Table2Cell>,
}

fn table2_matches(v: &Verdict, want: &str) -> (bool, bool) {
    match want {
        "N" => {
            let strict = matches!(v, Verdict::NonConic) || matches!(v, Verdict::AlgebraicDegree(d) if *d > 6);
            (strict, !v.is_conic() && *v != Verdict::Point)
        }
        "6" => {
            let m = *v == Verdict::AlgebraicDegree(6);
            (m, m)
        }
        w => {
            let m = v.letter() == w;
            (m, m)
        }
    }
}

/// Locus types of X1, X2, X3 and the excenters for every family at its
/// representative parameters.
pub fn summary_table(n: usize, tols: &Tolerances) -> Result<Vec<Table2Row>, VerifyError> {
    Family::ALL
        .par_iter()
        .enumerate()
        .map(|(i, &fam)| -> Result<Table2Row, VerifyError> {
            let cfg = FamilyConfig::representative(fam);
            let cells = TABLE2_TRACKED
                .iter()
                .zip(TABLE2_EXPECTED[i])
                .map(|(&t, want)| -> Result<Table2Cell, VerifyError> {
                    let fit = classify_locus(&trace_locus(&cfg, t, n)?, tols)?;
                    let (matches, matches_lenient) = table2_matches(&fit.verdict, want);
                    Ok(Table2Cell {
                        tracked: t.label(),
                        letter: fit.verdict.letter(),
                        expected: want.to_string(),
                        verdict: fit.verdict,
                        residual: fit.ladder.last().map_or(0.0, |s| s.residual),
                        matches,
                        matches_lenient,
                    })
                })
                .collect::<Result<_, _>>()?;
            Ok(Table2Row { family: fam, params: cfg, cells })
        })
        .collect()
}

pub fn check_table2(n: usize, tols: &Tolerances) -> Result<(Vec<Table2Row>, ClaimReport), VerifyError> {
    let rows = summary_table(n, tols)?;
    let mut bad = Vec::new();
    let mut lenient = Vec::new();
    for r in &rows {
        for c in &r.cells {
            if !c.matches {
                bad.push(format!("{} {}: {} (want {})", r.family, c.tracked, c.letter, c.expected));
            }
            if !c.matches_lenient {
                lenient.push(format!("{} {}", r.family, c.tracked));
            }
        }
    }
    let grid = |f: &dyn Fn(&Table2Cell) -> String| {
        rows.iter().map(|r| format!("{}: {}", r.family, r.cells.iter().map(f).collect::<Vec<_>>().join(" "))).collect::<Vec<_>>().join("; ")
    };
    let report = ClaimReport::new(
        "table2",
        ClaimKind::Table,
        rows.iter().map(|r| r.params).collect(),
        grid(&|c| c.expected.clone()),
        format!("{}; mismatches under the any-non-conic reading: {lenient:?}", grid(&|c| c.letter.clone())),
        vec![Condition::at_most(format!("mismatched cells {bad:?}"), bad.len() as f64, 0.0)],
    );
    Ok((rows, report))
}

// ---------------------------------------------------------------------------
// registry

/// Parameters a named claim may be run with; missing ones take the
/// representative defaults.
#[derive(Debug, Clone, Default)]
pub struct ClaimInput {
    pub bicentric: Option<BicentricParams>,
    pub confocal: Option<ConfocalParams>,
    pub samples: Option<usize>,
    pub tolerances: Option<Tolerances>,
}

impl ClaimInput {
    pub fn from_config(cfg: &FamilyConfig) -> Self {
        match cfg.params {
            FamilyParams::Bicentric(p) => ClaimInput { bicentric: Some(p), ..Default::default() },
            FamilyParams::Confocal(p) => ClaimInput { confocal: Some(p), ..Default::default() },
        }
    }
}

/// Every claim id with its kind and a one-line description.
pub const CLAIMS: [(&str, ClaimKind, &str); 16] = [
    ("thm:bicII-x1", ClaimKind::Theorem, "bic-II incenter circle, X40 and X165 circles"),
    ("cor:bicII-excenter", ClaimKind::Theorem, "bic-II excenter circle and sextics"),
    ("app:bicII-x2-sextic", ClaimKind::Theorem, "stated bic-II barycenter sextic"),
    ("thm:confII-excenter", ClaimKind::Theorem, "conf-II excenter ellipse"),
    ("prop:confII-x1-critical", ClaimKind::Theorem, "conf-II incenter conic only at the billiard caustic"),
    ("prop:x2-homothety", ClaimKind::Theorem, "1/3-scaled barycenter ellipse for the 4-periodic caustic"),
    ("cor:confII-n4", ClaimKind::Theorem, "4-periodic caustic: aspect b/a, chords through the center"),
    ("cor:confII-n6", ClaimKind::Theorem, "6-periodic caustic: circular excenter locus"),
    ("prop:envelopes", ClaimKind::Theorem, "closed-form envelopes of the free side"),
    ("prop:conserved", ClaimKind::Theorem, "conserved quantities over bic-I and conf-I"),
    ("prop:confII-convexity", ClaimKind::Theorem, "conf-II incenter convexity threshold"),
    ("sec:bicIII-envelopes", ClaimKind::Theorem, "two distinct bic-III envelopes"),
    ("table1", ClaimKind::Table, "stationarity table"),
    ("table2", ClaimKind::Table, "summary table of locus types"),
    ("conj:bicII-stationary", ClaimKind::Conjecture, "conic over bic-II implies stationary over bic-I"),
    ("conj:bicIII", ClaimKind::Conjecture, "bic-III convexity and non-conic loci"),
];

/// Runs one claim by id.
pub fn run_claim(id: &str, input: &ClaimInput) -> Result<ClaimReport, VerifyError> {
    let n = input.samples.unwrap_or(DEFAULT_SAMPLES);
    let tols = input.tolerances.unwrap_or_default();
    let rep = |f: Family| FamilyConfig::representative(f);
    let bic = |f: Family| input.bicentric.unwrap_or_else(|| *rep(f).bicentric().expect("bicentric"));
    let conf = |f: Family| input.confocal.unwrap_or_else(|| *rep(f).confocal().expect("confocal"));
    let ab = || input.confocal.map_or((2.0, 1.0), |p| (p.a, p.b));
    match id {
        "thm:bicII-x1" => check_bicii_x1_circle(&bic(Family::BicII), n),
        "cor:bicII-excenter" => check_bicii_excenter_circle(&bic(Family::BicII), n, &tols),
        "app:bicII-x2-sextic" => check_x2_sextic(&bic(Family::BicII), n, &tols),
        "thm:confII-excenter" => check_confii_excenter_ellipse(&conf(Family::ConfII), n, &tols),
        "prop:confII-x1-critical" => check_confii_x1_conic_only_at_critical(ab().0, ab().1, n, &tols),
        "prop:x2-homothety" => check_x2_homothety_half_n4(ab().0, ab().1, n, &tols),
        "cor:confII-n4" => check_confii_n4(ab().0, ab().1, n),
        "cor:confII-n6" => check_confii_n6(ab().0, ab().1, n),
        "prop:envelopes" => check_envelopes(&bic(Family::BicII), &conf(Family::ConfII), n),
        "prop:conserved" => {
            let b = input.bicentric.map_or((1.0, 0.2), |p| (p.big_r, p.r));
            check_conserved(b, ab(), n, &tols)
        }
        "prop:confII-convexity" => check_convexity_transition(ab().0, ab().1, 2048.max(n)),
        "sec:bicIII-envelopes" => check_bic3_two_envelopes(&bic(Family::BicIII), n),
        "table1" => check_table1(n, &tols).map(|t| t.1),
        "table2" => check_table2(n, &tols).map(|t| t.1),
        "conj:bicII-stationary" => check_conjecture_bicii_stationary(&TABLE1_CENTERS, n, &tols).map(|t| t.1),
        "conj:bicIII" => check_conjectures_bic3(&bic(Family::BicIII), n, &tols),
        other => Err(VerifyError::UnknownClaim(other.to_string())),
    }
}

/// Runs every claim at its defaults, in registry order.
pub fn run_all(input: &ClaimInput) -> Vec<Result<ClaimReport, VerifyError>> {
    CLAIMS.par_iter().map(|(id, _, _)| run_claim(id, input)).collect()
}
