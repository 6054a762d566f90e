use std::fmt::Write as _;
use std::path::Path;

use poncelet_core::families::{bic2_envelope, conf2_envelope};
use poncelet_core::loci::{chord_lines, convexity_check, fit_envelope, LadderStep};
use poncelet_core::verification::{
    check_table1, check_table2, run_all, run_claim, ClaimKind, ClaimReport, Table1, Table2Row, VerifyError, CLAIMS,
    DEFAULT_SAMPLES, TABLE2_TRACKED,
};
use poncelet_core::{
    classify_locus, sample_locus, trace_locus, ConicKind, ConicShape, Dd, Family, FamilyConfig, LocusError, Point, Tracked, Verdict,
};
use serde::Serialize;

use crate::args::{Merged, TolArgs};
use crate::svg::{conic_polyline, Scene};
use crate::CliError;

fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn locus_error(e: LocusError) -> CliError {
    match e {
        LocusError::UnknownTracked(_) | LocusError::Center(_) => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    }
}

/// Shortest decimal is not fixed-width; 17 significant digits always round
/// trip and keep identical runs byte-identical.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trace(m: &Merged, center: Option<&str>, samples: Option<usize>, output: Option<&Path>) -> Result<u8, CliError> {
    let cfg = m.family_config()?;
    let flags: Vec<String> = center.into_iter().map(String::from).collect();
    let tracked = m.tracked(&flags)?;
    let [tracked] = tracked[..] else {
        return Err(CliError::Usage("trace needs exactly one --center".into()));
    };
    let n = m.samples(samples, DEFAULT_SAMPLES)?;
    let locus = sample_locus(&cfg, tracked, n).map_err(locus_error)?;
    let mut csv = String::from("t,x,y,valid\n");
    for s in &locus.samples {
        writeln!(csv, "{},{},{},{}", fmt17(s.t), fmt17(s.p.x), fmt17(s.p.y), s.valid).expect("string write");
    }
    emit(output, &csv)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct ClassifyRecord {
    family: FamilyConfig,
    tracked: Tracked,
    samples: usize,
    valid: usize,
    verdict: Verdict,
    degree: u32,
    residual: f64,
    ambiguous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    semi_axes: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<f64>,
    convex: bool,
    spread: f64,
    ladder: Vec<LadderStep>,
}

pub fn classify(m: &Merged, tols: &TolArgs, centers: &[String], samples: Option<usize>, output: Option<&Path>) -> Result<u8, CliError> {
    let cfg = m.family_config()?;
    let tracked = m.tracked(centers)?;
    if tracked.is_empty() {
        return Err(CliError::Usage("classify needs at least one --center".into()));
    }
    let n = m.samples(samples, DEFAULT_SAMPLES)?;
    let tols = m.tolerances(tols);
    let mut records = Vec::new();
    for t in tracked {
        let locus = trace_locus(&cfg, t, n).map_err(locus_error)?;
        let fit = classify_locus(&locus, &tols).map_err(locus_error)?;
        let shape = fit.conic.filter(|_| matches!(fit.verdict, Verdict::Circle | Verdict::Ellipse));
        let center = match fit.verdict {
            Verdict::Point => Some(fit.center),
            _ => shape.and_then(|s| s.center),
        };
        records.push(ClassifyRecord {
            family: cfg,
            tracked: t,
            samples: n,
            valid: locus.valid_count(),
            verdict: fit.verdict,
            degree: fit.degree,
            residual: fit.residual,
            ambiguous: fit.ambiguous,
            semi_axes: shape.and_then(|s| s.semi_axes),
            center,
            rotation: shape.and_then(|s| s.rotation),
            convex: convexity_check(&locus.valid_points()),
            spread: fit.spread,
            ladder: fit.ladder,
        });
    }
    let text = if records.len() == 1 { json(&records[0]) } else { json(&records) };
    emit(output, &text)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
struct ClaimFailure {
    claim_id: String,
    error: String,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    ok: bool,
    passed: usize,
    failed: usize,
    /// Failed theorem and table claims (conjectures never block).
    blocking: Vec<String>,
    reports: Vec<ClaimReport>,
    errors: Vec<ClaimFailure>,
}

fn claim_kind(id: &str) -> Option<ClaimKind> {
    CLAIMS.iter().find(|c| c.0 == id).map(|c| c.1)
}

pub fn verify(
    claims: &[String],
    all: bool,
    list: bool,
    m: &Merged,
    tols: &TolArgs,
    samples: Option<usize>,
    output: Option<&Path>,
) -> Result<u8, CliError> {
    if list {
        let mut s = String::new();
        for (id, kind, what) in CLAIMS {
            writeln!(s, "{id:<24} {:<10} {what}", format!("{kind:?}").to_lowercase()).expect("string write");
        }
        emit(output, &s)?;
        return Ok(0);
    }
    if all == !claims.is_empty() {
        return Err(CliError::Usage("give claim ids or --all (not both); --list shows the ids".into()));
    }
    if let Some(bad) = claims.iter().find(|c| claim_kind(c).is_none()) {
        return Err(CliError::Usage(format!("unknown claim {bad:?}; --list shows the ids")));
    }
    let n = samples.or(m.config.samples);
    if n == Some(0) {
        return Err(CliError::Usage("-n must be positive".into()));
    }
    let input = m.claim_input(n, m.tolerances(tols))?;
    let ids: Vec<&str> = if all { CLAIMS.iter().map(|c| c.0).collect() } else { claims.iter().map(String::as_str).collect() };
    let results: Vec<Result<ClaimReport, VerifyError>> =
        if all { run_all(&input) } else { ids.iter().map(|id| run_claim(id, &input)).collect() };

    let mut report = VerifyReport { ok: true, passed: 0, failed: 0, blocking: Vec::new(), reports: Vec::new(), errors: Vec::new() };
    for (id, res) in ids.iter().zip(results) {
        match res {
            Ok(r) => {
                eprintln!("{r}");
                if r.passed() {
                    report.passed += 1;
                } else {
                    report.failed += 1;
                }
                if r.blocks_run() {
                    report.blocking.push(r.claim_id.clone());
                }
                report.reports.push(r);
            }
            Err(e) => {
                eprintln!("ERROR {id}: {e}");
                report.failed += 1;
                if claim_kind(id) != Some(ClaimKind::Conjecture) {
                    report.blocking.push(id.to_string());
                }
                report.errors.push(ClaimFailure { claim_id: id.to_string(), error: e.to_string() });
            }
        }
    }
    report.ok = report.blocking.is_empty();
    eprintln!("{} passed, {} failed, {} blocking", report.passed, report.failed, report.blocking.len());
    emit(output, &json(&report))?;
    Ok(if report.ok { 0 } else { 1 })
}

#[derive(Debug, Serialize)]
struct TableOut<T: Serialize> {
    table: T,
    report: ClaimReport,
}

fn table1_text(t: &Table1) -> String {
    let mut s = format!("{:<6} {:>12} {:>8} {:>8}\n", "center", "bic-I spread", "bic-II", "bic-III");
    for r in &t.rows {
        let cell = |v: &Verdict, want: char, ok: bool| if ok { v.letter() } else { format!("{}({want})", v.letter()) };
        writeln!(
            s,
            "{:<6} {:>12.3e} {:>8} {:>8}",
            r.center,
            r.bic1_spread,
            cell(&r.bic2, r.expected_bic2, r.bic2_matches),
            cell(&r.bic3, r.expected_bic3, r.bic3_matches)
        )
        .expect("string write");
    }
    s
}

fn table2_text(rows: &[Table2Row]) -> String {
    let mut s = format!("{:<9}", "family");
    for t in TABLE2_TRACKED {
        write!(s, " {:>6}", t.label()).expect("string write");
    }
    s.push('\n');
    for r in rows {
        write!(s, "{:<9}", r.family.name()).expect("string write");
        for c in &r.cells {
            let cell = if c.matches { c.letter.clone() } else { format!("{}({})", c.letter, c.expected) };
            write!(s, " {cell:>6}").expect("string write");
        }
        s.push('\n');
    }
    s
}

/// Prints the table; mismatches show the reference letter in parentheses.
/// Always exits 0 (use `verify table1|table2` for a pass/fail status).
pub fn table(which: u8, as_json: bool, m: &Merged, tols: &TolArgs, samples: Option<usize>, output: Option<&Path>) -> Result<u8, CliError> {
    let n = m.samples(samples, DEFAULT_SAMPLES)?;
    let tols = m.tolerances(tols);
    let fail = |e: VerifyError| CliError::Failure(e.to_string());
    let text = if which == 1 {
        let (table, report) = check_table1(n, &tols).map_err(fail)?;
        if as_json { json(&TableOut { table, report }) } else { table1_text(&table) }
    } else {
        let (table, report) = check_table2(n, &tols).map_err(fail)?;
        if as_json { json(&TableOut { table, report }) } else { table2_text(&table) }
    };
    emit(output, &text)?;
    Ok(0)
}

fn parse_side(s: &str) -> Result<(usize, usize), CliError> {
    let digits: Vec<usize> = s.chars().filter(|c| !matches!(c, 'P' | 'p')).map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().unwrap_or_default();
    match digits[..] {
        [i, j] if i != j && (1..=3).contains(&i) && (1..=3).contains(&j) => Ok((i, j)),
        _ => Err(CliError::Usage(format!("bad side {s:?}; expected e.g. 23 or P2P3"))),
    }
}

#[derive(Debug, Serialize)]
struct EnvelopeRecord {
    family: FamilyConfig,
    side: String,
    lines: usize,
    point: Option<Point>,
    conic: Option<[f64; 6]>,
    shape: Option<ConicShape>,
    point_residual: f64,
    conic_residual: f64,
    /// Closed form, for the free side of the bicentric and confocal
    /// two-caustic (and one-caustic) families.
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<[f64; 6]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<f64>,
}

fn expected_envelope(cfg: &FamilyConfig) -> Option<poncelet_core::Conic> {
    match cfg.family {
        Family::BicI | Family::BicII => Some(bic2_envelope(cfg.bicentric()?).conic()),
        Family::ConfI | Family::ConfII => {
            let p = cfg.confocal()?;
            Some(conf2_envelope(p).conic(p))
        }
        _ => None,
    }
}

pub fn envelope(m: &Merged, tols: &TolArgs, side: &str, samples: Option<usize>, output: Option<&Path>) -> Result<u8, CliError> {
    let cfg = m.family_config()?;
    let side = parse_side(side)?;
    let n = m.samples(samples, DEFAULT_SAMPLES)?;
    let tols = m.tolerances(tols);
    let lines = chord_lines::<Dd>(&cfg, n, side).map_err(|e| CliError::Failure(e.to_string()))?;
    let fit = fit_envelope(&lines, tols.conic_tol).map_err(locus_error)?;
    let expected = if side == (2, 3) || side == (3, 2) { expected_envelope(&cfg) } else { None };
    let deviation = match (&expected, &fit.conic, fit.point) {
        (Some(e), Some(c), _) => Some(c.coeff_distance(e)),
        (Some(e), None, Some(p)) if e.kind() == ConicKind::Point => e.shape().center.map(|c| c.dist(p)),
        _ => None,
    };
    let record = EnvelopeRecord {
        family: cfg,
        side: format!("P{}P{}", side.0, side.1),
        lines: lines.len(),
        point: fit.point,
        conic: fit.conic.map(|c| c.coeffs()),
        shape: fit.conic.map(|c| c.shape()),
        point_residual: fit.point_residual,
        conic_residual: fit.conic_residual,
        expected: expected.map(|c| c.coeffs()),
        deviation,
    };
    emit(output, &json(&record))?;
    Ok(0)
}

/// Splits a locus into runs of consecutive valid samples, joining the last
/// run to the first when the sweep wraps around.
fn valid_runs(samples: &[poncelet_core::loci::Sample]) -> (Vec<Vec<Point>>, bool) {
    let mut runs: Vec<Vec<Point>> = vec![Vec::new()];
    for s in samples {
        if s.valid {
            runs.last_mut().expect("nonempty").push(s.p);
        } else if !runs.last().expect("nonempty").is_empty() {
            runs.push(Vec::new());
        }
    }
    runs.retain(|r| !r.is_empty());
    let closed = samples.iter().all(|s| s.valid);
    if !closed && runs.len() > 1 && samples.first().is_some_and(|s| s.valid) && samples.last().is_some_and(|s| s.valid) {
        let mut last = runs.pop().expect("two runs");
        last.extend(runs.remove(0));
        runs.push(last);
    }
    (runs, closed)
}

pub fn svg(m: &Merged, centers: &[String], t: f64, samples: Option<usize>, output: Option<&Path>) -> Result<u8, CliError> {
    let cfg = m.family_config()?;
    let tracked = m.tracked(centers)?;
    let n = m.samples(samples, DEFAULT_SAMPLES)?;
    let fail = |e: poncelet_core::FamilyError| CliError::Failure(e.to_string());

    let mut scene = Scene::new(cfg.to_string());
    scene.outer = conic_polyline(&cfg.outer_conic(), 360);
    let (c1, c2) = cfg.caustics().map_err(fail)?;
    scene.caustics.extend(conic_polyline(&c1, 360));
    if c2.coeff_distance(&c1) > 1e-12 {
        scene.caustics.extend(conic_polyline(&c2, 360));
    }
    scene.triangle = cfg.triangle::<f64>(t).ok().map(|tri| tri.vertices());

    let lines = chord_lines::<Dd>(&cfg, n, (2, 3)).map_err(fail)?;
    if let Ok(fit) = fit_envelope(&lines, 1e-20) {
        scene.envelope_point = fit.point;
        scene.envelope = fit.conic.and_then(|c| conic_polyline(&c, 360));
    }
    for tr in tracked {
        let locus = sample_locus(&cfg, tr, n).map_err(locus_error)?;
        let (runs, closed) = valid_runs(&locus.samples);
        scene.loci.push((tr.label(), runs, closed));
    }
    emit(output, &scene.render())?;
    Ok(0)
}
