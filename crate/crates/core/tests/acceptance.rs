//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use poncelet_core::families::{critical_lambda, BicentricParams, ConfocalParams};
use poncelet_core::loci::{fit_ladder, sextic_residual, stated_x2_sextic, stationarity_spread};
use poncelet_core::verification::*;
use poncelet_core::{trace_locus, FamilyConfig, Point, Tolerances, Tracked};

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

const GRID_R: [f64; 3] = [0.15, 0.2, 0.25];
const GRID_D: [f64; 3] = [0.2, 0.3, 0.4];

fn grid() -> Vec<BicentricParams> {
    GRID_R.iter().flat_map(|&r| GRID_D.iter().map(move |&d| BicentricParams::new(1.0, r, d))).filter(|p| p.r + p.d < p.big_r).collect()
}

fn circle_dev(pts: &[Point], c: Point, r: f64) -> f64 {
    pts.iter().map(|p| (p.dist(c) - r).abs()).fold(0.0, f64::max)
}

fn report(r: ClaimReport) -> Outcome {
    Ok((r.passed(), format!("{r}")))
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for p in grid() {
        let cfg = FamilyConfig::bic_ii(p.big_r, p.r, p.d).map_err(|e| e.to_string())?;
        let l = trace_locus(&cfg, Tracked::Center(1), 512).map_err(|e| e.to_string())?;
        let (o1, r1) = bic_x1_circle(&p);
        worst = worst.max(circle_dev(&l.valid_points(), o1, r1));
    }
    let el = start.elapsed();
    Ok((worst <= 1e-9 && el < Duration::from_secs(1), format!("max distance to [O1, r1] {worst:.2e} over 9 grid points in {el:?}")))
}

fn c2() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for r in [0.2, 0.25, 0.3] {
        let p = BicentricParams::poristic(1.0, r).map_err(|e| e.to_string())?;
        let (_, r1) = bic_x1_circle(&p);
        let cfg = FamilyConfig::bic_i(1.0, r).map_err(|e| e.to_string())?;
        let spread = stationarity_spread(&trace_locus(&cfg, Tracked::Center(1), 512).map_err(|e| e.to_string())?);
        ok &= r1.abs() <= 1e-12 && spread <= 1e-10;
        lines.push(format!("r={r}: r1={r1:.1e} spread={spread:.1e}"));
    }
    Ok((ok, lines.join(", ")))
}

fn c3() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in grid() {
        let cfg = FamilyConfig::bic_ii(p.big_r, p.r, p.d).map_err(|e| e.to_string())?;
        let l = trace_locus(&cfg, Tracked::Excenter(1), 512).map_err(|e| e.to_string())?;
        let (o1, _) = bic_x1_circle(&p);
        worst = worst.max(circle_dev(&l.valid_points(), o1.scale(-1.0), bic_excenter_radius(&p)));
    }
    let mut rel: f64 = 0.0;
    for r in [0.2, 0.25, 0.3] {
        let p = BicentricParams::poristic(1.0, r).map_err(|e| e.to_string())?;
        rel = rel.max((bic_excenter_radius(&p) - 2.0).abs() / 2.0);
    }
    Ok((worst <= 1e-9 && rel <= 1e-12, format!("P1' distance to [-O1, r1'] {worst:.2e}; bic-I |r1' - 2R|/2R {rel:.1e}")))
}

fn c4() -> Outcome {
    let tols = Tolerances::default();
    let (mut stated, mut conic) = (0.0_f64, f64::INFINITY);
    for p in grid() {
        let cfg = FamilyConfig::bic_ii(p.big_r, p.r, p.d).map_err(|e| e.to_string())?;
        let l = trace_locus(&cfg, Tracked::Center(2), 512).map_err(|e| e.to_string())?;
        stated = stated.max(sextic_residual(&stated_x2_sextic(&p), l.precise_points()));
        let ladder = fit_ladder(l.precise_points(), 2, &tols).map_err(|e| e.to_string())?;
        conic = conic.min(ladder[1].residual);
    }
    Ok((stated <= 1e-8 && conic > 1e-3, format!("stated sextic residual {stated:.2e} (<= 1e-8), smallest conic residual {conic:.2e} (> 1e-3)")))
}

fn c5() -> Outcome {
    let tols = Tolerances::default();
    let lc = critical_lambda(2.0, 1.0).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut parts = Vec::new();
    for lam in [0.2, 0.5, 0.8, lc] {
        let r = check_confii_excenter_ellipse(&ConfocalParams::new(2.0, 1.0, lam), 512, &tols).map_err(|e| e.to_string())?;
        ok &= r.passed();
        parts.push(format!("λ={lam:.4}: {}", r.observed));
    }
    Ok((ok, parts.join(" | ")))
}

fn c8() -> Outcome {
    let r = check_x2_homothety_half_n4(2.0, 1.0, 512, &Tolerances::default()).map_err(|e| e.to_string())?;
    let c = &r.conditions[0];
    Ok((c.pass, format!("{}: {:.2e}", c.name, c.value)))
}

fn c15() -> Outcome {
    let start = Instant::now();
    let results = run_all(&ClaimInput::default());
    let el = start.elapsed();
    let errors: Vec<String> = results.iter().filter_map(|r| r.as_ref().err().map(|e| e.to_string())).collect();
    let failing: Vec<String> = results.iter().filter_map(|r| r.as_ref().ok()).filter(|r| !r.passed()).map(|r| r.claim_id.clone()).collect();
    Ok((errors.is_empty() && el < Duration::from_secs(60), format!("{} claims in {el:?}; errors {errors:?}; failing claims {failing:?}", results.len())))
}

fn main() -> ExitCode {
    let tols = Tolerances::default();
    let criteria: Vec<Criterion> = vec![
        ("C1 bic-II incenter circle over the (r, d) grid", Box::new(c1)),
        ("C2 degenerate r1 = 0 at the poristic distance", Box::new(c2)),
        ("C3 P1' circle and r1' = 2R over bic-I", Box::new(c3)),
        ("C4 stated X2 sextic", Box::new(c4)),
        ("C5 conf-II excenter ellipse", Box::new(c5)),
        ("C6 4-periodic caustic aspect and concurrent chords", Box::new(|| report(check_confii_n4(2.0, 1.0, 512).map_err(|e| e.to_string())?))),
        ("C7 6-periodic caustic circle", Box::new(|| report(check_confii_n6(2.0, 1.0, 512).map_err(|e| e.to_string())?))),
        ("C8 1/3-scaled barycenter ellipse", Box::new(c8)),
        (
            "C9 envelopes",
            Box::new(|| {
                let bic = BicentricParams::new(1.0, 0.2, 0.3);
                let conf = ConfocalParams::new(2.0, 1.0, 0.5);
                report(check_envelopes(&bic, &conf, 512).map_err(|e| e.to_string())?)
            }),
        ),
        ("C10 locus-type grid over bic-II, bic-III, conf-II, conf-III", Box::new(move || report(check_table2(512, &tols).map_err(|e| e.to_string())?.1))),
        ("C11 stationarity grid over bic-I with bic-II, bic-III rows", Box::new(move || report(check_table1(512, &tols).map_err(|e| e.to_string())?.1))),
        ("C12 conserved quantities", Box::new(move || report(check_conserved((1.0, 0.2), (2.0, 1.0), 512, &tols).map_err(|e| e.to_string())?))),
        ("C13 conf-II incenter convexity threshold", Box::new(|| report(check_convexity_transition(2.0, 1.0, 2048).map_err(|e| e.to_string())?))),
        (
            "C14 two bic-III envelopes",
            Box::new(|| report(check_bic3_two_envelopes(&BicentricParams::new(1.0, 0.15, 0.25).with_u(0.4), 512).map_err(|e| e.to_string())?)),
        ),
        ("C15 full verification run under 60 s", Box::new(c15)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let (ok, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
