use std::f64::consts::TAU;

use nalgebra::DMatrix;
use poncelet_core::loci::{convexity_check, convexity_lambda_root, fit_curve_with, stationarity_spread, Sample};
use poncelet_core::verification::bic_x1_circle;
use poncelet_core::{classify_locus, fit_curve, trace_locus, Conic, Dd, FamilyConfig, Locus, Point, Real, Tolerances, Tracked, Verdict};
use proptest::prelude::*;

fn ellipse(n: usize, c: Point, a: f64, b: f64, rot: f64) -> Vec<Point<Dd>> {
    let (sr, cr) = rot.sin_cos();
    (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            // build in double-double so the points lie on the conic to ~1e-32
            let (ct, st) = (Dd::from_f64(t.cos()), Dd::from_f64(t.sin()));
            let norm = (ct * ct + st * st).sqrt();
            let (x, y) = (ct / norm * Dd::from_f64(a), st / norm * Dd::from_f64(b));
            Point::new(
                Dd::from_f64(cr) * x - Dd::from_f64(sr) * y + Dd::from_f64(c.x),
                Dd::from_f64(sr) * x + Dd::from_f64(cr) * y + Dd::from_f64(c.y),
            )
        })
        .collect()
}

/// Null vector of the raw 6-column conic design matrix, from nalgebra.
fn nalgebra_conic(pts: &[Point]) -> [f64; 6] {
    let rows: Vec<f64> = pts.iter().flat_map(|p| [p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0]).collect();
    let m = DMatrix::from_row_slice(pts.len(), 6, &rows);
    let ata = m.transpose() * &m;
    let eig = ata.symmetric_eigen();
    let k = eig.eigenvalues.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    let v = eig.eigenvectors.column(k);
    [v[0], v[1], v[2], v[3], v[4], v[5]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_ellipse_samples_classify_as_ellipse(
        cx in -2.0..2.0f64, cy in -2.0..2.0f64, a in 0.3..3.0f64, ratio in 0.2..0.95f64, rot in -1.5..1.5f64,
    ) {
        let pts = ellipse(64, Point::xy(cx, cy), a, a * ratio, rot);
        let fit = poncelet_core::loci::classify_points(&pts, 1.0, &Tolerances::default()).unwrap();
        prop_assert_eq!(fit.verdict, Verdict::Ellipse);
        prop_assert!(fit.residual < 1e-28, "{}", fit.residual);
        let shape = fit.conic.unwrap();
        let (ma, mi) = shape.semi_axes.unwrap();
        prop_assert!((ma - a).abs() < 1e-9 * a && (mi - a * ratio).abs() < 1e-9 * a);

        // the f64 fit agrees with an independent eigen-decomposition
        let p64: Vec<Point> = pts.iter().map(|p| p.to_f64()).collect();
        let f = fit_curve(&p64, 2).unwrap();
        let ours = Conic::new(f.conic_coeffs.unwrap()).unwrap();
        let theirs = Conic::new(nalgebra_conic(&p64)).unwrap();
        prop_assert!(ours.coeff_distance(&theirs) < 1e-6, "{:?} vs {:?}", ours.coeffs(), theirs.coeffs());
    }

    #[test]
    fn oval_limacon_is_a_quartic(a in 0.2..0.45f64) {
        // r = 1 + a cos θ is a convex quartic for a < 1/2
        let pts: Vec<Point<Dd>> = (0..96)
            .map(|i| {
                let (c, s) = <Dd as Real>::unit(TAU * i as f64 / 96.0);
                let r = Dd::from_f64(1.0) + Dd::from_f64(a) * c;
                Point::new(r * c, r * s)
            })
            .collect();
        let fit = poncelet_core::loci::classify_points(&pts, 1.0, &Tolerances::default()).unwrap();
        prop_assert_eq!(fit.verdict, Verdict::AlgebraicDegree(4));
        // exactly degree 4 fits, degree 3 does not
        prop_assert!(fit_curve_with(&pts, 3, &Tolerances::default()).unwrap().verdict == Verdict::NonConic);
        let flat: Vec<Point> = pts.iter().map(|p| p.to_f64()).collect();
        prop_assert!(convexity_check(&flat));
    }

    #[test]
    fn bic2_incenter_locus_is_the_closed_form_circle(r in 0.08..0.4f64, dfrac in 0.05..0.9f64) {
        let d = dfrac * (1.0 - r);
        let cfg = FamilyConfig::bic_ii(1.0, r, d).unwrap();
        let locus = trace_locus(&cfg, Tracked::Center(1), 64).unwrap();
        let fit = classify_locus(&locus, &Tolerances::default()).unwrap();
        prop_assert_eq!(fit.verdict, Verdict::Circle);
        // oracle: circumcircle of three samples
        let p = locus.valid_points();
        let (a, b, c) = (p[0], p[21], p[42]);
        let den = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        let ux = (a.norm2() * (b.y - c.y) + b.norm2() * (c.y - a.y) + c.norm2() * (a.y - b.y)) / den;
        let uy = (a.norm2() * (c.x - b.x) + b.norm2() * (a.x - c.x) + c.norm2() * (b.x - a.x)) / den;
        let rr = a.dist(Point::xy(ux, uy));
        let (o1, r1) = bic_x1_circle(cfg.bicentric().unwrap());
        // the closed-form radius carries a sign (negative past the poristic distance)
        prop_assert!(o1.dist(Point::xy(ux, uy)) < 1e-9 && (r1.abs() - rr).abs() < 1e-9, "{:?} {} vs ({}, {}) {}", o1, r1, ux, uy, rr);
    }
}

#[test]
fn stationary_centers_have_zero_spread() {
    let cfg = FamilyConfig::bic_i(1.0, 0.25).unwrap();
    let locus = trace_locus(&cfg, Tracked::Center(1), 64).unwrap();
    assert!(stationarity_spread(&locus) < 1e-15);
    assert_eq!(classify_locus(&locus, &Tolerances::default()).unwrap().verdict, Verdict::Point);
    let moving = trace_locus(&cfg, Tracked::Center(2), 64).unwrap();
    assert!(stationarity_spread(&moving) > 1e-3);
}

#[test]
fn too_few_samples_are_refused() {
    let cfg = FamilyConfig::representative(poncelet_core::Family::BicII);
    assert!(matches!(
        trace_locus(&cfg, Tracked::Center(1), 16),
        Err(poncelet_core::LocusError::InsufficientSamples { found: 16, required: 32 })
    ));
    let few: Vec<Sample> = (0..10).map(|i| Sample { t: i as f64, p: Point::xy(i as f64, 0.0), valid: true }).collect();
    let l = Locus::from_samples(cfg, Tracked::Center(1), few);
    assert!(classify_locus(&l, &Tolerances::default()).is_err());
}

#[test]
fn convexity_root_for_two_one_is_a_quintic_root_below_the_billiard_parameter() {
    let r = convexity_lambda_root(2.0, 1.0).unwrap();
    assert!(r.residual <= 1e-10);
    assert!(r.lambda_o > 0.0 && r.lambda_o < r.bound);
}

#[test]
fn traced_conics_are_convex() {
    for (cfg, t) in [
        (FamilyConfig::conf_i(2.0, 1.0).unwrap(), Tracked::Center(1)),
        (FamilyConfig::conf_ii(2.0, 1.0, 0.5).unwrap(), Tracked::Excenter(2)),
        (FamilyConfig::bic_ii(1.0, 0.2, 0.3).unwrap(), Tracked::Center(165)),
    ] {
        let l = trace_locus(&cfg, t, 256).unwrap();
        assert!(classify_locus(&l, &Tolerances::default()).unwrap().verdict.is_conic(), "{cfg} {t}");
        assert!(convexity_check(&l.valid_points()), "{cfg} {t}");
    }
}
