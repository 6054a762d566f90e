use std::path::Path;
use std::process::{Command, Output};

use poncelet_core::verification::n6_lambda;
use poncelet_core::{sample_locus, FamilyConfig, Tracked};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poncelet")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn csv_rows(text: &str) -> Vec<(f64, f64, f64, bool)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,valid"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 4, "{l}");
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn trace_conf1_mittenpunkt_is_stationary() {
    let o = run(&["trace", "--family", "conf-I", "--a", "2", "--b", "1", "--center", "X9", "-n", "16"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.ends_with('\n'));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 16);
    for (_, x, y, valid) in rows {
        assert!(valid && x.abs() < 1e-12 && y.abs() < 1e-12, "({x}, {y})");
    }
}

#[test]
fn trace_bic1_incenter_sits_at_chapple_distance() {
    let o = run(&["trace", "--family", "bic-I", "--R", "1", "--r", "0.25", "--center", "X1", "-n", "40"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 40);
    for (_, x, y, _) in rows {
        assert!((x - 0.5f64.sqrt()).abs() < 1e-14 && y.abs() < 1e-14);
    }
}

#[test]
fn trace_values_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x40.csv");
    let o = run(&["trace", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X40", "-n", "64", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let rows = csv_rows(&std::fs::read_to_string(&path).unwrap());
    let cfg = FamilyConfig::bic_ii(1.0, 0.2, 0.3).unwrap();
    let locus = sample_locus(&cfg, Tracked::Center(40), 64).unwrap();
    assert_eq!(rows.len(), locus.samples.len());
    for (row, s) in rows.iter().zip(&locus.samples) {
        assert_eq!(row.0.to_bits(), s.t.to_bits());
        assert_eq!(row.1.to_bits(), s.p.x.to_bits());
        assert_eq!(row.2.to_bits(), s.p.y.to_bits());
        assert_eq!(row.3, s.valid);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["trace", "--family", "bic-I", "--R", "1", "--center", "X1"],
        vec!["trace", "--family", "bic-II", "--R", "1", "--r", "0.2", "--center", "X1"],
        vec!["trace", "--family", "bic-5", "--R", "1", "--r", "0.2", "--center", "X1"],
        vec!["trace", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X7777"],
        vec!["trace", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.9", "--center", "X1"],
        vec!["classify", "--family", "conf-II", "--a", "2", "--b", "1", "--lambda", "0.5"],
        vec!["verify"],
        vec!["verify", "no-such-claim"],
        vec!["table", "3"],
        vec!["envelope", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--side", "22"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn too_few_samples_is_a_failure_not_a_usage_error() {
    let o = run(&["classify", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X1", "-n", "10"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 32"));
}

#[test]
fn classify_conf1_incenter_ellipse_axes() {
    let o = run(&["classify", "--family", "conf-I", "--a", "2", "--b", "1", "--center", "X1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "ellipse");
    assert_eq!(v["degree"], 2);
    let (a, b) = (2.0f64, 1.0f64);
    let delta = (a.powi(4) - a * a * b * b + b.powi(4)).sqrt();
    let want = [(delta - b * b) / a, (a * a - delta) / b];
    let axes = v["semi_axes"].as_array().unwrap();
    for (got, want) in axes.iter().zip(want) {
        assert!((got.as_f64().unwrap() - want).abs() < 1e-9, "{axes:?} vs {want}");
    }
    assert_eq!(v["convex"], true);
}

#[test]
fn classify_bic2_barycenter_is_sextic() {
    let o = run(&["classify", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "algebraic");
    assert_eq!(v["degree"], 6);
}

#[test]
fn classify_bic3_incenter_is_convex_and_not_a_conic() {
    let o = run(&["classify", "--family", "bic-III", "--R", "1", "--r", "0.15", "--d", "0.25", "--u", "0.4", "--center", "X1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["convex"], true);
    let verdict = v["verdict"].as_str().unwrap();
    assert!(verdict == "nonconic" || (verdict == "algebraic" && v["degree"].as_u64().unwrap() > 2), "{v}");
}

#[test]
fn classify_many_centers_gives_array() {
    let o = run(&["classify", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X1,X3", "-n", "128"]);
    let v = json(&o);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["verdict"], "circle");
    assert_eq!(arr[1]["verdict"], "point");
}

#[test]
fn verify_named_claim_passes_with_metric() {
    let o = run(&["verify", "thm:bicII-x1", "--R", "1", "--r", "0.2", "--d", "0.3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ok"], true);
    let rep = &v["reports"][0];
    assert_eq!(rep["claim_id"], "thm:bicII-x1");
    assert_eq!(rep["status"], "pass");
    assert!(rep["metric"].as_f64().unwrap() <= rep["tolerance"].as_f64().unwrap());
    assert_eq!(rep["params"][0]["params"]["R"], 1.0);
}

#[test]
fn failing_conjecture_never_blocks() {
    let o = run(&["verify", "conj:bicIII", "conj:bicII-stationary", "-n", "256"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["blocking"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_all_at_defaults_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.json");
    let o = run(&["verify", "--all", "-o", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len() + v["errors"].as_array().unwrap().len(), 16);
    assert_eq!(code(&o) == 0, v["ok"] == true);
    assert_eq!(code(&o), 0, "blocking claims: {}", v["blocking"]);
}

#[test]
fn verify_table2_grid_matches_reference() {
    let o = run(&["verify", "table2"]);
    let t = run(&["table", "2", "--json"]);
    assert_eq!(code(&t), 0);
    let rows = json(&t)["table"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["cells"].as_array().unwrap().len() == 6));
    let bad: Vec<String> = rows
        .iter()
        .flat_map(|r| {
            r["cells"].as_array().unwrap().iter().filter(|c| c["matches"] != true).map(move |c| format!("{} {}: {} want {}", r["family"], c["tracked"], c["letter"], c["expected"]))
        })
        .collect();
    assert_eq!(code(&o), 0, "mismatched cells {bad:?}");
}

fn locus_polylines(svg: &str, label: &str) -> Vec<Vec<(f64, f64)>> {
    svg.lines()
        .filter(|l| l.contains(&format!("data-tracked=\"{label}\"")))
        .map(|l| {
            let pts = l.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
            pts.split(' ')
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Least-squares circle `x² + y² + Dx + Ey + F = 0` through a polyline:
/// radius and worst radial deviation.
fn circle_stats(pts: &[(f64, f64)]) -> (f64, f64) {
    let mut a = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for &(x, y) in pts {
        let row = [x, y, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += row[i] * row[j];
            }
            rhs[i] -= row[i] * (x * x + y * y);
        }
    }
    let d = det3(a);
    let sol: Vec<f64> = (0..3)
        .map(|k| {
            let mut m = a;
            for i in 0..3 {
                m[i][k] = rhs[i];
            }
            det3(m) / d
        })
        .collect();
    let (cx, cy) = (-sol[0] / 2.0, -sol[1] / 2.0);
    let r = (cx * cx + cy * cy - sol[2]).sqrt();
    let dev = pts.iter().map(|p| (((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt() - r).abs()).fold(0.0, f64::max);
    (r, dev)
}

fn svg_file(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["-o", &p]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read_to_string(&path).unwrap()
}

#[test]
fn svg_bic2_incenter_family_radii() {
    let dir = tempfile::tempdir().unwrap();
    let svg = svg_file(dir.path(), "bic2.svg", &["svg", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X1,X40,X165", "-n", "256"]);
    let r: Vec<f64> = ["X1", "X40", "X165"]
        .iter()
        .map(|l| {
            let lines = locus_polylines(&svg, l);
            assert_eq!(lines.len(), 1, "{l}");
            let (mean, dev) = circle_stats(&lines[0]);
            assert!(dev < 0.01 * mean.max(1.0), "{l}: radius {mean} deviation {dev}");
            mean
        })
        .collect();
    assert!((r[1] / r[0] - 1.0).abs() < 1e-3, "{r:?}");
    assert!((r[2] / r[0] - 1.0 / 3.0).abs() < 1e-3, "{r:?}");
}

#[test]
fn svg_conf2_six_periodic_excenter_locus_is_round() {
    let dir = tempfile::tempdir().unwrap();
    let lambda = n6_lambda(2.0, 1.0).to_string();
    let svg = svg_file(dir.path(), "n6.svg", &["svg", "--family", "conf-II", "--a", "2", "--b", "1", "--lambda", &lambda, "--center", "P2'", "-n", "256"]);
    let lines = locus_polylines(&svg, "P2'");
    assert_eq!(lines.len(), 1);
    let (mean, dev) = circle_stats(&lines[0]);
    assert!(mean > 10.0 && dev < 0.01, "radius {mean} deviation {dev}");
}

#[test]
fn svg_without_loci_draws_conics_in_fixed_styles() {
    let dir = tempfile::tempdir().unwrap();
    let svg = svg_file(dir.path(), "plain.svg", &["svg", "--family", "conf-II", "--a", "2", "--b", "1", "--lambda", "0.5"]);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("viewport: x in ["));
    assert!(!svg.contains("class=\"locus\""));
    assert!(svg.contains(r#"class="outer" fill="none" stroke="black""#));
    assert!(svg.contains(r##"class="caustic" fill="none" stroke="#8b4513""##));
    assert!(svg.contains(r#"stroke="red" stroke-width="1.2" stroke-dasharray="6 4""#));
    assert!(svg.contains(r#"class="triangle""#));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        vec!["trace", "--family", "conf-III", "--a", "2", "--b", "1", "--lambda", "0.3", "--u", "0.5", "--center", "P2'", "-n", "100"],
        vec!["classify", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X36", "-n", "128"],
        vec!["svg", "--family", "bic-III", "--R", "1", "--r", "0.15", "--d", "0.25", "--u", "0.4", "--branch", "+-", "--center", "X1,P1'", "-n", "128"],
        vec!["envelope", "--family", "conf-II", "--a", "2", "--b", "1", "--lambda", "0.5", "-n", "128"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(code(&a), 0, "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn config_file_is_merged_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"family": "bic-II", "R": 1, "r": 0.2, "d": 0.1, "centers": ["X1"], "samples": 48}"#).unwrap();
    let from_file = run(&["trace", "--config", cfg.to_str().unwrap(), "--d", "0.3"]);
    let from_flags = run(&["trace", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3", "--center", "X1", "-n", "48"]);
    assert_eq!(code(&from_file), 0, "{}", String::from_utf8_lossy(&from_file.stderr));
    assert_eq!(from_file.stdout, from_flags.stdout);

    std::fs::write(&cfg, r#"{"family": "bic-II", "radius": 1}"#).unwrap();
    assert_eq!(code(&run(&["trace", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn envelope_matches_closed_form() {
    for args in [
        vec!["envelope", "--family", "bic-II", "--R", "1", "--r", "0.2", "--d", "0.3"],
        vec!["envelope", "--family", "conf-II", "--a", "2", "--b", "1", "--lambda", "0.5"],
    ] {
        let v = json(&run(&args));
        assert!(v["conic_residual"].as_f64().unwrap() < 1e-25, "{v}");
        assert!(v["deviation"].as_f64().unwrap() < 1e-12, "{v}");
    }
}
