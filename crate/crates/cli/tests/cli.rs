use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightgon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name))
        .unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} in {v}"))
}

#[test]
fn ratio_examples() {
    let v = json(&["ratio", "--n", "3", "--m", "7", "--mode", "standard"]);
    assert!((num(&v, "ratio") - 1.09751942).abs() < 5e-9);
    assert_eq!((v["j_i"].as_u64(), v["j_o"].as_u64()), (Some(1), Some(2)));

    let v = json(&["ratio", "--n", "4", "--m", "6", "--mode", "rotated"]);
    assert!((num(&v, "ratio") - 1.11535507).abs() < 5e-9);
    assert!((num(&v, "alpha") - PI / 12.0).abs() < 1e-15);
    assert_eq!(v["s"].as_i64(), Some(2));

    let v = json(&["ratio", "--n", "3", "--m", "4", "--translate-preset", "3-4"]);
    assert!((num(&v, "ratio") - 1.1830127).abs() < 1e-7);
    let v = json(&["ratio", "--n", "4", "--m", "3", "--translate-preset", "4-3"]);
    assert!((num(&v, "inverse") - 0.549038).abs() < 1e-6);
}

#[test]
fn ratio_errors() {
    assert_eq!(code(&["ratio", "--n", "2", "--m", "5"]), 2);
    assert_eq!(code(&["ratio", "--n", "3", "--m", "x"]), 2);
    assert_eq!(code(&["ratio", "--n", "3", "--m", "4", "--translate-preset", "7-9"]), 3);
    assert_eq!(code(&["ratio", "--n", "3", "--m", "5", "--translate-preset", "3-4"]), 2);
}

#[test]
fn standard_table_is_byte_identical() {
    let out = stdout(&["table", "--rows", "3..10", "--cols", "3..10", "--mode", "standard", "--digits", "8"]);
    assert_eq!(out, golden("table_standard.csv"));
    assert_eq!(stdout(&["table", "--rows", "3..3", "--cols", "3..3"]), "n\\m,3\n3,1.00000000\n");
}

#[test]
fn rotated_table_never_exceeds_standard() {
    let read = |mode: &str| -> Vec<Vec<f64>> {
        let text = stdout(&["table", "--rows", "3..16", "--cols", "3..16", "--mode", mode, "--digits", "12"]);
        let mut r = csv::Reader::from_reader(text.as_bytes());
        r.records()
            .map(|rec| rec.unwrap().iter().skip(1).map(|x| x.parse().unwrap()).collect())
            .collect()
    };
    let (std, rot) = (read("standard"), read("rotated"));
    let mut worse = Vec::new();
    for (i, (a, b)) in std.iter().zip(&rot).enumerate() {
        for (j, (x, y)) in a.iter().zip(b).enumerate() {
            if y > x {
                worse.push((i + 3, j + 3));
            }
        }
    }
    // the even-even rule misfires on the 12-gon and nowhere else below 17
    assert_eq!(worse, vec![(12, 4), (12, 8), (12, 16)]);
}

#[test]
fn table_csv_round_trips() {
    let text = stdout(&["table", "--rows", "3..12", "--cols", "3..12", "--digits", "6"]);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rebuilt = format!("{}\n", r.headers().unwrap().iter().collect::<Vec<_>>().join(","));
    for rec in r.records() {
        let rec = rec.unwrap();
        let mut cells = vec![rec[0].to_string()];
        cells.extend(rec.iter().skip(1).map(|x| format!("{:.6}", x.parse::<f64>().unwrap())));
        rebuilt.push_str(&cells.join(","));
        rebuilt.push('\n');
    }
    assert_eq!(rebuilt, text);
}

#[test]
fn table_errors() {
    assert_eq!(code(&["table", "--rows", "5..3"]), 2);
    assert_eq!(code(&["table", "--rows", "3-5"]), 2);
    assert_eq!(code(&["table", "--cols", "2..5"]), 2);
}

#[test]
fn prime_tables() {
    let out = stdout(&["primes", "--max", "73"]);
    let (table, summary) = out.rsplit_once("# ").unwrap();
    assert_eq!(table, golden("primes_73.csv"));
    assert_eq!(summary, "all 19 mismatches are ±1\n");
    let small = stdout(&["primes", "--max", "7"]);
    assert_eq!(small, "n,m,j_i,j_o,mismatch\n3,5,1,1,1\n5,7,1,1,-1\n# all 2 mismatches are ±1\n");
    // larger bounds are reported, whatever they show
    let big = stdout(&["primes", "--max", "541"]);
    assert_eq!(big.lines().filter(|l| !l.starts_with('#')).count(), 1 + 98);
    assert!(big.lines().last().unwrap().starts_with("# "));
}

#[test]
fn constants() {
    let v = json(&["constant", "--name", "limit_consecutive_down"]);
    assert!((num(&v, "value") - 8.5526818319553).abs() < 1e-10);
    let v = json(&["constant", "--name", "C_e"]);
    assert!((num(&v, "value") - 0.851_357_305_266_714).abs() < 4e-15);
    assert!(num(&v, "error_estimate") < 1e-12);
    let v = json(&["constant", "--name", "wrench_angle_deg"]);
    assert_eq!(format!("{:.2}", num(&v, "value")), "25.23");

    let v = json(&["constant", "--name", "K_prime", "--taylor-order", "8", "--cutoff", "20"]);
    assert_eq!(v["truncation"]["taylor_order"].as_u64(), Some(8));
    assert_eq!(v["truncation"]["cutoff"].as_u64(), Some(20));
    assert!((num(&v, "value") - 0.1149420448532962).abs() <= num(&v, "error_estimate"));

    assert_eq!(code(&["constant", "--name", "K_triple_prime"]), 3);
    assert_eq!(code(&["constant", "--name", "C_e", "--taylor-order", "7"]), 2);
    assert_eq!(code(&["constant", "--name", "wrench_angle", "--cutoff", "5"]), 2);
}

/// Polygons of an SVG written by `figure`, innermost first, in model units.
fn polygons(svg: &str) -> Vec<Vec<(f64, f64)>> {
    svg.lines()
        .filter(|l| l.starts_with("<polygon"))
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

/// Every vertex of `inner` on the left of each counter-clockwise edge of `outer`.
fn contained(inner: &[(f64, f64)], outer: &[(f64, f64)], tol: f64) -> bool {
    inner.iter().all(|&(px, py)| {
        (0..outer.len()).all(|k| {
            let (ax, ay) = outer[k];
            let (bx, by) = outer[(k + 1) % outer.len()];
            let (ex, ey) = (bx - ax, by - ay);
            let cross = ex * (py - ay) - ey * (px - ax);
            -cross / ex.hypot(ey) <= tol
        })
    })
}

fn radius(poly: &[(f64, f64)]) -> f64 {
    poly.iter().map(|&(x, y)| x.hypot(y)).fold(0.0, f64::max)
}

fn figure(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.svg");
    let mut all = vec!["figure", "--out", path.to_str().unwrap()];
    all.extend_from_slice(args);
    stdout(&all);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn cascade_figure_matches_cumulative_product() {
    for mode in ["standard", "rotated"] {
        let svg = figure(&["--sequence", "consecutive-up", "--start", "3", "--end", "16", "--mode", mode]);
        assert!(svg.contains(r#"version="1.1""#));
        let polys = polygons(&svg);
        assert_eq!(polys.iter().map(Vec::len).collect::<Vec<_>>(), (3..=16).collect::<Vec<_>>());
        for w in polys.windows(2) {
            assert!(contained(&w[0], &w[1], 1e-6));
        }
        let ratio = radius(polys.last().unwrap()) / radius(&polys[0]);
        let v = json(&["ratio", "--n", "3", "--m", "4"]);
        assert!(num(&v, "ratio") <= ratio);
        let spec = tightgon::nest::CascadeSpec::new(
            tightgon::nest::Sequence::ConsecutiveUp,
            3,
            16,
            mode.parse().unwrap(),
        );
        let cumulative = tightgon::nest::cascade(&spec).unwrap().cumulative;
        assert!((ratio - cumulative).abs() < 1e-10, "{ratio} vs {cumulative}");
        // view box is the outermost radius with 5% margin
        let half = 1.05 * radius(polys.last().unwrap());
        let view = svg.split("viewBox=\"").nth(1).unwrap().split('"').next().unwrap();
        let view: Vec<f64> = view.split(' ').map(|x| x.parse().unwrap()).collect();
        assert!((view[0] + half).abs() < 1e-9 && (view[2] - 2.0 * half).abs() < 1e-9, "{view:?}");
    }
}

#[test]
fn prime_figure_stays_below_limit() {
    let svg = figure(&["--sequence", "primes-up", "--start", "3", "--end", "541"]);
    let polys = polygons(&svg);
    assert_eq!(polys.len(), 99);
    let ratio = radius(polys.last().unwrap()) / radius(&polys[0]);
    assert!(ratio < 1.5550895739 && ratio > 1.5, "{ratio}");
    for w in polys.windows(2) {
        assert!(contained(&w[0], &w[1], 1e-6));
    }
}

#[test]
fn pair_and_preset_figures() {
    let polys = polygons(&figure(&["--pair", "3,7"]));
    assert_eq!((polys[0].len(), polys[1].len()), (3, 7));
    assert!(contained(&polys[0], &polys[1], 1e-6));
    // inner vertex 1 lies on outer edge 2
    let (p, a, b) = (polys[0][1], polys[1][2], polys[1][3]);
    let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    assert!(cross.abs() < 1e-9);

    for preset in ["3-4", "4-3", "3-5"] {
        let polys = polygons(&figure(&["--translate-preset", preset]));
        assert!(contained(&polys[0], &polys[1], 1e-6), "{preset}");
    }
    assert_eq!(code(&["figure", "--out", "x.svg", "--translate-preset", "9-9"]), 3);
}

#[test]
fn figure_errors() {
    assert_eq!(code(&["figure", "--out", "/nonexistent-dir/sub/f.svg"]), 4);
    assert_eq!(code(&["figure", "--out", "f.svg", "--size", "0"]), 2);
    assert_eq!(
        code(&["figure", "--out", "f.svg", "--sequence", "consecutive-down", "--start", "3", "--end", "9"]),
        2
    );
    assert!(!Path::new("f.svg").exists());
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["table", "--mode", "rotated"][..],
        &["primes", "--max", "101"],
        &["constant", "--name", "P_prime_pairs"],
        &["validate", "--max-n", "9"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    assert_eq!(figure(&["--end", "12"]), figure(&["--end", "12"]));
}

#[test]
fn validation_exit_codes() {
    // clean up to the 11-gon
    assert_eq!(code(&["validate", "--max-n", "11"]), 0);
    let out = stdout(&["validate", "--max-n", "5", "--mode", "oracle"]);
    let devs: Vec<f64> = out
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(devs.len(), 9);
    assert!(devs.iter().all(|&d| d < 1e-9));
    assert_eq!(code(&["validate", "--max-n", "20", "--mode", "oracle"]), 0);
    // the 12-gon and 20-gon rules disagree with the exhaustive search
    let out = run(&["validate", "--max-n", "20", "--mode", "heuristic"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(2).all(|l| l.trim_start().starts_with("12 ")
        || l.trim_start().starts_with("20 ")), "{text}");
}
