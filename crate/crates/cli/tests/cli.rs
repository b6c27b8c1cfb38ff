use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arroids::arrangement::{concurrent_chords_explicit, fourlines_explicit, lines_and_conic_explicit, unimodular_equivalence};
use arroids::examples::{concurrent_chords, fourlines, lines_and_conic};
use arroids::exactlin::{Int, MatZ};
use serde_json::Value;
use tempfile::TempDir;

fn arroids(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arroids")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn matrix(v: &Value) -> MatZ {
    let rows: Vec<Vec<Int>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| Int::from(x.as_i64().unwrap())).collect())
        .collect();
    let cols = rows[0].len();
    MatZ::from_rows(&rows, cols)
}

#[test]
fn validate_and_thm_on_four_lines() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fourlines.json", &fourlines().to_json());
    let o = arroids(&["validate", s(&f), "-o", "text"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "bezout: ok, transversal: true");
    let o = arroids(&["thm", s(&f), "-o", "text"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "thm: true, per-ray balancing dims all 1");
    let v: Value = serde_json::from_str(&stdout(&arroids(&["thm", s(&f)]))).unwrap();
    assert_eq!(v["verdict"], true);
    assert!(v["balancing_dims"].as_array().unwrap().iter().all(|p| p[1] == 1));
}

#[test]
fn thm_failure_is_a_report_not_an_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cc.json", &concurrent_chords().to_json());
    let o = arroids(&["thm", s(&f)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], false);
    let dims: Vec<(String, u64)> = v["balancing_dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_str().unwrap().to_string(), p[1].as_u64().unwrap()))
        .collect();
    assert!(dims.contains(&("r:C".to_string(), 2)));
}

#[test]
fn tropicalize_lines_and_conic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "lc.json", &lines_and_conic_explicit().to_json());
    let o = arroids(&["tropicalize", s(&f)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["support_matches_arroid_fan"], true);
    let minimal = matrix(&v["minimal_rays"]);
    let expected = matrix(&serde_json::json!([[-1, 0, 0, 1], [0, -1, 0, 1], [-1, -1, 1, 1]]));
    assert!(unimodular_equivalence(&minimal, &expected).is_some());
    let full = matrix(&v["ray_matrix"]);
    let reference = matrix(&serde_json::json!([
        [-1, 1, 0, 0, 1, -1, 0],
        [-1, 0, 1, 0, 1, 0, -1],
        [-2, 0, 0, 1, 1, -1, -1]
    ]));
    assert!(unimodular_equivalence(&full, &reference).is_some());
}

#[test]
fn four_point_family_generator() {
    for (k, curves) in [(0, 6), (1, 7), (2, 8)] {
        let o = arroids(&["gen-inf-family", &k.to_string()]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), curves);
        assert_eq!(v["records"].as_array().unwrap().len(), 7);
    }
    assert_eq!(code(&arroids(&["gen-inf-family", "-1"])), 2);
    assert_eq!(code(&arroids(&["gen-inf-family", "x"])), 2);

    // the output is accepted by every verb that takes an arrangement
    let dir = TempDir::new().unwrap();
    let v: Value = serde_json::from_str(&stdout(&arroids(&["gen-inf-family", "2"]))).unwrap();
    let f = write(&dir, "inf2.json", &v);
    for args in [
        vec!["validate"],
        vec!["fan"],
        vec!["homology"],
        vec!["thm"],
        vec!["star", "-e", "C1"],
        vec!["contract", "-e", "L12"],
        vec!["delete", "-e", "C2"],
        vec!["modify-check", "-e", "C1"],
        vec!["tropicalize"],
        vec!["clusters"],
        vec!["maximality"],
    ] {
        let mut a = args.clone();
        a.push(s(&f));
        assert_eq!(code(&arroids(&a)), 0, "{args:?}");
    }
    let o = arroids(&["maximality", s(&f), "-o", "text"]);
    assert!(stdout(&o).starts_with("verdict: maximal"));
    assert!(stdout(&o).contains("real components: 20, tropical: 1+7+12 = 20"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(code(&arroids(&["validate", s(&garbage)])), 2);
    let unknown = write(&dir, "unknown.json", &serde_json::json!({"hello": 1}));
    assert_eq!(code(&arroids(&["fan", s(&unknown)])), 2);
    assert_eq!(code(&arroids(&["fan", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&arroids(&["bogus-verb"])), 2);

    // three lines with one intersection missing: Bezout fails, report on stdout
    let broken = serde_json::json!({
        "rank": 2,
        "elements": [{"id": "1", "degree": 1}, {"id": "2", "degree": 1}, {"id": "3", "degree": 1}],
        "points": [{"members": ["1", "2"]}, {"members": ["1", "3"]}]
    });
    let b = write(&dir, "broken.json", &broken);
    let o = arroids(&["validate", s(&b)]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["validation"]["bezout"][0]["tuple"], serde_json::json!(["2", "3"]));
    let o = arroids(&["fan", s(&b)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("validation"));

    // missing or unknown element
    let f = write(&dir, "four.json", &fourlines().to_json());
    assert_eq!(code(&arroids(&["contract", s(&f)])), 2);
    assert_eq!(code(&arroids(&["contract", s(&f), "-e", "9"])), 2);
    // an arroid is not an arrangement
    assert_eq!(code(&arroids(&["maximality", s(&f)])), 2);
    // precondition failures exit with 1
    let tangent = write(&dir, "tan.json", &arroids::arrangement::tangent_line_conic().to_json());
    let o = arroids(&["tropicalize", s(&tangent)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("error"));
}

#[test]
fn outputs_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "lc.json", &lines_and_conic().to_json());
    // fan output is itself valid fan input, and re-emits identically
    let fan = stdout(&arroids(&["fan", s(&f)]));
    let g = dir.path().join("fan.json");
    std::fs::write(&g, &fan).unwrap();
    assert_eq!(stdout(&arroids(&["fan", s(&g)])), fan);
    assert_eq!(code(&arroids(&["validate", s(&g)])), 0);
    // contraction output is an arroid
    let c = stdout(&arroids(&["contract", s(&f), "-e", "4"]));
    let h = dir.path().join("c.json");
    std::fs::write(&h, &c).unwrap();
    let back = arroids::Arroid::from_json(&serde_json::from_str(&c).unwrap()).unwrap();
    assert_eq!(back, lines_and_conic().contract("4").unwrap());
    assert_eq!(code(&arroids(&["fan", s(&h)])), 0);
    assert_eq!(code(&arroids(&["validate", s(&h)])), 0);
    // star at an element equals the star at its ray label
    assert_eq!(stdout(&arroids(&["star", s(&f), "-e", "4"])), stdout(&arroids(&["star", s(&g), "-e", "r:4"])));
    // generated arrangements re-emit identically through the library
    let inf = stdout(&arroids(&["gen-inf-family", "3", "--explicit"]));
    let v: Value = serde_json::from_str(&inf).unwrap();
    let arr = arroids::arrangement::CurveArrangement::from_json(&v).unwrap();
    assert_eq!(serde_json::to_string_pretty(&arr.to_json()).unwrap() + "\n", inf);
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let inputs = [
        write(&dir, "four.json", &fourlines().to_json()),
        write(&dir, "fourx.json", &fourlines_explicit().to_json()),
        write(&dir, "cc.json", &concurrent_chords_explicit().to_json()),
    ];
    for f in &inputs {
        for verb in ["validate", "fan", "homology", "thm", "tropicalize", "clusters", "maximality"] {
            for fmt in ["json", "text"] {
                let a = arroids(&[verb, s(f), "-o", fmt]);
                let b = arroids(&[verb, s(f), "-o", fmt]);
                assert_eq!(a.stdout, b.stdout, "{verb} {}", f.display());
                assert_eq!(code(&a), code(&b));
            }
        }
    }
    // keys are sorted
    let o = stdout(&arroids(&["validate", s(&inputs[1])]));
    let keys: Vec<&str> = o
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_arroids"))
        .args(["-o", "text", "validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(fourlines().to_json().to_string().as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "bezout: ok, transversal: true");
}
