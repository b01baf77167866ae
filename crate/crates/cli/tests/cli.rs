use std::f64::consts::TAU;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn bcpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcpath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn solve_straight() {
    let v = json(&bcpath(&["solve", "--start", "0,0,0", "--end", "5,0,0", "--n", "0"]));
    assert_eq!(v["n"], 0);
    assert!((v["length"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert_eq!(v["family"], "CSC");
    assert_eq!(v["proximity"]["condition"], "I");
    assert_eq!(v["proximity"]["label"], "A");
    let segs = v["segments"].as_array().unwrap();
    assert_eq!(segs.len(), 3);
    assert_eq!(segs[1]["type"], "S");
}

#[test]
fn solve_closed_loop() {
    let v = json(&bcpath(&["solve", "--start", "0,0,0", "--end", "0,0,0", "--n", "1"]));
    assert!((v["length"].as_f64().unwrap() - TAU).abs() < 1e-9);
    assert_eq!(v["family"], "C^χ");
    assert_eq!(v["chi"], 1);
}

#[test]
fn solve_range_writes_profile_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let v = json(&bcpath(&[
        "solve", "--start", "0,0,0", "--end", "5,0,0", "--n", "-3..3", "--svg", svg.to_str().unwrap(),
    ]));
    let rows = v["profile"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let n = row["n"].as_i64().unwrap();
        let want = 5.0 + TAU * n.abs() as f64;
        assert!((row["length"].as_f64().unwrap() - want).abs() < 1e-9);
    }
    let text = fs::read_to_string(svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("class=\"class\"").count(), 7);
}

#[test]
fn path_svg_has_one_group_per_segment() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("path.svg");
    let v = json(&bcpath(&[
        "solve", "--start", "0,0,0", "--end", "1,-2,90", "--deg", "--n", "2", "--svg", svg.to_str().unwrap(),
    ]));
    let text = fs::read_to_string(svg).unwrap();
    let segs = v["segments"].as_array().unwrap().len();
    assert_eq!(text.matches("class=\"segment\"").count(), segs);
    assert_eq!(text.matches("class=\"adjacent\"").count(), 4);
    assert_eq!(text.matches("stroke-dasharray").count(), 4);
    assert!(text.contains("r=\"100\""));
}

#[test]
fn kappa_scales_lengths() {
    let v = json(&bcpath(&[
        "solve", "--start", "0,0,0", "--end", "0,0,0", "--n", "1", "--kappa", "0.5",
    ]));
    assert!((v["length"].as_f64().unwrap() - 2.0 * TAU).abs() < 1e-9);
    assert!((v["segments"][0]["radius"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn classify_far_instance() {
    let v = json(&bcpath(&["classify", "--start", "0,0,0", "--end", "5,0,0"]));
    assert_eq!(v["condition"], "I");
    assert_eq!(v["label"], "A");
    assert_eq!(v["heuristic"], false);
}

#[test]
fn classify_close_instance_is_heuristic() {
    let v = json(&bcpath(&["classify", "--start", "0,0,0", "--end", "0.5,0.2,0"]));
    assert_eq!(v["condition"], "IV");
    assert!(v["label"] == "C" || v["label"] == "D");
    assert_eq!(v["heuristic"], true);
}

#[test]
fn profile_command() {
    let v = json(&bcpath(&["profile", "--start", "0,0,0", "--end", "0,0,0", "--n", "0..2"]));
    let lengths: Vec<f64> = v["profile"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["length"].as_f64().unwrap())
        .collect();
    assert!((lengths[0]).abs() < 1e-12);
    assert!((lengths[1] - TAU).abs() < 1e-9);
    assert!((lengths[2] - 2.0 * TAU).abs() < 1e-9);
}

fn circle_samples(radius: f64, count: usize) -> String {
    let records: Vec<Value> = (0..=count)
        .map(|k| {
            let s = TAU * radius * k as f64 / count as f64;
            let a = s / radius;
            serde_json::json!({
                "s": s,
                "x": radius * a.sin(),
                "y": radius * (1.0 - a.cos()),
                "theta": a,
            })
        })
        .collect();
    serde_json::to_string(&records).unwrap()
}

#[test]
fn normalise_circle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("circle.json");
    let output = dir.path().join("out.json");
    fs::write(&input, circle_samples(1.0, 200)).unwrap();
    let v = json(&bcpath(&[
        "normalise", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(),
    ]));
    let len_in = v["length_in"].as_f64().unwrap();
    let len_out = v["length_out"].as_f64().unwrap();
    assert!(len_out >= TAU - 1e-6 && len_out <= len_in + 1e-6);
    assert_eq!(v["class_in"], 1);
    assert_eq!(v["class_out"], 1);
    let path: Value = serde_json::from_str(&fs::read_to_string(output).unwrap()).unwrap();
    assert!(path["segments"].as_array().unwrap().iter().all(|s| s["kind"] != "X"));
    assert!(path["start"]["theta"].is_number());
}

#[test]
fn solved_path_round_trips_through_normalise() {
    // sample the solved path and normalise it back
    let v = json(&bcpath(&["solve", "--start", "0,0,0", "--end", "3,1,1.2", "--n", "0"]));
    let mut records = Vec::new();
    let mut s0 = 0.0;
    let mut pos = (0.0f64, 0.0f64);
    let mut heading = 0.0f64;
    for seg in v["segments"].as_array().unwrap() {
        let (len, curv) = match seg["type"].as_str().unwrap() {
            "S" => (seg["length"].as_f64().unwrap(), 0.0),
            "L" => (seg["sweep"].as_f64().unwrap(), 1.0),
            _ => (seg["sweep"].as_f64().unwrap(), -1.0),
        };
        let steps = ((len / 0.01).ceil() as usize).max(1);
        let h = len / steps as f64;
        for _ in 0..steps {
            if records.is_empty() {
                records.push(serde_json::json!({"s": 0.0, "x": 0.0, "y": 0.0, "theta": 0.0}));
            }
            let (x, y, th) = if curv == 0.0 {
                (pos.0 + h * heading.cos(), pos.1 + h * heading.sin(), heading)
            } else {
                let th = heading + curv * h;
                (
                    pos.0 + (th.sin() - heading.sin()) / curv,
                    pos.1 - (th.cos() - heading.cos()) / curv,
                    th,
                )
            };
            pos = (x, y);
            heading = th;
            s0 += h;
            records.push(serde_json::json!({"s": s0, "x": x, "y": y, "theta": th}));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("solved.json");
    fs::write(&input, serde_json::to_string(&records).unwrap()).unwrap();
    let n = json(&bcpath(&["normalise", "--input", input.to_str().unwrap()]));
    let len = v["length"].as_f64().unwrap();
    assert!((n["length_out"].as_f64().unwrap() - len).abs() < 1e-6);
}

#[test]
fn malformed_inputs_exit_2() {
    assert_eq!(bcpath(&["solve", "--start", "0,0", "--end", "5,0,0", "--n", "0"]).status.code(), Some(2));
    assert_eq!(bcpath(&["solve", "--start", "0,0,0", "--end", "5,0,0", "--n", "x"]).status.code(), Some(2));
    assert_eq!(bcpath(&["solve", "--start", "0,0,0", "--end", "5,0,0", "--n", "0..100"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    fs::write(&input, "{not json").unwrap();
    assert_eq!(bcpath(&["normalise", "--input", input.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn tight_curve_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tight.json");
    fs::write(&input, circle_samples(0.5, 200)).unwrap();
    assert_eq!(bcpath(&["normalise", "--input", input.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn verify_small_run() {
    let out = bcpath(&["verify", "--seed", "42", "--trials", "3", "--max-pieces", "5", "--restarts", "16"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("hard failures 0"));
}
