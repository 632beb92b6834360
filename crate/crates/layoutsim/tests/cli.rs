mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use layoutsim::to_json;
use layoutsim_core::{build_groups, score_pair, PageSnapshot, Position, RewardWeights};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{el, fixture_path, load_fixture, page, random_page};

fn layoutsim(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_layoutsim"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("LAYOUTSIM_")) {
        cmd.env_remove(k);
    }
    cmd.args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_page(dir: &Path, name: &str, p: &PageSnapshot) {
    fs::write(dir.join(name), to_json(p)).unwrap();
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn score_identity() {
    let r = fixture_path("worked_reference.json");
    let out = stdout_json(&layoutsim(&["score", path_str(&r), path_str(&r)]));
    assert_eq!(out["rda"], 100.0);
    assert_eq!(out["gda"], 100.0);
    assert_eq!(out["sda"], 100.0);
    assert_eq!(out["reward"], 1.0);
    assert!(out["diagnostics"].get("pairs").is_none_or(Value::is_null));
}

#[test]
fn score_matches_library_bit_for_bit() {
    let c = fixture_path("worked_candidate.json");
    let r = fixture_path("worked_reference.json");
    let out = stdout_json(&layoutsim(&["score", "--verbose", path_str(&c), path_str(&r)]));
    let lib = score_pair(
        &load_fixture("worked_candidate.json"),
        &load_fixture("worked_reference.json"),
        &RewardWeights::default(),
    )
    .unwrap();
    for (key, v) in [("rda", lib.rda), ("gda", lib.gda), ("sda", lib.sda), ("reward", lib.reward)] {
        assert_eq!(out[key].as_f64().unwrap().to_bits(), v.to_bits(), "{key}");
    }
    assert_eq!(out["diagnostics"]["pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn score_weights_from_flags_and_env() {
    let c = fixture_path("worked_candidate.json");
    let r = fixture_path("worked_reference.json");
    let out = stdout_json(&layoutsim(&["--alpha", "1", "--beta", "0", "--gamma", "0", "score", path_str(&c), path_str(&r)]));
    assert_eq!(out["reward"].as_f64().unwrap(), out["rda"].as_f64().unwrap() / 100.0);

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_layoutsim"));
    cmd.env("LAYOUTSIM_ALPHA", "0").env("LAYOUTSIM_BETA", "1").env("LAYOUTSIM_GAMMA", "0");
    let env_only = stdout_json(&cmd.args(["score", path_str(&c), path_str(&r)]).output().unwrap());
    assert_eq!(env_only["reward"], 0.75);

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_layoutsim"));
    cmd.env("LAYOUTSIM_ALPHA", "0").env("LAYOUTSIM_BETA", "1").env("LAYOUTSIM_GAMMA", "0");
    let flag_wins = stdout_json(&cmd.args(["--beta", "0", "--gamma", "1", "score", path_str(&c), path_str(&r)]).output().unwrap());
    assert_eq!(flag_wins["reward"], flag_wins["sda"].as_f64().unwrap() / 100.0);
}

#[test]
fn score_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"page":{"width":1920,"height":1080},"elements":[{"index":0,"tag":"div","box":{"left":0,"top":0,"width":"wide","height":10}}]}"#,
    )
    .unwrap();
    let r = fixture_path("worked_reference.json");
    let out = layoutsim(&["score", path_str(&bad), path_str(&r)]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("elements[0].box.width"), "{stderr}");

    let missing = dir.path().join("missing.json");
    let out = layoutsim(&["score", path_str(&missing), path_str(&r)]);
    assert_eq!(out.status.code(), Some(1));

    let out = layoutsim(&["--alpha", "0", "--beta", "0", "--gamma", "0", "score", path_str(&r), path_str(&r)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn score_table_format() {
    let c = fixture_path("worked_candidate.json");
    let r = fixture_path("worked_reference.json");
    let out = layoutsim(&["--format", "table", "score", "-v", path_str(&c), path_str(&r)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("rda"));
    assert!(text.contains("0.596875"));
    assert!(text.contains("3/4"));
}

#[test]
fn stats_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout_json(&layoutsim(&["stats", path_str(dir.path())]));
    assert_eq!(out["pages"], 0);
    assert_eq!(out["tag_count"]["mean"], 0.0);
    assert_eq!(out["group_count"]["std"], 0.0);
    assert!(out["bins"].as_array().unwrap().iter().all(|b| b["pages"] == 0));
}

#[test]
fn stats_single_page_lands_in_first_bin() {
    let dir = tempfile::tempdir().unwrap();
    let p = page(vec![el(0, "div", 0.0, 0.0, 100.0, 100.0), el(1, "div", 500.0, 500.0, 100.0, 100.0)]);
    write_page(dir.path(), "a.json", &p);
    let out = stdout_json(&layoutsim(&["stats", path_str(dir.path())]));
    assert_eq!(out["pages"], 1);
    assert_eq!(out["group_count"]["mean"], 2.0);
    assert_eq!(out["bins"][0]["bin"], "0-50");
    assert_eq!(out["bins"][0]["pages"], 1);
}

#[test]
fn stats_match_independent_recount() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tags = Vec::new();
    let mut depths = Vec::new();
    let mut counts = Vec::new();
    for i in 0..10 {
        let p = random_page(&mut rng, 5 + 7 * i);
        tags.push(p.elements().len() as f64);
        let depth = (0..p.len())
            .map(|mut k| {
                let mut d = 1;
                while let Some(parent) = p.elements()[k].parent {
                    k = parent;
                    d += 1;
                }
                d
            })
            .max()
            .unwrap();
        depths.push(depth as f64);
        counts.push(build_groups(&p).group_count() as f64);
        write_page(dir.path(), &format!("p{i:02}.json"), &p);
    }
    fs::write(dir.path().join("broken.json"), "{").unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

    let out = stdout_json(&layoutsim(&["--workers", "3", "stats", path_str(dir.path())]));
    assert_eq!(out["pages"], 10);
    assert_eq!(out["skipped"], 1);
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    for (key, values) in [("tag_count", &tags), ("dom_depth", &depths), ("group_count", &counts)] {
        let got = out[key]["mean"].as_f64().unwrap();
        assert!((got - mean(values)).abs() < 1e-9, "{key}: {got}");
    }
    let binned: u64 = out["bins"].as_array().unwrap().iter().map(|b| b["pages"].as_u64().unwrap()).sum();
    assert_eq!(binned, 10);

    let coarse = stdout_json(&layoutsim(&["stats", "--bins", "coarse", path_str(dir.path())]));
    assert_eq!(coarse["bins"].as_array().unwrap().len(), 3);
    let custom = stdout_json(&layoutsim(&["stats", "--bins", "0,10,20", path_str(dir.path())]));
    assert_eq!(custom["bins"][2]["bin"], "20+");
}

fn quality_page(unstyled: usize, at_edge: usize) -> PageSnapshot {
    let els = (0..at_edge)
        .map(|i| {
            let mut e = el(i, "div", 0.0, 10.0 * i as f64, 100.0, 10.0);
            e.styles.position = Position::Static;
            e.styles.font_empty = i < unstyled;
            e
        })
        .collect();
    page(els)
}

#[test]
fn filter_boundaries_and_idempotence() {
    let src = tempfile::tempdir().unwrap();
    let out_a = tempfile::tempdir().unwrap();
    let out_b = tempfile::tempdir().unwrap();

    let tall = |h: f64| PageSnapshot::new(1920.0, h, None, vec![el(0, "div", 10.0, 10.0, 10.0, 10.0)]).unwrap();
    write_page(src.path(), "height-5000.json", &tall(5000.0));
    write_page(src.path(), "height-5001.json", &tall(5001.0));
    write_page(src.path(), "style-0.9.json", &quality_page(9, 10));
    write_page(src.path(), "style-1.0.json", &quality_page(4, 4));
    write_page(src.path(), "clean.json", &load_fixture("worked_reference.json"));
    fs::write(src.path().join("broken.json"), "[]").unwrap();

    let manifest_path = src.path().join("manifest.out");
    let out = layoutsim(&[
        "filter",
        path_str(src.path()),
        path_str(out_a.path()),
        "--manifest",
        path_str(&manifest_path),
    ]);
    let m = stdout_json(&out);
    let kept: Vec<&str> = m["kept"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(kept, ["clean.json", "height-5000.json", "style-0.9.json"]);
    let reason = |file: &str| {
        m["dropped"].as_array().unwrap().iter().find(|d| d["file"] == file).unwrap()["reason"].clone()
    };
    assert_eq!(reason("height-5001.json"), "height");
    assert_eq!(reason("style-1.0.json"), "style");
    assert_eq!(reason("broken.json"), "parse");
    assert_eq!(serde_json::from_slice::<Value>(&fs::read(&manifest_path).unwrap()).unwrap(), m);

    for name in &kept {
        assert_eq!(fs::read(src.path().join(name)).unwrap(), fs::read(out_a.path().join(name)).unwrap());
    }

    let again = stdout_json(&layoutsim(&["filter", path_str(out_a.path()), path_str(out_b.path())]));
    assert_eq!(again["kept"], m["kept"]);
    assert_eq!(again["dropped"].as_array().unwrap().len(), 0);

    let stats = stdout_json(&layoutsim(&["stats", path_str(out_b.path())]));
    let binned: u64 = stats["bins"].as_array().unwrap().iter().map(|b| b["pages"].as_u64().unwrap()).sum();
    assert_eq!(binned, stats["pages"].as_u64().unwrap());
    assert_eq!(stats["pages"], 3);

    let strict = stdout_json(&layoutsim(&[
        "filter",
        "--max-height",
        "4000",
        "--style-threshold",
        "0.95",
        path_str(src.path()),
        path_str(tempfile::tempdir().unwrap().path()),
    ]));
    assert_eq!(strict["kept"].as_array().unwrap().len(), 2);
}

#[test]
fn filter_table_format() {
    let src = tempfile::tempdir().unwrap();
    let dst = tempfile::tempdir().unwrap();
    write_page(src.path(), "a.json", &quality_page(1, 1));
    let out = layoutsim(&["--format", "table", "filter", path_str(src.path()), path_str(dst.path())]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kept 0  dropped 1"), "{text}");
}
