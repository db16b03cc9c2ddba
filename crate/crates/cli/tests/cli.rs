//! End-to-end tests of the `roadchange` binary: subcommands, file
//! artifacts, exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_roadchange"))
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("roadchange_cli_tests").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {:?}\nstdout: {}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn gen_scene(dir: &Path, grid: usize, damage: f64, noise: f64, seed: u64) {
    run_ok(bin().args([
        "gen-scene",
        "--out",
        dir.to_str().unwrap(),
        "--grid",
        &grid.to_string(),
        "--damage",
        &damage.to_string(),
        "--noise",
        &noise.to_string(),
        "--seed",
        &seed.to_string(),
    ]));
}

#[test]
fn full_run_writes_all_artifacts() {
    let dir = temp_dir("full_run");
    gen_scene(&dir, 5, 0.15, 0.01, 3);
    let out = dir.join("out");
    run_ok(bin().args([
        "run",
        "--pre",
        dir.join("pre.pgm").to_str().unwrap(),
        "--post",
        dir.join("post.pgm").to_str().unwrap(),
        "--osm",
        dir.join("osm.geojson").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
    for artifact in [
        "diff_mask.pgm",
        "diff_mask.geo.json",
        "g_diff.geojson",
        "g_diff_segments.geojson",
        "costed.geojson",
        "heatmap.csv",
        "heatmap.pgm",
        "manifest.json",
    ] {
        assert!(out.join(artifact).exists(), "missing {artifact}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["schema_version"], 1);
    assert_eq!(manifest["config"]["alpha"], "inf");
    assert!(manifest["inputs"]["pre"]["fnv1a64"].is_string());
    assert!(manifest["network"]["flagged_edges"].is_array());
    // costed output respects the schema
    let costed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("costed.geojson")).unwrap())
            .unwrap();
    assert_eq!(costed["alpha"], "inf");
    let feature = &costed["features"][0];
    for key in ["edge_id", "length", "cost", "removed"] {
        assert!(
            feature["properties"].get(key).is_some(),
            "costed feature missing {key}"
        );
    }
}

#[test]
fn missing_input_exits_2() {
    let dir = temp_dir("missing");
    let status = bin()
        .args([
            "run",
            "--pre",
            dir.join("absent.pgm").to_str().unwrap(),
            "--post",
            dir.join("absent2.pgm").to_str().unwrap(),
            "--osm",
            dir.join("absent.geojson").to_str().unwrap(),
            "--out",
            dir.join("out").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(!dir.join("out").exists(), "no partial outputs");
}

#[test]
fn unparsable_osm_exits_3() {
    let dir = temp_dir("badosm");
    gen_scene(&dir, 3, 0.0, 0.0, 1);
    std::fs::write(dir.join("broken.geojson"), "{this is not json").unwrap();
    let status = bin()
        .args([
            "run",
            "--pre",
            dir.join("pre.pgm").to_str().unwrap(),
            "--post",
            dir.join("post.pgm").to_str().unwrap(),
            "--osm",
            dir.join("broken.geojson").to_str().unwrap(),
            "--out",
            dir.join("out").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
}

#[test]
fn blank_masks_exit_4() {
    let dir = temp_dir("nosignal");
    gen_scene(&dir, 3, 0.0, 0.0, 1);
    // all-zero masks: header + zero payload
    let blank = {
        let mut v = b"P5\n64 64\n255\n".to_vec();
        v.extend(std::iter::repeat_n(0u8, 64 * 64));
        v
    };
    std::fs::write(dir.join("blank_pre.pgm"), &blank).unwrap();
    std::fs::write(dir.join("blank_post.pgm"), &blank).unwrap();
    let status = bin()
        .args([
            "run",
            "--pre",
            dir.join("blank_pre.pgm").to_str().unwrap(),
            "--post",
            dir.join("blank_post.pgm").to_str().unwrap(),
            "--osm",
            dir.join("osm.geojson").to_str().unwrap(),
            "--out",
            dir.join("out").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(4));
}

#[test]
fn point_only_network_exits_5() {
    let dir = temp_dir("emptynet");
    gen_scene(&dir, 3, 0.0, 0.0, 1);
    std::fs::write(
        dir.join("points.geojson"),
        r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","geometry":{"type":"Point","coordinates":[1,2]}}
        ]}"#,
    )
    .unwrap();
    let status = bin()
        .args([
            "run",
            "--pre",
            dir.join("pre.pgm").to_str().unwrap(),
            "--post",
            dir.join("post.pgm").to_str().unwrap(),
            "--osm",
            dir.join("points.geojson").to_str().unwrap(),
            "--out",
            dir.join("out").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(5));
}

#[test]
fn eval_segments_identical_graphs_score_one() {
    let dir = temp_dir("eval_segments");
    gen_scene(&dir, 4, 0.0, 0.0, 2);
    let out = run_ok(bin().args([
        "eval-segments",
        "--pred",
        dir.join("truth_pre.geojson").to_str().unwrap(),
        "--truth",
        dir.join("truth_pre.geojson").to_str().unwrap(),
    ]));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["f_score"], 1.0);
    assert_eq!(report["precision"], 1.0);
    assert_eq!(report["recall"], 1.0);
    assert_eq!(report["fp"], 0);
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn eval_connectivity_identical_graphs_fully_correct() {
    let dir = temp_dir("eval_conn");
    gen_scene(&dir, 4, 0.0, 0.0, 2);
    let out = run_ok(bin().args([
        "eval-connectivity",
        "--pred",
        dir.join("truth_pre.geojson").to_str().unwrap(),
        "--truth",
        dir.join("truth_pre.geojson").to_str().unwrap(),
        "--pair-count",
        "200",
        "--seed",
        "9",
    ]));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["correct"], 100.0);
    assert_eq!(report["no_connections"], 0.0);
    assert_eq!(report["pair_count"], 200);
}

#[test]
fn route_over_costed_graph_detours() {
    let dir = temp_dir("route");
    gen_scene(&dir, 4, 0.0, 0.0, 2);
    // fuse with an empty diff graph is impossible (empty network), so fuse
    // the truth against itself with alpha inf and a diff far away: instead
    // route over the plain truth graph
    let out = run_ok(bin().args([
        "route",
        "--graph",
        dir.join("truth_pre.geojson").to_str().unwrap(),
        "--src",
        "10,10",
        "--dst",
        "190,190",
    ]));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "Found");
    let weight = report["total_weight"].as_f64().unwrap();
    assert!((weight - 360.0).abs() < 1e-6, "manhattan path over the grid");
}

#[test]
fn heatmap_subcommand_writes_csv_and_pgm() {
    let dir = temp_dir("heatmap");
    gen_scene(&dir, 4, 0.5, 0.0, 5);
    let run_dir = dir.join("run_out");
    run_ok(bin().args([
        "run",
        "--pre",
        dir.join("pre.pgm").to_str().unwrap(),
        "--post",
        dir.join("post.pgm").to_str().unwrap(),
        "--osm",
        dir.join("osm.geojson").to_str().unwrap(),
        "--out",
        run_dir.to_str().unwrap(),
    ]));
    let hm_dir = dir.join("hm");
    run_ok(bin().args([
        "heatmap",
        "--mask",
        run_dir.join("diff_mask.pgm").to_str().unwrap(),
        "--out",
        hm_dir.to_str().unwrap(),
        "--heatmap-cell",
        "50",
    ]));
    let csv = std::fs::read_to_string(hm_dir.join("heatmap.csv")).unwrap();
    assert!(csv.starts_with("row,col,sum\n"));
    let total: u64 = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert!(total > 0, "damaged scene has changed pixels");
    assert!(hm_dir.join("heatmap.pgm").exists());
}

#[test]
fn extract_subcommand_builds_graph_from_mask() {
    let dir = temp_dir("extract");
    gen_scene(&dir, 4, 0.0, 0.0, 2);
    let out_path = dir.join("extracted.geojson");
    run_ok(bin().args([
        "extract",
        "--mask",
        dir.join("pre.pgm").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let features = doc["features"].as_array().unwrap();
    // 4x4 grid: 24 edges; junction geometry may split a few
    assert!(features.len() >= 20, "got {} edges", features.len());
}

#[test]
fn diff_and_fuse_subcommands_chain() {
    let dir = temp_dir("chain");
    gen_scene(&dir, 5, 0.2, 0.0, 6);
    let diff_dir = dir.join("diff_out");
    run_ok(bin().args([
        "diff",
        "--pre",
        dir.join("pre.pgm").to_str().unwrap(),
        "--post",
        dir.join("post.pgm").to_str().unwrap(),
        "--out",
        diff_dir.to_str().unwrap(),
    ]));
    let registration: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(diff_dir.join("registration.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(registration["dx"], 0);
    assert_eq!(registration["dy"], 0);
    assert!(registration["changed_pixels"].as_u64().unwrap() > 0);

    // extract a graph from the diff mask, then fuse it onto the network
    let g_diff = dir.join("g_diff.geojson");
    run_ok(bin().args([
        "extract",
        "--mask",
        diff_dir.join("diff_mask.pgm").to_str().unwrap(),
        "--out",
        g_diff.to_str().unwrap(),
        "--dilation-radius",
        "0",
    ]));
    let costed_path = dir.join("costed.geojson");
    run_ok(bin().args([
        "fuse",
        "--diff-graph",
        g_diff.to_str().unwrap(),
        "--osm",
        dir.join("osm.geojson").to_str().unwrap(),
        "--out",
        costed_path.to_str().unwrap(),
        "--alpha",
        "5",
    ]));
    let costed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&costed_path).unwrap()).unwrap();
    assert_eq!(costed["alpha"], 5.0);
    let over_one = costed["features"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["properties"]["cost"].as_f64().unwrap() > 1.0)
        .count();
    assert!(over_one > 0, "some edges must be costed above 1");

    // the costed document routes and evaluates directly
    let out = run_ok(bin().args([
        "eval-connectivity",
        "--pred",
        costed_path.to_str().unwrap(),
        "--truth",
        dir.join("truth_post.geojson").to_str().unwrap(),
        "--pair-count",
        "300",
    ]));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        report["no_connections"], 0.0,
        "finite alpha keeps the network connected: {report}"
    );
    let total = report["correct"].as_f64().unwrap()
        + report["no_connections"].as_f64().unwrap()
        + report["too_short"].as_f64().unwrap()
        + report["too_long"].as_f64().unwrap();
    assert!((total - 100.0).abs() < 0.01);

    let out = run_ok(bin().args([
        "route",
        "--graph",
        costed_path.to_str().unwrap(),
        "--src",
        "10,10",
        "--dst",
        "250,250",
    ]));
    let route: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(route["status"], "Found");
}

#[test]
fn config_file_then_flag_precedence() {
    let dir = temp_dir("config_precedence");
    gen_scene(&dir, 3, 0.0, 0.0, 1);
    let config_path = dir.join("config.json");
    std::fs::write(&config_path, r#"{"alpha": 7, "heatmap_cell": 25}"#).unwrap();
    let out = dir.join("out");
    run_ok(bin().args([
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--pre",
        dir.join("pre.pgm").to_str().unwrap(),
        "--post",
        dir.join("post.pgm").to_str().unwrap(),
        "--osm",
        dir.join("osm.geojson").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--alpha",
        "9",
    ]));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["config"]["alpha"], 9.0, "flag beats file");
    assert_eq!(manifest["config"]["heatmap_cell"], 25, "file beats default");

    // manifest completeness: every config field is recorded
    let reference =
        serde_json::to_value(roadchange_cli::PipelineConfig::default()).unwrap();
    for key in reference.as_object().unwrap().keys() {
        assert!(
            manifest["config"].get(key).is_some(),
            "manifest misses config field {key}"
        );
    }
}

#[test]
fn reference_counts_replay_through_eval_segments() {
    // 6453 shared segments + 395 pred-only + 43 truth-only, all far apart
    let dir = temp_dir("table_replay");
    let mut pred = Vec::new();
    let mut truth = Vec::new();
    let feature = |x: f64, y: f64| {
        format!(
            r#"{{"type":"Feature","geometry":{{"type":"LineString","coordinates":[[{x},{y}],[{},{y}]]}}}}"#,
            x + 10.0
        )
    };
    let place = |i: usize, offset_y: f64| -> (f64, f64) {
        let col = i % 100;
        let row = i / 100;
        (col as f64 * 100.0, row as f64 * 100.0 + offset_y)
    };
    for i in 0..6453 {
        let (x, y) = place(i, 0.0);
        pred.push(feature(x, y));
        truth.push(feature(x, y));
    }
    for i in 0..395 {
        let (x, y) = place(i, 1_000_000.0);
        pred.push(feature(x, y));
    }
    for i in 0..43 {
        let (x, y) = place(i, 2_000_000.0);
        truth.push(feature(x, y));
    }
    let doc = |features: &[String]| {
        format!(
            r#"{{"type":"FeatureCollection","features":[{}]}}"#,
            features.join(",")
        )
    };
    std::fs::write(dir.join("pred.geojson"), doc(&pred)).unwrap();
    std::fs::write(dir.join("truth.geojson"), doc(&truth)).unwrap();
    let out = run_ok(bin().args([
        "eval-segments",
        "--pred",
        dir.join("pred.geojson").to_str().unwrap(),
        "--truth",
        dir.join("truth.geojson").to_str().unwrap(),
    ]));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["tp"], 6453);
    assert_eq!(report["fp"], 395);
    assert_eq!(report["fn"], 43);
    let p = report["precision"].as_f64().unwrap();
    let r = report["recall"].as_f64().unwrap();
    assert!((p - 0.94).abs() < 0.005, "precision {p}");
    assert!((r - 0.99).abs() < 0.005, "recall {r}");
}

#[test]
fn usage_errors_do_not_collide_with_io_exit_code() {
    let out = bin().arg("run").output().unwrap(); // missing required flags
    assert_eq!(out.status.code(), Some(64));
}
