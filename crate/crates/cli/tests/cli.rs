//! End-to-end behavior of the binary: exit codes, report round trips, and
//! seeded determinism.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scalestab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn exit_codes_follow_the_contract() {
    // success
    assert_eq!(run(&["case-study-multimodal"]).status.code(), Some(0));
    // validation errors exit 1
    assert_eq!(
        run(&["verify", "--input", "/no/such/file.csv", "--factors", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["verify", "--factors", "1"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    // budget violations exit 2
    let budget = run(&[
        "trials",
        "--trials",
        "1",
        "--max-points",
        "100",
        "--dims",
        "1",
    ]);
    assert_eq!(budget.status.code(), Some(2));
    // help is not an error
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["diagram", "--help"]).status.code(), Some(0));
}

#[test]
fn csv_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    write(&bad, "1,2\noops,3\n");
    let output = run(&["diagram", "--input", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn emitted_cloud_reproduces_identical_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let cloud_path = dir.path().join("cloud.csv");
    let first = run(&[
        "diagram",
        "--generate",
        "gaussian-blobs:points=20,blobs=3",
        "--seed",
        "11",
        "--emit-cloud",
        cloud_path.to_str().unwrap(),
    ]);
    let second = run(&["diagram", "--input", cloud_path.to_str().unwrap()]);
    let a = stdout_json(&first);
    let b = stdout_json(&second);
    assert_eq!(a["diagrams"], b["diagrams"]);
    assert_eq!(a["max_radius"], b["max_radius"]);
}

#[test]
fn trials_reports_are_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..3).map(|i| dir.path().join(format!("t{i}.json"))).collect();
    for (path, threads) in paths.iter().zip(["1", "4", "1"]) {
        let output = run(&[
            "trials",
            "--trials",
            "25",
            "--seed",
            "7",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }
    let bytes: Vec<_> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[0], bytes[2]);
}

#[test]
fn ppm_images_load_as_rgb_clouds() {
    let dir = tempfile::tempdir().unwrap();
    let ppm = dir.path().join("img.ppm");
    write(
        &ppm,
        "P3\n# two pixels\n2 1\n255\n0 0 0 255 255 255\n",
    );
    let output = run(&["diagram", "--input", ppm.to_str().unwrap(), "--max-dim", "0"]);
    let report = stdout_json(&output);
    assert_eq!(report["points"], 2);
    assert_eq!(report["dim"], 3);
    // the two corner pixels merge at the full cube diagonal
    let deaths = &report["diagrams"][0]["pairs"][0][1];
    assert!((deaths.as_f64().unwrap() - 441.6729559300637).abs() < 1e-9);
}

#[test]
fn distance_of_a_report_with_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let diagram = dir.path().join("d.json");
    let output = run(&[
        "diagram",
        "--generate",
        "circle:points=10",
        "--out",
        diagram.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let d = stdout_json(&run(&[
        "distance",
        "--a",
        diagram.to_str().unwrap(),
        "--b",
        diagram.to_str().unwrap(),
        "--dim",
        "1",
    ]));
    assert_eq!(d["metric"], "bottleneck");
    assert_eq!(d["value"].as_f64().unwrap(), 0.0);
}

#[test]
fn iterate_reports_the_worked_cumulative_bound() {
    let report = stdout_json(&run(&[
        "iterate",
        "--generate",
        "grid:side=2,dim=2",
        "--factors",
        "1,1.1",
        "--factors",
        "1,1.2",
        "--dims",
        "0,1",
    ]));
    let expected = (1.1f64 * 1.2 - 1.0) * 2.0f64.sqrt();
    assert_eq!(
        report["cumulative_bound_paper"].as_f64().unwrap(),
        expected
    );
    assert_eq!(report["composed_factors"][1].as_f64().unwrap(), 1.1 * 1.2);
    for m in report["measurements"].as_array().unwrap() {
        assert_eq!(m["holds_paper"], true);
        assert_eq!(m["holds_corrected"], true);
    }
}

#[test]
fn verify_csv_format_has_one_row_per_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let cloud = dir.path().join("square.csv");
    write(&cloud, "0,0\n1,0\n1,1\n0,1\n");
    let output = run(&[
        "verify",
        "--input",
        cloud.to_str().unwrap(),
        "--factors",
        "1,1.02",
        "--dims",
        "0,1",
        "--wasserstein-p",
        "2",
        "--format",
        "csv",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3); // header + two dims
    assert!(lines[0].starts_with("homology_dim,measured_bottleneck"));
    assert!(lines[1].starts_with('0'));
    assert!(lines[2].starts_with('1'));
}

#[test]
fn generator_seeds_matter_for_random_families() {
    let a = stdout_json(&run(&[
        "diagram", "--generate", "square:points=12", "--seed", "1",
    ]));
    let b = stdout_json(&run(&[
        "diagram", "--generate", "square:points=12", "--seed", "2",
    ]));
    assert_ne!(a["diagrams"], b["diagrams"]);
}

#[test]
fn transform_json_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let cloud = dir.path().join("c.csv");
    let transform = dir.path().join("t.json");
    write(&cloud, "0,0\n3,4\n");
    write(&transform, r#"{"factors": [1.0, 2.0]}"#);
    let report = stdout_json(&run(&[
        "verify",
        "--input",
        cloud.to_str().unwrap(),
        "--transform",
        transform.to_str().unwrap(),
    ]));
    assert_eq!(report["s_max"].as_f64().unwrap(), 2.0);
    // the 3-4-5 pair stretches to sqrt(9 + 64); the direct match beats
    // the double-diagonal option
    let measured = report["reports"][0]["measured_bottleneck"].as_f64().unwrap();
    assert!((measured - (73.0f64.sqrt() - 5.0)).abs() < 1e-12);
}
