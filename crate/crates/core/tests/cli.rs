use critloc::cli::CheckOutput;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critloc"))
        .args(args)
        .output()
        .expect("spawn")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn pairs(o: &Output) -> Vec<[f64; 2]> {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn symmetric_pair_has_midpoint_critical_point() {
    let o = run_on("critical-points", "symmetric_pair.json", &["--method", "matricial"]);
    assert_eq!(code(&o), 0);
    let p = pairs(&o);
    assert_eq!(p.len(), 1);
    assert!(p[0][0].abs() <= 1e-12 && p[0][1].abs() <= 1e-12);
}

#[test]
fn both_methods_agree_on_three_real_zeros() {
    let s = 3f64.sqrt() / 3.0;
    for method in ["matricial", "companion"] {
        let p = pairs(&run_on("critical-points", "collinear.json", &["--method", method]));
        assert_eq!(p.len(), 2);
        assert!(
            (p[0][0] - (1.0 - s)).abs() <= 1e-9 && p[0][1].abs() <= 1e-9,
            "{method}: {p:?}"
        );
        assert!(
            (p[1][0] - (1.0 + s)).abs() <= 1e-9 && p[1][1].abs() <= 1e-9,
            "{method}: {p:?}"
        );
    }
}

#[test]
fn monomial_coefficients_give_double_zero() {
    for method in ["matricial", "companion"] {
        let p = pairs(&run_on("critical-points", "monomial.json", &["--method", method]));
        assert_eq!(p, vec![[0.0, 0.0], [0.0, 0.0]]);
    }
}

#[test]
fn every_index_gives_the_same_points() {
    let base = pairs(&run_on("critical-points", "right_triangle.json", &["--index", "1"]));
    for i in ["2", "3"] {
        let p = pairs(&run_on("critical-points", "right_triangle.json", &["--index", i]));
        for (a, b) in base.iter().zip(&p) {
            assert!((a[0] - b[0]).abs() <= 1e-9 && (a[1] - b[1]).abs() <= 1e-9);
        }
    }
    assert_eq!(
        code(&run_on("critical-points", "right_triangle.json", &["--index", "4"])),
        1
    );
    assert_eq!(
        code(&run_on("critical-points", "right_triangle.json", &["--index", "0"])),
        1
    );
}

#[test]
fn output_is_sorted() {
    let p = pairs(&run_on("critical-points", "triangle_02.json", &[]));
    assert!(p.windows(2).all(|w| (w[0][0], w[0][1]) <= (w[1][0], w[1][1])));
}

#[test]
fn check_reports_round_trip_byte_for_byte() {
    for theorem in ["main", "gauss-lucas", "bgm", "siebeck", "edge-preimage"] {
        let o = run_on("check", "right_triangle.json", &["--theorem", theorem]);
        assert_eq!(code(&o), 0, "{theorem}");
        let text = stdout(&o);
        let parsed: CheckOutput = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(again.trim_end(), text.trim_end(), "{theorem}");
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["report"]["theorem"], theorem);
        assert!(value["header"]["rng"].as_str().unwrap().contains("xoshiro"));
        assert!(value["report"]["tolerances_used"]["governing"].is_number());
    }
}

#[test]
fn exit_codes_partition_outcomes() {
    let cases: &[(&str, &str, &[&str], i32)] = &[
        ("check", "cube_roots.json", &["--theorem", "gauss-lucas"], 0),
        ("check", "square.json", &["--theorem", "main"], 0),
        ("check", "square.json", &["--theorem", "siebeck"], 0),
        ("check", "right_triangle.json", &["--theorem", "bgm"], 0),
        ("check", "collinear.json", &["--theorem", "bgm"], 3),
        ("check", "collinear.json", &["--theorem", "siebeck"], 3),
        ("check", "cube_roots.json", &["--theorem", "interlacing"], 3),
        ("check", "collinear.json", &["--theorem", "interlacing"], 0),
        ("check", "repeated_vertex.json", &["--theorem", "siebeck"], 3),
        (
            "check",
            "right_triangle.json",
            &["--theorem", "main", "--tol-match", "1e-300"],
            2,
        ),
        ("check", "unknown_field.json", &["--theorem", "main"], 1),
        ("check", "both_fields.json", &["--theorem", "main"], 1),
        ("check", "missing.json", &["--theorem", "main"], 1),
        ("check", "right_triangle.json", &["--theorem", "nonsense"], 1),
        (
            "check",
            "right_triangle.json",
            &["--theorem", "bgm", "--samples", "4"],
            1,
        ),
    ];
    for (cmd, file, extra, want) in cases {
        let o = run_on(cmd, file, extra);
        assert_eq!(
            code(&o),
            *want,
            "{cmd} {file} {extra:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert_eq!(
        code(&run(&[
            "random",
            "--n",
            "2",
            "--constraint",
            "siebeck-ok",
            "--seed",
            "1"
        ])),
        5
    );
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["frobnicate"])), 1);
}

#[test]
fn elliptical_range_on_instances() {
    assert_eq!(
        code(&run_on(
            "check",
            "symmetric_pair.json",
            &["--theorem", "elliptical-range"]
        )),
        0
    );
    assert_eq!(
        code(&run_on(
            "check",
            "right_triangle.json",
            &["--theorem", "elliptical-range"]
        )),
        0
    );
    assert_eq!(
        code(&run_on("check", "collinear.json", &["--theorem", "elliptical-range"])),
        0
    );
}

#[test]
fn text_and_csv_formats() {
    let o = run_on(
        "check",
        "right_triangle.json",
        &["--theorem", "bgm", "--format", "text"],
    );
    assert!(stdout(&o).starts_with("bgm: pass"));
    let o = run_on("critical-points", "collinear.json", &["--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--n", "3", "--count", "3", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["random", "--n", "3", "--count", "3", "--seed", "43"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn random_writes_files_that_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "random",
        "--n",
        "5",
        "--count",
        "2",
        "--seed",
        "3",
        "--constraint",
        "real",
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 0);
    let mut names: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    assert_eq!(names.len(), 2);
    for p in &names {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        let roots = v["roots"].as_array().unwrap();
        assert_eq!(roots.len(), 5);
        assert!(roots.iter().all(|z| z[1].as_f64() == Some(0.0)));
        assert!(v["label"].as_str().unwrap().contains("seed=3"));
        let check = run(&["check", p.to_str().unwrap(), "--theorem", "interlacing"]);
        assert_eq!(code(&check), 0);
    }
}

#[test]
fn siebeck_ok_instances_satisfy_the_hypotheses() {
    let o = run(&[
        "random",
        "--n",
        "4",
        "--count",
        "2",
        "--seed",
        "11",
        "--constraint",
        "siebeck-ok",
    ]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    for (k, line) in stdout(&o).lines().enumerate() {
        let path = dir.path().join(format!("{k}.json"));
        std::fs::write(&path, line).unwrap();
        let check = run(&["check", path.to_str().unwrap(), "--theorem", "siebeck"]);
        assert_eq!(code(&check), 0, "{line}");
    }
}

fn svg_groups(svg: &str) -> Vec<String> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc.descendants()
        .filter(|n| n.has_tag_name("g"))
        .filter_map(|n| n.attribute("id").map(str::to_string))
        .collect()
}

#[test]
fn svg_figures_are_well_formed_with_all_layers() {
    for (file, which) in [
        ("triangle_02.json", "bgm"),
        ("cube_roots.json", "siebeck"),
        ("right_triangle.json", "siebeck"),
    ] {
        let o = run_on("figure", file, &["--which", which]);
        assert_eq!(code(&o), 0, "{file} {which}");
        let mut groups = svg_groups(&stdout(&o));
        groups.sort();
        assert_eq!(groups, ["critical", "fov", "hull", "inellipse", "midpoints", "zeros"]);
    }
}

#[test]
fn figure_layers_in_json_and_csv() {
    let o = run_on("figure", "triangle_02.json", &["--which", "bgm", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["layers"]["which"], "bgm");
    assert!(v["transform"]["scale"].as_f64().unwrap() > 0.0);
    let data = &v["layers"];
    let mids: Vec<[f64; 2]> = serde_json::from_value(data["midpoints"].clone()).unwrap();
    for want in [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]] {
        assert!(mids
            .iter()
            .any(|m| (m[0] - want[0]).abs() + (m[1] - want[1]).abs() <= 1e-12));
    }
    let o = run_on("figure", "triangle_02.json", &["--which", "bgm", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("layer,index,re,im"));
    assert!(text.lines().any(|l| l.starts_with("inellipse,")));
}

#[test]
fn figure_file_output_and_unmet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let o = run_on(
        "figure",
        "right_triangle.json",
        &["--which", "bgm", "--out", path.to_str().unwrap()],
    );
    assert_eq!(code(&o), 0);
    assert!(!svg_groups(&std::fs::read_to_string(&path).unwrap()).is_empty());

    let missing = dir.path().join("none.svg");
    let o = run_on(
        "figure",
        "collinear.json",
        &["--which", "bgm", "--out", missing.to_str().unwrap()],
    );
    assert_eq!(code(&o), 3);
    assert!(!missing.exists());
}
