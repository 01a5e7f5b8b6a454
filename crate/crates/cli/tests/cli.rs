use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn rankone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rankone-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Rows as maps from column name to field.
fn parse_rows(csv: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| {
            header
                .iter()
                .zip(l.split(','))
                .map(|(h, v)| (h.to_string(), v.to_string()))
                .collect()
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn detect_small_uses_one_copy_for_lipschitz() {
    let out = rankone(&["detect", "--r", "1", "--M", "1", "--d", "2", "--eps", "0.5"]);
    assert!(out.status.success());
    let row = &parse_rows(&stdout(&out))[0];
    assert_eq!(row["regime"], "Small");
    // one unshifted copy of the base set with dispersion eps/2
    let base =
        rankone::pointsets::low_dispersion_set(0.25, 2, rankone::PointsetMode::Verified).unwrap();
    assert_eq!(num(&row["size"]) as usize, base.len());
}

#[test]
fn detect_large_at_the_boundary() {
    let out = rankone(&["detect", "--r", "1", "--M", "2", "--d", "2", "--eps", "0.5"]);
    assert_eq!(parse_rows(&stdout(&out))[0]["regime"], "Large");
}

#[test]
fn detect_writes_readable_point_files() {
    let dir = scratch("detect");
    let out = rankone(&[
        "detect",
        "--r",
        "2",
        "--M",
        "5",
        "--d",
        "1..2",
        "--eps",
        "0.5,0.25",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = std::fs::read_to_string(dir.join("detect.csv")).unwrap();
    let rows = parse_rows(&summary);
    assert_eq!(rows.len(), 4);
    for row in rows {
        let (p, comments) = rankone::PointSet::read_from(&dir.join(&row["file"])).unwrap();
        assert_eq!(p.len(), num(&row["size"]) as usize);
        assert!(comments[0].starts_with("regime=Moderate r=2 M=5"));
    }
}

#[test]
fn missing_eps_is_a_usage_error() {
    let out = rankone(&["detect", "--r", "1", "--M", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_values_are_usage_errors() {
    for args in [
        &["detect", "--r", "1", "--M", "1", "--d", "0", "--eps", "0.5"][..],
        &["detect", "--r", "1", "--M", "1", "--d", "2", "--eps", "1.5"],
        &[
            "detect", "--r", "1", "--M", "1", "--d", "2", "--eps", "0.5", "--mode", "fast",
        ],
        &[
            "detect", "--r", "1", "--M", "-1", "--d", "2", "--eps", "0.5",
        ],
        &[
            "detect",
            "--r",
            "1",
            "--M",
            "1",
            "--d",
            "2",
            "--eps",
            "0.5",
            "--regime-override",
            "huge",
        ],
    ] {
        assert_eq!(rankone(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oversized_formula_detector_is_a_resource_error() {
    let out = rankone(&[
        "detect", "--r", "2", "--M", "16", "--d", "3", "--eps", "0.1", "--mode", "formula",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn zero_function_costs_the_detector() {
    let out = rankone(&[
        "approximate",
        "--r",
        "1",
        "--M",
        "1",
        "--d",
        "2",
        "--eps",
        "0.25",
        "--functions",
        "zero",
    ]);
    assert!(out.status.success());
    let row = &parse_rows(&stdout(&out))[0];
    assert_eq!(row["total"], row["detector_size"]);
    assert_eq!(num(&row["measured_error"]), 0.0);
    assert_eq!(row["pass"], "true");
}

#[test]
fn approximate_rows_pass() {
    let out = rankone(&[
        "approximate",
        "--r",
        "1",
        "--M",
        "1",
        "--d",
        "2",
        "--eps",
        "0.25",
        "--trials",
        "200",
        "--seed",
        "9",
    ]);
    assert!(out.status.success());
    let rows = parse_rows(&stdout(&out));
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r["pass"] == "true"));
    assert_eq!(
        stdout(&out).lines().next().unwrap(),
        "seed,regime,d,eps,detector_size,m,detector_evals,interp_evals,total,bound,measured_error,pass"
    );
}

#[test]
fn violated_guarantee_exits_with_3() {
    // a single point cannot detect anything, so some trial must fail
    let dir = scratch("replay");
    let file = dir.join("one.txt");
    std::fs::write(&file, "2 1\n0.5 0.5\n").unwrap();
    let out = rankone(&[
        "approximate",
        "--r",
        "1",
        "--M",
        "1",
        "--d",
        "2",
        "--eps",
        "0.1",
        "--trials",
        "20",
        "--detector-file",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let rows = parse_rows(&stdout(&out));
    assert!(rows.iter().all(|r| r["detector_size"] == "1"));
    assert!(rows.iter().any(|r| r["pass"] == "false"));
}

#[test]
fn replayed_detector_matches_the_built_one() {
    let dir = scratch("roundtrip");
    let d = dir.to_str().unwrap();
    let base = [
        "--r", "2", "--M", "2", "--d", "2", "--eps", "0.25", "--trials", "5",
    ];
    assert!(rankone(&[&["detect"][..], &base, &["--out", d]].concat())
        .status
        .success());
    let file = dir.join("detector_d2_eps0.25.txt");
    let built = rankone(&[&["approximate"][..], &base].concat());
    let replayed = rankone(
        &[
            &["approximate"][..],
            &base,
            &["--detector-file", file.to_str().unwrap()],
        ]
        .concat(),
    );
    assert!(built.status.success() && replayed.status.success());
    assert_eq!(stdout(&built), stdout(&replayed));
}

#[test]
fn regimes_bound_ratios() {
    let out = rankone(&[
        "regimes",
        "--r",
        "2",
        "--M",
        "8",
        "--d",
        "2",
        "--eps",
        "0.25,0.125,0.0625",
        "--mode",
        "formula",
    ]);
    let rows = parse_rows(&stdout(&out));
    for w in rows.windows(2) {
        let ratio = num(&w[1]["bound"]) / num(&w[0]["bound"]);
        assert!((ratio - 2f64.sqrt()).abs() < 1e-12);
    }
    assert!(rows.iter().all(|r| r["tractability"] == "Curse"));

    let out = rankone(&[
        "regimes", "--r", "1", "--M", "1", "--d", "1..6", "--eps", "0.1", "--mode", "formula",
    ]);
    let rows = parse_rows(&stdout(&out));
    for (d, w) in (1..).zip(rows.windows(2)) {
        let ratio = num(&w[1]["bound"]) / num(&w[0]["bound"]);
        let expected = ((d + 1) * (d + 1)) as f64 / (d * d) as f64;
        assert!((ratio - expected).abs() < 1e-12);
    }
}

// the Halton-based detector is never smaller than the verified construction
// for d >= 2; against formula-mode cardinalities this needs d >= 3
#[test]
fn halton_baseline_dominates() {
    for (mode, dims) in [("verified", "2..4"), ("formula", "3..8")] {
        for (r, m) in [("1", "1"), ("2", "2"), ("3", "6")] {
            let out = rankone(&[
                "regimes", "--r", r, "--M", m, "--d", dims, "--eps", "0.5,0.1", "--mode", mode,
            ]);
            for row in parse_rows(&stdout(&out)) {
                assert!(
                    num(&row["halton_baseline"]) >= num(&row["detector_size"]),
                    "{mode} {row:?}"
                );
            }
        }
    }
}

#[test]
fn lowerbound_examples() {
    let out = rankone(&[
        "lowerbound",
        "--r",
        "1",
        "--M",
        "2",
        "--d",
        "3",
        "--eps",
        "0.5",
        "--budget",
        "7",
    ]);
    let row = &parse_rows(&stdout(&out))[0];
    assert!(!row["evaded_member"].is_empty());
    assert!(num(&row["witnessed_error"]) >= 1.0);

    let out = rankone(&[
        "lowerbound",
        "--r",
        "1",
        "--M",
        "2",
        "--d",
        "3",
        "--eps",
        "0.5",
        "--hitting-set",
    ]);
    let row = &parse_rows(&stdout(&out))[0];
    assert_eq!(row["budget"], "8");
    assert!(row["evaded_member"].is_empty());

    let out = rankone(&[
        "lowerbound",
        "--r",
        "1",
        "--M",
        "1.5",
        "--d",
        "5",
        "--eps",
        "0.1",
    ]);
    assert_eq!(parse_rows(&stdout(&out))[0]["family_size"], "10");

    let out = rankone(&[
        "lowerbound",
        "--r",
        "1",
        "--M",
        "2",
        "--d",
        "13",
        "--eps",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn dispersion_command() {
    let dir = scratch("dispersion");
    let out = rankone(&["dispersion", &write(&dir, "a.txt", "2 1\n0.5 0.5\n")]);
    assert_eq!(stdout(&out).trim(), "0.500000000000");
    let out = rankone(&["dispersion", &write(&dir, "b.txt", "# empty\n3 0\n")]);
    assert_eq!(stdout(&out).trim(), "1.000000000000");
    let out = rankone(&["dispersion", &write(&dir, "c.txt", "2 1\n0.5\n")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = rankone(&["dispersion", &write(&dir, "d.txt", "5 1\n0 0 0 0 0\n")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_with_flag_override() {
    let dir = scratch("config");
    let cfg = write(
        &dir,
        "run.cfg",
        "# experiment\nr = 1\nM = 1\nd = 2\neps = 0.5\n",
    );
    let out = rankone(&["detect", "--config", &cfg]);
    assert!(out.status.success());
    assert_eq!(parse_rows(&stdout(&out))[0]["regime"], "Small");
    let out = rankone(&["detect", "--config", &cfg, "--M", "2"]);
    assert_eq!(parse_rows(&stdout(&out))[0]["regime"], "Large");
    let bad = write(&dir, "bad.cfg", "r 1\n");
    assert_eq!(
        rankone(&["detect", "--config", &bad]).status.code(),
        Some(2)
    );
}

#[test]
fn json_output() {
    let out = rankone(&[
        "regimes", "--r", "1", "--M", "1", "--d", "1,2", "--eps", "0.5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["d"], 2);
    assert_eq!(v[0]["regime"], "Small");
}

#[test]
fn identical_output_across_runs_and_threads() {
    let args = [
        "approximate",
        "--r",
        "2",
        "--M",
        "5",
        "--d",
        "1..3",
        "--eps",
        "0.5",
        "--trials",
        "30",
        "--seed",
        "4",
    ];
    let one = rankone(&[&args[..], &["--threads", "1"]].concat());
    let four = rankone(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
