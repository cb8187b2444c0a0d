use std::process::{Command, Output};

fn conic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows as comma-split fields (header comment and column row skipped).
fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn delta_spectrum_table() {
    let o = conic(&["spectrum", "delta", "--lambda", "2", "--x0", "0", "-k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# conic "));
    assert!(text.contains("args: spectrum delta --lambda 2 --x0 0 -k 5"));
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "model,lambda,x0,level,energy,parity,residual,origin,degenerate"
    );
    let r = rows(&o);
    assert_eq!(r.len(), 5);
    assert!((num(&r[1][4]) - 1.1690537).abs() < 1e-7);
    assert_eq!(r[1][5], "antisymmetric");
}

#[test]
fn nonlocal_degeneracy_is_flagged() {
    let o = conic(&["spectrum", "nonlocal-dp", "--beta", "1.37172", "-k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .next()
        .unwrap()
        .contains("degenerate_pairs=1-2;3-4"));
    assert!(rows(&o).iter().all(|r| r[7] == "true"));
}

#[test]
fn local_without_delta_is_unperturbed() {
    let o = conic(&["spectrum", "local-ddp", "--a", "0", "--b", "3", "-k", "5"]);
    let free = conic(&["spectrum", "delta", "--lambda", "0", "-k", "5"]);
    let e = |o: &Output| {
        rows(o)
            .iter()
            .map(|r| r[r.len() - 5].clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(e(&o), e(&free));
    assert!(rows(&o).iter().all(|r| r[7] == "unperturbed"));
}

#[test]
fn inverse_worked_example_with_printed_kernel() {
    let o = conic(&[
        "inverse", "--E1", "0.3333", "--E2", "0.7158", "--kernel", "product",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(rows(&o)
        .iter()
        .any(|r| (num(&r[2]) - 1.2557).abs() < 2e-3 && (num(&r[3]) - 1.3602).abs() < 2e-3));
}

#[test]
fn inverse_usage_and_empty_results() {
    assert_eq!(
        conic(&["inverse", "--E1", "0.5", "--E2", "0.5"])
            .status
            .code(),
        Some(1)
    );
    let o = conic(&[
        "inverse",
        "--E1",
        "0.3333",
        "--E2",
        "0.7158",
        "--x0-range",
        "0.2:0.3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(rows(&o).is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(conic(&[]).status.code(), Some(1));
    assert_eq!(conic(&["spectrum", "delta"]).status.code(), Some(1));
    assert_eq!(
        conic(&["sweep", "fig2", "--lambda", "3:1:0.1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        conic(&["spectrum", "local-ddp", "--a", "1", "--b", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        conic(&["verify", "delta", "--lambda", "2", "--h", "0.05"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        conic(&["airy", "--x", "0", "--tol", "-1"]).status.code(),
        Some(1)
    );
    assert_eq!(conic(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports() {
    for args in [
        &["verify", "delta", "--lambda", "2", "--x0", "0"][..],
        &["verify", "local-ddp", "--a", "1", "--b", "2"][..],
        &["verify", "delta", "--lambda", "2", "--x0", "0.5"][..],
    ] {
        let o = conic(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(
            stdout(&o).lines().nth(1).unwrap(),
            "level,analytic,oracle,diff,pass"
        );
        assert!(rows(&o).iter().all(|r| r[4] == "true"));
    }
    let o = conic(&["verify", "nonlocal-dp", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle=series"));
    assert!(stdout(&o).contains("not applicable"));
}

#[test]
fn verify_failure_exit_code() {
    let o = conic(&[
        "verify", "delta", "--lambda", "2", "--x0", "0.5", "--kernel", "product",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = conic(&["verify", "delta", "--lambda", "2", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn fig2_even_curves_are_flat() {
    let o = conic(&["sweep", "fig2", "--lambda", "-3:8:0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r.len(), 23 * 5);
    for level in ["2", "4"] {
        let vals: Vec<&String> = r
            .iter()
            .filter(|row| row[2] == level)
            .map(|row| &row[3])
            .collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn fig8_crosses_at_crossing_constant() {
    let o = conic(&["sweep", "fig8", "--beta", "1:2:0.05", "-k", "4"]);
    let r = rows(&o);
    let at = |beta: f64, level: &str| {
        r.iter()
            .find(|row| (num(&row[0]) - beta).abs() < 1e-9 && row[1] == level)
            .map(|row| num(&row[2]))
            .unwrap()
    };
    assert!(at(1.35, "2") > at(1.35, "1"));
    assert!(at(1.4, "2") < at(1.4, "1"));
    assert!(at(1.35, "4") > at(1.35, "3"));
    assert!(at(1.4, "4") < at(1.4, "3"));
}

#[test]
fn fig6_compatible_pairs() {
    let o = conic(&[
        "sweep",
        "fig6",
        "--x0",
        "1.2557",
        "--E1",
        "0.3333",
        "--E2",
        "0:2.2:0.001",
        "--kernel",
        "product",
    ]);
    let e2: Vec<f64> = rows(&o).iter().map(|r| num(&r[3])).collect();
    for target in [0.7158, 1.5423, 1.9791] {
        assert!(e2.iter().any(|e| (e - target).abs() < 2e-3), "{e2:?}");
    }
}

#[test]
fn poles_become_nan() {
    let o = conic(&["sweep", "fig1", "--energy", "-0.5:0.5:0.25"]);
    let r = rows(&o);
    let zero = r.iter().find(|row| num(&row[1]) == 0.0).unwrap();
    // λ(0) = −Ai′(0)/Ai(0) = 1/β₀.
    assert!((num(&zero[2]) - 1.0 / 1.3717211642).abs() < 1e-9);
    let o = conic(&["sweep", "fig9", "--b", "0.5:1.5:0.5", "-k", "2"]);
    let r = rows(&o);
    assert!(r
        .iter()
        .filter(|row| num(&row[1]) == 1.0)
        .all(|row| row[3] == "NaN"));
    assert!(r
        .iter()
        .filter(|row| num(&row[1]) != 1.0)
        .all(|row| row[3] != "NaN"));
}

#[test]
fn json_output_and_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = conic(
            &[
                "sweep",
                "fig9",
                "--b",
                "-2:2:0.25",
                "--format",
                "json",
                "--out",
                "OUT",
            ]
            .map(|s| if s == "OUT" { p.to_str().unwrap() } else { s }),
        );
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (ta, tb) = (
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap(),
    );
    // The header echoes the output path; everything else must match byte for byte.
    let strip = |s: &str| s.lines().skip(2).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&ta), strip(&tb));
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    assert!(v["header"].as_str().unwrap().starts_with("conic "));
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 17 * 5);
    assert!(recs[0]["energy"].is_number());
}

#[test]
fn csv_runs_are_identical() {
    let args = ["sweep", "fig4", "--lambda", "-1:3:0.5"];
    assert_eq!(conic(&args).stdout, conic(&args).stdout);
}

#[test]
fn green_and_airy() {
    let o = conic(&["green", "--x", "0", "--y", "0", "--E", "0"]);
    let r = rows(&o);
    assert!((num(&r[0][3]) - 1.37172).abs() < 1e-5);
    let o = conic(&["green", "--x", "-2:2:1", "--y", "-2:2:1", "--E", "-1"]);
    assert_eq!(rows(&o).len(), 25);
    assert!(rows(&o).iter().all(|r| num(&r[6]) < 1e-3));
    let o = conic(&["airy", "--zeros", "2"]);
    assert!((num(&rows(&o)[0][1]) + 2.338107410459767).abs() < 1e-10);
    let o = conic(&["airy", "--x", "0"]);
    assert!((num(&rows(&o)[0][1]) - 0.355028053887817).abs() < 1e-11);
}

#[test]
fn fig7_defect_function() {
    let o = conic(&["sweep", "fig7", "--E", "-1", "--x", "-1:1:0.5"]);
    assert!(stdout(&o).contains("terms=200"));
    let r = rows(&o);
    assert_eq!(r.len(), 5);
    assert_eq!(num(&r[0][1]), -num(&r[4][1]));
}
