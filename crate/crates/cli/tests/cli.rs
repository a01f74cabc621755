use std::process::{Command, Output};

fn funkdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funkdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = funkdisc(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn field(v: &serde_json::Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing {key} in {v}"))
}

#[test]
fn eval_examples() {
    let v = json(&["eval", "--model", "ff", "--x", "0.5,0", "--v", "1,0", "--json"]);
    assert!((field(&v, "total") - 2.0).abs() < 1e-14);
    let v = json(&["eval", "--model", "ff", "--x", "0,0", "--v", "1,0", "--json"]);
    assert_eq!(field(&v, "total"), 1.0);
}

#[test]
fn eval_outside_the_chart_exits_two() {
    let o = funkdisc(&["eval", "--model", "ff", "--x", "1.5,0", "--v", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside the chart"));
}

#[test]
fn json_keys_keep_declaration_order() {
    let o = funkdisc(&["eval", "--model", "ff", "--x", "0,0", "--v", "1,0", "--json"]);
    let text = stdout(&o);
    let order: Vec<usize> = ["model", "x", "v", "alpha", "beta", "total"]
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn distance_busemann_and_laplacian_examples() {
    let v = json(&[
        "distance", "--type", "funk", "--from", "0,0", "--to", "0.5,0", "--json",
    ]);
    assert!((field(&v, "distance") - 2f64.ln()).abs() < 1e-14);
    let v = json(&[
        "busemann", "--type", "hilbert", "--p", "0,0", "--y", "1,0", "--x", "0.5,0", "--json",
    ]);
    assert!((field(&v, "value") - 0.5 * 3f64.ln()).abs() < 1e-14);
    let v = json(&[
        "laplacian",
        "--measure",
        "max",
        "--p",
        "0,0",
        "--y",
        "1,0",
        "--x",
        "0.5,0",
        "--json",
    ]);
    assert!(field(&v, "closed_form").abs() < 1e-14);
    assert!(field(&v, "fd_oracle").abs() < 1e-4);
}

#[test]
fn human_distance_output() {
    let o = funkdisc(&["distance", "--type", "funk", "--from", "0,0", "--to", "0.5,0"]);
    assert!(stdout(&o).contains("0.693147180559945"));
}

#[test]
fn negative_coordinates_parse() {
    let v = json(&[
        "distance", "--type", "hilbert", "--from", "-0.5,0", "--to", "0.5,0", "--json",
    ]);
    assert!((field(&v, "distance") - 3f64.ln()).abs() < 1e-14);
}

#[test]
fn funk_ray_reaches_half_at_ln2() {
    let o = funkdisc(&[
        "geodesic",
        "--metric",
        "funk",
        "--p",
        "0,0",
        "--y",
        "1,0",
        "--t1",
        "0.6931471805599453",
        "--n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x1,x2,speed_residual");
    assert_eq!(lines.len(), 3);
    let last: Vec<f64> = lines[2].split(',').map(|s| s.parse().unwrap()).collect();
    assert!((last[1] - 0.5).abs() < 1e-15 && last[2] == 0.0);
    assert!(!text.contains('\r'));
}

#[test]
fn band_geodesic_residual_column() {
    let o = funkdisc(&[
        "geodesic", "--metric", "funk", "--model", "fb", "--p", "0.2,-0.3", "--v", "-1,0.4", "--n", "50",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x1,x2,speed_residual,band_residual");
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!(cols[3] < 1e-12, "{line}");
        assert!(cols[4] < 1e-9, "{line}");
    }
}

#[test]
fn geodesic_needs_two_samples() {
    let o = funkdisc(&[
        "geodesic", "--metric", "funk", "--p", "0,0", "--y", "1,0", "--n", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn geodesic_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ray.csv");
    let o = funkdisc(&[
        "geodesic",
        "--metric",
        "hilbert",
        "--model",
        "fu",
        "--p",
        "0,0",
        "--y",
        "0,1",
        "--t0",
        "-2",
        "--t1",
        "2",
        "--n",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn horocycle_samples_lie_on_the_level() {
    let o = funkdisc(&[
        "horocycle",
        "--type",
        "funk",
        "--p",
        "0.1,0",
        "--y",
        "0,1",
        "--a",
        "0.7",
        "--n",
        "16",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        let r: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(r < 1e-10);
    }
}

#[test]
fn map_round_trip_through_the_cli() {
    let v = json(&["map", "--map", "g", "--x", "0.3,-0.2", "--json"]);
    let image: Vec<String> = v["point"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect();
    let back = json(&[
        "map",
        "--map",
        "g",
        "--inverse",
        "--x",
        &image.join(","),
        "--json",
    ]);
    let p = back["point"].as_array().unwrap();
    assert!((p[0].as_f64().unwrap() - 0.3).abs() < 1e-13);
    assert!((p[1].as_f64().unwrap() + 0.2).abs() < 1e-13);
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "isometries",
        "--samples",
        "200",
        "--seed",
        "11",
    ];
    let a = funkdisc(&args);
    let b = funkdisc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_laplacian_json_report() {
    let v = json(&[
        "verify",
        "--suite",
        "laplacian",
        "--samples",
        "100",
        "--seed",
        "7",
        "--json",
    ]);
    let reports = v.as_array().unwrap();
    let bh = reports.iter().find(|r| r["check"] == "bh-fd-oracle").unwrap();
    assert_eq!(bh["passed"], true);
    assert!(field(bh, "max_residual") <= 1e-4);
    for r in reports {
        assert_eq!(
            r["passed"].as_bool(),
            Some(field(r, "max_residual") <= field(r, "tolerance"))
        );
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(
        funkdisc(&["verify", "--suite", "curvature"]).status.code(),
        Some(2)
    );
}

#[test]
fn figure_to_unwritable_path_exits_three() {
    let o = funkdisc(&["figure-band", "--out", "/nonexistent-dir/figure.svg"]);
    assert_eq!(o.status.code(), Some(3));
}
