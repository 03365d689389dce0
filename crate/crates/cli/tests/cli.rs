use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_viscomplex")).arg("--out-dir").arg(dir).args(args).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ledger_example() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["ledger", "--n", "2", "--margulis-eps", "0.32"]);
    let l = json(&d.path().join("ledger.json"));
    assert_eq!(l["eps"], 0.08);
    assert_eq!(l["delta"], 0.04);
    assert_eq!(l["r"], 0.01);
    assert_eq!(l["f_torsion_provenance"], "method-derived");
}

#[test]
fn curvature_example() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["curvature", "--t-max", "10", "--samples", "100"]);
    let csv = fs::read_to_string(d.path().join("curvature.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,Y,K,K_lower,K_upper"));
    let mut low = 0;
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        if f[0] <= 1.0 {
            assert!((f[2] + 1.0).abs() <= 1e-12, "{line}");
            low += 1;
        }
    }
    assert_eq!(low, 10 * 5);
    let table = fs::read_to_string(d.path().join("curvature_ranges.csv")).unwrap();
    assert_eq!(table.lines().count(), 4);
    assert!(table.lines().skip(1).all(|l| l.ends_with(",true")), "{table}");
}

#[test]
fn homology_example_rp2() {
    let d = tempfile::tempdir().unwrap();
    let input = d.path().join("rp2.json");
    fs::write(
        &input,
        r#"{"simplices": [[0,1,2],[0,2,3],[0,3,4],[0,4,5],[0,5,1],[1,2,4],[2,3,5],[3,4,1],[4,5,2],[5,1,3]]}"#,
    )
    .unwrap();
    ok(d.path(), &["homology", "--input", s(&input), "--primes", "2"]);
    let h = json(&d.path().join("homology.json"));
    let degrees = h["summary"]["degrees"].as_array().unwrap();
    assert_eq!(degrees[1]["torsion"], serde_json::json!(["2"]));
    assert_eq!(degrees[1]["betti_q"], 0);
    let mod2: Vec<&Value> = degrees.iter().map(|d| &d["betti_mod_p"]["2"]).collect();
    assert_eq!(mod2, [&Value::from(1), &Value::from(1), &Value::from(1)]);
    assert!(h.get("bounds").is_none());
}

#[test]
fn pipeline_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    fs::write(p.join("group.json"), "[[1, 1, 0, 1]]").unwrap();
    let out = ok(p, &["thick-thin", "--group", s(&p.join("group.json")), "--grid", "0.1", "--y-range", "0.6", "1.6"]);
    assert!(out.contains("cover sets"));
    let cover = json(&p.join("cover.json"));
    let sets = cover["sets"].as_array().unwrap().len();
    assert!(sets > 10);
    ok(p, &["nerve", "--input", s(&p.join("cover.json")), "--dim-cap", "3"]);
    let complex = json(&p.join("complex.json"));
    let report = json(&p.join("dc_report.json"));
    assert_eq!(report["dc"]["vertex_count"], sets);
    assert_eq!(report["intersection_test"], "exact");
    ok(p, &["ledger"]);
    ok(p, &["homology", "--input", s(&p.join("complex.json")), "--primes", "2,3", "--ledger", s(&p.join("ledger.json")), "--vol", "1"]);
    let h = json(&p.join("homology.json"));
    let degrees = h["summary"]["degrees"].as_array().unwrap();
    assert_eq!(degrees[0]["simplices"], sets);
    assert_eq!(degrees[0]["betti_q"], 1);
    assert!(h["bounds"]["pass"].as_bool().unwrap());
    let vertices: std::collections::BTreeSet<u64> =
        complex["simplices"].as_array().unwrap().iter().flat_map(|s| s.as_array().unwrap().iter().map(|v| v.as_u64().unwrap())).collect();
    assert_eq!(vertices.len(), sets);
    // atomic writes leave no temporaries behind
    let mut names: Vec<String> = fs::read_dir(p).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(
        names,
        ["complex.json", "cover.json", "dc_report.json", "group.json", "homology.json", "ledger.json", "samples.csv"]
    );
}

#[test]
fn plain_cover_list_and_samples() {
    let d = tempfile::tempdir().unwrap();
    let input = d.path().join("balls.json");
    fs::write(&input, r#"[{"center": [0, 1], "radius": 0.5}, {"center": [0.6, 1], "radius": 0.5}, {"center": [3, 1], "radius": 0.5}]"#)
        .unwrap();
    let out = ok(d.path(), &["nerve", "--input", s(&input)]);
    assert!(out.contains("3 vertices"), "{out}");
    let c = json(&d.path().join("complex.json"));
    assert_eq!(c["simplices"], serde_json::json!([[2], [0, 1]]));
}

#[test]
fn seed_drives_samples() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    let group = p.join("g.json");
    fs::write(&group, "[[1, 1, 0, 1]]").unwrap();
    let args = ["thick-thin", "--group", s(&group), "--grid", "0.2"];
    let (a, b, c) = (p.join("a"), p.join("b"), p.join("c"));
    for (dir, seed) in [(&a, "1"), (&b, "1"), (&c, "2")] {
        ok(dir, &[&["--seed", seed], &args[..]].concat());
    }
    let read = |dir: &Path| fs::read(dir.join("samples.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
    let csv = String::from_utf8(read(&a)).unwrap();
    assert!(csv.starts_with("x,y,d_gamma,label,kind\n"));
    // the window reaches y = 4, below the thin level of z+1 at eps = 0.08
    assert!(csv.lines().skip(1).all(|l| l.contains(",thick,")));
}

#[test]
fn thin_cusp_points_are_labelled() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    fs::write(p.join("g.json"), "[[1, 1, 0, 1]]").unwrap();
    ok(p, &["thick-thin", "--group", s(&p.join("g.json")), "--grid", "0.2", "--y-range", "5", "20", "--eps", "0.1"]);
    let csv = fs::read_to_string(p.join("samples.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let y: f64 = f[1].parse().unwrap();
        // thin exactly above 1 / (2 sinh 0.05)
        let thin = y > 1.0 / (2.0 * 0.05f64.sinh());
        assert_eq!(f[3] == "thin", thin, "{line}");
        if thin {
            assert_eq!(f[4], "cusp");
        }
    }
}

#[test]
fn malformed_inputs_exit_one_naming_the_field() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    let cases = [
        ("missing.json", r#"[{"center": [0, 1]}]"#, "radius"),
        ("unknown.json", r#"{"sets": [], "grup": []}"#, "grup"),
        ("negative.json", r#"[{"center": [0, 1], "radius": -1}]"#, "radius"),
        ("typo.json", r#"[{"centre": [0, 1], "radius": 1}]"#, "centre"),
        ("below.json", r#"[{"center": [0, -1], "radius": 1}]"#, "center"),
    ];
    for (name, body, field) in cases {
        fs::write(p.join(name), body).unwrap();
        let out = run(p, &["nerve", "--input", s(&p.join(name))]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{name}: {err}");
    }
    fs::write(p.join("c.json"), r#"{"simplices": [[0, 0]]}"#).unwrap();
    let out = run(p, &["homology", "--input", s(&p.join("c.json"))]);
    assert_eq!(out.status.code(), Some(1));
    fs::write(p.join("g.json"), "[[1, 1, 0]]").unwrap();
    let out = run(p, &["thick-thin", "--group", s(&p.join("g.json"))]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(p, &["ledger", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(p, &["homology", "--input", s(&p.join("nothing.json"))]).status.code(), Some(1));
    assert_eq!(run(p, &["--help"]).status.code(), Some(0));
}

#[test]
fn strict_bound_failure_exits_two() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    fs::write(p.join("balls.json"), r#"[{"center": [0, 1], "radius": 0.5}, {"center": [0.6, 1], "radius": 0.5}]"#).unwrap();
    // kappa = lambda = 1 gives C = 450 / (π (r/4)²) ≈ 2.3e7
    fs::write(p.join("small.json"), r#"{"n": 2, "margulis_eps": 0.32, "margulis_index": 100, "kappa": 1, "lambda": 1}"#).unwrap();
    let (cover, ledger) = (p.join("balls.json"), p.join("small.json"));
    let args = ["nerve", "--input", s(&cover), "--ledger", s(&ledger), "--vol", "1e-9"];
    assert_eq!(run(p, &args).status.code(), Some(0));
    assert_eq!(run(p, &[&args[..], &["--strict"]].concat()).status.code(), Some(2));
    let report = json(&p.join("dc_report.json"));
    assert_eq!(report["dc"]["vertices_ok"], false);
    assert_eq!(report["dc"]["pass"], false);
    assert_eq!(run(p, &["nerve", "--input", s(&cover), "--strict"]).status.code(), Some(0));

    // b_0 = 2 against E(0) · vol < 1
    let two = p.join("two.json");
    fs::write(&two, r#"{"simplices": [[0], [1]]}"#).unwrap();
    let args = ["homology", "--input", s(&two), "--ledger", s(&ledger), "--vol", "1e-9", "--strict"];
    assert_eq!(run(p, &args).status.code(), Some(2));
    let h = json(&p.join("homology.json"));
    assert_eq!(h["bounds"]["records"][0]["betti_status"], "fail");
    assert_eq!(run(p, &["homology", "--input", s(&two), "--vol", "1", "--strict"]).status.code(), Some(0));
}
