use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherekit"))
        .args(args)
        .output()
        .expect("spawn spherekit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn facet_lines(file: &Path) -> Vec<String> {
    fs::read_to_string(file)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(str::to_string)
        .collect()
}

#[test]
fn build_cross_polytope() {
    let o = run(&["build", "--family", "cross", "--d", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let facets: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(facets.len(), 8);
    assert_eq!(facets[0], "-3 -2 -1");
    assert!(!text.contains('\r'));
}

#[test]
fn build_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let facets = path(&dir, "d36.txt");
    let json = path(&dir, "d36.json");
    assert!(
        run(&["build", "--family", "cs-delta", "--d", "3", "--n", "6", "--out", &facets])
            .status
            .success()
    );
    assert!(run(&[
        "build", "--family", "cs-delta", "--d", "3", "--n", "6", "--format", "json", "--out", &json
    ])
    .status
    .success());
    assert_eq!(facet_lines(Path::new(&facets)).len(), 48);

    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(meta["family"], "cs-delta");
    assert_eq!(meta["params"]["n"], 6);
    assert_eq!(meta["facet_count"], 48);
    let from_json: Vec<String> = meta["facets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            f.as_array()
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    assert_eq!(from_json, facet_lines(Path::new(&facets)));

    for input in [&facets, &json] {
        let o = run(&[
            "verify",
            "--in",
            input,
            "--checks",
            "pseudomanifold,euler,betti,cs,cs-neighborly=2,neighborly=1",
        ]);
        assert!(o.status.success(), "{}", stdout(&o));
        assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 6);
    }
    let o = run(&["verify", "--in", &facets, "--checks", "neighborly=2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn sewn_sphere_is_neighborly() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "sewn.txt");
    assert!(
        run(&["build", "--family", "sewn", "--d", "3", "--n", "9", "--out", &out])
            .status
            .success()
    );
    let o = run(&[
        "verify",
        "--in",
        &out,
        "--checks",
        "pseudomanifold,betti,neighborly=2",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn transversal_certificate() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "c.txt");
    assert!(
        run(&["build", "--family", "cyclic", "--d", "5", "--n", "9", "--out", &out])
            .status
            .success()
    );
    let o = run(&["transversal", "--in", &out, "--json"]);
    assert!(o.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["tau_lower"], 2);
    assert_eq!(cert["tau_upper"], 2);
    assert_eq!(cert["optimal"], true);
    assert_eq!(cert["mu_upper"], "2/9");

    let o = run(&["transversal", "--in", &out, "--greedy"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("method       greedy"));
}

#[test]
fn lemma_command() {
    let o = run(&["lemmas", "--lemma", "bdl", "--k", "2", "--n", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tau = 3 >= 3"));

    let o = run(&["lemmas", "--lemma", "pn", "--k", "2", "--n", "6"]);
    assert!(o.status.success(), "{}", stdout(&o));

    let o = run(&["lemmas", "--lemma", "bdl", "--k", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["lemmas", "--lemma", "nope", "--k", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_mu_rows() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "mu.csv");
    let o = run(&[
        "report", "mu", "--family", "cs-delta", "--d", "3", "--n-from", "4", "--n-to", "10",
        "--csv", &csv,
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some(
            "family,d,n,f0,facet_count,tau_lower,tau_upper,optimal,mu_lower,mu_upper,wall_time_ms"
        )
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7);
    for (row, n) in rows.iter().zip(4..) {
        assert_eq!(row[2], n.to_string());
        assert_eq!(row[7], "true");
        let kept = (1..=n).filter(|j| j % 2 == 1 || *j == n).count();
        let explicit = (2 * kept) as f64 / (2 * n) as f64;
        let mu: f64 = row[9].parse().unwrap();
        assert!(mu <= explicit + 1e-9, "n = {n}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["build", "--family", "bogus", "--d", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["build", "--family", "cyclic", "--d", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.txt");
    assert!(
        run(&["build", "--family", "cross", "--d", "2", "--out", &out])
            .status
            .success()
    );
    assert_eq!(
        run(&["verify", "--in", &out, "--checks", "wat"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn construction_failures_exit_one() {
    assert_eq!(
        run(&["build", "--family", "cyclic", "--d", "4", "--n", "3"])
            .status
            .code(),
        Some(1)
    );
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "1 2 3\n1 2\n").unwrap();
    let o = run(&["verify", "--in", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
