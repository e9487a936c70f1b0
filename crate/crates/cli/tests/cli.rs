use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hyperff() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperff"));
    c.env_remove("HYPERFF_OUT_DIR");
    c
}

fn run(args: &[&str], cwd: &Path) -> Output {
    hyperff().args(args).current_dir(cwd).output().expect("binary runs")
}

fn ok(out: &Output) {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

fn stderr_line(out: &Output) -> String {
    let s = String::from_utf8_lossy(&out.stderr).into_owned();
    assert_eq!(s.trim_end().lines().count(), 1, "expected a single line: {s:?}");
    s.trim_end().to_string()
}

fn generate(dir: &Path, name: &str, nodes: usize, seed: u64) -> PathBuf {
    let n = nodes.to_string();
    let s = seed.to_string();
    ok(&run(&["generate", "--nodes", &n, "--burn", "0.51", "--expand", "0.2", "--seed", &s, "--out", name], dir));
    dir.join(name)
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = generate(dir.path(), "a.txt", 1000, 7);
    let b = generate(dir.path(), "b.txt", 1000, 7);
    let c = generate(dir.path(), "c.txt", 1000, 8);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.txt.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "generate");
    assert_eq!(manifest["seed"], 7);
    assert!(manifest["wall_time_seconds"].is_number());
    assert_eq!(manifest["params"]["nodes"], 1000);
}

#[test]
fn analyze_writes_every_metric_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "g.txt", 300, 1);
    let metrics = "degree,size,intersection,svd,diameter";
    ok(&run(&["analyze", "--input", "g.txt", "--metrics", metrics, "--out-dir", "a1"], dir.path()));
    ok(&run(&["analyze", "--input", "g.txt", "--metrics", metrics, "--out-dir", "a2"], dir.path()));
    for f in ["degree.csv", "size.csv", "intersection.csv", "svd.csv", "diameter.csv"] {
        let a = fs::read(dir.path().join("a1").join(f)).unwrap();
        let b = fs::read(dir.path().join("a2").join(f)).unwrap();
        assert_eq!(a, b, "{f} differs between runs");
    }
    assert!(dir.path().join("a1/manifest.json").exists());
    let stats = fs::read_to_string(dir.path().join("a1/intersection_stats.csv")).unwrap();
    assert_eq!(stats.lines().count(), 3);
    assert!(stats.starts_with("intersecting_pairs,"));
    let diam = fs::read_to_string(dir.path().join("a1/diameter.csv")).unwrap();
    assert!(diam.lines().nth(1).unwrap().contains(",exact,"), "{diam}");
    let svd = fs::read_to_string(dir.path().join("a1/svd.csv")).unwrap();
    let sigmas: Vec<f64> = svd.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(sigmas.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn fit_on_generated_degrees_prefers_truncated_power_law_over_exponential() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "g.txt", 2000, 3);
    ok(&run(&["analyze", "--input", "g.txt", "--metrics", "degree", "--out-dir", "an"], dir.path()));
    ok(&run(&["fit", "--input", "an/degree.csv", "--discrete", "--out", "fit.csv"], dir.path()));
    let csv = fs::read_to_string(dir.path().join("fit.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "family,param1,param2,xmin,loglik,llr_vs_exponential,llr_normalized,p_value");
    let tpw = lines.find(|l| l.starts_with("truncated_power_law,")).unwrap();
    let normalized: f64 = tpw.split(',').nth(6).unwrap().parse().unwrap();
    assert!(normalized > 0.0, "{csv}");
    assert!(dir.path().join("fit.csv.manifest.json").exists());
}

#[test]
fn null_model_keeps_size_distribution() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "g.txt", 400, 5);
    ok(&run(&["nullmodel", "--input", "g.txt", "--seed", "9", "--out", "n.txt"], dir.path()));
    ok(&run(&["analyze", "--input", "g.txt", "--metrics", "size", "--out-dir", "src"], dir.path()));
    ok(&run(&["analyze", "--input", "n.txt", "--metrics", "size", "--out-dir", "null"], dir.path()));
    assert_eq!(
        fs::read(dir.path().join("src/size.csv")).unwrap(),
        fs::read(dir.path().join("null/size.csv")).unwrap()
    );
}

#[test]
fn decompose_and_evolve_outputs() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("h.txt"), "0 1 2 3\n1 3 4\n2 4 5 6\n3 1 6\n4 2 7\n").unwrap();
    ok(&run(&["decompose", "--input", "h.txt", "--levels", "1,2,3", "--out-dir", "dec"], dir.path()));
    let summary = fs::read_to_string(dir.path().join("dec/decompose.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "level,num_vertices,num_edges,largest_cc_fraction,effective_diameter,avg_clustering");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,7,"));
    for f in ["decompose_degree.csv", "decompose_svd.csv", "manifest.json"] {
        assert!(dir.path().join("dec").join(f).exists(), "{f}");
    }

    ok(&run(&["evolve", "--input", "h.txt", "--checkpoints", "3", "--out-dir", "ev"], dir.path()));
    let ev = fs::read_to_string(dir.path().join("ev/evolution.csv")).unwrap();
    assert!(ev.starts_with("checkpoint,k,num_nodes,num_edges,intersecting_pairs,possible_pairs,effective_diameter"));
    let last = ev.lines().last().unwrap();
    assert!(last.contains(",5,7,5,"), "{ev}");
    let slopes = fs::read_to_string(dir.path().join("ev/slopes.csv")).unwrap();
    assert!(slopes.starts_with("quantity,slope,intercept,r_squared"));
}

#[test]
fn out_dir_defaults_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperff()
        .args(["generate", "--nodes", "50"])
        .env("HYPERFF_OUT_DIR", dir.path().join("envout"))
        .output()
        .unwrap();
    ok(&out);
    assert!(dir.path().join("envout/hyperff.txt").exists());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).starts_with("error: category=usage code=2 message="));

    let out = run(&["generate", "--nodes", "10", "--burn", "1.5", "--out", "x.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("x.txt").exists());

    let out = run(&["decompose", "--input", "x.txt", "--levels", "7"], dir.path());
    assert_eq!(out.status.code(), Some(1), "missing input is an I/O failure");
}

#[test]
fn parse_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), "0 1 2\nx 3\n").unwrap();
    let out = run(&["analyze", "--input", "bad.txt", "--out-dir", "o"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let line = stderr_line(&out);
    assert!(line.starts_with("error: category=parse code=3"), "{line}");
    assert!(line.contains("bad.txt:2"), "{line}");
    assert!(!dir.path().join("o").exists());

    fs::write(dir.path().join("d.csv"), "value,count\n1.5,3\n2,1\n").unwrap();
    let out = run(&["fit", "--input", "d.csv", "--discrete", "--out", "f.csv"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn infeasible_input_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    // a single repeated value leaves no tail to fit
    fs::write(dir.path().join("d.csv"), "value,count\n3,40\n").unwrap();
    let out = run(&["fit", "--input", "d.csv", "--out", "f.csv"], dir.path());
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stderr_line(&out).starts_with("error: category=infeasible code=5"));
    assert!(!dir.path().join("f.csv").exists());
}

#[test]
fn failure_removes_partial_outputs() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "g.txt", 100, 2);
    // degree.csv is written before the invalid spectral tolerance is rejected
    let out = run(&["analyze", "--input", "g.txt", "--metrics", "degree,svd", "--tol", "0", "--out-dir", "p"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("p").exists());

    fs::create_dir(dir.path().join("keep")).unwrap();
    fs::write(dir.path().join("keep/other.txt"), "mine").unwrap();
    let out = run(&["analyze", "--input", "g.txt", "--metrics", "degree,svd", "--tol", "0", "--out-dir", "keep"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("keep/degree.csv").exists());
    assert!(dir.path().join("keep/other.txt").exists());
}
