use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orbimorse::{corpus, InstanceFile};

fn corpus_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbimorse")).args(args).output().expect("binary runs")
}

fn run_on(args: &[&str], name: &str) -> Output {
    let path = corpus_path(name);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, want, "output differs from golden file {name}");
}

fn write_instance(dir: &tempfile::TempDir, f: &InstanceFile) -> PathBuf {
    let path = dir.path().join(format!("{}.json", f.name));
    std::fs::write(&path, f.to_json()).unwrap();
    path
}

#[test]
fn heart_homology_golden() {
    let o = run_on(&["homology"], "heart");
    assert_eq!(o.status.code(), Some(0));
    golden("heart_homology.txt", &stdout(&o));
    let o = run_on(&["--format", "csv", "homology"], "heart");
    assert_eq!(o.status.code(), Some(0));
    golden("heart_homology.csv", &stdout(&o));
}

#[test]
fn reports_are_byte_stable() {
    let a = stdout(&run_on(&["homology"], "torus_z2"));
    let b = stdout(&run_on(&["homology"], "torus_z2"));
    assert_eq!(a, b);
}

#[test]
fn minus_convention_gives_same_betti() {
    for name in ["heart", "football_p3", "torus_z2", "ellipsoid_rot_z"] {
        let plus = stdout(&run_on(&["homology", "--convention", "plus"], name));
        let minus = stdout(&run_on(&["homology", "--convention", "minus"], name));
        let betti = |s: &str| s.lines().find(|l| l.starts_with("- betti")).map(str::to_string);
        assert!(betti(&plus).is_some());
        assert_eq!(betti(&plus), betti(&minus), "{name}");
    }
}

#[test]
fn football_p3_homology() {
    let o = run_on(&["homology"], "football_p3");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("- betti (1,0,1)"));
}

#[test]
fn heart_validates() {
    let o = run_on(&["validate"], "heart");
    assert_eq!(o.status.code(), Some(0));
    golden("heart_validate.txt", &stdout(&o));
}

#[test]
fn broken_sign_prints_witness_and_exits_2() {
    let o = run_on(&["validate"], "heart_broken_sign");
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("status: validation-failure"));
    assert!(out.contains("sign-equivariance"));
    golden("heart_broken_sign_validate.txt", &out);
}

#[test]
fn mutated_sign_on_heart_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = corpus::load("heart").unwrap().unwrap();
    f.name = "heart_mutated".into();
    let m = f.morse.as_mut().unwrap();
    let flow = m.flows.iter_mut().find(|fl| fl.label == "qr").unwrap();
    flow.sign = orbimorse::Sign::Plus;
    let path = write_instance(&dir, &f);
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("sign-equivariance"));
}

#[test]
fn d_squared_failure_csv_golden() {
    let o = run_on(&["homology", "--format", "csv"], "d_squared_fail");
    assert_eq!(o.status.code(), Some(2));
    golden("d_squared_fail_homology.csv", &stdout(&o));
}

#[test]
fn dangling_endpoint_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = corpus::source("heart").unwrap().replacen("\"dst\": \"r\"", "\"dst\": \"zz\"", 1);
    assert!(text.contains("zz"), "fixture edit applied");
    let path = dir.path().join("dangling.json");
    std::fs::write(&path, text).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let err = stderr(&o);
    assert!(err.contains("parse error at line"), "{err}");
    assert!(err.contains("zz"), "{err}");
}

#[test]
fn missing_file_and_usage_errors_exit_4() {
    assert_eq!(run(&["homology", "/nonexistent/x.json"]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["homology", "--convention", "sideways", "x"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn wrong_kind_exits_4() {
    let o = run_on(&["compare"], "heart");
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("wrong instance kind"));
}

#[test]
fn compare_bundles() {
    for name in ["heart_bundle", "football_p2_bundle", "sphere_trivial_bundle", "torus_z2_bundle"] {
        let o = run_on(&["compare"], name);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).contains("=="), "{name}");
    }
    golden("heart_bundle_compare.txt", &stdout(&run_on(&["compare"], "heart_bundle")));
}

#[test]
fn compare_mismatch_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = corpus::load("heart_bundle").unwrap().unwrap();
    let disc = corpus::load("disc_rot_2").unwrap().unwrap();
    f.name = "heart_vs_disc".into();
    f.triangulation = disc.triangulation;
    let path = write_instance(&dir, &f);
    let o = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("status: mismatch"));
    assert!(stdout(&o).contains("!="));
}

#[test]
fn derive_writes_intrinsic_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("heart_intrinsic.json");
    let o = run_on(&["derive", "--out", out.to_str().unwrap()], "heart");
    assert_eq!(o.status.code(), Some(0));
    golden("heart_derive.txt", &stdout(&o));
    let written = std::fs::read_to_string(&out).unwrap();
    golden("heart_intrinsic.json", &written);
    let f = InstanceFile::parse(&written).unwrap();
    let s = f.intrinsic.as_ref().unwrap();
    let orders: Vec<u64> = s.crit_points.iter().map(|c| c.iso_order).collect();
    assert_eq!(orders, [1, 2, 2]);
    assert!(s.flows.is_empty());
    let o = run(&["homology", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("- betti (1,0,1)"));
}

#[test]
fn derived_torus_matches_quotient_triangulation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    assert_eq!(run_on(&["derive", "--out", out.to_str().unwrap()], "torus_z2").status.code(), Some(0));
    let derived = stdout(&run(&["homology", out.to_str().unwrap()]));
    let compared = stdout(&run_on(&["compare"], "torus_z2_bundle"));
    let betti = derived.lines().find_map(|l| l.strip_prefix("- betti ")).unwrap().to_string();
    assert!(compared.contains(&format!("quotient {betti}")), "{compared}");
}

#[test]
fn derive_on_trivial_group_passes_through() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    assert_eq!(run_on(&["derive", "--out", out.to_str().unwrap()], "sphere_trivial").status.code(), Some(0));
    let f = InstanceFile::load(&out).unwrap();
    let orig = corpus::load("sphere_trivial").unwrap().unwrap();
    let m = orig.morse.unwrap();
    let s = f.intrinsic.unwrap();
    assert_eq!(s.crit_points.len(), m.crit_points.len());
    assert_eq!(s.flows.len(), m.flows.len());
    assert!(s.crit_points.iter().all(|c| c.iso_order == 1 && c.orientable));
    assert!(s.flows.iter().all(|fl| fl.iso_order == 1));
}

#[test]
fn corpus_list_and_run() {
    let o = run(&["corpus", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&run(&["--format", "csv", "corpus", "list"]))
        .lines()
        .filter(|l| l.starts_with("row,"))
        .count();
    assert!(rows >= 6);
    golden("corpus_list.txt", &stdout(&o));

    let o = run(&["corpus", "run"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = run(&["--format", "csv", "corpus", "run", "--filter", "heart"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let instances: std::collections::BTreeSet<&str> = out
        .lines()
        .filter_map(|l| l.strip_prefix("row,checks,"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(instances.into_iter().collect::<Vec<_>>(), ["heart"]);

    assert_eq!(run(&["corpus", "run", "--filter", "nope"]).status.code(), Some(4));
}
