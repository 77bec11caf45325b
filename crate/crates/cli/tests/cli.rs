use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fourient_core::matroid::SignedVector;
use fourient_core::signature::{Signature, SignaturePolarity};
use fourient_core::{catalog, io};
use tempfile::TempDir;

fn catalog_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourient")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> Output {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    o
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes the weight-induced atlas for `name` into `dir`.
fn weight_atlas(dir: &TempDir, name: &str, weights: &str, polarity: &str, file: &str) -> PathBuf {
    let out = dir.path().join(file);
    let input = catalog_file(name);
    ok(&["atlas", "-i", path(&input), "-o", path(&out), "weights", weights, "--polarity", polarity]);
    out
}

#[test]
fn info_reports_counts() {
    let o = ok(&["info", "-i", path(&catalog_file("theta"))]);
    let s = stdout(&o);
    for line in ["n=2", "r=1", "bases=2", "classes=2"] {
        assert!(s.lines().any(|l| l == line), "{s}");
    }
    let s = stdout(&ok(&["info", "-i", "builtin:k5me"]));
    assert!(s.lines().any(|l| l == "bases=75"), "{s}");
}

#[test]
fn empty_input_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["info", "-i", path(&empty)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 1"), "{}", stderr(&o));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 0\n0 x\n").unwrap();
    let o = run(&["info", "-i", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 3"), "{}", stderr(&o));
}

#[test]
fn weights_give_a_triangulating_atlas() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.json");
    let o = ok(&["atlas", "-i", path(&catalog_file("theta")), "-o", path(&out), "weights", "(1,0)"]);
    assert!(stderr(&o).contains("triangulating=true"));
    let m = catalog::get("theta").unwrap().matroid().unwrap();
    let a = io::parse_atlas(&m, &std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(fourient_core::atlas::is_triangulating(&m, &a));
    assert_eq!(io::atlas_to_json(&a).trim_end(), std::fs::read_to_string(&out).unwrap().trim_end());
}

#[test]
fn bernardi_on_fig5() {
    let o = ok(&["atlas", "-i", path(&catalog_file("fig5")), "bernardi"]);
    let e = stderr(&o);
    assert!(e.contains("dissecting=true"), "{e}");
    assert!(e.contains("triangulating=false"), "{e}");
    assert!(e.contains("signature_induced=false"), "{e}");
}

#[test]
fn q_root_on_triangle() {
    let o = ok(&["atlas", "-i", "builtin:triangle", "q-root", "1"]);
    assert!(stderr(&o).contains("triangulating=true"));
    assert!(stdout(&o).contains("\"internal\""));
    assert_eq!(run(&["atlas", "-i", "builtin:triangle", "q-root", "4"]).status.code(), Some(2));
}

#[test]
fn f_table_on_theta() {
    let dir = TempDir::new().unwrap();
    let ext = weight_atlas(&dir, "theta", "(1,0)", "circuit", "e.json");
    let int = weight_atlas(&dir, "theta", "(1,0)", "cocircuit", "i.json");
    let input = catalog_file("theta");
    let o = ok(&["map", "f", "-i", path(&input), "--ext", path(&ext), "--int", path(&int)]);
    assert!(stderr(&o).contains("bijective=true"));
    let t = io::parse_f_table(2, &stdout(&o)).unwrap();
    assert_eq!(t.len(), 2);
}

#[test]
fn phi_table_on_k4() {
    let dir = TempDir::new().unwrap();
    let ext = weight_atlas(&dir, "k4", "(1,2,4,8,16,32)", "circuit", "e.json");
    let int = weight_atlas(&dir, "k4", "(1,-2,4,-8,16,-32)", "cocircuit", "i.json");
    let input = catalog_file("k4");
    let base = ["map", "phi", "-i", path(&input), "--ext", path(&ext), "--int", path(&int)];
    let o = ok(&base);
    assert!(stderr(&o).contains("tiling=true"));
    let t = io::parse_phi_table(6, &stdout(&o)).unwrap();
    assert_eq!(t.entries().len(), 64);
    assert!(t.is_bijective() && t.is_tiling());

    // Same bytes regardless of the thread count.
    let one = stdout(&ok(&[&base[..], &["--threads", "1"]].concat()));
    let four = stdout(&ok(&[&base[..], &["--threads", "4"]].concat()));
    assert_eq!(one, stdout(&o));
    assert_eq!(one, four);

    let inv = ok(&["map", "inverse", "-i", path(&input), "--ext", path(&ext), "--int", path(&int)]);
    let inv: serde_json::Map<String, serde_json::Value> = serde_json::from_str(&stdout(&inv)).unwrap();
    assert_eq!(inv.len(), 64);
}

#[test]
fn bad_pair_prints_a_collision() {
    let dir = TempDir::new().unwrap();
    let ext = dir.path().join("bad.json");
    std::fs::write(&ext, r#"{"polarity": "external", "entries": {"1": "b+", "2": "+b"}}"#).unwrap();
    let int = weight_atlas(&dir, "theta", "(1,0)", "cocircuit", "i.json");
    let input = catalog_file("theta");
    let o = run(&["map", "f", "-i", path(&input), "--ext", path(&ext), "--int", path(&int)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("collision"), "{}", stderr(&o));
}

#[test]
fn lawrence_on_theta() {
    let input = catalog_file("theta");
    let o = ok(&["lawrence", "-i", path(&input), "simplices"]);
    let fam = io::parse_family(2, &stdout(&o)).unwrap();
    assert_eq!(fam.len(), 4);

    let s = stdout(&ok(&["lawrence", "-i", path(&input), "volume"]));
    assert!(s.lines().any(|l| l == "simplex=√2/2"), "{s}");
    assert!(s.lines().any(|l| l == "total=√2"), "{s}");

    let o = ok(&["lawrence", "-i", path(&input), "regular", "(1,0,0,0)"]);
    assert!(stderr(&o).contains("triangulation=true"));
    let m = catalog::get("theta").unwrap().matroid().unwrap();
    let a = io::parse_atlas(&m, &stdout(&o)).unwrap();
    let sigma = fourient_core::signature::signature_from_atlas(&m, &a).unwrap();
    let expected = Signature::new(&m, SignaturePolarity::Circuit, [SignedVector::general(vec![-1, 1])]).unwrap();
    assert_eq!(sigma, expected);
}

#[test]
fn lawrence_check_classifies_families() {
    let dir = TempDir::new().unwrap();
    let input = catalog_file("theta");
    let fam = dir.path().join("fam.json");
    let all = dir.path().join("all.json");
    ok(&["lawrence", "-i", path(&input), "-o", path(&fam), "regular", "(1,0,0,0)"]);
    let m = catalog::get("theta").unwrap().matroid().unwrap();
    let a = io::parse_atlas(&m, &std::fs::read_to_string(&fam).unwrap()).unwrap();
    let model = fourient_core::lawrence::build_lawrence(&m, fourient_core::lawrence::Side::Primal).unwrap();
    std::fs::write(&fam, io::family_to_json(&model.simplices_of_atlas(&a).unwrap())).unwrap();
    let s = stdout(&ok(&["lawrence", "-i", path(&input), "check", path(&fam)]));
    assert!(s.contains("triangulation=true"), "{s}");

    ok(&["lawrence", "-i", path(&input), "-o", path(&all), "simplices"]);
    let s = stdout(&ok(&["lawrence", "-i", path(&input), "check", path(&all)]));
    assert!(s.contains("dissection=false"), "{s}");
}

#[test]
fn selftest_quick_passes() {
    let o = ok(&["selftest", "quick"]);
    assert!(stdout(&o).contains(" 0 failed"), "{}", stdout(&o));
}

#[test]
fn corrupted_catalog_entry_is_named() {
    let dir = TempDir::new().unwrap();
    let text = catalog::builtin_text("theta").unwrap().replace("\"expected_bases\": 2", "\"expected_bases\": 5");
    assert!(text.contains("\"expected_bases\": 5"));
    let file = dir.path().join("theta.json");
    std::fs::write(&file, text).unwrap();
    let o = run(&["selftest", "quick", "--catalog", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bases count"), "{}", stderr(&o));
    assert!(stdout(&o).contains("FAIL"), "{}", stdout(&o));
}
