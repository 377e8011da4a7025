use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l2betti"))
        .args(args)
        .env("L2BETTI_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_corpus(dir: &Path) {
    let o = bin(&["corpus", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(format!("{name}.cx")).to_str().unwrap().to_string()
}

#[test]
fn betti_of_torus() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let o = bin(&["betti", "--in", &path(dir.path(), "torus")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti: 1,2,1\n"));
}

#[test]
fn taut_product_is_certified() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let f = path(dir.path(), "product_g2");
    let o = bin(&["taut", "--in", &f, "--phi", "phi0", "--schedule", "cyclic:1..64"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("verdict: certified vanishing for phi\n"));
    assert!(out.contains("twisted_betti: 0,0,0,0\n"));
    assert!(out.contains("certificate_det: "));
    assert!(out.contains("approx_table:\n"));
}

#[test]
fn compare_csv_has_exact_rationals() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let f = path(dir.path(), "surface_g2");
    let o = bin(&["compare", "--in", &f, "--phi", "phi0", "--schedule", "cyclic:1,2,4,8,16,32,64", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,p,unnormalized,normalized,twisted,gap"));
    for line in lines.filter(|l| l.split(',').nth(1) == Some("1")) {
        let cols: Vec<&str> = line.split(',').collect();
        let k: i64 = cols[0].parse().unwrap();
        let expected = num_rational::Ratio::new(2 * k + 2, k);
        assert_eq!(cols[3], format!("{}/{}", expected.numer(), expected.denom()));
        assert_eq!(cols[4], "2");
    }
}

#[test]
fn reports_are_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let f = path(dir.path(), "double_product_g1b1");
    let a = bin(&["sutured-check", "--in", &f, "--phi", "phi0"]);
    let b = bin(&["sutured-check", "--in", &f, "--phi", "phi0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = dir.path().join("report.txt");
    let c = bin(&["sutured-check", "--in", &f, "--phi", "phi0", "--out", out.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(out).unwrap(), a.stdout);
}

#[test]
fn convert_is_byte_identical_on_canonical_input() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let f = path(dir.path(), "tower_g1b1_n2");
    let o = bin(&["convert", "--in", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, std::fs::read(&f).unwrap());
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let torus = path(dir.path(), "torus");
    for args in [
        vec!["approx", "--in", torus.as_str(), "--phi", "phi0", "--schedule", "cyclic:8,4"],
        vec!["approx", "--in", torus.as_str(), "--phi", "phi0", "--schedule", "dyadic:1..8"],
        vec!["twisted", "--in", torus.as_str(), "--phi", "nope"],
        vec!["taut", "--in", torus.as_str(), "--phi", "phi0"],
        vec!["betti", "--in", torus.as_str(), "--unknown"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }

    let text = std::fs::read_to_string(&torus).unwrap();
    let broken = dir.path().join("broken.cx");
    std::fs::write(&broken, text.replacen("\"-1\"", "\"1\"", 1)).unwrap();
    let o = bin(&["validate", "--in", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["betti", "--in", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_input_is_an_internal_error() {
    let o = bin(&["betti", "--in", "/definitely/not/here.cx"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tower_levels() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let o = bin(&["tower", "--in", &path(dir.path(), "product_g1b1"), "--levels", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n,p,betti,relative\n"));
    assert!(out.contains("3,1,2,0\n"));
}
