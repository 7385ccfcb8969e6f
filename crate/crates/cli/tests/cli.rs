use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracparity"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("spawn fracparity")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn triangle(dir: &Path) {
    fs::write(dir.join("tri.g"), "graph 3 3\n1 2\n2 3\n1 3\n").unwrap();
    ok(dir, &["gen", "graph", "tri.g", "-o", "tri.ls"]);
}

#[test]
fn triangle_end_to_end() {
    let d = tempfile::tempdir().unwrap();
    triangle(d.path());
    ok(
        d.path(),
        &["solve", "tri.ls", "--alg", "lasvegas", "--seed", "5", "-o", "y", "--cover-out", "c"],
    );
    let v = ok(d.path(), &["verify", "tri.ls", "--solution", "y", "--cover", "c"]);
    assert!(v.contains("solution 3/2 feasible yes"), "{v}");
    assert!(v.contains("value 3/2"), "{v}");
    assert!(v.ends_with("certification PASS\n"), "{v}");

    let o = ok(d.path(), &["oracle", "tri.ls"]);
    assert!(o.starts_with("optimum 3/2\n"), "{o}");
}

#[test]
fn dual_cover_certifies_every_solver() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["gen", "random", "--n", "6", "--m", "5", "--seed", "9", "-o", "r.ls"]);
    fs::write(d.path().join("c"), ok(d.path(), &["dual", "r.ls", "--seed", "2"])).unwrap();
    for alg in ["simple", "faster", "maxmatch"] {
        fs::write(d.path().join("y"), ok(d.path(), &["solve", "r.ls", "--alg", alg])).unwrap();
        let v = ok(d.path(), &["verify", "r.ls", "--solution", "y", "--cover", "c"]);
        assert!(v.contains("certification PASS"), "{alg}: {v}");
    }
}

#[test]
fn suboptimal_solution_fails_certification() {
    let d = tempfile::tempdir().unwrap();
    triangle(d.path());
    fs::write(d.path().join("c"), ok(d.path(), &["dual", "tri.ls"])).unwrap();
    fs::write(d.path().join("y"), "1 1 0\nvalue 2/2\n").unwrap();
    let out = run(d.path(), &["verify", "tri.ls", "--solution", "y", "--cover", "c"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("certification FAIL"));
}

#[test]
fn same_seed_same_bytes() {
    let d = tempfile::tempdir().unwrap();
    let gen = ["gen", "random", "--n", "5", "--m", "4", "--seed", "17"];
    assert_eq!(ok(d.path(), &gen), ok(d.path(), &gen));
    fs::write(d.path().join("r.ls"), ok(d.path(), &gen)).unwrap();
    for args in [
        &["solve", "r.ls", "--alg", "maxmatch", "--seed", "4"][..],
        &["solve", "r.ls", "--alg", "lasvegas", "--seed", "4"],
        &["dual", "r.ls", "--seed", "4"],
        &["oracle", "r.ls", "--seed", "4"],
    ] {
        assert_eq!(ok(d.path(), args), ok(d.path(), args), "{args:?}");
    }
}

#[test]
fn errors_have_nonzero_exit() {
    let d = tempfile::tempdir().unwrap();
    let out = run(d.path(), &["solve", "missing.ls", "--alg", "simple"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");

    fs::write(d.path().join("bad.ls"), "not an instance\n").unwrap();
    assert_eq!(run(d.path(), &["dual", "bad.ls"]).status.code(), Some(1));

    assert_eq!(run(d.path(), &["solve", "x", "--alg", "nope"]).status.code(), Some(2));

    // the path graph on three vertices has no parity base
    fs::write(d.path().join("p.g"), "graph 3 2\n1 2\n2 3\n").unwrap();
    ok(d.path(), &["gen", "graph", "p.g", "-o", "p.ls"]);
    let out = run(d.path(), &["solve", "p.ls", "--alg", "sparse"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(ok(d.path(), &["solve", "p.ls", "--alg", "maxmatch"]), "2 0\nvalue 2/2\n");
}

#[test]
fn crosscheck_suite_agrees() {
    let d = tempfile::tempdir().unwrap();
    let t = ok(d.path(), &["bench", "--suite", "crosscheck", "--count", "6", "--seed", "3"]);
    assert!(t.ends_with("agreement 6/6\n"), "{t}");
}
