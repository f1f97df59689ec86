use std::path::Path;
use std::process::{Command, Output};

fn flk(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flk"))
        .args(args)
        .current_dir(cwd)
        .env_remove("FLK_CACHE_DIR")
        .output()
        .expect("run flk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_then_betti() {
    let d = tempfile::tempdir().unwrap();
    let o = flk(
        &["build", "--type", "A1", "--part", "u", "--out", "u.json"],
        d.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = flk(
        &[
            "betti",
            "--alg",
            "u.json",
            "--max-degree",
            "4",
            "--invariant",
            "5",
        ],
        d.path(),
    );
    assert!(o.status.success());
    // u at A1 is k[F]/(F⁵): one class in every degree, invariant ones in even degrees
    assert_eq!(
        stdout(&o),
        "n,b_n,invariant\n0,1,1\n1,1,0\n2,1,1\n3,1,0\n4,1,1\n"
    );
}

#[test]
fn betti_of_kernel_dump() {
    let d = tempfile::tempdir().unwrap();
    let o = flk(
        &[
            "build", "--type", "A1", "--p", "3", "--r", "1", "--part", "U", "--out", "U.json",
        ],
        d.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = flk(&["betti", "--alg", "U.json", "--max-degree", "3"], d.path());
    let b: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(b, ["1", "2", "3", "4"]);
}

#[test]
fn simples_csv() {
    let d = tempfile::tempdir().unwrap();
    let o = flk(
        &["simples", "--type", "A1", "--p", "3", "--r", "1"],
        d.path(),
    );
    assert!(o.status.success());
    let text = stdout(&o);
    let dims: Vec<usize> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(dims.len(), 15);
    for (lam, dim) in dims.iter().enumerate() {
        assert_eq!(*dim, (lam % 5 + 1) * (lam / 5 + 1));
    }
}

#[test]
fn verma_dual_reflects() {
    let d = tempfile::tempdir().unwrap();
    let o = flk(&["verma", "--lambda", "2", "--dual"], d.path());
    assert!(o.status.success());
    let z = flk(&["verma", "--lambda", "6"], d.path());
    assert_eq!(stdout(&o), stdout(&z));
}

#[test]
fn even_ell_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(
        d.path().join("bad.toml"),
        "[[scenario]]\nname = \"even\"\ntype = \"A1\"\nell = 4\np = 11\nchecks = [\"lengths\"]\n",
    )
    .unwrap();
    let o = flk(&["verify", "--config", "bad.toml"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ConfigInvalid"));
}

#[test]
fn failing_check_gives_nonzero_exit() {
    let d = tempfile::tempdir().unwrap();
    // growth fits need at least 8 terms
    std::fs::write(
        d.path().join("short.toml"),
        "[[scenario]]\nname = \"short\"\ntype = \"A1\"\nell = 5\np = 11\nchecks = [\"complexity\"]\ngrowth_degree = 4\n",
    )
    .unwrap();
    let o = flk(
        &["verify", "--config", "short.toml", "--out", "out"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let report = std::fs::read_to_string(d.path().join("out/report.json")).unwrap();
    assert!(report.contains("\"status\": \"fail\""));
}

#[test]
fn default_suite_passes_and_cache_is_transparent() {
    let d = tempfile::tempdir().unwrap();
    let cold = flk(&["verify", "--out", "cold"], d.path());
    assert!(cold.status.success(), "{}", stdout(&cold));
    let warm1 = flk(&["verify", "--out", "w1", "--cache", "cache"], d.path());
    let warm2 = flk(&["verify", "--out", "w2", "--cache", "cache"], d.path());
    assert!(warm1.status.success() && warm2.status.success());
    assert!(std::fs::read_dir(d.path().join("cache")).unwrap().count() > 0);
    let read = |s: &str| std::fs::read(d.path().join(s).join("report.json")).unwrap();
    assert_eq!(read("cold"), read("w1"));
    assert_eq!(read("cold"), read("w2"));
    assert!(d.path().join("cold/timings.json").exists());
}

#[test]
fn cocycle_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        vec!["cocycle-check"],
        vec!["cocycle-check", "--generator", "1"],
        vec!["cocycle-check", "--mutate"],
        vec!["cocycle-check", "--gr"],
    ] {
        let o = flk(&args, d.path());
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
    let o = flk(&["cocycle-check", "--generator", "7"], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn restrict_reports_rank_one() {
    let d = tempfile::tempdir().unwrap();
    let o = flk(&["restrict", "--max-degree", "2"], d.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degrees"][2]["invariant_rank"], 1);
    assert_eq!(v["degrees"][2]["surviving"], serde_json::json!([[5, 0]]));
}
