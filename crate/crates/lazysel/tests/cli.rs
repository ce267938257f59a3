use std::path::Path;
use std::process::{Command, Output};

use lazysel::io::{parse_points, Format};
use lazysel::manifest::RunManifest;

fn lazysel(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazysel"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn manifest(dir: &Path) -> RunManifest {
    RunManifest::from_json(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn read_rows(path: &Path) -> Vec<Vec<f64>> {
    parse_points(&std::fs::read_to_string(path).unwrap(), Format::Csv).unwrap()
}

#[test]
fn gen_front_writes_requested_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let out = lazysel(
        &[
            "gen-front",
            "--family",
            "dtlz1",
            "--m",
            "5",
            "--n",
            "5000",
            "--seed",
            "7",
            "--out",
            "f.csv",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let rows = read_rows(&tmp.path().join("f.csv"));
    assert_eq!(rows.len(), 5000);
    assert!(rows.iter().all(|r| r.len() == 5));
    let out = lazysel(
        &[
            "gen-front",
            "--family",
            "dtlz2",
            "--m",
            "3",
            "--n",
            "20",
            "--out",
            "f.json",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(tmp.path().join("f.json")).unwrap();
    assert_eq!(parse_points(&text, Format::Json).unwrap().len(), 20);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let code = |args: &[&str]| lazysel(args, dir).status.code();
    assert_eq!(
        code(&[
            "gen-front",
            "--family",
            "dtlz9",
            "--m",
            "3",
            "--n",
            "5",
            "--out",
            "x.csv"
        ]),
        Some(2)
    );
    assert_eq!(code(&["select", "--k", "3", "--out", "o"]), Some(2));
    assert_eq!(
        code(&["select", "missing.csv", "--k", "3", "--out", "o"]),
        Some(3)
    );
    std::fs::write(dir.join("bad.csv"), "0.1,0.2\n0.3,oops\n").unwrap();
    assert_eq!(
        code(&["select", "bad.csv", "--k", "1", "--out", "o"]),
        Some(3)
    );
    std::fs::write(dir.join("ok.csv"), "0.1,0.9\n0.5,0.5\n0.9,0.1\n").unwrap();
    assert_eq!(
        code(&["select", "ok.csv", "--k", "0", "--out", "o"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "select",
            "ok.csv",
            "--k",
            "2",
            "--engine",
            "update",
            "--indicator",
            "igd",
            "--out",
            "o"
        ]),
        Some(4)
    );
    assert_eq!(
        code(&[
            "select",
            "ok.csv",
            "--k",
            "2",
            "--ref-point",
            "1,1,1",
            "--out",
            "o"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["select", "ok.csv", "--k", "2", "--out", "o"]),
        Some(0)
    );
}

#[test]
fn engines_agree_through_the_cli() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert!(lazysel(
        &[
            "gen-front",
            "--family",
            "dtlz2",
            "--m",
            "3",
            "--n",
            "5000",
            "--seed",
            "1",
            "--out",
            "v.csv"
        ],
        dir
    )
    .status
    .success());
    let mut picks = Vec::new();
    for engine in ["lazy", "standard", "update"] {
        let out = lazysel(
            &[
                "select",
                "v.csv",
                "--indicator",
                "hv",
                "--engine",
                engine,
                "--k",
                "100",
                "--out",
                engine,
            ],
            dir,
        );
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let m = manifest(&dir.join(engine));
        assert_eq!(m.result.selected.len(), 100);
        assert_eq!(m.ref_point, vec![1.1; 3]);
        assert_eq!(m.ref_point_source, "default");
        picks.push(m.result.selected);
    }
    assert_eq!(picks[0], picks[1]);
    assert_eq!(picks[0], picks[2]);
}

#[test]
fn subset_rows_are_input_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let input = "obj1,obj2\n3.0,7.25\n5.5,5.5\n7.0,3.0\n5.5,5.5\n1.0,1.0\n";
    std::fs::write(dir.join("max.csv"), input).unwrap();
    let out = lazysel(
        &[
            "select",
            "max.csv",
            "--maximization",
            "--k",
            "2",
            "--out",
            "o",
        ],
        dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = manifest(&dir.join("o"));
    // Under maximization (1, 1) is dominated and row 3 repeats row 1.
    assert_eq!(m.sanitize.duplicates, vec![[3, 1]]);
    assert_eq!(m.sanitize.dominated, vec![4]);
    assert!(m.ref_point.iter().all(|&r| r > -1.0));
    let rows = read_rows(&dir.join("o/subset.csv"));
    let input_rows = parse_points(input, Format::Csv).unwrap();
    for (row, &i) in rows.iter().zip(&m.result.selected) {
        assert_eq!(row, &input_rows[i]);
    }
}

#[test]
fn k_beyond_input_returns_everything_with_a_warning() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    std::fs::write(dir.join("v.json"), "[[0.2, 0.8], [0.5, 0.5], [0.8, 0.2]]").unwrap();
    let out = lazysel(&["select", "v.json", "--k", "10", "--out", "o"], dir);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
    let m = manifest(&dir.join("o"));
    assert_eq!(m.result.selected, vec![0, 1, 2]);
    assert!(m.result.short_circuit);
}

#[test]
fn external_reference_set_for_igd() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    std::fs::write(dir.join("v.csv"), "0.0,1.0\n0.5,0.5\n1.0,0.0\n").unwrap();
    std::fs::write(dir.join("r.csv"), "0.0,1.0\n").unwrap();
    let out = lazysel(
        &[
            "select",
            "v.csv",
            "--indicator",
            "igd",
            "--ref-set",
            "r.csv",
            "--k",
            "1",
            "--out",
            "o",
        ],
        dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = manifest(&dir.join("o"));
    assert_eq!(m.result.selected, vec![0]);
    assert_eq!(m.result.step_gains, vec![None]);
    assert_eq!(m.result.final_value, Some(0.0));
    assert_eq!(m.reference_set.as_deref(), Some("r.csv"));
}

#[test]
fn verify_passes_and_notices_a_fault() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let ok = lazysel(&["verify", "--quick", "--report", "ok.json"], dir);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    let report = std::fs::read_to_string(dir.join("ok.json")).unwrap();
    assert!(report.contains("greedy-vs-exhaustive-opt"));
    let bad = lazysel(
        &[
            "verify",
            "--quick",
            "--inject-fault",
            "--report",
            "bad.json",
        ],
        dir,
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("FAIL hvc-limit-vs-two-volumes"));
}

#[test]
fn bench_series_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let args = |out: &'static str, series: &'static str| {
        vec![
            "bench",
            "--problems",
            "dtlz2:3,idtlz2:3",
            "--n",
            "300",
            "--k",
            "10",
            "--pool",
            "2000",
            "--indicators",
            "hv,igdplus",
            "--repeats",
            "1",
            "--seed",
            "4",
            "--out",
            out,
            "--series",
            series,
        ]
    };
    assert!(lazysel(&args("b1.csv", "s1.csv"), dir).status.success());
    assert!(lazysel(&args("b2.csv", "s2.csv"), dir).status.success());
    let s1 = std::fs::read(dir.join("s1.csv")).unwrap();
    assert_eq!(s1, std::fs::read(dir.join("s2.csv")).unwrap());
    let bench = std::fs::read_to_string(dir.join("b1.csv")).unwrap();
    assert_eq!(
        bench.lines().next().unwrap(),
        "problem,m,n,k,indicator,engine,repeat,seconds,total_evals"
    );
    // 2 problems x (3 hv engines + 2 igd+ engines), raw and mean rows
    assert_eq!(bench.lines().count(), 1 + 2 * 10);
    let lazy_first = String::from_utf8(s1).unwrap();
    assert!(lazy_first
        .lines()
        .any(|l| l == "dtlz2,3,300,10,hv,lazy,0,0,300"));
}
