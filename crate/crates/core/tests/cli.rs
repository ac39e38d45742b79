use std::process::{Command, Output};

use starlike::cli::{run_with, EXIT_INVALID, EXIT_OK};
use starlike::closed_forms::{distortion, koebe_radius, radius_of_starlikeness, re_lower_bound};
use starlike::ClassParams;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starlike"))
        .args(args)
        .env_remove("STARLIKE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_json_matches_library() {
    let out = bin(&[
        "compute", "--A", "0.6", "--B", "-0.3", "--b-re", "1.2", "--b-im", "-0.4", "--r", "0.7",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = ClassParams::new(0.6, -0.3, num_complex::Complex64::new(1.2, -0.4)).unwrap();
    let s = radius_of_starlikeness(&p);
    let d = distortion(&p, 0.7).unwrap();
    let rel = |v: &serde_json::Value, want: f64| {
        (v.as_f64().unwrap() - want).abs() <= 1e-14 * want.abs().max(1.0)
    };
    assert!(rel(&doc["radius"]["raw"], s.raw));
    assert!(rel(&doc["radius"]["effective"], s.effective));
    assert_eq!(
        doc["radius"]["boundary_free"].as_bool(),
        Some(s.boundary_free)
    );
    assert!(rel(&doc["distortion"]["lower"], d.lower));
    assert!(rel(&doc["distortion"]["upper"], d.upper));
    assert!(rel(&doc["koebe"], koebe_radius(&p)));
    assert!(rel(
        &doc["re_lower_bound"],
        re_lower_bound(&p, 0.7).unwrap()
    ));
}

#[test]
fn compute_starlike_example() {
    let out = bin(&[
        "compute", "--named", "starlike", "--r", "0.5", "--format", "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("distortion.lower,0.222222222\n"));
    assert!(text.contains("distortion.upper,2\n"));
    assert!(text.contains("koebe,0.25\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn table_row_at_half() {
    let out = bin(&["table", "--A", "1", "--B", "-1", "--b-re", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = stdout(&out);
    assert!(text.starts_with("r,lower,upper,re_lower_bound\n"));
    assert_eq!(text.lines().count(), 102);
    assert!(text.contains("\n0.5,0.222222222,2,0.333333333\n"));
}

#[test]
fn plot_data_koebe_function() {
    let out = bin(&[
        "plot-data",
        "--A",
        "1",
        "--B",
        "-1",
        "--b-re",
        "1",
        "--r",
        "0.5",
        "--grid",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "theta,f_re,f_im,abs_f");
    assert_eq!(rows[1], "0,2,0,2");
    assert!(rows
        .iter()
        .any(|r| r.starts_with("3.14159265,-0.222222222,")));
    assert!(text.contains("# distortion_upper=2"));
}

#[test]
fn invalid_parameters_exit_one() {
    for args in [
        &["compute", "--A", "2", "--B", "0", "--b-re", "1"][..],
        &["compute", "--A", "0.5", "--B", "0.5", "--b-re", "1"][..],
        &["compute", "--A", "1", "--B", "-1", "--b-re", "0"][..],
        &[
            "compute", "--A", "1", "--B", "-1", "--b-re", "1", "--r", "1",
        ][..],
        &["compute", "--named", "nope"][..],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(EXIT_INVALID), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn seed_env_overrides_flag() {
    let args = [
        "verify",
        "--named",
        "starlike",
        "--samples",
        "20",
        "--seed",
        "3",
    ];
    let argv = || std::iter::once("starlike").chain(args);
    let base = run_with(argv(), None);
    let same = run_with(argv(), Some("3"));
    let other = run_with(argv(), Some("4"));
    assert_eq!(base.code, EXIT_OK);
    assert_eq!(base.stdout, same.stdout);
    assert_ne!(base.stdout, other.stdout);

    let env_run = Command::new(env!("CARGO_BIN_EXE_starlike"))
        .args(args)
        .env("STARLIKE_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env_run.stdout).unwrap(), other.stdout);
}

#[test]
fn verify_csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("starlike-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = bin(&[
        "verify",
        "--named",
        "st6",
        "--samples",
        "10",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("target,quantity,"));
    assert!(text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .all(|l| l.contains(",pass,")));
    std::fs::remove_dir_all(&dir).unwrap();
}
