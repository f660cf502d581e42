use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn catlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let out = dir.join(name);
    let mut full = args.to_vec();
    let path = out.to_str().unwrap().to_string();
    full.extend(["--out", &path]);
    let res = catlab(&full);
    let text = fs::read_to_string(&out).unwrap_or_default();
    (res, text)
}

/// Non-comment lines after the header, split on commas.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn header(csv: &str) -> &str {
    csv.lines().find(|l| !l.starts_with('#')).unwrap()
}

#[test]
fn purity_curve_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--command", "purity-curve", "--beta-abs", "3", "--r0", "0.7", "--m1", "0.3", "--samples", "120"];
    let (a, first) = run_to(dir.path(), "a.csv", &args);
    let (b, second) = run_to(dir.path(), "b.csv", &args);
    assert!(a.status.success() && b.status.success());
    assert!(!first.is_empty());
    assert_eq!(first, second);
    assert!(!first.contains('\r'));
    assert_eq!(header(&first), "t_gamma,purity,interference_weight");
    let rows = rows(&first);
    assert_eq!(rows.len(), 120);
    for r in &rows {
        let mu: f64 = r[1].parse().unwrap();
        assert!(mu > 0.0 && mu <= 1.0);
        // 17 significant digits
        assert_eq!(r[1].split('e').next().unwrap().len(), 18, "{}", r[1]);
    }
}

#[test]
fn figure1_output() {
    let dir = tempfile::tempdir().unwrap();
    let (res, csv) = run_to(dir.path(), "f1.csv", &["--command", "figure1"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(header(&csv), "curve,t_gamma,purity,interference_weight");
    assert!(csv.contains("# assumption: the continuous curve uses N=2.5"));
    let rows = rows(&csv);
    let labels = ["dotted", "dashed", "continuous", "dot-dashed"];
    for label in labels {
        let curve: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r[0] == label)
            .map(|r| (r[1].parse().unwrap(), r[2].parse().unwrap()))
            .collect();
        assert_eq!(curve.len(), 200, "{label}");
        assert_eq!(curve[0], (0.0, 1.0));
        assert_eq!(curve.last().unwrap().0, 15.0);
        assert!(curve.iter().all(|&(_, mu)| mu > 0.0 && mu <= 1.0));
    }
    let min_of = |label: &str| {
        rows.iter()
            .filter(|r| r[0] == label)
            .map(|r| r[2].parse::<f64>().unwrap())
            .fold(f64::INFINITY, f64::min)
    };
    assert!(min_of("dot-dashed") < min_of("dashed"));
}

#[test]
fn figure2_reference_time_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let (res, csv) = run_to(dir.path(), "f2.csv", &["--command", "figure2"]);
    assert!(res.status.success());
    let at = |label: &str| -> f64 {
        rows(&csv)
            .iter()
            .find(|r| r[0] == label && r[1].parse::<f64>().unwrap() == 0.03125)
            .map(|r| r[2].parse().unwrap())
            .unwrap()
    };
    assert!(at("r0=1") > at("r0=0"));
    assert!(at("r0=1") > at("r0=1.5"));
}

#[test]
fn infeasible_channel_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let (res, csv) = run_to(dir.path(), "x.csv", &["--command", "purity-curve", "--n", "0.5", "--m1", "2"]);
    assert_eq!(res.status.code(), Some(1));
    assert!(csv.is_empty());
    let stderr = String::from_utf8(res.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.starts_with("error kind=validation code=1"));
    assert!(stderr.contains("|M|^2 <= N(N+1)"));
}

#[test]
fn missing_command_and_bad_flags() {
    assert_eq!(catlab(&[]).status.code(), Some(1));
    assert_eq!(catlab(&["--command", "nope"]).status.code(), Some(1));
    assert_eq!(catlab(&["--command", "evolve", "--samples", "-3"]).status.code(), Some(1));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let res = catlab(&["--command", "evolve", "--out", target.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3));
}

#[test]
fn oracle_check_passes_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let (res, csv) = run_to(dir.path(), "oracle.csv", &["--command", "oracle-check"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(header(&csv), "t_gamma,closed_form,oracle,rel_dev");
    assert_eq!(rows(&csv).len(), 4);
    assert!(String::from_utf8(res.stdout).unwrap().starts_with("max_rel_dev="));
}

#[test]
fn coarse_oracle_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (res, _) = run_to(
        dir.path(),
        "oracle.csv",
        &["--command", "oracle-check", "--beta-abs", "10", "--oracle-resolution", "64"],
    );
    assert_eq!(res.status.code(), Some(2), "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "command=sweep\nbeta_abs=2\nsweep_param=r0\nsweep_min=0\nsweep_max=2\nsamples=11\nt_eval=0.1\n").unwrap();
    let (res, csv) = run_to(dir.path(), "s.csv", &["--config", cfg.to_str().unwrap(), "--samples", "5"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(csv.contains("# sweep_param=r0"));
    assert_eq!(header(&csv), "parameter,purity");
    let rows = rows(&csv);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][0].parse::<f64>().unwrap(), 2.0);
}

#[test]
fn optimizers_report_expected_optima() {
    let dir = tempfile::tempdir().unwrap();
    let (res, csv) = run_to(
        dir.path(),
        "xi.csv",
        &["--command", "optimize-xi", "--beta-abs", "4", "--r0", "1", "--t-eval", "0.03125"],
    );
    assert!(res.status.success());
    let argmax: f64 = csv
        .lines()
        .find_map(|l| l.strip_prefix("# argmax="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((argmax - std::f64::consts::FRAC_PI_2).abs() < 1e-4);
    assert_eq!(rows(&csv).len(), 64);

    let (res, _) = run_to(dir.path(), "flat.csv", &["--command", "optimize-xi", "--beta-abs", "4"]);
    assert!(String::from_utf8(res.stdout).unwrap().contains("status=DegenerateFlat"));

    let (res, _) = run_to(
        dir.path(),
        "r.csv",
        &["--command", "optimize-r", "--beta-abs", "4", "--t-eval", "0.03125"],
    );
    let stdout = String::from_utf8(res.stdout).unwrap();
    let r: f64 = stdout
        .split_whitespace()
        .find_map(|w| w.strip_prefix("r_opt="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((0.7..=1.3).contains(&r), "{stdout}");
}

#[test]
fn evolve_writes_four_terms() {
    let dir = tempfile::tempdir().unwrap();
    let (res, csv) = run_to(dir.path(), "e.csv", &["--command", "evolve", "--t-max", "0.5", "--theta", "3.14159"]);
    assert!(res.status.success());
    assert_eq!(rows(&csv).len(), 4);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let res = Command::new(env!("CARGO_BIN_EXE_catlab"))
            .env("CATLAB_THREADS", threads)
            .args(["--command", "figure2", "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(res.status.success());
        fs::read(out).unwrap()
    };
    assert_eq!(run("1", "one.csv"), run("3", "three.csv"));
}
