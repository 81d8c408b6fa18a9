use std::path::{Path, PathBuf};
use std::process::Command;

use entrobox::ensemble::EnsembleKind;
use entrobox_cli::io::{state_to_json, DensityFile};
use entrobox_cli::{
    generate_ensemble, ingest_density, ingest_prob_vec, ingest_state, run_suite, CliError,
    InputState, Suite, SuiteConfig,
};

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn ingests_probability_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let p = ingest_prob_vec(&write(dir.path(), "u.json", "[0.25,0.25,0.25,0.25]")).unwrap();
    assert_eq!(p.values(), &[0.25; 4]);
    let p = ingest_prob_vec(&write(dir.path(), "d.json", "[1.0]")).unwrap();
    assert_eq!(p.values(), &[1.0]);
    let err = ingest_prob_vec(&write(dir.path(), "s.json", "[0.5,0.6]")).unwrap_err();
    assert!(
        matches!(err, CliError::Core(entrobox::Error::RejectSum { .. })),
        "{err}"
    );
    let err = ingest_prob_vec(&write(dir.path(), "n.json", "[0.5,-0.1,0.6]")).unwrap_err();
    assert!(
        matches!(err, CliError::Core(entrobox::Error::RejectNegative { .. })),
        "{err}"
    );
    let err = ingest_prob_vec(&write(dir.path(), "bad.json", "[0.5,")).unwrap_err();
    assert!(matches!(err, CliError::Parse { .. }));
}

#[test]
fn ingests_density_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let rho = ingest_density(&write(
        dir.path(),
        "m.json",
        r#"{"dim":2,"re":[[0.5,0],[0,0.5]]}"#,
    ))
    .unwrap();
    assert_eq!(rho, entrobox::DensityMatrix::maximally_mixed(2).unwrap());
    let rho = ingest_density(&write(
        dir.path(),
        "p.json",
        r#"{"dim":2,"re":[[1,0],[0,0]]}"#,
    ))
    .unwrap();
    assert_eq!(rho.populations(), vec![1.0, 0.0]);
    let err = ingest_density(&write(
        dir.path(),
        "h.json",
        r#"{"dim":2,"re":[[0.5,0.5],[0.4,0.5]]}"#,
    ))
    .unwrap_err();
    assert!(
        matches!(err, CliError::Core(entrobox::Error::NotHermitian { .. })),
        "{err}"
    );
    let err = ingest_density(&write(
        dir.path(),
        "t.json",
        r#"{"dim":2,"re":[[1,0],[0,1]]}"#,
    ))
    .unwrap_err();
    assert!(
        matches!(err, CliError::Core(entrobox::Error::BadTrace { .. })),
        "{err}"
    );
    let err = ingest_density(&write(
        dir.path(),
        "n.json",
        r#"{"dim":2,"re":[[1.5,0],[0,-0.5]]}"#,
    ))
    .unwrap_err();
    assert!(
        matches!(err, CliError::Core(entrobox::Error::NotPSD { .. })),
        "{err}"
    );
    let err = ingest_density(&write(
        dir.path(),
        "s.json",
        r#"{"dim":3,"re":[[1,0],[0,0]]}"#,
    ))
    .unwrap_err();
    assert!(matches!(err, CliError::Parse { .. }));
    let rho = ingest_density(&write(
        dir.path(),
        "c.json",
        r#"{"dim":2,"re":[[0.5,0],[0,0.5]],"im":[[0,0.5],[-0.5,0]]}"#,
    ))
    .unwrap();
    assert_eq!(rho.get(0, 1).im, 0.5);
}

#[test]
fn generated_states_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, dim) in [
        (EnsembleKind::DirichletSimplex, 4),
        (EnsembleKind::GinibreDensity, 7),
    ] {
        let a = generate_ensemble(kind, dim, 3, 11).unwrap();
        assert_eq!(a, generate_ensemble(kind, dim, 3, 11).unwrap());
        for (i, state) in a.iter().enumerate() {
            let path = dir.path().join(format!("{i}-{dim}.json"));
            std::fs::write(&path, serde_json::to_string(&state_to_json(state)).unwrap()).unwrap();
            match (state, ingest_state(&path).unwrap()) {
                (entrobox::ensemble::State::Prob(p), InputState::Prob(q)) => assert_eq!(p, &q),
                (entrobox::ensemble::State::Density(r), InputState::Density(s)) => {
                    // The file holds the exact doubles; ingestion then
                    // re-symmetrizes and renormalizes the trace.
                    let raw: DensityFile =
                        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
                    assert_eq!(raw, DensityFile::from_matrix(r.matrix()));
                    assert!(entrobox::linalg::max_abs(&(r.matrix() - s.matrix())) <= 1e-15);
                }
                _ => panic!("state kind changed"),
            }
        }
    }
    assert!(generate_ensemble(EnsembleKind::HaarUnitary, 0, 1, 0).is_err());
    assert!(generate_ensemble(EnsembleKind::HaarUnitary, 2, 0, 0).is_err());
}

fn config(suite: Suite, dims: &[usize], trials: usize) -> SuiteConfig {
    SuiteConfig {
        suite,
        dims: dims.to_vec(),
        trials,
        seed: 1,
        q_values: vec![2.0, 3.0],
        ..SuiteConfig::default()
    }
}

#[test]
fn classical_sweep_on_seven_vectors() {
    let report = run_suite(&config(Suite::Classical, &[7], 10_000)).unwrap();
    for tag in ["Eq12", "Eq13"] {
        let agg = report.aggregate(Suite::Classical, tag).unwrap();
        assert_eq!(agg.count, 10_000);
        assert!(agg.min_gap >= -1e-9 && agg.failures == 0);
    }
    assert!(report.passed && report.failing_instances.is_empty());
}

#[test]
fn quantum_sweep_reports_strong_subadditivity_tags() {
    let report = run_suite(&config(Suite::Quantum, &[5, 7], 2000)).unwrap();
    for tag in ["SSC1-d5", "SSC1-d7", "DM2-d5-2x3", "DM2-d7-4x2"] {
        assert!(
            report.aggregate(Suite::Quantum, tag).unwrap().min_gap >= -1e-9,
            "{tag}"
        );
    }
    assert!(report.passed);
}

#[test]
fn discord_of_diagonal_input_vanishes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "diag4.json",
        r#"{"dim":4,"re":[[0.1,0,0,0],[0,0.2,0,0],[0,0,0.3,0],[0,0,0,0.4]]}"#,
    );
    let cfg = SuiteConfig {
        input_path: Some(input),
        ..config(Suite::Discord, &[4], 10)
    };
    let report = run_suite(&cfg).unwrap();
    let g = report.aggregate(Suite::Discord, "@input/G").unwrap();
    assert_eq!(g.count, 1);
    assert!(g.min_gap.abs() <= 1e-10);
    assert!(report.passed);
}

#[test]
fn failures_are_reported_with_the_state() {
    // The conditioning bound for q < 1 fails on most distributions.
    let cfg = SuiteConfig {
        q_values: vec![0.5],
        ..config(Suite::Classical, &[4], 50)
    };
    let report = run_suite(&cfg).unwrap();
    assert!(!report.passed);
    let agg = report.aggregate(Suite::Classical, "T4-cond-q0.5").unwrap();
    assert!(agg.failures > 0 && agg.min_gap < -cfg.tolerance);
    assert_eq!(report.failing_instances.len(), agg.failures);
    let inst = &report.failing_instances[0];
    let p = entrobox::ProbVec::new(inst.state.prob_vec.as_ref().unwrap(), 0.0).unwrap();
    let again = entrobox::simplex::tsallis_monotonicity_check(&p, 0.5)
        .unwrap()
        .conditioning;
    assert_eq!(again.gap, inst.report.gap);
    // Every other aggregate stays clean, so the failure list is exactly the
    // failing aggregate.
    assert!(report
        .checks
        .iter()
        .filter(|c| c.tag != "T4-cond-q0.5")
        .all(|c| c.failures == 0 && c.min_gap >= -c.tolerance));
}

#[test]
fn invalid_configuration_is_rejected() {
    for cfg in [
        SuiteConfig {
            trials: 0,
            ..SuiteConfig::default()
        },
        SuiteConfig {
            tolerance: 0.0,
            ..SuiteConfig::default()
        },
        SuiteConfig {
            q_values: vec![-1.0],
            ..SuiteConfig::default()
        },
        SuiteConfig {
            dims: vec![],
            ..SuiteConfig::default()
        },
    ] {
        assert!(matches!(run_suite(&cfg), Err(CliError::Config(_))));
    }
}

#[test]
fn thread_cap_does_not_change_the_report() {
    let cfg = config(Suite::Tomographic, &[4], 30);
    let cfg = SuiteConfig {
        optimizer_trials: 2,
        ..cfg
    };
    let a = run_suite(&cfg).unwrap();
    std::env::set_var(entrobox_cli::suite::THREADS_ENV, "1");
    let b = run_suite(&cfg).unwrap();
    std::env::remove_var(entrobox_cli::suite::THREADS_ENV);
    assert_eq!(a.checks, b.checks);
    assert_eq!(a.failing_instances, b.failing_instances);
}

fn entrobox() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entrobox"))
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let ok = entrobox()
        .args([
            "check",
            "--suite",
            "classical",
            "--dims",
            "4",
            "--trials",
            "20",
            "--q",
            "2,3",
            "--output",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(ok.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["version"], entrobox::VERSION);

    let fail = entrobox()
        .args([
            "check",
            "--suite",
            "classical",
            "--dims",
            "4",
            "--trials",
            "20",
            "--q",
            "0.5",
            "--output",
        ])
        .arg(&out)
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(fail.code(), Some(1));

    let bad = write(dir.path(), "bad.json", "[0.5,0.6]");
    let input = entrobox()
        .args(["check", "--suite", "classical", "--input"])
        .arg(&bad)
        .arg("--output")
        .arg(&out)
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(input.code(), Some(2));
}

#[test]
fn gen_then_eval() {
    let dir = tempfile::tempdir().unwrap();
    let status = entrobox()
        .args([
            "gen", "--kind", "ginibre", "--dims", "4", "--trials", "2", "--seed", "3", "--output",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let state = dir.path().join("ginibre-d4-00001.json");
    let out = dir.path().join("eval.json");
    let status = entrobox()
        .args([
            "eval",
            "--check",
            "quantum-subadditivity",
            "--shape",
            "2x2",
            "--input",
        ])
        .arg(&state)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report["reports"][0]["gap"].as_f64().unwrap() >= -1e-9);

    let status = entrobox()
        .args(["eval", "--check", "eq12", "--input"])
        .arg(&state)
        .stderr(std::process::Stdio::null())
        .stdout(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
