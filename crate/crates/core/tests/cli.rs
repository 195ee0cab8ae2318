use std::process::Command;

fn hopfcorr(args: &[&str]) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfcorr")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (code, report)
}

#[test]
fn verify_hopf_passes_on_presets() {
    for preset in ["c-z", "c-f2", "u2", "suq2"] {
        let (code, rep) = hopfcorr(&["verify-hopf", "--preset", preset, "--cutoff", "3"]);
        assert_eq!(code, 0, "{preset}: {rep}");
        assert_eq!(rep["status"], "pass");
        assert_eq!(rep["command"], "verify-hopf");
    }
}

#[test]
fn negative_admissibility_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = hopfcorr::presets::data_text("suq2", "presentation").unwrap();
    let mut file: hopfcorr::io::PresentationFile = serde_json::from_str(&text).unwrap();
    for g in ["c", "c*"] {
        file.alpha.insert(g.into(), "-1".into());
    }
    let path = dir.path().join("signed.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, rep) = hopfcorr(&["check-admissible", "--presentation", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let text = rep.to_string();
    assert!(text.contains("1+(-1) = 0"), "{text}");
}

#[test]
fn from_cocycle_writes_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.json");
    let (code, _) =
        hopfcorr(&["from-cocycle", "--preset", "c-z", "--cocycle", "eta-n", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let artifact = dir.path().join("l.artifact.json");
    let text = std::fs::read_to_string(&artifact).unwrap();
    assert_eq!(text.trim_end(), hopfcorr::presets::data_text("c-z", "gaussian").unwrap().trim_end());
    // The written functional feeds back into the round trip.
    let (code, rep) =
        hopfcorr(&["roundtrip", "--preset", "c-z", "--functional", artifact.to_str().unwrap(), "--cutoff", "4"]);
    assert_eq!(code, 0, "{rep}");
}

#[test]
fn symmetrize_then_qbeta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sym.json");
    let (code, _) =
        hopfcorr(&["symmetrize", "--preset", "suq2", "--cocycle", "generator", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let sym = dir.path().join("sym.artifact.json");
    let (code, rep) = hopfcorr(&["qbeta", "--preset", "suq2", "--cocycle", sym.to_str().unwrap()]);
    assert_eq!(code, 0, "{rep}");
    let (code, _) = hopfcorr(&["pinch", "--preset", "suq2", "--cocycle", sym.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, _) = hopfcorr(&["tau-transfer", "--preset", "suq2", "--cocycle", sym.to_str().unwrap(), "--t", "0", "--s", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn proper_reports_exceptional_set() {
    let (code, rep) = hopfcorr(&["proper", "--preset", "c-f2", "--cocycle", "tree", "--M", "3"]);
    assert_eq!(code, 0);
    assert_eq!(rep["values"]["exceptional_count"], 17);
    let (_, rep) = hopfcorr(&["proper", "--preset", "c-f2", "--cocycle", "tree", "--M", "3", "--horizon", "1"]);
    assert_eq!(rep["values"]["horizon"], 5);
}

#[test]
fn attempt_flags_non_real_cocycle() {
    let (code, rep) = hopfcorr(&["attempt", "--preset", "c-f2", "--cocycle", "complex"]);
    assert_eq!(code, 1);
    assert_eq!(rep["status"], "fail");
    let (code, _) = hopfcorr(&["attempt", "--preset", "c-z", "--cocycle", "eta-n"]);
    assert_eq!(code, 0);
}

#[test]
fn decompose_and_two_cocycle() {
    let (code, rep) = hopfcorr(&["decompose", "--preset", "c-z", "--cocycle", "eta-n"]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["values"]["dim_G"], 1);
    let (code, _) = hopfcorr(&["two-cocycle", "--preset", "u2", "--cocycle", "drift"]);
    assert_eq!(code, 0);
}

#[test]
fn float_backend_flag() {
    let (code, rep) = hopfcorr(&["from-functional", "--preset", "c-z", "--functional", "gaussian", "--backend", "float"]);
    assert_eq!(code, 0, "{rep}");
    assert_eq!(rep["provenance"]["backend"], "float");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hopfcorr(&["frobnicate"]).0, 2);
    assert_eq!(hopfcorr(&["verify-hopf", "--cutoff", "many"]).0, 2);
}

#[test]
fn missing_input_is_a_failing_report() {
    let (code, rep) = hopfcorr(&["qbeta", "--preset", "c-z"]);
    assert_eq!(code, 1);
    assert_eq!(rep["status"], "fail");
}
