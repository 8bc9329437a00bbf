use std::process::Command;

fn spinorlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_spinorlab"))
        .args(args)
        .env_remove("SPINORLAB_SEED")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("run spinorlab")
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(spinorlab(&["rep-table", "--bogus"]).status.code(), Some(2));
    assert_eq!(spinorlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(spinorlab(&["bracket", "--sig", "2;3"]).status.code(), Some(2));
}

#[test]
fn rep_table_csv_has_spin23_row() {
    let out = spinorlab(&["rep-table", "--max-n", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,n,s_mod8,N,commutant"));
    assert!(lines.any(|l| l == "2,3,5,7,4,R"), "{text}");
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let args = ["bound-search", "--sig", "2,3", "--trials", "40", "--seed", "11"];
    let a = spinorlab(&args);
    let b = spinorlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "spinor-lab/1");
    assert_eq!(v["command"], "bound-search");
    assert_eq!(v["threshold"], 3);
}

#[test]
fn seed_env_var_is_the_default() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_spinorlab"));
        c.args(["spin23", "--trials", "5"]).args(extra).env_remove("SPINORLAB_SEED");
        if let Some(s) = env {
            c.env("SPINORLAB_SEED", s);
        }
        c.output().unwrap().stdout
    };
    assert_eq!(run(Some("19"), &[]), run(None, &["--seed", "19"]));
}

#[test]
fn archived_witness_reverifies() {
    let out = spinorlab(&["spin45", "--verify", "../../witnesses/spin45_seed1.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["image_dim"], 4);
}

#[test]
fn model_verify_on_the_sphere() {
    let out = spinorlab(&["model-verify", "--cone", "3,0", "--lambda-sign", "auto", "--h", "1e-4", "--tol", "1e-6", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passing"], 4);
}
