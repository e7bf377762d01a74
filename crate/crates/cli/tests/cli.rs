//! End-to-end tests of the command-line interface: JSON shapes, exit
//! codes, and output determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dahakit"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(input) => {
            cmd.stdin(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn");
            child
                .stdin
                .as_mut()
                .unwrap()
                .write_all(input.as_bytes())
                .expect("write stdin");
            child.wait_with_output().expect("wait")
        }
        None => {
            cmd.stdin(Stdio::null());
            cmd.output().expect("run")
        }
    }
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

#[test]
fn rootsys_info_shape() {
    let out = run(&["rootsys", "info", "--type", "G", "--rank", "2"], None);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["h_dual"], 4);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["cartan_matrix"][0][1], -1);
    assert_eq!(v["cartan_matrix"][1][0], -3);
    for key in ["theta", "theta_dual", "rho", "killing_gram"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn rootsys_rejects_invalid_rank() {
    let out = run(&["rootsys", "info", "--type", "G", "--rank", "3"], None);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert!(v["error"].as_str().unwrap().contains("G3"));
}

#[test]
fn wext_mul_and_word() {
    // s_1 t^{a^vee} s_1 = t^{-a^vee}
    let s1 = serde_json::json!({"lambda": [0], "w_perm": [1, 0]});
    let t = serde_json::json!({"lambda": [1], "w_perm": [0, 1]});
    let input = serde_json::json!({"a": s1, "b": t}).to_string();
    let out = run(&["wext", "mul", "--type", "A", "--rank", "1"], Some(&input));
    assert!(out.status.success());
    let st = stdout_json(&out);
    let input = serde_json::json!({"a": st, "b": s1}).to_string();
    let out = run(&["wext", "mul", "--type", "A", "--rank", "1"], Some(&input));
    let v = stdout_json(&out);
    assert_eq!(v["lambda"][0], -1);
    assert_eq!(v["w_perm"], serde_json::json!([0, 1]));

    let input = serde_json::json!({"a": t}).to_string();
    let out = run(
        &["wext", "word", "--type", "A", "--rank", "1"],
        Some(&input),
    );
    let v = stdout_json(&out);
    assert_eq!(v["word"], serde_json::json!([1, 0]));
    assert_eq!(v["length"], 2);
    assert_eq!(v["omega"], 0);
}

#[test]
fn wext_act_requires_exactly_one_target() {
    let input = serde_json::json!({"a": {"lambda": [0], "w_perm": [0, 1]}}).to_string();
    let out = run(&["wext", "act", "--type", "A", "--rank", "1"], Some(&input));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn daha_nf_straightening_witness() {
    // alpha * s_1 normalizes to (s_1, -alpha) + 2u
    let input = serde_json::json!({
        "factors": [
            {"poly": [{"mono": {"1": 1}, "coeff": "1"}]},
            {"s": 1}
        ]
    })
    .to_string();
    let out = run(&["daha", "nf", "--type", "A", "--rank", "1"], Some(&input));
    assert!(out.status.success());
    let v = stdout_json(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    // and s_1 * alpha differs from it by exactly 2u
    let input = serde_json::json!({
        "factors": [
            {"s": 1},
            {"poly": [{"mono": {"1": 1}, "coeff": "1"}]}
        ]
    })
    .to_string();
    let out = run(&["daha", "nf", "--type", "A", "--rank", "1"], Some(&input));
    let v2 = stdout_json(&out);
    assert_eq!(v2["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn daha_specialize_drops_u() {
    let input = serde_json::json!({
        "a": [{
            "group": {"lambda": [0], "w_perm": [0, 1]},
            "poly": [
                {"mono": {"u": 1}, "coeff": "3"},
                {"mono": {"1": 2}, "coeff": "1/2"}
            ]
        }]
    })
    .to_string();
    let out = run(
        &["daha", "specialize", "--type", "A", "--rank", "1"],
        Some(&input),
    );
    let v = stdout_json(&out);
    let poly = v[0]["poly"].as_array().unwrap();
    assert_eq!(poly.len(), 1);
    assert_eq!(poly[0]["coeff"], "1/2");
}

#[test]
fn conv_mul_type_mismatch_is_an_error() {
    let unit = serde_json::json!({
        "P": [1], "Q": [1],
        "support": [{"rep": {"lambda": [0], "w_perm": [0, 1]}, "coeff": "1"}]
    });
    let input = serde_json::json!([unit, unit]).to_string();
    let out = run(
        &[
            "conv", "mul", "--type", "A", "--rank", "1", "--P", "1", "--Q", "0", "--R", "1",
        ],
        Some(&input),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = run(
        &[
            "conv", "mul", "--type", "A", "--rank", "1", "--P", "1", "--Q", "1", "--R", "1",
        ],
        Some(&input),
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["support"].as_array().unwrap().len(), 1);
}

#[test]
fn parahoric_list_counts() {
    let out = run(&["parahoric", "list", "--type", "A", "--rank", "2"], None);
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 7);
    let out = run(&["parahoric", "list", "--type", "C", "--rank", "2"], None);
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 7);
    // classical index is null outside types A, B, C
    let out = run(&["parahoric", "list", "--type", "G", "--rank", "2"], None);
    let v = stdout_json(&out);
    assert!(v[0]["classical_index"].is_null());
}

#[test]
fn verify_is_deterministic_and_timing_is_opt_in() {
    let args = [
        "verify", "--suite", "s0calib", "--types", "A1,A2", "--seed", "11",
    ];
    let a = run(&args, None);
    let b = run(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical reports for equal seeds");
    let v = stdout_json(&a);
    assert!(v.get("duration_ms").is_none());
    let mut with_timing = args.to_vec();
    with_timing.push("--timing");
    let c = run(&with_timing, None);
    let v = stdout_json(&c);
    assert!(v.get("duration_ms").is_some());
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = run(&["verify", "--suite", "bogus"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn daha_verify_oracle_passes() {
    let out = run(
        &[
            "daha", "verify", "--type", "A", "--rank", "1", "--oracle", "polyrep",
        ],
        None,
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
}
