//! End-to-end tests of the `zhuforge` binary: exit codes, report files,
//! schema diagnostics, determinism, and the golden fusion table.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn zf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zhuforge"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary should run")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process should exit normally")
}

fn out(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn err(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("file should exist"))
        .expect("file should be valid JSON")
}

/// Builds the standard fixture files into `dir` and returns their paths:
/// Heisenberg at 4 and 3, Virasoro(1/2) at 4, charged Fock modules at 3.
struct Fixtures {
    h4: PathBuf,
    h3: PathBuf,
    v4: PathBuf,
    f1: PathBuf,
    f0: PathBuf,
}

fn build_fixtures(dir: &Path) -> Fixtures {
    let fx = Fixtures {
        h4: dir.join("h4.json"),
        h3: dir.join("h3.json"),
        v4: dir.join("v4.json"),
        f1: dir.join("f1.json"),
        f0: dir.join("f0.json"),
    };
    for (kind, cutoff, extra, path) in [
        ("heisenberg", "4", None, &fx.h4),
        ("heisenberg", "3", None, &fx.h3),
        ("virasoro", "4", Some(("--c", "1/2")), &fx.v4),
    ] {
        let mut args = vec!["build", kind, "--cutoff", cutoff];
        if let Some((k, v)) = extra {
            args.extend([k, v]);
        }
        args.extend(["--out", path.to_str().unwrap()]);
        let o = zf(dir, &args);
        assert_eq!(code(&o), 0, "build {kind} failed: {}", err(&o));
    }
    for (lambda, path) in [("1", &fx.f1), ("0", &fx.f0)] {
        let o = zf(
            dir,
            &[
                "build",
                "fock",
                "--lambda",
                lambda,
                "--cutoff",
                "3",
                "--out",
                path.to_str().unwrap(),
            ],
        );
        assert_eq!(code(&o), 0, "build fock failed: {}", err(&o));
    }
    fx
}

/// Bumps the leading coefficient of the structure constant for the triple
/// (a, n, b) by +7, writing the corrupted file to `dst`.
fn corrupt_constant(src: &Path, dst: &Path, a: u64, n: i64, b: u64) {
    let mut v = read_json(src);
    let constants = v["constants"].as_array_mut().expect("constants array");
    let c = constants
        .iter_mut()
        .find(|c| c["a"] == a && c["n"] == n && c["b"] == b)
        .expect("requested constant should be stored");
    let coef = c["out"][0][1].as_str().expect("coefficient string").to_owned();
    let (num, den) = match coef.split_once('/') {
        Some((p, q)) => (p.to_owned(), Some(q.to_owned())),
        None => (coef, None),
    };
    let bumped = num.parse::<i64>().expect("integer numerator") + 7;
    let fresh = match den {
        Some(q) => format!("{bumped}/{q}"),
        None => bumped.to_string(),
    };
    c["out"][0][1] = serde_json::Value::String(fresh);
    std::fs::write(dst, serde_json::to_string(&v).unwrap()).unwrap();
}

#[test]
fn build_kinds_emit_the_expected_graded_dimensions() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let cases: [(&[&str], &str, Vec<u64>); 4] = [
        (
            &["build", "heisenberg", "--cutoff", "4", "--out", "h.json"],
            "h.json",
            vec![1, 1, 2, 3, 5],
        ),
        (
            &[
                "build", "virasoro", "--c", "1/2", "--cutoff", "4", "--out", "v.json",
            ],
            "v.json",
            vec![1, 0, 1, 1, 2],
        ),
        (
            &["build", "trivial", "--cutoff", "2", "--out", "t.json"],
            "t.json",
            vec![1, 0, 0],
        ),
        (
            &[
                "build", "fock", "--lambda", "1/2", "--cutoff", "3", "--out", "f.json",
            ],
            "f.json",
            vec![1, 1, 2, 3],
        ),
    ];
    for (args, file, want) in cases {
        let o = zf(dir, args);
        assert_eq!(code(&o), 0, "{args:?}: {}", err(&o));
        let v = read_json(&dir.join(file));
        let dims: Vec<u64> = v["dims"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| d.as_u64().unwrap())
            .collect();
        assert_eq!(dims, want, "wrong graded dimensions for {args:?}");
        if file == "f.json" {
            assert_eq!(v["top_level_dim"], 1, "charged Fock bottom level");
        }
    }
}

#[test]
fn build_rejects_bad_arguments_with_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let bad: [&[&str]; 3] = [
        &["build", "nosuchkind", "--cutoff", "3", "--out", "x.json"],
        &["build", "virasoro", "--c", "1/2", "--cutoff", "1", "--out", "x.json"],
        &["build", "fock", "--cutoff", "3", "--out", "x.json"],
    ];
    for args in bad {
        let o = zf(dir, args);
        assert_eq!(code(&o), 2, "{args:?} should exit 2, stderr: {}", err(&o));
    }
    let o = zf(dir, &["build", "nosuchkind", "--cutoff", "3", "--out", "x.json"]);
    assert!(
        err(&o).contains("heisenberg"),
        "unknown kind should list the available kinds: {}",
        err(&o)
    );
}

#[test]
fn verify_axioms_passes_and_writes_a_structured_report() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);
    let report = dir.join("report.json");
    let o = zf(
        dir,
        &[
            "verify",
            "axioms",
            "--voa",
            fx.h4.to_str().unwrap(),
            "--out",
            report.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    assert!(out(&o).contains("suite overall: PASS"));
    assert!(
        err(&o).contains("wall time:"),
        "wall time should go to stderr: {}",
        err(&o)
    );
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"check\""), "check reports use the `check` key");
    assert!(
        text.contains("\"strata_skipped\""),
        "skip counts use the `strata_skipped` key"
    );
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "axioms");
    assert!(
        v["parameters"].as_array().is_some_and(|p| !p.is_empty()),
        "report should embed its parameters"
    );
    assert!(!v["reports"].as_array().unwrap().is_empty());
}

#[test]
fn corrupted_structure_constant_is_detected_with_a_witness() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);
    let bad = dir.join("bad.json");
    corrupt_constant(&fx.h4, &bad, 0, -1, 3);
    let o = zf(dir, &["verify", "axioms", "--voa", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "corruption must yield exit 1: {}", err(&o));
    let text = out(&o);
    assert!(text.contains("FAIL"), "a check must fail: {text}");
    assert!(
        text.contains("lhs =") && text.contains("rhs ="),
        "failure must carry a rendered witness: {text}"
    );
}

#[test]
fn schema_violations_exit_two_and_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);

    let mut v = read_json(&fx.h4);
    v["dims"].as_array_mut().unwrap().pop();
    let short = dir.join("short.json");
    std::fs::write(&short, serde_json::to_string(&v).unwrap()).unwrap();
    let o = zf(dir, &["verify", "axioms", "--voa", short.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("dims"), "must name the field: {}", err(&o));

    let mut v = read_json(&fx.h4);
    v["vacuum"] = serde_json::json!(999);
    let badvac = dir.join("badvac.json");
    std::fs::write(&badvac, serde_json::to_string(&v).unwrap()).unwrap();
    let o = zf(dir, &["verify", "axioms", "--voa", badvac.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("vacuum"), "must name the field: {}", err(&o));
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);

    let o = zf(dir, &["verify", "nosuchsuite", "--voa", fx.h4.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(
        err(&o).contains("axioms") && err(&o).contains("fusion-mult"),
        "unknown suite should list the tokens: {}",
        err(&o)
    );

    let o = zf(dir, &["verify", "axioms"]);
    assert_eq!(code(&o), 2, "missing --voa should exit 2");

    let o = zf(dir, &["--definitely-not-a-flag"]);
    assert_eq!(code(&o), 2, "argument parse errors should exit 2");
}

#[test]
fn all_skipped_runs_exit_three() {
    let tmp = tempfile::tempdir().unwrap();
    let o = zf(tmp.path(), &["verify", "lemica", "--trials", "0"]);
    assert_eq!(code(&o), 3, "stderr: {}", err(&o));
    assert!(out(&o).contains("suite overall: SKIP"));
}

#[test]
fn cutoff_policy_retruncates_algebras_but_never_modules() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);

    // Downward retruncation of a stored algebra input is allowed.
    let o = zf(
        dir,
        &["verify", "axioms", "--voa", fx.h4.to_str().unwrap(), "--cutoff", "3"],
    );
    assert_eq!(code(&o), 0, "downward retruncation: {}", err(&o));

    // Upward is impossible: the stored table does not contain the data.
    let o = zf(
        dir,
        &["verify", "axioms", "--voa", fx.h4.to_str().unwrap(), "--cutoff", "5"],
    );
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("rebuild"), "stderr: {}", err(&o));

    // Module truncations are tied to their stored action table: a cutoff
    // flag that disagrees with the stored value is an error, not a rebuild.
    let f_at_4 = dir.join("f_at_4.json");
    let o = zf(
        dir,
        &[
            "build", "fock", "--lambda", "1/2", "--cutoff", "4", "--out",
            f_at_4.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0);
    let o = zf(
        dir,
        &[
            "verify",
            "zhu-top",
            "--voa",
            fx.h4.to_str().unwrap(),
            "--module",
            f_at_4.to_str().unwrap(),
            "--cutoff",
            "3",
        ],
    );
    assert_eq!(code(&o), 2, "module cutoff mismatch must be rejected");
    assert!(err(&o).contains("rebuild"), "stderr: {}", err(&o));
}

#[test]
fn fusion_demo_emits_the_golden_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let o = zf(tmp.path(), &["fusion", "--format", "csv"]);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let want = "\
i,j,S0,S1
0,0,1,0
0,1,0,0
1,0,0,0
1,1,0,1
all entries zero or one: true
";
    assert_eq!(out(&o), want);
}

#[test]
fn fusion_accepts_sector_files_and_rejects_corrupted_actions() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let alg = dir.join("qq.json");
    std::fs::write(
        &alg,
        r#"{"dim":2,"mult":[{"i":0,"j":0,"out":[[0,"1"]]},{"i":1,"j":1,"out":[[1,"1"]]}],"identity":[[0,"1"],[1,"1"]]}"#,
    )
    .unwrap();
    let s0 = dir.join("s0.json");
    let s1 = dir.join("s1.json");
    std::fs::write(&s0, r#"{"action":[[["1"]],[["0"]]]}"#).unwrap();
    std::fs::write(&s1, r#"{"action":[[["0"]],[["1"]]]}"#).unwrap();

    let o = zf(
        dir,
        &[
            "fusion", "--algebra", alg.to_str().unwrap(), "--sector",
            s0.to_str().unwrap(), "--sector", s1.to_str().unwrap(), "--format", "csv",
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    assert!(text.starts_with("i,j,s0,s1\n"), "labels from file stems: {text}");
    assert!(text.contains("0,0,1,0"), "delta table expected: {text}");
    assert!(text.ends_with("all entries zero or one: true\n"));

    // A corrupted action matrix violates the module axioms and is rejected
    // at load time with the violated law named.
    let bad = dir.join("s0_bad.json");
    std::fs::write(&bad, r#"{"action":[[["1"]],[["5"]]]}"#).unwrap();
    let o = zf(
        dir,
        &[
            "fusion", "--algebra", alg.to_str().unwrap(), "--sector",
            bad.to_str().unwrap(), "--sector", s1.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 2);
    assert!(err(&o).contains("identity"), "stderr: {}", err(&o));
}

#[test]
fn verify_teh_alias_matches_the_long_form() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);
    let long_args = [
        "verify",
        "teh",
        "--left",
        fx.h3.to_str().unwrap(),
        "--right",
        fx.h3.to_str().unwrap(),
        "--left-module",
        fx.f1.to_str().unwrap(),
        "--right-module",
        fx.f0.to_str().unwrap(),
    ];
    let long = zf(dir, &long_args);
    let mut alias_args: Vec<&str> = long_args.to_vec();
    alias_args.remove(1); // drop the suite token
    alias_args[0] = "verify-teh";
    let alias = zf(dir, &alias_args);
    assert_eq!(code(&long), 0, "stderr: {}", err(&long));
    assert_eq!(code(&alias), 0, "stderr: {}", err(&alias));
    assert_eq!(out(&long), out(&alias), "alias must run the same suite");
    assert!(out(&long).contains("(m1 . a) (x) (b . m2)"),
        "the uncertified-pairing note must be present");
}

#[test]
fn reports_are_deterministic_for_a_fixed_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let r1 = dir.join("r1.json");
    let r2 = dir.join("r2.json");
    for r in [&r1, &r2] {
        let o = zf(
            dir,
            &[
                "verify", "lemica", "--trials", "5", "--seed", "9", "--out",
                r.to_str().unwrap(),
            ],
        );
        assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    }
    assert_eq!(
        std::fs::read(&r1).unwrap(),
        std::fs::read(&r2).unwrap(),
        "same seed must give byte-identical reports"
    );
}

#[test]
fn tensor_product_file_roundtrips_and_verifies() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);
    let t = dir.join("t.json");
    let o = zf(
        dir,
        &[
            "tensor",
            "--left",
            fx.h3.to_str().unwrap(),
            "--right",
            fx.h3.to_str().unwrap(),
            "--out",
            t.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let v = read_json(&t);
    let dims: Vec<u64> = v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 2, 5, 10], "graded dims convolve");

    // The emitted product is itself a valid input.
    let o = zf(dir, &["verify", "axioms", "--voa", t.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "product VOA fails axioms: {}", err(&o));

    // In-place verification without writing a file.
    let o = zf(
        dir,
        &[
            "tensor",
            "--left",
            fx.h3.to_str().unwrap(),
            "--right",
            fx.h3.to_str().unwrap(),
            "--verify",
            "izo,ten,kvoc",
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    assert!(out(&o).contains("suite overall: PASS"));
}

#[test]
fn zhu_compute_emits_a_presentation_with_convergence() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);
    let z = dir.join("z.json");
    let o = zf(
        dir,
        &[
            "zhu",
            "compute",
            "--voa",
            fx.h4.to_str().unwrap(),
            "--out",
            z.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let v = read_json(&z);
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    assert_eq!(v["identity"], 0);
    // The conformal vector projects to half a basis class here, so it is
    // recorded through its coordinates rather than as a bare class index.
    assert!(v["omega"].is_null());
    assert_eq!(v["omega_coords"].as_array().unwrap().len(), 1);
    assert_eq!(v["convergence"]["stable"], true);
    assert!(
        v["mult_table"]
            .as_array()
            .unwrap()
            .iter()
            .any(|e| e["out"].is_null()),
        "out-of-window products are recorded as null, not fabricated"
    );
}

#[test]
fn bimodule_command_reports_the_quotient_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let fx = build_fixtures(dir);
    let b = dir.join("b.json");
    let o = zf(
        dir,
        &[
            "bimodule",
            "--voa",
            fx.h3.to_str().unwrap(),
            "--module",
            fx.f1.to_str().unwrap(),
            "--out",
            b.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    assert!(out(&o).contains("overall: PASS"));
    let v = read_json(&b);
    assert_eq!(v["dim"], 4, "charged Fock quotient dimension at level 3");
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    let left = v["left"].as_array().unwrap();
    let right = v["right"].as_array().unwrap();
    assert_eq!(left.len(), right.len());
    assert_eq!(left.len() as u64, 4 * v["algebra_dim"].as_u64().unwrap());
}
