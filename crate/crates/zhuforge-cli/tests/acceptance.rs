//! The acceptance suite: ten end-to-end criteria, each printed as one
//! pass/fail line. Criteria 1–6 and 10 drive the installed binary on files
//! it built itself; criteria 7–9 run the seeded associative-layer recipes.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use zhuforge_core::{
    check_tensor_interchange, conjugate_module, factor_tensor_module, tensor_algebra,
    tensor_module_pair, SidedPair, TrialGen,
};

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

fn build(dir: &Path, args: &[&str], file: &str) -> PathBuf {
    let path = dir.join(file);
    let mut full: Vec<&str> = vec!["build"];
    full.extend(args);
    let p = path.to_str().unwrap().to_owned();
    full.extend(["--out", &p]);
    let o = zf(dir, &full);
    assert_eq!(code(&o), 0, "build {args:?} failed: {}", err(&o));
    path
}

fn dims_of(path: &Path) -> Vec<u64> {
    read_json(path)["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

/// Bumps the leading coefficient of the structure constant for the triple
/// (a, n, b) by +7, writing the corrupted copy to `dst`.
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

fn assert_budget(what: &str, took: Duration, budget: Duration) {
    assert!(
        took < budget,
        "{what} took {took:?}, over the {budget:?} budget"
    );
}

#[test]
fn criterion_01_axiom_suite_at_cutoff_six() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h6 = build(dir, &["heisenberg", "--cutoff", "6"], "h6.json");
    let v6 = build(dir, &["virasoro", "--c", "1/2", "--cutoff", "6"], "v6.json");
    assert_eq!(dims_of(&h6), vec![1, 1, 2, 3, 5, 7, 11]);
    assert_eq!(dims_of(&v6), vec![1, 0, 1, 1, 2, 2, 4]);

    let mut times = Vec::new();
    for voa in [&h6, &v6] {
        let t0 = Instant::now();
        let o = zf(
            dir,
            &[
                "verify",
                "axioms",
                "--voa",
                voa.to_str().unwrap(),
                "--assoc-bound",
                "10",
                "--comm-bound",
                "10",
            ],
        );
        let took = t0.elapsed();
        assert_eq!(code(&o), 0, "axioms failed on {voa:?}: {}", err(&o));
        assert!(!out(&o).contains("FAIL"), "zero failures required");
        assert_budget("axiom suite", took, Duration::from_secs(30));
        times.push(took);
    }
    println!(
        "criterion 1: PASS — free-boson and c=1/2 cutoff-6 axioms at bounds 10, \
         graded dims as expected ({:.2?} and {:.2?})",
        times[0], times[1]
    );
}

#[test]
fn criterion_02_higher_products_lie_in_the_relation_span() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h5 = build(dir, &["heisenberg", "--cutoff", "5"], "h5.json");
    let v6 = build(dir, &["virasoro", "--c", "1/2", "--cutoff", "6"], "v6.json");
    let t0 = Instant::now();
    for voa in [&h5, &v6] {
        let o = zf(dir, &["verify", "prop41", "--voa", voa.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "membership failed on {voa:?}: {}", err(&o));
        let text = out(&o);
        assert!(!text.contains("FAIL"), "zero failures required: {text}");
        assert!(
            text.contains("out-of-window"),
            "skipped strata must be reported: {text}"
        );
    }
    let took = t0.elapsed();
    assert_budget("membership suite", took, Duration::from_secs(60));
    println!(
        "criterion 2: PASS — deeper contraction products lie in the relation span \
         for free boson at 5 and c=1/2 at 6, skips reported ({took:.2?})"
    );
}

#[test]
fn criterion_03_tensor_quotient_identification_is_exact() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h4 = build(dir, &["heisenberg", "--cutoff", "4"], "h4.json");
    let v4 = build(dir, &["virasoro", "--c", "1/2", "--cutoff", "4"], "v4.json");
    let t0 = Instant::now();
    let o = zf(
        dir,
        &[
            "verify",
            "izo",
            "--left",
            h4.to_str().unwrap(),
            "--right",
            v4.to_str().unwrap(),
        ],
    );
    let took = t0.elapsed();
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    for check in [
        "[PASS] the unit class maps to the pair of unit classes",
        "[PASS] multiplicative on in-window class pairs",
        "[PASS] bijective onto the in-window class pairs",
    ] {
        assert!(text.contains(check), "missing: {check}\n{text}");
    }
    assert_budget("identification suite", took, Duration::from_secs(120));
    println!(
        "criterion 3: PASS — quotient of the cutoff-4 product identifies with the \
         pair of factor quotients, unital/multiplicative/bijective exactly ({took:.2?})"
    );
}

#[test]
fn criterion_04_span_equalities_hold_in_both_directions() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h4 = build(dir, &["heisenberg", "--cutoff", "4"], "h4.json");
    let v4 = build(dir, &["virasoro", "--c", "1/2", "--cutoff", "4"], "v4.json");
    let pair = [
        "--left",
        h4.to_str().unwrap(),
        "--right",
        v4.to_str().unwrap(),
    ];

    let mut args = vec!["verify", "ten"];
    args.extend(pair);
    let o = zf(dir, &args);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    assert!(!out(&o).contains("FAIL"));

    let mut args = vec!["verify", "kvoc"];
    args.extend(pair);
    let o = zf(dir, &args);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    for check in [
        "[PASS] embedded factor relations lie in the tensor relation span",
        "[PASS] tensor relations lie in the embedded factor span",
    ] {
        assert!(text.contains(check), "missing: {check}\n{text}");
    }
    println!(
        "criterion 4: PASS — componentwise products and the relation-span equality \
         verified in both directions by mutual membership on the cutoff-4 pair"
    );
}

#[test]
fn criterion_05_zero_modes_compose_on_the_bottom_levels() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h4 = build(dir, &["heisenberg", "--cutoff", "4"], "h4.json");
    let mut args: Vec<String> = vec![
        "verify".into(),
        "zhu-top".into(),
        "--voa".into(),
        h4.to_str().unwrap().into(),
    ];
    for (lambda, file) in [("0", "f0.json"), ("1", "f1.json"), ("1/2", "fhalf.json")] {
        let m = build(dir, &["fock", "--lambda", lambda, "--cutoff", "4"], file);
        args.push("--module".into());
        args.push(m.to_str().unwrap().into());
    }
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = zf(dir, &argv);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    // Four module sections: the adjoint module plus the three charged ones.
    for check in [
        "[PASS] zero modes compose like the associative product",
        "[PASS] relation-span elements act by zero on the bottom level",
    ] {
        let hits = text.matches(check).count();
        assert_eq!(hits, 4, "expected 4 sections with `{check}`:\n{text}");
    }
    assert!(text.contains("(adjoint)"), "adjoint section present");
    println!(
        "criterion 5: PASS — zero modes compose like the class product and relation \
         spans act by zero on the adjoint and three charged bottom levels at cutoff 4"
    );
}

#[test]
fn criterion_06_module_quotient_decomposes_over_the_pair() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h3 = build(dir, &["heisenberg", "--cutoff", "3"], "h3.json");
    let f1 = build(dir, &["fock", "--lambda", "1", "--cutoff", "3"], "f1.json");
    let f0 = build(dir, &["fock", "--lambda", "0", "--cutoff", "3"], "f0.json");
    let o = zf(
        dir,
        &[
            "verify",
            "teh",
            "--left",
            h3.to_str().unwrap(),
            "--right",
            h3.to_str().unwrap(),
            "--left-module",
            f1.to_str().unwrap(),
            "--right-module",
            f0.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    for check in [
        "[PASS] embedded factor relations lie in the tensor relation span",
        "[PASS] tensor relations lie in the embedded factor span",
        "[PASS] left action of pure tensors factors componentwise in the quotient",
        "[PASS] right action of pure tensors factors componentwise in the quotient",
        "[PASS] assembled identification intertwines the stored tables",
        "[PASS] bijective onto the in-window class pairs",
    ] {
        assert!(text.contains(check), "missing: {check}\n{text}");
    }
    println!(
        "criterion 6: PASS — relation-span decomposition, both action identities, and \
         the quotient-dimension bijection verified for the charged pair at cutoff 3"
    );
}

#[test]
fn criterion_07_factorization_recovers_tensor_factors() {
    let mut gen = TrialGen::new(20260819);
    let mut done = 0usize;
    while done < 50 {
        let a = gen.semisimple_algebra(4);
        let b = gen.semisimple_algebra(4);
        let sa = gen.simple_module(&a);
        let sb = gen.simple_module(&b);
        if sa.dim() * sb.dim() > 6 {
            continue;
        }
        let m = tensor_module_pair(&a.algebra, &sa, &b.algebra, &sb);
        let p = gen.invertible(m.dim());
        let opaque = conjugate_module(&tensor_algebra(&a.algebra, &b.algebra), &m, &p);
        let (f1, f2, eval) = factor_tensor_module(&a.algebra, &b.algebra, &opaque)
            .unwrap_or_else(|e| panic!("instance {done} failed to factor: {e}"));
        assert_eq!(
            (f1.dim(), f2.dim()),
            (sa.dim(), sb.dim()),
            "instance {done} recovered wrong factor dimensions"
        );
        assert!(
            eval.inverse().is_some(),
            "instance {done} evaluation map is singular"
        );
        done += 1;
    }
    println!(
        "criterion 7: PASS — 50/50 seeded semisimple instances factor back into \
         their tensor factors with the exact dimensions and invertible evaluation"
    );
}

#[test]
fn criterion_08_interchange_dimension_equality_on_100_trials() {
    let tmp = tempfile::tempdir().unwrap();
    let o = zf(tmp.path(), &["verify", "lemica", "--trials", "100"]);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    assert!(
        text.contains("checked 100"),
        "all hundred trials must be decided: {text}"
    );
    assert!(!text.contains("FAIL"));

    // The same hundred trials through the library, so the equality is seen
    // to be exact dimension arithmetic rather than a report artifact.
    let mut gen = TrialGen::new(0);
    for trial in 0..100 {
        let a = gen.algebra(4);
        let b = gen.algebra(4);
        let mr = gen.right_module(&a, 3);
        let ml = gen.left_module(&a, 3);
        let nr = gen.right_module(&b, 3);
        let nl = gen.left_module(&b, 3);
        let rep = check_tensor_interchange(
            &SidedPair {
                algebra: &a.algebra,
                right: &mr,
                left: &ml,
            },
            &SidedPair {
                algebra: &b.algebra,
                right: &nr,
                left: &nl,
            },
        );
        assert!(rep.passed(), "interchange trial {trial} failed");
    }
    println!(
        "criterion 8: PASS — the mixed tensor interchange dimension equality held \
         exactly on 100 seeded trials, via the command line and the library"
    );
}

#[test]
fn criterion_09_fusion_dimensions_multiply() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let o = zf(dir, &["verify", "fusion-mult", "--trials", "25"]);
    assert_eq!(code(&o), 0, "stderr: {}", err(&o));
    let text = out(&o);
    for check in [
        "[PASS] the two computation forms agree on seeded instances",
        "[PASS] multiplicative over the full two-sector table",
        "[PASS] zero-or-one tables stay zero-or-one under tensoring",
        "[PASS] fusion dimension of the tensor equals the product",
    ] {
        assert!(text.contains(check), "missing: {check}\n{text}");
    }

    // The golden two-sector table itself: a delta table, all entries 0 or 1.
    let o = zf(dir, &["fusion", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        out(&o),
        "i,j,S0,S1\n0,0,1,0\n0,1,0,0\n1,0,0,0\n1,1,0,1\nall entries zero or one: true\n"
    );
    println!(
        "criterion 9: PASS — both fusion-dimension forms agree, the full two-sector \
         table is multiplicative, and zero-or-one tables stay zero-or-one"
    );
}

#[test]
fn criterion_10_every_suite_detects_an_injected_fault() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let h4 = build(dir, &["heisenberg", "--cutoff", "4"], "h4.json");
    let h3 = build(dir, &["heisenberg", "--cutoff", "3"], "h3.json");
    let v4 = build(dir, &["virasoro", "--c", "1/2", "--cutoff", "4"], "v4.json");
    let f1 = build(dir, &["fock", "--lambda", "1", "--cutoff", "3"], "f1.json");
    let f0 = build(dir, &["fock", "--lambda", "0", "--cutoff", "3"], "f0.json");
    let fh4 = build(dir, &["fock", "--lambda", "1/2", "--cutoff", "4"], "fh4.json");

    let bad_voa = dir.join("bad_voa.json");
    let bad_mod = dir.join("bad_mod.json");
    let h4s = h4.to_str().unwrap();
    let h3s = h3.to_str().unwrap();
    let v4s = v4.to_str().unwrap();
    let bvs = bad_voa.to_str().unwrap().to_owned();
    let bms = bad_mod.to_str().unwrap().to_owned();

    // One corrupted structure constant per suite, chosen so the corruption
    // lands inside what that suite certifies; each must exit 1 and carry a
    // rendered witness.
    struct Injection<'a> {
        suite: &'a str,
        source: &'a Path,
        constant: (u64, i64, u64),
        args: Vec<&'a str>,
    }
    let cases = [
        Injection {
            suite: "axioms",
            source: &h4,
            constant: (0, -1, 3),
            args: vec!["verify", "axioms", "--voa", &bvs],
        },
        Injection {
            suite: "prop41",
            source: &h4,
            constant: (1, -2, 0),
            args: vec!["verify", "prop41", "--voa", &bvs],
        },
        Injection {
            suite: "izo",
            source: &h4,
            constant: (1, -1, 1),
            args: vec!["verify", "izo", "--left", &bvs, "--right", v4s],
        },
        Injection {
            suite: "ten",
            source: &h4,
            constant: (0, -1, 0),
            args: vec!["verify", "ten", "--left", &bvs, "--right", v4s],
        },
        Injection {
            suite: "kvoc",
            source: &h4,
            constant: (1, -1, 1),
            args: vec!["verify", "kvoc", "--left", &bvs, "--right", v4s],
        },
        Injection {
            suite: "zhu-top",
            source: &fh4,
            constant: (0, -1, 0),
            args: vec!["verify", "zhu-top", "--voa", h4s, "--module", &bms],
        },
        Injection {
            suite: "teh",
            source: &f1,
            constant: (1, -1, 0),
            args: vec![
                "verify",
                "teh",
                "--left",
                h3s,
                "--right",
                h3s,
                "--left-module",
                &bms,
                "--right-module",
                f0.to_str().unwrap(),
            ],
        },
    ];
    for case in &cases {
        let dst = if case.args.contains(&bvs.as_str()) {
            &bad_voa
        } else {
            &bad_mod
        };
        let (a, n, b) = case.constant;
        corrupt_constant(case.source, dst, a, n, b);
        let o = zf(dir, &case.args);
        assert_eq!(
            code(&o),
            1,
            "suite {} must fail on the corrupted input, got stdout:\n{}\nstderr:\n{}",
            case.suite,
            out(&o),
            err(&o)
        );
        let text = out(&o);
        assert!(
            text.contains("FAIL") && text.contains("lhs =") && text.contains("rhs ="),
            "suite {} must carry a rendered witness:\n{text}",
            case.suite
        );
    }

    // The remaining suites generate their instances internally, so a
    // corrupted constant can only arrive through the associative-layer
    // files — where the loaders validate the algebra laws and reject the
    // corruption at the door, naming the violated law.
    let alg = dir.join("qq.json");
    std::fs::write(
        &alg,
        r#"{"dim":2,"mult":[{"i":0,"j":0,"out":[[0,"1"]]},{"i":1,"j":1,"out":[[1,"2"]]}],"identity":[[0,"1"],[1,"1"]]}"#,
    )
    .unwrap();
    let o = zf(dir, &["fusion", "--algebra", alg.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "corrupted algebra constants must be rejected");
    assert!(
        err(&o).contains("identity") || err(&o).contains("associativity"),
        "the violated law must be named: {}",
        err(&o)
    );

    println!(
        "criterion 10: PASS — all seven file-driven suites exit 1 with a witness on \
         a single corrupted constant; the associative-layer loaders reject corrupted \
         constants at validation, so the seeded suites cannot ingest them"
    );
}
