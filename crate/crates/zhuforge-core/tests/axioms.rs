//! End-to-end axiom verification of the built-in constructions, plus
//! negative tests: a corrupted table must fail with an exact witness, and a
//! direct sum of algebras with different central charges must fail the
//! Virasoro check honestly.

use zhuforge_core::{
    adjoint_module, build_fock, build_heisenberg, build_trivial, build_virasoro, check_axioms,
    check_module, direct_sum, is_ideal, CheckBounds, CheckStatus, Scalar, SparseVec,
};

fn assert_all_pass(report: &zhuforge_core::VerificationReport) {
    for c in &report.checks {
        assert_eq!(
            c.status,
            CheckStatus::Pass,
            "check '{}' did not pass:\n{}",
            c.name,
            report.render_text()
        );
    }
}

#[test]
fn heisenberg_axioms_pass() {
    let voa = build_heisenberg(4).unwrap();
    let rep = check_axioms(&voa, &CheckBounds::for_cutoff(4));
    assert_all_pass(&rep);
    assert!(rep.passed());
}

#[test]
fn virasoro_axioms_pass() {
    let voa = build_virasoro(5, Scalar::ratio(1, 2)).unwrap();
    let rep = check_axioms(&voa, &CheckBounds::for_cutoff(5));
    assert_all_pass(&rep);
}

#[test]
fn trivial_axioms_vacuously_pass() {
    let voa = build_trivial(2).unwrap();
    let rep = check_axioms(&voa, &CheckBounds::for_cutoff(2));
    assert_eq!(rep.overall(), CheckStatus::Pass);
    // the conformal-vector-dependent checks are skipped with a note
    let translation = rep
        .checks
        .iter()
        .find(|c| c.name == "translation covariance")
        .unwrap();
    assert_eq!(translation.status, CheckStatus::Skipped);
    assert!(!translation.notes.is_empty());
    let virasoro = rep.checks.iter().find(|c| c.name == "Virasoro bracket").unwrap();
    assert_eq!(virasoro.status, CheckStatus::Skipped);
}

#[test]
fn direct_sum_same_central_charge_passes() {
    let v = build_virasoro(4, Scalar::ratio(1, 2)).unwrap();
    let s = direct_sum(&v, &v).unwrap();
    assert_eq!(
        s.dims(),
        v.dims().iter().map(|d| 2 * d).collect::<Vec<_>>().as_slice()
    );
    // the vacuum and conformal vector are genuine two-term sums
    assert_eq!(s.vacuum().support_len(), 2);
    assert_eq!(s.omega().unwrap().support_len(), 2);
    let rep = check_axioms(&s, &CheckBounds::for_cutoff(4));
    assert_all_pass(&rep);
}

#[test]
fn direct_sum_mismatched_central_charges_fails_honestly() {
    let v1 = build_virasoro(4, Scalar::ratio(1, 2)).unwrap();
    let v2 = build_virasoro(4, Scalar::from_int(2)).unwrap();
    let s = direct_sum(&v1, &v2).unwrap();
    assert!(s.notes().iter().any(|n| n.contains("central charges")));
    let rep = check_axioms(&s, &CheckBounds::for_cutoff(4));
    let vir = rep.checks.iter().find(|c| c.name == "Virasoro bracket").unwrap();
    assert_eq!(vir.status, CheckStatus::Fail);
    assert!(!vir.witnesses.is_empty());
    assert_eq!(rep.overall(), CheckStatus::Fail);
}

#[test]
fn fock_module_axioms_pass() {
    let voa = build_heisenberg(3).unwrap();
    let module = build_fock(&voa, Scalar::from_int(2), 3).unwrap();
    assert_eq!(module.dims(), &[1, 1, 2, 3]);
    let rep = check_module(&voa, &module, &CheckBounds::for_cutoff(3));
    assert_all_pass(&rep);
}

#[test]
fn adjoint_module_axioms_pass() {
    let voa = build_virasoro(4, Scalar::from_int(1)).unwrap();
    let module = adjoint_module(&voa);
    let rep = check_module(&voa, &module, &CheckBounds::for_cutoff(4));
    assert_all_pass(&rep);
}

#[test]
fn corrupted_grading_is_caught_with_witness() {
    let mut voa = build_heisenberg(3).unwrap();
    // basis: 0=|0>, 1=a(-1)|0>, 2=a(-1)a(-1)|0>, 3=a(-2)|0>, ...
    // true value: (a(-1)a(-1)|0>)(1) a(-1)|0> = 2 a(-1)|0>; corrupt the slot
    let total = voa.total_dim();
    let alpha = SparseVec::unit(total, 1);
    let two_alpha = alpha.scaled(&Scalar::from_int(2));
    assert_eq!(
        voa.mode_basis(2, 1, 1),
        zhuforge_core::Windowed::In(&two_alpha)
    );
    voa.set_constant(2, 1, 1, alpha.scaled(&Scalar::from_int(3)))
        .unwrap();
    let rep = check_axioms(&voa, &CheckBounds::for_cutoff(3));
    assert_eq!(rep.overall(), CheckStatus::Fail);
    let grading = rep.checks.iter().find(|c| c.name == "grading").unwrap();
    assert_eq!(grading.status, CheckStatus::Fail);
    let w = &grading.witnesses[0];
    assert!(w.site.contains("omega(1)"), "witness site: {}", w.site);
}

#[test]
fn whole_algebra_is_an_ideal_of_itself_and_proper_graded_spans_are_detected() {
    let voa = build_heisenberg(3).unwrap();
    let total = voa.total_dim();
    // the full space is closed under every in-window mode
    let everything: Vec<SparseVec> = (0..total).map(|i| SparseVec::unit(total, i)).collect();
    let status = is_ideal(&voa, &everything);
    assert!(status.graded);
    assert!(status.closed_in_window);
    // the span of the vacuum alone is not an ideal: a(-1)|0> leaves it
    let status = is_ideal(&voa, &[SparseVec::unit(total, 0)]);
    assert!(status.graded);
    assert!(!status.closed_in_window);
    assert!(!status.witnesses.is_empty());
}

#[test]
fn truncation_is_consistent_with_rebuilding() {
    let big = build_heisenberg(4).unwrap();
    let small = big.truncate(3).unwrap();
    let rebuilt = build_heisenberg(3).unwrap();
    assert_eq!(small.dims(), rebuilt.dims());
    // identical tables: compare every stored mode
    for (a, n, b, v) in rebuilt.table().iter_nonzero() {
        assert_eq!(small.mode_basis(a, n, b), zhuforge_core::Windowed::In(v));
    }
    for (a, n, b, v) in small.table().iter_nonzero() {
        assert_eq!(rebuilt.mode_basis(a, n, b), zhuforge_core::Windowed::In(v));
    }
    let rep = check_axioms(&small, &CheckBounds::for_cutoff(3));
    assert_all_pass(&rep);
}
