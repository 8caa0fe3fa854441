//! Implementations of the verification suites behind `zhuforge verify`.
//!
//! Each suite returns a [`SuiteReport`] whose parameters record everything
//! needed to reproduce the run (cutoffs, bounds, seeds), so no claim in an
//! emitted report is ever cutoff-free. Suites never print; rendering and
//! exit-code mapping live in the caller.

use crate::fusion;
use crate::io::CliResult;
use zhuforge_core::{
    adjoint_module, build_fock, build_heisenberg, build_virasoro, check_axioms,
    check_bimodule_invariants, check_factor_products, check_fusion_multiplicativity,
    check_higher_products_in_o_span, check_module, check_module_tensor_decomposition,
    check_quotient_tensor_factorization, check_relation_span_decomposition,
    check_tensor_interchange, check_zhu_invariants, check_zhu_top_level, convergence_report,
    fusion_dim, tensor_voa, zhu_algebra, Bimod, CheckBounds, CheckReport, FusionInput, Scalar,
    SidedPair, SuiteReport, TrialGen, TruncatedModule, TruncatedVoa, VerificationReport,
};

fn param_bounds(suite: &mut SuiteReport, bounds: &CheckBounds) {
    suite.param("assoc_bound", bounds.assoc_bound);
    suite.param("comm_bound", bounds.comm_bound);
}

/// Axiom suite for one algebra and optionally one module over it.
pub fn suite_axioms(
    voa: &TruncatedVoa,
    module: Option<&TruncatedModule>,
    bounds: &CheckBounds,
) -> SuiteReport {
    let mut suite = SuiteReport::new("axioms");
    suite.param("subject", voa.name());
    suite.param("cutoff", voa.cutoff());
    param_bounds(&mut suite, bounds);
    suite.reports.push(check_axioms(voa, bounds));
    if let Some(m) = module {
        suite.param("module", m.name());
        suite.reports.push(check_module(voa, m, bounds));
    }
    suite
}

/// Membership of all higher contraction products in the relation span.
pub fn suite_prop41(voa: &TruncatedVoa) -> SuiteReport {
    let mut suite = SuiteReport::new("prop41");
    suite.param("subject", voa.name());
    suite.param("cutoff", voa.cutoff());
    let mut rep = VerificationReport::new(format!(
        "higher contraction products of {} lie in the relation span",
        voa.name()
    ));
    rep.push(check_higher_products_in_o_span(voa));
    suite.reports.push(rep);
    suite
}

/// Quotient-algebra structure: identities, centrality, translation classes,
/// and the top-level actions of the supplied modules.
pub fn suite_zhu_top(voa: &TruncatedVoa, modules: &[TruncatedModule]) -> CliResult<SuiteReport> {
    let mut suite = SuiteReport::new("zhu-top");
    suite.param("subject", voa.name());
    suite.param("cutoff", voa.cutoff());
    let pres = zhu_algebra(voa)?;
    suite.param("quotient_dim", pres.dim());
    suite.reports.push(check_zhu_invariants(voa, &pres));
    for m in modules {
        let (rep, _) = check_zhu_top_level(voa, &pres, m)?;
        suite.reports.push(rep);
    }
    Ok(suite)
}

fn tensor_pair_suite(name: &str, left: &TruncatedVoa, right: &TruncatedVoa) -> CliResult<(SuiteReport, zhuforge_core::TensorVoa)> {
    let tv = tensor_voa(left, right)?;
    let mut suite = SuiteReport::new(name);
    suite.param("left", left.name());
    suite.param("right", right.name());
    suite.param("cutoff", tv.cutoff());
    Ok((suite, tv))
}

/// The quotient of the tensor algebra against the pair of factor quotients:
/// unital, multiplicative, bijective on the window.
pub fn suite_izo(left: &TruncatedVoa, right: &TruncatedVoa) -> CliResult<SuiteReport> {
    let (mut suite, tv) = tensor_pair_suite("izo", left, right)?;
    suite.reports.push(check_quotient_tensor_factorization(&tv)?);
    Ok(suite)
}

/// Componentwise factorization of the residue products on embedded factors.
pub fn suite_ten(left: &TruncatedVoa, right: &TruncatedVoa) -> CliResult<SuiteReport> {
    let (mut suite, tv) = tensor_pair_suite("ten", left, right)?;
    suite.reports.push(check_factor_products(&tv));
    Ok(suite)
}

/// Relation-span decomposition of the tensor algebra, both directions.
pub fn suite_kvoc(left: &TruncatedVoa, right: &TruncatedVoa) -> CliResult<SuiteReport> {
    let (mut suite, tv) = tensor_pair_suite("kvoc", left, right)?;
    suite.reports.push(check_relation_span_decomposition(&tv)?);
    Ok(suite)
}

/// Tensor decomposition of module quotients, including both action
/// identities and the assembled identification.
pub fn suite_teh(
    left: &TruncatedVoa,
    right: &TruncatedVoa,
    left_module: &TruncatedModule,
    right_module: &TruncatedModule,
) -> CliResult<SuiteReport> {
    let tv = tensor_voa(left, right)?;
    let mut suite = SuiteReport::new("teh");
    suite.param("left", left.name());
    suite.param("right", right.name());
    suite.param("left_module", left_module.name());
    suite.param("right_module", right_module.name());
    suite.param("cutoff", tv.cutoff());
    suite
        .reports
        .push(check_module_tensor_decomposition(&tv, left_module, right_module)?);
    Ok(suite)
}

/// Two-sided module laws for the quotient of one module.
pub fn suite_bimodule_laws(
    voa: &TruncatedVoa,
    module: &TruncatedModule,
) -> CliResult<(SuiteReport, zhuforge_core::ZhuPresentation, zhuforge_core::ZhuBimodule)> {
    let mut suite = SuiteReport::new("bimodule");
    suite.param("subject", voa.name());
    suite.param("module", module.name());
    suite.param("cutoff", module.cutoff());
    let pres = zhu_algebra(voa)?;
    let bim = zhuforge_core::build_bimodule(voa, &pres, module)?;
    suite.param("quotient_dim", bim.dim());
    suite
        .reports
        .push(check_bimodule_invariants(voa, &pres, module, &bim));
    Ok((suite, pres, bim))
}

/// Seeded trials of the mixed tensor interchange dimension identity.
pub fn suite_lemica(seed: u64, trials: u32) -> SuiteReport {
    let mut suite = SuiteReport::new("lemica");
    suite.param("seed", seed);
    suite.param("trials", trials);
    let mut gen = TrialGen::new(seed);
    let mut rep =
        VerificationReport::new("mixed tensor interchange dimension equality on seeded instances");
    let mut check = CheckReport::new("interchange dimension equality");
    for trial in 0..trials {
        let a = gen.algebra(4);
        let b = gen.algebra(4);
        let mr = gen.right_module(&a, 3);
        let ml = gen.left_module(&a, 3);
        let nr = gen.right_module(&b, 3);
        let nl = gen.left_module(&b, 3);
        let r = check_tensor_interchange(
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
        check.checked_instances += r.checked_instances;
        check.skipped_instances += r.skipped_instances;
        for w in r.witnesses {
            check.add_witness(format!("trial {trial}: {}", w.site), w.lhs, w.rhs);
        }
    }
    check.finish();
    rep.push(check);
    suite.reports.push(rep);
    suite
}

/// Fusion dimensions: agreement of the two computation forms on seeded
/// inputs, multiplicativity over the full two-sector table, and preservation
/// of the zero-or-one property under tensoring.
pub fn suite_fusion_mult(seed: u64, trials: u32) -> CliResult<SuiteReport> {
    let mut suite = SuiteReport::new("fusion-mult");
    suite.param("seed", seed);
    suite.param("trials", trials);
    let mut rep = VerificationReport::new("fusion dimensions multiply under tensoring");

    // Every fusion dimension is computed in two independent forms that must
    // agree; exercising the call on seeded data makes that cross-check a
    // reported fact rather than a silent assumption.
    let mut forms = CheckReport::new("the two computation forms agree on seeded instances");
    let mut gen = TrialGen::new(seed);
    for trial in 0..trials {
        let a = gen.semisimple_algebra(4);
        let bim = Bimod::regular(&a.algebra);
        let m20 = gen.left_module(&a, 3);
        let m30 = gen.left_module(&a, 3);
        match fusion_dim(&a.algebra, &bim, &m20, &m30) {
            Ok(_) => forms.checked_instances += 1,
            Err(e) => forms.add_witness(
                format!("trial {trial}"),
                "agreement of the two computation forms".into(),
                e.to_string(),
            ),
        }
    }
    forms.finish();
    rep.push(forms);

    // Full sector table of the two-sector algebra, squared.
    let demo = fusion::two_sector_demo()?;
    let squared = fusion::tensor_fusion_data(&demo, &demo);
    let base = fusion::sector_table(&demo)?;
    let joint = fusion::sector_table(&squared)?;
    let n = demo.sectors.len();
    let mut mult = CheckReport::new("multiplicative over the full two-sector table");
    for i1 in 0..n {
        for j1 in 0..n {
            for k1 in 0..n {
                for i2 in 0..n {
                    for j2 in 0..n {
                        for k2 in 0..n {
                            let n1 = base.table[i1 * n + j1].dims[k1];
                            let n2 = base.table[i2 * n + j2].dims[k2];
                            let nt =
                                joint.table[(i1 * n + i2) * n * n + (j1 * n + j2)].dims[k1 * n + k2];
                            mult.checked_instances += 1;
                            if nt != n1 * n2 {
                                mult.add_witness(
                                    format!("triples ({i1},{j1},{k1}) x ({i2},{j2},{k2})"),
                                    format!("factor product {n1}*{n2}"),
                                    format!("tensor entry {nt}"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    mult.finish();
    rep.push(mult);

    let mut flag = CheckReport::new("zero-or-one tables stay zero-or-one under tensoring");
    flag.checked_instances += 1;
    if !(base.all_dims_zero_or_one && joint.all_dims_zero_or_one) {
        flag.add_witness(
            "two-sector table".into(),
            format!(
                "factor flag {}, tensor flag {}",
                base.all_dims_zero_or_one, joint.all_dims_zero_or_one
            ),
            "both tables flagged zero-or-one".into(),
        );
    }
    flag.finish();
    rep.push(flag);

    // The dedicated multiplicativity checker on one seeded semisimple pair.
    let a = gen.semisimple_algebra(3);
    let b = gen.semisimple_algebra(3);
    let (sa, sb) = (gen.simple_module(&a), gen.simple_module(&b));
    let (ta, tb) = (gen.simple_module(&a), gen.simple_module(&b));
    let one = FusionInput {
        algebra: &a.algebra,
        bimodule: &Bimod::regular(&a.algebra),
        left_top: &sa,
        right_top: &ta,
    };
    let two = FusionInput {
        algebra: &b.algebra,
        bimodule: &Bimod::regular(&b.algebra),
        left_top: &sb,
        right_top: &tb,
    };
    let dedicated = check_fusion_multiplicativity(&one, &two);
    for c in dedicated.checks {
        rep.push(c);
    }

    suite.reports.push(rep);
    Ok(suite)
}

/// The aggregate pipeline: builds the standard examples at the requested
/// cutoff and runs every structural suite on them in dependency order.
pub fn suite_main(cutoff: usize, seed: u64, bounds: &CheckBounds) -> CliResult<SuiteReport> {
    let mut suite = SuiteReport::new("main");
    suite.param("cutoff", cutoff);
    suite.param("seed", seed);
    param_bounds(&mut suite, bounds);

    let h = build_heisenberg(cutoff)?;
    let vir = build_virasoro(cutoff, Scalar::ratio(1, 2))?;

    suite.reports.push(check_axioms(&h, bounds));
    suite.reports.push(check_axioms(&vir, bounds));

    let mut prop = VerificationReport::new(format!(
        "higher contraction products of {} lie in the relation span",
        h.name()
    ));
    prop.push(check_higher_products_in_o_span(&h));
    suite.reports.push(prop);

    let tv = tensor_voa(&h, &vir)?;
    suite.reports.push(check_factor_products(&tv));
    suite.reports.push(check_relation_span_decomposition(&tv)?);
    suite.reports.push(check_quotient_tensor_factorization(&tv)?);

    let pres = zhu_algebra(&h)?;
    suite.reports.push(check_zhu_invariants(&h, &pres));
    let adj = adjoint_module(&h);
    let (rep, _) = check_zhu_top_level(&h, &pres, &adj)?;
    suite.reports.push(rep);
    let fock = build_fock(&h, Scalar::one(), cutoff)?;
    let (rep, _) = check_zhu_top_level(&h, &pres, &fock)?;
    suite.reports.push(rep);

    let mut conv = VerificationReport::new(format!(
        "quotient of {} is stable against the coarser cutoff",
        h.name()
    ));
    let c = convergence_report(&h, &pres)?;
    let mut stab = CheckReport::new("surviving classes and transported products agree");
    stab.checked_instances += 1 + c.table_agreements;
    for d in &c.table_disagreements {
        stab.add_witness("transported product".into(), d.clone(), "the finer product".into());
    }
    if c.surviving != c.coarse_dim {
        stab.add_witness(
            "class survival".into(),
            format!("{} of {} coarse classes survive", c.surviving, c.coarse_dim),
            "all coarse classes survive injectively".into(),
        );
    }
    stab.finish();
    for line in c.render() {
        conv.note(line);
    }
    conv.push(stab);
    suite.reports.push(conv);

    let teh_cut = cutoff.min(3);
    let h_small = build_heisenberg(teh_cut)?;
    let tv_hh = tensor_voa(&h_small, &h_small)?;
    let m1 = build_fock(&h_small, Scalar::one(), teh_cut)?;
    let m2 = build_fock(&h_small, Scalar::zero(), teh_cut)?;
    suite
        .reports
        .push(check_module_tensor_decomposition(&tv_hh, &m1, &m2)?);

    let lemica = suite_lemica(seed, 20);
    suite.reports.extend(lemica.reports);
    let fus = suite_fusion_mult(seed, 10)?;
    suite.reports.extend(fus.reports);

    Ok(suite)
}
