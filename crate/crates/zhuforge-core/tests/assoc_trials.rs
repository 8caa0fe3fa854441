//! Seeded bulk trials for the associative layer: tensor factorization of
//! irreducible modules over tensor algebras, and the mixed-tensor
//! interchange dimension identity. These run the same instance families the
//! command-line suites use, at full volume.

use zhuforge_core::{
    check_tensor_interchange, conjugate_module, factor_tensor_module, tensor_algebra,
    tensor_module_pair, SidedPair, TrialGen,
};

#[test]
fn fifty_seeded_factorization_instances_recover_exact_factors() {
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
        assert!(eval.inverse().is_some(), "instance {done} evaluation map singular");
        done += 1;
    }
}

#[test]
fn hundred_seeded_interchange_trials_agree() {
    let mut gen = TrialGen::new(852081);
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
        assert!(rep.passed(), "interchange trial {trial} failed: {rep:?}");
    }
}
