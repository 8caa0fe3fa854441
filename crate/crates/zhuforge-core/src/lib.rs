//! zhuforge-core: exact-arithmetic weight-truncated vertex algebras, their
//! associative quotients, bimodules and fusion-dimension computations.
//!
//! All arithmetic is over the rationals with no floating point anywhere, so
//! every check in the library is an exact identity test, not an approximation.

pub mod assoc;
pub mod bimodule;
pub mod checks;
pub mod error;
pub mod json;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod util;
pub mod voa;
pub mod zhu;

pub use assoc::{
    check_fusion_multiplicativity, check_tensor_interchange, conjugate_module, decompose,
    dual_right_module, factor_tensor_module, fusion_dim, hom_space, irreducible_submodule,
    is_semisimple, radical, rationality_witness, regular_module, simple_modules, tensor_algebra,
    tensor_module_pair, tensor_over_algebra, AlgModule, AssocAlgebra, Bimod, FusionInput,
    Isotypic, RationalityWitness, RightModule, SampledAlgebra, SidedPair, TrialGen,
};
pub use bimodule::{
    build_bimodule, check_bimodule_invariants, check_module_tensor_decomposition, circ_module,
    left_action, o_span_module, right_action, ZhuBimodule,
};
pub use checks::{check_axioms, check_module, CheckBounds};
pub use error::{Error, Result};
pub use json::{
    algebra_from_json, algebra_to_json, bimodule_output, matrices_from_json, matrices_to_json,
    module_from_json, module_to_json, voa_from_json, voa_to_json, zhu_output, ActionJson,
    AlgebraJson, BimoduleOutputJson, ConvergenceJson, FusionRowJson, FusionTableJson,
    IndexOrEntries, ModuleJson, VoaJson, ZhuOutputJson,
};
pub use linalg::{quotient_basis, Mat, QuotientMap, SparseVec, Subspace};
pub use oracle::{build_fock, build_heisenberg, build_trivial, build_virasoro, partitions};
pub use report::{CheckReport, CheckStatus, SuiteReport, VerificationReport, Witness};
pub use scalar::{binomial, binomial_i, sign, Scalar};
pub use tensor::{
    check_factor_products, check_quotient_tensor_factorization,
    check_relation_span_decomposition, tensor_module, tensor_voa, TensorModule, TensorVoa,
};
pub use voa::{
    adjoint_module, direct_sum, is_ideal, support_weights, GradedBasis, IdealStatus, ModeTable,
    TruncatedModule, TruncatedVoa, Windowed,
};
pub use zhu::{
    check_higher_products_in_o_span, check_zhu_invariants, check_zhu_top_level, circ, circ_m,
    convergence_report, o_span, star, top_level_action, zhu_algebra, ConvergenceReport,
    ZhuPresentation,
};
