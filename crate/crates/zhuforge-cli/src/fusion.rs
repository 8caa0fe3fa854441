//! Fusion-dimension sector tables over finite-dimensional algebras.
//!
//! A dataset is an algebra together with its sector modules and one
//! two-sided module per sector inducing the product; the table entry at
//! `(i, j, k)` is the dimension of the space of maps from the `i`-th
//! two-sided module tensored against sector `j` into sector `k`.

use zhuforge_core::{
    fusion_dim, simple_modules, tensor_algebra, tensor_module_pair, AlgModule, AssocAlgebra,
    Bimod, Error, FusionRowJson, FusionTableJson, Mat, Result, Scalar, SparseVec,
};

/// A complete fusion dataset.
pub struct FusionData {
    pub algebra: AssocAlgebra,
    pub sectors: Vec<AlgModule>,
    pub bimods: Vec<Bimod>,
    pub labels: Vec<String>,
}

/// The split two-sector algebra Q ⊕ Q with its two simple sectors.
pub fn two_sector_demo() -> Result<FusionData> {
    let dim = 2;
    let mut mult = vec![SparseVec::zero(dim); dim * dim];
    mult[0] = SparseVec::unit(dim, 0);
    mult[3] = SparseVec::unit(dim, 1);
    let identity = SparseVec::from_dense(&[Scalar::one(), Scalar::one()]);
    let algebra = AssocAlgebra::new(dim, mult, identity)?;
    from_algebra(algebra)
}

/// Sector data derived from a commutative algebra: the sectors are the
/// simple summands of the regular module, and each sector induces its own
/// two-sided module (both actions coincide by commutativity).
pub fn from_algebra(algebra: AssocAlgebra) -> Result<FusionData> {
    let sectors = simple_modules(&algebra)?;
    let bimods = induced_bimodules(&algebra, &sectors)?;
    let labels = (0..sectors.len()).map(|k| format!("S{k}")).collect();
    Ok(FusionData {
        algebra,
        sectors,
        bimods,
        labels,
    })
}

/// Turns each sector into a two-sided module by letting both sides act
/// through the sector's own action; valid exactly when the algebra is
/// commutative.
pub fn induced_bimodules(alg: &AssocAlgebra, sectors: &[AlgModule]) -> Result<Vec<Bimod>> {
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            if alg.mult_basis(i, j) != alg.mult_basis(j, i) {
                return Err(Error::InvalidInput(
                    "sector-induced two-sided modules need a commutative algebra; basis \
                     elements {i} and {j} do not commute"
                        .replace("{i}", &i.to_string())
                        .replace("{j}", &j.to_string()),
                ));
            }
        }
    }
    sectors
        .iter()
        .map(|s| {
            let mats: Vec<Mat> = (0..alg.dim()).map(|i| s.action(i).clone()).collect();
            Bimod::new(alg, alg, mats.clone(), mats)
        })
        .collect()
}

/// Componentwise tensor of two datasets over the tensor algebra.
pub fn tensor_fusion_data(a: &FusionData, b: &FusionData) -> FusionData {
    let algebra = tensor_algebra(&a.algebra, &b.algebra);
    let mut sectors = Vec::new();
    let mut bimods = Vec::new();
    let mut labels = Vec::new();
    for (i, sa) in a.sectors.iter().enumerate() {
        for (j, sb) in b.sectors.iter().enumerate() {
            sectors.push(tensor_module_pair(&a.algebra, sa, &b.algebra, sb));
            bimods.push(Bimod::tensor(
                &a.algebra,
                &a.bimods[i],
                &b.algebra,
                &b.bimods[j],
            ));
            labels.push(format!("{}*{}", a.labels[i], b.labels[j]));
        }
    }
    FusionData {
        algebra,
        sectors,
        bimods,
        labels,
    }
}

/// The full table over all sector triples, flagged when every entry is 0
/// or 1. Every entry internally cross-checks the two computation forms and
/// errors on disagreement, so a returned table is double-certified.
pub fn sector_table(data: &FusionData) -> Result<FusionTableJson> {
    let n = data.sectors.len();
    let mut table = Vec::with_capacity(n * n);
    let mut all01 = true;
    for i in 0..n {
        for j in 0..n {
            let mut dims = Vec::with_capacity(n);
            for k in 0..n {
                let d = fusion_dim(
                    &data.algebra,
                    &data.bimods[i],
                    &data.sectors[j],
                    &data.sectors[k],
                )?;
                if d > 1 {
                    all01 = false;
                }
                dims.push(d);
            }
            table.push(FusionRowJson { i, j, dims });
        }
    }
    Ok(FusionTableJson {
        sectors: data.labels.clone(),
        table,
        all_dims_zero_or_one: all01,
    })
}
