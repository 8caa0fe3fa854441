//! JSON interchange for truncated structures and computed outputs.
//!
//! All scalars travel as exact `"p/q"` strings (the denominator is omitted
//! when it is 1), so files round-trip with no precision loss. Readers
//! validate aggressively and name the offending field in every error, since
//! a malformed file must be distinguishable from a mathematical failure: the
//! former is a usage error, the latter a counterexample.

use serde::{Deserialize, Serialize};

use crate::assoc::AssocAlgebra;
use crate::bimodule::ZhuBimodule;
use crate::error::{Error, Result};
use crate::linalg::{Mat, SparseVec};
use crate::scalar::Scalar;
use crate::voa::{TruncatedModule, TruncatedVoa, Windowed};
use crate::zhu::{ConvergenceReport, ZhuPresentation};

/// Sparse entry list `[[index, "p/q"], ...]` as it appears in files.
pub type Entries = Vec<(usize, Scalar)>;

fn entries_to_vec(dim: usize, entries: &Entries, field: &str) -> Result<SparseVec> {
    let mut dense = vec![Scalar::zero(); dim];
    for (k, c) in entries {
        if *k >= dim {
            return Err(Error::InvalidInput(format!(
                "{field}: index {k} out of range for dimension {dim}"
            )));
        }
        dense[*k] += c;
    }
    Ok(SparseVec::from_dense(&dense))
}

fn vec_to_entries(v: &SparseVec) -> Entries {
    v.iter().map(|(k, c)| (k, c.clone())).collect()
}

/// A distinguished vector may be written as a bare basis index or as a
/// sparse entry list; it is emitted as an index exactly when it is a unit.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexOrEntries {
    Index(usize),
    Entries(Entries),
}

impl IndexOrEntries {
    fn to_vec(&self, dim: usize, field: &str) -> Result<SparseVec> {
        match self {
            IndexOrEntries::Index(i) => {
                if *i >= dim {
                    return Err(Error::InvalidInput(format!(
                        "{field}: index {i} out of range for dimension {dim}"
                    )));
                }
                Ok(SparseVec::unit(dim, *i))
            }
            IndexOrEntries::Entries(e) => entries_to_vec(dim, e, field),
        }
    }

    fn from_vec(v: &SparseVec) -> IndexOrEntries {
        if let Some((i, c)) = v.leading() {
            if v.support_len() == 1 && c.is_one() {
                return IndexOrEntries::Index(i);
            }
        }
        IndexOrEntries::Entries(vec_to_entries(v))
    }
}

/// One stored structure constant `a(n) b = Σ out`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantJson {
    pub a: usize,
    pub n: i64,
    pub b: usize,
    pub out: Entries,
}

/// File form of a truncated algebra. `dims[w]` is the dimension of the
/// weight-`w` stratum; basis indices are global, weight-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoaJson {
    pub cutoff: usize,
    pub dims: Vec<usize>,
    pub vacuum: IndexOrEntries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<IndexOrEntries>,
    pub central_charge: Scalar,
    pub constants: Vec<ConstantJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn voa_to_json(v: &TruncatedVoa) -> VoaJson {
    VoaJson {
        cutoff: v.cutoff(),
        dims: v.dims().to_vec(),
        vacuum: IndexOrEntries::from_vec(v.vacuum()),
        omega: v.omega().map(IndexOrEntries::from_vec),
        central_charge: v.central_charge().clone(),
        constants: v
            .table()
            .iter_nonzero()
            .map(|(a, n, b, out)| ConstantJson {
                a,
                n,
                b,
                out: vec_to_entries(out),
            })
            .collect(),
        name: Some(v.name().to_string()),
        labels: (0..v.total_dim()).map(|i| v.label(i)).collect(),
        notes: v.notes().to_vec(),
    }
}

pub fn voa_from_json(j: &VoaJson) -> Result<TruncatedVoa> {
    if j.dims.len() != j.cutoff + 1 {
        return Err(Error::InvalidInput(format!(
            "dims: expected {} weight strata for cutoff {}, found {}",
            j.cutoff + 1,
            j.cutoff,
            j.dims.len()
        )));
    }
    let total: usize = j.dims.iter().sum();
    let vacuum = j.vacuum.to_vec(total, "vacuum")?;
    let omega = match &j.omega {
        Some(x) => Some(x.to_vec(total, "omega")?),
        None => None,
    };
    let name = j.name.clone().unwrap_or_else(|| "input".to_string());
    let mut v = TruncatedVoa::new(name, j.dims.clone(), vacuum, omega, j.central_charge.clone())?;
    if !j.labels.is_empty() {
        if j.labels.len() != total {
            return Err(Error::InvalidInput(format!(
                "labels: expected {} entries, found {}",
                total,
                j.labels.len()
            )));
        }
        v.set_labels(j.labels.clone());
    }
    for (pos, c) in j.constants.iter().enumerate() {
        let out = entries_to_vec(total, &c.out, &format!("constants[{pos}].out"))?;
        v.set_constant(c.a, c.n, c.b, out).map_err(|e| {
            Error::InvalidInput(format!(
                "constants[{pos}] (a={}, n={}, b={}): {e}",
                c.a, c.n, c.b
            ))
        })?;
    }
    for note in &j.notes {
        v.add_note(note.clone());
    }
    Ok(v)
}

/// File form of a truncated module over a separately supplied algebra file.
/// `a` indices in `constants` refer to the algebra's basis, `b` and `out`
/// to the module's own level-major basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub cutoff: usize,
    pub dims: Vec<usize>,
    pub top_level_dim: usize,
    pub constants: Vec<ConstantJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

pub fn module_to_json(m: &TruncatedModule) -> ModuleJson {
    ModuleJson {
        cutoff: m.cutoff(),
        dims: m.dims().to_vec(),
        top_level_dim: m.top_level_dim(),
        constants: m
            .action()
            .iter_nonzero()
            .map(|(a, n, b, out)| ConstantJson {
                a,
                n,
                b,
                out: vec_to_entries(out),
            })
            .collect(),
        name: Some(m.name().to_string()),
        labels: (0..m.total_dim()).map(|i| m.label(i)).collect(),
    }
}

pub fn module_from_json(voa: &TruncatedVoa, j: &ModuleJson) -> Result<TruncatedModule> {
    if j.dims.len() != j.cutoff + 1 {
        return Err(Error::InvalidInput(format!(
            "dims: expected {} level strata for cutoff {}, found {}",
            j.cutoff + 1,
            j.cutoff,
            j.dims.len()
        )));
    }
    if j.top_level_dim != j.dims[0] {
        return Err(Error::InvalidInput(format!(
            "top_level_dim: {} disagrees with dims[0] = {}",
            j.top_level_dim, j.dims[0]
        )));
    }
    let total: usize = j.dims.iter().sum();
    let name = j.name.clone().unwrap_or_else(|| "module input".to_string());
    let mut m = TruncatedModule::new(name, voa, j.dims.clone())?;
    if !j.labels.is_empty() {
        if j.labels.len() != total {
            return Err(Error::InvalidInput(format!(
                "labels: expected {} entries, found {}",
                total,
                j.labels.len()
            )));
        }
        m.set_labels(j.labels.clone());
    }
    for (pos, c) in j.constants.iter().enumerate() {
        if c.a >= voa.total_dim() {
            return Err(Error::InvalidInput(format!(
                "constants[{pos}].a: index {} out of range for the acting algebra (dimension {})",
                c.a,
                voa.total_dim()
            )));
        }
        let out = entries_to_vec(total, &c.out, &format!("constants[{pos}].out"))?;
        m.set_action(c.a, c.n, c.b, out).map_err(|e| {
            Error::InvalidInput(format!(
                "constants[{pos}] (a={}, n={}, b={}): {e}",
                c.a, c.n, c.b
            ))
        })?;
    }
    Ok(m)
}

/// File form of a finite-dimensional associative algebra with a chosen basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub mult: Vec<MultJson>,
    pub identity: IndexOrEntries,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultJson {
    pub i: usize,
    pub j: usize,
    pub out: Entries,
}

pub fn algebra_to_json(a: &AssocAlgebra) -> AlgebraJson {
    let d = a.dim();
    let mut mult = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let v = a.mult_basis(i, j);
            if !v.is_zero() {
                mult.push(MultJson {
                    i,
                    j,
                    out: vec_to_entries(v),
                });
            }
        }
    }
    AlgebraJson {
        dim: d,
        mult,
        identity: IndexOrEntries::from_vec(a.identity()),
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<AssocAlgebra> {
    let d = j.dim;
    let mut table = vec![SparseVec::zero(d); d * d];
    for (pos, m) in j.mult.iter().enumerate() {
        if m.i >= d || m.j >= d {
            return Err(Error::InvalidInput(format!(
                "mult[{pos}]: pair ({}, {}) out of range for dimension {d}",
                m.i, m.j
            )));
        }
        table[m.i * d + m.j] = entries_to_vec(d, &m.out, &format!("mult[{pos}].out"))?;
    }
    let identity = j.identity.to_vec(d, "identity")?;
    AssocAlgebra::new(d, table, identity)
}

/// File form of a module over an algebra: one `dim x dim` dense matrix per
/// algebra basis element, acting on column coordinate vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionJson {
    pub action: Vec<Vec<Vec<Scalar>>>,
}

pub fn matrices_to_json(mats: &[Mat]) -> ActionJson {
    ActionJson {
        action: mats
            .iter()
            .map(|m| {
                (0..m.nrows())
                    .map(|r| (0..m.ncols()).map(|c| m.at(r, c).clone()).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn matrices_from_json(j: &ActionJson, algebra_dim: usize) -> Result<Vec<Mat>> {
    if j.action.len() != algebra_dim {
        return Err(Error::InvalidInput(format!(
            "action: expected {} matrices (one per algebra basis element), found {}",
            algebra_dim,
            j.action.len()
        )));
    }
    let mut out = Vec::with_capacity(j.action.len());
    for (pos, rows) in j.action.iter().enumerate() {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "action[{pos}][{r}]: expected {n} columns, found {}",
                    row.len()
                )));
            }
        }
        let m = Mat::from_fn(n, n, |r, c| rows[r][c].clone());
        out.push(m);
    }
    Ok(out)
}

/// One class of a computed associative quotient.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassJson {
    /// Index of the representing basis vector in the source algebra.
    pub representative: usize,
    pub weight: usize,
    pub label: String,
}

/// One (possibly out-of-window) product entry; `out` is `null` exactly when
/// the product cannot be decided at this cutoff.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub i: usize,
    pub j: usize,
    pub out: Option<Entries>,
}

/// Output of the quotient-algebra computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZhuOutputJson {
    pub cutoff: usize,
    pub basis: Vec<ClassJson>,
    pub mult_table: Vec<TableEntryJson>,
    pub identity: usize,
    pub omega: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_coords: Option<Entries>,
    pub o_span_rank: usize,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceJson>,
}

/// Comparison of the quotient at this cutoff against the one at cutoff − 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceJson {
    pub coarse_cutoff: usize,
    pub fine_cutoff: usize,
    pub coarse_dim: usize,
    pub fine_dim: usize,
    pub surviving_classes: usize,
    pub table_agreements: u64,
    pub table_disagreements: Vec<String>,
    pub stable: bool,
}

pub fn zhu_output(
    voa: &TruncatedVoa,
    pres: &ZhuPresentation,
    convergence: Option<&ConvergenceReport>,
) -> ZhuOutputJson {
    let reps = pres.quotient().reps();
    let basis = (0..pres.dim())
        .map(|k| ClassJson {
            representative: reps[k],
            weight: pres.class_weights()[k],
            label: voa.label(reps[k]),
        })
        .collect();
    let mut mult_table = Vec::with_capacity(pres.dim() * pres.dim());
    for i in 0..pres.dim() {
        for j in 0..pres.dim() {
            let out = match pres.mult_entry(i, j) {
                Windowed::In(v) => Some(vec_to_entries(v)),
                Windowed::Out => None,
            };
            mult_table.push(TableEntryJson { i, j, out });
        }
    }
    ZhuOutputJson {
        cutoff: pres.cutoff(),
        basis,
        mult_table,
        identity: pres.identity_class(),
        omega: pres.omega_class(),
        omega_coords: pres.omega_coords().map(vec_to_entries),
        o_span_rank: pres.o_span().rank(),
        notes: pres.notes().to_vec(),
        convergence: convergence.map(|c| ConvergenceJson {
            coarse_cutoff: c.coarse_cutoff,
            fine_cutoff: c.fine_cutoff,
            coarse_dim: c.coarse_dim,
            fine_dim: c.fine_dim,
            surviving_classes: c.surviving,
            table_agreements: c.table_agreements,
            table_disagreements: c.table_disagreements.clone(),
            stable: c.stable,
        }),
    }
}

/// Output of the two-sided module quotient computation: the class basis and
/// both partial action tables over the algebra quotient's classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleOutputJson {
    pub module: String,
    pub level_cutoff: usize,
    pub algebra_dim: usize,
    pub dim: usize,
    pub basis: Vec<ClassJson>,
    pub left: Vec<TableEntryJson>,
    pub right: Vec<TableEntryJson>,
    pub notes: Vec<String>,
}

pub fn bimodule_output(module: &TruncatedModule, bim: &ZhuBimodule) -> BimoduleOutputJson {
    let reps = bim.quotient().reps();
    let basis = (0..bim.dim())
        .map(|u| ClassJson {
            representative: reps[u],
            weight: bim.class_levels()[u],
            label: module.label(reps[u]),
        })
        .collect();
    let mut left = Vec::with_capacity(bim.algebra_dim() * bim.dim());
    let mut right = Vec::with_capacity(bim.algebra_dim() * bim.dim());
    for i in 0..bim.algebra_dim() {
        for u in 0..bim.dim() {
            left.push(TableEntryJson {
                i,
                j: u,
                out: bim.left_entry(i, u).in_window().map(vec_to_entries),
            });
            right.push(TableEntryJson {
                i,
                j: u,
                out: bim.right_entry(i, u).in_window().map(vec_to_entries),
            });
        }
    }
    BimoduleOutputJson {
        module: bim.module_name().to_string(),
        level_cutoff: bim.level_cutoff(),
        algebra_dim: bim.algebra_dim(),
        dim: bim.dim(),
        basis,
        left,
        right,
        notes: bim.notes().to_vec(),
    }
}

/// Fusion-dimension table: one row per source sector pair, one column per
/// target sector, covering all sector triples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionTableJson {
    pub sectors: Vec<String>,
    pub table: Vec<FusionRowJson>,
    pub all_dims_zero_or_one: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionRowJson {
    pub i: usize,
    pub j: usize,
    /// `dims[k]` is the fusion dimension from sectors `(i, j)` into sector `k`.
    pub dims: Vec<usize>,
}

impl FusionTableJson {
    /// The same table as CSV with a header row naming the target sectors.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j");
        for s in &self.sectors {
            out.push(',');
            out.push_str(s);
        }
        out.push('\n');
        for e in &self.table {
            out.push_str(&format!("{},{}", e.i, e.j));
            for d in &e.dims {
                out.push_str(&format!(",{d}"));
            }
            out.push('\n');
        }
        out
    }
}
