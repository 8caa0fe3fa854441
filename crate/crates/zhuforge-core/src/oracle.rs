//! Exact constructions of the built-in examples: the rank-one free boson
//! (Heisenberg) vertex algebra, the Virasoro vertex algebra, charged Fock
//! modules, and the trivial one-dimensional vertex algebra.
//!
//! States are represented as exact linear combinations of standard ordered
//! monomials `g(-m1) g(-m2) ... |0>` with `m1 >= m2 >= ...` (partitions).
//! Generator modes act by straightening against the commutation relations;
//! modes of composite vectors are produced by the iterate formula
//!   (a(p) b)(m) = sum_{i>=0} (-1)^i C(p,i) ( a(p-i) b(m+i)
//!                  - (-1)^p b(p+m-i) a(i) ),
//! evaluated exactly in the untruncated module and only then truncated into
//! the windowed tables. This computation route is deliberately independent
//! of the checks it feeds: the checks re-verify the produced tables from
//! scratch.

use crate::error::Result;
use crate::linalg::SparseVec;
use crate::scalar::{binomial, sign, Scalar};
use crate::voa::{TruncatedModule, TruncatedVoa};
use std::collections::{BTreeMap, HashMap};

/// Exact state: partition monomial -> coefficient.
type FockMap = BTreeMap<Vec<u32>, Scalar>;

fn fock_add_scaled(dst: &mut FockMap, src: &FockMap, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (m, x) in src {
        let e = dst.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += &(c * x);
    }
}

fn fock_prune(m: &mut FockMap) {
    m.retain(|_, c| !c.is_zero());
}

fn mono_weight(m: &[u32]) -> i64 {
    m.iter().map(|&p| p as i64).sum()
}

/// Partitions of `n` with parts `>= min_part`, each written with descending
/// parts, enumerated lexicographically ascending.
pub fn partitions(n: usize, min_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in min_part..=(n as u32) {
        if first as usize == n {
            out.push(vec![first]);
        } else {
            for rest in partitions(n - first as usize, min_part) {
                if rest.is_empty() || rest[0] <= first {
                    let mut p = Vec::with_capacity(rest.len() + 1);
                    p.push(first);
                    p.extend(rest);
                    out.push(p);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Heisenberg,
    Virasoro,
}

/// Exact mode calculus over one free-field algebra, memoized.
struct Oracle {
    kind: Kind,
    /// eigenvalue of the zero mode on the cyclic vector (Fock charge)
    lambda: Scalar,
    /// central charge (Virasoro only)
    central: Scalar,
    memo_lie: HashMap<(i64, Vec<u32>), FockMap>,
    memo_comp: HashMap<(Vec<u32>, i64, Vec<u32>), FockMap>,
}

impl Oracle {
    fn new(kind: Kind, lambda: Scalar, central: Scalar) -> Oracle {
        Oracle {
            kind,
            lambda,
            central,
            memo_lie: HashMap::new(),
            memo_comp: HashMap::new(),
        }
    }

    fn generator_weight(&self) -> i64 {
        match self.kind {
            Kind::Heisenberg => 1,
            Kind::Virasoro => 2,
        }
    }

    /// Lie-algebra mode `g_m` applied to a standard monomial.
    fn lie_apply(&mut self, m: i64, mono: &[u32]) -> FockMap {
        let key = (m, mono.to_vec());
        if let Some(v) = self.memo_lie.get(&key) {
            return v.clone();
        }
        let mut out = FockMap::new();
        if mono.is_empty() {
            match self.kind {
                Kind::Heisenberg => {
                    if m <= -1 {
                        out.insert(vec![(-m) as u32], Scalar::one());
                    } else if m == 0 && !self.lambda.is_zero() {
                        out.insert(vec![], self.lambda.clone());
                    }
                    // m >= 1 annihilates the cyclic vector
                }
                Kind::Virasoro => {
                    if m <= -2 {
                        out.insert(vec![(-m) as u32], Scalar::one());
                    }
                    // L_m for m >= -1 annihilates the vacuum
                }
            }
        } else {
            let h = mono[0] as i64;
            let tail = &mono[1..];
            if m <= -h {
                // already standard: prepend
                let mut p = Vec::with_capacity(mono.len() + 1);
                p.push((-m) as u32);
                p.extend_from_slice(mono);
                out.insert(p, Scalar::one());
            } else {
                // g_m g_{-h} = g_{-h} g_m + [g_m, g_{-h}]
                let tail_vec: Vec<u32> = tail.to_vec();
                let inner = self.lie_apply(m, &tail_vec);
                let reordered = self.lie_apply_state(-h, &inner);
                fock_add_scaled(&mut out, &reordered, &Scalar::one());
                match self.kind {
                    Kind::Heisenberg => {
                        if m == h {
                            // [a_m, a_{-m}] = m
                            let mut t = FockMap::new();
                            t.insert(tail_vec, Scalar::from_int(m));
                            fock_add_scaled(&mut out, &t, &Scalar::one());
                        }
                    }
                    Kind::Virasoro => {
                        // [L_m, L_{-h}] = (m + h) L_{m-h} + d_{m,h} (m^3-m)/12 c
                        let br = self.lie_apply(m - h, &tail_vec);
                        fock_add_scaled(&mut out, &br, &Scalar::from_int(m + h));
                        if m == h {
                            let cterm = &Scalar::ratio(m * m * m - m, 12) * &self.central;
                            let mut t = FockMap::new();
                            t.insert(tail_vec, cterm);
                            fock_add_scaled(&mut out, &t, &Scalar::one());
                        }
                    }
                }
            }
        }
        fock_prune(&mut out);
        self.memo_lie.insert(key, out.clone());
        out
    }

    fn lie_apply_state(&mut self, m: i64, state: &FockMap) -> FockMap {
        let mut out = FockMap::new();
        for (mono, c) in state {
            let v = self.lie_apply(m, mono);
            fock_add_scaled(&mut out, &v, c);
        }
        fock_prune(&mut out);
        out
    }

    /// Vertex-operator mode `gen(idx)` of the generating vector: for the
    /// free boson `a(idx) = a_idx`; for the Virasoro vector `w(idx) =
    /// L_{idx-1}`.
    fn gen_apply_state(&mut self, idx: i64, state: &FockMap) -> FockMap {
        let m = match self.kind {
            Kind::Heisenberg => idx,
            Kind::Virasoro => idx - 1,
        };
        self.lie_apply_state(m, state)
    }

    /// Mode of the composite vector `u` (a standard basis monomial of the
    /// vertex algebra) on a standard monomial `v`, exactly.
    fn comp_mode(&mut self, u: &[u32], n: i64, v: &[u32]) -> FockMap {
        let key = (u.to_vec(), n, v.to_vec());
        if let Some(r) = self.memo_comp.get(&key) {
            return r.clone();
        }
        let out = if u.is_empty() {
            // vacuum: 1(n) = d_{n,-1} id
            let mut out = FockMap::new();
            if n == -1 {
                out.insert(v.to_vec(), Scalar::one());
            }
            out
        } else {
            let h = u[0] as i64;
            let tail: Vec<u32> = u[1..].to_vec();
            // u = gen(p) tail with p the generator mode producing g_{-h}
            let p = match self.kind {
                Kind::Heisenberg => -h,
                Kind::Virasoro => -h + 1,
            };
            let wt_tail = mono_weight(&tail);
            let wt_v = mono_weight(v);
            let i_max1 = wt_tail + wt_v - 1 - n; // beyond: tail(n+i) v = 0
            let i_max2 = self.generator_weight() + wt_v - 1; // beyond: gen(i) v = 0
            let i_max = i_max1.max(i_max2);
            let mut out = FockMap::new();
            let par_p = sign(p);
            let mut i = 0i64;
            while i <= i_max {
                let coeff = &sign(i) * &binomial(p, i as u32);
                if !coeff.is_zero() {
                    if i <= i_max1 {
                        // + (-1)^i C(p,i) gen(p-i) tail(n+i) v
                        let t1 = self.comp_mode(&tail, n + i, v);
                        if !t1.is_empty() {
                            let g = self.gen_apply_state(p - i, &t1);
                            fock_add_scaled(&mut out, &g, &coeff);
                        }
                    }
                    if i <= i_max2 {
                        // - (-1)^i C(p,i) (-1)^p tail(p+n-i) gen(i) v
                        let mut vstate = FockMap::new();
                        vstate.insert(v.to_vec(), Scalar::one());
                        let inner = self.gen_apply_state(i, &vstate);
                        if !inner.is_empty() {
                            let t2 = self.comp_mode_state(&tail, p + n - i, &inner);
                            let c = -&(&coeff * &par_p);
                            fock_add_scaled(&mut out, &t2, &c);
                        }
                    }
                }
                i += 1;
            }
            fock_prune(&mut out);
            out
        };
        self.memo_comp.insert(key, out.clone());
        out
    }

    fn comp_mode_state(&mut self, u: &[u32], n: i64, state: &FockMap) -> FockMap {
        let mut out = FockMap::new();
        for (mono, c) in state {
            let r = self.comp_mode(u, n, mono);
            fock_add_scaled(&mut out, &r, c);
        }
        fock_prune(&mut out);
        out
    }
}

// ---------------------------------------------------------------------------
// Basis assembly
// ---------------------------------------------------------------------------

struct MonoBasis {
    dims: Vec<usize>,
    monos: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn mono_basis(cutoff: usize, min_part: u32) -> MonoBasis {
    let mut dims = Vec::with_capacity(cutoff + 1);
    let mut monos = Vec::new();
    let mut index = HashMap::new();
    for w in 0..=cutoff {
        let parts = partitions(w, min_part);
        dims.push(parts.len());
        for p in parts {
            index.insert(p.clone(), monos.len());
            monos.push(p);
        }
    }
    MonoBasis { dims, monos, index }
}

fn mono_label(mono: &[u32], gen: &str, cyclic: &str) -> String {
    let mut s = String::new();
    for p in mono {
        s.push_str(&format!("{gen}(-{p})"));
    }
    s.push_str(cyclic);
    s
}

fn fock_to_sparse(state: &FockMap, basis: &MonoBasis, total: usize) -> SparseVec {
    SparseVec::from_entries(
        total,
        state
            .iter()
            .map(|(m, c)| {
                (
                    *basis
                        .index
                        .get(m)
                        .expect("state outside the enumerated window"),
                    c.clone(),
                )
            })
            .collect(),
    )
}

fn fill_table(
    oracle: &mut Oracle,
    voa: &mut TruncatedVoa,
    basis: &MonoBasis,
) -> Result<()> {
    let total = voa.total_dim();
    for a in 0..total {
        for b in 0..total {
            for n in voa.table().mode_range(a, b) {
                let state = oracle.comp_mode(&basis.monos[a], n, &basis.monos[b]);
                let v = fock_to_sparse(&state, basis, total);
                if !v.is_zero() {
                    voa.set_constant(a, n, b, v)?;
                }
            }
        }
    }
    Ok(())
}

/// Rank-one free boson vertex algebra truncated at `cutoff` (central
/// charge 1). Basis: `a(-m1)...a(-mk)|0>` over partitions, weight-major.
pub fn build_heisenberg(cutoff: usize) -> Result<TruncatedVoa> {
    let basis = mono_basis(cutoff, 1);
    let total = basis.monos.len();
    let vacuum = SparseVec::unit(total, 0);
    let omega = if cutoff >= 2 {
        Some(SparseVec::from_entries(
            total,
            vec![(basis.index[&vec![1, 1][..].to_vec()], Scalar::ratio(1, 2))],
        ))
    } else {
        None
    };
    let mut voa = TruncatedVoa::new(
        format!("heisenberg(cutoff={cutoff})"),
        basis.dims.clone(),
        vacuum,
        omega,
        Scalar::one(),
    )?;
    voa.set_labels(
        basis
            .monos
            .iter()
            .map(|m| mono_label(m, "a", "|0>"))
            .collect(),
    );
    if cutoff < 2 {
        voa.add_note("cutoff below 2: conformal vector not representable".to_string());
    }
    let mut oracle = Oracle::new(Kind::Heisenberg, Scalar::zero(), Scalar::zero());
    fill_table(&mut oracle, &mut voa, &basis)?;
    Ok(voa)
}

/// Virasoro vertex algebra of central charge `c` truncated at `cutoff`.
/// Basis: `L(-m1)...L(-mk)|0>` over partitions with parts >= 2.
pub fn build_virasoro(cutoff: usize, c: Scalar) -> Result<TruncatedVoa> {
    let basis = mono_basis(cutoff, 2);
    let total = basis.monos.len();
    let vacuum = SparseVec::unit(total, 0);
    let omega = if cutoff >= 2 {
        Some(SparseVec::unit(total, basis.index[&vec![2u32][..].to_vec()]))
    } else {
        None
    };
    let mut voa = TruncatedVoa::new(
        format!("virasoro(c={c}, cutoff={cutoff})"),
        basis.dims.clone(),
        vacuum,
        omega,
        c.clone(),
    )?;
    voa.set_labels(
        basis
            .monos
            .iter()
            .map(|m| mono_label(m, "L", "|0>"))
            .collect(),
    );
    if cutoff < 2 {
        voa.add_note("cutoff below 2: conformal vector not representable".to_string());
    }
    let mut oracle = Oracle::new(Kind::Virasoro, Scalar::zero(), c);
    fill_table(&mut oracle, &mut voa, &basis)?;
    Ok(voa)
}

/// Charged Fock module of charge `lambda` over the free boson algebra,
/// truncated at the same cutoff as `voa` unless `level_cutoff` differs.
/// The top level is one-dimensional, spanned by the charged vector `|v>`,
/// on which the zero mode acts by `lambda` and the conformal grading
/// operator by `lambda^2/2`.
pub fn build_fock(voa: &TruncatedVoa, lambda: Scalar, level_cutoff: usize) -> Result<TruncatedModule> {
    let basis = mono_basis(level_cutoff, 1);
    let total = basis.monos.len();
    let mut module = TruncatedModule::new(
        format!("fock(lambda={lambda}, cutoff={level_cutoff})"),
        voa,
        basis.dims.clone(),
    )?;
    module.set_labels(
        basis
            .monos
            .iter()
            .map(|m| mono_label(m, "a", "|v>"))
            .collect(),
    );
    // the algebra's own basis must be the standard free-boson one so that
    // acting indices agree with monomials
    let voa_basis = mono_basis(voa.cutoff(), 1);
    if voa_basis.dims != voa.dims() {
        return Err(crate::error::Error::InvalidInput(
            "fock modules require the free boson algebra".into(),
        ));
    }
    let mut oracle = Oracle::new(Kind::Heisenberg, lambda, Scalar::zero());
    for a in 0..voa.total_dim() {
        for m in 0..total {
            for n in module.action().mode_range(a, m) {
                let state = oracle.comp_mode(&voa_basis.monos[a], n, &basis.monos[m]);
                let v = fock_to_sparse(&state, &basis, total);
                if !v.is_zero() {
                    module.set_action(a, n, m, v)?;
                }
            }
        }
    }
    Ok(module)
}

/// One-dimensional vertex algebra spanned by the vacuum, padded with empty
/// strata up to `cutoff`. It has no conformal vector.
pub fn build_trivial(cutoff: usize) -> Result<TruncatedVoa> {
    let mut dims = vec![0usize; cutoff + 1];
    dims[0] = 1;
    let vacuum = SparseVec::unit(1, 0);
    let mut voa = TruncatedVoa::new(
        format!("trivial(cutoff={cutoff})"),
        dims,
        vacuum.clone(),
        None,
        Scalar::zero(),
    )?;
    voa.set_labels(vec!["|0>".to_string()]);
    voa.set_constant(0, -1, 0, vacuum)?;
    Ok(voa)
}
