//! Weight-truncated vertex algebra data: graded bases, windowed mode tables,
//! truncated vertex algebras and their modules.
//!
//! A truncated vertex algebra stores the graded slices of weight `0..=N`
//! together with the structure constants `a(n)b` for every pair of basis
//! vectors and every mode `n` whose target weight lands in `0..=N`. Modes
//! whose target weight is negative are exactly zero; modes whose target
//! weight exceeds `N` are *out of the window* — represented by
//! [`Windowed::Out`], a value, not an error, so checks can count them as
//! inconclusive instead of aborting.

use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Subspace};
use crate::scalar::Scalar;

// ---------------------------------------------------------------------------
// Graded basis bookkeeping
// ---------------------------------------------------------------------------

/// Index bookkeeping for a weight-graded basis: vectors are numbered
/// weight-major (all of weight 0 first, then weight 1, ...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    dims: Vec<usize>,
    offsets: Vec<usize>, // offsets[w] = first index of weight w; last entry = total
}

impl GradedBasis {
    pub fn new(dims: Vec<usize>) -> GradedBasis {
        assert!(!dims.is_empty(), "graded basis needs at least weight 0");
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for &d in &dims {
            acc += d;
            offsets.push(acc);
        }
        GradedBasis { dims, offsets }
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, w: usize) -> usize {
        self.dims.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, w: usize) -> usize {
        self.offsets[w]
    }

    /// Global index of the `pos`-th vector of weight `w`.
    pub fn index(&self, w: usize, pos: usize) -> usize {
        debug_assert!(pos < self.dims[w]);
        self.offsets[w] + pos
    }

    pub fn weight_of(&self, index: usize) -> usize {
        debug_assert!(index < self.total());
        // offsets is sorted; find w with offsets[w] <= index < offsets[w+1]
        match self.offsets.binary_search(&index) {
            Ok(mut w) => {
                // empty strata share offsets; step to the stratum that actually
                // contains the index
                while self.dims[w] == 0 {
                    w += 1;
                }
                w
            }
            Err(ins) => ins - 1,
        }
    }

    pub fn indices_of_weight(&self, w: usize) -> std::ops::Range<usize> {
        self.offsets[w]..self.offsets[w + 1]
    }

    /// Weights of every basis vector, in index order.
    pub fn weight_list(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total());
        for (w, &d) in self.dims.iter().enumerate() {
            out.extend(std::iter::repeat(w).take(d));
        }
        out
    }
}

/// Set of weights supporting a vector, under a graded basis.
pub fn support_weights(basis: &GradedBasis, v: &SparseVec) -> Vec<usize> {
    let mut ws: Vec<usize> = v.iter().map(|(i, _)| basis.weight_of(i)).collect();
    ws.dedup();
    ws.sort_unstable();
    ws.dedup();
    ws
}

// ---------------------------------------------------------------------------
// Windowed values
// ---------------------------------------------------------------------------

/// Result of a mode application under truncation: either an exact in-window
/// value, or the explicit marker that the value lives above the cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Windowed<T> {
    In(T),
    Out,
}

impl<T> Windowed<T> {
    pub fn in_window(self) -> Option<T> {
        match self {
            Windowed::In(t) => Some(t),
            Windowed::Out => None,
        }
    }

    pub fn as_ref(&self) -> Windowed<&T> {
        match self {
            Windowed::In(t) => Windowed::In(t),
            Windowed::Out => Windowed::Out,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Windowed<U> {
        match self {
            Windowed::In(t) => Windowed::In(f(t)),
            Windowed::Out => Windowed::Out,
        }
    }

    pub fn is_out(&self) -> bool {
        matches!(self, Windowed::Out)
    }

    /// Converts to a hard error mentioning the remedy; used by flows (like
    /// builders) that must not silently lose data.
    pub fn required(self, what: &str) -> Result<T> {
        match self {
            Windowed::In(t) => Ok(t),
            Windowed::Out => Err(Error::OutOfTruncation(what.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Mode tables
// ---------------------------------------------------------------------------

/// Structure-constant table for modes `a(n)b`: `a` runs over an acting graded
/// basis (the vertex algebra), `b` over a target graded basis (the algebra
/// itself, or a module). For fixed `(a, b)` the stored modes are exactly
/// those whose target weight `wt a + wt b - n - 1` lies in `0..=cutoff` of
/// the target basis; lower modes are out of the window, higher modes are
/// exactly zero.
#[derive(Clone, Debug)]
pub struct ModeTable {
    acting_weights: Vec<usize>,
    target: GradedBasis,
    window: usize, // target cutoff + 1 = slots per (a, b) pair
    slots: Vec<SparseVec>,
    zero: SparseVec,
}

impl ModeTable {
    pub fn new(acting_weights: Vec<usize>, target: GradedBasis) -> ModeTable {
        let window = target.cutoff() + 1;
        let n = acting_weights.len() * target.total() * window;
        let zero = SparseVec::zero(target.total());
        ModeTable {
            acting_weights,
            target: target.clone(),
            window,
            slots: vec![zero.clone(); n],
            zero,
        }
    }

    pub fn acting_dim(&self) -> usize {
        self.acting_weights.len()
    }

    pub fn acting_weights(&self) -> &[usize] {
        &self.acting_weights
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    fn slot_index(&self, a: usize, b: usize, t: usize) -> usize {
        (a * self.target.total() + b) * self.window + t
    }

    /// Target weight of `a(n)b`, or None when negative (exact zero).
    fn target_weight(&self, a: usize, n: i64, b: usize) -> Option<i64> {
        let t = self.acting_weights[a] as i64 + self.target.weight_of(b) as i64 - n - 1;
        (t >= 0).then_some(t)
    }

    /// Store `a(n)b = value`. Errors when the mode is outside the stored
    /// window or the value has entries out of range.
    pub fn set(&mut self, a: usize, n: i64, b: usize, value: SparseVec) -> Result<()> {
        if a >= self.acting_dim() || b >= self.target.total() {
            return Err(Error::IndexRange {
                index: a.max(b),
                dim: self.acting_dim().max(self.target.total()),
            });
        }
        if value.dim() != self.target.total() {
            return Err(Error::DimMismatch(value.dim(), self.target.total()));
        }
        match self.target_weight(a, n, b) {
            Some(t) if t <= self.target.cutoff() as i64 => {
                let idx = self.slot_index(a, b, t as usize);
                self.slots[idx] = value;
                Ok(())
            }
            _ => Err(Error::InvalidInput(format!(
                "mode {n} of basis pair ({a}, {b}) has target weight outside 0..={}",
                self.target.cutoff()
            ))),
        }
    }

    /// Exact lookup for basis vectors: zero for negative target weight, the
    /// stored slice when in window, `Out` above the cutoff.
    pub fn apply_basis(&self, a: usize, n: i64, b: usize) -> Windowed<&SparseVec> {
        match self.target_weight(a, n, b) {
            None => Windowed::In(self.zero_ref()),
            Some(t) if t <= self.target.cutoff() as i64 => {
                Windowed::In(&self.slots[self.slot_index(a, b, t as usize)])
            }
            Some(_) => Windowed::Out,
        }
    }

    fn zero_ref(&self) -> &SparseVec {
        &self.zero
    }

    /// Bilinear extension: `u` over the acting basis, `v` over the target.
    /// `Out` as soon as any contributing pair (nonzero coefficients on both
    /// sides) falls above the window.
    pub fn apply(&self, u: &SparseVec, n: i64, v: &SparseVec) -> Windowed<SparseVec> {
        let mut acc = vec![Scalar::zero(); self.target.total()];
        match self.apply_acc(u, n, v, &Scalar::one(), &mut acc) {
            Windowed::In(()) => Windowed::In(SparseVec::from_dense(&acc)),
            Windowed::Out => Windowed::Out,
        }
    }

    /// Accumulating form: `acc += coeff * u(n) v` (dense over the target).
    pub fn apply_acc(
        &self,
        u: &SparseVec,
        n: i64,
        v: &SparseVec,
        coeff: &Scalar,
        acc: &mut [Scalar],
    ) -> Windowed<()> {
        assert_eq!(u.dim(), self.acting_dim(), "acting dim mismatch");
        assert_eq!(v.dim(), self.target.total(), "target dim mismatch");
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                match self.apply_basis(a, n, b) {
                    Windowed::In(w) => {
                        if w.is_zero() {
                            continue;
                        }
                        let c = &(ca * cb) * coeff;
                        for (i, x) in w.iter() {
                            acc[i] += &(&c * x);
                        }
                    }
                    Windowed::Out => return Windowed::Out,
                }
            }
        }
        Windowed::In(())
    }

    /// In-window mode range for an acting basis vector `a` and target basis
    /// vector `b`: all `n` with target weight in `0..=cutoff`.
    pub fn mode_range(&self, a: usize, b: usize) -> std::ops::RangeInclusive<i64> {
        let s = self.acting_weights[a] as i64 + self.target.weight_of(b) as i64;
        (s - 1 - self.target.cutoff() as i64)..=(s - 1)
    }

    /// Iterate all stored (a, n, b, value) with nonzero value.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, i64, usize, &SparseVec)> {
        let total = self.target.total();
        let window = self.window;
        (0..self.acting_dim()).flat_map(move |a| {
            (0..total).flat_map(move |b| {
                (0..window).filter_map(move |t| {
                    let v = &self.slots[self.slot_index(a, b, t)];
                    if v.is_zero() {
                        None
                    } else {
                        let n = self.acting_weights[a] as i64 + self.target.weight_of(b) as i64
                            - t as i64
                            - 1;
                        Some((a, n, b, v))
                    }
                })
            })
        })
    }
}

// ---------------------------------------------------------------------------
// Truncated vertex algebra
// ---------------------------------------------------------------------------

/// A vertex algebra truncated at weight `cutoff`, with exact rational
/// structure constants.
#[derive(Clone, Debug)]
pub struct TruncatedVoa {
    pub(crate) name: String,
    pub(crate) basis: GradedBasis,
    pub(crate) table: ModeTable,
    pub(crate) vacuum: SparseVec,
    pub(crate) omega: Option<SparseVec>,
    pub(crate) central_charge: Scalar,
    pub(crate) labels: Vec<String>,
    pub(crate) notes: Vec<String>,
}

impl TruncatedVoa {
    /// Empty-table algebra skeleton; structure constants are then installed
    /// with [`TruncatedVoa::set_constant`].
    pub fn new(
        name: impl Into<String>,
        dims: Vec<usize>,
        vacuum: SparseVec,
        omega: Option<SparseVec>,
        central_charge: Scalar,
    ) -> Result<TruncatedVoa> {
        if dims.is_empty() {
            return Err(Error::InvalidInput("dims must cover weight 0".into()));
        }
        let basis = GradedBasis::new(dims);
        if vacuum.dim() != basis.total() {
            return Err(Error::DimMismatch(vacuum.dim(), basis.total()));
        }
        if let Some(om) = &omega {
            if om.dim() != basis.total() {
                return Err(Error::DimMismatch(om.dim(), basis.total()));
            }
        }
        let table = ModeTable::new(basis.weight_list(), basis.clone());
        Ok(TruncatedVoa {
            name: name.into(),
            basis,
            table,
            vacuum,
            omega,
            central_charge,
            labels: Vec::new(),
            notes: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn cutoff(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn dims(&self) -> &[usize] {
        self.basis.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.total()
    }

    pub fn vacuum(&self) -> &SparseVec {
        &self.vacuum
    }

    pub fn omega(&self) -> Option<&SparseVec> {
        self.omega.as_ref()
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.central_charge
    }

    pub fn table(&self) -> &ModeTable {
        &self.table
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn add_note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert!(labels.len() == self.total_dim() || labels.is_empty());
        self.labels = labels;
    }

    pub fn label(&self, index: usize) -> String {
        self.labels
            .get(index)
            .cloned()
            .unwrap_or_else(|| format!("e{index}"))
    }

    /// Pretty linear combination using the basis labels.
    pub fn format_vec(&self, v: &SparseVec) -> String {
        format_with(v, |i| self.label(i))
    }

    pub fn set_constant(&mut self, a: usize, n: i64, b: usize, value: SparseVec) -> Result<()> {
        self.table.set(a, n, b, value)
    }

    /// `a(n)b` for basis indices.
    pub fn mode_basis(&self, a: usize, n: i64, b: usize) -> Windowed<&SparseVec> {
        self.table.apply_basis(a, n, b)
    }

    /// `u(n)v` extended bilinearly.
    pub fn mode(&self, u: &SparseVec, n: i64, v: &SparseVec) -> Windowed<SparseVec> {
        self.table.apply(u, n, v)
    }

    pub fn weight_of(&self, index: usize) -> usize {
        self.basis.weight_of(index)
    }

    /// Homogeneous weight of a vector, or None when zero or mixed.
    pub fn homogeneous_weight(&self, v: &SparseVec) -> Option<usize> {
        let ws = support_weights(&self.basis, v);
        if ws.len() == 1 {
            Some(ws[0])
        } else {
            None
        }
    }

    /// Restrict to a lower cutoff, dropping higher strata and the modes that
    /// land there.
    pub fn truncate(&self, new_cutoff: usize) -> Result<TruncatedVoa> {
        if new_cutoff > self.cutoff() {
            return Err(Error::IncompatibleCutoffs(format!(
                "cannot truncate cutoff {} up to {}",
                self.cutoff(),
                new_cutoff
            )));
        }
        let dims: Vec<usize> = self.dims()[..=new_cutoff].to_vec();
        let new_basis = GradedBasis::new(dims.clone());
        let keep = new_basis.total();
        let restrict = |v: &SparseVec| -> Option<SparseVec> {
            if v.iter().any(|(i, _)| i >= keep) {
                None
            } else {
                Some(v.map_indices(keep, |i| i))
            }
        };
        let vacuum = restrict(&self.vacuum).ok_or_else(|| {
            Error::IncompatibleCutoffs("vacuum vector does not survive the truncation".into())
        })?;
        let omega = match &self.omega {
            Some(om) => restrict(om),
            None => None,
        };
        let mut out = TruncatedVoa::new(
            format!("{}|{}", self.name, new_cutoff),
            dims,
            vacuum,
            omega,
            self.central_charge.clone(),
        )?;
        if self.omega.is_some() && out.omega.is_none() {
            out.add_note(
                "conformal vector dropped: its weight exceeds the new cutoff".to_string(),
            );
        }
        for (a, n, b, v) in self.table.iter_nonzero() {
            if a < keep && b < keep {
                if let Some(w) = restrict(v) {
                    // target weight within new cutoff iff restrict succeeded
                    let t = self.weight_of(a) as i64 + self.weight_of(b) as i64 - n - 1;
                    if t <= new_cutoff as i64 {
                        out.set_constant(a, n, b, w)?;
                    }
                }
            }
        }
        if !self.labels.is_empty() {
            out.set_labels(self.labels[..keep].to_vec());
        }
        out.notes.extend(self.notes.iter().cloned());
        Ok(out)
    }
}

fn format_with(v: &SparseVec, label: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        if c.is_one() {
            out.push_str(&label(i));
        } else {
            out.push_str(&format!("{}*{}", c, label(i)));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Direct sum
// ---------------------------------------------------------------------------

/// Direct sum of two truncated vertex algebras with the same cutoff. The
/// vacuum is the sum of the two vacua and the conformal vector the sum of
/// the two conformal vectors. When the declared central charges differ there
/// is no single central charge; the sum is stored with a note and the
/// Virasoro check is expected to fail honestly.
pub fn direct_sum(v1: &TruncatedVoa, v2: &TruncatedVoa) -> Result<TruncatedVoa> {
    if v1.cutoff() != v2.cutoff() {
        return Err(Error::IncompatibleCutoffs(format!(
            "direct sum needs equal cutoffs, got {} and {}",
            v1.cutoff(),
            v2.cutoff()
        )));
    }
    let n = v1.cutoff();
    let dims: Vec<usize> = (0..=n).map(|w| v1.dims()[w] + v2.dims()[w]).collect();
    let basis = GradedBasis::new(dims.clone());
    // weight-major interleave: inside each stratum, first summand then second
    let map1 = |i: usize| -> usize {
        let w = v1.weight_of(i);
        basis.index(w, i - v1.basis().offset(w))
    };
    let map2 = |i: usize| -> usize {
        let w = v2.weight_of(i);
        basis.index(w, v1.dims()[w] + (i - v2.basis().offset(w)))
    };
    let total = basis.total();
    let mut vacuum = v1.vacuum().map_indices(total, map1);
    vacuum.add(&v2.vacuum().map_indices(total, map2));
    let omega = match (v1.omega(), v2.omega()) {
        (Some(o1), Some(o2)) => {
            let mut o = o1.map_indices(total, map1);
            o.add(&o2.map_indices(total, map2));
            Some(o)
        }
        _ => None,
    };
    let (cc, mismatch) = if v1.central_charge() == v2.central_charge() {
        (v1.central_charge().clone(), false)
    } else {
        (v1.central_charge() + v2.central_charge(), true)
    };
    let mut out = TruncatedVoa::new(
        format!("{} (+) {}", v1.name(), v2.name()),
        dims,
        vacuum,
        omega,
        cc,
    )?;
    if mismatch {
        out.add_note(format!(
            "summands declare different central charges ({} vs {}); no single central charge \
             exists, storing their sum — the Virasoro check will fail with witnesses",
            v1.central_charge(),
            v2.central_charge()
        ));
    }
    if v1.omega().is_some() != v2.omega().is_some() {
        out.add_note(
            "one summand has no conformal vector; the sum is not conformal".to_string(),
        );
    }
    for (a, m, b, v) in v1.table().iter_nonzero() {
        out.set_constant(map1(a), m, map1(b), v.map_indices(total, map1))?;
    }
    for (a, m, b, v) in v2.table().iter_nonzero() {
        out.set_constant(map2(a), m, map2(b), v.map_indices(total, map2))?;
    }
    let mut labels = vec![String::new(); total];
    for i in 0..v1.total_dim() {
        labels[map1(i)] = format!("1:{}", v1.label(i));
    }
    for i in 0..v2.total_dim() {
        labels[map2(i)] = format!("2:{}", v2.label(i));
    }
    out.set_labels(labels);
    out.notes.extend(v1.notes().iter().cloned());
    out.notes.extend(v2.notes().iter().cloned());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Truncated modules
// ---------------------------------------------------------------------------

/// A level-truncated module over a truncated vertex algebra: graded slices
/// `M(0), ..., M(cutoff)` and the windowed action table `a(n)m`.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    pub(crate) name: String,
    pub(crate) basis: GradedBasis,
    pub(crate) action: ModeTable,
    pub(crate) labels: Vec<String>,
}

impl TruncatedModule {
    pub fn new(
        name: impl Into<String>,
        voa: &TruncatedVoa,
        level_dims: Vec<usize>,
    ) -> Result<TruncatedModule> {
        if level_dims.is_empty() {
            return Err(Error::InvalidInput("level dims must cover level 0".into()));
        }
        let basis = GradedBasis::new(level_dims);
        let action = ModeTable::new(voa.basis().weight_list(), basis.clone());
        Ok(TruncatedModule {
            name: name.into(),
            basis,
            action,
            labels: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn cutoff(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn dims(&self) -> &[usize] {
        self.basis.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.total()
    }

    /// Dimension of the top level `M(0)`.
    pub fn top_level_dim(&self) -> usize {
        self.basis.dim_at(0)
    }

    pub fn action(&self) -> &ModeTable {
        &self.action
    }

    pub fn set_action(&mut self, a: usize, n: i64, m: usize, value: SparseVec) -> Result<()> {
        self.action.set(a, n, m, value)
    }

    pub fn mode_basis(&self, a: usize, n: i64, m: usize) -> Windowed<&SparseVec> {
        self.action.apply_basis(a, n, m)
    }

    pub fn mode(&self, u: &SparseVec, n: i64, v: &SparseVec) -> Windowed<SparseVec> {
        self.action.apply(u, n, v)
    }

    pub fn level_of(&self, index: usize) -> usize {
        self.basis.weight_of(index)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert!(labels.len() == self.total_dim() || labels.is_empty());
        self.labels = labels;
    }

    pub fn label(&self, index: usize) -> String {
        self.labels
            .get(index)
            .cloned()
            .unwrap_or_else(|| format!("m{index}"))
    }

    pub fn format_vec(&self, v: &SparseVec) -> String {
        format_with(v, |i| self.label(i))
    }

    /// Compatibility: the action table's acting grading must match the
    /// algebra's basis.
    pub fn compatible_with(&self, voa: &TruncatedVoa) -> bool {
        self.action.acting_weights() == voa.basis().weight_list().as_slice()
    }
}

/// The algebra as a module over itself.
pub fn adjoint_module(voa: &TruncatedVoa) -> TruncatedModule {
    let mut m = TruncatedModule {
        name: format!("{} (adjoint)", voa.name()),
        basis: voa.basis().clone(),
        action: voa.table().clone(),
        labels: voa.labels.clone(),
    };
    if m.labels.is_empty() {
        m.labels = (0..voa.total_dim()).map(|i| voa.label(i)).collect();
    }
    m
}

// ---------------------------------------------------------------------------
// Ideal test
// ---------------------------------------------------------------------------

/// Outcome of testing whether a spanned subspace is closed under all
/// in-window modes.
#[derive(Clone, Debug)]
pub struct IdealStatus {
    /// Each echelon basis vector of the span is weight-homogeneous.
    pub graded: bool,
    /// All in-window modes `a(n)s` stayed inside the span.
    pub closed_in_window: bool,
    /// Number of mode applications that left the window (inconclusive data).
    pub out_of_window: u64,
    /// Violations found (capped).
    pub witnesses: Vec<(usize, i64, String)>,
}

impl IdealStatus {
    pub fn is_ideal_in_window(&self) -> bool {
        self.closed_in_window
    }
}

/// Tests `a(n)s ∈ span(S)` for every basis vector `a`, every echelon basis
/// vector `s` of `S`, and every in-window mode `n`.
pub fn is_ideal(voa: &TruncatedVoa, generators: &[SparseVec]) -> IdealStatus {
    let span = Subspace::echelonize(voa.total_dim(), generators.to_vec());
    let graded = span
        .basis()
        .iter()
        .all(|row| voa.homogeneous_weight(row).is_some() || row.is_zero());
    let mut status = IdealStatus {
        graded,
        closed_in_window: true,
        out_of_window: 0,
        witnesses: Vec::new(),
    };
    for a in 0..voa.total_dim() {
        for s in span.basis() {
            // all modes whose target weight can land in window for some
            // support level of s
            let lo = voa.weight_of(a) as i64 - 1 - voa.cutoff() as i64;
            let hi = voa.weight_of(a) as i64 + voa.cutoff() as i64 - 1;
            for n in lo..=hi {
                match voa.mode(&SparseVec::unit(voa.total_dim(), a), n, s) {
                    Windowed::Out => status.out_of_window += 1,
                    Windowed::In(v) => {
                        if !v.is_zero() && !span.contains(&v) {
                            status.closed_in_window = false;
                            if status.witnesses.len() < crate::report::MAX_WITNESSES {
                                status.witnesses.push((a, n, voa.format_vec(&v)));
                            }
                        }
                    }
                }
            }
        }
    }
    status
}
