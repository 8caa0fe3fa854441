//! Exact sparse/dense linear algebra over the rational scalars.
//!
//! Everything here is deterministic: row reduction pivots on a fixed end of
//! the support (lowest index by default, highest on request), so echelon
//! bases, quotient representatives and projections are reproducible across
//! runs. High-index pivoting matters for graded quotients: with basis indices
//! ordered weight-major, eliminating the highest coordinate of each relation
//! leaves quotient representatives at the lowest available weights, and the
//! projection maps a vector into classes of weight no larger than its own.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Sparse vector: sorted unique indices, no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit index out of range");
        SparseVec {
            dim,
            entries: vec![(index, Scalar::one())],
        }
    }

    /// Builds from arbitrary (index, coeff) pairs: merges duplicates, drops
    /// zeros, keeps indices sorted.
    pub fn from_entries(dim: usize, mut raw: Vec<(usize, Scalar)>) -> Self {
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            assert!(i < dim, "entry index out of range");
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// First (lowest-index) nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    /// Last (highest-index) nonzero entry.
    pub fn trailing(&self) -> Option<(usize, &Scalar)> {
        self.entries.last().map(|(i, c)| (*i, c))
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x *= c;
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    /// self += c * other (sorted merge).
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        assert_eq!(self.dim, other.dim, "sparse add dim mismatch");
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut na = a.next();
        let mut nb = b.next();
        loop {
            match (na, nb) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        na = a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        nb = b.next();
                    } else {
                        let v = x + &(c * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        na = a.next();
                        nb = b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    na = a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    nb = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&mut self, other: &SparseVec) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn sub(&mut self, other: &SparseVec) {
        self.add_scaled(other, &Scalar::from_int(-1));
    }

    /// Re-index into a larger (or equal) ambient space.
    pub fn map_indices(&self, new_dim: usize, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(
            new_dim,
            self.iter().map(|(i, c)| (f(i), c.clone())).collect(),
        )
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); self.dim];
        for (i, c) in self.iter() {
            d[i] = c.clone();
        }
        d
    }

    pub fn from_dense(d: &[Scalar]) -> SparseVec {
        SparseVec::from_entries(
            d.len(),
            d.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// Subspace: row-reduced span with generator bookkeeping
// ---------------------------------------------------------------------------

/// Which end of a vector's support supplies the pivot during row reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotMode {
    /// Standard reduced row echelon form: pivot on the lowest index.
    Low,
    /// Pivot on the highest index; quotient representatives then occupy the
    /// lowest indices (lowest weights, for weight-major bases).
    High,
}

/// Span of a generator list, stored in reduced row-echelon form.
///
/// Each echelon row also keeps its expression as a combination of the original
/// generators, so membership can return exact coordinates with respect to the
/// generators (not just the echelon basis).
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    mode: PivotMode,
    generators: Vec<SparseVec>,
    rows: Vec<SparseVec>,
    combos: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn dense_sub_scaled(a: &mut [Scalar], b: &[Scalar], c: &Scalar) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= &(c * y);
    }
}

fn dense_scale(a: &mut [Scalar], c: &Scalar) {
    for x in a.iter_mut() {
        *x *= c;
    }
}

impl Subspace {
    /// Reduced row echelon span of `generators`, pivoting on the lowest index
    /// first.
    pub fn echelonize(ambient: usize, generators: Vec<SparseVec>) -> Subspace {
        Subspace::echelonize_with(ambient, generators, PivotMode::Low)
    }

    /// Reduced span pivoting on the highest index of each row.
    pub fn echelonize_high(ambient: usize, generators: Vec<SparseVec>) -> Subspace {
        Subspace::echelonize_with(ambient, generators, PivotMode::High)
    }

    pub fn echelonize_with(
        ambient: usize,
        generators: Vec<SparseVec>,
        mode: PivotMode,
    ) -> Subspace {
        let n_gen = generators.len();
        let mut s = Subspace {
            ambient,
            mode,
            generators,
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
        };
        for gi in 0..n_gen {
            assert_eq!(s.generators[gi].dim(), ambient, "generator dim mismatch");
            let mut v = s.generators[gi].clone();
            let mut combo = vec![Scalar::zero(); n_gen];
            combo[gi] = Scalar::one();
            s.reduce_tracking(&mut v, &mut combo);
            if v.is_zero() {
                continue;
            }
            let (p, lead) = {
                let (p, lead) = match mode {
                    PivotMode::Low => v.leading().expect("nonzero"),
                    PivotMode::High => v.trailing().expect("nonzero"),
                };
                (p, lead.clone())
            };
            let inv = lead.recip();
            v.scale(&inv);
            dense_scale(&mut combo, &inv);
            // back-substitute into existing rows to keep the form reduced
            for k in 0..s.rows.len() {
                let c = s.rows[k].coeff(p);
                if !c.is_zero() {
                    s.rows[k].add_scaled(&v, &(-&c));
                    let combo_snapshot = combo.clone();
                    dense_sub_scaled(&mut s.combos[k], &combo_snapshot, &c);
                }
            }
            let pos = s.pivots.partition_point(|&q| q < p);
            s.rows.insert(pos, v);
            s.combos.insert(pos, combo);
            s.pivots.insert(pos, p);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pivot_mode(&self) -> PivotMode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    /// Echelon basis rows (reduced, pivot-sorted).
    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce_tracking(&self, v: &mut SparseVec, combo: &mut [Scalar]) {
        for (k, row) in self.rows.iter().enumerate() {
            let c = v.coeff(self.pivots[k]);
            if !c.is_zero() {
                v.add_scaled(row, &(-&c));
                dense_sub_scaled(combo, &self.combos[k], &c);
            }
        }
    }

    /// Residue of `v` after reduction by the echelon rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (k, row) in self.rows.iter().enumerate() {
            let c = r.coeff(self.pivots[k]);
            if !c.is_zero() {
                r.add_scaled(row, &(-&c));
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Exact coordinates of `v` with respect to the *generators*, or None if
    /// `v` is not in the span. When the generators are dependent any valid
    /// coordinate vector may be returned.
    pub fn membership(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        assert_eq!(v.dim(), self.ambient, "membership dim mismatch");
        let mut r = v.clone();
        let mut coords = vec![Scalar::zero(); self.generators.len()];
        for (k, row) in self.rows.iter().enumerate() {
            let c = r.coeff(self.pivots[k]);
            if !c.is_zero() {
                r.add_scaled(row, &(-&c));
                for (x, y) in coords.iter_mut().zip(&self.combos[k]) {
                    *x += &(&c * y);
                }
            }
        }
        if r.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    /// True iff the two subspaces of the same ambient space are equal.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.rank() == other.rank()
            && self.rows.iter().all(|r| other.contains(r))
    }
}

// ---------------------------------------------------------------------------
// Quotient by a subspace
// ---------------------------------------------------------------------------

/// Basis data for `ambient / span`: representatives are the non-pivot
/// coordinate indices, and projection reduces by the echelon rows and reads
/// off the surviving coordinates.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ambient: usize,
    reps: Vec<usize>,
    rep_pos: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

pub fn quotient_basis(ambient: usize, s: &Subspace) -> QuotientMap {
    assert_eq!(s.ambient(), ambient, "quotient ambient mismatch");
    let mut rep_pos = vec![None; ambient];
    let mut reps = Vec::new();
    let mut piv = s.pivots().iter().copied().peekable();
    for i in 0..ambient {
        if piv.peek() == Some(&i) {
            piv.next();
        } else {
            rep_pos[i] = Some(reps.len());
            reps.push(i);
        }
    }
    QuotientMap {
        ambient,
        reps,
        rep_pos,
        rows: s.basis().to_vec(),
        pivots: s.pivots().to_vec(),
    }
}

impl QuotientMap {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Ambient indices of the class representatives, ascending.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Ambient unit vector representing class `k`.
    pub fn rep_vector(&self, k: usize) -> SparseVec {
        SparseVec::unit(self.ambient, self.reps[k])
    }

    /// Class coordinates of an ambient vector (length = quotient dim).
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.ambient, "projection dim mismatch");
        let mut r = v.clone();
        for (k, row) in self.rows.iter().enumerate() {
            let c = r.coeff(self.pivots[k]);
            if !c.is_zero() {
                r.add_scaled(row, &(-&c));
            }
        }
        SparseVec::from_entries(
            self.dim(),
            r.iter()
                .map(|(i, c)| {
                    (
                        self.rep_pos[i].expect("reduced vector supported on representatives"),
                        c.clone(),
                    )
                })
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

/// Dense rows-by-cols matrix of scalars. Small sizes only; used for module
/// actions, intertwiners and endomorphism algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> SparseVec {
        SparseVec::from_entries(
            self.rows,
            (0..self.rows)
                .filter(|&i| !self.at(i, j).is_zero())
                .map(|i| (i, self.at(i, j).clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(&other.data) {
            *x -= y;
        }
        m
    }

    pub fn scaled(&self, c: &Scalar) -> Mat {
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x *= c;
        }
        m
    }

    /// Kronecker product; index (i,j) of the operand pair maps to
    /// i * other_dim + j on each side.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        let mut m = Mat::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            *m.at_mut(i * other.rows + k, j * other.cols + l) = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut m = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *m.at_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (k, c) in v.iter() {
            for i in 0..self.rows {
                let a = self.at(i, k);
                if !a.is_zero() {
                    out[i] += &(a * c);
                }
            }
        }
        SparseVec::from_dense(&out)
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn rank(&self) -> usize {
        let gens = (0..self.rows)
            .map(|i| SparseVec::from_dense(self.row(i)))
            .collect();
        Subspace::echelonize(self.cols, gens).rank()
    }

    /// Basis of the right null space {x : M x = 0}.
    pub fn kernel(&self) -> Vec<SparseVec> {
        // RREF of the rows, then one basis vector per free column.
        let gens = (0..self.rows)
            .map(|i| SparseVec::from_dense(self.row(i)))
            .collect();
        let s = Subspace::echelonize(self.cols, gens);
        let pivots = s.pivots();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut entries = vec![(free, Scalar::one())];
            for (k, row) in s.basis().iter().enumerate() {
                let c = row.coeff(free);
                if !c.is_zero() {
                    entries.push((pivots[k], -&c));
                }
            }
            basis.push(SparseVec::from_entries(self.cols, entries));
        }
        basis
    }

    /// Exact inverse, or None when singular.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot_row * n + j);
                    inv.data.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p = a.at(col, col).recip();
            for j in 0..n {
                let x = a.at(col, j) * &p;
                *a.at_mut(col, j) = x;
                let y = inv.at(col, j) * &p;
                *inv.at_mut(col, j) = y;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let c = a.at(r, col).clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.at(r, j) - &(&c * a.at(col, j));
                    *a.at_mut(r, j) = x;
                    let y = inv.at(r, j) - &(&c * inv.at(col, j));
                    *inv.at_mut(r, j) = y;
                }
            }
        }
        Some(inv)
    }

    /// Solve M x = b exactly; None when inconsistent. When the solution is
    /// not unique an arbitrary valid one is returned.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        assert_eq!(b.dim(), self.rows, "solve rhs dim mismatch");
        // Solve via the transpose trick: x coordinates from membership of b
        // in the column span.
        let cols: Vec<SparseVec> = (0..self.cols).map(|j| self.col_vec(j)).collect();
        let s = Subspace::echelonize(self.rows, cols);
        s.membership(b)
            .map(|coords| SparseVec::from_dense(&coords))
    }
}

/// Error-checked constructor used by the JSON loaders.
pub fn sparse_from_checked(dim: usize, raw: Vec<(usize, Scalar)>) -> Result<SparseVec> {
    for (i, _) in &raw {
        if *i >= dim {
            return Err(Error::IndexRange {
                index: *i,
                dim,
            });
        }
    }
    Ok(SparseVec::from_entries(dim, raw))
}
