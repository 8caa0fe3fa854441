//! Finite-dimensional associative algebras with identity over the rationals,
//! together with their one-sided modules and bimodules: intertwiner spaces,
//! trace-form radicals, isotypic decomposition, tensor factorization of
//! irreducible modules over a tensor algebra, tensor products over an
//! algebra, and fusion-dimension computations with a dual cross-check.
//!
//! Everything is exact. Every constructor validates its laws on full basis
//! scans (associativity on all triples, unit laws, commuting bimodule
//! actions), so an object of these types is a certificate, not a claim.

use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, Mat, QuotientMap, SparseVec, Subspace};
use crate::report::{CheckReport, VerificationReport};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// Associative algebra with identity, presented by a full structure-constant
/// table over a fixed basis. `mult[i * dim + j]` is the product e_i · e_j.
#[derive(Clone, Debug)]
pub struct AssocAlgebra {
    dim: usize,
    mult: Vec<SparseVec>,
    identity: SparseVec,
}

impl AssocAlgebra {
    /// Validates the unit laws and associativity on every basis triple.
    pub fn new(dim: usize, mult: Vec<SparseVec>, identity: SparseVec) -> Result<AssocAlgebra> {
        if mult.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "mult table has {} entries, expected {}",
                mult.len(),
                dim * dim
            )));
        }
        if identity.dim() != dim {
            return Err(Error::DimMismatch(identity.dim(), dim));
        }
        for (k, v) in mult.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::InvalidInput(format!(
                    "mult entry ({},{}) has dimension {}, expected {}",
                    k / dim,
                    k % dim,
                    v.dim(),
                    dim
                )));
            }
        }
        let a = AssocAlgebra {
            dim,
            mult,
            identity,
        };
        for j in 0..dim {
            let e = SparseVec::unit(dim, j);
            if a.mul(&a.identity, &e) != e {
                return Err(Error::InvalidInput(format!(
                    "identity fails from the left on basis element {j}"
                )));
            }
            if a.mul(&e, &a.identity) != e {
                return Err(Error::InvalidInput(format!(
                    "identity fails from the right on basis element {j}"
                )));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = a.mult_basis(i, j).clone();
                for k in 0..dim {
                    let ek = SparseVec::unit(dim, k);
                    let lhs = a.mul(&ij, &ek);
                    let rhs = a.mul(&SparseVec::unit(dim, i), a.mult_basis(j, k));
                    if lhs != rhs {
                        return Err(Error::InvalidInput(format!(
                            "associativity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> &SparseVec {
        &self.identity
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    /// Bilinear product.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero(self.dim);
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                out.add_scaled(self.mult_basis(i, j), &(ci * cj));
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` on the algebra itself.
    pub fn left_mult(&self, x: &SparseVec) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(x, &SparseVec::unit(self.dim, j));
            for (i, c) in col.iter() {
                *m.at_mut(i, j) = c.clone();
            }
        }
        m
    }

    /// Matrix of right multiplication by `x` on the algebra itself.
    pub fn right_mult(&self, x: &SparseVec) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(&SparseVec::unit(self.dim, j), x);
            for (i, c) in col.iter() {
                *m.at_mut(i, j) = c.clone();
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult_basis(i, j) == self.mult_basis(j, i)))
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> AssocAlgebra {
        AssocAlgebra::new(
            1,
            vec![SparseVec::unit(1, 0)],
            SparseVec::unit(1, 0),
        )
        .expect("ground field is an algebra")
    }

    /// Direct sum A ⊕ B (componentwise product, identity 1_A + 1_B).
    pub fn direct_sum(a: &AssocAlgebra, b: &AssocAlgebra) -> AssocAlgebra {
        let dim = a.dim + b.dim;
        let lift_a = |v: &SparseVec| v.map_indices(dim, |i| i);
        let lift_b = |v: &SparseVec| v.map_indices(dim, |i| i + a.dim);
        let mut mult = vec![SparseVec::zero(dim); dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mult[i * dim + j] = lift_a(a.mult_basis(i, j));
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                mult[(a.dim + i) * dim + (a.dim + j)] = lift_b(b.mult_basis(i, j));
            }
        }
        let mut identity = lift_a(&a.identity);
        identity.add(&lift_b(&b.identity));
        AssocAlgebra::new(dim, mult, identity).expect("direct sum of algebras is an algebra")
    }

    /// Full matrix algebra of n-by-n matrices; basis E_{ij} at index i*n+j.
    pub fn matrix_algebra(n: usize) -> AssocAlgebra {
        let dim = n * n;
        let mut mult = vec![SparseVec::zero(dim); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let out = if j == k {
                            SparseVec::unit(dim, i * n + l)
                        } else {
                            SparseVec::zero(dim)
                        };
                        mult[(i * n + j) * dim + (k * n + l)] = out;
                    }
                }
            }
        }
        let identity =
            SparseVec::from_entries(dim, (0..n).map(|i| (i * n + i, Scalar::one())).collect());
        AssocAlgebra::new(dim, mult, identity).expect("matrix algebra is an algebra")
    }

    /// Q[x]/(p) for a monic polynomial p of degree d ≥ 1, given by its lower
    /// coefficients: p = x^d + c[d-1] x^{d-1} + ... + c[0]. Basis 1, x, ...,
    /// x^{d-1}.
    pub fn polynomial_quotient(lower: &[Scalar]) -> AssocAlgebra {
        let d = lower.len();
        assert!(d >= 1, "degree must be at least 1");
        // powers[k] = x^k reduced, for k up to 2d-2
        let mut powers: Vec<SparseVec> = Vec::with_capacity(2 * d - 1);
        for k in 0..d {
            powers.push(SparseVec::unit(d, k));
        }
        let head = SparseVec::from_entries(
            d,
            lower
                .iter()
                .enumerate()
                .map(|(i, c)| (i, -c))
                .collect(),
        );
        for _ in d..=(2 * d - 2).max(d) {
            let prev = powers.last().expect("nonempty").clone();
            // multiply by x: shift indices, reduce x^d via the relation
            let mut next = SparseVec::zero(d);
            for (i, c) in prev.iter() {
                if i + 1 < d {
                    next.add_scaled(&SparseVec::unit(d, i + 1), c);
                } else {
                    next.add_scaled(&head, c);
                }
            }
            powers.push(next);
        }
        let mut mult = vec![SparseVec::zero(d); d * d];
        for i in 0..d {
            for j in 0..d {
                mult[i * d + j] = powers[i + j].clone();
            }
        }
        AssocAlgebra::new(d, mult, SparseVec::unit(d, 0))
            .expect("polynomial quotient is an algebra")
    }
}

/// Tensor product algebra A ⊗ B; basis pairs (i, j) at index i * dim(B) + j.
pub fn tensor_algebra(a: &AssocAlgebra, b: &AssocAlgebra) -> AssocAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let pair = |x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut entries = Vec::new();
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                entries.push((i * db + j, ci * cj));
            }
        }
        SparseVec::from_entries(dim, entries)
    };
    let mut mult = vec![SparseVec::zero(dim); dim * dim];
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    mult[(i * db + j) * dim + (k * db + l)] =
                        pair(a.mult_basis(i, k), b.mult_basis(j, l));
                }
            }
        }
    }
    let identity = pair(a.identity(), b.identity());
    AssocAlgebra::new(dim, mult, identity).expect("tensor of algebras is an algebra")
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

/// Left module: one action matrix per algebra basis element, acting on column
/// vectors, with act(x)·act(y) = act(x·y) and act(1) = I.
#[derive(Clone, Debug)]
pub struct AlgModule {
    dim: usize,
    action: Vec<Mat>,
}

impl AlgModule {
    pub fn new(alg: &AssocAlgebra, action: Vec<Mat>) -> Result<AlgModule> {
        if action.len() != alg.dim() {
            return Err(Error::DimMismatch(action.len(), alg.dim()));
        }
        let dim = action.first().map_or(0, |m| m.nrows());
        for (i, m) in action.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::InvalidInput(format!(
                    "action matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let module = AlgModule { dim, action };
        if module.act(alg, alg.identity()) != Mat::identity(dim) {
            return Err(Error::InvalidInput(
                "module action of the identity is not the identity matrix".into(),
            ));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = module.action[i].mul(&module.action[j]);
                let rhs = module.act(alg, alg.mult_basis(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "module action is not a homomorphism on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(module)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    /// Action matrix of a general algebra element.
    pub fn act(&self, _alg: &AssocAlgebra, x: &SparseVec) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for (i, c) in x.iter() {
            m = m.add(&self.action[i].scaled(c));
        }
        m
    }

    pub fn apply(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero(self.dim);
        for (i, c) in x.iter() {
            out.add_scaled(&self.action[i].mul_sparse(v), c);
        }
        out
    }
}

/// Right module: matrices R with R(x·y) = R(y)·R(x) and R(1) = I; the action
/// is m·x = R(x) m on column vectors.
#[derive(Clone, Debug)]
pub struct RightModule {
    dim: usize,
    action: Vec<Mat>,
}

impl RightModule {
    pub fn new(alg: &AssocAlgebra, action: Vec<Mat>) -> Result<RightModule> {
        if action.len() != alg.dim() {
            return Err(Error::DimMismatch(action.len(), alg.dim()));
        }
        let dim = action.first().map_or(0, |m| m.nrows());
        for (i, m) in action.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::InvalidInput(format!(
                    "right action matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let module = RightModule { dim, action };
        if module.act(alg.identity()) != Mat::identity(dim) {
            return Err(Error::InvalidInput(
                "right action of the identity is not the identity matrix".into(),
            ));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = module.action[j].mul(&module.action[i]);
                let rhs = module.act(alg.mult_basis(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "right action is not an anti-homomorphism on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(module)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn act(&self, x: &SparseVec) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for (i, c) in x.iter() {
            m = m.add(&self.action[i].scaled(c));
        }
        m
    }
}

/// Bimodule over a pair of algebras: commuting unital left and right actions.
#[derive(Clone, Debug)]
pub struct Bimod {
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl Bimod {
    pub fn new(
        left_alg: &AssocAlgebra,
        right_alg: &AssocAlgebra,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Result<Bimod> {
        let l = AlgModule::new(left_alg, left)?;
        let r = RightModule::new(right_alg, right)?;
        if l.dim() != r.dim() {
            return Err(Error::DimMismatch(l.dim(), r.dim()));
        }
        for i in 0..left_alg.dim() {
            for j in 0..right_alg.dim() {
                let lr = l.action(i).mul(r.action(j));
                let rl = r.action(j).mul(l.action(i));
                if lr != rl {
                    return Err(Error::InvalidInput(format!(
                        "left action {i} and right action {j} do not commute"
                    )));
                }
            }
        }
        Ok(Bimod {
            dim: l.dim(),
            left: l.action,
            right: r.action,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Mat {
        &self.right[i]
    }

    pub fn left_module(&self) -> AlgModule {
        AlgModule {
            dim: self.dim,
            action: self.left.clone(),
        }
    }

    pub fn right_module(&self) -> RightModule {
        RightModule {
            dim: self.dim,
            action: self.right.clone(),
        }
    }

    /// The algebra itself as a bimodule over itself.
    pub fn regular(alg: &AssocAlgebra) -> Bimod {
        let left = (0..alg.dim())
            .map(|i| alg.left_mult(&SparseVec::unit(alg.dim(), i)))
            .collect();
        let right = (0..alg.dim())
            .map(|i| alg.right_mult(&SparseVec::unit(alg.dim(), i)))
            .collect();
        Bimod::new(alg, alg, left, right).expect("regular bimodule satisfies the laws")
    }

    /// Tensor of bimodules over the tensor algebras: index (i,j) of the left
    /// tensor algebra acts by left1_i ⊗ left2_j, and likewise on the right.
    pub fn tensor(
        a1: &AssocAlgebra,
        b1: &Bimod,
        a2: &AssocAlgebra,
        b2: &Bimod,
    ) -> Bimod {
        let left = pair_kron(a1.dim(), &b1.left, a2.dim(), &b2.left);
        let right = pair_kron(a1.dim(), &b1.right, a2.dim(), &b2.right);
        let t = tensor_algebra(a1, a2);
        Bimod::new(&t, &t, left, right).expect("tensor of bimodules satisfies the laws")
    }
}

fn pair_kron(d1: usize, m1: &[Mat], d2: usize, m2: &[Mat]) -> Vec<Mat> {
    let mut out = Vec::with_capacity(d1 * d2);
    for i in 0..d1 {
        for j in 0..d2 {
            out.push(m1[i].kronecker(&m2[j]));
        }
    }
    out
}

/// The algebra acting on itself by left multiplication.
pub fn regular_module(alg: &AssocAlgebra) -> AlgModule {
    let action = (0..alg.dim())
        .map(|i| alg.left_mult(&SparseVec::unit(alg.dim(), i)))
        .collect();
    AlgModule::new(alg, action).expect("regular module satisfies the laws")
}

/// Dual of a left module as a right module: (φ·x)(v) = φ(x·v), so the right
/// action matrices are the transposes of the left ones.
pub fn dual_right_module(alg: &AssocAlgebra, m: &AlgModule) -> RightModule {
    let action = (0..alg.dim()).map(|i| m.action(i).transpose()).collect();
    RightModule::new(alg, action).expect("dual of a module satisfies the laws")
}

/// Tensor of left modules over the tensor algebra.
pub fn tensor_module_pair(
    a1: &AssocAlgebra,
    m1: &AlgModule,
    a2: &AssocAlgebra,
    m2: &AlgModule,
) -> AlgModule {
    let t = tensor_algebra(a1, a2);
    AlgModule::new(&t, pair_kron(a1.dim(), &m1.action, a2.dim(), &m2.action))
        .expect("tensor of modules satisfies the laws")
}

// ---------------------------------------------------------------------------
// Intertwiners, submodules, radical, decomposition
// ---------------------------------------------------------------------------

/// Basis of the space of module maps `from → to`: matrices F with
/// F·act_from(x) = act_to(x)·F for all x.
pub fn hom_space(alg: &AssocAlgebra, from: &AlgModule, to: &AlgModule) -> Vec<Mat> {
    let (fd, td) = (from.dim(), to.dim());
    let unknowns = fd * td;
    if unknowns == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..alg.dim() {
        let mf = from.action(i);
        let mt = to.action(i);
        for r in 0..td {
            for c in 0..fd {
                let mut row = vec![Scalar::zero(); unknowns];
                // (F · mf)[r,c] = Σ_y F[r,y] mf[y,c]
                for y in 0..fd {
                    row[r * fd + y] += mf.at(y, c);
                }
                // (mt · F)[r,c] = Σ_x mt[r,x] F[x,c]
                for x in 0..td {
                    row[x * fd + c] -= mt.at(r, x);
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Mat::zero(1, unknowns)
    } else {
        Mat::from_rows(rows)
    };
    system
        .kernel()
        .into_iter()
        .map(|v| {
            let d = v.to_dense();
            Mat::from_fn(td, fd, |x, y| d[x * fd + y].clone())
        })
        .collect()
}

/// Smallest invariant subspace containing `v` (the cyclic submodule A·v).
fn cyclic_span(alg: &AssocAlgebra, m: &AlgModule, v: &SparseVec) -> Subspace {
    let mut gens = vec![v.clone()];
    let mut span = Subspace::echelonize(m.dim(), gens.clone());
    let mut frontier = vec![v.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..alg.dim() {
                let u = m.action(i).mul_sparse(w);
                if !u.is_zero() && !span.contains(&u) {
                    gens.push(u.clone());
                    span = Subspace::echelonize(m.dim(), gens.clone());
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    span
}

/// Restriction of the action to an invariant subspace given by echelon rows.
fn restrict_action(
    m: &AlgModule,
    sub: &Subspace,
) -> Result<(Vec<Mat>, Mat)> {
    let d = sub.rank();
    let rows = sub.basis();
    let pivots = sub.pivots();
    let mut inclusion = Mat::zero(m.dim(), d);
    for (k, row) in rows.iter().enumerate() {
        for (i, c) in row.iter() {
            *inclusion.at_mut(i, k) = c.clone();
        }
    }
    let mut action = Vec::with_capacity(m.action.len());
    for a in &m.action {
        let mut small = Mat::zero(d, d);
        for k in 0..d {
            let image = a.mul_sparse(&rows[k]);
            // read off echelon coordinates, then confirm the residual is zero
            let mut resid = image.clone();
            for (l, row) in rows.iter().enumerate() {
                let c = resid.coeff(pivots[l]);
                if !c.is_zero() {
                    *small.at_mut(l, k) = c.clone();
                    resid.add_scaled(row, &(-&c));
                }
            }
            if !resid.is_zero() {
                return Err(Error::InvalidInput(
                    "subspace is not invariant under the action".into(),
                ));
            }
        }
        action.push(small);
    }
    Ok((action, inclusion))
}

/// Minimal polynomial of a square matrix, as monic coefficients
/// [c_0, ..., c_{d-1}, 1]: the first linear dependence among I, f, f², ...
fn mat_min_poly(f: &Mat) -> Vec<Scalar> {
    let n = f.nrows();
    let flat = |m: &Mat| -> SparseVec {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = m.at(i, j);
                if !v.is_zero() {
                    entries.push((i * n + j, v.clone()));
                }
            }
        }
        SparseVec::from_entries(n * n, entries)
    };
    let mut power = Mat::identity(n);
    let mut seen: Vec<SparseVec> = Vec::new();
    loop {
        let span = Subspace::echelonize(n * n, seen.clone());
        let candidate = flat(&power);
        if let Some(coords) = span.membership(&candidate) {
            let mut poly: Vec<Scalar> = coords.into_iter().map(|c| -c).collect();
            poly.push(Scalar::one());
            return poly;
        }
        seen.push(candidate);
        power = power.mul(f);
    }
}

/// All rational roots of a monic rational polynomial (with multiplicity
/// deflated away), found exactly by the rational root theorem. Gives up —
/// returning what it has — if coefficients exceed machine range, so callers
/// must treat the result as "roots found", not "all roots".
fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = poly.to_vec();
    let mut roots = Vec::new();
    let eval = |p: &[Scalar], x: &Scalar| -> Scalar {
        let mut acc = Scalar::zero();
        for c in p.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    };
    let deflate = |p: &[Scalar], r: &Scalar| -> Vec<Scalar> {
        // synthetic division by (x - r); remainder is zero by construction
        let mut q = vec![Scalar::zero(); p.len() - 1];
        let mut carry = p[p.len() - 1].clone();
        for k in (0..p.len() - 1).rev() {
            q[k] = carry.clone();
            carry = &p[k] + &(&carry * r);
        }
        q
    };
    'outer: while p.len() > 1 {
        // root zero: constant term vanishes
        if p[0].is_zero() {
            roots.push(Scalar::zero());
            p.remove(0);
            continue;
        }
        // clear denominators to an integer polynomial
        let mut lcm: i64 = 1;
        for c in &p {
            let Some((_, q)) = c.as_i64_ratio() else {
                return roots;
            };
            let g = gcd_i64(lcm.unsigned_abs(), q.unsigned_abs()) as i64;
            let Some(l) = (lcm / g).checked_mul(q) else {
                return roots;
            };
            lcm = l;
        }
        let mut int_coeffs = Vec::with_capacity(p.len());
        for c in &p {
            let (num, den) = c.as_i64_ratio().expect("checked above");
            let Some(v) = num.checked_mul(lcm / den) else {
                return roots;
            };
            int_coeffs.push(v);
        }
        let a0 = int_coeffs[0].unsigned_abs();
        let an = int_coeffs[p.len() - 1].unsigned_abs();
        if a0 > 1_000_000_000_000 {
            return roots;
        }
        for num in divisors(a0) {
            for den in divisors(an) {
                for sgn in [1i64, -1] {
                    let cand = Scalar::ratio(sgn * num as i64, den as i64);
                    if eval(&p, &cand).is_zero() {
                        roots.push(cand.clone());
                        p = deflate(&p, &cand);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    roots
}

fn gcd_i64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn mat_is_scalar(f: &Mat) -> bool {
    let n = f.nrows();
    if n == 0 {
        return true;
    }
    let lambda = f.at(0, 0).clone();
    *f == Mat::identity(n).scaled(&lambda)
}

/// A proper nonzero invariant subspace found through the endomorphism
/// algebra: central intertwiners split isotypic components with guaranteed
/// rational spectra whenever the action is split semisimple, and general
/// intertwiners with rational eigenvalues split further.
fn eigen_split(alg: &AssocAlgebra, m: &AlgModule) -> Option<Subspace> {
    let ends = hom_space(alg, m, m);
    if ends.len() <= 1 {
        return None;
    }
    // center of the endomorphism algebra first: for a split semisimple
    // action its elements have fully rational spectra
    let e = ends.len();
    let n = m.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in &ends {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Scalar::zero(); e];
                for (j, f) in ends.iter().enumerate() {
                    let comm = f.mul(g).sub(&g.mul(f));
                    row[j] = comm.at(r, c).clone();
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let central: Vec<Mat> = if rows.is_empty() {
        ends.clone()
    } else {
        Mat::from_rows(rows)
            .kernel()
            .into_iter()
            .map(|v| {
                let mut f = Mat::zero(n, n);
                for (j, c) in v.iter() {
                    f = f.add(&ends[j].scaled(c));
                }
                f
            })
            .collect()
    };
    for f in central.iter().chain(ends.iter()) {
        if mat_is_scalar(f) {
            continue;
        }
        for lambda in rational_roots(&mat_min_poly(f)) {
            let shifted = f.sub(&Mat::identity(n).scaled(&lambda));
            let ker = Subspace::echelonize(n, shifted.kernel());
            if ker.rank() > 0 && ker.rank() < n {
                return Some(ker);
            }
        }
    }
    None
}

/// An irreducible invariant subspace, as a module plus its inclusion,
/// assuming the action on the module is semisimple (callers establish this
/// with radical checks).
///
/// Strategy: while the endomorphism algebra is bigger than the scalars, split
/// along a rational eigenvalue of an intertwiner (central ones first — their
/// spectra are rational whenever the action is split), falling back to proper
/// cyclic submodules of basis vectors. If nothing splits, the current
/// candidate is returned; callers certify irreducibility downstream through
/// endomorphism dimensions, so a non-split leftover is reported honestly
/// rather than mislabelled.
pub fn irreducible_submodule(
    alg: &AssocAlgebra,
    m: &AlgModule,
) -> Result<(AlgModule, Mat)> {
    if m.dim() == 0 {
        return Err(Error::InvalidInput(
            "cannot extract an irreducible submodule of the zero module".into(),
        ));
    }
    let mut current = m.clone();
    let mut inclusion = Mat::identity(m.dim());
    'shrink: while current.dim() > 1 {
        if let Some(w) = eigen_split(alg, &current) {
            let (action, incl) = restrict_action(&current, &w)?;
            current = AlgModule {
                dim: w.rank(),
                action,
            };
            inclusion = inclusion.mul(&incl);
            continue 'shrink;
        }
        // cyclic fallback: unit vectors, then sums of pairs
        let n = current.dim();
        let mut candidates: Vec<SparseVec> = (0..n).map(|i| SparseVec::unit(n, i)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut s = SparseVec::unit(n, i);
                s.add(&SparseVec::unit(n, j));
                candidates.push(s);
            }
        }
        for v in &candidates {
            let c = cyclic_span(alg, &current, v);
            if c.rank() > 0 && c.rank() < n {
                let (action, incl) = restrict_action(&current, &c)?;
                current = AlgModule {
                    dim: c.rank(),
                    action,
                };
                inclusion = inclusion.mul(&incl);
                continue 'shrink;
            }
        }
        break;
    }
    Ok((current, inclusion))
}

/// Radical via the trace form of the regular representation: the kernel of
/// the Gram matrix G[i][j] = tr(L_i L_j). Exact and valid in characteristic
/// zero.
pub fn radical(alg: &AssocAlgebra) -> Subspace {
    let left: Vec<Mat> = (0..alg.dim())
        .map(|i| alg.left_mult(&SparseVec::unit(alg.dim(), i)))
        .collect();
    let gram = Mat::from_fn(alg.dim(), alg.dim(), |i, j| left[i].mul(&left[j]).trace());
    Subspace::echelonize(alg.dim(), gram.kernel())
}

pub fn is_semisimple(alg: &AssocAlgebra) -> bool {
    radical(alg).rank() == 0
}

/// One isotypic component of a decomposition.
#[derive(Clone, Debug)]
pub struct Isotypic {
    /// A representative irreducible summand.
    pub simple: AlgModule,
    /// Inclusion of that summand into the decomposed module.
    pub inclusion: Mat,
    pub multiplicity: usize,
    /// Projection onto the full isotypic component along the others.
    pub projection: Mat,
}

/// Bootstrap decomposition by peeling irreducible submodules one isotypic
/// component at a time. Reliable when minimal submodules are discoverable by
/// `irreducible_submodule` — in practice, for modules presented in a
/// structured basis such as the regular module of an algebra over its own
/// basis. The general entry point `decompose` reduces arbitrary modules to
/// this case through intertwiner spaces.
fn peel_decompose(alg: &AssocAlgebra, m: &AlgModule) -> Result<Vec<Isotypic>> {
    let mut pieces: Vec<(AlgModule, Mat, usize, Vec<SparseVec>)> = Vec::new();
    // rest of the module, tracked by an inclusion matrix into m's coordinates
    let mut rest_incl = Mat::identity(m.dim());
    let mut rest = m.clone();
    while rest.dim() > 0 {
        let (simple, s_incl) = irreducible_submodule(alg, &rest)?;
        let end_dim = hom_space(alg, &simple, &simple).len();
        if end_dim != 1 {
            return Err(Error::NotSplit(format!(
                "a summand of dimension {} has endomorphism algebra of dimension {}, so it is \
                 not certified split over the rationals",
                simple.dim(),
                end_dim
            )));
        }
        let embeds = hom_space(alg, &simple, &rest);
        let multiplicity = embeds.len();
        // isotypic component inside `rest`: the span of all embedded copies
        let mut iso_gens = Vec::new();
        for f in &embeds {
            for k in 0..simple.dim() {
                iso_gens.push(f.col_vec(k));
            }
        }
        let iso = Subspace::echelonize(rest.dim(), iso_gens);
        if iso.rank() != multiplicity * simple.dim() {
            return Err(Error::InvalidInput(
                "isotypic span rank does not match multiplicity times dimension".into(),
            ));
        }
        // invariant complement: intersection of kernels of all maps rest → simple
        let quots = hom_space(alg, &rest, &simple);
        let mut stacked_rows = Vec::new();
        for g in &quots {
            for r in 0..g.nrows() {
                stacked_rows.push(g.row(r).to_vec());
            }
        }
        let complement_basis = if stacked_rows.is_empty() {
            (0..rest.dim())
                .map(|i| SparseVec::unit(rest.dim(), i))
                .collect::<Vec<_>>()
        } else {
            Mat::from_rows(stacked_rows).kernel()
        };
        let comp = Subspace::echelonize(rest.dim(), complement_basis);
        if iso.rank() + comp.rank() != rest.dim() {
            return Err(Error::InvalidInput(
                "isotypic component and its complement do not fill the module".into(),
            ));
        }
        // record the piece in m's coordinates
        let simple_incl_m = rest_incl.mul(&s_incl);
        let iso_basis_m: Vec<SparseVec> = iso
            .basis()
            .iter()
            .map(|v| rest_incl.mul_sparse(v))
            .collect();
        pieces.push((simple, simple_incl_m, multiplicity, iso_basis_m));
        // descend into the complement
        let (comp_action, comp_incl) = restrict_action(&rest, &comp)?;
        rest = AlgModule {
            dim: comp.rank(),
            action: comp_action,
        };
        rest_incl = rest_incl.mul(&comp_incl);
    }
    // assemble projections from the full direct-sum basis
    let total: usize = pieces.iter().map(|p| p.3.len()).sum();
    if total != m.dim() {
        return Err(Error::InvalidInput(
            "isotypic components do not sum to the whole module".into(),
        ));
    }
    let mut basis_cols: Vec<SparseVec> = Vec::with_capacity(m.dim());
    for p in &pieces {
        basis_cols.extend(p.3.iter().cloned());
    }
    let mut change = Mat::zero(m.dim(), m.dim());
    for (j, col) in basis_cols.iter().enumerate() {
        for (i, c) in col.iter() {
            *change.at_mut(i, j) = c.clone();
        }
    }
    let inv = change
        .inverse()
        .ok_or_else(|| Error::InvalidInput("isotypic basis change is singular".into()))?;
    let mut out = Vec::with_capacity(pieces.len());
    let mut offset = 0usize;
    for (simple, inclusion, multiplicity, iso_basis) in pieces {
        let block = iso_basis.len();
        let mut selector = Mat::zero(m.dim(), m.dim());
        for k in offset..offset + block {
            *selector.at_mut(k, k) = Scalar::one();
        }
        let projection = change.mul(&selector).mul(&inv);
        out.push(Isotypic {
            simple,
            inclusion,
            multiplicity,
            projection,
        });
        offset += block;
    }
    Ok(out)
}

/// All irreducible modules of the algebra (up to isomorphism, each once),
/// read off from the regular module of the semisimple quotient by the
/// radical. The regular module lives in the algebra's own basis, where
/// minimal left ideals are discoverable, so this works even for modules that
/// are later presented in hostile bases.
pub fn simple_modules(alg: &AssocAlgebra) -> Result<Vec<AlgModule>> {
    let rad = radical(alg);
    if rad.rank() == 0 {
        return Ok(peel_decompose(alg, &regular_module(alg))?
            .into_iter()
            .map(|p| p.simple)
            .collect());
    }
    // pass to the semisimple quotient by the radical (a two-sided ideal)
    let q = quotient_basis(alg.dim(), &rad);
    let qd = q.dim();
    let mut mult = Vec::with_capacity(qd * qd);
    for k in 0..qd {
        for l in 0..qd {
            mult.push(q.project(&alg.mul(&q.rep_vector(k), &q.rep_vector(l))));
        }
    }
    let quotient = AssocAlgebra::new(qd, mult, q.project(alg.identity()))?;
    let simples_q = peel_decompose(&quotient, &regular_module(&quotient))?;
    // lift each simple back: e_i acts as its class does
    let mut out = Vec::with_capacity(simples_q.len());
    for piece in simples_q {
        let s = piece.simple;
        let action: Vec<Mat> = (0..alg.dim())
            .map(|i| {
                let class = q.project(&SparseVec::unit(alg.dim(), i));
                let mut mat = Mat::zero(s.dim(), s.dim());
                for (k, c) in class.iter() {
                    mat = mat.add(&s.action(k).scaled(c));
                }
                mat
            })
            .collect();
        out.push(AlgModule::new(alg, action)?);
    }
    Ok(out)
}

/// Complete isotypic decomposition of a module with semisimple action.
///
/// Errors when the radical acts nonzero (naming a witness) or when the
/// isotypic spans of the split simples fail to fill the module (some summand
/// is not split over the rationals).
///
/// Works in any presentation basis: the simples come from the algebra's
/// regular module, and the module is carved up purely by intertwiner spaces.
pub fn decompose(alg: &AssocAlgebra, m: &AlgModule) -> Result<Vec<Isotypic>> {
    let rad = radical(alg);
    for r in rad.basis() {
        if !m.act(alg, r).is_zero() {
            return Err(Error::NotSemisimple(format!(
                "radical element with coordinates {:?} acts nonzero on the module",
                r.iter().map(|(i, c)| (i, c.to_string())).collect::<Vec<_>>()
            )));
        }
    }
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let simples = simple_modules(alg)?;
    let mut pieces: Vec<(AlgModule, Mat, usize, Vec<SparseVec>)> = Vec::new();
    for s in simples {
        let embeds = hom_space(alg, &s, m);
        if embeds.is_empty() {
            continue;
        }
        let multiplicity = embeds.len();
        let mut iso_gens = Vec::new();
        for f in &embeds {
            for k in 0..s.dim() {
                iso_gens.push(f.col_vec(k));
            }
        }
        let iso = Subspace::echelonize(m.dim(), iso_gens);
        if iso.rank() != multiplicity * s.dim() {
            return Err(Error::NotSplit(format!(
                "isotypic span of a dimension-{} simple has rank {}, expected {}",
                s.dim(),
                iso.rank(),
                multiplicity * s.dim()
            )));
        }
        let inclusion = embeds[0].clone();
        let iso_basis = iso.basis().to_vec();
        pieces.push((s, inclusion, multiplicity, iso_basis));
    }
    let total: usize = pieces.iter().map(|p| p.3.len()).sum();
    if total != m.dim() {
        return Err(Error::NotSplit(format!(
            "isotypic components cover {total} of {} dimensions; some summand is not split \
             over the rationals",
            m.dim()
        )));
    }
    // assemble projections from the full direct-sum basis
    let mut basis_cols: Vec<SparseVec> = Vec::with_capacity(m.dim());
    for p in &pieces {
        basis_cols.extend(p.3.iter().cloned());
    }
    let mut change = Mat::zero(m.dim(), m.dim());
    for (j, col) in basis_cols.iter().enumerate() {
        for (i, c) in col.iter() {
            *change.at_mut(i, j) = c.clone();
        }
    }
    let inv = change
        .inverse()
        .ok_or_else(|| Error::InvalidInput("isotypic basis change is singular".into()))?;
    let mut out = Vec::with_capacity(pieces.len());
    let mut offset = 0usize;
    for (simple, inclusion, multiplicity, iso_basis) in pieces {
        let block = iso_basis.len();
        let mut selector = Mat::zero(m.dim(), m.dim());
        for k in offset..offset + block {
            *selector.at_mut(k, k) = Scalar::one();
        }
        let projection = change.mul(&selector).mul(&inv);
        out.push(Isotypic {
            simple,
            inclusion,
            multiplicity,
            projection,
        });
        offset += block;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tensor factorization of an irreducible module over A ⊗ B
// ---------------------------------------------------------------------------

/// Given an irreducible module M over A ⊗ B (action indexed i·dim(B)+j),
/// recover factor modules M₁ over A and M₂ over B together with the exact
/// evaluation isomorphism M₁ ⊗ M₂ → M, (m₁, m₂) ↦ pairing through the
/// multiplicity space.
///
/// M₂ is a known simple of B that embeds into the B-restriction of M, and
/// M₁ is the multiplicity space Hom_B(M₂, M) with A acting by
/// post-composition. Irreducibility is certified up front (the radical of
/// A ⊗ B must annihilate M and its endomorphisms must be the scalars), and
/// the factorization is certified exactly at the end, so a wrong answer
/// cannot escape.
pub fn factor_tensor_module(
    a: &AssocAlgebra,
    b: &AssocAlgebra,
    m: &AlgModule,
) -> Result<(AlgModule, AlgModule, Mat)> {
    let t = tensor_algebra(a, b);
    if m.action.len() != t.dim() {
        return Err(Error::DimMismatch(m.action.len(), t.dim()));
    }
    if m.dim() == 0 {
        return Err(Error::InvalidInput(
            "cannot factor the zero module".into(),
        ));
    }
    // an irreducible module is annihilated by the radical; if not, the span
    // of the radical's images is a proper nonzero submodule
    let radt = radical(&t);
    let mut rad_image = Vec::new();
    for r in radt.basis() {
        let act = m.act(&t, r);
        for l in 0..m.dim() {
            let col = act.col_vec(l);
            if !col.is_zero() {
                rad_image.push(col);
            }
        }
    }
    if !rad_image.is_empty() {
        let w = Subspace::echelonize(m.dim(), rad_image);
        return Err(Error::NotIrreducible(w.rank()));
    }
    // endomorphisms over the tensor algebra must be the scalars
    let ends = hom_space(&t, m, m);
    if ends.len() != 1 {
        if let Some(w) = eigen_split(&t, m) {
            return Err(Error::NotIrreducible(w.rank()));
        }
        for i in 0..m.dim() {
            let c = cyclic_span(&t, m, &SparseVec::unit(m.dim(), i));
            if c.rank() > 0 && c.rank() < m.dim() {
                return Err(Error::NotIrreducible(c.rank()));
            }
        }
        return Err(Error::NotSplit(format!(
            "endomorphism algebra over the tensor product has dimension {}, so the module \
             is reducible or not split over the rationals",
            ends.len()
        )));
    }
    // restriction of M to B: b ↦ action of 1_A ⊗ b
    let db = b.dim();
    let restrict_b: Vec<Mat> = (0..db)
        .map(|j| {
            let mut mat = Mat::zero(m.dim(), m.dim());
            for (i, c) in a.identity().iter() {
                mat = mat.add(&m.action[i * db + j].scaled(c));
            }
            mat
        })
        .collect();
    let m_res_b = AlgModule::new(b, restrict_b)?;
    // find the simple B-factor by probing with B's known simples
    let mut found: Option<(AlgModule, Vec<Mat>)> = None;
    for s in simple_modules(b)? {
        let homs = hom_space(b, &s, &m_res_b);
        if !homs.is_empty() {
            found = Some((s, homs));
            break;
        }
    }
    let Some((m2, homs)) = found else {
        return Err(Error::InvalidInput(
            "no simple factor of B embeds into the module's B-restriction".into(),
        ));
    };
    let d2 = m2.dim();
    let d1 = homs.len();
    if d1 * d2 != m.dim() {
        return Err(Error::NotIrreducible((d1 * d2).min(m.dim())));
    }
    // A-action on the multiplicity space Hom_B(M₂, M): a · f = (a ⊗ 1_B) ∘ f
    let flat = |g: &Mat| -> SparseVec {
        let mut entries = Vec::new();
        for r in 0..g.nrows() {
            for c in 0..g.ncols() {
                let v = g.at(r, c);
                if !v.is_zero() {
                    entries.push((r * g.ncols() + c, v.clone()));
                }
            }
        }
        SparseVec::from_entries(g.nrows() * g.ncols(), entries)
    };
    let mut hom_cols = Mat::zero(m.dim() * d2, d1);
    for (k, f) in homs.iter().enumerate() {
        for r in 0..m.dim() {
            for c in 0..d2 {
                *hom_cols.at_mut(r * d2 + c, k) = f.at(r, c).clone();
            }
        }
    }
    let mut m1_action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let mut one_a = Mat::zero(m.dim(), m.dim());
        for (j, c) in b.identity().iter() {
            one_a = one_a.add(&m.action[i * db + j].scaled(c));
        }
        let mut mat = Mat::zero(d1, d1);
        for (k, f) in homs.iter().enumerate() {
            let composed = one_a.mul(f);
            let coords = hom_cols.solve(&flat(&composed)).ok_or_else(|| {
                Error::InvalidInput(
                    "composition with the A-action left the intertwiner space".into(),
                )
            })?;
            for (x, c) in coords.iter() {
                *mat.at_mut(x, k) = c.clone();
            }
        }
        m1_action.push(mat);
    }
    let m1 = AlgModule::new(a, m1_action)?;
    // evaluation map M₁ ⊗ M₂ → M, basis pair (k, l) at column k·d2 + l
    let mut eval = Mat::zero(m.dim(), d1 * d2);
    for (k, f) in homs.iter().enumerate() {
        for l in 0..d2 {
            for r in 0..m.dim() {
                *eval.at_mut(r, k * d2 + l) = f.at(r, l).clone();
            }
        }
    }
    let _inv = eval.inverse().ok_or_else(|| {
        Error::InvalidInput("evaluation map of the tensor factorization is singular".into())
    })?;
    // certify the intertwiner property on all basis pairs
    for i in 0..a.dim() {
        for j in 0..db {
            let lhs = m.action[i * db + j].mul(&eval);
            let rhs = eval.mul(&m1.action(i).kronecker(m2.action(j)));
            if lhs != rhs {
                return Err(Error::InvalidInput(format!(
                    "evaluation map fails to intertwine basis pair ({i},{j})"
                )));
            }
        }
    }
    Ok((m1, m2, eval))
}

// ---------------------------------------------------------------------------
// Tensor product over an algebra
// ---------------------------------------------------------------------------

/// M_r ⊗_A M_l: the quotient of the plain tensor product by the span of
/// (m·a) ⊗ m' − m ⊗ (a·m'). Pair (r, l) sits at ambient index r·dim(Ml)+l.
pub fn tensor_over_algebra(
    alg: &AssocAlgebra,
    mr: &RightModule,
    ml: &AlgModule,
) -> (usize, QuotientMap) {
    let ambient = mr.dim() * ml.dim();
    let mut rels = Vec::new();
    for i in 0..alg.dim() {
        let ra = mr.action(i);
        let la = ml.action(i);
        for r in 0..mr.dim() {
            for l in 0..ml.dim() {
                let mut v = SparseVec::zero(ambient);
                for rr in 0..mr.dim() {
                    let c = ra.at(rr, r);
                    if !c.is_zero() {
                        v.add_scaled(&SparseVec::unit(ambient, rr * ml.dim() + l), c);
                    }
                }
                for ll in 0..ml.dim() {
                    let c = la.at(ll, l);
                    if !c.is_zero() {
                        v.add_scaled(&SparseVec::unit(ambient, r * ml.dim() + ll), &(-c));
                    }
                }
                if !v.is_zero() {
                    rels.push(v);
                }
            }
        }
    }
    let span = Subspace::echelonize(ambient, rels);
    let q = quotient_basis(ambient, &span);
    (q.dim(), q)
}

/// Transport a commuting matrix action down to quotient classes.
fn quotient_action(q: &QuotientMap, amb: &Mat) -> Mat {
    let mut m = Mat::zero(q.dim(), q.dim());
    for k in 0..q.dim() {
        let img = q.project(&amb.mul_sparse(&q.rep_vector(k)));
        for (i, c) in img.iter() {
            *m.at_mut(i, k) = c.clone();
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Interchange of mixed tensor products (dimension equality)
// ---------------------------------------------------------------------------

/// Data for one side of the interchange identity: an algebra with a right and
/// a left module over it.
pub struct SidedPair<'a> {
    pub algebra: &'a AssocAlgebra,
    pub right: &'a RightModule,
    pub left: &'a AlgModule,
}

/// Checks dim (M ⊗_A M') · dim (N ⊗_B N') = dim (M⊗N) ⊗_{A⊗B} (M'⊗N'),
/// computing both sides independently by the coequalizer construction.
pub fn check_tensor_interchange(one: &SidedPair, two: &SidedPair) -> CheckReport {
    let mut rep = CheckReport::new("mixed tensor interchange dimension equality");
    let (da, _) = tensor_over_algebra(one.algebra, one.right, one.left);
    let (db, _) = tensor_over_algebra(two.algebra, two.right, two.left);
    let lhs = da * db;

    let t = tensor_algebra(one.algebra, two.algebra);
    let right_t = RightModule::new(
        &t,
        pair_kron(
            one.algebra.dim(),
            &one.right.action,
            two.algebra.dim(),
            &two.right.action,
        ),
    )
    .expect("tensor of right modules is a right module");
    let left_t = AlgModule::new(
        &t,
        pair_kron(
            one.algebra.dim(),
            &one.left.action,
            two.algebra.dim(),
            &two.left.action,
        ),
    )
    .expect("tensor of left modules is a module");
    let (rhs, _) = tensor_over_algebra(&t, &right_t, &left_t);
    rep.checked_instances += 1;
    if lhs != rhs {
        rep.add_witness(
            "tensor interchange".into(),
            format!("product of factor dimensions {da}*{db} = {lhs}"),
            format!("joint tensor dimension {rhs}"),
        );
    }
    rep.finish();
    rep
}

// ---------------------------------------------------------------------------
// Fusion dimensions
// ---------------------------------------------------------------------------

/// Left A-module structure on B ⊗_A M where B is an (A,A)-bimodule: descends
/// from the left action of the bimodule.
pub fn bimodule_tensor_left(
    alg: &AssocAlgebra,
    bim: &Bimod,
    m: &AlgModule,
) -> Result<(AlgModule, QuotientMap)> {
    let (_, q) = tensor_over_algebra(alg, &bim.right_module(), m);
    let action: Vec<Mat> = (0..alg.dim())
        .map(|i| quotient_action(&q, &bim.left(i).kronecker(&Mat::identity(m.dim()))))
        .collect();
    Ok((AlgModule::new(alg, action)?, q))
}

/// Fusion dimension: dim Hom_A(B ⊗_A M₂₀, M₃₀), cross-checked against the
/// dual form dim (M₃₀* ⊗_A B ⊗_A M₂₀). The two agree when M₃₀ is semisimple
/// with split summands; any disagreement is returned as an error carrying
/// both values.
pub fn fusion_dim(
    alg: &AssocAlgebra,
    bim: &Bimod,
    m20: &AlgModule,
    m30: &AlgModule,
) -> Result<usize> {
    // precondition: M₃₀ semisimple (split) as an A-module
    decompose(alg, m30)?;
    let (t_mod, _) = bimodule_tensor_left(alg, bim, m20)?;
    let hom = hom_space(alg, &t_mod, m30).len();

    // dual form: M₃₀* ⊗_A B, with the surviving right action, then ⊗_A M₂₀
    let m30_dual = dual_right_module(alg, m30);
    let (_, qx) = tensor_over_algebra(alg, &m30_dual, &bim.left_module());
    let x_right: Vec<Mat> = (0..alg.dim())
        .map(|i| quotient_action(&qx, &Mat::identity(m30.dim()).kronecker(bim.right(i))))
        .collect();
    let x = RightModule::new(alg, x_right)?;
    let (dual, _) = tensor_over_algebra(alg, &x, m20);
    if hom != dual {
        return Err(Error::FusionFormMismatch { hom, dual });
    }
    Ok(hom)
}

/// One complete fusion input: algebra, bimodule, and the two top-level
/// modules.
pub struct FusionInput<'a> {
    pub algebra: &'a AssocAlgebra,
    pub bimodule: &'a Bimod,
    pub left_top: &'a AlgModule,
    pub right_top: &'a AlgModule,
}

/// Fusion dimension over tensored data equals the product of the factor
/// fusion dimensions.
pub fn check_fusion_multiplicativity(
    one: &FusionInput,
    two: &FusionInput,
) -> VerificationReport {
    let mut report = VerificationReport::new("fusion multiplicativity under tensoring");
    let mut rep = CheckReport::new("fusion dimension of the tensor equals the product");
    let n1 = fusion_dim(one.algebra, one.bimodule, one.left_top, one.right_top);
    let n2 = fusion_dim(two.algebra, two.bimodule, two.left_top, two.right_top);
    match (n1, n2) {
        (Ok(n1), Ok(n2)) => {
            let t = tensor_algebra(one.algebra, two.algebra);
            let bim_t = Bimod::tensor(one.algebra, one.bimodule, two.algebra, two.bimodule);
            let m20_t = tensor_module_pair(one.algebra, one.left_top, two.algebra, two.left_top);
            let m30_t =
                tensor_module_pair(one.algebra, one.right_top, two.algebra, two.right_top);
            match fusion_dim(&t, &bim_t, &m20_t, &m30_t) {
                Ok(nt) => {
                    rep.checked_instances += 1;
                    if nt != n1 * n2 {
                        rep.add_witness(
                            "tensored fusion input".into(),
                            format!("factor product {n1}*{n2} = {}", n1 * n2),
                            format!("tensor fusion dimension {nt}"),
                        );
                    }
                }
                Err(e) => {
                    rep.add_witness(
                        "tensored fusion input".into(),
                        "a well-defined fusion dimension".into(),
                        e.to_string(),
                    );
                }
            }
        }
        (r1, r2) => {
            if let Err(e) = r1 {
                rep.add_witness(
                    "left factor".into(),
                    "a well-defined fusion dimension".into(),
                    e.to_string(),
                );
            }
            if let Err(e) = r2 {
                rep.add_witness(
                    "right factor".into(),
                    "a well-defined fusion dimension".into(),
                    e.to_string(),
                );
            }
        }
    }
    rep.finish();
    report.push(rep);
    report
}

// ---------------------------------------------------------------------------
// Rationality witness
// ---------------------------------------------------------------------------

/// Structural facts about an algebra that a rationality-style argument needs:
/// semisimplicity, the isotypic shape of the regular module, and stability of
/// semisimplicity under tensoring with a split semisimple partner.
pub struct RationalityWitness {
    pub dim: usize,
    pub semisimple: bool,
    /// (dimension, multiplicity) of each irreducible summand of the regular
    /// module; empty when not semisimple or not split.
    pub summands: Vec<(usize, usize)>,
    /// Whether tensoring with a 2x2 matrix algebra preserves semisimplicity.
    pub partner_semisimple: bool,
}

pub fn rationality_witness(alg: &AssocAlgebra) -> RationalityWitness {
    let semisimple = is_semisimple(alg);
    let summands = if semisimple {
        match decompose(alg, &regular_module(alg)) {
            Ok(pieces) => pieces
                .iter()
                .map(|p| (p.simple.dim(), p.multiplicity))
                .collect(),
            Err(_) => Vec::new(),
        }
    } else {
        Vec::new()
    };
    let partner = tensor_algebra(alg, &AssocAlgebra::matrix_algebra(2));
    RationalityWitness {
        dim: alg.dim(),
        semisimple,
        summands,
        partner_semisimple: is_semisimple(&partner),
    }
}

impl RationalityWitness {
    pub fn render(&self) -> Vec<String> {
        let mut lines = vec![
            format!("dimension: {}", self.dim),
            format!("semisimple: {}", self.semisimple),
        ];
        if self.summands.is_empty() {
            lines.push("regular module summands: (not computed)".into());
        } else {
            let parts: Vec<String> = self
                .summands
                .iter()
                .map(|(d, m)| format!("dim {d} x {m}"))
                .collect();
            lines.push(format!("regular module summands: {}", parts.join(", ")));
        }
        lines.push(format!(
            "semisimple after tensoring with a 2x2 matrix algebra: {}",
            self.partner_semisimple
        ));
        lines
    }
}

// ---------------------------------------------------------------------------
// Seeded random instances for the trial suites
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Block {
    Ground,
    Mat2,
    /// Q[x]/(x²)
    DualNumbers,
    /// Q[x]/(x² − x)
    SplitIdem,
    /// Q[x]/(x³)
    Nil3,
}

impl Block {
    fn dim(self) -> usize {
        match self {
            Block::Ground => 1,
            Block::Mat2 => 4,
            Block::DualNumbers | Block::SplitIdem => 2,
            Block::Nil3 => 3,
        }
    }

    fn algebra(self) -> AssocAlgebra {
        match self {
            Block::Ground => AssocAlgebra::ground(),
            Block::Mat2 => AssocAlgebra::matrix_algebra(2),
            Block::DualNumbers => {
                AssocAlgebra::polynomial_quotient(&[Scalar::zero(), Scalar::zero()])
            }
            Block::SplitIdem => {
                AssocAlgebra::polynomial_quotient(&[Scalar::zero(), Scalar::from_int(-1)])
            }
            Block::Nil3 => AssocAlgebra::polynomial_quotient(&[
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ]),
        }
    }

    fn semisimple(self) -> bool {
        matches!(self, Block::Ground | Block::Mat2 | Block::SplitIdem)
    }

    /// Cyclic left modules available over the block (action matrices).
    fn cyclic_pieces(self) -> Vec<Vec<Mat>> {
        let scalar_piece = |xs: &[i64]| -> Vec<Mat> {
            // module Q^1 per generator power family: here 1-dim pieces where
            // x acts by the given scalar; identity acts by 1
            xs.iter()
                .map(|&v| Mat::from_rows(vec![vec![Scalar::from_int(v)]]))
                .collect()
        };
        match self {
            Block::Ground => vec![vec![Mat::identity(1)]],
            Block::Mat2 => {
                // column module Q²: E_{ij} acts by the matrix unit itself
                let mut act = Vec::new();
                for i in 0..2 {
                    for j in 0..2 {
                        let mut m = Mat::zero(2, 2);
                        *m.at_mut(i, j) = Scalar::one();
                        act.push(m);
                    }
                }
                vec![act]
            }
            Block::DualNumbers => {
                // x ↦ 0 on Q, and the regular (Jordan) piece on Q²
                let one_dim = vec![Mat::identity(1), scalar_piece(&[0]).remove(0)];
                let mut jordan = Mat::zero(2, 2);
                *jordan.at_mut(1, 0) = Scalar::one();
                let two_dim = vec![Mat::identity(2), jordan];
                vec![one_dim, two_dim]
            }
            Block::SplitIdem => {
                let zero = vec![Mat::identity(1), scalar_piece(&[0]).remove(0)];
                let one = vec![Mat::identity(1), scalar_piece(&[1]).remove(0)];
                vec![zero, one]
            }
            Block::Nil3 => {
                let one_dim = vec![
                    Mat::identity(1),
                    scalar_piece(&[0]).remove(0),
                    scalar_piece(&[0]).remove(0),
                ];
                let mut j2 = Mat::zero(2, 2);
                *j2.at_mut(1, 0) = Scalar::one();
                let two_dim = vec![Mat::identity(2), j2.clone(), j2.mul(&j2)];
                let mut j3 = Mat::zero(3, 3);
                *j3.at_mut(1, 0) = Scalar::one();
                *j3.at_mut(2, 1) = Scalar::one();
                let three_dim = vec![Mat::identity(3), j3.clone(), j3.mul(&j3)];
                vec![one_dim, two_dim, three_dim]
            }
        }
    }
}

/// A sampled algebra remembering its block structure, so modules over it can
/// be assembled blockwise.
pub struct SampledAlgebra {
    pub algebra: AssocAlgebra,
    blocks: Vec<Block>,
}

/// Deterministic generator of random algebra/module instances for the trial
/// suites. All randomness flows from the seed.
pub struct TrialGen {
    rng: ChaCha8Rng,
}

impl TrialGen {
    pub fn new(seed: u64) -> TrialGen {
        TrialGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn pick(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn sample_blocks(&mut self, max_dim: usize, semisimple_only: bool) -> Vec<Block> {
        let menu: Vec<Block> = if semisimple_only {
            vec![Block::Ground, Block::Mat2, Block::SplitIdem]
        } else {
            vec![
                Block::Ground,
                Block::Mat2,
                Block::DualNumbers,
                Block::SplitIdem,
                Block::Nil3,
            ]
        };
        let mut blocks = Vec::new();
        let mut remaining = max_dim;
        loop {
            let feasible: Vec<Block> = menu
                .iter()
                .copied()
                .filter(|b| b.dim() <= remaining)
                .collect();
            if feasible.is_empty() {
                break;
            }
            let b = feasible[self.pick(feasible.len())];
            blocks.push(b);
            remaining -= b.dim();
            // randomly stop once at least one block is placed
            if !blocks.is_empty() && remaining > 0 && self.pick(3) == 0 {
                break;
            }
            if remaining == 0 {
                break;
            }
        }
        if blocks.is_empty() {
            blocks.push(Block::Ground);
        }
        blocks
    }

    fn assemble(blocks: Vec<Block>) -> SampledAlgebra {
        let mut algebra = blocks[0].algebra();
        for b in &blocks[1..] {
            algebra = AssocAlgebra::direct_sum(&algebra, &b.algebra());
        }
        SampledAlgebra { algebra, blocks }
    }

    /// Random algebra with dimension at most `max_dim` (possibly
    /// non-semisimple).
    pub fn algebra(&mut self, max_dim: usize) -> SampledAlgebra {
        let blocks = self.sample_blocks(max_dim, false);
        Self::assemble(blocks)
    }

    /// Random split semisimple algebra with dimension at most `max_dim`.
    pub fn semisimple_algebra(&mut self, max_dim: usize) -> SampledAlgebra {
        let blocks = self.sample_blocks(max_dim, true);
        debug_assert!(blocks.iter().all(|b| b.semisimple()));
        Self::assemble(blocks)
    }

    /// Random invertible integer matrix with entries in [-2, 2].
    pub fn invertible(&mut self, n: usize) -> Mat {
        if n == 0 {
            return Mat::zero(0, 0);
        }
        for _ in 0..64 {
            let m = Mat::from_fn(n, n, |_, _| {
                Scalar::from_int(self.rng.gen_range(-2i64..=2))
            });
            if m.inverse().is_some() {
                return m;
            }
        }
        Mat::identity(n)
    }

    /// Random left module over a sampled algebra, of dimension in
    /// [1, max_dim], presented in a random basis.
    pub fn left_module(&mut self, sampled: &SampledAlgebra, max_dim: usize) -> AlgModule {
        let raw = self.blockwise_module(sampled, max_dim);
        let p = self.invertible(raw.dim());
        conjugate_module(&sampled.algebra, &raw, &p)
    }

    /// Random right module: transposes of an independently sampled left
    /// module.
    pub fn right_module(&mut self, sampled: &SampledAlgebra, max_dim: usize) -> RightModule {
        let left = self.left_module(sampled, max_dim);
        let action = (0..sampled.algebra.dim())
            .map(|i| left.action(i).transpose())
            .collect();
        RightModule::new(&sampled.algebra, action).expect("transpose of a module is a right module")
    }

    /// A simple module of a sampled *semisimple* algebra: one block's simple,
    /// zero elsewhere, in the standard basis.
    pub fn simple_module(&mut self, sampled: &SampledAlgebra) -> AlgModule {
        let which = self.pick(sampled.blocks.len());
        let mut per_block: Vec<Option<Vec<Mat>>> = vec![None; sampled.blocks.len()];
        for (bi, block) in sampled.blocks.iter().enumerate() {
            if bi == which {
                let pieces = block.cyclic_pieces();
                let piece = pieces[self.pick(pieces.len())].clone();
                per_block[bi] = Some(piece);
            }
        }
        build_blockwise(sampled, per_block)
    }

    fn blockwise_module(&mut self, sampled: &SampledAlgebra, max_dim: usize) -> AlgModule {
        let mut per_block: Vec<Vec<Vec<Mat>>> = vec![Vec::new(); sampled.blocks.len()];
        let mut total = 0usize;
        let mut placed = false;
        for _ in 0..(max_dim * 2) {
            let bi = self.pick(sampled.blocks.len());
            let pieces = sampled.blocks[bi].cyclic_pieces();
            let piece = &pieces[self.pick(pieces.len())];
            let pd = piece[0].nrows();
            if total + pd > max_dim {
                continue;
            }
            per_block[bi].push(piece.clone());
            total += pd;
            placed = true;
            if total == max_dim || self.pick(3) == 0 {
                break;
            }
        }
        if !placed {
            // fall back to one smallest piece of the first block
            let pieces = sampled.blocks[0].cyclic_pieces();
            per_block[0].push(pieces[0].clone());
        }
        // merge the chosen pieces per block into one block action list
        let merged: Vec<Option<Vec<Mat>>> = per_block
            .into_iter()
            .map(|pieces| {
                if pieces.is_empty() {
                    None
                } else {
                    Some(direct_sum_actions(pieces))
                }
            })
            .collect();
        build_blockwise(sampled, merged)
    }
}

fn direct_sum_actions(pieces: Vec<Vec<Mat>>) -> Vec<Mat> {
    let per_gen = pieces[0].len();
    let total: usize = pieces.iter().map(|p| p[0].nrows()).sum();
    let mut out = Vec::with_capacity(per_gen);
    for g in 0..per_gen {
        let mut m = Mat::zero(total, total);
        let mut off = 0usize;
        for piece in &pieces {
            let blk = &piece[g];
            for i in 0..blk.nrows() {
                for j in 0..blk.ncols() {
                    let v = blk.at(i, j);
                    if !v.is_zero() {
                        *m.at_mut(off + i, off + j) = v.clone();
                    }
                }
            }
            off += blk.nrows();
        }
        out.push(m);
    }
    out
}

/// Assemble a module over a blockwise algebra from per-block actions: basis
/// elements of other blocks act by zero on a block's summand.
fn build_blockwise(sampled: &SampledAlgebra, per_block: Vec<Option<Vec<Mat>>>) -> AlgModule {
    let total: usize = per_block
        .iter()
        .map(|p| p.as_ref().map_or(0, |a| a[0].nrows()))
        .sum();
    let alg_dim = sampled.algebra.dim();
    let mut action = vec![Mat::zero(total, total); alg_dim];
    let mut alg_off = 0usize;
    let mut mod_off = 0usize;
    for (block, acts) in sampled.blocks.iter().zip(&per_block) {
        if let Some(acts) = acts {
            let d = acts[0].nrows();
            for g in 0..block.dim() {
                for i in 0..d {
                    for j in 0..d {
                        let v = acts[g].at(i, j);
                        if !v.is_zero() {
                            *action[alg_off + g].at_mut(mod_off + i, mod_off + j) = v.clone();
                        }
                    }
                }
            }
            mod_off += d;
        }
        alg_off += block.dim();
    }
    AlgModule::new(&sampled.algebra, action).expect("blockwise module satisfies the laws")
}

/// Present a module in a new basis: action ↦ P · action · P⁻¹.
pub fn conjugate_module(alg: &AssocAlgebra, m: &AlgModule, p: &Mat) -> AlgModule {
    let pinv = p.inverse().expect("change of basis must be invertible");
    let action = (0..alg.dim())
        .map(|i| p.mul(m.action(i)).mul(&pinv))
        .collect();
    AlgModule::new(alg, action).expect("conjugated module satisfies the laws")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn qq() -> AssocAlgebra {
        AssocAlgebra::direct_sum(&AssocAlgebra::ground(), &AssocAlgebra::ground())
    }

    /// One-dimensional Q⊕Q-module where the first idempotent acts by `a` and
    /// the second by `b`.
    fn qq_module(alg: &AssocAlgebra, a: i64, b: i64) -> AlgModule {
        AlgModule::new(
            alg,
            vec![
                Mat::from_rows(vec![vec![s(a)]]),
                Mat::from_rows(vec![vec![s(b)]]),
            ],
        )
        .expect("valid")
    }

    #[test]
    fn constructors_validate_and_multiply() {
        let g = AssocAlgebra::ground();
        assert_eq!(g.dim(), 1);
        let qq = qq();
        assert!(qq.is_commutative());
        assert!(qq
            .mul(&SparseVec::unit(2, 0), &SparseVec::unit(2, 1))
            .is_zero());
        let m2 = AssocAlgebra::matrix_algebra(2);
        assert_eq!(m2.dim(), 4);
        assert!(!m2.is_commutative());
        // E01 * E10 = E00, E10 * E01 = E11
        assert_eq!(*m2.mult_basis(1, 2), SparseVec::unit(4, 0));
        assert_eq!(*m2.mult_basis(2, 1), SparseVec::unit(4, 3));
        // tensor with the ground field reproduces the table
        let t = tensor_algebra(&m2, &AssocAlgebra::ground());
        assert_eq!(t.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.mult_basis(i, j), m2.mult_basis(i, j));
            }
        }
    }

    #[test]
    fn polynomial_quotients() {
        // Q[x]/(x² − x): x·x = x
        let idem = AssocAlgebra::polynomial_quotient(&[s(0), s(-1)]);
        assert_eq!(*idem.mult_basis(1, 1), SparseVec::unit(2, 1));
        // Q[x]/(x²): x·x = 0
        let dual = AssocAlgebra::polynomial_quotient(&[s(0), s(0)]);
        assert!(dual.mult_basis(1, 1).is_zero());
    }

    #[test]
    fn radical_and_semisimplicity() {
        assert!(is_semisimple(&qq()));
        assert!(is_semisimple(&AssocAlgebra::matrix_algebra(2)));
        let dual = AssocAlgebra::polynomial_quotient(&[s(0), s(0)]);
        let rad = radical(&dual);
        assert_eq!(rad.rank(), 1);
        assert!(rad.contains(&SparseVec::unit(2, 1)));
        assert!(!is_semisimple(&dual));
    }

    #[test]
    fn hom_space_dimensions() {
        let a = qq();
        let s1 = qq_module(&a, 1, 0);
        let s2 = qq_module(&a, 0, 1);
        assert_eq!(hom_space(&a, &s1, &s2).len(), 0);
        assert_eq!(hom_space(&a, &s1, &s1).len(), 1);
        // S1 ⊕ S1
        let s1s1 = AlgModule::new(
            &a,
            vec![Mat::identity(2), Mat::zero(2, 2)],
        )
        .expect("valid");
        assert_eq!(hom_space(&a, &s1, &s1s1).len(), 2);
    }

    #[test]
    fn irreducible_submodules() {
        let a = qq();
        let reg = regular_module(&a);
        let (sub, incl) = irreducible_submodule(&a, &reg).expect("found");
        assert_eq!(sub.dim(), 1);
        // the inclusion lands on one of the two idempotent lines
        let img = incl.col_vec(0);
        assert_eq!(img.support_len(), 1);

        let m2 = AssocAlgebra::matrix_algebra(2);
        let (sub2, _) = irreducible_submodule(&m2, &regular_module(&m2)).expect("found");
        assert_eq!(sub2.dim(), 2);

        let s1 = qq_module(&a, 1, 0);
        let (sub3, _) = irreducible_submodule(&a, &s1).expect("found");
        assert_eq!(sub3.dim(), 1);
    }

    #[test]
    fn decompose_examples() {
        let a = qq();
        let pieces = decompose(&a, &regular_module(&a)).expect("semisimple");
        assert_eq!(pieces.len(), 2);
        assert!(pieces.iter().all(|p| p.simple.dim() == 1 && p.multiplicity == 1));
        let mut sum = Mat::zero(2, 2);
        for p in &pieces {
            assert_eq!(p.projection.mul(&p.projection), p.projection);
            sum = sum.add(&p.projection);
        }
        assert_eq!(sum, Mat::identity(2));

        let m2 = AssocAlgebra::matrix_algebra(2);
        let pieces = decompose(&m2, &regular_module(&m2)).expect("semisimple");
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].simple.dim(), 2);
        assert_eq!(pieces[0].multiplicity, 2);

        // Q³ with the first idempotent acting by diag(1,1,0)
        let mut x = Mat::zero(3, 3);
        *x.at_mut(0, 0) = s(1);
        *x.at_mut(1, 1) = s(1);
        let y = Mat::identity(3).sub(&x);
        let m = AlgModule::new(&a, vec![x, y]).expect("valid");
        let mut shape: Vec<(usize, usize)> = decompose(&a, &m)
            .expect("semisimple")
            .iter()
            .map(|p| (p.simple.dim(), p.multiplicity))
            .collect();
        shape.sort();
        assert_eq!(shape, vec![(1, 1), (1, 2)]);

        // non-semisimple action errors with a radical witness
        let dual = AssocAlgebra::polynomial_quotient(&[s(0), s(0)]);
        let err = decompose(&dual, &regular_module(&dual)).unwrap_err();
        assert!(matches!(err, Error::NotSemisimple(_)));
    }

    #[test]
    fn factor_tensor_module_examples() {
        // A = B = Q, M = Q
        let g = AssocAlgebra::ground();
        let m = AlgModule::new(&tensor_algebra(&g, &g), vec![Mat::identity(1)]).expect("valid");
        let (m1, m2, eval) = factor_tensor_module(&g, &g, &m).expect("factors");
        assert_eq!((m1.dim(), m2.dim()), (1, 1));
        assert!(eval.inverse().is_some());

        // A = B = Q[x]/(x²−x), M the 1-dim module with x ↦ 1, y ↦ 0
        let idem = AssocAlgebra::polynomial_quotient(&[s(0), s(-1)]);
        let t = tensor_algebra(&idem, &idem);
        // action of basis (i,j) = x^i ⊗ y^j on Q: 1 if j = 0, else 0
        let act: Vec<Mat> = (0..4)
            .map(|k| {
                let j = k % 2;
                Mat::from_rows(vec![vec![if j == 0 { s(1) } else { s(0) }]])
            })
            .collect();
        let m = AlgModule::new(&t, act).expect("valid");
        let (m1, m2, _) = factor_tensor_module(&idem, &idem, &m).expect("factors");
        assert_eq!((m1.dim(), m2.dim()), (1, 1));
        assert_eq!(*m1.action(1).at(0, 0), s(1)); // x ↦ 1
        assert_eq!(*m2.action(1).at(0, 0), s(0)); // y ↦ 0

        // A = M₂(Q), B = Q⊕Q, M = column module ⊗ S₂, presented opaquely
        let m2alg = AssocAlgebra::matrix_algebra(2);
        let b = qq();
        let col = {
            let mut act = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    let mut mat = Mat::zero(2, 2);
                    *mat.at_mut(i, j) = Scalar::one();
                    act.push(mat);
                }
            }
            AlgModule::new(&m2alg, act).expect("valid")
        };
        let s2 = qq_module(&b, 0, 1);
        let m = tensor_module_pair(&m2alg, &col, &b, &s2);
        let p = Mat::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(2)]]);
        let m_opaque = conjugate_module(&tensor_algebra(&m2alg, &b), &m, &p);
        let (f1, f2, eval) = factor_tensor_module(&m2alg, &b, &m_opaque).expect("factors");
        assert_eq!((f1.dim(), f2.dim()), (2, 1));
        assert!(eval.inverse().is_some());
    }

    #[test]
    fn tensor_over_algebra_examples() {
        // over the ground field: plain tensor product
        let g = AssocAlgebra::ground();
        let mr = RightModule::new(&g, vec![Mat::identity(2)]).expect("valid");
        let ml = AlgModule::new(&g, vec![Mat::identity(3)]).expect("valid");
        assert_eq!(tensor_over_algebra(&g, &mr, &ml).0, 6);

        // Q[x]/(x²−x): opposite idempotent eigenvalues annihilate
        let idem = AssocAlgebra::polynomial_quotient(&[s(0), s(-1)]);
        let right_one = RightModule::new(
            &idem,
            vec![Mat::identity(1), Mat::from_rows(vec![vec![s(1)]])],
        )
        .expect("valid");
        let left_zero = AlgModule::new(
            &idem,
            vec![Mat::identity(1), Mat::from_rows(vec![vec![s(0)]])],
        )
        .expect("valid");
        assert_eq!(tensor_over_algebra(&idem, &right_one, &left_zero).0, 0);

        let left_one = AlgModule::new(
            &idem,
            vec![Mat::identity(1), Mat::from_rows(vec![vec![s(1)]])],
        )
        .expect("valid");
        assert_eq!(tensor_over_algebra(&idem, &right_one, &left_one).0, 1);

        // A ⊗_A M ≅ M, with the natural map invertible
        let a = qq();
        let reg_right = RightModule::new(
            &a,
            (0..2)
                .map(|i| a.right_mult(&SparseVec::unit(2, i)))
                .collect(),
        )
        .expect("valid");
        let m = AlgModule::new(&a, vec![Mat::identity(2), Mat::zero(2, 2)]).expect("valid");
        let (dim, q) = tensor_over_algebra(&a, &reg_right, &m);
        assert_eq!(dim, m.dim());
        // natural map a ⊗ v ↦ a·v on class representatives
        let mut nat = Mat::zero(m.dim(), dim);
        for k in 0..dim {
            let rep = q.rep_vector(k);
            let mut img = SparseVec::zero(m.dim());
            for (idx, c) in rep.iter() {
                let (ai, vl) = (idx / m.dim(), idx % m.dim());
                img.add_scaled(
                    &m.action(ai).mul_sparse(&SparseVec::unit(m.dim(), vl)),
                    c,
                );
            }
            for (i, c) in img.iter() {
                *nat.at_mut(i, k) = c.clone();
            }
        }
        assert!(nat.inverse().is_some());
    }

    #[test]
    fn tensor_interchange_hand_examples() {
        let g = AssocAlgebra::ground();
        let q1r = RightModule::new(&g, vec![Mat::identity(1)]).expect("valid");
        let q1l = AlgModule::new(&g, vec![Mat::identity(1)]).expect("valid");
        let side = SidedPair {
            algebra: &g,
            right: &q1r,
            left: &q1l,
        };
        let rep = check_tensor_interchange(&side, &side);
        assert!(rep.passed());

        // zero side propagates: dim-0 pair times dim-1 pair
        let idem = AssocAlgebra::polynomial_quotient(&[s(0), s(-1)]);
        let right_one = RightModule::new(
            &idem,
            vec![Mat::identity(1), Mat::from_rows(vec![vec![s(1)]])],
        )
        .expect("valid");
        let left_zero = AlgModule::new(
            &idem,
            vec![Mat::identity(1), Mat::from_rows(vec![vec![s(0)]])],
        )
        .expect("valid");
        let zero_side = SidedPair {
            algebra: &idem,
            right: &right_one,
            left: &left_zero,
        };
        let rep = check_tensor_interchange(&zero_side, &side);
        assert!(rep.passed());
    }

    #[test]
    fn fusion_dimension_examples() {
        // ground field, all one-dimensional: 1
        let g = AssocAlgebra::ground();
        let bim = Bimod::regular(&g);
        let one = AlgModule::new(&g, vec![Mat::identity(1)]).expect("valid");
        assert_eq!(fusion_dim(&g, &bim, &one, &one).expect("agrees"), 1);

        // Q⊕Q with the regular bimodule: sector selection
        let a = qq();
        let bim = Bimod::regular(&a);
        let s1 = qq_module(&a, 1, 0);
        let s2 = qq_module(&a, 0, 1);
        assert_eq!(fusion_dim(&a, &bim, &s1, &s1).expect("agrees"), 1);
        assert_eq!(fusion_dim(&a, &bim, &s1, &s2).expect("agrees"), 0);
        assert_eq!(fusion_dim(&a, &bim, &s2, &s2).expect("agrees"), 1);

        // rank-one bimodule S₁ ⊗ S₁*: kills the S₂ output sector
        let rank_one = Bimod::new(
            &a,
            &a,
            vec![Mat::identity(1), Mat::zero(1, 1)],
            vec![Mat::identity(1), Mat::zero(1, 1)],
        )
        .expect("valid");
        assert_eq!(fusion_dim(&a, &rank_one, &s1, &s2).expect("agrees"), 0);
        assert_eq!(fusion_dim(&a, &rank_one, &s1, &s1).expect("agrees"), 1);
    }

    #[test]
    fn fusion_multiplicativity_examples() {
        let g = AssocAlgebra::ground();
        let bim = Bimod::regular(&g);
        let one = AlgModule::new(&g, vec![Mat::identity(1)]).expect("valid");
        let input = FusionInput {
            algebra: &g,
            bimodule: &bim,
            left_top: &one,
            right_top: &one,
        };
        assert!(check_fusion_multiplicativity(&input, &input).passed());

        // a zero factor annihilates the product
        let a = qq();
        let bim_a = Bimod::regular(&a);
        let s1 = qq_module(&a, 1, 0);
        let s2 = qq_module(&a, 0, 1);
        let zero_factor = FusionInput {
            algebra: &a,
            bimodule: &bim_a,
            left_top: &s1,
            right_top: &s2,
        };
        assert!(check_fusion_multiplicativity(&zero_factor, &input).passed());
    }

    #[test]
    fn rationality_witness_examples() {
        let w = rationality_witness(&qq());
        assert!(w.semisimple);
        assert_eq!(w.summands.len(), 2);
        assert!(w.partner_semisimple);

        let dual = AssocAlgebra::polynomial_quotient(&[s(0), s(0)]);
        let w = rationality_witness(&dual);
        assert!(!w.semisimple);

        let big = tensor_algebra(&qq(), &AssocAlgebra::matrix_algebra(2));
        let w = rationality_witness(&big);
        assert!(w.semisimple);
        assert_eq!(w.summands.len(), 2);
        assert!(w.summands.iter().all(|&(d, _)| d == 2));
    }

    #[test]
    fn seeded_trials_are_deterministic_and_pass() {
        let mut gen = TrialGen::new(7);
        for _ in 0..5 {
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
            assert!(rep.passed(), "interchange trial failed: {rep:?}");
        }
        // determinism: same seed, same first sampled algebra dims
        let d1 = TrialGen::new(42).algebra(4).algebra.dim();
        let d2 = TrialGen::new(42).algebra(4).algebra.dim();
        assert_eq!(d1, d2);
    }

    #[test]
    fn seeded_factorization_trials_recover_dims() {
        let mut gen = TrialGen::new(11);
        for _ in 0..5 {
            let a = gen.semisimple_algebra(4);
            let b = gen.semisimple_algebra(4);
            let sa = gen.simple_module(&a);
            let sb = gen.simple_module(&b);
            if sa.dim() * sb.dim() > 6 || sa.dim() * sb.dim() == 0 {
                continue;
            }
            let m = tensor_module_pair(&a.algebra, &sa, &b.algebra, &sb);
            let p = gen.invertible(m.dim());
            let opaque = conjugate_module(&tensor_algebra(&a.algebra, &b.algebra), &m, &p);
            let (f1, f2, eval) =
                factor_tensor_module(&a.algebra, &b.algebra, &opaque).expect("factors");
            assert_eq!(f1.dim() * f2.dim(), m.dim());
            assert_eq!((f1.dim(), f2.dim()), (sa.dim(), sb.dim()));
            assert!(eval.inverse().is_some());
        }
    }
}
