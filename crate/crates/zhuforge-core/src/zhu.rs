//! The associative quotient of a truncated vertex algebra.
//!
//! The product `a * b` contracts the vertex operator of `a` against the
//! weight kernel `(1+z)^{wt a} / z`, and the relation span `O` is generated
//! by the companion contractions against `(1+z)^{wt a} / z^2`. Both are
//! finite sums of modes, so under truncation they are either exactly
//! computable (every contributing mode lands inside the window) or reported
//! as [`Windowed::Out`] — never approximated.
//!
//! Truncation policy, applied consistently:
//!
//! * the relation span uses only generators fully visible below the cutoff,
//!   so the computed quotient can only get *smaller* as the cutoff grows —
//!   compare two consecutive cutoffs with [`convergence_report`] to monitor
//!   stabilization;
//! * relations are echelonized on their **highest**-index (highest-weight)
//!   coordinate, which leaves class representatives at the lowest weights
//!   available and makes the class of a weight-`w` vector supported on
//!   classes of weight at most `w`;
//! * the class multiplication table stores an entry only where the weight
//!   bound (sum of class weights ≤ cutoff) guarantees exactness; other
//!   entries are [`Windowed::Out`]. For algebras with representatives in
//!   unboundedly many weights no finite cutoff closes the whole table —
//!   [`ZhuPresentation::total_algebra`] says so explicitly instead of
//!   guessing.

use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, Mat, QuotientMap, SparseVec, Subspace};
use crate::report::{CheckReport, VerificationReport};
use crate::scalar::{binomial_i, Scalar};
use crate::voa::{ModeTable, TruncatedModule, TruncatedVoa, Windowed};

// ---------------------------------------------------------------------------
// Weighted residue contractions
// ---------------------------------------------------------------------------

/// Σ_{i ≥ 0} C(wt a + exponent_shift, i) · a(i − m) b, the residue of the
/// vertex operator of `a` against `(1+z)^{wt a + exponent_shift} / z^m`,
/// extended from homogeneous `a` by linearity. The sum is finite: terms with
/// `i > wt a + top(b) + m − 1` land in negative weight and vanish, and for a
/// nonnegative exponent the binomial kills `i > exponent` — so no term with
/// a zero coefficient is ever sent to the table, and only genuinely
/// contributing modes can push the result out of the window.
pub(crate) fn res_contraction(
    table: &ModeTable,
    a: &SparseVec,
    b: &SparseVec,
    exponent_shift: i64,
    m: i64,
) -> Windowed<SparseVec> {
    let target_total = table.target().total();
    if a.is_zero() || b.is_zero() {
        return Windowed::In(SparseVec::zero(target_total));
    }
    let top_b = b
        .iter()
        .map(|(j, _)| table.target().weight_of(j))
        .max()
        .expect("nonzero vector has a support") as i64;
    // split `a` into weight-homogeneous components
    let weights = table.acting_weights();
    let mut components: Vec<(i64, SparseVec)> = Vec::new();
    for (i, c) in a.iter() {
        let w = weights[i] as i64;
        match components.iter_mut().find(|(cw, _)| *cw == w) {
            Some((_, comp)) => comp.add_scaled(&SparseVec::unit(a.dim(), i), c),
            None => {
                let mut comp = SparseVec::zero(a.dim());
                comp.add_scaled(&SparseVec::unit(a.dim(), i), c);
                components.push((w, comp));
            }
        }
    }
    let mut acc = vec![Scalar::zero(); target_total];
    for (wa, comp) in &components {
        let exponent = wa + exponent_shift;
        let weight_cap = wa + top_b + m - 1;
        let cap = if exponent >= 0 {
            weight_cap.min(exponent)
        } else {
            weight_cap
        };
        for i in 0..=cap.max(-1) {
            let coeff = binomial_i(exponent, i);
            if coeff.is_zero() {
                continue;
            }
            if table.apply_acc(comp, i - m, b, &coeff, &mut acc).is_out() {
                return Windowed::Out;
            }
        }
    }
    Windowed::In(SparseVec::from_dense(&acc))
}

/// The associative product `a * b`: contraction against `(1+z)^{wt a} / z`.
/// Exact whenever every weight of `a` plus the top weight of `b` stays within
/// the cutoff.
pub fn star(voa: &TruncatedVoa, a: &SparseVec, b: &SparseVec) -> Windowed<SparseVec> {
    res_contraction(voa.table(), a, b, 0, 1)
}

/// The relation product `a ∘ b`: contraction against `(1+z)^{wt a} / z^2`.
pub fn circ(voa: &TruncatedVoa, a: &SparseVec, b: &SparseVec) -> Windowed<SparseVec> {
    circ_m(voa, 2, a, b)
}

/// The depth-`m` relation product: contraction against
/// `(1+z)^{wt a} / z^m`, for m ≥ 1 (m = 1 is `star`, m = 2 is `circ`).
pub fn circ_m(voa: &TruncatedVoa, m: i64, a: &SparseVec, b: &SparseVec) -> Windowed<SparseVec> {
    assert!(m >= 1, "contraction depth must be at least 1");
    res_contraction(voa.table(), a, b, 0, m)
}

// ---------------------------------------------------------------------------
// The relation span and the quotient
// ---------------------------------------------------------------------------

/// The span of all fully visible relation products `e_a ∘ e_b`, echelonized
/// on highest-index pivots so that quotient representatives sit at the
/// lowest weights. A pair contributes iff `wt a + wt b + 1 ≤ cutoff`, which
/// makes every contributing product exactly computable.
pub fn o_span(voa: &TruncatedVoa) -> Result<Subspace> {
    let n = voa.cutoff();
    let total = voa.total_dim();
    let mut gens = Vec::new();
    for a in 0..total {
        let wa = voa.weight_of(a);
        for b in 0..total {
            let wb = voa.weight_of(b);
            if wa + wb + 1 > n {
                continue;
            }
            let g = circ(
                voa,
                &SparseVec::unit(total, a),
                &SparseVec::unit(total, b),
            )
            .required("relation product on an in-window pair")?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
    }
    Ok(Subspace::echelonize_high(total, gens))
}

/// The associative quotient of a truncated vertex algebra: quotient classes,
/// their weights, and the partial multiplication table.
#[derive(Clone, Debug)]
pub struct ZhuPresentation {
    cutoff: usize,
    o_span: Subspace,
    quotient: QuotientMap,
    class_weights: Vec<usize>,
    /// Class products, `dim × dim` row-major; `In` exactly when the weight
    /// bound `wt_i + wt_j ≤ cutoff` guarantees the product is fully visible.
    mult: Vec<Windowed<SparseVec>>,
    identity_class: usize,
    /// The class of the conformal vector as a coordinate vector, when the
    /// algebra has one.
    omega_coords: Option<SparseVec>,
    /// Set when the conformal class is exactly a basis class.
    omega_class: Option<usize>,
    notes: Vec<String>,
}

/// Builds the associative quotient at the algebra's cutoff.
pub fn zhu_algebra(voa: &TruncatedVoa) -> Result<ZhuPresentation> {
    let n = voa.cutoff();
    let span = o_span(voa)?;
    let quotient = quotient_basis(voa.total_dim(), &span);
    let class_weights: Vec<usize> = quotient
        .reps()
        .iter()
        .map(|&r| voa.weight_of(r))
        .collect();
    let dim = quotient.dim();
    let mut mult = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            if class_weights[i] + class_weights[j] <= n {
                let prod = star(
                    voa,
                    &quotient.rep_vector(i),
                    &quotient.rep_vector(j),
                )
                .required("star product on an in-window class pair")?;
                mult.push(Windowed::In(quotient.project(&prod)));
            } else {
                mult.push(Windowed::Out);
            }
        }
    }
    let id_coords = quotient.project(voa.vacuum());
    let identity_class = match unit_class(&id_coords) {
        Some(k) => k,
        None => {
            return Err(Error::InvalidInput(
                "the vacuum class is not a single basis class of the quotient".into(),
            ))
        }
    };
    let omega_coords = voa.omega().map(|om| quotient.project(om));
    let omega_class = omega_coords.as_ref().and_then(unit_class);
    let notes = vec![
        "class representatives sit at the lowest weights available; products are stored only \
         where the weight bound (sum of class weights <= cutoff) guarantees exactness, and are \
         marked out-of-window otherwise"
            .to_string(),
        "the relation span uses only products fully visible below the cutoff, so the computed \
         quotient can only shrink as the cutoff grows; compare consecutive cutoffs to monitor \
         convergence"
            .to_string(),
    ];
    Ok(ZhuPresentation {
        cutoff: n,
        o_span: span,
        quotient,
        class_weights,
        mult,
        identity_class,
        omega_coords,
        omega_class,
        notes,
    })
}

/// Index of the single unit entry of a coordinate vector, if it is one.
fn unit_class(v: &SparseVec) -> Option<usize> {
    let mut it = v.iter();
    match (it.next(), it.next()) {
        (Some((k, c)), None) if c.is_one() => Some(k),
        _ => None,
    }
}

impl ZhuPresentation {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn quotient(&self) -> &QuotientMap {
        &self.quotient
    }

    pub fn o_span(&self) -> &Subspace {
        &self.o_span
    }

    pub fn class_weights(&self) -> &[usize] {
        &self.class_weights
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn omega_class(&self) -> Option<usize> {
        self.omega_class
    }

    pub fn omega_coords(&self) -> Option<&SparseVec> {
        self.omega_coords.as_ref()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Stored table entry for a class pair.
    pub fn mult_entry(&self, i: usize, j: usize) -> Windowed<&SparseVec> {
        self.mult[i * self.dim() + j].as_ref()
    }

    /// Bilinear class product; `Out` as soon as any contributing class pair
    /// is outside the stored window.
    pub fn star_classes(&self, x: &SparseVec, y: &SparseVec) -> Windowed<SparseVec> {
        let dim = self.dim();
        let mut acc = vec![Scalar::zero(); dim];
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                match &self.mult[i * dim + j] {
                    Windowed::In(v) => {
                        let c = ci * cj;
                        for (k, x) in v.iter() {
                            acc[k] += &(&c * x);
                        }
                    }
                    Windowed::Out => return Windowed::Out,
                }
            }
        }
        Windowed::In(SparseVec::from_dense(&acc))
    }

    /// The quotient as a total associative algebra, when every table entry is
    /// in the window (associativity and unit laws are then certified
    /// exactly). Otherwise reports which pair is missing; note that for
    /// algebras with representatives in unboundedly many weights (one class
    /// per weight, as for a polynomial algebra) no finite cutoff closes the
    /// table, so raising the cutoff moves the boundary without removing it.
    pub fn total_algebra(&self) -> Result<crate::assoc::AssocAlgebra> {
        let dim = self.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                match &self.mult[i * dim + j] {
                    Windowed::In(v) => table.push(v.clone()),
                    Windowed::Out => {
                        return Err(Error::OutOfTruncation(format!(
                            "class product ({i}, {j}) has weight {} + {} above the cutoff {}; \
                             raise the cutoff to widen the window (the boundary persists \
                             whenever representatives occur in unboundedly many weights)",
                            self.class_weights[i], self.class_weights[j], self.cutoff
                        )))
                    }
                }
            }
        }
        crate::assoc::AssocAlgebra::new(
            dim,
            table,
            SparseVec::unit(dim, self.identity_class),
        )
    }

    /// Commutativity of all stored table entries.
    pub fn check_commutative_in_window(&self) -> CheckReport {
        let mut rep = CheckReport::new("class multiplication commutes inside the window");
        let dim = self.dim();
        for i in 0..dim {
            for j in i..dim {
                match (&self.mult[i * dim + j], &self.mult[j * dim + i]) {
                    (Windowed::In(xy), Windowed::In(yx)) => {
                        rep.checked_instances += 1;
                        if xy != yx {
                            rep.add_witness(
                                format!("class pair ({i}, {j})"),
                                format!("{xy:?}"),
                                format!("{yx:?}"),
                            );
                        }
                    }
                    _ => rep.skipped_instances += 1,
                }
            }
        }
        rep.finish();
        rep
    }

    /// Successive powers of a class vector, multiplying until the window
    /// ends, together with whether the powers span the whole quotient.
    pub fn class_power_span(&self, gen: &SparseVec) -> (Vec<SparseVec>, bool) {
        let mut powers = vec![SparseVec::unit(self.dim(), self.identity_class)];
        loop {
            let last = powers.last().expect("nonempty");
            match self.star_classes(gen, last) {
                Windowed::In(next) => {
                    if next.is_zero() {
                        break;
                    }
                    powers.push(next);
                }
                Windowed::Out => break,
            }
            if powers.len() > self.dim() + 1 {
                break;
            }
        }
        let span = Subspace::echelonize(self.dim(), powers.clone());
        let full = span.rank() == self.dim();
        (powers, full)
    }
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

/// Checks that the quotient behaves as an associative algebra with the
/// vacuum class as identity and the conformal class central, and that the
/// translation-shifted vectors `L(-1)a + (wt a) a` all die in the quotient.
pub fn check_zhu_invariants(
    voa: &TruncatedVoa,
    pres: &ZhuPresentation,
) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "associative quotient invariants of {}",
        voa.name()
    ));
    let dim = pres.dim();

    let mut ident = CheckReport::new("vacuum class is a two-sided identity");
    let id = SparseVec::unit(dim, pres.identity_class());
    for k in 0..dim {
        let ek = SparseVec::unit(dim, k);
        for (side, prod) in [
            ("left", pres.star_classes(&id, &ek)),
            ("right", pres.star_classes(&ek, &id)),
        ] {
            match prod {
                Windowed::In(v) => {
                    ident.checked_instances += 1;
                    if v != ek {
                        ident.add_witness(
                            format!("{side} unit on class {k}"),
                            format!("{v:?}"),
                            format!("class {k}"),
                        );
                    }
                }
                Windowed::Out => ident.skipped_instances += 1,
            }
        }
    }
    ident.finish();
    report.push(ident);

    let mut central = CheckReport::new("conformal class is central inside the window");
    match pres.omega_coords() {
        None => central.note("no conformal vector; nothing to check"),
        Some(om) => {
            for k in 0..dim {
                let ek = SparseVec::unit(dim, k);
                match (pres.star_classes(om, &ek), pres.star_classes(&ek, om)) {
                    (Windowed::In(lhs), Windowed::In(rhs)) => {
                        central.checked_instances += 1;
                        if lhs != rhs {
                            central.add_witness(
                                format!("conformal class against class {k}"),
                                format!("{lhs:?}"),
                                format!("{rhs:?}"),
                            );
                        }
                    }
                    _ => central.skipped_instances += 1,
                }
            }
        }
    }
    central.finish();
    report.push(central);

    let mut translate =
        CheckReport::new("translation-shifted vectors vanish in the quotient");
    match voa.omega() {
        None => translate.note("no conformal vector; nothing to check"),
        Some(om) => {
            for a in 0..voa.total_dim() {
                let wa = voa.weight_of(a);
                let ea = SparseVec::unit(voa.total_dim(), a);
                match voa.mode(om, 0, &ea) {
                    Windowed::Out => translate.skipped_instances += 1,
                    Windowed::In(mut v) => {
                        v.add_scaled(&ea, &Scalar::from_int(wa as i64));
                        let class = pres.quotient().project(&v);
                        translate.checked_instances += 1;
                        if !class.is_zero() {
                            translate.add_witness(
                                format!("basis vector {}", voa.label(a)),
                                voa.format_vec(&v),
                                "a relation-span element".into(),
                            );
                        }
                    }
                }
            }
        }
    }
    translate.finish();
    report.push(translate);

    report
}

/// Checks that every fully visible depth-`m` relation product (m ≥ 2) lies
/// in the depth-2 relation span. Pairs or depths whose products stick out of
/// the window are counted as skipped.
pub fn check_higher_products_in_o_span(voa: &TruncatedVoa) -> CheckReport {
    let mut rep = CheckReport::new("deeper relation products lie in the relation span");
    let span = match o_span(voa) {
        Ok(s) => s,
        Err(e) => {
            rep.add_witness("relation span".into(), "computable span".into(), e.to_string());
            rep.finish();
            return rep;
        }
    };
    let n = voa.cutoff() as i64;
    let total = voa.total_dim();
    for m in 2..=(n + 1).max(2) {
        for a in 0..total {
            for b in 0..total {
                let (wa, wb) = (voa.weight_of(a) as i64, voa.weight_of(b) as i64);
                if wa + wb + m - 1 > n {
                    rep.skipped_instances += 1;
                    continue;
                }
                let g = circ_m(
                    voa,
                    m,
                    &SparseVec::unit(total, a),
                    &SparseVec::unit(total, b),
                );
                match g {
                    Windowed::Out => rep.skipped_instances += 1,
                    Windowed::In(v) => {
                        rep.checked_instances += 1;
                        if !span.contains(&v) {
                            rep.add_witness(
                                format!(
                                    "depth {m} product of {} and {}",
                                    voa.label(a),
                                    voa.label(b)
                                ),
                                voa.format_vec(&v),
                                "a relation-span element".into(),
                            );
                        }
                    }
                }
            }
        }
    }
    rep.finish();
    rep
}

// ---------------------------------------------------------------------------
// Top-level action
// ---------------------------------------------------------------------------

/// The zero-mode matrix of a vector on the bottom level of a module:
/// for homogeneous `a` this is the action of `a(wt a − 1)`, which preserves
/// the bottom level, extended by linearity. Always exactly computable.
pub fn top_level_action(voa: &TruncatedVoa, module: &TruncatedModule, v: &SparseVec) -> Mat {
    let d0 = module.top_level_dim();
    let mut out = Mat::zero(d0, d0);
    for (a, ca) in v.iter() {
        let wa = voa.weight_of(a) as i64;
        let ea = SparseVec::unit(voa.total_dim(), a);
        for l in 0..d0 {
            let ml = SparseVec::unit(module.total_dim(), l);
            let img = module
                .mode(&ea, wa - 1, &ml)
                .in_window()
                .expect("zero-mode action lands on the bottom level");
            for (r, c) in img.iter() {
                debug_assert!(r < d0, "zero mode left the bottom level");
                *out.at_mut(r, l) += &(ca * c);
            }
        }
    }
    out
}

/// Verifies that the zero-mode action on a module's bottom level factors
/// through the associative quotient: relation-span elements act by zero, the
/// product rule `o(a)o(b) = o(a*b)` holds for every fully visible pair, the
/// induced class matrices reproduce every stored table entry, and the
/// identity class acts as the identity matrix. Returns the class matrices
/// for downstream use.
pub fn check_zhu_top_level(
    voa: &TruncatedVoa,
    pres: &ZhuPresentation,
    module: &TruncatedModule,
) -> Result<(VerificationReport, Vec<Mat>)> {
    if !module.compatible_with(voa) {
        return Err(Error::InvalidInput(format!(
            "module {} was built over a different graded basis than {}",
            module.name(),
            voa.name()
        )));
    }
    let mut report = VerificationReport::new(format!(
        "bottom-level action of {} on {}",
        voa.name(),
        module.name()
    ));
    let n = voa.cutoff();
    let total = voa.total_dim();

    let mut kills = CheckReport::new("relation-span elements act by zero on the bottom level");
    for g in pres.o_span().basis() {
        let mat = top_level_action(voa, module, g);
        kills.checked_instances += 1;
        if !mat.is_zero() {
            kills.add_witness(
                format!("relation {}", voa.format_vec(g)),
                format!("{mat:?}"),
                "zero matrix".into(),
            );
        }
    }
    kills.finish();
    report.push(kills);

    let mut product = CheckReport::new("zero modes compose like the associative product");
    for a in 0..total {
        for b in 0..total {
            if voa.weight_of(a) + voa.weight_of(b) > n {
                product.skipped_instances += 1;
                continue;
            }
            let ea = SparseVec::unit(total, a);
            let eb = SparseVec::unit(total, b);
            let s = star(voa, &ea, &eb)
                .required("star product on an in-window pair")?;
            let lhs = top_level_action(voa, module, &ea)
                .mul(&top_level_action(voa, module, &eb));
            let rhs = top_level_action(voa, module, &s);
            product.checked_instances += 1;
            if lhs != rhs {
                product.add_witness(
                    format!("pair ({}, {})", voa.label(a), voa.label(b)),
                    format!("{lhs:?}"),
                    format!("{rhs:?}"),
                );
            }
        }
    }
    product.finish();
    report.push(product);

    let class_mats: Vec<Mat> = (0..pres.dim())
        .map(|k| top_level_action(voa, module, &pres.quotient().rep_vector(k)))
        .collect();

    let mut table = CheckReport::new("class matrices reproduce the stored table");
    for i in 0..pres.dim() {
        for j in 0..pres.dim() {
            match pres.mult_entry(i, j) {
                Windowed::Out => table.skipped_instances += 1,
                Windowed::In(coords) => {
                    let lhs = class_mats[i].mul(&class_mats[j]);
                    let mut rhs = Mat::zero(module.top_level_dim(), module.top_level_dim());
                    for (k, c) in coords.iter() {
                        rhs = rhs.add(&class_mats[k].scaled(c));
                    }
                    table.checked_instances += 1;
                    if lhs != rhs {
                        table.add_witness(
                            format!("class pair ({i}, {j})"),
                            format!("{lhs:?}"),
                            format!("{rhs:?}"),
                        );
                    }
                }
            }
        }
    }
    table.finish();
    report.push(table);

    let mut unit = CheckReport::new("identity class acts as the identity matrix");
    unit.checked_instances += 1;
    let id_mat = &class_mats[pres.identity_class()];
    if *id_mat != Mat::identity(module.top_level_dim()) {
        unit.add_witness(
            "identity class".into(),
            format!("{id_mat:?}"),
            "identity matrix".into(),
        );
    }
    unit.finish();
    report.push(unit);

    Ok((report, class_mats))
}

// ---------------------------------------------------------------------------
// Convergence monitoring
// ---------------------------------------------------------------------------

/// Comparison of the quotients at two consecutive cutoffs. The relation span
/// can only grow with the cutoff, so the informative signal is whether every
/// coarse class survives as a distinct class of the finer quotient, and
/// whether the shared table entries agree under that identification.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub coarse_cutoff: usize,
    pub fine_cutoff: usize,
    pub coarse_dim: usize,
    pub fine_dim: usize,
    /// For each coarse class, the fine class its representative projects to
    /// (None when it is no longer a single class).
    pub class_map: Vec<Option<usize>>,
    pub surviving: usize,
    pub table_agreements: u64,
    pub table_disagreements: Vec<String>,
    /// Every coarse class survives injectively and all shared table entries
    /// agree.
    pub stable: bool,
}

impl ConvergenceReport {
    pub fn render(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "quotient at cutoff {}: dimension {}; at cutoff {}: dimension {}",
            self.coarse_cutoff, self.coarse_dim, self.fine_cutoff, self.fine_dim
        )];
        lines.push(format!(
            "{} of {} coarser classes survive as distinct finer classes",
            self.surviving, self.coarse_dim
        ));
        lines.push(format!(
            "{} shared table entries agree, {} disagree",
            self.table_agreements,
            self.table_disagreements.len()
        ));
        for d in &self.table_disagreements {
            lines.push(format!("  disagreement: {d}"));
        }
        lines.push(format!(
            "stable across the last cutoff step: {}",
            if self.stable { "yes" } else { "no" }
        ));
        lines.push(
            "caution: relations are only ever added as the cutoff grows, so stability here is \
             evidence, not proof, that the quotient has converged"
                .to_string(),
        );
        lines
    }
}

/// Compares the quotient at `cutoff − 1` (computed by truncating the
/// algebra) with the given quotient at the full cutoff.
pub fn convergence_report(
    voa: &TruncatedVoa,
    fine: &ZhuPresentation,
) -> Result<ConvergenceReport> {
    let n = voa.cutoff();
    if n == 0 {
        return Err(Error::InvalidInput(
            "convergence comparison needs cutoff at least 1".into(),
        ));
    }
    let coarse_voa = voa.truncate(n - 1)?;
    let coarse = zhu_algebra(&coarse_voa)?;
    let total = voa.total_dim();
    // truncated bases are index-aligned prefixes, so a coarse representative
    // is directly a fine ambient vector
    let mut class_map: Vec<Option<usize>> = Vec::with_capacity(coarse.dim());
    for k in 0..coarse.dim() {
        let rep = coarse.quotient().reps()[k];
        let fine_class = fine.quotient().project(&SparseVec::unit(total, rep));
        class_map.push(unit_class(&fine_class));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut surviving = 0usize;
    let mut injective = true;
    for m in &class_map {
        match m {
            Some(j) => {
                surviving += 1;
                if !seen.insert(*j) {
                    injective = false;
                }
            }
            None => {}
        }
    }
    let mut table_agreements = 0u64;
    let mut table_disagreements = Vec::new();
    for i in 0..coarse.dim() {
        for j in 0..coarse.dim() {
            let Windowed::In(coarse_val) = coarse.mult_entry(i, j) else {
                continue;
            };
            let (Some(fi), Some(fj)) = (class_map[i], class_map[j]) else {
                continue;
            };
            // transport the coarse coordinates through the class map
            let mut mapped = Some(SparseVec::zero(fine.dim()));
            for (k, c) in coarse_val.iter() {
                match class_map[k] {
                    Some(fk) => {
                        if let Some(v) = mapped.as_mut() {
                            v.add_scaled(&SparseVec::unit(fine.dim(), fk), c);
                        }
                    }
                    None => mapped = None,
                }
            }
            let Some(mapped) = mapped else { continue };
            match fine.mult_entry(fi, fj) {
                Windowed::In(fine_val) => {
                    if *fine_val == mapped {
                        table_agreements += 1;
                    } else if table_disagreements.len() < crate::report::MAX_WITNESSES {
                        table_disagreements.push(format!(
                            "coarse classes ({i}, {j}) map to ({fi}, {fj}) but the products \
                             differ: {mapped:?} vs {fine_val:?}"
                        ));
                    }
                }
                Windowed::Out => {}
            }
        }
    }
    let stable = surviving == coarse.dim() && injective && table_disagreements.is_empty();
    Ok(ConvergenceReport {
        coarse_cutoff: n - 1,
        fine_cutoff: n,
        coarse_dim: coarse.dim(),
        fine_dim: fine.dim(),
        class_map,
        surviving,
        table_agreements,
        table_disagreements,
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{build_fock, build_heisenberg, build_trivial, build_virasoro};
    use crate::voa::adjoint_module;

    fn sv(dim: usize, entries: &[(usize, Scalar)]) -> SparseVec {
        SparseVec::from_entries(dim, entries.to_vec())
    }

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn half() -> Scalar {
        Scalar::ratio(1, 2)
    }

    // Weight-major index plan for the free boson at cutoff 6 (partitions in
    // ascending order, all-parts-one first within each stratum):
    //  0:[]  1:[1]  2:[1,1]  3:[2]  4:[1,1,1]  5:[2,1]  6:[3]
    //  7:[1^4]  8:[2,1,1]  9:[2,2]  10:[3,1]  11:[4]  ...
    #[test]
    fn heisenberg_star_and_circ_frozen_values() {
        let v = build_heisenberg(6).expect("builds");
        let t = v.total_dim();
        let alpha = SparseVec::unit(t, 1);

        // alpha * alpha = a(-1)a = the [1,1] vector
        let aa = star(&v, &alpha, &alpha).in_window().expect("in window");
        assert_eq!(aa, SparseVec::unit(t, 2));

        // omega * alpha = L(-2)a + 2 L(-1)a + L(0)a
        //              = [3] + (1/2)[1,1,1] + 2[2] + [1]
        let omega = v.omega().expect("conformal").clone();
        let oa = star(&v, &omega, &alpha).in_window().expect("in window");
        assert_eq!(
            oa,
            sv(t, &[(1, s(1)), (3, s(2)), (4, half()), (6, s(1))])
        );

        // alpha o vacuum = a(-2)1 + a(-1)1 = [2] + [1]
        let vac = v.vacuum().clone();
        let a_circ_1 = circ(&v, &alpha, &vac).in_window().expect("in window");
        assert_eq!(a_circ_1, sv(t, &[(1, s(1)), (3, s(1))]));

        // alpha o alpha = [2,1] + [1,1]
        let a_circ_a = circ(&v, &alpha, &alpha).in_window().expect("in window");
        assert_eq!(a_circ_a, sv(t, &[(2, s(1)), (5, s(1))]));

        // depth 3: alpha o3 vacuum = [3] + [2]
        let a3 = circ_m(&v, 3, &alpha, &vac).in_window().expect("in window");
        assert_eq!(a3, sv(t, &[(3, s(1)), (6, s(1))]));

        // depth 3: omega o3 vacuum = L(-4)1 + 2 L(-3)1 + omega
        //        = [3,1] + (1/2)[2,2] + 2[2,1] + (1/2)[1,1]
        let o3 = circ_m(&v, 3, &omega, &vac).in_window().expect("in window");
        assert_eq!(
            o3,
            sv(t, &[(2, half()), (5, s(2)), (9, half()), (10, s(1))])
        );

        // the depth-1 contraction is the star product
        assert_eq!(
            circ_m(&v, 1, &omega, &alpha).in_window().expect("in window"),
            oa
        );
    }

    #[test]
    fn heisenberg_quotient_shape_and_powers() {
        let v = build_heisenberg(6).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        // one class per weight, represented by the all-parts-one partitions
        assert_eq!(pres.dim(), 7);
        assert_eq!(pres.quotient().reps(), &[0, 1, 2, 4, 7, 12, 19]);
        assert_eq!(pres.class_weights(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(pres.identity_class(), 0);
        // the conformal class is half the weight-2 class, not a basis class
        assert_eq!(pres.omega_class(), None);
        assert_eq!(
            pres.omega_coords().expect("has conformal"),
            &sv(7, &[(2, half())])
        );
        // the weight-1 class generates: its powers are exactly the classes
        let (powers, full) = pres.class_power_span(&SparseVec::unit(7, 1));
        assert!(full);
        assert_eq!(powers.len(), 7);
        for (k, p) in powers.iter().enumerate() {
            assert_eq!(p, &SparseVec::unit(7, k), "power {k}");
        }
        assert!(pres.check_commutative_in_window().passed());
        // the table cannot close at any cutoff: one class per weight
        let err = pres.total_algebra().unwrap_err();
        assert!(matches!(err, Error::OutOfTruncation(_)));
    }

    #[test]
    fn virasoro_quotient_shape_and_powers() {
        let v = build_virasoro(6, Scalar::ratio(1, 2)).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        assert_eq!(pres.dim(), 4);
        // representatives: vacuum, omega, L(-2)^2 1, L(-2)^3 1
        assert_eq!(pres.quotient().reps(), &[0, 1, 3, 7]);
        assert_eq!(pres.class_weights(), &[0, 2, 4, 6]);
        assert_eq!(pres.identity_class(), 0);
        assert_eq!(pres.omega_class(), Some(1));
        // omega o vacuum = L(-3)1 + 2 omega is a relation
        assert!(pres
            .o_span()
            .contains(&sv(v.total_dim(), &[(1, s(2)), (2, s(1))])));
        // [omega]^2 = [L(-2)^2 1] - 2 [omega]
        let omega_class = SparseVec::unit(4, 1);
        let sq = pres
            .star_classes(&omega_class, &omega_class)
            .in_window()
            .expect("weights 2+2 fit");
        assert_eq!(sq, sv(4, &[(1, s(-2)), (2, s(1))]));
        let (powers, full) = pres.class_power_span(&omega_class);
        assert!(full);
        assert_eq!(powers.len(), 4);
        assert!(pres.check_commutative_in_window().passed());
        assert!(matches!(
            pres.total_algebra(),
            Err(Error::OutOfTruncation(_))
        ));
    }

    #[test]
    fn virasoro_cutoff_four_quotient() {
        let v = build_virasoro(4, Scalar::ratio(1, 2)).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        assert_eq!(pres.dim(), 3);
        assert_eq!(pres.quotient().reps(), &[0, 1, 3]);
        assert_eq!(pres.class_weights(), &[0, 2, 4]);
    }

    #[test]
    fn trivial_algebra_total_table() {
        let v = build_trivial(3).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        assert_eq!(pres.dim(), 1);
        let alg = pres.total_algebra().expect("closed table");
        assert_eq!(alg.dim(), 1);
        assert!(crate::assoc::is_semisimple(&alg));
    }

    #[test]
    fn invariants_hold_on_examples() {
        for v in [
            build_heisenberg(6).expect("builds"),
            build_virasoro(6, Scalar::ratio(1, 2)).expect("builds"),
        ] {
            let pres = zhu_algebra(&v).expect("quotient");
            let rep = check_zhu_invariants(&v, &pres);
            assert!(rep.passed(), "{}", rep.render_text());
        }
    }

    #[test]
    fn higher_products_stay_in_span() {
        for v in [
            build_heisenberg(5).expect("builds"),
            build_virasoro(6, Scalar::ratio(1, 2)).expect("builds"),
        ] {
            let rep = check_higher_products_in_o_span(&v);
            assert!(rep.passed(), "{:?}", rep);
            assert!(rep.checked_instances > 0);
            assert!(rep.skipped_instances > 0, "window boundary must be visible");
        }
    }

    #[test]
    fn adjoint_top_level_factors_through_quotient() {
        let v = build_heisenberg(4).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        let adj = adjoint_module(&v);
        let (rep, mats) = check_zhu_top_level(&v, &pres, &adj).expect("compatible");
        assert!(rep.passed(), "{}", rep.render_text());
        assert_eq!(mats.len(), pres.dim());
        // the adjoint bottom level is the vacuum line; weight-1 classes act by 0
        assert_eq!(mats[pres.identity_class()], Mat::identity(1));
        assert!(mats[1].is_zero());
    }

    #[test]
    fn fock_top_level_eigenvalues() {
        let lambda = Scalar::ratio(1, 2);
        let v = build_heisenberg(4).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        let m = build_fock(&v, lambda.clone(), 4).expect("builds");
        let (rep, mats) = check_zhu_top_level(&v, &pres, &m).expect("compatible");
        assert!(rep.passed(), "{}", rep.render_text());
        // class 1 is [alpha]: zero mode a(0) has eigenvalue lambda
        assert_eq!(*mats[1].at(0, 0), lambda);
        // the conformal class acts by lambda^2/2 on the bottom level
        let omega_mat = {
            let coords = pres.omega_coords().expect("has conformal").clone();
            let mut acc = Mat::zero(1, 1);
            for (k, c) in coords.iter() {
                acc = acc.add(&mats[k].scaled(c));
            }
            acc
        };
        assert_eq!(*omega_mat.at(0, 0), &(&lambda * &lambda) * &Scalar::ratio(1, 2));
    }

    #[test]
    fn convergence_between_consecutive_cutoffs() {
        let v = build_heisenberg(6).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        let conv = convergence_report(&v, &pres).expect("comparable");
        assert_eq!(conv.coarse_dim, 6);
        assert_eq!(conv.fine_dim, 7);
        assert_eq!(conv.surviving, 6);
        assert!(conv.stable, "{:?}", conv);

        let v = build_virasoro(6, Scalar::ratio(1, 2)).expect("builds");
        let pres = zhu_algebra(&v).expect("quotient");
        let conv = convergence_report(&v, &pres).expect("comparable");
        // at cutoff 5 the classes sit at weights 0, 2, 4; weight 6 appears at 6
        assert_eq!(conv.coarse_dim, 3);
        assert_eq!(conv.fine_dim, 4);
        assert_eq!(conv.surviving, 3);
        assert!(conv.stable, "{:?}", conv);
    }
}
