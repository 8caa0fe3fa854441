//! Axiom verification for truncated vertex algebras and modules.
//!
//! Every check enumerates the finite set of instances decidable at the given
//! cutoff. An instance whose evaluation would need data above the cutoff is
//! counted as skipped (inconclusive), never as a pass. Instances whose value
//! is forced to zero by grading (negative target weight) are trivially
//! consistent and are not enumerated.
//!
//! The locality checks search for the smallest order that makes the identity
//! hold: for each pair the candidate order ascends from zero, moving on as
//! soon as a counterexample shows the order is still too small; the pair
//! passes at the first order where every decidable instance holds.

use crate::linalg::SparseVec;
use crate::report::{CheckReport, VerificationReport, MAX_WITNESSES};
use crate::scalar::{binomial, sign, Scalar};
use crate::voa::{support_weights, ModeTable, TruncatedModule, TruncatedVoa, Windowed};

/// Search bounds for the locality orders.
#[derive(Clone, Copy, Debug)]
pub struct CheckBounds {
    pub assoc_bound: u32,
    pub comm_bound: u32,
}

impl CheckBounds {
    /// Default bounds: generous for a truncation at this cutoff (the minimal
    /// orders for weight-w vectors are at most about twice the cutoff).
    pub fn for_cutoff(cutoff: usize) -> CheckBounds {
        let b = 2 * cutoff as u32 + 2;
        CheckBounds {
            assoc_bound: b,
            comm_bound: b,
        }
    }
}

type LabelFn<'a> = dyn Fn(usize) -> String + 'a;

fn fmt_vec(v: &SparseVec, label: &LabelFn) -> String {
    if v.is_zero() {
        return "0".into();
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

/// Sorted deduplicated union of two inclusive integer intervals.
fn interval_union(z1: (i64, i64), z2: (i64, i64)) -> Vec<i64> {
    let mut v: Vec<i64> = (z1.0..=z1.1).chain(z2.0..=z2.1).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// entries += coeff * x(mx) ( y(my) w ) for acting basis indices x, y and
/// target basis index w. Returns false when the composition leaves the
/// window.
fn compose_into(
    action: &ModeTable,
    x: usize,
    mx: i64,
    y: usize,
    my: i64,
    w: usize,
    coeff: &Scalar,
    entries: &mut Vec<(usize, Scalar)>,
) -> bool {
    match action.apply_basis(y, my, w) {
        Windowed::Out => false,
        Windowed::In(inner) => {
            for (j, cj) in inner.iter() {
                match action.apply_basis(x, mx, j) {
                    Windowed::Out => return false,
                    Windowed::In(outer) => {
                        if outer.is_zero() {
                            continue;
                        }
                        let c = coeff * cj;
                        for (i, ci) in outer.iter() {
                            entries.push((i, &c * ci));
                        }
                    }
                }
            }
            true
        }
    }
}

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

fn vacuum_check(
    voa: &TruncatedVoa,
    action: &ModeTable,
    tlabel: &LabelFn,
    include_creation: bool,
) -> CheckReport {
    let mut rep = CheckReport::new("vacuum");
    let tgt = action.target();
    let total = tgt.total();
    let n_cut = tgt.cutoff() as i64;
    let vac = voa.vacuum();
    for m in 0..total {
        let lm = tgt.weight_of(m) as i64;
        let unit_m = SparseVec::unit(total, m);
        for n in (lm - 1 - n_cut)..=(lm - 1) {
            match action.apply(vac, n, &unit_m) {
                Windowed::Out => rep.skipped_instances += 1,
                Windowed::In(v) => {
                    rep.checked_instances += 1;
                    let expected = if n == -1 {
                        unit_m.clone()
                    } else {
                        SparseVec::zero(total)
                    };
                    if v != expected {
                        rep.add_witness(
                            format!("1({n}) {}", tlabel(m)),
                            fmt_vec(&v, tlabel),
                            fmt_vec(&expected, tlabel),
                        );
                    }
                }
            }
        }
    }
    if include_creation {
        for a in 0..voa.total_dim() {
            let wa = voa.weight_of(a) as i64;
            let unit_a = SparseVec::unit(voa.total_dim(), a);
            for n in -1..=(wa - 1) {
                match action.apply(&unit_a, n, vac) {
                    Windowed::Out => rep.skipped_instances += 1,
                    Windowed::In(v) => {
                        rep.checked_instances += 1;
                        let expected = if n == -1 {
                            unit_a.clone()
                        } else {
                            SparseVec::zero(voa.total_dim())
                        };
                        if v != expected {
                            rep.add_witness(
                                format!("{}({n}) |0>", voa.label(a)),
                                fmt_vec(&v, tlabel),
                                fmt_vec(&expected, tlabel),
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

fn grading_check(
    voa: &TruncatedVoa,
    action: &ModeTable,
    tlabel: &LabelFn,
    conformal_grading: bool,
) -> CheckReport {
    let mut rep = CheckReport::new("grading");
    let tgt = action.target();
    // support law: every stored mode value lies in the stratum prescribed by
    // weight arithmetic
    for (a, n, b, v) in action.iter_nonzero() {
        let t = (action.acting_weights()[a] as i64 + tgt.weight_of(b) as i64 - n - 1) as usize;
        rep.checked_instances += 1;
        let ws = support_weights(tgt, v);
        if ws != vec![t] {
            rep.add_witness(
                format!("{}({n}) {}", voa.label(a), tlabel(b)),
                format!("supported on weights {ws:?}"),
                format!("homogeneous of weight {t}"),
            );
        }
    }
    if conformal_grading {
        match voa.omega() {
            None => rep.note("no conformal vector declared; grading operator law skipped"),
            Some(om) => {
                let total = tgt.total();
                for b in 0..total {
                    let unit_b = SparseVec::unit(total, b);
                    match action.apply(om, 1, &unit_b) {
                        Windowed::Out => rep.skipped_instances += 1,
                        Windowed::In(v) => {
                            rep.checked_instances += 1;
                            let expected =
                                unit_b.scaled(&Scalar::from_int(tgt.weight_of(b) as i64));
                            if v != expected {
                                rep.add_witness(
                                    format!("omega(1) {}", tlabel(b)),
                                    fmt_vec(&v, tlabel),
                                    fmt_vec(&expected, tlabel),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    rep.finish();
    rep
}

fn translation_check(voa: &TruncatedVoa, action: &ModeTable, tlabel: &LabelFn) -> CheckReport {
    let mut rep = CheckReport::new("translation covariance");
    let Some(om) = voa.omega() else {
        rep.note("no conformal vector declared; translation operator unavailable");
        rep.finish();
        return rep;
    };
    let tgt = action.target();
    let total = tgt.total();
    let n_cut = tgt.cutoff() as i64;
    for a in 0..voa.total_dim() {
        let wa = voa.weight_of(a) as i64;
        let unit_a = SparseVec::unit(voa.total_dim(), a);
        let ta = voa.mode(om, 0, &unit_a);
        match ta {
            Windowed::Out => {
                // the translate itself lies above the cutoff: every instance
                // for this vector is undecidable
                for m in 0..total {
                    let lm = tgt.weight_of(m) as i64;
                    rep.skipped_instances += ((wa + lm) - (wa + lm - n_cut) + 1) as u64;
                }
            }
            Windowed::In(ta_vec) => {
                for m in 0..total {
                    let lm = tgt.weight_of(m) as i64;
                    let unit_m = SparseVec::unit(total, m);
                    for n in (wa + lm - n_cut)..=(wa + lm) {
                        let lhs = action.apply(&ta_vec, n, &unit_m);
                        let rhs = action.apply(&unit_a, n - 1, &unit_m);
                        match (lhs, rhs) {
                            (Windowed::In(l), Windowed::In(r)) => {
                                rep.checked_instances += 1;
                                let expected = r.scaled(&Scalar::from_int(-n));
                                if l != expected {
                                    rep.add_witness(
                                        format!(
                                            "(T {})({n}) {} vs -{n}*{}({}) {}",
                                            voa.label(a),
                                            tlabel(m),
                                            voa.label(a),
                                            n - 1,
                                            tlabel(m)
                                        ),
                                        fmt_vec(&l, tlabel),
                                        fmt_vec(&expected, tlabel),
                                    );
                                }
                            }
                            _ => rep.skipped_instances += 1,
                        }
                    }
                }
            }
        }
    }
    rep.finish();
    rep
}

fn virasoro_check(voa: &TruncatedVoa) -> CheckReport {
    let mut rep = CheckReport::new("Virasoro bracket");
    let Some(om) = voa.omega() else {
        rep.note("no conformal vector declared; Virasoro bracket skipped");
        rep.finish();
        return rep;
    };
    let total = voa.total_dim();
    let n_cut = voa.cutoff() as i64;
    let c = voa.central_charge();
    let vlabel = |i: usize| voa.label(i);
    let lop = |n: i64, v: &SparseVec| voa.mode(om, n + 1, v);
    for b in 0..total {
        let wb = voa.weight_of(b) as i64;
        let unit_b = SparseVec::unit(total, b);
        for s in (wb - n_cut)..=wb {
            // m + n = s; enumerate m over the window where both orders of
            // composition stay decidable, halved by antisymmetry (m >= n)
            let hull = interval_union((s - wb, s - wb + n_cut), (wb - n_cut, wb));
            for m in hull {
                let n = s - m;
                if m < n {
                    continue;
                }
                let first = lop(n, &unit_b).in_window().and_then(|x| lop(m, &x).in_window());
                let second = lop(m, &unit_b).in_window().and_then(|x| lop(n, &x).in_window());
                let rhs0 = lop(s, &unit_b).in_window();
                let (Some(x1), Some(x2), Some(mut rhs)) = (first, second, rhs0) else {
                    rep.skipped_instances += 1;
                    continue;
                };
                rhs.scale(&Scalar::from_int(m - n));
                if s == 0 {
                    let central = &Scalar::ratio(m * m * m - m, 12) * c;
                    rhs.add_scaled(&unit_b, &central);
                }
                let mut lhs = x1;
                lhs.sub(&x2);
                rep.checked_instances += 1;
                if lhs != rhs {
                    rep.add_witness(
                        format!("[L({m}), L({n})] {}", voa.label(b)),
                        fmt_vec(&lhs, &vlabel),
                        fmt_vec(&rhs, &vlabel),
                    );
                }
            }
        }
    }
    rep.finish();
    rep
}

// ---------------------------------------------------------------------------
// Locality sweeps
// ---------------------------------------------------------------------------

#[derive(Default)]
struct Sweep {
    checked: u64,
    skipped: u64,
    failures: Vec<(String, String, String)>, // site, lhs, rhs
}

/// All decidable instances of the commutator identity of order `k` for the
/// acting basis pair `(a, b)`:
///   sum_i (-1)^i C(k,i) [a(p+k-i), b(q+i)] w = 0.
#[allow(clippy::too_many_arguments)]
fn comm_sweep(
    voa: &TruncatedVoa,
    action: &ModeTable,
    tlabel: &LabelFn,
    a: usize,
    b: usize,
    k: u32,
    collect_all: bool,
) -> Sweep {
    let tgt = action.target();
    let n_cut = tgt.cutoff() as i64;
    let wa = voa.weight_of(a) as i64;
    let wb = voa.weight_of(b) as i64;
    let ki = k as i64;
    let coeffs: Vec<Scalar> = (0..=ki).map(|i| &sign(i) * &binomial(ki, i as u32)).collect();
    let mut sw = Sweep::default();
    for w in 0..tgt.total() {
        let lw = tgt.weight_of(w) as i64;
        for target_w in 0..=n_cut {
            let s = wa + wb + lw - ki - 2 - target_w;
            // zone where some a-after-b term can be nonzero, and likewise
            // b-after-a; outside both the instance is trivially zero
            let z1 = (wb + lw - 1 - n_cut - ki, wb + lw - 1);
            let z2 = (s - (wa + lw - 1), s - (wa + lw - 1 - n_cut - ki));
            for q in interval_union(z1, z2) {
                let p = s - q;
                let mut entries: Vec<(usize, Scalar)> = Vec::new();
                let mut ok = true;
                for i in 0..=ki {
                    let c = &coeffs[i as usize];
                    if !compose_into(action, a, p + ki - i, b, q + i, w, c, &mut entries) {
                        ok = false;
                        break;
                    }
                    let nc = -c;
                    if !compose_into(action, b, q + i, a, p + ki - i, w, &nc, &mut entries) {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    sw.skipped += 1;
                    continue;
                }
                let v = SparseVec::from_entries(tgt.total(), entries);
                if v.is_zero() {
                    sw.checked += 1;
                } else {
                    sw.failures.push((
                        format!(
                            "commutator sum, a={}, b={}, p={p}, q={q}, w={}, order {k}",
                            voa.label(a),
                            voa.label(b),
                            tlabel(w)
                        ),
                        fmt_vec(&v, tlabel),
                        "0".into(),
                    ));
                    if !collect_all || sw.failures.len() >= MAX_WITNESSES {
                        return sw;
                    }
                }
            }
        }
    }
    sw
}

/// All decidable instances of the associativity identity of order `r` for
/// acting basis vector `a` and target basis vector `w`:
///   sum_{j>=0} C(j-p-1, j) a(p+r-j) b(q+j) w
///     = sum_{i=0..r} C(r,i) (a(p+r-i) b)(q+i) w.
#[allow(clippy::too_many_arguments)]
fn assoc_sweep(
    voa: &TruncatedVoa,
    action: &ModeTable,
    tlabel: &LabelFn,
    a: usize,
    w: usize,
    r: u32,
    collect_all: bool,
) -> Sweep {
    let tgt = action.target();
    let n_cut = tgt.cutoff() as i64;
    let wa = voa.weight_of(a) as i64;
    let lw = tgt.weight_of(w) as i64;
    let ri = r as i64;
    let rhs_coeffs: Vec<Scalar> = (0..=r).map(|i| binomial(ri, i)).collect();
    let mut sw = Sweep::default();
    for b in 0..voa.total_dim() {
        let wb = voa.weight_of(b) as i64;
        for target_w in 0..=n_cut {
            let s = wa + wb + lw - ri - 2 - target_w;
            let z_lhs = (wb + lw - 1 - n_cut, wb + lw - 1);
            let z_rhs = (s - (wa + wb - 1), s - (wa + wb - 1 - n_cut - ri));
            for q in interval_union(z_lhs, z_rhs) {
                let p = s - q;
                let mut ok = true;
                // left side: iterated modes
                let mut lhs_entries: Vec<(usize, Scalar)> = Vec::new();
                let j_cap = wb + lw - 1 - q; // beyond this the inner mode is zero
                let j_hi = if p >= 0 { j_cap.min(p) } else { j_cap };
                let mut j = 0;
                while j <= j_hi {
                    let cj = binomial(j - p - 1, j as u32);
                    if !compose_into(action, a, p + ri - j, b, q + j, w, &cj, &mut lhs_entries) {
                        ok = false;
                        break;
                    }
                    j += 1;
                }
                if !ok {
                    sw.skipped += 1;
                    continue;
                }
                // right side: modes of products
                let mut rhs_entries: Vec<(usize, Scalar)> = Vec::new();
                for i in 0..=ri {
                    let t_ab = wa + wb - (p + ri - i) - 1;
                    if t_ab < 0 {
                        continue;
                    }
                    match voa.table().apply_basis(a, p + ri - i, b) {
                        Windowed::Out => {
                            ok = false;
                            break;
                        }
                        Windowed::In(vab) => {
                            if vab.is_zero() {
                                continue;
                            }
                            let ci = &rhs_coeffs[i as usize];
                            for (e, ce) in vab.iter() {
                                match action.apply_basis(e, q + i, w) {
                                    Windowed::Out => {
                                        ok = false;
                                        break;
                                    }
                                    Windowed::In(out_vec) => {
                                        if out_vec.is_zero() {
                                            continue;
                                        }
                                        let c = ci * ce;
                                        for (x, cx) in out_vec.iter() {
                                            rhs_entries.push((x, &c * cx));
                                        }
                                    }
                                }
                            }
                            if !ok {
                                break;
                            }
                        }
                    }
                }
                if !ok {
                    sw.skipped += 1;
                    continue;
                }
                let lhs = SparseVec::from_entries(tgt.total(), lhs_entries);
                let rhs = SparseVec::from_entries(tgt.total(), rhs_entries);
                if lhs == rhs {
                    sw.checked += 1;
                } else {
                    sw.failures.push((
                        format!(
                            "associativity, a={}, b={}, w={}, p={p}, q={q}, order {r}",
                            voa.label(a),
                            voa.label(b),
                            tlabel(w)
                        ),
                        fmt_vec(&lhs, tlabel),
                        fmt_vec(&rhs, tlabel),
                    ));
                    if !collect_all || sw.failures.len() >= MAX_WITNESSES {
                        return sw;
                    }
                }
            }
        }
    }
    sw
}

/// Ascending-order search shared by both locality checks.
///
/// `order_min` is the weight-derived order at which the identity provably
/// holds for honest structure constants (the deepest mode of the pair that
/// can be nonzero plus one). Exhausting the search bound is a genuine
/// counterexample only when the bound reaches that order; otherwise the pair
/// is out of reach of this bound and is reported as such, never failed.
fn order_search(
    bound: u32,
    order_min: u32,
    mut sweep: impl FnMut(u32, bool) -> Sweep,
    rep: &mut CheckReport,
    max_order: &mut u32,
    inconclusive: &mut u64,
    beyond_bound: &mut u64,
) {
    for k in 0..=bound {
        let sw = sweep(k, false);
        if sw.failures.is_empty() && sw.checked > 0 {
            rep.checked_instances += sw.checked;
            rep.skipped_instances += sw.skipped;
            *max_order = (*max_order).max(k);
            return;
        }
        if sw.failures.is_empty() && sw.checked == 0 && k == bound {
            // nothing decidable for this pair at any order
            rep.skipped_instances += sw.skipped;
            *inconclusive += 1;
            return;
        }
    }
    if order_min > bound {
        // The order needed for this pair is not searched at this bound, so
        // nothing can be concluded either way; raise the bound to decide it.
        *beyond_bound += 1;
        return;
    }
    // no order within the bound worked: rerun the bound collecting evidence
    let sw = sweep(bound, true);
    rep.checked_instances += sw.checked;
    rep.skipped_instances += sw.skipped;
    if sw.failures.is_empty() {
        *inconclusive += 1;
    } else {
        for (site, lhs, rhs) in sw.failures {
            rep.add_witness(site, lhs, rhs);
        }
    }
}

fn weak_comm_check(
    voa: &TruncatedVoa,
    action: &ModeTable,
    tlabel: &LabelFn,
    bound: u32,
) -> CheckReport {
    let mut rep = CheckReport::new("weak commutativity");
    let tv = voa.total_dim();
    let mut max_order = 0u32;
    let mut inconclusive = 0u64;
    let mut beyond = 0u64;
    for a in 0..tv {
        for b in a..tv {
            // The pair's deepest possibly-nonzero product mode is
            // wt a + wt b - 1, so the identity is guaranteed from this order.
            let order_min = (voa.weight_of(a) + voa.weight_of(b)) as u32;
            order_search(
                bound,
                order_min,
                |k, collect| comm_sweep(voa, action, tlabel, a, b, k, collect),
                &mut rep,
                &mut max_order,
                &mut inconclusive,
                &mut beyond,
            );
        }
    }
    if rep.witnesses.is_empty() && rep.checked_instances > 0 {
        rep.note(format!(
            "locality holds with order at most {max_order} (search bound {bound}); \
             pairs (b, a) with b > a are covered by antisymmetry of the sum"
        ));
    }
    if inconclusive > 0 {
        rep.note(format!(
            "{inconclusive} basis pairs had no decidable instances at this cutoff"
        ));
    }
    if beyond > 0 {
        rep.note(format!(
            "{beyond} basis pairs need a locality order above the search bound {bound} and \
             were left undecided; raise the bound to cover them"
        ));
    }
    rep.finish();
    rep
}

fn weak_assoc_check(
    voa: &TruncatedVoa,
    action: &ModeTable,
    tlabel: &LabelFn,
    bound: u32,
) -> CheckReport {
    let mut rep = CheckReport::new("weak associativity");
    let mut max_order = 0u32;
    let mut inconclusive = 0u64;
    let mut beyond = 0u64;
    for a in 0..voa.total_dim() {
        for w in 0..action.target().total() {
            // The deepest mode of `a` that can act without leaving the
            // grading is wt a + deg w - 1, so the identity is guaranteed
            // from this order.
            let order_min = (voa.weight_of(a) + action.target().weight_of(w)) as u32;
            order_search(
                bound,
                order_min,
                |r, collect| assoc_sweep(voa, action, tlabel, a, w, r, collect),
                &mut rep,
                &mut max_order,
                &mut inconclusive,
                &mut beyond,
            );
        }
    }
    if rep.witnesses.is_empty() && rep.checked_instances > 0 {
        rep.note(format!(
            "associativity holds with order at most {max_order} (search bound {bound})"
        ));
    }
    if inconclusive > 0 {
        rep.note(format!(
            "{inconclusive} (vector, target) pairs had no decidable instances at this cutoff"
        ));
    }
    if beyond > 0 {
        rep.note(format!(
            "{beyond} (vector, target) pairs need an order above the search bound {bound} and \
             were left undecided; raise the bound to cover them"
        ));
    }
    rep.finish();
    rep
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// Verifies the vertex algebra axioms on all decidable instances at this
/// cutoff: vacuum/creation, grading, translation covariance, the Virasoro
/// bracket, weak associativity and weak commutativity.
pub fn check_axioms(voa: &TruncatedVoa, bounds: &CheckBounds) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("vertex algebra axioms: {}", voa.name()));
    for n in voa.notes() {
        rep.note(n.clone());
    }
    let tlabel = |i: usize| voa.label(i);
    let action = voa.table();
    rep.push(vacuum_check(voa, action, &tlabel, true));
    rep.push(grading_check(voa, action, &tlabel, true));
    rep.push(translation_check(voa, action, &tlabel));
    rep.push(virasoro_check(voa));
    rep.push(weak_assoc_check(voa, action, &tlabel, bounds.assoc_bound));
    rep.push(weak_comm_check(voa, action, &tlabel, bounds.comm_bound));
    rep
}

/// Verifies the module axioms for a truncated module: identity action of the
/// vacuum, grading of the action, translation covariance, weak associativity
/// (with products taken in the algebra) and weak commutativity.
pub fn check_module(
    voa: &TruncatedVoa,
    module: &TruncatedModule,
    bounds: &CheckBounds,
) -> VerificationReport {
    let mut rep = VerificationReport::new(format!(
        "module axioms: {} over {}",
        module.name(),
        voa.name()
    ));
    if !module.compatible_with(voa) {
        let mut c = CheckReport::new("compatibility");
        c.add_witness(
            "acting grading".into(),
            "module action table indexed by a different graded basis".into(),
            "the algebra's graded basis".into(),
        );
        c.finish();
        rep.push(c);
        return rep;
    }
    let tlabel = |i: usize| module.label(i);
    let action = module.action();
    rep.push(vacuum_check(voa, action, &tlabel, false));
    rep.push(grading_check(voa, action, &tlabel, false));
    rep.push(translation_check(voa, action, &tlabel));
    rep.push(weak_assoc_check(voa, action, &tlabel, bounds.assoc_bound));
    rep.push(weak_comm_check(voa, action, &tlabel, bounds.comm_bound));
    rep
}
