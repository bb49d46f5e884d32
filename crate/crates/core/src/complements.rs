//! Independent complements inside an ambient field.
//!
//! `Y` complements `X` in `Z` when `X` and `Y` are independent and
//! `X v Y = Z`. Such a `Y` need not exist and need not be unique. Any
//! complement satisfies `Y <= Z`, so the search space is exactly the
//! coarsenings of `Z`, i.e. the set partitions of its atoms.

use crate::condexp::{cond_independent, cond_prob, measurable_wrt};
use crate::error::{Error, Result};
use crate::lattice::{independent, join, join_many, meet, plus};
use crate::partition::{bell, for_each_rgs};
use crate::report::{fields_equal_witnessed, LawReport};
use crate::sigma::{is_sub, SigmaField};

/// Atom count above which complement enumeration refuses to run.
pub const DEFAULT_ATOM_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementReport {
    pub of: SigmaField,
    pub ambient: SigmaField,
    /// All complements, in canonical order.
    pub complements: Vec<SigmaField>,
    /// Number of candidate coarsenings scanned.
    pub searched: u128,
}

/// Does `y` complement `x` inside `z`?
pub fn is_complement(y: &SigmaField, x: &SigmaField, z: &SigmaField) -> Result<bool> {
    Ok(independent(x, y)? && join(x, y)? == *z)
}

/// Coarsenings of a field: every set partition of its atoms, merged.
/// Canonical order of the returned list follows the block lists.
pub fn coarsenings(z: &SigmaField) -> Vec<SigmaField> {
    let n = z.block_count();
    let mut out = Vec::with_capacity(bell(n) as usize);
    for_each_rgs(n, |rgs| {
        let nblocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
        for (atom, &b) in rgs.iter().enumerate() {
            blocks[b].extend_from_slice(&z.blocks()[atom]);
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        out.push(SigmaField::from_canonical(z.space(), blocks));
        true
    });
    out.sort();
    out
}

/// Enumerates every complement of `x` in `z`. `x` must be a sub-field of
/// `z`; `z` must have at most [`DEFAULT_ATOM_CAP`] atoms.
pub fn enumerate_complements(x: &SigmaField, z: &SigmaField) -> Result<ComplementReport> {
    enumerate_complements_capped(x, z, DEFAULT_ATOM_CAP)
}

pub fn enumerate_complements_capped(
    x: &SigmaField,
    z: &SigmaField,
    atom_cap: usize,
) -> Result<ComplementReport> {
    if !is_sub(x, z)? {
        return Err(Error::NotSub(x.render()));
    }
    let atoms = z.block_count();
    if atoms > atom_cap {
        return Err(Error::CapExceeded {
            what: "complement enumeration over coarsenings".into(),
            needed: bell(atoms),
            cap: bell(atom_cap),
        });
    }
    let candidates = coarsenings(z);
    let searched = candidates.len() as u128;
    let mut complements = Vec::new();
    for y in candidates {
        if is_complement(&y, x, z)? {
            complements.push(y);
        }
    }
    complements.sort();
    Ok(ComplementReport {
        of: x.clone(),
        ambient: z.clone(),
        complements,
        searched,
    })
}

pub(crate) struct ComplementsIiParts {
    pub precondition_independent: bool,
    pub precondition_sub: bool,
    pub i_splits: bool,
    pub ii_cond_independent: bool,
    pub ii_x_probs_measurable: bool,
    pub ii_y_probs_measurable: bool,
    pub witness: Option<String>,
}

impl ComplementsIiParts {
    pub fn ii(&self) -> bool {
        self.ii_cond_independent && self.ii_x_probs_measurable && self.ii_y_probs_measurable
    }
}

pub(crate) fn complements_ii_parts(
    x: &SigmaField,
    y: &SigmaField,
    z: &SigmaField,
) -> Result<ComplementsIiParts> {
    let pre_indep = independent(x, y)?;
    let pre_sub = is_sub(z, &join(x, y)?)?;
    let mut witness = None;
    let split = join(&meet(x, z)?, &meet(y, z)?)?;
    let i_splits = fields_equal_witnessed("z vs (x^z)v(y^z)", z, &split, &mut witness);
    let ii_ci = cond_independent(x, y, z)?;
    let mut ii_x = true;
    for b in 0..x.block_count() {
        if !measurable_wrt(&cond_prob(z, &x.block_event(b))?, x) {
            ii_x = false;
            break;
        }
    }
    let mut ii_y = true;
    for b in 0..y.block_count() {
        if !measurable_wrt(&cond_prob(z, &y.block_event(b))?, y) {
            ii_y = false;
            break;
        }
    }
    Ok(ComplementsIiParts {
        precondition_independent: pre_indep,
        precondition_sub: pre_sub,
        i_splits,
        ii_cond_independent: ii_ci,
        ii_x_probs_measurable: ii_x,
        ii_y_probs_measurable: ii_y,
        witness,
    })
}

/// For independent `x`, `y` and `z <= x v y`, the following are equivalent:
/// (i) `z = (x ^ z) v (y ^ z)`; (ii) `x` and `y` are conditionally
/// independent given `z` and the conditional probabilities `P[A|z]` of
/// atoms of each operand are measurable for that operand. The report
/// carries both sides; a disagreement is an implementation bug and errors.
pub fn complements_ii_check(
    x: &SigmaField,
    y: &SigmaField,
    z: &SigmaField,
) -> Result<LawReport> {
    let parts = complements_ii_parts(x, y, z)?;
    if !parts.precondition_independent {
        return Err(Error::PreconditionFailed("x and y are not independent".into()));
    }
    if !parts.precondition_sub {
        return Err(Error::PreconditionFailed("z is not inside x v y".into()));
    }
    let report = complements_ii_report_from(parts);
    if report.conclusion == Some(false) {
        return Err(Error::EquivalenceViolated(format!(
            "complements-ii sides disagree on x={x}, y={y}, z={z}"
        )));
    }
    Ok(report)
}

/// Non-asserting form: preconditions become hypotheses and the conclusion
/// is whether (i) and (ii) agree.
pub fn complements_ii_report(
    x: &SigmaField,
    y: &SigmaField,
    z: &SigmaField,
) -> Result<LawReport> {
    Ok(complements_ii_report_from(complements_ii_parts(x, y, z)?))
}

fn complements_ii_report_from(parts: ComplementsIiParts) -> LawReport {
    let ii = parts.ii();
    LawReport::new("complements-ii")
        .hyp("x-y-independent", parts.precondition_independent)
        .hyp("z-inside-join", parts.precondition_sub)
        .detail("i-z-splits", parts.i_splits)
        .detail("ii-cond-independent", parts.ii_cond_independent)
        .detail("ii-x-probs-measurable", parts.ii_x_probs_measurable)
        .detail("ii-y-probs-measurable", parts.ii_y_probs_measurable)
        .conclude(parts.i_splits == ii)
        .with_witness(parts.witness)
}

/// The unique candidate for a two-sided complement: `a' ^ b`.
/// Requires `a + b` and `a' + b'` to be defined and equal.
pub fn two_sided_candidate(
    a: &SigmaField,
    b: &SigmaField,
    a_prime: &SigmaField,
    b_prime: &SigmaField,
) -> Result<SigmaField> {
    two_sided_precondition(a, b, a_prime, b_prime)?;
    meet(a_prime, b)
}

fn two_sided_precondition(
    a: &SigmaField,
    b: &SigmaField,
    a_prime: &SigmaField,
    b_prime: &SigmaField,
) -> Result<SigmaField> {
    let ab = plus(a, b).map_err(|_| {
        Error::PreconditionFailed("a + b is undefined (a, b not independent)".into())
    })?;
    let apbp = plus(a_prime, b_prime).map_err(|_| {
        Error::PreconditionFailed("a' + b' is undefined (a', b' not independent)".into())
    })?;
    if ab != apbp {
        return Err(Error::PreconditionFailed(format!(
            "a + b = {ab} differs from a' + b' = {apbp}"
        )));
    }
    Ok(ab)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedReport {
    /// The only possible two-sided complement, `a' ^ b`.
    pub candidate: SigmaField,
    /// There is one `Z` with `a + Z = a'` and `b' + Z = b` (checked on the
    /// candidate, which is the only possibility).
    pub a_condition: bool,
    /// `a + (a' ^ b) + b' = a + b` with all sums defined.
    pub b_condition: bool,
    /// `x <= a v (a' ^ b)` and `y <= b' v (a' ^ b)`; evaluated only when
    /// witnesses `x`, `y` were supplied.
    pub c_condition: Option<bool>,
    /// Some complement of `a` in `a'` lies inside `b`, and some complement
    /// of `b'` in `b` lies inside `a'`.
    pub d_condition: bool,
    /// Atom conditional probabilities `P[b-atoms | a']` are b-measurable
    /// and `P[a'-atoms | b]` are a'-measurable.
    pub e_condition: bool,
    /// Whether all evaluated conditions agree; asserted (and an error on
    /// violation) only when `x` and `y` are supplied.
    pub equivalent: Option<bool>,
}

impl TwoSidedReport {
    pub fn conditions(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("a", Some(self.a_condition)),
            ("b", Some(self.b_condition)),
            ("c", self.c_condition),
            ("d", Some(self.d_condition)),
            ("e", Some(self.e_condition)),
        ]
    }

    pub fn all_evaluated_agree(&self) -> bool {
        let vals: Vec<bool> = self
            .conditions()
            .into_iter()
            .filter_map(|(_, v)| v)
            .collect();
        vals.windows(2).all(|w| w[0] == w[1])
    }
}

/// Checks the two-sided complement conditions for `a + x = a'` and
/// `b' + y = b` with `a + b = a' + b'`. When `x` and `y` are given they are
/// validated and the propositions (a)-(e) are asserted equivalent; without
/// them conditions are reported but no equivalence is claimed.
pub fn two_sided_check(
    a: &SigmaField,
    b: &SigmaField,
    a_prime: &SigmaField,
    b_prime: &SigmaField,
    x: Option<&SigmaField>,
    y: Option<&SigmaField>,
) -> Result<TwoSidedReport> {
    let ambient = two_sided_precondition(a, b, a_prime, b_prime)?;
    if let Some(x) = x {
        let ax = plus(a, x).map_err(|_| {
            Error::PreconditionFailed("supplied x is not independent of a".into())
        })?;
        if ax != *a_prime {
            return Err(Error::PreconditionFailed(format!(
                "a + x = {ax} is not a' = {a_prime}"
            )));
        }
    }
    if let Some(y) = y {
        let by = plus(b_prime, y).map_err(|_| {
            Error::PreconditionFailed("supplied y is not independent of b'".into())
        })?;
        if by != *b {
            return Err(Error::PreconditionFailed(format!(
                "b' + y = {by} is not b = {b}"
            )));
        }
    }

    let cand = meet(a_prime, b)?;

    let a_cond = independent(a, &cand)?
        && join(a, &cand)? == *a_prime
        && independent(b_prime, &cand)?
        && join(b_prime, &cand)? == *b;

    let b_cond = match plus(a, &cand) {
        Ok(ac) => match plus(&ac, b_prime) {
            Ok(total) => total == ambient,
            Err(_) => false,
        },
        Err(_) => false,
    };

    let c_cond = match (x, y) {
        (Some(x), Some(y)) => Some(
            is_sub(x, &join(a, &cand)?)? && is_sub(y, &join(b_prime, &cand)?)?,
        ),
        _ => None,
    };

    // No one-sided complement can exist at all unless a <= a' (resp. b' <= b).
    let in_b = if is_sub(a, a_prime)? {
        enumerate_complements(a, a_prime)?
            .complements
            .iter()
            .any(|c| is_sub(c, b).unwrap_or(false))
    } else {
        false
    };
    let in_ap = if is_sub(b_prime, b)? {
        enumerate_complements(b_prime, b)?
            .complements
            .iter()
            .any(|c| is_sub(c, a_prime).unwrap_or(false))
    } else {
        false
    };
    let d_cond = in_b && in_ap;

    let mut e_cond = true;
    for bi in 0..b.block_count() {
        if !measurable_wrt(&cond_prob(a_prime, &b.block_event(bi))?, b) {
            e_cond = false;
            break;
        }
    }
    if e_cond {
        for ai in 0..a_prime.block_count() {
            if !measurable_wrt(&cond_prob(b, &a_prime.block_event(ai))?, a_prime) {
                e_cond = false;
                break;
            }
        }
    }

    let mut report = TwoSidedReport {
        candidate: cand,
        a_condition: a_cond,
        b_condition: b_cond,
        c_condition: c_cond,
        d_condition: d_cond,
        e_condition: e_cond,
        equivalent: None,
    };
    let agree = report.all_evaluated_agree();
    if x.is_some() && y.is_some() {
        report.equivalent = Some(agree);
        if !agree {
            return Err(Error::EquivalenceViolated(format!(
                "two-sided conditions diverge: a={} b={} c={:?} d={} e={}",
                report.a_condition,
                report.b_condition,
                report.c_condition,
                report.d_condition,
                report.e_condition
            )));
        }
    }
    Ok(report)
}

/// Non-asserting wrapper used by the law registry: preconditions become
/// hypotheses, the conclusion is agreement of the evaluated conditions.
pub fn two_sided_report(
    a: &SigmaField,
    b: &SigmaField,
    a_prime: &SigmaField,
    b_prime: &SigmaField,
    x: Option<&SigmaField>,
    y: Option<&SigmaField>,
) -> Result<LawReport> {
    let pre = two_sided_precondition(a, b, a_prime, b_prime);
    let mut report = LawReport::new("two-sided");
    match pre {
        Err(Error::PreconditionFailed(msg)) => {
            return Ok(report.hyp("sums-defined-and-equal", false).with_witness(Some(msg)));
        }
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    report = report.hyp("sums-defined-and-equal", true);
    let x_ok = x.map(|xf| matches!(plus(a, xf), Ok(ax) if ax == *a_prime));
    let y_ok = y.map(|yf| matches!(plus(b_prime, yf), Ok(by) if by == *b));
    if let Some(ok) = x_ok {
        report = report.hyp("x-completes-a-to-a-prime", ok);
    }
    if let Some(ok) = y_ok {
        report = report.hyp("y-completes-b-prime-to-b", ok);
    }
    if x_ok == Some(false) || y_ok == Some(false) {
        return Ok(report);
    }
    match two_sided_check(a, b, a_prime, b_prime, x, y) {
        Ok(r) => {
            for (name, v) in r.conditions() {
                if let Some(v) = v {
                    report = report.detail(format!("condition-{name}"), v);
                }
            }
            // Equivalence of (a)-(e) is only claimed when one-sided
            // complements x, y are exhibited; without them the condition
            // values are informational.
            if x.is_some() && y.is_some() {
                report = report.conclude(r.all_evaluated_agree());
            }
            Ok(report)
        }
        Err(Error::EquivalenceViolated(msg)) => Ok(report.conclude(false).with_witness(Some(msg))),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnovationReport {
    /// `f[n] = f[n+1] + h[n+1]` for every step, sums defined.
    pub f_steps: bool,
    /// `g[n+1] = g[n] + h[n+1]` for every step, sums defined.
    pub g_steps: bool,
    /// `h[n] = g[n] ^ f[n-1]` for every step.
    pub meet_identity: bool,
    /// `f[n] = f[N] v h[n+1] v .. v h[N]` for every n.
    pub expansion: bool,
    pub witness: Option<String>,
}

impl InnovationReport {
    pub fn innovates(&self) -> bool {
        self.f_steps && self.g_steps
    }

    pub fn conclusion(&self) -> bool {
        self.meet_identity && self.expansion
    }
}

/// Checks an innovation triple: `f` nonincreasing from `f[0] = f[1] v g[1]`,
/// `g` nondecreasing from the trivial field, `h` of length one less.
/// Verifies the defining sums, the meet identity `h[n] = g[n] ^ f[n-1]`,
/// and the finite-horizon expansion of each `f[n]`.
///
/// Errors with `NotIndependent` when a defining sum is undefined.
pub fn innovation_check(
    f: &[SigmaField],
    g: &[SigmaField],
    h: &[SigmaField],
) -> Result<InnovationReport> {
    let n = h.len();
    if f.len() != n + 1 || g.len() != n + 1 || n == 0 {
        return Err(Error::PreconditionFailed(format!(
            "expected lengths N+1, N+1, N with N >= 1; got {}, {}, {}",
            f.len(),
            g.len(),
            h.len()
        )));
    }
    let space = f[0].space();
    for sf in f.iter().chain(g).chain(h) {
        if sf.space() != space {
            return Err(Error::SpaceMismatch);
        }
    }
    for k in 0..n {
        if !is_sub(&f[k + 1], &f[k])? {
            return Err(Error::PreconditionFailed(format!(
                "f is not nonincreasing at step {k}"
            )));
        }
        if !is_sub(&g[k], &g[k + 1])? {
            return Err(Error::PreconditionFailed(format!(
                "g is not nondecreasing at step {k}"
            )));
        }
    }
    if !g[0].is_trivial() {
        return Err(Error::PreconditionFailed("g[0] must be trivial".into()));
    }
    if f[0] != join(&f[1], &g[1])? {
        return Err(Error::PreconditionFailed("f[0] must equal f[1] v g[1]".into()));
    }

    let mut witness = None;
    let mut f_steps = true;
    let mut g_steps = true;
    for k in 0..n {
        // h[k] holds the (k+1)-th innovation.
        let fs = plus(&f[k + 1], &h[k])?;
        if fs != f[k] {
            f_steps = false;
            if witness.is_none() {
                witness = Some(format!("f[{k}] = {} but f[{}] + h[{}] = {fs}", f[k], k + 1, k + 1));
            }
        }
        let gs = plus(&g[k], &h[k])?;
        if gs != g[k + 1] {
            g_steps = false;
            if witness.is_none() {
                witness = Some(format!(
                    "g[{}] = {} but g[{k}] + h[{}] = {gs}",
                    k + 1,
                    g[k + 1],
                    k + 1
                ));
            }
        }
    }

    let mut meet_identity = true;
    for k in 1..=n {
        let m = meet(&g[k], &f[k - 1])?;
        if m != h[k - 1] {
            meet_identity = false;
            if witness.is_none() {
                witness = Some(format!("h[{k}] = {} but g[{k}] ^ f[{}] = {m}", h[k - 1], k - 1));
            }
        }
    }

    let mut expansion = true;
    for k in 0..=n {
        let mut tail = vec![f[n].clone()];
        tail.extend_from_slice(&h[k..]);
        let j = join_many(space, &tail)?;
        if j != f[k] {
            expansion = false;
            if witness.is_none() {
                witness = Some(format!(
                    "f[{k}] = {} but f[{n}] v h[{}..] = {j}",
                    f[k],
                    k + 1
                ));
            }
        }
    }

    Ok(InnovationReport {
        f_steps,
        g_steps,
        meet_identity,
        expansion,
        witness,
    })
}

/// Registry wrapper: preconditions and undefined sums become falsified
/// hypotheses instead of errors.
pub fn innovation_report(
    f: &[SigmaField],
    g: &[SigmaField],
    h: &[SigmaField],
) -> Result<LawReport> {
    match innovation_check(f, g, h) {
        Ok(r) => Ok(LawReport::new("innovation")
            .hyp("shape-and-monotonicity", true)
            .hyp("f-steps", r.f_steps)
            .hyp("g-steps", r.g_steps)
            .detail("meet-identity", r.meet_identity)
            .detail("expansion", r.expansion)
            .conclude(r.conclusion())
            .with_witness(r.witness)),
        Err(Error::PreconditionFailed(msg)) => Ok(LawReport::new("innovation")
            .hyp("shape-and-monotonicity", false)
            .with_witness(Some(msg))),
        Err(Error::NotIndependent) => Ok(LawReport::new("innovation")
            .hyp("shape-and-monotonicity", true)
            .hyp("f-steps", false)
            .hyp("g-steps", false)
            .with_witness(Some("a defining sum is undefined".into()))),
        Err(e) => Err(e),
    }
}
