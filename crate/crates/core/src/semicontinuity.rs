//! Checkers for the five generalized upper-semicontinuity notions of a
//! unary cone-valued map at a point, over deterministic families of
//! exactly evaluable sequences.
//!
//! Semantics notes:
//! - All limit and eventual-sign questions are decided symbolically through
//!   `ratfun` (tails of Mobius sequences are rational functions of t = 1/n).
//! - The neighborhood-style notion (`cusc_check`) is checked in sequential
//!   form: a refutation is a sequence whose value limit L differs from
//!   h(x0) with h(x0) - L outside int C, witnessed by a shrinking
//!   perturbation schedule k_n = s_n * w along an interior direction w.
//! - The order-sandwich notion (`ausc_along`) is decided by an exact
//!   reduction: a witness net (z_n) -> z exists iff the linear system
//!   { <a_j, z> <= <a_j, h(x0)>, <a_j, z> >= lim <a_j, h(x_n)> } is
//!   feasible (divergence to +infinity on any normal is an immediate
//!   refutation). A brute-force oracle (`ausc_witness_oracle`) guards this
//!   reduction in the test suite.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::{ConeSpec, ConeValidation};
use crate::domain::BoxDomain;
use crate::error::{KernelError, Result};
use crate::linalg::{fm_feasible, LinIneq};
use crate::maps::{MapArity, PiecewiseMap};
use crate::rational::RationalVec;
use crate::ratfun::{RatFun, TailLimit, TailSign};
use crate::seq::{generate_sequences, Mobius, SequenceSpec};
use crate::verdict::{Certificate, SamplingBudget, Verdict};
use crate::Rational;

/// The sequence family used by all checkers, derived from the budget.
pub fn generate(
    x0: &RationalVec,
    domain: &BoxDomain,
    budget: &SamplingBudget,
) -> Result<Vec<SequenceSpec>> {
    generate_sequences(x0, domain, budget.direction_count)
}

fn require_unary(h: &PiecewiseMap, cone: &ConeSpec) -> Result<()> {
    if h.arity() != MapArity::Unary || h.codomain_dim() != cone.dim() {
        return Err(KernelError::ShapeMismatch);
    }
    Ok(())
}

fn interior_direction(cone: &ConeSpec) -> Result<RationalVec> {
    if let Some(w) = cone.interior_witness() {
        return Ok(w.clone());
    }
    match cone.validated() {
        ConeValidation::Valid { witness, .. } => Ok(witness),
        _ => Err(KernelError::PreconditionFailed(String::from(
            "cone has empty interior or is not pointed",
        ))),
    }
}

fn dot_tail(a: &RationalVec, v: &[RatFun]) -> RatFun {
    let mut acc = RatFun::constant(Rational::zero());
    for (c, f) in a.coords().iter().zip(v) {
        acc = acc.add(&f.scale(c));
    }
    acc
}

/// Symbolic values of the map along the sequence tail.
fn value_tail(h: &PiecewiseMap, seq: &SequenceSpec) -> Result<Vec<RatFun>> {
    h.eval_tail(&seq.as_ratfun(), None)
}

/// Some coordinate limit differs from (or diverges away from) `p`.
fn limits_differ_from(v: &[RatFun], p: &RationalVec) -> bool {
    v.iter().zip(p.coords()).any(|(f, c)| match f.tail_limit() {
        TailLimit::Finite(l) => &l != c,
        _ => true,
    })
}

/// Largest suffix of the schedule on which `pred` holds at every index.
fn holding_suffix(
    schedule: &[u64],
    mut pred: impl FnMut(u64) -> Result<bool>,
) -> Result<Vec<u64>> {
    let mut start = schedule.len();
    for (i, &n) in schedule.iter().enumerate().rev() {
        if pred(n)? {
            start = i;
        } else {
            break;
        }
    }
    Ok(schedule[start..].to_vec())
}

/// Sequential check of the neighborhood-style usc notion: refuted when some
/// generated sequence has a value limit L != h(x0) with h(x0) - L outside
/// int C, certified by boundary residuals along a shrinking perturbation.
pub fn cusc_check(
    h: &PiecewiseMap,
    x0: &RationalVec,
    cone: &ConeSpec,
    budget: &SamplingBudget,
) -> Result<Verdict> {
    require_unary(h, cone)?;
    let h0 = h.eval_unary(x0)?;
    let w = interior_direction(cone)?;
    let schedule = budget.radius_schedule();
    for seq in generate(x0, h.domain(), budget)? {
        let Ok(v) = value_tail(h, &seq) else { continue };
        if !limits_differ_from(&v, &h0) {
            continue;
        }
        let refuting = cone.normals().iter().any(|a| {
            let gap = RatFun::constant(a.dot(&h0).expect("dims checked")).sub(&dot_tail(a, &v));
            gap.tail_sign() == TailSign::Negative
        });
        if !refuting {
            continue;
        }
        let checked = holding_suffix(&schedule, |n| {
            let hn = h.eval_unary(&seq.term(n)?)?;
            let gap = &h0 - &hn;
            Ok(cone
                .normals()
                .iter()
                .any(|a| a.dot(&gap).expect("dims checked").is_negative()))
        })?;
        if !checked.is_empty() {
            return Ok(Verdict::fails(Certificate::CuscCounterexample {
                k: w,
                seq,
                checked,
            }));
        }
    }
    Ok(Verdict::consistent(String::from(
        "no refuting sequence found at this budget",
    )))
}

/// Per-normal tail products and limits of the map along a sequence.
fn normal_limits(
    cone: &ConeSpec,
    v: &[RatFun],
) -> Vec<(RatFun, TailLimit)> {
    cone.normals()
        .iter()
        .map(|a| {
            let p = dot_tail(a, v);
            let l = p.tail_limit();
            (p, l)
        })
        .collect()
}

/// The linear system any witness limit z must satisfy for the
/// order-sandwich notion along this sequence: z below h(x0) in the cone
/// order and each normal product at least the sequence's limit.
fn witness_system(
    cone: &ConeSpec,
    h0: &RationalVec,
    limits: &[(RatFun, TailLimit)],
) -> Vec<LinIneq> {
    let mut system = Vec::new();
    for (a, (_, l)) in cone.normals().iter().zip(limits) {
        let neg: Vec<Rational> = a.coords().iter().map(|c| -c).collect();
        system.push(LinIneq::ge(neg, -a.dot(h0).expect("dims checked")));
        if let TailLimit::Finite(m) = l {
            system.push(LinIneq::ge(a.coords().to_vec(), m.clone()));
        }
    }
    system
}

/// Construct the explicit witness z_n = z + s * w / n dominating the map
/// values at every index up to tail depth and symbolically in the tail.
fn build_witness(
    h: &PiecewiseMap,
    seq: &SequenceSpec,
    cone: &ConeSpec,
    z: &RationalVec,
    limits: &[(RatFun, TailLimit)],
    tail_depth: u32,
) -> Result<Option<SequenceSpec>> {
    let w = interior_direction(cone)?;
    let mut s = Rational::zero();
    let t_var = RatFun::var();
    // symbolic requirement: s * <a_j, w> must exceed the first-order rate at
    // which the normal product approaches its limit from below the slack
    for (a, (p, _)) in cone.normals().iter().zip(limits) {
        let c = a.dot(z)?;
        let q = p.sub(&RatFun::constant(c)); // tends to M_j - c <= 0
        let rate = q.mul(&t_var.recip().expect("t is nonzero"));
        if let TailLimit::Finite(l) = rate.tail_limit() {
            if l.is_positive() {
                let need = &l / &a.dot(&w)? + Rational::one();
                if need > s {
                    s = need;
                }
            }
        }
    }
    // exact requirement at every explicit index
    for n in 1..=u64::from(tail_depth.max(1)) {
        let hn = h.eval_unary(&seq.term(n)?)?;
        for a in cone.normals() {
            let deficit = &a.dot(&hn)? - &a.dot(z)?;
            if deficit.is_positive() {
                let need =
                    &(&deficit * &Rational::from(BigInt::from(n))) / &a.dot(&w)?;
                if need > s {
                    s = need;
                }
            }
        }
    }
    // verify eventual domination symbolically; widen s if needed
    for _ in 0..8 {
        let ok = cone.normals().iter().zip(limits).all(|(a, (p, _))| {
            let c = a.dot(z).expect("dims checked");
            let aw = a.dot(&w).expect("dims checked");
            let diff = RatFun::constant(c)
                .add(&t_var.scale(&(&s * &aw)))
                .sub(p);
            diff.tail_sign() != TailSign::Negative
        });
        if ok {
            let coords = (0..z.dim())
                .map(|i| Mobius {
                    alpha: z.coord(i).clone(),
                    beta: &s * w.coord(i),
                    gamma: Rational::one(),
                    delta: Rational::zero(),
                })
                .collect();
            let witness = SequenceSpec::new(coords, z.clone(), true)?;
            return Ok(Some(witness));
        }
        s = &(&s * &crate::rational::rat(2, 1)) + &Rational::one();
    }
    Ok(None)
}

/// Order-sandwich notion along one sequence; complete for Mobius sequences
/// via the feasibility reduction.
pub fn ausc_along(
    h: &PiecewiseMap,
    x0: &RationalVec,
    seq: &SequenceSpec,
    cone: &ConeSpec,
    budget: &SamplingBudget,
) -> Result<Verdict> {
    require_unary(h, cone)?;
    if seq.limit() != x0 {
        return Err(KernelError::LimitMismatch);
    }
    seq.validate_terms(Some(h.domain()), budget.tail_depth.min(16))?;
    let h0 = h.eval_unary(x0)?;
    let v = value_tail(h, seq)?;
    let limits = normal_limits(cone, &v);
    if let Some(j) = limits
        .iter()
        .position(|(_, l)| *l == TailLimit::PlusInfinity)
    {
        return Ok(Verdict::fails(Certificate::AuscInfeasible {
            seq: seq.clone(),
            system: Vec::new(),
            diverging_normal: Some(j),
        }));
    }
    let system = witness_system(cone, &h0, &limits);
    match fm_feasible(cone.dim(), &system) {
        None => Ok(Verdict::fails(Certificate::AuscInfeasible {
            seq: seq.clone(),
            system,
            diverging_normal: None,
        })),
        Some(zv) => {
            let z = RationalVec::new(zv);
            match build_witness(h, seq, cone, &z, &limits, budget.tail_depth)? {
                Some(witness) => Ok(Verdict::holds(Certificate::AuscWitness {
                    seq: seq.clone(),
                    witness,
                })),
                None => Ok(Verdict::consistent(String::from(
                    "feasible witness limit found but explicit net construction exceeded budget",
                ))),
            }
        }
    }
}

/// Order-sandwich notion quantified over the generated family.
pub fn ausc_check(
    h: &PiecewiseMap,
    x0: &RationalVec,
    cone: &ConeSpec,
    budget: &SamplingBudget,
) -> Result<Verdict> {
    require_unary(h, cone)?;
    let h0 = h.eval_unary(x0)?;
    let mut first_witness: Option<Certificate> = None;
    let mut continuous = true;
    for seq in generate(x0, h.domain(), budget)? {
        let verdict = ausc_along(h, x0, &seq, cone, budget)?;
        if verdict.is_fails() {
            return Ok(verdict);
        }
        if !verdict.is_holds() {
            return Ok(Verdict::consistent(String::from(
                "a sequence returned an inconclusive sandwich verdict",
            )));
        }
        if first_witness.is_none() {
            first_witness = verdict.certificate;
        }
        let v = value_tail(h, &seq)?;
        if limits_differ_from(&v, &h0) {
            continuous = false;
        }
    }
    match (first_witness, continuous) {
        (Some(cert), true) => Ok(Verdict::holds(cert)),
        (Some(_), false) => Ok(Verdict::consistent(String::from(
            "every generated sequence admits a witness but the map is discontinuous at the point",
        ))),
        (None, _) => Ok(Verdict::consistent(String::from(
            "empty sequence family at this budget",
        ))),
    }
}

/// Grid of perturbations around `center`, ordered nearest-first (then by
/// grid index) so the smallest refuting perturbation is reported.
fn k_grid(center: &RationalVec, radius: u32, density: u32) -> Result<Vec<RationalVec>> {
    let r = Rational::from(BigInt::from(radius.max(1)));
    let dim = center.dim();
    let lower = RationalVec::new(center.coords().iter().map(|c| c - &r).collect());
    let upper = RationalVec::new(center.coords().iter().map(|c| c + &r).collect());
    let counts = alloc::vec![2 * radius.max(1) * density.max(1); dim];
    let grid = BoxDomain::new(lower, upper, counts)?;
    let mut pts: Vec<(Rational, usize, RationalVec)> = grid
        .grid_points()
        .into_iter()
        .enumerate()
        .map(|(i, p)| ((&p - center).linf_norm(), i, p))
        .collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(pts.into_iter().map(|(_, _, p)| p).collect())
}

/// Level-set style notion: refuted by a perturbation k with k + h(x0)
/// outside C while k + h(x_n) stays in C along some approach sequence.
pub fn qusc_check(
    h: &PiecewiseMap,
    x0: &RationalVec,
    cone: &ConeSpec,
    budget: &SamplingBudget,
) -> Result<Verdict> {
    require_unary(h, cone)?;
    let h0 = h.eval_unary(x0)?;
    let anchor = -&h0;
    let schedule = budget.radius_schedule();
    let seqs = generate(x0, h.domain(), budget)?;
    let tails: Vec<(SequenceSpec, Vec<RatFun>)> = seqs
        .into_iter()
        .filter_map(|s| value_tail(h, &s).ok().map(|v| (s, v)))
        .collect();
    for k in k_grid(&anchor, budget.k_radius, budget.k_density)? {
        if cone.contains(&(&k + &h0))? {
            continue;
        }
        for (seq, v) in &tails {
            let eventually_in_cone = cone.normals().iter().all(|a| {
                let p = dot_tail(a, v).add(&RatFun::constant(a.dot(&k).expect("dims")));
                p.tail_sign() != TailSign::Negative
            });
            if !eventually_in_cone {
                continue;
            }
            let checked = holding_suffix(&schedule, |n| {
                let hn = h.eval_unary(&seq.term(n)?)?;
                cone.contains(&(&k + &hn))
            })?;
            if !checked.is_empty() {
                return Ok(Verdict::fails(Certificate::QuscCounterexample {
                    k,
                    seq: seq.clone(),
                    checked,
                }));
            }
        }
    }
    Ok(Verdict::consistent(String::from(
        "no refuting perturbation found on the sampled grid",
    )))
}

/// One-net sandwich notion: holds when any generated sequence admits a
/// witness; refuted only by a branch-independent uniform bound.
pub fn wusc_check(
    h: &PiecewiseMap,
    x0: &RationalVec,
    cone: &ConeSpec,
    budget: &SamplingBudget,
) -> Result<Verdict> {
    require_unary(h, cone)?;
    let h0 = h.eval_unary(x0)?;
    let seqs = generate(x0, h.domain(), budget)?;
    for seq in &seqs {
        let v = ausc_along(h, x0, seq, cone, budget)?;
        if v.is_holds() {
            if let Some(Certificate::AuscWitness { seq, witness }) = v.certificate {
                return Ok(Verdict::holds(Certificate::WuscWitness { seq, witness }));
            }
        }
    }
    // uniform refutation: some normal is bounded away from its anchor value
    // on a punctured grid ball and along every generated sequence tail
    let domain = h.domain();
    let radius = (0..domain.dim())
        .map(|i| domain.axis_step(i))
        .max()
        .map(|s| &s * &crate::rational::rat(2, 1))
        .unwrap_or_else(Rational::one);
    let punctured: Vec<RationalVec> = domain
        .grid_points()
        .into_iter()
        .filter(|p| p != x0 && (p - x0).linf_norm() <= radius)
        .collect();
    if !punctured.is_empty() && !seqs.is_empty() {
        'normals: for (j, a) in cone.normals().iter().enumerate() {
            let base = a.dot(&h0)?;
            let mut threshold: Option<Rational> = None;
            for p in &punctured {
                let val = a.dot(&h.eval_unary(p)?)?;
                if threshold.as_ref().is_none_or(|t| &val < t) {
                    threshold = Some(val);
                }
            }
            let m = threshold.expect("nonempty punctured set");
            if m <= base {
                continue;
            }
            for seq in &seqs {
                let Ok(v) = value_tail(h, seq) else {
                    continue 'normals;
                };
                let exceeds = match dot_tail(a, &v).tail_limit() {
                    TailLimit::PlusInfinity => true,
                    TailLimit::Finite(l) => l > base,
                    TailLimit::MinusInfinity => false,
                };
                if !exceeds {
                    continue 'normals;
                }
            }
            return Ok(Verdict::fails(Certificate::UniformBound {
                normal_index: j,
                threshold: m,
                base_value: base,
                points: punctured,
            }));
        }
    }
    Ok(Verdict::consistent(String::from(
        "no witness sequence found and no uniform obstruction at this budget",
    )))
}

/// Certificate-only verification of the monotone-net notion: the candidate
/// nets must satisfy monotonicity of h(x_n) + z_n in the cone order and the
/// inequality h(x0) - h(x_n) + w_n in C at every checked index.
pub fn ousc_verify_certificate(
    h: &PiecewiseMap,
    x0: &RationalVec,
    cone: &ConeSpec,
    x_net: &SequenceSpec,
    z_net: &SequenceSpec,
    w_net: &SequenceSpec,
    tail_depth: u32,
) -> Result<bool> {
    require_unary(h, cone)?;
    if x_net.limit() != x0 {
        return Err(KernelError::LimitMismatch);
    }
    let zero = RationalVec::zero(cone.dim());
    if z_net.limit() != &zero || w_net.limit() != &zero {
        return Err(KernelError::LimitMismatch);
    }
    let h0 = h.eval_unary(x0)?;
    let depth = u64::from(tail_depth.max(2));
    let mut prev: Option<RationalVec> = None;
    for n in 1..=depth {
        let hx = h.eval_unary(&x_net.term(n)?)?;
        let cur = &hx + &z_net.term(n)?;
        if let Some(p) = prev {
            if !cone.contains(&(&cur - &p))? {
                return Ok(false);
            }
        }
        prev = Some(cur);
        let slack = &(&h0 - &hx) + &w_net.term(n)?;
        if !cone.contains(&slack)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Independent brute-force oracle for the sandwich-witness reduction: grid
/// search over candidate limits z near h(x0), accepting z when the exact
/// per-index deficit max_j max(0, <a_j, h(x_n)> - <a_j, z>) vanishes or
/// decays along the radius schedule. Used as a gate for `ausc_along`.
pub fn ausc_witness_oracle(
    h: &PiecewiseMap,
    x0: &RationalVec,
    seq: &SequenceSpec,
    cone: &ConeSpec,
    budget: &SamplingBudget,
) -> Result<bool> {
    require_unary(h, cone)?;
    if seq.limit() != x0 {
        return Err(KernelError::LimitMismatch);
    }
    let h0 = h.eval_unary(x0)?;
    let schedule = budget.radius_schedule();
    let n_hi = *schedule.last().expect("nonempty schedule");
    let n_lo = n_hi / 4;
    let deficit = |z: &RationalVec, n: u64| -> Result<Rational> {
        let hn = h.eval_unary(&seq.term(n)?)?;
        let mut worst = Rational::zero();
        for a in cone.normals() {
            let d = &a.dot(&hn)? - &a.dot(z)?;
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    };
    for z in k_grid(&h0, budget.witness_radius, budget.witness_density)? {
        if !cone.contains(&(&h0 - &z))? {
            continue;
        }
        let d_hi = deficit(&z, n_hi)?;
        if d_hi.is_zero() {
            return Ok(true);
        }
        if n_lo >= 1 {
            let d_lo = deficit(&z, n_lo)?;
            if &d_hi + &d_hi <= d_lo {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Replay a semicontinuity certificate against the exact kernel: every
/// membership it claims is re-verified; returns false on the first failure.
pub fn replay(
    h: &PiecewiseMap,
    x0: &RationalVec,
    cone: &ConeSpec,
    cert: &Certificate,
) -> Result<bool> {
    require_unary(h, cone)?;
    let h0 = h.eval_unary(x0)?;
    match cert {
        Certificate::CuscCounterexample { k, seq, checked } => {
            if !cone.interior_contains(k)? || seq.limit() != x0 || checked.is_empty() {
                return Ok(false);
            }
            let v = value_tail(h, seq)?;
            if !limits_differ_from(&v, &h0) {
                return Ok(false);
            }
            for &n in checked {
                let gap = &h0 - &h.eval_unary(&seq.term(n)?)?;
                // the most violated normal admits a positive scale putting
                // the perturbed residual on or outside the cone boundary
                let mut best: Option<(Rational, Rational)> = None;
                for a in cone.normals() {
                    let g = a.dot(&gap)?;
                    if g.is_negative() {
                        let s = -&g / &a.dot(k)?;
                        if best.as_ref().is_none_or(|(b, _)| &s < b) {
                            best = Some((s.clone(), g));
                        }
                    }
                }
                let Some((s, _)) = best else { return Ok(false) };
                let residual = &gap + &k.scale(&s);
                if cone.interior_contains(&residual)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Certificate::AuscWitness { seq, witness } | Certificate::WuscWitness { seq, witness } => {
            if seq.limit() != x0 || witness.dim() != cone.dim() {
                return Ok(false);
            }
            if !cone.contains(&(&h0 - witness.limit()))? {
                return Ok(false);
            }
            for n in 1..=64u64 {
                let hn = h.eval_unary(&seq.term(n)?)?;
                if !cone.contains(&(&witness.term(n)? - &hn))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Certificate::AuscInfeasible {
            seq,
            system,
            diverging_normal,
        } => {
            if seq.limit() != x0 {
                return Ok(false);
            }
            let v = value_tail(h, seq)?;
            let limits = normal_limits(cone, &v);
            if let Some(j) = diverging_normal {
                return Ok(limits
                    .get(*j)
                    .is_some_and(|(_, l)| *l == TailLimit::PlusInfinity));
            }
            let expected = witness_system(cone, &h0, &limits);
            Ok(expected == *system && fm_feasible(cone.dim(), system).is_none())
        }
        Certificate::QuscCounterexample { k, seq, checked } => {
            if cone.contains(&(k + &h0))? || seq.limit() != x0 || checked.is_empty() {
                return Ok(false);
            }
            for &n in checked {
                let hn = h.eval_unary(&seq.term(n)?)?;
                if !cone.contains(&(k + &hn))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Certificate::UniformBound {
            normal_index,
            threshold,
            base_value,
            points,
        } => {
            let Some(a) = cone.normals().get(*normal_index) else {
                return Ok(false);
            };
            if threshold <= base_value || &a.dot(&h0)? != base_value || points.is_empty() {
                return Ok(false);
            }
            for p in points {
                if p == x0 || &a.dot(&h.eval_unary(p)?)? < threshold {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(KernelError::InvalidSpec(String::from(
            "certificate kind not issued by semicontinuity checkers",
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogId;
    use crate::rational::rat;

    fn budget() -> SamplingBudget {
        SamplingBudget::default()
    }

    fn pt(v: &[(i64, i64)]) -> RationalVec {
        RationalVec::from_i64(v)
    }

    #[test]
    fn cusc_on_split_example() {
        let g = CatalogId::IcecreamG.build();
        let cone = CatalogId::IcecreamG.cone();
        let h = g.fix_second(&pt(&[(1, 4)])).unwrap();
        let v = cusc_check(&h, &pt(&[(1, 2)]), &cone, &budget()).unwrap();
        assert!(v.is_fails());
        assert!(replay(&h, &pt(&[(1, 2)]), &cone, v.certificate.as_ref().unwrap()).unwrap());
        // continuous point: no refutation
        let v = cusc_check(&h, &pt(&[(1, 4)]), &cone, &budget()).unwrap();
        assert!(v.is_consistent());
        // constant map: no refutation exists
        let dom = BoxDomain::interval(rat(0, 1), rat(1, 1), 4).unwrap();
        let c = PiecewiseMap::total(
            MapArity::Unary,
            dom,
            alloc::vec![
                crate::expr::Expr::constant(rat(1, 1)),
                crate::expr::Expr::constant(rat(2, 1))
            ],
        )
        .unwrap();
        let v = cusc_check(&c, &pt(&[(1, 2)]), &cone, &budget()).unwrap();
        assert!(v.is_consistent());
    }

    #[test]
    fn ausc_matches_analysis() {
        // split example at 1/2: every sequence admits a witness, but the
        // map is discontinuous there, so the aggregate stays consistent
        let g = CatalogId::IcecreamG.build();
        let cone = CatalogId::IcecreamG.cone();
        let h = g.fix_second(&pt(&[(1, 4)])).unwrap();
        let x0 = pt(&[(1, 2)]);
        for seq in generate(&x0, h.domain(), &budget()).unwrap() {
            let v = ausc_along(&h, &x0, &seq, &cone, &budget()).unwrap();
            assert!(v.is_holds(), "sequence {seq:?}");
            assert!(replay(&h, &x0, &cone, v.certificate.as_ref().unwrap()).unwrap());
        }
        assert!(ausc_check(&h, &x0, &cone, &budget()).unwrap().is_consistent());
        // reciprocal-divergence example: refuted at 0
        let h = CatalogId::QuscNotAusc.build();
        let cone = CatalogId::QuscNotAusc.cone();
        let v = ausc_check(&h, &pt(&[(0, 1)]), &cone, &budget()).unwrap();
        assert!(v.is_fails());
        assert!(replay(&h, &pt(&[(0, 1)]), &cone, v.certificate.as_ref().unwrap()).unwrap());
        // continuous point of the split example: aggregate Holds
        let g = CatalogId::IcecreamG.build();
        let cone2 = CatalogId::IcecreamG.cone();
        let h2 = g.fix_second(&pt(&[(1, 4)])).unwrap();
        assert!(ausc_check(&h2, &pt(&[(1, 4)]), &cone2, &budget())
            .unwrap()
            .is_holds());
    }

    #[test]
    fn qusc_verdicts() {
        let h = CatalogId::WuscNotQusc.build();
        let cone = CatalogId::WuscNotQusc.cone();
        let v = qusc_check(&h, &pt(&[(1, 2)]), &cone, &budget()).unwrap();
        assert!(v.is_fails());
        match v.certificate.as_ref().unwrap() {
            Certificate::QuscCounterexample { k, .. } => {
                assert_eq!(k, &pt(&[(-1, 1), (-1, 1)]));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
        assert!(replay(&h, &pt(&[(1, 2)]), &cone, v.certificate.as_ref().unwrap()).unwrap());
        // the level-set example stays consistent at 0
        let g = CatalogId::LevelsetQusc.build();
        let cone = CatalogId::LevelsetQusc.cone();
        let h = g.fix_second(&pt(&[(0, 1)])).unwrap();
        assert!(qusc_check(&h, &pt(&[(0, 1)]), &cone, &budget())
            .unwrap()
            .is_consistent());
    }

    #[test]
    fn wusc_verdicts() {
        // one-net witness exists at the split point
        let h = CatalogId::WuscNotQusc.build();
        let cone = CatalogId::WuscNotQusc.cone();
        let v = wusc_check(&h, &pt(&[(1, 2)]), &cone, &budget()).unwrap();
        assert!(v.is_holds());
        assert!(replay(&h, &pt(&[(1, 2)]), &cone, v.certificate.as_ref().unwrap()).unwrap());
        // uniform first-coordinate obstruction at 0
        let h = CatalogId::QuscNotAusc.build();
        let cone = CatalogId::QuscNotAusc.cone();
        let v = wusc_check(&h, &pt(&[(0, 1)]), &cone, &budget()).unwrap();
        assert!(v.is_fails());
        assert!(replay(&h, &pt(&[(0, 1)]), &cone, v.certificate.as_ref().unwrap()).unwrap());
        // real-valued example: witness from the left
        let h = CatalogId::RealWusc.build();
        let cone = CatalogId::RealWusc.cone();
        let v = wusc_check(&h, &pt(&[(0, 1)]), &cone, &budget()).unwrap();
        assert!(v.is_holds());
    }

    #[test]
    fn ousc_certificate_verification() {
        let dom = BoxDomain::interval(rat(-1, 1), rat(1, 1), 4).unwrap();
        let cone = ConeSpec::orthant(1);
        // constant map with zero nets
        let c = PiecewiseMap::total(
            MapArity::Unary,
            dom.clone(),
            alloc::vec![crate::expr::Expr::constant(rat(1, 1))],
        )
        .unwrap();
        let x0 = pt(&[(0, 1)]);
        let x_net = SequenceSpec::toward(&x0, &pt(&[(1, 1)])).unwrap();
        let zero_net = SequenceSpec::constant(RationalVec::zero(1));
        assert!(ousc_verify_certificate(
            &c, &x0, &cone, &x_net, &zero_net, &zero_net, 16
        )
        .unwrap());
        // h(x) = x from the left is nondecreasing toward h(0) = 0
        let idm = PiecewiseMap::total(
            MapArity::Unary,
            dom.clone(),
            alloc::vec![crate::expr::Expr::VarX(0)],
        )
        .unwrap();
        let left = SequenceSpec::toward(&x0, &pt(&[(-1, 1)])).unwrap();
        assert!(ousc_verify_certificate(
            &idm, &x0, &cone, &left, &zero_net, &zero_net, 16
        )
        .unwrap());
        // from the right the net h(x_n) is decreasing: premise violated
        let right = SequenceSpec::toward(&x0, &pt(&[(1, 1)])).unwrap();
        assert!(!ousc_verify_certificate(
            &idm, &x0, &cone, &right, &zero_net, &zero_net, 16
        )
        .unwrap());
    }

    #[test]
    fn oracle_agrees_on_examples() {
        let b = budget();
        let g = CatalogId::IcecreamG.build();
        let cone = CatalogId::IcecreamG.cone();
        let h = g.fix_second(&pt(&[(1, 4)])).unwrap();
        let x0 = pt(&[(1, 2)]);
        for seq in generate(&x0, h.domain(), &b).unwrap() {
            let reduced = ausc_along(&h, &x0, &seq, &cone, &b).unwrap().is_holds();
            let brute = ausc_witness_oracle(&h, &x0, &seq, &cone, &b).unwrap();
            assert_eq!(reduced, brute, "sequence {seq:?}");
        }
        let h = CatalogId::QuscNotAusc.build();
        let cone = CatalogId::QuscNotAusc.cone();
        let x0 = pt(&[(0, 1)]);
        for seq in generate(&x0, h.domain(), &b).unwrap() {
            let reduced = ausc_along(&h, &x0, &seq, &cone, &b).unwrap().is_holds();
            let brute = ausc_witness_oracle(&h, &x0, &seq, &cone, &b).unwrap();
            assert_eq!(reduced, brute, "sequence {seq:?}");
        }
    }
}
