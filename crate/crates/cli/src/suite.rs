//! Built-in regression suite: a fixed list of exact expectations over the
//! bundled example catalog. Every check pins concrete rational values, so
//! the suite doubles as an end-to-end smoke test of the kernel. Exit code
//! 0 means every expectation matched.

use vequil_core::catalog::CatalogId;
use vequil_core::cone::ConeSpec;
use vequil_core::domain::BoxDomain;
use vequil_core::equilibrium::{
    self, ConditionId, ConditionWitness, DiagonalMode, ExistenceOutcome, WitnessRule,
};
use vequil_core::expr::Expr;
use vequil_core::levelsets;
use vequil_core::maps::{MapArity, PiecewiseMap};
use vequil_core::rational::{rat, RationalVec};
use vequil_core::semicontinuity::{
    ausc_along, ausc_check, cusc_check, generate, qusc_check, replay, wusc_check,
};
use vequil_core::seq::{Mobius, SequenceSpec};
use vequil_core::verdict::{Certificate, SamplingBudget};

fn pt(v: &[(i64, i64)]) -> RationalVec {
    RationalVec::from_i64(v)
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn quadratic_map() -> PiecewiseMap {
    let y2_x2 = Expr::sub(
        Expr::mul(Expr::VarY(0), Expr::VarY(0)),
        Expr::mul(Expr::VarX(0), Expr::VarX(0)),
    );
    PiecewiseMap::total(
        MapArity::Bifunction,
        BoxDomain::interval(rat(-1, 1), rat(1, 1), 8).expect("static domain"),
        vec![y2_x2.clone(), y2_x2],
    )
    .expect("static map")
}

fn check_cone_boundary() -> Result<(), String> {
    let c = ConeSpec::ice_cream2();
    let v = pt(&[(-3, 2), (3, 2)]);
    ensure(
        c.contains(&v).map_err(|e| e.to_string())?,
        "(-3/2,3/2) should lie in the planar second-order cone",
    )?;
    ensure(
        !c.interior_contains(&v).map_err(|e| e.to_string())?,
        "(-3/2,3/2) should lie on the cone boundary, not in the interior",
    )
}

fn check_orthant_negative_interior() -> Result<(), String> {
    let c = ConeSpec::orthant(2);
    for v in [pt(&[(-1, 3), (-1, 3)]), pt(&[(-1, 1), (-1, 2)])] {
        let neg = -&v;
        ensure(
            c.interior_contains(&neg).map_err(|e| e.to_string())?,
            "value should lie in the negative interior of the orthant",
        )?;
    }
    Ok(())
}

fn check_split_map_values() -> Result<(), String> {
    let g = CatalogId::IcecreamG.build();
    let got = g
        .eval_bi(&pt(&[(1, 2)]), &pt(&[(1, 4)]))
        .map_err(|e| e.to_string())?;
    ensure(got == pt(&[(3, 4), (1, 2)]), "g(1/2,1/4) should be (3/4,1/2)")?;
    let got = g
        .eval_bi(&pt(&[(3, 4)]), &pt(&[(1, 4)]))
        .map_err(|e| e.to_string())?;
    ensure(got == pt(&[(7, 4), (0, 1)]), "g(3/4,1/4) should be (7/4,0)")
}

fn check_split_map_closed_refutation(budget: &SamplingBudget) -> Result<(), String> {
    let g = CatalogId::IcecreamG.build();
    let cone = CatalogId::IcecreamG.cone();
    let h = g.fix_second(&pt(&[(1, 4)])).map_err(|e| e.to_string())?;
    let x0 = pt(&[(1, 2)]);
    let v = cusc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_fails(), "closed-style check should be refuted at 1/2")?;
    let cert = v.certificate.as_ref().ok_or("missing certificate")?;
    ensure(
        replay(&h, &x0, &cone, cert).map_err(|e| e.to_string())?,
        "refutation certificate should replay",
    )
}

fn check_split_map_approach_triple() -> Result<(), String> {
    // with k = (-1/2, 1) and u = 3/4 the residual g(x0) + k - g(u) lands
    // exactly on the cone boundary, away from the interior
    let g = CatalogId::IcecreamG.build();
    let cone = CatalogId::IcecreamG.cone();
    let y = pt(&[(1, 4)]);
    let hx0 = g.eval_bi(&pt(&[(1, 2)]), &y).map_err(|e| e.to_string())?;
    let hu = g.eval_bi(&pt(&[(3, 4)]), &y).map_err(|e| e.to_string())?;
    let k = pt(&[(-1, 2), (1, 1)]);
    let residual = &(&hx0 + &k) - &hu;
    ensure(
        residual == pt(&[(-3, 2), (3, 2)]),
        "residual should be exactly (-3/2,3/2)",
    )?;
    ensure(
        cone.contains(&residual).map_err(|e| e.to_string())?
            && !cone.interior_contains(&residual).map_err(|e| e.to_string())?,
        "residual should sit on the cone boundary",
    )
}

fn check_split_map_sequencewise(budget: &SamplingBudget) -> Result<(), String> {
    let g = CatalogId::IcecreamG.build();
    let cone = CatalogId::IcecreamG.cone();
    let h = g.fix_second(&pt(&[(1, 4)])).map_err(|e| e.to_string())?;
    let x0 = pt(&[(1, 2)]);
    for seq in generate(&x0, h.domain(), budget).map_err(|e| e.to_string())? {
        let v = ausc_along(&h, &x0, &seq, &cone, budget).map_err(|e| e.to_string())?;
        ensure(v.is_holds(), "every approach sequence should admit a witness")?;
        let cert = v.certificate.as_ref().ok_or("missing witness certificate")?;
        ensure(
            replay(&h, &x0, &cone, cert).map_err(|e| e.to_string())?,
            "witness certificate should replay",
        )?;
    }
    let v = ausc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(
        v.is_consistent(),
        "aggregate sequence check stays consistent at the split point",
    )?;
    let v = ausc_check(&h, &pt(&[(1, 4)]), &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "aggregate check holds at a continuity point")
}

fn check_reciprocal_divergence(budget: &SamplingBudget) -> Result<(), String> {
    let h = CatalogId::QuscNotAusc.build();
    let cone = CatalogId::QuscNotAusc.cone();
    let x0 = pt(&[(0, 1)]);
    let v = ausc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_fails(), "sequence-witness check should be refuted at 0")?;
    ensure(
        replay(&h, &x0, &cone, v.certificate.as_ref().ok_or("missing certificate")?)
            .map_err(|e| e.to_string())?,
        "infeasibility certificate should replay",
    )?;
    let v = wusc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_fails(), "one-net check should be refuted at 0")?;
    ensure(
        replay(&h, &x0, &cone, v.certificate.as_ref().ok_or("missing certificate")?)
            .map_err(|e| e.to_string())?,
        "uniform-bound certificate should replay",
    )?;
    let v = qusc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(!v.is_fails(), "level-set style check should not be refuted at 0")
}

fn check_split_growth(budget: &SamplingBudget) -> Result<(), String> {
    let h = CatalogId::WuscNotQusc.build();
    let cone = CatalogId::WuscNotQusc.cone();
    let x0 = pt(&[(1, 2)]);
    let v = qusc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_fails(), "level-set style check should be refuted at 1/2")?;
    match v.certificate.as_ref() {
        Some(Certificate::QuscCounterexample { k, .. }) => {
            ensure(k == &pt(&[(-1, 1), (-1, 1)]), "refuting level should be (-1,-1)")?;
        }
        _ => return Err("expected a level counterexample certificate".to_string()),
    }
    ensure(
        replay(&h, &x0, &cone, v.certificate.as_ref().unwrap()).map_err(|e| e.to_string())?,
        "level counterexample should replay",
    )?;
    let v = wusc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "one-net check should hold at 1/2")?;
    ensure(
        replay(&h, &x0, &cone, v.certificate.as_ref().ok_or("missing certificate")?)
            .map_err(|e| e.to_string())?,
        "one-net witness should replay",
    )
}

fn check_real_line_witness(budget: &SamplingBudget) -> Result<(), String> {
    let h = CatalogId::RealWusc.build();
    let cone = CatalogId::RealWusc.cone();
    let x0 = pt(&[(0, 1)]);
    let v = wusc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "one-net check should hold at 0")?;
    // the hand-written witness x_n = -1/n with values bounded by z_n = 1/n
    let seq = SequenceSpec::new(
        vec![Mobius::new(rat(0, 1), rat(-1, 1), rat(1, 1), rat(0, 1)).map_err(|e| e.to_string())?],
        x0.clone(),
        false,
    )
    .map_err(|e| e.to_string())?;
    let witness = SequenceSpec::new(
        vec![Mobius::new(rat(0, 1), rat(1, 1), rat(1, 1), rat(0, 1)).map_err(|e| e.to_string())?],
        pt(&[(0, 1)]),
        true,
    )
    .map_err(|e| e.to_string())?;
    let cert = Certificate::WuscWitness { seq, witness };
    ensure(
        replay(&h, &x0, &cone, &cert).map_err(|e| e.to_string())?,
        "hand-written witness should replay",
    )
}

fn check_level_set_grids() -> Result<(), String> {
    let g = CatalogId::LevelsetQusc.build();
    let cone = CatalogId::LevelsetQusc.cone();
    let domain = CatalogId::LevelsetQusc.domain();
    let y0 = pt(&[(0, 1)]);
    let set = levelsets::level_set(&g, &y0, &cone, &domain).map_err(|e| e.to_string())?;
    ensure(set.count() == 4, "reciprocal example: level set of 0 has 4 grid points")?;
    ensure(
        set.contains_point(&pt(&[(1, 4)])) == Some(true)
            && set.contains_point(&y0) == Some(false),
        "reciprocal example: level set of 0 is exactly the positive grid points",
    )?;
    let g = CatalogId::LevelsetWusc.build();
    let cone = CatalogId::LevelsetWusc.cone();
    let domain = CatalogId::LevelsetWusc.domain();
    let set = levelsets::level_set(&g, &y0, &cone, &domain).map_err(|e| e.to_string())?;
    for (i, p) in domain.grid_points().iter().enumerate() {
        ensure(
            set.mask()[i] == (p.coord(0) > &rat(-1, 1)),
            "step example: level set of 0 should be the points right of -1",
        )?;
    }
    Ok(())
}

fn check_level_set_escapes(budget: &SamplingBudget) -> Result<(), String> {
    let y0 = pt(&[(0, 1)]);
    for (id, limit) in [
        (CatalogId::LevelsetQusc, pt(&[(0, 1)])),
        (CatalogId::LevelsetWusc, pt(&[(-1, 1)])),
    ] {
        let g = id.build();
        let cone = id.cone();
        let domain = id.domain();
        let v = levelsets::closedness_probe(&g, &y0, &cone, &domain, budget)
            .map_err(|e| e.to_string())?;
        ensure(v.is_fails(), "closedness probe should find an escaping limit")?;
        let cert = v.certificate.as_ref().ok_or("missing certificate")?;
        match cert {
            Certificate::EscapingLimit { seq, .. } => {
                ensure(seq.limit() == &limit, "escaping limit should match the pinned point")?;
            }
            _ => return Err("expected an escaping-limit certificate".to_string()),
        }
        ensure(
            levelsets::replay_escaping_limit(&g, &y0, &cone, cert).map_err(|e| e.to_string())?,
            "escaping-limit certificate should replay",
        )?;
    }
    Ok(())
}

fn check_dual_solutions() -> Result<(), String> {
    let f = CatalogId::PhiPsiF.build();
    let g = CatalogId::PhiPsiG.build();
    let domain = CatalogId::PhiPsiG.domain();
    let cone = CatalogId::PhiPsiG.cone();
    let dual = equilibrium::solve_dual(&g, &domain, &cone).map_err(|e| e.to_string())?;
    ensure(
        dual.solutions.contains(&pt(&[(-1, 2)])),
        "-1/2 should solve the unperturbed problem",
    )?;
    let pert = equilibrium::solve_perturbed(&f, &g, &domain, &cone).map_err(|e| e.to_string())?;
    ensure(
        !pert.solutions.contains(&pt(&[(-1, 2)])),
        "-1/2 should not survive the perturbation",
    )?;
    let violator = pert
        .violators
        .iter()
        .find(|(x, _)| x == &pt(&[(-1, 2)]))
        .map(|(_, y)| y.clone())
        .ok_or("missing violator entry for -1/2")?;
    ensure(violator == pt(&[(3, 4)]), "first violating point should be 3/4")?;
    let sum = f.sum(&g).map_err(|e| e.to_string())?;
    let v = sum
        .eval_bi(&pt(&[(-1, 2)]), &pt(&[(3, 4)]))
        .map_err(|e| e.to_string())?;
    ensure(v == pt(&[(-1, 3), (-1, 3)]), "perturbed value should be (-1/3,-1/3)")
}

fn check_transfer_obstruction(budget: &SamplingBudget) -> Result<(), String> {
    let f = CatalogId::PhiPsiF.build();
    let g = CatalogId::PhiPsiG.build();
    let cone = CatalogId::PhiPsiG.cone();
    let v = equilibrium::check_condition(
        ConditionId::B1,
        &f,
        &g,
        &pt(&[(-1, 2)]),
        &pt(&[(3, 4)]),
        &cone,
        None,
        budget,
    )
    .map_err(|e| e.to_string())?;
    ensure(v.is_fails(), "first transfer condition should be refuted")?;
    match v.certificate.as_ref() {
        Some(Certificate::Obstruction { normal_index, margin }) => {
            ensure(*normal_index == 0, "obstruction should be on the first normal")?;
            ensure(margin == &rat(1, 4), "obstruction margin should be exactly 1/4")
        }
        _ => Err("expected an obstruction certificate".to_string()),
    }
}

fn check_second_pair(budget: &SamplingBudget) -> Result<(), String> {
    let f = CatalogId::B1SemicontF.build();
    let g = CatalogId::B1SemicontG.build();
    let cone = CatalogId::B1SemicontF.cone();
    let domain = CatalogId::B1SemicontG.domain();
    let x0 = pt(&[(-1, 2)]);
    let dual = equilibrium::solve_dual(&g, &domain, &cone).map_err(|e| e.to_string())?;
    ensure(dual.solutions.contains(&x0), "-1/2 should solve the unperturbed problem")?;
    let fxx = f.eval_bi(&x0, &x0).map_err(|e| e.to_string())?;
    ensure(fxx == pt(&[(0, 1), (0, 1)]), "f(-1/2,-1/2) should vanish")?;
    // the hand-written approach pair x_n = -n/(2n+1), z_n = n/(2n+1)
    let x_net = SequenceSpec::new(
        vec![Mobius::new(rat(-1, 2), rat(0, 1), rat(1, 1), rat(1, 2)).map_err(|e| e.to_string())?],
        x0.clone(),
        false,
    )
    .map_err(|e| e.to_string())?;
    let z_net = SequenceSpec::new(
        vec![Mobius::new(rat(1, 2), rat(0, 1), rat(1, 1), rat(1, 2)).map_err(|e| e.to_string())?],
        pt(&[(1, 2)]),
        false,
    )
    .map_err(|e| e.to_string())?;
    let witness = ConditionWitness {
        x_net: Some(x_net),
        z_net: Some(z_net),
        ..ConditionWitness::default()
    };
    let y = pt(&[(0, 1)]);
    let v = equilibrium::condition_membership(
        ConditionId::B1,
        &f,
        &g,
        &x0,
        &y,
        &cone,
        &witness,
        budget,
    )
    .map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "membership schedule should hold with the pinned nets")?;
    // yet f(., 0) is not sequence-witness usc at -1/2
    let h = f.fix_second(&y).map_err(|e| e.to_string())?;
    let v = ausc_check(&h, &x0, &cone, budget).map_err(|e| e.to_string())?;
    ensure(v.is_fails(), "sequence-witness check of f(.,0) should be refuted")?;
    let sum = f.sum(&g).map_err(|e| e.to_string())?;
    let s = sum.eval_bi(&x0, &y).map_err(|e| e.to_string())?;
    ensure(s == pt(&[(-1, 1), (-1, 2)]), "perturbed value should be (-1,-1/2)")?;
    let neg = -&s;
    ensure(
        cone.interior_contains(&neg).map_err(|e| e.to_string())?,
        "perturbed value should violate the problem at y = 0",
    )
}

fn check_quadratic_end_to_end(budget: &SamplingBudget) -> Result<(), String> {
    let q = quadratic_map();
    let dom = BoxDomain::interval(rat(-1, 1), rat(1, 1), 8).map_err(|e| e.to_string())?;
    let k0 = BoxDomain::interval(rat(-1, 2), rat(1, 2), 4).map_err(|e| e.to_string())?;
    let cone = ConeSpec::orthant(2);
    let v = equilibrium::diagonal_check(&q, &dom, &cone, DiagonalMode::InCone)
        .map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "diagonal values should lie in the cone")?;
    let v = equilibrium::coercivity_check(&q, &dom, &k0, &cone).map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "coercivity should hold on the nested boxes")?;
    let dual = equilibrium::solve_dual(&q, &dom, &cone).map_err(|e| e.to_string())?;
    ensure(dual.solutions.contains(&pt(&[(0, 1)])), "0 should solve the problem")?;
    let report = equilibrium::transfer_check(
        &q,
        &q,
        &pt(&[(0, 1)]),
        &cone,
        &dom,
        ConditionId::B1,
        &WitnessRule::ConstantZ,
        budget,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        report.asserted && report.directly_confirmed == Some(true),
        "transfer should assert the perturbed solution and confirm it directly",
    )?;
    let v = equilibrium::segment_corollary_check(&q, &q, &pt(&[(0, 1)]), &cone, &dom, 8)
        .map_err(|e| e.to_string())?;
    ensure(v.is_holds(), "segment-based argument should hold")
}

fn check_existence_probe() -> Result<(), String> {
    let dom = BoxDomain::interval(rat(0, 1), rat(1, 1), 4).map_err(|e| e.to_string())?;
    let cone = ConeSpec::orthant(2);
    let c = PiecewiseMap::total(
        MapArity::Bifunction,
        dom.clone(),
        vec![Expr::constant(rat(-1, 1)), Expr::constant(rat(-1, 1))],
    )
    .map_err(|e| e.to_string())?;
    let trace = equilibrium::existence_probe(&c, &dom, &cone).map_err(|e| e.to_string())?;
    match &trace.outcome {
        ExistenceOutcome::DiagonalViolation { value, .. } => {
            ensure(value == &pt(&[(-1, 1), (-1, 1)]), "violating value should be (-1,-1)")?;
        }
        _ => return Err("expected a diagonal violation".to_string()),
    }
    ensure(
        equilibrium::replay_trace(&c, &dom, &cone, &trace).map_err(|e| e.to_string())?,
        "trace should replay",
    )?;
    let q = quadratic_map();
    let dom_q = BoxDomain::interval(rat(-1, 1), rat(1, 1), 8).map_err(|e| e.to_string())?;
    let trace = equilibrium::existence_probe(&q, &dom_q, &cone).map_err(|e| e.to_string())?;
    ensure(
        matches!(trace.outcome, ExistenceOutcome::SolutionExists { .. }),
        "probe should certify a solution for the quadratic instance",
    )?;
    ensure(
        equilibrium::replay_trace(&q, &dom_q, &cone, &trace).map_err(|e| e.to_string())?,
        "trace should replay",
    )
}

/// Runs every pinned expectation; returns the printable lines and whether
/// all of them passed.
pub fn run_paper_suite() -> Result<(Vec<String>, bool), String> {
    let checks: Vec<(&str, Box<dyn Fn() -> Result<(), String>>)> = vec![
        ("cone-boundary-membership", Box::new(check_cone_boundary)),
        (
            "orthant-negative-interior",
            Box::new(check_orthant_negative_interior),
        ),
        ("split-map-branch-values", Box::new(check_split_map_values)),
        (
            "split-map-closed-refutation",
            Box::new(move || check_split_map_closed_refutation(&SamplingBudget::default())),
        ),
        (
            "split-map-approach-triple",
            Box::new(check_split_map_approach_triple),
        ),
        (
            "split-map-sequencewise-witnesses",
            Box::new(move || check_split_map_sequencewise(&SamplingBudget::default())),
        ),
        (
            "reciprocal-divergence-refutations",
            Box::new(move || check_reciprocal_divergence(&SamplingBudget::default())),
        ),
        (
            "split-growth-level-refutation",
            Box::new(move || check_split_growth(&SamplingBudget::default())),
        ),
        (
            "real-line-one-net-witness",
            Box::new(move || check_real_line_witness(&SamplingBudget::default())),
        ),
        ("level-set-grids", Box::new(check_level_set_grids)),
        (
            "level-set-escaping-limits",
            Box::new(move || check_level_set_escapes(&SamplingBudget::default())),
        ),
        ("perturbation-destroys-solution", Box::new(check_dual_solutions)),
        (
            "transfer-condition-obstruction",
            Box::new(move || check_transfer_obstruction(&SamplingBudget::default())),
        ),
        (
            "second-pair-membership-vs-failure",
            Box::new(move || check_second_pair(&SamplingBudget::default())),
        ),
        (
            "quadratic-end-to-end",
            Box::new(move || check_quadratic_end_to_end(&SamplingBudget::default())),
        ),
        ("existence-probe-trichotomy", Box::new(check_existence_probe)),
    ];
    let mut lines = Vec::new();
    let mut all_ok = true;
    for (name, run) in checks {
        match run() {
            Ok(()) => lines.push(format!("PASS {name}")),
            Err(msg) => {
                all_ok = false;
                lines.push(format!("FAIL {name}: {msg}"));
            }
        }
    }
    lines.push(format!(
        "suite {}: {} check(s)",
        if all_ok { "passed" } else { "FAILED" },
        lines.len()
    ));
    Ok((lines, all_ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_green() {
        let (lines, ok) = run_paper_suite().unwrap();
        assert!(ok, "{lines:?}");
    }
}
