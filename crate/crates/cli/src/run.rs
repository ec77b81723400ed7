//! Task execution: turns a parsed configuration into deterministic report
//! records, and re-verifies existing reports by re-running every task and
//! replaying every certificate through the exact kernel.

use vequil_core::cone::{ConeSpec, ConeValidation};
use vequil_core::equilibrium::{
    self, ConditionId, ConditionWitness, DiagonalMode, ExistenceOutcome,
};
use vequil_core::levelsets;
use vequil_core::maps::PiecewiseMap;
use vequil_core::rational::RationalVec;
use vequil_core::semicontinuity;
use vequil_core::seq::SequenceSpec;
use vequil_core::verdict::{Certificate, SamplingBudget, Verdict, VerdictStatus};

use crate::config::{
    format_vector, parse_box, parse_config, parse_net, parse_vector, serialize_config,
    MapDecl, ProblemConfig, Task,
};
use crate::report::{cert_to_line, parse_replayable_cert, parse_report, Report, TaskRecord};

/// A task outcome is its payload lines plus whether an expectation
/// (an `expect=` parameter, making the task assertion-mode) was missed.
#[derive(Debug, Clone)]
pub struct TaskOutcome {
    #[cfg_attr(not(test), allow(dead_code))]
    pub record: TaskRecord,
    pub expectation_missed: bool,
}

fn status_name(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Holds => "holds",
        VerdictStatus::Fails => "fails",
        VerdictStatus::ConsistentUpToSampling => "consistent",
    }
}

fn verdict_lines(v: &Verdict, lines: &mut Vec<String>) {
    lines.push(format!("verdict {}", status_name(v.status)));
    if let Some(note) = &v.note {
        lines.push(format!("note {note}"));
    }
    if let Some(cert) = &v.certificate {
        lines.push(cert_to_line(cert));
    }
}

struct Ctx {
    cone: ConeSpec,
    maps: Vec<(String, MapDecl, PiecewiseMap)>,
}

impl Ctx {
    fn build(config: &ProblemConfig) -> Result<Ctx, String> {
        let cone = config.cone.build()?;
        let mut maps = Vec::new();
        for (name, decl) in &config.maps {
            let domain = decl.domain(&config.domain);
            let map = decl.build(&domain)?;
            map.validate_partition()
                .map_err(|e| format!("map '{name}': {e}"))?;
            maps.push((name.clone(), decl.clone(), map));
        }
        Ok(Ctx {
            cone,
            maps,
        })
    }

    fn map(&self, name: &str) -> Result<&PiecewiseMap, String> {
        self.maps
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, _, m)| m)
            .ok_or_else(|| format!("unknown map '{name}'"))
    }
}

fn need<'a>(t: &'a Task, key: &str) -> Result<&'a str, String> {
    t.params
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| format!("task '{}' misses '{key}'", t.kind))
}

fn opt<'a>(t: &'a Task, key: &str) -> Option<&'a str> {
    t.params.get(key).map(String::as_str)
}

fn run_task(
    ctx: &Ctx,
    t: &Task,
    budget: &SamplingBudget,
) -> Result<(Vec<String>, Option<VerdictStatus>), String> {
    let mut lines = Vec::new();
    let mut status = None;
    match t.kind.as_str() {
        "validate-cone" => match ctx.cone.validated() {
            ConeValidation::Valid { witness, rank } => {
                lines.push(format!(
                    "cone valid witness={} rank={rank}",
                    format_vector(&witness)
                ));
            }
            ConeValidation::NotPointed { rank } => {
                lines.push(format!("cone not-pointed rank={rank}"));
            }
            ConeValidation::EmptyInterior => lines.push("cone empty-interior".to_string()),
        },
        "eval" => {
            let m = ctx.map(need(t, "map")?)?;
            let x = parse_vector(need(t, "x")?)?;
            let y = opt(t, "y").map(parse_vector).transpose()?;
            let v = m.eval(&x, y.as_ref()).map_err(|e| e.to_string())?;
            lines.push(format!("value {}", format_vector(&v)));
        }
        "semicont" => {
            let m = ctx.map(need(t, "map")?)?;
            let fixed;
            let h = match opt(t, "fix-y") {
                Some(ys) => {
                    fixed = m
                        .fix_second(&parse_vector(ys)?)
                        .map_err(|e| e.to_string())?;
                    &fixed
                }
                None => m,
            };
            let at = parse_vector(need(t, "at")?)?;
            let v = match need(t, "kind")? {
                "cusc" => semicontinuity::cusc_check(h, &at, &ctx.cone, budget),
                "ausc" => semicontinuity::ausc_check(h, &at, &ctx.cone, budget),
                "qusc" => semicontinuity::qusc_check(h, &at, &ctx.cone, budget),
                "wusc" => semicontinuity::wusc_check(h, &at, &ctx.cone, budget),
                other => return Err(format!("unknown semicontinuity kind '{other}'")),
            }
            .map_err(|e| e.to_string())?;
            status = Some(v.status);
            verdict_lines(&v, &mut lines);
        }
        "levelset" => {
            let g = ctx.map(need(t, "map")?)?;
            let y = parse_vector(need(t, "y")?)?;
            let set =
                levelsets::level_set(g, &y, &ctx.cone, g.domain()).map_err(|e| e.to_string())?;
            for p in set.points() {
                lines.push(format!("member {}", format_vector(&p)));
            }
            if opt(t, "probe") == Some("yes") {
                let v = levelsets::closedness_probe(g, &y, &ctx.cone, g.domain(), budget)
                    .map_err(|e| e.to_string())?;
                status = Some(v.status);
                verdict_lines(&v, &mut lines);
            }
        }
        "solve" => {
            let report = match need(t, "problem")? {
                "dual" => {
                    let g = ctx.map(need(t, "map")?)?;
                    equilibrium::solve_dual(g, g.domain(), &ctx.cone)
                }
                "perturbed" => {
                    let f = ctx.map(need(t, "f")?)?;
                    let g = ctx.map(need(t, "g")?)?;
                    equilibrium::solve_perturbed(f, g, g.domain(), &ctx.cone)
                }
                other => return Err(format!("unknown problem '{other}'")),
            }
            .map_err(|e| e.to_string())?;
            for s in &report.solutions {
                lines.push(format!("solution {}", format_vector(s)));
            }
            for (x, y) in &report.violators {
                lines.push(format!(
                    "violator {} -> {}",
                    format_vector(x),
                    format_vector(y)
                ));
            }
        }
        "check-condition" => {
            let id_text = need(t, "id")?;
            let id = ConditionId::parse(id_text)
                .ok_or_else(|| format!("unknown condition id '{id_text}'"))?;
            let f = ctx.map(need(t, "f")?)?;
            let g = ctx.map(need(t, "g")?)?;
            let x0 = parse_vector(need(t, "x0")?)?;
            let y = parse_vector(need(t, "y")?)?;
            let witness = build_witness(t, &x0, &y)?;
            let v = equilibrium::check_condition(
                id,
                f,
                g,
                &x0,
                &y,
                &ctx.cone,
                witness.as_ref(),
                budget,
            )
            .map_err(|e| e.to_string())?;
            status = Some(v.status);
            verdict_lines(&v, &mut lines);
        }
        "coercivity" => {
            let h = ctx.map(need(t, "map")?)?;
            let k0 = parse_box(need(t, "k0")?)?;
            let v = equilibrium::coercivity_check(h, h.domain(), &k0, &ctx.cone)
                .map_err(|e| e.to_string())?;
            status = Some(v.status);
            verdict_lines(&v, &mut lines);
        }
        "diagonal" => {
            let h = ctx.map(need(t, "map")?)?;
            let mode = match need(t, "mode")? {
                "in-cone" => DiagonalMode::InCone,
                "not-neg-int" => DiagonalMode::NotNegInterior,
                other => return Err(format!("unknown diagonal mode '{other}'")),
            };
            let v = equilibrium::diagonal_check(h, h.domain(), &ctx.cone, mode)
                .map_err(|e| e.to_string())?;
            status = Some(v.status);
            verdict_lines(&v, &mut lines);
        }
        "probe" => {
            let g = ctx.map(need(t, "map")?)?;
            let k0 = match opt(t, "k0") {
                Some(b) => parse_box(b)?,
                None => g.domain().clone(),
            };
            let trace =
                equilibrium::existence_probe(g, &k0, &ctx.cone).map_err(|e| e.to_string())?;
            lines.push(format!("iterations {}", trace.iterations));
            for y in &trace.cover {
                lines.push(format!("cover {}", format_vector(y)));
            }
            if let Some(x) = &trace.fixed_point {
                lines.push(format!("fixed {}", format_vector(x)));
            }
            for (y, w) in &trace.weights {
                lines.push(format!(
                    "weight {} {}",
                    format_vector(y),
                    vequil_core::rational::format_rational(w)
                ));
            }
            match &trace.outcome {
                ExistenceOutcome::SolutionExists { solution } => {
                    lines.push(format!(
                        "outcome solution-exists solution={}",
                        format_vector(solution)
                    ));
                }
                ExistenceOutcome::DiagonalViolation { point, value } => {
                    lines.push(format!(
                        "outcome diagonal-violation point={} value={}",
                        format_vector(point),
                        format_vector(value)
                    ));
                }
                ExistenceOutcome::ConvexityViolation {
                    point,
                    combination,
                    combined_value,
                    bound,
                } => {
                    lines.push(format!(
                        "outcome convexity-violation point={} combination={} value={} bound={}",
                        format_vector(point),
                        format_vector(combination),
                        format_vector(combined_value),
                        format_vector(bound)
                    ));
                }
                ExistenceOutcome::CoverViolation {
                    point,
                    cover_point,
                    value,
                } => {
                    lines.push(format!(
                        "outcome cover-violation point={} cover={} value={}",
                        format_vector(point),
                        format_vector(cover_point),
                        format_vector(value)
                    ));
                }
                ExistenceOutcome::Inconclusive { reason } => {
                    lines.push(format!("outcome inconclusive {reason}"));
                }
            }
            let ok = equilibrium::replay_trace(g, &k0, &ctx.cone, &trace)
                .map_err(|e| e.to_string())?;
            lines.push(format!("replay {}", if ok { "ok" } else { "failed" }));
            // map the trace onto the verdict vocabulary for expectations
            status = Some(match &trace.outcome {
                ExistenceOutcome::Inconclusive { .. } => VerdictStatus::ConsistentUpToSampling,
                ExistenceOutcome::SolutionExists { .. } => VerdictStatus::Holds,
                _ => VerdictStatus::Fails,
            });
        }
        other => return Err(format!("unknown task kind '{other}'")),
    }
    Ok((lines, status))
}

fn build_witness(
    t: &Task,
    x0: &RationalVec,
    y: &RationalVec,
) -> Result<Option<ConditionWitness>, String> {
    let nets = ["xnet", "unet", "ynet", "vnet", "znet", "wnet"];
    let has_nets = nets.iter().any(|k| t.params.contains_key(*k));
    match opt(t, "witness") {
        None | Some("search") if !has_nets => Ok(None),
        Some("constant-z") => Ok(Some(ConditionWitness {
            x_net: Some(SequenceSpec::constant(x0.clone())),
            u_net: Some(SequenceSpec::constant(x0.clone())),
            y_net: Some(SequenceSpec::constant(y.clone())),
            v_net: Some(SequenceSpec::constant(y.clone())),
            z_net: Some(SequenceSpec::constant(y.clone())),
            w_net: None,
        })),
        Some("nets") | None | Some("search") => {
            let get = |k: &str| -> Result<Option<SequenceSpec>, String> {
                opt(t, k).map(parse_net).transpose()
            };
            Ok(Some(ConditionWitness {
                x_net: get("xnet")?,
                u_net: get("unet")?,
                y_net: get("ynet")?,
                v_net: get("vnet")?,
                z_net: get("znet")?,
                w_net: get("wnet")?,
            }))
        }
        Some(other) => Err(format!("unknown witness mode '{other}'")),
    }
}

/// Executes every task of a configuration (optionally restricted to one
/// task kind) and returns the deterministic report.
pub fn execute(
    config: &ProblemConfig,
    only_kind: Option<&str>,
    budget: &SamplingBudget,
) -> Result<(Report, Vec<TaskOutcome>), String> {
    let ctx = Ctx::build(config)?;
    let mut outcomes = Vec::new();
    let mut records = Vec::new();
    let mut index = 0;
    for t in &config.tasks {
        if let Some(kind) = only_kind {
            if t.kind != kind {
                continue;
            }
        }
        index += 1;
        let (lines, status) = run_task(&ctx, t, budget)?;
        let expectation_missed = match (opt(t, "expect"), status) {
            (Some(e), Some(s)) => e != status_name(s),
            (Some(_), None) => true,
            (None, _) => false,
        };
        let record = TaskRecord {
            index,
            kind: t.kind.clone(),
            params: t.params.clone(),
            lines,
        };
        records.push(record.clone());
        outcomes.push(TaskOutcome {
            record,
            expectation_missed,
        });
    }
    let report = Report {
        config_text: serialize_config(config),
        tasks: records,
    };
    Ok((report, outcomes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub tasks_checked: usize,
    pub certificates_replayed: usize,
    /// Human-readable description of the first discrepancy, if any.
    pub failure: Option<String>,
}

/// Re-executes every task recorded in a report and replays each
/// certificate with the dedicated kernel replay functions.
pub fn verify_report(text: &str) -> Result<VerifySummary, String> {
    let report = parse_report(text)?;
    let config = parse_config(&report.config_text).map_err(|e| e.to_string())?;
    let ctx = Ctx::build(&config)?;
    let budget = SamplingBudget::default();
    let (rerun, _) = execute(&config, None, &budget)?;
    let mut certificates_replayed = 0;
    let mut failure = None;
    if rerun.tasks.len() != report.tasks.len() {
        failure = Some(format!(
            "task count mismatch: report has {}, re-run produced {}",
            report.tasks.len(),
            rerun.tasks.len()
        ));
    }
    for (recorded, fresh) in report.tasks.iter().zip(&rerun.tasks) {
        if failure.is_some() {
            break;
        }
        if recorded != fresh {
            let detail = recorded
                .lines
                .iter()
                .zip(&fresh.lines)
                .find(|(a, b)| a != b)
                .map(|(a, b)| format!("recorded '{a}' but re-run yields '{b}'"))
                .unwrap_or_else(|| "payload length differs".to_string());
            failure = Some(format!(
                "task {} ({}) does not re-verify: {detail}",
                recorded.index, recorded.kind
            ));
            break;
        }
        // dedicated kernel replay for the certificate kinds that have one
        for line in &recorded.lines {
            let Some(cert) = parse_replayable_cert(line)? else {
                continue;
            };
            let ok = replay_certificate(&ctx, recorded, &cert)?;
            certificates_replayed += 1;
            if !ok {
                failure = Some(format!(
                    "task {} ({}): certificate failed kernel replay",
                    recorded.index, recorded.kind
                ));
                break;
            }
        }
    }
    Ok(VerifySummary {
        tasks_checked: report.tasks.len(),
        certificates_replayed,
        failure,
    })
}

fn replay_certificate(
    ctx: &Ctx,
    record: &TaskRecord,
    cert: &Certificate,
) -> Result<bool, String> {
    let param = |k: &str| -> Result<&str, String> {
        record
            .params
            .get(k)
            .map(String::as_str)
            .ok_or_else(|| format!("task {} misses '{k}'", record.index))
    };
    match cert {
        Certificate::EscapingLimit { .. } => {
            let g = ctx.map(param("map")?)?;
            let y = parse_vector(param("y")?)?;
            levelsets::replay_escaping_limit(g, &y, &ctx.cone, cert).map_err(|e| e.to_string())
        }
        _ => {
            // semicontinuity certificates: reconstruct the unary map
            let m = ctx.map(param("map")?)?;
            let fixed;
            let h = match record.params.get("fix-y") {
                Some(ys) => {
                    fixed = m
                        .fix_second(&parse_vector(ys)?)
                        .map_err(|e| e.to_string())?;
                    &fixed
                }
                None => m,
            };
            let at = parse_vector(param("at")?)?;
            semicontinuity::replay(h, &at, &ctx.cone, cert).map_err(|e| e.to_string())
        }
    }
}

/// Convenience for tests and the regression suite: run a config text and
/// return the serialized text report.
#[cfg_attr(not(test), allow(dead_code))]
pub fn run_to_text(
    config_text: &str,
    only_kind: Option<&str>,
    budget: &SamplingBudget,
) -> Result<(String, bool), String> {
    let config = parse_config(config_text).map_err(|e| e.to_string())?;
    let (report, outcomes) = execute(&config, only_kind, budget)?;
    let missed = outcomes.iter().any(|o| o.expectation_missed);
    Ok((crate::report::write_report(&report), missed))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: &str = "\
space 1
cone orthant 2
domain -1 1 8
map f catalog EX_PHI_PSI_F
map g catalog EX_PHI_PSI_G
task solve problem=dual map=g
task solve problem=perturbed f=f g=g
task semicont kind=ausc map=g fix-y=0 at=0
";

    #[test]
    fn execute_and_verify_round_trip() {
        let budget = SamplingBudget::default();
        let config = parse_config(CFG).unwrap();
        let (_, outcomes) = execute(&config, None, &budget).unwrap();
        assert_eq!(outcomes.len(), 3);
        assert_eq!(outcomes[0].record.kind, "solve");
        assert!(outcomes[2]
            .record
            .lines
            .iter()
            .any(|l| l.starts_with("verdict ")));
        let (text, missed) = run_to_text(CFG, None, &budget).unwrap();
        assert!(!missed);
        assert!(text.contains("solution -1/2"));
        let summary = verify_report(&text).unwrap();
        assert_eq!(summary.failure, None);
        assert_eq!(summary.tasks_checked, 3);
    }

    #[test]
    fn verify_detects_tampering() {
        let budget = SamplingBudget::default();
        let (text, _) = run_to_text(CFG, None, &budget).unwrap();
        let tampered = text.replace("solution -1/2", "solution -3/8");
        assert_ne!(tampered, text);
        let summary = verify_report(&tampered).unwrap();
        assert!(summary.failure.is_some());
    }

    #[test]
    fn determinism_byte_identical() {
        let budget = SamplingBudget::default();
        let (a, _) = run_to_text(CFG, None, &budget).unwrap();
        let (b, _) = run_to_text(CFG, None, &budget).unwrap();
        assert_eq!(a, b);
    }
}
