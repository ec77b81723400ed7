//! Report format: a self-contained, line-oriented record of a run. The
//! canonical configuration is embedded so `verify` can re-execute every
//! task and replay every certificate without the original input files.
//!
//! ```text
//! vequil-report 1
//! begin-config
//! <canonical config text>
//! end-config
//! begin-task 1 solve
//! param map g
//! param problem dual
//! solution -1/2
//! end-task
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use vequil_core::linalg::LinIneq;
use vequil_core::rational::{format_rational, parse_rational, RationalVec};
use vequil_core::verdict::Certificate;

use crate::config::{format_net, format_vector, parse_net, parse_vector};

pub const HEADER: &str = "vequil-report 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskRecord {
    pub index: usize,
    pub kind: String,
    pub params: BTreeMap<String, String>,
    /// Result payload lines, exactly as emitted.
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub config_text: String,
    pub tasks: Vec<TaskRecord>,
}

pub fn write_report(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "begin-config");
    for line in report.config_text.lines() {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "end-config");
    for t in &report.tasks {
        let _ = writeln!(out, "begin-task {} {}", t.index, t.kind);
        for (k, v) in &t.params {
            let _ = writeln!(out, "param {k} {v}");
        }
        for line in &t.lines {
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "end-task");
    }
    out
}

pub fn write_report_json(report: &Report) -> String {
    let tasks: Vec<serde_json::Value> = report
        .tasks
        .iter()
        .map(|t| {
            serde_json::json!({
                "index": t.index,
                "kind": t.kind,
                "params": t.params,
                "lines": t.lines,
            })
        })
        .collect();
    let v = serde_json::json!({
        "format": HEADER,
        "config": report.config_text,
        "tasks": tasks,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("static structure");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<Report, String> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(format!("missing '{HEADER}' header"));
    }
    if lines.next() != Some("begin-config") {
        return Err("missing begin-config".to_string());
    }
    let mut config_text = String::new();
    loop {
        match lines.next() {
            None => return Err("unterminated config block".to_string()),
            Some("end-config") => break,
            Some(l) => {
                config_text.push_str(l);
                config_text.push('\n');
            }
        }
    }
    let mut tasks = Vec::new();
    loop {
        let Some(head) = lines.next() else { break };
        if head.trim().is_empty() {
            continue;
        }
        let Some(rest) = head.strip_prefix("begin-task ") else {
            return Err(format!("expected begin-task, got '{head}'"));
        };
        let (index_text, kind) = rest
            .split_once(' ')
            .ok_or_else(|| "begin-task expects '<index> <kind>'".to_string())?;
        let index: usize = index_text
            .parse()
            .map_err(|_| "task index must be an integer".to_string())?;
        let mut params = BTreeMap::new();
        let mut payload = Vec::new();
        loop {
            match lines.next() {
                None => return Err("unterminated task block".to_string()),
                Some("end-task") => break,
                Some(l) => {
                    if let Some(kv) = l.strip_prefix("param ") {
                        let (k, v) = kv
                            .split_once(' ')
                            .ok_or_else(|| "param expects '<key> <value>'".to_string())?;
                        params.insert(k.to_string(), v.to_string());
                    } else {
                        payload.push(l.to_string());
                    }
                }
            }
        }
        tasks.push(TaskRecord {
            index,
            kind: kind.to_string(),
            params,
            lines: payload,
        });
    }
    Ok(Report { config_text, tasks })
}

// ---------------------------------------------------------------------------
// certificate lines
// ---------------------------------------------------------------------------

fn fmt_indices(ns: &[u64]) -> String {
    ns.iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_indices(s: &str) -> Result<Vec<u64>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.parse::<u64>().map_err(|e| e.to_string()))
        .collect()
}

fn fmt_points(ps: &[RationalVec]) -> String {
    ps.iter().map(format_vector).collect::<Vec<_>>().join(";")
}

fn parse_points(s: &str) -> Result<Vec<RationalVec>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_vector).collect()
}

fn fmt_ineq(i: &LinIneq) -> String {
    let coeffs = i
        .coeffs
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",");
    let op = if i.strict { ">" } else { ">=" };
    format!("{coeffs}{op}{}", format_rational(&i.rhs))
}

fn parse_ineq(s: &str) -> Result<LinIneq, String> {
    let (lhs, rhs, strict) = if let Some((l, r)) = s.split_once(">=") {
        (l, r, false)
    } else if let Some((l, r)) = s.split_once('>') {
        (l, r, true)
    } else {
        return Err("inequality needs > or >=".to_string());
    };
    let coeffs = lhs
        .split(',')
        .map(|p| parse_rational(p).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs = parse_rational(rhs).map_err(|e| e.to_string())?;
    Ok(if strict {
        LinIneq::gt(coeffs, rhs)
    } else {
        LinIneq::ge(coeffs, rhs)
    })
}

/// One-line serialization of a certificate payload.
pub fn cert_to_line(c: &Certificate) -> String {
    match c {
        Certificate::CuscCounterexample { k, seq, checked } => format!(
            "cert cusc k={} seq={} checked={}",
            format_vector(k),
            format_net(seq),
            fmt_indices(checked)
        ),
        Certificate::AuscWitness { seq, witness } => format!(
            "cert ausc-witness seq={} witness={}",
            format_net(seq),
            format_net(witness)
        ),
        Certificate::AuscInfeasible {
            seq,
            system,
            diverging_normal,
        } => {
            let diverging = match diverging_normal {
                Some(i) => i.to_string(),
                None => "none".to_string(),
            };
            let system_text = system.iter().map(fmt_ineq).collect::<Vec<_>>().join(";");
            format!(
                "cert ausc-infeasible seq={} diverging={} system={}",
                format_net(seq),
                diverging,
                system_text
            )
        }
        Certificate::QuscCounterexample { k, seq, checked } => format!(
            "cert qusc k={} seq={} checked={}",
            format_vector(k),
            format_net(seq),
            fmt_indices(checked)
        ),
        Certificate::WuscWitness { seq, witness } => format!(
            "cert wusc-witness seq={} witness={}",
            format_net(seq),
            format_net(witness)
        ),
        Certificate::UniformBound {
            normal_index,
            threshold,
            base_value,
            points,
        } => format!(
            "cert uniform-bound normal={} threshold={} base={} points={}",
            normal_index,
            format_rational(threshold),
            format_rational(base_value),
            fmt_points(points)
        ),
        Certificate::EscapingLimit { seq, checked } => format!(
            "cert escaping seq={} checked={}",
            format_net(seq),
            fmt_indices(checked)
        ),
        Certificate::MembershipSchedule { checked, values } => format!(
            "cert membership checked={} values={}",
            fmt_indices(checked),
            fmt_points(values)
        ),
        Certificate::Obstruction {
            normal_index,
            margin,
        } => format!(
            "cert obstruction normal={} margin={}",
            normal_index,
            format_rational(margin)
        ),
        Certificate::CoverAssignment { pairs } => {
            let body = pairs
                .iter()
                .map(|(a, b)| format!("{}->{}", format_vector(a), format_vector(b)))
                .collect::<Vec<_>>()
                .join(";");
            format!("cert cover pairs={body}")
        }
        Certificate::Points { label, points } => format!(
            "cert points label={} points={}",
            label,
            fmt_points(points)
        ),
        Certificate::ConvexityCounterexample { y1, y2, t, value } => format!(
            "cert convexity y1={} y2={} t={} value={}",
            format_vector(y1),
            format_vector(y2),
            format_rational(t),
            format_vector(value)
        ),
    }
}

/// Parses the certificate kinds that have dedicated kernel replay
/// functions; other kinds are re-verified by re-running the task.
pub fn parse_replayable_cert(line: &str) -> Result<Option<Certificate>, String> {
    let Some(rest) = line.strip_prefix("cert ") else {
        return Ok(None);
    };
    let (kind, args_text) = rest.split_once(' ').unwrap_or((rest, ""));
    let mut args: BTreeMap<&str, &str> = BTreeMap::new();
    for kv in args_text.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("bad certificate argument '{kv}'"))?;
        args.insert(k, v);
    }
    let need = |k: &str| -> Result<&str, String> {
        args.get(k)
            .copied()
            .ok_or_else(|| format!("certificate misses '{k}'"))
    };
    let cert = match kind {
        "cusc" => Certificate::CuscCounterexample {
            k: parse_vector(need("k")?)?,
            seq: parse_net(need("seq")?)?,
            checked: parse_indices(need("checked")?)?,
        },
        "ausc-witness" => Certificate::AuscWitness {
            seq: parse_net(need("seq")?)?,
            witness: parse_net(need("witness")?)?,
        },
        "ausc-infeasible" => {
            let diverging = match need("diverging")? {
                "none" => None,
                s => Some(s.parse::<usize>().map_err(|e| e.to_string())?),
            };
            let system_text = need("system")?;
            let system = if system_text.is_empty() {
                Vec::new()
            } else {
                system_text
                    .split(';')
                    .map(parse_ineq)
                    .collect::<Result<Vec<_>, _>>()?
            };
            Certificate::AuscInfeasible {
                seq: parse_net(need("seq")?)?,
                system,
                diverging_normal: diverging,
            }
        }
        "qusc" => Certificate::QuscCounterexample {
            k: parse_vector(need("k")?)?,
            seq: parse_net(need("seq")?)?,
            checked: parse_indices(need("checked")?)?,
        },
        "wusc-witness" => Certificate::WuscWitness {
            seq: parse_net(need("seq")?)?,
            witness: parse_net(need("witness")?)?,
        },
        "uniform-bound" => Certificate::UniformBound {
            normal_index: need("normal")?.parse().map_err(|e: std::num::ParseIntError| e.to_string())?,
            threshold: parse_rational(need("threshold")?).map_err(|e| e.to_string())?,
            base_value: parse_rational(need("base")?).map_err(|e| e.to_string())?,
            points: parse_points(need("points")?)?,
        },
        "escaping" => Certificate::EscapingLimit {
            seq: parse_net(need("seq")?)?,
            checked: parse_indices(need("checked")?)?,
        },
        // the remaining kinds replay by re-running the producing task
        _ => return Ok(None),
    };
    Ok(Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use vequil_core::rational::rat;
    use vequil_core::seq::SequenceSpec;

    #[test]
    fn report_round_trip() {
        let report = Report {
            config_text: "cone orthant 2\ndomain 0 1 4\n".to_string(),
            tasks: vec![TaskRecord {
                index: 1,
                kind: "solve".to_string(),
                params: BTreeMap::from([
                    ("map".to_string(), "g".to_string()),
                    ("problem".to_string(), "dual".to_string()),
                ]),
                lines: vec!["solution -1/2".to_string()],
            }],
        };
        let text = write_report(&report);
        assert_eq!(parse_report(&text).unwrap(), report);
    }

    #[test]
    fn certificate_lines_round_trip() {
        let seq = SequenceSpec::toward(
            &RationalVec::from_i64(&[(0, 1)]),
            &RationalVec::from_i64(&[(1, 2)]),
        )
        .unwrap();
        let cert = Certificate::QuscCounterexample {
            k: RationalVec::from_i64(&[(-1, 1), (-1, 1)]),
            seq,
            checked: vec![1, 2, 4],
        };
        let line = cert_to_line(&cert);
        let parsed = parse_replayable_cert(&line).unwrap().unwrap();
        // the sequence formulas, perturbation and indices survive exactly
        match (&cert, &parsed) {
            (
                Certificate::QuscCounterexample { k: k1, seq: s1, checked: c1 },
                Certificate::QuscCounterexample { k: k2, seq: s2, checked: c2 },
            ) => {
                assert_eq!(k1, k2);
                assert_eq!(c1, c2);
                assert_eq!(s1.coords(), s2.coords());
                assert_eq!(s1.limit(), s2.limit());
            }
            _ => panic!("variant changed"),
        }
        let ineq = LinIneq::gt(vec![rat(1, 1), rat(0, 1)], rat(1, 2));
        assert_eq!(parse_ineq(&fmt_ineq(&ineq)).unwrap(), ineq);
    }
}
