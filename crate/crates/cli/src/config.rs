//! Line-oriented problem configuration format.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! space 1
//! cone orthant 2            | cone icecream2 | cone custom 2 1,1 -1,1
//! domain -1 1 8             # lower upper grid-counts, vectors comma-separated
//! map g catalog EX_PHI_PSI_G
//! map h inline bifunction 2
//! piece h when (le x1 1/2) value (add x1 y1) x1
//! piece h when (gt x1 1/2) value (add (mul 2 x1) y1) 0
//! task solve problem=dual map=g
//! task semicont kind=ausc map=g fix-y=1/4 at=1/2
//! ```
//!
//! Every rational literal is exact (`p` or `p/q`); vectors are
//! comma-separated rationals; boxes are `lower|upper|counts`. Unknown
//! directives, task kinds, and task keys are rejected at parse time.
//! Parsing the canonical serialization reproduces the configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use vequil_core::catalog::CatalogId;
use vequil_core::cone::ConeSpec;
use vequil_core::domain::BoxDomain;
use vequil_core::maps::{MapArity, Piece, PiecewiseMap, Region};
use vequil_core::rational::{format_rational, parse_rational, RationalVec};
use vequil_core::seq::{Mobius, SequenceSpec};
use vequil_core::ratfun::TailLimit;

use crate::sexpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeDecl {
    Orthant(usize),
    IceCream2,
    Custom { dim: usize, normals: Vec<RationalVec> },
}

impl ConeDecl {
    pub fn build(&self) -> Result<ConeSpec, String> {
        match self {
            ConeDecl::Orthant(n) => Ok(ConeSpec::orthant(*n)),
            ConeDecl::IceCream2 => Ok(ConeSpec::ice_cream2()),
            ConeDecl::Custom { dim, normals } => {
                ConeSpec::new(*dim, normals.clone()).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDecl {
    Catalog(CatalogId),
    Inline {
        arity: MapArity,
        codomain_dim: usize,
        pieces: Vec<Piece>,
    },
}

impl MapDecl {
    pub fn build(&self, domain: &BoxDomain) -> Result<PiecewiseMap, String> {
        match self {
            MapDecl::Catalog(id) => Ok(id.build()),
            MapDecl::Inline {
                arity,
                codomain_dim,
                pieces,
            } => PiecewiseMap::new(*arity, domain.clone(), *codomain_dim, pieces.clone())
                .map_err(|e| e.to_string()),
        }
    }

    /// The domain the map is evaluated on (catalog maps carry their own).
    pub fn domain(&self, config_domain: &BoxDomain) -> BoxDomain {
        match self {
            MapDecl::Catalog(id) => id.domain(),
            MapDecl::Inline { .. } => config_domain.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub kind: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemConfig {
    pub space: usize,
    pub cone: ConeDecl,
    pub domain: BoxDomain,
    pub maps: Vec<(String, MapDecl)>,
    pub tasks: Vec<Task>,
}

impl ProblemConfig {
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, decl)| decl)
    }
}

pub fn parse_vector(s: &str) -> Result<RationalVec, String> {
    let coords = s
        .split(',')
        .map(|p| parse_rational(p.trim()).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.is_empty() {
        return Err("empty vector literal".to_string());
    }
    Ok(RationalVec::new(coords))
}

pub fn format_vector(v: &RationalVec) -> String {
    v.coords()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",")
}

/// `lower|upper|counts`, each side a vector, counts comma-separated.
pub fn parse_box(s: &str) -> Result<BoxDomain, String> {
    let parts: Vec<&str> = s.split('|').collect();
    let [lo, hi, counts] = parts.as_slice() else {
        return Err("box literal must be lower|upper|counts".to_string());
    };
    let lower = parse_vector(lo)?;
    let upper = parse_vector(hi)?;
    let counts = counts
        .split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    BoxDomain::new(lower, upper, counts).map_err(|e| e.to_string())
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn format_box(b: &BoxDomain) -> String {
    format!(
        "{}|{}|{}",
        format_vector(b.lower()),
        format_vector(b.upper()),
        b.grid_counts()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Sequence literal: per-coordinate Mobius quadruples `a,b,c,d` (the
/// formula n -> (a*n + b)/(c*n + d)) joined by `|`. The declared limit is
/// derived from the formulas and must be finite.
pub fn parse_net(s: &str) -> Result<SequenceSpec, String> {
    let mut coords = Vec::new();
    let mut limit = Vec::new();
    for quad in s.split('|') {
        let nums = quad
            .split(',')
            .map(|p| parse_rational(p.trim()).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let [a, b, c, d] = nums.as_slice() else {
            return Err("each net coordinate needs four rationals a,b,c,d".to_string());
        };
        let m = Mobius::new(a.clone(), b.clone(), c.clone(), d.clone())
            .map_err(|e| e.to_string())?;
        match m.limit() {
            TailLimit::Finite(l) => limit.push(l),
            _ => return Err("net coordinate has no finite limit".to_string()),
        }
        coords.push(m);
    }
    SequenceSpec::new(coords, RationalVec::new(limit), true).map_err(|e| e.to_string())
}

pub fn format_net(s: &SequenceSpec) -> String {
    s.coords()
        .iter()
        .map(|m| {
            format!(
                "{},{},{},{}",
                format_rational(&m.alpha),
                format_rational(&m.beta),
                format_rational(&m.gamma),
                format_rational(&m.delta)
            )
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Allowed parameter keys per task kind; anything else is rejected.
fn allowed_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "validate-cone" => &[],
        "eval" => &["map", "x", "y"],
        "semicont" => &["kind", "map", "at", "fix-y", "expect"],
        "levelset" => &["map", "y", "probe", "expect"],
        "solve" => &["problem", "map", "f", "g"],
        "check-condition" => &[
            "id", "f", "g", "x0", "y", "witness", "xnet", "unet", "ynet", "vnet", "znet", "wnet",
            "expect",
        ],
        "coercivity" => &["map", "k0", "expect"],
        "diagonal" => &["map", "mode", "expect"],
        "probe" => &["map", "k0", "expect"],
        _ => return None,
    })
}

pub fn parse_config(text: &str) -> Result<ProblemConfig, ParseError> {
    let mut space: Option<usize> = None;
    let mut cone: Option<ConeDecl> = None;
    let mut domain: Option<BoxDomain> = None;
    let mut maps: Vec<(String, MapDecl)> = Vec::new();
    let mut tasks: Vec<Task> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "space" => {
                let n: usize = match rest.parse() {
                    Ok(n) => n,
                    Err(_) => return err(lineno, "space expects a positive integer"),
                };
                space = Some(n);
            }
            "cone" => {
                let mut words = rest.split_whitespace();
                cone = Some(match words.next() {
                    Some("orthant") => match words.next().and_then(|w| w.parse().ok()) {
                        Some(n) => ConeDecl::Orthant(n),
                        None => return err(lineno, "cone orthant expects a dimension"),
                    },
                    Some("icecream2") => ConeDecl::IceCream2,
                    Some("custom") => {
                        let Some(dim) = words.next().and_then(|w| w.parse::<usize>().ok()) else {
                            return err(lineno, "cone custom expects a dimension");
                        };
                        let normals = words
                            .map(parse_vector)
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|m| ParseError {
                                line: lineno,
                                message: m,
                            })?;
                        ConeDecl::Custom { dim, normals }
                    }
                    _ => return err(lineno, "cone expects orthant/icecream2/custom"),
                });
            }
            "domain" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [lo, hi, counts] = words.as_slice() else {
                    return err(lineno, "domain expects lower upper counts");
                };
                let parsed =
                    parse_box(&format!("{lo}|{hi}|{counts}")).map_err(|m| ParseError {
                        line: lineno,
                        message: m,
                    })?;
                domain = Some(parsed);
            }
            "map" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                match words.as_slice() {
                    [name, "catalog", id] => {
                        let id = CatalogId::parse(id)
                            .map_err(|_| ParseError {
                                line: lineno,
                                message: format!("unknown catalog id '{id}'"),
                            })?;
                        maps.push((name.to_string(), MapDecl::Catalog(id)));
                    }
                    [name, "inline", arity, codim] => {
                        let arity = match *arity {
                            "unary" => MapArity::Unary,
                            "bifunction" => MapArity::Bifunction,
                            _ => return err(lineno, "map arity must be unary or bifunction"),
                        };
                        let Ok(codomain_dim) = codim.parse::<usize>() else {
                            return err(lineno, "map codomain dimension must be an integer");
                        };
                        maps.push((
                            name.to_string(),
                            MapDecl::Inline {
                                arity,
                                codomain_dim,
                                pieces: Vec::new(),
                            },
                        ));
                    }
                    _ => return err(lineno, "map expects '<name> catalog <id>' or '<name> inline <arity> <codim>'"),
                }
                let name = words[0];
                if maps.iter().filter(|(n, _)| n == name).count() > 1 {
                    return err(lineno, format!("duplicate map name '{name}'"));
                }
            }
            "piece" => {
                let (name, tail) = match rest.split_once(char::is_whitespace) {
                    Some(p) => p,
                    None => return err(lineno, "piece expects a map name"),
                };
                let tail = tail.trim();
                let Some(after_when) = tail.strip_prefix("when") else {
                    return err(lineno, "piece expects 'when <conds> value <exprs>'");
                };
                let Some((conds_text, values_text)) = after_when.split_once("value") else {
                    return err(lineno, "piece expects a 'value' section");
                };
                let conds = sexpr::parse_cond_list(conds_text.trim()).map_err(|e| ParseError {
                    line: lineno,
                    message: e.to_string(),
                })?;
                let values =
                    sexpr::parse_expr_list(values_text.trim()).map_err(|e| ParseError {
                        line: lineno,
                        message: e.to_string(),
                    })?;
                if values.is_empty() {
                    return err(lineno, "piece needs at least one value expression");
                }
                let Some((_, MapDecl::Inline { pieces, codomain_dim, .. })) =
                    maps.iter_mut().find(|(n, _)| n == name)
                else {
                    return err(lineno, format!("piece refers to unknown inline map '{name}'"));
                };
                if values.len() != *codomain_dim {
                    return err(lineno, "piece value count differs from map codomain");
                }
                pieces.push(Piece {
                    region: Region::new(conds),
                    values,
                });
            }
            "task" => {
                let (kind, params_text) = match rest.split_once(char::is_whitespace) {
                    Some((k, p)) => (k, p.trim()),
                    None => (rest, ""),
                };
                let Some(allowed) = allowed_keys(kind) else {
                    return err(lineno, format!("unknown task kind '{kind}'"));
                };
                let mut params = BTreeMap::new();
                for kv in params_text.split_whitespace() {
                    let Some((k, v)) = kv.split_once('=') else {
                        return err(lineno, format!("task parameter '{kv}' is not key=value"));
                    };
                    if !allowed.contains(&k) {
                        return err(lineno, format!("unknown key '{k}' for task '{kind}'"));
                    }
                    if params.insert(k.to_string(), v.to_string()).is_some() {
                        return err(lineno, format!("duplicate key '{k}'"));
                    }
                }
                tasks.push(Task {
                    kind: kind.to_string(),
                    params,
                });
            }
            other => return err(lineno, format!("unknown directive '{other}'")),
        }
    }

    let Some(cone) = cone else {
        return err(0, "missing cone declaration");
    };
    let Some(domain) = domain else {
        return err(0, "missing domain declaration");
    };
    let space = space.unwrap_or_else(|| domain.dim());
    if space != domain.dim() {
        return err(0, "space dimension differs from domain dimension");
    }
    Ok(ProblemConfig {
        space,
        cone,
        domain,
        maps,
        tasks,
    })
}

pub fn serialize_config(c: &ProblemConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space {}", c.space);
    match &c.cone {
        ConeDecl::Orthant(n) => {
            let _ = writeln!(out, "cone orthant {n}");
        }
        ConeDecl::IceCream2 => {
            let _ = writeln!(out, "cone icecream2");
        }
        ConeDecl::Custom { dim, normals } => {
            let normals_text = normals
                .iter()
                .map(format_vector)
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "cone custom {dim} {normals_text}");
        }
    }
    let _ = writeln!(
        out,
        "domain {} {} {}",
        format_vector(c.domain.lower()),
        format_vector(c.domain.upper()),
        c.domain
            .grid_counts()
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    for (name, decl) in &c.maps {
        match decl {
            MapDecl::Catalog(id) => {
                let _ = writeln!(out, "map {name} catalog {}", id.name());
            }
            MapDecl::Inline {
                arity,
                codomain_dim,
                pieces,
            } => {
                let arity_text = match arity {
                    MapArity::Unary => "unary",
                    MapArity::Bifunction => "bifunction",
                };
                let _ = writeln!(out, "map {name} inline {arity_text} {codomain_dim}");
                for p in pieces {
                    let conds = p
                        .region
                        .conds
                        .iter()
                        .map(sexpr::write_cond)
                        .collect::<Vec<_>>()
                        .join(" ");
                    let values = p
                        .values
                        .iter()
                        .map(sexpr::write_expr)
                        .collect::<Vec<_>>()
                        .join(" ");
                    let _ = writeln!(out, "piece {name} when {conds} value {values}");
                }
            }
        }
    }
    for t in &c.tasks {
        let mut line = format!("task {}", t.kind);
        for (k, v) in &t.params {
            let _ = write!(line, " {k}={v}");
        }
        let _ = writeln!(out, "{line}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# demo
space 1
cone icecream2
domain 0 1 8
map g catalog EX_ICECREAM_G
map h inline unary 2
piece h when (le x1 1/2) value x1 (mul 2 x1)
piece h when (gt x1 1/2) value (mul 2 x1) (mul 2 x1)
task semicont at=1/2 kind=wusc map=h
task solve map=g problem=dual
";

    #[test]
    fn parse_serialize_round_trip() {
        let c = parse_config(SAMPLE).unwrap();
        assert_eq!(c.maps.len(), 2);
        assert_eq!(c.tasks.len(), 2);
        let text = serialize_config(&c);
        let c2 = parse_config(&text).unwrap();
        assert_eq!(c, c2);
        assert_eq!(serialize_config(&c2), text);
    }

    #[test]
    fn rejects_unknown_keys_and_directives() {
        assert!(parse_config("flavor sweet\n").is_err());
        assert!(parse_config("cone orthant 2\ndomain 0 1 4\ntask solve speed=fast\n").is_err());
        assert!(parse_config("cone orthant 2\ndomain 0 1 4\ntask dance\n").is_err());
        let e = parse_config("cone orthant 2\ndomain 0 1 4\nmap m catalog NOPE\n").unwrap_err();
        assert!(e.message.contains("unknown catalog id"));
    }

    #[test]
    fn net_literals_round_trip() {
        // x_n = -n/(2n+1): quadruple -1/2,0,1,1/2 after normalizing by 2
        let net = parse_net("-1/2,0,1,1/2").unwrap();
        assert_eq!(
            net.term(1).unwrap(),
            RationalVec::from_i64(&[(-1, 3)])
        );
        assert_eq!(net.limit(), &RationalVec::from_i64(&[(-1, 2)]));
        let text = format_net(&net);
        assert_eq!(parse_net(&text).unwrap(), net);
    }

    #[test]
    fn box_literals_round_trip() {
        let b = parse_box("-1,-1|1,1|8,8").unwrap();
        assert_eq!(format_box(&b), "-1,-1|1,1|8,8");
        assert!(parse_box("-1|1").is_err());
        assert!(parse_box("1|0|4").is_err());
    }

    #[test]
    fn map_lookup_by_name() {
        let config = parse_config(
            "space 1\ncone orthant 2\ndomain -1 1 8\nmap g catalog EX_PHI_PSI_G\n",
        )
        .unwrap();
        assert!(config.map("g").is_some());
        assert!(config.map("h").is_none());
    }
}
