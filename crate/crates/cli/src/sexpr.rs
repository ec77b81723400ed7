//! Prefix (S-expression) grammar for piecewise-map bodies and region
//! conditions, with a canonical writer so configs round-trip losslessly.
//!
//! ```text
//! expr  := rational | x<i> | y<i>
//!        | (add expr expr) | (sub expr expr) | (mul expr expr)
//!        | (neg expr) | (abs expr) | (recipabs expr)
//! cond  := (le expr rational) | (lt ...) | (ge ...) | (gt ...) | (eq ...)
//! ```
//!
//! Variables are 1-based (`x1` is the first coordinate of the first
//! argument); rationals are `p` or `p/q` with optional sign.

use vequil_core::expr::Expr;
use vequil_core::maps::{CmpOp, Cond};
use vequil_core::rational::{format_rational, parse_rational};
use vequil_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SexprError {
    Unbalanced,
    UnexpectedToken(String),
    Arity(String),
    #[cfg_attr(not(test), allow(dead_code))]
    TrailingInput(String),
}

impl std::fmt::Display for SexprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SexprError::Unbalanced => write!(f, "unbalanced parentheses"),
            SexprError::UnexpectedToken(t) => write!(f, "unexpected token '{t}'"),
            SexprError::Arity(op) => write!(f, "wrong number of arguments for '{op}'"),
            SexprError::TrailingInput(t) => write!(f, "trailing input starting at '{t}'"),
        }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Atom(String),
    List(Vec<Node>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_node(tokens: &[String], pos: &mut usize) -> Result<Node, SexprError> {
    let Some(tok) = tokens.get(*pos) else {
        return Err(SexprError::Unbalanced);
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(SexprError::Unbalanced),
                    Some(t) if t == ")" => {
                        *pos += 1;
                        return Ok(Node::List(items));
                    }
                    Some(_) => items.push(parse_node(tokens, pos)?),
                }
            }
        }
        ")" => Err(SexprError::Unbalanced),
        _ => Ok(Node::Atom(tok.clone())),
    }
}

fn atom_to_expr(a: &str) -> Result<Expr, SexprError> {
    if let Some(rest) = a.strip_prefix('x') {
        if let Ok(i) = rest.parse::<usize>() {
            if i >= 1 {
                return Ok(Expr::VarX(i - 1));
            }
        }
    }
    if let Some(rest) = a.strip_prefix('y') {
        if let Ok(i) = rest.parse::<usize>() {
            if i >= 1 {
                return Ok(Expr::VarY(i - 1));
            }
        }
    }
    parse_rational(a)
        .map(Expr::constant)
        .map_err(|_| SexprError::UnexpectedToken(a.to_string()))
}

fn node_to_expr(n: &Node) -> Result<Expr, SexprError> {
    match n {
        Node::Atom(a) => atom_to_expr(a),
        Node::List(items) => {
            let Some(Node::Atom(op)) = items.first() else {
                return Err(SexprError::UnexpectedToken("(".to_string()));
            };
            let args: Vec<Expr> = items[1..]
                .iter()
                .map(node_to_expr)
                .collect::<Result<_, _>>()?;
            let binary = |args: &[Expr]| -> Result<(Expr, Expr), SexprError> {
                if args.len() == 2 {
                    Ok((args[0].clone(), args[1].clone()))
                } else {
                    Err(SexprError::Arity(op.clone()))
                }
            };
            let unary = |args: &[Expr]| -> Result<Expr, SexprError> {
                if args.len() == 1 {
                    Ok(args[0].clone())
                } else {
                    Err(SexprError::Arity(op.clone()))
                }
            };
            match op.as_str() {
                "add" => binary(&args).map(|(a, b)| Expr::add(a, b)),
                "sub" => binary(&args).map(|(a, b)| Expr::sub(a, b)),
                "mul" => binary(&args).map(|(a, b)| Expr::mul(a, b)),
                "neg" => unary(&args).map(Expr::neg),
                "abs" => unary(&args).map(Expr::abs),
                "recipabs" => unary(&args).map(Expr::recip_abs),
                other => Err(SexprError::UnexpectedToken(other.to_string())),
            }
        }
    }
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_expr(s: &str) -> Result<Expr, SexprError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let node = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(SexprError::TrailingInput(tokens[pos].clone()));
    }
    node_to_expr(&node)
}

/// Parses a sequence of expressions written one after another.
pub fn parse_expr_list(s: &str) -> Result<Vec<Expr>, SexprError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < tokens.len() {
        out.push(node_to_expr(&parse_node(&tokens, &mut pos)?)?);
    }
    Ok(out)
}

fn cmp_name(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Le => "le",
        CmpOp::Lt => "lt",
        CmpOp::Ge => "ge",
        CmpOp::Gt => "gt",
        CmpOp::Eq => "eq",
    }
}

fn cmp_of(name: &str) -> Option<CmpOp> {
    Some(match name {
        "le" => CmpOp::Le,
        "lt" => CmpOp::Lt,
        "ge" => CmpOp::Ge,
        "gt" => CmpOp::Gt,
        "eq" => CmpOp::Eq,
        _ => return None,
    })
}

fn node_to_cond(n: &Node) -> Result<Cond, SexprError> {
    let Node::List(items) = n else {
        return Err(SexprError::UnexpectedToken("condition atom".to_string()));
    };
    let [Node::Atom(op), lhs, Node::Atom(rhs)] = items.as_slice() else {
        return Err(SexprError::Arity("condition".to_string()));
    };
    let cmp = cmp_of(op).ok_or_else(|| SexprError::UnexpectedToken(op.clone()))?;
    let bound: Rational =
        parse_rational(rhs).map_err(|_| SexprError::UnexpectedToken(rhs.clone()))?;
    Ok(Cond::new(node_to_expr(lhs)?, cmp, bound))
}

/// Parses a sequence of conditions written one after another.
pub fn parse_cond_list(s: &str) -> Result<Vec<Cond>, SexprError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < tokens.len() {
        out.push(node_to_cond(&parse_node(&tokens, &mut pos)?)?);
    }
    Ok(out)
}

pub fn write_expr(e: &Expr) -> String {
    match e {
        Expr::Const(c) => format_rational(c),
        Expr::VarX(i) => format!("x{}", i + 1),
        Expr::VarY(i) => format!("y{}", i + 1),
        Expr::Add(a, b) => format!("(add {} {})", write_expr(a), write_expr(b)),
        Expr::Sub(a, b) => format!("(sub {} {})", write_expr(a), write_expr(b)),
        Expr::Mul(a, b) => format!("(mul {} {})", write_expr(a), write_expr(b)),
        Expr::Neg(a) => format!("(neg {})", write_expr(a)),
        Expr::Abs(a) => format!("(abs {})", write_expr(a)),
        Expr::RecipAbs(a) => format!("(recipabs {})", write_expr(a)),
    }
}

pub fn write_cond(c: &Cond) -> String {
    format!(
        "({} {} {})",
        cmp_name(c.op),
        write_expr(&c.expr),
        format_rational(&c.bound)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for src in [
            "(add x1 y1)",
            "(sub (mul 2 x1) -1/2)",
            "(neg (recipabs x1))",
            "(abs y2)",
            "3/4",
            "x2",
        ] {
            let e = parse_expr(src).unwrap();
            let written = write_expr(&e);
            assert_eq!(parse_expr(&written).unwrap(), e);
        }
        let c = parse_cond_list("(le x1 1/2) (gt x1 0)").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(write_cond(&c[0]), "(le x1 1/2)");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_expr("(add x1)").is_err());
        assert!(parse_expr("(add x1 y1").is_err());
        assert!(parse_expr("(pow x1 2)").is_err());
        assert!(parse_expr("x0").is_err());
        assert!(parse_expr("(add x1 y1) x2").is_err());
    }
}
