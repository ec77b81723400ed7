//! Expression trees for map bodies: add, sub, mul, neg, constant, abs and
//! reciprocal-of-abs over variables x1..xm (and y1..ym for bifunctions).
//!
//! Two evaluation modes: exact at rational points, and symbolic over
//! rational functions of a tail parameter `t` (used along sequences, where
//! `abs` is resolved via the eventually-constant sign near `t = 0+`).

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{KernelError, Result};
use crate::rational::RationalVec;
use crate::ratfun::RatFun;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    /// i-th coordinate of the first argument (0-based).
    VarX(usize),
    /// i-th coordinate of the second argument (bifunctions only).
    VarY(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    /// `1/|e|`, guarded: evaluating at `e = 0` is a pole error.
    RecipAbs(Box<Expr>),
}

impl Expr {
    pub fn constant(c: Rational) -> Expr {
        Expr::Const(c)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn abs(a: Expr) -> Expr {
        Expr::Abs(Box::new(a))
    }

    pub fn recip_abs(a: Expr) -> Expr {
        Expr::RecipAbs(Box::new(a))
    }

    /// Exact evaluation at rational arguments.
    pub fn eval(&self, x: &RationalVec, y: Option<&RationalVec>) -> Result<Rational> {
        match self {
            Expr::Const(c) => Ok(c.clone()),
            Expr::VarX(i) => {
                if *i >= x.dim() {
                    return Err(KernelError::DimensionMismatch {
                        expected: i + 1,
                        got: x.dim(),
                    });
                }
                Ok(x.coord(*i).clone())
            }
            Expr::VarY(i) => {
                let y = y.ok_or_else(|| {
                    KernelError::InvalidSpec(alloc::string::String::from(
                        "expression references y but map is unary",
                    ))
                })?;
                if *i >= y.dim() {
                    return Err(KernelError::DimensionMismatch {
                        expected: i + 1,
                        got: y.dim(),
                    });
                }
                Ok(y.coord(*i).clone())
            }
            Expr::Add(a, b) => Ok(a.eval(x, y)? + b.eval(x, y)?),
            Expr::Sub(a, b) => Ok(a.eval(x, y)? - b.eval(x, y)?),
            Expr::Mul(a, b) => Ok(a.eval(x, y)? * b.eval(x, y)?),
            Expr::Neg(a) => Ok(-a.eval(x, y)?),
            Expr::Abs(a) => {
                let v = a.eval(x, y)?;
                Ok(if v < Rational::zero() { -v } else { v })
            }
            Expr::RecipAbs(a) => {
                let v = a.eval(x, y)?;
                if v.is_zero() {
                    return Err(KernelError::PoleHit);
                }
                let a = if v < Rational::zero() { -v } else { v };
                Ok(Rational::from(num_bigint::BigInt::from(1)) / a)
            }
        }
    }

    /// Symbolic evaluation with each coordinate a rational function of the
    /// tail parameter `t` (`t -> 0+` is the sequence limit). `abs` uses the
    /// eventually-constant sign; `recip_abs` of an identically-zero argument
    /// is a pole along the whole tail.
    pub fn eval_tail(&self, x: &[RatFun], y: Option<&[RatFun]>) -> Result<RatFun> {
        match self {
            Expr::Const(c) => Ok(RatFun::constant(c.clone())),
            Expr::VarX(i) => x.get(*i).cloned().ok_or(KernelError::DimensionMismatch {
                expected: i + 1,
                got: x.len(),
            }),
            Expr::VarY(i) => {
                let y = y.ok_or_else(|| {
                    KernelError::InvalidSpec(alloc::string::String::from(
                        "expression references y but map is unary",
                    ))
                })?;
                y.get(*i).cloned().ok_or(KernelError::DimensionMismatch {
                    expected: i + 1,
                    got: y.len(),
                })
            }
            Expr::Add(a, b) => Ok(a.eval_tail(x, y)?.add(&b.eval_tail(x, y)?)),
            Expr::Sub(a, b) => Ok(a.eval_tail(x, y)?.sub(&b.eval_tail(x, y)?)),
            Expr::Mul(a, b) => Ok(a.eval_tail(x, y)?.mul(&b.eval_tail(x, y)?)),
            Expr::Neg(a) => Ok(a.eval_tail(x, y)?.neg()),
            Expr::Abs(a) => Ok(a.eval_tail(x, y)?.tail_abs()),
            Expr::RecipAbs(a) => a
                .eval_tail(x, y)?
                .tail_abs()
                .recip()
                .ok_or(KernelError::PoleHit),
        }
    }

    /// Replace y-variables by the coordinates of a fixed point.
    pub fn substitute_y(&self, y: &RationalVec) -> Result<Expr> {
        Ok(match self {
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::VarX(i) => Expr::VarX(*i),
            Expr::VarY(i) => {
                if *i >= y.dim() {
                    return Err(KernelError::DimensionMismatch {
                        expected: i + 1,
                        got: y.dim(),
                    });
                }
                Expr::Const(y.coord(*i).clone())
            }
            Expr::Add(a, b) => Expr::add(a.substitute_y(y)?, b.substitute_y(y)?),
            Expr::Sub(a, b) => Expr::sub(a.substitute_y(y)?, b.substitute_y(y)?),
            Expr::Mul(a, b) => Expr::mul(a.substitute_y(y)?, b.substitute_y(y)?),
            Expr::Neg(a) => Expr::neg(a.substitute_y(y)?),
            Expr::Abs(a) => Expr::abs(a.substitute_y(y)?),
            Expr::RecipAbs(a) => Expr::recip_abs(a.substitute_y(y)?),
        })
    }

    /// Replace x-variables by a fixed point and rename y-variables to
    /// x-variables (turns `z -> F(x, z)` into a unary map of its argument).
    pub fn substitute_x_promote_y(&self, x: &RationalVec) -> Result<Expr> {
        Ok(match self {
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::VarX(i) => {
                if *i >= x.dim() {
                    return Err(KernelError::DimensionMismatch {
                        expected: i + 1,
                        got: x.dim(),
                    });
                }
                Expr::Const(x.coord(*i).clone())
            }
            Expr::VarY(i) => Expr::VarX(*i),
            Expr::Add(a, b) => Expr::add(
                a.substitute_x_promote_y(x)?,
                b.substitute_x_promote_y(x)?,
            ),
            Expr::Sub(a, b) => Expr::sub(
                a.substitute_x_promote_y(x)?,
                b.substitute_x_promote_y(x)?,
            ),
            Expr::Mul(a, b) => Expr::mul(
                a.substitute_x_promote_y(x)?,
                b.substitute_x_promote_y(x)?,
            ),
            Expr::Neg(a) => Expr::neg(a.substitute_x_promote_y(x)?),
            Expr::Abs(a) => Expr::abs(a.substitute_x_promote_y(x)?),
            Expr::RecipAbs(a) => Expr::recip_abs(a.substitute_x_promote_y(x)?),
        })
    }

    /// Syntactic check: no Mul with y on both sides, no Abs/RecipAbs over y.
    /// Sound but incomplete affine-in-y detection, used for the fast-path
    /// convexity verdict.
    pub fn is_affine_in_y(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::VarX(_) | Expr::VarY(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) => a.is_affine_in_y() && b.is_affine_in_y(),
            Expr::Mul(a, b) => {
                (a.is_affine_in_y() && !b.mentions_y()) || (!a.mentions_y() && b.is_affine_in_y())
            }
            Expr::Neg(a) => a.is_affine_in_y(),
            Expr::Abs(a) | Expr::RecipAbs(a) => !a.mentions_y(),
        }
    }

    pub fn mentions_y(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::VarX(_) => false,
            Expr::VarY(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.mentions_y() || b.mentions_y()
            }
            Expr::Neg(a) | Expr::Abs(a) | Expr::RecipAbs(a) => a.mentions_y(),
        }
    }
}

/// Helper for hand-built expressions: a vector of them evaluated together.
pub fn eval_all(exprs: &[Expr], x: &RationalVec, y: Option<&RationalVec>) -> Result<RationalVec> {
    let mut out = Vec::with_capacity(exprs.len());
    for e in exprs {
        out.push(e.eval(x, y)?);
    }
    Ok(RationalVec::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::ratfun::{TailLimit, TailSign};

    #[test]
    fn eval_recip_abs() {
        // 1/|x1| at x1 = -1/4 is 4; at 0 it is a pole
        let e = Expr::recip_abs(Expr::VarX(0));
        let x = RationalVec::from_i64(&[(-1, 4)]);
        assert_eq!(e.eval(&x, None).unwrap(), rat(4, 1));
        let zero = RationalVec::from_i64(&[(0, 1)]);
        assert!(matches!(e.eval(&zero, None), Err(KernelError::PoleHit)));
    }

    #[test]
    fn tail_eval_resolves_abs() {
        // h(x) = -1/|x| along x = -t: value -1/t, diverges to -infinity
        let e = Expr::neg(Expr::recip_abs(Expr::VarX(0)));
        let x = [RatFun::var().neg()];
        let v = e.eval_tail(&x, None).unwrap();
        assert_eq!(v.tail_limit(), TailLimit::MinusInfinity);
        assert_eq!(v.tail_sign(), TailSign::Negative);
    }

    #[test]
    fn substitution() {
        // F(x, y) = x1 + 2*y1
        let e = Expr::add(
            Expr::VarX(0),
            Expr::mul(Expr::constant(rat(2, 1)), Expr::VarY(0)),
        );
        let fixed = e.substitute_y(&RationalVec::from_i64(&[(3, 1)])).unwrap();
        assert_eq!(
            fixed.eval(&RationalVec::from_i64(&[(1, 2)]), None).unwrap(),
            rat(13, 2)
        );
        let promoted = e
            .substitute_x_promote_y(&RationalVec::from_i64(&[(1, 2)]))
            .unwrap();
        assert_eq!(
            promoted
                .eval(&RationalVec::from_i64(&[(3, 1)]), None)
                .unwrap(),
            rat(13, 2)
        );
    }

    #[test]
    fn affine_detection() {
        let aff = Expr::add(
            Expr::mul(Expr::VarX(0), Expr::VarY(0)),
            Expr::constant(rat(1, 1)),
        );
        assert!(aff.is_affine_in_y());
        let quad = Expr::mul(Expr::VarY(0), Expr::VarY(0));
        assert!(!quad.is_affine_in_y());
        let absy = Expr::abs(Expr::VarY(0));
        assert!(!absy.is_affine_in_y());
        assert!(absy.mentions_y());
    }
}
