//! Piecewise maps over box regions: unary maps h : K -> Z and bifunctions
//! F : K x K -> Z, with exact evaluation, symbolic evaluation along
//! sequence tails, argument fixing, region-refined sums, and cone-convexity
//! checking in the second argument.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone::ConeSpec;
use crate::domain::BoxDomain;
use crate::error::{KernelError, Result};
use crate::expr::Expr;
use crate::rational::RationalVec;
use crate::ratfun::{RatFun, TailSign};
use crate::verdict::{Certificate, Verdict};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

/// One region comparison `expr(x, y) op bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cond {
    pub expr: Expr,
    pub op: CmpOp,
    pub bound: Rational,
}

impl Cond {
    pub fn new(expr: Expr, op: CmpOp, bound: Rational) -> Self {
        Cond { expr, op, bound }
    }

    pub fn holds_at(&self, x: &RationalVec, y: Option<&RationalVec>) -> Result<bool> {
        let v = self.expr.eval(x, y)?;
        Ok(match self.op {
            CmpOp::Lt => v < self.bound,
            CmpOp::Le => v <= self.bound,
            CmpOp::Eq => v == self.bound,
            CmpOp::Ge => v >= self.bound,
            CmpOp::Gt => v > self.bound,
        })
    }

    /// Does the comparison hold for all sufficiently small t > 0 along the
    /// given symbolic tail?
    pub fn tail_holds(&self, x: &[RatFun], y: Option<&[RatFun]>) -> Result<bool> {
        let d = self
            .expr
            .eval_tail(x, y)?
            .sub(&RatFun::constant(self.bound.clone()));
        let s = d.tail_sign();
        Ok(match self.op {
            CmpOp::Lt => s == TailSign::Negative,
            CmpOp::Le => s != TailSign::Positive,
            CmpOp::Eq => s == TailSign::Zero,
            CmpOp::Ge => s != TailSign::Negative,
            CmpOp::Gt => s == TailSign::Positive,
        })
    }

    fn substitute_y(&self, y: &RationalVec) -> Result<Cond> {
        Ok(Cond {
            expr: self.expr.substitute_y(y)?,
            op: self.op,
            bound: self.bound.clone(),
        })
    }

    fn substitute_x_promote_y(&self, x: &RationalVec) -> Result<Cond> {
        Ok(Cond {
            expr: self.expr.substitute_x_promote_y(x)?,
            op: self.op,
            bound: self.bound.clone(),
        })
    }
}

/// Conjunction of comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub conds: Vec<Cond>,
}

impl Region {
    pub fn all() -> Self {
        Region { conds: Vec::new() }
    }

    pub fn new(conds: Vec<Cond>) -> Self {
        Region { conds }
    }

    pub fn holds_at(&self, x: &RationalVec, y: Option<&RationalVec>) -> Result<bool> {
        for c in &self.conds {
            if !c.holds_at(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn tail_holds(&self, x: &[RatFun], y: Option<&[RatFun]>) -> Result<bool> {
        for c in &self.conds {
            if !c.tail_holds(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub region: Region,
    pub values: Vec<Expr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapArity {
    Unary,
    Bifunction,
}

/// Map defined by rational piecewise expressions; the regions of the pieces
/// must partition the domain (validated on grids, not assumed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseMap {
    arity: MapArity,
    domain: BoxDomain,
    codomain_dim: usize,
    pieces: Vec<Piece>,
}

/// Lift a rational point to constant tail functions (for fixed arguments in
/// symbolic evaluation).
pub fn constant_tail(v: &RationalVec) -> Vec<RatFun> {
    v.coords()
        .iter()
        .map(|c| RatFun::constant(c.clone()))
        .collect()
}

impl PiecewiseMap {
    pub fn new(
        arity: MapArity,
        domain: BoxDomain,
        codomain_dim: usize,
        pieces: Vec<Piece>,
    ) -> Result<Self> {
        if codomain_dim == 0 {
            return Err(KernelError::InvalidSpec(String::from(
                "codomain dimension must be positive",
            )));
        }
        if pieces.is_empty() {
            return Err(KernelError::InvalidSpec(String::from(
                "map needs at least one piece",
            )));
        }
        for p in &pieces {
            if p.values.len() != codomain_dim {
                return Err(KernelError::ShapeMismatch);
            }
        }
        Ok(PiecewiseMap {
            arity,
            domain,
            codomain_dim,
            pieces,
        })
    }

    /// Single-piece map valid on the whole domain.
    pub fn total(arity: MapArity, domain: BoxDomain, values: Vec<Expr>) -> Result<Self> {
        let dim = values.len();
        PiecewiseMap::new(
            arity,
            domain,
            dim,
            alloc::vec![Piece {
                region: Region::all(),
                values,
            }],
        )
    }

    /// The zero map.
    pub fn zero(arity: MapArity, domain: BoxDomain, codomain_dim: usize) -> Result<Self> {
        PiecewiseMap::total(
            arity,
            domain,
            alloc::vec![Expr::constant(Rational::zero()); codomain_dim],
        )
    }

    pub fn arity(&self) -> MapArity {
        self.arity
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn check_args(&self, x: &RationalVec, y: Option<&RationalVec>) -> Result<()> {
        if !self.domain.contains(x)? {
            return Err(KernelError::OutsideDomain);
        }
        match (self.arity, y) {
            (MapArity::Unary, None) => Ok(()),
            (MapArity::Bifunction, Some(y)) => {
                if !self.domain.contains(y)? {
                    return Err(KernelError::OutsideDomain);
                }
                Ok(())
            }
            _ => Err(KernelError::ShapeMismatch),
        }
    }

    /// Exact evaluation at the unique matching piece.
    pub fn eval(&self, x: &RationalVec, y: Option<&RationalVec>) -> Result<RationalVec> {
        self.check_args(x, y)?;
        for p in &self.pieces {
            if p.region.holds_at(x, y)? {
                return crate::expr::eval_all(&p.values, x, y);
            }
        }
        Err(KernelError::NoMatchingRegion)
    }

    pub fn eval_unary(&self, x: &RationalVec) -> Result<RationalVec> {
        self.eval(x, None)
    }

    pub fn eval_bi(&self, x: &RationalVec, y: &RationalVec) -> Result<RationalVec> {
        self.eval(x, Some(y))
    }

    /// Symbolic evaluation along a tail: each argument coordinate is a
    /// rational function of t = 1/n, piece selection uses eventual signs.
    pub fn eval_tail(&self, x: &[RatFun], y: Option<&[RatFun]>) -> Result<Vec<RatFun>> {
        for p in &self.pieces {
            if p.region.tail_holds(x, y)? {
                let mut out = Vec::with_capacity(p.values.len());
                for e in &p.values {
                    out.push(e.eval_tail(x, y)?);
                }
                return Ok(out);
            }
        }
        Err(KernelError::NoMatchingRegion)
    }

    /// Unary map x -> F(x, y) for fixed y, by symbolic substitution.
    pub fn fix_second(&self, y: &RationalVec) -> Result<PiecewiseMap> {
        if self.arity != MapArity::Bifunction {
            return Err(KernelError::ShapeMismatch);
        }
        if !self.domain.contains(y)? {
            return Err(KernelError::OutsideDomain);
        }
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let conds = p
                .region
                .conds
                .iter()
                .map(|c| c.substitute_y(y))
                .collect::<Result<Vec<_>>>()?;
            let values = p
                .values
                .iter()
                .map(|e| e.substitute_y(y))
                .collect::<Result<Vec<_>>>()?;
            pieces.push(Piece {
                region: Region::new(conds),
                values,
            });
        }
        PiecewiseMap::new(MapArity::Unary, self.domain.clone(), self.codomain_dim, pieces)
    }

    /// Unary map z -> F(x, z) for fixed first argument.
    pub fn fix_first(&self, x: &RationalVec) -> Result<PiecewiseMap> {
        if self.arity != MapArity::Bifunction {
            return Err(KernelError::ShapeMismatch);
        }
        if !self.domain.contains(x)? {
            return Err(KernelError::OutsideDomain);
        }
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let conds = p
                .region
                .conds
                .iter()
                .map(|c| c.substitute_x_promote_y(x))
                .collect::<Result<Vec<_>>>()?;
            let values = p
                .values
                .iter()
                .map(|e| e.substitute_x_promote_y(x))
                .collect::<Result<Vec<_>>>()?;
            pieces.push(Piece {
                region: Region::new(conds),
                values,
            });
        }
        PiecewiseMap::new(MapArity::Unary, self.domain.clone(), self.codomain_dim, pieces)
    }

    /// Region-refined pointwise sum.
    pub fn sum(&self, other: &PiecewiseMap) -> Result<PiecewiseMap> {
        if self.arity != other.arity
            || self.codomain_dim != other.codomain_dim
            || self.domain != other.domain
        {
            return Err(KernelError::ShapeMismatch);
        }
        let mut pieces = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for a in &self.pieces {
            for b in &other.pieces {
                let mut conds = a.region.conds.clone();
                conds.extend(b.region.conds.iter().cloned());
                let values = a
                    .values
                    .iter()
                    .zip(&b.values)
                    .map(|(u, v)| Expr::add(u.clone(), v.clone()))
                    .collect();
                pieces.push(Piece {
                    region: Region::new(conds),
                    values,
                });
            }
        }
        PiecewiseMap::new(self.arity, self.domain.clone(), self.codomain_dim, pieces)
    }

    /// Validate the partition invariant on the domain grid: every grid
    /// point (or pair for bifunctions) matches exactly one region.
    pub fn validate_partition(&self) -> Result<()> {
        let xs = self.domain.grid_points();
        let ys: Vec<Option<RationalVec>> = match self.arity {
            MapArity::Unary => alloc::vec![None],
            MapArity::Bifunction => xs.iter().cloned().map(Some).collect(),
        };
        for x in &xs {
            for y in &ys {
                let mut matches = 0usize;
                for p in &self.pieces {
                    if p.region.holds_at(x, y.as_ref())? {
                        matches += 1;
                    }
                }
                if matches != 1 {
                    return Err(KernelError::NoMatchingRegion);
                }
            }
        }
        Ok(())
    }
}

/// Convexity of y -> F(x, y) with respect to the cone order: checks
/// t*F(x,y1) + (1-t)*F(x,y2) - F(x, t*y1 + (1-t)*y2) in C over all grid
/// pairs (y1, y2) and a rational t-grid of the given density. Holds only
/// for syntactically affine-in-y maps; otherwise refuted or consistent.
pub fn c_convex_check(
    f: &PiecewiseMap,
    x: &RationalVec,
    cone: &ConeSpec,
    t_density: u32,
) -> Result<Verdict> {
    if f.arity() != MapArity::Bifunction {
        return Err(KernelError::ShapeMismatch);
    }
    if f.codomain_dim() != cone.dim() {
        return Err(KernelError::ShapeMismatch);
    }
    if !f.domain().contains(x)? {
        return Err(KernelError::OutsideDomain);
    }
    if t_density == 0 {
        return Err(KernelError::InvalidSpec(String::from(
            "t-grid density must be positive",
        )));
    }
    let ys = f.domain().grid_points();
    let ts: Vec<Rational> = (0..=t_density)
        .map(|i| Rational::from(BigInt::from(i)) / Rational::from(BigInt::from(t_density)))
        .collect();
    for y1 in &ys {
        for y2 in &ys {
            let v1 = f.eval_bi(x, y1)?;
            let v2 = f.eval_bi(x, y2)?;
            for t in &ts {
                let one_minus = &Rational::one() - t;
                let mid = &y1.scale(t) + &y2.scale(&one_minus);
                let combo = &v1.scale(t) + &v2.scale(&one_minus);
                let diff = &combo - &f.eval_bi(x, &mid)?;
                if !cone.contains(&diff)? {
                    return Ok(Verdict::fails(Certificate::ConvexityCounterexample {
                        y1: y1.clone(),
                        y2: y2.clone(),
                        t: t.clone(),
                        value: diff,
                    }));
                }
            }
        }
    }
    let affine = f
        .pieces()
        .iter()
        .all(|p| p.values.iter().all(Expr::is_affine_in_y))
        && f.pieces().len() == 1;
    if affine {
        Ok(Verdict::holds(Certificate::Points {
            label: "affine-in-y",
            points: Vec::new(),
        }))
    } else {
        Ok(Verdict::consistent(String::from(
            "convexity consistent on sampled triples",
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// h(x) = (x, 2x) if x <= 1/2, (2x, 2x) if x > 1/2 on [0,1].
    fn split_map() -> PiecewiseMap {
        let domain = BoxDomain::interval(rat(0, 1), rat(1, 1), 8).unwrap();
        PiecewiseMap::new(
            MapArity::Unary,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(
                        Expr::VarX(0),
                        CmpOp::Le,
                        rat(1, 2)
                    )]),
                    values: alloc::vec![
                        Expr::VarX(0),
                        Expr::mul(Expr::constant(rat(2, 1)), Expr::VarX(0))
                    ],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(
                        Expr::VarX(0),
                        CmpOp::Gt,
                        rat(1, 2)
                    )]),
                    values: alloc::vec![
                        Expr::mul(Expr::constant(rat(2, 1)), Expr::VarX(0)),
                        Expr::mul(Expr::constant(rat(2, 1)), Expr::VarX(0))
                    ],
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn piecewise_eval_and_partition() {
        let h = split_map();
        h.validate_partition().unwrap();
        assert_eq!(
            h.eval_unary(&RationalVec::from_i64(&[(1, 2)])).unwrap(),
            RationalVec::from_i64(&[(1, 2), (1, 1)])
        );
        assert_eq!(
            h.eval_unary(&RationalVec::from_i64(&[(3, 4)])).unwrap(),
            RationalVec::from_i64(&[(3, 2), (3, 2)])
        );
        assert!(matches!(
            h.eval_unary(&RationalVec::from_i64(&[(2, 1)])),
            Err(KernelError::OutsideDomain)
        ));
    }

    #[test]
    fn tail_eval_selects_side() {
        use crate::seq::SequenceSpec;
        let h = split_map();
        // approach 1/2 from the right: upper branch must be selected
        let s = SequenceSpec::toward(
            &RationalVec::from_i64(&[(1, 2)]),
            &RationalVec::from_i64(&[(1, 2)]),
        )
        .unwrap();
        let vals = h.eval_tail(&s.as_ratfun(), None).unwrap();
        use crate::ratfun::TailLimit;
        assert_eq!(vals[0].tail_limit(), TailLimit::Finite(rat(1, 1)));
        // from the left: lower branch
        let s = SequenceSpec::toward(
            &RationalVec::from_i64(&[(1, 2)]),
            &RationalVec::from_i64(&[(-1, 2)]),
        )
        .unwrap();
        let vals = h.eval_tail(&s.as_ratfun(), None).unwrap();
        assert_eq!(vals[0].tail_limit(), TailLimit::Finite(rat(1, 2)));
    }

    #[test]
    fn fix_and_sum() {
        let domain = BoxDomain::interval(rat(-1, 1), rat(1, 1), 4).unwrap();
        // F(x, y) = (x + y,)
        let f = PiecewiseMap::total(
            MapArity::Bifunction,
            domain.clone(),
            alloc::vec![Expr::add(Expr::VarX(0), Expr::VarY(0))],
        )
        .unwrap();
        let at_half = f.fix_second(&RationalVec::from_i64(&[(1, 2)])).unwrap();
        assert_eq!(
            at_half.eval_unary(&RationalVec::from_i64(&[(1, 4)])).unwrap(),
            RationalVec::from_i64(&[(3, 4)])
        );
        let first_fixed = f.fix_first(&RationalVec::from_i64(&[(-1, 4)])).unwrap();
        assert_eq!(
            first_fixed
                .eval_unary(&RationalVec::from_i64(&[(1, 1)]))
                .unwrap(),
            RationalVec::from_i64(&[(3, 4)])
        );
        // sum agrees pointwise with eval(F) + eval(G) on the grid
        let g = PiecewiseMap::total(
            MapArity::Bifunction,
            domain.clone(),
            alloc::vec![Expr::mul(Expr::VarX(0), Expr::VarY(0))],
        )
        .unwrap();
        let s = f.sum(&g).unwrap();
        for x in domain.grid_points() {
            for y in domain.grid_points() {
                assert_eq!(
                    s.eval_bi(&x, &y).unwrap(),
                    &f.eval_bi(&x, &y).unwrap() + &g.eval_bi(&x, &y).unwrap()
                );
            }
        }
        let zero = PiecewiseMap::zero(MapArity::Bifunction, domain.clone(), 1).unwrap();
        let fz = f.sum(&zero).unwrap();
        for x in domain.grid_points() {
            for y in domain.grid_points() {
                assert_eq!(fz.eval_bi(&x, &y).unwrap(), f.eval_bi(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn convexity_verdicts() {
        let domain = BoxDomain::interval(rat(-1, 1), rat(1, 1), 4).unwrap();
        let cone = ConeSpec::orthant(2);
        // affine in y: Holds
        let aff = PiecewiseMap::total(
            MapArity::Bifunction,
            domain.clone(),
            alloc::vec![Expr::VarY(0), Expr::VarX(0)],
        )
        .unwrap();
        let x = RationalVec::from_i64(&[(0, 1)]);
        assert!(c_convex_check(&aff, &x, &cone, 4).unwrap().is_holds());
        // (y^2 - x^2, y^2 - x^2): convex, but only consistent up to sampling
        let ysq = Expr::sub(
            Expr::mul(Expr::VarY(0), Expr::VarY(0)),
            Expr::mul(Expr::VarX(0), Expr::VarX(0)),
        );
        let quad = PiecewiseMap::total(
            MapArity::Bifunction,
            domain.clone(),
            alloc::vec![ysq.clone(), ysq],
        )
        .unwrap();
        assert!(c_convex_check(&quad, &x, &cone, 4).unwrap().is_consistent());
        // (y^3, 0): fails at y1 = -1, y2 = 0, t = 1/2 with value (-3/8, 0)
        let cube = Expr::mul(Expr::VarY(0), Expr::mul(Expr::VarY(0), Expr::VarY(0)));
        let bad = PiecewiseMap::total(
            MapArity::Bifunction,
            domain,
            alloc::vec![cube, Expr::constant(rat(0, 1))],
        )
        .unwrap();
        let v = c_convex_check(&bad, &x, &cone, 4).unwrap();
        assert!(v.is_fails());
        match v.certificate.unwrap() {
            Certificate::ConvexityCounterexample { value, .. } => {
                assert!(value.coord(0) < &rat(0, 1));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }
}
