//! Exact univariate rational functions in a parameter `t`, used for tail
//! analysis of sequences: a term index `n` maps to `t = 1/n`, so behaviour
//! "for all sufficiently large n" becomes sign analysis near `t = 0+`,
//! which is decidable from lowest-order coefficients.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Dense polynomial with ascending rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly(alloc::vec![c])
        }
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        Poly(alloc::vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(Rational::zero);
            out.push(a + b);
        }
        Poly::trim(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::trim(out)
    }

    /// Lowest nonzero term `(order, coefficient)`.
    pub fn lowest(&self) -> Option<(usize, &Rational)> {
        self.0.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

/// Sign of a quantity for all sufficiently small `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSign {
    Negative,
    Zero,
    Positive,
}

/// Limit of a rational function as `t -> 0+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailLimit {
    Finite(Rational),
    PlusInfinity,
    MinusInfinity,
}

impl TailLimit {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TailLimit::Finite(r) => Some(r),
            _ => None,
        }
    }
}

/// Quotient of polynomials in `t`; denominator never identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(RatFun { num, den })
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn var() -> Self {
        RatFun {
            num: Poly::var(),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        RatFun {
            num: self.num.mul(&Poly::constant(c.clone())),
            den: self.den.clone(),
        }
    }

    /// Reciprocal; `None` when the function is identically zero.
    pub fn recip(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFun {
                num: self.den.clone(),
                den: self.num.clone(),
            })
        }
    }

    /// Sign for all sufficiently small `t > 0`.
    pub fn tail_sign(&self) -> TailSign {
        let Some((_, nc)) = self.num.lowest() else {
            return TailSign::Zero;
        };
        let (_, dc) = self.den.lowest().expect("nonzero denominator");
        if nc.is_positive() == dc.is_positive() {
            TailSign::Positive
        } else {
            TailSign::Negative
        }
    }

    /// `|self|` near `t = 0+` (the sign is eventually constant).
    pub fn tail_abs(&self) -> RatFun {
        match self.tail_sign() {
            TailSign::Negative => self.neg(),
            _ => self.clone(),
        }
    }

    /// Limit as `t -> 0+`; rational functions cannot oscillate.
    pub fn tail_limit(&self) -> TailLimit {
        let Some((no, nc)) = self.num.lowest() else {
            return TailLimit::Finite(Rational::zero());
        };
        let (do_, dc) = self.den.lowest().expect("nonzero denominator");
        match no.cmp(&do_) {
            Ordering::Greater => TailLimit::Finite(Rational::zero()),
            Ordering::Equal => TailLimit::Finite(nc / dc),
            Ordering::Less => {
                if nc.is_positive() == dc.is_positive() {
                    TailLimit::PlusInfinity
                } else {
                    TailLimit::MinusInfinity
                }
            }
        }
    }

    /// Exact evaluation at `t`; `None` when the denominator vanishes there.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(n: i64, d: i64) -> RatFun {
        RatFun::constant(rat(n, d))
    }

    #[test]
    fn poly_arith() {
        let p = Poly::var().mul(&Poly::var()).sub(&Poly::constant(rat(1, 1)));
        assert_eq!(p.eval(&rat(3, 1)), rat(8, 1));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn tail_sign_and_limit() {
        // (1 - t) / (1 + t): limit 1, positive near 0+
        let f = c(1, 1).sub(&RatFun::var());
        let g = c(1, 1).add(&RatFun::var());
        let q = RatFun::new(
            f.num.mul(&g.den),
            g.num.mul(&f.den),
        )
        .unwrap();
        assert_eq!(q.tail_limit(), TailLimit::Finite(rat(1, 1)));
        assert_eq!(q.tail_sign(), TailSign::Positive);

        // -1/t diverges to -infinity
        let r = c(-1, 1).mul(&RatFun::var().recip().unwrap());
        assert_eq!(r.tail_limit(), TailLimit::MinusInfinity);
        assert_eq!(r.tail_sign(), TailSign::Negative);

        // t^2 - t is negative near 0+ with limit 0
        let s = RatFun::var().mul(&RatFun::var()).sub(&RatFun::var());
        assert_eq!(s.tail_sign(), TailSign::Negative);
        assert_eq!(s.tail_limit(), TailLimit::Finite(rat(0, 1)));
        assert_eq!(s.tail_abs().tail_sign(), TailSign::Positive);
    }

    #[test]
    fn eval_matches_formula() {
        // (1 + 2t) / (3 - t) at t = 1/2
        let f = RatFun::new(
            Poly::constant(rat(1, 1)).add(&Poly::var().mul(&Poly::constant(rat(2, 1)))),
            Poly::constant(rat(3, 1)).sub(&Poly::var()),
        )
        .unwrap();
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), rat(4, 5));
        assert_eq!(f.tail_limit(), TailLimit::Finite(rat(1, 3)));
    }
}
