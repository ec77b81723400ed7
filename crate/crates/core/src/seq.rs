//! Exactly evaluable rational sequences x_n -> x0 with computable limits,
//! given per coordinate by a Mobius formula n -> (alpha*n + beta)/(gamma*n + delta).
//!
//! Substituting t = 1/n turns each coordinate into a rational function of t
//! ((alpha + beta*t)/(gamma + delta*t)), so limits and eventual signs are
//! decided symbolically by `ratfun`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::domain::BoxDomain;
use crate::error::{KernelError, Result};
use crate::rational::RationalVec;
use crate::ratfun::{Poly, RatFun, TailLimit};
use crate::Rational;

/// One coordinate formula `n -> (alpha*n + beta)/(gamma*n + delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl Mobius {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Result<Self> {
        if gamma.is_zero() && delta.is_zero() {
            return Err(KernelError::InvalidSpec(String::from(
                "sequence formula has zero denominator",
            )));
        }
        Ok(Mobius {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn constant(c: Rational) -> Self {
        Mobius {
            alpha: c,
            beta: Rational::zero(),
            gamma: Rational::one(),
            delta: Rational::zero(),
        }
    }

    /// Value at index `n >= 1`; `None` if the denominator vanishes there.
    pub fn term(&self, n: u64) -> Option<Rational> {
        let n = Rational::from(BigInt::from(n));
        let den = &(&self.gamma * &n) + &self.delta;
        if den.is_zero() {
            None
        } else {
            Some((&(&self.alpha * &n) + &self.beta) / den)
        }
    }

    /// The coordinate as a rational function of t = 1/n.
    pub fn as_ratfun(&self) -> RatFun {
        let num = Poly::constant(self.alpha.clone())
            .add(&Poly::var().mul(&Poly::constant(self.beta.clone())));
        let den = Poly::constant(self.gamma.clone())
            .add(&Poly::var().mul(&Poly::constant(self.delta.clone())));
        RatFun::new(num, den).expect("nonzero denominator by construction")
    }

    /// Limit as n -> infinity.
    pub fn limit(&self) -> TailLimit {
        self.as_ratfun().tail_limit()
    }

    /// The denominator gamma*n + delta is nonzero for every integer n >= 1.
    fn denominator_safe(&self) -> bool {
        if self.gamma.is_zero() {
            return !self.delta.is_zero();
        }
        let root = -(&self.delta / &self.gamma);
        !(root.is_integer() && root >= Rational::one())
    }
}

/// A sequence in Q^d with declared exact limit, all terms exactly evaluable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    coords: Vec<Mobius>,
    limit: RationalVec,
    /// Terms equal to the limit are permitted (degenerate/constant nets).
    allow_equal_limit: bool,
}

impl SequenceSpec {
    /// Build and validate: denominators never vanish at integer indices,
    /// and the symbolic limit of every coordinate equals the declared limit.
    pub fn new(coords: Vec<Mobius>, limit: RationalVec, allow_equal_limit: bool) -> Result<Self> {
        if coords.len() != limit.dim() {
            return Err(KernelError::DimensionMismatch {
                expected: limit.dim(),
                got: coords.len(),
            });
        }
        for (i, m) in coords.iter().enumerate() {
            if !m.denominator_safe() {
                return Err(KernelError::InvalidSpec(String::from(
                    "sequence denominator vanishes at an integer index",
                )));
            }
            match m.limit() {
                TailLimit::Finite(l) if &l == limit.coord(i) => {}
                _ => return Err(KernelError::LimitMismatch),
            }
        }
        Ok(SequenceSpec {
            coords,
            limit,
            allow_equal_limit,
        })
    }

    /// The constant sequence at `p` (degenerate net).
    pub fn constant(p: RationalVec) -> Self {
        SequenceSpec {
            coords: p.coords().iter().cloned().map(Mobius::constant).collect(),
            limit: p,
            allow_equal_limit: true,
        }
    }

    /// The segment approach x_n = x0 + d/(n+1); requires d != 0.
    pub fn toward(x0: &RationalVec, d: &RationalVec) -> Result<Self> {
        d.check_dim(x0.dim())?;
        if d.is_zero() {
            return Err(KernelError::InvalidSpec(String::from(
                "approach direction must be nonzero",
            )));
        }
        // x0_i + d_i/(n+1) = (x0_i*n + x0_i + d_i)/(n + 1)
        let coords = (0..x0.dim())
            .map(|i| Mobius {
                alpha: x0.coord(i).clone(),
                beta: x0.coord(i) + d.coord(i),
                gamma: Rational::one(),
                delta: Rational::one(),
            })
            .collect();
        Ok(SequenceSpec {
            coords,
            limit: x0.clone(),
            allow_equal_limit: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn limit(&self) -> &RationalVec {
        &self.limit
    }

    pub fn coords(&self) -> &[Mobius] {
        &self.coords
    }

    pub fn allows_equal_limit(&self) -> bool {
        self.allow_equal_limit
    }

    /// Term at index n >= 1 (exact).
    pub fn term(&self, n: u64) -> Result<RationalVec> {
        let mut out = Vec::with_capacity(self.coords.len());
        for m in &self.coords {
            out.push(m.term(n).ok_or(KernelError::PoleHit)?);
        }
        Ok(RationalVec::new(out))
    }

    /// All coordinates as rational functions of t = 1/n.
    pub fn as_ratfun(&self) -> Vec<RatFun> {
        self.coords.iter().map(Mobius::as_ratfun).collect()
    }

    /// Check terms 1..=depth: inside the domain (if given) and, unless
    /// degenerate terms are allowed, distinct from the limit.
    pub fn validate_terms(&self, domain: Option<&BoxDomain>, depth: u32) -> Result<()> {
        for n in 1..=u64::from(depth.max(1)) {
            let x = self.term(n)?;
            if let Some(d) = domain {
                if !d.contains(&x)? {
                    return Err(KernelError::OutsideDomain);
                }
            }
            if !self.allow_equal_limit && x == self.limit {
                return Err(KernelError::InvalidSpec(String::from(
                    "sequence term equals the declared limit",
                )));
            }
        }
        Ok(())
    }
}

/// Deterministic family of approach sequences to `x0` inside `domain`:
/// axis-aligned one-sided approaches with full reach, segment approaches
/// toward every box vertex, and (for richer budgets) slower scaled variants
/// d/m of each direction. A direction count of 0 yields the empty family.
pub fn generate_sequences(
    x0: &RationalVec,
    domain: &BoxDomain,
    direction_count: u32,
) -> Result<Vec<SequenceSpec>> {
    x0.check_dim(domain.dim())?;
    if !domain.contains(x0)? {
        return Err(KernelError::OutsideDomain);
    }
    if direction_count == 0 {
        return Ok(Vec::new());
    }
    let mut directions: Vec<RationalVec> = Vec::new();
    let push = |d: RationalVec, directions: &mut Vec<RationalVec>| {
        if !d.is_zero() && !directions.contains(&d) {
            directions.push(d);
        }
    };
    for i in 0..domain.dim() {
        for target in [domain.lower().coord(i), domain.upper().coord(i)] {
            let mut c = alloc::vec![Rational::zero(); domain.dim()];
            c[i] = target - x0.coord(i);
            push(RationalVec::new(c), &mut directions);
        }
    }
    for v in domain.vertices() {
        push(&v - x0, &mut directions);
    }
    let mut out = Vec::new();
    for d in &directions {
        for m in 1..=u64::from(direction_count) {
            let scaled = d.scale(&(Rational::one() / Rational::from(BigInt::from(m))));
            out.push(SequenceSpec::toward(x0, &scaled)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn toward_matches_formula() {
        // x0 = 1/2 on [0,1], d = 1/2: x_n = 1/2 + 1/(2(n+1))
        let s = SequenceSpec::toward(
            &RationalVec::from_i64(&[(1, 2)]),
            &RationalVec::from_i64(&[(1, 2)]),
        )
        .unwrap();
        assert_eq!(s.term(1).unwrap(), RationalVec::from_i64(&[(3, 4)]));
        assert_eq!(s.term(3).unwrap(), RationalVec::from_i64(&[(5, 8)]));
        assert_eq!(s.limit(), &RationalVec::from_i64(&[(1, 2)]));
        let d = BoxDomain::interval(rat(0, 1), rat(1, 1), 4).unwrap();
        s.validate_terms(Some(&d), 32).unwrap();
    }

    #[test]
    fn mobius_paper_style() {
        // x_n = n/(2n+1) -> 1/2 from below
        let m = Mobius::new(rat(1, 1), rat(0, 1), rat(2, 1), rat(1, 1)).unwrap();
        assert_eq!(m.term(1).unwrap(), rat(1, 3));
        assert_eq!(m.term(3).unwrap(), rat(3, 7));
        assert_eq!(m.limit(), TailLimit::Finite(rat(1, 2)));
        let s = SequenceSpec::new(
            alloc::vec![m],
            RationalVec::from_i64(&[(1, 2)]),
            false,
        )
        .unwrap();
        s.validate_terms(None, 16).unwrap();
    }

    #[test]
    fn limit_mismatch_rejected() {
        let m = Mobius::new(rat(1, 1), rat(0, 1), rat(2, 1), rat(1, 1)).unwrap();
        assert!(matches!(
            SequenceSpec::new(alloc::vec![m], RationalVec::from_i64(&[(1, 3)]), false),
            Err(KernelError::LimitMismatch)
        ));
    }

    #[test]
    fn generated_family_on_interval() {
        let d = BoxDomain::interval(rat(-1, 1), rat(1, 1), 4).unwrap();
        let x0 = RationalVec::from_i64(&[(0, 1)]);
        let fam = generate_sequences(&x0, &d, 1).unwrap();
        // both one-sided approaches with full reach: x_n = ±1/(n+1)
        let first_terms: Vec<RationalVec> = fam.iter().map(|s| s.term(1).unwrap()).collect();
        assert!(first_terms.contains(&RationalVec::from_i64(&[(1, 2)])));
        assert!(first_terms.contains(&RationalVec::from_i64(&[(-1, 2)])));
        assert!(generate_sequences(&x0, &d, 0).unwrap().is_empty());
        for s in &fam {
            s.validate_terms(Some(&d), 16).unwrap();
        }
    }

    #[test]
    fn constant_sequence() {
        let p = RationalVec::from_i64(&[(1, 2), (3, 4)]);
        let s = SequenceSpec::constant(p.clone());
        assert_eq!(s.term(7).unwrap(), p);
        assert_eq!(s.limit(), &p);
        s.validate_terms(None, 8).unwrap();
    }
}
