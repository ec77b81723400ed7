//! Exact rational scalars and fixed-dimension rational vectors.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{KernelError, Result};
use crate::Rational;

/// Shorthand constructor for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a rational literal of the form `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| KernelError::InvalidSpec(alloc::format!("bad rational literal `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| KernelError::InvalidSpec(alloc::format!("bad rational literal `{s}`")))?;
    if d.is_zero() {
        return Err(KernelError::InvalidSpec(alloc::format!(
            "zero denominator in `{s}`"
        )));
    }
    Ok(Rational::new(n, d))
}

/// Canonical textual form (`p` or `p/q` with positive `q`).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVec {
    coords: Vec<Rational>,
}

impl RationalVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVec { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RationalVec {
            coords: alloc::vec![Rational::zero(); dim],
        }
    }

    pub fn from_i64(coords: &[(i64, i64)]) -> Self {
        RationalVec {
            coords: coords.iter().map(|&(n, d)| rat(n, d)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            Err(KernelError::DimensionMismatch {
                expected,
                got: self.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// Exact inner product; dims must match.
    pub fn dot(&self, other: &RationalVec) -> Result<Rational> {
        other.check_dim(self.dim())?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn scale(&self, t: &Rational) -> RationalVec {
        RationalVec {
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }

    /// Max-norm, used for deterministic "nearest" tie-breaking.
    pub fn linf_norm(&self) -> Rational {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add<&RationalVec> for &RationalVec {
    type Output = RationalVec;
    fn add(self, other: &RationalVec) -> RationalVec {
        assert_eq!(self.dim(), other.dim(), "vector dims must match");
        RationalVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&RationalVec> for &RationalVec {
    type Output = RationalVec;
    fn sub(self, other: &RationalVec) -> RationalVec {
        assert_eq!(self.dim(), other.dim(), "vector dims must match");
        RationalVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RationalVec {
    type Output = RationalVec;
    fn neg(self) -> RationalVec {
        RationalVec {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Rational> for &RationalVec {
    type Output = RationalVec;
    fn mul(self, t: &Rational) -> RationalVec {
        self.scale(t)
    }
}

impl fmt::Display for RationalVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["1/2", "-3/4", "0", "7", "-12/5"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn dot_checks_dims() {
        let a = RationalVec::from_i64(&[(1, 1), (2, 1)]);
        let b = RationalVec::from_i64(&[(1, 2)]);
        assert!(a.dot(&b).is_err());
        let c = RationalVec::from_i64(&[(1, 2), (1, 3)]);
        assert_eq!(a.dot(&c).unwrap(), rat(7, 6));
    }
}
