//! Rational box domains with exact per-axis grids.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{KernelError, Result};
use crate::rational::RationalVec;
use crate::Rational;

/// Axis-aligned box `[lower, upper]` with an exact rational grid:
/// axis `i` carries the points `lower_i + k * (upper_i - lower_i) / grid_counts_i`
/// for `k = 0..=grid_counts_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDomain {
    lower: RationalVec,
    upper: RationalVec,
    grid_counts: Vec<u32>,
}

impl BoxDomain {
    pub fn new(lower: RationalVec, upper: RationalVec, grid_counts: Vec<u32>) -> Result<Self> {
        let dim = lower.dim();
        upper.check_dim(dim)?;
        if grid_counts.len() != dim {
            return Err(KernelError::DimensionMismatch {
                expected: dim,
                got: grid_counts.len(),
            });
        }
        if grid_counts.iter().any(|&c| c == 0) {
            return Err(KernelError::InvalidSpec(String::from(
                "grid counts must be positive",
            )));
        }
        for i in 0..dim {
            if lower.coord(i) > upper.coord(i) {
                return Err(KernelError::InvalidSpec(String::from(
                    "box lower bound exceeds upper bound",
                )));
            }
        }
        Ok(BoxDomain {
            lower,
            upper,
            grid_counts,
        })
    }

    /// 1-D interval helper.
    pub fn interval(lo: Rational, hi: Rational, grid: u32) -> Result<Self> {
        BoxDomain::new(
            RationalVec::new(alloc::vec![lo]),
            RationalVec::new(alloc::vec![hi]),
            alloc::vec![grid],
        )
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &RationalVec {
        &self.lower
    }

    pub fn upper(&self) -> &RationalVec {
        &self.upper
    }

    pub fn grid_counts(&self) -> &[u32] {
        &self.grid_counts
    }

    pub fn contains(&self, p: &RationalVec) -> Result<bool> {
        p.check_dim(self.dim())?;
        Ok((0..self.dim())
            .all(|i| self.lower.coord(i) <= p.coord(i) && p.coord(i) <= self.upper.coord(i)))
    }

    /// `other` lies componentwise inside `self`.
    pub fn contains_box(&self, other: &BoxDomain) -> Result<bool> {
        Ok(self.contains(&other.lower)? && self.contains(&other.upper)?)
    }

    pub fn axis_step(&self, i: usize) -> Rational {
        (self.upper.coord(i) - self.lower.coord(i))
            / Rational::from(BigInt::from(self.grid_counts[i]))
    }

    pub fn grid_point_count(&self) -> usize {
        self.grid_counts
            .iter()
            .map(|&c| c as usize + 1)
            .product()
    }

    /// Grid point for a flat lexicographic index (last axis fastest).
    pub fn grid_point(&self, flat: usize) -> RationalVec {
        let dim = self.dim();
        let mut idx = alloc::vec![0usize; dim];
        let mut rem = flat;
        for i in (0..dim).rev() {
            let n = self.grid_counts[i] as usize + 1;
            idx[i] = rem % n;
            rem /= n;
        }
        RationalVec::new(
            (0..dim)
                .map(|i| {
                    self.lower.coord(i)
                        + &(&self.axis_step(i) * &Rational::from(BigInt::from(idx[i])))
                })
                .collect(),
        )
    }

    /// All grid points in lexicographic order.
    pub fn grid_points(&self) -> Vec<RationalVec> {
        (0..self.grid_point_count())
            .map(|k| self.grid_point(k))
            .collect()
    }

    /// Exact flat index of a point, if it is a grid point.
    pub fn grid_index(&self, p: &RationalVec) -> Option<usize> {
        if !self.contains(p).ok()? {
            return None;
        }
        let mut flat = 0usize;
        for i in 0..self.dim() {
            let step = self.axis_step(i);
            if num_traits::Zero::is_zero(&step) {
                if p.coord(i) != self.lower.coord(i) {
                    return None;
                }
                flat *= self.grid_counts[i] as usize + 1;
                continue;
            }
            let q = (p.coord(i) - self.lower.coord(i)) / step;
            if !q.is_integer() {
                return None;
            }
            let k: usize = num_traits::ToPrimitive::to_usize(&q.to_integer())?;
            flat = flat * (self.grid_counts[i] as usize + 1) + k;
        }
        Some(flat)
    }

    /// All corner points of the box.
    pub fn vertices(&self) -> Vec<RationalVec> {
        let dim = self.dim();
        (0..(1usize << dim))
            .map(|mask| {
                RationalVec::new(
                    (0..dim)
                        .map(|i| {
                            if mask & (1 << i) != 0 {
                                self.upper.coord(i).clone()
                            } else {
                                self.lower.coord(i).clone()
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn interval_grid() {
        let d = BoxDomain::interval(rat(-1, 1), rat(1, 1), 8).unwrap();
        assert_eq!(d.grid_point_count(), 9);
        assert_eq!(d.grid_point(0), RationalVec::from_i64(&[(-1, 1)]));
        assert_eq!(d.grid_point(2), RationalVec::from_i64(&[(-1, 2)]));
        assert_eq!(d.grid_point(8), RationalVec::from_i64(&[(1, 1)]));
        assert_eq!(d.grid_index(&RationalVec::from_i64(&[(-1, 2)])), Some(2));
        assert_eq!(d.grid_index(&RationalVec::from_i64(&[(1, 3)])), None);
        assert!(d.contains(&RationalVec::from_i64(&[(1, 3)])).unwrap());
        assert!(!d.contains(&RationalVec::from_i64(&[(3, 2)])).unwrap());
    }

    #[test]
    fn square_grid_order() {
        let d = BoxDomain::new(
            RationalVec::from_i64(&[(0, 1), (0, 1)]),
            RationalVec::from_i64(&[(1, 1), (1, 1)]),
            alloc::vec![2, 2],
        )
        .unwrap();
        let pts = d.grid_points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], RationalVec::from_i64(&[(0, 1), (0, 1)]));
        assert_eq!(pts[1], RationalVec::from_i64(&[(0, 1), (1, 2)]));
        assert_eq!(pts[3], RationalVec::from_i64(&[(1, 2), (0, 1)]));
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(d.grid_index(p), Some(k));
        }
    }

    #[test]
    fn vertices_of_square() {
        let d = BoxDomain::new(
            RationalVec::from_i64(&[(-1, 1), (0, 1)]),
            RationalVec::from_i64(&[(1, 1), (1, 1)]),
            alloc::vec![1, 1],
        )
        .unwrap();
        assert_eq!(d.vertices().len(), 4);
    }
}
