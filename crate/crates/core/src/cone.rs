//! Polyhedral cones given by interior-describing halfspace normals, and the
//! order predicates used by every checker.
//!
//! Representation contract: `C = {z : <a_j, z> >= 0 for all j}` and
//! `int C = {z : <a_j, z> > 0 for all j}`. Validation requires the strict
//! system to be feasible and the normals to have full rank, which under this
//! contract makes the cone pointed with nonempty interior.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{KernelError, Result};
use crate::linalg::{fm_feasible, rank, LinIneq};
use crate::rational::{rat, RationalVec};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    dim: usize,
    normals: Vec<RationalVec>,
    /// Strictly feasible point, stored for built-ins and after validation.
    witness: Option<RationalVec>,
    name: Option<&'static str>,
}

/// Outcome of `cone_validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeValidation {
    Valid { witness: RationalVec, rank: usize },
    NotPointed { rank: usize },
    EmptyInterior,
}

impl ConeSpec {
    pub fn new(dim: usize, normals: Vec<RationalVec>) -> Result<Self> {
        if dim == 0 {
            return Err(KernelError::InvalidSpec(String::from("cone dim must be positive")));
        }
        if normals.is_empty() {
            return Err(KernelError::InvalidSpec(String::from(
                "cone needs at least one normal",
            )));
        }
        for n in &normals {
            n.check_dim(dim)?;
        }
        Ok(ConeSpec {
            dim,
            normals,
            witness: None,
            name: None,
        })
    }

    /// Nonnegative orthant of dimension `n`, with standard basis normals.
    pub fn orthant(n: usize) -> Self {
        let normals = (0..n)
            .map(|i| {
                RationalVec::new(
                    (0..n)
                        .map(|j| if i == j { rat(1, 1) } else { rat(0, 1) })
                        .collect(),
                )
            })
            .collect();
        ConeSpec {
            dim: n,
            normals,
            witness: Some(RationalVec::new(alloc::vec![rat(1, 1); n])),
            name: Some("orthant"),
        }
    }

    /// The planar cone `{(z1, z2) : |z1| <= z2}`, normals (1,1) and (-1,1).
    pub fn ice_cream2() -> Self {
        ConeSpec {
            dim: 2,
            normals: alloc::vec![
                RationalVec::from_i64(&[(1, 1), (1, 1)]),
                RationalVec::from_i64(&[(-1, 1), (1, 1)]),
            ],
            witness: Some(RationalVec::from_i64(&[(0, 1), (1, 1)])),
            name: Some("icecream2"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[RationalVec] {
        &self.normals
    }

    pub fn builtin_name(&self) -> Option<&'static str> {
        self.name
    }

    /// Stored or computed strictly interior point; available after a
    /// successful `validate`.
    pub fn interior_witness(&self) -> Option<&RationalVec> {
        self.witness.as_ref()
    }

    /// `z in C`: all normal products nonnegative. Exact.
    pub fn contains(&self, z: &RationalVec) -> Result<bool> {
        z.check_dim(self.dim)?;
        for n in &self.normals {
            if n.dot(z)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `z in int C`: all normal products strictly positive. Exact.
    pub fn interior_contains(&self, z: &RationalVec) -> Result<bool> {
        z.check_dim(self.dim)?;
        for n in &self.normals {
            if !n.dot(z)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The central solution predicate: `z not in -int C`.
    pub fn not_in_neg_interior(&self, z: &RationalVec) -> Result<bool> {
        Ok(!self.interior_contains(&-z)?)
    }

    /// `z1 <=_C z2`, i.e. `z2 - z1 in C`.
    pub fn leq(&self, z1: &RationalVec, z2: &RationalVec) -> Result<bool> {
        z1.check_dim(self.dim)?;
        z2.check_dim(self.dim)?;
        self.contains(&(z2 - z1))
    }

    /// `z1 <_C z2` in the interior sense, i.e. `z2 - z1 in int C`.
    pub fn lt_interior(&self, z1: &RationalVec, z2: &RationalVec) -> Result<bool> {
        z1.check_dim(self.dim)?;
        z2.check_dim(self.dim)?;
        self.interior_contains(&(z2 - z1))
    }

    /// Check pointedness (full-rank normals) and interior nonemptiness
    /// (strictly feasible point, exhibited). Caches the witness on success.
    pub fn validate(&mut self) -> ConeValidation {
        let r = rank(&self.normals);
        if r < self.dim {
            return ConeValidation::NotPointed { rank: r };
        }
        if let Some(w) = &self.witness {
            return ConeValidation::Valid {
                witness: w.clone(),
                rank: r,
            };
        }
        let system: Vec<LinIneq> = self
            .normals
            .iter()
            .map(|n| LinIneq::gt(n.coords().to_vec(), Rational::zero()))
            .collect();
        match fm_feasible(self.dim, &system) {
            Some(z) => {
                let w = RationalVec::new(z);
                self.witness = Some(w.clone());
                ConeValidation::Valid { witness: w, rank: r }
            }
            None => ConeValidation::EmptyInterior,
        }
    }

    /// Validation without mutation, for immutable call sites.
    pub fn validated(&self) -> ConeValidation {
        let mut c = self.clone();
        c.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_membership() {
        let c = ConeSpec::orthant(2);
        assert!(c.contains(&RationalVec::from_i64(&[(1, 1), (0, 1)])).unwrap());
        assert!(!c.interior_contains(&RationalVec::from_i64(&[(0, 1), (0, 1)])).unwrap());
        assert!(c
            .leq(
                &RationalVec::from_i64(&[(0, 1), (0, 1)]),
                &RationalVec::from_i64(&[(1, 1), (1, 1)])
            )
            .unwrap());
    }

    #[test]
    fn ice_cream_boundary_point() {
        let c = ConeSpec::ice_cream2();
        let z = RationalVec::from_i64(&[(-3, 2), (3, 2)]);
        assert!(c.contains(&z).unwrap());
        assert!(!c.interior_contains(&z).unwrap());
        assert!(!c.contains(&RationalVec::from_i64(&[(1, 1), (-1, 1)])).unwrap());
        assert!(c.interior_contains(&RationalVec::from_i64(&[(0, 1), (1, 1)])).unwrap());
        // lt_interior (0,0) < (1,2)
        assert!(c
            .lt_interior(
                &RationalVec::zero(2),
                &RationalVec::from_i64(&[(1, 1), (2, 1)])
            )
            .unwrap());
        assert!(c
            .leq(
                &RationalVec::from_i64(&[(1, 1), (0, 1)]),
                &RationalVec::from_i64(&[(1, 1), (0, 1)])
            )
            .unwrap());
    }

    #[test]
    fn neg_interior_predicate() {
        let c = ConeSpec::orthant(2);
        assert!(!c.not_in_neg_interior(&RationalVec::from_i64(&[(-1, 3), (-1, 3)])).unwrap());
        assert!(c.not_in_neg_interior(&RationalVec::from_i64(&[(0, 1), (2, 3)])).unwrap());
        assert!(!c.not_in_neg_interior(&RationalVec::from_i64(&[(-1, 1), (-1, 2)])).unwrap());
    }

    #[test]
    fn validation() {
        let mut orthant = ConeSpec::orthant(2);
        match orthant.validate() {
            ConeValidation::Valid { witness, rank } => {
                assert_eq!(rank, 2);
                assert_eq!(witness, RationalVec::from_i64(&[(1, 1), (1, 1)]));
            }
            other => panic!("unexpected: {other:?}"),
        }
        let mut ice = ConeSpec::ice_cream2();
        match ice.validate() {
            ConeValidation::Valid { witness, .. } => {
                assert_eq!(witness, RationalVec::from_i64(&[(0, 1), (1, 1)]));
            }
            other => panic!("unexpected: {other:?}"),
        }
        // halfplane: rank 1 < 2, not pointed under the representation contract
        let mut half =
            ConeSpec::new(2, alloc::vec![RationalVec::from_i64(&[(1, 1), (0, 1)])]).unwrap();
        assert_eq!(half.validate(), ConeValidation::NotPointed { rank: 1 });
        // opposing normals: full rank but empty interior
        let mut empty = ConeSpec::new(
            2,
            alloc::vec![
                RationalVec::from_i64(&[(1, 1), (0, 1)]),
                RationalVec::from_i64(&[(-1, 1), (0, 1)]),
                RationalVec::from_i64(&[(0, 1), (1, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(empty.validate(), ConeValidation::EmptyInterior);
    }
}
