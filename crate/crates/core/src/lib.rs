//! Exact-rational kernel for weak vector equilibrium problems in
//! cone-ordered finite-dimensional spaces.
//!
//! Everything here computes over arbitrary-precision rationals; no verdict
//! ever depends on floating point. The crate is `no_std` (alloc required)
//! so the kernel can be embedded; IO and file formats live in the companion
//! CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod cone;
pub mod domain;
pub mod equilibrium;
pub mod error;
pub mod expr;
pub mod levelsets;
pub mod linalg;
pub mod maps;
pub mod rational;
pub mod ratfun;
pub mod semicontinuity;
pub mod seq;
pub mod verdict;

pub use cone::ConeSpec;
pub use domain::BoxDomain;
pub use error::KernelError;
pub use maps::PiecewiseMap;
pub use rational::{rat, RationalVec};
pub use seq::SequenceSpec;
pub use verdict::{SamplingBudget, Verdict};

/// Arbitrary-precision rational scalar used throughout the kernel.
pub type Rational = num_rational::BigRational;
