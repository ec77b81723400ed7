//! Exact rational linear algebra: Gaussian-elimination rank and
//! Fourier-Motzkin feasibility for systems of (strict) linear inequalities.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::RationalVec;
use crate::Rational;

/// Rank of the matrix whose rows are the given vectors, by exact
/// fraction-free Gaussian elimination.
pub fn rank(rows: &[RationalVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].dim();
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pv = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &pv;
                for c in col..ncols {
                    let sub = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// One linear inequality `coeffs . z >= rhs` (`> rhs` when `strict`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinIneq {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl LinIneq {
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinIneq {
            coeffs,
            rhs,
            strict: false,
        }
    }

    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinIneq {
            coeffs,
            rhs,
            strict: true,
        }
    }

    fn holds_at(&self, z: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(z).map(|(c, v)| c * v).sum();
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// Decide feasibility of a system of linear inequalities over the rationals
/// by Fourier-Motzkin elimination; on success, return an exact witness.
pub fn fm_feasible(nvars: usize, system: &[LinIneq]) -> Option<Vec<Rational>> {
    // stages[k] holds the system before eliminating variable k (vars k..nvars live)
    let mut stages: Vec<Vec<LinIneq>> = Vec::with_capacity(nvars + 1);
    stages.push(system.to_vec());
    for var in (0..nvars).rev() {
        let cur = stages.last().unwrap();
        let mut next: Vec<LinIneq> = Vec::new();
        let mut lowers: Vec<&LinIneq> = Vec::new();
        let mut uppers: Vec<&LinIneq> = Vec::new();
        for ineq in cur {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                next.push(ineq.clone());
            } else if c.is_positive() {
                lowers.push(ineq);
            } else {
                uppers.push(ineq);
            }
        }
        // combine each (lower, upper) pair: lower bound <= upper bound
        for lo in &lowers {
            for up in &uppers {
                let cl = &lo.coeffs[var];
                let cu = &up.coeffs[var]; // negative
                let scale = -(cl / cu); // positive
                let mut coeffs: Vec<Rational> = Vec::with_capacity(nvars);
                for i in 0..nvars {
                    if i == var {
                        coeffs.push(Rational::zero());
                    } else {
                        coeffs.push(&lo.coeffs[i] + &(&scale * &up.coeffs[i]));
                    }
                }
                let rhs = &lo.rhs + &(&scale * &up.rhs);
                next.push(LinIneq {
                    coeffs,
                    rhs,
                    strict: lo.strict || up.strict,
                });
            }
        }
        stages.push(next);
    }
    // all variables eliminated: constraints are 0 >= rhs (or > rhs)
    for ineq in stages.last().unwrap() {
        let ok = if ineq.strict {
            ineq.rhs.is_negative()
        } else {
            !ineq.rhs.is_positive()
        };
        if !ok {
            return None;
        }
    }
    // back-substitute, choosing a point in each variable's open/closed interval
    let mut z = alloc::vec![Rational::zero(); nvars];
    for var in 0..nvars {
        // variable `var` was eliminated going from stages[nvars-1-var] to
        // stages[nvars-var]; its bounds come from the earlier stage with
        // vars var+1.. already fixed
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for ineq in &stages[nvars - 1 - var] {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let rest: Rational = (0..nvars)
                .filter(|&i| i != var)
                .map(|i| &ineq.coeffs[i] * &z[i])
                .sum();
            let bound = (&ineq.rhs - &rest) / c;
            if c.is_positive() {
                // z[var] >= bound (or >)
                let tighter = match &lower {
                    None => true,
                    Some((b, s)) => bound > *b || (bound == *b && ineq.strict && !s),
                };
                if tighter {
                    lower = Some((bound, ineq.strict));
                }
            } else {
                // z[var] <= bound (or <)
                let tighter = match &upper {
                    None => true,
                    Some((b, s)) => bound < *b || (bound == *b && ineq.strict && !s),
                };
                if tighter {
                    upper = Some((bound, ineq.strict));
                }
            }
        }
        z[var] = match (lower, upper) {
            (None, None) => Rational::zero(),
            (Some((lo, lo_strict)), None) => {
                if lo_strict {
                    &lo + &Rational::one()
                } else {
                    lo
                }
            }
            (None, Some((up, up_strict))) => {
                if up_strict {
                    &up - &Rational::one()
                } else {
                    up
                }
            }
            (Some((lo, lo_strict)), Some((up, up_strict))) => {
                if lo == up {
                    debug_assert!(!lo_strict && !up_strict);
                    lo
                } else {
                    (&lo + &up) / rat2()
                }
            }
        };
    }
    debug_assert!(system.iter().all(|i| i.holds_at(&z)));
    if system.iter().all(|i| i.holds_at(&z)) {
        Some(z)
    } else {
        None
    }
}

fn rat2() -> Rational {
    Rational::one() + Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn vecr(v: &[(i64, i64)]) -> RationalVec {
        RationalVec::from_i64(v)
    }

    #[test]
    fn rank_basic() {
        assert_eq!(rank(&[vecr(&[(1, 1), (0, 1)]), vecr(&[(0, 1), (1, 1)])]), 2);
        assert_eq!(rank(&[vecr(&[(1, 1), (1, 1)]), vecr(&[(2, 1), (2, 1)])]), 1);
        assert_eq!(rank(&[vecr(&[(1, 1), (1, 1)]), vecr(&[(-1, 1), (1, 1)])]), 2);
        assert_eq!(rank(&[vecr(&[(0, 1), (0, 1)])]), 0);
    }

    #[test]
    fn fm_strict_cone_interior() {
        // ice-cream cone interior: z1 + z2 > 0, -z1 + z2 > 0
        let sys = [
            LinIneq::gt(alloc::vec![rat(1, 1), rat(1, 1)], rat(0, 1)),
            LinIneq::gt(alloc::vec![rat(-1, 1), rat(1, 1)], rat(0, 1)),
        ];
        let z = fm_feasible(2, &sys).expect("feasible");
        assert!(&z[0] + &z[1] > rat(0, 1));
        assert!(&z[1] - &z[0] > rat(0, 1));
    }

    #[test]
    fn fm_infeasible() {
        // z >= 1 and z <= 0
        let sys = [
            LinIneq::ge(alloc::vec![rat(1, 1)], rat(1, 1)),
            LinIneq::ge(alloc::vec![rat(-1, 1)], rat(0, 1)),
        ];
        assert!(fm_feasible(1, &sys).is_none());
        // boundary feasible: z >= 1 and z <= 1
        let sys = [
            LinIneq::ge(alloc::vec![rat(1, 1)], rat(1, 1)),
            LinIneq::ge(alloc::vec![rat(-1, 1)], rat(-1, 1)),
        ];
        assert_eq!(fm_feasible(1, &sys).unwrap(), alloc::vec![rat(1, 1)]);
        // strict makes it infeasible
        let sys = [
            LinIneq::gt(alloc::vec![rat(1, 1)], rat(1, 1)),
            LinIneq::ge(alloc::vec![rat(-1, 1)], rat(-1, 1)),
        ];
        assert!(fm_feasible(1, &sys).is_none());
    }

    #[test]
    fn fm_halfplane_not_pointed_is_still_feasible() {
        let sys = [LinIneq::gt(alloc::vec![rat(1, 1), rat(0, 1)], rat(0, 1))];
        assert!(fm_feasible(2, &sys).is_some());
    }
}
