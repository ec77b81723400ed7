//! Grid-restricted level sets of a bifunction and a closedness probe.
//!
//! For a bifunction g and a fixed second argument y, the level set G(y) is
//! the set of x with g(x, y) not in -int C. On a grid it is stored as a
//! bitmask; the closedness probe anchors escape sequences at mask flip
//! points and decides tail membership symbolically, so a `Fails` verdict
//! carries an exactly replayable escaping sequence.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cone::ConeSpec;
use crate::domain::BoxDomain;
use crate::error::{KernelError, Result};
use crate::maps::{MapArity, PiecewiseMap};
use crate::rational::RationalVec;
use crate::ratfun::TailSign;
use crate::semicontinuity::generate;
use crate::verdict::{Certificate, SamplingBudget, Verdict};

/// A subset of a box grid stored as a bitmask in flat grid order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSet {
    domain: BoxDomain,
    mask: Vec<bool>,
}

impl GridSet {
    pub fn new(domain: BoxDomain, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != domain.grid_point_count() {
            return Err(KernelError::ShapeMismatch);
        }
        Ok(GridSet { domain, mask })
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    /// Membership of an exact grid point; None if off-grid.
    pub fn contains_point(&self, p: &RationalVec) -> Option<bool> {
        self.domain.grid_index(p).map(|i| self.mask[i])
    }

    /// Member points in flat grid order.
    pub fn points(&self) -> Vec<RationalVec> {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then(|| self.domain.grid_point(i)))
            .collect()
    }

    /// Flat indices where membership flips between axis neighbors, listed
    /// as (outside, inside) pairs.
    pub fn flip_pairs(&self) -> Vec<(usize, usize)> {
        let counts = self.domain.grid_counts();
        let dim = self.domain.dim();
        let mut strides = alloc::vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (counts[i + 1] as usize + 1);
        }
        let mut out = Vec::new();
        for flat in 0..self.mask.len() {
            let mut rem = flat;
            for i in 0..dim {
                let n = counts[i] as usize + 1;
                let k = rem / strides[i] % n;
                rem %= strides[i];
                let _ = rem;
                if k + 1 < n {
                    let nb = flat + strides[i];
                    match (self.mask[flat], self.mask[nb]) {
                        (false, true) => out.push((flat, nb)),
                        (true, false) => out.push((nb, flat)),
                        _ => {}
                    }
                }
            }
        }
        out
    }
}

fn fix_y(g: &PiecewiseMap, y: &RationalVec) -> Result<PiecewiseMap> {
    if g.arity() != MapArity::Bifunction {
        return Err(KernelError::ShapeMismatch);
    }
    g.fix_second(y)
}

/// The grid restriction of G(y) = { x : g(x, y) not in -int C }.
pub fn level_set(
    g: &PiecewiseMap,
    y: &RationalVec,
    cone: &ConeSpec,
    domain: &BoxDomain,
) -> Result<GridSet> {
    let h = fix_y(g, y)?;
    if h.codomain_dim() != cone.dim() {
        return Err(KernelError::ShapeMismatch);
    }
    let mut mask = Vec::with_capacity(domain.grid_point_count());
    for p in domain.grid_points() {
        mask.push(cone.not_in_neg_interior(&h.eval_unary(&p)?)?);
    }
    GridSet::new(domain.clone(), mask)
}

/// Probes closedness of G(y) on the grid. `Fails` means a sequence of
/// members of G(y) converges exactly to a point outside G(y); anchors are
/// the outside endpoints of bitmask flips. Never returns `Holds`: absence
/// of an escape at this budget is only consistency.
pub fn closedness_probe(
    g: &PiecewiseMap,
    y: &RationalVec,
    cone: &ConeSpec,
    domain: &BoxDomain,
    budget: &SamplingBudget,
) -> Result<Verdict> {
    let h = fix_y(g, y)?;
    let set = level_set(g, y, cone, domain)?;
    let schedule = budget.radius_schedule();
    for (outside, _) in set.flip_pairs() {
        let anchor = domain.grid_point(outside);
        // the limit must genuinely leave the set: g(anchor, y) in -int C
        if cone.not_in_neg_interior(&h.eval_unary(&anchor)?)? {
            continue;
        }
        for seq in generate(&anchor, domain, budget)? {
            let Ok(v) = h.eval_tail(&seq.as_ratfun(), None) else {
                continue;
            };
            // terms stay in G(y) near the limit: some normal product of the
            // values is eventually nonnegative
            let eventually_member = cone.normals().iter().any(|a| {
                let mut p = crate::ratfun::RatFun::constant(crate::Rational::from(
                    num_bigint::BigInt::from(0),
                ));
                for (c, f) in a.coords().iter().zip(&v) {
                    p = p.add(&f.scale(c));
                }
                p.tail_sign() != TailSign::Negative
            });
            if !eventually_member {
                continue;
            }
            let mut start = schedule.len();
            for (i, &n) in schedule.iter().enumerate().rev() {
                let hn = h.eval_unary(&seq.term(n)?)?;
                if cone.not_in_neg_interior(&hn)? {
                    start = i;
                } else {
                    break;
                }
            }
            let checked = schedule[start..].to_vec();
            if !checked.is_empty() {
                return Ok(Verdict::fails(Certificate::EscapingLimit { seq, checked }));
            }
        }
    }
    Ok(Verdict::consistent(String::from(
        "no escaping sequence found at grid flip points at this budget",
    )))
}

/// Replays an escaping-limit certificate: every checked term is a member
/// of G(y) and the exact limit point is not.
pub fn replay_escaping_limit(
    g: &PiecewiseMap,
    y: &RationalVec,
    cone: &ConeSpec,
    cert: &Certificate,
) -> Result<bool> {
    let Certificate::EscapingLimit { seq, checked } = cert else {
        return Err(KernelError::InvalidSpec(String::from(
            "expected an escaping-limit certificate",
        )));
    };
    let h = fix_y(g, y)?;
    if checked.is_empty() {
        return Ok(false);
    }
    if cone.not_in_neg_interior(&h.eval_unary(seq.limit())?)? {
        return Ok(false);
    }
    for &n in checked {
        if !cone.not_in_neg_interior(&h.eval_unary(&seq.term(n)?)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogId;
    use crate::rational::rat;

    fn pt(v: &[(i64, i64)]) -> RationalVec {
        RationalVec::from_i64(v)
    }

    #[test]
    fn level_set_of_reciprocal_example() {
        let g = CatalogId::LevelsetQusc.build();
        let cone = CatalogId::LevelsetQusc.cone();
        let domain = CatalogId::LevelsetQusc.domain();
        let set = level_set(&g, &pt(&[(0, 1)]), &cone, &domain).unwrap();
        // G(0) on the grid is exactly the points with x > 0
        for (i, p) in domain.grid_points().iter().enumerate() {
            assert_eq!(set.mask()[i], p.coord(0) > &rat(0, 1), "at {p:?}");
        }
        assert_eq!(set.count(), 4);
        assert_eq!(set.contains_point(&pt(&[(1, 4)])), Some(true));
        assert_eq!(set.contains_point(&pt(&[(0, 1)])), Some(false));
        assert_eq!(set.contains_point(&pt(&[(1, 3)])), None);
    }

    #[test]
    fn level_set_of_step_example() {
        let g = CatalogId::LevelsetWusc.build();
        let cone = CatalogId::LevelsetWusc.cone();
        let domain = CatalogId::LevelsetWusc.domain();
        let set = level_set(&g, &pt(&[(0, 1)]), &cone, &domain).unwrap();
        // G(0) on the grid is (-1, 2]
        for (i, p) in domain.grid_points().iter().enumerate() {
            assert_eq!(set.mask()[i], p.coord(0) > &rat(-1, 1), "at {p:?}");
        }
    }

    #[test]
    fn closedness_probe_finds_escapes() {
        let budget = SamplingBudget::default();
        for id in [CatalogId::LevelsetQusc, CatalogId::LevelsetWusc] {
            let g = id.build();
            let cone = id.cone();
            let domain = id.domain();
            let y = pt(&[(0, 1)]);
            let v = closedness_probe(&g, &y, &cone, &domain, &budget).unwrap();
            assert!(v.is_fails(), "{}", id.name());
            let cert = v.certificate.as_ref().unwrap();
            assert!(replay_escaping_limit(&g, &y, &cone, cert).unwrap());
        }
        // at y = 1 the reciprocal example has G(1) = whole grid: no escape
        let g = CatalogId::LevelsetQusc.build();
        let cone = CatalogId::LevelsetQusc.cone();
        let domain = CatalogId::LevelsetQusc.domain();
        let v = closedness_probe(&g, &pt(&[(1, 1)]), &cone, &domain, &budget).unwrap();
        assert!(v.is_consistent());
    }

    #[test]
    fn flip_pairs_on_square() {
        let d = BoxDomain::new(
            pt(&[(0, 1), (0, 1)]),
            pt(&[(1, 1), (1, 1)]),
            alloc::vec![1, 1],
        )
        .unwrap();
        let set = GridSet::new(d, alloc::vec![false, true, false, true]).unwrap();
        let pairs = set.flip_pairs();
        // flips along axis 1 in both rows: (0 -> 1) and (2 -> 3)
        assert!(pairs.contains(&(0, 1)));
        assert!(pairs.contains(&(2, 3)));
    }
}
