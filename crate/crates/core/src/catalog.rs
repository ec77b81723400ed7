//! Built-in catalog of piecewise maps used throughout the test corpus,
//! together with stored spot-check values and the analytic semicontinuity
//! ground truth each map was designed to exhibit.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cone::ConeSpec;
use crate::domain::BoxDomain;
use crate::error::{KernelError, Result};
use crate::expr::Expr;
use crate::maps::{CmpOp, Cond, MapArity, Piece, PiecewiseMap, Region};
use crate::rational::{rat, RationalVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogId {
    /// Bifunction on [0,1]^2 into the planar ice-cream cone order:
    /// (x+y, x) for x <= 1/2, (2x+y, 0) for x > 1/2.
    IcecreamG,
    /// Unary on [-1,1]: (1, -1/|x|) for x != 0, (0,0) at 0.
    QuscNotAusc,
    /// Unary on [0,1], ice-cream order: (x,2x) for x <= 1/2, else (2x,2x).
    WuscNotQusc,
    /// Bifunction on [-1,1]^2: (x+y, y-1/|x|) for x != 0, (-1+y,-1+y) at 0.
    LevelsetQusc,
    /// Bifunction on [-2,2]^2: (-1,y-1) for x <= -1, (0,y-1) for -1 < x <= 0,
    /// (1,y-1) for x > 0.
    LevelsetWusc,
    /// Real-valued unary on [-1,1]: x for x < 0, 1/2 at 0, x+1 for x > 0.
    RealWusc,
    /// f(x,y) = (phi(y)*psi(x), 0) on [-1,1]^2.
    PhiPsiF,
    /// g(x,y) = (-phi(x)*psi(x), phi(y)*psi(x) - phi(x)*psi(x)) on [-1,1]^2.
    PhiPsiG,
    /// f(x,y) = (-1-x-y, x-y) for x in [-1,-1/2], (x+|y|, -x+y) for x > -1/2.
    B1SemicontF,
    /// g(x,y) = (-1-x-|y|, |y|) on [-1,1]^2.
    B1SemicontG,
}

impl CatalogId {
    pub fn all() -> [CatalogId; 10] {
        [
            CatalogId::IcecreamG,
            CatalogId::QuscNotAusc,
            CatalogId::WuscNotQusc,
            CatalogId::LevelsetQusc,
            CatalogId::LevelsetWusc,
            CatalogId::RealWusc,
            CatalogId::PhiPsiF,
            CatalogId::PhiPsiG,
            CatalogId::B1SemicontF,
            CatalogId::B1SemicontG,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogId::IcecreamG => "EX_ICECREAM_G",
            CatalogId::QuscNotAusc => "EX_QUSC_NOT_AUSC",
            CatalogId::WuscNotQusc => "EX_WUSC_NOT_QUSC",
            CatalogId::LevelsetQusc => "EX_LEVELSET_QUSC",
            CatalogId::LevelsetWusc => "EX_LEVELSET_WUSC",
            CatalogId::RealWusc => "EX_REAL_WUSC",
            CatalogId::PhiPsiF => "EX_PHI_PSI_F",
            CatalogId::PhiPsiG => "EX_PHI_PSI_G",
            CatalogId::B1SemicontF => "EX_B1_SEMICONT_F",
            CatalogId::B1SemicontG => "EX_B1_SEMICONT_G",
        }
    }

    pub fn parse(s: &str) -> Result<CatalogId> {
        CatalogId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| KernelError::InvalidSpec(String::from("unknown catalog id")))
    }

    /// The cone order each example is stated in.
    pub fn cone(&self) -> ConeSpec {
        match self {
            CatalogId::IcecreamG | CatalogId::WuscNotQusc => ConeSpec::ice_cream2(),
            CatalogId::RealWusc => ConeSpec::orthant(1),
            _ => ConeSpec::orthant(2),
        }
    }

    /// Default domain box with a grid containing every anchor point the
    /// example's analysis uses.
    pub fn domain(&self) -> BoxDomain {
        match self {
            CatalogId::IcecreamG | CatalogId::WuscNotQusc => {
                BoxDomain::interval(rat(0, 1), rat(1, 1), 8).expect("static domain")
            }
            CatalogId::LevelsetWusc => {
                BoxDomain::interval(rat(-2, 1), rat(2, 1), 16).expect("static domain")
            }
            _ => BoxDomain::interval(rat(-1, 1), rat(1, 1), 8).expect("static domain"),
        }
    }

    pub fn build(&self) -> PiecewiseMap {
        build_catalog_map(*self).expect("catalog maps are statically valid")
    }
}

fn x0() -> Expr {
    Expr::VarX(0)
}

fn y0() -> Expr {
    Expr::VarY(0)
}

fn c(n: i64, d: i64) -> Expr {
    Expr::constant(rat(n, d))
}

/// a*t + b for the given variable expression.
fn affine(a: (i64, i64), t: Expr, b: (i64, i64)) -> Expr {
    Expr::add(Expr::mul(c(a.0, a.1), t), c(b.0, b.1))
}

/// The tent-shaped factor with breakpoints at -1/2 and 0:
/// -2t-1 on [-1,-1/2], 2t+1 on (-1/2,0], -2t+1 on (0,1].
fn phi_branches(t: Expr) -> Vec<(Vec<Cond>, Expr)> {
    alloc::vec![
        (
            alloc::vec![Cond::new(t.clone(), CmpOp::Le, rat(-1, 2))],
            affine((-2, 1), t.clone(), (-1, 1)),
        ),
        (
            alloc::vec![
                Cond::new(t.clone(), CmpOp::Gt, rat(-1, 2)),
                Cond::new(t.clone(), CmpOp::Le, rat(0, 1)),
            ],
            affine((2, 1), t.clone(), (1, 1)),
        ),
        (
            alloc::vec![Cond::new(t.clone(), CmpOp::Gt, rat(0, 1))],
            affine((-2, 1), t, (1, 1)),
        ),
    ]
}

/// The second factor with breakpoint at 1/2:
/// -(2/3)t + 1/3 on [-1,1/2], -2t+1 on (1/2,1].
fn psi_branches(t: Expr) -> Vec<(Vec<Cond>, Expr)> {
    alloc::vec![
        (
            alloc::vec![Cond::new(t.clone(), CmpOp::Le, rat(1, 2))],
            affine((-2, 3), t.clone(), (1, 3)),
        ),
        (
            alloc::vec![Cond::new(t.clone(), CmpOp::Gt, rat(1, 2))],
            affine((-2, 1), t, (1, 1)),
        ),
    ]
}

fn build_catalog_map(id: CatalogId) -> Result<PiecewiseMap> {
    let domain = id.domain();
    match id {
        CatalogId::IcecreamG => PiecewiseMap::new(
            MapArity::Bifunction,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Le, rat(1, 2))]),
                    values: alloc::vec![Expr::add(x0(), y0()), x0()],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(1, 2))]),
                    values: alloc::vec![
                        Expr::add(Expr::mul(c(2, 1), x0()), y0()),
                        c(0, 1)
                    ],
                },
            ],
        ),
        CatalogId::QuscNotAusc => PiecewiseMap::new(
            MapArity::Unary,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Lt, rat(0, 1))]),
                    values: alloc::vec![c(1, 1), Expr::neg(Expr::recip_abs(x0()))],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Eq, rat(0, 1))]),
                    values: alloc::vec![c(0, 1), c(0, 1)],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(0, 1))]),
                    values: alloc::vec![c(1, 1), Expr::neg(Expr::recip_abs(x0()))],
                },
            ],
        ),
        CatalogId::WuscNotQusc => PiecewiseMap::new(
            MapArity::Unary,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Le, rat(1, 2))]),
                    values: alloc::vec![x0(), Expr::mul(c(2, 1), x0())],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(1, 2))]),
                    values: alloc::vec![
                        Expr::mul(c(2, 1), x0()),
                        Expr::mul(c(2, 1), x0())
                    ],
                },
            ],
        ),
        CatalogId::LevelsetQusc => PiecewiseMap::new(
            MapArity::Bifunction,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Lt, rat(0, 1))]),
                    values: alloc::vec![
                        Expr::add(x0(), y0()),
                        Expr::sub(y0(), Expr::recip_abs(x0()))
                    ],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Eq, rat(0, 1))]),
                    values: alloc::vec![
                        Expr::add(c(-1, 1), y0()),
                        Expr::add(c(-1, 1), y0())
                    ],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(0, 1))]),
                    values: alloc::vec![
                        Expr::add(x0(), y0()),
                        Expr::sub(y0(), Expr::recip_abs(x0()))
                    ],
                },
            ],
        ),
        CatalogId::LevelsetWusc => PiecewiseMap::new(
            MapArity::Bifunction,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Le, rat(-1, 1))]),
                    values: alloc::vec![c(-1, 1), Expr::sub(y0(), c(1, 1))],
                },
                Piece {
                    region: Region::new(alloc::vec![
                        Cond::new(x0(), CmpOp::Gt, rat(-1, 1)),
                        Cond::new(x0(), CmpOp::Le, rat(0, 1)),
                    ]),
                    values: alloc::vec![c(0, 1), Expr::sub(y0(), c(1, 1))],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(0, 1))]),
                    values: alloc::vec![c(1, 1), Expr::sub(y0(), c(1, 1))],
                },
            ],
        ),
        CatalogId::RealWusc => PiecewiseMap::new(
            MapArity::Unary,
            domain,
            1,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Lt, rat(0, 1))]),
                    values: alloc::vec![x0()],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Eq, rat(0, 1))]),
                    values: alloc::vec![c(1, 2)],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(0, 1))]),
                    values: alloc::vec![Expr::add(x0(), c(1, 1))],
                },
            ],
        ),
        CatalogId::PhiPsiF => {
            // (phi(y)*psi(x), 0): product of the y-branches of phi and the
            // x-branches of psi.
            let mut pieces = Vec::new();
            for (yc, phi_y) in phi_branches(y0()) {
                for (xc, psi_x) in psi_branches(x0()) {
                    let mut conds = yc.clone();
                    conds.extend(xc.iter().cloned());
                    pieces.push(Piece {
                        region: Region::new(conds),
                        values: alloc::vec![
                            Expr::mul(phi_y.clone(), psi_x.clone()),
                            c(0, 1)
                        ],
                    });
                }
            }
            PiecewiseMap::new(MapArity::Bifunction, domain, 2, pieces)
        }
        CatalogId::PhiPsiG => {
            // (-phi(x)*psi(x), phi(y)*psi(x) - phi(x)*psi(x)): refine the
            // x-branches of phi and psi jointly, times the y-branches of phi.
            let mut pieces = Vec::new();
            for (pxc, phi_x) in phi_branches(x0()) {
                for (sxc, psi_x) in psi_branches(x0()) {
                    for (yc, phi_y) in phi_branches(y0()) {
                        let mut conds = pxc.clone();
                        conds.extend(sxc.iter().cloned());
                        conds.extend(yc.iter().cloned());
                        let prod_xx = Expr::mul(phi_x.clone(), psi_x.clone());
                        pieces.push(Piece {
                            region: Region::new(conds),
                            values: alloc::vec![
                                Expr::neg(prod_xx.clone()),
                                Expr::sub(
                                    Expr::mul(phi_y.clone(), psi_x.clone()),
                                    prod_xx
                                )
                            ],
                        });
                    }
                }
            }
            PiecewiseMap::new(MapArity::Bifunction, domain, 2, pieces)
        }
        CatalogId::B1SemicontF => PiecewiseMap::new(
            MapArity::Bifunction,
            domain,
            2,
            alloc::vec![
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Le, rat(-1, 2))]),
                    values: alloc::vec![
                        Expr::sub(Expr::sub(c(-1, 1), x0()), y0()),
                        Expr::sub(x0(), y0())
                    ],
                },
                Piece {
                    region: Region::new(alloc::vec![Cond::new(x0(), CmpOp::Gt, rat(-1, 2))]),
                    values: alloc::vec![
                        Expr::add(x0(), Expr::abs(y0())),
                        Expr::add(Expr::neg(x0()), y0())
                    ],
                },
            ],
        ),
        CatalogId::B1SemicontG => PiecewiseMap::total(
            MapArity::Bifunction,
            domain,
            alloc::vec![
                Expr::sub(Expr::sub(c(-1, 1), x0()), Expr::abs(y0())),
                Expr::abs(y0())
            ],
        ),
    }
}

/// One stored hand-derived value used to pin the catalog formulas.
pub struct SpotCheck {
    pub id: CatalogId,
    pub x: RationalVec,
    pub y: Option<RationalVec>,
    pub expected: RationalVec,
}

fn pt(v: &[(i64, i64)]) -> RationalVec {
    RationalVec::from_i64(v)
}

/// Hand-derived closed-form values, at least five per catalog entry.
pub fn spot_checks() -> Vec<SpotCheck> {
    let mut t = Vec::new();
    let mut push =
        |id: CatalogId, x: &[(i64, i64)], y: Option<&[(i64, i64)]>, e: &[(i64, i64)]| {
            t.push(SpotCheck {
                id,
                x: pt(x),
                y: y.map(pt),
                expected: pt(e),
            });
        };
    use CatalogId::*;
    push(IcecreamG, &[(0, 1)], Some(&[(0, 1)]), &[(0, 1), (0, 1)]);
    push(IcecreamG, &[(1, 2)], Some(&[(1, 1)]), &[(3, 2), (1, 2)]);
    push(IcecreamG, &[(3, 4)], Some(&[(1, 4)]), &[(7, 4), (0, 1)]);
    push(IcecreamG, &[(1, 1)], Some(&[(1, 1)]), &[(3, 1), (0, 1)]);
    push(IcecreamG, &[(1, 4)], Some(&[(1, 2)]), &[(3, 4), (1, 4)]);

    push(QuscNotAusc, &[(1, 2)], None, &[(1, 1), (-2, 1)]);
    push(QuscNotAusc, &[(-1, 4)], None, &[(1, 1), (-4, 1)]);
    push(QuscNotAusc, &[(0, 1)], None, &[(0, 1), (0, 1)]);
    push(QuscNotAusc, &[(1, 1)], None, &[(1, 1), (-1, 1)]);
    push(QuscNotAusc, &[(-1, 1)], None, &[(1, 1), (-1, 1)]);

    push(WuscNotQusc, &[(1, 2)], None, &[(1, 2), (1, 1)]);
    push(WuscNotQusc, &[(3, 4)], None, &[(3, 2), (3, 2)]);
    push(WuscNotQusc, &[(0, 1)], None, &[(0, 1), (0, 1)]);
    push(WuscNotQusc, &[(1, 1)], None, &[(2, 1), (2, 1)]);
    push(WuscNotQusc, &[(1, 4)], None, &[(1, 4), (1, 2)]);

    push(LevelsetQusc, &[(1, 2)], Some(&[(0, 1)]), &[(1, 2), (-2, 1)]);
    push(LevelsetQusc, &[(0, 1)], Some(&[(0, 1)]), &[(-1, 1), (-1, 1)]);
    push(LevelsetQusc, &[(-1, 2)], Some(&[(1, 1)]), &[(1, 2), (-1, 1)]);
    push(LevelsetQusc, &[(1, 1)], Some(&[(1, 1)]), &[(2, 1), (0, 1)]);
    push(LevelsetQusc, &[(1, 4)], Some(&[(-1, 1)]), &[(-3, 4), (-5, 1)]);

    push(LevelsetWusc, &[(-2, 1)], Some(&[(0, 1)]), &[(-1, 1), (-1, 1)]);
    push(LevelsetWusc, &[(-1, 1)], Some(&[(1, 1)]), &[(-1, 1), (0, 1)]);
    push(LevelsetWusc, &[(-1, 2)], Some(&[(0, 1)]), &[(0, 1), (-1, 1)]);
    push(LevelsetWusc, &[(0, 1)], Some(&[(2, 1)]), &[(0, 1), (1, 1)]);
    push(LevelsetWusc, &[(1, 1)], Some(&[(0, 1)]), &[(1, 1), (-1, 1)]);

    push(RealWusc, &[(-1, 2)], None, &[(-1, 2)]);
    push(RealWusc, &[(0, 1)], None, &[(1, 2)]);
    push(RealWusc, &[(1, 2)], None, &[(3, 2)]);
    push(RealWusc, &[(1, 1)], None, &[(2, 1)]);
    push(RealWusc, &[(-1, 1)], None, &[(-1, 1)]);

    push(PhiPsiF, &[(-1, 2)], Some(&[(3, 4)]), &[(-1, 3), (0, 1)]);
    push(PhiPsiF, &[(0, 1)], Some(&[(0, 1)]), &[(1, 3), (0, 1)]);
    push(PhiPsiF, &[(1, 1)], Some(&[(1, 1)]), &[(1, 1), (0, 1)]);
    push(PhiPsiF, &[(1, 2)], Some(&[(-1, 1)]), &[(0, 1), (0, 1)]);
    push(PhiPsiF, &[(-1, 1)], Some(&[(-1, 2)]), &[(0, 1), (0, 1)]);

    push(PhiPsiG, &[(-1, 2)], Some(&[(3, 4)]), &[(0, 1), (-1, 3)]);
    push(PhiPsiG, &[(0, 1)], Some(&[(0, 1)]), &[(-1, 3), (0, 1)]);
    push(PhiPsiG, &[(1, 1)], Some(&[(0, 1)]), &[(-1, 1), (-2, 1)]);
    push(PhiPsiG, &[(1, 2)], Some(&[(1, 1)]), &[(0, 1), (0, 1)]);
    push(PhiPsiG, &[(-1, 1)], Some(&[(-1, 1)]), &[(-1, 1), (0, 1)]);

    push(B1SemicontF, &[(-1, 2)], Some(&[(-1, 2)]), &[(0, 1), (0, 1)]);
    push(B1SemicontF, &[(-1, 1)], Some(&[(0, 1)]), &[(0, 1), (-1, 1)]);
    push(B1SemicontF, &[(0, 1)], Some(&[(1, 1)]), &[(1, 1), (1, 1)]);
    push(B1SemicontF, &[(1, 1)], Some(&[(-1, 1)]), &[(2, 1), (-2, 1)]);
    push(B1SemicontF, &[(-3, 4)], Some(&[(1, 2)]), &[(-3, 4), (-5, 4)]);

    push(B1SemicontG, &[(-1, 2)], Some(&[(0, 1)]), &[(-1, 2), (0, 1)]);
    push(B1SemicontG, &[(0, 1)], Some(&[(1, 1)]), &[(-2, 1), (1, 1)]);
    push(B1SemicontG, &[(-1, 1)], Some(&[(-1, 2)]), &[(-1, 2), (1, 2)]);
    push(B1SemicontG, &[(1, 1)], Some(&[(1, 1)]), &[(-3, 1), (1, 1)]);
    push(B1SemicontG, &[(-1, 2)], Some(&[(-1, 2)]), &[(-1, 1), (1, 2)]);
    t
}

/// Analytic semicontinuity ground truth for a unary restriction of a
/// catalog map at an anchor point. `None` means the analysis does not
/// settle that notion for this instance.
pub struct SemicontTruth {
    pub id: CatalogId,
    /// For bifunctions, the fixed second argument (the map checked is
    /// x -> g(x, y)).
    pub fix_y: Option<RationalVec>,
    pub x0: RationalVec,
    pub cusc: Option<bool>,
    pub ausc: Option<bool>,
    pub qusc: Option<bool>,
    pub wusc: Option<bool>,
}

pub fn semicont_truth_table() -> Vec<SemicontTruth> {
    use CatalogId::*;
    alloc::vec![
        SemicontTruth {
            id: IcecreamG,
            fix_y: Some(pt(&[(1, 4)])),
            x0: pt(&[(1, 2)]),
            cusc: Some(false),
            ausc: Some(true),
            qusc: None,
            wusc: Some(true),
        },
        SemicontTruth {
            id: IcecreamG,
            fix_y: Some(pt(&[(1, 4)])),
            x0: pt(&[(1, 4)]),
            cusc: Some(true),
            ausc: Some(true),
            qusc: Some(true),
            wusc: Some(true),
        },
        SemicontTruth {
            id: QuscNotAusc,
            fix_y: None,
            x0: pt(&[(0, 1)]),
            cusc: Some(false),
            ausc: Some(false),
            qusc: Some(true),
            wusc: Some(false),
        },
        SemicontTruth {
            id: WuscNotQusc,
            fix_y: None,
            x0: pt(&[(1, 2)]),
            cusc: Some(false),
            ausc: Some(false),
            qusc: Some(false),
            wusc: Some(true),
        },
        SemicontTruth {
            id: LevelsetQusc,
            fix_y: Some(pt(&[(0, 1)])),
            x0: pt(&[(0, 1)]),
            cusc: Some(false),
            ausc: Some(false),
            qusc: Some(true),
            wusc: Some(false),
        },
        SemicontTruth {
            id: LevelsetWusc,
            fix_y: Some(pt(&[(0, 1)])),
            x0: pt(&[(-1, 1)]),
            cusc: Some(false),
            ausc: Some(false),
            qusc: Some(false),
            wusc: Some(true),
        },
        SemicontTruth {
            id: RealWusc,
            fix_y: None,
            x0: pt(&[(0, 1)]),
            cusc: Some(false),
            ausc: Some(false),
            qusc: Some(false),
            wusc: Some(true),
        },
        SemicontTruth {
            id: B1SemicontF,
            fix_y: Some(pt(&[(0, 1)])),
            x0: pt(&[(-1, 2)]),
            cusc: Some(false),
            ausc: Some(false),
            qusc: None,
            wusc: None,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_and_partitions() {
        for id in CatalogId::all() {
            let m = id.build();
            m.validate_partition()
                .unwrap_or_else(|e| panic!("{} partition: {e}", id.name()));
            assert_eq!(m.codomain_dim(), id.cone().dim(), "{}", id.name());
        }
    }

    #[test]
    fn spot_check_table() {
        for s in spot_checks() {
            let m = s.id.build();
            let got = m.eval(&s.x, s.y.as_ref()).unwrap_or_else(|e| {
                panic!("{} at {:?}/{:?}: {e}", s.id.name(), s.x, s.y)
            });
            assert_eq!(got, s.expected, "{} at {:?}/{:?}", s.id.name(), s.x, s.y);
        }
    }

    #[test]
    fn phi_psi_f_diagonal_in_cone() {
        // f(x,x) = (phi(x)*psi(x), 0) must lie in the orthant at every grid x
        let f = CatalogId::PhiPsiF.build();
        let cone = CatalogId::PhiPsiF.cone();
        for x in f.domain().grid_points() {
            let v = f.eval_bi(&x, &x).unwrap();
            assert!(cone.contains(&v).unwrap(), "diagonal violated at {x:?}");
        }
    }

    #[test]
    fn name_roundtrip() {
        for id in CatalogId::all() {
            assert_eq!(CatalogId::parse(id.name()).unwrap(), id);
        }
        assert!(CatalogId::parse("EX_NOPE").is_err());
    }
}
