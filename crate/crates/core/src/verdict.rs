//! Three-valued verdicts with machine-checkable certificates, and the
//! sampling budgets that bound every search. Universally quantified
//! properties can only be refuted or confirmed up to sampling; `Holds` and
//! `Fails` always carry a certificate that replays through the exact kernel.

use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::LinIneq;
use crate::rational::RationalVec;
use crate::seq::SequenceSpec;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Holds,
    Fails,
    ConsistentUpToSampling,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub certificate: Option<Certificate>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(certificate: Certificate) -> Self {
        Verdict {
            status: VerdictStatus::Holds,
            certificate: Some(certificate),
            note: None,
        }
    }

    pub fn fails(certificate: Certificate) -> Self {
        Verdict {
            status: VerdictStatus::Fails,
            certificate: Some(certificate),
            note: None,
        }
    }

    pub fn consistent(note: String) -> Self {
        Verdict {
            status: VerdictStatus::ConsistentUpToSampling,
            certificate: None,
            note: Some(note),
        }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == VerdictStatus::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == VerdictStatus::Fails
    }

    pub fn is_consistent(&self) -> bool {
        self.status == VerdictStatus::ConsistentUpToSampling
    }
}

/// Bounds for all sampling searches; every field is a determinism-preserving
/// knob, never a source of randomness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingBudget {
    /// Scaled variants per approach direction in sequence generation
    /// (0 disables sequence generation entirely).
    pub direction_count: u32,
    /// Largest sequence index checked explicitly.
    pub tail_depth: u32,
    /// Half-width of the witness search box in codomain space.
    pub witness_radius: u32,
    /// Grid subdivisions per unit length in the witness box.
    pub witness_density: u32,
    /// Half-width of the perturbation (k) search box.
    pub k_radius: u32,
    /// Grid subdivisions per unit length in the k box.
    pub k_density: u32,
}

impl Default for SamplingBudget {
    fn default() -> Self {
        SamplingBudget {
            direction_count: 2,
            tail_depth: 64,
            witness_radius: 2,
            witness_density: 2,
            k_radius: 2,
            k_density: 2,
        }
    }
}

impl SamplingBudget {
    /// The geometric radius schedule r_j = r0 / 2^j used for neighborhood
    /// quantifiers, expressed as the sequence indices n_j = 2^j at which
    /// tail terms are sampled; capped by tail depth.
    pub fn radius_schedule(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut n: u64 = 1;
        while n <= u64::from(self.tail_depth) {
            out.push(n);
            n *= 2;
        }
        if out.is_empty() {
            out.push(1);
        }
        out
    }
}

/// Structured, replayable payload attached to Holds/Fails verdicts. The
/// meaning of each variant is fixed by the checker that issues it; each has
/// a matching replay function that re-verifies every claim exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Refutes the neighborhood-style usc notion: for perturbation `k`,
    /// every checked index n has h(x0) + k - h(x_n) outside int C.
    CuscCounterexample {
        k: RationalVec,
        seq: SequenceSpec,
        checked: Vec<u64>,
    },
    /// Witness net for the order-sandwich notion: along `seq`, the witness
    /// terms z_n satisfy h(x_n) - z_n in -C, and h(x0) - lim z in C.
    AuscWitness {
        seq: SequenceSpec,
        witness: SequenceSpec,
    },
    /// Refutes the order-sandwich notion along one sequence: the recorded
    /// linear system (which any witness limit z must satisfy) is infeasible,
    /// or some normal product of the values diverges to +infinity
    /// (recorded by index).
    AuscInfeasible {
        seq: SequenceSpec,
        system: Vec<LinIneq>,
        diverging_normal: Option<usize>,
    },
    /// Refutes the level-set notion: k + h(x0) is outside C while
    /// k + h(x_n) is in C at every checked index.
    QuscCounterexample {
        k: RationalVec,
        seq: SequenceSpec,
        checked: Vec<u64>,
    },
    /// Existence witness for the one-net notion: same shape as AuscWitness.
    WuscWitness {
        seq: SequenceSpec,
        witness: SequenceSpec,
    },
    /// Branch-independent refutation: normal `normal_index` of the map's
    /// value stays >= threshold at every listed punctured-neighborhood
    /// point, while its value at the anchor is base_value < threshold.
    UniformBound {
        normal_index: usize,
        threshold: Rational,
        base_value: Rational,
        points: Vec<RationalVec>,
    },
    /// Non-closedness: every checked term of `seq` is in the level set but
    /// the exact limit point is not.
    EscapingLimit { seq: SequenceSpec, checked: Vec<u64> },
    /// Condition membership verified at each checked index; values recorded
    /// for replay.
    MembershipSchedule {
        checked: Vec<u64>,
        values: Vec<RationalVec>,
    },
    /// Template-level impossibility: one cone normal separates the required
    /// membership by a positive margin uniformly over all candidate nets.
    Obstruction {
        normal_index: usize,
        margin: Rational,
    },
    /// Coercivity cover: each boundary point mapped to its dominating core
    /// point.
    CoverAssignment {
        pairs: Vec<(RationalVec, RationalVec)>,
    },
    /// Labeled list of points (violators, solutions, uncovered points ...).
    Points {
        label: &'static str,
        points: Vec<RationalVec>,
    },
    /// C-convexity counterexample triple.
    ConvexityCounterexample {
        y1: RationalVec,
        y2: RationalVec,
        t: Rational,
        value: RationalVec,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_schedule_is_geometric() {
        let b = SamplingBudget {
            tail_depth: 64,
            ..SamplingBudget::default()
        };
        assert_eq!(b.radius_schedule(), alloc::vec![1, 2, 4, 8, 16, 32, 64]);
        let tiny = SamplingBudget {
            tail_depth: 0,
            ..SamplingBudget::default()
        };
        assert_eq!(tiny.radius_schedule(), alloc::vec![1]);
    }

    #[test]
    fn verdict_constructors() {
        let v = Verdict::consistent(String::from("budget exhausted"));
        assert!(v.is_consistent());
        assert!(v.certificate.is_none());
    }
}
