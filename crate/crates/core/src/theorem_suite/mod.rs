//! Executable catalogue of the derived results, runnable against one space
//! or against seeded random spaces, plus the proof dependency diagram.

mod checks;
mod generator;
mod graph;
mod report;

pub use checks::{verify_all, verify_with_partitions};
pub use generator::{fuzz, fuzz_sequential, fuzz_with, replay, replay_with, SpaceGenerator, Trial};
pub use graph::{
    emit_dependency_graph, DependencyEdge, DependencyNode, NodeKind, DEPENDENCY_EDGES, DEPENDENCY_NODES,
};
pub use report::{Counterexample, EntryReport, Status, VerificationReport};

use std::fmt;

use serde::{Serialize, Serializer};

/// One entry of the catalogue. Each maps to exactly one checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    L1,
    L2,
    T4,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    P1,
    P2,
    P3,
    T5,
    L9,
    L10,
    L11,
    L12,
    T6,
}

impl TheoremId {
    pub const ALL: [TheoremId; 21] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::L1,
        TheoremId::L2,
        TheoremId::T4,
        TheoremId::L3,
        TheoremId::L4,
        TheoremId::L5,
        TheoremId::L6,
        TheoremId::L7,
        TheoremId::L8,
        TheoremId::P1,
        TheoremId::P2,
        TheoremId::P3,
        TheoremId::T5,
        TheoremId::L9,
        TheoremId::L10,
        TheoremId::L11,
        TheoremId::L12,
        TheoremId::T6,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Short code used in reports and the diagram.
    pub fn code(self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::L1 => "L1",
            TheoremId::L2 => "L2",
            TheoremId::T4 => "T4",
            TheoremId::L3 => "L3",
            TheoremId::L4 => "L4",
            TheoremId::L5 => "L5",
            TheoremId::L6 => "L6",
            TheoremId::L7 => "L7",
            TheoremId::L8 => "D8/L8",
            TheoremId::P1 => "P1",
            TheoremId::P2 => "P2",
            TheoremId::P3 => "P3",
            TheoremId::T5 => "T5",
            TheoremId::L9 => "L9",
            TheoremId::L10 => "L10",
            TheoremId::L11 => "L11",
            TheoremId::L12 => "L12",
            TheoremId::T6 => "T6",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.code() == code || (code == "L8" && *t == TheoremId::L8))
    }

    /// The statement the checker tests.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1 => "P(∅) = 0",
            TheoremId::T2 => "P(A1 ∪ … ∪ An) = P(A1) + … + P(An) for disjoint events",
            TheoremId::T3 => "the blocks of a partition have total probability 1",
            TheoremId::L1 => "a family is mutually exclusive iff it is pairwise exclusive",
            TheoremId::L2 => "P(A ∪ B) = P(A) + P(B) − P(A ∩ B)",
            TheoremId::T4 => "inclusion-exclusion for finitely many events",
            TheoremId::L3 => "P(A ∪ B) = P(A) + P(B) for disjoint A, B",
            TheoremId::L4 => "addition rule for a pairwise exclusive family",
            TheoremId::L5 => "P(~A) = 1 − P(A)",
            TheoremId::L6 => "A ⊆ B implies P(A) ≤ P(B)",
            TheoremId::L7 => "0 ≤ P(A) ≤ 1",
            TheoremId::L8 => "0 ≤ P(A | B) ≤ 1 and 0 ≤ P(A ∩ B) ≤ P(B)",
            TheoremId::P1 => "A ∩ B = ∅ implies P(A | B) = 0",
            TheoremId::P2 => "B ⊆ A implies P(A | B) = 1",
            TheoremId::P3 => "P(A1 ∪ … ∪ An | B) = Σ P(Ai | B) for disjoint Ai",
            TheoremId::T5 => "P(A1 ∩ … ∩ An) = P(A1) P(A2 | A1) ⋯ P(An | A1 ∩ … ∩ An−1)",
            TheoremId::L9 => "independence gives P(A | B) = P(A) and P(B | A) = P(B)",
            TheoremId::L10 => "mutual independence implies pairwise independence",
            TheoremId::L11 => "independent events of positive probability are not exclusive",
            TheoremId::L12 => "P(A) = Σ P(A | Ci) P(Ci) over a partition",
            TheoremId::T6 => "P(Ci | A) = P(A | Ci) P(Ci) / Σ P(A | Cj) P(Cj)",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}
