//! Proof dependency diagram, transcribed by hand from the proofs. The edge
//! list is data; nothing here infers dependencies.

use std::fmt::Write as _;

use super::TheoremId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Axiom,
    /// A catalogue entry; `upper` places it in the dependent-events cluster.
    Result {
        id: TheoremId,
        upper: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DependencyNode {
    pub name: &'static str,
    pub label: &'static str,
    pub kind: NodeKind,
}

/// `from` is used in the proof of `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DependencyEdge {
    pub from: &'static str,
    pub to: &'static str,
    pub citation: &'static str,
    /// Only one of two alternative proofs uses this edge.
    pub alternate: bool,
}

const fn axiom(name: &'static str, label: &'static str) -> DependencyNode {
    DependencyNode {
        name,
        label,
        kind: NodeKind::Axiom,
    }
}

const fn lower(id: TheoremId, name: &'static str, label: &'static str) -> DependencyNode {
    DependencyNode {
        name,
        label,
        kind: NodeKind::Result { id, upper: false },
    }
}

const fn upper(id: TheoremId, name: &'static str, label: &'static str) -> DependencyNode {
    DependencyNode {
        name,
        label,
        kind: NodeKind::Result { id, upper: true },
    }
}

pub const DEPENDENCY_NODES: [DependencyNode; 24] = [
    axiom("A1", "Axiom 1\\nP(A) ≥ 0"),
    axiom("A2", "Axiom 2\\nP(Ω) = 1"),
    axiom("A3", "Axiom 3\\ncountable additivity"),
    lower(TheoremId::T1, "T1", "T1\\nP(∅) = 0"),
    lower(TheoremId::T2, "T2", "T2\\nfinite additivity"),
    lower(TheoremId::T3, "T3", "T3\\npartition sums to 1"),
    lower(TheoremId::L1, "L1", "L1\\nexclusive family"),
    lower(TheoremId::L2, "L2", "L2\\nP(A ∪ B)"),
    lower(TheoremId::T4, "T4", "T4\\ninclusion-exclusion"),
    lower(TheoremId::L3, "L3", "L3\\ndisjoint pair"),
    lower(TheoremId::L4, "L4", "L4\\nexclusive family sum"),
    lower(TheoremId::L5, "L5", "L5\\ncomplement"),
    lower(TheoremId::L6, "L6", "L6\\nmonotonicity"),
    lower(TheoremId::L7, "L7", "L7\\nP(A) ≤ 1"),
    upper(TheoremId::L8, "D8", "D8/L8\\nconditional probability"),
    upper(TheoremId::P1, "P1", "P1\\nP(A | B) = 0"),
    upper(TheoremId::P2, "P2", "P2\\nP(A | B) = 1"),
    upper(TheoremId::P3, "P3", "P3\\nconditional addition"),
    upper(TheoremId::T5, "T5", "T5\\nchain rule"),
    upper(TheoremId::L9, "L9", "L9\\nindependence"),
    upper(TheoremId::L10, "L10", "L10\\nmutual ⇒ pairwise"),
    upper(TheoremId::L11, "L11", "L11\\nindependent ⇒ not exclusive"),
    upper(TheoremId::L12, "L12", "L12\\ntotal probability"),
    upper(TheoremId::T6, "T6", "T6\\nBayes"),
];

const fn edge(from: &'static str, to: &'static str, citation: &'static str) -> DependencyEdge {
    DependencyEdge {
        from,
        to,
        citation,
        alternate: false,
    }
}

const fn alt(from: &'static str, to: &'static str, citation: &'static str) -> DependencyEdge {
    DependencyEdge {
        from,
        to,
        citation,
        alternate: true,
    }
}

pub const DEPENDENCY_EDGES: [DependencyEdge; 37] = [
    edge(
        "A3",
        "T1",
        "Ω, ∅, ∅, … are pairwise disjoint, so additivity forces P(∅) = 0",
    ),
    edge(
        "A3",
        "T2",
        "pad the finite family with empty sets and apply additivity",
    ),
    edge("T1", "T2", "the padding sets contribute P(∅) = 0"),
    edge("T2", "T3", "the blocks are disjoint with union Ω"),
    edge("A2", "T3", "the union of the blocks has probability P(Ω) = 1"),
    edge("T2", "L2", "split A ∪ B into A \\ B, A ∩ B, B \\ A"),
    edge(
        "L2",
        "T4",
        "induction on the number of events starts from the pair formula",
    ),
    edge("L2", "L3", "the intersection term vanishes for disjoint events"),
    edge("T1", "L3", "P(A ∩ B) = P(∅) = 0"),
    alt("T2", "L3", "alternatively, finite additivity with two events"),
    edge("L1", "L4", "an exclusive family is pairwise exclusive"),
    edge("T2", "L4", "sum over the pairwise exclusive family"),
    edge("A2", "L5", "A and ~A cover Ω"),
    edge("L3", "L5", "A and ~A are disjoint"),
    edge("A3", "L5", "additivity over A and ~A"),
    alt("L2", "L5", "alternatively, the pair formula with A ∩ ~A = ∅"),
    edge("L3", "L6", "B is the disjoint union of A and B \\ A"),
    edge("A1", "L6", "P(B \\ A) ≥ 0"),
    edge("L6", "L7", "A ⊆ Ω"),
    edge("A2", "L7", "P(Ω) = 1"),
    edge("A1", "D8", "numerator and denominator are nonnegative"),
    edge("L7", "D8", "A ∩ B ⊆ B bounds the ratio by 1"),
    edge("T1", "P1", "P(A ∩ B) = P(∅) = 0"),
    edge("D8", "P1", "definition of P(A | B)"),
    edge("D8", "P2", "A ∩ B = B when B ⊆ A"),
    edge("D8", "P3", "definition of P(· | B)"),
    edge("L4", "P3", "the sets Ai ∩ B are pairwise exclusive"),
    edge(
        "D8",
        "T5",
        "each factor is a ratio of prefix intersections that telescopes",
    ),
    edge("D8", "L9", "divide the product form by P(B) or P(A)"),
    edge(
        "L9",
        "L10",
        "each pair is a subfamily of the mutually independent family",
    ),
    edge("L9", "L11", "positive P(A) P(B) would equal P(A ∩ B)"),
    edge("T1", "L11", "exclusive events have P(A ∩ B) = P(∅) = 0"),
    edge("D8", "L12", "P(A ∩ Ci) = P(A | Ci) P(Ci)"),
    edge("T2", "L12", "A is the disjoint union of the A ∩ Ci"),
    edge("A2", "L12", "the blocks cover Ω"),
    edge("D8", "T6", "P(Ci | A) = P(A ∩ Ci) / P(A)"),
    edge("L12", "T6", "the denominator P(A) expands by total probability"),
];

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// The diagram in Graphviz DOT. Axioms are gray boxes at the bottom; the
/// combination results and the conditional results form two dashed clusters.
pub fn emit_dependency_graph() -> String {
    let mut out = String::new();
    out.push_str("digraph dependencies {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=ellipse, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [fontname=\"Helvetica\"];\n\n");

    for n in DEPENDENCY_NODES.iter().filter(|n| n.kind == NodeKind::Axiom) {
        writeln!(
            out,
            "  {} [label={}, shape=box, style=filled, fillcolor=gray80];",
            n.name,
            quote(n.label)
        )
        .unwrap();
    }

    for (cluster, title, want_upper) in [
        ("cluster_combinations", "combinations of events", false),
        ("cluster_dependent", "dependent events", true),
    ] {
        writeln!(out, "\n  subgraph {cluster} {{").unwrap();
        writeln!(out, "    label={};", quote(title)).unwrap();
        out.push_str("    style=dashed;\n");
        for n in &DEPENDENCY_NODES {
            if let NodeKind::Result { upper, .. } = n.kind {
                if upper == want_upper {
                    writeln!(out, "    {} [label={}];", n.name, quote(n.label)).unwrap();
                }
            }
        }
        out.push_str("  }\n");
    }

    out.push('\n');
    for e in &DEPENDENCY_EDGES {
        write!(out, "  {} -> {} [tooltip={}", e.from, e.to, quote(e.citation)).unwrap();
        if e.alternate {
            out.push_str(", style=dashed, class=\"alternate\"");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn every_catalogue_entry_has_one_node() {
        let ids: Vec<TheoremId> = DEPENDENCY_NODES
            .iter()
            .filter_map(|n| match n.kind {
                NodeKind::Result { id, .. } => Some(id),
                NodeKind::Axiom => None,
            })
            .collect();
        assert_eq!(ids, TheoremId::ALL);
    }

    #[test]
    fn edges_join_known_nodes_without_repeats() {
        let names: BTreeSet<&str> = DEPENDENCY_NODES.iter().map(|n| n.name).collect();
        assert_eq!(names.len(), 24);
        let mut seen = BTreeSet::new();
        for e in &DEPENDENCY_EDGES {
            assert!(names.contains(e.from) && names.contains(e.to), "{e:?}");
            assert!(seen.insert((e.from, e.to)), "duplicate {e:?}");
            assert!(!e.citation.is_empty());
        }
    }

    #[test]
    fn dot_parses_with_expected_shape() {
        use dot_parser::{ast, canonical};
        let text = emit_dependency_graph();
        let parsed = ast::Graph::try_from(text.as_str()).expect("valid DOT");
        let graph = canonical::Graph::from(parsed);
        assert_eq!(graph.nodes.set.len(), 24);
        assert_eq!(graph.edges.set.len(), DEPENDENCY_EDGES.len());
        assert!(graph.edges.set.iter().any(|e| e.from == "A3" && e.to == "T1"));
        assert!(text.contains("A3 -> T1 ["));
    }
}
