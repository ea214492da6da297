//! Text format for spaces, measures and events (`.prob` files), and the
//! query language evaluated against them.
//!
//! ```text
//! # a fair die
//! space die { o1:1/6, o2:1/6, o3:1/6, o4:1/6, o5:1/6, o6:1/6 }
//! event A = {o2, o4, o6}
//! event B = {o1, o2, o3}
//! event C = ~A & B
//! partition halves = [A, ~A]     # blocks are event names
//! ```
//!
//! Set operators are `~` (complement), `&` (intersection) and `|` (union),
//! binding in that order. Queries are `P(e)`, `P(e | f)`, or one of the
//! predicates `indep`, `mutindep`, `pme`, `partition`, `sigma`.

mod ast;
mod eval;
mod lexer;
mod parser;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use ast::{format_query, Ident, Predicate, QueryAst, SetExpr};
pub use eval::{eval_query, EvalError, EvalErrorKind, QueryValue};
pub use lexer::Span;
pub use parser::{parse_query, parse_set_expr, SyntaxError, SyntaxErrorKind, MAX_NESTING};

use crate::event_algebra::{self, Event, SampleSpace};
use crate::measure::{validate_weights, AxiomReport, ProbabilityMeasure};
use parser::{parse_raw_space_file, RawDecl};

/// What a duplicated or unknown name refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Outcome,
    Event,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Outcome => "outcome",
            NameKind::Event => "event",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceFileError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{span}: duplicate {kind} name `{name}`")]
    DuplicateName {
        name: String,
        kind: NameKind,
        span: Span,
    },
    #[error("{span}: unknown {kind} `{name}`")]
    UnknownName {
        name: String,
        kind: NameKind,
        span: Span,
    },
    #[error("{span}: partition `{name}` is not a partition of the sample space")]
    NotAPartition { name: String, span: Span },
    #[error("invalid weights\n{0}")]
    InvalidWeight(Box<AxiomReport>),
}

impl SpaceFileError {
    pub fn span(&self) -> Option<Span> {
        match self {
            SpaceFileError::Syntax(e) => Some(e.span),
            SpaceFileError::DuplicateName { span, .. }
            | SpaceFileError::UnknownName { span, .. }
            | SpaceFileError::NotAPartition { span, .. } => Some(*span),
            SpaceFileError::InvalidWeight(_) => None,
        }
    }
}

/// A parsed and resolved `.prob` file.
#[derive(Debug, Clone)]
pub struct SpaceFile {
    name: String,
    space: SampleSpace,
    measure: ProbabilityMeasure,
    events: Vec<(String, Event)>,
    event_index: HashMap<String, usize>,
    partitions: Vec<(String, Vec<Event>)>,
}

impl SpaceFile {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn measure(&self) -> &ProbabilityMeasure {
        &self.measure
    }

    /// Named events in declaration order.
    pub fn events(&self) -> &[(String, Event)] {
        &self.events
    }

    pub fn event(&self, name: &str) -> Option<&Event> {
        self.event_index.get(name).map(|&i| &self.events[i].1)
    }

    /// Named partitions in declaration order.
    pub fn partitions(&self) -> &[(String, Vec<Event>)] {
        &self.partitions
    }

    /// Evaluates a set expression against the named events and outcomes.
    pub fn resolve(&self, expr: &SetExpr) -> Result<Event, SpaceFileError> {
        resolve(&self.space, &self.events, &self.event_index, expr)
    }
}

fn resolve(
    space: &SampleSpace,
    events: &[(String, Event)],
    index: &HashMap<String, usize>,
    expr: &SetExpr,
) -> Result<Event, SpaceFileError> {
    let go = |e: &SetExpr| resolve(space, events, index, e);
    Ok(match expr {
        SetExpr::Name(id) => match index.get(&id.name) {
            Some(&i) => events[i].1.clone(),
            None => {
                return Err(SpaceFileError::UnknownName {
                    name: id.name.clone(),
                    kind: NameKind::Event,
                    span: id.span,
                })
            }
        },
        SetExpr::Literal { outcomes, .. } => {
            let mut positions = Vec::with_capacity(outcomes.len());
            for o in outcomes {
                let i = space
                    .index_of(&o.name)
                    .ok_or_else(|| SpaceFileError::UnknownName {
                        name: o.name.clone(),
                        kind: NameKind::Outcome,
                        span: o.span,
                    })?;
                positions.push(i);
            }
            space
                .event_from_indices(positions)
                .expect("indices come from the space")
        }
        SetExpr::Complement { inner, .. } => event_algebra::complement(&go(inner)?),
        SetExpr::Intersection { left, right, .. } => {
            event_algebra::intersection(&go(left)?, &go(right)?).expect("one space")
        }
        SetExpr::Union { left, right, .. } => {
            event_algebra::union(&go(left)?, &go(right)?).expect("one space")
        }
    })
}

/// Parses and resolves a `.prob` file.
///
/// Checks run in source order: syntax, outcome labels, weights (both axioms
/// must hold exactly), then each event and partition declaration.
pub fn parse_space_file(text: &str) -> Result<SpaceFile, SpaceFileError> {
    let raw = parse_raw_space_file(text)?;

    let mut seen: HashMap<&str, ()> = HashMap::new();
    for o in &raw.outcomes {
        if seen.insert(o.label.name.as_str(), ()).is_some() {
            return Err(SpaceFileError::DuplicateName {
                name: o.label.name.clone(),
                kind: NameKind::Outcome,
                span: o.label.span,
            });
        }
    }
    let space = SampleSpace::new(raw.outcomes.iter().map(|o| o.label.name.clone()))
        .expect("labels are nonempty identifiers and distinct");
    let weights: Vec<_> = raw.outcomes.iter().map(|o| o.weight.clone()).collect();
    let report = validate_weights(&space, &weights);
    if !report.is_valid() {
        return Err(SpaceFileError::InvalidWeight(Box::new(report)));
    }
    let measure = ProbabilityMeasure::new(&space, weights).expect("weights were validated");

    let mut events: Vec<(String, Event)> = Vec::new();
    let mut event_index: HashMap<String, usize> = HashMap::new();
    let mut partitions: Vec<(String, Vec<Event>)> = Vec::new();
    let taken = |name: &Ident, names: &HashMap<String, usize>, parts: &[(String, Vec<Event>)]| {
        if names.contains_key(&name.name) || parts.iter().any(|(n, _)| *n == name.name) {
            Err(SpaceFileError::DuplicateName {
                name: name.name.clone(),
                kind: NameKind::Event,
                span: name.span,
            })
        } else {
            Ok(())
        }
    };
    for decl in &raw.decls {
        match decl {
            RawDecl::Event { name, expr } => {
                taken(name, &event_index, &partitions)?;
                let event = resolve(&space, &events, &event_index, expr)?;
                event_index.insert(name.name.clone(), events.len());
                events.push((name.name.clone(), event));
            }
            RawDecl::Partition { name, blocks } => {
                taken(name, &event_index, &partitions)?;
                let mut resolved = Vec::with_capacity(blocks.len());
                for b in blocks {
                    let i = event_index
                        .get(&b.name)
                        .ok_or_else(|| SpaceFileError::UnknownName {
                            name: b.name.clone(),
                            kind: NameKind::Event,
                            span: b.span,
                        })?;
                    resolved.push(events[*i].1.clone());
                }
                if !event_algebra::is_partition(&resolved).expect("one space, nonempty") {
                    return Err(SpaceFileError::NotAPartition {
                        name: name.name.clone(),
                        span: name.span,
                    });
                }
                partitions.push((name.name.clone(), resolved));
            }
        }
    }

    Ok(SpaceFile {
        name: raw.name.name,
        space,
        measure,
        events,
        event_index,
        partitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::prob;
    use num_bigint::BigInt;

    const DIE: &str = "space die { o1:1/6,o2:1/6,o3:1/6,o4:1/6,o5:1/6,o6:1/6 } event A = {o2,o4,o6}";

    #[test]
    fn die_file_resolves() {
        let sf = parse_space_file(DIE).unwrap();
        assert_eq!(sf.name(), "die");
        assert_eq!(sf.space().len(), 6);
        assert_eq!(sf.events().len(), 1);
        assert_eq!(sf.event("A").unwrap().mask_string(), "010101");
        assert_eq!(
            prob(sf.measure(), sf.event("A").unwrap()).unwrap(),
            crate::rational::Rational::new(BigInt::from(1), BigInt::from(2))
        );
    }

    #[test]
    fn complement_declaration() {
        let sf = parse_space_file(&format!("{DIE}\nevent B = ~A")).unwrap();
        assert_eq!(sf.event("B").unwrap().mask_string(), "101010");
    }

    #[test]
    fn invalid_weights_carry_the_report() {
        match parse_space_file("space s { a:1/2, b:1/3 }").unwrap_err() {
            SpaceFileError::InvalidWeight(report) => {
                assert!(!report.normalized_ok);
                assert_eq!(report.witnesses, vec!["weights sum to 5/6, not 1"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn name_errors() {
        let e = parse_space_file(&format!("{DIE}\nevent A = {{o1}}")).unwrap_err();
        assert_eq!(e.to_string(), "2:7: duplicate event name `A`");
        let e = parse_space_file(&format!("{DIE}\nevent B = C | A")).unwrap_err();
        assert_eq!(e.to_string(), "2:11: unknown event `C`");
        let e = parse_space_file(&format!("{DIE}\nevent B = {{o1, o9}}")).unwrap_err();
        assert_eq!(e.to_string(), "2:16: unknown outcome `o9`");
        let e = parse_space_file("space s { a:1/2, a:1/2 }").unwrap_err();
        assert_eq!(e.to_string(), "1:18: duplicate outcome name `a`");
        // forward references are unknown
        let e = parse_space_file("space s { a:1 } event B = C event C = {a}").unwrap_err();
        assert!(matches!(e, SpaceFileError::UnknownName { .. }));
    }

    #[test]
    fn partitions_are_checked() {
        let ok = parse_space_file(&format!("{DIE}\nevent B = ~A\npartition p = [A, B]")).unwrap();
        assert_eq!(ok.partitions().len(), 1);
        assert_eq!(ok.partitions()[0].1.len(), 2);
        let e = parse_space_file(&format!("{DIE}\npartition p = [A]")).unwrap_err();
        assert_eq!(
            e.to_string(),
            "2:11: partition `p` is not a partition of the sample space"
        );
        let e = parse_space_file(&format!("{DIE}\npartition A = [A]")).unwrap_err();
        assert!(matches!(e, SpaceFileError::DuplicateName { .. }));
        let e = parse_space_file(&format!("{DIE}\npartition p = [Z]")).unwrap_err();
        assert!(matches!(e, SpaceFileError::UnknownName { .. }));
    }

    #[test]
    fn syntax_errors_in_files() {
        let e = parse_space_file("space s { a:1/0 }").unwrap_err();
        assert_eq!(
            e.to_string(),
            "syntax error at 1:15: denominator must not be zero"
        );
        let e = parse_space_file("space s { a:1 } evnt B = {a}").unwrap_err();
        assert_eq!(
            e.to_string(),
            "syntax error at 1:17: expected one of `event`, `partition`, end of input, found identifier `evnt`"
        );
    }
}
