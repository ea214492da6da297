use std::fmt;

use thiserror::Error;

use super::ast::{Predicate, QueryAst, SetExpr};
use super::lexer::Span;
use super::{NameKind, SpaceFile, SpaceFileError};
use crate::conditional::{cond_prob, is_independent, is_mutually_independent};
use crate::error::Error;
use crate::event_algebra::{self, Event};
use crate::measure::prob;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryValue {
    Probability(Rational),
    Truth { holds: bool, detail: Option<String> },
}

impl fmt::Display for QueryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryValue::Probability(r) => f.write_str(&format_rational(r)),
            QueryValue::Truth { holds, .. } => write!(f, "{holds}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalErrorKind {
    UnknownName {
        name: String,
        kind: NameKind,
    },
    Arity {
        predicate: Predicate,
        expected: &'static str,
        found: usize,
    },
    Engine(Error),
}

impl fmt::Display for EvalErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalErrorKind::UnknownName { name, kind } => write!(f, "unknown {kind} `{name}`"),
            EvalErrorKind::Arity {
                predicate,
                expected,
                found,
            } => write!(
                f,
                "`{}` takes {expected} arguments, found {found}",
                predicate.keyword()
            ),
            EvalErrorKind::Engine(e) => write!(f, "{e}"),
        }
    }
}

/// Evaluation failure, positioned in the query text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct EvalError {
    pub span: Span,
    pub kind: EvalErrorKind,
}

impl EvalError {
    fn engine(span: Span, e: Error) -> Self {
        EvalError {
            span,
            kind: EvalErrorKind::Engine(e),
        }
    }
}

fn resolve(sf: &SpaceFile, expr: &SetExpr) -> Result<Event, EvalError> {
    sf.resolve(expr).map_err(|e| match e {
        SpaceFileError::UnknownName { name, kind, span } => EvalError {
            span,
            kind: EvalErrorKind::UnknownName { name, kind },
        },
        other => unreachable!("resolution only fails on names: {other}"),
    })
}

/// Evaluates a query against a space file. Pure: the same inputs always
/// give the same value.
pub fn eval_query(sf: &SpaceFile, q: &QueryAst) -> Result<QueryValue, EvalError> {
    let m = sf.measure();
    match q {
        QueryAst::Prob { event, .. } => {
            let e = resolve(sf, event)?;
            let p = prob(m, &e).map_err(|err| EvalError::engine(event.span(), err))?;
            Ok(QueryValue::Probability(p))
        }
        QueryAst::CondProb { event, given, .. } => {
            let a = resolve(sf, event)?;
            let b = resolve(sf, given)?;
            let p = cond_prob(m, &a, &b).map_err(|err| EvalError::engine(given.span(), err))?;
            Ok(QueryValue::Probability(p))
        }
        QueryAst::Predicate {
            predicate,
            args,
            span,
        } => {
            let arity = |expected: &'static str| EvalError {
                span: *span,
                kind: EvalErrorKind::Arity {
                    predicate: *predicate,
                    expected,
                    found: args.len(),
                },
            };
            let events: Vec<Event> = args.iter().map(|a| resolve(sf, a)).collect::<Result<_, _>>()?;
            let engine = |err| EvalError::engine(*span, err);
            let value = match predicate {
                Predicate::Indep => {
                    if events.len() != 2 {
                        return Err(arity("exactly 2"));
                    }
                    let holds = is_independent(m, &events[0], &events[1]).map_err(engine)?;
                    let both = event_algebra::intersection(&events[0], &events[1]).map_err(engine)?;
                    let joint = prob(m, &both).map_err(engine)?;
                    let product =
                        prob(m, &events[0]).map_err(engine)? * prob(m, &events[1]).map_err(engine)?;
                    QueryValue::Truth {
                        holds,
                        detail: Some(format!(
                            "P({} & {}) = {}, P({}) P({}) = {}",
                            paren(&args[0]),
                            paren(&args[1]),
                            format_rational(&joint),
                            args[0],
                            args[1],
                            format_rational(&product)
                        )),
                    }
                }
                Predicate::MutIndep => {
                    let r = is_mutually_independent(m, &events).map_err(engine)?;
                    QueryValue::Truth {
                        holds: r.holds,
                        detail: r.violating.map(|idx| {
                            let names: Vec<String> = idx.iter().map(|&i| args[i].to_string()).collect();
                            format!("violating subset: {}", names.join(", "))
                        }),
                    }
                }
                Predicate::Pme => {
                    let overlap = event_algebra::first_overlap(&events).map_err(engine)?;
                    QueryValue::Truth {
                        holds: overlap.is_none(),
                        detail: overlap.map(|(i, j)| format!("{} and {} overlap", args[i], args[j])),
                    }
                }
                Predicate::Partition => {
                    let overlap = event_algebra::first_overlap(&events).map_err(engine)?;
                    let detail = match overlap {
                        Some((i, j)) => Some(format!("{} and {} overlap", args[i], args[j])),
                        None => {
                            let all = event_algebra::union_all(&events).map_err(engine)?;
                            (!all.is_full()).then(|| {
                                let missing = event_algebra::complement(&all);
                                format!("outcomes {} are not covered", sf.space().format_event(&missing))
                            })
                        }
                    };
                    QueryValue::Truth {
                        holds: detail.is_none(),
                        detail,
                    }
                }
                Predicate::Sigma => {
                    let v = event_algebra::is_sigma_algebra(sf.space(), &events).map_err(engine)?;
                    QueryValue::Truth {
                        holds: v.is_none(),
                        detail: v.map(|v| v.describe(sf.space())),
                    }
                }
            };
            Ok(value)
        }
    }
}

fn paren(e: &SetExpr) -> String {
    let mut s = String::new();
    e.write_at(&mut s, 2).expect("writing to a String");
    s
}
