use std::fmt;

use super::lexer::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident {
            name: name.into(),
            span: Span::default(),
        }
    }
}

/// Set expression over named events and outcome literals.
///
/// Binary nodes are left-associative: `A | B | C` is `(A | B) | C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Name(Ident),
    Literal {
        outcomes: Vec<Ident>,
        span: Span,
    },
    Complement {
        inner: Box<SetExpr>,
        span: Span,
    },
    Intersection {
        left: Box<SetExpr>,
        right: Box<SetExpr>,
        span: Span,
    },
    Union {
        left: Box<SetExpr>,
        right: Box<SetExpr>,
        span: Span,
    },
}

impl SetExpr {
    pub fn span(&self) -> Span {
        match self {
            SetExpr::Name(id) => id.span,
            SetExpr::Literal { span, .. }
            | SetExpr::Complement { span, .. }
            | SetExpr::Intersection { span, .. }
            | SetExpr::Union { span, .. } => *span,
        }
    }

    pub fn name(name: &str) -> Self {
        SetExpr::Name(Ident::new(name))
    }

    pub fn literal<S: AsRef<str>>(outcomes: &[S]) -> Self {
        SetExpr::Literal {
            outcomes: outcomes.iter().map(|o| Ident::new(o.as_ref())).collect(),
            span: Span::default(),
        }
    }

    pub fn complement(inner: SetExpr) -> Self {
        SetExpr::Complement {
            inner: Box::new(inner),
            span: Span::default(),
        }
    }

    pub fn union(left: SetExpr, right: SetExpr) -> Self {
        SetExpr::Union {
            left: Box::new(left),
            right: Box::new(right),
            span: Span::default(),
        }
    }

    pub fn intersection(left: SetExpr, right: SetExpr) -> Self {
        SetExpr::Intersection {
            left: Box::new(left),
            right: Box::new(right),
            span: Span::default(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            SetExpr::Union { .. } => 1,
            SetExpr::Intersection { .. } => 2,
            _ => 3,
        }
    }

    /// Writes the expression, parenthesizing when its precedence is below `min`.
    pub(crate) fn write_at(&self, f: &mut impl fmt::Write, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_char('(')?;
        }
        match self {
            SetExpr::Name(id) => f.write_str(&id.name)?,
            SetExpr::Literal { outcomes, .. } => {
                f.write_char('{')?;
                for (i, o) in outcomes.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(&o.name)?;
                }
                f.write_char('}')?;
            }
            SetExpr::Complement { inner, .. } => {
                f.write_char('~')?;
                inner.write_at(f, 3)?;
            }
            SetExpr::Intersection { left, right, .. } => {
                left.write_at(f, 2)?;
                f.write_str(" & ")?;
                right.write_at(f, 3)?;
            }
            SetExpr::Union { left, right, .. } => {
                left.write_at(f, 1)?;
                f.write_str(" | ")?;
                right.write_at(f, 2)?;
            }
        }
        if wrap {
            f.write_char(')')?;
        }
        Ok(())
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    Indep,
    MutIndep,
    Pme,
    Partition,
    Sigma,
}

impl Predicate {
    pub const ALL: [Predicate; 5] = [
        Predicate::Indep,
        Predicate::MutIndep,
        Predicate::Pme,
        Predicate::Partition,
        Predicate::Sigma,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Predicate::Indep => "indep",
            Predicate::MutIndep => "mutindep",
            Predicate::Pme => "pme",
            Predicate::Partition => "partition",
            Predicate::Sigma => "sigma",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.keyword() == word)
    }
}

/// Parsed query.
///
/// In `P(event | given)` the event operand sits at intersection level: a
/// union on the left of the bar must be parenthesized, `P((A | B))`, because
/// the first bare `|` inside `P(…)` is the conditioning bar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAst {
    Prob {
        event: SetExpr,
        span: Span,
    },
    CondProb {
        event: SetExpr,
        given: SetExpr,
        span: Span,
    },
    Predicate {
        predicate: Predicate,
        args: Vec<SetExpr>,
        span: Span,
    },
}

impl QueryAst {
    pub fn span(&self) -> Span {
        match self {
            QueryAst::Prob { span, .. }
            | QueryAst::CondProb { span, .. }
            | QueryAst::Predicate { span, .. } => *span,
        }
    }
}

impl fmt::Display for QueryAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAst::Prob { event, .. } => {
                f.write_str("P(")?;
                event.write_at(f, 2)?;
                f.write_str(")")
            }
            QueryAst::CondProb { event, given, .. } => {
                f.write_str("P(")?;
                event.write_at(f, 2)?;
                f.write_str(" | ")?;
                given.write_at(f, 1)?;
                f.write_str(")")
            }
            QueryAst::Predicate { predicate, args, .. } => {
                write!(f, "{}(", predicate.keyword())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.write_at(f, 1)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Canonical text of a query; reparses to an equal AST.
pub fn format_query(q: &QueryAst) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_inserts_only_needed_parentheses() {
        let a = || SetExpr::name("A");
        let b = || SetExpr::name("B");
        let c = || SetExpr::name("C");
        assert_eq!(
            SetExpr::union(SetExpr::union(a(), b()), c()).to_string(),
            "A | B | C"
        );
        assert_eq!(
            SetExpr::union(a(), SetExpr::union(b(), c())).to_string(),
            "A | (B | C)"
        );
        assert_eq!(
            SetExpr::intersection(SetExpr::union(a(), b()), c()).to_string(),
            "(A | B) & C"
        );
        assert_eq!(
            SetExpr::union(a(), SetExpr::intersection(b(), c())).to_string(),
            "A | B & C"
        );
        assert_eq!(
            SetExpr::complement(SetExpr::intersection(a(), b())).to_string(),
            "~(A & B)"
        );
        assert_eq!(SetExpr::complement(SetExpr::complement(a())).to_string(), "~~A");
        assert_eq!(SetExpr::literal::<&str>(&[]).to_string(), "{}");
        assert_eq!(SetExpr::literal(&["o1", "o2"]).to_string(), "{o1, o2}");
    }

    #[test]
    fn query_formatting() {
        let q = QueryAst::CondProb {
            event: SetExpr::union(SetExpr::name("A"), SetExpr::name("B")),
            given: SetExpr::union(SetExpr::name("C"), SetExpr::name("D")),
            span: Span::default(),
        };
        assert_eq!(format_query(&q), "P((A | B) | C | D)");
        let q = QueryAst::Predicate {
            predicate: Predicate::MutIndep,
            args: vec![SetExpr::name("A"), SetExpr::name("B"), SetExpr::name("C")],
            span: Span::default(),
        };
        assert_eq!(format_query(&q), "mutindep(A, B, C)");
    }
}
