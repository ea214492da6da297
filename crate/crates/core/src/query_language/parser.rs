//! Recursive-descent parser for space files and queries.
//!
//! Both grammars are LL(1). The parser records every token kind it tested
//! for at the current position, so a mismatch reports the full set of
//! tokens that would have been accepted there.

use std::fmt;
use std::mem::discriminant;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::ast::{Ident, Predicate, QueryAst, SetExpr};
use super::lexer::{tokenize, Span, Token, TokenKind};
use crate::rational::Rational;

/// Deepest nesting of parentheses and complements accepted.
pub const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    Unexpected { expected: Vec<String>, found: String },
    TooDeep,
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {}:{}: {kind}", span.line, span.column)]
pub struct SyntaxError {
    pub span: Span,
    pub kind: SyntaxErrorKind,
}

impl SyntaxError {
    pub fn line(&self) -> usize {
        self.span.line
    }

    pub fn column(&self) -> usize {
        self.span.column
    }
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxErrorKind::Unexpected { expected, found } => match expected.as_slice() {
                [] => write!(f, "unexpected {found}"),
                [one] => write!(f, "expected {one}, found {found}"),
                many => write!(f, "expected one of {}, found {found}", many.join(", ")),
            },
            SyntaxErrorKind::TooDeep => {
                write!(f, "expression nested more than {MAX_NESTING} levels deep")
            }
            SyntaxErrorKind::ZeroDenominator => write!(f, "denominator must not be zero"),
        }
    }
}

pub(crate) type ParseResult<T> = Result<T, SyntaxError>;

#[derive(Debug, Clone)]
pub(crate) struct RawOutcome {
    pub label: Ident,
    pub weight: Rational,
}

#[derive(Debug, Clone)]
pub(crate) enum RawDecl {
    Event { name: Ident, expr: SetExpr },
    Partition { name: Ident, blocks: Vec<Ident> },
}

#[derive(Debug, Clone)]
pub(crate) struct RawSpaceFile {
    pub name: Ident,
    pub outcomes: Vec<RawOutcome>,
    pub decls: Vec<RawDecl>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    expected: Vec<String>,
    depth: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            tokens: tokenize(text),
            pos: 0,
            expected: Vec::new(),
            depth: 0,
        }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        self.expected.clear();
        tok
    }

    fn note(&mut self, what: String) {
        if !self.expected.contains(&what) {
            self.expected.push(what);
        }
    }

    fn at(&mut self, kind: &TokenKind) -> bool {
        self.note(match kind {
            TokenKind::Eof => "end of input".to_string(),
            TokenKind::Ident(_) => "identifier".to_string(),
            TokenKind::Int(_) => "number".to_string(),
            other => format!("`{}`", other.symbol()),
        });
        discriminant(&self.peek().kind) == discriminant(kind)
    }

    fn at_keyword(&mut self, keyword: &str) -> bool {
        self.note(format!("`{keyword}`"));
        matches!(&self.peek().kind, TokenKind::Ident(w) if w == keyword)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self) -> SyntaxError {
        SyntaxError {
            span: self.peek().span,
            kind: SyntaxErrorKind::Unexpected {
                expected: self.expected.clone(),
                found: self.peek().kind.describe(),
            },
        }
    }

    fn expect(&mut self, kind: &TokenKind) -> ParseResult<Token> {
        if self.at(kind) {
            Ok(self.bump())
        } else {
            Err(self.error())
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> ParseResult<Token> {
        if self.at_keyword(keyword) {
            Ok(self.bump())
        } else {
            Err(self.error())
        }
    }

    fn ident(&mut self) -> ParseResult<Ident> {
        let tok = self.expect(&TokenKind::Ident(String::new()))?;
        match tok.kind {
            TokenKind::Ident(name) => Ok(Ident { name, span: tok.span }),
            _ => unreachable!("expect checked the token kind"),
        }
    }

    fn int(&mut self) -> ParseResult<(BigInt, Span)> {
        let tok = self.expect(&TokenKind::Int(String::new()))?;
        match tok.kind {
            TokenKind::Int(digits) => Ok((digits.parse().expect("lexer only emits ASCII digits"), tok.span)),
            _ => unreachable!("expect checked the token kind"),
        }
    }

    fn rational(&mut self) -> ParseResult<Rational> {
        let (numer, _) = self.int()?;
        if self.eat(&TokenKind::Slash) {
            let (denom, span) = self.int()?;
            if denom.is_zero() {
                return Err(SyntaxError {
                    span,
                    kind: SyntaxErrorKind::ZeroDenominator,
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn descend(&mut self) -> ParseResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(SyntaxError {
                span: self.peek().span,
                kind: SyntaxErrorKind::TooDeep,
            });
        }
        Ok(())
    }

    // set-expr = term { "|" term }
    fn set_expr(&mut self) -> ParseResult<SetExpr> {
        let mut left = self.term()?;
        while self.eat(&TokenKind::Pipe) {
            let right = self.term()?;
            let span = left.span();
            left = SetExpr::Union {
                left: Box::new(left),
                right: Box::new(right),
                span,
            };
        }
        Ok(left)
    }

    // term = factor { "&" factor }
    fn term(&mut self) -> ParseResult<SetExpr> {
        let mut left = self.factor()?;
        while self.eat(&TokenKind::Amp) {
            let right = self.factor()?;
            let span = left.span();
            left = SetExpr::Intersection {
                left: Box::new(left),
                right: Box::new(right),
                span,
            };
        }
        Ok(left)
    }

    // factor = "~" factor | IDENT | literal | "(" set-expr ")"
    fn factor(&mut self) -> ParseResult<SetExpr> {
        let span = self.peek().span;
        if self.eat(&TokenKind::Tilde) {
            self.descend()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(SetExpr::Complement {
                inner: Box::new(inner),
                span,
            });
        }
        if self.at(&TokenKind::Ident(String::new())) {
            return Ok(SetExpr::Name(self.ident()?));
        }
        if self.eat(&TokenKind::LBrace) {
            let mut outcomes = Vec::new();
            if !self.eat(&TokenKind::RBrace) {
                loop {
                    outcomes.push(self.ident()?);
                    if self.eat(&TokenKind::Comma) {
                        continue;
                    }
                    self.expect(&TokenKind::RBrace)?;
                    break;
                }
            }
            return Ok(SetExpr::Literal { outcomes, span });
        }
        if self.eat(&TokenKind::LParen) {
            self.descend()?;
            let inner = self.set_expr()?;
            self.depth -= 1;
            self.expect(&TokenKind::RParen)?;
            return Ok(inner);
        }
        Err(self.error())
    }

    fn query(&mut self) -> ParseResult<QueryAst> {
        let span = self.peek().span;
        let q = if self.at_keyword("P") {
            self.bump();
            self.expect(&TokenKind::LParen)?;
            let event = self.term()?;
            let q = if self.eat(&TokenKind::Pipe) {
                let given = self.set_expr()?;
                QueryAst::CondProb { event, given, span }
            } else {
                QueryAst::Prob { event, span }
            };
            self.expect(&TokenKind::RParen)?;
            q
        } else {
            let mut found = None;
            for p in Predicate::ALL {
                if self.at_keyword(p.keyword()) {
                    found = Some(p);
                    break;
                }
            }
            let Some(predicate) = found else {
                return Err(self.error());
            };
            self.bump();
            self.expect(&TokenKind::LParen)?;
            let mut args = vec![self.set_expr()?];
            while self.eat(&TokenKind::Comma) {
                args.push(self.set_expr()?);
            }
            self.expect(&TokenKind::RParen)?;
            QueryAst::Predicate {
                predicate,
                args,
                span,
            }
        };
        self.expect(&TokenKind::Eof)?;
        Ok(q)
    }

    fn space_file(&mut self) -> ParseResult<RawSpaceFile> {
        self.expect_keyword("space")?;
        let name = self.ident()?;
        self.expect(&TokenKind::LBrace)?;
        let mut outcomes = Vec::new();
        loop {
            let label = self.ident()?;
            self.expect(&TokenKind::Colon)?;
            let weight = self.rational()?;
            outcomes.push(RawOutcome { label, weight });
            if self.eat(&TokenKind::Comma) {
                continue;
            }
            self.expect(&TokenKind::RBrace)?;
            break;
        }

        let mut decls = Vec::new();
        loop {
            if self.at_keyword("event") {
                self.bump();
                let name = self.ident()?;
                self.expect(&TokenKind::Equals)?;
                let expr = self.set_expr()?;
                decls.push(RawDecl::Event { name, expr });
            } else if self.at_keyword("partition") {
                self.bump();
                let name = self.ident()?;
                self.expect(&TokenKind::Equals)?;
                self.expect(&TokenKind::LBracket)?;
                let mut blocks = vec![self.ident()?];
                while self.eat(&TokenKind::Comma) {
                    blocks.push(self.ident()?);
                }
                self.expect(&TokenKind::RBracket)?;
                decls.push(RawDecl::Partition { name, blocks });
            } else if self.at(&TokenKind::Eof) {
                break;
            } else {
                return Err(self.error());
            }
        }
        Ok(RawSpaceFile {
            name,
            outcomes,
            decls,
        })
    }
}

/// Parses a query such as `P(A | B & C)` or `mutindep(A, B, C)`.
pub fn parse_query(text: &str) -> Result<QueryAst, SyntaxError> {
    Parser::new(text).query()
}

/// Parses a standalone set expression.
pub fn parse_set_expr(text: &str) -> Result<SetExpr, SyntaxError> {
    let mut p = Parser::new(text);
    let e = p.set_expr()?;
    p.expect(&TokenKind::Eof)?;
    Ok(e)
}

pub(crate) fn parse_raw_space_file(text: &str) -> Result<RawSpaceFile, SyntaxError> {
    Parser::new(text).space_file()
}
