use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::*;
use super::lexer::{Lexer, Tok, Token};
use super::ParseError;
use crate::poly::{Expr, Polynomial, Substitution, Var};
use crate::scalar::Scalar;

/// A top-level item of a proof file.
#[derive(Clone, Debug)]
pub enum Statement<C: Scalar> {
    Step(Step<C>, StepSpan),
    Marker(MarkerKind),
}

/// Incremental parser yielding one statement at a time, so a checker can
/// consume a file while it is being read.
pub struct StatementParser<'a, C: Scalar> {
    lexer: Lexer<'a>,
    peeked: Option<Token>,
    open: Vec<(char, usize, usize)>,
    _scalar: PhantomData<C>,
}

impl<'a, C: Scalar> StatementParser<'a, C> {
    pub fn new(src: &'a str) -> Self {
        StatementParser {
            lexer: Lexer::new(src),
            peeked: None,
            open: Vec::new(),
            _scalar: PhantomData,
        }
    }

    fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.peeked.is_none() {
            let t = self.lexer.next_token().map_err(|e| ParseError::Syntax {
                line: e.line,
                column: e.column,
                message: format!("unexpected character `{}`", e.found),
            })?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn advance(&mut self) -> Result<Token, ParseError> {
        self.peek()?;
        let t = self.peeked.take().unwrap();
        Ok(t)
    }

    fn error_at(&self, t: &Token, message: String) -> ParseError {
        if t.tok == Tok::Eof {
            if let Some(&(open, line, column)) = self.open.last() {
                return ParseError::UnterminatedBlock { line, column, open };
            }
        }
        ParseError::Syntax { line: t.line, column: t.column, message }
    }

    fn unexpected(&self, t: &Token, expected: &str) -> ParseError {
        self.error_at(t, format!("expected {expected}, found {}", t.tok.describe()))
    }

    fn peek_is_punct(&mut self, c: char) -> Result<bool, ParseError> {
        Ok(self.peek()?.tok == Tok::Punct(c))
    }

    fn eat_punct(&mut self, c: char) -> Result<bool, ParseError> {
        if self.peek_is_punct(c)? {
            self.advance()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.advance()?;
        if t.tok == Tok::Punct(c) {
            Ok(t)
        } else {
            Err(self.unexpected(&t, &format!("`{c}`")))
        }
    }

    fn open_delim(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.expect_punct(c)?;
        self.open.push((c, t.line, t.column));
        Ok(())
    }

    fn close_delim(&mut self, c: char) -> Result<(), ParseError> {
        self.expect_punct(c)?;
        self.open.pop();
        Ok(())
    }

    fn parse_index(&mut self) -> Result<Index, ParseError> {
        let t = self.advance()?;
        match &t.tok {
            Tok::Ident(s) | Tok::Nat(s) => Ok(Index::new(s)),
            _ => Err(self.unexpected(&t, "an index")),
        }
    }

    fn parse_pattern_id(&mut self) -> Result<PatternId, ParseError> {
        let t = self.advance()?;
        match &t.tok {
            Tok::Ident(s) | Tok::Nat(s) => Ok(PatternId::new(s)),
            _ => Err(self.unexpected(&t, "a pattern id")),
        }
    }

    fn parse_var(&mut self) -> Result<Var, ParseError> {
        let t = self.advance()?;
        match &t.tok {
            Tok::Ident(s) => Ok(Var::new(s)),
            _ => Err(self.unexpected(&t, "a variable")),
        }
    }

    fn parse_nat(&mut self) -> Result<(BigInt, Token), ParseError> {
        let t = self.advance()?;
        match &t.tok {
            Tok::Nat(s) => Ok((s.parse().expect("lexer yields decimal digits"), t)),
            _ => Err(self.unexpected(&t, "a number")),
        }
    }

    pub fn parse_polynomial(&mut self) -> Result<Polynomial<C>, ParseError> {
        Ok(self.parse_sum()?.normalize())
    }

    fn parse_sum(&mut self) -> Result<Expr<C>, ParseError> {
        let mut parts = Vec::new();
        let mut negate = if self.eat_punct('-')? {
            true
        } else {
            self.eat_punct('+')?;
            false
        };
        loop {
            let term = self.parse_product()?;
            parts.push(if negate { Expr::Neg(Box::new(term)) } else { term });
            if self.eat_punct('+')? {
                negate = false;
            } else if self.eat_punct('-')? {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Sum(parts) })
    }

    fn parse_product(&mut self) -> Result<Expr<C>, ParseError> {
        let mut factors = vec![self.parse_factor()?];
        while self.eat_punct('*')? {
            factors.push(self.parse_factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn parse_factor(&mut self) -> Result<Expr<C>, ParseError> {
        let t = self.advance()?;
        let atom = match &t.tok {
            Tok::Ident(s) => Expr::Var(Var::new(s)),
            Tok::Nat(s) => {
                let numer: BigInt = s.parse().expect("lexer yields decimal digits");
                let denom = if self.eat_punct('/')? {
                    let (d, dt) = self.parse_nat()?;
                    if d.is_zero() {
                        return Err(self.error_at(&dt, "zero denominator".to_string()));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Expr::Const(C::from_fraction(numer, denom))
            }
            Tok::Punct('(') => {
                self.open.push(('(', t.line, t.column));
                let inner = self.parse_sum()?;
                self.close_delim(')')?;
                inner
            }
            _ => return Err(self.unexpected(&t, "a coefficient, variable or `(`")),
        };
        if self.eat_punct('^')? {
            let (exp, et) = self.parse_nat()?;
            let exp: u32 = exp
                .try_into()
                .map_err(|_| self.error_at(&et, "exponent too large".to_string()))?;
            return Ok(atom.pow(exp));
        }
        Ok(atom)
    }

    /// Parses a comma-separated list up to (not including) `close`.
    fn parse_list<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.peek_is_punct(close)? {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat_punct(',')? {
                return Ok(out);
            }
        }
    }

    fn parse_bracketed<T>(
        &mut self,
        item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.open_delim('[')?;
        let items = self.parse_list(']', item)?;
        self.close_delim(']')?;
        Ok(items)
    }

    fn parse_lincomb_body(&mut self) -> Result<Step<C>, ParseError> {
        let index = self.parse_index()?;
        self.expect_punct(',')?;
        let conclusion = self.parse_polynomial()?;
        let mut terms = Vec::new();
        while self.eat_punct(',')? {
            self.open_delim('(')?;
            let coeff = self.parse_polynomial()?;
            self.close_delim(')')?;
            self.expect_punct('*')?;
            terms.push((coeff, self.parse_index()?));
        }
        if terms.is_empty() {
            let t = self.advance()?;
            return Err(self.unexpected(&t, "`,` and at least one `(coefficient) * index` term"));
        }
        Ok(Step::LinComb { index, terms, conclusion })
    }

    fn parse_ext_body(&mut self) -> Result<Step<C>, ParseError> {
        let index = self.parse_index()?;
        self.expect_punct(',')?;
        let var = self.parse_var()?;
        self.expect_punct(',')?;
        let def = self.parse_polynomial()?;
        Ok(Step::Ext { index, var, def })
    }

    /// Parses `<section-name> [ ... ]` entries of a `{ }` block in any order,
    /// each at most once.
    fn parse_sections(
        &mut self,
        names: &[&str],
        mut section: impl FnMut(&mut Self, usize) -> Result<(), ParseError>,
    ) -> Result<Vec<bool>, ParseError> {
        let mut seen = vec![false; names.len()];
        self.open_delim('{')?;
        loop {
            let t = self.advance()?;
            match &t.tok {
                Tok::Punct('}') => {
                    self.open.pop();
                    return Ok(seen);
                }
                Tok::Ident(s) if names.contains(&s.as_str()) => {
                    let k = names.iter().position(|n| n == s).unwrap();
                    if seen[k] {
                        return Err(ParseError::DuplicateKeyword {
                            line: t.line,
                            column: t.column,
                            keyword: s.clone(),
                        });
                    }
                    seen[k] = true;
                    section(self, k)?;
                }
                _ => {
                    let expected = names.iter().map(|n| format!("`{n}`")).collect::<Vec<_>>().join(", ");
                    return Err(self.unexpected(&t, &format!("one of {expected} or `}}`")));
                }
            }
        }
    }

    fn parse_pattern_new(&mut self, start: &Token) -> Result<(Step<C>, Vec<Span>), ParseError> {
        let id = self.parse_pattern_id()?;
        let mut inputs = Vec::new();
        let mut body = Vec::new();
        let mut body_spans = Vec::new();
        let mut outputs = Vec::new();
        let seen = self.parse_sections(&["inputs", "steps", "outputs"], |p, k| {
            match k {
                0 => {
                    inputs = p.parse_bracketed(|p| {
                        let idx = p.parse_index()?;
                        p.expect_punct(':')?;
                        Ok((idx, p.parse_polynomial()?))
                    })?
                }
                1 => {
                    p.open_delim('[')?;
                    while !p.peek_is_punct(']')? {
                        let t = p.advance()?;
                        let step = match &t.tok {
                            Tok::Ident(kw) if kw == "L" => p.parse_lincomb_body()?,
                            Tok::Ident(kw) if kw == "E" => p.parse_ext_body()?,
                            Tok::Ident(kw) if kw == "D" => Step::Deletion { index: p.parse_index()? },
                            Tok::Ident(kw) if matches!(kw.as_str(), "A" | "N" | "U") => {
                                return Err(p.error_at(
                                    &t,
                                    format!("`{kw}` steps are not allowed in a pattern body"),
                                ))
                            }
                            _ => return Err(p.unexpected(&t, "`L`, `E`, `D` or `]`")),
                        };
                        let end = p.expect_punct(';')?;
                        body.push(step);
                        body_spans.push(Span {
                            line: t.line,
                            column: t.column,
                            end_line: end.end_line,
                            end_column: end.end_column,
                        });
                    }
                    p.close_delim(']')?;
                }
                _ => outputs = p.parse_bracketed(Self::parse_index)?,
            }
            Ok(())
        })?;
        if let Some(k) = seen.iter().position(|s| !s) {
            let name = ["inputs", "steps", "outputs"][k];
            return Err(self.error_at(start, format!("pattern definition is missing `{name}`")));
        }
        Ok((Step::PatternNew(PatternDecl { id, inputs, body, outputs }), body_spans))
    }

    fn parse_pattern_apply(&mut self, start: &Token) -> Result<Step<C>, ParseError> {
        let id = self.parse_pattern_id()?;
        let mut fresh = Vec::new();
        let mut phi = Substitution::new();
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        let mut duplicate = None;
        let seen = self.parse_sections(&["fresh", "map", "in", "out"], |p, k| {
            match k {
                0 => {
                    p.open_delim('[')?;
                    while !p.peek_is_punct(']')? {
                        fresh.push(p.parse_var()?);
                        p.eat_punct(',')?;
                    }
                    p.close_delim(']')?;
                }
                1 => {
                    let entries = p.parse_bracketed(|p| {
                        let t = p.peek()?.clone();
                        let v = p.parse_var()?;
                        let arrow = p.advance()?;
                        if arrow.tok != Tok::Arrow {
                            return Err(p.unexpected(&arrow, "`->`"));
                        }
                        Ok((v, p.parse_polynomial()?, t))
                    })?;
                    for (v, image, t) in entries {
                        if phi.insert(v.clone(), image).is_some() && duplicate.is_none() {
                            duplicate = Some((v, t));
                        }
                    }
                }
                2 => inputs = p.parse_bracketed(Self::parse_index)?,
                _ => {
                    outputs = p.parse_bracketed(|p| {
                        let idx = p.parse_index()?;
                        p.expect_punct(':')?;
                        Ok((idx, p.parse_polynomial()?))
                    })?
                }
            }
            Ok(())
        })?;
        if let Some((v, t)) = duplicate {
            return Err(self.error_at(&t, format!("variable `{v}` is mapped twice")));
        }
        if let Some(k) = seen.iter().skip(1).position(|s| !s) {
            let name = ["map", "in", "out"][k];
            return Err(self.error_at(start, format!("pattern application is missing `{name}`")));
        }
        Ok(Step::PatternApply(PatternUse { id, fresh, phi, inputs, outputs }))
    }

    /// Parses the next statement; `None` at end of input.
    pub fn next_statement(&mut self) -> Result<Option<Statement<C>>, ParseError> {
        let t = self.advance()?;
        let mut body_spans = Vec::new();
        let step = match &t.tok {
            Tok::Eof => return Ok(None),
            Tok::Marker(kind) => return Ok(Some(Statement::Marker(*kind))),
            Tok::Ident(kw) => match kw.as_str() {
                "A" => {
                    let index = self.parse_index()?;
                    self.expect_punct(',')?;
                    Step::Axiom { index, poly: self.parse_polynomial()? }
                }
                "D" => Step::Deletion { index: self.parse_index()? },
                "L" => self.parse_lincomb_body()?,
                "E" => self.parse_ext_body()?,
                "N" => {
                    let (step, spans) = self.parse_pattern_new(&t)?;
                    body_spans = spans;
                    step
                }
                "U" => self.parse_pattern_apply(&t)?,
                _ => return Err(self.unexpected(&t, "a rule keyword (`A`, `D`, `L`, `E`, `N`, `U`)")),
            },
            _ => return Err(self.unexpected(&t, "a rule keyword (`A`, `D`, `L`, `E`, `N`, `U`)")),
        };
        let end = self.expect_punct(';')?;
        let span = Span { line: t.line, column: t.column, end_line: end.end_line, end_column: end.end_column };
        Ok(Some(Statement::Step(step, StepSpan { span, body: body_spans })))
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        loop {
            let t = self.advance()?;
            match t.tok {
                Tok::Eof => return Ok(()),
                Tok::Marker(_) => continue,
                _ => return Err(self.unexpected(&t, "end of input")),
            }
        }
    }

    pub(crate) fn expect_semicolon(&mut self) -> Result<(), ParseError> {
        self.expect_punct(';').map(|_| ())
    }
}

impl<C: Scalar> Iterator for StatementParser<'_, C> {
    type Item = Result<Statement<C>, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_statement().transpose()
    }
}
