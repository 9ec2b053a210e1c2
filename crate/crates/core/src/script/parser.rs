//! Statement and expression parser for the session language.
//!
//! Precedence, loosest first: `<-` (right-associative), comparisons,
//! `+ -`, `* / %%`, `:`, unary minus, `^` (right-associative), indexing
//! and calls.

use std::fmt;

use super::lexer::{tokenize, Spanned, Token};
use crate::disord::BinaryOp;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Str(String),
    Bool(bool),
    Name(String),
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Range(Box<Expr>, Box<Expr>),
    Index(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Paren(Box<Expr>),
    Assign(Box<Target>, Box<Expr>),
}

/// Left-hand side of `<-`.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Name(String),
    Index(String, Expr),
    Coeffs(String),
    CoeffsIndex(String, Expr),
}

impl Target {
    pub fn name(&self) -> &str {
        match self {
            Target::Name(n) | Target::Index(n, _) | Target::Coeffs(n) | Target::CoeffsIndex(n, _) => n,
        }
    }
}

/// One parsed line. `expr` is `None` for blank and comment-only lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub line: usize,
    pub source: String,
    pub expr: Option<Expr>,
}

impl Statement {
    /// Bare expressions and parenthesized assignments print their value;
    /// plain assignments do not.
    pub fn echoes(&self) -> bool {
        !matches!(self.expr, None | Some(Expr::Assign(..)))
    }
}

/// A parse error located on a line of a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptParseError {
    pub line: usize,
    pub error: ParseError,
}

impl fmt::Display for ScriptParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

impl std::error::Error for ScriptParseError {}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), Token::describe);
        ParseError::new(self.offset(), found, expected)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&[&format!("\"{}\"", tok.text())]))
        }
    }

    fn assignment(&mut self) -> Result<Expr, ParseError> {
        let start = self.offset();
        let lhs = self.comparison()?;
        if !self.eat(&Token::Assign) {
            return Ok(lhs);
        }
        let target = to_target(lhs).ok_or_else(|| {
            ParseError::new(start, "expression", &["name", "name[index]", "coeffs(name)", "coeffs(name)[index]"])
        })?;
        let rhs = self.assignment()?;
        Ok(Expr::Assign(Box::new(target), Box::new(rhs)))
    }

    fn comparison(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.additive()?;
        let op = match self.peek() {
            Some(Token::Lt) => BinaryOp::Lt,
            Some(Token::Le) => BinaryOp::Le,
            Some(Token::Gt) => BinaryOp::Gt,
            Some(Token::Ge) => BinaryOp::Ge,
            Some(Token::EqEq) => BinaryOp::Eq,
            Some(Token::Ne) => BinaryOp::Ne,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.additive()?;
        Ok(Expr::Binary(op, Box::new(lhs), Box::new(rhs)))
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(Token::Plus) => BinaryOp::Add,
                Some(Token::Minus) => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.multiplicative()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.range()?;
        loop {
            let op = match self.peek() {
                Some(Token::Star) => BinaryOp::Mul,
                Some(Token::Slash) => BinaryOp::Div,
                Some(Token::Modulo) => BinaryOp::Mod,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.range()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn range(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Token::Colon) {
            let rhs = self.unary()?;
            return Ok(Expr::Range(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Token::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Token::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.postfix()?;
        if self.eat(&Token::Caret) {
            let exp = self.unary()?;
            return Ok(Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        while self.eat(&Token::LBracket) {
            let idx = self.assignment()?;
            self.expect(Token::RBracket)?;
            e = Expr::Index(Box::new(e), Box::new(idx));
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error(&["expression"]));
        };
        self.pos += 1;
        match tok {
            Token::Number(x) => Ok(Expr::Number(x)),
            Token::Str(s) => Ok(Expr::Str(s)),
            Token::Ident(name) => {
                if self.eat(&Token::LParen) {
                    let mut args = Vec::new();
                    if !self.eat(&Token::RParen) {
                        loop {
                            args.push(self.assignment()?);
                            if self.eat(&Token::RParen) {
                                break;
                            }
                            if !self.eat(&Token::Comma) {
                                return Err(self.error(&["\",\"", "\")\""]));
                            }
                        }
                    }
                    return Ok(Expr::Call(name, args));
                }
                Ok(match name.as_str() {
                    "TRUE" | "T" => Expr::Bool(true),
                    "FALSE" | "F" => Expr::Bool(false),
                    _ => Expr::Name(name),
                })
            }
            Token::LParen => {
                let inner = self.assignment()?;
                self.expect(Token::RParen)?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&["expression"]))
            }
        }
    }
}

fn to_target(e: Expr) -> Option<Target> {
    match e {
        Expr::Name(n) => Some(Target::Name(n)),
        Expr::Index(base, idx) => match *base {
            Expr::Name(n) => Some(Target::Index(n, *idx)),
            Expr::Call(f, args) if f == "coeffs" => match args.as_slice() {
                [Expr::Name(n)] => Some(Target::CoeffsIndex(n.clone(), *idx)),
                _ => None,
            },
            _ => None,
        },
        Expr::Call(f, args) if f == "coeffs" => match args.as_slice() {
            [Expr::Name(n)] => Some(Target::Coeffs(n.clone())),
            _ => None,
        },
        _ => None,
    }
}

/// Parses one line. Blank and comment-only lines give `Ok(None)`.
pub fn parse_line(line: &str) -> Result<Option<Expr>, ParseError> {
    let tokens = tokenize(line)?;
    if tokens.is_empty() {
        return Ok(None);
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        end: line.len(),
    };
    let e = p.assignment()?;
    if p.pos != p.tokens.len() {
        return Err(p.error(&["end of line"]));
    }
    Ok(Some(e))
}

/// Parses a whole script, one statement per line.
pub fn parse_script(source: &str) -> Result<Vec<Statement>, ScriptParseError> {
    source
        .lines()
        .enumerate()
        .map(|(i, text)| {
            let expr = parse_line(text).map_err(|error| ScriptParseError { line: i + 1, error })?;
            Ok(Statement {
                line: i + 1,
                source: text.to_string(),
                expr,
            })
        })
        .collect()
}
