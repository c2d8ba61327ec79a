//! Recursive-descent parser for the weight grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' number)?
//! base   := 'r' | number | '(' expr ')' | 'exp' '(' expr ')' | 'log' '(' expr ')'
//! ```
//!
//! Numbers are decimal literals (scientific notation accepted); the exponent
//! after `^` may carry a sign. Errors report a 1-based column.

use super::expr::WeightExpr;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
#[error("syntax error at column {position}: {message}")]
pub struct ParseError {
    /// 1-based column of the offending character (or end of input).
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Var,
    ExpFn,
    LogFn,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize, // byte offset
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token with its 1-based column, or None at end of input.
    fn next(&mut self) -> Result<Option<(Token, usize)>, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let col = self.pos + 1;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                return Ok(Some((self.lex_number()?, col)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let tok = match word {
                    "r" => Token::Var,
                    "exp" => Token::ExpFn,
                    "log" => Token::LogFn,
                    _ => {
                        return Err(ParseError {
                            position: col,
                            message: format!("unknown identifier '{word}'"),
                        })
                    }
                };
                return Ok(Some((tok, col)));
            }
            _ => {
                return Err(ParseError {
                    position: col,
                    message: format!("unexpected character '{}'", c as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((tok, col)))
    }

    fn lex_number(&mut self) -> Result<Token, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            if self.pos + 1 < self.src.len() && self.src[self.pos + 1].is_ascii_digit() {
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                return Err(ParseError {
                    position: self.pos + 1,
                    message: "digits required after decimal point".into(),
                });
            }
        }
        // Optional exponent part: e/E, optional sign, digits.
        if self.pos < self.src.len() && (self.src[self.pos] == b'e' || self.src[self.pos] == b'E')
        {
            let mut look = self.pos + 1;
            if look < self.src.len() && (self.src[look] == b'+' || self.src[look] == b'-') {
                look += 1;
            }
            if look < self.src.len() && self.src[look].is_ascii_digit() {
                self.pos = look;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|_| ParseError {
            position: start + 1,
            message: format!("invalid number '{text}'"),
        })?;
        Ok(Token::Num(value))
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    index: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.index)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.col(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.index += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<WeightExpr, ParseError> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.index += 1;
                    let rhs = self.term()?;
                    node = WeightExpr::Add(Box::new(node), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.index += 1;
                    let rhs = self.term()?;
                    node = WeightExpr::Sub(Box::new(node), Box::new(rhs));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<WeightExpr, ParseError> {
        let mut node = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.index += 1;
                    let rhs = self.factor()?;
                    node = WeightExpr::Mul(Box::new(node), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.index += 1;
                    let rhs = self.factor()?;
                    node = WeightExpr::Div(Box::new(node), Box::new(rhs));
                }
                _ => return Ok(node),
            }
        }
    }

    fn factor(&mut self) -> Result<WeightExpr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(&Token::Caret) {
            self.index += 1;
            let exponent = self.signed_number()?;
            return Ok(WeightExpr::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn signed_number(&mut self) -> Result<f64, ParseError> {
        let sign = match self.peek() {
            Some(Token::Minus) => {
                self.index += 1;
                -1.0
            }
            Some(Token::Plus) => {
                self.index += 1;
                1.0
            }
            _ => 1.0,
        };
        match self.peek() {
            Some(Token::Num(v)) => {
                let v = *v;
                self.index += 1;
                Ok(sign * v)
            }
            _ => Err(self.error("expected number after '^'")),
        }
    }

    fn base(&mut self) -> Result<WeightExpr, ParseError> {
        match self.peek() {
            Some(Token::Var) => {
                self.index += 1;
                Ok(WeightExpr::Var)
            }
            Some(Token::Num(v)) => {
                let v = *v;
                self.index += 1;
                Ok(WeightExpr::Lit(v))
            }
            Some(Token::LParen) => {
                self.index += 1;
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Some(Token::ExpFn) => {
                self.index += 1;
                self.expect(Token::LParen, "'(' after exp")?;
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(WeightExpr::Exp(Box::new(inner)))
            }
            Some(Token::LogFn) => {
                self.index += 1;
                self.expect(Token::LParen, "'(' after log")?;
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(WeightExpr::Log(Box::new(inner)))
            }
            _ => Err(self.error("expected 'r', a number, '(', 'exp(' or 'log('")),
        }
    }
}

/// Parse weight text into an expression tree.
pub fn parse_weight(text: &str) -> Result<WeightExpr, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(tok) = lexer.next()? {
        tokens.push(tok);
    }
    let end_col = text.len() + 1;
    let mut parser = Parser {
        tokens,
        index: 0,
        end_col,
    };
    let expr = parser.expr()?;
    if parser.index != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}
