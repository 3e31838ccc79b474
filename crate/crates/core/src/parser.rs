//! Lexer and recursive-descent parser for the IMP concrete syntax.
//!
//! ```text
//! com    ::= seq
//! seq    ::= atom (";" seq)?
//! atom   ::= "SKIP" | ident ":=" aexp
//!          | "IF" bexp "THEN" com "ELSE" com "FI"
//!          | "WHILE" bexp "DO" com "OD"
//!          | "(" com ")"
//! bexp   ::= bconj ("&&" bexp)?
//! bconj  ::= "!" bconj | "true" | "false" | aexp "<" aexp | "(" bexp ")"
//! aexp   ::= term ("+" term)*
//! term   ::= int-literal | ident | "(" aexp ")"
//! ```
//!
//! Integer literals take an optional leading `-`. `--` starts a line comment.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::syntax::{Aexp, Bexp, Com, Var};

const KEYWORDS: [&str; 10] = [
    "SKIP", "IF", "THEN", "ELSE", "FI", "WHILE", "DO", "OD", "true", "false",
];

/// Nesting limit for parenthesized or compound forms.
const MAX_DEPTH: usize = 256;

pub fn is_reserved(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{position}: {message}")]
pub struct ParseError {
    pub position: Position,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    fn expected(position: Position, expected: &[&str], found: &str) -> ParseError {
        let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        ParseError {
            position,
            message: format!("expected {}, found {found}", expected.join(" or ")),
            expected,
        }
    }

    /// Keeps the error that got furthest; ties merge their expectations.
    fn merge(self, other: ParseError) -> ParseError {
        use std::cmp::Ordering;
        match self.position.cmp(&other.position) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => {
                let mut expected = self.expected;
                for e in other.expected {
                    if !expected.contains(&e) {
                        expected.push(e);
                    }
                }
                let found = self
                    .message
                    .rsplit_once(", found ")
                    .map(|(_, f)| f.to_string())
                    .unwrap_or_default();
                ParseError {
                    position: self.position,
                    message: format!("expected {}, found {found}", expected.join(" or ")),
                    expected,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Keyword(&'static str),
    Ident(String),
    Int(BigInt),
    Assign,
    Semi,
    LParen,
    RParen,
    AndAnd,
    Bang,
    Lt,
    Plus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Keyword(k) => write!(f, "`{k}`"),
            Tok::Ident(x) => write!(f, "identifier `{x}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Assign => f.write_str("`:=`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::AndAnd => f.write_str("`&&`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, Position)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut column = 1;

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column };
        let next = chars.get(i + 1).copied();
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '-' && next == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let simple = match (c, next) {
            (':', Some('=')) => Some((Tok::Assign, 2)),
            ('&', Some('&')) => Some((Tok::AndAnd, 2)),
            (';', _) => Some((Tok::Semi, 1)),
            ('(', _) => Some((Tok::LParen, 1)),
            (')', _) => Some((Tok::RParen, 1)),
            ('!', _) => Some((Tok::Bang, 1)),
            ('<', _) => Some((Tok::Lt, 1)),
            ('+', _) => Some((Tok::Plus, 1)),
            _ => None,
        };
        if let Some((tok, width)) = simple {
            for _ in 0..width {
                bump!();
            }
            tokens.push((tok, pos));
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            bump!();
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse().expect("lexed digits form an integer");
            tokens.push((Tok::Int(value), pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match KEYWORDS.iter().find(|k| **k == word) {
                Some(k) => Tok::Keyword(k),
                None => Tok::Ident(word),
            };
            tokens.push((tok, pos));
            continue;
        }
        return Err(ParseError {
            position: pos,
            message: format!("unexpected character {c:?}"),
            expected: vec![],
        });
    }
    tokens.push((Tok::Eof, Position { line, column }));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Tok, Position)>,
    pos: usize,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(input: &str) -> PResult<Parser> {
        Ok(Parser {
            tokens: lex(input)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn position(&self) -> Position {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> Tok {
        let tok = self.tokens[self.pos].0.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::expected(self.position(), expected, &self.peek().to_string())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn keyword(&mut self, k: &'static str) -> PResult<()> {
        self.expect(Tok::Keyword(k))
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
        if self.depth >= MAX_DEPTH {
            return Err(ParseError {
                position: self.position(),
                message: format!("nesting deeper than {MAX_DEPTH} levels"),
                expected: vec![],
            });
        }
        self.depth += 1;
        let result = f(self);
        self.depth -= 1;
        result
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn com(&mut self) -> PResult<Com> {
        let mut atoms = vec![self.nested(Parser::atom)?];
        while self.eat(&Tok::Semi) {
            atoms.push(self.nested(Parser::atom)?);
        }
        let last = atoms.pop().expect("at least one atom");
        Ok(atoms
            .into_iter()
            .rev()
            .fold(last, |rest, c| Com::seq(c, rest)))
    }

    fn atom(&mut self) -> PResult<Com> {
        match self.peek().clone() {
            Tok::Keyword("SKIP") => {
                self.advance();
                Ok(Com::Skip)
            }
            Tok::Ident(name) => {
                self.advance();
                self.expect(Tok::Assign)?;
                let var = Var::new(&name).expect("lexer only yields valid identifiers");
                Ok(Com::Set(var, self.aexp()?))
            }
            Tok::Keyword("IF") => {
                self.advance();
                let guard = self.bexp()?;
                self.keyword("THEN")?;
                let then_branch = self.com()?;
                self.keyword("ELSE")?;
                let else_branch = self.com()?;
                self.keyword("FI")?;
                Ok(Com::if_then_else(guard, then_branch, else_branch))
            }
            Tok::Keyword("WHILE") => {
                self.advance();
                let guard = self.bexp()?;
                self.keyword("DO")?;
                let body = self.com()?;
                self.keyword("OD")?;
                Ok(Com::while_do(guard, body))
            }
            Tok::LParen => {
                self.advance();
                let c = self.com()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            _ => Err(self.error(&["command"])),
        }
    }

    fn bexp(&mut self) -> PResult<Bexp> {
        let mut conjuncts = vec![self.nested(Parser::bconj)?];
        while self.eat(&Tok::AndAnd) {
            conjuncts.push(self.nested(Parser::bconj)?);
        }
        let last = conjuncts.pop().expect("at least one conjunct");
        Ok(conjuncts
            .into_iter()
            .rev()
            .fold(last, |rest, b| Bexp::and(b, rest)))
    }

    fn bconj(&mut self) -> PResult<Bexp> {
        match self.peek() {
            Tok::Bang => {
                self.advance();
                Ok(Bexp::negate(self.nested(Parser::bconj)?))
            }
            Tok::Keyword("true") => {
                self.advance();
                Ok(Bexp::Bc(true))
            }
            Tok::Keyword("false") => {
                self.advance();
                Ok(Bexp::Bc(false))
            }
            Tok::LParen => {
                // Either a parenthesized operand of `<` or a parenthesized bexp.
                let start = self.pos;
                let as_less = match self.less() {
                    Ok(b) => return Ok(b),
                    Err(e) => e,
                };
                self.pos = start;
                self.advance();
                let as_group = self.bexp().and_then(|b| {
                    self.expect(Tok::RParen)?;
                    Ok(b)
                });
                as_group.map_err(|e| e.merge(as_less))
            }
            Tok::Int(_) | Tok::Ident(_) => self.less(),
            _ => Err(self.error(&["boolean expression"])),
        }
    }

    fn less(&mut self) -> PResult<Bexp> {
        let left = self.aexp()?;
        self.expect(Tok::Lt)?;
        let right = self.aexp()?;
        Ok(Bexp::less(left, right))
    }

    fn aexp(&mut self) -> PResult<Aexp> {
        let mut acc = self.nested(Parser::term)?;
        while self.eat(&Tok::Plus) {
            let right = self.nested(Parser::term)?;
            acc = Aexp::plus(acc, right);
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Aexp> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Aexp::N(n))
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(Aexp::V(
                    Var::new(&name).expect("lexer only yields valid identifiers"),
                ))
            }
            Tok::LParen => {
                self.advance();
                let a = self.aexp()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            _ => Err(self.error(&["arithmetic expression"])),
        }
    }
}

fn parse_all<T>(input: &str, rule: fn(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut parser = Parser::new(input)?;
    let value = rule(&mut parser)?;
    parser.finish()?;
    Ok(value)
}

pub fn parse_com(input: &str) -> Result<Com, ParseError> {
    parse_all(input, Parser::com)
}

pub fn parse_aexp(input: &str) -> Result<Aexp, ParseError> {
    parse_all(input, Parser::aexp)
}

pub fn parse_bexp(input: &str) -> Result<Bexp, ParseError> {
    parse_all(input, Parser::bexp)
}
