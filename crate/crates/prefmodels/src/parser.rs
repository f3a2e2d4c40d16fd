//! Tokenizer and recursive-descent parser for the formula language.
//!
//! Grammar (ASCII), loosest-binding first:
//!
//! ```text
//! iff     := implies ('<->' iff)?      right-associative
//! implies := or ('->' implies)?        right-associative
//! or      := and ('|' and)*            left-associative
//! and     := unary ('&' unary)*        left-associative
//! unary   := '!' unary | '(' iff ')' | atom | 'T' | 'F'
//! atom    := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! `#` starts a comment running to the end of the line.

use crate::alphabet::Alphabet;
use crate::formula::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{0}`")]
    UnexpectedToken(String),
    #[error("invalid character `{0}`")]
    InvalidCharacter(char),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
}

/// A syntax or unknown-atom error with its position in the input.
///
/// `line` and `column` are 1-based; `offset` is the 0-based byte offset
/// into the parsed text (for multi-line inputs, into the whole text).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Atom(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Atom(name) => name.clone(),
            TokenKind::Top => "T".into(),
            TokenKind::Bot => "F".into(),
            TokenKind::Not => "!".into(),
            TokenKind::And => "&".into(),
            TokenKind::Or => "|".into(),
            TokenKind::Implies => "->".into(),
            TokenKind::Iff => "<->".into(),
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
    offset: usize,
}

struct Lexer<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, bytes: text.as_bytes(), pos: 0, line: 1, column: 1 }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, line: self.line, column: self.column, offset: self.pos }
    }

    fn bump(&mut self) {
        if self.bytes[self.pos] == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        self.pos += 1;
    }

    fn tokenize(mut self) -> Result<(Vec<Token>, Position), ParseError> {
        let mut tokens = Vec::new();
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => self.bump(),
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.bump();
                    }
                }
                _ => {
                    let start = (self.line, self.column, self.pos);
                    let kind = self.lex_token()?;
                    tokens.push(Token {
                        kind,
                        line: start.0,
                        column: start.1,
                        offset: start.2,
                    });
                }
            }
        }
        let end = Position { line: self.line, column: self.column, offset: self.pos };
        Ok((tokens, end))
    }

    fn lex_token(&mut self) -> Result<TokenKind, ParseError> {
        let b = self.bytes[self.pos];
        match b {
            b'!' => {
                self.bump();
                Ok(TokenKind::Not)
            }
            b'&' => {
                self.bump();
                Ok(TokenKind::And)
            }
            b'|' => {
                self.bump();
                Ok(TokenKind::Or)
            }
            b'(' => {
                self.bump();
                Ok(TokenKind::LParen)
            }
            b')' => {
                self.bump();
                Ok(TokenKind::RParen)
            }
            b'T' => {
                self.bump();
                Ok(TokenKind::Top)
            }
            b'F' => {
                self.bump();
                Ok(TokenKind::Bot)
            }
            b'-' => {
                if self.bytes.get(self.pos + 1) == Some(&b'>') {
                    self.bump();
                    self.bump();
                    Ok(TokenKind::Implies)
                } else {
                    Err(self.error(ParseErrorKind::InvalidCharacter('-')))
                }
            }
            b'<' => {
                if self.text[self.pos..].starts_with("<->") {
                    self.bump();
                    self.bump();
                    self.bump();
                    Ok(TokenKind::Iff)
                } else {
                    Err(self.error(ParseErrorKind::InvalidCharacter('<')))
                }
            }
            b'a'..=b'z' => {
                let start = self.pos;
                self.bump();
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.bump();
                }
                Ok(TokenKind::Atom(self.text[start..self.pos].to_string()))
            }
            _ => {
                let ch = self.text[self.pos..].chars().next().unwrap();
                Err(self.error(ParseErrorKind::InvalidCharacter(ch)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Position {
    line: usize,
    column: usize,
    offset: usize,
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    end: Position,
    alphabet: Option<&'a Alphabet>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn error_at_current(&self) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                kind: ParseErrorKind::UnexpectedToken(t.kind.describe()),
                line: t.line,
                column: t.column,
                offset: t.offset,
            },
            None => ParseError {
                kind: ParseErrorKind::UnexpectedEnd,
                line: self.end.line,
                column: self.end.column,
                offset: self.end.offset,
            },
        }
    }

    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_implies()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Iff)) {
            self.advance();
            let right = self.parse_iff()?;
            Ok(Formula::iff(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_or()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Implies)) {
            self.advance();
            let right = self.parse_implies()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.parse_and()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Or)) {
            self.advance();
            let right = self.parse_and()?;
            acc = Formula::or(acc, right);
        }
        Ok(acc)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.parse_unary()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::And)) {
            self.advance();
            let right = self.parse_unary()?;
            acc = Formula::and(acc, right);
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        let Some(token) = self.peek() else {
            return Err(self.error_at_current());
        };
        match &token.kind {
            TokenKind::Not => {
                self.advance();
                Ok(Formula::not(self.parse_unary()?))
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.parse_iff()?;
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::RParen)) {
                    self.advance();
                    Ok(inner)
                } else {
                    Err(self.error_at_current())
                }
            }
            TokenKind::Top => {
                self.advance();
                Ok(Formula::Top)
            }
            TokenKind::Bot => {
                self.advance();
                Ok(Formula::Bot)
            }
            TokenKind::Atom(name) => {
                if let Some(alphabet) = self.alphabet {
                    if !alphabet.contains(name) {
                        let t = token;
                        return Err(ParseError {
                            kind: ParseErrorKind::UnknownAtom(name.clone()),
                            line: t.line,
                            column: t.column,
                            offset: t.offset,
                        });
                    }
                }
                let name = name.clone();
                self.advance();
                Ok(Formula::atom(name))
            }
            _ => Err(self.error_at_current()),
        }
    }
}

fn parse_with(text: &str, alphabet: Option<&Alphabet>) -> Result<Formula, ParseError> {
    let (tokens, end) = Lexer::new(text).tokenize()?;
    let mut parser = Parser { tokens, pos: 0, end, alphabet };
    let formula = parser.parse_iff()?;
    if parser.peek().is_some() {
        return Err(parser.error_at_current());
    }
    Ok(formula)
}

/// Parses one formula; any atom name matching the grammar is accepted.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, None)
}

/// Parses one formula and rejects atoms outside `alphabet`.
pub fn parse_formula_strict(text: &str, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    parse_with(text, Some(alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    #[test]
    fn parses_with_precedence() {
        let f = parse_formula("p & (q | !r)").unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::atom("p"),
                Formula::or(Formula::atom("q"), Formula::not(Formula::atom("r")))
            )
        );

        let g = parse_formula("!(p & q)").unwrap();
        assert_eq!(g, Formula::not(Formula::and(Formula::atom("p"), Formula::atom("q"))));

        // ! binds tighter than &, & tighter than |, | tighter than ->.
        let h = parse_formula("!p & q | r -> s").unwrap();
        assert_eq!(
            h,
            Formula::implies(
                Formula::or(
                    Formula::and(Formula::not(Formula::atom("p")), Formula::atom("q")),
                    Formula::atom("r")
                ),
                Formula::atom("s")
            )
        );
    }

    #[test]
    fn arrows_are_right_associative() {
        let f = parse_formula("p -> q -> r").unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::atom("p"),
                Formula::implies(Formula::atom("q"), Formula::atom("r"))
            )
        );
        let g = parse_formula("p <-> q <-> r").unwrap();
        assert_eq!(
            g,
            Formula::iff(Formula::atom("p"), Formula::iff(Formula::atom("q"), Formula::atom("r")))
        );
    }

    #[test]
    fn constants_and_comments() {
        assert_eq!(parse_formula("T").unwrap(), Formula::Top);
        assert_eq!(parse_formula("F | p").unwrap(), Formula::or(Formula::Bot, Formula::atom("p")));
        assert_eq!(
            parse_formula("p & q  # trailing note").unwrap(),
            Formula::and(Formula::atom("p"), Formula::atom("q"))
        );
    }

    #[test]
    fn truncated_input_reports_end_position() {
        let err = parse_formula("p &").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(err.offset, 3);
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 4);
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let err = parse_formula("p @ q").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InvalidCharacter('@'));
        assert_eq!(err.column, 3);

        let err = parse_formula("(p | q").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);

        let err = parse_formula("p q").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken("q".into()));
        assert_eq!(err.column, 3);

        let err = parse_formula("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(err.offset, 0);
    }

    #[test]
    fn strict_mode_rejects_unknown_atoms() {
        let alphabet = Alphabet::new(["p", "q"]).unwrap();
        assert!(parse_formula_strict("p -> q", &alphabet).is_ok());
        let err = parse_formula_strict("p -> zebra", &alphabet).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownAtom("zebra".into()));
        assert_eq!(err.column, 6);
    }

    #[test]
    fn rendered_formulas_reparse_identically() {
        for text in [
            "p & (q | !r)",
            "!(p & q)",
            "p -> q -> r",
            "(p -> q) -> r",
            "p <-> (q <-> r) <-> s",
            "!!p | T & F",
        ] {
            let parsed = parse_formula(text).unwrap();
            let reparsed = parse_formula(&parsed.to_string()).unwrap();
            assert_eq!(parsed, reparsed, "round-trip failed for {text}");
        }
    }
}
