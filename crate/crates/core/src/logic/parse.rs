//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := impl
//! impl    := or ('->' impl)?                 right-associative
//! or      := and ('\/' and)*                 left-associative
//! and     := unary ('/\' unary)*             left-associative
//! unary   := '~' unary | quant | atom
//! quant   := ('forall' | 'exists') IDENT '(' formula ')'
//! atom    := IDENT '(' term (',' term)* ')' | term '<' term | '(' formula ')'
//! term    := IDENT
//! ```
//!
//! Quantifiers sit at the unary level; their bodies are always parenthesized,
//! so `forall x (a) -> b` reads as `(forall x (a)) -> b`. `#` starts a comment
//! running to the end of the line.

use std::fmt;

use thiserror::Error;

use super::syntax::{Formula, Signature, SignatureError, Term, LESS};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Tilde,
    And,
    Or,
    Arrow,
    Less,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Forall => f.write_str("`forall`"),
            Tok::Exists => f.write_str("`exists`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::And => f.write_str("`/\\`"),
            Tok::Or => f.write_str("`\\/`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Less => f.write_str("`<`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: expected {}, found {found}", expected.join(" or "))]
    Unexpected {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{column}: unexpected character `{ch}`")]
    BadChar {
        line: usize,
        column: usize,
        ch: char,
    },
    #[error("{line}:{column}: {source}")]
    Signature {
        line: usize,
        column: usize,
        source: SignatureError,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Unexpected { line, column, .. }
            | ParseError::BadChar { line, column, .. }
            | ParseError::Signature { line, column, .. } => (*line, *column),
        }
    }

    /// Shifts the reported line, for formulas embedded in a larger file.
    pub fn at_line(self, file_line: usize) -> Self {
        match self {
            ParseError::Unexpected {
                column,
                expected,
                found,
                ..
            } => ParseError::Unexpected {
                line: file_line,
                column,
                expected,
                found,
            },
            ParseError::BadChar { column, ch, .. } => ParseError::BadChar {
                line: file_line,
                column,
                ch,
            },
            ParseError::Signature { column, source, .. } => ParseError::Signature {
                line: file_line,
                column,
                source,
            },
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '~' => push(Tok::Tilde, 1, &mut i, &mut col),
            '<' => push(Tok::Less, 1, &mut i, &mut col),
            '/' if chars.get(i + 1) == Some(&'\\') => push(Tok::And, 2, &mut i, &mut col),
            '\\' if chars.get(i + 1) == Some(&'/') => push(Tok::Or, 2, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(word),
                };
                push(tok, j - i, &mut i, &mut col);
            }
            ch => {
                return Err(ParseError::BadChar {
                    line,
                    column: col,
                    ch,
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'s Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError::Unexpected {
            line: here.line,
            column: here.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.error(&[what])),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let at = self.pos;
                let v = self.ident("a bound variable")?;
                if self.sig.is_constant(&v) {
                    self.pos = at;
                    return Err(self.error(&["a variable (not a declared constant)"]));
                }
                self.expect(Tok::LParen, "`(`")?;
                let body = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(if universal {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                })
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) => self.atom(),
            _ => Err(self.error(&["`~`", "`forall`", "`exists`", "`(`", "identifier"])),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let name = self.ident("a term")?;
        Ok(if self.sig.is_constant(&name) {
            Term::Const(name)
        } else {
            Term::Var(name)
        })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        match self.peek2() {
            Tok::LParen => {
                let name = self.ident("a predicate")?;
                self.bump();
                let mut args = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                let f = Formula::Pred(name, args);
                self.check_signature(&f, start)?;
                Ok(f)
            }
            Tok::Less => {
                let a = self.term()?;
                self.bump();
                let b = self.term()?;
                Ok(Formula::Pred(LESS.into(), vec![a, b]))
            }
            _ => {
                self.bump();
                Err(self.error(&["`(`", "`<`"]))
            }
        }
    }

    fn check_signature(&self, f: &Formula, at: usize) -> Result<(), ParseError> {
        self.sig.check(f).map_err(|source| ParseError::Signature {
            line: self.toks[at].line,
            column: self.toks[at].column,
            source,
        })
    }
}

/// Parses a formula over the Black Swan signature.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, &Signature::black_swan())
}

/// Parses a formula, resolving identifiers in term position against the
/// declared constants of `sig` and checking predicate arities.
pub fn parse_formula_with(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`->`", "`\\/`", "`/\\`", "end of input"]));
    }
    Ok(f)
}
