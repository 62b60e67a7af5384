//! Tokenizer shared by the polynomial and session parsers.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Eq => "=",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Splits `text` into tokens; `#` starts a comment running to end of line.
/// Lines and columns are 1-based.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                other => {
                    return Err(Error::parse(tl, tc, format!("unexpected character `{other}`")))
                }
            }
        };
        col += i - start;
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Cursor over a token list.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self> {
        Ok(Cursor {
            tokens: tokenize(text)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub(crate) fn peek_tok(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub(crate) fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<Token> {
        if self.peek_tok() == tok {
            Ok(self.next())
        } else {
            Err(self.error(format!("expected {}, found {}", tok.describe(), self.peek_tok().describe())))
        }
    }

    pub(crate) fn expect_ident(&mut self) -> Result<(String, Token)> {
        match self.peek_tok().clone() {
            Tok::Ident(s) => Ok((s, self.next())),
            other => Err(self.error(format!("expected identifier, found {}", other.describe()))),
        }
    }

    pub(crate) fn expect_keyword(&mut self, kw: &str) -> Result<Token> {
        match self.peek_tok() {
            Tok::Ident(s) if s == kw => Ok(self.next()),
            other => Err(self.error(format!("expected `{kw}`, found {}", other.describe()))),
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        Error::parse(t.line, t.column, message)
    }

    pub(crate) fn error_at(&self, t: &Token, message: impl Into<String>) -> Error {
        Error::parse(t.line, t.column, message)
    }
}
