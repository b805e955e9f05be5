//! Tokenizer for the expression surface syntax.
//!
//! Whitespace (including newlines) only separates tokens; `#` starts a
//! comment running to end of line. Every token carries the 1-based line and
//! column where it starts, which syntax errors report.

use super::FrontendError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Number(usize),
    KwOb,
    KwHom,
    KwTerm,
    KwId,
    KwBraid,
    KwPerm,
    KwUnit,
    Colon,
    Arrow,
    Star,
    Semi,
    Equals,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Pipe,
    Eof,
}

impl std::fmt::Display for TokenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Number(n) => write!(f, "number `{n}`"),
            TokenKind::KwOb => f.write_str("`ob`"),
            TokenKind::KwHom => f.write_str("`hom`"),
            TokenKind::KwTerm => f.write_str("`term`"),
            TokenKind::KwId => f.write_str("`id`"),
            TokenKind::KwBraid => f.write_str("`braid`"),
            TokenKind::KwPerm => f.write_str("`perm`"),
            TokenKind::KwUnit => f.write_str("`I`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Semi => f.write_str("`;`"),
            TokenKind::Equals => f.write_str("`=`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Pipe => f.write_str("`|`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, FrontendError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        let kind = match c {
            ':' => Some(TokenKind::Colon),
            '*' => Some(TokenKind::Star),
            ';' => Some(TokenKind::Semi),
            '=' => Some(TokenKind::Equals),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '|' => Some(TokenKind::Pipe),
            _ => None,
        };
        if let Some(kind) = kind {
            advance(&mut i, &mut line, &mut col);
            tokens.push(Token {
                kind,
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c == '-' {
            if i + 1 < chars.len() && chars[i + 1] == '>' {
                advance(&mut i, &mut line, &mut col);
                advance(&mut i, &mut line, &mut col);
                tokens.push(Token {
                    kind: TokenKind::Arrow,
                    line: tline,
                    col: tcol,
                });
                continue;
            }
            return Err(FrontendError::SyntaxError {
                line: tline,
                col: tcol,
                msg: "stray `-` (did you mean `->`?)".into(),
            });
        }
        if c.is_ascii_digit() {
            let mut n: usize = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                n = n * 10 + (chars[i] as usize - '0' as usize);
                advance(&mut i, &mut line, &mut col);
            }
            tokens.push(Token {
                kind: TokenKind::Number(n),
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                word.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            let kind = match word.as_str() {
                "ob" => TokenKind::KwOb,
                "hom" => TokenKind::KwHom,
                "term" => TokenKind::KwTerm,
                "id" => TokenKind::KwId,
                "braid" => TokenKind::KwBraid,
                "perm" => TokenKind::KwPerm,
                "I" => TokenKind::KwUnit,
                _ => TokenKind::Ident(word),
            };
            tokens.push(Token {
                kind,
                line: tline,
                col: tcol,
            });
            continue;
        }
        return Err(FrontendError::SyntaxError {
            line: tline,
            col: tcol,
            msg: format!("unexpected character `{c}`"),
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}
