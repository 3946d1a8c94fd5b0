//! Tokenizer for the interval expression language.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Comma,
    Semi,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'+' => push(&mut out, Tok::Plus, start, &mut i),
            b'-' => push(&mut out, Tok::Minus, start, &mut i),
            b'*' => push(&mut out, Tok::Star, start, &mut i),
            b'/' => push(&mut out, Tok::Slash, start, &mut i),
            b'^' => push(&mut out, Tok::Caret, start, &mut i),
            b'(' => push(&mut out, Tok::LParen, start, &mut i),
            b')' => push(&mut out, Tok::RParen, start, &mut i),
            b'[' => push(&mut out, Tok::LBracket, start, &mut i),
            b']' => push(&mut out, Tok::RBracket, start, &mut i),
            b'<' => push(&mut out, Tok::LAngle, start, &mut i),
            b'>' => push(&mut out, Tok::RAngle, start, &mut i),
            b',' => push(&mut out, Tok::Comma, start, &mut i),
            b';' => push(&mut out, Tok::Semi, start, &mut i),
            b'0'..=b'9' | b'.' => {
                i = scan_number(bytes, i)?;
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| Error::Syntax {
                    offset: start,
                    message: format!("invalid number `{text}`"),
                })?;
                out.push(Token {
                    tok: Tok::Number(value),
                    offset: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{}`", &src[start..start + 1]),
                });
            }
        }
    }
    Ok(out)
}

fn push(out: &mut Vec<Token>, tok: Tok, offset: usize, i: &mut usize) {
    out.push(Token { tok, offset });
    *i += 1;
}

fn scan_number(bytes: &[u8], mut i: usize) -> Result<usize> {
    let start = i;
    let mut saw_digit = false;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        saw_digit = true;
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            saw_digit = true;
            i += 1;
        }
    }
    if !saw_digit {
        return Err(Error::Syntax {
            offset: start,
            message: "expected digits".into(),
        });
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = j;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_symbols() {
        let toks = tokenize("[1.5e-2, 2]*t").unwrap();
        assert_eq!(toks[0].tok, Tok::LBracket);
        assert_eq!(toks[1].tok, Tok::Number(0.015));
        assert_eq!(toks[2].tok, Tok::Comma);
        assert_eq!(toks[5].tok, Tok::Star);
        assert_eq!(toks[6].tok, Tok::Ident("t".into()));
        assert_eq!(toks[6].offset, 12);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(tokenize("1 ? 2"), Err(Error::Syntax { offset: 2, .. })));
    }
}
