//! Tokens of the expression language.

use num_bigint::BigUint;

use crate::error::DslError;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigUint),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    /// `(x)`
    Tensor,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Tensor => "`(x)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (tok, len) = match c {
            '(' if chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') => (Tok::Tensor, 3),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            ',' => (Tok::Comma, 1),
            '+' => (Tok::Plus, 1),
            '-' => (Tok::Minus, 1),
            '*' => (Tok::Star, 1),
            '/' => (Tok::Slash, 1),
            '^' => (Tok::Caret, 1),
            d if d.is_ascii_digit() => {
                let end = (i..chars.len()).find(|&k| !chars[k].is_ascii_digit()).unwrap_or(chars.len());
                let digits: String = chars[i..end].iter().collect();
                (Tok::Int(digits.parse().expect("ascii digits")), end - i)
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let end = (i..chars.len())
                    .find(|&k| !(chars[k].is_ascii_alphanumeric() || chars[k] == '_'))
                    .unwrap_or(chars.len());
                (Tok::Ident(chars[i..end].iter().collect()), end - i)
            }
            other => return Err(DslError::syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_sign_is_one_token() {
        let toks: Vec<Tok> = tokenize("e (x) (f)").unwrap().into_iter().map(|t| t.0).collect();
        assert_eq!(
            toks,
            vec![Tok::Ident("e".into()), Tok::Tensor, Tok::LParen, Tok::Ident("f".into()), Tok::RParen, Tok::Eof]
        );
    }

    #[test]
    fn positions_track_lines() {
        let toks = tokenize("e +\n  f12").unwrap();
        assert_eq!(toks[2].1, Pos { line: 2, col: 3 });
        let err = tokenize("e + $").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 1, col: 5 }));
    }
}
