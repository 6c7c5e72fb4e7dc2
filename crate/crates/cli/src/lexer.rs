//! Tokens of the statement language. One statement per line; `#` starts a
//! comment.

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(i64),
    Ident(String),
    Punct(char),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    /// 1-based column of the first character.
    pub col: usize,
}

const PUNCT: &str = "+-*/^()[]{},|=";

pub fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let n = text.parse::<i64>().map_err(|_| CliError::syntax(lineno, col, "integer literal too large"))?;
            out.push(Token { tok: Tok::Int(n), col });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), col });
            continue;
        }
        if c == '∞' {
            out.push(Token { tok: Tok::Ident("inf".into()), col });
            k += 1;
            continue;
        }
        if PUNCT.contains(c) {
            out.push(Token { tok: Tok::Punct(c), col });
            k += 1;
            continue;
        }
        return Err(CliError::syntax(lineno, col, format!("unexpected character {c:?}")));
    }
    Ok(out)
}
