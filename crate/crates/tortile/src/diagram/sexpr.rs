//! Minimal s-expression reader shared by the term and word syntaxes.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SExprError {
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("unexpected token {0:?}")]
    Unexpected(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
                toks.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn parse(tokens: &[String], pos: &mut usize) -> Result<SExpr, SExprError> {
    if *pos >= tokens.len() {
        return Err(SExprError::Unbalanced);
    }
    let tok = &tokens[*pos];
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                if *pos >= tokens.len() {
                    return Err(SExprError::Unbalanced);
                }
                if tokens[*pos] == ")" {
                    *pos += 1;
                    return Ok(SExpr::List(items));
                }
                items.push(parse(tokens, pos)?);
            }
        }
        ")" => Err(SExprError::Unbalanced),
        a => Ok(SExpr::Atom(a.to_string())),
    }
}

/// Read one s-expression covering the whole input.
pub fn read(s: &str) -> Result<SExpr, SExprError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let e = parse(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(SExprError::Unexpected(tokens[pos].clone()));
    }
    Ok(e)
}
