use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Define,
    FatArrow,
    Arrow,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Define => f.write_str("`:=`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
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
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '*' => (Tok::Star, 1),
            ':' if next == Some('=') => (Tok::Define, 2),
            ':' => (Tok::Colon, 1),
            '=' if next == Some('>') => (Tok::FatArrow, 2),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            c if ident_start(c) => {
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        Some(&d) if ident_continue(d) => j += 1,
                        // hyphenated names such as `pglue-beta`; `a->b` stays an arrow
                        Some('-') if chars.get(j + 1).is_some_and(|d| d.is_alphanumeric()) => j += 1,
                        _ => break,
                    }
                }
                (Tok::Ident(chars[i..j].iter().collect()), j - i)
            }
            other => {
                return Err(ParseError::Syntax { line, col, found: format!("`{other}`"), expected: "a token".into() })
            }
        };
        out.push(Token { tok, line, col });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn hyphenated_identifiers_and_arrows() {
        assert_eq!(
            toks("pglue-beta a->b"),
            vec![Tok::Ident("pglue-beta".into()), Tok::Ident("a".into()), Tok::Arrow, Tok::Ident("b".into()), Tok::Eof]
        );
    }

    #[test]
    fn comments_and_positions() {
        let t = tokenize("# hi\n  def x").unwrap();
        assert_eq!(t[0].line, 2);
        assert_eq!(t[0].col, 3);
        assert_eq!(t[1].col, 7);
    }

    #[test]
    fn rejects_stray_characters() {
        assert!(matches!(tokenize("def x := $"), Err(ParseError::Syntax { col: 10, .. })));
    }
}
