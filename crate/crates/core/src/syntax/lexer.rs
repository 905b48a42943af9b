use super::parser::{ErrorKind, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Tilde,
    Bang,
    Amp,
    Bar,
    BoolOr,
    Equals,
    Diamond,
    BoxOp,
    Arrow,
    DoubleArrow,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::BoolOr => "`\\/`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Diamond => "`<>`".into(),
            Tok::BoxOp => "`[]`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
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
        let peek = chars.get(i + 1).copied();
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            (Tok::Ident(chars[start..j].iter().collect()), j - start)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let n = s.parse().map_err(|_| {
                ParseError::new(pos, ErrorKind::Syntax, format!("number `{s}` is too large"))
            })?;
            (Tok::Number(n), j - i)
        } else {
            match (c, peek) {
                ('<', Some('-')) if chars.get(i + 2) == Some(&'>') => (Tok::DoubleArrow, 3),
                ('<', Some('>')) => (Tok::Diamond, 2),
                ('[', Some(']')) => (Tok::BoxOp, 2),
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('\\', Some('/')) => (Tok::BoolOr, 2),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                (',', _) => (Tok::Comma, 1),
                ('.', _) => (Tok::Dot, 1),
                (':', _) => (Tok::Colon, 1),
                ('~', _) => (Tok::Tilde, 1),
                ('!', _) => (Tok::Bang, 1),
                ('&', _) => (Tok::Amp, 1),
                ('|', _) => (Tok::Bar, 1),
                ('=', _) => (Tok::Equals, 1),
                _ => {
                    return Err(ParseError::new(
                        pos,
                        ErrorKind::Syntax,
                        format!("unexpected character `{c}`"),
                    ))
                }
            }
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
    fn multi_char_operators() {
        let toks: Vec<Tok> = tokenize("<> [] -> <-> \\/ [x]").unwrap().into_iter().map(|t| t.0).collect();
        assert_eq!(
            toks,
            vec![
                Tok::Diamond,
                Tok::BoxOp,
                Tok::Arrow,
                Tok::DoubleArrow,
                Tok::BoolOr,
                Tok::LBracket,
                Tok::Ident("x".into()),
                Tok::RBracket,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_track_lines() {
        let toks = tokenize("E x.\n  P(x)").unwrap();
        assert_eq!(toks[3].1, Pos { line: 2, col: 3 });
        let err = tokenize("P(x) $").unwrap_err();
        assert_eq!((err.line, err.col), (1, 6));
    }
}
