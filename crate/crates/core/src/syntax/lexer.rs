use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Dot,
    Star,
    SeqL,
    SeqR,
    Lt,
    Gt,
    Comma,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Eq,
    Le,
    Arrow,
    Colon,
}

impl Tok {
    pub(crate) fn show(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Dot => "`.`".into(),
            Tok::Star => "`*`".into(),
            Tok::SeqL => "`|><`".into(),
            Tok::SeqR => "`><|`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Eq => "`==`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Colon => "`:`".into(),
        }
    }
}

/// A token with its 1-based line and column.
#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: &[(&str, Tok)] = &[
    ("|><", Tok::SeqL),
    ("><|", Tok::SeqR),
    ("==", Tok::Eq),
    ("<=", Tok::Le),
    ("->", Tok::Arrow),
    ("~>", Tok::Arrow),
    (".", Tok::Dot),
    ("*", Tok::Star),
    ("<", Tok::Lt),
    (">", Tok::Gt),
    (",", Tok::Comma),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("[", Tok::LBrack),
    ("]", Tok::RBrack),
    (":", Tok::Colon),
];

/// Tokenizes one line; `col0` is the column of `text`'s first byte.
pub(crate) fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let col = col0 + text[..i].chars().count();
        if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(text[start..i].to_string()), line, col });
            continue;
        }
        for (s, t) in SYMBOLS {
            if text[i..].starts_with(s) {
                out.push(Spanned { tok: t.clone(), line, col });
                i += s.len();
                continue 'outer;
            }
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return Err(Error::Parse { line, col, msg: format!("unexpected character `{ch}`") });
    }
    Ok(out)
}
