//! Morphism literals.
//!
//! ```text
//! literal  := [name ':'] (partial | state)
//! partial  := INT '->' INT '=' '[' [entry {',' entry}] ']'      entry := INT | '_'
//! state    := 'S' '=' INT ',' INT '->' INT '=' '[' [row {',' row}] ']'
//! row      := '(' INT ',' INT ')' '->' '(' INT ',' INT ')'       rows in (s, x) row-major order
//! ```
//! Whitespace is free. Errors carry the 1-based column of the offending byte.

use super::partial::PartialMap;
use super::state::StateMap;
use crate::error::{Error, Result};
use crate::finite::FinSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiteralBody {
    Partial(PartialMap),
    State(StateMap),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub name: Option<String>,
    pub body: LiteralBody,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: 1, col: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn at_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }
}

fn optional_name(c: &mut Cursor<'_>) -> Option<String> {
    c.skip_ws();
    let start = c.pos;
    let mut end = start;
    while end < c.src.len() && (c.src[end].is_ascii_alphanumeric() || c.src[end] == b'_') {
        end += 1;
    }
    if end == start || c.src[start].is_ascii_digit() {
        return None;
    }
    let mut after = end;
    while after < c.src.len() && c.src[after].is_ascii_whitespace() {
        after += 1;
    }
    if c.src.get(after) == Some(&b':') {
        c.pos = after + 1;
        Some(String::from_utf8_lossy(&c.src[start..end]).into_owned())
    } else {
        None
    }
}

pub fn parse_literal(src: &str) -> Result<Literal> {
    let mut c = Cursor { src: src.as_bytes(), pos: 0 };
    let name = optional_name(&mut c);
    let body = if c.peek() == Some(b'S') {
        LiteralBody::State(state_body(&mut c)?)
    } else {
        LiteralBody::Partial(partial_body(&mut c)?)
    };
    c.at_end()?;
    Ok(Literal { name, body })
}

pub fn parse_partial(src: &str) -> Result<PartialMap> {
    match parse_literal(src)?.body {
        LiteralBody::Partial(f) => Ok(f),
        LiteralBody::State(_) => Err(Error::Parse { line: 1, col: 1, msg: "expected a partial map literal".into() }),
    }
}

pub fn parse_state(src: &str) -> Result<StateMap> {
    match parse_literal(src)?.body {
        LiteralBody::State(f) => Ok(f),
        LiteralBody::Partial(_) => Err(Error::Parse { line: 1, col: 1, msg: "expected a state map literal".into() }),
    }
}

fn signature(c: &mut Cursor<'_>) -> Result<(FinSet, FinSet)> {
    let d = c.int()?;
    c.expect("->")?;
    let e = c.int()?;
    c.expect("=")?;
    Ok((FinSet::new(d), FinSet::new(e)))
}

fn partial_body(c: &mut Cursor<'_>) -> Result<PartialMap> {
    let (dom, cod) = signature(c)?;
    let start = c.pos;
    let entries = c.list(|c| {
        if c.eat("_") {
            return Ok(None);
        }
        c.skip_ws();
        let at = c.pos;
        let y = c.int()?;
        if y >= cod.size {
            c.pos = at;
            return c.err(format!("entry {y} is not below {}", cod.size));
        }
        Ok(Some(y))
    })?;
    PartialMap::new(dom, cod, &entries).or_else(|e| {
        c.pos = start;
        c.err(e.to_string())
    })
}

fn state_body(c: &mut Cursor<'_>) -> Result<StateMap> {
    c.expect("S")?;
    c.expect("=")?;
    let states = FinSet::new(c.int()?);
    c.expect(",")?;
    let (dom, cod) = signature(c)?;
    let start = c.pos;
    let mut index = 0usize;
    let rows = c.list(|c| {
        let at = c.pos;
        c.expect("(")?;
        let s = c.int()?;
        c.expect(",")?;
        let x = c.int()?;
        c.expect(")")?;
        c.expect("->")?;
        c.expect("(")?;
        let t = c.int()?;
        c.expect(",")?;
        let y = c.int()?;
        c.expect(")")?;
        let want = if dom.size == 0 { None } else { Some((index / dom.size, index % dom.size)) };
        if want != Some((s, x)) {
            c.pos = at;
            return c.err(format!("row ({s},{x}) out of row-major order"));
        }
        index += 1;
        Ok((t, y))
    })?;
    StateMap::new(states, dom, cod, &rows).or_else(|e| {
        c.pos = start;
        c.err(e.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_literal() {
        let lit = parse_literal("f: 2->3 = [1, _]").unwrap();
        assert_eq!(lit.name.as_deref(), Some("f"));
        let LiteralBody::Partial(f) = lit.body else { panic!() };
        assert_eq!(f.entries(), vec![Some(1), None]);
        assert_eq!(parse_partial(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn state_literal() {
        let f = parse_state("w: S=2, 1->1 = [(0,0)->(1,0), (1,0)->(1,0)]").unwrap();
        assert_eq!(f.apply(0, 0), (1, 0));
        assert_eq!(parse_state(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn errors_have_positions() {
        match parse_literal("2->3 = [1, 7]") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 12),
            other => panic!("{other:?}"),
        }
        match parse_literal("2->3 [1]") {
            Err(Error::Parse { col, msg, .. }) => {
                assert_eq!(col, 6);
                assert!(msg.contains('='));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_literal("S=2, 1->1 = [(1,0)->(0,0), (0,0)->(0,0)]").is_err());
    }
}
