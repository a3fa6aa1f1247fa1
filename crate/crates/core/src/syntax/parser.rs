//! Recursive-descent parser for terms, judgments, proof scripts and the
//! block format used by the law registry and the rule table.
//!
//! ```text
//! judgment := term ('==' | '<=') term
//! term     := factor {'.' factor}                   composition, left associative
//! factor   := atom [('*' | '|><' | '><|') atom]
//! atom     := CONST '[' obj {',' obj} ']' | SYMBOL | '(' term ')'
//!           | '<' term ',' term '>' ['_l' | '_r']
//! obj      := oatom {'*' oatom}                     left associative
//! oatom    := NAME | 'U' | '(' obj ')'
//! CONST    := id | bang | p1 | p2 | swap | assoc | associnv | rho | diag
//! ```

use super::lexer::{lex, Spanned, Tok};
use super::{Assumption, Decls, Judgment, Obj, Rel, Script, Step, SymDecl, Term};
use crate::error::{Error, Result};

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn new(text: &str, line: usize, col0: usize) -> Result<Self> {
        let toks = lex(text, line, col0)?;
        let end_col = col0 + text.chars().count();
        Ok(Parser { toks, pos: 0, line, end_col })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.line, self.end_col),
        };
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            let found = self.peek().map(Tok::show).unwrap_or_else(|| "end of line".into());
            self.err(format!("expected {}, found {found}", t.show()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(format!("unexpected {}", t.show())),
        }
    }

    fn obj(&mut self) -> Result<Obj> {
        let mut o = self.obj_atom()?;
        while self.eat(&Tok::Star) {
            let r = self.obj_atom()?;
            o = Obj::prod(o, r);
        }
        Ok(o)
    }

    fn obj_atom(&mut self) -> Result<Obj> {
        if self.eat(&Tok::LParen) {
            let o = self.obj()?;
            self.expect(Tok::RParen)?;
            return Ok(o);
        }
        let n = self.ident()?;
        Ok(if n == "U" { Obj::Unit } else { Obj::Base(n) })
    }

    fn judgment(&mut self) -> Result<Judgment> {
        let lhs = self.term()?;
        let rel = if self.eat(&Tok::Eq) {
            Rel::Strong
        } else if self.eat(&Tok::Le) {
            Rel::Semi
        } else {
            return self.err("expected `==` or `<=`");
        };
        let rhs = self.term()?;
        Ok(Judgment { rel, lhs, rhs })
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.factor()?;
        while self.eat(&Tok::Dot) {
            let f = self.factor()?;
            t = Term::comp(t, f);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term> {
        let a = self.atom()?;
        let make: fn(Box<Term>, Box<Term>) -> Term = match self.peek() {
            Some(Tok::Star) => Term::Prod,
            Some(Tok::SeqL) => Term::SeqL,
            Some(Tok::SeqR) => Term::SeqR,
            _ => return Ok(a),
        };
        self.pos += 1;
        let b = self.atom()?;
        if matches!(self.peek(), Some(Tok::Star | Tok::SeqL | Tok::SeqR)) {
            return self.err("products do not associate; add parentheses");
        }
        Ok(make(Box::new(a), Box::new(b)))
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Lt) => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::Gt)?;
                let (a, b) = (Box::new(a), Box::new(b));
                match self.peek() {
                    Some(Tok::Ident(s)) if s == "_l" => {
                        self.pos += 1;
                        Ok(Term::LPair(a, b))
                    }
                    Some(Tok::Ident(s)) if s == "_r" => {
                        self.pos += 1;
                        Ok(Term::RPair(a, b))
                    }
                    _ => Ok(Term::Pair(a, b)),
                }
            }
            Some(Tok::Ident(_)) if self.peek2() == Some(&Tok::LBrack) => self.constant(),
            Some(Tok::Ident(_)) => Ok(Term::Sym(self.ident()?)),
            Some(t) => {
                let t = t.show();
                self.err(format!("expected a term, found {t}"))
            }
            None => self.err("expected a term, found end of line"),
        }
    }

    fn constant(&mut self) -> Result<Term> {
        let at = self.pos;
        let name = self.ident()?;
        self.expect(Tok::LBrack)?;
        let mut args = vec![self.obj()?];
        while self.eat(&Tok::Comma) {
            args.push(self.obj()?);
        }
        self.expect(Tok::RBrack)?;
        let arity = match name.as_str() {
            "id" | "bang" | "rho" | "diag" => 1,
            "p1" | "p2" | "swap" => 2,
            "assoc" | "associnv" => 3,
            _ => {
                self.pos = at;
                return self.err(format!("unknown constant `{name}`"));
            }
        };
        if args.len() != arity {
            self.pos = at;
            return self.err(format!("`{name}` takes {arity} object argument(s), given {}", args.len()));
        }
        let mut it = args.into_iter();
        let mut next = || it.next().expect("arity checked");
        Ok(match name.as_str() {
            "id" => Term::Id(next()),
            "bang" => Term::Bang(next()),
            "rho" => Term::Rho(next()),
            "diag" => Term::Diag(next()),
            "p1" => Term::Proj1(next(), next()),
            "p2" => Term::Proj2(next(), next()),
            "swap" => Term::Swap(next(), next()),
            "assoc" => Term::Assoc(next(), next(), next()),
            _ => Term::AssocInv(next(), next(), next()),
        })
    }
}

pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src, 1, 1)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_obj(src: &str) -> Result<Obj> {
    let mut p = Parser::new(src, 1, 1)?;
    let o = p.obj()?;
    p.finish()?;
    Ok(o)
}

pub fn parse_judgment(src: &str) -> Result<Judgment> {
    let mut p = Parser::new(src, 1, 1)?;
    let j = p.judgment()?;
    p.finish()?;
    Ok(j)
}

/// One source line with comments removed.
struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let text = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        if text.trim().is_empty() {
            None
        } else {
            Some(Line { no: i + 1, text })
        }
    })
}

fn col_of(line: &str, sub: &str) -> usize {
    let off = sub.as_ptr() as usize - line.as_ptr() as usize;
    line[..off].chars().count() + 1
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

/// Splits `keyword rest` at the first whitespace or `:`.
fn keyword(text: &str) -> (&str, &str) {
    let t = text.trim_start();
    let end = t.find(|c: char| c.is_whitespace() || c == ':' || c == '(').unwrap_or(t.len());
    (&t[..end], &t[end..])
}

fn after_colon<'a>(l: &Line<'a>, rest: &'a str) -> Result<&'a str> {
    let r = rest.trim_start();
    match r.strip_prefix(':') {
        Some(x) => Ok(x),
        None => perr(l.no, col_of(l.text, r), "expected `:`"),
    }
}

fn judgment_at(l: &Line<'_>, sub: &str) -> Result<Judgment> {
    let mut p = Parser::new(sub, l.no, col_of(l.text, sub))?;
    let j = p.judgment()?;
    p.finish()?;
    Ok(j)
}

/// Handles `objects`, `arbitrary` and `pure` lines. Returns false for other lines.
fn decl_line(l: &Line<'_>, kw: &str, rest: &str, decls: &mut Decls) -> Result<bool> {
    match kw {
        "objects" => {
            let mut p = Parser::new(rest, l.no, col_of(l.text, rest))?;
            while p.peek().is_some() {
                let n = p.ident()?;
                if n == "U" {
                    p.pos -= 1;
                    return p.err("`U` is the unit object and cannot be declared");
                }
                decls.objects.push(n);
                p.eat(&Tok::Comma);
            }
            Ok(true)
        }
        "arbitrary" | "pure" => {
            let mut p = Parser::new(rest, l.no, col_of(l.text, rest))?;
            let mut names = vec![p.ident()?];
            while p.eat(&Tok::Comma) {
                names.push(p.ident()?);
            }
            p.expect(Tok::Colon)?;
            let dom = p.obj()?;
            p.expect(Tok::Arrow)?;
            let cod = p.obj()?;
            p.finish()?;
            for name in names {
                decls.symbols.push(SymDecl { name, dom: dom.clone(), cod: cod.clone(), pure: kw == "pure" });
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

fn assumption(l: &Line<'_>, rest: &str, index: usize) -> Result<Assumption> {
    let r = rest.trim_start();
    let (label, rest) = if r.starts_with('(') {
        let close = match r.find(')') {
            Some(k) => k,
            None => return perr(l.no, col_of(l.text, r), "unclosed label"),
        };
        (r[1..close].trim().to_string(), &r[close + 1..])
    } else {
        (format!("h{}", index + 1), r)
    };
    let body = after_colon(l, rest)?;
    Ok(Assumption { label, judgment: judgment_at(l, body)? })
}

fn step(l: &Line<'_>) -> Result<Step> {
    let t = l.text.trim_start();
    let close = match t.find(')') {
        Some(k) => k,
        None => return perr(l.no, col_of(l.text, t), "unclosed step label"),
    };
    let label = t[1..close].trim().to_string();
    if label.is_empty() {
        return perr(l.no, col_of(l.text, t), "empty step label");
    }
    let body = after_colon(l, &t[close + 1..])?;
    let semi = match body.find(';') {
        Some(k) => k,
        None => return perr(l.no, col_of(l.text, body) + body.chars().count(), "expected `; by RULE`"),
    };
    let judgment = judgment_at(l, &body[..semi])?;
    let just = body[semi + 1..].trim_start();
    let Some(just_rest) = just.strip_prefix("by") else {
        return perr(l.no, col_of(l.text, just), "expected `by`");
    };
    let just_rest = just_rest.trim();
    let (rule, premises) = match just_rest.find('[') {
        Some(k) => {
            let inner = just_rest[k + 1..].trim_end();
            let Some(inner) = inner.strip_suffix(']') else {
                return perr(l.no, col_of(l.text, just_rest) + k, "unclosed premise list");
            };
            let prem: Vec<String> = inner
                .split(',')
                .map(|s| s.trim().trim_start_matches('(').trim_end_matches(')').to_string())
                .filter(|s| !s.is_empty())
                .collect();
            (just_rest[..k].trim().to_string(), prem)
        }
        None => (just_rest.to_string(), Vec::new()),
    };
    if rule.is_empty() || rule.contains(char::is_whitespace) {
        return perr(l.no, col_of(l.text, just_rest), "expected a rule name");
    }
    Ok(Step { label, judgment, rule, premises, line: l.no })
}

/// Parses a proof script. Structural well-formedness (declared names,
/// types) is left to the checker so that it can name the offending step.
pub fn parse_script(src: &str) -> Result<Script> {
    let mut name = None;
    let mut decls = Decls::default();
    let mut assumptions = Vec::new();
    let mut goal = None;
    let mut steps = Vec::new();
    for l in lines(src) {
        let (kw, rest) = keyword(l.text);
        if decl_line(&l, kw, rest, &mut decls)? {
            if !steps.is_empty() || goal.is_some() {
                return perr(l.no, 1, "declarations must precede the goal");
            }
            continue;
        }
        match kw {
            "name" => name = Some(after_colon(&l, rest)?.trim().to_string()),
            "assume" => {
                let a = assumption(&l, rest, assumptions.len())?;
                assumptions.push(a);
            }
            "goal" => {
                if goal.is_some() {
                    return perr(l.no, 1, "second goal");
                }
                goal = Some((judgment_at(&l, after_colon(&l, rest)?)?, l.no));
            }
            "" if l.text.trim_start().starts_with('(') => {
                if goal.is_none() {
                    return perr(l.no, 1, "steps must follow the goal");
                }
                steps.push(step(&l)?);
            }
            _ => return perr(l.no, col_of(l.text, l.text.trim_start()), format!("unknown line kind `{kw}`")),
        }
    }
    let Some((goal, goal_line)) = goal else {
        return perr(1, 1, "script has no goal");
    };
    let name = name.unwrap_or_default();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return perr(1, 1, "script needs a `name:` line with a single-word name");
    }
    Ok(Script { name, decls, assumptions, goal, goal_line, steps })
}

/// Parses declaration lines only (`objects`, `arbitrary`, `pure`).
pub fn parse_decls(src: &str) -> Result<Decls> {
    let mut decls = Decls::default();
    for l in lines(src) {
        let (kw, rest) = keyword(l.text);
        if !decl_line(&l, kw, rest, &mut decls)? {
            return perr(l.no, 1, format!("expected a declaration, found `{kw}`"));
        }
    }
    decls.validate().map_err(|e| Error::Parse { line: 1, col: 1, msg: e })?;
    Ok(decls)
}

/// A block of the registry format:
///
/// ```text
/// KIND ID [@suite]
///   says: free text
///   objects ... / arbitrary ... / pure ...
///   assume: JUDGMENT          (any number)
///   show: JUDGMENT
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: String,
    pub id: String,
    pub suite: Option<String>,
    pub says: String,
    pub decls: Decls,
    pub hyps: Vec<Judgment>,
    pub show: Judgment,
    pub line: usize,
}

pub fn parse_blocks(src: &str, kinds: &[&str]) -> Result<Vec<Block>> {
    struct Partial {
        kind: String,
        id: String,
        suite: Option<String>,
        says: String,
        decls: Decls,
        hyps: Vec<Judgment>,
        show: Option<Judgment>,
        line: usize,
    }
    fn close(p: Partial) -> Result<Block> {
        let Some(show) = p.show else {
            return perr(p.line, 1, format!("block `{}` has no `show:` line", p.id));
        };
        if let Err(e) = p.decls.validate() {
            return perr(p.line, 1, format!("block `{}`: {e}", p.id));
        }
        Ok(Block {
            kind: p.kind,
            id: p.id,
            suite: p.suite,
            says: p.says,
            decls: p.decls,
            hyps: p.hyps,
            show,
            line: p.line,
        })
    }
    let mut out = Vec::new();
    let mut cur: Option<Partial> = None;
    for l in lines(src) {
        let (kw, rest) = keyword(l.text);
        if kinds.contains(&kw) {
            if let Some(p) = cur.take() {
                out.push(close(p)?);
            }
            let mut words = rest.split_whitespace();
            let Some(id) = words.next() else {
                return perr(l.no, 1, "block header needs an id");
            };
            let suite = words.next().map(|s| s.trim_start_matches('@').to_string());
            cur = Some(Partial {
                kind: kw.to_string(),
                id: id.to_string(),
                suite,
                says: String::new(),
                decls: Decls::default(),
                hyps: Vec::new(),
                show: None,
                line: l.no,
            });
            continue;
        }
        let Some(p) = cur.as_mut() else {
            return perr(l.no, 1, "line outside of a block");
        };
        if decl_line(&l, kw, rest, &mut p.decls)? {
            continue;
        }
        match kw {
            "says" => p.says = after_colon(&l, rest)?.trim().to_string(),
            "assume" => p.hyps.push(assumption(&l, rest, p.hyps.len())?.judgment),
            "show" => p.show = Some(judgment_at(&l, after_colon(&l, rest)?)?),
            _ => return perr(l.no, 1, format!("unknown line kind `{kw}`")),
        }
    }
    if let Some(p) = cur.take() {
        out.push(close(p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(src: &str) {
        let t = parse_term(src).unwrap();
        assert_eq!(parse_term(&t.to_string()).unwrap(), t, "{src} printed as {t}");
    }

    #[test]
    fn terms_roundtrip() {
        roundtrip("p1[Y1,Y2] . <f1, v2>");
        roundtrip("h . (g . f)");
        roundtrip("(g1 * w2) . (f1 * v2)");
        roundtrip("assoc[Y1,Y2,Y3] . (f1 |>< (f2 |>< f3))");
        roundtrip("p2[Y1,Y2] . <f1, f2>_l . x");
        roundtrip("<<f1, f2>, f3>");
        roundtrip("swap[Y1,Y2] . (f2 ><| f1) . swap[X2,X1]");
        roundtrip("id[X1*(X2*X3)]");
    }

    #[test]
    fn composition_is_left_associative() {
        let t = parse_term("a . b . c").unwrap();
        assert_eq!(t, Term::comp(Term::comp(Term::sym("a"), Term::sym("b")), Term::sym("c")));
    }

    #[test]
    fn judgment_relations() {
        let j = parse_judgment("<f, v> <= g").unwrap();
        assert_eq!(j.rel, Rel::Semi);
        let j = parse_judgment("f==g").unwrap();
        assert_eq!(j.rel, Rel::Strong);
    }

    #[test]
    fn errors_carry_columns() {
        match parse_judgment("f == g .") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 9),
            other => panic!("{other:?}"),
        }
        match parse_term("p1[A] . f") {
            Err(Error::Parse { col, msg, .. }) => {
                assert_eq!(col, 1);
                assert!(msg.contains("takes 2"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_term("a * b * c").is_err());
    }

    #[test]
    fn script_structure() {
        let src = "name: tiny\nobjects A, B\narbitrary f : A -> B\ngoal: f == f\n(a): f == f ; by refl\n";
        let s = parse_script(src).unwrap();
        assert_eq!(s.name, "tiny");
        assert_eq!(s.steps.len(), 1);
        assert_eq!(s.steps[0].rule, "refl");
        assert!(s.steps[0].premises.is_empty());
        let bad = "name: t\nobjects A\narbitrary f : A -> A\ngoal: f == f\n(a): f == f by refl\n";
        assert!(matches!(parse_script(bad), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn blocks() {
        let src = "law x.y @s\n  says: text\n  objects A\n  arbitrary f, g : A -> A\n  assume: f == g\n  show: g == f\n";
        let b = parse_blocks(src, &["law"]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].suite.as_deref(), Some("s"));
        assert_eq!(b[0].decls.symbols.len(), 2);
        assert_eq!(b[0].hyps.len(), 1);
    }
}
