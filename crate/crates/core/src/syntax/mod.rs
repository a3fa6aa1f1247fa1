//! Morphism terms, judgments and declarations shared by the law registry
//! and the proof checker.

mod lexer;
mod parser;

pub use parser::{parse_blocks, parse_decls, parse_judgment, parse_obj, parse_script, parse_term, Block};

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    Base(String),
    Unit,
    Prod(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn base(name: &str) -> Obj {
        Obj::Base(name.to_string())
    }

    pub fn prod(a: Obj, b: Obj) -> Obj {
        Obj::Prod(Box::new(a), Box::new(b))
    }

    /// Substitutes base names, leaving unmapped names alone.
    pub fn subst(&self, map: &BTreeMap<String, Obj>) -> Obj {
        match self {
            Obj::Base(n) => map.get(n).cloned().unwrap_or_else(|| self.clone()),
            Obj::Unit => Obj::Unit,
            Obj::Prod(a, b) => Obj::prod(a.subst(map), b.subst(map)),
        }
    }

    pub fn bases(&self, out: &mut Vec<String>) {
        match self {
            Obj::Base(n) => out.push(n.clone()),
            Obj::Unit => {}
            Obj::Prod(a, b) => {
                a.bases(out);
                b.bases(out);
            }
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Base(n) => f.write_str(n),
            Obj::Unit => f.write_str("U"),
            Obj::Prod(a, b) => match **b {
                Obj::Prod(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
        }
    }
}

/// `Comp(g, f)` is `g . f`, i.e. `g ∘ f`. `Pair` is a semi-pair whose pure
/// side is resolved from the purity of its components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Id(Obj),
    Bang(Obj),
    Proj1(Obj, Obj),
    Proj2(Obj, Obj),
    /// `swap[A,B] : B*A -> A*B`
    Swap(Obj, Obj),
    /// `assoc[A,B,C] : A*(B*C) -> (A*B)*C`
    Assoc(Obj, Obj, Obj),
    AssocInv(Obj, Obj, Obj),
    /// `rho[A] : A*U -> A`
    Rho(Obj),
    Diag(Obj),
    Sym(String),
    Comp(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Prod(Box<Term>, Box<Term>),
    SeqL(Box<Term>, Box<Term>),
    SeqR(Box<Term>, Box<Term>),
    LPair(Box<Term>, Box<Term>),
    RPair(Box<Term>, Box<Term>),
}

impl Term {
    pub fn sym(n: &str) -> Term {
        Term::Sym(n.to_string())
    }

    pub fn comp(g: Term, f: Term) -> Term {
        Term::Comp(Box::new(g), Box::new(f))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Term, b: Term) -> Term {
        Term::Prod(Box::new(a), Box::new(b))
    }

    /// Names of symbols occurring in the term, in first-occurrence order.
    pub fn symbols(&self, out: &mut Vec<String>) {
        match self {
            Term::Sym(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Term::Comp(a, b)
            | Term::Pair(a, b)
            | Term::Prod(a, b)
            | Term::SeqL(a, b)
            | Term::SeqR(a, b)
            | Term::LPair(a, b)
            | Term::RPair(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            _ => {}
        }
    }

    fn is_atomic(&self) -> bool {
        !matches!(
            self,
            Term::Comp(..) | Term::Prod(..) | Term::SeqL(..) | Term::SeqR(..)
        )
    }
}

struct Operand<'a>(&'a Term);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atomic() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(a) => write!(f, "id[{a}]"),
            Term::Bang(a) => write!(f, "bang[{a}]"),
            Term::Proj1(a, b) => write!(f, "p1[{a},{b}]"),
            Term::Proj2(a, b) => write!(f, "p2[{a},{b}]"),
            Term::Swap(a, b) => write!(f, "swap[{a},{b}]"),
            Term::Assoc(a, b, c) => write!(f, "assoc[{a},{b},{c}]"),
            Term::AssocInv(a, b, c) => write!(f, "associnv[{a},{b},{c}]"),
            Term::Rho(a) => write!(f, "rho[{a}]"),
            Term::Diag(a) => write!(f, "diag[{a}]"),
            Term::Sym(n) => f.write_str(n),
            Term::Comp(g, h) => {
                match **g {
                    Term::Comp(..) => write!(f, "{g}")?,
                    _ => write!(f, "{}", Operand(g))?,
                }
                write!(f, " . {}", Operand(h))
            }
            Term::Pair(a, b) => write!(f, "<{a}, {b}>"),
            Term::LPair(a, b) => write!(f, "<{a}, {b}>_l"),
            Term::RPair(a, b) => write!(f, "<{a}, {b}>_r"),
            Term::Prod(a, b) => write!(f, "{} * {}", Operand(a), Operand(b)),
            Term::SeqL(a, b) => write!(f, "{} |>< {}", Operand(a), Operand(b)),
            Term::SeqR(a, b) => write!(f, "{} ><| {}", Operand(a), Operand(b)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    /// `==`, the strong equation.
    Strong,
    /// `<=`, the semi-equation.
    Semi,
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Strong => "==",
            Rel::Semi => "<=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub rel: Rel,
    pub lhs: Term,
    pub rhs: Term,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymDecl {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
    pub pure: bool,
}

impl fmt::Display for SymDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.pure { "pure" } else { "arbitrary" };
        write!(f, "{kind} {} : {} -> {}", self.name, self.dom, self.cod)
    }
}

/// Declared object variables and typed symbols, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decls {
    pub objects: Vec<String>,
    pub symbols: Vec<SymDecl>,
}

/// The synthesized signature and purity of a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermType {
    pub dom: Obj,
    pub cod: Obj,
    pub pure: bool,
}

impl Decls {
    pub fn symbol(&self, name: &str) -> Option<&SymDecl> {
        self.symbols.iter().find(|s| s.name == name)
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o == name)
    }

    fn check_obj(&self, o: &Obj) -> Result<(), String> {
        let mut names = Vec::new();
        o.bases(&mut names);
        match names.into_iter().find(|n| !self.has_object(n)) {
            Some(n) => Err(format!("undeclared object `{n}`")),
            None => Ok(()),
        }
    }

    /// Checks declarations are consistent: declared objects only, no duplicates.
    pub fn validate(&self) -> Result<(), String> {
        for (i, o) in self.objects.iter().enumerate() {
            if self.objects[..i].contains(o) {
                return Err(format!("object `{o}` declared twice"));
            }
        }
        for (i, s) in self.symbols.iter().enumerate() {
            if self.symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(format!("symbol `{}` declared twice", s.name));
            }
            self.check_obj(&s.dom)?;
            self.check_obj(&s.cod)?;
        }
        Ok(())
    }

    /// Synthesizes the signature and purity of `t`, rejecting ill-typed
    /// compositions and pairs without a pure component.
    pub fn synth(&self, t: &Term) -> Result<TermType, String> {
        use Obj::Prod as P;
        let pure = |dom: Obj, cod: Obj| TermType { dom, cod, pure: true };
        let b = |o: &Obj| Box::new(o.clone());
        match t {
            Term::Id(a) | Term::Bang(a) | Term::Rho(a) | Term::Diag(a) => {
                self.check_obj(a)?;
                Ok(match t {
                    Term::Id(_) => pure(a.clone(), a.clone()),
                    Term::Bang(_) => pure(a.clone(), Obj::Unit),
                    Term::Rho(_) => pure(P(b(a), Box::new(Obj::Unit)), a.clone()),
                    _ => pure(a.clone(), P(b(a), b(a))),
                })
            }
            Term::Proj1(x, y) | Term::Proj2(x, y) | Term::Swap(x, y) => {
                self.check_obj(x)?;
                self.check_obj(y)?;
                Ok(match t {
                    Term::Proj1(..) => pure(P(b(x), b(y)), x.clone()),
                    Term::Proj2(..) => pure(P(b(x), b(y)), y.clone()),
                    _ => pure(P(b(y), b(x)), P(b(x), b(y))),
                })
            }
            Term::Assoc(x, y, z) | Term::AssocInv(x, y, z) => {
                for o in [x, y, z] {
                    self.check_obj(o)?;
                }
                let right = P(b(x), Box::new(P(b(y), b(z))));
                let left = P(Box::new(P(b(x), b(y))), b(z));
                Ok(match t {
                    Term::Assoc(..) => pure(right, left),
                    _ => pure(left, right),
                })
            }
            Term::Sym(n) => {
                let d = self.symbol(n).ok_or_else(|| format!("undeclared symbol `{n}`"))?;
                Ok(TermType { dom: d.dom.clone(), cod: d.cod.clone(), pure: d.pure })
            }
            Term::Comp(g, f) => {
                let (tg, tf) = (self.synth(g)?, self.synth(f)?);
                if tf.cod != tg.dom {
                    return Err(format!(
                        "cannot compose `{g}` : {} -> {} after `{f}` : {} -> {}",
                        tg.dom, tg.cod, tf.dom, tf.cod
                    ));
                }
                Ok(TermType { dom: tf.dom, cod: tg.cod, pure: tf.pure && tg.pure })
            }
            Term::Pair(l, r) | Term::LPair(l, r) | Term::RPair(l, r) => {
                let (tl, tr) = (self.synth(l)?, self.synth(r)?);
                if tl.dom != tr.dom {
                    return Err(format!(
                        "pair components `{l}` and `{r}` have domains {} and {}",
                        tl.dom, tr.dom
                    ));
                }
                if matches!(t, Term::Pair(..)) && !tl.pure && !tr.pure {
                    return Err(format!("pair <{l}, {r}> has no pure component"));
                }
                Ok(TermType { dom: tl.dom, cod: P(Box::new(tl.cod), Box::new(tr.cod)), pure: tl.pure && tr.pure })
            }
            Term::Prod(l, r) | Term::SeqL(l, r) | Term::SeqR(l, r) => {
                let (tl, tr) = (self.synth(l)?, self.synth(r)?);
                if matches!(t, Term::Prod(..)) && !tl.pure && !tr.pure {
                    return Err(format!("product {l} * {r} has no pure component"));
                }
                Ok(TermType {
                    dom: P(Box::new(tl.dom), Box::new(tr.dom)),
                    cod: P(Box::new(tl.cod), Box::new(tr.cod)),
                    pure: tl.pure && tr.pure,
                })
            }
        }
    }

    /// Both sides well-typed with the same signature.
    pub fn check_judgment(&self, j: &Judgment) -> Result<(), String> {
        let (l, r) = (self.synth(&j.lhs)?, self.synth(&j.rhs)?);
        if l.dom != r.dom || l.cod != r.cod {
            return Err(format!(
                "sides have different types: {} -> {} versus {} -> {}",
                l.dom, l.cod, r.dom, r.cod
            ));
        }
        Ok(())
    }
}

/// A labeled hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    pub label: String,
    pub judgment: Judgment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub judgment: Judgment,
    pub rule: String,
    pub premises: Vec<String>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub name: String,
    pub decls: Decls,
    pub assumptions: Vec<Assumption>,
    pub goal: Judgment,
    pub goal_line: usize,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    /// Must hold; a violation fails the run.
    Law,
    /// Reported only; the models disagree on it.
    Diagnostic,
    /// A claim expected to have counterexamples, searched with `find_witness`.
    Negative,
}

/// A universally quantified statement `hyps ⊢ show` over the declarations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawSpec {
    pub id: String,
    pub kind: LawKind,
    pub suite: String,
    pub says: String,
    pub decls: Decls,
    pub hyps: Vec<Judgment>,
    pub show: Judgment,
}
