//! Evaluation of terms in a model, and exhaustive checking of quantified
//! statements `hyps ⊢ show` over every assignment within bounds.
//!
//! The exhaustive checker compiles both sides into a shared DAG, unfolding
//! products and sequential products into pairs and compositions. Subterms
//! are evaluated at the loop level of their innermost symbol; a subterm
//! whose symbols are a sparse subset of the enclosing loops is memoized on
//! exactly those symbols instead. Hypotheses prune as soon as they can be
//! decided.

use crate::cartesian;
use crate::effect::{enumerate_hom, enumerate_pure, pair, CartesianEffectCategory};
use crate::error::{Error, Result};
use crate::finite::FinSet;
use crate::syntax::{Decls, Judgment, Obj, Rel, Term};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

/// Sizes for object variables and morphisms for symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment<M> {
    pub objects: Vec<(String, FinSet)>,
    pub symbols: Vec<(String, M)>,
}

impl<M> Assignment<M> {
    pub fn object_map(&self) -> BTreeMap<String, FinSet> {
        self.objects.iter().cloned().collect()
    }

    pub fn symbol(&self, name: &str) -> Option<&M> {
        self.symbols.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

impl<M: fmt::Display> fmt::Display for Assignment<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self.objects.iter().map(|(n, s)| format!("|{n}|={}", s.size)).collect();
        write!(f, "{}", objs.join(", "))?;
        for (n, m) in &self.symbols {
            write!(f, "; {n} = {m}")?;
        }
        Ok(())
    }
}

pub fn obj_size(o: &Obj, objects: &BTreeMap<String, FinSet>) -> Result<FinSet> {
    match o {
        Obj::Unit => Ok(FinSet::UNIT),
        Obj::Base(n) => objects
            .get(n)
            .copied()
            .ok_or_else(|| Error::AssignmentMismatch(format!("no size for object `{n}`"))),
        Obj::Prod(a, b) => Ok(FinSet::new(obj_size(a, objects)?.size * obj_size(b, objects)?.size)),
    }
}

/// Compositional evaluation, each former computed by its library definition.
pub fn evaluate_term<I: CartesianEffectCategory>(
    term: &Term,
    inst: &I,
    assignment: &Assignment<I::Morphism>,
) -> Result<I::Morphism> {
    let objects = assignment.object_map();
    eval_rec(term, inst, assignment, &objects)
}

fn eval_rec<I: CartesianEffectCategory>(
    t: &Term,
    inst: &I,
    a: &Assignment<I::Morphism>,
    objs: &BTreeMap<String, FinSet>,
) -> Result<I::Morphism> {
    let size = |o: &Obj| obj_size(o, objs);
    let ev = |t: &Term| eval_rec(t, inst, a, objs);
    Ok(match t {
        Term::Id(x) => inst.identity(size(x)?),
        Term::Bang(x) => inst.bang(size(x)?),
        Term::Proj1(x, y) => inst.proj1(size(x)?, size(y)?),
        Term::Proj2(x, y) => inst.proj2(size(x)?, size(y)?),
        Term::Swap(x, y) => cartesian::swap(inst, size(x)?, size(y)?),
        Term::Assoc(x, y, z) => cartesian::assoc(inst, size(x)?, size(y)?, size(z)?),
        Term::AssocInv(x, y, z) => cartesian::assoc_inv(inst, size(x)?, size(y)?, size(z)?),
        Term::Rho(x) => cartesian::unit_proj(inst, size(x)?).forward,
        Term::Diag(x) => cartesian::diagonal(inst, size(x)?),
        Term::Sym(n) => a
            .symbol(n)
            .cloned()
            .ok_or_else(|| Error::AssignmentMismatch(format!("symbol `{n}` is unassigned")))?,
        Term::Comp(g, f) => inst.compose(&ev(g)?, &ev(f)?)?,
        Term::Pair(l, r) => pair(inst, &ev(l)?, &ev(r)?)?,
        Term::Prod(l, r) => cartesian::semi_product(inst, &ev(l)?, &ev(r)?)?,
        Term::SeqL(l, r) => cartesian::seq_product_left(inst, &ev(l)?, &ev(r)?)?,
        Term::SeqR(l, r) => cartesian::seq_product_right(inst, &ev(l)?, &ev(r)?)?,
        Term::LPair(l, r) => cartesian::seq_pair_left(inst, &ev(l)?, &ev(r)?)?,
        Term::RPair(l, r) => cartesian::seq_pair_right(inst, &ev(l)?, &ev(r)?)?,
    })
}

pub fn relation_holds<I: CartesianEffectCategory>(inst: &I, rel: Rel, l: &I::Morphism, r: &I::Morphism) -> bool {
    match rel {
        Rel::Strong => inst.strong_eq(l, r),
        Rel::Semi => inst.semi_eq(l, r),
    }
}

pub fn judgment_holds<I: CartesianEffectCategory>(
    inst: &I,
    j: &Judgment,
    assignment: &Assignment<I::Morphism>,
) -> Result<bool> {
    let l = evaluate_term(&j.lhs, inst, assignment)?;
    let r = evaluate_term(&j.rhs, inst, assignment)?;
    Ok(relation_holds(inst, j.rel, &l, &r))
}

/// Checks that every declared symbol is assigned a morphism of the
/// declared signature, pure where declared pure.
pub fn check_assignment<I: CartesianEffectCategory>(
    inst: &I,
    decls: &Decls,
    a: &Assignment<I::Morphism>,
) -> Result<()> {
    let objs = a.object_map();
    for d in &decls.symbols {
        let m = a
            .symbol(&d.name)
            .ok_or_else(|| Error::AssignmentMismatch(format!("symbol `{}` is unassigned", d.name)))?;
        let (dom, cod) = (obj_size(&d.dom, &objs)?, obj_size(&d.cod, &objs)?);
        if inst.dom(m) != dom || inst.cod(m) != cod {
            return Err(Error::AssignmentMismatch(format!(
                "`{}` declared {} -> {} but assigned {m}",
                d.name, d.dom, d.cod
            )));
        }
        if d.pure && !inst.is_pure(m) {
            return Err(Error::AssignmentMismatch(format!("`{}` declared pure but assigned {m}", d.name)));
        }
    }
    Ok(())
}

/// A universally quantified statement over some declarations.
#[derive(Debug, Clone, Copy)]
pub struct Statement<'a> {
    pub decls: &'a Decls,
    pub hyps: &'a [Judgment],
    pub show: &'a Judgment,
}

/// Re-checks one assignment with the plain evaluator. `Ok(true)` means the
/// hypotheses hold and the conclusion fails, i.e. the assignment is a
/// counterexample.
pub fn is_counterexample<I: CartesianEffectCategory>(
    inst: &I,
    st: Statement<'_>,
    a: &Assignment<I::Morphism>,
) -> Result<bool> {
    check_assignment(inst, st.decls, a)?;
    for h in st.hyps {
        if !judgment_holds(inst, h, a)? {
            return Ok(false);
        }
    }
    Ok(!judgment_holds(inst, st.show, a)?)
}

/// Enumeration bounds.
#[derive(Debug, Clone)]
pub struct Bounds {
    /// Every object variable ranges over these carriers.
    pub objects: Vec<FinSet>,
    /// Largest hom set that may be enumerated for a single symbol.
    pub budget: u64,
    /// Largest number of symbol tuples per object assignment.
    pub tuple_budget: u128,
}

impl Bounds {
    pub const DEFAULT_TUPLE_BUDGET: u128 = 500_000_000;

    /// Sizes `1..=max`.
    pub fn up_to(max: usize, budget: u64) -> Bounds {
        Bounds {
            objects: (1..=max).map(FinSet::new).collect(),
            budget,
            tuple_budget: Self::DEFAULT_TUPLE_BUDGET,
        }
    }
}

/// An object assignment left out because enumerating it exceeds a budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkipNote {
    pub objects: Vec<(String, FinSet)>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<M> {
    /// No counterexample among the enumerated assignments.
    Holds { object_tuples: u64, tuples: u64, skipped: Vec<SkipNote> },
    /// The first counterexample in enumeration order. `error` is set when
    /// evaluation itself failed at that assignment.
    Violated { witness: Assignment<M>, object_tuples: u64, tuples: u64, error: Option<String> },
}

type NodeId = usize;
type ObjId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ObjNode {
    Var(usize),
    Unit,
    Prod(ObjId, ObjId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Op {
    Sym(usize),
    Id(ObjId),
    Bang(ObjId),
    Proj1(ObjId, ObjId),
    Proj2(ObjId, ObjId),
    Swap(ObjId, ObjId),
    Assoc(ObjId, ObjId, ObjId),
    AssocInv(ObjId, ObjId, ObjId),
    Diag(ObjId),
    Comp(NodeId, NodeId),
    Pair(NodeId, NodeId),
}

impl Op {
    fn children(&self) -> [Option<NodeId>; 2] {
        match *self {
            Op::Comp(a, b) | Op::Pair(a, b) => [Some(a), Some(b)],
            _ => [None, None],
        }
    }
}

struct Compiled {
    objs: Vec<ObjNode>,
    obj_index: HashMap<ObjNode, ObjId>,
    nodes: Vec<Op>,
    node_index: HashMap<Op, NodeId>,
    /// Bitmask of symbols each node depends on.
    free: Vec<u64>,
    sym_types: Vec<(ObjId, ObjId, bool)>,
    hyps: Vec<(Rel, NodeId, NodeId)>,
    show: (Rel, NodeId, NodeId),
}

impl Compiled {
    fn obj(&mut self, o: ObjNode) -> ObjId {
        if let Some(&i) = self.obj_index.get(&o) {
            return i;
        }
        self.objs.push(o.clone());
        self.obj_index.insert(o, self.objs.len() - 1);
        self.objs.len() - 1
    }

    fn obj_expr(&mut self, o: &Obj, decls: &Decls) -> Result<ObjId> {
        Ok(match o {
            Obj::Unit => self.obj(ObjNode::Unit),
            Obj::Base(n) => {
                let i = decls
                    .objects
                    .iter()
                    .position(|x| x == n)
                    .ok_or_else(|| Error::Type(format!("undeclared object `{n}`")))?;
                self.obj(ObjNode::Var(i))
            }
            Obj::Prod(a, b) => {
                let (a, b) = (self.obj_expr(a, decls)?, self.obj_expr(b, decls)?);
                self.obj(ObjNode::Prod(a, b))
            }
        })
    }

    fn node(&mut self, op: Op) -> NodeId {
        if let Some(&i) = self.node_index.get(&op) {
            return i;
        }
        let free = match op {
            Op::Sym(s) => 1u64 << s,
            _ => op.children().iter().flatten().fold(0, |m, &c| m | self.free[c]),
        };
        self.nodes.push(op.clone());
        self.free.push(free);
        self.node_index.insert(op, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn prod_obj(&mut self, a: ObjId, b: ObjId) -> ObjId {
        self.obj(ObjNode::Prod(a, b))
    }

    /// `l × r = ⟨l∘p1, r∘p2⟩`.
    fn product(&mut self, l: (NodeId, ObjId, ObjId), r: (NodeId, ObjId, ObjId)) -> (NodeId, ObjId, ObjId) {
        let p1 = self.node(Op::Proj1(l.1, r.1));
        let p2 = self.node(Op::Proj2(l.1, r.1));
        let a = self.node(Op::Comp(l.0, p1));
        let b = self.node(Op::Comp(r.0, p2));
        let n = self.node(Op::Pair(a, b));
        (n, self.prod_obj(l.1, r.1), self.prod_obj(l.2, r.2))
    }

    fn identity(&mut self, o: ObjId) -> (NodeId, ObjId, ObjId) {
        (self.node(Op::Id(o)), o, o)
    }

    /// Compiles a term, returning its node with domain and codomain.
    fn term(&mut self, t: &Term, decls: &Decls) -> Result<(NodeId, ObjId, ObjId)> {
        let o = |c: &mut Self, x: &Obj| c.obj_expr(x, decls);
        Ok(match t {
            Term::Sym(n) => {
                let i = decls
                    .symbols
                    .iter()
                    .position(|d| &d.name == n)
                    .ok_or_else(|| Error::Type(format!("undeclared symbol `{n}`")))?;
                let (d, c, _) = self.sym_types[i];
                (self.node(Op::Sym(i)), d, c)
            }
            Term::Id(x) => {
                let x = o(self, x)?;
                self.identity(x)
            }
            Term::Bang(x) => {
                let x = o(self, x)?;
                let u = self.obj(ObjNode::Unit);
                (self.node(Op::Bang(x)), x, u)
            }
            Term::Proj1(x, y) | Term::Proj2(x, y) | Term::Swap(x, y) => {
                let (x, y) = (o(self, x)?, o(self, y)?);
                let xy = self.prod_obj(x, y);
                match t {
                    Term::Proj1(..) => (self.node(Op::Proj1(x, y)), xy, x),
                    Term::Proj2(..) => (self.node(Op::Proj2(x, y)), xy, y),
                    _ => {
                        let yx = self.prod_obj(y, x);
                        (self.node(Op::Swap(x, y)), yx, xy)
                    }
                }
            }
            Term::Assoc(x, y, z) | Term::AssocInv(x, y, z) => {
                let (x, y, z) = (o(self, x)?, o(self, y)?, o(self, z)?);
                let yz = self.prod_obj(y, z);
                let right = self.prod_obj(x, yz);
                let xy = self.prod_obj(x, y);
                let left = self.prod_obj(xy, z);
                match t {
                    Term::Assoc(..) => (self.node(Op::Assoc(x, y, z)), right, left),
                    _ => (self.node(Op::AssocInv(x, y, z)), left, right),
                }
            }
            Term::Rho(x) => {
                let x = o(self, x)?;
                let u = self.obj(ObjNode::Unit);
                let xu = self.prod_obj(x, u);
                (self.node(Op::Proj1(x, u)), xu, x)
            }
            Term::Diag(x) => {
                let x = o(self, x)?;
                let xx = self.prod_obj(x, x);
                (self.node(Op::Diag(x)), x, xx)
            }
            Term::Comp(g, f) => {
                let g = self.term(g, decls)?;
                let f = self.term(f, decls)?;
                if f.2 != g.1 {
                    return Err(Error::Type(format!("ill-typed composition in `{t}`")));
                }
                (self.node(Op::Comp(g.0, f.0)), f.1, g.2)
            }
            Term::Pair(l, r) => {
                let l = self.term(l, decls)?;
                let r = self.term(r, decls)?;
                let c = self.prod_obj(l.2, r.2);
                (self.node(Op::Pair(l.0, r.0)), l.1, c)
            }
            Term::Prod(l, r) => {
                let l = self.term(l, decls)?;
                let r = self.term(r, decls)?;
                self.product(l, r)
            }
            Term::SeqL(l, r) | Term::LPair(l, r) => {
                let l = self.term(l, decls)?;
                let r = self.term(r, decls)?;
                let left = self.identity(l.2);
                let a = self.product(left, r);
                let right = self.identity(r.1);
                let b = self.product(l, right);
                let seq = (self.node(Op::Comp(a.0, b.0)), b.1, a.2);
                if matches!(t, Term::SeqL(..)) {
                    seq
                } else {
                    let d = self.node(Op::Diag(l.1));
                    (self.node(Op::Comp(seq.0, d)), l.1, seq.2)
                }
            }
            Term::SeqR(l, r) | Term::RPair(l, r) => {
                let l = self.term(l, decls)?;
                let r = self.term(r, decls)?;
                let right = self.identity(l.1);
                let a = self.product(right, r);
                let left = self.identity(r.2);
                let b = self.product(l, left);
                let seq = (self.node(Op::Comp(b.0, a.0)), a.1, b.2);
                if matches!(t, Term::SeqR(..)) {
                    seq
                } else {
                    let d = self.node(Op::Diag(l.1));
                    (self.node(Op::Comp(seq.0, d)), l.1, seq.2)
                }
            }
        })
    }

    fn compile(st: Statement<'_>) -> Result<Compiled> {
        if st.decls.symbols.len() > 64 {
            return Err(Error::Type("at most 64 symbols per statement".into()));
        }
        let mut c = Compiled {
            objs: Vec::new(),
            obj_index: HashMap::new(),
            nodes: Vec::new(),
            node_index: HashMap::new(),
            free: Vec::new(),
            sym_types: Vec::new(),
            hyps: Vec::new(),
            show: (Rel::Strong, 0, 0),
        };
        for d in &st.decls.symbols {
            let dom = c.obj_expr(&d.dom, st.decls)?;
            let cod = c.obj_expr(&d.cod, st.decls)?;
            c.sym_types.push((dom, cod, d.pure));
        }
        let judgment = |c: &mut Compiled, j: &Judgment| -> Result<(Rel, NodeId, NodeId)> {
            let (l, ld, lc) = c.term(&j.lhs, st.decls)?;
            let (r, rd, rc) = c.term(&j.rhs, st.decls)?;
            if (ld, lc) != (rd, rc) {
                return Err(Error::Type(format!("sides of `{j}` have different types")));
            }
            Ok((j.rel, l, r))
        };
        for h in st.hyps {
            let h = judgment(&mut c, h)?;
            c.hyps.push(h);
        }
        c.show = judgment(&mut c, st.show)?;
        Ok(c)
    }
}

/// Level of a node: index of its innermost symbol, or `None` when closed.
fn level(free: u64) -> Option<usize> {
    if free == 0 {
        None
    } else {
        Some(63 - free.leading_zeros() as usize)
    }
}

const MEMO_CAP: u128 = 1 << 18;

struct Memo<M> {
    /// `(symbol, stride)` pairs for the mixed-radix index.
    strides: Vec<(usize, usize)>,
    table: Vec<Option<M>>,
}

struct Run<'a, I: CartesianEffectCategory> {
    inst: &'a I,
    c: &'a Compiled,
    sizes: Vec<FinSet>,
    homs: Vec<Rc<Vec<I::Morphism>>>,
    current: Vec<usize>,
    slots: Vec<Option<I::Morphism>>,
    memo: Vec<Option<Memo<I::Morphism>>>,
    /// Non-memoized, non-symbol nodes to evaluate on entering each level;
    /// index 0 holds closed nodes, index `i + 1` nodes of level `i`.
    schedule: Vec<Vec<NodeId>>,
    hyps_at: Vec<Vec<usize>>,
    tuples: u64,
}

enum Stop<M> {
    Witness(Vec<usize>, Option<String>, std::marker::PhantomData<M>),
}

impl<'a, I: CartesianEffectCategory> Run<'a, I> {
    fn memo_index(&self, m: &Memo<I::Morphism>) -> usize {
        m.strides.iter().map(|&(s, k)| self.current[s] * k).sum()
    }

    fn value(&self, n: NodeId) -> &I::Morphism {
        if let Op::Sym(s) = self.c.nodes[n] {
            return &self.homs[s][self.current[s]];
        }
        match &self.memo[n] {
            Some(m) => m.table[self.memo_index(m)].as_ref().expect("memo entry ensured"),
            None => self.slots[n].as_ref().expect("slot evaluated"),
        }
    }

    fn ensure(&mut self, n: NodeId) -> Result<()> {
        let idx = match &self.memo[n] {
            Some(m) => {
                let idx = self.memo_index(m);
                if m.table[idx].is_some() {
                    return Ok(());
                }
                idx
            }
            None => return Ok(()),
        };
        for c in self.c.nodes[n].children().into_iter().flatten() {
            self.ensure(c)?;
        }
        let v = self.compute(n)?;
        self.memo[n].as_mut().expect("memo node").table[idx] = Some(v);
        Ok(())
    }

    fn compute(&self, n: NodeId) -> Result<I::Morphism> {
        let inst = self.inst;
        let s = |o: ObjId| self.sizes[o];
        Ok(match self.c.nodes[n] {
            Op::Sym(k) => self.homs[k][self.current[k]].clone(),
            Op::Id(x) => inst.identity(s(x)),
            Op::Bang(x) => inst.bang(s(x)),
            Op::Proj1(x, y) => inst.proj1(s(x), s(y)),
            Op::Proj2(x, y) => inst.proj2(s(x), s(y)),
            Op::Swap(x, y) => cartesian::swap(inst, s(x), s(y)),
            Op::Assoc(x, y, z) => cartesian::assoc(inst, s(x), s(y), s(z)),
            Op::AssocInv(x, y, z) => cartesian::assoc_inv(inst, s(x), s(y), s(z)),
            Op::Diag(x) => cartesian::diagonal(inst, s(x)),
            Op::Comp(g, f) => inst.compose(self.value(g), self.value(f))?,
            Op::Pair(a, b) => pair(inst, self.value(a), self.value(b))?,
        })
    }

    fn eval_judgment(&mut self, j: (Rel, NodeId, NodeId)) -> Result<bool> {
        self.ensure(j.1)?;
        self.ensure(j.2)?;
        Ok(relation_holds(self.inst, j.0, self.value(j.1), self.value(j.2)))
    }

    fn enter(&mut self, slot: usize) -> Result<bool> {
        for k in 0..self.schedule[slot].len() {
            let n = self.schedule[slot][k];
            for c in self.c.nodes[n].children().into_iter().flatten() {
                self.ensure(c)?;
            }
            let v = self.compute(n)?;
            self.slots[n] = Some(v);
        }
        for k in 0..self.hyps_at[slot].len() {
            let h = self.c.hyps[self.hyps_at[slot][k]];
            if !self.eval_judgment(h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn descend(&mut self, lvl: usize) -> std::result::Result<(), Stop<I::Morphism>> {
        let fail = |run: &Self, e: Error| Stop::Witness(run.current.clone(), Some(e.to_string()), Default::default());
        if lvl == self.homs.len() {
            self.tuples += 1;
            return match self.eval_judgment(self.c.show) {
                Ok(true) => Ok(()),
                Ok(false) => Err(Stop::Witness(self.current.clone(), None, Default::default())),
                Err(e) => Err(fail(self, e)),
            };
        }
        for i in 0..self.homs[lvl].len() {
            self.current[lvl] = i;
            match self.enter(lvl + 1) {
                Ok(true) => self.descend(lvl + 1)?,
                Ok(false) => {}
                Err(e) => return Err(fail(self, e)),
            }
        }
        Ok(())
    }
}

/// Decides `∀ objects ∀ symbols. hyps ⇒ show` within `bounds`, returning the
/// first counterexample in enumeration order if any. Object variables vary
/// with the first declared one slowest, then symbols in declaration order.
pub fn check_statement<I: CartesianEffectCategory>(
    inst: &I,
    st: Statement<'_>,
    bounds: &Bounds,
) -> Result<Outcome<I::Morphism>> {
    let c = Compiled::compile(st)?;
    let nobj = st.decls.objects.len();
    let nsym = st.decls.symbols.len();
    let mut object_tuples = 0u64;
    let mut tuples = 0u64;
    let mut skipped = Vec::new();
    let mut cache: HashMap<(usize, usize, bool), Rc<Vec<I::Morphism>>> = HashMap::new();

    let mut hyps_at = vec![Vec::new(); nsym + 1];
    for (k, &(_, l, r)) in c.hyps.iter().enumerate() {
        let slot = level(c.free[l] | c.free[r]).map_or(0, |x| x + 1);
        hyps_at[slot].push(k);
    }

    let radix = bounds.objects.len();
    let total = if nobj == 0 { 1 } else { radix.checked_pow(nobj as u32).unwrap_or(usize::MAX) };
    for t in 0..total {
        // Mixed radix with the first object most significant.
        let mut choice = vec![0usize; nobj];
        let mut rest = t;
        for k in (0..nobj).rev() {
            choice[k] = rest % radix;
            rest /= radix;
        }
        let named: Vec<(String, FinSet)> = st
            .decls
            .objects
            .iter()
            .zip(&choice)
            .map(|(n, &k)| (n.clone(), bounds.objects[k]))
            .collect();
        let sizes: Vec<FinSet> = {
            let mut out: Vec<FinSet> = Vec::with_capacity(c.objs.len());
            for o in &c.objs {
                let v = match *o {
                    ObjNode::Var(i) => bounds.objects[choice[i]],
                    ObjNode::Unit => FinSet::UNIT,
                    ObjNode::Prod(a, b) => FinSet::new(out[a].size * out[b].size),
                };
                out.push(v);
            }
            out
        };

        let mut homs = Vec::with_capacity(nsym);
        let mut skip = None;
        for (k, &(d, cd, pure)) in c.sym_types.iter().enumerate() {
            let key = (sizes[d].size, sizes[cd].size, pure);
            if let Some(h) = cache.get(&key) {
                homs.push(h.clone());
                continue;
            }
            let got = if pure {
                enumerate_pure(inst, sizes[d], sizes[cd], bounds.budget)
            } else {
                enumerate_hom(inst, sizes[d], sizes[cd], bounds.budget)
            };
            match got {
                Ok(v) => {
                    let v = Rc::new(v);
                    cache.insert(key, v.clone());
                    homs.push(v);
                }
                Err(Error::BudgetExceeded { cardinality, budget, .. }) => {
                    let d = &st.decls.symbols[k];
                    skip = Some(format!(
                        "hom set of `{}` : {} -> {} has {cardinality} morphisms, over the budget of {budget}",
                        d.name, sizes[d_of(&c, k)].size, sizes[c.sym_types[k].1].size
                    ));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if skip.is_none() {
            let product = homs.iter().fold(1u128, |p, h| p.saturating_mul(h.len() as u128));
            if product > bounds.tuple_budget {
                skip = Some(format!(
                    "{product} assignments, over the tuple budget of {}",
                    bounds.tuple_budget
                ));
            }
        }
        if let Some(reason) = skip {
            skipped.push(SkipNote { objects: named, reason });
            continue;
        }
        object_tuples += 1;

        let lens: Vec<u128> = homs.iter().map(|h| h.len() as u128).collect();
        let mut memo: Vec<Option<Memo<I::Morphism>>> = (0..c.nodes.len()).map(|_| None).collect();
        let mut schedule = vec![Vec::new(); nsym + 1];
        for (n, op) in c.nodes.iter().enumerate() {
            if matches!(op, Op::Sym(_)) {
                continue;
            }
            let free = c.free[n];
            match level(free) {
                None => schedule[0].push(n),
                Some(l) => {
                    let hoist: u128 = lens[..=l].iter().product();
                    let syms: Vec<usize> = (0..=l).filter(|s| free & (1 << s) != 0).collect();
                    let cost: u128 = syms.iter().map(|&s| lens[s]).product();
                    if cost < hoist && cost <= MEMO_CAP {
                        let mut strides = Vec::with_capacity(syms.len());
                        let mut k = 1usize;
                        for &s in syms.iter().rev() {
                            strides.push((s, k));
                            k *= lens[s] as usize;
                        }
                        memo[n] = Some(Memo { strides, table: vec![None; cost as usize] });
                    } else {
                        schedule[l + 1].push(n);
                    }
                }
            }
        }

        let mut run = Run {
            inst,
            c: &c,
            sizes,
            homs,
            current: vec![0; nsym],
            slots: vec![None; c.nodes.len()],
            memo,
            schedule,
            hyps_at: hyps_at.clone(),
            tuples: 0,
        };
        let witness = |run: &Run<'_, I>, idx: &[usize]| Assignment {
            objects: named.clone(),
            symbols: st
                .decls
                .symbols
                .iter()
                .enumerate()
                .map(|(k, d)| (d.name.clone(), run.homs[k][idx[k]].clone()))
                .collect(),
        };
        let result = if run.homs.iter().any(|h| h.is_empty()) {
            Ok(())
        } else {
            match run.enter(0) {
                Ok(true) => run.descend(0),
                Ok(false) => Ok(()),
                Err(e) => Err(Stop::Witness(vec![0; nsym], Some(e.to_string()), Default::default())),
            }
        };
        tuples += run.tuples;
        if let Err(Stop::Witness(idx, error, _)) = result {
            return Ok(Outcome::Violated { witness: witness(&run, &idx), object_tuples, tuples, error });
        }
    }
    Ok(Outcome::Holds { object_tuples, tuples, skipped })
}

fn d_of(c: &Compiled, k: usize) -> usize {
    c.sym_types[k].0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::EffectCategory;
    use crate::instances::{PartialMaps, StateMaps};
    use crate::syntax::{parse_blocks, parse_term};

    fn statement(src: &str) -> crate::syntax::Block {
        parse_blocks(src, &["law"]).unwrap().remove(0)
    }

    #[test]
    fn pair_projection_in_partial_maps() {
        let p = PartialMaps;
        let t = parse_term("p1[Y1,Y2] . <f, v>").unwrap();
        let f = crate::instances::parse_partial("2->2 = [1, _]").unwrap();
        let v = p.identity(FinSet::new(2));
        let a = Assignment {
            objects: vec![("Y1".into(), FinSet::new(2)), ("Y2".into(), FinSet::new(2))],
            symbols: vec![("f".into(), f.clone()), ("v".into(), v)],
        };
        assert_eq!(evaluate_term(&t, &p, &a).unwrap(), f);
        let id = evaluate_term(&parse_term("id[Y1]").unwrap(), &p, &a).unwrap();
        assert_eq!(id, p.identity(FinSet::new(2)));
    }

    #[test]
    fn finds_nonparallel_writers() {
        let st = StateMaps::new(2).unwrap();
        let b = statement(
            "law t\n objects X1 X2 Y1 Y2\n arbitrary f1 : X1 -> Y1\n arbitrary f2 : X2 -> Y2\n show: f1 |>< f2 == f1 ><| f2\n",
        );
        let s = Statement { decls: &b.decls, hyps: &b.hyps, show: &b.show };
        let out = check_statement(&st, s, &Bounds::up_to(1, 1_000_000)).unwrap();
        let Outcome::Violated { witness, error: None, .. } = out else { panic!("{out:?}") };
        assert!(is_counterexample(&st, s, &witness).unwrap());
        let out = check_statement(&PartialMaps, s, &Bounds::up_to(2, 1_000_000)).unwrap();
        assert!(matches!(out, Outcome::Holds { .. }), "{out:?}");
    }

    #[test]
    fn hypotheses_prune_and_count() {
        let p = PartialMaps;
        let b = statement(
            "law t\n objects X Y\n arbitrary f, g : X -> Y\n assume: f == g\n show: f <= g\n",
        );
        let s = Statement { decls: &b.decls, hyps: &b.hyps, show: &b.show };
        let out = check_statement(&p, s, &Bounds::up_to(1, 1_000_000)).unwrap();
        assert_eq!(out, Outcome::Holds { object_tuples: 1, tuples: 2, skipped: vec![] });
    }

    #[test]
    fn budget_skips_are_reported() {
        let st = StateMaps::new(2).unwrap();
        let b = statement("law t\n objects X Y\n arbitrary f : X -> Y\n show: f == f\n");
        let s = Statement { decls: &b.decls, hyps: &b.hyps, show: &b.show };
        let out = check_statement(&st, s, &Bounds::up_to(2, 20)).unwrap();
        let Outcome::Holds { object_tuples, skipped, .. } = out else { panic!() };
        assert_eq!(object_tuples, 3);
        assert_eq!(skipped.len(), 1);
        assert!(skipped[0].reason.contains("256"));
    }

    #[test]
    fn staged_matches_plain_evaluation() {
        // The staged evaluator and the plain one must agree on every tuple.
        let st = StateMaps::new(2).unwrap();
        let b = statement(
            "law t\n objects X Y Z\n arbitrary f : X -> Y\n pure v : X -> Z\n arbitrary g : Y*Z -> Y\n show: g . <f, v> == p1[Y,Z] . (g * id[Z]) . <<f, v>, v>\n",
        );
        let s = Statement { decls: &b.decls, hyps: &b.hyps, show: &b.show };
        let staged = check_statement(&st, s, &Bounds::up_to(1, 1_000_000)).unwrap();
        if let Outcome::Violated { witness, .. } = &staged {
            assert!(is_counterexample(&st, s, witness).unwrap());
        }
    }
}
