use std::collections::HashMap;

use crate::evaluator::Budget;
use crate::structures::{all_tuples, tuple_count, tuple_index, Function, Relation, Structure};
use crate::syntax::{Quantifier, SoFormula, Term};

use super::nnf::to_nnf;
use super::{SoAssignment, SoError, SoValue};

/// Search strategy for relation quantifiers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SoMode {
    /// Every candidate relation (or function) is visited in order.
    Exhaustive,
    /// Depth-first over relation cells; a branch is cut as soon as the body
    /// has a definite three-valued truth value.
    #[default]
    Pruned,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SoStats {
    pub nodes: u64,
    /// Relation, function or partial-relation candidates visited.
    pub candidates: u64,
    /// Largest number of quantifier-mode switches along one branch.
    pub alternations: u64,
    pub memo_hits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tri {
    F,
    T,
    U,
}

impl Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::T
        } else {
            Tri::F
        }
    }

    fn not(self) -> Tri {
        match self {
            Tri::F => Tri::T,
            Tri::T => Tri::F,
            Tri::U => Tri::U,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Elem,
    Rel,
    Fun,
}

enum TermC {
    Var(usize),
    Fixed(usize, Vec<TermC>),
    Slot(usize, Vec<TermC>),
}

enum RelRef {
    Fixed(usize),
    Slot(usize),
}

enum Node {
    Const(bool),
    Atom { positive: bool, rel: RelRef, args: Vec<TermC> },
    Eq { positive: bool, l: TermC, r: TermC },
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Iff(usize, usize),
    Elem { q: Quantifier, slot: usize, body: usize },
    Rel { q: Quantifier, slot: usize, arity: usize, bound: Option<u64>, body: usize, def: Option<Definition> },
    Fun { q: Quantifier, slot: usize, arity: usize, body: usize },
}

/// `∃S (∀z̄ (S z̄ ↔ ψ) ∧ rest)` with `S` not free in `ψ`: the value of `S` is
/// read off `ψ`.
struct Definition {
    vars: Vec<usize>,
    formula: usize,
    rest: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Val {
    Unset,
    Elem(usize),
    /// Cells 0 (false), 1 (true) or 2 (undecided).
    Rel(Vec<u8>),
    Fun(Vec<usize>),
}

struct Program<'a> {
    nodes: Vec<Node>,
    free: Vec<Vec<usize>>,
    init: Vec<Val>,
    rels: Vec<&'a Relation>,
    funs: Vec<&'a Function>,
}

struct Compiler<'a> {
    a: &'a Structure,
    j: &'a SoAssignment,
    prog: Program<'a>,
    arity: Vec<usize>,
    scope: Vec<(String, Kind, usize)>,
    from_j: HashMap<(String, Kind), usize>,
    definitions: bool,
    rel_idx: HashMap<String, usize>,
    fun_idx: HashMap<String, usize>,
}

fn arity_error(name: &str, expected: usize, found: usize) -> SoError {
    SoError::Arity { name: name.to_string(), expected, found }
}

impl<'a> Compiler<'a> {
    fn slot(&mut self, arity: usize, v: Val) -> usize {
        self.prog.init.push(v);
        self.arity.push(arity);
        self.prog.init.len() - 1
    }

    fn lookup(&mut self, name: &str, kind: Kind) -> Option<usize> {
        if let Some(&(_, _, s)) = self.scope.iter().rev().find(|(n, k, _)| n == name && *k == kind) {
            return Some(s);
        }
        if let Some(&s) = self.from_j.get(&(name.to_string(), kind)) {
            return Some(s);
        }
        let (arity, v) = match (kind, self.j.get(name)?) {
            (Kind::Elem, SoValue::Elem(e)) => (0, Val::Elem(*e)),
            (Kind::Rel, SoValue::Rel(r)) => {
                (r.arity(), Val::Rel((0..r.universe_size()).map(|i| r.get_index(i) as u8).collect()))
            }
            (Kind::Fun, SoValue::Fun(f)) => (f.arity(), Val::Fun(f.table().to_vec())),
            _ => return None,
        };
        let s = self.slot(arity, v);
        self.from_j.insert((name.to_string(), kind), s);
        Some(s)
    }

    fn push(&mut self, node: Node, free: Vec<usize>) -> usize {
        self.prog.nodes.push(node);
        self.prog.free.push(free);
        self.prog.nodes.len() - 1
    }

    fn term(&mut self, t: &Term, free: &mut Vec<usize>) -> Result<TermC, SoError> {
        match t {
            Term::Var(v) => {
                let s = self.lookup(v, Kind::Elem).ok_or_else(|| SoError::Unbound(v.clone()))?;
                free.push(s);
                Ok(TermC::Var(s))
            }
            Term::App(f, args) => {
                let mut cargs = Vec::with_capacity(args.len());
                for a in args {
                    cargs.push(self.term(a, free)?);
                }
                if let Some(s) = self.lookup(f, Kind::Fun) {
                    if self.arity[s] != args.len() {
                        return Err(arity_error(f, self.arity[s], args.len()));
                    }
                    free.push(s);
                    return Ok(TermC::Slot(s, cargs));
                }
                let func = self.a.function(f).ok_or_else(|| SoError::Unbound(f.clone()))?;
                if func.arity() != args.len() {
                    return Err(arity_error(f, func.arity(), args.len()));
                }
                let next = self.prog.funs.len();
                let idx = *self.fun_idx.entry(f.clone()).or_insert(next);
                if idx == next {
                    self.prog.funs.push(func);
                }
                Ok(TermC::Fixed(idx, cargs))
            }
        }
    }

    fn compile(&mut self, f: &SoFormula) -> Result<usize, SoError> {
        let mut free = Vec::new();
        let node = match f {
            SoFormula::True => Node::Const(true),
            SoFormula::False => Node::Const(false),
            SoFormula::Atom(..) | SoFormula::Eq(..) => return self.literal(f, true),
            SoFormula::Not(g) => match g.as_ref() {
                SoFormula::Atom(..) | SoFormula::Eq(..) | SoFormula::True | SoFormula::False => {
                    return self.literal(g, false)
                }
                _ => {
                    let id = self.compile(g)?;
                    free = self.prog.free[id].clone();
                    Node::Not(id)
                }
            },
            SoFormula::Implies(a, b) => {
                let a = self.compile(a)?;
                let na = self.push(Node::Not(a), self.prog.free[a].clone());
                let b = self.compile(b)?;
                free.extend_from_slice(&self.prog.free[a]);
                free.extend_from_slice(&self.prog.free[b]);
                Node::Or(vec![na, b])
            }
            SoFormula::Iff(a, b) => {
                let a = self.compile(a)?;
                let b = self.compile(b)?;
                free.extend_from_slice(&self.prog.free[a]);
                free.extend_from_slice(&self.prog.free[b]);
                Node::Iff(a, b)
            }
            SoFormula::And(..) | SoFormula::Or(..) => {
                let is_and = matches!(f, SoFormula::And(..));
                let mut parts = Vec::new();
                let mut stack = vec![f];
                while let Some(g) = stack.pop() {
                    match (g, is_and) {
                        (SoFormula::And(l, r), true) | (SoFormula::Or(l, r), false) => {
                            stack.push(r);
                            stack.push(l);
                        }
                        _ => {
                            let id = self.compile(g)?;
                            free.extend_from_slice(&self.prog.free[id]);
                            parts.push(id);
                        }
                    }
                }
                if is_and {
                    Node::And(parts)
                } else {
                    Node::Or(parts)
                }
            }
            SoFormula::Elem(q, x, body) => return self.quantifier(Kind::Elem, x, 0, |s, b| Node::Elem { q: *q, slot: s, body: b }, body),
            SoFormula::Rel(q, x, ar, p, body) => {
                let bound = p.as_ref().map(|p| p.eval(self.a.domain_size()));
                let arity = *ar;
                let id = self.quantifier(Kind::Rel, x, arity, |s, b| Node::Rel { q: *q, slot: s, arity, bound, body: b, def: None }, body)?;
                if self.definitions && *q == Quantifier::Exists {
                    self.attach_definition(id);
                }
                return Ok(id);
            }
            SoFormula::Fun(q, x, ar, body) => {
                let arity = *ar;
                return self.quantifier(Kind::Fun, x, arity, |s, b| Node::Fun { q: *q, slot: s, arity, body: b }, body);
            }
        };
        free.sort_unstable();
        free.dedup();
        Ok(self.push(node, free))
    }

    fn quantifier(
        &mut self,
        kind: Kind,
        x: &str,
        arity: usize,
        make: impl FnOnce(usize, usize) -> Node,
        body: &SoFormula,
    ) -> Result<usize, SoError> {
        let s = self.slot(arity, Val::Unset);
        self.scope.push((x.to_string(), kind, s));
        let b = self.compile(body);
        self.scope.pop();
        let b = b?;
        if !self.prog.free[b].contains(&s) {
            // vacuous: the domain is nonempty and the empty relation is always admissible
            return Ok(b);
        }
        let free: Vec<usize> = self.prog.free[b].iter().copied().filter(|&v| v != s).collect();
        Ok(self.push(make(s, b), free))
    }

    /// `∀z̄ (S z̄ ↔ ψ)` (either side) with `S` not free in `ψ`.
    fn definition_of(&self, mut id: usize, slot: usize) -> Option<(Vec<usize>, usize)> {
        let mut vars = Vec::new();
        while let Node::Elem { q: Quantifier::Forall, slot: z, body } = &self.prog.nodes[id] {
            vars.push(*z);
            id = *body;
        }
        let Node::Iff(a, b) = &self.prog.nodes[id] else { return None };
        let is_head = |n: usize| match &self.prog.nodes[n] {
            Node::Atom { positive: true, rel: RelRef::Slot(s), args } => {
                *s == slot
                    && args.len() == vars.len()
                    && args.iter().zip(&vars).all(|(t, z)| matches!(t, TermC::Var(v) if v == z))
            }
            _ => false,
        };
        let formula = if is_head(*a) {
            *b
        } else if is_head(*b) {
            *a
        } else {
            return None;
        };
        let mut distinct = vars.clone();
        distinct.sort_unstable();
        distinct.dedup();
        (distinct.len() == vars.len() && !self.prog.free[formula].contains(&slot)).then_some((vars, formula))
    }

    fn attach_definition(&mut self, id: usize) {
        let (slot, body) = match &self.prog.nodes[id] {
            Node::Rel { slot, body, .. } => (*slot, *body),
            _ => return,
        };
        let parts = match &self.prog.nodes[body] {
            Node::And(parts) => parts.clone(),
            _ => vec![body],
        };
        for (i, &part) in parts.iter().enumerate() {
            if let Some((vars, formula)) = self.definition_of(part, slot) {
                let others: Vec<usize> = parts.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &p)| p).collect();
                let rest = match others.as_slice() {
                    [] => self.push(Node::Const(true), Vec::new()),
                    [one] => *one,
                    _ => {
                        let mut free: Vec<usize> = others.iter().flat_map(|&p| self.prog.free[p].clone()).collect();
                        free.sort_unstable();
                        free.dedup();
                        self.push(Node::And(others), free)
                    }
                };
                if let Node::Rel { def, .. } = &mut self.prog.nodes[id] {
                    *def = Some(Definition { vars, formula, rest });
                }
                return;
            }
        }
    }

    fn literal(&mut self, f: &SoFormula, positive: bool) -> Result<usize, SoError> {
        let mut free = Vec::new();
        let node = match f {
            SoFormula::Atom(name, args) => {
                let mut cargs = Vec::with_capacity(args.len());
                for a in args {
                    cargs.push(self.term(a, &mut free)?);
                }
                let rel = if let Some(s) = self.lookup(name, Kind::Rel) {
                    if self.arity[s] != args.len() {
                        return Err(arity_error(name, self.arity[s], args.len()));
                    }
                    free.push(s);
                    RelRef::Slot(s)
                } else {
                    let r = self.a.relation(name).ok_or_else(|| SoError::Unbound(name.clone()))?;
                    if r.arity() != args.len() {
                        return Err(arity_error(name, r.arity(), args.len()));
                    }
                    let next = self.prog.rels.len();
                    let idx = *self.rel_idx.entry(name.clone()).or_insert(next);
                    if idx == next {
                        self.prog.rels.push(r);
                    }
                    RelRef::Fixed(idx)
                };
                Node::Atom { positive, rel, args: cargs }
            }
            SoFormula::Eq(l, r) => {
                let l = self.term(l, &mut free)?;
                let r = self.term(r, &mut free)?;
                Node::Eq { positive, l, r }
            }
            SoFormula::True => Node::Const(positive),
            SoFormula::False => Node::Const(!positive),
            other => unreachable!("negation above a compound formula in NNF: {other:?}"),
        };
        free.sort_unstable();
        free.dedup();
        Ok(self.push(node, free))
    }
}

/// Second-order model checker over one finite structure.
pub struct SoEvaluator<'a> {
    a: &'a Structure,
    mode: SoMode,
    budget: Budget,
    memo: bool,
    stats: SoStats,
}

impl<'a> SoEvaluator<'a> {
    pub fn new(a: &'a Structure) -> Self {
        SoEvaluator { a, mode: SoMode::default(), budget: Budget::default(), memo: true, stats: SoStats::default() }
    }

    pub fn with_mode(mut self, mode: SoMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_memo(mut self, memo: bool) -> Self {
        self.memo = memo;
        self
    }

    pub fn stats(&self) -> SoStats {
        self.stats
    }

    /// `(A, J) ⊨ α`.
    pub fn eval(&mut self, j: &SoAssignment, f: &SoFormula) -> Result<bool, SoError> {
        j.validate(self.a.domain_size())?;
        let exhaustive = self.mode == SoMode::Exhaustive;
        let input = if exhaustive { to_nnf(f) } else { f.clone() };
        let mut c = Compiler {
            a: self.a,
            j,
            prog: Program { nodes: Vec::new(), free: Vec::new(), init: Vec::new(), rels: Vec::new(), funs: Vec::new() },
            arity: Vec::new(),
            scope: Vec::new(),
            from_j: HashMap::new(),
            definitions: !exhaustive,
            rel_idx: HashMap::new(),
            fun_idx: HashMap::new(),
        };
        let root = c.compile(&input)?;
        let prog = c.prog;
        let mut run = Run {
            slots: prog.init.clone(),
            prog: &prog,
            n: self.a.domain_size(),
            mode: self.mode,
            budget: self.budget,
            use_memo: self.memo,
            memo: HashMap::new(),
            partial: 0,
            negated: false,
            quantifiers: Vec::new(),
            stats: SoStats::default(),
        };
        let r = run.eval(root);
        self.stats = run.stats;
        match r? {
            Tri::T => Ok(true),
            Tri::F => Ok(false),
            Tri::U => unreachable!("fully assigned evaluation is two-valued"),
        }
    }
}

/// `(A, J) ⊨ α` with the default budget.
pub fn eval_so(a: &Structure, j: &SoAssignment, f: &SoFormula, mode: SoMode) -> Result<bool, SoError> {
    SoEvaluator::new(a).with_mode(mode).eval(j, f)
}

struct Run<'p, 'a> {
    prog: &'p Program<'a>,
    slots: Vec<Val>,
    n: usize,
    mode: SoMode,
    budget: Budget,
    use_memo: bool,
    memo: HashMap<(usize, Vec<Val>), bool>,
    /// Number of relation slots that still hold undecided cells.
    partial: usize,
    /// Odd number of negations above the current node.
    negated: bool,
    quantifiers: Vec<(Quantifier, u64)>,
    stats: SoStats,
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.checked_mul(n - i)? / (i + 1);
    }
    Some(r)
}

impl<'p, 'a> Run<'p, 'a> {
    fn tick(&mut self) -> Result<(), SoError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget.max_nodes {
            return Err(SoError::ResourceExhausted(format!("more than {} evaluation steps", self.budget.max_nodes)));
        }
        Ok(())
    }

    fn term(&self, t: &TermC) -> usize {
        match t {
            TermC::Var(s) => match self.slots[*s] {
                Val::Elem(e) => e,
                _ => unreachable!("element slot without value"),
            },
            TermC::Fixed(i, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a)).collect();
                self.prog.funs[*i].apply(&vals)
            }
            TermC::Slot(s, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a)).collect();
                match &self.slots[*s] {
                    Val::Fun(table) => table[tuple_index(self.n, &vals)],
                    _ => unreachable!("function slot without value"),
                }
            }
        }
    }

    fn eval(&mut self, id: usize) -> Result<Tri, SoError> {
        self.tick()?;
        let prog = self.prog;
        match &prog.nodes[id] {
            Node::Const(b) => Ok(Tri::from(*b)),
            Node::Atom { positive, rel, args } => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a)).collect();
                let v = match rel {
                    RelRef::Fixed(i) => Tri::from(prog.rels[*i].contains(&vals)),
                    RelRef::Slot(s) => match &self.slots[*s] {
                        Val::Rel(cells) => match cells[tuple_index(self.n, &vals)] {
                            0 => Tri::F,
                            1 => Tri::T,
                            _ => Tri::U,
                        },
                        _ => unreachable!("relation slot without value"),
                    },
                };
                Ok(if *positive { v } else { v.not() })
            }
            Node::Eq { positive, l, r } => Ok(Tri::from((self.term(l) == self.term(r)) == *positive)),
            Node::Not(g) => {
                self.negated = !self.negated;
                let v = self.eval(*g);
                self.negated = !self.negated;
                Ok(v?.not())
            }
            Node::Iff(a, b) => {
                let a = self.eval(*a)?;
                let b = self.eval(*b)?;
                Ok(match (a, b) {
                    (Tri::U, _) | (_, Tri::U) => Tri::U,
                    (x, y) => Tri::from(x == y),
                })
            }
            Node::And(parts) => {
                let mut acc = Tri::T;
                for &p in parts {
                    match self.eval(p)? {
                        Tri::F => return Ok(Tri::F),
                        Tri::U => acc = Tri::U,
                        Tri::T => {}
                    }
                }
                Ok(acc)
            }
            Node::Or(parts) => {
                let mut acc = Tri::F;
                for &p in parts {
                    match self.eval(p)? {
                        Tri::T => return Ok(Tri::T),
                        Tri::U => acc = Tri::U,
                        Tri::F => {}
                    }
                }
                Ok(acc)
            }
            Node::Elem { q, .. } | Node::Rel { q, .. } | Node::Fun { q, .. } => {
                let q = &if self.negated { q.dual() } else { *q };
                let switches = match self.quantifiers.last() {
                    Some(&(prev, c)) if prev != *q => c + 1,
                    Some(&(_, c)) => c,
                    None => 0,
                };
                self.stats.alternations = self.stats.alternations.max(switches);
                self.quantifiers.push((*q, switches));
                let r = self.quantified(id);
                self.quantifiers.pop();
                r
            }
        }
    }

    fn quantified(&mut self, id: usize) -> Result<Tri, SoError> {
        let key = if self.use_memo && self.partial == 0 {
            let k = (id, self.prog.free[id].iter().map(|&s| self.slots[s].clone()).collect::<Vec<_>>());
            if let Some(&b) = self.memo.get(&k) {
                self.stats.memo_hits += 1;
                return Ok(Tri::from(b));
            }
            Some(k)
        } else {
            None
        };
        let r = match &self.prog.nodes[id] {
            Node::Elem { q, slot, body } => self.elem(*q, *slot, *body),
            Node::Rel { slot, arity, bound, def: Some(d), .. } => self.defined(*slot, *arity, *bound, d),
            Node::Rel { q, slot, arity, bound, body, .. } => self.rel(*q, *slot, *arity, *bound, *body),
            Node::Fun { q, slot, arity, body } => self.fun(*q, *slot, *arity, *body),
            _ => unreachable!(),
        }?;
        if let (Some(k), Tri::T | Tri::F) = (key, r) {
            self.memo.insert(k, r == Tri::T);
        }
        Ok(r)
    }

    /// Folds one branch value into a quantifier's result; `Some` means decided.
    fn fold(q: Quantifier, v: Tri, unknown: &mut bool) -> Option<Tri> {
        match (q, v) {
            (Quantifier::Exists, Tri::T) => Some(Tri::T),
            (Quantifier::Forall, Tri::F) => Some(Tri::F),
            (_, Tri::U) => {
                *unknown = true;
                None
            }
            _ => None,
        }
    }

    fn finish(q: Quantifier, unknown: bool) -> Tri {
        if unknown {
            Tri::U
        } else if q == Quantifier::Exists {
            Tri::F
        } else {
            Tri::T
        }
    }

    fn elem(&mut self, q: Quantifier, slot: usize, body: usize) -> Result<Tri, SoError> {
        let mut unknown = false;
        for e in 0..self.n {
            self.slots[slot] = Val::Elem(e);
            if let Some(r) = Self::fold(q, self.eval(body)?, &mut unknown) {
                return Ok(r);
            }
        }
        Ok(Self::finish(q, unknown))
    }

    /// `∃S (∀z̄ (S z̄ ↔ ψ) ∧ rest)`, evaluating `ψ` once per tuple.
    fn defined(&mut self, slot: usize, arity: usize, bound: Option<u64>, d: &Definition) -> Result<Tri, SoError> {
        self.stats.candidates += 1;
        let cells = self.cells(arity)?;
        let mut v = vec![0u8; cells];
        let (mut ones, mut unknown) = (0u64, 0u64);
        for (i, t) in all_tuples(self.n, arity).enumerate() {
            for (&z, e) in d.vars.iter().zip(t) {
                self.slots[z] = Val::Elem(e);
            }
            match self.eval(d.formula)? {
                Tri::T => {
                    v[i] = 1;
                    ones += 1;
                }
                Tri::U => {
                    v[i] = 2;
                    unknown += 1;
                }
                Tri::F => {}
            }
        }
        let fits = match bound {
            None => Tri::T,
            Some(p) if ones > p => return Ok(Tri::F),
            Some(p) if ones + unknown <= p => Tri::T,
            Some(_) => Tri::U,
        };
        self.slots[slot] = Val::Rel(v);
        if unknown > 0 {
            self.partial += 1;
        }
        let r = self.eval(d.rest);
        if unknown > 0 {
            self.partial -= 1;
        }
        Ok(match (fits, r?) {
            (_, Tri::F) => Tri::F,
            (Tri::T, Tri::T) => Tri::T,
            _ => Tri::U,
        })
    }

    fn cells(&self, arity: usize) -> Result<usize, SoError> {
        tuple_count(self.n, arity)
            .ok_or_else(|| SoError::ResourceExhausted(format!("{}^{arity} tuples", self.n)))
    }

    fn rel(&mut self, q: Quantifier, slot: usize, arity: usize, bound: Option<u64>, body: usize) -> Result<Tri, SoError> {
        let cells = self.cells(arity)?;
        if self.partial > 0 {
            // a definite value with every cell undecided holds for every candidate
            self.slots[slot] = Val::Rel(vec![2; cells]);
            self.partial += 1;
            let v = self.eval(body);
            self.partial -= 1;
            return v;
        }
        match self.mode {
            SoMode::Exhaustive => self.rel_exhaustive(q, slot, cells, bound, body),
            SoMode::Pruned => {
                self.slots[slot] = Val::Rel(vec![2; cells]);
                self.partial += 1;
                let r = self.dfs(slot, bound, body, 0, 0, q);
                self.partial -= 1;
                Ok(Tri::from(r?))
            }
        }
    }

    fn rel_exhaustive(
        &mut self,
        q: Quantifier,
        slot: usize,
        cells: usize,
        bound: Option<u64>,
        body: usize,
    ) -> Result<Tri, SoError> {
        let max = bound.map_or(cells as u64, |p| p.min(cells as u64));
        let total = match bound {
            None => 1u64.checked_shl(cells as u32).filter(|_| cells < 64),
            Some(_) => (0..=max).try_fold(0u64, |acc, k| acc.checked_add(binomial(cells as u64, k)?)),
        };
        if total.is_none_or(|t| t > self.budget.max_candidates) {
            return Err(SoError::ResourceExhausted(format!("too many candidate relations over {cells} tuples")));
        }
        let mut unknown = false;
        if bound.is_none() {
            for mask in 0..total.unwrap_or(0) {
                self.stats.candidates += 1;
                self.slots[slot] = Val::Rel((0..cells).map(|i| (mask >> i & 1) as u8).collect());
                if let Some(r) = Self::fold(q, self.eval(body)?, &mut unknown) {
                    return Ok(r);
                }
            }
            return Ok(Self::finish(q, unknown));
        }
        for k in 0..=max as usize {
            let mut comb: Vec<usize> = (0..k).collect();
            loop {
                self.stats.candidates += 1;
                let mut v = vec![0u8; cells];
                for &i in &comb {
                    v[i] = 1;
                }
                self.slots[slot] = Val::Rel(v);
                if let Some(r) = Self::fold(q, self.eval(body)?, &mut unknown) {
                    return Ok(r);
                }
                if !next_combination(&mut comb, cells) {
                    break;
                }
            }
        }
        Ok(Self::finish(q, unknown))
    }

    fn set_cell(&mut self, slot: usize, i: usize, v: u8) {
        if let Val::Rel(c) = &mut self.slots[slot] {
            c[i] = v;
        }
    }

    fn cell_count(&self, slot: usize) -> usize {
        match &self.slots[slot] {
            Val::Rel(c) => c.len(),
            _ => 0,
        }
    }

    /// Value of `Q X body` over the completions of the cells from `next` on.
    fn dfs(&mut self, slot: usize, bound: Option<u64>, body: usize, next: usize, ones: u64, q: Quantifier) -> Result<bool, SoError> {
        self.stats.candidates += 1;
        let cells = self.cell_count(slot);
        if next == cells || bound == Some(ones) {
            for i in next..cells {
                self.set_cell(slot, i, 0);
            }
            self.partial -= 1;
            let v = self.eval(body);
            self.partial += 1;
            for i in next..cells {
                self.set_cell(slot, i, 2);
            }
            return Ok(v? == Tri::T);
        }
        match self.eval(body)? {
            Tri::T => return Ok(true),
            Tri::F => return Ok(false),
            Tri::U => {}
        }
        let mut result = q == Quantifier::Forall;
        for v in [0u8, 1] {
            self.set_cell(slot, next, v);
            let r = self.dfs(slot, bound, body, next + 1, ones + v as u64, q);
            match r {
                Ok(r) if r != result => {
                    result = r;
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    self.set_cell(slot, next, 2);
                    return Err(e);
                }
            }
        }
        self.set_cell(slot, next, 2);
        Ok(result)
    }

    fn fun(&mut self, q: Quantifier, slot: usize, arity: usize, body: usize) -> Result<Tri, SoError> {
        if self.partial > 0 {
            return Ok(Tri::U);
        }
        let cells = self.cells(arity)?;
        let total = (self.n as u64).checked_pow(cells as u32);
        if total.is_none_or(|t| t > self.budget.max_candidates) {
            return Err(SoError::ResourceExhausted(format!("{}^{cells} candidate functions", self.n)));
        }
        let mut table = vec![0usize; cells];
        let mut unknown = false;
        loop {
            self.stats.candidates += 1;
            self.slots[slot] = Val::Fun(table.clone());
            if let Some(r) = Self::fold(q, self.eval(body)?, &mut unknown) {
                return Ok(r);
            }
            let mut i = 0;
            loop {
                if i == cells {
                    return Ok(Self::finish(q, unknown));
                }
                table[i] += 1;
                if table[i] < self.n {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }
}
