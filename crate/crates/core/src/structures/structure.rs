use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::syntax::{Term, Vocabulary};

use super::team::Assignment;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` has arity {expected}, used with {found} argument(s)")]
    Arity { name: String, expected: usize, found: usize },
    #[error("element {element} outside domain of size {domain}")]
    OutOfRange { element: usize, domain: usize },
    #[error("`{0}` is declared twice")]
    Duplicate(String),
    #[error("function `{0}` is not total")]
    Partial(String),
    #[error("variable `{0}` is not in the team domain")]
    NotInDomain(String),
    #[error("supplementing function yields the empty set")]
    EmptyChoice,
    #[error("{0}")]
    TooLarge(String),
}

/// Number of tuples of the given arity, if it fits in memory.
pub fn tuple_count(domain_size: usize, arity: usize) -> Option<usize> {
    let mut total: usize = 1;
    for _ in 0..arity {
        total = total.checked_mul(domain_size)?;
    }
    (total <= 1 << 26).then_some(total)
}

/// Lexicographic index of a tuple.
pub fn tuple_index(domain_size: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &e| acc * domain_size + e)
}

pub fn tuple_at(domain_size: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = index % domain_size.max(1);
        index /= domain_size.max(1);
    }
    t
}

/// All tuples of the given arity in lexicographic order.
pub fn all_tuples(domain_size: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = tuple_count(domain_size, arity).unwrap_or(0);
    (0..count).map(move |i| tuple_at(domain_size, arity, i))
}

/// A relation as a dense bitset over the lexicographically ordered tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: usize,
    domain_size: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(domain_size: usize, arity: usize) -> Result<Self, StructureError> {
        let count = tuple_count(domain_size, arity).ok_or_else(|| {
            StructureError::TooLarge(format!("{domain_size}^{arity} tuples do not fit"))
        })?;
        Ok(Relation { arity, domain_size, bits: vec![0; count.div_ceil(64).max(1)] })
    }

    pub fn full(domain_size: usize, arity: usize) -> Result<Self, StructureError> {
        let mut r = Self::empty(domain_size, arity)?;
        for i in 0..r.universe_size() {
            r.set_index(i, true);
        }
        Ok(r)
    }

    pub fn from_tuples<I>(domain_size: usize, arity: usize, tuples: I) -> Result<Self, StructureError>
    where
        I: IntoIterator,
        I::Item: AsRef<[usize]>,
    {
        let mut r = Self::empty(domain_size, arity)?;
        for t in tuples {
            r.insert(t.as_ref())?;
        }
        Ok(r)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// `n^arity`.
    pub fn universe_size(&self) -> usize {
        tuple_count(self.domain_size, self.arity).unwrap_or(0)
    }

    fn check(&self, tuple: &[usize]) -> Result<(), StructureError> {
        if tuple.len() != self.arity {
            return Err(StructureError::Arity {
                name: "relation".into(),
                expected: self.arity,
                found: tuple.len(),
            });
        }
        if let Some(&e) = tuple.iter().find(|&&e| e >= self.domain_size) {
            return Err(StructureError::OutOfRange { element: e, domain: self.domain_size });
        }
        Ok(())
    }

    pub fn insert(&mut self, tuple: &[usize]) -> Result<(), StructureError> {
        self.check(tuple)?;
        self.set_index(tuple_index(self.domain_size, tuple), true);
        Ok(())
    }

    pub fn remove(&mut self, tuple: &[usize]) -> Result<(), StructureError> {
        self.check(tuple)?;
        self.set_index(tuple_index(self.domain_size, tuple), false);
        Ok(())
    }

    /// Membership; tuples of the wrong shape are never members.
    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.check(tuple).is_ok() && self.get_index(tuple_index(self.domain_size, tuple))
    }

    pub fn get_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set_index(&mut self, i: usize, value: bool) {
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.universe_size())
            .filter(|&i| self.get_index(i))
            .map(|i| tuple_at(self.domain_size, self.arity, i))
    }

    pub fn to_set(&self) -> BTreeSet<Vec<usize>> {
        self.iter().collect()
    }
}

/// A total function as a dense table indexed like [`Relation`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Function {
    arity: usize,
    domain_size: usize,
    table: Vec<usize>,
}

impl Function {
    pub fn constant_map(domain_size: usize, arity: usize, value: usize) -> Result<Self, StructureError> {
        if value >= domain_size {
            return Err(StructureError::OutOfRange { element: value, domain: domain_size });
        }
        let count = tuple_count(domain_size, arity).ok_or_else(|| {
            StructureError::TooLarge(format!("{domain_size}^{arity} arguments do not fit"))
        })?;
        Ok(Function { arity, domain_size, table: vec![value; count] })
    }

    /// Builds a function from its table in lexicographic argument order.
    pub fn from_table(domain_size: usize, arity: usize, table: Vec<usize>) -> Result<Self, StructureError> {
        if Some(table.len()) != tuple_count(domain_size, arity) {
            return Err(StructureError::Partial("function".into()));
        }
        if let Some(&e) = table.iter().find(|&&e| e >= domain_size) {
            return Err(StructureError::OutOfRange { element: e, domain: domain_size });
        }
        Ok(Function { arity, domain_size, table })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        self.table[tuple_index(self.domain_size, args)]
    }

    pub fn set(&mut self, args: &[usize], value: usize) -> Result<(), StructureError> {
        if args.len() != self.arity {
            return Err(StructureError::Arity {
                name: "function".into(),
                expected: self.arity,
                found: args.len(),
            });
        }
        for &e in args.iter().chain(std::iter::once(&value)) {
            if e >= self.domain_size {
                return Err(StructureError::OutOfRange { element: e, domain: self.domain_size });
            }
        }
        self.table[tuple_index(self.domain_size, args)] = value;
        Ok(())
    }
}

/// A finite structure with domain `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Structure {
    domain_size: usize,
    relations: BTreeMap<String, Relation>,
    functions: BTreeMap<String, Function>,
}

impl Structure {
    pub fn new(domain_size: usize) -> Self {
        Structure { domain_size, relations: BTreeMap::new(), functions: BTreeMap::new() }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn add_relation(&mut self, name: &str, relation: Relation) -> Result<(), StructureError> {
        if self.functions.contains_key(name) {
            return Err(StructureError::Duplicate(name.into()));
        }
        if relation.domain_size != self.domain_size {
            return Err(StructureError::TooLarge(format!(
                "relation `{name}` is over a domain of size {}",
                relation.domain_size
            )));
        }
        self.relations.insert(name.to_string(), relation);
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, function: Function) -> Result<(), StructureError> {
        if self.relations.contains_key(name) {
            return Err(StructureError::Duplicate(name.into()));
        }
        if function.domain_size != self.domain_size {
            return Err(StructureError::TooLarge(format!(
                "function `{name}` is over a domain of size {}",
                function.domain_size
            )));
        }
        self.functions.insert(name.to_string(), function);
        Ok(())
    }

    /// Builder form of [`Structure::add_relation`] from explicit tuples.
    pub fn with_relation<I>(mut self, name: &str, arity: usize, tuples: I) -> Result<Self, StructureError>
    where
        I: IntoIterator,
        I::Item: AsRef<[usize]>,
    {
        let r = Relation::from_tuples(self.domain_size, arity, tuples)?;
        self.add_relation(name, r)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize, table: Vec<usize>) -> Result<Self, StructureError> {
        let f = Function::from_table(self.domain_size, arity, table)?;
        self.add_function(name, f)?;
        Ok(self)
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relation_mut(&mut self, name: &str) -> Option<&mut Relation> {
        self.relations.get_mut(name)
    }

    pub fn function(&self, name: &str) -> Option<&Function> {
        self.functions.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, &Function)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The vocabulary this structure interprets (with equality).
    pub fn vocabulary(&self) -> Vocabulary {
        let mut v = Vocabulary::new();
        for (name, r) in &self.relations {
            let _ = v.add_predicate(name, r.arity);
        }
        for (name, f) in &self.functions {
            let _ = v.add_function(name, f.arity);
        }
        v
    }

    /// True when every symbol of `vocab` is interpreted with the right arity.
    pub fn interprets(&self, vocab: &Vocabulary) -> bool {
        vocab.predicates().all(|(p, a)| self.relation(p).is_some_and(|r| r.arity == a))
            && vocab.functions().all(|(f, a)| self.function(f).is_some_and(|g| g.arity == a))
    }

    /// `t⟨s⟩`.
    pub fn eval_term(&self, t: &Term, s: &Assignment) -> Result<usize, StructureError> {
        self.eval_term_with(t, &|v| s.get(v))
    }

    pub fn eval_term_with(
        &self,
        t: &Term,
        lookup: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<usize, StructureError> {
        match t {
            Term::Var(v) => lookup(v).ok_or_else(|| StructureError::UnboundVariable(v.clone())),
            Term::App(f, args) => {
                let func = self
                    .function(f)
                    .ok_or_else(|| StructureError::UnknownSymbol(f.clone()))?;
                if func.arity != args.len() {
                    return Err(StructureError::Arity {
                        name: f.clone(),
                        expected: func.arity,
                        found: args.len(),
                    });
                }
                let vals = args
                    .iter()
                    .map(|a| self.eval_term_with(a, lookup))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(func.apply(&vals))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_evaluation() {
        let a = Structure::new(2)
            .with_function("c", 0, vec![0])
            .unwrap()
            .with_function("f", 1, vec![1, 0])
            .unwrap();
        let s = Assignment::from_pairs([("x", 1)]);
        assert_eq!(a.eval_term(&Term::var("x"), &s), Ok(1));
        assert_eq!(a.eval_term(&Term::constant("c"), &s), Ok(0));
        let s0 = Assignment::from_pairs([("x", 0)]);
        let fx = Term::app("f", vec![Term::var("x")]);
        // table lookup: f(0) is the first entry
        assert_eq!(a.eval_term(&fx, &s0), Ok(a.function("f").unwrap().table()[0]));
        assert_eq!(
            a.eval_term(&Term::var("y"), &s),
            Err(StructureError::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn relation_bitset() {
        let mut r = Relation::empty(3, 2).unwrap();
        r.insert(&[2, 1]).unwrap();
        r.insert(&[0, 2]).unwrap();
        assert!(r.contains(&[2, 1]));
        assert!(!r.contains(&[1, 2]));
        assert!(!r.contains(&[1]));
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![vec![0, 2], vec![2, 1]]);
        assert!(r.insert(&[3, 0]).is_err());
        let zero = Relation::full(2, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero.contains(&[]));
    }

    #[test]
    fn tuple_indexing_is_lexicographic() {
        let all: Vec<_> = all_tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        for (i, t) in all.iter().enumerate() {
            assert_eq!(tuple_index(2, t), i);
        }
        assert_eq!(all_tuples(0, 0).count(), 1);
        assert_eq!(all_tuples(0, 1).count(), 0);
    }
}
