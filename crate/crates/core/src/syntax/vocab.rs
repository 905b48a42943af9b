use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::ast::{FoFormula, Term};
use super::measures;
use super::parser::{self, ParseError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VocabError {
    #[error("symbol `{0}` declared twice")]
    Duplicate(String),
    #[error("vocabulary must contain at least one predicate or equality")]
    Empty,
    #[error("line {line}: {msg}")]
    Sidecar { line: usize, msg: String },
    #[error("dependency `{name}`: {msg}")]
    BadDependency { name: String, msg: String },
    #[error("line {line}: {source}")]
    DependencyParse {
        line: usize,
        #[source]
        source: ParseError,
    },
}

/// Predicate and function symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vocabulary {
    predicates: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
    equality: bool,
}

impl Vocabulary {
    /// Empty vocabulary with equality enabled.
    pub fn new() -> Self {
        Vocabulary { equality: true, ..Default::default() }
    }

    pub fn without_equality() -> Self {
        Vocabulary::default()
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Self, VocabError> {
        self.add_predicate(name, arity)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Result<Self, VocabError> {
        self.add_function(name, arity)?;
        Ok(self)
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), VocabError> {
        if self.contains(name) {
            return Err(VocabError::Duplicate(name.to_string()));
        }
        self.predicates.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), VocabError> {
        if self.contains(name) {
            return Err(VocabError::Duplicate(name.to_string()));
        }
        self.functions.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn set_equality(&mut self, on: bool) {
        self.equality = on;
    }

    pub fn equality(&self) -> bool {
        self.equality
    }

    pub fn contains(&self, name: &str) -> bool {
        self.predicates.contains_key(name) || self.functions.contains_key(name)
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_relational(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn validate(&self) -> Result<(), VocabError> {
        if self.predicates.is_empty() && !self.equality {
            return Err(VocabError::Empty);
        }
        Ok(())
    }

    /// Parses the plain-text sidecar format. One declaration per line:
    ///
    /// ```text
    /// pred R 2
    /// func c 0
    /// equality off
    /// dependency dep2 2 "A x. A y. A z. (!P(x,y) | !P(x,z) | y = z)"
    /// ```
    ///
    /// `#` starts a comment. Dependencies are registered into `registry`.
    pub fn parse_sidecar(
        text: &str,
        registry: &mut DependencyRegistry,
    ) -> Result<Vocabulary, VocabError> {
        let mut vocab = Vocabulary::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = |msg: &str| VocabError::Sidecar { line, msg: msg.to_string() };
            let mut words = content.splitn(2, char::is_whitespace);
            let keyword = words.next().unwrap_or("");
            let rest = words.next().unwrap_or("").trim();
            match keyword {
                "pred" | "func" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [name, arity] = parts[..] else {
                        return Err(bad("expected `<name> <arity>`"));
                    };
                    let arity: usize = arity.parse().map_err(|_| bad("arity must be a natural"))?;
                    if keyword == "pred" {
                        vocab.add_predicate(name, arity)?;
                    } else {
                        vocab.add_function(name, arity)?;
                    }
                }
                "equality" => match rest {
                    "" | "on" => vocab.equality = true,
                    "off" => vocab.equality = false,
                    _ => return Err(bad("expected `equality on|off`")),
                },
                "dependency" => {
                    let (head, sentence) = rest
                        .split_once('"')
                        .ok_or_else(|| bad("expected a quoted defining sentence"))?;
                    let sentence = sentence
                        .strip_suffix('"')
                        .ok_or_else(|| bad("unterminated quoted sentence"))?;
                    let parts: Vec<&str> = head.split_whitespace().collect();
                    let [name, arity] = parts[..] else {
                        return Err(bad("expected `dependency <name> <arity> \"...\"`"));
                    };
                    let arity: usize = arity.parse().map_err(|_| bad("arity must be a natural"))?;
                    let definition = DependencySignature::parse_definition(arity, sentence)
                        .map_err(|source| VocabError::DependencyParse { line, source })?;
                    registry.register(DependencySignature::new(name, arity, definition)?)?;
                }
                _ => return Err(bad(&format!("unknown declaration `{keyword}`"))),
            }
        }
        vocab.validate()?;
        Ok(vocab)
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in &self.predicates {
            writeln!(f, "pred {name} {arity}")?;
        }
        for (name, arity) in &self.functions {
            writeln!(f, "func {name} {arity}")?;
        }
        writeln!(f, "equality {}", if self.equality { "on" } else { "off" })
    }
}

/// The predicate symbol every dependency definition is written over.
pub const DEPENDENCY_PREDICATE: &str = "P";

/// A `k`-ary dependency: a first-order sentence over a single `k`-ary
/// predicate `P` (and equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DependencySignature {
    pub name: String,
    pub arity: usize,
    pub definition: FoFormula,
}

impl DependencySignature {
    pub fn new(name: &str, arity: usize, definition: FoFormula) -> Result<Self, VocabError> {
        let bad = |msg: String| VocabError::BadDependency { name: name.to_string(), msg };
        let free = measures::fo_free_vars(&definition);
        if !free.is_empty() {
            return Err(bad(format!("definition has free variables {free:?}")));
        }
        let mut symbols = Vec::new();
        collect_fo_symbols(&definition, &mut symbols);
        for (sym, n) in symbols {
            if sym != DEPENDENCY_PREDICATE {
                return Err(bad(format!("definition mentions `{sym}`; only `P` and `=` allowed")));
            }
            if n != arity {
                return Err(bad(format!("P used with {n} arguments, dependency arity is {arity}")));
            }
        }
        Ok(DependencySignature { name: name.to_string(), arity, definition })
    }

    pub fn parse_definition(arity: usize, text: &str) -> Result<FoFormula, ParseError> {
        let vocab = Vocabulary::new()
            .with_predicate(DEPENDENCY_PREDICATE, arity)
            .expect("fresh vocabulary");
        parser::parse_fo(text, &vocab)
    }
}

fn collect_fo_symbols(f: &FoFormula, out: &mut Vec<(String, usize)>) {
    match f {
        FoFormula::True | FoFormula::False | FoFormula::Eq(..) => {}
        FoFormula::Pred(p, args) => out.push((p.clone(), args.len())),
        FoFormula::Not(a) | FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => {
            collect_fo_symbols(a, out)
        }
        FoFormula::And(a, b) | FoFormula::Or(a, b) => {
            collect_fo_symbols(a, out);
            collect_fo_symbols(b, out);
        }
    }
}

/// Built-in dependency families; each is defined for a set of arities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinDependency {
    /// `dep(x₁,…,xₙ₋₁,y)`: the last argument is functionally determined by the others.
    Dependence,
    /// `inc(x̄,ȳ)`: every value of `x̄` also occurs as a value of `ȳ`.
    Inclusion,
    /// `exc(x̄,ȳ)`: the values of `x̄` and `ȳ` are disjoint.
    Exclusion,
    /// `ind(x̄,ȳ)`: `x̄` and `ȳ` are independent.
    Independence,
}

impl BuiltinDependency {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinDependency::Dependence => "dep",
            BuiltinDependency::Inclusion => "inc",
            BuiltinDependency::Exclusion => "exc",
            BuiltinDependency::Independence => "ind",
        }
    }

    fn supports(self, arity: usize) -> bool {
        match self {
            BuiltinDependency::Dependence => arity >= 1,
            _ => arity >= 2 && arity.is_multiple_of(2),
        }
    }

    /// The defining sentence for the given arity.
    pub fn definition(self, arity: usize) -> Option<FoFormula> {
        if !self.supports(arity) {
            return None;
        }
        let p = |args: Vec<Term>| FoFormula::pred(DEPENDENCY_PREDICATE, args);
        let vars = |prefix: &str, n: usize| -> Vec<String> {
            (0..n).map(|i| format!("{prefix}{i}")).collect()
        };
        let terms = |vs: &[String]| -> Vec<Term> { vs.iter().map(Term::var).collect() };
        let concat = |a: &[String], b: &[String]| -> Vec<Term> {
            a.iter().chain(b).map(Term::var).collect()
        };
        Some(match self {
            BuiltinDependency::Dependence => {
                // ∀x̄ ∀y ∀z (P x̄ y ∧ P x̄ z → y = z)
                let xs = vars("x", arity - 1);
                let y = vec!["y".to_string()];
                let z = vec!["z".to_string()];
                let body = p(concat(&xs, &y))
                    .and(p(concat(&xs, &z)))
                    .implies(FoFormula::eq(Term::var("y"), Term::var("z")));
                let mut all = xs.clone();
                all.extend(["y".to_string(), "z".to_string()]);
                FoFormula::forall_all(&all, body)
            }
            BuiltinDependency::Inclusion => {
                // ∀ā ∀b̄ (P ā b̄ → ∃c̄ P c̄ ā)
                let k = arity / 2;
                let (a, b, c) = (vars("a", k), vars("b", k), vars("c", k));
                let body = p(concat(&a, &b)).implies(FoFormula::exists_all(&c, p(concat(&c, &a))));
                let mut all = a.clone();
                all.extend(b);
                FoFormula::forall_all(&all, body)
            }
            BuiltinDependency::Exclusion => {
                // ∀ā b̄ c̄ d̄ (P ā b̄ ∧ P c̄ d̄ → ¬ ā = d̄)
                let k = arity / 2;
                let (a, b, c, d) = (vars("a", k), vars("b", k), vars("c", k), vars("d", k));
                let body = p(concat(&a, &b))
                    .and(p(concat(&c, &d)))
                    .implies(FoFormula::tuple_eq(&terms(&a), &terms(&d)).not());
                let all: Vec<String> = [a, b, c, d].concat();
                FoFormula::forall_all(&all, body)
            }
            BuiltinDependency::Independence => {
                // ∀ā b̄ c̄ d̄ (P ā b̄ ∧ P c̄ d̄ → P ā d̄)
                let k = arity / 2;
                let (a, b, c, d) = (vars("a", k), vars("b", k), vars("c", k), vars("d", k));
                let body = p(concat(&a, &b)).and(p(concat(&c, &d))).implies(p(concat(&a, &d)));
                let all: Vec<String> = [a, b, c, d].concat();
                FoFormula::forall_all(&all, body)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entry {
    Builtin(BuiltinDependency),
    Custom(DependencySignature),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DependencyError {
    #[error("unknown dependency `{0}`")]
    Unknown(String),
    #[error("dependency `{name}` is not defined for arity {arity}")]
    Arity { name: String, arity: usize },
}

/// Name → dependency definitions. Built-in families resolve for every
/// supported arity; custom signatures have one fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyRegistry {
    entries: BTreeMap<String, Entry>,
}

impl Default for DependencyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl DependencyRegistry {
    pub fn empty() -> Self {
        DependencyRegistry { entries: BTreeMap::new() }
    }

    /// Registry holding `dep`, `inc`, `exc` and `ind`.
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        for b in [
            BuiltinDependency::Dependence,
            BuiltinDependency::Inclusion,
            BuiltinDependency::Exclusion,
            BuiltinDependency::Independence,
        ] {
            entries.insert(b.name().to_string(), Entry::Builtin(b));
        }
        DependencyRegistry { entries }
    }

    pub fn register(&mut self, sig: DependencySignature) -> Result<(), VocabError> {
        if self.entries.contains_key(&sig.name) {
            return Err(VocabError::Duplicate(sig.name));
        }
        self.entries.insert(sig.name.clone(), Entry::Custom(sig));
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn resolve(&self, name: &str, arity: usize) -> Result<DependencySignature, DependencyError> {
        match self.entries.get(name) {
            None => Err(DependencyError::Unknown(name.to_string())),
            Some(Entry::Builtin(b)) => b
                .definition(arity)
                .map(|definition| DependencySignature { name: name.to_string(), arity, definition })
                .ok_or(DependencyError::Arity { name: name.to_string(), arity }),
            Some(Entry::Custom(sig)) if sig.arity == arity => Ok(sig.clone()),
            Some(Entry::Custom(_)) => Err(DependencyError::Arity { name: name.to_string(), arity }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_declarations() {
        let mut reg = DependencyRegistry::builtin();
        let v = Vocabulary::parse_sidecar(
            "pred R 2 # binary\nfunc c 0\nequality off\ndependency const1 1 \"A x. A y. (!P(x) | !P(y) | x = y)\"\n",
            &mut reg,
        )
        .unwrap();
        assert_eq!(v.predicate_arity("R"), Some(2));
        assert_eq!(v.function_arity("c"), Some(0));
        assert!(!v.equality());
        assert!(reg.resolve("const1", 1).is_ok());
        assert!(matches!(reg.resolve("const1", 2), Err(DependencyError::Arity { .. })));
    }

    #[test]
    fn duplicate_and_empty() {
        let mut reg = DependencyRegistry::builtin();
        assert_eq!(
            Vocabulary::parse_sidecar("pred R 2\nfunc R 1\n", &mut reg),
            Err(VocabError::Duplicate("R".into()))
        );
        assert_eq!(Vocabulary::parse_sidecar("equality off\n", &mut reg), Err(VocabError::Empty));
    }

    #[test]
    fn dependency_definition_must_be_a_sentence_over_p() {
        let open = FoFormula::pred("P", vec![Term::var("x")]);
        assert!(DependencySignature::new("d", 1, open).is_err());
        let other = FoFormula::forall("x", FoFormula::pred("Q", vec![Term::var("x")]));
        assert!(DependencySignature::new("d", 1, other).is_err());
    }

    #[test]
    fn builtin_arities() {
        let reg = DependencyRegistry::builtin();
        assert!(reg.resolve("dep", 1).is_ok());
        assert!(reg.resolve("dep", 3).is_ok());
        assert!(reg.resolve("dep", 0).is_err());
        assert!(reg.resolve("inc", 2).is_ok());
        assert!(reg.resolve("inc", 3).is_err());
        assert_eq!(reg.resolve("nope", 2), Err(DependencyError::Unknown("nope".into())));
    }
}
