//! Second-order logic: assignments, negation normal form, a finite model
//! checker, and the translations of team formulas into second-order
//! formulas (plain and sparse).

mod eval;
mod nnf;
mod translate;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::structures::text::{Cursor, TextError};
use crate::structures::{Function, Relation, StructureError};

pub use eval::{eval_so, SoEvaluator, SoMode, SoStats};
pub use nnf::{desugar, is_nnf, to_nnf};
pub use translate::{
    fresh_relation_names, fresh_vars, restriction_formula, sentence_to_so, translate_eta, translate_zeta,
    TranslateError,
};

/// Value of a second-order variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoValue {
    Elem(usize),
    Rel(Relation),
    Fun(Function),
}

/// Second-order assignment: names to elements, relations and functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoAssignment {
    values: BTreeMap<String, SoValue>,
}

impl SoAssignment {
    pub fn new() -> Self {
        SoAssignment::default()
    }

    pub fn with_elem(mut self, name: &str, e: usize) -> Self {
        self.values.insert(name.to_string(), SoValue::Elem(e));
        self
    }

    pub fn with_rel(mut self, name: &str, r: Relation) -> Self {
        self.values.insert(name.to_string(), SoValue::Rel(r));
        self
    }

    pub fn with_fun(mut self, name: &str, f: Function) -> Self {
        self.values.insert(name.to_string(), SoValue::Fun(f));
        self
    }

    pub fn set(&mut self, name: &str, value: SoValue) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&SoValue> {
        self.values.get(name)
    }

    pub fn elem(&self, name: &str) -> Option<usize> {
        match self.values.get(name) {
            Some(SoValue::Elem(e)) => Some(*e),
            _ => None,
        }
    }

    pub fn rel(&self, name: &str) -> Option<&Relation> {
        match self.values.get(name) {
            Some(SoValue::Rel(r)) => Some(r),
            _ => None,
        }
    }

    pub fn fun(&self, name: &str) -> Option<&Function> {
        match self.values.get(name) {
            Some(SoValue::Fun(f)) => Some(f),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SoValue)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks that every value lives in a domain of the given size.
    pub fn validate(&self, domain_size: usize) -> Result<(), StructureError> {
        for v in self.values.values() {
            match v {
                SoValue::Elem(e) if *e >= domain_size => {
                    return Err(StructureError::OutOfRange { element: *e, domain: domain_size })
                }
                SoValue::Rel(r) if r.domain_size() != domain_size => {
                    return Err(StructureError::OutOfRange { element: r.domain_size(), domain: domain_size })
                }
                SoValue::Fun(f) if f.domain_size() != domain_size => {
                    return Err(StructureError::OutOfRange { element: f.domain_size(), domain: domain_size })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Reads the assignment file format:
    ///
    /// ```text
    /// elem x 1
    /// rel X 2 { (0,1) }
    /// fun f 1 { (0)->1 (1)->0 }
    /// ```
    pub fn parse(text: &str, domain_size: usize) -> Result<Self, TextError> {
        let mut c = Cursor::new(text)?;
        let mut out = SoAssignment::new();
        while !c.at_eof() {
            let keyword = c.word()?;
            let name = c.word()?;
            if out.values.contains_key(&name) {
                return Err(c.error(format!("`{name}` is assigned twice")));
            }
            let value = match keyword.as_str() {
                "elem" => {
                    let e = c.num()?;
                    if e >= domain_size {
                        return Err(c.error(format!("element {e} outside domain of size {domain_size}")));
                    }
                    SoValue::Elem(e)
                }
                "rel" => SoValue::Rel(c.relation(domain_size)?),
                "fun" => SoValue::Fun(c.function(domain_size, &name)?),
                other => return Err(c.error(format!("expected `elem`, `rel` or `fun`, found `{other}`"))),
            };
            out.values.insert(name, value);
        }
        Ok(out)
    }
}

impl fmt::Display for SoAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (name, v) in &self.values {
            match v {
                SoValue::Elem(e) => writeln!(out, "elem {name} {e}")?,
                SoValue::Rel(r) => {
                    write!(out, "rel {name} {} {{", r.arity())?;
                    for t in r.iter() {
                        write!(out, " ({})", join(&t))?;
                    }
                    writeln!(out, " }}")?;
                }
                SoValue::Fun(g) => {
                    write!(out, "fun {name} {} {{", g.arity())?;
                    let n = g.domain_size();
                    for t in crate::structures::all_tuples(n, g.arity()) {
                        write!(out, " ({})->{}", join(&t), g.apply(&t))?;
                    }
                    writeln!(out, " }}")?;
                }
            }
        }
        f.write_str(&out)
    }
}

fn join(t: &[usize]) -> String {
    t.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Error of the second-order model checker.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SoError {
    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("`{name}` has arity {expected}, used with {found} argument(s)")]
    Arity { name: String, expected: usize, found: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl SoError {
    pub fn is_resource(&self) -> bool {
        matches!(self, SoError::ResourceExhausted(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_file_round_trip() {
        let text = "elem x 1\nrel X 2 { (0,1) (1,1) }\nrel Z 0 { () }\nfun f 1 { (0)->1 (1)->0 }\n";
        let j = SoAssignment::parse(text, 2).unwrap();
        assert_eq!(j.elem("x"), Some(1));
        assert!(j.rel("X").unwrap().contains(&[0, 1]));
        assert_eq!(j.rel("Z").unwrap().len(), 1);
        assert_eq!(j.fun("f").unwrap().apply(&[0]), 1);
        assert_eq!(SoAssignment::parse(&j.to_string(), 2).unwrap(), j);
    }

    #[test]
    fn assignment_file_errors() {
        assert!(SoAssignment::parse("elem x 5", 2).is_err());
        assert!(SoAssignment::parse("fun f 1 { (0)->1 }", 2).is_err());
        assert!(SoAssignment::parse("elem x 0\nelem x 1", 2).is_err());
        assert!(SoAssignment::parse("set X {}", 2).is_err());
    }
}
