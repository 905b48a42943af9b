use crate::structures::{Assignment, Structure, StructureError};
use crate::syntax::{FoFormula, MlFormula, Term};
use crate::structures::KripkeStructure;

use super::EvalError;

/// Variable bindings: a base lookup plus a stack of quantified variables.
pub(crate) struct Env<'a> {
    base: &'a dyn Fn(&str) -> Option<usize>,
    stack: Vec<(&'a str, usize)>,
}

impl<'a> Env<'a> {
    pub(crate) fn new(base: &'a dyn Fn(&str) -> Option<usize>) -> Self {
        Env { base, stack: Vec::new() }
    }

    fn get(&self, v: &str) -> Option<usize> {
        self.stack.iter().rev().find(|(n, _)| *n == v).map(|p| p.1).or_else(|| (self.base)(v))
    }
}

fn term(a: &Structure, t: &Term, env: &Env) -> Result<usize, EvalError> {
    match t {
        Term::Var(v) => env.get(v).ok_or_else(|| EvalError::MissingVariable(v.clone())),
        Term::App(f, args) => {
            let func = a.function(f).ok_or_else(|| EvalError::UnknownSymbol(f.clone()))?;
            if func.arity() != args.len() {
                return Err(EvalError::Structure(StructureError::Arity {
                    name: f.clone(),
                    expected: func.arity(),
                    found: args.len(),
                }));
            }
            let mut vals = Vec::with_capacity(args.len());
            for arg in args {
                vals.push(term(a, arg, env)?);
            }
            Ok(func.apply(&vals))
        }
    }
}

pub(crate) fn holds<'a>(a: &Structure, f: &'a FoFormula, env: &mut Env<'a>) -> Result<bool, EvalError> {
    Ok(match f {
        FoFormula::True => true,
        FoFormula::False => false,
        FoFormula::Pred(p, args) => {
            let rel = a.relation(p).ok_or_else(|| EvalError::UnknownSymbol(p.clone()))?;
            if rel.arity() != args.len() {
                return Err(EvalError::Structure(StructureError::Arity {
                    name: p.clone(),
                    expected: rel.arity(),
                    found: args.len(),
                }));
            }
            let mut vals = Vec::with_capacity(args.len());
            for arg in args {
                vals.push(term(a, arg, env)?);
            }
            rel.contains(&vals)
        }
        FoFormula::Eq(l, r) => term(a, l, env)? == term(a, r, env)?,
        FoFormula::Not(g) => !holds(a, g, env)?,
        FoFormula::And(g, h) => holds(a, g, env)? && holds(a, h, env)?,
        FoFormula::Or(g, h) => holds(a, g, env)? || holds(a, h, env)?,
        FoFormula::Exists(x, g) | FoFormula::Forall(x, g) => {
            let want = matches!(f, FoFormula::Exists(..));
            let mut result = !want;
            for e in 0..a.domain_size() {
                env.stack.push((x.as_str(), e));
                let r = holds(a, g, env);
                env.stack.pop();
                if r? == want {
                    result = want;
                    break;
                }
            }
            result
        }
    })
}

/// Tarski semantics: `(A, s) ⊨ α`.
pub fn eval_fo(a: &Structure, s: &Assignment, f: &FoFormula) -> Result<bool, EvalError> {
    let base = |v: &str| s.get(v);
    holds(a, f, &mut Env::new(&base))
}

/// `(K, w) ⊨ α` for a classical modal formula.
pub fn eval_ml(k: &KripkeStructure, w: usize, f: &MlFormula) -> Result<bool, EvalError> {
    Ok(match f {
        MlFormula::True => true,
        MlFormula::False => false,
        MlFormula::Prop(p) => k
            .valuation(p)
            .ok_or_else(|| EvalError::UnknownSymbol(p.clone()))?
            .contains(w),
        MlFormula::Not(g) => !eval_ml(k, w, g)?,
        MlFormula::And(g, h) => eval_ml(k, w, g)? && eval_ml(k, w, h)?,
        MlFormula::Or(g, h) => eval_ml(k, w, g)? || eval_ml(k, w, h)?,
        MlFormula::Possibly(g) => {
            for v in k.successors(w).iter() {
                if eval_ml(k, v, g)? {
                    return Ok(true);
                }
            }
            false
        }
        MlFormula::Necessarily(g) => {
            for v in k.successors(w).iter() {
                if !eval_ml(k, v, g)? {
                    return Ok(false);
                }
            }
            true
        }
    })
}
